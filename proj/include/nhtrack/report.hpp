#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace nhtrack {

struct AggregateResult;
struct StepDiagnostics;

enum class OutputFormat { Csv, Markdown };

OutputFormat parse_format(const std::string& name);

/// Shortest decimal text that parses back to the same double.
std::string format_number(double value);

inline constexpr const char* kSummaryHeader = "tracker,sigma_o,rho,mean_rmse,std_rmse,trials";
inline constexpr const char* kSweepSummaryHeader =
    "tracker,sigma_o,rho,sweep_param,sweep_value,mean_rmse,std_rmse,trials";
inline constexpr const char* kTrialsHeader = "tracker,sigma_o,rho,sweep_param,sweep_value,trial,rmse";

std::string render_trials_csv(const AggregateResult& result);
std::string render_summary_csv(const AggregateResult& result);
/// One table per sigma_o; rows are rho, columns trackers (or sweep values),
/// cells "mean ± std" with two decimals.
std::string render_markdown(const AggregateResult& result);

/// Csv: writes trials.csv and summary.csv into `dir`. Markdown: writes
/// summary.md. Creates `dir` if needed. Returns the files written. IO failures
/// throw std::runtime_error naming the path.
std::vector<std::filesystem::path> emit_results(const AggregateResult& result, OutputFormat format,
                                                const std::filesystem::path& dir);

/// Per-tick tracker trace: t,true_state,estimate,deleted,c_t,ess,collapse.
struct TrackerTraceRow {
    double true_state = 0.0;
    double estimate = 0.0;
    int deleted = -1;
    double potential_scale = 0.0;
    double effective_sample_size = 0.0;
    bool weight_collapse = false;
};

void write_tracker_trace_csv(std::span<const TrackerTraceRow> rows, const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace nhtrack
