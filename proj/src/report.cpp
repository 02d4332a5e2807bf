#include "nhtrack/report.hpp"

#include "nhtrack/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nhtrack {

OutputFormat parse_format(const std::string& name) {
    if (name == "csv") return OutputFormat::Csv;
    if (name == "md") return OutputFormat::Markdown;
    throw std::invalid_argument("unknown format '" + name + "' (expected csv or md)");
}

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

namespace {

bool is_sweep(const AggregateResult& result) {
    return !result.cells.empty() && result.cells.front().sweep_param.has_value();
}

std::string sweep_name(const CellResult& cell) {
    return cell.sweep_param ? std::string(to_string(*cell.sweep_param)) : std::string();
}

std::string sweep_value(const CellResult& cell) {
    return cell.sweep_param ? format_number(cell.sweep_value) : std::string();
}

std::string fixed2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

std::string render_trials_csv(const AggregateResult& result) {
    std::ostringstream out;
    out << kTrialsHeader << '\n';
    for (const auto& cell : result.cells) {
        for (std::size_t t = 0; t < cell.trial_rmse.size(); ++t) {
            out << to_string(cell.tracker) << ',' << format_number(cell.sigma_o) << ','
                << format_number(cell.rho) << ',' << sweep_name(cell) << ',' << sweep_value(cell)
                << ',' << t << ',' << format_number(cell.trial_rmse[t]) << '\n';
        }
    }
    return out.str();
}

std::string render_summary_csv(const AggregateResult& result) {
    const bool sweep = is_sweep(result);
    std::ostringstream out;
    out << (sweep ? kSweepSummaryHeader : kSummaryHeader) << '\n';
    for (const auto& cell : result.cells) {
        out << to_string(cell.tracker) << ',' << format_number(cell.sigma_o) << ','
            << format_number(cell.rho) << ',';
        if (sweep) out << sweep_name(cell) << ',' << sweep_value(cell) << ',';
        out << format_number(cell.mean_rmse) << ',' << format_number(cell.std_rmse) << ','
            << cell.trial_rmse.size() << '\n';
    }
    return out.str();
}

std::string render_markdown(const AggregateResult& result) {
    const bool sweep = is_sweep(result);

    // Distinct sigma_o, rho and column labels, in first-seen order.
    std::vector<double> sigmas;
    std::vector<double> rhos;
    std::vector<std::string> columns;
    auto column_of = [&](const CellResult& c) {
        return sweep ? sweep_name(c) + "=" + format_number(c.sweep_value)
                     : std::string(to_string(c.tracker));
    };
    auto add_unique = [](auto& list, const auto& value) {
        if (std::find(list.begin(), list.end(), value) == list.end()) list.push_back(value);
    };
    for (const auto& c : result.cells) {
        add_unique(sigmas, c.sigma_o);
        add_unique(rhos, c.rho);
        add_unique(columns, column_of(c));
    }

    std::ostringstream out;
    for (std::size_t s = 0; s < sigmas.size(); ++s) {
        if (s) out << '\n';
        out << "### sigma_o = " << format_number(sigmas[s]) << "\n\n| rho |";
        for (const auto& col : columns) out << ' ' << col << " |";
        out << "\n|---:|";
        for (std::size_t i = 0; i < columns.size(); ++i) out << "---:|";
        out << '\n';
        for (double rho : rhos) {
            out << "| " << fixed2(rho) << " |";
            for (const auto& col : columns) {
                std::string text = "-";
                for (const auto& c : result.cells) {
                    if (c.sigma_o == sigmas[s] && c.rho == rho && column_of(c) == col) {
                        text = fixed2(c.mean_rmse) + " ± " + fixed2(c.std_rmse);
                        break;
                    }
                }
                out << ' ' << text << " |";
            }
            out << '\n';
        }
    }
    return out.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << text;
    out.close();
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::vector<std::filesystem::path> emit_results(const AggregateResult& result, OutputFormat format,
                                                const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());

    std::vector<std::filesystem::path> written;
    if (format == OutputFormat::Csv) {
        written = {dir / "trials.csv", dir / "summary.csv"};
        write_text_file(written[0], render_trials_csv(result));
        write_text_file(written[1], render_summary_csv(result));
    } else {
        written = {dir / "summary.md"};
        write_text_file(written[0], render_markdown(result));
    }
    return written;
}

void write_tracker_trace_csv(std::span<const TrackerTraceRow> rows, const std::filesystem::path& path) {
    std::ostringstream out;
    out << "t,true_state,estimate,deleted,c_t,ess,collapse\n";
    for (std::size_t t = 0; t < rows.size(); ++t) {
        const auto& r = rows[t];
        out << (t + 1) << ',' << format_number(r.true_state) << ',' << format_number(r.estimate)
            << ',';
        if (r.deleted >= 0) out << r.deleted;
        out << ',';
        if (!std::isnan(r.potential_scale)) out << format_number(r.potential_scale);
        out << ',';
        if (!std::isnan(r.effective_sample_size)) out << format_number(r.effective_sample_size);
        out << ',' << (r.weight_collapse ? 1 : 0) << '\n';
    }
    write_text_file(path, out.str());
}

}  // namespace nhtrack
