#include "nordfreq/io/artifacts.hpp"

#include "nordfreq/errors.hpp"
#include "nordfreq/io/csv.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>

namespace nordfreq::io {

namespace {

using nlohmann::json;

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw IngestError("cannot write '" + path.string() + "'");
    }
    return out;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json money_json(const Rational& eur) {
    // doubles for machine use, fixed decimals for human diffing
    return json{{"eur", to_double(eur)}, {"eur_str", format_fixed(eur, 2)}};
}

json breakdown_json(const CostBreakdown& b) {
    json items = json::object();
    for (const auto& [label, eur] : b.items) {
        items[label] = money_json(eur);
    }
    json out{
        {"strategy", to_string(b.strategy)},
        {"items", items},
        {"total", money_json(b.total_eur)},
        {"energy_gwh", to_double(b.energy_gwh)},
        {"active_hours", b.active_hours},
    };
    if (b.strategy == Strategy::di_reduction) {
        out["events"] = b.event_count;
    }
    return out;
}

} // namespace

void write_events_csv(const std::filesystem::path& path, const std::vector<Event>& events,
                      bool calendar) {
    auto out = open_out(path);
    out << "start,end,hours,peak_mw\n";
    for (const Event& e : events) {
        out << format_timestamp(e.start_hour, calendar) << ','
            << format_timestamp(e.end_hour, calendar) << ',' << e.duration_h() << ','
            << fmt_double(e.peak_required_reduction_mw) << '\n';
    }
}

std::vector<Event> read_events_csv(const std::filesystem::path& path) {
    const CsvTable t = read_csv(path);
    const std::size_t c_start = column(t, "start");
    const std::size_t c_end = column(t, "end");
    const std::size_t c_peak = column(t, "peak_mw");

    std::vector<Event> events;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        Event e;
        bool cal = false;
        e.start_hour = parse_timestamp_field(t, r, c_start, cal);
        e.end_hour = parse_timestamp_field(t, r, c_end, cal);
        e.peak_required_reduction_mw = parse_double_field(t, r, c_peak);
        e.source = EventSource::merged;
        events.push_back(e);
    }
    return events;
}

void write_di_plan_csv(const std::filesystem::path& path, const DiPlan& plan) {
    auto out = open_out(path);
    out << "timestamp,action_type,total_mw\n";
    const auto& series = plan.reduction_mw;
    for (std::size_t i = 0; i < series.size(); ++i) {
        out << format_timestamp(series.hour_at(i), series.calendar()) << ",di_reduction,"
            << fmt_double(series.at(i)) << '\n';
    }
}

void write_epc_plan_csv(const std::filesystem::path& path, const EpcPlan& plan) {
    auto out = open_out(path);
    out << "timestamp,action_type,total_mw";
    for (const LinkRecord& link : plan.links) {
        out << ",mw_" << link.link_id;
    }
    out << '\n';
    const auto& series = plan.total_mw;
    for (std::size_t i = 0; i < series.size(); ++i) {
        out << format_timestamp(series.hour_at(i), series.calendar()) << ",hvdc_epc,"
            << fmt_double(series.at(i));
        const std::string share = fmt_double(to_double(plan.link_share(i)));
        for (std::size_t l = 0; l < plan.links.size(); ++l) {
            out << ',' << share;
        }
        out << '\n';
    }
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& trajectory) {
    auto out = open_out(path);
    out << "time_s,frequency_hz\n";
    for (std::size_t i = 0; i < trajectory.time_s.size(); ++i) {
        out << fmt_double(trajectory.time_s[i]) << ',' << fmt_double(trajectory.frequency_hz[i])
            << '\n';
    }
}

void write_histogram_csv(const std::filesystem::path& path, const BootstrapResult& result,
                         int bins) {
    if (bins < 1) {
        throw ParameterError("histogram needs at least one bin");
    }
    const auto& means = result.replicate_means;
    if (means.empty()) {
        throw ParameterError("histogram of an empty distribution");
    }
    Rational lo = means.front();
    Rational hi = means.front();
    for (const Rational& m : means) {
        lo = std::min(lo, m);
        hi = std::max(hi, m);
    }

    std::vector<std::size_t> counts(static_cast<std::size_t>(bins), 0);
    const Rational width = (hi - lo) / bins;
    for (const Rational& m : means) {
        std::size_t idx;
        if (width == 0) {
            idx = 0;
        } else {
            idx = static_cast<std::size_t>(((m - lo) / width).convert_to<std::int64_t>());
            idx = std::min(idx, counts.size() - 1); // m == hi lands in the last bin
        }
        ++counts[idx];
    }

    auto out = open_out(path);
    out << "bin_low,bin_high,probability\n";
    const double total = static_cast<double>(means.size());
    for (int b = 0; b < bins; ++b) {
        const Rational bin_lo = lo + width * b;
        const Rational bin_hi = b + 1 == bins ? hi : lo + width * (b + 1);
        out << fmt_double(to_double(bin_lo)) << ',' << fmt_double(to_double(bin_hi)) << ','
            << fmt_double(static_cast<double>(counts[static_cast<std::size_t>(b)]) / total)
            << '\n';
    }
}

void write_prices_json(const std::filesystem::path& path,
                       const std::map<std::string, BootstrapResult>& distributions) {
    json by_label = json::object();
    for (const auto& [label, d] : distributions) {
        by_label[label] = json{
            {"p5", to_double(d.p5)},
            {"p50", to_double(d.p50)},
            {"p95", to_double(d.p95)},
            {"replicates", d.replicate_means.size()},
            {"subsample_size", d.subsample_size},
            {"with_replacement", d.with_replacement},
            {"seed", d.seed},
        };
    }
    auto out = open_out(path);
    out << json{{"prices", by_label}}.dump(2) << '\n';
}

void write_costs_json(const std::filesystem::path& path, const std::string& scenario_name,
                      ScreenMode mode, const std::string& price_mode,
                      const CostsByLevel& costs) {
    json levels = json::object();
    for (const auto& [level, lc] : costs) {
        json comparison{
            {"savings", money_json(lc.comparison.savings_eur)},
        };
        if (lc.comparison.savings_fraction.has_value()) {
            comparison["savings_pct"] = to_double(*lc.comparison.savings_fraction * 100);
        } else {
            comparison["savings_pct"] = nullptr;
        }
        levels[to_string(level)] = json{
            {"di_reduction", breakdown_json(lc.di)},
            {"hvdc_epc", breakdown_json(lc.epc)},
            {"comparison", comparison},
        };
    }

    json doc{
        {"scenario", scenario_name},
        {"screen_mode", mode == ScreenMode::curve ? "curve" : "regression"},
        {"price_mode", price_mode},
        {"levels", levels},
    };
    auto out = open_out(path);
    out << doc.dump(2) << '\n';
}

void write_summary(std::ostream& out, const std::string& scenario_name, ScreenMode mode,
                   std::size_t horizon_hours, std::size_t violated_hours,
                   const std::vector<Event>& events, const CostsByLevel& costs) {
    out << "scenario: " << scenario_name << "\n";
    out << "screen mode: " << (mode == ScreenMode::curve ? "curve" : "regression") << "\n";
    out << "horizon: " << horizon_hours << " h, violated: " << violated_hours << " h, events: "
        << events.size() << "\n";
    for (const Event& e : events) {
        out << "  event " << e.start_hour << ".." << e.end_hour << " (" << e.duration_h()
            << " h) peak " << e.peak_required_reduction_mw << " MW\n";
    }
    for (const auto& [level, lc] : costs) {
        out << "[" << to_string(level) << "]\n";
        out << "  di_reduction: total_eur=" << format_fixed(lc.di.total_eur, 2);
        for (const auto& [label, eur] : lc.di.items) {
            out << ' ' << label << '=' << format_fixed(eur, 2);
        }
        out << " energy_gwh=" << format_fixed(lc.di.energy_gwh, 6)
            << " events=" << lc.di.event_count << "\n";
        out << "  hvdc_epc: total_eur=" << format_fixed(lc.epc.total_eur, 2);
        for (const auto& [label, eur] : lc.epc.items) {
            out << ' ' << label << '=' << format_fixed(eur, 2);
        }
        out << " energy_gwh=" << format_fixed(lc.epc.energy_gwh, 6) << "\n";
        out << "  savings_eur=" << format_fixed(lc.comparison.savings_eur, 2);
        if (lc.comparison.savings_fraction.has_value()) {
            out << " savings_pct=" << format_fixed(*lc.comparison.savings_fraction * 100, 2);
        } else {
            out << " savings_pct=n/a";
        }
        out << "\n";
    }
}

} // namespace nordfreq::io
