#ifndef NORDFREQ_IO_ARTIFACTS_HPP
#define NORDFREQ_IO_ARTIFACTS_HPP

#include "nordfreq/costing.hpp"
#include "nordfreq/freq_response.hpp"
#include "nordfreq/planner.hpp"
#include "nordfreq/pricing.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace nordfreq::io {

// Cost results for one price level: the two strategies side by side.
struct LevelCosts {
    CostBreakdown di;
    CostBreakdown epc;
    ComparisonEntry comparison;
};

using CostsByLevel = std::map<PriceLevel, LevelCosts>;

// start,end,hours,peak_mw — one row per merged event.
void write_events_csv(const std::filesystem::path& path, const std::vector<Event>& events,
                      bool calendar);
std::vector<Event> read_events_csv(const std::filesystem::path& path);

// timestamp,action_type,total_mw — full horizon, zeros outside events.
void write_di_plan_csv(const std::filesystem::path& path, const DiPlan& plan);

// timestamp,action_type,total_mw,mw_<LINK>... — equal per-link shares.
void write_epc_plan_csv(const std::filesystem::path& path, const EpcPlan& plan);

// time_s,frequency_hz
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& trajectory);

// bin_low,bin_high,probability over [min, max] of the replicate means;
// probabilities sum to 1.
void write_histogram_csv(const std::filesystem::path& path, const BootstrapResult& result,
                         int bins);

// p5/p50/p95 per price label, plus bootstrap metadata.
void write_prices_json(const std::filesystem::path& path,
                       const std::map<std::string, BootstrapResult>& distributions);

// Full cost report: per level the itemised strategy costs and comparison.
void write_costs_json(const std::filesystem::path& path, const std::string& scenario_name,
                      ScreenMode mode, const std::string& price_mode,
                      const CostsByLevel& costs);

// Human-readable wrap-up of a pipeline run.
void write_summary(std::ostream& out, const std::string& scenario_name, ScreenMode mode,
                   std::size_t horizon_hours, std::size_t violated_hours,
                   const std::vector<Event>& events, const CostsByLevel& costs);

} // namespace nordfreq::io

#endif // NORDFREQ_IO_ARTIFACTS_HPP
