#ifndef NORDFREQ_PIPELINE_HPP
#define NORDFREQ_PIPELINE_HPP

#include "nordfreq/costing.hpp"
#include "nordfreq/io/artifacts.hpp"
#include "nordfreq/io/config.hpp"
#include "nordfreq/planner.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

namespace nordfreq {

// How far to take the run.  Every stage writes its artifacts into the
// output directory; later stages include the earlier ones (except `price`,
// which is the independent market branch).
enum class PipelineStage {
    screen, // ingest + screen + event detection -> events.csv
    plan,   // + remedial sizing -> plan_di.csv, plan_epc.csv
    price,  // market branch only -> prices.json, histogram_*.csv
    cost,   // screen + plan + price + costing -> costs.json
    run,    // everything + summary.txt
};

// Command-line overrides on top of the config file.
struct PipelineOverrides {
    std::optional<ScreenMode> mode;
    std::optional<PriceLevel> level; // restrict costing to one price level
    std::optional<std::uint64_t> seed;
};

struct PipelineResult {
    std::size_t horizon_hours = 0;
    std::size_t violated_hours = 0;
    bool violations_found = false;
    std::vector<Event> events; // merged plan events
    std::optional<DiPlan> di_plan;
    std::optional<EpcPlan> epc_plan;
    io::CostsByLevel costs;
    std::vector<std::filesystem::path> written;
};

// Runs the screening / planning / pricing / costing chain on a scenario and
// writes the stage artifacts into out_dir (created if needed).  Errors are
// rethrown with the failing stage's name prefixed, preserving their type.
PipelineResult run_pipeline(const io::ScenarioConfig& config,
                            const std::filesystem::path& out_dir, PipelineStage upto,
                            const PipelineOverrides& overrides = {});

} // namespace nordfreq

#endif // NORDFREQ_PIPELINE_HPP
