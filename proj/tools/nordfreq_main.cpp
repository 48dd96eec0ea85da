// nordfreq — screening and decision support for low-inertia N-1 violations:
// flags risky hours, sizes the two remedial actions (production reduction on
// the dimensioning unit vs HVDC emergency power control) and compares their
// costs under fixed or bootstrapped price scenarios.

#include "nordfreq/errors.hpp"
#include "nordfreq/io/artifacts.hpp"
#include "nordfreq/io/config.hpp"
#include "nordfreq/pipeline.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>

namespace {

constexpr int kExitOk = 0;          // finished; no violations found
constexpr int kExitViolations = 1;  // finished; violations found and processed
constexpr int kExitInputError = 2;  // bad input data, config or usage
constexpr int kExitNumericError = 3; // domain or numerical failure

struct CommandOptions {
    std::string config_path;
    std::string out_dir = "out";
    std::string mode;
    std::string level;
    std::uint64_t seed = 0;
    CLI::Option* seed_opt = nullptr;
};

void add_common_options(CLI::App* cmd, CommandOptions& opts, bool pipeline_cmd) {
    cmd->add_option("-c,--config", opts.config_path, "scenario config file (INI)")
        ->required();
    cmd->add_option("-o,--out", opts.out_dir, "output directory")
        ->capture_default_str();
    if (pipeline_cmd) {
        cmd->add_option("--mode", opts.mode, "screen mode override: curve|regression");
        cmd->add_option("--level", opts.level, "price level: low|median|high");
        opts.seed_opt = cmd->add_option("--seed", opts.seed, "bootstrap seed override");
    }
}

nordfreq::PipelineOverrides make_overrides(const CommandOptions& opts) {
    nordfreq::PipelineOverrides overrides;
    if (!opts.mode.empty()) {
        overrides.mode = nordfreq::io::parse_screen_mode(opts.mode);
    }
    if (!opts.level.empty()) {
        overrides.level = nordfreq::io::parse_price_level(opts.level);
    }
    if (opts.seed_opt != nullptr && opts.seed_opt->count() > 0) {
        overrides.seed = opts.seed;
    }
    return overrides;
}

void print_comparison(const nordfreq::io::CostsByLevel& costs) {
    using nordfreq::format_fixed;
    std::cout << "level    di_total_eur      epc_total_eur     savings_eur       savings_pct\n";
    for (const auto& [level, lc] : costs) {
        std::string pct = lc.comparison.savings_fraction.has_value()
                              ? format_fixed(*lc.comparison.savings_fraction * 100, 2)
                              : std::string("n/a");
        std::printf("%-8s %-17s %-17s %-17s %s\n", nordfreq::to_string(level),
                    format_fixed(lc.di.total_eur, 2).c_str(),
                    format_fixed(lc.epc.total_eur, 2).c_str(),
                    format_fixed(lc.comparison.savings_eur, 2).c_str(), pct.c_str());
    }
}

int run_pipeline_command(const CommandOptions& opts, nordfreq::PipelineStage upto,
                         bool print_costs) {
    const auto config = nordfreq::io::load_config(opts.config_path);
    const auto result =
        nordfreq::run_pipeline(config, opts.out_dir, upto, make_overrides(opts));

    if (upto == nordfreq::PipelineStage::price) {
        std::cout << "wrote " << result.written.size() << " price artifact(s) to "
                  << opts.out_dir << "\n";
        return kExitOk;
    }

    std::cout << "screened " << result.horizon_hours << " h: " << result.violated_hours
              << " violated, " << result.events.size() << " event(s)\n";
    if (print_costs && !result.costs.empty()) {
        print_comparison(result.costs);
    }
    return result.violations_found ? kExitViolations : kExitOk;
}

int run_simulate(const CommandOptions& opts) {
    const auto config = nordfreq::io::load_config(opts.config_path);
    const auto trajectory = nordfreq::simulate_response(config.sim_model, config.sim_dp,
                                                        config.sim_ek, config.sim_horizon_s);
    std::filesystem::create_directories(opts.out_dir);
    const auto path = std::filesystem::path(opts.out_dir) / "trajectory.csv";
    nordfreq::io::write_trajectory_csv(path, trajectory);
    std::printf("nadir %.4f Hz at %.2f s, initial RoCoF %.4f Hz/s; wrote %s\n",
                trajectory.nadir_hz, trajectory.nadir_time_s,
                trajectory.initial_rocof_hz_per_s, path.string().c_str());
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"low-inertia N-1 screening and remedial-action costing"};
    app.require_subcommand(1);

    CommandOptions screen_opts, plan_opts, price_opts, cost_opts, compare_opts, run_opts,
        sim_opts;

    auto* cmd_screen =
        app.add_subcommand("screen", "flag violated hours and detect events");
    add_common_options(cmd_screen, screen_opts, true);
    auto* cmd_plan = app.add_subcommand("plan", "size the two remedial actions");
    add_common_options(cmd_plan, plan_opts, true);
    auto* cmd_price =
        app.add_subcommand("price", "bootstrap price scenarios from historical pools");
    add_common_options(cmd_price, price_opts, true);
    auto* cmd_cost = app.add_subcommand("cost", "cost both strategies per price level");
    add_common_options(cmd_cost, cost_opts, true);
    auto* cmd_compare =
        app.add_subcommand("compare", "cost both strategies and print the comparison");
    add_common_options(cmd_compare, compare_opts, true);
    auto* cmd_run = app.add_subcommand("run", "full pipeline including the summary");
    add_common_options(cmd_run, run_opts, true);
    auto* cmd_sim =
        app.add_subcommand("simulate", "time-domain frequency response of one incident");
    add_common_options(cmd_sim, sim_opts, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (cmd_screen->parsed()) {
            return run_pipeline_command(screen_opts, nordfreq::PipelineStage::screen, false);
        }
        if (cmd_plan->parsed()) {
            return run_pipeline_command(plan_opts, nordfreq::PipelineStage::plan, false);
        }
        if (cmd_price->parsed()) {
            return run_pipeline_command(price_opts, nordfreq::PipelineStage::price, false);
        }
        if (cmd_cost->parsed()) {
            return run_pipeline_command(cost_opts, nordfreq::PipelineStage::cost, false);
        }
        if (cmd_compare->parsed()) {
            return run_pipeline_command(compare_opts, nordfreq::PipelineStage::cost, true);
        }
        if (cmd_run->parsed()) {
            return run_pipeline_command(run_opts, nordfreq::PipelineStage::run, true);
        }
        if (cmd_sim->parsed()) {
            return run_simulate(sim_opts);
        }
    } catch (const nordfreq::IngestError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const nordfreq::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const nordfreq::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const nordfreq::ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const nordfreq::CapacityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const nordfreq::Error& e) {
        // domain, range, alignment, missing-value, inconsistency, fit,
        // numerical: the data was readable but the mathematics failed
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumericError;
    }

    return kExitInputError; // no subcommand matched (unreachable)
}
