#include "nordfreq/pipeline.hpp"

#include "nordfreq/errors.hpp"
#include "nordfreq/inertia.hpp"
#include "nordfreq/io/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <utility>

namespace nordfreq {

namespace {

// Re-throws the in-flight library error with the stage name prefixed,
// keeping its concrete type so the CLI exit-code mapping still works.
[[noreturn]] void rethrow_tagged(const std::string& stage_name) {
    const std::string tag = stage_name + ": ";
    try {
        throw;
    } catch (const IngestError& e) {
        throw IngestError(tag + e.what());
    } catch (const ConfigError& e) {
        throw ConfigError(tag + e.what());
    } catch (const ParseError& e) {
        throw ParseError(tag + e.what());
    } catch (const ParameterError& e) {
        throw ParameterError(tag + e.what());
    } catch (const CapacityError& e) {
        throw CapacityError(tag + e.what());
    } catch (const RangeError& e) {
        throw RangeError(tag + e.what());
    } catch (const EmptyOverlapError& e) {
        throw EmptyOverlapError(tag + e.what());
    } catch (const AlignmentError& e) {
        throw AlignmentError(tag + e.what());
    } catch (const MissingValueError& e) {
        throw MissingValueError(tag + e.what());
    } catch (const InconsistencyError& e) {
        throw InconsistencyError(tag + e.what());
    } catch (const SingularFitError& e) {
        throw SingularFitError(tag + e.what());
    } catch (const NumericalError& e) {
        throw NumericalError(tag + e.what());
    } catch (const DomainError& e) {
        throw DomainError(tag + e.what());
    } catch (const Error& e) {
        throw Error(tag + e.what());
    }
}

template <class Fn>
auto stage(const char* name, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const Error&) {
        rethrow_tagged(name);
    }
}

std::string histogram_filename(const std::string& label) {
    std::string name = label;
    std::replace(name.begin(), name.end(), ':', '_');
    return "histogram_" + name + ".csv";
}

} // namespace

PipelineResult run_pipeline(const io::ScenarioConfig& config,
                            const std::filesystem::path& out_dir, PipelineStage upto,
                            const PipelineOverrides& overrides) {
    std::filesystem::create_directories(out_dir);

    PipelineResult result;
    const bool fixed_mode = std::holds_alternative<io::FixedPrices>(config.prices);
    const ScreenMode mode = overrides.mode.value_or(config.mode);

    auto emit = [&](const std::filesystem::path& p) { result.written.push_back(p); };

    // --- market branch -------------------------------------------------------
    const bool want_prices = upto == PipelineStage::price || upto == PipelineStage::cost ||
                             upto == PipelineStage::run;
    std::vector<PriceScenario> scenarios;
    if (want_prices) {
        scenarios = stage("price", [&]() -> std::vector<PriceScenario> {
            if (fixed_mode) {
                if (overrides.level.has_value() && *overrides.level != PriceLevel::median) {
                    throw ConfigError(
                        "price level selection requires bootstrap prices; fixed prices are "
                        "reported as 'median'");
                }
                const auto& fixed = std::get<io::FixedPrices>(config.prices);
                PriceScenario s;
                s.level = PriceLevel::median;
                s.regulating_eur_per_mwh = fixed.regulating_eur_per_mwh;
                s.fcr_eur_per_mw_by_country = fixed.fcr_eur_per_mw_by_country;
                s.rent_eur_per_mw_by_link = fixed.rent_eur_per_mw_by_link;
                return {s};
            }

            const auto& boot = std::get<io::BootstrapPrices>(config.prices);
            BootstrapParams params = boot.params;
            if (overrides.seed.has_value()) {
                params.seed = *overrides.seed;
            }

            std::map<std::string, BootstrapResult> distributions;
            auto add_pool = [&](const std::filesystem::path& csv, const std::string& label) {
                PricePool pool = io::ingest_prices(csv, label);
                distributions.emplace(label, bootstrap_mean_distribution(pool, params));
            };
            add_pool(boot.regulating_csv, "regulating_power");
            for (const auto& [cc, csv] : boot.fcr_csv_by_country) {
                add_pool(csv, "fcr:" + cc);
            }
            for (const auto& [link, csv] : boot.rent_csv_by_link) {
                add_pool(csv, "congestion_rent:" + link);
            }

            std::vector<std::string> link_ids;
            for (const LinkRecord& l : config.links) {
                link_ids.push_back(l.link_id);
            }
            auto out = percentile_scenarios(distributions, link_ids,
                                            config.counterpart_countries());

            io::write_prices_json(out_dir / "prices.json", distributions);
            emit(out_dir / "prices.json");
            for (const auto& [label, dist] : distributions) {
                const auto p = out_dir / histogram_filename(label);
                io::write_histogram_csv(p, dist, boot.histogram_bins);
                emit(p);
            }
            return out;
        });
    }

    if (upto == PipelineStage::price) {
        return result;
    }

    // --- ingest ---------------------------------------------------------------
    std::optional<Fleet> fleet;
    HourlySeries<double> ek = stage("ingest", [&]() -> HourlySeries<double> {
        if (config.kinetic_energy_csv.has_value()) {
            if (config.fleet_csv.has_value() || config.commitment_csv.has_value()) {
                throw ConfigError(
                    "give either kinetic_energy_csv or fleet_csv+commitment_csv, not both");
            }
            return io::ingest_kinetic_energy(*config.kinetic_energy_csv);
        }
        if (config.fleet_csv.has_value() && config.commitment_csv.has_value()) {
            fleet = io::ingest_fleet(*config.fleet_csv, config.default_h_by_area);
            const CommitmentSeries commitment =
                io::ingest_commitment(*config.commitment_csv, *fleet);
            return kinetic_energy_series(*fleet, commitment);
        }
        throw ConfigError(
            "[inputs] needs kinetic_energy_csv, or fleet_csv and commitment_csv");
    });
    result.horizon_hours = ek.size();

    // --- screen ----------------------------------------------------------------
    ViolationFlags flags = stage("screen", [&] {
        ScreenParams params = config.screen_params;
        params.mode = mode;
        if (config.di_unit_ek_gws.has_value()) {
            params.di_contribution_gws = *config.di_unit_ek_gws;
        } else if (fleet.has_value()) {
            const UnitRecord& di = (*fleet)[dimensioning_unit(*fleet)];
            params.di_contribution_gws = di.h_s * di.s_mva / 1000.0;
        }
        return screen(ek, params);
    });

    // --- events ----------------------------------------------------------------
    std::vector<Event> raw_events = stage("events", [&]() -> std::vector<Event> {
        if (!config.events_csv.has_value()) {
            return detect_events(flags);
        }
        // Externally communicated events replace detection: they define both
        // the reduction schedule and the set of hours needing EPC cover.
        std::vector<Event> from_file = io::ingest_events(*config.events_csv);
        std::vector<std::optional<HourFlag>> cells;
        cells.reserve(flags.size());
        for (std::size_t i = 0; i < flags.size(); ++i) {
            cells.emplace_back(flags.at(i));
        }
        for (const Event& e : from_file) {
            if (e.start_hour < flags.start().hour || e.end_hour >= flags.end_hour()) {
                throw ConfigError("event " + std::to_string(e.start_hour) + ".." +
                                  std::to_string(e.end_hour) +
                                  " lies outside the study horizon");
            }
        }
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const std::int64_t h = flags.hour_at(i);
            bool in_event = false;
            for (const Event& e : from_file) {
                if (h >= e.start_hour && h <= e.end_hour) {
                    in_event = true;
                    break;
                }
            }
            cells[i]->violated = in_event;
        }
        flags = ViolationFlags(flags.start(), std::move(cells), flags.step_hours(),
                               flags.calendar());
        return from_file;
    });

    for (std::size_t i = 0; i < flags.size(); ++i) {
        if (flags.at(i).violated) {
            ++result.violated_hours;
        }
    }
    result.violations_found = result.violated_hours > 0;

    // --- plan -------------------------------------------------------------------
    stage("plan", [&] {
        result.di_plan = plan_di(raw_events, ek, config.plan_rules);
        if (config.links.empty()) {
            throw ConfigError("no [links] configured for EPC planning");
        }
        result.epc_plan = plan_epc(flags, ek, config.links);
        return 0;
    });
    result.events = result.di_plan->events;

    stage("write", [&] {
        io::write_events_csv(out_dir / "events.csv", result.events, ek.calendar());
        emit(out_dir / "events.csv");
        return 0;
    });
    if (upto == PipelineStage::screen) {
        return result;
    }

    stage("write", [&] {
        io::write_di_plan_csv(out_dir / "plan_di.csv", *result.di_plan);
        emit(out_dir / "plan_di.csv");
        io::write_epc_plan_csv(out_dir / "plan_epc.csv", *result.epc_plan);
        emit(out_dir / "plan_epc.csv");
        return 0;
    });
    if (upto == PipelineStage::plan) {
        return result;
    }

    // --- cost ---------------------------------------------------------------
    stage("cost", [&] {
        for (const PriceScenario& scenario : scenarios) {
            if (overrides.level.has_value() && scenario.level != *overrides.level) {
                continue;
            }
            io::LevelCosts lc;
            lc.di = cost_di(*result.di_plan, scenario, config.compensation);
            lc.epc = cost_epc(*result.epc_plan, scenario);
            lc.comparison = compare_costs(lc.di, lc.epc);
            result.costs.emplace(scenario.level, std::move(lc));
        }
        if (result.costs.empty()) {
            throw ConfigError("no price scenario matches the requested level");
        }
        return 0;
    });

    stage("write", [&] {
        io::write_costs_json(out_dir / "costs.json", config.name, mode,
                             fixed_mode ? "fixed" : "bootstrap", result.costs);
        emit(out_dir / "costs.json");
        return 0;
    });
    if (upto == PipelineStage::cost) {
        return result;
    }

    stage("write", [&] {
        std::ofstream out(out_dir / "summary.txt");
        if (!out) {
            throw IngestError("cannot write '" + (out_dir / "summary.txt").string() + "'");
        }
        io::write_summary(out, config.name, mode, result.horizon_hours, result.violated_hours,
                          result.events, result.costs);
        emit(out_dir / "summary.txt");
        return 0;
    });

    return result;
}

} // namespace nordfreq
