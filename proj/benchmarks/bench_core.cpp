#include "nordfreq/costing.hpp"
#include "nordfreq/inertia.hpp"

#include <benchmark/benchmark.h>

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

using namespace nordfreq;

namespace {

// Deterministic synthetic fleet plus a three-month hourly commitment with a
// mixed on/off pattern, sized by the unit count.
std::pair<Fleet, CommitmentSeries> synthetic_fleet(int units, std::size_t hours) {
    Fleet fleet;
    std::map<std::string, HourlySeries<bool>> by_unit;
    std::mt19937_64 rng(12345);
    std::bernoulli_distribution flip(0.05);

    for (int u = 0; u < units; ++u) {
        const std::string id = "U-" + std::to_string(u);
        fleet.emplace_back(id, "SE3", 400.0 + 10.0 * (u % 50), 3.0 + 0.1 * (u % 40),
                           u == 0);
        std::vector<bool> on(hours);
        bool state = u % 4 != 0;
        for (std::size_t h = 0; h < hours; ++h) {
            if (flip(rng)) {
                state = !state;
            }
            on[h] = state;
        }
        std::vector<std::optional<bool>> cells(on.begin(), on.end());
        by_unit.emplace(id, HourlySeries<bool>(Timestamp{0}, std::move(cells)));
    }
    CommitmentSeries commitment = make_commitment(fleet, std::move(by_unit));
    return {std::move(fleet), std::move(commitment)};
}

void BM_KineticEnergySeries(benchmark::State& state) {
    const auto [fleet, commitment] =
        synthetic_fleet(static_cast<int>(state.range(0)), 2208);
    for (auto _ : state) {
        benchmark::DoNotOptimize(kinetic_energy_series(fleet, commitment));
    }
    state.SetItemsProcessed(state.iterations() * 2208);
}
BENCHMARK(BM_KineticEnergySeries)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_ScreenSeason(benchmark::State& state) {
    std::vector<double> gws(2208);
    for (std::size_t h = 0; h < gws.size(); ++h) {
        gws[h] = 130.0 + 40.0 * ((h * 37) % 97) / 97.0; // 130..170, all in range
    }
    const HourlySeries<double> curve(Timestamp{0}, gws);
    const ScreenParams params;
    for (auto _ : state) {
        benchmark::DoNotOptimize(screen(curve, params));
    }
    state.SetItemsProcessed(state.iterations() * 2208);
}
BENCHMARK(BM_ScreenSeason)->Unit(benchmark::kMicrosecond);

void BM_SimulateResponse(benchmark::State& state) {
    FrequencyModelConfig config;
    config.regulating_strength_mw_per_hz = 2900.0;
    config.epc = EpcConfig{49.7, 0.2, 300.0, 4};
    const double horizon_s = static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            simulate_response(config, PowerMW(1450), EnergyGWs(120), horizon_s));
    }
}
BENCHMARK(BM_SimulateResponse)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_BootstrapReplicates(benchmark::State& state) {
    PricePool pool;
    pool.label = "regulating_power";
    pool.years = 2;
    for (int i = 0; i < 2 * 2232; ++i) {
        pool.samples.push_back(Rational(2500 + (i * 631) % 5000, 100));
    }

    BootstrapParams params;
    params.subsample_size = 2232;
    params.replicates = static_cast<std::size_t>(state.range(0));
    params.seed = 42;
    for (auto _ : state) {
        benchmark::DoNotOptimize(bootstrap_mean_distribution(pool, params));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BootstrapReplicates)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
