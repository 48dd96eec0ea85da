#ifndef NORDFREQ_PRICING_HPP
#define NORDFREQ_PRICING_HPP

#include "nordfreq/rational.hpp"
#include "nordfreq/time_series.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace nordfreq {

enum class PriceUnit { eur_per_mwh, eur_per_mw };

// A flat pool of historical price samples for one product (e.g. summer
// regulating prices pooled over several years).  Order carries no meaning
// beyond reproducibility of the bootstrap.
struct PricePool {
    std::string label;
    PriceUnit unit = PriceUnit::eur_per_mwh;
    std::vector<Rational> samples;
    int years = 1;                // seasons pooled together
    int hours_per_season = 2232;  // three summer months of hourly prices

    void validate() const;
};

// Averages aligned per-zone price series into one system series; a cell is
// present only where every zone has a value.
HourlySeries<Rational> zonal_average(const std::vector<HourlySeries<Rational>>& zones);

// Distribution of subsample means produced by the bootstrap.
struct BootstrapResult {
    std::string label;
    std::vector<Rational> replicate_means; // in replicate order (not sorted)
    Rational p5;
    Rational p50;
    Rational p95;
    std::uint64_t seed = 0;
    std::size_t subsample_size = 0;
    bool with_replacement = false;
};

struct BootstrapParams {
    std::size_t subsample_size = 2232; // one season's worth of hours
    std::size_t replicates = 10000;
    std::uint64_t seed = 0;
    // The default draws season-sized subsamples without replacement, which
    // reproduces the spread of "which summer will it be" rather than pure
    // sampling noise.
    bool with_replacement = false;
    unsigned threads = 0; // 0 = hardware concurrency
};

// Draws `replicates` subsamples of `subsample_size` prices from the pool
// and records each subsample's mean.  Every replicate derives its own RNG
// stream from (seed, label, replicate index), so results are independent of
// the thread count.  Percentiles use the nearest-rank definition.
BootstrapResult bootstrap_mean_distribution(const PricePool& pool,
                                            const BootstrapParams& params);

enum class PriceLevel { low, median, high };

// One internally consistent price world: every product priced at the same
// percentile of its bootstrap distribution.
struct PriceScenario {
    PriceLevel level = PriceLevel::median;
    Rational regulating_eur_per_mwh;
    std::map<std::string, Rational> fcr_eur_per_mw_by_country;
    std::map<std::string, Rational> rent_eur_per_mw_by_link;
};

// Required pool labels: "regulating_power", "fcr:<CC>" for every country in
// `countries`, "congestion_rent:<LINK>" for every link id in `links`.
// Returns the {p5, p50, p95} scenarios in that order.  Missing labels are a
// ConfigError.
std::vector<PriceScenario> percentile_scenarios(
    const std::map<std::string, BootstrapResult>& distributions,
    const std::vector<std::string>& link_ids,
    const std::vector<std::string>& countries);

const char* to_string(PriceLevel level);

} // namespace nordfreq

#endif // NORDFREQ_PRICING_HPP
