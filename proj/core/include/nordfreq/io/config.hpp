#ifndef NORDFREQ_IO_CONFIG_HPP
#define NORDFREQ_IO_CONFIG_HPP

#include "nordfreq/costing.hpp"
#include "nordfreq/freq_response.hpp"
#include "nordfreq/planner.hpp"
#include "nordfreq/pricing.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace nordfreq::io {

// Fixed scenario prices: one deterministic price world, reported under the
// "median" level.
struct FixedPrices {
    Rational regulating_eur_per_mwh;
    std::map<std::string, Rational> fcr_eur_per_mw_by_country;
    std::map<std::string, Rational> rent_eur_per_mw_by_link;
};

// Bootstrap price sources: one historical pool per product.
struct BootstrapPrices {
    std::filesystem::path regulating_csv;
    std::map<std::string, std::filesystem::path> fcr_csv_by_country;
    std::map<std::string, std::filesystem::path> rent_csv_by_link;
    BootstrapParams params;
    int histogram_bins = 40;
};

// Everything a pipeline run needs, parsed from one INI-style file.  All
// relative paths are resolved against the config file's directory; there is
// no environment-variable configuration.
struct ScenarioConfig {
    std::string name = "scenario";
    ScreenMode mode = ScreenMode::curve;
    std::uint64_t seed = 0;

    ScreenParams screen_params;
    DiPlanRules plan_rules;

    // kinetic-energy input: either a precomputed curve...
    std::optional<std::filesystem::path> kinetic_energy_csv;
    // ...or a fleet roster plus unit commitment
    std::optional<std::filesystem::path> fleet_csv;
    std::optional<std::filesystem::path> commitment_csv;
    std::map<std::string, double> default_h_by_area;

    // externally communicated reduction events (optional; otherwise events
    // are detected from the violation flags)
    std::optional<std::filesystem::path> events_csv;

    // kinetic energy stored in the dimensioning unit, for E_k,N-1 in
    // regression mode; when unset it is derived from the fleet's flagged
    // unit (or 0 if the curve is already post-contingency)
    std::optional<double> di_unit_ek_gws;

    std::vector<LinkRecord> links;

    std::variant<FixedPrices, BootstrapPrices> prices = FixedPrices{};
    CompensationParams compensation;

    // time-domain model for the `simulate` command
    FrequencyModelConfig sim_model;
    PowerMW sim_dp{1450.0};
    EnergyGWs sim_ek{150.0};
    double sim_horizon_s = 60.0;

    std::vector<std::string> counterpart_countries() const;
};

ScenarioConfig load_config(const std::filesystem::path& path);

ScreenMode parse_screen_mode(const std::string& text);
PriceLevel parse_price_level(const std::string& text);

} // namespace nordfreq::io

#endif // NORDFREQ_IO_CONFIG_HPP
