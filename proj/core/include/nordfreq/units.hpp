#ifndef NORDFREQ_UNITS_HPP
#define NORDFREQ_UNITS_HPP

#include "nordfreq/errors.hpp"
#include "nordfreq/rational.hpp"

#include <cmath>
#include <compare>
#include <string>

namespace nordfreq {

namespace detail {
inline double checked_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw DomainError(std::string(what) + " must be finite");
    }
    return v;
}
} // namespace detail

// Physical quantities are thin wrappers over double: strong enough that a
// kinetic energy cannot be passed where a power is expected, light enough
// that numeric kernels can work on .value directly.

// System kinetic energy in GWs (gigawatt-seconds); never negative.
struct EnergyGWs {
    double value = 0.0;

    EnergyGWs() = default;
    explicit EnergyGWs(double gws) : value(detail::checked_finite(gws, "EnergyGWs")) {
        if (value < 0.0) {
            throw DomainError("EnergyGWs cannot be negative");
        }
    }
    auto operator<=>(const EnergyGWs&) const = default;
};

// Active power in MW.
struct PowerMW {
    double value = 0.0;

    PowerMW() = default;
    explicit PowerMW(double mw) : value(detail::checked_finite(mw, "PowerMW")) {}
    auto operator<=>(const PowerMW&) const = default;
};

// Electrical frequency (or a frequency deviation) in Hz.
struct FrequencyHz {
    double value = 0.0;

    FrequencyHz() = default;
    explicit FrequencyHz(double hz) : value(detail::checked_finite(hz, "FrequencyHz")) {}
    auto operator<=>(const FrequencyHz&) const = default;
};

// Money is exact (see rational.hpp).  Prices keep their unit in the type:
// energy prices in EUR/MWh, capacity/reservation prices in EUR/MW (per hour).

struct PriceEurPerMWh {
    Rational value;

    PriceEurPerMWh() = default;
    explicit PriceEurPerMWh(Rational eur_per_mwh) : value(std::move(eur_per_mwh)) {}
    bool operator==(const PriceEurPerMWh&) const = default;
};

struct PriceEurPerMW {
    Rational value;

    PriceEurPerMW() = default;
    explicit PriceEurPerMW(Rational eur_per_mw) : value(std::move(eur_per_mw)) {}
    bool operator==(const PriceEurPerMW&) const = default;
};

} // namespace nordfreq

#endif // NORDFREQ_UNITS_HPP
