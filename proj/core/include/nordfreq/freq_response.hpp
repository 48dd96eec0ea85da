#ifndef NORDFREQ_FREQ_RESPONSE_HPP
#define NORDFREQ_FREQ_RESPONSE_HPP

#include "nordfreq/units.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace nordfreq {

enum class Direction { under, over };

// Linear model of the instantaneous frequency deviation (IFD) past the
// FCR-N band as a function of the disturbance-to-inertia ratio:
//   df = alpha * (dP / E_k,N-1) + beta      [Hz; dP in MW, E_k in GWs]
struct RegressionCoefficients {
    double alpha = 0.0; // Hz per (MW/GWs), > 0
    double beta = 0.0;  // Hz offset
    Direction direction = Direction::under;

    RegressionCoefficients() = default;
    RegressionCoefficients(double a, double b, Direction dir = Direction::under);
};

// Default under-frequency coefficients of the deployed model.
RegressionCoefficients default_under_coefficients();

// Grid-code frequency-quality envelope for the synchronous area.
struct SecurityLimits {
    double nominal_f0_hz = 50.0;
    double fcr_n_band_hz = 0.1;        // normal-operation band, FCR-N fully active
    double max_ifd_hz = 1.0;           // maximum instantaneous deviation from nominal
    double safety_margin_hz = 0.05;    // planning margin on top of max_ifd
    double load_shed_floor_hz = 48.8;  // first load-shedding stage

    // Largest tolerable deviation from nominal when planning: max_ifd - margin.
    double effective_limit_hz() const { return max_ifd_hz - safety_margin_hz; }

    void validate() const;
};

// |df/dt| right after losing `dp` at kinetic energy `e_k` with no controls
// acting yet: f0 * dP / (2 * E_k).  E_k must be positive.
double rocof_hz_per_s(PowerMW dp, EnergyGWs e_k, FrequencyHz f0 = FrequencyHz{50.0});

// Deviation past the FCR-N band predicted by the regression, in Hz.
// Requires dp >= 0 and E_k,N-1 > 0.
FrequencyHz ifd_regression(PowerMW dp, EnergyGWs e_k_n1,
                           const RegressionCoefficients& coeffs);

// Total instantaneous deviation from nominal: the FCR-N band is already
// consumed when the incident strikes, so the band and the post-band
// deviation add.  Requires df_past_band >= 0.
FrequencyHz total_ifd_from_nominal(FrequencyHz df_past_band, const SecurityLimits& limits);

// Ordinary least squares for the IFD regression.
struct FitResult {
    RegressionCoefficients coeffs;
    double r_squared = 0.0;
    std::size_t n_points = 0;
};

// Fits df = alpha * x + beta on (x, df) pairs.  Needs at least two distinct
// abscissae, otherwise SingularFitError.
FitResult fit_regression(std::span<const std::pair<double, double>> points,
                         Direction direction = Direction::under);

// Coefficient of determination of `points` against a fixed line (not the
// OLS fit): 1 - SS_res / SS_tot.
double r_squared_against(std::span<const std::pair<double, double>> points,
                         const RegressionCoefficients& coeffs);

// Sample standard deviation of the residuals against a fixed line.
double residual_std(std::span<const std::pair<double, double>> points,
                    const RegressionCoefficients& coeffs);

// --- time-domain model -------------------------------------------------------

// First-order governor model for aggregated FCR-D delivery:
//   P_fcr(s) = gain * R * df(s) / (1 + s T)
// optionally cascaded with a washout stage s Tw / (1 + s Tw).
struct GovernorConfig {
    double gain = 1.0;               // dimensionless scaling of the static droop
    double time_constant_s = 5.0;    // lag T, > 0
    bool washout_enabled = false;
    double washout_time_constant_s = 10.0; // Tw, > 0 when enabled
};

// Emergency Power Control on an HVDC link: a power step triggered when the
// frequency first crosses `trigger_frequency_hz`, delivered after
// `activation_delay_s`.
struct EpcConfig {
    double trigger_frequency_hz = 49.7;
    double activation_delay_s = 0.2;
    double injected_power_mw = 0.0; // >= 0
    int links = 4;                  // links sharing the injection, >= 1
};

struct FrequencyModelConfig {
    double nominal_f0_hz = 50.0;
    double initial_frequency_hz = 49.9; // FCR-N exhausted: start at band edge
    double system_base_mva = 0.0;       // informational, >= 0
    double regulating_strength_mw_per_hz = 0.0; // static droop R, >= 0
    GovernorConfig governor;
    std::optional<EpcConfig> epc;
    double step_s = 0.01; // fixed RK4 step, 0 < step <= 0.01

    void validate() const;
};

struct Trajectory {
    std::vector<double> time_s;
    std::vector<double> frequency_hz;
    double nadir_hz = 0.0;
    double nadir_time_s = 0.0;
    double initial_rocof_hz_per_s = 0.0; // magnitude at t = 0
};

// Integrates the single-machine swing equation with the governor (and the
// optional EPC step) after losing `dp` at post-contingency kinetic energy
// `e_k`.  Fixed-step RK4; throws NumericalError if the state stops being
// finite.  horizon_s must be positive.
Trajectory simulate_response(const FrequencyModelConfig& config, PowerMW dp,
                             EnergyGWs e_k, double horizon_s);

} // namespace nordfreq

#endif // NORDFREQ_FREQ_RESPONSE_HPP
