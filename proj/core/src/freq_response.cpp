#include "nordfreq/freq_response.hpp"

#include "nordfreq/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace nordfreq {

RegressionCoefficients::RegressionCoefficients(double a, double b, Direction dir)
    : alpha(a), beta(b), direction(dir) {
    if (!(alpha > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
        throw DomainError("regression slope must be positive and finite");
    }
}

RegressionCoefficients default_under_coefficients() {
    return RegressionCoefficients(0.0757, 0.0369, Direction::under);
}

void SecurityLimits::validate() const {
    if (!(nominal_f0_hz > 0.0)) {
        throw DomainError("nominal frequency must be positive");
    }
    if (!(fcr_n_band_hz >= 0.0)) {
        throw DomainError("FCR-N band cannot be negative");
    }
    if (!(max_ifd_hz > 0.0)) {
        throw DomainError("maximum IFD must be positive");
    }
    if (!(safety_margin_hz >= 0.0) || !(safety_margin_hz < max_ifd_hz)) {
        throw DomainError("safety margin must lie in [0, max_ifd)");
    }
    if (!(load_shed_floor_hz > 0.0) || !(load_shed_floor_hz < nominal_f0_hz)) {
        throw DomainError("load-shedding floor must lie below nominal frequency");
    }
}

double rocof_hz_per_s(PowerMW dp, EnergyGWs e_k, FrequencyHz f0) {
    if (!(e_k.value > 0.0)) {
        throw DomainError("RoCoF undefined for non-positive kinetic energy");
    }
    if (!(f0.value > 0.0)) {
        throw DomainError("RoCoF needs a positive nominal frequency");
    }
    const double e_k_mws = e_k.value * 1000.0;
    return f0.value * dp.value / (2.0 * e_k_mws);
}

FrequencyHz ifd_regression(PowerMW dp, EnergyGWs e_k_n1,
                           const RegressionCoefficients& coeffs) {
    if (dp.value < 0.0) {
        throw DomainError("IFD regression requires a non-negative power imbalance");
    }
    if (!(e_k_n1.value > 0.0)) {
        throw DomainError("IFD regression requires positive post-contingency kinetic energy");
    }
    const double x = dp.value / e_k_n1.value; // MW per GWs
    return FrequencyHz(coeffs.alpha * x + coeffs.beta);
}

FrequencyHz total_ifd_from_nominal(FrequencyHz df_past_band, const SecurityLimits& limits) {
    limits.validate();
    if (df_past_band.value < 0.0) {
        throw DomainError("deviation past the FCR-N band cannot be negative");
    }
    return FrequencyHz(limits.fcr_n_band_hz + df_past_band.value);
}

FitResult fit_regression(std::span<const std::pair<double, double>> points,
                         Direction direction) {
    if (points.size() < 2) {
        throw SingularFitError("regression needs at least two points");
    }

    double sx = 0.0, sy = 0.0;
    for (const auto& [x, y] : points) {
        sx += x;
        sy += y;
    }
    const double n = static_cast<double>(points.size());
    const double mx = sx / n;
    const double my = sy / n;

    double sxx = 0.0, sxy = 0.0;
    for (const auto& [x, y] : points) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if (sxx == 0.0) {
        throw SingularFitError("regression needs at least two distinct abscissae");
    }

    const double alpha = sxy / sxx;
    const double beta = my - alpha * mx;
    if (!(alpha > 0.0)) {
        throw SingularFitError("fitted slope is not positive; data contradicts the model");
    }

    double sst = 0.0, ssr = 0.0;
    for (const auto& [x, y] : points) {
        const double fitted = alpha * x + beta;
        sst += (y - my) * (y - my);
        ssr += (y - fitted) * (y - fitted);
    }

    FitResult out;
    out.coeffs = RegressionCoefficients(alpha, beta, direction);
    out.r_squared = sst > 0.0 ? 1.0 - ssr / sst : 1.0;
    out.n_points = points.size();
    return out;
}

double r_squared_against(std::span<const std::pair<double, double>> points,
                         const RegressionCoefficients& coeffs) {
    if (points.size() < 2) {
        throw ParameterError("R^2 needs at least two points");
    }
    double sy = 0.0;
    for (const auto& [x, y] : points) {
        (void)x;
        sy += y;
    }
    const double my = sy / static_cast<double>(points.size());

    double sst = 0.0, ssr = 0.0;
    for (const auto& [x, y] : points) {
        const double predicted = coeffs.alpha * x + coeffs.beta;
        sst += (y - my) * (y - my);
        ssr += (y - predicted) * (y - predicted);
    }
    if (sst == 0.0) {
        return ssr == 0.0 ? 1.0 : 0.0;
    }
    return 1.0 - ssr / sst;
}

double residual_std(std::span<const std::pair<double, double>> points,
                    const RegressionCoefficients& coeffs) {
    if (points.size() < 2) {
        throw ParameterError("residual deviation needs at least two points");
    }
    double sum = 0.0;
    for (const auto& [x, y] : points) {
        sum += y - (coeffs.alpha * x + coeffs.beta);
    }
    const double n = static_cast<double>(points.size());
    const double mean = sum / n;

    double ss = 0.0;
    for (const auto& [x, y] : points) {
        const double r = y - (coeffs.alpha * x + coeffs.beta);
        ss += (r - mean) * (r - mean);
    }
    return std::sqrt(ss / (n - 1.0));
}

void FrequencyModelConfig::validate() const {
    if (!(nominal_f0_hz > 0.0)) {
        throw DomainError("nominal frequency must be positive");
    }
    if (!(initial_frequency_hz > 0.0) || initial_frequency_hz > nominal_f0_hz) {
        throw DomainError("initial frequency must lie in (0, f0]");
    }
    if (system_base_mva < 0.0) {
        throw DomainError("system base cannot be negative");
    }
    if (regulating_strength_mw_per_hz < 0.0) {
        throw DomainError("regulating strength cannot be negative");
    }
    if (governor.gain < 0.0) {
        throw DomainError("governor gain cannot be negative");
    }
    if (!(governor.time_constant_s > 0.0)) {
        throw DomainError("governor time constant must be positive");
    }
    if (governor.washout_enabled && !(governor.washout_time_constant_s > 0.0)) {
        throw DomainError("washout time constant must be positive");
    }
    if (!(step_s > 0.0) || step_s > 0.01) {
        throw DomainError("integration step must lie in (0, 0.01] s");
    }
    if (epc) {
        if (epc->injected_power_mw < 0.0) {
            throw DomainError("EPC injection cannot be negative");
        }
        if (epc->links < 1) {
            throw DomainError("EPC needs at least one link");
        }
        if (!(epc->trigger_frequency_hz < initial_frequency_hz)) {
            throw DomainError("EPC trigger must lie below the initial frequency");
        }
        if (epc->activation_delay_s < 0.0) {
            throw DomainError("EPC activation delay cannot be negative");
        }
    }
}

namespace {

struct SimState {
    double f = 0.0;     // frequency [Hz]
    double p_lag = 0.0; // governor lag output [MW]
    double z = 0.0;     // washout internal state [MW]
};

struct SimModel {
    const FrequencyModelConfig& cfg;
    double dp_mw;
    double e_k_mws;

    SimState deriv(const SimState& s, bool epc_on) const {
        const double deviation = cfg.initial_frequency_hz - s.f;
        const double target = cfg.governor.gain * cfg.regulating_strength_mw_per_hz * deviation;

        SimState d;
        d.p_lag = (target - s.p_lag) / cfg.governor.time_constant_s;
        d.z = cfg.governor.washout_enabled
                  ? (s.p_lag - s.z) / cfg.governor.washout_time_constant_s
                  : 0.0;

        const double p_fcr = cfg.governor.washout_enabled ? s.p_lag - s.z : s.p_lag;
        const double p_epc = epc_on && cfg.epc ? cfg.epc->injected_power_mw : 0.0;
        d.f = cfg.nominal_f0_hz * (p_fcr + p_epc - dp_mw) / (2.0 * e_k_mws);
        return d;
    }

    // One classic RK4 step of length h; the EPC injection is constant
    // within a step (activation boundaries split steps, see below).
    SimState step(const SimState& s, double h, bool epc_on) const {
        const SimState k1 = deriv(s, epc_on);
        const SimState k2 = deriv(advance(s, k1, h / 2.0), epc_on);
        const SimState k3 = deriv(advance(s, k2, h / 2.0), epc_on);
        const SimState k4 = deriv(advance(s, k3, h), epc_on);

        SimState out;
        out.f = s.f + h / 6.0 * (k1.f + 2.0 * k2.f + 2.0 * k3.f + k4.f);
        out.p_lag = s.p_lag + h / 6.0 * (k1.p_lag + 2.0 * k2.p_lag + 2.0 * k3.p_lag + k4.p_lag);
        out.z = s.z + h / 6.0 * (k1.z + 2.0 * k2.z + 2.0 * k3.z + k4.z);
        return out;
    }

    static SimState advance(const SimState& s, const SimState& d, double h) {
        return SimState{s.f + h * d.f, s.p_lag + h * d.p_lag, s.z + h * d.z};
    }
};

bool finite(const SimState& s) {
    return std::isfinite(s.f) && std::isfinite(s.p_lag) && std::isfinite(s.z);
}

} // namespace

Trajectory simulate_response(const FrequencyModelConfig& config, PowerMW dp,
                             EnergyGWs e_k, double horizon_s) {
    config.validate();
    if (dp.value < 0.0) {
        throw DomainError("the simulator models generation-loss incidents (dp >= 0)");
    }
    if (!(e_k.value > 0.0)) {
        throw DomainError("simulation requires positive kinetic energy");
    }
    if (!(horizon_s > 0.0)) {
        throw DomainError("simulation horizon must be positive");
    }

    const SimModel model{config, dp.value, e_k.value * 1000.0};
    const double h = config.step_s;
    const std::size_t n_steps = static_cast<std::size_t>(std::ceil(horizon_s / h - 1e-12));

    SimState state{config.initial_frequency_hz, 0.0, 0.0};
    bool epc_armed = config.epc.has_value() && config.epc->injected_power_mw > 0.0;
    bool epc_on = false;
    double t_activate = 0.0; // valid once `pending_activation`
    bool pending_activation = false;

    Trajectory out;
    out.time_s.reserve(n_steps + 1);
    out.frequency_hz.reserve(n_steps + 1);
    out.time_s.push_back(0.0);
    out.frequency_hz.push_back(state.f);
    out.nadir_hz = state.f;
    out.nadir_time_s = 0.0;
    out.initial_rocof_hz_per_s =
        std::abs(rocof_hz_per_s(dp, e_k, FrequencyHz{config.nominal_f0_hz}));

    double t = 0.0;
    for (std::size_t i = 0; i < n_steps; ++i) {
        const double t_next = std::min((static_cast<double>(i) + 1.0) * h, horizon_s);
        const double f_prev = state.f;

        // The activation instant splits its step so the RK4 right-hand side
        // stays smooth within every (sub-)step.
        if (pending_activation && !epc_on && t_activate > t && t_activate < t_next) {
            state = model.step(state, t_activate - t, false);
            epc_on = true;
            state = model.step(state, t_next - t_activate, true);
        } else {
            if (pending_activation && !epc_on && t_activate <= t) {
                epc_on = true;
            }
            state = model.step(state, t_next - t, epc_on);
        }

        if (!finite(state)) {
            throw NumericalError("frequency integration diverged at t = " +
                                 std::to_string(t_next) + " s");
        }

        // Latch the EPC trigger on the first downward crossing; the crossing
        // time is located by linear interpolation inside the step.
        if (epc_armed && !pending_activation &&
            state.f < config.epc->trigger_frequency_hz) {
            const double trig = config.epc->trigger_frequency_hz;
            double frac = 1.0;
            if (f_prev > trig && f_prev != state.f) {
                frac = (f_prev - trig) / (f_prev - state.f);
            }
            const double t_cross = t + frac * (t_next - t);
            t_activate = std::max(t_cross + config.epc->activation_delay_s, t_next);
            pending_activation = true;
        }

        t = t_next;
        out.time_s.push_back(t);
        out.frequency_hz.push_back(state.f);
        if (state.f < out.nadir_hz) {
            out.nadir_hz = state.f;
            out.nadir_time_s = t;
        }
    }

    return out;
}

} // namespace nordfreq
