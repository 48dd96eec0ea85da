#ifndef NORDFREQ_PLANNER_HPP
#define NORDFREQ_PLANNER_HPP

#include "nordfreq/freq_response.hpp"
#include "nordfreq/rational.hpp"
#include "nordfreq/time_series.hpp"
#include "nordfreq/units.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace nordfreq {

// An HVDC interconnector that can deliver Emergency Power Control.
struct LinkRecord {
    std::string link_id;             // e.g. "KO"
    std::string counterpart_country; // ISO code of the non-Nordic end, e.g. "DE"
    double capacity_mw = 0.0;        // > 0

    LinkRecord() = default;
    LinkRecord(std::string id, std::string country, double capacity);
};

// Screening result for one hour.
struct HourFlag {
    double e_k_gws = 0.0;  // pre-fault system kinetic energy
    double ifd_hz = 0.0;   // predicted total deviation from nominal (diagnostic)
    bool violated = false;
};

using ViolationFlags = HourlySeries<HourFlag>;

enum class ScreenMode { curve, regression };

struct ScreenParams {
    ScreenMode mode = ScreenMode::curve;
    PowerMW dimensioning_incident_mw{1450.0};
    SecurityLimits limits;
    RegressionCoefficients under_coeffs = default_under_coefficients();
    // Kinetic energy stored in the dimensioning unit itself, subtracted from
    // the pre-fault curve to obtain E_k,N-1 for the regression.  Zero means
    // the input series is already post-contingency.
    double di_contribution_gws = 0.0;
};

// Required production cut on the dimensioning unit so that losing the
// remainder is tolerable at pre-fault kinetic energy e_k.  Piecewise-
// constant stair in 50 MW blocks, 0 at and above 153 GWs, up to 600 MW at
// 80 GWs.  At a stair edge the larger (safer) reduction applies.  Below
// 80 GWs the curve is not validated: DomainError.
PowerMW di_reduction_required(EnergyGWs e_k);

// Required HVDC emergency-power injection for full N-1 coverage at pre-fault
// kinetic energy e_k.  Piecewise-linear, 0 at and above 153 GWs, 690 MW at
// 80 GWs; DomainError below 80 GWs.
PowerMW epc_power_required(EnergyGWs e_k);

// Flags every hour of the pre-fault kinetic-energy curve (values in GWs)
// whose dimensioning incident would violate the frequency-quality envelope.
// curve mode: violated iff the stair demands a positive reduction.
// regression mode: violated iff predicted total IFD exceeds
//   max_ifd - safety_margin.
// Both modes record the predicted IFD for diagnostics.  Absent cells fail
// loudly (MissingValueError).
ViolationFlags screen(const HourlySeries<double>& e_k_gws, const ScreenParams& params);

enum class EventSource { raw, merged };

// A contiguous run of violated hours ([start_hour, end_hour] inclusive).
struct Event {
    std::int64_t start_hour = 0;
    std::int64_t end_hour = 0;
    double peak_required_reduction_mw = 0.0;
    EventSource source = EventSource::raw;

    std::int64_t duration_h() const { return end_hour - start_hour + 1; }
};

// Maximal runs of consecutive violated hours, each annotated with the
// largest stair reduction over the run.
std::vector<Event> detect_events(const ViolationFlags& flags);

struct DiPlanRules {
    // Events closer than this (gap = next.start - prev.end, hours) merge
    // transitively into one market action.
    std::int64_t merge_window_h = 36;
    // Operational padding around each merged event.
    std::int64_t lead_h = 0;
    std::int64_t lag_h = 0;
};

// Hour-by-hour production reduction on the dimensioning unit.
struct DiPlan {
    std::vector<Event> events;          // merged, padded, coalesced
    HourlySeries<double> reduction_mw;  // full horizon, 0 outside events

    DiPlan(std::vector<Event> evts, HourlySeries<double> reduction);
};

// Builds the reduction schedule: merge events within the window, hold each
// merged event at the maximum member reduction, pad by lead/lag (clipped to
// the horizon), and coalesce overlapping padded windows at the larger
// reduction.
DiPlan plan_di(const std::vector<Event>& events, const HourlySeries<double>& e_k_gws,
               const DiPlanRules& rules = {});

// Hour-by-hour EPC reservation, shared equally across the links.
struct EpcPlan {
    std::vector<LinkRecord> links;
    HourlySeries<double> total_mw; // full horizon, 0 on safe hours

    EpcPlan(std::vector<LinkRecord> lnks, HourlySeries<double> total);

    // Exact per-link share of the hour's total (total / |links|).
    Rational link_share(std::size_t hour_index) const;
};

// Sizes the injection on every violated hour from the EPC curve and checks
// it against each link's capacity; infeasible hours raise CapacityError.
EpcPlan plan_epc(const ViolationFlags& flags, const HourlySeries<double>& e_k_gws,
                 const std::vector<LinkRecord>& links);

} // namespace nordfreq

#endif // NORDFREQ_PLANNER_HPP
