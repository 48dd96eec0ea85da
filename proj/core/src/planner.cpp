#include "nordfreq/planner.hpp"

#include "nordfreq/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nordfreq {

LinkRecord::LinkRecord(std::string id, std::string country, double capacity)
    : link_id(std::move(id)), counterpart_country(std::move(country)), capacity_mw(capacity) {
    if (link_id.empty()) {
        throw ConfigError("HVDC link id cannot be empty");
    }
    if (!(capacity_mw > 0.0)) {
        throw ConfigError("HVDC link '" + link_id + "' needs a positive capacity");
    }
}

namespace {

constexpr double kCurveFloorGWs = 80.0;  // curves are not validated below this
constexpr double kCurveZeroGWs = 153.0;  // fully secure at and above this

// Kinetic-energy levels where the required reduction steps up by 50 MW as
// e_k decreases (descending).
constexpr double kStairEdges[] = {153.0, 148.5, 142.5, 136.5, 130.5, 124.5,
                                  118.5, 112.5, 106.25, 100.0, 93.5, 86.8};

// Anchor polyline of the required EPC injection (ascending in e_k).
constexpr std::pair<double, double> kEpcAnchors[] = {
    {80.0, 690.0}, {90.0, 606.0}, {100.0, 517.0}, {110.0, 426.0}, {120.0, 332.0},
    {130.0, 236.0}, {140.0, 139.0}, {150.0, 41.0}, {153.0, 0.0},
};

void check_curve_domain(double e_k_gws) {
    if (e_k_gws < kCurveFloorGWs) {
        std::ostringstream msg;
        msg << "kinetic energy " << e_k_gws << " GWs is below the validated curve range ("
            << kCurveFloorGWs << " GWs)";
        throw DomainError(msg.str());
    }
}

} // namespace

PowerMW di_reduction_required(EnergyGWs e_k) {
    const double e = e_k.value;
    check_curve_domain(e);
    if (e >= kCurveZeroGWs) {
        return PowerMW(0.0);
    }
    int blocks = 0;
    for (double edge : kStairEdges) {
        if (e <= edge) {
            ++blocks;
        }
    }
    return PowerMW(50.0 * blocks);
}

PowerMW epc_power_required(EnergyGWs e_k) {
    const double e = e_k.value;
    check_curve_domain(e);
    if (e >= kCurveZeroGWs) {
        return PowerMW(0.0);
    }
    constexpr std::size_t n = std::size(kEpcAnchors);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const auto [x0, y0] = kEpcAnchors[i];
        const auto [x1, y1] = kEpcAnchors[i + 1];
        if (e <= x1) {
            return PowerMW(y0 + (y1 - y0) * (e - x0) / (x1 - x0));
        }
    }
    return PowerMW(0.0); // unreachable: e < 153 is covered by the last segment
}

ViolationFlags screen(const HourlySeries<double>& e_k_gws, const ScreenParams& params) {
    params.limits.validate();
    if (params.dimensioning_incident_mw.value < 0.0) {
        throw DomainError("dimensioning incident cannot be negative");
    }
    if (params.di_contribution_gws < 0.0) {
        throw DomainError("dimensioning unit's kinetic energy cannot be negative");
    }

    std::vector<std::optional<HourFlag>> flags;
    flags.reserve(e_k_gws.size());
    for (std::size_t i = 0; i < e_k_gws.size(); ++i) {
        const double e_k = e_k_gws.at(i); // absent cells fail loudly here

        const double e_k_n1 = e_k - params.di_contribution_gws;
        if (!(e_k_n1 > 0.0)) {
            throw InconsistencyError(
                "post-contingency kinetic energy non-positive at hour " +
                std::to_string(e_k_gws.hour_at(i)));
        }
        const FrequencyHz past_band = ifd_regression(
            params.dimensioning_incident_mw, EnergyGWs(e_k_n1), params.under_coeffs);
        const FrequencyHz total = total_ifd_from_nominal(past_band, params.limits);

        HourFlag flag;
        flag.e_k_gws = e_k;
        flag.ifd_hz = total.value;
        if (params.mode == ScreenMode::curve) {
            flag.violated = di_reduction_required(EnergyGWs(e_k)).value > 0.0;
        } else {
            flag.violated = total.value > params.limits.effective_limit_hz();
        }
        flags.emplace_back(flag);
    }
    return ViolationFlags(e_k_gws.start(), std::move(flags), e_k_gws.step_hours(),
                          e_k_gws.calendar());
}

std::vector<Event> detect_events(const ViolationFlags& flags) {
    if (flags.step_hours() != 1) {
        throw ParameterError("event detection expects an hourly violation series");
    }
    std::vector<Event> events;
    bool in_run = false;
    Event current;
    for (std::size_t i = 0; i < flags.size(); ++i) {
        const HourFlag& flag = flags.at(i);
        const std::int64_t hour = flags.hour_at(i);
        if (flag.violated) {
            const double required = di_reduction_required(EnergyGWs(flag.e_k_gws)).value;
            if (!in_run) {
                in_run = true;
                current = Event{hour, hour, required, EventSource::raw};
            } else {
                current.end_hour = hour;
                current.peak_required_reduction_mw =
                    std::max(current.peak_required_reduction_mw, required);
            }
        } else if (in_run) {
            events.push_back(current);
            in_run = false;
        }
    }
    if (in_run) {
        events.push_back(current);
    }
    return events;
}

DiPlan::DiPlan(std::vector<Event> evts, HourlySeries<double> reduction)
    : events(std::move(evts)), reduction_mw(std::move(reduction)) {
    for (const Event& e : events) {
        if (e.end_hour < e.start_hour) {
            throw ParameterError("event ends before it starts");
        }
        const double r = e.peak_required_reduction_mw;
        if (r < 0.0 || std::fmod(r, 50.0) != 0.0) {
            throw ParameterError("event reduction must be a non-negative multiple of 50 MW");
        }
    }
    for (std::size_t i = 1; i < events.size(); ++i) {
        if (events[i].start_hour <= events[i - 1].end_hour) {
            throw ParameterError("plan events must be disjoint and ordered");
        }
    }
}

DiPlan plan_di(const std::vector<Event>& events, const HourlySeries<double>& e_k_gws,
               const DiPlanRules& rules) {
    if (rules.merge_window_h < 0 || rules.lead_h < 0 || rules.lag_h < 0) {
        throw ParameterError("plan rules cannot be negative");
    }
    if (e_k_gws.step_hours() != 1) {
        throw ParameterError("planning expects an hourly kinetic-energy series");
    }

    std::vector<Event> sorted = events;
    std::sort(sorted.begin(), sorted.end(),
              [](const Event& a, const Event& b) { return a.start_hour < b.start_hour; });

    // Pass 1: transitive merge of events separated by less than the window.
    std::vector<Event> merged;
    for (const Event& e : sorted) {
        if (!merged.empty() && e.start_hour - merged.back().end_hour < rules.merge_window_h) {
            Event& m = merged.back();
            m.end_hour = std::max(m.end_hour, e.end_hour);
            m.peak_required_reduction_mw =
                std::max(m.peak_required_reduction_mw, e.peak_required_reduction_mw);
            m.source = EventSource::merged;
        } else {
            Event m = e;
            m.source = EventSource::merged;
            merged.push_back(m);
        }
    }

    // Pass 2: lead/lag padding, clipped to the study horizon.
    const std::int64_t lo = e_k_gws.start().hour;
    const std::int64_t hi = e_k_gws.end_hour() - 1; // inclusive last hour
    for (Event& m : merged) {
        m.start_hour = std::max(m.start_hour - rules.lead_h, lo);
        m.end_hour = std::min(m.end_hour + rules.lag_h, hi);
    }

    // Pass 3: padding may have made neighbours overlap; such windows would
    // schedule two different reductions on the same hours, so they coalesce
    // at the larger one.
    std::vector<Event> final_events;
    for (const Event& m : merged) {
        if (!final_events.empty() && m.start_hour <= final_events.back().end_hour) {
            Event& f = final_events.back();
            f.end_hour = std::max(f.end_hour, m.end_hour);
            f.peak_required_reduction_mw =
                std::max(f.peak_required_reduction_mw, m.peak_required_reduction_mw);
        } else {
            final_events.push_back(m);
        }
    }

    std::vector<double> reduction(e_k_gws.size(), 0.0);
    for (const Event& f : final_events) {
        for (std::int64_t h = f.start_hour; h <= f.end_hour; ++h) {
            reduction[e_k_gws.index_of(h)] = f.peak_required_reduction_mw;
        }
    }

    return DiPlan(std::move(final_events),
                  HourlySeries<double>(e_k_gws.start(), reduction, 1, e_k_gws.calendar()));
}

EpcPlan::EpcPlan(std::vector<LinkRecord> lnks, HourlySeries<double> total)
    : links(std::move(lnks)), total_mw(std::move(total)) {
    if (links.empty()) {
        throw ParameterError("an EPC plan needs at least one link");
    }
    for (std::size_t i = 0; i < total_mw.size(); ++i) {
        if (total_mw.at(i) < 0.0) {
            throw ParameterError("EPC injection cannot be negative");
        }
    }
}

Rational EpcPlan::link_share(std::size_t hour_index) const {
    return rational_from_double(total_mw.at(hour_index)) /
           Rational(static_cast<int>(links.size()));
}

EpcPlan plan_epc(const ViolationFlags& flags, const HourlySeries<double>& e_k_gws,
                 const std::vector<LinkRecord>& links) {
    if (links.empty()) {
        throw ParameterError("EPC planning needs at least one link");
    }
    if (flags.start() != e_k_gws.start() || flags.size() != e_k_gws.size() ||
        flags.step_hours() != e_k_gws.step_hours()) {
        throw AlignmentError("violation flags do not cover the kinetic-energy series");
    }

    double min_capacity = links.front().capacity_mw;
    std::string tightest = links.front().link_id;
    for (const LinkRecord& l : links) {
        if (l.capacity_mw < min_capacity) {
            min_capacity = l.capacity_mw;
            tightest = l.link_id;
        }
    }

    const auto n_links = static_cast<double>(links.size());
    std::vector<double> total(e_k_gws.size(), 0.0);
    std::vector<std::int64_t> infeasible;
    for (std::size_t i = 0; i < flags.size(); ++i) {
        if (!flags.at(i).violated) {
            continue;
        }
        const double required = epc_power_required(EnergyGWs(e_k_gws.at(i))).value;
        total[i] = required;
        if (required / n_links > min_capacity) {
            infeasible.push_back(flags.hour_at(i));
        }
    }

    if (!infeasible.empty()) {
        std::ostringstream msg;
        msg << "per-link EPC share exceeds capacity of link '" << tightest << "' ("
            << min_capacity << " MW) at " << infeasible.size() << " hour(s):";
        const std::size_t shown = std::min<std::size_t>(infeasible.size(), 12);
        for (std::size_t i = 0; i < shown; ++i) {
            msg << ' ' << infeasible[i];
        }
        if (infeasible.size() > shown) {
            msg << " ...";
        }
        throw CapacityError(msg.str());
    }

    return EpcPlan(links, HourlySeries<double>(e_k_gws.start(), total, 1, e_k_gws.calendar()));
}

} // namespace nordfreq
