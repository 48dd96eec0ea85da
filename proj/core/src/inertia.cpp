#include "nordfreq/inertia.hpp"

#include <set>

namespace nordfreq {

UnitRecord::UnitRecord(std::string id, std::string area_, double s, double h, bool is_di)
    : unit_id(std::move(id)),
      area(std::move(area_)),
      s_mva(s),
      h_s(h),
      is_dimensioning_incident(is_di) {}

void validate_fleet(const Fleet& fleet) {
    std::set<std::string> ids;
    std::size_t di_count = 0;
    for (const UnitRecord& u : fleet) {
        if (u.unit_id.empty()) {
            throw IngestError("fleet contains a unit with an empty id");
        }
        if (!(u.s_mva > 0.0)) {
            throw IngestError("unit '" + u.unit_id + "' has non-positive rated power");
        }
        if (!(u.h_s > 0.0)) {
            throw IngestError("unit '" + u.unit_id + "' has non-positive inertia constant");
        }
        if (!ids.insert(u.unit_id).second) {
            throw IngestError("duplicate unit id '" + u.unit_id + "' in fleet");
        }
        if (u.is_dimensioning_incident) {
            ++di_count;
        }
    }
    if (di_count > 1) {
        throw IngestError("more than one unit is flagged as the dimensioning incident");
    }
}

std::size_t dimensioning_unit(const Fleet& fleet) {
    for (std::size_t i = 0; i < fleet.size(); ++i) {
        if (fleet[i].is_dimensioning_incident) {
            return i;
        }
    }
    throw ConfigError("no unit in the fleet is flagged as the dimensioning incident");
}

bool CommitmentSeries::online(const std::string& unit_id, std::int64_t hour) const {
    const auto it = by_unit_.find(unit_id);
    if (it == by_unit_.end()) {
        return false;
    }
    return it->second.value_at(hour);
}

CommitmentSeries make_commitment(const Fleet& fleet,
                                 std::map<std::string, HourlySeries<bool>> by_unit) {
    validate_fleet(fleet);
    if (by_unit.empty()) {
        throw IngestError("commitment data is empty");
    }

    std::set<std::string> fleet_ids;
    for (const UnitRecord& u : fleet) {
        fleet_ids.insert(u.unit_id);
    }

    const HourlySeries<bool>& first = by_unit.begin()->second;
    for (const auto& [id, series] : by_unit) {
        if (!fleet_ids.count(id)) {
            throw IngestError("commitment references unknown unit '" + id + "'");
        }
        if (series.step_hours() != 1) {
            throw IngestError("commitment for unit '" + id + "' is not hourly");
        }
        if (series.start() != first.start() || series.size() != first.size() ||
            series.calendar() != first.calendar()) {
            throw IngestError("commitment for unit '" + id +
                              "' does not cover the common time range");
        }
    }

    CommitmentSeries out;
    out.start_ = first.start();
    out.end_hour_ = first.end_hour();
    out.calendar_ = first.calendar();
    out.by_unit_ = std::move(by_unit);
    return out;
}

EnergyGWs kinetic_energy_at(const Fleet& fleet, const CommitmentSeries& commitment,
                            Timestamp t) {
    double mws = 0.0;
    for (const UnitRecord& u : fleet) {
        if (commitment.online(u.unit_id, t.hour)) {
            mws += u.h_s * u.s_mva;
        }
    }
    return EnergyGWs(mws / 1000.0);
}

HourlySeries<double> kinetic_energy_series(const Fleet& fleet,
                                           const CommitmentSeries& commitment) {
    const std::size_t n = commitment.size();
    std::vector<double> values;
    values.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Timestamp t{commitment.start().hour + static_cast<std::int64_t>(i)};
        values.push_back(kinetic_energy_at(fleet, commitment, t).value);
    }
    return HourlySeries<double>(commitment.start(), values, 1, commitment.calendar());
}

EnergyGWs n1_kinetic_energy(EnergyGWs e_k, const UnitRecord& di_unit, bool di_online) {
    if (!di_online) {
        return e_k;
    }
    const double loss_gws = di_unit.h_s * di_unit.s_mva / 1000.0;
    const double remaining = e_k.value - loss_gws;
    if (remaining < 0.0) {
        throw InconsistencyError("dimensioning unit '" + di_unit.unit_id +
                                 "' stores more kinetic energy than the system total");
    }
    return EnergyGWs(remaining);
}

} // namespace nordfreq
