#ifndef NORDFREQ_INERTIA_HPP
#define NORDFREQ_INERTIA_HPP

#include "nordfreq/time_series.hpp"
#include "nordfreq/units.hpp"

#include <map>
#include <string>
#include <vector>

namespace nordfreq {

// One synchronous generation unit.  The inertia constant H is in seconds,
// the rated apparent power S in MVA; the unit's stored kinetic energy at
// nominal speed is H * S (MWs).
struct UnitRecord {
    std::string unit_id;
    std::string area;     // bidding/metering area, informational
    double s_mva = 0.0;   // rated apparent power, > 0
    double h_s = 0.0;     // inertia constant, > 0
    bool is_dimensioning_incident = false;

    UnitRecord() = default;
    UnitRecord(std::string id, std::string area_, double s, double h, bool is_di = false);
};

using Fleet = std::vector<UnitRecord>;

// Checks per-unit invariants, unique ids and that at most one unit carries
// the dimensioning-incident flag.  Throws IngestError on violations.
void validate_fleet(const Fleet& fleet);

// Index of the flagged dimensioning unit; throws ConfigError if none.
std::size_t dimensioning_unit(const Fleet& fleet);

// Hourly online/offline state per unit.  All per-unit series must share the
// same time range and step; units not present in the map are treated as
// offline throughout.  Constructed via make_commitment so the fleet
// reference check cannot be skipped.
class CommitmentSeries {
public:
    const std::map<std::string, HourlySeries<bool>>& by_unit() const { return by_unit_; }
    Timestamp start() const { return start_; }
    std::int64_t end_hour() const { return end_hour_; }
    std::size_t size() const { return static_cast<std::size_t>(end_hour_ - start_.hour); }
    bool calendar() const { return calendar_; }

    // True if the unit exists in the map and is marked online at `hour`.
    bool online(const std::string& unit_id, std::int64_t hour) const;

    friend CommitmentSeries make_commitment(const Fleet& fleet,
                                            std::map<std::string, HourlySeries<bool>> by_unit);

private:
    CommitmentSeries() = default;

    std::map<std::string, HourlySeries<bool>> by_unit_;
    Timestamp start_{0};
    std::int64_t end_hour_ = 0;
    bool calendar_ = false;
};

// Validates that every unit id is part of the fleet, all series are hourly
// and cover one common range, then assembles the commitment.
CommitmentSeries make_commitment(const Fleet& fleet,
                                 std::map<std::string, HourlySeries<bool>> by_unit);

// A point on the system kinetic-energy curve.
struct KineticEnergySample {
    Timestamp t;
    EnergyGWs e_k;
};

// System kinetic energy at one hour: sum of H*S over units online at t,
// expressed in GWs.  An empty fleet (or all-offline hour) contributes 0.
EnergyGWs kinetic_energy_at(const Fleet& fleet, const CommitmentSeries& commitment,
                            Timestamp t);

// The full hourly curve over the commitment range (values in GWs).
HourlySeries<double> kinetic_energy_series(const Fleet& fleet,
                                           const CommitmentSeries& commitment);

// Post-contingency kinetic energy after losing the dimensioning unit:
// E_k minus the unit's own stored energy when it is online, E_k unchanged
// otherwise.  Throws InconsistencyError if the subtraction would go
// negative (the unit cannot store more than the system total).
EnergyGWs n1_kinetic_energy(EnergyGWs e_k, const UnitRecord& di_unit, bool di_online);

} // namespace nordfreq

#endif // NORDFREQ_INERTIA_HPP
