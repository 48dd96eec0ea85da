#ifndef NORDFREQ_IO_INGEST_HPP
#define NORDFREQ_IO_INGEST_HPP

#include "nordfreq/inertia.hpp"
#include "nordfreq/planner.hpp"
#include "nordfreq/pricing.hpp"
#include "nordfreq/time_series.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace nordfreq::io {

// Fleet roster: columns unit_id,area,s_mva,h_s,is_di.  An absent h_s is
// filled from the per-area default inertia constants; a unit in an area
// without a default is an error.
Fleet ingest_fleet(const std::filesystem::path& path,
                   const std::map<std::string, double>& default_h_by_area);

// Unit commitment: columns timestamp,unit_id and either
//   online — explicit 0/1 state per unit and hour, or
//   p_mw   — metered production per unit (or per module group) and hour,
//            converted to online states by greedy fill: a group's
//            already-online units keep absorbing production before further
//            units switch on; units are brought on in roster order until
//            the rated power covers the production.
// A group id matches the unit with the exact same id plus all units whose
// id extends it with "-" (e.g. "RINGHALS" matches "RINGHALS-1").
// 3-hourly data is expanded to hourly by step-hold.
CommitmentSeries ingest_commitment(const std::filesystem::path& path, const Fleet& fleet);

// Pre-computed system kinetic energy: columns timestamp,ek_gws.  Rows must
// be sorted, gap-free and unique; empty or "NA" values become explicit
// absent markers.  3-hourly data is expanded to hourly by step-hold.
HourlySeries<double> ingest_kinetic_energy(const std::filesystem::path& path);

// Historical prices: columns timestamp,zone,value.  With several zones,
// every timestamp must carry a value for every zone; the pooled sample is
// the zonal mean.  The pool keeps samples in time order; `label` selects
// the price unit ("fcr:*" pools are EUR/MW, everything else EUR/MWh).
PricePool ingest_prices(const std::filesystem::path& path, const std::string& label);

// Externally communicated reduction events: columns start,end,reduction_mw
// (end inclusive).  Events must be ordered and disjoint, reductions
// non-negative multiples of 50 MW.
std::vector<Event> ingest_events(const std::filesystem::path& path);

// Generic series round-trip: columns timestamp,<value_column>.
HourlySeries<double> read_series_csv(const std::filesystem::path& path,
                                     const std::string& value_column);
void write_series_csv(const std::filesystem::path& path, const HourlySeries<double>& series,
                      const std::string& value_column);

} // namespace nordfreq::io

#endif // NORDFREQ_IO_INGEST_HPP
