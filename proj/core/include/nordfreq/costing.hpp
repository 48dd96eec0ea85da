#ifndef NORDFREQ_COSTING_HPP
#define NORDFREQ_COSTING_HPP

#include "nordfreq/planner.hpp"
#include "nordfreq/pricing.hpp"
#include "nordfreq/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nordfreq {

// Compensation terms of the reduction agreement with the plant owner.
struct CompensationParams {
    Rational opportunity_eur_per_mwh = parse_decimal("4.64"); // lost sales margin
    Rational fixed_eur_per_event = parse_decimal("4740");     // per market action
    Rational sek_per_eur = parse_decimal("10.55"); // used only for SEK-quoted inputs

    void validate() const;
};

enum class Strategy { di_reduction, hvdc_epc };

// Itemised cost of one strategy under one price scenario.  All amounts are
// exact; the total is the exact sum of the items by construction.
struct CostBreakdown {
    Strategy strategy = Strategy::di_reduction;
    PriceLevel level = PriceLevel::median;
    std::vector<std::pair<std::string, Rational>> items; // (label, EUR)
    Rational total_eur;
    Rational energy_gwh; // scheduled MWh aggregate, for reporting
    std::size_t event_count = 0;  // market actions (fixed fees paid); 0 for EPC
    std::size_t active_hours = 0; // hours with a non-zero schedule

    CostBreakdown() = default;
    CostBreakdown(Strategy s, PriceLevel lvl,
                  std::vector<std::pair<std::string, Rational>> itms, Rational energy,
                  std::size_t events, std::size_t hours);

    const Rational& item(const std::string& label) const;
};

// Cost of running the reduction schedule: every scheduled MWh forgoes the
// opportunity margin and is replaced by up-regulation bought at the
// regulating price; each market action pays the fixed fee once.
CostBreakdown cost_di(const DiPlan& plan, const PriceScenario& scenario,
                      const CompensationParams& comp);

// Cost of reserving EPC capacity: every reserved MW·h pays the link's
// congestion rent (capacity withheld from the spot market) plus the
// counterpart country's primary-reserve price.
CostBreakdown cost_epc(const EpcPlan& plan, const PriceScenario& scenario);

// Side-by-side comparison of the two strategies under one scenario.
struct ComparisonEntry {
    Rational di_total_eur;
    Rational epc_total_eur;
    Rational savings_eur; // di - epc: positive when EPC is cheaper
    // savings / di cost; absent when the DI strategy costs nothing.
    std::optional<Rational> savings_fraction;
};

ComparisonEntry compare_costs(const CostBreakdown& di, const CostBreakdown& epc);

// One entry per price level.
using ComparisonReport = std::map<PriceLevel, ComparisonEntry>;

const char* to_string(Strategy s);

} // namespace nordfreq

#endif // NORDFREQ_COSTING_HPP
