#include "nordfreq/costing.hpp"

#include "nordfreq/errors.hpp"

namespace nordfreq {

void CompensationParams::validate() const {
    if (opportunity_eur_per_mwh < 0 || fixed_eur_per_event < 0) {
        throw ConfigError("compensation terms cannot be negative");
    }
    if (sek_per_eur <= 0) {
        throw ConfigError("SEK/EUR rate must be positive");
    }
}

CostBreakdown::CostBreakdown(Strategy s, PriceLevel lvl,
                             std::vector<std::pair<std::string, Rational>> itms,
                             Rational energy, std::size_t events, std::size_t hours)
    : strategy(s), level(lvl), items(std::move(itms)), energy_gwh(std::move(energy)),
      event_count(events), active_hours(hours) {
    for (std::size_t i = 0; i < items.size(); ++i) {
        for (std::size_t j = i + 1; j < items.size(); ++j) {
            if (items[i].first == items[j].first) {
                throw ParameterError("duplicate cost item '" + items[i].first + "'");
            }
        }
        total_eur += items[i].second;
    }
}

const Rational& CostBreakdown::item(const std::string& label) const {
    for (const auto& [name, eur] : items) {
        if (name == label) {
            return eur;
        }
    }
    throw ParameterError("no cost item '" + label + "'");
}

CostBreakdown cost_di(const DiPlan& plan, const PriceScenario& scenario,
                      const CompensationParams& comp) {
    comp.validate();

    // Σ_h R(h) in MWh; reductions are exact multiples of 50 MW, so the
    // double-to-rational conversion is exact.
    Rational mwh = 0;
    std::size_t active = 0;
    for (std::size_t i = 0; i < plan.reduction_mw.size(); ++i) {
        const double r = plan.reduction_mw.at(i);
        if (r != 0.0) {
            mwh += rational_from_double(r);
            ++active;
        }
    }

    const Rational down = mwh * comp.opportunity_eur_per_mwh +
                          comp.fixed_eur_per_event * static_cast<int>(plan.events.size());
    const Rational up = mwh * scenario.regulating_eur_per_mwh;

    std::vector<std::pair<std::string, Rational>> items;
    items.emplace_back("down_regulation", down);
    items.emplace_back("up_regulation", up);
    return CostBreakdown(Strategy::di_reduction, scenario.level, std::move(items),
                         mwh / 1000, plan.events.size(), active);
}

CostBreakdown cost_epc(const EpcPlan& plan, const PriceScenario& scenario) {
    // Per-link prices looked up once; every link must be priced.
    std::vector<Rational> rent;
    std::vector<Rational> fcr;
    for (const LinkRecord& link : plan.links) {
        const auto r = scenario.rent_eur_per_mw_by_link.find(link.link_id);
        if (r == scenario.rent_eur_per_mw_by_link.end()) {
            throw ConfigError("scenario prices no congestion rent for link '" +
                              link.link_id + "'");
        }
        const auto f = scenario.fcr_eur_per_mw_by_country.find(link.counterpart_country);
        if (f == scenario.fcr_eur_per_mw_by_country.end()) {
            throw ConfigError("scenario prices no FCR for country '" +
                              link.counterpart_country + "'");
        }
        rent.push_back(r->second);
        fcr.push_back(f->second);
    }

    Rational capacity = 0;
    Rational reserves = 0;
    Rational mwh = 0;
    std::size_t hours = 0;
    for (std::size_t i = 0; i < plan.total_mw.size(); ++i) {
        if (plan.total_mw.at(i) == 0.0) {
            continue;
        }
        const Rational share = plan.link_share(i); // exact total / |links|
        for (std::size_t l = 0; l < plan.links.size(); ++l) {
            capacity += share * rent[l];
            reserves += share * fcr[l];
        }
        mwh += rational_from_double(plan.total_mw.at(i));
        ++hours;
    }

    std::vector<std::pair<std::string, Rational>> items;
    items.emplace_back("hvdc_capacity", capacity);
    items.emplace_back("primary_reserves", reserves);
    return CostBreakdown(Strategy::hvdc_epc, scenario.level, std::move(items), mwh / 1000,
                         0, hours);
}

ComparisonEntry compare_costs(const CostBreakdown& di, const CostBreakdown& epc) {
    if (di.strategy != Strategy::di_reduction || epc.strategy != Strategy::hvdc_epc) {
        throw ParameterError("comparison expects one DI breakdown and one EPC breakdown");
    }
    if (di.level != epc.level) {
        throw ParameterError("cannot compare breakdowns priced at different levels");
    }

    ComparisonEntry entry;
    entry.di_total_eur = di.total_eur;
    entry.epc_total_eur = epc.total_eur;
    entry.savings_eur = di.total_eur - epc.total_eur;
    if (di.total_eur != 0) {
        entry.savings_fraction = entry.savings_eur / di.total_eur;
    }
    return entry;
}

const char* to_string(Strategy s) {
    return s == Strategy::di_reduction ? "di_reduction" : "hvdc_epc";
}

} // namespace nordfreq
