#include "nordfreq/io/config.hpp"

#include "nordfreq/errors.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace nordfreq::io {

namespace {

// Minimal INI reader: [section] headers, key = value lines, '#'/';'
// comments, later duplicates of a key win.
class IniFile {
public:
    explicit IniFile(const std::filesystem::path& path) : path_(path) {
        std::ifstream in(path);
        if (!in) {
            throw ConfigError("cannot open config '" + path.string() + "'");
        }
        std::string line;
        std::string section;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            const auto comment = line.find_first_of("#;");
            if (comment != std::string::npos) {
                line.erase(comment);
            }
            const std::string text = trim(line);
            if (text.empty()) {
                continue;
            }
            if (text.front() == '[') {
                if (text.back() != ']' || text.size() < 3) {
                    throw ConfigError(context(line_no) + ": malformed section header");
                }
                section = trim(text.substr(1, text.size() - 2));
                sections_.insert(section);
                continue;
            }
            const auto eq = text.find('=');
            if (eq == std::string::npos) {
                throw ConfigError(context(line_no) + ": expected 'key = value'");
            }
            const std::string key = trim(text.substr(0, eq));
            const std::string value = trim(text.substr(eq + 1));
            if (key.empty()) {
                throw ConfigError(context(line_no) + ": empty key");
            }
            values_[section + "\n" + key] = value;
            keys_by_section_[section].push_back(key);
        }
    }

    bool has(const std::string& section, const std::string& key) const {
        return values_.count(section + "\n" + key) != 0;
    }

    std::string get(const std::string& section, const std::string& key) const {
        const auto it = values_.find(section + "\n" + key);
        if (it == values_.end()) {
            throw ConfigError(path_.string() + ": missing required key '" + key +
                              "' in section [" + section + "]");
        }
        return it->second;
    }

    std::string get_or(const std::string& section, const std::string& key,
                       const std::string& fallback) const {
        const auto it = values_.find(section + "\n" + key);
        return it == values_.end() ? fallback : it->second;
    }

    double get_double(const std::string& section, const std::string& key,
                      double fallback) const {
        if (!has(section, key)) {
            return fallback;
        }
        return to_double(section, key, get(section, key));
    }

    double require_double(const std::string& section, const std::string& key) const {
        return to_double(section, key, get(section, key));
    }

    std::int64_t get_int(const std::string& section, const std::string& key,
                         std::int64_t fallback) const {
        if (!has(section, key)) {
            return fallback;
        }
        const std::string text = get(section, key);
        errno = 0;
        char* end = nullptr;
        const long long v = std::strtoll(text.c_str(), &end, 10);
        if (end == text.c_str() || *end != '\0' || errno == ERANGE) {
            throw ConfigError(path_.string() + ": [" + section + "] " + key +
                              " is not an integer: '" + text + "'");
        }
        return v;
    }

    bool get_bool(const std::string& section, const std::string& key, bool fallback) const {
        if (!has(section, key)) {
            return fallback;
        }
        const std::string text = get(section, key);
        if (text == "true" || text == "1" || text == "yes" || text == "on") {
            return true;
        }
        if (text == "false" || text == "0" || text == "no" || text == "off") {
            return false;
        }
        throw ConfigError(path_.string() + ": [" + section + "] " + key +
                          " is not a boolean: '" + text + "'");
    }

    Rational get_decimal(const std::string& section, const std::string& key,
                         const Rational& fallback) const {
        if (!has(section, key)) {
            return fallback;
        }
        return require_decimal(section, key);
    }

    Rational require_decimal(const std::string& section, const std::string& key) const {
        const std::string text = get(section, key);
        try {
            return parse_decimal(text);
        } catch (const ParseError&) {
            throw ConfigError(path_.string() + ": [" + section + "] " + key +
                              " is not a decimal number: '" + text + "'");
        }
    }

    // keys of a section in file order (for map-like sections)
    std::vector<std::string> keys(const std::string& section) const {
        const auto it = keys_by_section_.find(section);
        return it == keys_by_section_.end() ? std::vector<std::string>{} : it->second;
    }

    bool has_section(const std::string& section) const { return sections_.count(section); }

    const std::filesystem::path& path() const { return path_; }

private:
    static std::string trim(const std::string& s) {
        const auto b = s.find_first_not_of(" \t");
        if (b == std::string::npos) {
            return "";
        }
        const auto e = s.find_last_not_of(" \t");
        return s.substr(b, e - b + 1);
    }

    std::string context(std::size_t line_no) const {
        return path_.string() + ":" + std::to_string(line_no);
    }

    double to_double(const std::string& section, const std::string& key,
                     const std::string& text) const {
        errno = 0;
        char* end = nullptr;
        const double v = std::strtod(text.c_str(), &end);
        if (end == text.c_str() || *end != '\0' || errno == ERANGE) {
            throw ConfigError(path_.string() + ": [" + section + "] " + key +
                              " is not a number: '" + text + "'");
        }
        return v;
    }

    std::filesystem::path path_;
    std::map<std::string, std::string> values_;
    std::map<std::string, std::vector<std::string>> keys_by_section_;
    std::set<std::string> sections_;
};

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& rel) {
    const std::filesystem::path p(rel);
    return p.is_absolute() ? p : base / p;
}

} // namespace

ScreenMode parse_screen_mode(const std::string& text) {
    if (text == "curve") {
        return ScreenMode::curve;
    }
    if (text == "regression") {
        return ScreenMode::regression;
    }
    throw ConfigError("unknown screen mode '" + text + "' (use curve or regression)");
}

PriceLevel parse_price_level(const std::string& text) {
    if (text == "low") {
        return PriceLevel::low;
    }
    if (text == "median") {
        return PriceLevel::median;
    }
    if (text == "high") {
        return PriceLevel::high;
    }
    throw ConfigError("unknown price level '" + text + "' (use low, median or high)");
}

std::vector<std::string> ScenarioConfig::counterpart_countries() const {
    std::vector<std::string> out;
    for (const LinkRecord& l : links) {
        if (std::find(out.begin(), out.end(), l.counterpart_country) == out.end()) {
            out.push_back(l.counterpart_country);
        }
    }
    return out;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    const IniFile ini(path);
    const std::filesystem::path base = path.has_parent_path()
                                           ? path.parent_path()
                                           : std::filesystem::path(".");

    ScenarioConfig cfg;
    cfg.name = ini.get_or("scenario", "name", "scenario");
    cfg.mode = parse_screen_mode(ini.get_or("scenario", "mode", "curve"));
    cfg.seed = static_cast<std::uint64_t>(ini.get_int("scenario", "seed", 0));

    cfg.plan_rules.merge_window_h = ini.get_int("scenario", "merge_window_h", 36);
    cfg.plan_rules.lead_h = ini.get_int("scenario", "lead_h", 0);
    cfg.plan_rules.lag_h = ini.get_int("scenario", "lag_h", 0);

    SecurityLimits limits;
    limits.nominal_f0_hz = ini.get_double("limits", "f0_hz", limits.nominal_f0_hz);
    limits.fcr_n_band_hz = ini.get_double("limits", "fcr_n_band_hz", limits.fcr_n_band_hz);
    limits.max_ifd_hz = ini.get_double("limits", "max_ifd_hz", limits.max_ifd_hz);
    limits.safety_margin_hz =
        ini.get_double("limits", "safety_margin_hz", limits.safety_margin_hz);
    limits.load_shed_floor_hz =
        ini.get_double("limits", "load_shed_floor_hz", limits.load_shed_floor_hz);
    limits.validate();

    cfg.screen_params.mode = cfg.mode;
    cfg.screen_params.limits = limits;
    cfg.screen_params.dimensioning_incident_mw =
        PowerMW(ini.get_double("scenario", "di_mw", 1450.0));
    cfg.screen_params.under_coeffs = RegressionCoefficients(
        ini.get_double("regression", "alpha_under", 0.0757),
        ini.get_double("regression", "beta_under", 0.0369), Direction::under);
    if (ini.has("inputs", "di_unit_ek_gws")) {
        cfg.di_unit_ek_gws = ini.require_double("inputs", "di_unit_ek_gws");
    }

    if (ini.has("inputs", "kinetic_energy_csv")) {
        cfg.kinetic_energy_csv = resolve(base, ini.get("inputs", "kinetic_energy_csv"));
    }
    if (ini.has("inputs", "fleet_csv")) {
        cfg.fleet_csv = resolve(base, ini.get("inputs", "fleet_csv"));
    }
    if (ini.has("inputs", "commitment_csv")) {
        cfg.commitment_csv = resolve(base, ini.get("inputs", "commitment_csv"));
    }
    if (ini.has("inputs", "events_csv")) {
        cfg.events_csv = resolve(base, ini.get("inputs", "events_csv"));
    }

    for (const std::string& area : ini.keys("default_h")) {
        cfg.default_h_by_area[area] = ini.require_double("default_h", area);
    }

    // [links]: KO = DE 716  -> link KO to country DE with 716 MW capacity
    for (const std::string& link_id : ini.keys("links")) {
        std::istringstream in(ini.get("links", link_id));
        std::string country;
        double capacity = 0.0;
        if (!(in >> country >> capacity)) {
            throw ConfigError(path.string() + ": [links] " + link_id +
                              " must be '<country> <capacity_mw>'");
        }
        std::string extra;
        if (in >> extra) {
            throw ConfigError(path.string() + ": [links] " + link_id +
                              " has trailing data '" + extra + "'");
        }
        cfg.links.emplace_back(link_id, country, capacity);
    }

    const std::string price_mode = ini.get_or("prices", "mode", "fixed");
    if (price_mode == "fixed") {
        FixedPrices fixed;
        fixed.regulating_eur_per_mwh = ini.require_decimal("prices", "regulating");
        for (const std::string& key : ini.keys("prices")) {
            if (key.rfind("fcr.", 0) == 0) {
                fixed.fcr_eur_per_mw_by_country[key.substr(4)] =
                    ini.require_decimal("prices", key);
            } else if (key.rfind("rent.", 0) == 0) {
                fixed.rent_eur_per_mw_by_link[key.substr(5)] =
                    ini.require_decimal("prices", key);
            }
        }
        cfg.prices = std::move(fixed);
    } else if (price_mode == "bootstrap") {
        BootstrapPrices boot;
        boot.regulating_csv = resolve(base, ini.get("prices", "regulating_csv"));
        for (const std::string& key : ini.keys("prices")) {
            if (key.rfind("fcr_csv.", 0) == 0) {
                boot.fcr_csv_by_country[key.substr(8)] =
                    resolve(base, ini.get("prices", key));
            } else if (key.rfind("rent_csv.", 0) == 0) {
                boot.rent_csv_by_link[key.substr(9)] =
                    resolve(base, ini.get("prices", key));
            }
        }
        boot.params.subsample_size =
            static_cast<std::size_t>(ini.get_int("prices", "subsample", 2232));
        boot.params.replicates =
            static_cast<std::size_t>(ini.get_int("prices", "replicates", 10000));
        boot.params.with_replacement = ini.get_bool("prices", "with_replacement", false);
        boot.params.threads =
            static_cast<unsigned>(ini.get_int("prices", "threads", 0));
        boot.params.seed = cfg.seed;
        boot.histogram_bins = static_cast<int>(ini.get_int("prices", "histogram_bins", 40));
        if (boot.histogram_bins < 1) {
            throw ConfigError(path.string() + ": histogram_bins must be positive");
        }
        cfg.prices = std::move(boot);
    } else {
        throw ConfigError(path.string() + ": unknown price mode '" + price_mode +
                          "' (use fixed or bootstrap)");
    }

    // Compensation terms; SEK-quoted values are converted at the configured
    // exchange rate.
    CompensationParams comp;
    comp.sek_per_eur = ini.get_decimal("compensation", "sek_per_eur", comp.sek_per_eur);
    if (ini.has("compensation", "opportunity_sek_per_mwh")) {
        comp.opportunity_eur_per_mwh =
            ini.require_decimal("compensation", "opportunity_sek_per_mwh") / comp.sek_per_eur;
    } else {
        comp.opportunity_eur_per_mwh = ini.get_decimal("compensation", "opportunity_eur_per_mwh",
                                                       comp.opportunity_eur_per_mwh);
    }
    if (ini.has("compensation", "fixed_sek_per_event")) {
        comp.fixed_eur_per_event =
            ini.require_decimal("compensation", "fixed_sek_per_event") / comp.sek_per_eur;
    } else {
        comp.fixed_eur_per_event =
            ini.get_decimal("compensation", "fixed_eur_per_event", comp.fixed_eur_per_event);
    }
    comp.validate();
    cfg.compensation = comp;

    // Time-domain model for `simulate`.
    FrequencyModelConfig sim;
    sim.nominal_f0_hz = limits.nominal_f0_hz;
    sim.initial_frequency_hz = limits.nominal_f0_hz - limits.fcr_n_band_hz;
    sim.system_base_mva = ini.get_double("simulate", "system_base_mva", 0.0);
    sim.regulating_strength_mw_per_hz =
        ini.get_double("simulate", "regulating_strength_mw_per_hz", 2900.0);
    sim.governor.gain = ini.get_double("simulate", "governor_gain", 1.0);
    sim.governor.time_constant_s = ini.get_double("simulate", "governor_time_constant_s", 5.0);
    sim.governor.washout_enabled = ini.get_bool("simulate", "washout", false);
    sim.governor.washout_time_constant_s =
        ini.get_double("simulate", "washout_time_constant_s", 10.0);
    sim.step_s = ini.get_double("simulate", "step_s", 0.01);
    if (ini.get_bool("simulate", "epc_enabled", false)) {
        EpcConfig epc;
        epc.trigger_frequency_hz = ini.get_double("simulate", "epc_trigger_hz", 49.7);
        epc.activation_delay_s = ini.get_double("simulate", "epc_delay_s", 0.2);
        epc.injected_power_mw = ini.get_double("simulate", "epc_power_mw", 0.0);
        epc.links = static_cast<int>(
            ini.get_int("simulate", "epc_links",
                        cfg.links.empty() ? 4 : static_cast<std::int64_t>(cfg.links.size())));
        sim.epc = epc;
    }
    cfg.sim_model = sim;
    cfg.sim_dp = PowerMW(ini.get_double("incident", "dp_mw", 1450.0));
    cfg.sim_ek = EnergyGWs(ini.get_double("incident", "ek_gws", 150.0));
    cfg.sim_horizon_s = ini.get_double("incident", "horizon_s", 60.0);

    return cfg;
}

} // namespace nordfreq::io
