#include "nordfreq/io/ingest.hpp"

#include "nordfreq/errors.hpp"
#include "nordfreq/io/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

namespace nordfreq::io {

namespace {

// The uniform hour grid spanned by a file's distinct timestamps.
struct TimeGrid {
    std::int64_t start = 0;
    int step = 1;
    std::size_t n = 0;
    bool calendar = false;

    std::size_t index_of(std::int64_t hour) const {
        return static_cast<std::size_t>((hour - start) / step);
    }
};

TimeGrid grid_from_hours(const std::vector<std::int64_t>& sorted_unique_hours, bool calendar,
                         const std::filesystem::path& source) {
    TimeGrid grid;
    grid.calendar = calendar;
    grid.n = sorted_unique_hours.size();
    if (grid.n == 0) {
        throw IngestError(source.string() + ": no data rows");
    }
    grid.start = sorted_unique_hours.front();
    if (grid.n >= 2) {
        const std::int64_t step = sorted_unique_hours[1] - sorted_unique_hours[0];
        if (step < 1) {
            throw IngestError(source.string() + ": timestamps are not strictly increasing");
        }
        for (std::size_t i = 1; i < grid.n; ++i) {
            if (sorted_unique_hours[i] - sorted_unique_hours[i - 1] != step) {
                throw IngestError(source.string() + ": gap in the timestamp grid around " +
                                  format_timestamp(sorted_unique_hours[i], calendar));
            }
        }
        if (step > static_cast<std::int64_t>(std::numeric_limits<int>::max())) {
            throw IngestError(source.string() + ": timestamp step is implausibly large");
        }
        grid.step = static_cast<int>(step);
    }
    return grid;
}

bool parse_calendar_flag(const CsvTable& t, std::size_t row, std::size_t col,
                         std::optional<bool>& calendar, std::int64_t& hour) {
    bool is_cal = false;
    hour = parse_timestamp_field(t, row, col, is_cal);
    if (!calendar.has_value()) {
        calendar = is_cal;
    } else if (*calendar != is_cal) {
        throw IngestError(at_line(t, row) +
                          ": mixes calendar and index timestamps in one file");
    }
    return is_cal;
}

} // namespace

Fleet ingest_fleet(const std::filesystem::path& path,
                   const std::map<std::string, double>& default_h_by_area) {
    const CsvTable t = read_csv(path);
    const std::size_t c_id = column(t, "unit_id");
    const std::size_t c_area = column(t, "area");
    const std::size_t c_s = column(t, "s_mva");
    const std::size_t c_h = column(t, "h_s");
    const std::size_t c_di = column(t, "is_di");

    Fleet fleet;
    fleet.reserve(t.rows.size());
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        UnitRecord u;
        u.unit_id = t.rows[r][c_id];
        u.area = t.rows[r][c_area];
        u.s_mva = parse_double_field(t, r, c_s);
        if (is_absent_field(t.rows[r][c_h])) {
            const auto it = default_h_by_area.find(u.area);
            if (it == default_h_by_area.end()) {
                throw IngestError(at_line(t, r) + ": unit '" + u.unit_id +
                                  "' has no inertia constant and area '" + u.area +
                                  "' has no default");
            }
            u.h_s = it->second;
        } else {
            u.h_s = parse_double_field(t, r, c_h);
        }
        u.is_dimensioning_incident = parse_bool_field(t, r, c_di);
        fleet.push_back(std::move(u));
    }

    try {
        validate_fleet(fleet);
    } catch (const IngestError& e) {
        throw IngestError(path.string() + ": " + e.what());
    }
    return fleet;
}

namespace {

// Fleet units addressed by a commitment row id: the exact unit, or the
// whole module family "<id>-*".
std::vector<std::size_t> resolve_group(const Fleet& fleet, const std::string& group_id) {
    std::vector<std::size_t> members;
    const std::string prefix = group_id + "-";
    for (std::size_t i = 0; i < fleet.size(); ++i) {
        const std::string& id = fleet[i].unit_id;
        if (id == group_id || id.rfind(prefix, 0) == 0) {
            members.push_back(i);
        }
    }
    return members;
}

} // namespace

CommitmentSeries ingest_commitment(const std::filesystem::path& path, const Fleet& fleet) {
    const CsvTable t = read_csv(path);
    const std::size_t c_ts = column(t, "timestamp");
    const std::size_t c_id = column(t, "unit_id");

    const bool online_mode = has_column(t, "online");
    if (!online_mode && !has_column(t, "p_mw")) {
        throw IngestError(path.string() + ": needs an 'online' or a 'p_mw' column");
    }
    const std::size_t c_val = online_mode ? column(t, "online") : column(t, "p_mw");

    // First pass: the time grid and the set of row groups.
    std::optional<bool> calendar;
    std::set<std::int64_t> hour_set;
    std::vector<std::int64_t> row_hours(t.rows.size());
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        parse_calendar_flag(t, r, c_ts, calendar, row_hours[r]);
        hour_set.insert(row_hours[r]);
    }
    const std::vector<std::int64_t> hours(hour_set.begin(), hour_set.end());
    const TimeGrid grid = grid_from_hours(hours, calendar.value_or(false), path);

    // cell value per (group, grid slot), plus the source row for errors
    struct Cell {
        bool present = false;
        bool absent_marker = false;
        double value = 0.0;
        std::size_t row = 0;
    };
    std::map<std::string, std::vector<Cell>> groups;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const std::string& id = t.rows[r][c_id];
        auto [it, inserted] = groups.try_emplace(id);
        if (inserted) {
            it->second.assign(grid.n, Cell{});
        }
        Cell& cell = it->second[grid.index_of(row_hours[r])];
        if (cell.present) {
            throw IngestError(at_line(t, r) + ": duplicate entry for '" + id + "' at " +
                              format_timestamp(row_hours[r], grid.calendar));
        }
        cell.present = true;
        cell.row = r;
        if (is_absent_field(t.rows[r][c_val])) {
            cell.absent_marker = true;
        } else if (online_mode) {
            cell.value = parse_bool_field(t, r, c_val) ? 1.0 : 0.0;
        } else {
            cell.value = parse_double_field(t, r, c_val);
        }
    }

    for (const auto& [id, cells] : groups) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (!cells[i].present) {
                throw IngestError(path.string() + ": '" + id + "' has no entry at " +
                                  format_timestamp(grid.start +
                                                       static_cast<std::int64_t>(i) * grid.step,
                                                   grid.calendar));
            }
        }
    }

    std::map<std::string, std::vector<std::optional<bool>>> states;
    if (online_mode) {
        std::set<std::string> fleet_ids;
        for (const UnitRecord& u : fleet) {
            fleet_ids.insert(u.unit_id);
        }
        for (const auto& [id, cells] : groups) {
            if (!fleet_ids.count(id)) {
                throw IngestError(path.string() + ": unknown unit '" + id + "'");
            }
            auto& s = states[id];
            s.reserve(grid.n);
            for (const Cell& cell : cells) {
                if (cell.absent_marker) {
                    s.emplace_back(std::nullopt);
                } else {
                    s.emplace_back(cell.value != 0.0);
                }
            }
        }
    } else {
        // Greedy fill: map produced power to online unit sets, preferring
        // units that were already online in the previous hour.
        for (const auto& [id, cells] : groups) {
            const std::vector<std::size_t> members = resolve_group(fleet, id);
            if (members.empty()) {
                throw IngestError(path.string() + ": '" + id +
                                  "' matches no fleet unit or module family");
            }
            double total_capacity = 0.0;
            for (const std::size_t m : members) {
                total_capacity += fleet[m].s_mva;
            }

            std::vector<std::vector<std::optional<bool>>*> member_states;
            for (const std::size_t m : members) {
                auto [it, inserted] = states.try_emplace(fleet[m].unit_id);
                if (!inserted) {
                    throw IngestError(path.string() + ": unit '" + fleet[m].unit_id +
                                      "' is covered by more than one commitment row id");
                }
                it->second.assign(grid.n, std::nullopt);
                member_states.push_back(&it->second);
            }

            std::vector<bool> prev_online(members.size(), false);
            for (std::size_t i = 0; i < grid.n; ++i) {
                const Cell& cell = cells[i];
                if (cell.absent_marker) {
                    // leave every member absent this hour; fail-loud on use
                    std::fill(prev_online.begin(), prev_online.end(), false);
                    continue;
                }
                const double p = cell.value;
                if (p < 0.0) {
                    throw IngestError(at_line(t, cell.row) + ": negative production");
                }
                if (p > total_capacity) {
                    throw IngestError(at_line(t, cell.row) + ": production " +
                                      std::to_string(p) + " MW exceeds the " +
                                      std::to_string(total_capacity) + " MVA rated in '" +
                                      id + "'");
                }
                std::vector<bool> online(members.size(), false);
                double covered = 0.0;
                if (p > 0.0) {
                    // already-online members first, roster order within each tier
                    for (const bool tier : {true, false}) {
                        for (std::size_t m = 0; m < members.size(); ++m) {
                            if (prev_online[m] != tier || covered >= p) {
                                continue;
                            }
                            online[m] = true;
                            covered += fleet[members[m]].s_mva;
                        }
                        if (covered >= p) {
                            break;
                        }
                    }
                }
                for (std::size_t m = 0; m < members.size(); ++m) {
                    (*member_states[m])[i] = online[m];
                }
                prev_online = std::move(online);
            }
        }
    }

    std::map<std::string, HourlySeries<bool>> by_unit;
    for (auto& [id, cells] : states) {
        HourlySeries<bool> series(Timestamp{grid.start}, std::move(cells), grid.step,
                                  grid.calendar);
        by_unit.emplace(id, expand_to_hourly(series));
    }
    try {
        return make_commitment(fleet, std::move(by_unit));
    } catch (const IngestError& e) {
        throw IngestError(path.string() + ": " + e.what());
    }
}

HourlySeries<double> ingest_kinetic_energy(const std::filesystem::path& path) {
    HourlySeries<double> series = read_series_csv(path, "ek_gws");
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (series.has_value(i) && series.at(i) < 0.0) {
            throw IngestError(path.string() + ": negative kinetic energy at " +
                              format_timestamp(series.hour_at(i), series.calendar()));
        }
    }
    return expand_to_hourly(series);
}

PricePool ingest_prices(const std::filesystem::path& path, const std::string& label) {
    const CsvTable t = read_csv(path);
    const std::size_t c_ts = column(t, "timestamp");
    const std::size_t c_zone = column(t, "zone");
    const std::size_t c_val = column(t, "value");

    // Price pools span several disjoint seasons, so no grid is imposed:
    // samples are keyed by distinct timestamps in ascending order, and every
    // timestamp must carry every zone exactly once.
    std::optional<bool> calendar;
    std::set<std::int64_t> hour_set;
    std::set<std::string> zone_set;
    std::vector<std::int64_t> row_hours(t.rows.size());
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        parse_calendar_flag(t, r, c_ts, calendar, row_hours[r]);
        hour_set.insert(row_hours[r]);
        zone_set.insert(t.rows[r][c_zone]);
    }
    if (hour_set.empty()) {
        throw IngestError(path.string() + ": no data rows");
    }
    std::map<std::int64_t, std::size_t> hour_index;
    for (const std::int64_t h : hour_set) {
        hour_index.emplace(h, hour_index.size());
    }
    const std::size_t n_hours = hour_index.size();

    const std::size_t n_zones = zone_set.size();
    std::map<std::string, std::size_t> zone_index;
    for (const std::string& z : zone_set) {
        zone_index.emplace(z, zone_index.size());
    }

    std::vector<std::vector<std::optional<Rational>>> values(
        n_zones, std::vector<std::optional<Rational>>(n_hours));
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const std::size_t z = zone_index.at(t.rows[r][c_zone]);
        const std::size_t i = hour_index.at(row_hours[r]);
        if (values[z][i].has_value()) {
            throw IngestError(at_line(t, r) + ": duplicate price for zone '" +
                              t.rows[r][c_zone] + "'");
        }
        if (is_absent_field(t.rows[r][c_val])) {
            throw IngestError(at_line(t, r) + ": price pools cannot contain absent values");
        }
        values[z][i] = parse_decimal_field(t, r, c_val);
    }

    PricePool pool;
    pool.label = label;
    pool.unit = label.rfind("fcr:", 0) == 0 ? PriceUnit::eur_per_mw : PriceUnit::eur_per_mwh;
    pool.samples.reserve(n_hours);
    const Rational divisor(static_cast<std::int64_t>(n_zones));
    const bool is_calendar = calendar.value_or(false);
    for (const auto& [hour, i] : hour_index) {
        Rational sum = 0;
        for (std::size_t z = 0; z < n_zones; ++z) {
            if (!values[z][i].has_value()) {
                std::string zone_name = "?";
                for (const auto& [zone, idx] : zone_index) {
                    if (idx == z) {
                        zone_name = zone;
                    }
                }
                throw IngestError(path.string() + ": zone '" + zone_name +
                                  "' has no price at " + format_timestamp(hour, is_calendar));
            }
            sum += *values[z][i];
        }
        pool.samples.push_back(sum / divisor);
    }

    if (is_calendar) {
        std::set<int> years;
        for (const std::int64_t h : hour_set) {
            years.insert(civil_from_hour(h).year);
        }
        pool.years = static_cast<int>(years.size());
    } else {
        pool.years = std::max<int>(
            1, static_cast<int>(pool.samples.size() /
                                static_cast<std::size_t>(pool.hours_per_season)));
    }
    return pool;
}

std::vector<Event> ingest_events(const std::filesystem::path& path) {
    const CsvTable t = read_csv(path);
    const std::size_t c_start = column(t, "start");
    const std::size_t c_end = column(t, "end");
    const std::size_t c_mw = column(t, "reduction_mw");

    std::optional<bool> calendar;
    std::vector<Event> events;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        Event e;
        parse_calendar_flag(t, r, c_start, calendar, e.start_hour);
        parse_calendar_flag(t, r, c_end, calendar, e.end_hour);
        e.peak_required_reduction_mw = parse_double_field(t, r, c_mw);
        e.source = EventSource::raw;
        if (e.end_hour < e.start_hour) {
            throw IngestError(at_line(t, r) + ": event ends before it starts");
        }
        if (e.peak_required_reduction_mw < 0.0 ||
            std::fmod(e.peak_required_reduction_mw, 50.0) != 0.0) {
            throw IngestError(at_line(t, r) +
                              ": reduction must be a non-negative multiple of 50 MW");
        }
        if (!events.empty() && e.start_hour <= events.back().end_hour) {
            throw IngestError(at_line(t, r) + ": events must be ordered and disjoint");
        }
        events.push_back(e);
    }
    return events;
}

HourlySeries<double> read_series_csv(const std::filesystem::path& path,
                                     const std::string& value_column) {
    const CsvTable t = read_csv(path);
    const std::size_t c_ts = column(t, "timestamp");
    const std::size_t c_val = column(t, value_column);
    if (t.rows.empty()) {
        throw IngestError(path.string() + ": no data rows");
    }

    std::optional<bool> calendar;
    std::vector<std::int64_t> row_hours(t.rows.size());
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        parse_calendar_flag(t, r, c_ts, calendar, row_hours[r]);
        if (r > 0 && row_hours[r] <= row_hours[r - 1]) {
            throw IngestError(at_line(t, r) + ": timestamps must be strictly increasing");
        }
    }
    const TimeGrid grid = grid_from_hours(row_hours, calendar.value_or(false), path);

    std::vector<std::optional<double>> cells;
    cells.reserve(t.rows.size());
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        if (is_absent_field(t.rows[r][c_val])) {
            cells.emplace_back(std::nullopt);
        } else {
            cells.emplace_back(parse_double_field(t, r, c_val));
        }
    }
    return HourlySeries<double>(Timestamp{grid.start}, std::move(cells), grid.step,
                                grid.calendar);
}

void write_series_csv(const std::filesystem::path& path, const HourlySeries<double>& series,
                      const std::string& value_column) {
    std::ofstream out(path);
    if (!out) {
        throw IngestError("cannot write '" + path.string() + "'");
    }
    out << "timestamp," << value_column << "\n";
    char buf[40];
    for (std::size_t i = 0; i < series.size(); ++i) {
        out << format_timestamp(series.hour_at(i), series.calendar()) << ',';
        if (series.has_value(i)) {
            std::snprintf(buf, sizeof buf, "%.17g", series.at(i));
            out << buf;
        } else {
            out << "NA";
        }
        out << '\n';
    }
    if (!out) {
        throw IngestError("failed while writing '" + path.string() + "'");
    }
}

} // namespace nordfreq::io
