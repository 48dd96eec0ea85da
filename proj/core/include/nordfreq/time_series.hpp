#ifndef NORDFREQ_TIME_SERIES_HPP
#define NORDFREQ_TIME_SERIES_HPP

#include "nordfreq/errors.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nordfreq {

// An hour on the scenario clock.  The index is either scenario-relative
// (hour 0 = first hour of the study) or, for calendar-anchored series,
// absolute hours since the Unix epoch (UTC).  Which one applies is recorded
// on the series, not on individual timestamps.
struct Timestamp {
    std::int64_t hour = 0;

    auto operator<=>(const Timestamp&) const = default;
};

// Civil UTC date/time at whole-hour resolution, for calendar conversions.
struct CivilHour {
    int year = 1970;
    int month = 1; // 1..12
    int day = 1;   // 1..31
    int hour = 0;  // 0..23

    auto operator<=>(const CivilHour&) const = default;
};

// Hours since the Unix epoch <-> civil UTC, valid far beyond any study
// horizon.  Throws ParseError on out-of-range civil fields.
std::int64_t hour_from_civil(const CivilHour& c);
CivilHour civil_from_hour(std::int64_t hour);

// "2018-06-23T11:00:00Z" for a calendar-anchored hour index.
std::string iso_from_hour(std::int64_t hour);

// Accepts "YYYY-MM-DDTHH:MM[:SS][Z]" (space instead of 'T' also allowed).
// Minutes and seconds must be zero: the engine works on whole hours only.
std::int64_t hour_from_iso(const std::string& text);

// A gap-free hourly (or n-hourly) series.  Cells may be explicitly absent;
// reading an absent cell's value throws MissingValueError rather than
// silently interpolating.  Series are immutable after construction, which
// makes them safe to share across threads.
template <class V>
class HourlySeries {
public:
    using value_type = V;

    HourlySeries(Timestamp start,
                 std::vector<std::optional<V>> cells,
                 int step_hours = 1,
                 bool calendar = false)
        : start_(start),
          step_hours_(step_hours),
          calendar_(calendar),
          cells_(std::move(cells)) {
        if (step_hours_ < 1) {
            throw ParameterError("series step must be at least one hour");
        }
        if (cells_.empty()) {
            throw ParameterError("series must contain at least one cell");
        }
    }

    HourlySeries(Timestamp start,
                 const std::vector<V>& values,
                 int step_hours = 1,
                 bool calendar = false)
        : HourlySeries(start, to_cells(values), step_hours, calendar) {}

    static HourlySeries constant(Timestamp start,
                                 std::size_t n,
                                 const V& value,
                                 int step_hours = 1,
                                 bool calendar = false) {
        return HourlySeries(start,
                            std::vector<std::optional<V>>(n, std::optional<V>(value)),
                            step_hours, calendar);
    }

    std::size_t size() const { return cells_.size(); }
    Timestamp start() const { return start_; }
    int step_hours() const { return step_hours_; }
    bool calendar() const { return calendar_; }

    std::int64_t hour_at(std::size_t i) const {
        return start_.hour + static_cast<std::int64_t>(i) * step_hours_;
    }

    // First hour past the series (exclusive bound of the covered range).
    std::int64_t end_hour() const { return hour_at(cells_.size()); }

    bool contains_hour(std::int64_t hour) const {
        return hour >= start_.hour && hour < end_hour() &&
               (hour - start_.hour) % step_hours_ == 0;
    }

    std::size_t index_of(std::int64_t hour) const {
        if (hour < start_.hour || hour >= end_hour()) {
            throw RangeError("hour " + std::to_string(hour) + " outside series range [" +
                             std::to_string(start_.hour) + ", " +
                             std::to_string(end_hour()) + ")");
        }
        if ((hour - start_.hour) % step_hours_ != 0) {
            throw AlignmentError("hour " + std::to_string(hour) +
                                 " does not fall on the series step grid");
        }
        return static_cast<std::size_t>((hour - start_.hour) / step_hours_);
    }

    bool has_value(std::size_t i) const { return cell(i).has_value(); }

    const std::optional<V>& cell(std::size_t i) const {
        if (i >= cells_.size()) {
            throw RangeError("cell index " + std::to_string(i) + " out of bounds");
        }
        return cells_[i];
    }

    // Value of cell i; absent cells fail loudly.
    const V& at(std::size_t i) const {
        const auto& c = cell(i);
        if (!c.has_value()) {
            throw MissingValueError("value requested at hour " +
                                    std::to_string(hour_at(i)) +
                                    " is marked absent");
        }
        return *c;
    }

    const V& value_at(std::int64_t hour) const { return at(index_of(hour)); }

    const std::vector<std::optional<V>>& cells() const { return cells_; }

private:
    static std::vector<std::optional<V>> to_cells(const std::vector<V>& values) {
        std::vector<std::optional<V>> cells;
        cells.reserve(values.size());
        for (const V& v : values) {
            cells.emplace_back(v);
        }
        return cells;
    }

    Timestamp start_;
    int step_hours_;
    bool calendar_;
    std::vector<std::optional<V>> cells_;
};

// Pairs two series over their common time range.  Steps and calendar
// anchoring must match and the start offsets must agree modulo the step;
// otherwise AlignmentError.  A missing overlap is EmptyOverlapError.  A
// paired cell is present only where both inputs are present: alignment
// restructures data, it never invents values.
template <class V, class W>
HourlySeries<std::pair<V, W>> align(const HourlySeries<V>& a, const HourlySeries<W>& b) {
    if (a.step_hours() != b.step_hours()) {
        throw AlignmentError("cannot align series with steps " +
                             std::to_string(a.step_hours()) + "h and " +
                             std::to_string(b.step_hours()) + "h");
    }
    if (a.calendar() != b.calendar()) {
        throw AlignmentError("cannot align a calendar-anchored series with a relative one");
    }
    const int step = a.step_hours();
    if ((b.start().hour - a.start().hour) % step != 0) {
        throw AlignmentError("series grids are offset by a non-multiple of the step");
    }

    const std::int64_t lo = std::max(a.start().hour, b.start().hour);
    const std::int64_t hi = std::min(a.end_hour(), b.end_hour());
    if (lo >= hi) {
        throw EmptyOverlapError("series time ranges do not overlap");
    }

    const std::size_t n = static_cast<std::size_t>((hi - lo) / step);
    std::vector<std::optional<std::pair<V, W>>> cells;
    cells.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::int64_t h = lo + static_cast<std::int64_t>(i) * step;
        const auto& ca = a.cell(a.index_of(h));
        const auto& cb = b.cell(b.index_of(h));
        if (ca.has_value() && cb.has_value()) {
            cells.emplace_back(std::pair<V, W>(*ca, *cb));
        } else {
            cells.emplace_back(std::nullopt);
        }
    }
    return HourlySeries<std::pair<V, W>>(Timestamp{lo}, std::move(cells), step, a.calendar());
}

// Replicates each n-hourly cell n times, yielding an hourly series covering
// the same range (step-hold expansion; absent cells stay absent).
template <class V>
HourlySeries<V> expand_to_hourly(const HourlySeries<V>& s) {
    if (s.step_hours() == 1) {
        return s;
    }
    std::vector<std::optional<V>> cells;
    cells.reserve(s.size() * static_cast<std::size_t>(s.step_hours()));
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (int k = 0; k < s.step_hours(); ++k) {
            cells.push_back(s.cell(i));
        }
    }
    return HourlySeries<V>(s.start(), std::move(cells), 1, s.calendar());
}

} // namespace nordfreq

#endif // NORDFREQ_TIME_SERIES_HPP
