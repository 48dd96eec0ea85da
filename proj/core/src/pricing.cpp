#include "nordfreq/pricing.hpp"

#include "nordfreq/errors.hpp"
#include "nordfreq/rng.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <thread>

namespace nordfreq {

void PricePool::validate() const {
    if (label.empty()) {
        throw ParameterError("price pool needs a label");
    }
    if (samples.empty()) {
        throw ParameterError("price pool '" + label + "' has no samples");
    }
    if (years < 1 || hours_per_season < 1) {
        throw ParameterError("price pool '" + label + "' has invalid season metadata");
    }
}

HourlySeries<Rational> zonal_average(const std::vector<HourlySeries<Rational>>& zones) {
    if (zones.empty()) {
        throw ParameterError("zonal average needs at least one zone");
    }
    const HourlySeries<Rational>& first = zones.front();
    const int step = first.step_hours();
    for (const auto& z : zones) {
        if (z.step_hours() != step) {
            throw AlignmentError("zone series use different steps");
        }
        if (z.calendar() != first.calendar()) {
            throw AlignmentError("zone series mix calendar-anchored and relative time");
        }
        if ((z.start().hour - first.start().hour) % step != 0) {
            throw AlignmentError("zone series grids are offset by a non-multiple of the step");
        }
    }

    std::int64_t lo = first.start().hour;
    std::int64_t hi = first.end_hour();
    for (const auto& z : zones) {
        lo = std::max(lo, z.start().hour);
        hi = std::min(hi, z.end_hour());
    }
    if (lo >= hi) {
        throw EmptyOverlapError("zone series have no common time range");
    }

    const Rational divisor(static_cast<int>(zones.size()));
    const std::size_t n = static_cast<std::size_t>((hi - lo) / step);
    std::vector<std::optional<Rational>> cells;
    cells.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::int64_t h = lo + static_cast<std::int64_t>(i) * step;
        Rational sum = 0;
        bool all_present = true;
        for (const auto& z : zones) {
            const auto& cell = z.cell(z.index_of(h));
            if (!cell.has_value()) {
                all_present = false;
                break;
            }
            sum += *cell;
        }
        if (all_present) {
            cells.emplace_back(sum / divisor);
        } else {
            cells.emplace_back(std::nullopt);
        }
    }
    return HourlySeries<Rational>(Timestamp{lo}, std::move(cells), step, first.calendar());
}

namespace {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

// Fixed-point view of the pool: samples as int64 numerators over one common
// denominator, so a replicate's sum is a couple of thousand integer adds.
struct ScaledPool {
    std::vector<std::int64_t> nums;
    BigInt den = 1;
    bool ok = false;
};

ScaledPool try_scale(const std::vector<Rational>& samples) {
    ScaledPool sp;
    for (const Rational& s : samples) {
        BigInt d = denominator(s);
        sp.den = boost::multiprecision::lcm(sp.den, d);
        if (sp.den > BigInt(std::numeric_limits<std::int64_t>::max())) {
            return sp; // give up; the generic path handles it
        }
    }
    sp.nums.reserve(samples.size());
    const BigInt limit = BigInt(std::numeric_limits<std::int64_t>::max()) >> 16;
    for (const Rational& s : samples) {
        const BigInt num = numerator(s) * (sp.den / denominator(s));
        if (num > limit || num < -limit) {
            return sp;
        }
        sp.nums.push_back(num.convert_to<std::int64_t>());
    }
    sp.ok = true;
    return sp;
}

// Draws k distinct indices from [0, n) (Robert Floyd's algorithm) and feeds
// them to `consume`.  `stamp` is a reusable table marking indices already
// chosen in this replicate; `mark` must be unique per (thread, replicate).
template <class Consume>
void sample_distinct(Xoshiro256ss& rng, std::size_t n, std::size_t k,
                     std::vector<std::uint32_t>& stamp, std::uint32_t mark,
                     Consume&& consume) {
    for (std::size_t j = n - k; j < n; ++j) {
        const std::size_t t = static_cast<std::size_t>(rng.below(j + 1));
        const std::size_t pick = stamp[t] == mark ? j : t;
        stamp[pick] = mark;
        consume(pick);
    }
}

} // namespace

BootstrapResult bootstrap_mean_distribution(const PricePool& pool,
                                            const BootstrapParams& params) {
    pool.validate();
    const std::size_t n = pool.samples.size();
    const std::size_t k = params.subsample_size;
    if (k == 0) {
        throw ParameterError("bootstrap subsample size must be positive");
    }
    if (!params.with_replacement && k > n) {
        throw ParameterError("cannot draw " + std::to_string(k) + " distinct samples from " +
                             std::to_string(n) + " (pool '" + pool.label + "')");
    }
    if (params.replicates == 0) {
        throw ParameterError("bootstrap needs at least one replicate");
    }

    const std::uint64_t label_stream = fnv1a(pool.label);
    const ScaledPool scaled = try_scale(pool.samples);

    unsigned threads = params.threads != 0 ? params.threads : std::thread::hardware_concurrency();
    threads = std::max(1u, std::min<unsigned>(threads, 64));
    threads = static_cast<unsigned>(
        std::min<std::size_t>(threads, params.replicates));

    std::vector<Rational> means(params.replicates);

    auto run_range = [&](std::size_t lo, std::size_t hi) {
        std::vector<std::uint32_t> stamp;
        if (!params.with_replacement) {
            stamp.assign(n, std::numeric_limits<std::uint32_t>::max());
        }
        const Rational count(static_cast<std::int64_t>(k));
        for (std::size_t r = lo; r < hi; ++r) {
            Xoshiro256ss rng(params.seed, label_stream + r);
            const auto mark = static_cast<std::uint32_t>(r);
            if (scaled.ok) {
                __int128 sum = 0;
                if (params.with_replacement) {
                    for (std::size_t i = 0; i < k; ++i) {
                        sum += scaled.nums[static_cast<std::size_t>(rng.below(n))];
                    }
                } else {
                    sample_distinct(rng, n, k, stamp, mark,
                                    [&](std::size_t idx) { sum += scaled.nums[idx]; });
                }
                BigInt total = 0;
                // import the 128-bit sum in two 64-bit halves
                const bool neg = sum < 0;
                unsigned __int128 mag = neg ? static_cast<unsigned __int128>(-sum)
                                            : static_cast<unsigned __int128>(sum);
                total = BigInt(static_cast<std::uint64_t>(mag >> 64));
                total <<= 64;
                total += BigInt(static_cast<std::uint64_t>(mag));
                if (neg) {
                    total = -total;
                }
                means[r] = Rational(total, scaled.den * k);
            } else {
                Rational sum = 0;
                if (params.with_replacement) {
                    for (std::size_t i = 0; i < k; ++i) {
                        sum += pool.samples[static_cast<std::size_t>(rng.below(n))];
                    }
                } else {
                    sample_distinct(rng, n, k, stamp, mark,
                                    [&](std::size_t idx) { sum += pool.samples[idx]; });
                }
                means[r] = sum / count;
            }
        }
    };

    if (threads == 1) {
        run_range(0, params.replicates);
    } else {
        std::vector<std::thread> workers;
        workers.reserve(threads);
        const std::size_t chunk = (params.replicates + threads - 1) / threads;
        for (unsigned w = 0; w < threads; ++w) {
            const std::size_t lo = static_cast<std::size_t>(w) * chunk;
            const std::size_t hi = std::min(lo + chunk, params.replicates);
            if (lo >= hi) {
                break;
            }
            workers.emplace_back(run_range, lo, hi);
        }
        for (auto& worker : workers) {
            worker.join();
        }
    }

    std::vector<Rational> sorted = means;
    std::sort(sorted.begin(), sorted.end());
    auto nearest_rank = [&](int percent) -> const Rational& {
        // rank = ceil(p/100 * N), 1-based
        const std::size_t rank =
            (static_cast<std::size_t>(percent) * sorted.size() + 99) / 100;
        return sorted[std::max<std::size_t>(rank, 1) - 1];
    };

    BootstrapResult out;
    out.label = pool.label;
    out.p5 = nearest_rank(5);
    out.p50 = nearest_rank(50);
    out.p95 = nearest_rank(95);
    out.replicate_means = std::move(means);
    out.seed = params.seed;
    out.subsample_size = k;
    out.with_replacement = params.with_replacement;
    return out;
}

namespace {

const BootstrapResult& require_distribution(
    const std::map<std::string, BootstrapResult>& distributions, const std::string& label) {
    const auto it = distributions.find(label);
    if (it == distributions.end()) {
        throw ConfigError("no bootstrap distribution for required price '" + label + "'");
    }
    return it->second;
}

} // namespace

std::vector<PriceScenario> percentile_scenarios(
    const std::map<std::string, BootstrapResult>& distributions,
    const std::vector<std::string>& link_ids,
    const std::vector<std::string>& countries) {
    const BootstrapResult& regulating = require_distribution(distributions, "regulating_power");

    std::vector<PriceScenario> out;
    for (const PriceLevel level : {PriceLevel::low, PriceLevel::median, PriceLevel::high}) {
        auto pick = [&](const BootstrapResult& d) -> const Rational& {
            switch (level) {
            case PriceLevel::low: return d.p5;
            case PriceLevel::high: return d.p95;
            case PriceLevel::median: break;
            }
            return d.p50;
        };

        PriceScenario scenario;
        scenario.level = level;
        scenario.regulating_eur_per_mwh = pick(regulating);
        for (const std::string& cc : countries) {
            scenario.fcr_eur_per_mw_by_country[cc] =
                pick(require_distribution(distributions, "fcr:" + cc));
        }
        for (const std::string& link : link_ids) {
            scenario.rent_eur_per_mw_by_link[link] =
                pick(require_distribution(distributions, "congestion_rent:" + link));
        }
        out.push_back(std::move(scenario));
    }
    return out;
}

const char* to_string(PriceLevel level) {
    switch (level) {
    case PriceLevel::low: return "low";
    case PriceLevel::median: return "median";
    case PriceLevel::high: return "high";
    }
    return "median";
}

} // namespace nordfreq
