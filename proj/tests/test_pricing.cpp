#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nordfreq/pricing.hpp"

#include <algorithm>
#include <optional>
#include <vector>

using namespace nordfreq;

namespace {

PricePool make_pool(std::vector<Rational> samples, const std::string& label = "test") {
    PricePool pool;
    pool.label = label;
    pool.samples = std::move(samples);
    return pool;
}

PricePool counting_pool(std::size_t n) {
    std::vector<Rational> samples;
    samples.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        samples.emplace_back(static_cast<int>(i + 1));
    }
    return make_pool(std::move(samples));
}

// independent nearest-rank percentile over the replicate means
Rational nearest_rank(std::vector<Rational> means, int percent) {
    std::sort(means.begin(), means.end());
    std::size_t rank = (static_cast<std::size_t>(percent) * means.size() + 99) / 100;
    rank = std::max<std::size_t>(rank, 1);
    return means[rank - 1];
}

} // namespace

TEST_CASE("price pools validate their metadata") {
    CHECK_THROWS_AS(make_pool({}, "empty").validate(), ParameterError);
    CHECK_THROWS_AS(make_pool({Rational(1)}, "").validate(), ParameterError);
    PricePool bad = make_pool({Rational(1)});
    bad.years = 0;
    CHECK_THROWS_AS(bad.validate(), ParameterError);
    CHECK_NOTHROW(make_pool({Rational(1)}).validate());
}

TEST_CASE("zonal_average takes the exact mean across zones") {
    HourlySeries<Rational> se3(Timestamp{0}, std::vector<Rational>{Rational(30), Rational(40)});
    HourlySeries<Rational> fi(Timestamp{0}, std::vector<Rational>{Rational(35), Rational(41)});

    const auto avg = zonal_average({se3, fi});
    CHECK(avg.size() == 2);
    CHECK(avg.at(0) == Rational(65, 2));
    CHECK(avg.at(1) == Rational(81, 2));

    // a single zone averages to itself
    const auto solo = zonal_average({se3});
    CHECK(solo.at(0) == Rational(30));
}

TEST_CASE("zonal_average is absent where any zone is absent") {
    std::vector<std::optional<Rational>> a{Rational(10), std::nullopt};
    std::vector<std::optional<Rational>> b{Rational(20), Rational(30)};
    const auto avg = zonal_average({HourlySeries<Rational>(Timestamp{0}, a),
                                    HourlySeries<Rational>(Timestamp{0}, b)});
    CHECK(avg.at(0) == Rational(15));
    CHECK_FALSE(avg.has_value(1));
}

TEST_CASE("zonal_average rejects incompatible grids") {
    HourlySeries<Rational> hourly(Timestamp{0}, std::vector<Rational>{Rational(1), Rational(2)});
    HourlySeries<Rational> coarse(Timestamp{0}, std::vector<Rational>{Rational(1)}, 3);
    CHECK_THROWS_AS(zonal_average({hourly, coarse}), AlignmentError);

    HourlySeries<Rational> late(Timestamp{10}, std::vector<Rational>{Rational(1)});
    CHECK_THROWS_AS(zonal_average({hourly, late}), EmptyOverlapError);
    CHECK_THROWS_AS(zonal_average({}), ParameterError);
}

TEST_CASE("bootstrap is deterministic for a fixed seed") {
    const PricePool pool = counting_pool(100);
    BootstrapParams params;
    params.subsample_size = 8;
    params.replicates = 400;
    params.seed = 42;

    const auto a = bootstrap_mean_distribution(pool, params);
    const auto b = bootstrap_mean_distribution(pool, params);
    REQUIRE(a.replicate_means.size() == b.replicate_means.size());
    for (std::size_t i = 0; i < a.replicate_means.size(); ++i) {
        CHECK(a.replicate_means[i] == b.replicate_means[i]);
    }
    CHECK(a.p5 == b.p5);
    CHECK(a.p50 == b.p50);
    CHECK(a.p95 == b.p95);

    // a different seed must actually change the draw
    params.seed = 43;
    const auto c = bootstrap_mean_distribution(pool, params);
    CHECK(c.replicate_means != a.replicate_means);
}

TEST_CASE("bootstrap results do not depend on the thread count") {
    const PricePool pool = counting_pool(100);
    BootstrapParams one;
    one.subsample_size = 8;
    one.replicates = 250;
    one.seed = 7;
    one.threads = 1;

    BootstrapParams four = one;
    four.threads = 4;

    const auto a = bootstrap_mean_distribution(pool, one);
    const auto b = bootstrap_mean_distribution(pool, four);
    REQUIRE(a.replicate_means.size() == b.replicate_means.size());
    for (std::size_t i = 0; i < a.replicate_means.size(); ++i) {
        CHECK(a.replicate_means[i] == b.replicate_means[i]);
    }
}

TEST_CASE("bootstrap percentiles are ordered and within the pool's range") {
    const PricePool pool = counting_pool(60);
    BootstrapParams params;
    params.subsample_size = 10;
    params.replicates = 500;
    params.seed = 3;

    const auto result = bootstrap_mean_distribution(pool, params);
    CHECK(result.p5 <= result.p50);
    CHECK(result.p50 <= result.p95);
    for (const Rational& m : result.replicate_means) {
        CHECK(m >= Rational(1));
        CHECK(m <= Rational(60));
    }
    CHECK(result.seed == 3);
    CHECK(result.subsample_size == 10);
    CHECK_FALSE(result.with_replacement);
}

TEST_CASE("percentiles follow the nearest-rank definition") {
    const PricePool pool = counting_pool(40);
    BootstrapParams params;
    params.subsample_size = 5;
    params.replicates = 123; // deliberately not a multiple of 100
    params.seed = 9;

    const auto result = bootstrap_mean_distribution(pool, params);
    CHECK(result.p5 == nearest_rank(result.replicate_means, 5));
    CHECK(result.p50 == nearest_rank(result.replicate_means, 50));
    CHECK(result.p95 == nearest_rank(result.replicate_means, 95));
}

TEST_CASE("drawing the whole pool without replacement has zero spread") {
    const PricePool pool =
        make_pool({parse_decimal("0.1"), parse_decimal("0.2"), parse_decimal("0.3")});
    BootstrapParams params;
    params.subsample_size = 3;
    params.replicates = 50;

    const auto result = bootstrap_mean_distribution(pool, params);
    for (const Rational& m : result.replicate_means) {
        CHECK(m == Rational(1, 5)); // exact mean of 0.1, 0.2, 0.3
    }
    CHECK(result.p5 == result.p95);
}

TEST_CASE("a degenerate pool collapses every percentile") {
    const PricePool pool = make_pool(std::vector<Rational>(25, parse_decimal("54.06")));
    BootstrapParams params;
    params.subsample_size = 7;
    params.replicates = 64;

    const auto result = bootstrap_mean_distribution(pool, params);
    CHECK(result.p5 == parse_decimal("54.06"));
    CHECK(result.p50 == parse_decimal("54.06"));
    CHECK(result.p95 == parse_decimal("54.06"));
}

TEST_CASE("huge denominators fall back to exact generic arithmetic") {
    // lcm of the two denominators exceeds 64 bits, so the fixed-point fast
    // path must bow out; the result stays exact either way
    const Rational a(1, BigInt(1) << 62);
    Rational b(1);
    for (int i = 0; i < 39; ++i) {
        b /= 3;
    }
    const PricePool pool = make_pool({a, b});
    BootstrapParams params;
    params.subsample_size = 2;
    params.replicates = 10;

    const auto result = bootstrap_mean_distribution(pool, params);
    const Rational expected = (a + b) / 2;
    for (const Rational& m : result.replicate_means) {
        CHECK(m == expected);
    }
}

TEST_CASE("sampling with replacement allows oversized subsamples") {
    const PricePool pool = counting_pool(10);
    BootstrapParams params;
    params.subsample_size = 30;
    params.replicates = 40;
    params.with_replacement = true;

    const auto result = bootstrap_mean_distribution(pool, params);
    CHECK(result.with_replacement);
    for (const Rational& m : result.replicate_means) {
        CHECK(m >= Rational(1));
        CHECK(m <= Rational(10));
    }
}

TEST_CASE("bootstrap parameter validation") {
    const PricePool pool = counting_pool(10);
    BootstrapParams params;

    params.subsample_size = 11; // larger than the pool, without replacement
    CHECK_THROWS_AS(bootstrap_mean_distribution(pool, params), ParameterError);

    params.subsample_size = 0;
    CHECK_THROWS_AS(bootstrap_mean_distribution(pool, params), ParameterError);

    params.subsample_size = 5;
    params.replicates = 0;
    CHECK_THROWS_AS(bootstrap_mean_distribution(pool, params), ParameterError);
}

TEST_CASE("percentile_scenarios assembles one world per level") {
    auto dist = [](const std::string& label, int p5, int p50, int p95) {
        BootstrapResult r;
        r.label = label;
        r.p5 = Rational(p5);
        r.p50 = Rational(p50);
        r.p95 = Rational(p95);
        return r;
    };
    std::map<std::string, BootstrapResult> distributions;
    distributions.emplace("regulating_power", dist("regulating_power", 30, 54, 90));
    distributions.emplace("fcr:DE", dist("fcr:DE", 8, 11, 20));
    distributions.emplace("congestion_rent:KO", dist("congestion_rent:KO", 1, 2, 4));

    const auto scenarios = percentile_scenarios(distributions, {"KO"}, {"DE"});
    REQUIRE(scenarios.size() == 3);
    CHECK(scenarios[0].level == PriceLevel::low);
    CHECK(scenarios[1].level == PriceLevel::median);
    CHECK(scenarios[2].level == PriceLevel::high);

    CHECK(scenarios[0].regulating_eur_per_mwh == Rational(30));
    CHECK(scenarios[1].regulating_eur_per_mwh == Rational(54));
    CHECK(scenarios[2].regulating_eur_per_mwh == Rational(90));
    CHECK(scenarios[1].fcr_eur_per_mw_by_country.at("DE") == Rational(11));
    CHECK(scenarios[2].rent_eur_per_mw_by_link.at("KO") == Rational(4));
}

TEST_CASE("percentile_scenarios misses nothing silently") {
    std::map<std::string, BootstrapResult> distributions;
    CHECK_THROWS_AS(percentile_scenarios(distributions, {}, {}), ConfigError);

    BootstrapResult reg;
    reg.label = "regulating_power";
    distributions.emplace("regulating_power", reg);
    CHECK_NOTHROW(percentile_scenarios(distributions, {}, {}));
    CHECK_THROWS_AS(percentile_scenarios(distributions, {"KO"}, {}), ConfigError);
    CHECK_THROWS_AS(percentile_scenarios(distributions, {}, {"DE"}), ConfigError);
}

TEST_CASE("price level names") {
    CHECK(std::string(to_string(PriceLevel::low)) == "low");
    CHECK(std::string(to_string(PriceLevel::median)) == "median");
    CHECK(std::string(to_string(PriceLevel::high)) == "high");
}
