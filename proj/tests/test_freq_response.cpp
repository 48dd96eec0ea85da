#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nordfreq/freq_response.hpp"
#include "reference_points.hpp"

#include <utility>
#include <vector>

using namespace nordfreq;

TEST_CASE("RoCoF of the reference incident") {
    // losing 1450 MW at 150 GWs: 50 * 1450 / (2 * 150000) Hz/s
    CHECK(rocof_hz_per_s(PowerMW(1450), EnergyGWs(150)) ==
          doctest::Approx(0.24166666666666667).epsilon(1e-12));
}

TEST_CASE("RoCoF scales linearly in dP and inversely in E_k") {
    const double base = rocof_hz_per_s(PowerMW(1000), EnergyGWs(120));
    CHECK(rocof_hz_per_s(PowerMW(2000), EnergyGWs(120)) == doctest::Approx(2 * base));
    CHECK(rocof_hz_per_s(PowerMW(1000), EnergyGWs(60)) == doctest::Approx(2 * base));
    CHECK(rocof_hz_per_s(PowerMW(1000), EnergyGWs(120), FrequencyHz(60)) ==
          doctest::Approx(base * 60.0 / 50.0));
}

TEST_CASE("RoCoF rejects out-of-domain arguments") {
    CHECK_THROWS_AS(rocof_hz_per_s(PowerMW(1450), EnergyGWs(0)), DomainError);
    CHECK_THROWS_AS(rocof_hz_per_s(PowerMW(1450), EnergyGWs(150), FrequencyHz(0)),
                    DomainError);
}

TEST_CASE("deviation regression at reference abscissae") {
    const auto coeffs = default_under_coefficients();
    CHECK(coeffs.alpha == 0.0757);
    CHECK(coeffs.beta == 0.0369);

    // x = 900/150 = 6 MW/GWs exactly
    CHECK(ifd_regression(PowerMW(900), EnergyGWs(150), coeffs).value ==
          doctest::Approx(0.4911).epsilon(1e-12));
    // x = 0: the intercept alone
    CHECK(ifd_regression(PowerMW(0), EnergyGWs(150), coeffs).value ==
          doctest::Approx(0.0369).epsilon(1e-12));
}

TEST_CASE("deviation regression is a pure function of the ratio") {
    const auto coeffs = default_under_coefficients();
    // doubling both arguments leaves the ratio (and the double result) unchanged
    const double a = ifd_regression(PowerMW(1450), EnergyGWs(145), coeffs).value;
    const double b = ifd_regression(PowerMW(2900), EnergyGWs(290), coeffs).value;
    CHECK(a == b);
}

TEST_CASE("deviation regression rejects out-of-domain arguments") {
    const auto coeffs = default_under_coefficients();
    CHECK_THROWS_AS(ifd_regression(PowerMW(-1), EnergyGWs(150), coeffs), DomainError);
    CHECK_THROWS_AS(ifd_regression(PowerMW(1450), EnergyGWs(0), coeffs), DomainError);
    CHECK_THROWS_AS(RegressionCoefficients(0.0, 0.1), DomainError);
    CHECK_THROWS_AS(RegressionCoefficients(-0.1, 0.1), DomainError);
}

TEST_CASE("total deviation adds the FCR-N band to the post-band deviation") {
    SecurityLimits limits;
    CHECK(limits.effective_limit_hz() == doctest::Approx(0.95).epsilon(1e-15));
    CHECK(total_ifd_from_nominal(FrequencyHz(0.4911), limits).value ==
          doctest::Approx(0.5911).epsilon(1e-12));
    CHECK_THROWS_AS(total_ifd_from_nominal(FrequencyHz(-0.01), limits), DomainError);
}

TEST_CASE("security limits validate their envelope") {
    SecurityLimits ok;
    CHECK_NOTHROW(ok.validate());

    SecurityLimits bad = ok;
    bad.safety_margin_hz = 1.0; // margin must stay below max_ifd
    CHECK_THROWS_AS(bad.validate(), DomainError);

    bad = ok;
    bad.fcr_n_band_hz = -0.1;
    CHECK_THROWS_AS(bad.validate(), DomainError);

    bad = ok;
    bad.max_ifd_hz = 0.0;
    CHECK_THROWS_AS(bad.validate(), DomainError);

    bad = ok;
    bad.load_shed_floor_hz = 50.5;
    CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("OLS recovers an exact line") {
    std::vector<std::pair<double, double>> pts;
    for (double x : {1.0, 2.0, 4.0, 8.0}) {
        pts.emplace_back(x, 0.08 * x + 0.03);
    }
    const FitResult fit = fit_regression(pts);
    CHECK(fit.coeffs.alpha == doctest::Approx(0.08).epsilon(1e-12));
    CHECK(fit.coeffs.beta == doctest::Approx(0.03).epsilon(1e-12));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.n_points == 4);
}

TEST_CASE("OLS on the historical scatter") {
    const FitResult fit = fit_regression(testutil::kIfdScatter);
    CHECK(fit.coeffs.alpha == doctest::Approx(0.075083090030).epsilon(1e-9));
    CHECK(fit.coeffs.beta == doctest::Approx(0.039245826655).epsilon(1e-9));
    CHECK(fit.r_squared == doctest::Approx(0.942391481).epsilon(1e-9));

    // the freshly fitted line stays close to the deployed coefficients
    CHECK(fit.coeffs.alpha == doctest::Approx(0.0757).epsilon(0.01));
    CHECK(fit.coeffs.beta == doctest::Approx(0.0369).epsilon(0.1));
}

TEST_CASE("deployed line explains the historical scatter") {
    const auto coeffs = default_under_coefficients();
    const double r2 = r_squared_against(testutil::kIfdScatter, coeffs);
    CHECK(r2 == doctest::Approx(0.942315614).epsilon(1e-9));
    CHECK(r2 > 0.91);
    CHECK(r2 < 0.97);

    const double sd = residual_std(testutil::kIfdScatter, coeffs);
    CHECK(sd == doctest::Approx(0.025451275).epsilon(1e-9));
    CHECK(sd < 0.05);
}

TEST_CASE("degenerate fits fail loudly") {
    std::vector<std::pair<double, double>> one{{1.0, 1.0}};
    CHECK_THROWS_AS(fit_regression(one), SingularFitError);

    std::vector<std::pair<double, double>> vertical{{2.0, 1.0}, {2.0, 3.0}};
    CHECK_THROWS_AS(fit_regression(vertical), SingularFitError);

    // decreasing data contradicts the model's positive slope
    std::vector<std::pair<double, double>> falling{{1.0, 0.5}, {2.0, 0.4}, {3.0, 0.3}};
    CHECK_THROWS_AS(fit_regression(falling), SingularFitError);

    CHECK_THROWS_AS(r_squared_against(one, default_under_coefficients()), ParameterError);
    CHECK_THROWS_AS(residual_std(one, default_under_coefficients()), ParameterError);
}

TEST_CASE("residuals with a constant offset have zero spread") {
    const auto coeffs = default_under_coefficients();
    std::vector<std::pair<double, double>> pts;
    for (double x : {1.0, 3.0, 5.0}) {
        pts.emplace_back(x, coeffs.alpha * x + coeffs.beta + 0.02);
    }
    CHECK(residual_std(pts, coeffs) == doctest::Approx(0.0).epsilon(1e-12));
}
