#include <cmath>

#include <doctest.h>

#include "qbell/concat.hpp"
#include "qbell/ic.hpp"
#include "qbell/nsbox.hpp"
#include "test_helpers.hpp"

using namespace qbell;

namespace {

nsbox::GuessingProfile binary_symmetric(double q) {
    Eigen::MatrixXd p(2, 2);
    p << q, q, 1.0 - q, 1.0 - q;
    return nsbox::profile_from_values(p);
}

const double kTsirelson = 0.5 + 0.5 / std::sqrt(2.0);

} // namespace

TEST_CASE("entropy basics") {
    Eigen::VectorXd u = Eigen::VectorXd::Constant(5, 0.2);
    CHECK(ic::shannon_entropy(u) == doctest::Approx(std::log(5.0)));
    Eigen::VectorXd point(3);
    point << 0.0, 1.0, 0.0;
    CHECK(ic::shannon_entropy(point) == doctest::Approx(0.0));
    Eigen::VectorXd mix(3);
    mix << 0.5, 0.25, 0.25;
    CHECK(ic::shannon_entropy(mix) == doctest::Approx(1.5 * std::log(2.0)));
    Eigen::VectorXd bad(2);
    bad << 0.7, 0.7;
    CHECK_THROWS_AS(ic::shannon_entropy(bad), std::invalid_argument);
}

TEST_CASE("mutual information basics") {
    const int d = 4;
    Eigen::MatrixXd indep = Eigen::MatrixXd::Constant(d, d, 1.0 / (d * d));
    CHECK(ic::mutual_information(indep) == doctest::Approx(0.0));
    Eigen::MatrixXd corr = Eigen::MatrixXd::Zero(d, d);
    for (int i = 0; i < d; ++i) corr(i, i) = 1.0 / d;
    CHECK(ic::mutual_information(corr) == doctest::Approx(std::log(4.0)));

    Eigen::MatrixXd bsc(2, 2); // flip probability 0.25, uniform input
    bsc << 0.375, 0.125, 0.125, 0.375;
    const double h = -(0.25 * std::log(0.25) + 0.75 * std::log(0.75));
    CHECK(ic::mutual_information(bsc) == doctest::Approx(std::log(2.0) - h));
}

TEST_CASE("kappa and the budget constant") {
    CHECK(ic::kappa(2) == doctest::Approx(4.0 * std::log(2.0) - 2.0));
    CHECK(ic::kappa(3) == doctest::Approx((9.0 * (std::log(3.0) - 1.0) + 3.0) / 4.0));
    for (int d = 2; d <= 1000; ++d) CHECK(ic::kappa(d) > 0.0);

    CHECK(ic::ic_rhs(12) == doctest::Approx(1.3316).epsilon(1e-3));
    int argmax = 2;
    for (int d = 3; d <= 100; ++d)
        if (ic::ic_rhs(d) > ic::ic_rhs(argmax)) argmax = d;
    CHECK(argmax == 12);
}

TEST_CASE("channel bound holds on sampled joints with uniform input") {
    auto gen = testutil::rng(23);
    std::gamma_distribution<double> gamma(1.0, 1.0);
    for (int d = 2; d <= 6; ++d)
        for (int t = 0; t < 300; ++t) {
            Eigen::MatrixXd joint(d, d);
            for (int a = 0; a < d; ++a) {
                double s = 0.0;
                for (int b = 0; b < d; ++b) s += joint(a, b) = gamma(gen);
                joint.row(a) /= s * d; // uniform first marginal
            }
            Eigen::VectorXd err = Eigen::VectorXd::Zero(d);
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b) err(algebra::mod(b - a, d)) += joint(a, b);
            CHECK(ic::mutual_information(joint) >= ic::fano_lower_bound(err) - 1e-9);
        }
}

TEST_CASE("quadratic entropy bound holds with equality at uniform") {
    auto gen = testutil::rng(29);
    std::gamma_distribution<double> gamma(1.0, 1.0);
    for (int d = 2; d <= 8; ++d) {
        Eigen::VectorXd u = Eigen::VectorXd::Constant(d, 1.0 / d);
        CHECK(std::abs(ic::entropy_quadratic_bound(u) - std::log(double(d))) < 1e-12);
        for (int t = 0; t < 300; ++t) {
            Eigen::VectorXd p(d);
            double s = 0.0;
            for (int i = 0; i < d; ++i) s += p(i) = gamma(gen);
            p /= s;
            CHECK(ic::shannon_entropy(p) <= ic::entropy_quadratic_bound(p) + 1e-12);
        }
    }
}

TEST_CASE("quadratic criterion: direct and collapsed routes agree") {
    auto gen = testutil::rng(31);
    for (int d = 2; d <= 6; ++d)
        for (int t = 0; t < 30; ++t) {
            const auto profile = testutil::random_profile(gen, d);
            for (int n = 1; n <= 6; ++n) {
                const auto rep = ic::ic_quadratic_lhs(profile, n);
                CHECK(rep.lhs_direct ==
                      doctest::Approx(rep.lhs_collapsed).epsilon(1e-9));
            }
        }
}

TEST_CASE("quadratic criterion pinned values") {
    const auto uniform = nsbox::uniform_profile(5);
    CHECK(ic::ic_quadratic_lhs(uniform, 4).lhs_collapsed == doctest::Approx(0.0));

    // Perfect guessing: every P(E|k) is a point mass, so each of the two k
    // terms contributes 1/2 and the depth-1 sum is exactly 1 > rhs.
    const auto pr2 = nsbox::pr_profile(2);
    const auto rep = ic::ic_quadratic_lhs(pr2, 1);
    CHECK(rep.lhs_collapsed == doctest::Approx(1.0));
    CHECK_FALSE(rep.satisfied);

    // At the Tsirelson point the collapsed base is exactly 1: lhs = 1/2 always.
    const auto ts = binary_symmetric(kTsirelson);
    for (int n : {1, 8, 64}) {
        const auto r = ic::ic_quadratic_lhs(ts, n);
        CHECK(r.lhs_collapsed == doctest::Approx(0.5));
        CHECK(r.satisfied);
    }
}

TEST_CASE("main inequality and verdicts") {
    const auto ts = binary_symmetric(kTsirelson);
    CHECK(ic::main_inequality_lhs(ts, 1) == doctest::Approx(1.0).epsilon(1e-9));
    const auto v = ic::ic_verdict(ts);
    CHECK(v.satisfied);
    CHECK(v.saturated);

    for (int d = 2; d <= 8; ++d) {
        const auto pr = ic::ic_verdict(nsbox::pr_profile(d));
        CHECK_FALSE(pr.satisfied);
        for (double lhs : pr.lhs) CHECK(lhs == doctest::Approx(2.0));
        const auto uni = ic::ic_verdict(nsbox::uniform_profile(d));
        CHECK(uni.max_lhs == doctest::Approx(0.0));
    }
    CHECK_THROWS_AS(ic::main_inequality_lhs(ts, 2), std::out_of_range);
}

TEST_CASE("threshold visibility decreases with depth") {
    auto critical_q = [](int n) {
        double lo = 0.5, hi = 1.0;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            (ic::ic_quadratic_lhs(binary_symmetric(mid), n).satisfied ? lo : hi) = mid;
        }
        return lo;
    };
    double prev = 1.0;
    for (int n : {1, 2, 4, 8, 16, 32, 64}) {
        const double q = critical_q(n);
        CHECK(q <= prev + 1e-9);
        prev = q;
    }
    CHECK(prev > kTsirelson); // approaches the quantum value from above
    CHECK(prev - kTsirelson < 2e-3);
}

TEST_CASE("exact protocol statement") {
    for (int d = 2; d <= 5; ++d)
        CHECK(ic::ic_statement_exact(nsbox::pr_box(d)) ==
              doctest::Approx(2.0 * std::log(double(d))));
    CHECK(ic::ic_statement_exact(nsbox::isotropic_box(3, 0.0)) == doctest::Approx(0.0));
    CHECK(ic::ic_statement_exact(nsbox::isotropic_box(2, 1.0 / std::sqrt(2.0))) <=
          std::log(2.0) + 1e-12);
}
