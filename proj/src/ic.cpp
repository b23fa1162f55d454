#include "qbell/ic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qbell/algebra.hpp"
#include "qbell/concat.hpp"

namespace qbell::ic {

using algebra::mod;

namespace {

void check_distribution(const Eigen::VectorXd& dist, double tol) {
    if (dist.size() == 0) throw std::invalid_argument("empty distribution");
    if (dist.minCoeff() < -tol) throw std::invalid_argument("negative probability");
    if (std::abs(dist.sum() - 1.0) > tol) throw std::invalid_argument("distribution does not sum to 1");
}

double plogp(double p) { return p > 0.0 ? p * std::log(p) : 0.0; }

} // namespace

double shannon_entropy(const Eigen::VectorXd& dist, double tol) {
    check_distribution(dist, tol);
    double h = 0.0;
    for (Eigen::Index i = 0; i < dist.size(); ++i) h -= plogp(dist(i));
    return h;
}

double mutual_information(const Eigen::MatrixXd& joint, double tol) {
    Eigen::Map<const Eigen::VectorXd> flat(joint.data(), joint.size());
    check_distribution(Eigen::VectorXd(flat), tol);
    const Eigen::VectorXd pa = joint.rowwise().sum();
    const Eigen::VectorXd pb = joint.colwise().sum();
    double h_joint = 0.0;
    for (Eigen::Index i = 0; i < joint.size(); ++i) h_joint -= plogp(joint.data()[i]);
    return shannon_entropy(pa, tol) + shannon_entropy(pb, tol) - h_joint;
}

double kappa(int d) {
    if (d < 2) throw std::out_of_range("kappa: d must be >= 2");
    const double dd = d;
    return (dd * dd * (std::log(dd) - 1.0) + dd) / ((dd - 1.0) * (dd - 1.0));
}

double ic_rhs(double d) {
    if (d < 2) throw std::out_of_range("ic_rhs: d must be >= 2");
    return (d - 1.0) * (d - 1.0) * std::log(d) / (d * d * (std::log(d) - 1.0) + d);
}

double fano_lower_bound(const Eigen::VectorXd& error_dist, double tol) {
    return std::log(static_cast<double>(error_dist.size())) - shannon_entropy(error_dist, tol);
}

double entropy_quadratic_bound(const Eigen::VectorXd& dist, double tol) {
    check_distribution(dist, tol);
    const int d = static_cast<int>(dist.size());
    double sq = 0.0;
    for (int i = 0; i < d; ++i) {
        const double dev = dist(i) - 1.0 / d;
        sq += dev * dev;
    }
    return std::log(static_cast<double>(d)) - kappa(d) * sq;
}

IcQuadraticReport ic_quadratic_lhs(const nsbox::GuessingProfile& profile, int n) {
    if (n < 1) throw std::out_of_range("ic_quadratic_lhs: n must be >= 1");
    const int d = profile.d;
    IcQuadraticReport rep;
    rep.n = n;
    rep.rhs = ic_rhs(d);

    // Direct route: binomially weighted squared deviations, accumulated in the
    // log domain so depth ~64 stays finite.
    double direct = 0.0;
    for (int k = 0; k <= n; ++k) {
        const double sq = concat::squared_deviation_sum(profile, n, k);
        if (sq <= 0.0) continue;
        const double log_binom =
            std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
        direct += std::exp(log_binom + std::log(sq));
    }
    rep.lhs_direct = direct;

    // Collapsed route via the binomial identity.
    const Eigen::VectorXcd l0 = concat::fourier_coefficients(profile, 0);
    const Eigen::VectorXcd l1 = concat::fourier_coefficients(profile, 1);
    const int half = (d % 2 == 0) ? (d - 2) / 2 : (d - 1) / 2;
    double collapsed = 0.0;
    for (int i = 1; i <= half; ++i) {
        const double base = std::norm(l0(i - 1)) + std::norm(l1(i - 1));
        const double term = 2.0 / d * std::pow(base, n);
        rep.per_i.push_back(std::pow(base, n));
        collapsed += term;
    }
    if (d % 2 == 0) {
        const double a = std::real(l0(d / 2 - 1));
        const double b = std::real(l1(d / 2 - 1));
        const double base = a * a + b * b;
        rep.per_i.push_back(std::pow(base, n));
        collapsed += std::pow(base, n) / d;
    }
    rep.lhs_collapsed = collapsed;
    rep.satisfied = collapsed <= rep.rhs;
    return rep;
}

double main_inequality_lhs(const nsbox::GuessingProfile& profile, int m) {
    const int d = profile.d;
    if (m < 1 || m > d / 2) throw std::out_of_range("main_inequality_lhs: need 1 <= m <= d/2");
    algebra::Complex s0 = 0.0, s1 = 0.0;
    for (int e = 0; e < d; ++e) {
        const algebra::Complex w = algebra::root_of_unity(d, static_cast<long long>(e) * m);
        s0 += profile.p(e, 0) * w;
        s1 += profile.p(e, 1) * w;
    }
    return std::norm(s0) + std::norm(s1);
}

IcVerdict ic_verdict(const nsbox::GuessingProfile& profile, double tol) {
    IcVerdict v;
    v.d = profile.d;
    for (int m = 1; m <= profile.d / 2; ++m) v.lhs.push_back(main_inequality_lhs(profile, m));
    v.max_lhs = *std::max_element(v.lhs.begin(), v.lhs.end());
    v.satisfied = v.max_lhs <= 1.0 + tol;
    v.saturated = std::abs(v.max_lhs - 1.0) <= tol;
    return v;
}

double ic_statement_exact(const nsbox::BoxDistribution& box, int n, long long budget) {
    if (n != 1) throw std::invalid_argument("ic_statement_exact: only depth n = 1 is enumerable");
    const int d = box.d;
    if (static_cast<double>(d) * d * d * d > static_cast<double>(budget))
        throw std::runtime_error("ic_statement_exact: enumeration budget exceeded");

    double total = 0.0;
    for (int y = 0; y < 2; ++y) {
        Eigen::MatrixXd joint = Eigen::MatrixXd::Zero(d, d); // (a_y, g)
        for (int a0 = 0; a0 < d; ++a0)
            for (int a1 = 0; a1 < d; ++a1) {
                const int alpha = mod(-a0 + a1, d);
                const int ay = (y == 0) ? a0 : a1;
                for (int a = 0; a < d; ++a)
                    for (int bo = 0; bo < d; ++bo) {
                        const double w = box.pr(a, bo, alpha, y) / (d * d);
                        if (w == 0.0) continue;
                        joint(ay, mod(a0 + a + bo, d)) += w;
                    }
            }
        total += mutual_information(joint);
    }
    return total;
}

} // namespace qbell::ic
