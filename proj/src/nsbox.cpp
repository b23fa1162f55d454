#include "qbell/nsbox.hpp"

#include <cmath>
#include <stdexcept>

#include "qbell/algebra.hpp"

namespace qbell::nsbox {

using algebra::mod;

double BoxDistribution::alice_marginal(int k, int i) const {
    double s = 0.0;
    for (int l = 0; l < d; ++l) s += pr(k, l, i, 0);
    return s;
}

double BoxDistribution::bob_marginal(int l, int j) const {
    double s = 0.0;
    for (int k = 0; k < d; ++k) s += pr(k, l, 0, j);
    return s;
}

ValidationReport validate_box(const BoxDistribution& box, double tol) {
    const int d = box.d;
    if (d < 2 || box.prob.size() != static_cast<size_t>(d) * d * d * 2)
        throw std::invalid_argument("validate_box: tensor shape inconsistent with d");
    for (double v : box.prob)
        if (v < -1e-10) throw std::invalid_argument("validate_box: negative probability entry");

    ValidationReport rep;
    double norm_err = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < 2; ++j) {
            double s = 0.0;
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l) s += box.pr(k, l, i, j);
            norm_err = std::max(norm_err, std::abs(s - 1.0));
        }

    double ns_err = 0.0;
    // Alice marginal must not depend on beta.
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k) {
            double m0 = 0.0, m1 = 0.0;
            for (int l = 0; l < d; ++l) {
                m0 += box.pr(k, l, i, 0);
                m1 += box.pr(k, l, i, 1);
            }
            ns_err = std::max(ns_err, std::abs(m0 - m1));
        }
    // Bob marginal must not depend on alpha.
    for (int j = 0; j < 2; ++j)
        for (int l = 0; l < d; ++l) {
            double ref = 0.0;
            for (int k = 0; k < d; ++k) ref += box.pr(k, l, 0, j);
            for (int i = 1; i < d; ++i) {
                double m = 0.0;
                for (int k = 0; k < d; ++k) m += box.pr(k, l, i, j);
                ns_err = std::max(ns_err, std::abs(m - ref));
            }
        }

    rep.normalized = norm_err <= tol;
    rep.nonsignaling = ns_err <= tol;
    rep.max_violation = std::max(norm_err, ns_err);
    return rep;
}

BoxDistribution pr_box(int d) {
    if (d < 2) throw std::invalid_argument("pr_box: d must be >= 2");
    BoxDistribution box(d);
    const double w = 1.0 / d;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < d; ++k)
                box.pr(k, mod(static_cast<long long>(i) * j - k, d), i, j) = w;
    return box;
}

BoxDistribution isotropic_box(int d, double visibility) {
    if (visibility < 0.0 || visibility > 1.0)
        throw std::out_of_range("isotropic_box: visibility must be in [0,1]");
    BoxDistribution box = pr_box(d);
    const double bg = (1.0 - visibility) / (d * d);
    for (double& v : box.prob) v = visibility * v + bg;
    return box;
}

GuessingProfile guessing_profile(const BoxDistribution& box, double tol) {
    const ValidationReport rep = validate_box(box, tol);
    if (!rep.ok()) throw std::invalid_argument("guessing_profile: box fails validation");
    const int d = box.d;
    GuessingProfile out{d, Eigen::MatrixXd::Zero(d, 2)};
    for (int j = 0; j < 2; ++j)
        for (int e = 0; e < d; ++e) {
            double s = 0.0;
            for (int i = 0; i < d; ++i)
                for (int k = 0; k < d; ++k)
                    s += box.pr(k, mod(static_cast<long long>(i) * j + e - k, d), i, j);
            out.p(e, j) = s / d;
        }
    return out;
}

GuessingProfile profile_from_values(const Eigen::MatrixXd& values, double tol) {
    const int d = static_cast<int>(values.rows());
    if (d < 2 || values.cols() != 2)
        throw std::invalid_argument("profile_from_values: expected a d x 2 table, d >= 2");
    for (int j = 0; j < 2; ++j) {
        if (values.col(j).minCoeff() < -tol)
            throw std::invalid_argument("profile_from_values: negative entry");
        if (std::abs(values.col(j).sum() - 1.0) > tol)
            throw std::invalid_argument("profile_from_values: column does not sum to 1");
    }
    return {d, values};
}

GuessingProfile uniform_profile(int d) {
    return {d, Eigen::MatrixXd::Constant(d, 2, 1.0 / d)};
}

GuessingProfile pr_profile(int d) {
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(d, 2);
    p(0, 0) = p(0, 1) = 1.0;
    return {d, p};
}

} // namespace qbell::nsbox
