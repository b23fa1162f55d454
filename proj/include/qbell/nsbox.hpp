#pragma once

#include <vector>

#include <Eigen/Dense>

namespace qbell::nsbox {

/// Conditional distribution Pr(A=k, B=l | alpha=i, beta=j) of a d2dd box:
/// k, l, i run over [d], j over {0, 1}.
struct BoxDistribution {
    int d = 0;
    std::vector<double> prob; // flat [k][l][i][j]

    BoxDistribution() = default;
    explicit BoxDistribution(int d_) : d(d_), prob(static_cast<size_t>(d_) * d_ * d_ * 2, 0.0) {}

    double& pr(int k, int l, int i, int j) {
        return prob[((static_cast<size_t>(k) * d + l) * d + i) * 2 + j];
    }
    double pr(int k, int l, int i, int j) const {
        return prob[((static_cast<size_t>(k) * d + l) * d + i) * 2 + j];
    }

    /// Pr(A=k | alpha=i), taken at beta=0.
    double alice_marginal(int k, int i) const;
    /// Pr(B=l | beta=j), taken at alpha=0.
    double bob_marginal(int l, int j) const;
};

/// The 2d numbers p(e|j); columns are probability distributions over e.
struct GuessingProfile {
    int d = 0;
    Eigen::MatrixXd p; // d x 2
};

struct ValidationReport {
    bool normalized = false;
    bool nonsignaling = false;
    double max_violation = 0.0;
    bool ok() const { return normalized && nonsignaling; }
};

/// Throws on entries below -1e-10; otherwise reports the largest
/// normalization / marginal mismatch.
ValidationReport validate_box(const BoxDistribution& box, double tol = 1e-10);

/// Pr(k,l|i,j) = 1/d when k+l = i*j (mod d), else 0.
BoxDistribution pr_box(int d);

/// visibility * pr_box + (1 - visibility) * uniform.
BoxDistribution isotropic_box(int d, double visibility);

/// p(e|j) = (1/d) sum_i Pr(A+B = i*j+e | alpha=i, beta=j).
GuessingProfile guessing_profile(const BoxDistribution& box, double tol = 1e-10);

/// Wraps explicit p(e|j) values (d x 2, columns stochastic).
GuessingProfile profile_from_values(const Eigen::MatrixXd& values, double tol = 1e-10);

GuessingProfile uniform_profile(int d);
GuessingProfile pr_profile(int d);

} // namespace qbell::nsbox
