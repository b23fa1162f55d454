#pragma once

#include <vector>

#include <Eigen/Dense>

#include "qbell/nsbox.hpp"

namespace qbell::ic {

/// Shannon entropy in nats, with 0 ln 0 = 0.
double shannon_entropy(const Eigen::VectorXd& dist, double tol = 1e-10);

/// I(a;b) = H(a) + H(b) - H(a,b) from a joint distribution Pr(a,b).
double mutual_information(const Eigen::MatrixXd& joint, double tol = 1e-10);

/// kappa(d) = (d^2 (ln d - 1) + d) / (d - 1)^2.
double kappa(int d);

/// (d-1)^2 ln d / (d^2 (ln d - 1) + d), the depth-independent budget of the
/// quadratic IC criterion.
double ic_rhs(double d);

/// ln d - H(e): lower bound on I(a;b) when a is uniform and b = a + e.
double fano_lower_bound(const Eigen::VectorXd& error_dist, double tol = 1e-10);

/// ln d - kappa(d) sum_i (p_i - 1/d)^2, an upper bound on H(dist).
double entropy_quadratic_bound(const Eigen::VectorXd& dist, double tol = 1e-10);

struct IcQuadraticReport {
    int n = 0;
    double lhs_direct = 0.0;    // sum_k C(n,k) sum_E (P(E|k) - 1/d)^2
    double lhs_collapsed = 0.0; // (2/d) sum_i (|l_i(0)|^2 + |l_i(1)|^2)^n (+ l_{d/2} term)
    double rhs = 0.0;
    std::vector<double> per_i; // collapsed bases raised to n, per Fourier index
    bool satisfied = false;
};

IcQuadraticReport ic_quadratic_lhs(const nsbox::GuessingProfile& profile, int n);

/// |sum_e p(e|0) w^{em}|^2 + |sum_e p(e|1) w^{em}|^2.
double main_inequality_lhs(const nsbox::GuessingProfile& profile, int m);

struct IcVerdict {
    int d = 0;
    std::vector<double> lhs; // m = 1..floor(d/2)
    double max_lhs = 0.0;
    bool satisfied = false;
    bool saturated = false; // max within tol of 1
};

IcVerdict ic_verdict(const nsbox::GuessingProfile& profile, double tol = 1e-9);

/// Exact sum_y I(a_y; g | b=y) for the depth-1 protocol, in nats.
double ic_statement_exact(const nsbox::BoxDistribution& box, int n = 1,
                          long long budget = 10'000'000);

} // namespace qbell::ic
