#pragma once

#include <vector>

#include <Eigen/Dense>

#include "qbell/nsbox.hpp"

namespace qbell::ml {

// Row/column layout of the (d+1)^2 moment matrix: identity first, then the d
// Alice settings (d outcomes each), then Bob's two settings.
inline int idx_identity() { return 0; }
inline int idx_alice(int d, int i, int k) { return 1 + i * d + k; }
inline int idx_bob(int d, int j, int l) { return 1 + d * d + j * d + l; }
inline int moment_size(int d) { return (d + 1) * (d + 1); }

/// Free entries of the moment matrix: one d x d block per Alice setting pair
/// i < i', plus the Bob cross block.
struct FreeAssignment {
    int d = 0;
    std::vector<Eigen::MatrixXd> v; // pair (i, i'), i < i', flattened in order
    Eigen::MatrixXd w;              // Bob (0, 1) block

    Eigen::MatrixXd& v_block(int i, int ip);
    const Eigen::MatrixXd& v_block(int i, int ip) const;
};

/// Product assignment v(k,k') = Pr(A=k|i) Pr(A=k'|i'), w likewise; always
/// satisfies the row/column-sum constraints.
FreeAssignment product_assignment(const nsbox::BoxDistribution& box);

/// Populate the full symmetric moment matrix; throws if the assignment breaks
/// the row/column-sum constraints.
Eigen::MatrixXd build_moment_matrix(const nsbox::BoxDistribution& box,
                                    const FreeAssignment& free, double tol = 1e-9);

/// Free entries of the symmetrized matrix: coeff(di - 1, dk) holds the
/// circulant coefficient of shift dk in the Alice block at setting offset di.
struct VTilde {
    int d = 0;
    Eigen::MatrixXd coeff; // (d-1) x d

    static VTilde uniform(int d); // all coefficients 1/d
};

/// The symmetrized moment matrix; its fixed part depends on the box only
/// through the guessing profile. Throws if coeff rows do not sum to 1 or break
/// the transpose pairing coeff(d-di, dk) = coeff(di, -dk).
Eigen::MatrixXd symmetrized_moment_matrix(const nsbox::GuessingProfile& profile,
                                          const VTilde& vtilde, double tol = 1e-9);

struct BlockFamily {
    int d = 0;
    Eigen::MatrixXcd gamma0;              // (d+3), constant
    std::vector<Eigen::MatrixXcd> blocks; // m = 1..d-1, each (d+2)
    double off_block_residual = 0.0;
};

/// Conjugate by U = diag(1, H, ..., H, S_{d-1}H, S_{d-1}H) and regroup indices
/// by diagonal position within each d x d sub-block. Throws on off-block
/// residual above 1e-10 (signals a construction bug, not bad data).
BlockFamily block_diagonalize(const Eigen::MatrixXd& gamma_tilde, int d);

/// p_m^j = sum_e w^{m(1+e)} p(e|j); |p_m^j| = |l_m(j)|.
std::complex<double> p_coefficient(const nsbox::GuessingProfile& profile, int m, int j);

/// The (d+2) Hermitian block: circulant V_m from nu (entry [D-1] holds nu^D;
/// nu^{d-D} must equal conj(nu^D)), fixed P_m columns and identity tail.
Eigen::MatrixXcd build_block(const nsbox::GuessingProfile& profile, int m,
                             const Eigen::VectorXcd& nu, double tol = 1e-9);

/// nu^D = (P_m P_m^dag)(0, D), making V_m - P_m P_m^dag an exact multiple of
/// the identity.
Eigen::VectorXcd witness_assignment(const nsbox::GuessingProfile& profile, int m);

struct SchurReport {
    bool psd = false;
    double min_eigenvalue = 0.0;
};

/// Eigenvalue test of V_m - P_m P_m^dag >= 0 (equivalent to PSD-ness of the
/// full block).
SchurReport schur_condition(const nsbox::GuessingProfile& profile, int m,
                            const Eigen::VectorXcd& nu);

struct MlVerdict {
    int d = 0;
    std::vector<double> lhs; // |p_m^0|^2 + |p_m^1|^2, m = 1..floor(d/2)
    double max_lhs = 0.0;
    bool satisfied = false;
    bool saturated = false;
};

MlVerdict ml_verdict_analytic(const nsbox::GuessingProfile& profile, double tol = 1e-9);

enum class FeasibilityStatus { feasible, infeasible, indeterminate };

struct FeasibilityReport {
    FeasibilityStatus status = FeasibilityStatus::indeterminate;
    double residual = 0.0; // worst residual across blocks
    int iterations = 0;
};

/// Independent numeric check: alternating projections between the PSD cone and
/// the affine structure set, per block m = 1..floor(d/2).
FeasibilityReport ml_feasibility_numeric(const nsbox::GuessingProfile& profile,
                                         double tol = 1e-7, int max_iter = 5000);

} // namespace qbell::ml
