#include "qbell/ml.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "qbell/algebra.hpp"

namespace qbell::ml {

using algebra::Complex;
using algebra::mod;
using algebra::root_of_unity;
using algebra::StructuredKind;

Eigen::MatrixXd& FreeAssignment::v_block(int i, int ip) {
    return const_cast<Eigen::MatrixXd&>(std::as_const(*this).v_block(i, ip));
}

const Eigen::MatrixXd& FreeAssignment::v_block(int i, int ip) const {
    if (!(0 <= i && i < ip && ip < d)) throw std::out_of_range("v_block: need 0 <= i < i' < d");
    // pairs (0,1), (0,2), ..., (0,d-1), (1,2), ... in lexicographic order
    const int offset = i * d - i * (i + 1) / 2;
    return v[offset + (ip - i - 1)];
}

FreeAssignment product_assignment(const nsbox::BoxDistribution& box) {
    const int d = box.d;
    FreeAssignment free;
    free.d = d;
    for (int i = 0; i < d; ++i)
        for (int ip = i + 1; ip < d; ++ip) {
            Eigen::MatrixXd blk(d, d);
            for (int k = 0; k < d; ++k)
                for (int kp = 0; kp < d; ++kp)
                    blk(k, kp) = box.alice_marginal(k, i) * box.alice_marginal(kp, ip);
            free.v.push_back(std::move(blk));
        }
    free.w.resize(d, d);
    for (int l = 0; l < d; ++l)
        for (int lp = 0; lp < d; ++lp)
            free.w(l, lp) = box.bob_marginal(l, 0) * box.bob_marginal(lp, 1);
    return free;
}

Eigen::MatrixXd build_moment_matrix(const nsbox::BoxDistribution& box,
                                    const FreeAssignment& free, double tol) {
    const int d = box.d;
    if (free.d != d || free.v.size() != static_cast<size_t>(d) * (d - 1) / 2 ||
        free.w.rows() != d || free.w.cols() != d)
        throw std::invalid_argument("build_moment_matrix: assignment shape mismatch");

    // Row/column sums of every free block must reproduce the marginals.
    for (int i = 0; i < d; ++i)
        for (int ip = i + 1; ip < d; ++ip) {
            const Eigen::MatrixXd& blk = free.v_block(i, ip);
            for (int k = 0; k < d; ++k)
                if (std::abs(blk.row(k).sum() - box.alice_marginal(k, i)) > tol ||
                    std::abs(blk.col(k).sum() - box.alice_marginal(k, ip)) > tol)
                    throw std::invalid_argument("build_moment_matrix: v block sum constraint");
        }
    for (int l = 0; l < d; ++l)
        if (std::abs(free.w.row(l).sum() - box.bob_marginal(l, 0)) > tol ||
            std::abs(free.w.col(l).sum() - box.bob_marginal(l, 1)) > tol)
            throw std::invalid_argument("build_moment_matrix: w block sum constraint");

    const int n = moment_size(d);
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
    g(0, 0) = 1.0;
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k) {
            const double m = box.alice_marginal(k, i);
            g(0, idx_alice(d, i, k)) = m;
            g(idx_alice(d, i, k), idx_alice(d, i, k)) = m;
        }
    for (int j = 0; j < 2; ++j)
        for (int l = 0; l < d; ++l) {
            const double m = box.bob_marginal(l, j);
            g(0, idx_bob(d, j, l)) = m;
            g(idx_bob(d, j, l), idx_bob(d, j, l)) = m;
        }
    for (int i = 0; i < d; ++i)
        for (int ip = i + 1; ip < d; ++ip)
            for (int k = 0; k < d; ++k)
                for (int kp = 0; kp < d; ++kp)
                    g(idx_alice(d, i, k), idx_alice(d, ip, kp)) = free.v_block(i, ip)(k, kp);
    for (int l = 0; l < d; ++l)
        for (int lp = 0; lp < d; ++lp) g(idx_bob(d, 0, l), idx_bob(d, 1, lp)) = free.w(l, lp);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l)
                    g(idx_alice(d, i, k), idx_bob(d, j, l)) = box.pr(k, l, i, j);

    g = Eigen::MatrixXd(g.selfadjointView<Eigen::Upper>());
    return g;
}

VTilde VTilde::uniform(int d) {
    return {d, Eigen::MatrixXd::Constant(d - 1, d, 1.0 / d)};
}

Eigen::MatrixXd symmetrized_moment_matrix(const nsbox::GuessingProfile& profile,
                                          const VTilde& vtilde, double tol) {
    const int d = profile.d;
    if (vtilde.d != d || vtilde.coeff.rows() != d - 1 || vtilde.coeff.cols() != d)
        throw std::invalid_argument("symmetrized_moment_matrix: coefficient shape mismatch");
    for (int di = 1; di <= d - 1; ++di) {
        if (std::abs(vtilde.coeff.row(di - 1).sum() - 1.0) > tol)
            throw std::invalid_argument("symmetrized_moment_matrix: coefficient row sum != 1");
        for (int dk = 0; dk < d; ++dk)
            if (std::abs(vtilde.coeff(d - di - 1, dk) - vtilde.coeff(di - 1, mod(-dk, d))) > tol)
                throw std::invalid_argument(
                    "symmetrized_moment_matrix: transpose pairing violated");
    }

    const int n = moment_size(d);
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
    g(0, 0) = d;
    for (int p = 1; p < n; ++p) g(0, p) = g(p, 0) = 1.0;

    // Alice-Alice: identity on the diagonal, circulant free blocks elsewhere.
    for (int i = 0; i < d; ++i)
        for (int ip = 0; ip < d; ++ip)
            for (int k = 0; k < d; ++k)
                for (int kp = 0; kp < d; ++kp) {
                    double val;
                    if (i == ip)
                        val = (k == kp) ? 1.0 : 0.0;
                    else
                        val = vtilde.coeff(mod(ip - i, d) - 1, mod(kp - k, d));
                    g(idx_alice(d, i, k), idx_alice(d, ip, kp)) = val;
                }

    // Alice-Bob: anti-circulant profile blocks.
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l) {
                    const double val = profile.p(mod(k + l - i * j, d), j);
                    g(idx_alice(d, i, k), idx_bob(d, j, l)) = val;
                    g(idx_bob(d, j, l), idx_alice(d, i, k)) = val;
                }

    // Bob-Bob: identity diagonals, all-ones/d cross block.
    for (int l = 0; l < d; ++l)
        for (int lp = 0; lp < d; ++lp) {
            for (int j = 0; j < 2; ++j)
                g(idx_bob(d, j, l), idx_bob(d, j, lp)) = (l == lp) ? 1.0 : 0.0;
            g(idx_bob(d, 0, l), idx_bob(d, 1, lp)) = 1.0 / d;
            g(idx_bob(d, 1, l), idx_bob(d, 0, lp)) = 1.0 / d;
        }
    return g;
}

BlockFamily block_diagonalize(const Eigen::MatrixXd& gamma_tilde, int d) {
    const int n = moment_size(d);
    if (gamma_tilde.rows() != n || gamma_tilde.cols() != n)
        throw std::invalid_argument("block_diagonalize: size inconsistent with d");

    const Eigen::MatrixXcd h = algebra::structured_matrix(StructuredKind::hadamard, d);
    const Eigen::MatrixXcd sh =
        algebra::structured_matrix(StructuredKind::error_perm, d, d - 1) * h;

    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(n, n);
    u(0, 0) = 1.0;
    for (int b = 0; b < d + 2; ++b)
        u.block(1 + b * d, 1 + b * d, d, d) = (b < d) ? h : sh;
    const Eigen::MatrixXcd gp = u.adjoint() * gamma_tilde.cast<Complex>() * u;

    // Regroup: member m of sub-block b sits at 1 + b*d + m; block 0 also takes
    // the identity row/column.
    auto group_of = [d](int p) { return p == 0 ? 0 : (p - 1) % d; };
    double residual = 0.0;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (group_of(x) != group_of(y)) residual = std::max(residual, std::abs(gp(x, y)));
    if (residual > 1e-10)
        throw std::logic_error("block_diagonalize: off-block residual above tolerance");

    BlockFamily fam;
    fam.d = d;
    fam.off_block_residual = residual;

    std::vector<int> members0 = {0};
    for (int b = 0; b < d + 2; ++b) members0.push_back(1 + b * d);
    fam.gamma0.resize(d + 3, d + 3);
    for (size_t x = 0; x < members0.size(); ++x)
        for (size_t y = 0; y < members0.size(); ++y)
            fam.gamma0(x, y) = gp(members0[x], members0[y]);

    for (int m = 1; m < d; ++m) {
        Eigen::MatrixXcd blk(d + 2, d + 2);
        for (int b = 0; b < d + 2; ++b)
            for (int bp = 0; bp < d + 2; ++bp) blk(b, bp) = gp(1 + b * d + m, 1 + bp * d + m);
        fam.blocks.push_back(std::move(blk));
    }
    return fam;
}

Complex p_coefficient(const nsbox::GuessingProfile& profile, int m, int j) {
    Complex acc = 0.0;
    for (int e = 0; e < profile.d; ++e)
        acc += profile.p(e, j) *
               root_of_unity(profile.d, static_cast<long long>(m) * (1 + e));
    return acc;
}

namespace {

// P_m: column 0 constant p_m^0, column 1 carries the clock phases.
Eigen::MatrixXcd p_columns(const nsbox::GuessingProfile& profile, int m) {
    const int d = profile.d;
    const Complex p0 = p_coefficient(profile, m, 0);
    const Complex p1 = p_coefficient(profile, m, 1);
    Eigen::MatrixXcd pm(d, 2);
    for (int i = 0; i < d; ++i) {
        pm(i, 0) = p0;
        pm(i, 1) = root_of_unity(d, static_cast<long long>(m) * i) * p1;
    }
    return pm;
}

void check_block_m(int m, int d) {
    if (m < 1 || m > d - 1) throw std::out_of_range("block index m must be in 1..d-1");
}

} // namespace

Eigen::MatrixXcd build_block(const nsbox::GuessingProfile& profile, int m,
                             const Eigen::VectorXcd& nu, double tol) {
    const int d = profile.d;
    check_block_m(m, d);
    if (nu.size() != d - 1) throw std::invalid_argument("build_block: expected d-1 nu values");
    for (int dd = 1; dd <= d - 1; ++dd)
        if (std::abs(nu(d - dd - 1) - std::conj(nu(dd - 1))) > tol)
            throw std::invalid_argument("build_block: nu is not Hermitian-consistent");

    Eigen::MatrixXcd blk = Eigen::MatrixXcd::Zero(d + 2, d + 2);
    for (int i = 0; i < d; ++i)
        for (int ip = 0; ip < d; ++ip)
            blk(i, ip) = (i == ip) ? 1.0 : nu(mod(ip - i, d) - 1);
    const Eigen::MatrixXcd pm = p_columns(profile, m);
    blk.block(0, d, d, 2) = pm;
    blk.block(d, 0, 2, d) = pm.adjoint();
    blk(d, d) = blk(d + 1, d + 1) = 1.0;
    return blk;
}

Eigen::VectorXcd witness_assignment(const nsbox::GuessingProfile& profile, int m) {
    const int d = profile.d;
    check_block_m(m, d);
    const Eigen::MatrixXcd pm = p_columns(profile, m);
    const Eigen::MatrixXcd gram = pm * pm.adjoint();
    Eigen::VectorXcd nu(d - 1);
    for (int dd = 1; dd <= d - 1; ++dd) nu(dd - 1) = gram(0, dd);
    return nu;
}

SchurReport schur_condition(const nsbox::GuessingProfile& profile, int m,
                            const Eigen::VectorXcd& nu) {
    const int d = profile.d;
    const Eigen::MatrixXcd blk = build_block(profile, m, nu);
    const Eigen::MatrixXcd pm = p_columns(profile, m);
    const Eigen::MatrixXcd schur = blk.topLeftCorner(d, d) - pm * pm.adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(schur, Eigen::EigenvaluesOnly);
    SchurReport rep;
    rep.min_eigenvalue = es.eigenvalues().minCoeff();
    rep.psd = rep.min_eigenvalue >= -1e-12;
    return rep;
}

MlVerdict ml_verdict_analytic(const nsbox::GuessingProfile& profile, double tol) {
    MlVerdict v;
    v.d = profile.d;
    for (int m = 1; m <= profile.d / 2; ++m)
        v.lhs.push_back(std::norm(p_coefficient(profile, m, 0)) +
                        std::norm(p_coefficient(profile, m, 1)));
    v.max_lhs = *std::max_element(v.lhs.begin(), v.lhs.end());
    v.satisfied = v.max_lhs <= 1.0 + tol;
    v.saturated = std::abs(v.max_lhs - 1.0) <= tol;
    return v;
}

namespace {

Eigen::MatrixXcd project_psd(const Eigen::MatrixXcd& x) {
    const Eigen::MatrixXcd herm = 0.5 * (x + x.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm);
    const Eigen::VectorXd clipped = es.eigenvalues().cwiseMax(0.0);
    return es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::MatrixXcd project_structure(const Eigen::MatrixXcd& x,
                                   const nsbox::GuessingProfile& profile, int m) {
    const int d = profile.d;
    const Eigen::MatrixXcd herm = 0.5 * (x + x.adjoint());
    // Circulant averaging of the free part; Hermitian pairing is automatic
    // after symmetrization.
    Eigen::VectorXcd nu = Eigen::VectorXcd::Zero(d - 1);
    for (int i = 0; i < d; ++i)
        for (int ip = 0; ip < d; ++ip)
            if (i != ip) nu(mod(ip - i, d) - 1) += herm(i, ip) / static_cast<double>(d);
    return build_block(profile, m, nu, 1e-6);
}

} // namespace

FeasibilityReport ml_feasibility_numeric(const nsbox::GuessingProfile& profile, double tol,
                                         int max_iter) {
    const int d = profile.d;
    FeasibilityReport rep;
    rep.status = FeasibilityStatus::feasible;

    for (int m = 1; m <= d / 2; ++m) {
        Eigen::MatrixXcd x = build_block(profile, m, witness_assignment(profile, m));
        FeasibilityStatus status = FeasibilityStatus::indeterminate;
        double residual = 0.0;
        double window_best = std::numeric_limits<double>::infinity();
        int iter = 0;
        for (; iter < max_iter; ++iter) {
            const Eigen::MatrixXcd psd = project_psd(x);
            x = project_structure(psd, profile, m);
            residual = (psd - x).norm();
            if (residual < tol) {
                status = FeasibilityStatus::feasible;
                break;
            }
            if (iter % 100 == 99) {
                // Stalled well above tolerance: the sets do not intersect.
                if (residual > window_best * (1.0 - 1e-12) && residual > 10.0 * tol) {
                    status = FeasibilityStatus::infeasible;
                    break;
                }
                window_best = residual;
            }
        }
        rep.iterations = std::max(rep.iterations, iter + 1);
        rep.residual = std::max(rep.residual, residual);
        if (status == FeasibilityStatus::infeasible) {
            rep.status = FeasibilityStatus::infeasible;
            return rep;
        }
        if (status == FeasibilityStatus::indeterminate)
            rep.status = FeasibilityStatus::indeterminate;
    }
    return rep;
}

} // namespace qbell::ml
