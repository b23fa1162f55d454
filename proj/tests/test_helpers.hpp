#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "qbell/algebra.hpp"
#include "qbell/ml.hpp"
#include "qbell/nsbox.hpp"

namespace qbell::testutil {

inline std::mt19937_64 rng(std::uint64_t seed = 20240901) { return std::mt19937_64(seed); }

inline nsbox::GuessingProfile random_profile(std::mt19937_64& gen, int d) {
    std::gamma_distribution<double> gamma(1.0, 1.0);
    Eigen::MatrixXd p(d, 2);
    for (int j = 0; j < 2; ++j) {
        double s = 0.0;
        for (int e = 0; e < d; ++e) s += p(e, j) = gamma(gen);
        p.col(j) /= s;
    }
    return nsbox::profile_from_values(p);
}

/// Point mass at a random error mixed with uniform background; visibility
/// spans the feasible/violating boundary.
inline nsbox::GuessingProfile spiked_profile(std::mt19937_64& gen, int d) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::uniform_int_distribution<int> pick(0, d - 1);
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(d, 2);
    for (int j = 0; j < 2; ++j) {
        const double v = unif(gen);
        for (int e = 0; e < d; ++e) p(e, j) = (1.0 - v) / d;
        p(pick(gen), j) += v;
    }
    return nsbox::profile_from_values(p);
}

inline nsbox::BoxDistribution deterministic_box(int d, const std::vector<int>& f,
                                                const std::vector<int>& g) {
    nsbox::BoxDistribution box(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < 2; ++j) box.pr(f[i], g[j], i, j) = 1.0;
    return box;
}

/// Convex mixture of local deterministic boxes, the PR box, and white noise;
/// nonsignaling by construction.
inline nsbox::BoxDistribution random_box(std::mt19937_64& gen, int d) {
    std::gamma_distribution<double> gamma(1.0, 1.0);
    std::uniform_int_distribution<int> out(0, d - 1);

    std::vector<double> weights(5);
    double total = 0.0;
    for (double& w : weights) total += w = gamma(gen);

    nsbox::BoxDistribution box(d);
    auto blend = [&box](const nsbox::BoxDistribution& other, double w) {
        for (size_t t = 0; t < box.prob.size(); ++t) box.prob[t] += w * other.prob[t];
    };
    blend(nsbox::pr_box(d), weights[0] / total);
    blend(nsbox::isotropic_box(d, 0.0), weights[1] / total);
    for (int c = 2; c < 5; ++c) {
        std::vector<int> f(d), g(2);
        for (int& v : f) v = out(gen);
        for (int& v : g) v = out(gen);
        blend(deterministic_box(d, f, g), weights[c] / total);
    }
    return box;
}

/// Mixture of local deterministic boxes together with the matching Gram-style
/// free assignment (the mixture of the deterministic rank-one assignments).
inline std::pair<nsbox::BoxDistribution, ml::FreeAssignment>
random_local_box_with_assignment(std::mt19937_64& gen, int d, int components = 4) {
    std::gamma_distribution<double> gamma(1.0, 1.0);
    std::uniform_int_distribution<int> out(0, d - 1);

    std::vector<double> weights(components);
    double total = 0.0;
    for (double& w : weights) total += w = gamma(gen);

    nsbox::BoxDistribution box(d);
    ml::FreeAssignment free;
    free.d = d;
    free.v.assign(static_cast<size_t>(d) * (d - 1) / 2, Eigen::MatrixXd::Zero(d, d));
    free.w = Eigen::MatrixXd::Zero(d, d);

    for (int c = 0; c < components; ++c) {
        const double w = weights[c] / total;
        std::vector<int> f(d), g(2);
        for (int& v : f) v = out(gen);
        for (int& v : g) v = out(gen);
        const nsbox::BoxDistribution det = deterministic_box(d, f, g);
        for (size_t t = 0; t < box.prob.size(); ++t) box.prob[t] += w * det.prob[t];
        for (int i = 0; i < d; ++i)
            for (int ip = i + 1; ip < d; ++ip) free.v_block(i, ip)(f[i], f[ip]) += w;
        free.w(g[0], g[1]) += w;
    }
    return {box, free};
}

/// Random symmetrized free coefficients obeying the row-sum and transpose
/// pairing constraints.
inline ml::VTilde random_vtilde(std::mt19937_64& gen, int d) {
    std::gamma_distribution<double> gamma(1.0, 1.0);
    ml::VTilde vt{d, Eigen::MatrixXd::Zero(d - 1, d)};
    for (int di = 1; 2 * di <= d; ++di) {
        Eigen::VectorXd row(d);
        double s = 0.0;
        for (int k = 0; k < d; ++k) s += row(k) = gamma(gen);
        row /= s;
        if (2 * di == d) { // self-paired: symmetrize under k -> -k
            const Eigen::VectorXd orig = row;
            for (int k = 0; k < d; ++k)
                row(k) = 0.5 * (orig(k) + orig(algebra::mod(-k, d)));
        }
        vt.coeff.row(di - 1) = row;
        for (int k = 0; k < d; ++k) vt.coeff(d - di - 1, k) = row(algebra::mod(-k, d));
    }
    return vt;
}

} // namespace qbell::testutil
