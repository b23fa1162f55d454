#include "qbell/algebra.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qbell::algebra {

namespace {
constexpr double kPoleTol = 1e-9;
}

int mod(long long x, int d) {
    long long r = x % d;
    return static_cast<int>(r < 0 ? r + d : r);
}

Complex root_of_unity(int d, long long power) {
    if (d < 2) throw std::invalid_argument("root_of_unity: d must be >= 2");
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(mod(power, d)) / d;
    return {std::cos(theta), std::sin(theta)};
}

Eigen::MatrixXcd structured_matrix(StructuredKind kind, int d, int m) {
    if (d < 2) throw std::invalid_argument("structured_matrix: d must be >= 2");
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
    switch (kind) {
    case StructuredKind::hadamard: {
        const double s = 1.0 / std::sqrt(static_cast<double>(d));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                out(i, j) = s * root_of_unity(d, -static_cast<long long>(i) * j);
        break;
    }
    case StructuredKind::pauli_shift:
        for (int i = 0; i < d; ++i) out(i, mod(i - m, d)) = 1.0;
        break;
    case StructuredKind::pauli_clock:
        for (int i = 0; i < d; ++i) out(i, i) = root_of_unity(d, static_cast<long long>(i) * m);
        break;
    case StructuredKind::error_perm:
        for (int i = 0; i < d; ++i) out(i, mod(-i + m, d)) = 1.0;
        break;
    case StructuredKind::all_ones:
        out.setOnes();
        break;
    }
    return out;
}

double dirichlet_sum(DirichletForm form, double x, double y, int n) {
    const double half = 0.5 * y;
    switch (form) {
    case DirichletForm::A1:
    case DirichletForm::A2: {
        const double s = std::sin(half);
        if (std::abs(s) < kPoleTol)
            throw std::domain_error("dirichlet_sum: csc pole at y/2");
        const double kernel = std::sin(0.5 * n * y) / s;
        if (form == DirichletForm::A1)
            return std::sin(x + 0.5 * (n - 1) * y) * kernel - std::sin(x);
        return std::cos(x + 0.5 * (n - 1) * y) * kernel - std::cos(x);
    }
    case DirichletForm::A3: {
        const double c = std::cos(half);
        if (std::abs(c) < kPoleTol)
            throw std::domain_error("dirichlet_sum: sec pole at y/2");
        const double yp = y + std::numbers::pi;
        return std::sin(x + 0.5 * (n - 1) * yp) * std::sin(0.5 * n * yp) / c - std::sin(x);
    }
    case DirichletForm::A4: {
        const double c = std::cos(half);
        if (std::abs(c) < kPoleTol)
            throw std::domain_error("dirichlet_sum: sec pole at y/2");
        return std::sin(x + 0.5 * (2 * n - 1) * y) * std::sin(n * y) / c - std::cos(x);
    }
    }
    throw std::logic_error("dirichlet_sum: unknown form");
}

IdentityReport verify_identities(int d, double tol) {
    if (d < 2) throw std::invalid_argument("verify_identities: d must be >= 2");
    const Eigen::MatrixXcd h = structured_matrix(StructuredKind::hadamard, d);
    const Eigen::MatrixXcd s_last = structured_matrix(StructuredKind::error_perm, d, d - 1);

    double worst = 0.0;
    auto track = [&worst](const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
        worst = std::max(worst, (a - b).cwiseAbs().maxCoeff());
    };

    for (int m = 0; m < d; ++m) {
        const Eigen::MatrixXcd xm = structured_matrix(StructuredKind::pauli_shift, d, m);
        track(h.adjoint() * xm * h, structured_matrix(StructuredKind::pauli_clock, d, m));
        track(s_last.adjoint() * xm * s_last,
              structured_matrix(StructuredKind::pauli_shift, d, mod(-m, d)));
    }
    for (int i = 0; i < d; ++i) {
        const Eigen::MatrixXcd si = structured_matrix(StructuredKind::error_perm, d, i);
        track(si * s_last, structured_matrix(StructuredKind::pauli_shift, d, mod(i + 1, d)));
    }
    return {worst, worst <= tol};
}

} // namespace qbell::algebra
