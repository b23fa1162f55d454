#pragma once

#include <complex>

#include <Eigen/Dense>

namespace qbell::algebra {

using Complex = std::complex<double>;

/// exp(2*pi*i*power/d), the d-th root of unity raised to `power`.
Complex root_of_unity(int d, long long power);

int mod(long long x, int d);

enum class StructuredKind {
    hadamard,    // H = d^{-1/2} sum_{i,j} w^{-ij} |i><j|
    pauli_shift, // X^m = sum_i |i><i-m|
    pauli_clock, // Z^m = sum_i w^{im} |i><i|
    error_perm,  // S_m = sum_i |i><-i+m|
    all_ones,    // J
};

Eigen::MatrixXcd structured_matrix(StructuredKind kind, int d, int m = 0);

enum class DirichletForm { A1, A2, A3, A4 };

/// Closed form of the Dirichlet-kernel sums, with k starting at 1:
///   A1: sum_{k=1}^{n-1} sin(x+ky)
///   A2: sum_{k=1}^{n-1} cos(x+ky)
///   A3: sum_{k=1}^{n-1} (-1)^k sin(x+ky)
///   A4: sum_{k=1}^{2n-1} (-1)^k cos(x+ky)
/// Throws on arguments within 1e-9 of a csc/sec pole.
double dirichlet_sum(DirichletForm form, double x, double y, int n);

struct IdentityReport {
    double max_residual = 0.0;
    bool pass = false;
};

/// Checks H'X^mH = Z^m, S_i S_{d-1} = X^{i+1} and S_{d-1}' X^m S_{d-1} = X^{-m}
/// over all m, i in [d].
IdentityReport verify_identities(int d, double tol = 1e-12);

} // namespace qbell::algebra
