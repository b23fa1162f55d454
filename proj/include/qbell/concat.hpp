#pragma once

#include <Eigen/Dense>

#include "qbell/nsbox.hpp"

namespace qbell::concat {

/// Circulant doubly stochastic transition matrix M_j with
/// M_j(e', e) = p((e' - e) mod d | j).
Eigen::MatrixXd transition_matrix(const nsbox::GuessingProfile& profile, int j);

enum class DistMethod { power, closed };

/// k-step error distribution Q^(k)(j); k = 0 is the point mass at e = 0.
/// `power` multiplies out M_j^k |0>; `closed` evaluates the Fourier form
/// (odd and even d differ by the alternating l_{d/2} term).
Eigen::VectorXd error_distribution(const nsbox::GuessingProfile& profile, int j, int k,
                                   DistMethod method = DistMethod::closed);

/// l_i(j) = sum_e p(e|j) w^{-e*i} for i = 1..floor(d/2); entry [i-1].
Eigen::VectorXcd fourier_coefficients(const nsbox::GuessingProfile& profile, int j);

enum class GuessMethod { convolution, closed };

/// Final guess-error distribution P(E|k) after depth-n concatenation, where k
/// counts the aims in the j=0 direction (paired with Q^(k)(0), the remaining
/// n-k aims use j=1).
Eigen::VectorXd guess_error_probabilities(const nsbox::GuessingProfile& profile, int n, int k,
                                          GuessMethod method = GuessMethod::convolution);

/// sum_E (P(E|k) - 1/d)^2, cross-checked against its Fourier closed form.
double squared_deviation_sum(const nsbox::GuessingProfile& profile, int n, int k);

/// Exact concatenation-protocol enumeration: the distribution of g minus the
/// targeted data dit, for Bob's input b, with all 2^n - 1 boxes identical.
Eigen::VectorXd enumerate_protocol(const nsbox::BoxDistribution& box, int n, long long b,
                                   long long budget = 10'000'000);

} // namespace qbell::concat
