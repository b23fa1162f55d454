#include "qbell/concat.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "qbell/algebra.hpp"

namespace qbell::concat {

using algebra::Complex;
using algebra::mod;
using algebra::root_of_unity;

namespace {

void check_setting(int j) {
    if (j != 0 && j != 1) throw std::out_of_range("setting j must be 0 or 1");
}

} // namespace

Eigen::MatrixXd transition_matrix(const nsbox::GuessingProfile& profile, int j) {
    check_setting(j);
    const int d = profile.d;
    Eigen::MatrixXd m(d, d);
    for (int row = 0; row < d; ++row)
        for (int col = 0; col < d; ++col) m(row, col) = profile.p(mod(row - col, d), j);
    return m;
}

Eigen::VectorXcd fourier_coefficients(const nsbox::GuessingProfile& profile, int j) {
    check_setting(j);
    const int d = profile.d;
    Eigen::VectorXcd l(d / 2);
    for (int i = 1; i <= d / 2; ++i) {
        Complex acc = 0.0;
        for (int e = 0; e < d; ++e)
            acc += profile.p(e, j) * root_of_unity(d, -static_cast<long long>(e) * i);
        l(i - 1) = acc;
    }
    return l;
}

Eigen::VectorXd error_distribution(const nsbox::GuessingProfile& profile, int j, int k,
                                   DistMethod method) {
    check_setting(j);
    if (k < 0) throw std::out_of_range("error_distribution: k must be >= 0");
    const int d = profile.d;

    if (method == DistMethod::power) {
        Eigen::VectorXd q = Eigen::VectorXd::Zero(d);
        q(0) = 1.0;
        const Eigen::MatrixXd m = transition_matrix(profile, j);
        for (int step = 0; step < k; ++step) q = m * q;
        return q;
    }

    const Eigen::VectorXcd l = fourier_coefficients(profile, j);
    Eigen::VectorXd q(d);
    const int half = (d % 2 == 0) ? (d - 2) / 2 : (d - 1) / 2;
    for (int e = 0; e < d; ++e) {
        double v = 1.0 / d;
        for (int i = 1; i <= half; ++i) {
            const Complex lk = std::pow(l(i - 1), k);
            v += 2.0 / d * std::real(lk * root_of_unity(d, static_cast<long long>(e) * i));
        }
        if (d % 2 == 0) {
            const double lhalf = std::real(l(d / 2 - 1)); // l_{d/2} is real
            v += std::pow(lhalf, k) * ((e % 2 == 0) ? 1.0 : -1.0) / d;
        }
        q(e) = v;
    }
    return q;
}

Eigen::VectorXd guess_error_probabilities(const nsbox::GuessingProfile& profile, int n, int k,
                                          GuessMethod method) {
    if (n < 1) throw std::out_of_range("guess_error_probabilities: n must be >= 1");
    if (k < 0 || k > n) throw std::out_of_range("guess_error_probabilities: need 0 <= k <= n");
    const int d = profile.d;

    if (method == GuessMethod::convolution) {
        const Eigen::VectorXd q0 = error_distribution(profile, 0, k, DistMethod::power);
        const Eigen::VectorXd q1 = error_distribution(profile, 1, n - k, DistMethod::power);
        Eigen::VectorXd out = Eigen::VectorXd::Zero(d);
        for (int bigE = 0; bigE < d; ++bigE) {
            double acc = 0.0;
            for (int e = 0; e < d; ++e) acc += q0(e) * q1(mod(-e + bigE, d));
            out(bigE) = acc;
        }
        return out;
    }

    const Eigen::VectorXcd l0 = fourier_coefficients(profile, 0);
    const Eigen::VectorXcd l1 = fourier_coefficients(profile, 1);
    const int half = (d % 2 == 0) ? (d - 2) / 2 : (d - 1) / 2;
    Eigen::VectorXd out(d);
    for (int bigE = 0; bigE < d; ++bigE) {
        double v = 1.0 / d;
        for (int i = 1; i <= half; ++i) {
            // A_i + i*B_i = l_i(0)^k * l_i(1)^(n-k)
            const Complex prod = std::pow(l0(i - 1), k) * std::pow(l1(i - 1), n - k);
            v += 2.0 / d * std::real(prod * root_of_unity(d, static_cast<long long>(bigE) * i));
        }
        if (d % 2 == 0) {
            const double a = std::real(l0(d / 2 - 1));
            const double b = std::real(l1(d / 2 - 1));
            v += std::pow(a, k) * std::pow(b, n - k) * ((bigE % 2 == 0) ? 1.0 : -1.0) / d;
        }
        out(bigE) = v;
    }
    return out;
}

double squared_deviation_sum(const nsbox::GuessingProfile& profile, int n, int k) {
    const int d = profile.d;
    const Eigen::VectorXd p = guess_error_probabilities(profile, n, k, GuessMethod::convolution);
    double direct = 0.0;
    for (int bigE = 0; bigE < d; ++bigE) {
        const double dev = p(bigE) - 1.0 / d;
        direct += dev * dev;
    }

    const Eigen::VectorXcd l0 = fourier_coefficients(profile, 0);
    const Eigen::VectorXcd l1 = fourier_coefficients(profile, 1);
    const int half = (d % 2 == 0) ? (d - 2) / 2 : (d - 1) / 2;
    double fourier = 0.0;
    for (int i = 1; i <= half; ++i)
        fourier += 2.0 / d * std::pow(std::abs(l0(i - 1)), 2 * k) *
                   std::pow(std::abs(l1(i - 1)), 2 * (n - k));
    if (d % 2 == 0) {
        const double a = std::real(l0(d / 2 - 1));
        const double b = std::real(l1(d / 2 - 1));
        fourier += std::pow(a, 2 * k) * std::pow(b, 2 * (n - k)) / d;
    }

    if (std::abs(direct - fourier) > 1e-9)
        throw std::logic_error("squared_deviation_sum: closed form disagrees with direct sum");
    return direct;
}

Eigen::VectorXd enumerate_protocol(const nsbox::BoxDistribution& box, int n, long long b,
                                   long long budget) {
    const int d = box.d;
    if (n < 1) throw std::out_of_range("enumerate_protocol: n must be >= 1");
    const long long n_data = 1LL << n;
    if (b < 0 || b >= n_data) throw std::out_of_range("enumerate_protocol: b out of range");

    const int n_boxes = static_cast<int>(n_data) - 1;
    double terms = 1.0;
    for (int t = 0; t < static_cast<int>(n_data) + n_boxes + n; ++t) {
        terms *= d;
        if (terms > static_cast<double>(budget))
            throw std::runtime_error("enumerate_protocol: enumeration budget exceeded");
    }

    // Alice marginals, for the boxes Bob's walk does not touch.
    Eigen::MatrixXd marg(d, d); // (k, i)
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k) marg(k, i) = box.alice_marginal(k, i);

    // Boxes laid out layer-major: layer m in {n-1..0} holds 2^m boxes; flat
    // index of box (m, i) is (2^m - 1) + i.
    auto flat = [](int m, int i) { return (1 << m) - 1 + i; };

    // Bob's walk: layer 0 first, pointer doubling with the bits of b.
    std::vector<int> walk_box(n), walk_beta(n);
    std::vector<char> used(n_boxes, 0);
    {
        long long ptr = 0;
        for (int m = 0; m < n; ++m) {
            const int bit = static_cast<int>((b >> m) & 1);
            walk_box[m] = flat(m, static_cast<int>(ptr));
            walk_beta[m] = bit;
            used[walk_box[m]] = 1;
            ptr = 2 * ptr + bit;
        }
        // ptr is now the index of the data dit the walk decodes.
    }
    long long target = 0;
    for (int m = 0; m < n; ++m) target = 2 * target + ((b >> m) & 1);

    std::vector<int> data(n_data, 0);    // Alice's dits
    std::vector<int> outs(n_boxes, 0);   // Alice-side outputs A
    std::vector<int> alpha(n_boxes, 0);  // derived box inputs
    std::vector<int> bob(n, 0);          // Bob-side outputs along the walk
    std::vector<int> level(n_data, 0);   // scratch data chain

    Eigen::VectorXd result = Eigen::VectorXd::Zero(d);
    const double data_weight = std::pow(static_cast<double>(d), -static_cast<double>(n_data));

    auto advance = [d](std::vector<int>& digits) {
        for (size_t t = 0; t < digits.size(); ++t) {
            if (++digits[t] < d) return true;
            digits[t] = 0;
        }
        return false;
    };

    do {
        do {
            // Encode: alpha and the shrinking data chain, layer by layer.
            for (long long i = 0; i < n_data; ++i) level[i] = data[i];
            for (int m = n - 1; m >= 0; --m) {
                const int width = 1 << m;
                for (int i = 0; i < width; ++i) {
                    const int f = flat(m, i);
                    alpha[f] = mod(-level[2 * i] + level[2 * i + 1], d);
                    level[i] = mod(level[2 * i] + outs[f], d);
                }
            }
            const int x = level[0];

            double w_alice = data_weight;
            for (int f = 0; f < n_boxes; ++f)
                if (!used[f]) w_alice *= marg(outs[f], alpha[f]);
            if (w_alice == 0.0) continue;

            // Decode: sum Bob's outputs along the walk.
            std::fill(bob.begin(), bob.end(), 0);
            do {
                double w = w_alice;
                int g = x;
                for (int m = 0; m < n; ++m) {
                    const int f = walk_box[m];
                    w *= box.pr(outs[f], bob[m], alpha[f], walk_beta[m]);
                    g = mod(g + bob[m], d);
                }
                if (w != 0.0) result(mod(g - data[target], d)) += w;
            } while (advance(bob));
        } while (advance(outs));
    } while (advance(data));

    return result;
}

} // namespace qbell::concat
