#include "qbell/scan.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "qbell/ic.hpp"
#include "qbell/ml.hpp"

namespace qbell::scan {

nsbox::GuessingProfile figure2_family(double mu, double eta) {
    if (mu < 0.0 || eta < 0.0 || mu + eta > 1.0 + 1e-12)
        throw std::out_of_range("figure2_family: (mu, eta) outside the simplex");
    Eigen::MatrixXd values(4, 2);
    values.col(0) << mu, eta / 2.0, eta / 2.0, std::max(1.0 - mu - eta, 0.0);
    values.col(1) = values.col(0);
    return nsbox::profile_from_values(values);
}

namespace {

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

double grid_point(double lo, double hi, int idx, int count) {
    return count == 1 ? lo : lo + (hi - lo) * idx / (count - 1);
}

const char* status_name(ml::FeasibilityStatus s) {
    switch (s) {
    case ml::FeasibilityStatus::feasible: return "feasible";
    case ml::FeasibilityStatus::infeasible: return "infeasible";
    case ml::FeasibilityStatus::indeterminate: return "indeterminate";
    }
    return "indeterminate";
}

} // namespace

void scan_fig2(std::ostream& out, const ScanOptions& opts) {
    if (opts.nx < 1 || opts.ny < 1) throw std::invalid_argument("scan_fig2: empty grid");
    out << "mu,eta,lhs_m1,lhs_m2,ic_satisfied,ml_analytic,ml_numeric,oracle_status\n";
    for (int x = 0; x < opts.nx; ++x) {
        const double mu = grid_point(opts.mu_min, opts.mu_max, x, opts.nx);
        for (int y = 0; y < opts.ny; ++y) {
            const double eta = grid_point(opts.eta_min, opts.eta_max, y, opts.ny);
            if (mu < 0.0 || eta < 0.0 || mu + eta > 1.0 + 1e-12) continue;
            const nsbox::GuessingProfile profile = figure2_family(mu, eta);
            const ic::IcVerdict icv = ic::ic_verdict(profile, opts.tol);
            const ml::MlVerdict mlv = ml::ml_verdict_analytic(profile, opts.tol);
            if (icv.satisfied != mlv.satisfied)
                throw std::logic_error("scan_fig2: IC and ML analytic verdicts disagree");

            int ml_numeric = mlv.satisfied ? 1 : 0;
            const char* status = "skipped";
            if (opts.numeric) {
                const ml::FeasibilityReport rep = ml::ml_feasibility_numeric(profile);
                status = status_name(rep.status);
                if (rep.status == ml::FeasibilityStatus::feasible) ml_numeric = 1;
                if (rep.status == ml::FeasibilityStatus::infeasible) ml_numeric = 0;
            }
            out << fmt(mu) << ',' << fmt(eta) << ',' << fmt(icv.lhs[0]) << ','
                << fmt(icv.lhs[1]) << ',' << (icv.satisfied ? 1 : 0) << ','
                << (mlv.satisfied ? 1 : 0) << ',' << ml_numeric << ',' << status << '\n';
        }
    }
}

} // namespace qbell::scan
