#pragma once

#include <ostream>

#include "qbell/nsbox.hpp"

namespace qbell::scan {

/// d = 4 family: p(0|0) = mu, p(1|0) = p(2|0) = eta/2, p(3|0) = 1 - mu - eta,
/// both settings identical. Throws outside the simplex.
nsbox::GuessingProfile figure2_family(double mu, double eta);

struct ScanOptions {
    int nx = 200, ny = 200; // grid points along mu, eta
    double mu_min = 0.0, mu_max = 1.0;
    double eta_min = 0.0, eta_max = 1.0;
    bool numeric = false; // run the PSD feasibility oracle per point
    double tol = 1e-9;
};

/// Stream the CSV scan: header plus one row per grid point inside the simplex,
/// row-major with mu outermost. Deterministic formatting (12 significant
/// digits, '\n' endings).
void scan_fig2(std::ostream& out, const ScanOptions& opts);

} // namespace qbell::scan
