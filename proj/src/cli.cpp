#include "qbell/cli.hpp"

#include <fstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "qbell/concat.hpp"
#include "qbell/ic.hpp"
#include "qbell/json_io.hpp"
#include "qbell/ml.hpp"
#include "qbell/scan.hpp"

namespace qbell::cli {

using nlohmann::json;

namespace {

nsbox::BoxDistribution load_box(const std::string& path) {
    return json_io::box_from_json(json_io::load_json_file(path));
}

nsbox::GuessingProfile load_profile(const std::string& path) {
    return json_io::profile_from_json(json_io::load_json_file(path));
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

int cmd_validate(const std::string& path, std::ostream& out) {
    const nsbox::BoxDistribution box = load_box(path);
    const nsbox::ValidationReport rep = nsbox::validate_box(box);
    emit(out, json{{"d", box.d},
                   {"normalized", rep.normalized},
                   {"nonsignaling", rep.nonsignaling},
                   {"max_violation", rep.max_violation},
                   {"ok", rep.ok()}});
    if (!rep.ok())
        throw std::runtime_error(rep.normalized ? "box is signaling" : "box is not normalized");
    return 0;
}

int cmd_profile(const std::string& path, std::ostream& out) {
    emit(out, json_io::profile_to_json(nsbox::guessing_profile(load_box(path))));
    return 0;
}

int cmd_ic_check(const std::string& path, int n, bool strict, double tol, std::ostream& out) {
    const nsbox::GuessingProfile profile = load_profile(path);
    const ic::IcVerdict v = ic::ic_verdict(profile, tol);
    json j{{"verdict", v.satisfied ? "satisfied" : "violated"},
           {"per_m", v.lhs},
           {"max_lhs", v.max_lhs},
           {"saturated", v.saturated}};
    if (n > 0) {
        const ic::IcQuadraticReport q = ic::ic_quadratic_lhs(profile, n);
        j["quadratic"] = json{{"n", q.n},
                              {"lhs", q.lhs_collapsed},
                              {"rhs", q.rhs},
                              {"satisfied", q.satisfied}};
    }
    emit(out, j);
    return (strict && !v.satisfied) ? 1 : 0;
}

int cmd_ml_check(const std::string& path, bool numeric, bool strict, double tol,
                 std::ostream& out) {
    const nsbox::GuessingProfile profile = load_profile(path);
    const ml::MlVerdict v = ml::ml_verdict_analytic(profile, tol);
    json j{{"verdict", v.satisfied ? "satisfied" : "violated"},
           {"per_m", v.lhs},
           {"max_lhs", v.max_lhs},
           {"saturated", v.saturated}};
    if (numeric) {
        const ml::FeasibilityReport rep = ml::ml_feasibility_numeric(profile);
        const char* status = rep.status == ml::FeasibilityStatus::feasible ? "feasible"
                             : rep.status == ml::FeasibilityStatus::infeasible
                                 ? "infeasible"
                                 : "indeterminate";
        j["numeric"] = json{{"status", status}, {"residual", rep.residual}};
    }
    emit(out, j);
    return (strict && !v.satisfied) ? 1 : 0;
}

json complex_entries(const Eigen::MatrixXcd& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

int cmd_blocks(const std::string& path, std::ostream& out) {
    const nsbox::GuessingProfile profile = load_profile(path);
    const int d = profile.d;
    const ml::BlockFamily fam = ml::block_diagonalize(
        ml::symmetrized_moment_matrix(profile, ml::VTilde::uniform(d)), d);

    json blocks = json::array();
    blocks.push_back(json{{"m", 0},
                          {"size", d + 3},
                          {"entries", complex_entries(fam.gamma0)}});
    // Free entries fixed by the witness choice, which makes the Schur
    // complement an exact multiple of the identity.
    for (int m = 1; m < d; ++m) {
        const Eigen::MatrixXcd blk =
            ml::build_block(profile, m, ml::witness_assignment(profile, m));
        blocks.push_back(json{{"m", m}, {"size", d + 2}, {"entries", complex_entries(blk)}});
    }
    emit(out, blocks);
    return 0;
}

int cmd_protocol(const std::string& path, int n, long long b, std::ostream& out) {
    const nsbox::BoxDistribution box = load_box(path);
    const Eigen::VectorXd dist = concat::enumerate_protocol(box, n, b);
    emit(out, json{{"d", box.d},
                   {"n", n},
                   {"b", b},
                   {"dist", std::vector<double>(dist.data(), dist.data() + dist.size())}});
    return 0;
}

int cmd_scan(const scan::ScanOptions& opts, const std::string& out_path) {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file: " + out_path);
    scan::scan_fig2(file, opts);
    if (!file) throw std::runtime_error("write failure on output file: " + out_path);
    return 0;
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"quantum Bell inequality toolkit"};
    app.require_subcommand(1);

    std::string box_path, profile_path, out_path, family = "fig2", grid = "200x200";
    bool strict = false, numeric = false;
    double tol = 1e-9;
    int n = 0;
    long long b = 0;
    scan::ScanOptions sopts;

    auto* validate = app.add_subcommand("validate", "check a box for normalization and nonsignaling");
    validate->add_option("box", box_path, "box JSON file")->required();

    auto* profile = app.add_subcommand("profile", "guessing profile of a box");
    profile->add_option("box", box_path, "box JSON file")->required();

    auto* ic_check = app.add_subcommand("ic-check", "quadratic Bell inequality verdict");
    ic_check->add_option("profile", profile_path, "profile JSON file")->required();
    ic_check->add_option("--n", n, "also report the depth-n quadratic criterion");
    ic_check->add_flag("--strict", strict, "exit 1 when violated");
    ic_check->add_option("--tol", tol, "verdict tolerance");

    auto* ml_check = app.add_subcommand("ml-check", "macroscopic locality verdict");
    ml_check->add_option("profile", profile_path, "profile JSON file")->required();
    ml_check->add_flag("--numeric", numeric, "also run the PSD feasibility oracle");
    ml_check->add_flag("--strict", strict, "exit 1 when violated");
    ml_check->add_option("--tol", tol, "verdict tolerance");

    auto* blocks = app.add_subcommand("blocks", "dump the diagonal blocks of the moment matrix");
    blocks->add_option("profile", profile_path, "profile JSON file")->required();

    auto* scan_cmd = app.add_subcommand("scan", "CSV classification over a parameter grid");
    scan_cmd->add_option("--family", family, "profile family (fig2)");
    scan_cmd->add_option("--grid", grid, "grid resolution NxM");
    scan_cmd->add_option("--out", out_path, "output CSV path")->required();
    scan_cmd->add_option("--mu-min", sopts.mu_min, "mu range start");
    scan_cmd->add_option("--mu-max", sopts.mu_max, "mu range end");
    scan_cmd->add_option("--eta-min", sopts.eta_min, "eta range start");
    scan_cmd->add_option("--eta-max", sopts.eta_max, "eta range end");
    scan_cmd->add_flag("--numeric", numeric, "run the PSD feasibility oracle per point");
    scan_cmd->add_option("--tol", tol, "verdict tolerance");

    auto* protocol = app.add_subcommand("protocol", "exact protocol enumeration");
    protocol->add_option("box", box_path, "box JSON file")->required();
    protocol->add_option("--n", n, "concatenation depth")->required();
    protocol->add_option("--b", b, "Bob's input")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (validate->parsed()) return cmd_validate(box_path, out);
        if (profile->parsed()) return cmd_profile(box_path, out);
        if (ic_check->parsed()) return cmd_ic_check(profile_path, n, strict, tol, out);
        if (ml_check->parsed()) return cmd_ml_check(profile_path, numeric, strict, tol, out);
        if (blocks->parsed()) return cmd_blocks(profile_path, out);
        if (protocol->parsed()) return cmd_protocol(box_path, n, b, out);
        if (scan_cmd->parsed()) {
            if (family != "fig2")
                throw std::runtime_error("unknown family: " + family);
            const size_t sep = grid.find('x');
            if (sep == std::string::npos)
                throw std::runtime_error("grid must be NxM: " + grid);
            sopts.nx = std::stoi(grid.substr(0, sep));
            sopts.ny = std::stoi(grid.substr(sep + 1));
            sopts.numeric = numeric;
            sopts.tol = tol;
            return cmd_scan(sopts, out_path);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace qbell::cli
