#include "su3/cli.hpp"

#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "su3/density.hpp"
#include "su3/lattice_ed.hpp"
#include "su3/singlet_basis.hpp"
#include "su3/three_site.hpp"
#include "su3/two_site.hpp"
#include "su3/verify.hpp"

namespace su3::cli {

namespace {

using nlohmann::json;
using cplx = std::complex<double>;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
    std::string format = "json";
    std::uint64_t seed = 7;
    int threads = 1;
    int samples = 0;
    double lambda_re = 0.0;
    double lambda_im = 0.0;
    double delta = 0.5;
    double step = 0.05;
    double half_width = 40.0;
    int extrapolation_depth = 8;
    int length = 6;
    bool density = false;
    bool rdm = false;
    bool basis = false;
};

json number(cplx z) {
    if (z.imag() == 0.0) return z.real();
    return json{{"re", z.real()}, {"im", z.imag()}};
}

json matrix_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

json checks_json(const std::vector<verify::Check>& checks) {
    json arr = json::array();
    for (const auto& c : checks)
        arr.push_back({{"name", c.name},
                       {"measured", c.measured},
                       {"reference", c.reference},
                       {"error", c.error},
                       {"tolerance", c.tolerance},
                       {"pass", c.pass()}});
    return arr;
}

bool report_failures(const std::vector<verify::Check>& checks, std::ostream& err) {
    bool ok = true;
    for (const auto& c : checks)
        if (!c.pass()) {
            err << "FAILED " << c.name << ": error " << c.error << " exceeds tolerance " << c.tolerance << "\n";
            ok = false;
        }
    return ok;
}

three_site::ThreeSiteProblem problem_from(const RunConfig& c) {
    three_site::ThreeSiteProblem p;
    p.delta = c.delta;
    p.step = c.step;
    p.half_width = c.half_width;
    p.extrapolation_depth = c.extrapolation_depth;
    p.threads = c.threads;
    return p;
}

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    } else {
        out.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
    }
}

void emit(const json& doc, const std::string& format, std::ostream& out) {
    if (format == "json") {
        out << doc.dump(2) << "\n";
        return;
    }
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(doc, "", rows);
    if (format == "csv") {
        out << "key,value\n";
        for (const auto& [k, v] : rows) {
            const bool quote = v.find(',') != std::string::npos || v.find('"') != std::string::npos;
            std::string escaped = v;
            if (quote) {
                escaped.clear();
                for (char ch : v) escaped += ch == '"' ? std::string("\"\"") : std::string(1, ch);
                escaped = "\"" + escaped + "\"";
            }
            out << k << "," << escaped << "\n";
        }
        return;
    }
    std::size_t width = 0;
    for (const auto& r : rows) width = std::max(width, r.first.size());
    for (const auto& [k, v] : rows) out << std::left << std::setw(static_cast<int>(width)) << k << "  " << v << "\n";
}

json base_doc(const std::string& command, const RunConfig& c) {
    json inputs = {{"seed", c.seed}, {"threads", c.threads}, {"format", c.format}};
    return json{{"command", command},
                {"inputs", inputs},
                {"results", json::object()},
                {"diagnostics", json::object()},
                {"paper_reference_values", json::object()}};
}

int cmd_verify_algebra(const RunConfig& c, json& doc, std::ostream& err) {
    const int samples = c.samples > 0 ? c.samples : 50;
    doc["inputs"]["samples"] = samples;
    const auto checks = verify::algebra_checks(c.seed, samples);
    const bool ok = report_failures(checks, err);
    doc["results"]["checks"] = checks_json(checks);
    doc["results"]["all_pass"] = ok;
    return ok ? kExitOk : kExitFailure;
}

int cmd_verify_matrices(const RunConfig& c, json& doc, std::ostream& err) {
    const int samples = c.samples > 0 ? c.samples : 20;
    doc["inputs"]["samples"] = samples;
    const auto checks = verify::matrix_checks(c.seed, samples);
    const bool ok = report_failures(checks, err);
    doc["results"]["checks"] = checks_json(checks);
    doc["results"]["all_pass"] = ok;
    if (c.basis)
        for (int m : {2, 3}) doc["results"]["basis_m" + std::to_string(m)] = json::parse(basis_json(m));
    return ok ? kExitOk : kExitFailure;
}

int cmd_two_site(const RunConfig& c, json& doc, std::ostream& err) {
    const cplx l(c.lambda_re, c.lambda_im);
    doc["inputs"]["lambda"] = number(l);
    const auto w = two_site::omega(l);
    doc["results"]["omega33"] = number(w.omega33);
    doc["results"]["omega_bar"] = number(w.omega_bar);
    doc["results"]["alpha33"] = number(w.alpha33);
    doc["results"]["G"] = number(two_site::G(l));
    doc["paper_reference_values"]["omega33_at_0"] = verify::reference::omega33_thermodynamic;
    doc["paper_reference_values"]["alpha33_at_0"] = verify::reference::alpha33_thermodynamic;
    doc["diagnostics"]["omega33_at_0_closed_form"] = two_site::omega33_homogeneous();
    doc["diagnostics"]["alpha33_at_0_closed_form"] = two_site::alpha33_homogeneous();
    try {
        const auto q = two_site::check_qkz_two_site(l);
        doc["diagnostics"]["qkz_residual_first"] = q.first;
        doc["diagnostics"]["qkz_residual_second"] = q.second;
        if (q.first > 1e-11 || q.second > 1e-11) {
            err << "FAILED two-site equations at lambda: residuals " << q.first << ", " << q.second << "\n";
            return kExitFailure;
        }
    } catch (const std::domain_error& e) {
        doc["diagnostics"]["qkz_residual_note"] = std::string("not evaluated: ") + e.what();
    }
    return kExitOk;
}

int cmd_three_site(const RunConfig& c, json& doc, std::ostream& err) {
    const auto p = problem_from(c);
    doc["inputs"]["delta"] = p.delta;
    doc["inputs"]["step"] = p.step;
    doc["inputs"]["half_width"] = p.half_width;
    doc["inputs"]["extrapolation_depth"] = p.extrapolation_depth;
    const auto s = three_site::three_site_correlator(p);
    doc["results"]["F1"] = s.F1;
    doc["results"]["F2"] = s.F2;
    doc["results"]["F3"] = s.F3;
    doc["results"]["p12p23"] = s.p12p23;
    const auto& d = s.diagnostics;
    auto& diag = doc["diagnostics"];
    diag["max_recursion_residual"] = d.max_recursion_residual;
    diag["max_imaginary_leakage"] = d.max_imaginary_leakage;
    diag["extrapolation_error"] = d.extrapolation_error;
    diag["extrapolation_converging"] = d.extrapolation_converging;
    diag["G1_prime_at_0"] = d.G1_prime_at_0;
    diag["G1_linear_coefficient"] = d.G1_linear_coefficient;
    diag["F1_kernel_derivative"] = d.F1_kernel_derivative;
    diag["integration_constant"] = d.integration_constant;
    diag["naive_series_lambda2_G1"] = d.naive_series_lambda2_G1;
    diag["nodes"] = d.nodes;
    diag["p12p23_minus_reference"] = s.p12p23 - verify::reference::p12p23_thermodynamic;
    doc["paper_reference_values"]["p12p23"] = verify::reference::p12p23_thermodynamic;
    doc["paper_reference_values"]["F1"] = 8.0 * verify::reference::p12p23_thermodynamic;

    bool ok = d.max_recursion_residual < 1e-8 && d.max_imaginary_leakage < 1e-8 && d.extrapolation_converging;
    if (c.density) {
        const auto dens = density::three_site_density(p);
        json f = json::array();
        for (Eigen::Index k = 0; k < dens.correlators.f.size(); ++k) f.push_back(dens.correlators.f(k));
        doc["results"]["correlators"] = f;
        doc["results"]["p13"] = dens.p13;
        diag["density_extrapolation_error"] = dens.correlators.extrapolation_error;
        diag["D3_trace_error"] = dens.check3.trace_error;
        diag["D3_hermiticity"] = dens.check3.hermiticity;
        diag["D3_min_eigenvalue"] = dens.check3.min_eigenvalue;
        diag["D3_partial_trace_vs_D2"] = dens.partial_trace_error;
        ok = ok && dens.check3.min_eigenvalue > -1e-8 && dens.partial_trace_error < 1e-5;
    }
    if (!ok) err << "FAILED three-site diagnostics outside tolerance\n";
    return ok ? kExitOk : kExitFailure;
}

void ed_row_reference(json& doc, int L) {
    for (const auto& row : verify::reference::table)
        if (row.L == L) {
            doc["paper_reference_values"]["omega33"] = row.omega33;
            doc["paper_reference_values"]["p12p23"] = row.p12p23;
        }
}

int cmd_ed(const RunConfig& c, json& doc, std::ostream& err) {
    doc["inputs"]["L"] = c.length;
    const auto r = ed::ground_state(ed::ChainSpec{c.length}, c.threads);
    doc["results"]["E0"] = r.E0;
    doc["results"]["energy_per_bond"] = r.energy_per_bond;
    doc["results"]["method"] = r.method;
    for (const auto& [k, v] : r.observables) doc["results"][k] = v;
    if (c.rdm) {
        doc["results"]["rdm2"] = matrix_json(r.rdm2);
        doc["results"]["rdm3"] = matrix_json(r.rdm3);
    }
    doc["diagnostics"]["residual"] = r.residual;
    doc["diagnostics"]["iterations"] = r.iterations;
    doc["diagnostics"]["degeneracy"] = r.degeneracy;
    if (r.global_minimum_checked) doc["diagnostics"]["sector_minus_global_minimum"] = r.global_minimum_gap;
    ed_row_reference(doc, c.length);
    if (r.residual > 1e-10) {
        err << "FAILED eigenvector residual " << r.residual << "\n";
        return kExitFailure;
    }
    return kExitOk;
}

int cmd_report_table1(const RunConfig& c, json& doc, std::ostream&) {
    json rows = json::array(), refs = json::array();
    for (const auto& row : verify::reference::table) {
        const auto r = ed::ground_state(ed::ChainSpec{row.L}, c.threads);
        const double p = r.observables.at("p12p23");
        rows.push_back({{"L", row.L},
                        {"method", r.method},
                        {"omega33", r.energy_per_bond},
                        {"p12p23", p},
                        {"omega33_delta", r.energy_per_bond - row.omega33},
                        {"p12p23_delta", p - row.p12p23}});
        refs.push_back({{"L", row.L}, {"omega33", row.omega33}, {"p12p23", row.p12p23}});
    }
    const auto s = three_site::three_site_correlator(problem_from(c));
    const double w = two_site::omega33(0.0).real();
    doc["results"]["finite_chains"] = rows;
    doc["results"]["thermodynamic"] = {{"omega33", w},
                                       {"p12p23", s.p12p23},
                                       {"omega33_delta", w - verify::reference::omega33_thermodynamic},
                                       {"p12p23_delta", s.p12p23 - verify::reference::p12p23_thermodynamic}};
    doc["paper_reference_values"]["finite_chains"] = refs;
    doc["paper_reference_values"]["thermodynamic"] = {{"omega33", verify::reference::omega33_thermodynamic},
                                                      {"p12p23", verify::reference::p12p23_thermodynamic}};
    doc["diagnostics"]["three_site_extrapolation_error"] = s.diagnostics.extrapolation_error;
    return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig c;
    CLI::App app{"SU(3) integrable chain short-range correlators", "su3corr"};
    app.set_config("--config", "", "Configuration file with key = value lines; flags take precedence");
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}))->capture_default_str();
    app.add_option("--seed", c.seed, "Seed for randomized samples")->capture_default_str();
    app.add_option("--threads", c.threads, "Worker threads (env SU3_THREADS if not given)")
                        ->check(CLI::PositiveNumber)
                        ->capture_default_str();
    app.add_option("--samples", c.samples, "Random samples for verification suites (0 = suite default)")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--lambda", c.lambda_re, "Spectral parameter, real part")->capture_default_str();
    app.add_option("--lambda-im", c.lambda_im, "Spectral parameter, imaginary part")->capture_default_str();
    app.add_option("--delta", c.delta, "Contour offset")->check(CLI::Range(0.05, 0.95))->capture_default_str();
    app.add_option("--step", c.step, "Quadrature step in the sinh variable")
        ->check(CLI::Range(1e-4, 0.5))
        ->capture_default_str();
    app.add_option("--half-width", c.half_width, "Half-width of the quadrature grid in the sinh variable")
        ->check(CLI::Range(2.0, 200.0))
        ->capture_default_str();
    app.add_option("--extrapolation-depth", c.extrapolation_depth, "Number of samples for the limit to 0")
        ->check(CLI::Range(3, 16))
        ->capture_default_str();
    app.add_option("-L,--length", c.length, "Chain length for ed")->check(CLI::Range(3, 12))->capture_default_str();
    app.add_flag("--density", c.density, "three-site: also assemble the three-site density operator");
    app.add_flag("--rdm", c.rdm, "ed: include reduced density matrices");
    app.add_flag("--basis", c.basis, "verify-matrices: include the singlet bases");

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"verify-algebra", "Yang-Baxter, unitarity, fusion and contraction identities"},
        {"verify-matrices", "Gram matrices and A matrices against the closed forms"},
        {"two-site", "Two-site functions at a spectral parameter"},
        {"three-site", "Three-site functional equations and the correlator"},
        {"ed", "Exact diagonalization of a periodic chain"},
        {"report-table1", "Finite-chain and thermodynamic values side by side"},
    };
    for (const auto& [name, help] : commands) app.add_subcommand(name, help);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }
    // Precedence for the thread count: command line, then SU3_THREADS, then the config file.
    bool threads_on_command_line = false;
    for (int i = 1; i < argc; ++i) {
        const std::string_view a(argv[i]);
        if (a == "--threads" || a.starts_with("--threads=")) threads_on_command_line = true;
    }
    if (!threads_on_command_line)
        if (const char* env = std::getenv("SU3_THREADS")) {
            try {
                c.threads = std::stoi(env);
            } catch (const std::exception&) {
                c.threads = 0;
            }
            if (c.threads < 1) {
                err << "SU3_THREADS must be a positive integer\n";
                return kExitUsage;
            }
        }

    const std::string command = app.get_subcommands().front()->get_name();
    json doc = base_doc(command, c);
    int code = kExitOk;
    try {
        if (command == "verify-algebra") code = cmd_verify_algebra(c, doc, err);
        else if (command == "verify-matrices") code = cmd_verify_matrices(c, doc, err);
        else if (command == "two-site") code = cmd_two_site(c, doc, err);
        else if (command == "three-site") code = cmd_three_site(c, doc, err);
        else if (command == "ed") code = cmd_ed(c, doc, err);
        else code = cmd_report_table1(c, doc, err);
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    emit(doc, c.format, out);
    return code;
}

}  // namespace su3::cli
