#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "inertia_lab/absmon.hpp"
#include "inertia_lab/constructions.hpp"
#include "inertia_lab/entrywise.hpp"
#include "inertia_lab/errors.hpp"
#include "inertia_lab/harness.hpp"
#include "inertia_lab/io.hpp"
#include "inertia_lab/linalg.hpp"
#include "inertia_lab/pontryagin.hpp"

namespace il = inertia_lab;
namespace cx = inertia_lab::constructions;
using il::linalg::SymMatrix;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kNegative = 1, kInput = 2, kAsymmetry = 3, kDomain = 4 };

std::string text_or_file(const std::string& arg) {
    const auto first = arg.find_first_not_of(" \t\n");
    if (first != std::string::npos && arg[first] == '{') return arg;
    return il::io::read_file(arg);
}

il::entrywise::DomainSpec parse_domain(const std::string& kind, const std::string& rho) {
    const double r = rho == "inf" ? std::numeric_limits<double>::infinity() : std::stod(rho);
    il::entrywise::DomainSpec d{r, il::entrywise::domain_kind_from_string(kind)};
    d.validate();
    return d;
}

void print_matrix(const SymMatrix& a) { std::cout << il::io::matrix_to_json(a) << '\n'; }

// ------------------------------------------------------------------ construct

std::vector<double> tail_numbers(const std::vector<std::string>& p, std::size_t from) {
    std::vector<double> out;
    for (std::size_t i = from; i < p.size(); ++i) out.push_back(std::stod(p[i]));
    return out;
}

std::size_t param_count(const std::vector<std::string>& p, std::size_t i, const char* what) {
    if (i >= p.size()) throw il::InvalidArgument(std::string("missing parameter ") + what);
    const long v = std::stol(p[i]);
    if (v < 0) throw il::InvalidArgument(std::string(what) + " must be non-negative");
    return static_cast<std::size_t>(v);
}

double param_real(const std::vector<std::string>& p, std::size_t i, const char* what) {
    if (i >= p.size()) throw il::InvalidArgument(std::string("missing parameter ") + what);
    std::size_t used = 0;
    const double v = std::stod(p[i], &used);
    if (used != p[i].size()) throw il::InvalidArgument(std::string("bad number for ") + what + ": " + p[i]);
    return v;
}

const std::map<std::string, std::string>& construct_usage() {
    static const std::map<std::string, std::string> m{
        {"judicious", "judicious"},
        {"judicious_pencil", "judicious_pencil <k> <t>"},
        {"m_matrix", "m_matrix <k> <a> <b>"},
        {"psi_map", "psi_map <a> <b> <k> <eps> [B diagonal entries...]"},
        {"ectrex", "ectrex <k> <delta> <eps>"},
        {"vandermonde", "vandermonde <k> <t0> [u_1 ... u_{2k-1}]"},
        {"two_by_two", "two_by_two <t0>   (block_pair of the 2 x 2 pair)"},
        {"replication", "replication <k> <l> <t0> <matrix-file>"},
        {"lift", "lift <N> <matrix-file>"},
        {"identity", "identity <n>"},
        {"ones", "ones <n>"},
    };
    return m;
}

SymMatrix construct(const std::string& name, const std::vector<std::string>& p,
                    const std::optional<il::entrywise::DomainSpec>& dom) {
    if (name == "judicious") return cx::judicious_matrix();
    if (name == "judicious_pencil") return cx::judicious_pencil(param_count(p, 0, "k"), param_real(p, 1, "t"));
    if (name == "m_matrix")
        return cx::m_matrix(param_count(p, 0, "k"), param_real(p, 1, "a"), param_real(p, 2, "b"));
    if (name == "psi_map") {
        const auto k = param_count(p, 2, "k");
        const auto diag = tail_numbers(p, 4);
        const SymMatrix B = diag.empty() ? SymMatrix::identity(1) : SymMatrix::diagonal(diag);
        return cx::psi_map(param_real(p, 0, "a"), param_real(p, 1, "b"), k, param_real(p, 3, "eps"), B);
    }
    if (name == "ectrex")
        return cx::counterexample_ectrex(param_count(p, 0, "k"), param_real(p, 1, "delta"), param_real(p, 2, "eps"), dom);
    if (name == "vandermonde") {
        const auto k = param_count(p, 0, "k");
        auto u = tail_numbers(p, 2);
        if (u.empty())
            for (std::size_t i = 0; i + 1 < 2 * k; ++i) u.push_back(static_cast<double>(i + 1));
        return cx::vandermonde_psd(k, u, param_real(p, 1, "t0"), dom);
    }
    if (name == "two_by_two") {
        const auto pr = cx::two_by_two_pair(param_real(p, 0, "t0"), dom);
        return cx::block_pair(pr.a, pr.b);
    }
    if (name == "replication") {
        if (p.size() < 4) throw il::InvalidArgument("usage: " + construct_usage().at(name));
        return cx::replication(il::io::parse_matrix(il::io::read_file(p[3])), param_count(p, 0, "k"),
                               param_count(p, 1, "l"), param_real(p, 2, "t0"), dom);
    }
    if (name == "lift") {
        if (p.size() < 2) throw il::InvalidArgument("usage: " + construct_usage().at(name));
        return il::pontryagin::lift_finite(il::io::parse_matrix(il::io::read_file(p[1])), param_count(p, 0, "N"));
    }
    if (name == "identity") return SymMatrix::identity(param_count(p, 0, "n"));
    if (name == "ones") return SymMatrix::ones(param_count(p, 0, "n"));
    std::string names;
    for (const auto& [k, _] : construct_usage()) names += " " + k;
    throw il::InvalidArgument("unknown construction '" + name + "'; available:" + names);
}

// ------------------------------------------------------------------ absmon

struct Builtin {
    std::size_t arity;
    il::absmon::Evaluable f;
};

const std::map<std::string, Builtin>& builtins() {
    static const std::map<std::string, Builtin> m{
        {"exp", {1, [](std::span<const double> x) { return std::exp(x[0]); }}},
        {"sin", {1, [](std::span<const double> x) { return std::sin(x[0]); }}},
        {"cos", {1, [](std::span<const double> x) { return std::cos(x[0]); }}},
        {"cosh", {1, [](std::span<const double> x) { return std::cosh(x[0]); }}},
        {"sinh", {1, [](std::span<const double> x) { return std::sinh(x[0]); }}},
        {"exp_neg", {1, [](std::span<const double> x) { return std::exp(-x[0]); }}},
        {"inv_one_minus", {1, [](std::span<const double> x) { return 1.0 / (1.0 - x[0]); }}},
        {"xy", {2, [](std::span<const double> x) { return x[0] * x[1]; }}},
        {"exp_sum", {2, [](std::span<const double> x) { return std::exp(x[0] + x[1]); }}},
    };
    return m;
}

// "lo:hi" per axis.
std::pair<double, double> parse_interval(const std::string& s) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw il::InvalidArgument("--box expects lo:hi, got '" + s + "'");
    return {std::stod(s.substr(0, colon)), std::stod(s.substr(colon + 1))};
}

json report_json(const il::absmon::DifferenceReport& r) {
    json out{{"pass", r.pass},
             {"label", r.label},
             {"worst_violation", r.worst_violation},
             {"grid_points", r.grid_points},
             {"differences_checked", r.differences_checked},
             {"h", r.h},
             {"slack", r.slack},
             {"boundary_value", r.boundary_value}};
    if (!r.pass) {
        out["location"] = r.location;
        out["alpha"] = r.alpha;
    }
    return out;
}

// ------------------------------------------------------------------ harness runs

struct RunOptions {
    std::string config;
    unsigned threads = 0;
    std::string json_out;
    std::string csv_out;
    bool timing = false;
};

void append_csv(const std::string& path, const il::harness::VerdictReport& rep) {
    const bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
    std::ofstream out(path, std::ios::app);
    if (!out) throw il::InvalidArgument("cannot write '" + path + "'");
    if (fresh) out << il::io::report_csv_header();
    out << il::io::report_csv_row(rep);
}

int run_harness(il::harness::Mode mode, const RunOptions& opt) {
    auto rc = il::io::parse_run_config(il::io::read_file(opt.config));
    il::io::apply_seed_override(rc);
    rc.cfg.threads = opt.threads;
    if (!opt.json_out.empty()) rc.json_path = opt.json_out;
    if (!opt.csv_out.empty()) rc.csv_path = opt.csv_out;

    il::harness::VerdictReport rep;
    bool expected = false;
    if (mode == il::harness::Mode::suite) {
        rep = il::harness::lemma_suite(rc.cfg);
        expected = rep.failures == 0;
    } else {
        if (!rc.theorem) throw il::ParseError("config: missing key 'theorem'");
        if (!rc.fn) throw il::ParseError("config: missing key 'function'");
        if (mode == il::harness::Mode::verify) {
            rep = il::harness::verify_forward(*rc.theorem, *rc.fn, rc.cfg);
            expected = !rep.vacuous && rep.failures == 0;
        } else {
            rep = il::harness::falsify(*rc.theorem, *rc.fn, rc.cfg, rc.strategy);
            expected = !rep.witnesses.empty();
        }
    }

    const std::string doc = il::io::report_to_json(rep, opt.timing);
    std::ostringstream summary;
    summary << il::harness::to_string(mode) << ' ' << rep.theorem << ": " << rep.status << " (" << rep.runtime_ms
            << " ms)";
    if (rc.json_path) {
        il::io::write_file(*rc.json_path, doc);
        std::cout << summary.str() << '\n';
    } else {
        std::cout << doc;
        std::cerr << summary.str() << '\n';
    }
    if (rc.csv_path) append_csv(*rc.csv_path, rep);
    return expected ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"inertia_lab: inertia of symmetric matrices under entrywise maps"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "inertia_lab 0.1.0");

    // inertia
    std::string inertia_file;
    double rel_zero = il::linalg::TolerancePolicy{}.rel_zero;
    auto* c_inertia = app.add_subcommand("inertia", "Print {neg, zero, pos} of a matrix JSON file");
    c_inertia->add_option("matrix", inertia_file, "Matrix JSON file")->required();
    c_inertia->add_option("--tol", rel_zero, "Relative zero threshold")->capture_default_str();

    // apply
    std::string apply_fn, dom_kind = "two_sided", dom_rho = "inf";
    std::vector<std::string> apply_files;
    auto* c_apply = app.add_subcommand("apply", "Apply an entrywise function to one or more matrices");
    c_apply->add_option("--fn", apply_fn, "FunctionSpec JSON (inline or file)")->required();
    c_apply->add_option("matrices", apply_files, "Matrix JSON files, one per variable")->required();
    c_apply->add_option("--domain", dom_kind, "two_sided, open_positive or closed_left")->capture_default_str();
    c_apply->add_option("--rho", dom_rho, "Domain radius or inf")->capture_default_str();

    // construct
    std::string cons_name;
    std::vector<std::string> cons_params;
    std::string cons_dom_kind, cons_rho = "inf";
    auto* c_cons = app.add_subcommand("construct", "Emit a test matrix as JSON");
    c_cons->add_option("name", cons_name, "Construction name")->required();
    c_cons->add_option("params", cons_params, "Positional parameters");
    c_cons->add_option("--domain", cons_dom_kind, "Check entries against this domain");
    c_cons->add_option("--rho", cons_rho, "Domain radius or inf")->capture_default_str();
    c_cons->add_flag_callback(
        "--list",
        [] {
            for (const auto& [_, usage] : construct_usage()) std::cout << usage << '\n';
            throw CLI::Success();
        },
        "List constructions and their parameters");
    c_cons->allow_extras(false);

    // verify / falsify / suite
    RunOptions run;
    auto add_run = [&](const char* name, const char* help) {
        auto* c = app.add_subcommand(name, help);
        c->add_option("config", run.config, "RunConfig JSON file")->required();
        c->add_option("--threads", run.threads, "Worker threads (0 = hardware count)")->capture_default_str();
        c->add_option("--json", run.json_out, "Write the JSON report here");
        c->add_option("--csv", run.csv_out, "Append a CSV summary row here");
        c->add_flag("--timing", run.timing, "Include runtime_ms in the JSON report");
        return c;
    };
    auto* c_verify = add_run("verify", "Statistically check the sufficiency direction of a claim");
    auto* c_falsify = add_run("falsify", "Search for a witness against a claim");
    auto* c_suite = add_run("suite", "Run the structural property suite");

    // pontryagin
    std::string pont_file;
    std::size_t pont_k = 0;
    auto* c_pont = app.add_subcommand("pontryagin", "Indefinite Gram factorization and negativity profiles");
    c_pont->require_subcommand(1);
    auto* c_factor = c_pont->add_subcommand("factor", "Realize A as a Gram matrix in a space of negative index k");
    c_factor->add_option("--matrix", pont_file, "Matrix JSON file")->required();
    c_factor->add_option("--k", pont_k, "Negative index")->required();
    auto* c_profile = c_pont->add_subcommand("profile", "Negative counts of the leading principal blocks");
    c_profile->add_option("--matrix", pont_file, "Matrix JSON file")->required();
    std::optional<std::size_t> profile_k;
    c_profile->add_option("--k", profile_k, "Report the stabilization index against this k");

    // absmon
    std::string am_fn;
    std::vector<std::string> am_box;
    unsigned am_order = 6;
    double am_step = 0.0;
    std::optional<unsigned> am_coeffs;
    auto* c_abs = app.add_subcommand("absmon", "Forward-difference absolute monotonicity test");
    c_abs->add_option("--fn", am_fn, "Builtin name or FunctionSpec JSON (inline or file)")->required();
    c_abs->add_option("--box", am_box, "One lo:hi interval per variable (default 0:1)");
    c_abs->add_option("--order", am_order, "Highest difference order D")->capture_default_str();
    c_abs->add_option("--step", am_step, "Lattice step h (0 = width / 64)")->capture_default_str();
    c_abs->add_option("--coefficients", am_coeffs, "Also estimate Maclaurin coefficients up to this degree");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInput;
    }

    try {
        if (*c_inertia) {
            il::linalg::TolerancePolicy tol;
            tol.rel_zero = rel_zero;
            tol.validate();
            const auto a = il::io::parse_matrix(il::io::read_file(inertia_file));
            std::cout << il::io::inertia_to_json(il::linalg::inertia(a, tol)) << '\n';
            return kOk;
        }
        if (*c_apply) {
            const auto f = il::io::parse_function(text_or_file(apply_fn));
            if (f.arity() != apply_files.size())
                throw il::InvalidArgument("function arity " + std::to_string(f.arity()) + " but " +
                                          std::to_string(apply_files.size()) + " matrices given");
            std::vector<SymMatrix> tuple;
            for (const auto& file : apply_files) tuple.push_back(il::io::parse_matrix(il::io::read_file(file)));
            print_matrix(il::entrywise::apply_entrywise(f, tuple, parse_domain(dom_kind, dom_rho)));
            return kOk;
        }
        if (*c_cons) {
            std::optional<il::entrywise::DomainSpec> dom;
            if (!cons_dom_kind.empty()) dom = parse_domain(cons_dom_kind, cons_rho);
            const SymMatrix a = construct(cons_name, cons_params, dom);
            if (dom) cx::require_inside(a, dom, cons_name.c_str());
            print_matrix(a);
            return kOk;
        }
        if (*c_verify) return run_harness(il::harness::Mode::verify, run);
        if (*c_falsify) return run_harness(il::harness::Mode::falsify, run);
        if (*c_suite) return run_harness(il::harness::Mode::suite, run);
        if (*c_factor) {
            const auto g = il::pontryagin::gram_realize(il::io::parse_matrix(il::io::read_file(pont_file)), pont_k);
            json vs = json::array();
            for (std::size_t i = 0; i < g.vectors.rows(); ++i) {
                const auto r = g.vectors.row(i);
                vs.push_back(std::vector<double>(r.begin(), r.end()));
            }
            std::cout << json{{"signature", {{"d_plus", g.signature.d_plus}, {"d_minus", g.signature.d_minus}}},
                              {"vectors", vs},
                              {"error", g.reconstruction_error}}
                             .dump()
                      << '\n';
            return kOk;
        }
        if (*c_profile) {
            const auto prof = il::pontryagin::leading_negativity_profile(il::io::parse_matrix(il::io::read_file(pont_file)));
            if (!profile_k) {
                std::cout << json(prof).dump() << '\n';
                return kOk;
            }
            const auto idx = il::pontryagin::stabilization_index(prof, *profile_k);
            std::cout << json{{"profile", prof}, {"stabilization_index", idx ? json(*idx) : json(nullptr)}}.dump()
                      << '\n';
            return kOk;
        }
        if (*c_abs) {
            il::absmon::Evaluable f;
            std::size_t arity = 0;
            if (auto it = builtins().find(am_fn); it != builtins().end()) {
                f = it->second.f;
                arity = it->second.arity;
            } else {
                const auto spec = il::io::parse_function(text_or_file(am_fn));
                f = il::absmon::evaluable(spec);
                arity = spec.arity();
            }
            auto grid = il::absmon::GridSpec::unit_box(arity, am_order);
            if (!am_box.empty()) {
                if (am_box.size() != arity)
                    throw il::InvalidArgument("--box needs " + std::to_string(arity) + " intervals");
                for (std::size_t p = 0; p < arity; ++p) std::tie(grid.lower[p], grid.upper[p]) = parse_interval(am_box[p]);
            }
            grid.h = am_step;
            json out = report_json(il::absmon::forward_difference_test(f, grid));
            if (am_coeffs) {
                const double h = am_step > 0 ? am_step : 1e-2;
                const auto est = il::absmon::maclaurin_estimate(f, arity, *am_coeffs, h);
                json cs = json::array();
                for (const auto& c : est.coefficients)
                    cs.push_back(json{{"alpha", c.alpha}, {"value", c.value}, {"error", c.error}});
                out["coefficients"] = cs;
            }
            std::cout << out.dump(2) << '\n';
            return out["pass"].get<bool>() ? kOk : kNegative;
        }
    } catch (const il::AsymmetryError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kAsymmetry;
    } catch (const il::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kDomain;
    } catch (const il::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: bad number (" << e.what() << ")\n";
        return kInput;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: number out of range (" << e.what() << ")\n";
        return kInput;
    }
    return kOk;
}
