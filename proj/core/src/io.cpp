#include "inertia_lab/io.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "inertia_lab/errors.hpp"

namespace inertia_lab::io {

namespace {

using nlohmann::json;
using entrywise::AdmissibleK;
using entrywise::DomainKind;
using entrywise::DomainSpec;
using entrywise::MultiIndex;
using entrywise::Series;
using entrywise::Term;

constexpr double kAsymmetryTol = 1e-12;

json parse_doc(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string(what) + ": " + e.what());
    }
}

void reject_unknown(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
    if (!j.is_object()) throw ParseError(where + ": expected an object");
    std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [key, _] : j.items())
        if (!allowed.count(key)) throw ParseError(where + ": unknown key '" + key + "'");
}

const json& need(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) throw ParseError(where + ": missing key '" + key + "'");
    return j.at(key);
}

double number(const json& j, const std::string& where) {
    if (!j.is_number()) throw ParseError(where + ": expected a number");
    return j.get<double>();
}

std::size_t count(const json& j, const std::string& where) {
    if (!j.is_number_integer() || j.get<std::int64_t>() < 0) throw ParseError(where + ": expected a non-negative integer");
    return j.get<std::size_t>();
}

std::size_t var_index(const json& j, std::size_t arity, const std::string& where) {
    const std::size_t p = count(j, where);
    if (p < 1 || p > arity) throw ParseError(where + ": p0 must lie in 1.." + std::to_string(arity));
    return p - 1;
}

json rows_json(const SymMatrix& a) {
    json rows = json::array();
    for (std::size_t i = 0; i < a.size(); ++i) {
        json r = json::array();
        for (std::size_t j = 0; j < a.size(); ++j) r.push_back(a(i, j));
        rows.push_back(std::move(r));
    }
    return rows;
}

json matrix_json(const SymMatrix& a) { return json{{"n", a.size()}, {"rows", rows_json(a)}}; }

json terms_json(const Series& s) {
    json out = json::array();
    for (const auto& t : s.terms()) out.push_back(json{{"alpha", t.alpha}, {"c", t.c}});
    return out;
}

Series series_from(const json& j, std::size_t arity, const std::string& where) {
    const json& cs = need(j, "coeffs", where);
    if (!cs.is_array()) throw ParseError(where + ": coeffs must be an array");
    std::vector<Term> terms;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        const json& e = cs[i];
        const std::string w = where + ".coeffs[" + std::to_string(i) + "]";
        if (e.is_number()) {
            if (arity != 1) throw ParseError(w + ": dense coefficient lists need arity 1");
            terms.push_back({MultiIndex{static_cast<unsigned>(i)}, e.get<double>()});
            continue;
        }
        reject_unknown(e, {"alpha", "c"}, w);
        const json& a = need(e, "alpha", w);
        if (!a.is_array() || a.size() != arity) throw ParseError(w + ": alpha must have " + std::to_string(arity) + " entries");
        MultiIndex alpha;
        for (const auto& x : a) alpha.push_back(static_cast<unsigned>(count(x, w + ".alpha")));
        terms.push_back({std::move(alpha), number(need(e, "c", w), w + ".c")});
    }
    std::optional<unsigned> degree;
    if (j.contains("degree")) degree = static_cast<unsigned>(count(j.at("degree"), where + ".degree"));
    return Series(arity, std::move(terms), degree);
}

json function_json(const FunctionSpec& f) {
    json out{{"arity", f.arity()}, {"variant", f.variant_name()}};
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, entrywise::Constant>) {
                out["d"] = v.d;
            } else if constexpr (std::is_same_v<T, entrywise::Homothety>) {
                out["c"] = v.c;
                out["p0"] = v.p0 + 1;
            } else if constexpr (std::is_same_v<T, entrywise::Affine>) {
                out["f0"] = v.f0;
                out["c"] = v.c;
                out["p0"] = v.p0 + 1;
            } else if constexpr (std::is_same_v<T, Series>) {
                out["coeffs"] = terms_json(v);
                out["degree"] = v.degree();
            } else {
                out["F"] = json{{"arity", v.F.arity()}, {"coeffs", terms_json(v.F)}, {"degree", v.F.degree()}};
                out["c"] = v.c;
                out["p0"] = v.p0 + 1;
            }
        },
        f.form());
    return out;
}

FunctionSpec function_from(const json& j, const std::string& where) {
    if (!j.is_object()) throw ParseError(where + ": expected an object");
    const std::string variant = need(j, "variant", where).get<std::string>();
    const std::size_t arity = j.contains("arity") ? count(j.at("arity"), where + ".arity") : 1;
    try {
        if (variant == "constant") {
            reject_unknown(j, {"arity", "variant", "d"}, where);
            return FunctionSpec::constant(number(need(j, "d", where), where + ".d"), arity);
        }
        if (variant == "homothety") {
            reject_unknown(j, {"arity", "variant", "c", "p0"}, where);
            const std::size_t p0 = j.contains("p0") ? var_index(j.at("p0"), arity, where + ".p0") : 0;
            return FunctionSpec::homothety(number(need(j, "c", where), where + ".c"), p0, arity);
        }
        if (variant == "affine") {
            reject_unknown(j, {"arity", "variant", "f0", "c", "p0"}, where);
            const std::size_t p0 = j.contains("p0") ? var_index(j.at("p0"), arity, where + ".p0") : 0;
            return FunctionSpec::affine(number(need(j, "f0", where), where + ".f0"),
                                        number(need(j, "c", where), where + ".c"), p0, arity);
        }
        if (variant == "series") {
            reject_unknown(j, {"arity", "variant", "coeffs", "degree"}, where);
            return FunctionSpec::series(series_from(j, arity, where));
        }
        if (variant == "split") {
            reject_unknown(j, {"arity", "variant", "F", "c", "p0"}, where);
            const json& F = need(j, "F", where);
            reject_unknown(F, {"arity", "coeffs", "degree"}, where + ".F");
            const std::size_t m0 = count(need(F, "arity", where + ".F"), where + ".F.arity");
            return FunctionSpec::split(series_from(F, m0, where + ".F"), number(need(j, "c", where), where + ".c"),
                                       var_index(need(j, "p0", where), arity, where + ".p0"), arity);
        }
    } catch (const json::exception& e) {
        throw ParseError(where + ": " + e.what());
    } catch (const InvalidArgument& e) {
        throw ParseError(where + ": " + e.what());
    } catch (const DimensionError& e) {
        throw ParseError(where + ": " + e.what());
    }
    throw ParseError(where + ": unknown variant '" + variant + "'");
}

json inertia_json(const Inertia& in) { return json{{"neg", in.n_neg}, {"zero", in.n_zero}, {"pos", in.n_pos}}; }

json rho_json(double rho) { return std::isinf(rho) ? json("inf") : json(rho); }

json config_json(const harness::TrialConfig& c) {
    return json{{"domain", {{"kind", entrywise::to_string(c.dom.kind)}, {"rho", rho_json(c.dom.rho)}}},
                {"k", c.k.k},
                {"l", c.l},
                {"n_range", {c.n_min, c.n_max}},
                {"trials", c.trials},
                {"seed", c.seed},
                {"tolerance", {{"rel_zero", c.tol.rel_zero}, {"eig_convergence", c.tol.eig_convergence}}}};
}

json verdict_json(const entrywise::PreserverVerdict& v) {
    json vs = json::array();
    for (const auto& x : v.violations) {
        json e{{"clause", entrywise::to_string(x.clause)}, {"detail", x.detail}};
        if (x.var) e["var"] = *x.var + 1;
        vs.push_back(std::move(e));
    }
    json out{{"theorem", entrywise::to_string(v.theorem)},
             {"conforms", v.conforms},
             {"clause", entrywise::to_string(v.clause)},
             {"violations", std::move(vs)}};
    if (v.p0) {
        out["p0"] = *v.p0 + 1;
        out["c"] = v.c;
        out["offset"] = v.offset;
    }
    return out;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidArgument("cannot write '" + path + "'");
    out << text;
}

SymMatrix parse_matrix(const std::string& text) {
    const json j = parse_doc(text, "matrix");
    reject_unknown(j, {"n", "rows"}, "matrix");
    const json& rows = need(j, "rows", "matrix");
    if (!rows.is_array() || rows.empty()) throw ParseError("matrix: rows must be a non-empty array");
    const std::size_t n = rows.size();
    if (j.contains("n") && count(j.at("n"), "matrix.n") != n)
        throw ParseError("matrix: n = " + j.at("n").dump() + " but " + std::to_string(n) + " rows given");
    std::vector<double> full(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        const json& r = rows[i];
        if (!r.is_array() || r.size() != n)
            throw ParseError("matrix: row " + std::to_string(i + 1) + " must have " + std::to_string(n) + " entries");
        for (std::size_t c = 0; c < n; ++c) {
            const double v = number(r[c], "matrix.rows[" + std::to_string(i) + "][" + std::to_string(c) + "]");
            if (!std::isfinite(v)) throw ParseError("matrix: non-finite entry");
            full[i * n + c] = v;
        }
    }
    double scale = 1.0;
    for (double v : full) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c = i + 1; c < n; ++c) {
            const double d = std::abs(full[i * n + c] - full[c * n + i]);
            if (d > kAsymmetryTol * scale) {
                std::ostringstream os;
                os << "matrix: entries (" << i + 1 << "," << c + 1 << ") and (" << c + 1 << "," << i + 1
                   << ") differ by " << d;
                throw AsymmetryError(os.str());
            }
        }
    return SymMatrix(n, full);
}

std::string matrix_to_json(const SymMatrix& a, int indent) { return matrix_json(a).dump(indent); }

FunctionSpec parse_function(const std::string& text) { return function_from(parse_doc(text, "function"), "function"); }

std::string function_to_json(const FunctionSpec& f, int indent) { return function_json(f).dump(indent); }

std::string inertia_to_json(const Inertia& in) { return inertia_json(in).dump(); }

RunConfig parse_run_config(const std::string& text) {
    const json j = parse_doc(text, "config");
    reject_unknown(j,
                   {"theorem", "function", "domain", "k", "l", "n_range", "trials", "seed", "tolerance", "strategy",
                    "output"},
                   "config");
    RunConfig rc;
    auto& c = rc.cfg;
    try {
        if (j.contains("theorem")) rc.theorem = entrywise::theorem_from_string(j.at("theorem").get<std::string>());
        if (j.contains("function")) rc.fn = function_from(j.at("function"), "config.function");
        if (j.contains("domain")) {
            const json& d = j.at("domain");
            reject_unknown(d, {"kind", "rho"}, "config.domain");
            const DomainKind kind = d.contains("kind") ? entrywise::domain_kind_from_string(d.at("kind").get<std::string>())
                                                       : DomainKind::two_sided;
            double rho = std::numeric_limits<double>::infinity();
            if (d.contains("rho")) {
                const json& r = d.at("rho");
                if (r.is_string()) {
                    if (r.get<std::string>() != "inf") throw ParseError("config.domain.rho: expected a number or \"inf\"");
                } else {
                    rho = number(r, "config.domain.rho");
                }
            }
            c.dom = DomainSpec{rho, kind};
        }
        if (j.contains("k")) {
            const json& k = j.at("k");
            std::vector<std::size_t> ks;
            if (k.is_array()) {
                for (const auto& x : k) ks.push_back(count(x, "config.k"));
            } else {
                ks.push_back(count(k, "config.k"));
            }
            if (ks.empty()) throw ParseError("config.k: must not be empty");
            c.k = AdmissibleK(std::move(ks));
        }
        if (j.contains("l")) c.l = count(j.at("l"), "config.l");
        if (j.contains("n_range")) {
            const json& r = j.at("n_range");
            if (!r.is_array() || r.size() != 2) throw ParseError("config.n_range: expected [n_min, n_max]");
            c.n_min = count(r[0], "config.n_range");
            c.n_max = count(r[1], "config.n_range");
        } else {
            c.n_min = std::max<std::size_t>(c.k.k_max() + (c.dom.one_sided() ? 1 : 0), 1);
            c.n_max = std::max<std::size_t>(c.n_min, 8);
        }
        if (j.contains("trials")) c.trials = count(j.at("trials"), "config.trials");
        if (j.contains("seed")) {
            const json& s = j.at("seed");
            if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0))
                throw ParseError("config.seed: expected an unsigned integer");
            c.seed = s.get<std::uint64_t>();
        }
        if (j.contains("tolerance")) {
            const json& t = j.at("tolerance");
            reject_unknown(t, {"rel_zero", "eig_convergence"}, "config.tolerance");
            if (t.contains("rel_zero")) c.tol.rel_zero = number(t.at("rel_zero"), "config.tolerance.rel_zero");
            if (t.contains("eig_convergence"))
                c.tol.eig_convergence = number(t.at("eig_convergence"), "config.tolerance.eig_convergence");
        }
        if (j.contains("strategy")) rc.strategy = harness::strategy_from_string(j.at("strategy").get<std::string>());
        if (j.contains("output")) {
            const json& o = j.at("output");
            reject_unknown(o, {"json", "csv"}, "config.output");
            if (o.contains("json")) rc.json_path = o.at("json").get<std::string>();
            if (o.contains("csv")) rc.csv_path = o.at("csv").get<std::string>();
        }
        if (rc.fn && rc.fn->arity() != c.k.arity())
            throw ParseError("config: function arity " + std::to_string(rc.fn->arity()) + " does not match k with " +
                             std::to_string(c.k.arity()) + " entries");
        c.validate();
    } catch (const json::exception& e) {
        throw ParseError(std::string("config: ") + e.what());
    } catch (const InvalidArgument& e) {
        throw ParseError(e.what());
    }
    return rc;
}

void apply_seed_override(RunConfig& rc) {
    const char* env = std::getenv("INERTIA_LAB_SEED");
    if (!env || !*env) return;
    const std::string s(env);
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(s, &pos, 0);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != s.size() || s.front() == '-') throw ParseError("INERTIA_LAB_SEED: '" + s + "' is not an unsigned integer");
    rc.cfg.seed = v;
}

std::string report_to_json(const harness::VerdictReport& rep, bool include_runtime) {
    json w = json::array();
    for (const auto& x : rep.witnesses) {
        json ms = json::array();
        for (const auto& m : x.matrices) ms.push_back(matrix_json(m));
        w.push_back(json{{"matrices", std::move(ms)},
                         {"fn", function_json(x.fn)},
                         {"observed", inertia_json(x.observed)},
                         {"clause", entrywise::to_string(x.clause)},
                         {"recipe", x.recipe}});
    }
    json out{{"theorem", rep.theorem}, {"mode", harness::to_string(rep.mode)}, {"config", config_json(rep.config)}};
    if (rep.strategy) out["config"]["strategy"] = harness::to_string(*rep.strategy);
    if (rep.fn) out["function"] = function_json(*rep.fn);
    if (rep.classification) out["classification"] = verdict_json(*rep.classification);
    out["trials"] = rep.trials;
    out["failures"] = rep.failures;
    out["vacuous"] = rep.vacuous;
    out["witnesses"] = std::move(w);
    if (!rep.lemmas.empty()) {
        json ls = json::array();
        for (const auto& l : rep.lemmas)
            ls.push_back(json{{"name", l.name}, {"trials", l.trials}, {"failures", l.failures}, {"first_failure", l.first_failure}});
        out["lemmas"] = std::move(ls);
    }
    out["status"] = rep.status;
    if (include_runtime) out["runtime_ms"] = rep.runtime_ms;
    return out.dump(2) + "\n";
}

std::vector<harness::Witness> parse_witnesses(const std::string& report) {
    const json j = parse_doc(report, "report");
    std::vector<harness::Witness> out;
    if (!j.contains("witnesses")) return out;
    try {
        const json& ws = j.at("witnesses");
        for (std::size_t i = 0; i < ws.size(); ++i) {
            const std::string where = "report.witnesses[" + std::to_string(i) + "]";
            const json& w = ws[i];
            harness::Witness x{{}, function_from(need(w, "fn", where), where + ".fn"), {}, {}, {}};
            for (const auto& m : need(w, "matrices", where)) x.matrices.push_back(parse_matrix(m.dump()));
            const json& o = need(w, "observed", where);
            x.observed = {count(need(o, "neg", where), where), count(need(o, "zero", where), where),
                          count(need(o, "pos", where), where)};
            x.clause = entrywise::clause_from_string(need(w, "clause", where).get<std::string>());
            if (w.contains("recipe")) x.recipe = w.at("recipe").get<std::string>();
            out.push_back(std::move(x));
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("report: ") + e.what());
    } catch (const InvalidArgument& e) {
        throw ParseError(std::string("report: ") + e.what());
    }
    return out;
}

std::string report_csv_header() { return "theorem,mode,k,l,domain,trials,failures,vacuous,status,runtime_ms\n"; }

std::string report_csv_row(const harness::VerdictReport& rep) {
    std::string k;
    for (std::size_t i = 0; i < rep.config.k.k.size(); ++i) k += (i ? " " : "") + std::to_string(rep.config.k.k[i]);
    std::ostringstream os;
    os << csv_field(rep.theorem) << ',' << harness::to_string(rep.mode) << ',' << k << ',' << rep.config.l << ','
       << csv_field(rep.config.dom.describe()) << ',' << rep.trials << ',' << rep.failures << ','
       << (rep.vacuous ? "true" : "false") << ',' << csv_field(rep.status) << ',' << rep.runtime_ms << '\n';
    return os.str();
}

}  // namespace inertia_lab::io
