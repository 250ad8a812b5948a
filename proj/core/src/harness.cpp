#include "inertia_lab/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <sstream>
#include <functional>

#include "inertia_lab/constructions.hpp"
#include "inertia_lab/errors.hpp"
#include "parallel.hpp"
#include "inertia_lab/pontryagin.hpp"

namespace inertia_lab::harness {

namespace {

constexpr std::size_t kMaxStoredWitnesses = 20;

bool closure_source(Theorem t) { return t == Theorem::closure_preserver || t == Theorem::pontryagin_closure; }

bool entries_inside(const SymMatrix& a, const DomainSpec& dom) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i; j < a.size(); ++j)
            if (!dom.contains(a(i, j))) return false;
    return true;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

std::string to_string(Mode m) {
    switch (m) {
        case Mode::verify: return "verify";
        case Mode::falsify: return "falsify";
        case Mode::suite: return "suite";
    }
    return "verify";
}

std::string to_string(Strategy s) { return s == Strategy::paper_recipe ? "paper_recipe" : "random_search"; }

Strategy strategy_from_string(const std::string& s) {
    if (s == "paper_recipe") return Strategy::paper_recipe;
    if (s == "random_search") return Strategy::random_search;
    throw InvalidArgument("unknown strategy '" + s + "'");
}

void TrialConfig::validate() const {
    dom.validate();
    tol.validate();
    if (trials == 0) throw InvalidArgument("config: trials must be at least 1");
    if (n_min == 0 || n_min > n_max) throw InvalidArgument("config: n_range must satisfy 1 <= n_min <= n_max");
    if (n_min < k.k_max() && !k.is_zero())
        throw InvalidArgument("config: n_min = " + std::to_string(n_min) + " is below k_max = " +
                              std::to_string(k.k_max()));
}

ClaimCheck check_claim(Theorem t, const FunctionSpec& f, std::span<const SymMatrix> tuple, const TrialConfig& cfg) {
    ClaimCheck out;
    if (tuple.size() != f.arity() || tuple.size() != cfg.k.arity())
        throw DimensionError("check_claim: tuple length differs from the arity");
    const std::size_t n = tuple.front().size();
    out.input_ok = true;
    for (std::size_t p = 0; p < tuple.size(); ++p) {
        if (tuple[p].size() != n) throw DimensionError("check_claim: matrices differ in dimension");
        if (!entries_inside(tuple[p], cfg.dom)) {
            out.input_ok = false;
            continue;
        }
        const Inertia in = linalg::inertia(tuple[p], cfg.tol);
        if (p == 0) out.input = in;
        const bool member = closure_source(t) ? in.n_neg <= cfg.k.k[p] : in.n_neg == cfg.k.k[p];
        if (!member) out.input_ok = false;
    }
    if (!out.input_ok) return out;

    const SymMatrix image = entrywise::apply_entrywise(f, tuple, cfg.dom);
    out.observed = linalg::inertia(image, cfg.tol);
    switch (t) {
        case Theorem::negativity_bound:
        case Theorem::multivariate_bound:
        case Theorem::psd_codomain: out.output_ok = out.observed.n_neg <= cfg.l; break;
        case Theorem::class_preserver:
        case Theorem::pontryagin: out.output_ok = out.observed.n_neg == cfg.k.k.front(); break;
        case Theorem::closure_preserver:
        case Theorem::pontryagin_closure: out.output_ok = out.observed.n_neg <= cfg.k.k.front(); break;
        case Theorem::inertia_preserver: out.output_ok = out.observed == out.input; break;
    }
    return out;
}

bool witness_holds(Theorem t, const Witness& w, const TrialConfig& cfg) {
    const auto c = check_claim(t, w.fn, w.matrices, cfg);
    return c.input_ok && !c.output_ok && c.observed == w.observed;
}

VerdictReport verify_forward(Theorem t, const FunctionSpec& f, const TrialConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    cfg.validate();
    VerdictReport rep;
    rep.theorem = entrywise::to_string(t);
    rep.mode = Mode::verify;
    rep.config = cfg;
    rep.fn = f;
    rep.classification = entrywise::classify_for(t, f, cfg.k, cfg.l, cfg.dom);
    if (!rep.classification->conforms) {
        rep.vacuous = true;
        rep.status = "vacuous: classification rejects f (" + entrywise::to_string(rep.classification->clause) + ")";
        rep.runtime_ms = elapsed_ms(start);
        return rep;
    }

    const bool closure = closure_source(t);
    const bool lifted = t == Theorem::pontryagin || t == Theorem::pontryagin_closure;
    std::size_t n_lo = cfg.n_min;
    for (std::size_t kp : cfg.k.k) n_lo = std::max(n_lo, min_sample_size(kp, cfg.dom));
    if (n_lo > cfg.n_max)
        throw SamplingError("verify: n_range [" + std::to_string(cfg.n_min) + ", " + std::to_string(cfg.n_max) +
                            "] cannot host the requested inertia in " + cfg.dom.describe());

    std::vector<std::optional<Witness>> results(cfg.trials);
    parallel_for(cfg.trials, cfg.threads, [&](std::size_t i) {
        Rng rng(cfg.seed, i);
        const std::size_t n = rng.between(n_lo, cfg.n_max);
        std::vector<SymMatrix> tuple;
        for (std::size_t kp : cfg.k.k) {
            const std::size_t kk = closure ? rng.between(0, kp) : kp;
            SymMatrix a = sample_with_inertia(n, kk, cfg.dom, rng, cfg.tol);
            if (lifted) a = pontryagin::lift_finite(a, n + (i % 8));
            tuple.push_back(std::move(a));
        }
        const auto c = check_claim(t, f, tuple, cfg);
        if (c.input_ok && c.output_ok) return;
        results[i] = Witness{std::move(tuple), f, c.observed, rep.classification->clause,
                             c.input_ok ? "random_sample" : "invalid_sample"};
    });

    rep.trials = cfg.trials;
    for (auto& r : results) {
        if (!r) continue;
        ++rep.failures;
        if (rep.witnesses.size() < kMaxStoredWitnesses) rep.witnesses.push_back(std::move(*r));
    }
    std::ostringstream os;
    if (rep.failures == 0) os << "corroborated, " << rep.trials << " trials";
    else os << "failed: " << rep.failures << " of " << rep.trials << " trials left the target class";
    rep.status = os.str();
    rep.runtime_ms = elapsed_ms(start);
    return rep;
}

CoherenceResult coherence_check(Theorem t, const FunctionSpec& f, const TrialConfig& cfg) {
    CoherenceResult r{verify_forward(t, f, cfg), falsify(t, f, cfg, Strategy::paper_recipe), false};
    r.alarm = !r.verify.vacuous && r.verify.failures == 0 && r.verify.trials >= 200 && !r.falsify.witnesses.empty();
    return r;
}

// ------------------------------------------------------------- lemma suite

namespace {

using Check = std::function<std::optional<std::string>(std::size_t n_max, Rng& rng, const linalg::TolerancePolicy& tol)>;

SymMatrix random_symmetric(std::size_t n, Rng& rng) {
    return SymMatrix::generate(n, [&](std::size_t, std::size_t) { return rng.uniform(-1.0, 1.0); });
}

std::string inertia_str(const Inertia& in) {
    return "(" + std::to_string(in.n_neg) + ", " + std::to_string(in.n_zero) + ", " + std::to_string(in.n_pos) + ")";
}

std::optional<std::string> block_identity(std::size_t n_max, Rng& rng, const linalg::TolerancePolicy&) {
    const std::size_t n = rng.between(1, n_max);
    const SymMatrix a = random_symmetric(n, rng);
    const SymMatrix b = random_symmetric(n, rng);
    const SymMatrix c = constructions::block_pair(a, b);
    const SymMatrix lhs = linalg::congruence(c, constructions::block_pair_frame(n));
    const SymMatrix rhs = linalg::direct_sum({a + b, a - b});
    const double err = (lhs - rhs).frobenius_norm();
    const double scale = std::max(1.0, c.frobenius_norm());
    if (err <= 1e-12 * scale) return std::nullopt;
    return "block identity residual " + std::to_string(err);
}

std::optional<std::string> weyl_rank_one(std::size_t n_max, Rng& rng, const linalg::TolerancePolicy& tol) {
    const std::size_t n = rng.between(1, n_max);
    const std::size_t k = rng.between(0, n);
    const SymMatrix a = sample_with_inertia(n, k, DomainSpec::two_sided(1.0), rng, tol);
    std::vector<double> v(n);
    for (double& x : v) x = rng.normal() * rng.uniform(0.1, 1.0);
    const SymMatrix b = SymMatrix::outer(v);
    const std::size_t plus = linalg::inertia(a + b, tol).n_neg;
    const std::size_t minus = linalg::inertia(a - b, tol).n_neg;
    const bool ok_plus = plus == k || plus + 1 == k;
    const bool ok_minus = minus == k || minus == k + 1;
    if (ok_plus && ok_minus) return std::nullopt;
    return "k = " + std::to_string(k) + ", n_neg(A+B) = " + std::to_string(plus) + ", n_neg(A-B) = " + std::to_string(minus);
}

std::optional<std::string> inflation_inertia(std::size_t n_max, Rng& rng, const linalg::TolerancePolicy& tol) {
    const std::size_t m = rng.between(1, n_max);
    const std::size_t N = rng.between(m, std::max(m, 2 * n_max));
    const SymMatrix a = random_symmetric(m, rng);
    std::vector<std::size_t> owner(N);
    for (std::size_t i = 0; i < N; ++i) owner[i] = i < m ? i : rng.below(m);
    rng.shuffle(owner);
    std::vector<std::vector<std::size_t>> blocks(m);
    for (std::size_t i = 0; i < N; ++i) blocks[owner[i]].push_back(i);
    const constructions::Partition pi(blocks);
    const Inertia src = linalg::inertia(a, tol);
    const Inertia up = linalg::inertia(constructions::inflate(pi, a), tol);
    if (src.n_neg != up.n_neg || src.n_pos != up.n_pos)
        return "inertia " + inertia_str(src) + " became " + inertia_str(up);
    const auto w = constructions::weight_matrix(pi);
    const auto wtw = w.transpose() * w;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            const double expect = i == j ? static_cast<double>(pi.blocks()[i].size()) : 0.0;
            if (wtw(i, j) != expect) return "W^T W differs from diag(block sizes)";
        }
    return std::nullopt;
}

std::optional<std::string> psi_negative_block(std::size_t, Rng& rng, const linalg::TolerancePolicy& tol) {
    const std::size_t k = rng.between(0, 4);
    const double a = rng.uniform(0.0, 1.0);
    const double b = a + rng.uniform(0.1, 1.0);
    const double eps = rng.uniform(0.0, 0.5);
    const std::size_t r = rng.between(1, 4);
    std::vector<double> x(r * r);
    for (double& v : x) v = rng.normal();
    const SymMatrix B = SymMatrix::generate(r, [&](std::size_t i, std::size_t j) {
        double s = 0.0;
        for (std::size_t c = 0; c < r; ++c) s += x[i * r + c] * x[j * r + c];
        return s;
    });
    const SymMatrix psi = constructions::psi_map(a, b, k, eps, B, tol);
    const auto eig = linalg::eigenvalues(psi, tol);
    const double zt = linalg::zero_threshold(psi, tol);
    std::size_t neg = 0;
    for (double l : eig) {
        if (l >= -zt) continue;
        ++neg;
        if (std::abs(l - (a - b)) > 1e-9) return "negative eigenvalue " + std::to_string(l) + " differs from a - b";
    }
    if (neg != k) return "expected " + std::to_string(k) + " negative eigenvalues, found " + std::to_string(neg);
    return std::nullopt;
}

std::optional<std::string> pencil_count(std::size_t, Rng& rng, const linalg::TolerancePolicy& tol) {
    static constexpr double ts[] = {1.1, 2.0, 10.0};
    const std::size_t k = rng.between(1, 4);
    const double t = ts[rng.below(3)];
    const SymMatrix p = constructions::judicious_pencil(k, t);
    const Inertia in = linalg::inertia(p, tol);
    if (in.n_neg != k - 1 || in != constructions::judicious_pencil_inertia(k, t))
        return "pencil k = " + std::to_string(k) + " has inertia " + inertia_str(in);
    return std::nullopt;
}

std::optional<std::string> sylvester(std::size_t n_max, Rng& rng, const linalg::TolerancePolicy& tol) {
    const std::size_t n = rng.between(1, n_max);
    const std::size_t k = rng.between(0, n);
    const SymMatrix a = sample_with_inertia(n, k, DomainSpec::two_sided(1.0), rng, tol);
    linalg::DenseMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.normal();
    const auto q = linalg::eig_sym(SymMatrix::symmetric_part(g), tol).vectors;
    const double c = rng.uniform(0.1, 10.0);
    const Inertia base = linalg::inertia(a, tol);
    const Inertia rotated = linalg::inertia(linalg::congruence(a, q), tol);
    const Inertia scaled = linalg::inertia(a.scaled(c), tol);
    if (base != rotated || base != scaled)
        return "inertia " + inertia_str(base) + " vs rotated " + inertia_str(rotated) + " vs scaled " + inertia_str(scaled);
    return std::nullopt;
}

std::optional<std::string> eig_reconstruction(std::size_t n_max, Rng& rng, const linalg::TolerancePolicy& tol) {
    const std::size_t n = rng.between(1, std::max<std::size_t>(n_max, 1));
    const SymMatrix a = random_symmetric(n, rng).scaled(rng.uniform(0.01, 100.0));
    const auto e = linalg::eig_sym(a, tol);
    linalg::DenseMatrix lam(n, n);
    for (std::size_t i = 0; i < n; ++i) lam(i, i) = e.values[i];
    const auto back = e.vectors * lam * e.vectors.transpose();
    const double rec = (back - a.to_dense()).frobenius_norm();
    const double orth = (e.vectors.transpose() * e.vectors - linalg::DenseMatrix::identity(n)).frobenius_norm();
    if (rec > 10.0 * tol.eig_convergence * std::max(1.0, a.frobenius_norm()) || orth > 1e-10)
        return "reconstruction " + std::to_string(rec) + ", orthogonality " + std::to_string(orth);
    for (std::size_t i = 1; i < n; ++i)
        if (e.values[i] < e.values[i - 1]) return "eigenvalues not ascending";
    return std::nullopt;
}

struct NamedCheck {
    const char* name;
    Check fn;
};

}  // namespace

VerdictReport lemma_suite(const TrialConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    cfg.tol.validate();
    if (cfg.trials == 0) throw InvalidArgument("config: trials must be at least 1");
    if (cfg.n_max == 0) throw InvalidArgument("config: n_max must be positive");
    const std::vector<NamedCheck> checks = {
        {"block_identity", block_identity},     {"weyl_rank_one", weyl_rank_one},
        {"inflation_inertia", inflation_inertia}, {"psi_negative_block", psi_negative_block},
        {"pencil_count", pencil_count},         {"sylvester", sylvester},
        {"eig_reconstruction", eig_reconstruction},
    };

    VerdictReport rep;
    rep.theorem = "lemma_suite";
    rep.mode = Mode::suite;
    rep.config = cfg;
    for (std::size_t c = 0; c < checks.size(); ++c) {
        std::vector<std::optional<std::string>> out(cfg.trials);
        parallel_for(cfg.trials, cfg.threads, [&](std::size_t i) {
            Rng rng(cfg.seed, (static_cast<std::uint64_t>(c + 1) << 32) + i);
            out[i] = checks[c].fn(cfg.n_max, rng, cfg.tol);
        });
        LemmaResult lr{checks[c].name, cfg.trials, 0, {}};
        for (std::size_t i = 0; i < out.size(); ++i) {
            if (!out[i]) continue;
            if (lr.failures == 0) lr.first_failure = "trial " + std::to_string(i) + ": " + *out[i];
            ++lr.failures;
        }
        rep.trials += lr.trials;
        rep.failures += lr.failures;
        rep.lemmas.push_back(std::move(lr));
    }
    std::ostringstream os;
    if (rep.failures == 0) os << "corroborated, " << rep.trials << " trials";
    else os << "failed: " << rep.failures << " of " << rep.trials << " property checks";
    rep.status = os.str();
    rep.runtime_ms = elapsed_ms(start);
    return rep;
}

}  // namespace inertia_lab::harness
