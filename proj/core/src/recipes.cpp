#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "inertia_lab/constructions.hpp"
#include "inertia_lab/errors.hpp"
#include "inertia_lab/harness.hpp"
#include "inertia_lab/pontryagin.hpp"

namespace inertia_lab::harness {

namespace {

namespace cx = constructions;
using Tuple = std::vector<SymMatrix>;

constexpr int kHalvings = 12;
constexpr std::size_t kMinRandomBudget = 200;

struct Ctx {
    Theorem t;
    const FunctionSpec& f;
    const TrialConfig& cfg;
    const entrywise::PreserverVerdict& verdict;
    entrywise::Series series;
    bool one_sided;
    std::size_t m;

    std::size_t kp(std::size_t p) const { return cfg.k.k[p]; }
    bool constrained(std::size_t p) const { return kp(p) > 0; }
    double coefficient_of(std::size_t p) const {
        entrywise::MultiIndex a(m, 0);
        a[p] = 1;
        return series.coefficient(a);
    }
};

struct Scale {
    double t0;
    double eps;
    double eta;
};

Scale scale_for(const Ctx& c, double s) {
    const double rho = c.cfg.dom.effective_rho();
    return {s * rho / 8.0, s * rho / 16.0, s * rho / 8192.0};
}

SymMatrix diag_prefix(std::size_t n, std::size_t offset, std::size_t count, double value) {
    std::vector<double> d(n, 0.0);
    for (std::size_t i = offset; i < offset + count; ++i) d[i] = value;
    return SymMatrix::diagonal(d);
}

// A matrix of size n with exactly kq negative eigenvalues and entries of
// magnitude about mag, valid for the context's domain.
SymMatrix filler(const Ctx& c, std::size_t n, std::size_t kq, double mag) {
    if (!c.one_sided) return kq == 0 ? SymMatrix::zeros(n) : diag_prefix(n, 0, kq, -mag);
    if (kq == 0) return SymMatrix::ones(n).scaled(mag);
    if (n < kq + 1) throw InvalidArgument("filler: size too small");
    return cx::inflate(cx::Partition::tail(kq + 1, n), cx::m_matrix(kq, mag, 2.0 * mag));
}

std::size_t filler_size(const Ctx& c, std::size_t kq) { return c.one_sided && kq > 0 ? kq + 1 : kq; }

// Completes a tuple: slots already set are kept, others receive fillers.
Tuple complete(const Ctx& c, std::vector<std::optional<SymMatrix>> slots, double mag) {
    std::size_t n = 0;
    for (const auto& s : slots)
        if (s) n = std::max(n, s->size());
    for (std::size_t p = 0; p < c.m; ++p)
        if (!slots[p]) n = std::max(n, filler_size(c, c.kp(p)));
    Tuple out;
    for (std::size_t p = 0; p < c.m; ++p) {
        if (slots[p]) {
            SymMatrix a = *slots[p];
            if (a.size() < n) a = cx::inflate(cx::Partition::tail(a.size(), n), a);
            out.push_back(std::move(a));
        } else {
            out.push_back(filler(c, n, c.kp(p), mag));
        }
    }
    return out;
}

std::vector<double> node_vector(std::size_t k) {
    std::vector<double> u(2 * k - 1);
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = static_cast<double>(i + 1);
    return u;
}

// Negativity-k block pair built from the Vandermonde or the 2 x 2 pair.
SymMatrix negative_block_pair(const Ctx& c, std::size_t k, const Scale& sc) {
    if (k == 1) {
        const auto pr = cx::two_by_two_pair(sc.t0 / 5.0);
        return cx::block_pair(pr.a, pr.b);
    }
    const auto u = node_vector(k);
    double top = 0.0;
    for (std::size_t j = 0; j < k; ++j) top += linalg::int_pow(u.back(), static_cast<unsigned>(2 * j));
    const SymMatrix B = cx::vandermonde_psd(k, u, sc.t0 / top);
    if (!c.one_sided) return cx::block_pair(SymMatrix::zeros(B.size()), B);
    const double e = sc.eps / 16.0;
    return cx::block_pair(SymMatrix::ones(B.size()).scaled(e), B.shifted(e));
}

struct Recipe {
    std::string name;
    std::function<Tuple(const Ctx&, const Scale&)> build;
};

// ---------------------------------------------------------------- recipes

Tuple diagonal_probe(const Ctx& c, const Scale& sc) {
    if (c.one_sided) throw InvalidArgument("diagonal probe needs a two-sided domain");
    std::size_t n = 0;
    for (std::size_t p = 0; p < c.m; ++p) n += c.kp(p);
    if (n == 0) throw InvalidArgument("diagonal probe needs a constrained variable");
    Tuple out;
    std::size_t off = 0;
    for (std::size_t p = 0; p < c.m; ++p) {
        out.push_back(diag_prefix(n, off, c.kp(p), -sc.t0));
        off += c.kp(p);
    }
    return out;
}

Tuple block_diagonal_probe(const Ctx& c, const Scale& sc) {
    std::size_t n = 0;
    for (std::size_t p = 0; p < c.m; ++p)
        if (c.constrained(p)) n += c.kp(p) + 1;
    if (n == 0) throw InvalidArgument("block probe needs a constrained variable");
    const double a = c.one_sided ? sc.t0 / 4.0 : 0.0;
    const double shift = c.one_sided ? sc.eta : 0.0;
    Tuple out;
    std::size_t off = 0;
    for (std::size_t p = 0; p < c.m; ++p) {
        if (!c.constrained(p)) {
            out.push_back(c.one_sided ? SymMatrix::ones(n).scaled(shift) : SymMatrix::zeros(n));
            continue;
        }
        const SymMatrix M = cx::m_matrix(c.kp(p), a, sc.t0 / 2.0);
        const std::size_t sz = M.size();
        out.push_back(SymMatrix::generate(n, [&](std::size_t i, std::size_t j) {
                          const bool in = i >= off && i < off + sz && j >= off && j < off + sz;
                          return in ? M(i - off, j - off) : 0.0;
                      }).shifted(shift));
        off += sz;
    }
    return out;
}

Recipe block_pair_recipe(std::size_t r) {
    return {"block_pair_x" + std::to_string(r + 1), [r](const Ctx& c, const Scale& sc) {
                if (!c.constrained(r)) throw InvalidArgument("block pair needs a constrained variable");
                std::vector<std::optional<SymMatrix>> slots(c.m);
                slots[r] = negative_block_pair(c, c.kp(r), sc);
                return complete(c, std::move(slots), sc.eta);
            }};
}

Tuple shared_block_pair(const Ctx& c, const Scale& sc) {
    std::vector<std::optional<SymMatrix>> slots(c.m);
    bool any = false;
    for (std::size_t p = 0; p < c.m; ++p)
        if (c.constrained(p)) {
            slots[p] = negative_block_pair(c, c.kp(p), sc);
            any = true;
        }
    if (!any) throw InvalidArgument("shared block pair needs a constrained variable");
    std::size_t n = 0;
    for (const auto& s : slots)
        if (s) n = std::max(n, s->size());
    for (const auto& s : slots)
        if (s && s->size() != n) throw InvalidArgument("shared block pair needs equal block sizes");
    return complete(c, std::move(slots), sc.eta);
}

Recipe mixed_block_pair(std::size_t r) {
    return {"mixed_block_pair_x" + std::to_string(r + 1), [r](const Ctx& c, const Scale& sc) {
                if (!c.constrained(r)) throw InvalidArgument("mixed block pair needs a constrained variable");
                std::vector<std::optional<SymMatrix>> slots(c.m);
                slots[r] = negative_block_pair(c, c.kp(r), sc);
                const std::size_t half = slots[r]->size() / 2;
                const SymMatrix P = half == 2 ? SymMatrix{{1, 2}, {2, 5}}.scaled(sc.t0 / 5.0)
                                              : (SymMatrix::identity(half) + SymMatrix::ones(half)).scaled(sc.t0 / 2.0);
                for (std::size_t q = 0; q < c.m; ++q)
                    if (!c.constrained(q)) slots[q] = cx::block_pair(P, P);
                return complete(c, std::move(slots), sc.eta);
            }};
}

Recipe ectrex_recipe(std::size_t p0) {
    return {"ectrex_x" + std::to_string(p0 + 1), [p0](const Ctx& c, const Scale& sc) {
                if (!c.constrained(p0)) throw InvalidArgument("ectrex needs a constrained variable");
                const std::size_t k = c.kp(p0);
                const double d = c.series.constant_term();
                const double coef = c.coefficient_of(p0);
                double delta = sc.t0;
                if (d < 0.0 && coef > 0.0) delta = std::min(delta, -d / (2.0 * coef));
                const auto v = cx::helmert_basis(k);
                double smax = 0.0;
                for (std::size_t i = 0; i <= k; ++i)
                    for (std::size_t j = 0; j <= k; ++j) {
                        double s = 0.0;
                        for (std::size_t q = 1; q <= k; ++q) s += v(i, q) * v(j, q);
                        smax = std::max(smax, std::abs(s));
                    }
                const double eps = (c.one_sided ? delta : sc.t0) / (2.0 * smax);
                std::vector<std::optional<SymMatrix>> slots(c.m);
                slots[p0] = cx::counterexample_ectrex(k, delta, eps);
                return complete(c, std::move(slots), sc.eta);
            }};
}

Recipe m_matrix_recipe(std::size_t r) {
    return {"m_matrix_x" + std::to_string(r + 1), [r](const Ctx& c, const Scale& sc) {
                if (!c.constrained(r)) throw InvalidArgument("m_matrix needs a constrained variable");
                std::vector<std::optional<SymMatrix>> slots(c.m);
                slots[r] = cx::m_matrix(c.kp(r), c.one_sided ? sc.t0 / 4.0 : 0.0, sc.t0 / 2.0);
                return complete(c, std::move(slots), sc.eta);
            }};
}

// Each variable gets a full-size member of its class with several nonzero
// eigenvalues of both signs.
Tuple constant_probe(const Ctx& c, const Scale& sc) {
    std::size_t n = 2;
    for (std::size_t p = 0; p < c.m; ++p) n = std::max(n, c.kp(p) + 2);
    Tuple out;
    for (std::size_t p = 0; p < c.m; ++p) {
        const std::size_t k = c.kp(p);
        if (!c.one_sided) {
            std::vector<double> d(n, sc.t0);
            for (std::size_t i = 0; i < k; ++i) d[i] = -sc.t0;
            out.push_back(SymMatrix::diagonal(d));
        } else if (k == 0) {
            SymMatrix base{{2 * sc.t0, sc.t0}, {sc.t0, 2 * sc.t0}};
            out.push_back(cx::inflate(cx::Partition::tail(2, n), base.scaled(0.5)));
        } else {
            const SymMatrix B = SymMatrix::identity(n - k - 1).scaled(sc.t0 / 2.0);
            out.push_back(cx::psi_map(sc.t0 / 4.0, sc.t0 / 2.0, k, sc.eps / 4.0, B));
        }
    }
    return out;
}

Tuple positive_offset(const Ctx& c, const Scale& sc) {
    if (!c.cfg.k.is_uniform()) throw InvalidArgument("positive offset needs uniform k");
    const std::size_t k = c.kp(0);
    if (k == 0) throw InvalidArgument("positive offset needs k >= 1");
    const double d = c.series.constant_term();
    double coef = 0.0;
    for (std::size_t p = 0; p < c.m; ++p) coef = std::max(coef, c.coefficient_of(p));
    if (!(d > 0.0) || !(coef > 0.0)) throw InvalidArgument("positive offset needs f(0) > 0 and c > 0");
    if (!c.one_sided) {
        const double t = std::min(sc.t0, d * static_cast<double>(k) / (2.0 * coef));
        return Tuple(c.m, SymMatrix::identity(k).scaled(-t));
    }
    const double delta = std::min(sc.t0, d / (2.0 * coef));
    const double eps = delta / (2.0 * static_cast<double>(k));
    const SymMatrix a = linalg::direct_power(cx::judicious_matrix().scaled(delta), k).shifted(eps);
    return Tuple(c.m, a);
}

Recipe replication_recipe(std::size_t r) {
    return {"replication_x" + std::to_string(r + 1), [r](const Ctx& c, const Scale& sc) {
                const std::size_t copies = c.cfg.l + 2;
                if (c.constrained(r)) {
                    // negative coefficient on a constrained variable: many positive directions
                    const std::size_t k = c.kp(r);
                    SymMatrix a = [&] {
                        if (!c.one_sided) {
                            std::vector<double> dg(k + copies, sc.t0);
                            for (std::size_t i = 0; i < k; ++i) dg[i] = -sc.t0;
                            return SymMatrix::diagonal(dg);
                        }
                        return cx::psi_map(sc.t0 / 4.0, sc.t0 / 2.0, k, sc.eps / 4.0,
                                           SymMatrix::identity(copies).scaled(sc.t0 / 2.0));
                    }();
                    std::vector<std::optional<SymMatrix>> slots(c.m);
                    slots[r] = std::move(a);
                    return complete(c, std::move(slots), sc.eta);
                }
                const unsigned D = std::max(1u, c.series.degree());
                std::vector<double> u(D + 1);
                for (std::size_t i = 0; i <= D; ++i) u[i] = static_cast<double>(i + 1) / static_cast<double>(D + 1);
                const SymMatrix a0 = SymMatrix::outer(u).scaled(sc.t0);
                const SymMatrix rep = linalg::direct_power(a0, copies);
                std::size_t pre = 0;
                for (std::size_t p = 0; p < c.m; ++p)
                    if (c.constrained(p)) pre += filler_size(c, c.kp(p));
                const std::size_t n = pre + rep.size();
                const double shift = c.one_sided ? sc.eta / 64.0 : 0.0;
                Tuple out;
                std::size_t off = 0;
                for (std::size_t p = 0; p < c.m; ++p) {
                    SymMatrix m = SymMatrix::zeros(n);
                    if (p == r) {
                        m = SymMatrix::generate(n, [&](std::size_t i, std::size_t j) {
                            return i >= pre && j >= pre ? rep(i - pre, j - pre) : 0.0;
                        });
                    } else if (c.constrained(p)) {
                        const std::size_t sz = filler_size(c, c.kp(p));
                        const SymMatrix blk = filler(c, sz, c.kp(p), sc.eta);
                        m = SymMatrix::generate(n, [&](std::size_t i, std::size_t j) {
                            const bool in = i >= off && i < off + sz && j >= off && j < off + sz;
                            return in ? blk(i - off, j - off) : 0.0;
                        });
                        off += sz;
                    }
                    out.push_back(m.shifted(shift));
                }
                return out;
            }};
}

Tuple rank_one(const Ctx& c, const Scale& sc) {
    if (c.m != 1 || c.kp(0) != 0) throw InvalidArgument("rank-one probe is for k = 0");
    const std::vector<double> u{1.0, 0.5};
    return {SymMatrix::outer(u).scaled(sc.t0)};
}

Tuple vandermonde_rank_two(const Ctx& c, const Scale& sc) {
    if (c.m != 1 || c.kp(0) != 0) throw InvalidArgument("rank-two probe is for k = 0");
    const std::vector<double> u{1.0, 2.0, 3.0};
    return {cx::vandermonde_psd(2, u, sc.t0 / 10.0)};
}

Tuple judicious_pencil_probe(const Ctx& c, const Scale& sc) {
    if (c.m != 1 || c.kp(0) == 0) throw InvalidArgument("pencil probe needs k >= 1");
    const std::size_t k = c.kp(0);
    const double eps = sc.t0 / (2.0 * static_cast<double>(k));
    return {linalg::direct_power(cx::judicious_matrix().scaled(sc.t0), k).shifted(eps)};
}

std::vector<std::string> preferred(Clause cl) {
    switch (cl) {
        case Clause::negative_coefficient: return {"replication"};
        case Clause::constrained_dependence: return {"diagonal_probe", "m_matrix", "block_diagonal_probe"};
        case Clause::negative_constant_term: return {"constant_probe", "diagonal_probe", "block_diagonal_probe"};
        case Clause::constrained_degree: return {"block_pair"};
        case Clause::constrained_cross_term: return {"shared_block_pair", "block_pair"};
        case Clause::mixed_linear_term: return {"mixed_block_pair"};
        case Clause::multiple_linear_variables: return {"diagonal_probe", "block_diagonal_probe"};
        case Clause::insufficient_codomain:
        case Clause::negative_offset: return {"ectrex"};
        case Clause::forbidden_constant: return {"constant_probe", "diagonal_probe"};
        case Clause::positive_offset: return {"positive_offset"};
        case Clause::not_homothety:
            return {"diagonal_probe", "constant_probe", "rank_one", "vandermonde_rank_two", "ectrex", "m_matrix",
                    "judicious_pencil"};
        default: return {};
    }
}

std::vector<Recipe> all_recipes(const Ctx& c) {
    std::vector<Recipe> rs;
    std::vector<std::size_t> vars;
    if (const auto& vs = c.verdict.violations; !vs.empty() && vs.front().var) vars.push_back(*vs.front().var);
    if (c.verdict.p0) vars.push_back(*c.verdict.p0);
    for (std::size_t p = c.m; p-- > 0;) vars.push_back(p);
    std::vector<std::size_t> uniq;
    for (std::size_t p : vars)
        if (std::find(uniq.begin(), uniq.end(), p) == uniq.end()) uniq.push_back(p);

    rs.push_back({"diagonal_probe", diagonal_probe});
    rs.push_back({"block_diagonal_probe", block_diagonal_probe});
    rs.push_back({"constant_probe", constant_probe});
    rs.push_back({"positive_offset", positive_offset});
    rs.push_back({"shared_block_pair", shared_block_pair});
    rs.push_back({"rank_one", rank_one});
    rs.push_back({"vandermonde_rank_two", vandermonde_rank_two});
    rs.push_back({"judicious_pencil", judicious_pencil_probe});
    for (std::size_t p : uniq) {
        rs.push_back(replication_recipe(p));
        rs.push_back(block_pair_recipe(p));
        rs.push_back(mixed_block_pair(p));
        rs.push_back(ectrex_recipe(p));
        rs.push_back(m_matrix_recipe(p));
    }

    const auto pref = preferred(c.verdict.clause);
    auto rank = [&](const Recipe& r) {
        for (std::size_t i = 0; i < pref.size(); ++i)
            if (r.name.rfind(pref[i], 0) == 0) return i;
        return pref.size();
    };
    std::stable_sort(rs.begin(), rs.end(), [&](const Recipe& a, const Recipe& b) { return rank(a) < rank(b); });
    return rs;
}

std::optional<Witness> try_recipe(const Ctx& c, const Recipe& r, std::size_t& attempts) {
    double s = 1.0;
    for (int h = 0; h <= kHalvings; ++h, s *= 0.5) {
        Tuple tuple;
        try {
            tuple = r.build(c, scale_for(c, s));
        } catch (const DomainError&) {
            continue;
        } catch (const InvalidArgument&) {
            return std::nullopt;
        } catch (const DimensionError&) {
            return std::nullopt;
        }
        ++attempts;
        const auto chk = check_claim(c.t, c.f, tuple, c.cfg);
        if (chk.input_ok && !chk.output_ok) {
            Witness w{std::move(tuple), c.f, chk.observed, c.verdict.clause, r.name};
            if (witness_holds(c.t, w, c.cfg)) return w;
        }
    }
    return std::nullopt;
}

std::optional<Witness> random_search(const Ctx& c, std::size_t budget, std::size_t& attempts) {
    const bool closure = c.t == Theorem::closure_preserver || c.t == Theorem::pontryagin_closure;
    const bool lifted = c.t == Theorem::pontryagin || c.t == Theorem::pontryagin_closure;
    std::size_t n_lo = c.cfg.n_min;
    for (std::size_t kp : c.cfg.k.k) n_lo = std::max(n_lo, min_sample_size(kp, c.cfg.dom));
    if (n_lo > c.cfg.n_max) return std::nullopt;
    for (std::size_t i = 0; i < budget; ++i) {
        Rng rng(c.cfg.seed, (std::uint64_t{1} << 40) + i);
        const std::size_t n = rng.between(n_lo, c.cfg.n_max);
        // Shrink some draws towards the origin, where Taylor terms separate.
        const double shrink = std::pow(0.5, static_cast<double>(rng.below(6)));
        Tuple tuple;
        for (std::size_t kp : c.cfg.k.k) {
            const std::size_t kk = closure ? rng.between(0, kp) : kp;
            SymMatrix a = sample_with_inertia(n, kk, c.cfg.dom, rng, c.cfg.tol).scaled(shrink);
            if (lifted) a = pontryagin::lift_finite(a, n + (i % 8));
            tuple.push_back(std::move(a));
        }
        ++attempts;
        const auto chk = check_claim(c.t, c.f, tuple, c.cfg);
        if (chk.input_ok && !chk.output_ok) {
            Witness w{std::move(tuple), c.f, chk.observed, c.verdict.clause, "random_search"};
            if (witness_holds(c.t, w, c.cfg)) return w;
        }
    }
    return std::nullopt;
}

}  // namespace

VerdictReport falsify(Theorem t, const FunctionSpec& f, const TrialConfig& cfg, Strategy strategy) {
    const auto start = std::chrono::steady_clock::now();
    cfg.validate();
    VerdictReport rep;
    rep.theorem = entrywise::to_string(t);
    rep.mode = Mode::falsify;
    rep.config = cfg;
    rep.fn = f;
    rep.strategy = strategy;
    rep.classification = entrywise::classify_for(t, f, cfg.k, cfg.l, cfg.dom);

    const Ctx ctx{t, f, cfg, *rep.classification, f.as_series(), cfg.dom.one_sided(), f.arity()};
    std::size_t attempts = 0;
    std::optional<Witness> w;
    if (strategy == Strategy::paper_recipe)
        for (const auto& r : all_recipes(ctx)) {
            w = try_recipe(ctx, r, attempts);
            if (w) break;
        }
    if (!w) w = random_search(ctx, std::max(cfg.trials, kMinRandomBudget), attempts);

    rep.trials = attempts;
    if (w) rep.witnesses.push_back(std::move(*w));
    rep.failures = rep.witnesses.size();
    std::ostringstream os;
    if (!rep.witnesses.empty()) {
        os << "refuted: " << rep.witnesses.front().recipe << " witness for clause "
           << entrywise::to_string(rep.witnesses.front().clause);
    } else if (rep.classification->conforms) {
        os << "no witness found after " << attempts << " candidates (classification conforms, none expected)";
    } else {
        os << "no witness found after " << attempts << " candidates (search budget exhausted)";
    }
    rep.status = os.str();
    rep.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

}  // namespace inertia_lab::harness
