#include <algorithm>
#include <array>
#include <sstream>

#include "inertia_lab/entrywise.hpp"
#include "inertia_lab/errors.hpp"

namespace inertia_lab::entrywise {

namespace {

constexpr std::array<std::pair<Theorem, const char*>, 8> kTheoremNames{{
    {Theorem::negativity_bound, "negativity_bound"},
    {Theorem::multivariate_bound, "multivariate_bound"},
    {Theorem::psd_codomain, "psd_codomain"},
    {Theorem::class_preserver, "class_preserver"},
    {Theorem::closure_preserver, "closure_preserver"},
    {Theorem::inertia_preserver, "inertia_preserver"},
    {Theorem::pontryagin, "pontryagin"},
    {Theorem::pontryagin_closure, "pontryagin_closure"},
}};

constexpr std::array<std::pair<Clause, const char*>, 18> kClauseNames{{
    {Clause::constant_map, "constant_map"},
    {Clause::nonnegative_series, "nonnegative_series"},
    {Clause::split_form, "split_form"},
    {Clause::positive_homothety, "positive_homothety"},
    {Clause::affine_nonnegative_offset, "affine_nonnegative_offset"},
    {Clause::negative_constant, "negative_constant"},
    {Clause::negative_coefficient, "negative_coefficient"},
    {Clause::constrained_dependence, "constrained_dependence"},
    {Clause::negative_constant_term, "negative_constant_term"},
    {Clause::constrained_degree, "constrained_degree"},
    {Clause::constrained_cross_term, "constrained_cross_term"},
    {Clause::mixed_linear_term, "mixed_linear_term"},
    {Clause::multiple_linear_variables, "multiple_linear_variables"},
    {Clause::insufficient_codomain, "insufficient_codomain"},
    {Clause::negative_offset, "negative_offset"},
    {Clause::forbidden_constant, "forbidden_constant"},
    {Clause::positive_offset, "positive_offset"},
    {Clause::not_homothety, "not_homothety"},
}};

std::string alpha_str(const MultiIndex& a) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
    os << ")";
    return os.str();
}

std::string num(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::optional<std::size_t> first_var(const MultiIndex& a) {
    for (std::size_t p = 0; p < a.size(); ++p)
        if (a[p] > 0) return p;
    return std::nullopt;
}

bool is_constant(const Series& s) {
    return std::all_of(s.terms().begin(), s.terms().end(),
                       [](const Term& t) { return total_degree(t.alpha) == 0; });
}

PreserverVerdict conforming(Theorem t, Clause c) {
    PreserverVerdict v;
    v.theorem = t;
    v.conforms = true;
    v.clause = c;
    return v;
}

PreserverVerdict violating(Theorem t, std::vector<Violation> vs) {
    PreserverVerdict v;
    v.theorem = t;
    v.conforms = false;
    v.clause = vs.front().clause;
    v.violations = std::move(vs);
    return v;
}

void check_regime(const AdmissibleK& k, std::size_t l) {
    if (k.is_zero() || l == 0) return;
    if (k.has_one()) {
        if (l != 1)
            throw RegimeError("regime not covered: some k_p equals 1, which requires l = 1 (got l = " +
                              std::to_string(l) + ")");
        return;
    }
    const std::size_t K = k.k_min_positive();
    if (l > 2 * K - 2)
        throw RegimeError("regime not covered: l = " + std::to_string(l) + " exceeds 2K - 2 = " +
                          std::to_string(2 * K - 2));
}

}  // namespace

std::string to_string(Theorem t) {
    for (const auto& [id, name] : kTheoremNames)
        if (id == t) return name;
    return "negativity_bound";
}

Theorem theorem_from_string(const std::string& s) {
    for (const auto& [id, name] : kTheoremNames)
        if (s == name) return id;
    throw InvalidArgument("unknown theorem id '" + s + "'");
}

std::string to_string(Clause c) {
    for (const auto& [id, name] : kClauseNames)
        if (id == c) return name;
    return "constant_map";
}

Clause clause_from_string(const std::string& s) {
    for (const auto& [id, name] : kClauseNames)
        if (s == name) return id;
    throw InvalidArgument("unknown clause '" + s + "'");
}

PreserverVerdict classify(const FunctionSpec& f, const AdmissibleK& k, std::size_t l, const DomainSpec& dom) {
    dom.validate();
    if (k.arity() != f.arity())
        throw DimensionError("classify: k has " + std::to_string(k.arity()) + " entries but f has arity " +
                             std::to_string(f.arity()));
    check_regime(k, l);

    const Series s = f.as_series();
    const std::size_t m = f.arity();
    const std::size_t m0 = k.m0();
    const double f0 = s.constant_term();
    auto constrained = [&](std::size_t p) { return k.k[p] > 0; };

    // k == 0
    if (k.is_zero()) {
        std::vector<Violation> vs;
        for (const auto& t : s.terms()) {
            const bool is_const = total_degree(t.alpha) == 0;
            if (t.c >= 0.0 || (is_const && l > 0)) continue;
            vs.push_back({is_const ? Clause::negative_constant_term : Clause::negative_coefficient,
                          "coefficient of x^" + alpha_str(t.alpha) + " is " + num(t.c), first_var(t.alpha)});
        }
        Theorem th = Theorem::psd_codomain;
        if (l > 0 && m == 1 && !dom.one_sided()) th = Theorem::negativity_bound;
        if (!vs.empty()) return violating(th, std::move(vs));
        auto v = conforming(th, is_constant(s) ? Clause::constant_map : Clause::nonnegative_series);
        v.offset = f0;
        return v;
    }

    // k != 0, l == 0
    if (l == 0) {
        std::vector<Violation> vs;
        for (const auto& t : s.terms())
            for (std::size_t p = m0; p < m; ++p)
                if (t.alpha[p] > 0) {
                    vs.push_back({Clause::constrained_dependence,
                                  "term x^" + alpha_str(t.alpha) + " involves constrained variable " +
                                      std::to_string(p + 1),
                                  p});
                    break;
                }
        for (const auto& t : s.terms()) {
            if (t.c >= 0.0) continue;
            const bool is_const = total_degree(t.alpha) == 0;
            vs.push_back({is_const ? Clause::negative_constant_term : Clause::negative_coefficient,
                          "coefficient of x^" + alpha_str(t.alpha) + " is " + num(t.c), first_var(t.alpha)});
        }
        if (!vs.empty()) return violating(Theorem::psd_codomain, std::move(vs));
        auto v = conforming(Theorem::psd_codomain, is_constant(s) ? Clause::constant_map : Clause::nonnegative_series);
        v.offset = f0;
        return v;
    }

    // k != 0, l >= 1
    const Theorem th = (m == 1 && !dom.one_sided()) ? Theorem::negativity_bound : Theorem::multivariate_bound;
    std::vector<Violation> vs;
    for (const auto& t : s.terms())
        if (total_degree(t.alpha) > 0 && t.c < 0.0)
            vs.push_back({Clause::negative_coefficient, "coefficient of x^" + alpha_str(t.alpha) + " is " + num(t.c),
                          first_var(t.alpha)});

    std::vector<std::size_t> linear_vars;
    double c = 0.0;
    for (const auto& t : s.terms()) {
        std::vector<std::size_t> cons;
        bool has_free = false;
        for (std::size_t p = 0; p < m; ++p) {
            if (t.alpha[p] == 0) continue;
            if (constrained(p)) cons.push_back(p);
            else has_free = true;
        }
        if (cons.empty()) continue;
        const auto high = std::find_if(cons.begin(), cons.end(), [&](std::size_t p) { return t.alpha[p] >= 2; });
        if (high != cons.end()) {
            vs.push_back({Clause::constrained_degree,
                          "term x^" + alpha_str(t.alpha) + " has degree " + std::to_string(t.alpha[*high]) +
                              " in constrained variable " + std::to_string(*high + 1),
                          *high});
        } else if (cons.size() >= 2) {
            vs.push_back({Clause::constrained_cross_term,
                          "term x^" + alpha_str(t.alpha) + " multiplies constrained variables " +
                              std::to_string(cons[0] + 1) + " and " + std::to_string(cons[1] + 1),
                          cons[0]});
        } else if (has_free) {
            vs.push_back({Clause::mixed_linear_term,
                          "coefficient of constrained variable " + std::to_string(cons[0] + 1) +
                              " varies with the free variables (term x^" + alpha_str(t.alpha) + ")",
                          cons[0]});
        } else {
            linear_vars.push_back(cons[0]);
            c = t.c;
        }
    }
    if (linear_vars.size() >= 2)
        vs.push_back({Clause::multiple_linear_variables,
                      "f is linear in constrained variables " + std::to_string(linear_vars[0] + 1) + " and " +
                          std::to_string(linear_vars[1] + 1),
                      linear_vars[1]});

    std::stable_sort(vs.begin(), vs.end(), [](const Violation& a, const Violation& b) {
        return static_cast<int>(a.clause) < static_cast<int>(b.clause);
    });

    if (vs.empty() && linear_vars.size() == 1 && c > 0.0) {
        const std::size_t p0 = linear_vars.front();
        if (l < k.k[p0])
            vs.push_back({Clause::insufficient_codomain,
                          "f is linear in variable " + std::to_string(p0 + 1) + " with k = " + std::to_string(k.k[p0]) +
                              " but l = " + std::to_string(l),
                          p0});
        else if (l == k.k[p0] && f0 < 0.0)
            vs.push_back({Clause::negative_offset, "l equals k_p0 and F(0) = " + num(f0) + " < 0", p0});
        if (vs.empty()) {
            auto v = conforming(th, Clause::split_form);
            v.p0 = p0;
            v.c = c;
            v.offset = f0;
            return v;
        }
    }
    if (!vs.empty()) return violating(th, std::move(vs));
    auto v = conforming(th, is_constant(s) ? Clause::constant_map : Clause::split_form);
    v.offset = f0;
    return v;
}

PreserverVerdict classify_for(Theorem t, const FunctionSpec& f, const AdmissibleK& k, std::size_t l,
                              const DomainSpec& dom) {
    switch (t) {
        case Theorem::negativity_bound:
        case Theorem::multivariate_bound:
        case Theorem::psd_codomain: return classify(f, k, l, dom);

        case Theorem::inertia_preserver: {
            if (f.arity() != 1) throw DimensionError("inertia_preserver: one variable only");
            dom.validate();
            const Series s = f.as_series();
            if (s.terms().size() == 1 && s.terms()[0].alpha == MultiIndex{1} && s.terms()[0].c > 0.0) {
                auto v = conforming(t, Clause::positive_homothety);
                v.p0 = 0;
                v.c = s.terms()[0].c;
                return v;
            }
            if (is_constant(s))
                return violating(t, {{Clause::forbidden_constant, "constant maps never preserve inertia", std::nullopt}});
            return violating(t, {{Clause::not_homothety, "f is not a positive homothety", std::nullopt}});
        }

        case Theorem::class_preserver:
        case Theorem::closure_preserver:
        case Theorem::pontryagin:
        case Theorem::pontryagin_closure: {
            const bool pont = t == Theorem::pontryagin || t == Theorem::pontryagin_closure;
            const bool closure = t == Theorem::closure_preserver || t == Theorem::pontryagin_closure;
            if (pont && f.arity() != 1) throw DimensionError(to_string(t) + ": one variable only");
            if (k.arity() != f.arity()) throw DimensionError(to_string(t) + ": k arity differs from f");
            if (!k.is_uniform() || k.k.front() == 0)
                throw InvalidArgument(to_string(t) + ": requires a uniform positive k");
            const std::size_t kk = k.k.front();
            const Series s = f.as_series();
            if (is_constant(s)) {
                const double d = s.constant_term();
                if (closure) {
                    auto v = conforming(t, Clause::constant_map);
                    v.offset = d;
                    return v;
                }
                if (kk == 1 && d < 0.0) {
                    auto v = conforming(t, Clause::negative_constant);
                    v.offset = d;
                    return v;
                }
                return violating(t, {{Clause::forbidden_constant,
                                      "constant " + num(d) + " cannot land in a class with exactly " +
                                          std::to_string(kk) + " negative eigenvalue(s)",
                                      std::nullopt}});
            }
            auto base = classify(f, k, kk, dom);
            base.theorem = t;
            if (!base.conforms) return base;
            if (!closure && base.offset > 0.0)
                return violating(t, {{Clause::positive_offset, "f(0) = " + num(base.offset) + " > 0", base.p0}});
            base.clause = base.offset == 0.0 ? Clause::positive_homothety : Clause::affine_nonnegative_offset;
            return base;
        }
    }
    throw InvalidArgument("classify_for: unknown theorem");
}

}  // namespace inertia_lab::entrywise
