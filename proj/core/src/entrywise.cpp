#include "inertia_lab/entrywise.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "inertia_lab/errors.hpp"

namespace inertia_lab::entrywise {

unsigned total_degree(const MultiIndex& alpha) {
    unsigned s = 0;
    for (unsigned a : alpha) s += a;
    return s;
}

bool canonical_less(const MultiIndex& a, const MultiIndex& b) {
    const unsigned da = total_degree(a);
    const unsigned db = total_degree(b);
    if (da != db) return da < db;
    return a < b;
}

// ------------------------------------------------------------------ domains

std::string to_string(DomainKind kind) {
    switch (kind) {
        case DomainKind::two_sided: return "two_sided";
        case DomainKind::open_positive: return "open_positive";
        case DomainKind::closed_left: return "closed_left";
    }
    return "two_sided";
}

DomainKind domain_kind_from_string(const std::string& s) {
    if (s == "two_sided") return DomainKind::two_sided;
    if (s == "open_positive") return DomainKind::open_positive;
    if (s == "closed_left") return DomainKind::closed_left;
    throw InvalidArgument("unknown domain kind '" + s + "'");
}

DomainSpec DomainSpec::two_sided(double rho) { return {rho, DomainKind::two_sided}; }
DomainSpec DomainSpec::open_positive(double rho) { return {rho, DomainKind::open_positive}; }
DomainSpec DomainSpec::closed_left(double rho) { return {rho, DomainKind::closed_left}; }

bool DomainSpec::contains(double x) const noexcept {
    if (!std::isfinite(x)) return false;
    switch (kind) {
        case DomainKind::two_sided: return std::abs(x) < rho;
        case DomainKind::open_positive: return x > 0.0 && x < rho;
        case DomainKind::closed_left: return x >= 0.0 && x < rho;
    }
    return false;
}

void DomainSpec::validate() const {
    if (std::isnan(rho) || !(rho > 0.0)) throw InvalidArgument("domain: rho must be positive");
}

std::string DomainSpec::describe() const {
    std::ostringstream os;
    os.precision(17);
    const std::string r = unbounded() ? std::string("inf") : (os << rho, os.str());
    switch (kind) {
        case DomainKind::two_sided: return "(-" + r + ", " + r + ")";
        case DomainKind::open_positive: return "(0, " + r + ")";
        case DomainKind::closed_left: return "[0, " + r + ")";
    }
    return r;
}

void check_entries(const SymMatrix& a, const DomainSpec& dom, std::size_t var) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i; j < a.size(); ++j)
            if (!dom.contains(a(i, j))) {
                std::ostringstream os;
                os.precision(17);
                os << "entry (" << i + 1 << ", " << j + 1 << ") of matrix " << var + 1 << " = " << a(i, j)
                   << " lies outside " << dom.describe();
                throw DomainError(os.str(), i, j, var, a(i, j));
            }
}

// ------------------------------------------------------------------- Series

Series::Series(std::size_t arity, std::vector<Term> terms, std::optional<unsigned> degree)
    : arity_(arity), degree_(0) {
    std::map<MultiIndex, double, decltype(&canonical_less)> merged(&canonical_less);
    unsigned top = 0;
    for (auto& t : terms) {
        if (t.alpha.size() != arity) throw DimensionError("Series: multi-index length differs from arity");
        if (!std::isfinite(t.c)) throw InvalidArgument("Series: non-finite coefficient");
        merged[t.alpha] += t.c;
        top = std::max(top, total_degree(t.alpha));
    }
    degree_ = degree.value_or(top);
    if (degree_ < top) throw InvalidArgument("Series: support exceeds the declared degree");
    for (auto& [alpha, c] : merged) terms_.push_back({alpha, c});
}

double Series::coefficient(const MultiIndex& alpha) const {
    for (const auto& t : terms_)
        if (t.alpha == alpha) return t.c;
    return 0.0;
}

double Series::constant_term() const { return coefficient(MultiIndex(arity_, 0)); }

double Series::eval(std::span<const double> x) const {
    if (x.size() != arity_) throw DimensionError("Series::eval: wrong number of arguments");
    double s = 0.0;
    for (const auto& t : terms_) {
        double v = t.c;
        for (std::size_t p = 0; p < arity_; ++p) v *= linalg::int_pow(x[p], t.alpha[p]);
        s += v;
    }
    return s;
}

// ------------------------------------------------------------- FunctionSpec

namespace {

MultiIndex unit(std::size_t m, std::size_t p) {
    MultiIndex a(m, 0);
    a[p] = 1;
    return a;
}

}  // namespace

FunctionSpec::FunctionSpec(std::size_t arity, FunctionForm form) : arity_(arity), form_(std::move(form)) {
    if (arity == 0) throw DimensionError("FunctionSpec: arity must be positive");
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Constant>) {
                if (!std::isfinite(v.d)) throw InvalidArgument("constant: non-finite value");
            } else if constexpr (std::is_same_v<T, Homothety>) {
                if (!(v.c > 0.0) || !std::isfinite(v.c)) throw InvalidArgument("homothety: c must be positive");
                if (v.p0 >= arity) throw DimensionError("homothety: variable index out of range");
            } else if constexpr (std::is_same_v<T, Affine>) {
                if (!(v.c > 0.0) || !std::isfinite(v.c)) throw InvalidArgument("affine: c must be positive");
                if (!std::isfinite(v.f0)) throw InvalidArgument("affine: non-finite offset");
                if (v.p0 >= arity) throw DimensionError("affine: variable index out of range");
            } else if constexpr (std::is_same_v<T, Series>) {
                if (v.arity() != arity) throw DimensionError("series: arity mismatch");
            } else {
                if (!(v.c >= 0.0) || !std::isfinite(v.c)) throw InvalidArgument("split form: c must be non-negative");
                if (v.p0 >= arity) throw DimensionError("split form: variable index out of range");
                if (v.p0 < v.F.arity()) throw InvalidArgument("split form: p0 must lie beyond the variables of F");
                if (v.F.arity() > arity) throw DimensionError("split form: F has too many variables");
            }
        },
        form_);
}

FunctionSpec FunctionSpec::constant(double d, std::size_t arity) { return {arity, Constant{d}}; }
FunctionSpec FunctionSpec::homothety(double c, std::size_t p0, std::size_t arity) {
    return {arity, Homothety{c, p0}};
}
FunctionSpec FunctionSpec::affine(double f0, double c, std::size_t p0, std::size_t arity) {
    return {arity, Affine{f0, c, p0}};
}
FunctionSpec FunctionSpec::series(Series s) {
    const std::size_t m = s.arity();
    return {m, std::move(s)};
}
FunctionSpec FunctionSpec::polynomial(std::vector<double> coeffs) {
    std::vector<Term> terms;
    for (unsigned i = 0; i < coeffs.size(); ++i) terms.push_back({{i}, coeffs[i]});
    const unsigned deg = coeffs.empty() ? 0u : static_cast<unsigned>(coeffs.size() - 1);
    return series(Series(1, std::move(terms), deg));
}
FunctionSpec FunctionSpec::split(Series F, double c, std::size_t p0, std::size_t arity) {
    return {arity, SplitForm{std::move(F), c, p0}};
}

std::string FunctionSpec::variant_name() const {
    switch (form_.index()) {
        case 0: return "constant";
        case 1: return "homothety";
        case 2: return "affine";
        case 3: return "series";
        default: return "split";
    }
}

double FunctionSpec::eval_unchecked(std::span<const double> x) const {
    if (x.size() != arity_) throw DimensionError("eval: expected " + std::to_string(arity_) + " arguments");
    return std::visit(
        [&](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Constant>) return v.d;
            else if constexpr (std::is_same_v<T, Homothety>) return v.c * x[v.p0];
            else if constexpr (std::is_same_v<T, Affine>) return v.f0 + v.c * x[v.p0];
            else if constexpr (std::is_same_v<T, Series>) return v.eval(x);
            else return v.F.eval(x.first(v.F.arity())) + v.c * x[v.p0];
        },
        form_);
}

Series FunctionSpec::as_series() const {
    const std::size_t m = arity_;
    std::vector<Term> terms = std::visit(
        [&](const auto& v) -> std::vector<Term> {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Constant>) return {{MultiIndex(m, 0), v.d}};
            else if constexpr (std::is_same_v<T, Homothety>) return {{unit(m, v.p0), v.c}};
            else if constexpr (std::is_same_v<T, Affine>) return {{MultiIndex(m, 0), v.f0}, {unit(m, v.p0), v.c}};
            else if constexpr (std::is_same_v<T, Series>) return v.terms();
            else {
                std::vector<Term> out;
                for (const auto& t : v.F.terms()) {
                    MultiIndex a = t.alpha;
                    a.resize(m, 0);
                    out.push_back({a, t.c});
                }
                out.push_back({unit(m, v.p0), v.c});
                return out;
            }
        },
        form_);
    Series merged(m, std::move(terms));
    std::vector<Term> kept;
    for (const auto& t : merged.terms())
        if (t.c != 0.0) kept.push_back(t);
    return Series(m, std::move(kept), merged.degree());
}

double eval(const FunctionSpec& f, std::span<const double> x, const DomainSpec& dom) {
    if (x.size() != f.arity()) throw DimensionError("eval: expected " + std::to_string(f.arity()) + " arguments");
    for (std::size_t p = 0; p < x.size(); ++p)
        if (!dom.contains(x[p])) {
            std::ostringstream os;
            os.precision(17);
            os << "coordinate " << p + 1 << " = " << x[p] << " lies outside " << dom.describe();
            throw DomainError(os.str(), 0, 0, p, x[p]);
        }
    return f.eval_unchecked(x);
}

SymMatrix apply_entrywise(const FunctionSpec& f, std::span<const SymMatrix> tuple, const DomainSpec& dom) {
    if (tuple.size() != f.arity())
        throw DimensionError("apply: function has arity " + std::to_string(f.arity()) + " but " +
                             std::to_string(tuple.size()) + " matrices were given");
    const std::size_t n = tuple.front().size();
    for (const auto& a : tuple)
        if (a.size() != n) throw DimensionError("apply: matrices differ in dimension");
    for (std::size_t p = 0; p < tuple.size(); ++p) check_entries(tuple[p], dom, p);
    std::vector<double> x(tuple.size());
    return SymMatrix::generate(n, [&](std::size_t i, std::size_t j) {
        for (std::size_t p = 0; p < tuple.size(); ++p) x[p] = tuple[p](i, j);
        return f.eval_unchecked(x);
    });
}

SymMatrix apply_entrywise(const FunctionSpec& f, const SymMatrix& a, const DomainSpec& dom) {
    return apply_entrywise(f, std::span<const SymMatrix>(&a, 1), dom);
}

bool is_abs_monotone_series(const FunctionSpec& f, bool include_constant) {
    const auto* s = std::get_if<Series>(&f.form());
    if (!s) throw InvalidArgument("is_abs_monotone_series: expected a series, got " + f.variant_name());
    for (const auto& t : s->terms()) {
        if (!include_constant && total_degree(t.alpha) == 0) continue;
        if (t.c < 0.0) return false;
    }
    return true;
}

// -------------------------------------------------------------- AdmissibleK

AdmissibleK::AdmissibleK(std::vector<std::size_t> kv) : k(std::move(kv)) {
    if (k.empty()) throw DimensionError("k: at least one entry required");
    bool seen_positive = false;
    for (std::size_t v : k) {
        if (v > 0) seen_positive = true;
        else if (seen_positive) throw InvalidArgument("k: zero entries must come first");
    }
}

AdmissibleK AdmissibleK::uniform(std::size_t kv, std::size_t m) { return AdmissibleK(std::vector<std::size_t>(m, kv)); }

std::size_t AdmissibleK::m0() const noexcept {
    std::size_t c = 0;
    while (c < k.size() && k[c] == 0) ++c;
    return c;
}

std::size_t AdmissibleK::k_max() const noexcept {
    std::size_t m = 1;
    for (std::size_t v : k) m = std::max(m, v);
    return m;
}

std::size_t AdmissibleK::k_min_positive() const noexcept {
    std::size_t m = 0;
    for (std::size_t v : k)
        if (v > 0 && (m == 0 || v < m)) m = v;
    return m;
}

bool AdmissibleK::has_one() const noexcept {
    return std::find(k.begin(), k.end(), std::size_t{1}) != k.end();
}

bool AdmissibleK::is_uniform() const noexcept {
    return std::all_of(k.begin(), k.end(), [&](std::size_t v) { return v == k.front(); });
}

}  // namespace inertia_lab::entrywise
