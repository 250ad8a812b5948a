#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "inertia_lab/linalg.hpp"

namespace inertia_lab::entrywise {

using linalg::SymMatrix;

/// Exponent vector alpha in Z_+^m.
using MultiIndex = std::vector<unsigned>;

unsigned total_degree(const MultiIndex& alpha);
/// Ascending total degree, ties broken lexicographically.
bool canonical_less(const MultiIndex& a, const MultiIndex& b);

enum class DomainKind { two_sided, open_positive, closed_left };

std::string to_string(DomainKind kind);
DomainKind domain_kind_from_string(const std::string& s);

/// The working interval: (-rho, rho), (0, rho) or [0, rho). rho may be +inf.
struct DomainSpec {
    double rho = std::numeric_limits<double>::infinity();
    DomainKind kind = DomainKind::two_sided;

    static DomainSpec two_sided(double rho = std::numeric_limits<double>::infinity());
    static DomainSpec open_positive(double rho = std::numeric_limits<double>::infinity());
    static DomainSpec closed_left(double rho = std::numeric_limits<double>::infinity());

    bool unbounded() const noexcept { return std::isinf(rho); }
    /// rho, or 1.0 when rho is infinite (working cap for generated samples).
    double effective_rho() const noexcept { return unbounded() ? 1.0 : rho; }
    bool one_sided() const noexcept { return kind != DomainKind::two_sided; }
    bool contains(double x) const noexcept;
    /// Throws InvalidArgument unless rho > 0.
    void validate() const;
    std::string describe() const;

    friend bool operator==(const DomainSpec&, const DomainSpec&) = default;
};

/// Throws DomainError (naming row, col and variable) on the first entry
/// outside dom. Scans the upper triangle in row-major order.
void check_entries(const SymMatrix& a, const DomainSpec& dom, std::size_t var = 0);

struct Term {
    MultiIndex alpha;
    double c = 0.0;

    friend bool operator==(const Term&, const Term&) = default;
};

/// Truncated multivariate power series sum_alpha c_alpha x^alpha with
/// declared degree bound D. Terms are kept in canonical order with
/// duplicate multi-indices merged.
class Series {
public:
    /// degree defaults to the largest total degree in the support.
    Series(std::size_t arity, std::vector<Term> terms, std::optional<unsigned> degree = std::nullopt);

    std::size_t arity() const noexcept { return arity_; }
    unsigned degree() const noexcept { return degree_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }

    double coefficient(const MultiIndex& alpha) const;
    double constant_term() const;
    double eval(std::span<const double> x) const;

    friend bool operator==(const Series&, const Series&) = default;

private:
    std::size_t arity_;
    unsigned degree_;
    std::vector<Term> terms_;
};

struct Constant {
    double d = 0.0;
    friend bool operator==(const Constant&, const Constant&) = default;
};

/// c * x_p0 with c > 0.
struct Homothety {
    double c = 1.0;
    std::size_t p0 = 0;
    friend bool operator==(const Homothety&, const Homothety&) = default;
};

/// f0 + c * x_p0 with c > 0.
struct Affine {
    double f0 = 0.0;
    double c = 1.0;
    std::size_t p0 = 0;
    friend bool operator==(const Affine&, const Affine&) = default;
};

/// F(x_0, ..., x_{m0-1}) + c * x_p0 with c >= 0 and p0 >= m0.
struct SplitForm {
    Series F;
    double c = 0.0;
    std::size_t p0 = 0;
    friend bool operator==(const SplitForm&, const SplitForm&) = default;
};

using FunctionForm = std::variant<Constant, Homothety, Affine, Series, SplitForm>;

/// A candidate entrywise function of arity m. Variable indices are 0-based.
class FunctionSpec {
public:
    FunctionSpec(std::size_t arity, FunctionForm form);

    static FunctionSpec constant(double d, std::size_t arity = 1);
    static FunctionSpec homothety(double c, std::size_t p0 = 0, std::size_t arity = 1);
    static FunctionSpec affine(double f0, double c, std::size_t p0 = 0, std::size_t arity = 1);
    static FunctionSpec series(Series s);
    /// Single-variable series from dense coefficients c_0, c_1, ...
    static FunctionSpec polynomial(std::vector<double> coeffs);
    static FunctionSpec split(Series F, double c, std::size_t p0, std::size_t arity);

    std::size_t arity() const noexcept { return arity_; }
    const FunctionForm& form() const noexcept { return form_; }
    std::string variant_name() const;

    /// Evaluates without domain checks.
    double eval_unchecked(std::span<const double> x) const;

    /// Normalized coefficient view: every variant rewritten as a Series over
    /// all m variables, zero coefficients dropped.
    Series as_series() const;

    friend bool operator==(const FunctionSpec&, const FunctionSpec&) = default;

private:
    std::size_t arity_;
    FunctionForm form_;
};

/// Evaluates f at x after checking each coordinate against dom.
/// Throws DomainError (var = offending coordinate) or DimensionError.
double eval(const FunctionSpec& f, std::span<const double> x, const DomainSpec& dom);

/// f[B_1, ..., B_m]_{ij} = f(b1_ij, ..., bm_ij). Throws DomainError with
/// (i, j, p) for the first out-of-domain entry.
SymMatrix apply_entrywise(const FunctionSpec& f, std::span<const SymMatrix> tuple, const DomainSpec& dom);
SymMatrix apply_entrywise(const FunctionSpec& f, const SymMatrix& a, const DomainSpec& dom);

/// True iff every coefficient of a Series spec is >= 0 (the constant term
/// is skipped unless include_constant). Throws InvalidArgument for other variants.
bool is_abs_monotone_series(const FunctionSpec& f, bool include_constant);

/// Negativity vector k with all zero entries leading.
struct AdmissibleK {
    std::vector<std::size_t> k;

    explicit AdmissibleK(std::vector<std::size_t> k);
    static AdmissibleK uniform(std::size_t k, std::size_t m = 1);

    std::size_t arity() const noexcept { return k.size(); }
    std::size_t m0() const noexcept;
    /// max(1, max_p k_p)
    std::size_t k_max() const noexcept;
    /// Smallest positive entry, 0 when k is identically zero.
    std::size_t k_min_positive() const noexcept;
    bool is_zero() const noexcept { return m0() == k.size(); }
    bool has_one() const noexcept;
    bool is_uniform() const noexcept;

    friend bool operator==(const AdmissibleK&, const AdmissibleK&) = default;
};

/// Claims that can be verified or falsified.
enum class Theorem {
    negativity_bound,       ///< S^(k) -> closure of S^(l), one variable, two-sided domain
    multivariate_bound,     ///< S^(k) -> closure of S^(l), tuples or one-sided domains
    psd_codomain,           ///< l == 0 or k == 0 cases
    class_preserver,        ///< S^(k) -> S^(k)
    closure_preserver,      ///< closure of S^(k) -> closure of S^(k)
    inertia_preserver,      ///< inertia of every A in S^(k) is kept
    pontryagin,             ///< finite k-indefinite Gram lifts, exact index k
    pontryagin_closure,     ///< finite Gram lifts, index at most k
};

std::string to_string(Theorem t);
Theorem theorem_from_string(const std::string& s);

enum class Clause {
    // conforming shapes
    constant_map,
    nonnegative_series,
    split_form,
    positive_homothety,
    affine_nonnegative_offset,
    negative_constant,
    // violations
    negative_coefficient,
    constrained_dependence,
    negative_constant_term,
    constrained_degree,
    constrained_cross_term,
    mixed_linear_term,
    multiple_linear_variables,
    insufficient_codomain,
    negative_offset,
    forbidden_constant,
    positive_offset,
    not_homothety,
};

std::string to_string(Clause c);
Clause clause_from_string(const std::string& s);

struct Violation {
    Clause clause;
    std::string detail;
    /// Variable the violation is attached to, when there is one.
    std::optional<std::size_t> var;
};

struct PreserverVerdict {
    Theorem theorem;
    bool conforms = false;
    /// Conforming shape when conforms, else the first violation.
    Clause clause;
    std::vector<Violation> violations;
    /// For split forms: the linear variable and its coefficient.
    std::optional<std::size_t> p0;
    double c = 0.0;
    double offset = 0.0;
};

/// Syntactic classification of f for S^(k)(I) -> closure of S^(l). The
/// reported theorem is negativity_bound (one variable, two-sided),
/// psd_codomain (l == 0 or k == 0) or multivariate_bound.
/// Throws RegimeError when (k, l) lies outside every covered regime.
PreserverVerdict classify(const FunctionSpec& f, const AdmissibleK& k, std::size_t l, const DomainSpec& dom);

/// Classification against one named claim. class_preserver and
/// closure_preserver need uniform k >= 1; inertia_preserver needs m == 1.
PreserverVerdict classify_for(Theorem t, const FunctionSpec& f, const AdmissibleK& k, std::size_t l,
                              const DomainSpec& dom);

}  // namespace inertia_lab::entrywise
