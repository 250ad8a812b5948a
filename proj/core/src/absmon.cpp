#include "inertia_lab/absmon.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "inertia_lab/errors.hpp"

namespace inertia_lab::absmon {

namespace {

// Dense tensor with per-axis extents, last axis fastest.
struct Tensor {
    std::vector<std::size_t> shape;
    std::vector<double> v;

    std::size_t stride(std::size_t axis) const {
        std::size_t s = 1;
        for (std::size_t a = axis + 1; a < shape.size(); ++a) s *= shape[a];
        return s;
    }
};

Tensor difference(const Tensor& t, std::size_t axis) {
    Tensor out;
    out.shape = t.shape;
    out.shape[axis] -= 1;
    std::size_t total = 1;
    for (std::size_t s : out.shape) total *= s;
    out.v.resize(total);
    const std::size_t in_stride = t.stride(axis);
    const std::size_t out_stride = out.stride(axis);
    const std::size_t outer = total / (out.shape[axis] * out_stride);
    for (std::size_t o = 0; o < outer; ++o)
        for (std::size_t i = 0; i < out.shape[axis]; ++i)
            for (std::size_t r = 0; r < out_stride; ++r) {
                const std::size_t src = o * t.shape[axis] * in_stride + i * in_stride + r;
                out.v[o * out.shape[axis] * out_stride + i * out_stride + r] = t.v[src + in_stride] - t.v[src];
            }
    return out;
}

std::string point_str(std::span<const double> x) {
    std::ostringstream os;
    os.precision(17);
    os << "(";
    for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
    os << ")";
    return os.str();
}

double checked(const Evaluable& f, std::span<const double> x) {
    const double v = f(x);
    if (!std::isfinite(v)) throw InvalidArgument("evaluation failed at " + point_str(x));
    return v;
}

struct Walker {
    const GridSpec& grid;
    std::size_t m;
    std::size_t interior;  // M - 1 points per axis
    double h;
    double slack;
    DifferenceReport& rep;
    MultiIndex alpha;

    void run(std::size_t axis, const Tensor& t, unsigned remaining) {
        if (axis == m) {
            scan(t);
            return;
        }
        Tensor cur = t;
        for (unsigned o = 0;; ++o) {
            alpha[axis] = o;
            run(axis + 1, cur, remaining - o);
            if (o == remaining) break;
            cur = difference(cur, axis);
        }
        alpha[axis] = 0;
    }

    void scan(const Tensor& t) {
        std::vector<std::size_t> idx(m, 0);
        while (true) {
            std::size_t flat = 0;
            for (std::size_t a = 0; a < m; ++a) flat = flat * t.shape[a] + idx[a];
            const double d = t.v[flat];
            ++rep.differences_checked;
            if (d < rep.worst_violation) {
                rep.worst_violation = d;
                rep.alpha = alpha;
                rep.location.resize(m);
                for (std::size_t a = 0; a < m; ++a)
                    rep.location[a] = grid.lower[a] + static_cast<double>(idx[a] + 1) * h;
            }
            std::size_t a = m;
            while (a > 0) {
                --a;
                if (++idx[a] < interior) break;
                idx[a] = 0;
                if (a == 0) return;
            }
        }
    }
};

// Monomial coefficients of the interpolant through (x_i, y_i) via Newton
// divided differences.
std::vector<double> interpolate_monomial(std::span<const double> x, std::vector<double> y) {
    const std::size_t n = x.size();
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = n - 1; i >= j; --i) {
            y[i] = (y[i] - y[i - 1]) / (x[i] - x[i - j]);
            if (i == j) break;
        }
    std::vector<double> c(n, 0.0);
    for (std::size_t j = n; j-- > 0;) {
        // c <- c * (x - x_j) + y_j
        for (std::size_t d = n - 1; d > 0; --d) c[d] = c[d - 1] - x[j] * c[d];
        c[0] = -x[j] * c[0] + y[j];
    }
    return c;
}

}  // namespace

Evaluable evaluable(const entrywise::FunctionSpec& f) {
    return [f](std::span<const double> x) { return f.eval_unchecked(x); };
}

GridSpec GridSpec::unit_box(std::size_t m, unsigned max_order) {
    GridSpec g;
    g.lower.assign(m, 0.0);
    g.upper.assign(m, 1.0);
    g.max_order = max_order;
    return g;
}

DifferenceReport forward_difference_test(const Evaluable& f, const GridSpec& grid) {
    const std::size_t m = grid.lower.size();
    if (m == 0 || grid.upper.size() != m) throw InvalidArgument("grid: lower and upper must have the same positive length");
    double width = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < m; ++a) {
        if (!(grid.lower[a] < grid.upper[a])) throw InvalidArgument("grid: lower must be below upper on every axis");
        width = std::min(width, grid.upper[a] - grid.lower[a]);
    }
    const double h = grid.h > 0.0 ? grid.h : width / 64.0;
    const auto M = static_cast<std::size_t>(std::floor(width / h + 1e-9));
    if (M < 2) throw InvalidArgument("grid: step too large for the box");
    const std::size_t interior = M - 1;
    const unsigned D = grid.max_order;
    const std::size_t len = interior + D;

    Tensor t;
    t.shape.assign(m, len);
    std::size_t total = 1;
    for (std::size_t a = 0; a < m; ++a) total *= len;
    t.v.resize(total);
    std::vector<std::size_t> idx(m, 0);
    std::vector<double> x(m);
    double fmax = 0.0;
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rem = flat;
        for (std::size_t a = m; a-- > 0;) {
            idx[a] = rem % len;
            rem /= len;
        }
        for (std::size_t a = 0; a < m; ++a) x[a] = grid.lower[a] + static_cast<double>(idx[a] + 1) * h;
        t.v[flat] = checked(f, x);
        fmax = std::max(fmax, std::abs(t.v[flat]));
    }

    DifferenceReport rep;
    rep.h = h;
    rep.grid_points = 1;
    for (std::size_t a = 0; a < m; ++a) rep.grid_points *= interior;
    rep.slack = grid.slack.value_or(1e-10 * fmax);
    Walker w{grid, m, interior, h, rep.slack, rep, MultiIndex(m, 0)};
    w.run(0, t, D);
    rep.pass = rep.worst_violation >= -rep.slack;
    if (rep.worst_violation == 0.0) rep.location.clear();

    std::vector<double> x1(m), x2(m);
    for (std::size_t a = 0; a < m; ++a) {
        x1[a] = grid.lower[a] + h;
        x2[a] = grid.lower[a] + 2.0 * h;
    }
    rep.boundary_value = 2.0 * checked(f, x1) - checked(f, x2);
    rep.label = rep.pass ? "corroborated on the grid (not a proof)" : "falsified: negative forward difference";
    return rep;
}

MaclaurinEstimate maclaurin_estimate(const Evaluable& f, std::size_t m, unsigned D, double h) {
    if (m == 0) throw InvalidArgument("maclaurin_estimate: arity must be positive");
    if (!(h > 0.0) || !std::isfinite(h)) throw InvalidArgument("maclaurin_estimate: h must be positive");
    const std::size_t len = D + 1;
    std::vector<double> nodes(len);
    for (std::size_t i = 0; i < len; ++i) nodes[i] = static_cast<double>(i + 1) * h;

    Tensor t;
    t.shape.assign(m, len);
    std::size_t total = 1;
    for (std::size_t a = 0; a < m; ++a) total *= len;
    t.v.resize(total);
    std::vector<double> x(m);
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rem = flat;
        for (std::size_t a = m; a-- > 0;) {
            x[a] = nodes[rem % len];
            rem /= len;
        }
        t.v[flat] = checked(f, x);
    }
    const Tensor samples = t;

    // Interpolate along each axis in turn.
    for (std::size_t axis = 0; axis < m; ++axis) {
        const std::size_t stride = t.stride(axis);
        const std::size_t outer = total / (len * stride);
        std::vector<double> line(len);
        for (std::size_t o = 0; o < outer; ++o)
            for (std::size_t r = 0; r < stride; ++r) {
                const std::size_t base = o * len * stride + r;
                for (std::size_t i = 0; i < len; ++i) line[i] = t.v[base + i * stride];
                const auto c = interpolate_monomial(nodes, line);
                for (std::size_t i = 0; i < len; ++i) t.v[base + i * stride] = c[i];
            }
    }

    MaclaurinEstimate est{entrywise::Series(m, {}, D), {}};
    std::vector<entrywise::Term> terms;
    std::vector<std::size_t> idx(m, 0);
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rem = flat;
        for (std::size_t a = m; a-- > 0;) {
            idx[a] = rem % len;
            rem /= len;
        }
        MultiIndex alpha(idx.begin(), idx.end());
        const unsigned deg = entrywise::total_degree(alpha);
        if (deg > D) continue;

        Tensor d = samples;
        double fact = 1.0;
        for (std::size_t a = 0; a < m; ++a)
            for (unsigned c = 0; c < alpha[a]; ++c) {
                d = difference(d, a);
                fact *= static_cast<double>(c + 1);
            }
        const double naive = d.v[0] / (fact * std::pow(h, static_cast<double>(deg)));
        terms.push_back({alpha, t.v[flat]});
        est.coefficients.push_back({alpha, t.v[flat], std::abs(t.v[flat] - naive)});
    }
    std::sort(est.coefficients.begin(), est.coefficients.end(),
              [](const CoefficientEstimate& a, const CoefficientEstimate& b) { return entrywise::canonical_less(a.alpha, b.alpha); });
    est.series = entrywise::Series(m, std::move(terms), D);
    return est;
}

}  // namespace inertia_lab::absmon
