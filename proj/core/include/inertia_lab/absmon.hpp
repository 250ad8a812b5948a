#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "inertia_lab/entrywise.hpp"

namespace inertia_lab::absmon {

using entrywise::MultiIndex;
using Evaluable = std::function<double(std::span<const double>)>;

/// Wraps a FunctionSpec as an evaluable (no domain checks).
Evaluable evaluable(const entrywise::FunctionSpec& f);

struct GridSpec {
    std::vector<double> lower;
    std::vector<double> upper;
    /// Step; 0 selects (smallest box width) / 64.
    double h = 0.0;
    unsigned max_order = 6;
    /// Tolerance for negative differences; empty selects 1e-10 * max |f| on the lattice.
    std::optional<double> slack;

    static GridSpec unit_box(std::size_t m, unsigned max_order = 6);
};

struct DifferenceReport {
    bool pass = true;
    /// Most negative difference found (0 when none is negative).
    double worst_violation = 0.0;
    std::vector<double> location;
    MultiIndex alpha;
    std::size_t grid_points = 0;
    std::size_t differences_checked = 0;
    double h = 0.0;
    double slack = 0.0;
    /// 2 f(lower + h 1) - f(lower + 2h 1): one-step extrapolation to the corner.
    double boundary_value = 0.0;
    std::string label;
};

/// Checks Delta_h^alpha f(x) >= -slack for all |alpha| <= D at the interior
/// lattice points x = lower + i h, i = 1 .. M-1 per axis (M = width / h).
/// f is sampled on the lattice extended by D h past the upper corner.
/// Throws InvalidArgument for a malformed grid, or naming the point where f
/// returned a non-finite value.
DifferenceReport forward_difference_test(const Evaluable& f, const GridSpec& grid);

struct CoefficientEstimate {
    MultiIndex alpha;
    double value = 0.0;
    /// |value - Delta_h^alpha f(h 1) / (alpha! h^|alpha|)|
    double error = 0.0;
};

struct MaclaurinEstimate {
    entrywise::Series series;
    std::vector<CoefficientEstimate> coefficients;
};

/// Maclaurin coefficients for |alpha| <= D from samples on the tensor grid
/// {h, 2h, ..., (D+1) h}^m. Each axis is interpolated by the degree-D
/// polynomial through its D+1 nodes, so the estimate is exact (up to
/// rounding) for polynomials of degree <= D in each variable.
MaclaurinEstimate maclaurin_estimate(const Evaluable& f, std::size_t m, unsigned D, double h);

}  // namespace inertia_lab::absmon
