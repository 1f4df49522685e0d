#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace quadcert {

inline constexpr double kDefaultOracleTol = 1e-12;
inline constexpr std::size_t kDefaultMaxSubdivisions = 1'000'000;

struct QuadratureResult {
    double value;
    double abs_error_estimate;
    std::size_t subdivisions;
};

/// Globally adaptive 7/15-point Gauss-Kronrod integration of g over [a, b].
///
/// The range is split at every breakpoint before adaptation starts, so kinks
/// of piecewise kernels never sit inside a panel. The panel with the largest
/// |K15 - G7| is bisected until the summed estimate drops to `tol`.
///
/// Throws InvalidArgument for a >= b, tol <= 0 or breakpoints outside (a, b);
/// ToleranceNotMet when `max_subdivisions` panels do not reach `tol`;
/// NonFiniteIntegrand when g returns inf or nan.
QuadratureResult integrate(const std::function<double(double)>& g, double a, double b,
                           double tol = kDefaultOracleTol,
                           std::span<const double> breakpoints = {},
                           std::size_t max_subdivisions = kDefaultMaxSubdivisions);

/// ln Gamma(x) for x > 0 (Lanczos approximation, ~15 significant digits).
double log_gamma(double x);

/// Euler Beta function B(x, y) for x, y > 0. Symmetric bit-for-bit.
/// Throws InvalidArgument when x <= 0 or y <= 0.
double beta_function(double x, double y);

}  // namespace quadcert
