#include "quadcert/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace quadcert {

namespace {

constexpr std::array<double, 1> kKernelBreak = {0.5};

void require_unit(double t) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw DomainError("kernel argument t = " + std::to_string(t) + " lies outside [0, 1]");
    }
}

void require_inside(const SmoothFunction& f, const Interval& interval) {
    if (!f.domain().contains(interval)) {
        throw DomainError("interval is not contained in the domain of '" + f.name() + "'");
    }
}

double kernel_moment_against_third_derivative(double (*kernel)(double), const SmoothFunction& f,
                                              const Interval& interval, double tol) {
    const double a = interval.a();
    const double b = interval.b();
    const auto integrand = [&](double t) {
        // Clamp so rounding in t*a + (1-t)*b never steps outside [a, b].
        const double x = std::clamp(t * a + (1.0 - t) * b, a, b);
        return kernel(t) * f.derivative(3, x);
    };
    return integrate(integrand, 0.0, 1.0, tol, kKernelBreak).value;
}

}  // namespace

double trapezoid_kernel(double t) {
    require_unit(t);
    return t * (1.0 - t) * (2.0 * t - 1.0);
}

double simpson_kernel(double t) {
    require_unit(t);
    if (t <= 0.5) {
        return t * t * (t - 0.5) / 6.0;
    }
    const double s = t - 1.0;
    return s * s * (t - 0.5) / 6.0;
}

double corrected_trapezoid_error(const SmoothFunction& f, const Interval& interval, double tol) {
    require_inside(f, interval);
    const double a = interval.a();
    const double b = interval.b();
    const double w = interval.width();
    const double mean = integrate([&](double x) { return f(x); }, a, b, tol).value / w;
    return 0.5 * (f(a) + f(b)) - mean - (w / 12.0) * (f.derivative(1, b) - f.derivative(1, a));
}

double simpson_error(const SmoothFunction& f, const Interval& interval, double tol) {
    require_inside(f, interval);
    const double a = interval.a();
    const double b = interval.b();
    const double w = interval.width();
    const double integral = integrate([&](double x) { return f(x); }, a, b, tol).value;
    return integral - (w / 6.0) * (f(a) + 4.0 * f(interval.midpoint()) + f(b));
}

double trapezoid_identity_rhs(const SmoothFunction& f, const Interval& interval, double tol) {
    require_inside(f, interval);
    const double w = interval.width();
    return (w * w * w / 12.0) *
           kernel_moment_against_third_derivative(&trapezoid_kernel, f, interval, tol);
}

double simpson_identity_rhs(const SmoothFunction& f, const Interval& interval, double tol) {
    require_inside(f, interval);
    const double w = interval.width();
    return (w * w * w * w) *
           kernel_moment_against_third_derivative(&simpson_kernel, f, interval, tol);
}

double MomentTable::abs_power(double p) {
    if (!(p > 0.0) || !std::isfinite(p)) throw InvalidExponent("moment exponent must be positive");
    return 1.0 / (p + 1.0);
}

double MomentTable::trapezoid_abs_power(double p) {
    if (!(p > 0.0) || !std::isfinite(p)) throw InvalidExponent("moment exponent must be positive");
    return 1.0 / (2.0 * (p + 1.0) * (p + 3.0));
}

MomentTable moment_constants() noexcept {
    return MomentTable{
        .trapezoid_abs = 1.0 / 16.0,
        .linear_abs = 1.0 / 4.0,
        .simpson_half = 1.0 / 192.0,
        .simpson_over_t = 1.0 / 48.0,
        .simpson_over_one_minus_t = 17.0 / 48.0 - 0.5 * std::numbers::ln2,
    };
}

}  // namespace quadcert
