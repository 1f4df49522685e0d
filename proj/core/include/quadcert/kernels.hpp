#pragma once

#include "quadcert/oracle.hpp"
#include "quadcert/types.hpp"

namespace quadcert {

// Both integral identities use the substitution x = t*a + (1 - t)*b, so t = 0
// lands on b and t = 1 on a.

/// t(1 - t)(2t - 1) on [0, 1]; DomainError elsewhere.
double trapezoid_kernel(double t);

/// Piecewise Simpson kernel: t^2 (t - 1/2) / 6 on [0, 1/2] and
/// (t - 1)^2 (t - 1/2) / 6 on (1/2, 1]; DomainError outside [0, 1].
double simpson_kernel(double t);

/// Signed corrected-trapezoid error
///   (f(a) + f(b))/2 - (1/(b-a)) * int_a^b f - ((b-a)/12) (f'(b) - f'(a)).
/// The integral is taken with the oracle at `tol`.
double corrected_trapezoid_error(const SmoothFunction& f, const Interval& interval,
                                 double tol = kDefaultOracleTol);

/// Signed Simpson error  int_a^b f - ((b-a)/6) (f(a) + 4 f((a+b)/2) + f(b)).
double simpson_error(const SmoothFunction& f, const Interval& interval,
                     double tol = kDefaultOracleTol);

/// ((b-a)^3 / 12) * int_0^1 trapezoid_kernel(t) f'''(t a + (1-t) b) dt.
double trapezoid_identity_rhs(const SmoothFunction& f, const Interval& interval,
                              double tol = kDefaultOracleTol);

/// (b-a)^4 * int_0^1 simpson_kernel(t) f'''(t a + (1-t) b) dt.
double simpson_identity_rhs(const SmoothFunction& f, const Interval& interval,
                            double tol = kDefaultOracleTol);

/// Closed-form kernel moments consumed by the bound formulas.
struct MomentTable {
    double trapezoid_abs;             // int_0^1 t(1-t)|2t-1| dt = 1/16
    double linear_abs;                // int_0^1 t|2t-1| dt = 1/4
    double simpson_half;              // int_0^{1/2} t^2 (1/2 - t) dt = 1/192
    double simpson_over_t;            // int_0^{1/2} t (1/2 - t) dt = 1/48
    double simpson_over_one_minus_t;  // int_0^{1/2} t^2 (1/2 - t)/(1 - t) dt = 17/48 - ln2/2

    /// int_0^1 |2t-1|^p dt = 1/(p+1).
    static double abs_power(double p);
    /// int_0^1 t(1-t)|2t-1|^p dt = 1/(2(p+1)(p+3)).
    static double trapezoid_abs_power(double p);
};

MomentTable moment_constants() noexcept;

}  // namespace quadcert
