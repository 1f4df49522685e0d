#pragma once

#include <span>
#include <vector>

#include "quadcert/types.hpp"

namespace quadcert {

/// Inputs of every a-priori estimate: the interval width, the endpoint
/// third-derivative magnitudes and the exponent pair.
class BoundParams {
public:
    /// Throws DegenerateInterval unless width is finite and > 0.
    BoundParams(double width, EndpointDerivMagnitudes derivs, ExponentPair exponents);

    double width() const noexcept { return width_; }
    const EndpointDerivMagnitudes& derivs() const noexcept { return derivs_; }
    const ExponentPair& exponents() const noexcept { return exponents_; }
    double q() const noexcept { return exponents_.q(); }

private:
    double width_;
    EndpointDerivMagnitudes derivs_;
    ExponentPair exponents_;
};

/// Bracket used by the Hoelder/Beta trapezoid estimate. `proof_form` carries
/// [Da^q + Db^q]^(1/q); `as_stated` carries [Da + Db]^(1/q).
enum class BetaBracket { proof_form, as_stated };

// Corrected trapezoid rule, power-mean route, q >= 1:
//   (w^3/12) (1/16)^(1-1/q) [(Da^q + Db^q)/4]^(1/q).
// q == 1 is routed to trapezoid_q1_bound.
double trapezoid_power_mean_bound(const BoundParams& params);

// w^3 (Da + Db) / 48.
double trapezoid_q1_bound(double width, const EndpointDerivMagnitudes& derivs);

// Hoelder route with a Beta coefficient, q > 1:
//   (w^3/12) B(q, q+1)^(1/q) / (p+1)^(1/p) * bracket.
double trapezoid_holder_beta_bound(const BoundParams& params,
                                   BetaBracket bracket = BetaBracket::proof_form);

// Hoelder route with weight t(1-t), q > 1:
//   (w^3/24) (1/((p+1)(p+3)))^(1/p) [Da^q + Db^q]^(1/q).
double trapezoid_holder_weighted_bound(const BoundParams& params);

// Same estimate in the un-simplified form
//   (w^3/12) (1/(2(p+1)(p+3)))^(1/p) [(Da^q + Db^q)/2]^(1/q).
double trapezoid_holder_weighted_bound_unsimplified(const BoundParams& params);

// Simpson rule, power-mean route, q >= 1, with c = 17/48 - ln2/2:
//   (w^4/6) (1/192)^(1-1/q) { (Da^q/48 + c Db^q)^(1/q) + (c Da^q + Db^q/48)^(1/q) }.
// q == 1 is routed to simpson_q1_bound.
double simpson_power_mean_bound(const BoundParams& params);

// w^4 (3/8 - ln2/2) (Da + Db) / 6.
double simpson_q1_bound(double width, const EndpointDerivMagnitudes& derivs);

/// Classical sup|f''''| estimate for Simpson's rule in both normalisations.
struct ClassicalSimpsonBound {
    double averaged;  // bounds |(1/(b-a)) int f - Simpson average|
    double absolute;  // bounds |int f - Simpson sum|, = width * averaged
};

ClassicalSimpsonBound classical_simpson_bound(double width, double sup_fourth_derivative);

/// Dispatch on kind. Throws InvalidExponent for q-ranges the estimate does
/// not cover and InvalidArgument for classical_simpson (needs sup|f''''|).
double evaluate_bound(BoundKind kind, const BoundParams& params);

/// Estimates that apply to `rule` at exponent q: the q == 1 corollary alone
/// at q == 1, the general estimates otherwise.
std::vector<BoundKind> applicable_bounds(Rule rule, double q);

struct BoundRow {
    BoundKind kind;
    double q;
    double p;  // +inf at q == 1
    double bound;
};

struct TightestBound {
    BoundKind kind;
    double q;
    double bound;
    std::vector<BoundRow> table;     // sorted by q, then kind
    std::vector<double> skipped_q;   // invalid grid entries, in input order
};

inline const std::vector<double>& default_q_grid() {
    static const std::vector<double> grid{1.0, 1.25, 1.5, 2.0, 3.0, 5.0, 10.0};
    return grid;
}

/// Smallest applicable bound over the grid. Ties go to the smaller q, then to
/// the earlier estimate. Invalid q entries are skipped and reported; throws
/// InvalidExponent when no grid entry is usable.
TightestBound tightest_bound(Rule rule, double width, const EndpointDerivMagnitudes& derivs,
                             std::span<const double> q_grid);

}  // namespace quadcert
