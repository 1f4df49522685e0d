#include "quadcert/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "quadcert/kernels.hpp"
#include "quadcert/oracle.hpp"

namespace quadcert {

namespace {

// (wa * da^q + wb * db^q)^(1/q), scaled by max(da, db) so large derivative
// data does not overflow at large q.
double weighted_power_norm(double wa, double da, double wb, double db, double q) {
    const double m = std::max(da, db);
    if (m == 0.0) return 0.0;
    const double sum = wa * std::pow(da / m, q) + wb * std::pow(db / m, q);
    return m * std::pow(sum, 1.0 / q);
}

const ExponentPair& require_holder(const BoundParams& params) {
    if (params.exponents().p_is_infinite()) {
        throw InvalidExponent("Hoelder-based estimate needs q > 1 (finite conjugate p)");
    }
    return params.exponents();
}

double cube(double w) { return w * w * w; }
double fourth(double w) { return (w * w) * (w * w); }

}  // namespace

BoundParams::BoundParams(double width, EndpointDerivMagnitudes derivs, ExponentPair exponents)
    : width_{width}, derivs_{derivs}, exponents_{exponents} {
    if (!std::isfinite(width) || !(width > 0.0)) {
        throw DegenerateInterval("width " + std::to_string(width) + " must be finite and > 0");
    }
}

double trapezoid_q1_bound(double width, const EndpointDerivMagnitudes& derivs) {
    if (!std::isfinite(width) || !(width > 0.0)) {
        throw DegenerateInterval("width must be finite and > 0");
    }
    return cube(width) * (derivs.at_a() + derivs.at_b()) / 48.0;
}

double trapezoid_power_mean_bound(const BoundParams& params) {
    if (params.exponents().is_power_mean_limit()) {
        return trapezoid_q1_bound(params.width(), params.derivs());
    }
    const MomentTable m = moment_constants();
    const double q = params.q();
    const auto& d = params.derivs();
    return cube(params.width()) / 12.0 * std::pow(m.trapezoid_abs, 1.0 - 1.0 / q) *
           weighted_power_norm(m.linear_abs, d.at_a(), m.linear_abs, d.at_b(), q);
}

double trapezoid_holder_beta_bound(const BoundParams& params, BetaBracket bracket) {
    const ExponentPair& e = require_holder(params);
    const double q = e.q();
    const double p = e.p();
    const auto& d = params.derivs();
    const double coefficient = std::pow(beta_function(q, q + 1.0), 1.0 / q) *
                               std::pow(MomentTable::abs_power(p), 1.0 / p);
    const double bracket_value = bracket == BetaBracket::proof_form
                                     ? weighted_power_norm(1.0, d.at_a(), 1.0, d.at_b(), q)
                                     : std::pow(d.at_a() + d.at_b(), 1.0 / q);
    return cube(params.width()) / 12.0 * coefficient * bracket_value;
}

double trapezoid_holder_weighted_bound(const BoundParams& params) {
    const ExponentPair& e = require_holder(params);
    const double p = e.p();
    const auto& d = params.derivs();
    return cube(params.width()) / 24.0 * std::pow(1.0 / ((p + 1.0) * (p + 3.0)), 1.0 / p) *
           weighted_power_norm(1.0, d.at_a(), 1.0, d.at_b(), e.q());
}

double trapezoid_holder_weighted_bound_unsimplified(const BoundParams& params) {
    const ExponentPair& e = require_holder(params);
    const double p = e.p();
    const auto& d = params.derivs();
    return cube(params.width()) / 12.0 *
           std::pow(MomentTable::trapezoid_abs_power(p), 1.0 / p) *
           weighted_power_norm(0.5, d.at_a(), 0.5, d.at_b(), e.q());
}

double simpson_q1_bound(double width, const EndpointDerivMagnitudes& derivs) {
    if (!std::isfinite(width) || !(width > 0.0)) {
        throw DegenerateInterval("width must be finite and > 0");
    }
    const double constant = 3.0 / 8.0 - 0.5 * std::numbers::ln2;
    return fourth(width) * constant * (derivs.at_a() + derivs.at_b()) / 6.0;
}

double simpson_power_mean_bound(const BoundParams& params) {
    if (params.exponents().is_power_mean_limit()) {
        return simpson_q1_bound(params.width(), params.derivs());
    }
    const MomentTable m = moment_constants();
    const double q = params.q();
    const double c = m.simpson_over_one_minus_t;
    const double near = m.simpson_over_t;
    const auto& d = params.derivs();
    const double left_half = weighted_power_norm(near, d.at_a(), c, d.at_b(), q);
    const double right_half = weighted_power_norm(c, d.at_a(), near, d.at_b(), q);
    return fourth(params.width()) / 6.0 * std::pow(m.simpson_half, 1.0 - 1.0 / q) *
           (left_half + right_half);
}

ClassicalSimpsonBound classical_simpson_bound(double width, double sup_fourth_derivative) {
    if (!std::isfinite(width) || !(width > 0.0)) {
        throw DegenerateInterval("width must be finite and > 0");
    }
    if (!std::isfinite(sup_fourth_derivative) || sup_fourth_derivative < 0.0) {
        throw InvalidArgument("sup |f''''| must be finite and nonnegative");
    }
    const double averaged = sup_fourth_derivative * fourth(width) / 2880.0;
    return ClassicalSimpsonBound{averaged, width * averaged};
}

double evaluate_bound(BoundKind kind, const BoundParams& params) {
    switch (kind) {
        case BoundKind::trapezoid_power_mean: return trapezoid_power_mean_bound(params);
        case BoundKind::trapezoid_power_mean_q1:
            return trapezoid_q1_bound(params.width(), params.derivs());
        case BoundKind::trapezoid_holder_beta: return trapezoid_holder_beta_bound(params);
        case BoundKind::trapezoid_holder_weighted: return trapezoid_holder_weighted_bound(params);
        case BoundKind::simpson_power_mean: return simpson_power_mean_bound(params);
        case BoundKind::simpson_power_mean_q1:
            return simpson_q1_bound(params.width(), params.derivs());
        case BoundKind::classical_simpson:
            throw InvalidArgument("classical Simpson bound needs sup|f''''|, not endpoint data");
    }
    throw InvalidArgument("unknown bound kind");
}

std::vector<BoundKind> applicable_bounds(Rule rule, double q) {
    if (rule == Rule::corrected_trapezoid) {
        if (q == 1.0) return {BoundKind::trapezoid_power_mean_q1};
        return {BoundKind::trapezoid_power_mean, BoundKind::trapezoid_holder_beta,
                BoundKind::trapezoid_holder_weighted};
    }
    if (q == 1.0) return {BoundKind::simpson_power_mean_q1};
    return {BoundKind::simpson_power_mean};
}

TightestBound tightest_bound(Rule rule, double width, const EndpointDerivMagnitudes& derivs,
                             std::span<const double> q_grid) {
    if (q_grid.empty()) {
        throw InvalidExponent("q grid is empty");
    }
    TightestBound out{};
    std::vector<double> qs;
    for (double q : q_grid) {
        if (!std::isfinite(q) || q < 1.0) {
            out.skipped_q.push_back(q);
        } else {
            qs.push_back(q);
        }
    }
    if (qs.empty()) {
        throw InvalidExponent("no q in the grid is finite and >= 1");
    }
    std::sort(qs.begin(), qs.end());
    qs.erase(std::unique(qs.begin(), qs.end()), qs.end());

    for (double q : qs) {
        const BoundParams params{width, derivs, conjugate_exponent(q)};
        for (BoundKind kind : applicable_bounds(rule, q)) {
            out.table.push_back(BoundRow{kind, q, params.exponents().p(),
                                         evaluate_bound(kind, params)});
        }
    }

    const BoundRow* best = &out.table.front();
    for (const BoundRow& row : out.table) {
        if (row.bound < best->bound) best = &row;
    }
    out.kind = best->kind;
    out.q = best->q;
    out.bound = best->bound;
    return out;
}

}  // namespace quadcert
