#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "quadcert/errors.hpp"

namespace quadcert {

/// Closed interval [a, b] with finite endpoints and a < b.
class Interval {
public:
    /// Throws DegenerateInterval when a >= b, InvalidArgument when an endpoint
    /// is not finite.
    Interval(double a, double b);

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    double width() const noexcept { return b_ - a_; }
    double midpoint() const noexcept { return 0.5 * (a_ + b_); }

    bool contains(double x) const noexcept { return a_ <= x && x <= b_; }
    bool contains(const Interval& other) const noexcept {
        return a_ <= other.a_ && other.b_ <= b_;
    }

    friend bool operator==(const Interval&, const Interval&) = default;

private:
    double a_;
    double b_;
};

Interval make_interval(double a, double b);

/// Power-mean exponent q >= 1, together with its Hoelder conjugate p when q > 1.
/// At q == 1 the conjugate is infinite and Hoelder-based bounds reject the pair.
class ExponentPair {
public:
    double q() const noexcept { return q_; }
    bool p_is_infinite() const noexcept { return p_infinite_; }
    /// +inf when q == 1.
    double p() const noexcept;
    bool is_power_mean_limit() const noexcept { return q_ == 1.0; }

private:
    friend ExponentPair conjugate_exponent(double q);
    ExponentPair(double q, double p, bool p_infinite) : q_{q}, p_{p}, p_infinite_{p_infinite} {}

    double q_;
    double p_;
    bool p_infinite_;
};

/// p = q / (q - 1) for q > 1; infinite p for q == 1.
/// Throws InvalidExponent when q < 1 or q is not finite.
ExponentPair conjugate_exponent(double q);

/// |f'''(a)| and |f'''(b)|.
class EndpointDerivMagnitudes {
public:
    /// Throws InvalidArgument unless both values are finite and nonnegative.
    EndpointDerivMagnitudes(double at_a, double at_b);

    double at_a() const noexcept { return at_a_; }
    double at_b() const noexcept { return at_b_; }

    EndpointDerivMagnitudes swapped() const { return {at_b_, at_a_}; }

private:
    double at_a_;
    double at_b_;
};

/// A real function with closed-form derivatives of order 0 through 4.
///
/// Derivatives are evaluated only inside `domain()`; evaluation outside throws
/// DomainError. Callables must be safe to invoke concurrently.
class SmoothFunction {
public:
    using Fn = std::function<double(double)>;
    static constexpr int kMaxOrder = 4;

    SmoothFunction(std::string name, std::array<Fn, kMaxOrder + 1> derivatives, Interval domain,
                   std::string notes = {});

    const std::string& name() const noexcept { return name_; }
    const Interval& domain() const noexcept { return domain_; }
    const std::string& notes() const noexcept { return notes_; }

    double operator()(double x) const { return derivative(0, x); }
    /// k-th derivative at x, 0 <= k <= 4.
    double derivative(int order, double x) const;

    /// x -> f(scale * x + shift), derivatives rescaled by the chain rule and
    /// the domain mapped back through the affine change of variable.
    SmoothFunction compose_affine(double scale, double shift, std::string name,
                                  std::string notes = {}) const;

private:
    std::string name_;
    std::array<Fn, kMaxOrder + 1> derivatives_;
    Interval domain_;
    std::string notes_;
};

enum class Rule { corrected_trapezoid, simpson };

/// Which a-priori estimate produced a bound. The string labels are part of
/// the JSON/CSV interface.
enum class BoundKind {
    trapezoid_power_mean,      // "T21"
    trapezoid_power_mean_q1,   // "C11"
    trapezoid_holder_beta,     // "T22"
    trapezoid_holder_weighted, // "T23"
    simpson_power_mean,        // "T24"
    simpson_power_mean_q1,     // "C12"
    classical_simpson,         // "classicalSimpson"
};

std::string_view to_string(Rule rule) noexcept;
std::string_view to_string(BoundKind kind) noexcept;
std::optional<Rule> parse_rule(std::string_view text) noexcept;
Rule rule_of(BoundKind kind) noexcept;

/// One (rule, estimate, parameters) row pairing a bound with the measured error.
struct BoundReport {
    Rule rule;
    BoundKind kind;
    Interval interval;
    std::optional<double> q;  // empty for classical_simpson
    double p;                 // +inf when q == 1 or not applicable
    double bound;
    double actual_error;
    double ratio;             // |actual_error| / bound; 0 for 0/0
    bool membership_verified;
    /// bound == 0 while |actual_error| is not: the estimate is contradicted.
    bool flagged;
};

}  // namespace quadcert
