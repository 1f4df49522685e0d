#include "quadcert/types.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace quadcert {

namespace {

std::string format_pair(double a, double b) {
    return "[" + std::to_string(a) + ", " + std::to_string(b) + "]";
}

}  // namespace

Interval::Interval(double a, double b) : a_{a}, b_{b} {
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw InvalidArgument("interval endpoints must be finite");
    }
    if (!(a < b)) {
        throw DegenerateInterval("interval " + format_pair(a, b) + " requires a < b");
    }
}

Interval make_interval(double a, double b) { return Interval{a, b}; }

double ExponentPair::p() const noexcept {
    return p_infinite_ ? std::numeric_limits<double>::infinity() : p_;
}

ExponentPair conjugate_exponent(double q) {
    if (!std::isfinite(q) || q < 1.0) {
        throw InvalidExponent("exponent q = " + std::to_string(q) + " must be finite and >= 1");
    }
    if (q == 1.0) {
        return ExponentPair{q, std::numeric_limits<double>::infinity(), true};
    }
    return ExponentPair{q, q / (q - 1.0), false};
}

EndpointDerivMagnitudes::EndpointDerivMagnitudes(double at_a, double at_b)
    : at_a_{at_a}, at_b_{at_b} {
    if (!std::isfinite(at_a) || !std::isfinite(at_b) || at_a < 0.0 || at_b < 0.0) {
        throw InvalidArgument("endpoint derivative magnitudes must be finite and nonnegative");
    }
}

SmoothFunction::SmoothFunction(std::string name, std::array<Fn, kMaxOrder + 1> derivatives,
                               Interval domain, std::string notes)
    : name_{std::move(name)},
      derivatives_{std::move(derivatives)},
      domain_{domain},
      notes_{std::move(notes)} {
    for (const auto& d : derivatives_) {
        if (!d) {
            throw InvalidArgument("smooth function '" + name_ + "' is missing a derivative");
        }
    }
}

double SmoothFunction::derivative(int order, double x) const {
    if (order < 0 || order > kMaxOrder) {
        throw InvalidArgument("derivative order must lie in 0..4");
    }
    if (!domain_.contains(x)) {
        throw DomainError("x = " + std::to_string(x) + " lies outside the domain of '" + name_ +
                          "'");
    }
    return derivatives_[static_cast<std::size_t>(order)](x);
}

SmoothFunction SmoothFunction::compose_affine(double scale, double shift, std::string name,
                                              std::string notes) const {
    if (!std::isfinite(scale) || !std::isfinite(shift) || scale == 0.0) {
        throw InvalidArgument("affine composition needs a finite nonzero scale");
    }
    double lo = (domain_.a() - shift) / scale;
    double hi = (domain_.b() - shift) / scale;
    if (lo > hi) std::swap(lo, hi);

    std::array<Fn, kMaxOrder + 1> composed;
    double factor = 1.0;
    for (std::size_t k = 0; k < composed.size(); ++k) {
        composed[k] = [inner = derivatives_[k], factor, scale, shift](double x) {
            return factor * inner(scale * x + shift);
        };
        factor *= scale;
    }
    return SmoothFunction{std::move(name), std::move(composed), Interval{lo, hi}, std::move(notes)};
}

std::string_view to_string(Rule rule) noexcept {
    switch (rule) {
        case Rule::corrected_trapezoid: return "corrected-trapezoid";
        case Rule::simpson: return "simpson";
    }
    return "unknown";
}

std::string_view to_string(BoundKind kind) noexcept {
    switch (kind) {
        case BoundKind::trapezoid_power_mean: return "T21";
        case BoundKind::trapezoid_power_mean_q1: return "C11";
        case BoundKind::trapezoid_holder_beta: return "T22";
        case BoundKind::trapezoid_holder_weighted: return "T23";
        case BoundKind::simpson_power_mean: return "T24";
        case BoundKind::simpson_power_mean_q1: return "C12";
        case BoundKind::classical_simpson: return "classicalSimpson";
    }
    return "unknown";
}

std::optional<Rule> parse_rule(std::string_view text) noexcept {
    if (text == "trapezoid" || text == "corrected-trapezoid") return Rule::corrected_trapezoid;
    if (text == "simpson") return Rule::simpson;
    return std::nullopt;
}

Rule rule_of(BoundKind kind) noexcept {
    switch (kind) {
        case BoundKind::trapezoid_power_mean:
        case BoundKind::trapezoid_power_mean_q1:
        case BoundKind::trapezoid_holder_beta:
        case BoundKind::trapezoid_holder_weighted:
            return Rule::corrected_trapezoid;
        default:
            return Rule::simpson;
    }
}

}  // namespace quadcert
