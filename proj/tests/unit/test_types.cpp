#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "quadcert/qclass.hpp"
#include "quadcert/types.hpp"
#include "test_support.hpp"

namespace quadcert {
namespace {

TEST(Interval, AcceptsOrderedEndpoints) {
    const Interval i = make_interval(0.0, 1.0);
    EXPECT_EQ(i.a(), 0.0);
    EXPECT_EQ(i.b(), 1.0);
    EXPECT_EQ(i.width(), 1.0);
    EXPECT_EQ(i.midpoint(), 0.5);
}

TEST(Interval, RejectsZeroWidthAndReversed) {
    EXPECT_THROW(make_interval(1.0, 1.0), DegenerateInterval);
    EXPECT_THROW(make_interval(2.0, 0.0), DegenerateInterval);
}

TEST(Interval, RejectsNonFiniteEndpoints) {
    EXPECT_THROW(make_interval(0.0, std::numeric_limits<double>::infinity()), InvalidArgument);
    EXPECT_THROW(make_interval(std::nan(""), 1.0), InvalidArgument);
}

TEST(Interval, Containment) {
    const Interval outer{0.0, 3.0};
    EXPECT_TRUE(outer.contains(Interval{1.0, 3.0}));
    EXPECT_FALSE(outer.contains(Interval{-0.5, 1.0}));
    EXPECT_TRUE(outer.contains(0.0));
    EXPECT_FALSE(outer.contains(3.5));
}

TEST(ConjugateExponent, Examples) {
    EXPECT_EQ(conjugate_exponent(2.0).p(), 2.0);
    EXPECT_DOUBLE_EQ(conjugate_exponent(3.0).p(), 1.5);
    const ExponentPair one = conjugate_exponent(1.0);
    EXPECT_TRUE(one.p_is_infinite());
    EXPECT_TRUE(std::isinf(one.p()));
}

TEST(ConjugateExponent, RejectsBelowOneAndNonFinite) {
    EXPECT_THROW(conjugate_exponent(0.999), InvalidExponent);
    EXPECT_THROW(conjugate_exponent(std::numeric_limits<double>::infinity()), InvalidExponent);
    EXPECT_THROW(conjugate_exponent(std::nan("")), InvalidExponent);
}

TEST(ConjugateExponent, ReciprocalsSumToOneAndMapIsAnInvolution) {
    for (int trial = 0; trial < 2000; ++trial) {
        const double q = testing::uniform(1.01, 100.0);
        const ExponentPair e = conjugate_exponent(q);
        EXPECT_LE(std::abs(1.0 / e.p() + 1.0 / e.q() - 1.0), 1e-15) << "q=" << q;
        const double back = conjugate_exponent(e.p()).p();
        // p - 1 = 1/(q - 1) cancels, so the round trip loses about log10(q) digits.
        EXPECT_LE(testing::relative_difference(back, q),
                  4 * q * std::numeric_limits<double>::epsilon())
            << "q=" << q;
    }
}

TEST(EndpointDerivMagnitudes, Validation) {
    EXPECT_NO_THROW(EndpointDerivMagnitudes(0.0, 24.0));
    EXPECT_THROW(EndpointDerivMagnitudes(-1.0, 0.0), InvalidArgument);
    EXPECT_THROW(EndpointDerivMagnitudes(0.0, std::numeric_limits<double>::infinity()),
                 InvalidArgument);
    const EndpointDerivMagnitudes d{1.0, 2.0};
    EXPECT_EQ(d.swapped().at_a(), 2.0);
    EXPECT_EQ(d.swapped().at_b(), 1.0);
}

TEST(SmoothFunction, DerivativeOrderAndDomainChecks) {
    const SmoothFunction& x4 = find_corpus_entry("x4")->function;
    EXPECT_EQ(x4(2.0), 16.0);
    EXPECT_EQ(x4.derivative(3, 0.5), 12.0);
    EXPECT_EQ(x4.derivative(4, 7.0), 24.0);
    EXPECT_THROW(x4.derivative(5, 0.5), InvalidArgument);
    EXPECT_THROW(x4.derivative(-1, 0.5), InvalidArgument);
    EXPECT_THROW(x4(-0.5), DomainError);
}

TEST(SmoothFunction, MissingDerivativeIsRejected) {
    std::array<SmoothFunction::Fn, 5> d{};
    EXPECT_THROW(SmoothFunction("broken", d, Interval{0.0, 1.0}), InvalidArgument);
}

TEST(SmoothFunction, AffineCompositionAppliesChainRule) {
    const SmoothFunction& exp_fn = find_corpus_entry("exp")->function;
    const SmoothFunction g = exp_fn.compose_affine(-2.0, 1.0, "exp(1-2x)");
    // Domain [-10, 10] pulled back through x -> 1 - 2x is [-4.5, 5.5].
    EXPECT_DOUBLE_EQ(g.domain().a(), -4.5);
    EXPECT_DOUBLE_EQ(g.domain().b(), 5.5);
    const double x = 0.3;
    for (int k = 0; k <= 4; ++k) {
        EXPECT_DOUBLE_EQ(g.derivative(k, x), std::pow(-2.0, k) * std::exp(1.0 - 2.0 * x));
    }
    EXPECT_THROW(exp_fn.compose_affine(0.0, 1.0, "flat"), InvalidArgument);
}

// Central differences of eval_k match eval_{k+1} to O(h^2) on every corpus
// family. On [-3, 3], |f^(k+3)| / 6 stays below 200 max(1, |f^(k+1)|).
TEST(SmoothFunction, FiniteDifferenceConsistencyOnCorpus) {
    constexpr double h = 1e-4;
    constexpr double C = 200.0;
    for (const CorpusEntry& entry : corpus()) {
        const SmoothFunction& f = entry.function;
        const double lo = std::max(f.domain().a(), -3.0) + 2 * h;
        const double hi = std::min(f.domain().b(), 3.0) - 2 * h;
        for (int i = 0; i <= 50; ++i) {
            const double x = lo + (hi - lo) * i / 50.0;
            for (int k = 0; k < 4; ++k) {
                const double fd = (f.derivative(k, x + h) - f.derivative(k, x - h)) / (2 * h);
                const double exact = f.derivative(k + 1, x);
                EXPECT_LE(std::abs(fd - exact), C * h * h * std::max(1.0, std::abs(exact)))
                    << f.name() << " k=" << k << " x=" << x;
            }
        }
    }
}

TEST(Labels, RuleAndBoundKindStrings) {
    EXPECT_EQ(to_string(Rule::corrected_trapezoid), "corrected-trapezoid");
    EXPECT_EQ(to_string(BoundKind::trapezoid_holder_weighted), "T23");
    EXPECT_EQ(to_string(BoundKind::simpson_power_mean_q1), "C12");
    EXPECT_EQ(to_string(BoundKind::classical_simpson), "classicalSimpson");
    EXPECT_EQ(parse_rule("trapezoid"), Rule::corrected_trapezoid);
    EXPECT_EQ(parse_rule("simpson"), Rule::simpson);
    EXPECT_FALSE(parse_rule("midpoint").has_value());
    EXPECT_EQ(rule_of(BoundKind::trapezoid_holder_beta), Rule::corrected_trapezoid);
    EXPECT_EQ(rule_of(BoundKind::classical_simpson), Rule::simpson);
}

}  // namespace
}  // namespace quadcert
