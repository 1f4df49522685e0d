#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quadcert/types.hpp"

namespace quadcert {

struct MembershipWitness {
    double x;
    double y;
    double lambda;
};

/// Result of sampling g(l x + (1-l) y) <= g(x)/l + g(y)/(1-l) on a grid.
/// `passed` only means no violation was found at this resolution.
struct MembershipReport {
    bool passed;
    std::size_t samples_tested;
    double worst_violation;  // max of lhs - rhs; negative when satisfied
    MembershipWitness witness;
    bool nonneg_ok;
};

inline constexpr std::size_t kDefaultMembershipGrid = 101;
inline constexpr std::size_t kDefaultLambdaGrid = 99;
inline constexpr double kDefaultMembershipTol = 1e-12;

/// g(lambda x + (1-lambda) y) - g(x)/lambda - g(y)/(1-lambda).
double q_class_violation(const std::function<double(double)>& g, double x, double y,
                         double lambda);

/// Samples the defining inequality of the Godunova-Levin class Q(I) over all
/// pairs of an `nx`-point uniform grid on `interval` and the interior lambda
/// grid k/(nlambda+1), k = 1..nlambda, and checks g >= 0 on the x grid.
///
/// Throws InvalidArgument when nx < 2 or nlambda < 1, NonFiniteValue when g
/// returns inf or nan.
MembershipReport test_q_membership(const std::function<double(double)>& g,
                                   const Interval& interval,
                                   std::size_t nx = kDefaultMembershipGrid,
                                   std::size_t nlambda = kDefaultLambdaGrid,
                                   double tol = kDefaultMembershipTol);

/// x -> |f'''(x)|^q.
std::function<double(double)> third_derivative_power(const SmoothFunction& f, double q);

struct CorpusEntry {
    SmoothFunction function;
    /// Where |f'''|^q is expected to lie in Q(I), in words.
    std::string membership_domain;
    /// |f'''| is nonnegative and convex on the whole domain, so |f'''|^q is
    /// in Q(I) for every q >= 1 and every subinterval.
    bool third_derivative_convex;
    bool convex;
    bool affine;
};

/// Test families with closed-form derivatives up to order four.
const std::vector<CorpusEntry>& corpus();

const CorpusEntry* find_corpus_entry(std::string_view name);

}  // namespace quadcert
