#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "quadcert/bounds.hpp"
#include "quadcert/oracle.hpp"
#include "quadcert/qclass.hpp"
#include "quadcert/types.hpp"

namespace quadcert {

enum class Suite { identities, constants, domination, consistency, hermite_hadamard, sharpness };

std::string_view to_string(Suite suite) noexcept;
std::optional<Suite> parse_suite(std::string_view text) noexcept;
const std::vector<Suite>& all_suites();

/// equal:   |observed - expected| <= tolerance
/// at_most: observed <= expected + tolerance
enum class Relation { equal, at_most };

std::string_view to_string(Relation relation) noexcept;

struct CaseRecord {
    std::string id;
    std::vector<std::pair<std::string, double>> inputs;
    Relation relation;
    double expected;
    double observed;
    double tolerance;
    bool passed;
    std::string note;  // set when evaluation threw

    /// How far the case is from holding exactly (0 for a satisfied at_most).
    double deviation() const noexcept;
};

CaseRecord make_case(std::string id, std::vector<std::pair<std::string, double>> inputs,
                     Relation relation, double expected, double observed, double tolerance);

struct RunSummary {
    std::size_t total;
    std::size_t passed;
    std::size_t failed;
    double max_deviation;
};

struct VerificationRun {
    Suite suite;
    std::vector<CaseRecord> cases;
    /// Combinations left out because a hypothesis check failed (e.g. the
    /// Q(I) sampler rejected |f'''|^q); these are not failures.
    std::size_t gated_out = 0;

    RunSummary summary() const noexcept;
    bool passed() const noexcept;
};

struct VerifyConfig {
    std::vector<Interval> intervals{Interval{0.0, 1.0}, Interval{0.0, 2.0}, Interval{1.0, 3.0}};
    double oracle_tol = kDefaultOracleTol;
    std::size_t membership_nx = kDefaultMembershipGrid;
    std::size_t membership_nlambda = kDefaultLambdaGrid;
    double membership_tol = kDefaultMembershipTol;
};

/// Default tolerance of each suite when none is given.
double default_tolerance(Suite suite) noexcept;

/// Both integral identities for every corpus function and configured interval:
/// |E - rhs| <= tol * max(1, |E|).
VerificationRun verify_identities(double tol, const VerifyConfig& config = {});

/// Moment closed forms and Beta coefficients against oracle integrals,
/// |closed form - oracle| <= tol.
VerificationRun verify_constants(double tol, const VerifyConfig& config = {});

/// bound >= |actual error| - tol for every estimate whose Q(I) hypothesis the
/// sampler accepts at that q.
VerificationRun verify_domination(std::span<const double> q_grid, double tol,
                                  const VerifyConfig& config = {});

/// q = 1 routing and the two algebraic forms of the weighted Hoelder estimate
/// agree within tol (relative) over a 27-point (width, Da, Db) grid.
VerificationRun verify_consistency(double tol);

/// Midpoint <= mean <= endpoint average on convex corpus members, with
/// equality checks for affine members.
VerificationRun verify_hermite_hadamard(double tol, const VerifyConfig& config = {});

/// Ratios |actual| / bound for every (interval, q, estimate). Rows are sorted
/// by interval, then q (classical rows last), then estimate.
std::vector<BoundReport> sharpness_scan(Rule rule, const CorpusEntry& family,
                                        std::span<const Interval> intervals,
                                        std::span<const double> q_grid,
                                        const VerifyConfig& config = {});

/// Runs sharpness_scan over the corpus for both rules; every
/// membership-verified ratio must be <= 1 within tol and no row may be flagged.
VerificationRun verify_sharpness(std::span<const double> q_grid, double tol,
                                 const VerifyConfig& config = {});

/// sup |f''''| on the interval, from endpoints plus a uniform 1001-point grid.
double sampled_sup_fourth_derivative(const SmoothFunction& f, const Interval& interval);

}  // namespace quadcert
