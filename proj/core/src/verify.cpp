#include "quadcert/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <tuple>

#include "quadcert/kernels.hpp"
#include "quadcert/oracle.hpp"
#include "quadcert/report.hpp"

namespace quadcert {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string interval_label(const Interval& interval) {
    return "[" + shortest_repr(interval.a()) + "," + shortest_repr(interval.b()) + "]";
}

std::vector<std::pair<std::string, double>> interval_inputs(const Interval& interval) {
    return {{"a", interval.a()}, {"b", interval.b()}};
}

// Records a case whose evaluation threw, so one bad input cannot abort a run.
CaseRecord failed_case(std::string id, std::vector<std::pair<std::string, double>> inputs,
                       Relation relation, double tolerance, const std::exception& e) {
    CaseRecord c = make_case(std::move(id), std::move(inputs), relation, kNaN, kNaN, tolerance);
    c.passed = false;
    c.note = e.what();
    return c;
}

std::vector<double> valid_sorted(std::span<const double> q_grid) {
    std::vector<double> qs;
    for (double q : q_grid) {
        if (std::isfinite(q) && q >= 1.0) qs.push_back(q);
    }
    std::sort(qs.begin(), qs.end());
    qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
    return qs;
}

EndpointDerivMagnitudes endpoint_derivs(const SmoothFunction& f, const Interval& interval) {
    return EndpointDerivMagnitudes{std::abs(f.derivative(3, interval.a())),
                                   std::abs(f.derivative(3, interval.b()))};
}

}  // namespace

std::string_view to_string(Suite suite) noexcept {
    switch (suite) {
        case Suite::identities: return "identities";
        case Suite::constants: return "constants";
        case Suite::domination: return "domination";
        case Suite::consistency: return "consistency";
        case Suite::hermite_hadamard: return "hermite_hadamard";
        case Suite::sharpness: return "sharpness";
    }
    return "unknown";
}

std::optional<Suite> parse_suite(std::string_view text) noexcept {
    for (Suite s : all_suites()) {
        if (to_string(s) == text) return s;
    }
    return std::nullopt;
}

const std::vector<Suite>& all_suites() {
    static const std::vector<Suite> suites{Suite::identities,  Suite::constants,
                                           Suite::domination,  Suite::consistency,
                                           Suite::hermite_hadamard, Suite::sharpness};
    return suites;
}

std::string_view to_string(Relation relation) noexcept {
    return relation == Relation::equal ? "eq" : "le";
}

double CaseRecord::deviation() const noexcept {
    if (!std::isfinite(observed) || !std::isfinite(expected)) {
        return std::numeric_limits<double>::infinity();
    }
    if (relation == Relation::equal) return std::abs(observed - expected);
    return std::max(0.0, observed - expected);
}

CaseRecord make_case(std::string id, std::vector<std::pair<std::string, double>> inputs,
                     Relation relation, double expected, double observed, double tolerance) {
    CaseRecord c{std::move(id), std::move(inputs), relation, expected, observed, tolerance,
                 false, {}};
    c.passed = c.deviation() <= tolerance;
    return c;
}

RunSummary VerificationRun::summary() const noexcept {
    RunSummary s{cases.size(), 0, 0, 0.0};
    for (const CaseRecord& c : cases) {
        if (c.passed) {
            ++s.passed;
        } else {
            ++s.failed;
        }
        s.max_deviation = std::max(s.max_deviation, c.deviation());
    }
    return s;
}

bool VerificationRun::passed() const noexcept {
    return std::all_of(cases.begin(), cases.end(), [](const CaseRecord& c) { return c.passed; });
}

double default_tolerance(Suite suite) noexcept {
    switch (suite) {
        case Suite::identities: return 1e-9;
        case Suite::constants: return 1e-12;
        case Suite::domination: return 1e-12;
        case Suite::consistency: return 1e-14;
        case Suite::hermite_hadamard: return 1e-12;
        case Suite::sharpness: return 1e-9;
    }
    return 1e-12;
}

VerificationRun verify_identities(double tol, const VerifyConfig& config) {
    VerificationRun run{Suite::identities, {}, 0};
    for (const CorpusEntry& entry : corpus()) {
        const SmoothFunction& f = entry.function;
        for (const Interval& interval : config.intervals) {
            if (!f.domain().contains(interval)) continue;
            const std::string where = f.name() + " " + interval_label(interval);

            using ErrorFn = double (*)(const SmoothFunction&, const Interval&, double);
            const std::tuple<const char*, ErrorFn, ErrorFn> sides[] = {
                {"trapezoid", &corrected_trapezoid_error, &trapezoid_identity_rhs},
                {"simpson", &simpson_error, &simpson_identity_rhs},
            };
            for (const auto& [label, lhs, rhs] : sides) {
                std::string id = std::string{label} + " identity " + where;
                try {
                    const double error = lhs(f, interval, config.oracle_tol);
                    const double identity = rhs(f, interval, config.oracle_tol);
                    run.cases.push_back(make_case(std::move(id), interval_inputs(interval),
                                                  Relation::equal, identity, error,
                                                  tol * std::max(1.0, std::abs(error))));
                } catch (const Error& e) {
                    run.cases.push_back(failed_case(std::move(id), interval_inputs(interval),
                                                    Relation::equal, tol, e));
                }
            }
        }
    }
    return run;
}

VerificationRun verify_constants(double tol, const VerifyConfig& config) {
    VerificationRun run{Suite::constants, {}, 0};
    const double oracle_tol = std::min(config.oracle_tol, 0.1 * tol);
    const double half[] = {0.5};
    const MomentTable m = moment_constants();

    auto check = [&](std::string id, std::vector<std::pair<std::string, double>> inputs,
                     double closed_form, const std::function<double(double)>& g, double lo,
                     double hi, std::span<const double> breaks) {
        try {
            const double value = integrate(g, lo, hi, oracle_tol, breaks).value;
            run.cases.push_back(make_case(std::move(id), std::move(inputs), Relation::equal,
                                          closed_form, value, tol));
        } catch (const Error& e) {
            run.cases.push_back(
                failed_case(std::move(id), std::move(inputs), Relation::equal, tol, e));
        }
    };

    check("int_0^1 t(1-t)|2t-1|", {}, m.trapezoid_abs,
          [](double t) { return t * (1 - t) * std::abs(2 * t - 1); }, 0.0, 1.0, half);
    check("int_0^1 t|2t-1|", {}, m.linear_abs, [](double t) { return t * std::abs(2 * t - 1); },
          0.0, 1.0, half);
    check("int_0^1 (1-t)|2t-1|", {}, m.linear_abs,
          [](double t) { return (1 - t) * std::abs(2 * t - 1); }, 0.0, 1.0, half);

    for (double p : {1.0, 1.5, 2.0, 3.0, 5.0}) {
        check("int_0^1 |2t-1|^p", {{"p", p}}, MomentTable::abs_power(p),
              [p](double t) { return std::pow(std::abs(2 * t - 1), p); }, 0.0, 1.0, half);
        check("int_0^1 t(1-t)|2t-1|^p", {{"p", p}}, MomentTable::trapezoid_abs_power(p),
              [p](double t) { return t * (1 - t) * std::pow(std::abs(2 * t - 1), p); }, 0.0, 1.0,
              half);
    }

    check("int_0^1/2 t^2(1/2-t)", {}, m.simpson_half,
          [](double t) { return t * t * (0.5 - t); }, 0.0, 0.5, {});
    check("int_1/2^1 (t-1)^2(t-1/2)", {}, m.simpson_half,
          [](double t) { return (t - 1) * (t - 1) * (t - 0.5); }, 0.5, 1.0, {});
    check("int_0^1/2 t(1/2-t)", {}, m.simpson_over_t, [](double t) { return t * (0.5 - t); },
          0.0, 0.5, {});
    check("int_1/2^1 (1-t)(t-1/2)", {}, m.simpson_over_t,
          [](double t) { return (1 - t) * (t - 0.5); }, 0.5, 1.0, {});
    check("int_0^1/2 t^2(1/2-t)/(1-t)", {}, m.simpson_over_one_minus_t,
          [](double t) { return t * t * (0.5 - t) / (1 - t); }, 0.0, 0.5, {});
    check("int_1/2^1 (t-1)^2(t-1/2)/t", {}, m.simpson_over_one_minus_t,
          [](double t) { return (t - 1) * (t - 1) * (t - 0.5) / t; }, 0.5, 1.0, {});

    for (double q : {1.1, 2.0, 3.7, 5.0}) {
        double closed = kNaN;
        try {
            closed = beta_function(q, q + 1.0);
        } catch (const Error&) {
        }
        check("B(q,q+1) vs int_0^1 t^(q-1)(1-t)^q", {{"q", q}}, closed,
              [q](double t) { return std::pow(t, q - 1.0) * std::pow(1.0 - t, q); }, 0.0, 1.0,
              {});
    }
    run.cases.push_back(make_case("B(2,3) vs 1/12", {{"x", 2.0}, {"y", 3.0}}, Relation::equal,
                                  1.0 / 12.0, beta_function(2.0, 3.0), tol));
    return run;
}

VerificationRun verify_domination(std::span<const double> q_grid, double tol,
                                  const VerifyConfig& config) {
    VerificationRun run{Suite::domination, {}, 0};
    const std::vector<double> qs = valid_sorted(q_grid);

    for (const CorpusEntry& entry : corpus()) {
        const SmoothFunction& f = entry.function;
        for (const Interval& interval : config.intervals) {
            if (!f.domain().contains(interval)) continue;
            const std::string where = f.name() + " " + interval_label(interval);

            double trapezoid_err = kNaN;
            double simpson_err = kNaN;
            std::optional<EndpointDerivMagnitudes> derivs;
            std::string setup_failure;
            try {
                trapezoid_err = corrected_trapezoid_error(f, interval, config.oracle_tol);
                simpson_err = simpson_error(f, interval, config.oracle_tol);
                derivs = endpoint_derivs(f, interval);
            } catch (const Error& e) {
                setup_failure = e.what();
            }

            for (double q : qs) {
                const MembershipReport membership =
                    test_q_membership(third_derivative_power(f, q), interval,
                                      config.membership_nx, config.membership_nlambda,
                                      config.membership_tol);
                if (!membership.passed) {
                    ++run.gated_out;
                    continue;
                }
                for (Rule rule : {Rule::corrected_trapezoid, Rule::simpson}) {
                    const double actual = std::abs(rule == Rule::simpson ? simpson_err
                                                                          : trapezoid_err);
                    for (BoundKind kind : applicable_bounds(rule, q)) {
                        std::string id = where + " q=" + shortest_repr(q) + " " +
                                         std::string{to_string(kind)};
                        auto inputs = interval_inputs(interval);
                        inputs.emplace_back("q", q);
                        if (!derivs) {
                            CaseRecord c = make_case(std::move(id), std::move(inputs),
                                                     Relation::at_most, kNaN, kNaN, tol);
                            c.note = setup_failure;
                            run.cases.push_back(std::move(c));
                            continue;
                        }
                        inputs.emplace_back("Da", derivs->at_a());
                        inputs.emplace_back("Db", derivs->at_b());
                        const BoundParams params{interval.width(), *derivs,
                                                 conjugate_exponent(q)};
                        run.cases.push_back(make_case(std::move(id), std::move(inputs),
                                                      Relation::at_most,
                                                      evaluate_bound(kind, params), actual, tol));
                    }
                }
            }
        }
    }
    return run;
}

VerificationRun verify_consistency(double tol) {
    VerificationRun run{Suite::consistency, {}, 0};
    const ExponentPair q1 = conjugate_exponent(1.0);

    auto relative_case = [&](std::string id, std::vector<std::pair<std::string, double>> inputs,
                             double expected, double observed) {
        const double scale = std::max(std::abs(expected), std::abs(observed));
        run.cases.push_back(make_case(std::move(id), std::move(inputs), Relation::equal,
                                      expected, observed, tol * scale));
    };

    for (double width : {0.5, 1.0, 2.0}) {
        for (double da : {0.0, 1.0, 24.0}) {
            for (double db : {0.0, 6.0, 24.0}) {
                const EndpointDerivMagnitudes d{da, db};
                const std::vector<std::pair<std::string, double>> inputs{
                    {"width", width}, {"Da", da}, {"Db", db}};
                const BoundParams at_one{width, d, q1};
                relative_case("T21(q=1) vs C11", inputs, trapezoid_q1_bound(width, d),
                              trapezoid_power_mean_bound(at_one));
                relative_case("T24(q=1) vs C12", inputs, simpson_q1_bound(width, d),
                              simpson_power_mean_bound(at_one));
                for (double q : {1.5, 2.0, 3.0, 5.0}) {
                    const BoundParams params{width, d, conjugate_exponent(q)};
                    auto with_q = inputs;
                    with_q.emplace_back("q", q);
                    relative_case("T23 stated vs unsimplified", std::move(with_q),
                                  trapezoid_holder_weighted_bound_unsimplified(params),
                                  trapezoid_holder_weighted_bound(params));
                }
            }
        }
    }
    return run;
}

VerificationRun verify_hermite_hadamard(double tol, const VerifyConfig& config) {
    VerificationRun run{Suite::hermite_hadamard, {}, 0};
    for (const CorpusEntry& entry : corpus()) {
        if (!entry.convex) continue;
        const SmoothFunction& f = entry.function;
        for (const Interval& interval : config.intervals) {
            if (!f.domain().contains(interval)) continue;
            const std::string where = f.name() + " " + interval_label(interval);
            try {
                const double midpoint = f(interval.midpoint());
                const double mean =
                    integrate([&](double x) { return f(x); }, interval.a(), interval.b(),
                              config.oracle_tol)
                        .value /
                    interval.width();
                const double endpoints = 0.5 * (f(interval.a()) + f(interval.b()));
                run.cases.push_back(make_case("midpoint <= mean " + where,
                                              interval_inputs(interval), Relation::at_most,
                                              mean, midpoint, tol));
                run.cases.push_back(make_case("mean <= endpoint average " + where,
                                              interval_inputs(interval), Relation::at_most,
                                              endpoints, mean, tol));
                if (entry.affine) {
                    run.cases.push_back(make_case("affine midpoint == mean " + where,
                                                  interval_inputs(interval), Relation::equal,
                                                  mean, midpoint, tol));
                    run.cases.push_back(make_case("affine mean == endpoint average " + where,
                                                  interval_inputs(interval), Relation::equal,
                                                  endpoints, mean, tol));
                }
            } catch (const Error& e) {
                run.cases.push_back(failed_case("hermite-hadamard " + where,
                                                interval_inputs(interval), Relation::at_most,
                                                tol, e));
            }
        }
    }
    return run;
}

double sampled_sup_fourth_derivative(const SmoothFunction& f, const Interval& interval) {
    constexpr int kSamples = 1000;
    double sup = 0.0;
    for (int i = 0; i <= kSamples; ++i) {
        const double x = i == kSamples ? interval.b()
                                       : interval.a() + interval.width() * i / kSamples;
        sup = std::max(sup, std::abs(f.derivative(4, x)));
    }
    return sup;
}

std::vector<BoundReport> sharpness_scan(Rule rule, const CorpusEntry& family,
                                        std::span<const Interval> intervals,
                                        std::span<const double> q_grid,
                                        const VerifyConfig& config) {
    const SmoothFunction& f = family.function;
    const std::vector<double> qs = valid_sorted(q_grid);
    std::vector<BoundReport> rows;

    auto push = [&](const Interval& interval, BoundKind kind, std::optional<double> q, double p,
                    double bound, double actual, bool verified) {
        BoundReport r{rule, kind, interval, q, p, bound, actual, 0.0, verified, false};
        if (bound > 0.0) {
            r.ratio = std::abs(actual) / bound;
        } else if (std::abs(actual) > config.oracle_tol) {
            r.ratio = std::numeric_limits<double>::infinity();
            r.flagged = true;
        }
        rows.push_back(r);
    };

    for (const Interval& interval : intervals) {
        if (!f.domain().contains(interval)) continue;
        const double actual = rule == Rule::simpson
                                  ? simpson_error(f, interval, config.oracle_tol)
                                  : corrected_trapezoid_error(f, interval, config.oracle_tol);
        const EndpointDerivMagnitudes derivs = endpoint_derivs(f, interval);
        for (double q : qs) {
            const bool verified =
                test_q_membership(third_derivative_power(f, q), interval, config.membership_nx,
                                  config.membership_nlambda, config.membership_tol)
                    .passed;
            const BoundParams params{interval.width(), derivs, conjugate_exponent(q)};
            for (BoundKind kind : applicable_bounds(rule, q)) {
                push(interval, kind, q, params.exponents().p(), evaluate_bound(kind, params),
                     actual, verified);
            }
        }
        if (rule == Rule::simpson) {
            const double sup4 = sampled_sup_fourth_derivative(f, interval);
            push(interval, BoundKind::classical_simpson, std::nullopt,
                 std::numeric_limits<double>::infinity(),
                 classical_simpson_bound(interval.width(), sup4).absolute, actual, true);
        }
    }

    std::stable_sort(rows.begin(), rows.end(), [](const BoundReport& l, const BoundReport& r) {
        const auto key = [](const BoundReport& x) {
            return std::tuple{x.interval.a(), x.interval.b(), !x.q.has_value(),
                              x.q.value_or(0.0), static_cast<int>(x.kind)};
        };
        return key(l) < key(r);
    });
    return rows;
}

VerificationRun verify_sharpness(std::span<const double> q_grid, double tol,
                                 const VerifyConfig& config) {
    VerificationRun run{Suite::sharpness, {}, 0};
    for (const CorpusEntry& entry : corpus()) {
        for (Rule rule : {Rule::corrected_trapezoid, Rule::simpson}) {
            std::vector<BoundReport> rows;
            try {
                rows = sharpness_scan(rule, entry, config.intervals, q_grid, config);
            } catch (const Error& e) {
                run.cases.push_back(failed_case(
                    entry.function.name() + " " + std::string{to_string(rule)}, {},
                    Relation::at_most, tol, e));
                continue;
            }
            for (const BoundReport& row : rows) {
                if (!row.membership_verified) {
                    ++run.gated_out;
                    continue;
                }
                std::string id = entry.function.name() + " " + interval_label(row.interval) +
                                 " " + std::string{to_string(row.kind)};
                auto inputs = interval_inputs(row.interval);
                if (row.q) {
                    id += " q=" + shortest_repr(*row.q);
                    inputs.emplace_back("q", *row.q);
                }
                CaseRecord c = make_case(std::move(id), std::move(inputs), Relation::at_most,
                                         1.0, row.ratio, tol);
                if (row.flagged) {
                    c.passed = false;
                    c.note = "bound is zero while the measured error is not";
                }
                run.cases.push_back(std::move(c));
            }
        }
    }
    return run;
}

}  // namespace quadcert
