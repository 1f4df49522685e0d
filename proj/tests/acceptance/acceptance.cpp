// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. argv[1] is the path of the quadcert executable.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "quadcert/bounds.hpp"
#include "quadcert/kernels.hpp"
#include "quadcert/oracle.hpp"
#include "quadcert/qclass.hpp"
#include "quadcert/verify.hpp"
#include "test_support.hpp"

using namespace quadcert;

namespace {

struct Outcome {
    bool passed = true;
    double worst = 0.0;  // largest observed deviation, in the criterion's own measure
    std::size_t checks = 0;
    std::string detail;

    void check(bool ok, double deviation, const std::string& what = {}) {
        ++checks;
        worst = std::max(worst, deviation);
        if (!ok) {
            passed = false;
            if (detail.empty()) detail = what;
        }
    }
};

double quad(const std::function<double(double)>& g, double lo, double hi) {
    return testing::ProofIntegrals::quad(g, lo, hi);
}

Outcome check_moment_constants() {
    Outcome o;
    auto abs_check = [&](double oracle, double closed, const std::string& what) {
        const double dev = std::abs(oracle - closed);
        o.check(dev <= 1e-12, dev, what);
    };
    abs_check(quad([](double t) { return t * (1 - t) * std::abs(2 * t - 1); }, 0, 1), 1.0 / 16,
              "1/16");
    abs_check(quad([](double t) { return (1 - t) * std::abs(2 * t - 1); }, 0, 1), 0.25, "1/4");
    for (double p : {1.0, 1.5, 2.0, 3.0, 5.0}) {
        abs_check(quad([p](double t) { return std::pow(std::abs(2 * t - 1), p); }, 0, 1),
                  1 / (p + 1), "1/(p+1)");
        abs_check(quad([p](double t) { return t * (1 - t) * std::pow(std::abs(2 * t - 1), p); },
                       0, 1),
                  1 / (2 * (p + 1) * (p + 3)), "1/(2(p+1)(p+3))");
    }
    abs_check(quad([](double t) { return t * t * (0.5 - t); }, 0, 0.5), 1.0 / 192, "1/192");
    abs_check(quad([](double t) { return t * (0.5 - t); }, 0, 0.5), 1.0 / 48, "1/48");
    abs_check(quad([](double t) { return t * t * (0.5 - t) / (1 - t); }, 0, 0.5),
              17.0 / 48 - std::numbers::ln2 / 2, "17/48 - ln2/2");
    return o;
}

Outcome check_identities() {
    Outcome o;
    const Interval intervals[] = {{0, 1}, {0, 2}, {1, 3}};
    for (const char* name : {"x3", "x4", "x5", "x6", "exp"}) {
        const SmoothFunction& f = find_corpus_entry(name)->function;
        for (const Interval& iv : intervals) {
            const double et = corrected_trapezoid_error(f, iv);
            const double es = simpson_error(f, iv);
            const double rt = std::abs(et - trapezoid_identity_rhs(f, iv)) / std::max(1.0, std::abs(et));
            const double rs = std::abs(es - simpson_identity_rhs(f, iv)) / std::max(1.0, std::abs(es));
            o.check(rt <= 1e-9, rt, std::string{"trapezoid "} + name);
            o.check(rs <= 1e-9, rs, std::string{"simpson "} + name);
        }
    }
    const SmoothFunction& x4 = find_corpus_entry("x4")->function;
    const double et = std::abs(corrected_trapezoid_error(x4, {0, 1}) + 1.0 / 30);
    const double es = std::abs(simpson_error(x4, {0, 1}) + 1.0 / 120);
    o.check(et <= 1e-12, et, "E_T(x4) = -1/30");
    o.check(es <= 1e-12, es, "E_S(x4) = -1/120");
    return o;
}

Outcome check_domination() {
    Outcome o;
    const std::vector<double> grid{1.0, 1.5, 2.0, 3.0, 5.0};
    const VerificationRun run = verify_domination(grid, 1e-12);
    for (const CaseRecord& c : run.cases) o.check(c.passed, c.deviation(), c.id);
    o.check(!run.cases.empty(), 0.0, "no cases ran");
    o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(run.gated_out) + " gated out";
    return o;
}

Outcome check_consistency() {
    Outcome o;
    for (double w : {0.5, 1.0, 2.0}) {
        for (double da : {0.0, 1.0, 24.0}) {
            for (double db : {0.0, 6.0, 24.0}) {
                const EndpointDerivMagnitudes d{da, db};
                const BoundParams one{w, d, conjugate_exponent(1.0)};
                const double r1 = testing::relative_difference(trapezoid_power_mean_bound(one),
                                                               trapezoid_q1_bound(w, d));
                const double r2 = testing::relative_difference(simpson_power_mean_bound(one),
                                                               simpson_q1_bound(w, d));
                o.check(r1 <= 1e-15, r1, "T21(q=1) vs C11");
                o.check(r2 <= 1e-15, r2, "T24(q=1) vs C12");
                for (double q : {1.5, 2.0, 3.0, 5.0}) {
                    const BoundParams p{w, d, conjugate_exponent(q)};
                    const double r3 = testing::relative_difference(
                        trapezoid_holder_weighted_bound(p),
                        trapezoid_holder_weighted_bound_unsimplified(p));
                    o.check(r3 <= 1e-14, r3, "T23 forms");
                }
            }
        }
    }
    return o;
}

Outcome check_beta() {
    Outcome o;
    for (double q : {1.1, 2.0, 3.7, 5.0}) {
        const double oracle = quad([q](double t) { return std::pow(t, q - 1) * std::pow(1 - t, q); }, 0, 1);
        const double r = testing::relative_difference(beta_function(q, q + 1), oracle);
        o.check(r <= 1e-10, r, "B(q,q+1)");
    }
    const double d = std::abs(beta_function(2, 3) - 1.0 / 12);
    o.check(d <= 1e-13, d, "B(2,3)");
    return o;
}

Outcome check_bound_values() {
    Outcome o;
    const EndpointDerivMagnitudes d{0, 24};
    const BoundParams q2{1, d, conjugate_exponent(2)};
    const testing::ProofIntegrals ref1{1, 0, 24, 1}, ref2{1, 0, 24, 2};
    auto close = [&](double value, double reference, const std::string& what) {
        const double dev = std::abs(value - reference);
        o.check(dev <= 1e-7, dev, what);
    };
    close(trapezoid_q1_bound(1, d), ref1.trapezoid_power_mean(), "C11");
    close(trapezoid_power_mean_bound(q2), ref2.trapezoid_power_mean(), "T21");
    close(trapezoid_holder_beta_bound(q2), ref2.trapezoid_holder_beta(), "T22");
    close(trapezoid_holder_weighted_bound(q2), ref2.trapezoid_holder_weighted(), "T23");
    close(simpson_power_mean_bound(q2), ref2.simpson_power_mean(), "T24");
    close(simpson_q1_bound(1, d), ref1.simpson_power_mean(), "C12");
    // Headline values in closed form.
    close(trapezoid_q1_bound(1, d), 0.5, "C11 = 0.5");
    close(trapezoid_power_mean_bound(q2), 0.25, "T21 = 0.25");
    close(trapezoid_holder_beta_bound(q2), 1.0 / 3, "T22 = 1/3");
    close(trapezoid_holder_weighted_bound(q2), 1 / std::sqrt(15.0), "T23 = 1/sqrt(15)");
    close(simpson_q1_bound(1, d), 0.1137056, "C12");
    char buf[64];
    std::snprintf(buf, sizeof buf, "T24@q=2 = %.10g", simpson_power_mean_bound(q2));
    o.detail += buf;
    return o;
}

Outcome check_classical_and_hermite_hadamard() {
    Outcome o;
    const SmoothFunction& x4 = find_corpus_entry("x4")->function;
    const double sup4 = sampled_sup_fourth_derivative(x4, {0, 1});
    const double dev = std::abs(classical_simpson_bound(1, sup4).absolute -
                                std::abs(simpson_error(x4, {0, 1})));
    o.check(dev <= 1e-12, dev, "classical equality on x4");
    const VerificationRun hh = verify_hermite_hadamard(1e-12);
    for (const CaseRecord& c : hh.cases) o.check(c.passed, c.deviation(), c.id);
    return o;
}

double hat(double x) {
    if (x < 0.45 || x > 0.55) return 0.0;
    return std::max(0.0, 100.0 * (1.0 - std::abs(x - 0.5) / 0.05));
}

Outcome check_sampler() {
    Outcome o;
    const Interval unit{0, 1};
    for (const auto& g : std::vector<std::function<double(double)>>{
             [](double x) { return x; }, [](double x) { return x * x; },
             [](double x) { return std::exp(x); }, [](double) { return 0.0; },
             [](double) { return 2.5; }}) {
        o.check(test_q_membership(g, unit).passed, 0.0, "rejected a convex nonnegative g");
    }
    for (const auto& g : std::vector<std::function<double(double)>>{
             [](double) { return -1.0; }, [](double x) { return x - 0.5; },
             [](double x) { return x * x - 1e-3; }}) {
        const MembershipReport r = test_q_membership(g, unit);
        o.check(!r.passed && !r.nonneg_ok, 0.0, "accepted a negative g");
    }
    const MembershipReport spike = test_q_membership(hat, unit);
    const double again = q_class_violation(hat, spike.witness.x, spike.witness.y, spike.witness.lambda);
    o.check(!spike.passed && again > 0.0, 0.0, "no witness for the hat function");
    return o;
}

std::string capture(const std::string& command, int& status) {
    std::string output;
    FILE* pipe = popen(command.c_str(), "r");
    if (pipe == nullptr) {
        status = -1;
        return output;
    }
    std::array<char, 1 << 14> buf;
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) output.append(buf.data(), n);
    status = pclose(pipe);
    return output;
}

Outcome check_determinism(const std::string& cli) {
    Outcome o;
    if (cli.empty()) {
        o.check(false, 0.0, "no CLI path given");
        return o;
    }
    int s1 = 0, s2 = 0;
    const std::string first = capture("'" + cli + "' verify --format json", s1);
    const std::string second = capture("'" + cli + "' verify --format json", s2);
    o.check(s1 == 0 && s2 == 0, 0.0, "verify exited nonzero");
    o.check(!first.empty() && first == second, 0.0, "outputs differ");
    o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(first.size()) + " bytes";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    struct Criterion {
        const char* id;
        const char* title;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {"AC1", "moment constants reproduced by the oracle", check_moment_constants},
        {"AC2", "integral identities and x^4 error values", check_identities},
        {"AC3", "bounds dominate measured errors", check_domination},
        {"AC4", "q = 1 routing and weighted Hoelder forms agree", check_consistency},
        {"AC5", "Beta coefficients match oracle integrals", check_beta},
        {"AC6", "bound values match proof-integral evaluation", check_bound_values},
        {"AC7", "classical Simpson equality and Hermite-Hadamard", check_classical_and_hermite_hadamard},
        {"AC8", "Q(I) sampler accepts, rejects and finds witnesses", check_sampler},
        {"AC9", "verify output is byte-identical across runs", [&] { return check_determinism(cli); }},
    };

    const auto start = std::chrono::steady_clock::now();
    int failures = 0;
    for (const Criterion& c : criteria) {
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.passed = false;
            o.detail = std::string{"threw: "} + e.what();
        }
        std::printf("%s %s  %s  (checks %zu, max deviation %.3g)%s%s\n", c.id,
                    o.passed ? "PASS" : "FAIL", c.title, o.checks, o.worst,
                    o.detail.empty() ? "" : "  ", o.detail.c_str());
        if (!o.passed) ++failures;
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%d/%zu criteria passed in %.2f s\n", static_cast<int>(criteria.size()) - failures,
                criteria.size(), seconds);
    return failures == 0 ? 0 : 1;
}
