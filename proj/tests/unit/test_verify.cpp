#include <gtest/gtest.h>

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "quadcert/report.hpp"
#include "quadcert/verify.hpp"

namespace quadcert {
namespace {

const std::vector<double> kQGrid{1.0, 1.5, 2.0, 3.0, 5.0};

const BoundReport& find_row(const std::vector<BoundReport>& rows, BoundKind kind,
                            std::optional<double> q) {
    const auto it = std::find_if(rows.begin(), rows.end(), [&](const BoundReport& r) {
        return r.kind == kind && r.q == q;
    });
    if (it == rows.end()) throw std::runtime_error("row not found");
    return *it;
}

TEST(Suites, LabelsRoundTrip) {
    for (Suite s : all_suites()) EXPECT_EQ(parse_suite(to_string(s)), s);
    EXPECT_FALSE(parse_suite("bogus").has_value());
    EXPECT_EQ(all_suites().size(), 6u);
}

TEST(Suites, IdentitiesPass) {
    const VerificationRun run = verify_identities(default_tolerance(Suite::identities));
    EXPECT_TRUE(run.passed());
    EXPECT_GT(run.cases.size(), 0u);
}

TEST(Suites, ConstantsPass) {
    EXPECT_TRUE(verify_constants(1e-12).passed());
}

TEST(Suites, DominationPass) {
    const VerificationRun run = verify_domination(kQGrid, 1e-12);
    EXPECT_TRUE(run.passed());
    // sinpi is rejected by the sampler on some intervals.
    EXPECT_GT(run.gated_out, 0u);
}

TEST(Suites, ConsistencyPass) {
    const VerificationRun run = verify_consistency(1e-14);
    EXPECT_TRUE(run.passed());
    EXPECT_GE(run.cases.size(), 27u * 2u);
}

TEST(Suites, HermiteHadamardPass) {
    EXPECT_TRUE(verify_hermite_hadamard(1e-12).passed());
}

TEST(Suites, SharpnessPass) {
    EXPECT_TRUE(verify_sharpness(kQGrid, 1e-9).passed());
}

TEST(SharpnessScan, TrapezoidQuarticAtQOne) {
    const std::vector<Interval> unit{Interval{0, 1}};
    const std::vector<double> q1{1.0};
    const auto rows = sharpness_scan(Rule::corrected_trapezoid, *find_corpus_entry("x4"), unit, q1);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].kind, BoundKind::trapezoid_power_mean_q1);
    EXPECT_NEAR(rows[0].actual_error, -1.0 / 30.0, 1e-12);
    EXPECT_NEAR(rows[0].ratio, 1.0 / 15.0, 1e-12);
    EXPECT_TRUE(rows[0].membership_verified);
    EXPECT_FALSE(rows[0].flagged);
}

TEST(SharpnessScan, SimpsonCubicHasZeroRatio) {
    const std::vector<Interval> unit{Interval{0, 1}};
    const std::vector<double> q1{1.0};
    const auto rows = sharpness_scan(Rule::simpson, *find_corpus_entry("x3"), unit, q1);
    const BoundReport& c12 = find_row(rows, BoundKind::simpson_power_mean_q1, 1.0);
    EXPECT_NEAR(c12.ratio, 0.0, 1e-15);
}

TEST(SharpnessScan, ClassicalSimpsonAttainedByQuartic) {
    const std::vector<Interval> unit{Interval{0, 1}};
    const std::vector<double> grid{1.0, 2.0};
    const auto rows = sharpness_scan(Rule::simpson, *find_corpus_entry("x4"), unit, grid);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows.back().kind, BoundKind::classical_simpson);
    EXPECT_FALSE(rows.back().q.has_value());
    EXPECT_NEAR(rows.back().ratio, 1.0, 1e-12);
    const BoundReport& t24 = find_row(rows, BoundKind::simpson_power_mean, 2.0);
    EXPECT_NEAR(t24.ratio, (1.0 / 120.0) / 0.066821315651652212, 1e-12);
}

TEST(SharpnessScan, ZeroBoundWithZeroErrorIsNotFlagged) {
    const std::vector<Interval> iv{Interval{0, 1}, Interval{1, 3}};
    const std::vector<double> grid{1.0, 2.0};
    const auto rows = sharpness_scan(Rule::corrected_trapezoid, *find_corpus_entry("x2"), iv, grid);
    for (const BoundReport& r : rows) {
        EXPECT_EQ(r.bound, 0.0);
        EXPECT_EQ(r.ratio, 0.0);
        EXPECT_FALSE(r.flagged);
    }
}

TEST(SharpnessScan, RowsSortedAndIntervalsOutsideDomainSkipped) {
    const std::vector<Interval> iv{Interval{1, 3}, Interval{-1, 1}, Interval{0, 1}};
    const std::vector<double> grid{3.0, 1.0};
    const auto rows = sharpness_scan(Rule::simpson, *find_corpus_entry("x5"), iv, grid);
    // [-1, 1] is outside the [0, 10] domain of x5.
    for (const BoundReport& r : rows) EXPECT_GE(r.interval.a(), 0.0);
    ASSERT_EQ(rows.size(), 6u);
    EXPECT_EQ(rows[0].interval, (Interval{0, 1}));
    EXPECT_EQ(rows[0].q, 1.0);
    EXPECT_EQ(rows[1].q, 3.0);
    EXPECT_FALSE(rows[2].q.has_value());
    EXPECT_EQ(rows[3].interval, (Interval{1, 3}));
}

TEST(SharpnessScan, RatiosAtMostOneWhenMembershipHolds) {
    for (const CorpusEntry& entry : corpus()) {
        for (Rule rule : {Rule::corrected_trapezoid, Rule::simpson}) {
            const VerifyConfig cfg;
            for (const BoundReport& r : sharpness_scan(rule, entry, cfg.intervals, kQGrid)) {
                if (!r.membership_verified) continue;
                EXPECT_LE(r.ratio, 1.0 + 1e-9) << entry.function.name();
                EXPECT_GE(r.ratio, 0.0);
            }
        }
    }
}

TEST(Runs, Deterministic) {
    const std::vector<VerificationRun> first{verify_identities(1e-9), verify_consistency(1e-14)};
    const std::vector<VerificationRun> second{verify_identities(1e-9), verify_consistency(1e-14)};
    EXPECT_EQ(runs_to_json(first), runs_to_json(second));
    EXPECT_EQ(runs_to_csv(first), runs_to_csv(second));
}

TEST(Runs, FailuresAreRecordedNotThrown) {
    // A tolerance no double arithmetic can meet makes cases fail without aborting.
    VerifyConfig cfg;
    cfg.intervals = {Interval{0, 1}};
    const VerificationRun run = verify_identities(0.0, cfg);
    const RunSummary s = run.summary();
    EXPECT_EQ(s.total, run.cases.size());
    EXPECT_EQ(s.passed + s.failed, s.total);
    EXPECT_GT(s.failed, 0u);
    EXPECT_FALSE(run.passed());
    EXPECT_GT(s.max_deviation, 0.0);
}

TEST(Runs, IntervalsOutsideEveryDomainAreSkipped) {
    VerifyConfig cfg;
    cfg.intervals = {Interval{0, 1e9}};
    EXPECT_TRUE(verify_identities(1e-9, cfg).cases.empty());
}

TEST(CaseRecord, RelationsAndDeviation) {
    const CaseRecord eq = make_case("e", {}, Relation::equal, 1.0, 1.0 + 1e-10, 1e-9);
    EXPECT_TRUE(eq.passed);
    EXPECT_NEAR(eq.deviation(), 1e-10, 1e-15);
    const CaseRecord le = make_case("l", {}, Relation::at_most, 1.0, 0.5, 0.0);
    EXPECT_TRUE(le.passed);
    EXPECT_EQ(le.deviation(), 0.0);
    const CaseRecord bad = make_case("b", {}, Relation::at_most, 1.0, 1.5, 0.1);
    EXPECT_FALSE(bad.passed);
    EXPECT_NEAR(bad.deviation(), 0.5, 1e-15);
    EXPECT_FALSE(make_case("n", {}, Relation::equal, 1.0, std::nan(""), 1.0).passed);
}

TEST(Reports, JsonParsesStrictly) {
    const std::vector<VerificationRun> runs{verify_constants(1e-12), verify_consistency(1e-14)};
    const auto doc = nlohmann::json::parse(runs_to_json(runs));
    ASSERT_EQ(doc["runs"].size(), 2u);
    EXPECT_TRUE(doc["passed"].get<bool>());
    EXPECT_EQ(doc["runs"][0]["suite"], "constants");
    EXPECT_EQ(doc["runs"][0]["summary"]["total"].get<std::size_t>(),
              doc["runs"][0]["cases"].size());
}

TEST(Reports, CsvHasConstantColumnCount) {
    const std::vector<VerificationRun> runs{verify_identities(1e-9), verify_constants(1e-12)};
    const std::string csv = runs_to_csv(runs);
    std::istringstream in{csv};
    std::string line;
    std::size_t expected = 0, lines = 0;
    while (std::getline(in, line)) {
        std::size_t commas = 0;
        bool quoted = false;
        for (char ch : line) {
            if (ch == '"') quoted = !quoted;
            if (ch == ',' && !quoted) ++commas;
        }
        if (lines++ == 0) expected = commas;
        EXPECT_EQ(commas, expected) << line;
    }
    EXPECT_GT(lines, 1u);
}

TEST(Reports, BoundRowsJsonUsesTheoremLabels) {
    const std::vector<Interval> unit{Interval{0, 1}};
    const std::vector<double> grid{1.0, 2.0};
    const auto rows = sharpness_scan(Rule::simpson, *find_corpus_entry("x4"), unit, grid);
    const auto doc = nlohmann::json::parse(bound_reports_to_json(rows, "x4"));
    EXPECT_EQ(doc["family"], "x4");
    ASSERT_EQ(doc["rows"].size(), 3u);
    EXPECT_EQ(doc["rows"][0]["theorem"], "C12");
    EXPECT_EQ(doc["rows"][0]["p"], "inf");
    EXPECT_EQ(doc["rows"][1]["theorem"], "T24");
    EXPECT_EQ(doc["rows"][2]["theorem"], "classicalSimpson");
    EXPECT_TRUE(doc["rows"][2]["q"].is_null());
}

TEST(Reports, ShortestReprRoundTrips) {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, 123456789.0, -2.5}) {
        EXPECT_EQ(std::stod(shortest_repr(v)), v);
    }
}

TEST(SupFourth, QuarticAndExp) {
    EXPECT_EQ(sampled_sup_fourth_derivative(find_corpus_entry("x4")->function, {0, 1}), 24.0);
    EXPECT_DOUBLE_EQ(sampled_sup_fourth_derivative(find_corpus_entry("exp")->function, {1, 3}),
                     std::exp(3.0));
}

}  // namespace
}  // namespace quadcert
