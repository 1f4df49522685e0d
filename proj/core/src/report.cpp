#include "quadcert/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace quadcert {

namespace {

using Json = nlohmann::ordered_json;

Json number(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

Json conjugate(double p) {
    if (std::isinf(p)) return "inf";
    return number(p);
}

std::string csv_number(double v) {
    if (std::isnan(v)) return "";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return shortest_repr(v);
}

std::string csv_field(const std::string& text) {
    if (text.find_first_of(",\"\n") == std::string::npos) return text;
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json run_json(const VerificationRun& run) {
    Json cases = Json::array();
    for (const CaseRecord& c : run.cases) {
        Json inputs = Json::object();
        for (const auto& [key, value] : c.inputs) inputs[key] = number(value);
        Json jc = {
            {"id", c.id},
            {"inputs", inputs},
            {"relation", std::string{to_string(c.relation)}},
            {"expected", number(c.expected)},
            {"observed", number(c.observed)},
            {"tolerance", number(c.tolerance)},
            {"passed", c.passed},
        };
        if (!c.note.empty()) jc["note"] = c.note;
        cases.push_back(std::move(jc));
    }
    const RunSummary s = run.summary();
    return Json{
        {"suite", std::string{to_string(run.suite)}},
        {"cases", std::move(cases)},
        {"summary",
         {{"total", s.total},
          {"passed", s.passed},
          {"failed", s.failed},
          {"max_deviation", number(s.max_deviation)},
          {"gated_out", run.gated_out}}},
    };
}

}  // namespace

std::string shortest_repr(double value) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc{}) return "nan";
    return std::string(buf, end);
}

std::string runs_to_json(std::span<const VerificationRun> runs) {
    Json out = {{"runs", Json::array()}, {"passed", true}};
    bool all = true;
    for (const VerificationRun& run : runs) {
        out["runs"].push_back(run_json(run));
        all = all && run.passed();
    }
    out["passed"] = all;
    return dump(out);
}

std::string runs_to_csv(std::span<const VerificationRun> runs) {
    std::ostringstream os;
    os << "suite,id,inputs,relation,expected,observed,tolerance,passed,note\n";
    for (const VerificationRun& run : runs) {
        for (const CaseRecord& c : run.cases) {
            std::string inputs;
            for (const auto& [key, value] : c.inputs) {
                if (!inputs.empty()) inputs += ';';
                inputs += key + "=" + csv_number(value);
            }
            os << to_string(run.suite) << ',' << csv_field(c.id) << ',' << csv_field(inputs)
               << ',' << to_string(c.relation) << ',' << csv_number(c.expected) << ','
               << csv_number(c.observed) << ',' << csv_number(c.tolerance) << ','
               << (c.passed ? "true" : "false") << ',' << csv_field(c.note) << '\n';
        }
    }
    return os.str();
}

std::string bound_reports_to_json(std::span<const BoundReport> rows, std::string_view family) {
    Json out = Json::array();
    for (const BoundReport& r : rows) {
        out.push_back({
            {"rule", std::string{to_string(r.rule)}},
            {"theorem", std::string{to_string(r.kind)}},
            {"a", r.interval.a()},
            {"b", r.interval.b()},
            {"q", r.q ? number(*r.q) : Json(nullptr)},
            {"p", r.q ? conjugate(r.p) : Json(nullptr)},
            {"bound", number(r.bound)},
            {"actual_error", number(r.actual_error)},
            {"ratio", number(r.ratio)},
            {"membership_verified", r.membership_verified},
            {"flagged", r.flagged},
        });
    }
    Json wrapped = Json::object();
    if (!family.empty()) wrapped["family"] = std::string{family};
    wrapped["rows"] = std::move(out);
    return dump(wrapped);
}

std::string bound_reports_to_csv(std::span<const BoundReport> rows) {
    std::ostringstream os;
    os << "rule,theorem,a,b,q,p,bound,actual_error,ratio,membership_verified,flagged\n";
    for (const BoundReport& r : rows) {
        os << to_string(r.rule) << ',' << to_string(r.kind) << ',' << csv_number(r.interval.a())
           << ',' << csv_number(r.interval.b()) << ',' << (r.q ? csv_number(*r.q) : "") << ','
           << (r.q ? csv_number(r.p) : "") << ',' << csv_number(r.bound) << ','
           << csv_number(r.actual_error) << ',' << csv_number(r.ratio) << ','
           << (r.membership_verified ? "true" : "false") << ','
           << (r.flagged ? "true" : "false") << '\n';
    }
    return os.str();
}

std::string tightest_to_json(Rule rule, double width, const EndpointDerivMagnitudes& derivs,
                             const TightestBound& result) {
    Json rows = Json::array();
    for (const BoundRow& row : result.table) {
        rows.push_back({{"theorem", std::string{to_string(row.kind)}},
                        {"q", row.q},
                        {"p", conjugate(row.p)},
                        {"bound", number(row.bound)}});
    }
    Json out = {
        {"rule", std::string{to_string(rule)}},
        {"width", width},
        {"Da", derivs.at_a()},
        {"Db", derivs.at_b()},
        {"rows", std::move(rows)},
        {"best",
         {{"theorem", std::string{to_string(result.kind)}},
          {"q", result.q},
          {"bound", number(result.bound)}}},
    };
    if (!result.skipped_q.empty()) {
        Json skipped = Json::array();
        for (double q : result.skipped_q) skipped.push_back(number(q));
        out["skipped_q"] = std::move(skipped);
    }
    return dump(out);
}

std::string tightest_to_csv(Rule rule, double width, const EndpointDerivMagnitudes& derivs,
                            const TightestBound& result) {
    std::ostringstream os;
    os << "rule,width,Da,Db,theorem,q,p,bound,best\n";
    for (const BoundRow& row : result.table) {
        const bool best = row.kind == result.kind && row.q == result.q;
        os << to_string(rule) << ',' << csv_number(width) << ',' << csv_number(derivs.at_a())
           << ',' << csv_number(derivs.at_b()) << ',' << to_string(row.kind) << ','
           << csv_number(row.q) << ',' << csv_number(row.p) << ',' << csv_number(row.bound)
           << ',' << (best ? "true" : "false") << '\n';
    }
    return os.str();
}

std::string corpus_to_json(std::span<const CorpusEntry> entries) {
    Json out = Json::array();
    for (const CorpusEntry& e : entries) {
        const Interval& d = e.function.domain();
        out.push_back({
            {"name", e.function.name()},
            {"domain", {d.a(), d.b()}},
            {"convex", e.convex},
            {"affine", e.affine},
            {"third_derivative_convex", e.third_derivative_convex},
            {"expected_membership", e.membership_domain},
            {"notes", e.function.notes()},
        });
    }
    return dump(out);
}

}  // namespace quadcert
