#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "quadcert/bounds.hpp"
#include "quadcert/qclass.hpp"
#include "quadcert/report.hpp"
#include "quadcert/verify.hpp"

namespace quadcert::cli {

namespace {

enum class Format { json, csv, text };

/// A rejected flag value; the message names the flag.
class UsageError : public std::runtime_error {
public:
    UsageError(const std::string& flag, const std::string& what)
        : std::runtime_error(flag + ": " + what) {}
};

struct CliConfig {
    std::string format = "json";
    std::string output_path;
    bool stamp = false;

    std::string rule = "trapezoid";
    std::optional<double> width;
    std::string interval;
    std::optional<double> da;
    std::optional<double> db;
    std::optional<double> q;
    std::string q_grid;
    std::optional<double> tol;
    std::vector<std::string> suites;
    std::string family;
    std::string intervals;
};

double parse_number(const std::string& flag, const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw UsageError(flag, "'" + text + "' is not a number");
    }
    if (used != text.size() || !std::isfinite(v)) {
        throw UsageError(flag, "'" + text + "' is not a finite number");
    }
    return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) parts.push_back(item);
    return parts;
}

std::vector<double> parse_list(const std::string& flag, const std::string& text) {
    std::vector<double> values;
    for (const std::string& part : split(text, ',')) values.push_back(parse_number(flag, part));
    if (values.empty()) throw UsageError(flag, "empty list");
    return values;
}

Interval parse_interval(const std::string& flag, const std::string& text, char sep) {
    const std::vector<std::string> parts = split(text, sep);
    if (parts.size() != 2) {
        throw UsageError(flag, "expected two endpoints in '" + text + "'");
    }
    try {
        return make_interval(parse_number(flag, parts[0]), parse_number(flag, parts[1]));
    } catch (const Error& e) {
        throw UsageError(flag, std::string{e.kind()} + ": " + e.what());
    }
}

std::vector<Interval> parse_intervals(const std::string& flag, const std::string& text) {
    std::vector<Interval> out;
    for (const std::string& part : split(text, ',')) out.push_back(parse_interval(flag, part, ':'));
    if (out.empty()) throw UsageError(flag, "empty interval list");
    return out;
}

Format parse_format(const std::string& text) {
    if (text == "json") return Format::json;
    if (text == "csv") return Format::csv;
    if (text == "text") return Format::text;
    throw UsageError("--format", "expected json, csv or text, got '" + text + "'");
}

Rule parse_rule_flag(const std::string& text) {
    const auto rule = parse_rule(text);
    if (!rule) throw UsageError("--rule", "expected trapezoid or simpson, got '" + text + "'");
    return *rule;
}

double positive_tolerance(const std::string& flag, double tol) {
    if (!(tol > 0.0) || !std::isfinite(tol)) {
        throw UsageError(flag, "tolerance must be positive, got " + shortest_repr(tol));
    }
    return tol;
}

/// --tol, then QUADCERT_TOL, else nullopt (each suite uses its own default).
std::optional<double> resolve_tolerance(const CliConfig& config) {
    if (config.tol) return positive_tolerance("--tol", *config.tol);
    if (const char* env = std::getenv("QUADCERT_TOL"); env != nullptr && *env != '\0') {
        return positive_tolerance("QUADCERT_TOL", parse_number("QUADCERT_TOL", env));
    }
    return std::nullopt;
}

std::string fmt10(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string apply_stamp(const CliConfig& config, Format format, std::string report) {
    if (!config.stamp) return report;
    if (format == Format::json) {
        auto j = nlohmann::ordered_json::parse(report);
        if (j.is_object()) {
            j["generated_at"] = utc_timestamp();
        } else {
            j = nlohmann::ordered_json{{"generated_at", utc_timestamp()}, {"data", j}};
        }
        return j.dump(2) + "\n";
    }
    if (format == Format::text) return "generated at " + utc_timestamp() + "\n" + report;
    return report;  // a stamp line would break the CSV column count
}

void emit(const CliConfig& config, Format format, std::string report, std::ostream& out) {
    report = apply_stamp(config, format, std::move(report));
    if (config.output_path.empty()) {
        out << report;
        return;
    }
    std::ofstream file(config.output_path, std::ios::binary);
    if (!file) throw UsageError("--output", "cannot open '" + config.output_path + "'");
    file << report;
}

std::string bounds_text(Rule rule, double width, const EndpointDerivMagnitudes& d,
                        const TightestBound& result) {
    std::ostringstream os;
    os << "rule " << to_string(rule) << "  width " << fmt10(width) << "  Da " << fmt10(d.at_a())
       << "  Db " << fmt10(d.at_b()) << "\n";
    os << pad("theorem", 10) << pad("q", 18) << pad("p", 18) << "bound\n";
    for (const BoundRow& row : result.table) {
        os << pad(std::string{to_string(row.kind)}, 10) << pad(fmt10(row.q), 18)
           << pad(fmt10(row.p), 18) << fmt10(row.bound) << "\n";
    }
    os << "best " << to_string(result.kind) << " at q = " << fmt10(result.q)
       << ", bound = " << fmt10(result.bound) << "\n";
    return os.str();
}

int cmd_bounds(const CliConfig& config, std::ostream& out, std::ostream& err) {
    const Format format = parse_format(config.format);
    const Rule rule = parse_rule_flag(config.rule);

    double width = 0.0;
    if (config.width && !config.interval.empty()) {
        throw UsageError("--width", "give either --width or --interval, not both");
    }
    if (config.width) {
        width = *config.width;
        if (!(width > 0.0)) {
            throw UsageError("--width", "DegenerateInterval: width " + shortest_repr(width) +
                                            " must be > 0");
        }
    } else if (!config.interval.empty()) {
        width = parse_interval("--interval", config.interval, ',').width();
    } else {
        throw UsageError("--width", "required (or --interval a,b)");
    }
    if (!config.da) throw UsageError("--da", "required");
    if (!config.db) throw UsageError("--db", "required");
    if (*config.da < 0.0) throw UsageError("--da", "InvalidArgument: must be >= 0");
    if (*config.db < 0.0) throw UsageError("--db", "InvalidArgument: must be >= 0");
    const EndpointDerivMagnitudes derivs{*config.da, *config.db};

    std::vector<double> grid;
    std::string grid_flag = "--q-grid";
    if (config.q && !config.q_grid.empty()) {
        throw UsageError("--q", "give either --q or --q-grid, not both");
    }
    if (config.q) {
        grid = {*config.q};
        grid_flag = "--q";
    } else if (!config.q_grid.empty()) {
        grid = parse_list("--q-grid", config.q_grid);
    } else {
        grid = default_q_grid();
    }

    TightestBound result;
    try {
        result = tightest_bound(rule, width, derivs, grid);
    } catch (const Error& e) {
        throw UsageError(grid_flag, std::string{e.kind()} + ": " + e.what());
    }
    for (double q : result.skipped_q) {
        err << "warning: " << grid_flag << ": skipped q = " << shortest_repr(q)
            << " (InvalidExponent, need q >= 1)\n";
    }

    switch (format) {
        case Format::json: emit(config, format, tightest_to_json(rule, width, derivs, result), out); break;
        case Format::csv: emit(config, format, tightest_to_csv(rule, width, derivs, result), out); break;
        case Format::text: emit(config, format, bounds_text(rule, width, derivs, result), out); break;
    }
    return kExitOk;
}

std::string verify_text(const std::vector<VerificationRun>& runs) {
    std::ostringstream os;
    bool all = true;
    for (const VerificationRun& run : runs) {
        const RunSummary s = run.summary();
        os << pad(std::string{to_string(run.suite)}, 18) << s.passed << "/" << s.total
           << " passed  max deviation " << fmt10(s.max_deviation);
        if (run.gated_out > 0) os << "  gated out " << run.gated_out;
        os << "\n";
        for (const CaseRecord& c : run.cases) {
            if (c.passed) continue;
            os << "  FAIL " << c.id << ": observed " << fmt10(c.observed) << " "
               << (c.relation == Relation::equal ? "==" : "<=") << " " << fmt10(c.expected)
               << " within " << fmt10(c.tolerance);
            if (!c.note.empty()) os << " (" << c.note << ")";
            os << "\n";
        }
        all = all && run.passed();
    }
    os << (all ? "PASS" : "FAIL") << "\n";
    return os.str();
}

int cmd_verify(const CliConfig& config, std::ostream& out) {
    const Format format = parse_format(config.format);
    const std::optional<double> tol = resolve_tolerance(config);

    std::vector<Suite> suites;
    for (const std::string& name : config.suites) {
        if (name == "all") {
            suites = all_suites();
            break;
        }
        const auto suite = parse_suite(name);
        if (!suite) throw UsageError("--suite", "unknown suite '" + name + "'");
        suites.push_back(*suite);
    }
    if (suites.empty()) suites = all_suites();

    const std::vector<double> q_grid = config.q_grid.empty()
                                           ? std::vector<double>{1.0, 1.5, 2.0, 3.0, 5.0}
                                           : parse_list("--q-grid", config.q_grid);
    for (double q : q_grid) {
        if (q < 1.0) throw UsageError("--q-grid", "InvalidExponent: q must be >= 1");
    }
    VerifyConfig vc;
    if (!config.intervals.empty()) vc.intervals = parse_intervals("--intervals", config.intervals);

    std::vector<VerificationRun> runs;
    for (Suite suite : suites) {
        const double t = tol.value_or(default_tolerance(suite));
        switch (suite) {
            case Suite::identities: runs.push_back(verify_identities(t, vc)); break;
            case Suite::constants: runs.push_back(verify_constants(t, vc)); break;
            case Suite::domination: runs.push_back(verify_domination(q_grid, t, vc)); break;
            case Suite::consistency: runs.push_back(verify_consistency(t)); break;
            case Suite::hermite_hadamard: runs.push_back(verify_hermite_hadamard(t, vc)); break;
            case Suite::sharpness: runs.push_back(verify_sharpness(q_grid, t, vc)); break;
        }
    }

    switch (format) {
        case Format::json: emit(config, format, runs_to_json(runs), out); break;
        case Format::csv: emit(config, format, runs_to_csv(runs), out); break;
        case Format::text: emit(config, format, verify_text(runs), out); break;
    }
    const bool all = std::all_of(runs.begin(), runs.end(),
                                 [](const VerificationRun& r) { return r.passed(); });
    return all ? kExitOk : kExitVerificationFailed;
}

std::string scan_text(const std::string& family, const std::vector<BoundReport>& rows) {
    std::ostringstream os;
    os << "family " << family << "\n";
    os << pad("interval", 12) << pad("theorem", 18) << pad("q", 8) << pad("bound", 18)
       << pad("|error|", 18) << pad("ratio", 18) << "verified\n";
    for (const BoundReport& r : rows) {
        os << pad("[" + fmt10(r.interval.a()) + "," + fmt10(r.interval.b()) + "]", 12)
           << pad(std::string{to_string(r.kind)}, 18) << pad(r.q ? fmt10(*r.q) : "-", 8)
           << pad(fmt10(r.bound), 18) << pad(fmt10(std::abs(r.actual_error)), 18)
           << pad(fmt10(r.ratio), 18) << (r.membership_verified ? "yes" : "no")
           << (r.flagged ? "  FLAGGED" : "") << "\n";
    }
    return os.str();
}

int cmd_scan(const CliConfig& config, std::ostream& out) {
    const Format format = parse_format(config.format);
    const Rule rule = parse_rule_flag(config.rule);
    if (config.family.empty()) throw UsageError("--family", "required");
    const CorpusEntry* entry = find_corpus_entry(config.family);
    if (entry == nullptr) throw UsageError("--family", "unknown family '" + config.family + "'");

    const std::vector<double> q_grid =
        config.q_grid.empty() ? default_q_grid() : parse_list("--q-grid", config.q_grid);
    for (double q : q_grid) {
        if (q < 1.0) throw UsageError("--q-grid", "InvalidExponent: q must be >= 1");
    }
    VerifyConfig vc;
    if (!config.intervals.empty()) vc.intervals = parse_intervals("--intervals", config.intervals);
    if (config.tol) vc.oracle_tol = positive_tolerance("--tol", *config.tol);

    const std::vector<BoundReport> rows = sharpness_scan(rule, *entry, vc.intervals, q_grid, vc);
    switch (format) {
        case Format::json: emit(config, format, bound_reports_to_json(rows, config.family), out); break;
        case Format::csv: emit(config, format, bound_reports_to_csv(rows), out); break;
        case Format::text: emit(config, format, scan_text(config.family, rows), out); break;
    }
    return kExitOk;
}

int cmd_corpus_list(const CliConfig& config, std::ostream& out) {
    const Format format = parse_format(config.format);
    if (format != Format::json) throw UsageError("--format", "corpus list supports json only");
    emit(config, format, corpus_to_json(corpus()), out);
    return kExitOk;
}

void add_output_options(CLI::App* cmd, CliConfig& config) {
    cmd->add_option("--format", config.format, "json, csv or text")->capture_default_str();
    cmd->add_option("--output", config.output_path, "Write the report to this file");
    cmd->add_flag("--stamp", config.stamp, "Add a UTC timestamp to the report");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Certified a-priori error bounds for the corrected trapezoid and Simpson rules"};
    app.name("quadcert");
    app.require_subcommand(1);
    CliConfig config;

    auto* bounds = app.add_subcommand("bounds", "Evaluate every applicable bound and the tightest");
    bounds->add_option("--rule", config.rule, "trapezoid or simpson")->capture_default_str();
    bounds->add_option("--width", config.width, "Interval width b - a");
    bounds->add_option("--interval", config.interval, "Interval as a,b");
    bounds->add_option("--da", config.da, "|f'''(a)|");
    bounds->add_option("--db", config.db, "|f'''(b)|");
    bounds->add_option("--q", config.q, "Single exponent q >= 1");
    bounds->add_option("--q-grid", config.q_grid, "Comma-separated exponents");
    add_output_options(bounds, config);

    auto* verify = app.add_subcommand("verify", "Run verification suites");
    verify->add_option("--suite", config.suites,
                       "identities, constants, domination, consistency, hermite_hadamard, "
                       "sharpness or all (repeatable, comma-separated)")
        ->delimiter(',');
    verify->add_option("--tol", config.tol, "Tolerance (default per suite, or QUADCERT_TOL)");
    verify->add_option("--q-grid", config.q_grid, "Exponents for domination and sharpness");
    verify->add_option("--intervals", config.intervals, "Test intervals as a:b,a:b,...");
    add_output_options(verify, config);

    auto* scan = app.add_subcommand("scan", "Sharpness ratios for one corpus family");
    scan->add_option("--rule", config.rule, "trapezoid or simpson")->capture_default_str();
    scan->add_option("--family", config.family, "Corpus family name (see corpus list)");
    scan->add_option("--q-grid", config.q_grid, "Comma-separated exponents");
    scan->add_option("--intervals", config.intervals, "Intervals as a:b,a:b,...");
    scan->add_option("--tol", config.tol, "Integration tolerance");
    add_output_options(scan, config);

    auto* corpus_cmd = app.add_subcommand("corpus", "Inspect the function corpus");
    corpus_cmd->require_subcommand(1);
    auto* list = corpus_cmd->add_subcommand("list", "List corpus families as JSON");
    add_output_options(list, config);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (bounds->parsed()) return cmd_bounds(config, out, err);
        if (verify->parsed()) return cmd_verify(config, out);
        if (scan->parsed()) return cmd_scan(config, out);
        if (list->parsed()) return cmd_corpus_list(config, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.kind() << ": " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace quadcert::cli
