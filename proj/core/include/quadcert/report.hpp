#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "quadcert/bounds.hpp"
#include "quadcert/qclass.hpp"
#include "quadcert/verify.hpp"

namespace quadcert {

// Machine formats print doubles in shortest round-trip form and contain no
// timestamps, so identical inputs produce identical bytes. Non-finite values
// are written as null (JSON) or an empty field (CSV); an infinite Hoelder
// conjugate p is written as the string "inf".

/// {"runs": [{suite, cases[], summary}, ...], "passed": bool}
std::string runs_to_json(std::span<const VerificationRun> runs);
std::string runs_to_csv(std::span<const VerificationRun> runs);

/// {"family": name (when given), "rows": [...]}
std::string bound_reports_to_json(std::span<const BoundReport> rows, std::string_view family = {});
std::string bound_reports_to_csv(std::span<const BoundReport> rows);

/// {rule, width, Da, Db, rows:[{theorem, q, p, bound}], best:{theorem, q, bound}}
std::string tightest_to_json(Rule rule, double width, const EndpointDerivMagnitudes& derivs,
                             const TightestBound& result);
std::string tightest_to_csv(Rule rule, double width, const EndpointDerivMagnitudes& derivs,
                            const TightestBound& result);

/// [{name, domain:[a,b], convex, affine, third_derivative_convex,
///   expected_membership, notes}, ...]
std::string corpus_to_json(std::span<const CorpusEntry> entries);

/// Shortest decimal string that parses back to the same double.
std::string shortest_repr(double value);

}  // namespace quadcert
