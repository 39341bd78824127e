#pragma once

// JSON readers and writers for fields, rings, schemes, sheaves, jobs and reports.

#include "ncl/lfun.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace ncl {

using Json = nlohmann::ordered_json;

/// Schema version stamped on every report.
inline constexpr const char* kReportVersion = "1";

FqField field_from_json(const Json& j);
Json field_to_json(const FqField& f);

RingPtr ring_from_json(const Json& j);
Json ring_to_json(const RingPtr& r);
RingElem elem_from_json(const RingPtr& r, const Json& j);
/// Integers for Z/m, coefficient arrays otherwise; series as coefficient lists.
Json elem_to_json(const RingElem& e);
Matrix matrix_from_json(const RingPtr& r, const Json& j);
Json matrix_to_json(const Matrix& m);

/// "3*x^2*y - 1" over variables x, y, ... (or x0, x1, ...).
Polynomial poly_parse(const FqField& base, const std::vector<std::string>& vars, const std::string& text);
Polynomial poly_from_json(const FqField& base, const std::vector<std::string>& vars, const Json& j);

/// {"field": ..., "builtin": "P1"} or {"field": ..., "charts": [...]} or {"field": ..., "union": [...]}.
Scheme scheme_from_json(const Json& j);
/// "builtin:P1" with a field order.
Scheme scheme_from_spec(const std::string& spec, std::uint64_t q);

SheafRep sheaf_from_json(const Scheme& x, const Json& j, const Json& ring_fallback = Json());

Json k1_to_json(const K1Class& c);
Json verdict_to_json(const Verdict& v);
Json report_to_json(const LReport& r, bool timing = false);
Json closed_points_to_json(const Scheme& s, int max_deg);

/// Parses inline JSON text or reads a file.
Json json_load(const std::string& text_or_path);

/// (p, nu) with p^nu = q.
std::pair<std::uint32_t, int> prime_power(std::uint64_t q);

} // namespace ncl
