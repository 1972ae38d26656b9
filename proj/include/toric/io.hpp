#pragma once

// JSON encodings of fans, classes, tables and reports. Integers that fit a
// machine word are JSON numbers, larger ones decimal strings; rationals are
// strings "p/q".

#include "toric/splitting.hpp"

#include "json.hpp"

#include <filesystem>
#include <string>

namespace toric {

using json = nlohmann::json;

json to_json(const Integer& v);
json to_json(const Rational& v);
json to_json(std::span<const Integer> v);
json to_json(std::span<const Rational> v);
json to_json(const DivisorClass& c);

Integer integer_from_json(const json& j);
IntVector int_vector_from_json(const json& j);

/// {"rank": n, "rays": [[..]], "max_cones": [[..]]}; throws InputError.
Fan fan_from_json(const json& j);
json fan_to_json(const Fan& f);
Fan load_fan(const std::filesystem::path& path);

json load_json(const std::filesystem::path& path);

/// Parses a JSON integer array such as "[-2]" or "[1,0]".
IntVector parse_int_vector(const std::string& text);
/// Parses "[[0],1;[1],1]": semicolon-separated (class, multiplicity) pairs.
Candidate parse_candidate(const std::string& text);

json report_to_json(const FanReport& r);

/// Array of rows {"class": [..], "h": [..]} sorted by class.
json table_to_json(const CohomologyTable& t);
CohomologyTable table_from_json(const json& j);

json terms_to_json(const ResolutionTerms& k);
json audits_to_json(const std::vector<TermAudit>& audits);
json support_to_json(const SupportReport& r);
/// Entries as {"p": -p, "q": q, "entries": [{"Eprime": [..], "dim": d}]}.
json e1_to_json(const E1Page& page);
json verdict_to_json(const Verdict& v);
json euler_to_json(const EulerReport& r);

/// Pretty-printed with a trailing newline; keys are sorted.
std::string dump(const json& j);

}  // namespace toric
