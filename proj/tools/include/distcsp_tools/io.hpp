#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "distcsp/analysis.hpp"
#include "distcsp/endomorphism.hpp"
#include "distcsp/model.hpp"
#include "distcsp/polymorphism.hpp"
#include "distcsp/solver.hpp"

namespace distcsp::io {

using json = nlohmann::json;

/// Schema violations and malformed JSON. The message carries the offending
/// path (e.g. "$.relations[0].tuples[2]") or the parser's line/column.
class ParseError : public InputError {
public:
    using InputError::InputError;
};

Template parse_template(std::string_view text);
/// Validates against `t`: unknown relations and arity mismatches are
/// reported with the constraint path.
Instance parse_instance(std::string_view text, const Template& t);
Assignment parse_assignment(std::string_view text);

/// Canonical template document: relations in template order, tuples sorted.
json template_to_json(const Template& t);
json instance_to_json(const Instance& inst);
json assignment_to_json(const Assignment& a);

/// "p=<int>; values=<v0,...>; drift=<+1|-1|0>"
PeriodicMapSpec parse_periodic_spec(std::string_view text);
std::string format_periodic_spec(const PeriodicMapSpec& spec);

json analysis_to_json(const AnalysisReport& r);
json stats_to_json(const SolveStats& s, const Verdict& v);
std::string_view verdict_name(VerdictKind k);
json classification_to_json(const EndoClassification& c);

/// Pretty-printed with sorted keys and a trailing newline.
std::string serialize_report(const json& report);

std::string read_file(const std::string& path);

} // namespace distcsp::io
