#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "speclab/bundle.hpp"
#include "speclab/speclab.hpp"
#include "speclab/subbundle.hpp"

namespace speclab {

using Json = nlohmann::ordered_json;

/// Malformed input. The message starts with the path of the offending
/// field, e.g. "gluings[0].matrix[1]: expected 2 entries".
class InputError : public Error {
 public:
  using Error::Error;
};

/// Parses JSON text, reporting syntax errors with line and column.
Json parse_json_text(const std::string& text, std::string_view source_name = "input");

Json curve_to_json(const TreeCurve& curve);
TreeCurve curve_from_json(const Json& j);

Json splitting_to_json(const SplittingType& st);
SplittingType splitting_from_json(const Json& j, const std::string& path = "splitting");

Json multidegree_to_json(const TreeCurve& curve, const Multidegree& md);
Multidegree multidegree_from_json(const TreeCurve& curve, const Json& j, const std::string& path = "multidegree");

Json bundle_to_json(const GluedBundle& bundle);
GluedBundle bundle_from_json(const Json& j);

Json enlargement_to_json(const Enlargement& f);
Enlargement enlargement_from_json(const Json& j);

Json subbundle_to_json(const LineSubbundle& sub);
LineSubbundle subbundle_from_json(const Json& j);

Json certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const Json& j);

/// "v1:-2,v2:3"; unmentioned components are 0. Empty text is the zero twist.
Multidegree parse_multidegree_flag(const TreeCurve& curve, std::string_view text);

/// "3,1".
SplittingType parse_splitting_flag(std::string_view text);

}  // namespace speclab
