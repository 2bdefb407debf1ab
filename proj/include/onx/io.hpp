#pragma once

#include <optional>
#include <string>
#include <vector>

#include "onx/certificate.hpp"
#include "onx/error.hpp"

namespace onx {

inline constexpr int kFormatVersion = 1;

// All rationals cross the file boundary as canonical strings ("p" or "p/q",
// sign on the numerator) so files stay exact and diff-friendly.

json instance_to_json(const FiniteSpace& sp);
json instance_to_json(const BoxSpace& sp);

struct ParsedInstance {
  std::optional<FiniteSpace> finite;
  std::optional<BoxSpace> box;
  bool is_finite() const { return finite.has_value(); }
};

// Dispatches on "type": "finite" | "box". Throws invalid_input with a
// positioned detail payload on any malformed field.
ParsedInstance instance_from_json(const json& j);

json expr_to_json(const Expr& e);
Expr expr_from_json(const json& j);

json maps_to_json(const std::vector<MapTable>& tables, bool group = false,
                  bool commuting = false);
json maps_to_json(const std::vector<BoxMap>& maps);

struct ParsedMaps {
  std::vector<MapTable> tables;  // "table" entries
  std::vector<BoxMap> exprs;     // "expr" entries
  bool group = false;
  bool commuting = false;
};

// Structural parse only; bounds are checked against an instance separately.
ParsedMaps maps_from_json(const json& j);

// Model match (tables on finite, expressions on boxes), index bounds,
// variable indices, and output arity.
void validate_maps_for(const ParsedInstance& inst, const ParsedMaps& maps);

json to_json(const PointSet& s);
PointSet point_set_from_json(const json& j);
json to_json(const Box& b);
Box box_from_json(const json& j);

// Certificates round-trip losslessly: parse(serialize(c)) verifies the same.
json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const json& j);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace onx
