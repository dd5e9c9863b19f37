#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "pwl/arrangement.hpp"
#include "pwl/complexity.hpp"
#include "pwl/network.hpp"
#include "pwl/regions.hpp"

namespace pwl {

using Json = nlohmann::ordered_json;

/// Parses text, reporting "source:line:col: message" on malformed input.
Json parse_json(const std::string& text, const std::string& source = "<input>");
Json read_json_file(const std::string& path);

/// Rationals travel as "p/q" strings; integers are accepted on input.
Json to_json(const Rational& q);
Json to_json(const QVector& v);
Json to_json(const QMatrix& m);
Rational rational_from_json(const Json& j, const std::string& where);
QVector vector_from_json(const Json& j, const std::string& where);
QMatrix matrix_from_json(const Json& j, const std::string& where);

Json to_json(const ClipBox& box);
ClipBox box_from_json(const Json& j, const std::string& where = "box");

/// {dim, hyperplanes: [{label, normal, offset}], clip_box?}
Json to_json(const Arrangement& arr);
Arrangement arrangement_from_json(const Json& j);

/// {family, widths, layers: [...], fold_spec?, head?}. On input the layers
/// may be omitted when a builder form is given instead:
///   inv_shallow: {"n", "first": [{a,b,c}], "head": [[...]], "head_bias": [...]}
///   montufar_variant / deep_set: {"fold_spec", "head"}
///   fc_shallow: {"w1", "c1", "w2", "c2"}
Json to_json(const ReluNetwork& net);
ReluNetwork network_from_json(const Json& j);

Json to_json(const PieceSet& set);
PieceSet pieceset_from_json(const Json& j);

Json to_json(const ComplexityReport& r);
Json chambers_to_json(const Arrangement& arr, const std::vector<Chamber>& chambers);

/// CSV: exact "p/q" columns next to 12-digit decimals.
std::string pieces_csv(const PieceSet& set);
std::string chambers_csv(const Arrangement& arr, const std::vector<Chamber>& chambers);

}  // namespace pwl
