#include "pwl/json_io.hpp"

#include <fstream>
#include <sstream>

namespace pwl {

namespace {

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(where + ": missing field '" + key + "'");
  return *it;
}

std::size_t size_from(const Json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    throw ParseError(where + ": expected a nonnegative integer");
  return j.get<std::size_t>();
}

std::string trace_text(const std::vector<std::vector<int>>& trace) {
  std::string s;
  for (std::size_t l = 0; l < trace.size(); ++l) {
    if (l) s += '|';
    for (int v : trace[l]) s += v > 0 ? '+' : '-';
  }
  return s;
}

Json trace_json(const std::vector<std::vector<int>>& trace) { return Json(trace); }

std::vector<std::vector<int>> trace_from(const Json& j, const std::string& where) {
  try {
    return j.get<std::vector<std::vector<int>>>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError(where + ": expected a list of sign lists");
  }
}

Json layer_json(const AffineLayer& l) {
  Json j;
  j["tag"] = to_string(l.tag);
  j["weight"] = to_json(l.weight);
  j["bias"] = to_json(l.bias);
  j["n"] = l.n;
  j["m_in"] = l.m_in;
  j["m_out"] = l.m_out;
  j["level"] = l.level;
  return j;
}

AffineLayer layer_from(const Json& j, const std::string& where) {
  AffineLayer l;
  l.tag = parse_layer_tag(field(j, "tag", where).get<std::string>());
  l.weight = matrix_from_json(field(j, "weight", where), where + ".weight");
  l.bias = vector_from_json(field(j, "bias", where), where + ".bias");
  if (j.contains("n")) l.n = size_from(j["n"], where + ".n");
  if (j.contains("m_in")) l.m_in = size_from(j["m_in"], where + ".m_in");
  if (j.contains("m_out")) l.m_out = size_from(j["m_out"], where + ".m_out");
  if (j.contains("level")) l.level = size_from(j["level"], where + ".level");
  return l;
}

Json params_json(const std::vector<InvariantParams>& ps) {
  Json out = Json::array();
  for (const auto& p : ps) out.push_back({{"a", to_json(p.a)}, {"b", to_json(p.b)}, {"c", to_json(p.c)}});
  return out;
}

std::vector<InvariantParams> params_from(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected a list of {a, b, c}");
  std::vector<InvariantParams> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string w = where + "[" + std::to_string(i) + "]";
    out.push_back({rational_from_json(field(j[i], "a", w), w + ".a"), rational_from_json(field(j[i], "b", w), w + ".b"),
                   rational_from_json(field(j[i], "c", w), w + ".c")});
  }
  return out;
}

Json fold_spec_json(const FoldSpec& s) {
  Json levels = Json::array();
  for (const auto& l : s.levels) {
    Json parts = Json::array();
    for (const auto& p : l.parts) parts.push_back(to_json(p));
    levels.push_back({{"width", l.width}, {"parts", parts}});
  }
  return {{"n", s.n}, {"levels", levels}};
}

FoldSpec fold_spec_from(const Json& j, const std::string& where) {
  FoldSpec s;
  s.n = size_from(field(j, "n", where), where + ".n");
  const auto& levels = field(j, "levels", where);
  if (!levels.is_array()) throw ParseError(where + ".levels: expected a list");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const std::string w = where + ".levels[" + std::to_string(i) + "]";
    FoldLevel l;
    l.width = size_from(field(levels[i], "width", w), w + ".width");
    const auto& parts = field(levels[i], "parts", w);
    if (!parts.is_array()) throw ParseError(w + ".parts: expected one list per axis");
    for (std::size_t a = 0; a < parts.size(); ++a) l.parts.push_back(vector_from_json(parts[a], w + ".parts"));
    s.levels.push_back(std::move(l));
  }
  return s;
}

Json head_json(const std::variant<std::monostate, FoldHead, DeepSetHead>& head) {
  if (auto* f = std::get_if<FoldHead>(&head))
    return {{"kind", "fold"},
            {"weight", to_json(f->weight)},
            {"bias", to_json(f->bias)},
            {"unit_weights", to_json(f->unit_weights)},
            {"passthrough", to_json(f->passthrough)},
            {"output_bias", to_json(f->output_bias)}};
  if (auto* d = std::get_if<DeepSetHead>(&head))
    return {{"kind", "deep_set"},
            {"params", params_json(d->params)},
            {"block_weights", to_json(d->block_weights)},
            {"passthrough", to_json(d->passthrough)},
            {"output_bias", to_json(d->output_bias)}};
  return nullptr;
}

Rational optional_rational(const Json& j, const char* key, const std::string& where) {
  return j.contains(key) ? rational_from_json(j[key], where + "." + key) : Rational(0);
}

FoldHead fold_head_from(const Json& j, const std::string& where) {
  FoldHead h;
  h.weight = matrix_from_json(field(j, "weight", where), where + ".weight");
  h.bias = vector_from_json(field(j, "bias", where), where + ".bias");
  h.unit_weights = vector_from_json(field(j, "unit_weights", where), where + ".unit_weights");
  h.passthrough = vector_from_json(field(j, "passthrough", where), where + ".passthrough");
  h.output_bias = optional_rational(j, "output_bias", where);
  return h;
}

DeepSetHead deep_set_head_from(const Json& j, const std::string& where) {
  DeepSetHead h;
  h.params = params_from(field(j, "params", where), where + ".params");
  h.block_weights = vector_from_json(field(j, "block_weights", where), where + ".block_weights");
  h.passthrough = optional_rational(j, "passthrough", where);
  h.output_bias = optional_rational(j, "output_bias", where);
  return h;
}

bool same_layers(const ReluNetwork& a, const std::vector<AffineLayer>& layers) {
  if (a.layers().size() != layers.size()) return false;
  for (std::size_t i = 0; i < layers.size(); ++i)
    if (!(a.layers()[i].weight == layers[i].weight) || a.layers()[i].bias != layers[i].bias) return false;
  return true;
}

Json halfspaces_json(const HPolytope& p) {
  Json out = Json::array();
  for (const auto& h : p.constraints()) out.push_back({{"normal", to_json(h.normal)}, {"offset", to_json(h.offset)}});
  return out;
}

HPolytope halfspaces_from(const Json& j, std::size_t dim, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected a list of half-spaces");
  HPolytope p(dim);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string w = where + "[" + std::to_string(i) + "]";
    HalfSpace h{vector_from_json(field(j[i], "normal", w), w + ".normal"), rational_from_json(field(j[i], "offset", w), w + ".offset")};
    if (h.normal.size() != dim) throw ParseError(w + ": normal has the wrong dimension");
    p.add(std::move(h));
  }
  return p;
}

std::string join_pq(const QVector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + to_pq(v[i]);
  return s;
}

}  // namespace

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string what = e.what();
    if (auto pos = what.find("parse error"); pos != std::string::npos) what = what.substr(pos);
    throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + what);
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path);
}

Json to_json(const Rational& q) { return to_pq(q); }

Json to_json(const QVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_pq(x));
  return out;
}

Json to_json(const QMatrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(to_json(m.row(r)));
  return out;
}

Rational rational_from_json(const Json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number_float()) throw ParseError(where + ": floating-point literal; write exact values as \"p/q\" strings");
  throw ParseError(where + ": expected a rational");
}

QVector vector_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected a list");
  QVector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(rational_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  return v;
}

QMatrix matrix_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw ParseError(where + ": expected a nonempty list of rows");
  std::vector<QVector> rows;
  for (std::size_t i = 0; i < j.size(); ++i) rows.push_back(vector_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  for (const auto& r : rows)
    if (r.size() != rows.front().size()) throw ParseError(where + ": rows have different lengths");
  return QMatrix::from_rows(rows);
}

Json to_json(const ClipBox& box) { return {{"lo", to_json(box.lo)}, {"hi", to_json(box.hi)}}; }

ClipBox box_from_json(const Json& j, const std::string& where) {
  ClipBox b{vector_from_json(field(j, "lo", where), where + ".lo"), vector_from_json(field(j, "hi", where), where + ".hi")};
  if (b.lo.size() != b.hi.size()) throw ParseError(where + ": lo and hi differ in length");
  return b;
}

Json to_json(const Arrangement& arr) {
  Json hs = Json::array();
  for (const auto& h : arr.hyperplanes())
    hs.push_back({{"label", h.label}, {"normal", to_json(h.normal)}, {"offset", to_json(h.offset)}});
  Json j{{"dim", arr.dim()}, {"hyperplanes", hs}};
  if (arr.clip_box()) j["clip_box"] = to_json(*arr.clip_box());
  return j;
}

Arrangement arrangement_from_json(const Json& j) {
  const std::size_t dim = size_from(field(j, "dim", "arrangement"), "arrangement.dim");
  const auto& hs = field(j, "hyperplanes", "arrangement");
  if (!hs.is_array()) throw ParseError("arrangement.hyperplanes: expected a list");
  std::vector<Hyperplane> out;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const std::string w = "arrangement.hyperplanes[" + std::to_string(i) + "]";
    Hyperplane h{vector_from_json(field(hs[i], "normal", w), w + ".normal"), rational_from_json(field(hs[i], "offset", w), w + ".offset"),
                 hs[i].contains("label") ? hs[i]["label"].get<std::string>() : std::string()};
    out.push_back(std::move(h));
  }
  std::optional<ClipBox> box;
  if (j.contains("clip_box") && !j["clip_box"].is_null()) box = box_from_json(j["clip_box"], "arrangement.clip_box");
  return Arrangement(dim, std::move(out), box);
}

Json to_json(const ReluNetwork& net) {
  Json layers = Json::array();
  for (const auto& l : net.layers()) layers.push_back(layer_json(l));
  Json j{{"family", to_string(net.family())}, {"widths", net.widths()}, {"layers", layers}};
  if (net.fold_spec()) {
    j["fold_spec"] = fold_spec_json(*net.fold_spec());
    j["head"] = head_json(net.head());
  }
  return j;
}

ReluNetwork network_from_json(const Json& j) {
  const std::string where = "network";
  const Family family = parse_family(field(j, "family", where).get<std::string>());
  std::optional<std::vector<AffineLayer>> layers;
  if (j.contains("layers")) {
    const auto& ls = j["layers"];
    if (!ls.is_array()) throw ParseError("network.layers: expected a list");
    layers.emplace();
    for (std::size_t i = 0; i < ls.size(); ++i) layers->push_back(layer_from(ls[i], "network.layers[" + std::to_string(i) + "]"));
  }

  if (j.contains("fold_spec")) {
    const FoldSpec spec = fold_spec_from(j["fold_spec"], "network.fold_spec");
    const auto& head = field(j, "head", where);
    ReluNetwork net;
    if (family == Family::montufar_variant)
      net = build_montufar_variant(spec, fold_head_from(head, "network.head"));
    else if (family == Family::deep_set)
      net = build_deep_set_variant(spec, deep_set_head_from(head, "network.head"));
    else
      throw ParseError("network.fold_spec: only montufar_variant and deep_set networks fold");
    if (layers && !same_layers(net, *layers)) throw ParseError("network.layers: disagree with the layers built from fold_spec and head");
    return net;
  }
  if (layers) return ReluNetwork(family, std::move(*layers));

  if (family == Family::inv_shallow) {
    const std::size_t n = size_from(field(j, "n", where), "network.n");
    InvariantWeights w;
    w.first = params_from(field(j, "first", where), "network.first");
    w.head = matrix_from_json(field(j, "head", where), "network.head");
    w.head_bias = j.contains("head_bias") ? vector_from_json(j["head_bias"], "network.head_bias") : QVector(w.head.rows());
    return build_invariant_shallow(n, w.first.size(), w.head.rows(), w);
  }
  if (family == Family::fc_shallow) {
    FcWeights w{matrix_from_json(field(j, "w1", where), "network.w1"), vector_from_json(field(j, "c1", where), "network.c1"),
                matrix_from_json(field(j, "w2", where), "network.w2"), vector_from_json(field(j, "c2", where), "network.c2")};
    return build_fc_shallow(w.w1.cols(), w.w1.rows(), w.w2.rows(), w);
  }
  throw ParseError("network: missing field 'layers'");
}

Json to_json(const PieceSet& set) {
  Json pieces = Json::array();
  for (std::size_t i = 0; i < set.pieces.size(); ++i) {
    const auto& p = set.pieces[i];
    Json cells = Json::array();
    for (const auto& c : p.cells)
      cells.push_back({{"trace", trace_json(c.trace)}, {"witness", to_json(c.witness)}, {"constraints", halfspaces_json(c.region)}});
    Json verts = Json::array();
    for (const auto& v : p.vertices) verts.push_back(to_json(v));
    pieces.push_back({{"id", i},
                      {"convex", p.convex},
                      {"volume", to_json(p.volume)},
                      {"trace", trace_json(p.trace)},
                      {"map", {{"matrix", to_json(p.map.matrix)}, {"offset", to_json(p.map.offset)}}},
                      {"vertices", verts},
                      {"cells", cells}});
  }
  return {{"source", set.source}, {"box", to_json(set.box)}, {"pieces", pieces}};
}

PieceSet pieceset_from_json(const Json& j) {
  PieceSet set;
  set.source = j.contains("source") ? j["source"].get<std::string>() : std::string();
  set.box = box_from_json(field(j, "box", "pieces"), "pieces.box");
  const std::size_t dim = set.box.lo.size();
  const auto& ps = field(j, "pieces", "pieces");
  if (!ps.is_array()) throw ParseError("pieces.pieces: expected a list");
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const std::string w = "pieces[" + std::to_string(i) + "]";
    LinearPiece p;
    p.convex = field(ps[i], "convex", w).get<bool>();
    p.trace = trace_from(field(ps[i], "trace", w), w + ".trace");
    const auto& map = field(ps[i], "map", w);
    p.map = {matrix_from_json(field(map, "matrix", w + ".map"), w + ".map.matrix"),
             vector_from_json(field(map, "offset", w + ".map"), w + ".map.offset")};
    const auto& cells = field(ps[i], "cells", w);
    if (!cells.is_array() || cells.empty()) throw ParseError(w + ".cells: expected a nonempty list");
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const std::string wc = w + ".cells[" + std::to_string(c) + "]";
      p.cells.push_back(Cell{halfspaces_from(field(cells[c], "constraints", wc), dim, wc + ".constraints"),
                             vector_from_json(field(cells[c], "witness", wc), wc + ".witness"),
                             trace_from(field(cells[c], "trace", wc), wc + ".trace")});
    }
    p.region = p.cells.front().region;
    finalize_piece(p);
    if (ps[i].contains("volume") && rational_from_json(ps[i]["volume"], w + ".volume") != p.volume)
      throw ParseError(w + ".volume: stored volume disagrees with the cells");
    set.pieces.push_back(std::move(p));
  }
  return set;
}

Json to_json(const ComplexityReport& r) {
  Json classes = Json::array();
  for (const auto& c : r.classes) classes.push_back(c);
  Json witnesses = Json::array();
  for (const auto& w : r.witnesses)
    witnesses.push_back({{"piece_i", w.piece_i},
                         {"piece_j", w.piece_j},
                         {"A", to_json(w.phi.a)},
                         {"b", to_json(w.phi.b)},
                         {"region_mapped", w.region_mapped},
                         {"function_composed", w.function_composed}});
  return {{"c_sharp", r.c_sharp},
          {"c_tilde", r.c_tilde_text()},
          {"c_tilde_lower", r.c_tilde_lower},
          {"c_tilde_upper", r.c_tilde_upper},
          {"exact", r.exact()},
          {"method", to_string(r.method)},
          {"inconclusive_pairs", r.inconclusive_pairs},
          {"classes", classes},
          {"witnesses", witnesses},
          {"notes", r.notes}};
}

Json chambers_to_json(const Arrangement& arr, const std::vector<Chamber>& chambers) {
  Json labels = Json::array();
  for (const auto& h : arr.hyperplanes()) labels.push_back(h.label);
  Json out = Json::array();
  for (std::size_t i = 0; i < chambers.size(); ++i)
    out.push_back({{"id", i}, {"signs", chambers[i].signs}, {"witness", to_json(chambers[i].witness)}});
  return {{"dim", arr.dim()}, {"labels", labels}, {"count", chambers.size()}, {"chambers", out}};
}

std::string pieces_csv(const PieceSet& set) {
  std::ostringstream os;
  os << "id,convex,cells,vertices,volume,volume_decimal,trace,matrix,offset\n";
  for (std::size_t i = 0; i < set.pieces.size(); ++i) {
    const auto& p = set.pieces[i];
    std::string rows;
    for (std::size_t r = 0; r < p.map.matrix.rows(); ++r) rows += (r ? ";" : "") + join_pq(p.map.matrix.row(r));
    os << i << ',' << (p.convex ? "true" : "false") << ',' << p.cells.size() << ',' << p.vertices.size() << ','
       << to_pq(p.volume) << ',' << to_decimal(p.volume) << ',' << trace_text(p.trace) << ',' << rows << ','
       << join_pq(p.map.offset) << '\n';
  }
  return os.str();
}

std::string chambers_csv(const Arrangement& arr, const std::vector<Chamber>& chambers) {
  std::ostringstream os;
  os << "id,signs";
  for (std::size_t c = 0; c < arr.dim(); ++c) os << ",x" << c + 1 << ",x" << c + 1 << "_decimal";
  os << '\n';
  for (std::size_t i = 0; i < chambers.size(); ++i) {
    std::string s;
    for (int v : chambers[i].signs) s += v > 0 ? '+' : '-';
    os << i << ',' << s;
    for (const auto& x : chambers[i].witness) os << ',' << to_pq(x) << ',' << to_decimal(x);
    os << '\n';
  }
  return os.str();
}

}  // namespace pwl
