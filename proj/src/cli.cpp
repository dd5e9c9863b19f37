#include "pwl/cli.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "pwl/bounds.hpp"
#include "pwl/complexity.hpp"
#include "pwl/json_io.hpp"
#include "pwl/presets.hpp"

namespace pwl {

namespace {

struct UsageError : Error {
  using Error::Error;
};

struct RunConfig {
  std::string command;
  std::string preset;
  std::string input;
  std::uint64_t seed = 0;
  std::size_t cap = 1000000;
  bool override_cap = false;
  std::string box;
  int precision = kDefaultDigits;
  std::string format = "json";
  std::size_t jobs = 1;
  std::string output;
  std::string path = "auto";

  Json echo() const {
    Json j{{"command", command}, {"seed", seed}, {"cap", cap}, {"precision", precision}, {"format", format}};
    if (!preset.empty()) j["preset"] = preset;
    if (!input.empty()) j["input"] = input;
    if (!box.empty()) j["box"] = box;
    if (command == "complexity") j["path"] = path;
    if (command == "sweep") j["jobs"] = jobs;
    return j;
  }
};

struct Context {
  RunConfig cfg;
  std::ostream& out;
  std::ostream* summary;
  std::ostream& err;
  std::vector<std::string> failures;

  std::ostream& say() { return *summary; }
  void fail(std::string msg) { failures.push_back(std::move(msg)); }
};

struct Source {
  std::string label;
  std::optional<ReluNetwork> net;
  std::optional<PieceSet> pieces;
  std::optional<Arrangement> arr;
  std::optional<ClipBox> box;
};

// "lo:hi" for every coordinate, or "l1,l2:h1,h2".
ClipBox parse_box(const std::string& text, std::size_t dim) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("--box expects lo:hi or l1,...,ln:h1,...,hn");
  auto side = [&](const std::string& s) {
    QVector v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        v.push_back(parse_rational(tok));
      } catch (const Error& e) {
        throw UsageError(std::string("--box: ") + e.what());
      }
    }
    if (v.size() == 1) v.assign(dim, v.front());
    if (v.size() != dim) throw UsageError("--box: expected " + std::to_string(dim) + " coordinates");
    return v;
  };
  ClipBox b{side(text.substr(0, colon)), side(text.substr(colon + 1))};
  for (std::size_t i = 0; i < dim; ++i)
    if (!(b.lo[i] < b.hi[i])) throw UsageError("--box: lo must be below hi in every coordinate");
  return b;
}

Source load_source(const RunConfig& cfg) {
  if (cfg.preset.empty() == cfg.input.empty()) throw UsageError("give exactly one of --preset or --input");
  Source s;
  if (!cfg.preset.empty()) {
    Preset p;
    try {
      p = load_preset(cfg.preset, cfg.seed);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    s.label = p.name;
    s.net = std::move(p.network);
    s.pieces = std::move(p.pieces);
    s.arr = std::move(p.arrangement);
    s.box = std::move(p.box);
  } else {
    s.label = cfg.input;
    Json j = read_json_file(cfg.input);
    if (j.contains("box") && j.contains("network")) {
      s.box = box_from_json(j["box"]);
      j = Json(j["network"]);
    }
    if (j.contains("pieces")) {
      s.pieces = pieceset_from_json(j);
      s.box = s.pieces->box;
    } else if (j.contains("hyperplanes")) {
      s.arr = arrangement_from_json(j);
      if (s.arr->clip_box()) s.box = s.arr->clip_box();
    } else if (j.contains("family")) {
      s.net = network_from_json(j);
      if (!s.box) {
        if (s.net->fold_spec())
          s.box = ClipBox{QVector(s.net->input_dim(), 0), QVector(s.net->input_dim(), 1)};
        else
          s.box = auto_clip_box(s.net->first_layer_arrangement());
      }
    } else {
      throw ParseError(cfg.input + ": not a network, arrangement or piece set");
    }
  }
  if (!cfg.box.empty()) {
    std::size_t dim = s.net ? s.net->input_dim() : s.arr ? s.arr->dim() : s.pieces->box.lo.size();
    s.box = parse_box(cfg.box, dim);
  }
  return s;
}

EnumerationOptions enum_options(const RunConfig& cfg) { return {cfg.cap, cfg.override_cap}; }

PieceSet pieces_of(const Source& s, const RunConfig& cfg) {
  if (s.pieces) return *s.pieces;
  if (!s.net) throw UsageError("this command needs a network or a piece set, not an arrangement");
  return enumerate_pieces(*s.net, *s.box, enum_options(cfg));
}

void emit(Context& ctx, const Json& j, const std::string& csv) {
  if (ctx.cfg.output.empty()) return;
  std::string text;
  if (ctx.cfg.format == "csv") {
    text = "# config: " + ctx.cfg.echo().dump() + "\n" + csv;
  } else {
    Json full{{"config", ctx.cfg.echo()}};
    for (auto it = j.begin(); it != j.end(); ++it) full[it.key()] = it.value();
    text = full.dump(2) + "\n";
  }
  if (ctx.cfg.output == "-") {
    ctx.out << text;
    return;
  }
  std::ofstream f(ctx.cfg.output, std::ios::binary);
  if (!f) throw UsageError("cannot write " + ctx.cfg.output);
  f << text;
}

std::string class_sizes(const ComplexityReport& r) {
  std::vector<std::size_t> sizes;
  for (const auto& c : r.classes) sizes.push_back(c.size());
  std::sort(sizes.rbegin(), sizes.rend());
  std::string s;
  for (auto v : sizes) s += (s.empty() ? "" : " ") + std::to_string(v);
  return s;
}

// --- regions ---------------------------------------------------------------

void cmd_regions(Context& ctx) {
  const Source s = load_source(ctx.cfg);
  const PieceSet set = pieces_of(s, ctx.cfg);
  const bool conserved = volume_conserved(set);
  ctx.say() << "c# = " << set.pieces.size() << "\n";
  ctx.say() << "volume conserved: " << (conserved ? "yes" : "no") << "\n";
  if (set.box.lo.size() == 1) {
    std::set<Rational> cuts;
    for (const auto& p : set.pieces)
      for (const auto& v : p.vertices)
        if (v[0] != set.box.lo[0] && v[0] != set.box.hi[0]) cuts.insert(v[0]);
    std::string t;
    for (const auto& c : cuts) t += (t.empty() ? "" : ", ") + to_pq(c);
    ctx.say() << "breakpoints: " << (t.empty() ? "none" : t) << "\n";
  }
  if (!conserved) ctx.fail("piece volumes do not add up to the box volume");
  emit(ctx, to_json(set), pieces_csv(set));
}

// --- complexity ------------------------------------------------------------

void cmd_complexity(Context& ctx) {
  const Source s = load_source(ctx.cfg);
  ComplexityOptions opts;
  opts.piece_cap = ctx.cfg.cap;
  if (ctx.cfg.path == "one_dim")
    opts.path = EquivalencePath::one_dim;
  else if (ctx.cfg.path == "isometry")
    opts.path = EquivalencePath::isometry_search;
  else if (ctx.cfg.path != "auto")
    throw UsageError("--path must be auto, one_dim or isometry");

  ComplexityReport rep;
  std::optional<PieceSet> set;
  if (s.net && s.net->family() == Family::inv_shallow && opts.path == EquivalencePath::automatic) {
    rep = c_tilde_invariant_shallow(*s.net, *s.box, opts);
  } else {
    set = pieces_of(s, ctx.cfg);
    rep = c_tilde(*set, opts);
    for (const auto& w : rep.witnesses)
      if (!verify_witness(set->pieces[w.piece_i], set->pieces[w.piece_j], w.phi).ok())
        ctx.fail("witness for pieces " + std::to_string(w.piece_i) + " ~ " + std::to_string(w.piece_j) + " does not verify");
  }
  const bool agrees = std::find(rep.notes.begin(), rep.notes.end(), "direct agrees") != rep.notes.end();
  ctx.say() << "c# = " << rep.c_sharp << ", c~ = " << rep.c_tilde_text() << " (method: " << to_string(rep.method)
            << (agrees ? ", direct agrees" : "") << ")\n";
  ctx.say() << "classes: " << rep.classes.size() << " (sizes: " << class_sizes(rep) << ")\n";
  if (rep.inconclusive_pairs) ctx.say() << "inconclusive pairs: " << rep.inconclusive_pairs << "\n";

  std::ostringstream csv;
  csv << "class,size,members\n";
  for (std::size_t i = 0; i < rep.classes.size(); ++i) {
    csv << i << ',' << rep.classes[i].size() << ',';
    for (std::size_t k = 0; k < rep.classes[i].size(); ++k) csv << (k ? " " : "") << rep.classes[i][k];
    csv << '\n';
  }
  emit(ctx, {{"report", to_json(rep)}}, csv.str());
}

// --- chambers / orbits -----------------------------------------------------

Arrangement arrangement_of(const Source& s) {
  if (s.arr) return *s.arr;
  if (s.net) return s.net->first_layer_arrangement();
  throw UsageError("this command needs an arrangement or a network");
}

std::string labels_of(const Arrangement& arr, const std::vector<std::size_t>& idx) {
  std::string t;
  for (auto i : idx) t += (t.empty() ? "" : ", ") + arr.hyperplanes()[i].label;
  return t;
}

void cmd_chambers(Context& ctx) {
  const Source s = load_source(ctx.cfg);
  const Arrangement arr = arrangement_of(s);
  const bool boxed = !ctx.cfg.box.empty() || arr.clip_box().has_value();
  const auto chambers = boxed ? enumerate_chambers_in_box(arr, ctx.cfg.box.empty() ? *arr.clip_box() : *s.box)
                              : enumerate_chambers_ambient(arr);
  ctx.say() << "chambers = " << chambers.size() << (boxed ? " (in box)" : "") << "\n";
  Json j = chambers_to_json(arr, chambers);
  if (!boxed) {
    const Integer dr = count_chambers_deletion_restriction(arr);
    const bool ok = dr == Integer(chambers.size());
    ctx.say() << "deletion-restriction = " << dr << (ok ? " (agrees)" : " (DISAGREES)") << "\n";
    if (!ok) ctx.fail("enumeration and deletion-restriction disagree");
    j["deletion_restriction"] = dr.str();
  }
  const auto gp = is_general_position(arr);
  ctx.say() << "general position: " << (gp.general ? "yes" : "no");
  if (!gp.general) ctx.say() << " (violating: " << labels_of(arr, gp.violating) << ")";
  ctx.say() << "\n";
  j["general_position"] = gp.general;
  j["violating"] = gp.violating;
  emit(ctx, j, chambers_csv(arr, chambers));
}

void cmd_orbits(Context& ctx) {
  const Source s = load_source(ctx.cfg);
  const Arrangement arr = arrangement_of(s).with_clip_box(std::nullopt);
  const std::size_t n = arr.dim();
  if (n < 2) throw UsageError("orbits: the symmetric group needs dimension at least 2");
  const auto chambers = enumerate_chambers(arr);
  const auto orbits = chamber_orbits(arr, chambers, PermutationAction::symmetric_group(n));
  const auto k = orbit_count_kamiya(arr, n);
  const bool ok = Integer(orbits.size()) == k.orbits;
  ctx.say() << "chambers = " << chambers.size() << "\n";
  ctx.say() << "orbits = " << orbits.size() << " (direct), " << k.orbits << " (kamiya: |Ch(A_" << n << " u B)| = " << k.union_chambers
            << ", divided by " << n << "!)" << (ok ? "" : " DISAGREE") << "\n";
  if (!ok) ctx.fail("direct orbit count and Kamiya's formula disagree");
  std::ostringstream csv;
  csv << "orbit,size,chambers\n";
  Json list = Json::array();
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    list.push_back(orbits[i]);
    csv << i << ',' << orbits[i].size() << ',';
    for (std::size_t c = 0; c < orbits[i].size(); ++c) csv << (c ? " " : "") << orbits[i][c];
    csv << '\n';
  }
  emit(ctx,
       {{"chambers", chambers.size()}, {"orbits_direct", orbits.size()}, {"kamiya_union_chambers", k.union_chambers.str()},
        {"kamiya_orbits", k.orbits.str()}, {"orbits", list}},
       csv.str());
}

// --- bounds ----------------------------------------------------------------

struct BoundsArgs {
  std::size_t n0 = 2, n1 = 4, m = 2, n = 2, n_last = 4;
  std::vector<std::size_t> widths;
};

std::vector<BoundValue> bound_rows(const BoundsArgs& a, int digits) {
  std::vector<BoundValue> rows;
  const std::string in01 = "n0=" + std::to_string(a.n0) + ", n1=" + std::to_string(a.n1);
  rows.push_back({"schlafli", in01, Rational(schlafli(a.n0, a.n1)), Direction::exact, 0, "sum_{i<=n0} C(n1,i)"});
  if (2 * a.n0 <= a.n1) {
    const auto e = entropy_bounds_fc(a.n0, a.n1, digits);
    rows.push_back(e.lower);
    rows.push_back(e.upper);
  }
  const std::string inmn = "m=" + std::to_string(a.m) + ", n=" + std::to_string(a.n);
  rows.push_back({"b_recurrence", inmn, Rational(b_recurrence(a.m, a.n, a.n)), Direction::exact, 0, "b^n_{m,n}"});
  if (a.m >= 2) {
    rows.push_back({"alpha", "m=" + std::to_string(a.m), invariant_alpha(a.m), Direction::exact, 0, "m^m/(m-1)^(m-1)"});
    rows.push_back(invariant_upper_bound(a.m, a.n));
    if (a.n >= 1) rows.push_back(fc_entropy_lower(a.m, a.n, digits));
  }
  if (a.n >= 1 && 2 * a.m > a.n) {
    const auto lt = leading_term_lower(a.m, a.n, digits);
    rows.push_back(lt.bound);
    rows.push_back({"leading_sum", "n=" + std::to_string(a.n), lt.leading_sum, Direction::exact, 0, "sum_k C(n;k,k,n-2k)/2^k"});
  }
  if (a.n >= 1) {
    std::string w;
    for (auto x : a.widths) w += (w.empty() ? "" : ",") + std::to_string(x);
    rows.push_back({"montufar_count", "widths=(" + w + "), n=" + std::to_string(a.n) + ", n_L=" + std::to_string(a.n_last),
                    Rational(montufar_count(a.widths, a.n, a.n_last)), Direction::exact, 0,
                    "prod floor(n_i/n)^n * sum_{k<=n} C(n_L,k)"});
    rows.push_back(fc_shallow_guide(a.m, a.n, digits));
    std::vector<std::size_t> ms;
    for (auto x : a.widths) ms.push_back(x / a.n);
    if (!ms.empty()) {
      rows.push_back(deep_invariant_guide(ms, a.n, digits));
      rows.push_back(shallow_invariant_guide(ms, a.n, digits));
    }
  }
  return rows;
}

void cmd_bounds(Context& ctx, const BoundsArgs& a) {
  if (ctx.cfg.precision < 50) throw UsageError("--precision must be at least 50 digits");
  const auto rows = bound_rows(a, ctx.cfg.precision);
  const auto fine = bound_rows(a, 2 * ctx.cfg.precision);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const bool ok = rows[i].direction == Direction::lower   ? rows[i].value <= fine[i].value
                    : rows[i].direction == Direction::upper ? rows[i].value >= fine[i].value
                                                            : true;
    if (!ok) ctx.fail(rows[i].formula_id + ": direction flips at doubled precision");
  }
  std::size_t w_id = 10, w_in = 6, w_val = 5, w_dir = 9;
  for (const auto& r : rows) {
    w_dir = std::max(w_dir, to_string(r.direction).size());
    w_id = std::max(w_id, r.formula_id.size());
    w_in = std::max(w_in, r.inputs.size());
    w_val = std::max(w_val, r.text().size());
  }
  auto row = [&](const std::string& a1, const std::string& a2, const std::string& a3, const std::string& a4, const std::string& a5) {
    ctx.say() << std::left << std::setw(static_cast<int>(w_id)) << a1 << "  " << std::setw(static_cast<int>(w_in)) << a2 << "  "
              << std::setw(static_cast<int>(w_val)) << a3 << "  " << std::setw(static_cast<int>(w_dir)) << a4 << "  " << a5 << "\n";
  };
  row("formula_id", "inputs", "value", "direction", "formula");
  Json list = Json::array();
  std::ostringstream csv;
  csv << "formula_id,inputs,value,value_decimal,direction,digits,formula\n";
  for (const auto& r : rows) {
    row(r.formula_id, r.inputs, r.text(), to_string(r.direction), r.formula);
    list.push_back({{"formula_id", r.formula_id}, {"inputs", r.inputs}, {"value", to_pq(r.value)}, {"decimal", r.text(r.digits ? r.digits : 20)},
                    {"direction", to_string(r.direction)}, {"digits", r.digits}, {"formula", r.formula}});
    csv << r.formula_id << ",\"" << r.inputs << "\"," << to_pq(r.value) << ',' << r.text(12) << ",\"" << to_string(r.direction)
        << "\"," << r.digits << ",\"" << r.formula << "\"\n";
  }
  emit(ctx, {{"rows", list}}, csv.str());
}

// --- sweep -----------------------------------------------------------------

struct Range {
  std::size_t lo = 1, hi = 0;  // empty by default
};

Range parse_range(const std::string& text, const char* flag) {
  if (text.empty()) return {};
  try {
    const auto colon = text.find(':');
    if (colon == std::string::npos) return {std::stoul(text), std::stoul(text)};
    return {std::stoul(text.substr(0, colon)), std::stoul(text.substr(colon + 1))};
  } catch (const std::exception&) {
    throw UsageError(std::string(flag) + " expects a or a:b");
  }
}

struct SweepRow {
  std::string family;
  std::size_t m = 0, n = 0, L = 0;
  std::string c_sharp = "", c_tilde = "", method = "", schlafli = "", b_rec = "", inv_bound = "", inv_bound_dec = "", montufar = "";
  std::string status = "ok";
  std::vector<std::string> failures;
};

std::uint64_t cell_seed(std::uint64_t seed, const std::string& family, std::size_t m, std::size_t n, std::size_t L) {
  std::uint64_t h = seed * 1000003u + 17;
  for (char c : family) h = h * 131 + static_cast<unsigned char>(c);
  return ((h * 1009 + m) * 1009 + n) * 1009 + L;
}

void run_cell(SweepRow& row, const RunConfig& cfg) {
  const std::size_t m = row.m, n = row.n, L = row.L;
  const std::uint64_t seed = cell_seed(cfg.seed, row.family, m, n, L);
  ComplexityOptions opts;
  opts.piece_cap = cfg.cap;
  const EnumerationOptions eo{cfg.cap, cfg.override_cap};
  try {
    if (row.family == "inv" || row.family == "fc") {
      row.schlafli = schlafli(n, m * n).str();
      if (m >= 2) {
        const auto b = invariant_upper_bound(m, n);
        row.inv_bound = to_pq(b.value);
        row.inv_bound_dec = to_decimal(b.value);
      }
    }
    if (row.family == "inv") {
      row.b_rec = b_recurrence(m, n, n).str();
      const auto net = build_invariant_shallow(n, m, 1, std::nullopt, seed);
      const auto box = auto_clip_box(net.first_layer_arrangement());
      if (!cfg.override_cap && projected_piece_bound(net) > Integer(cfg.cap)) throw CapExceeded("cap");
      const auto rep = c_tilde_invariant_shallow(net, box, opts);
      row.c_sharp = std::to_string(rep.c_sharp);
      row.c_tilde = rep.c_tilde_text();
      row.method = to_string(rep.method);
      if (m >= 2 && Rational(rep.c_tilde_upper) > invariant_upper_bound(m, n).value)
        row.failures.push_back("inv m=" + std::to_string(m) + " n=" + std::to_string(n) + ": c~ exceeds the invariant upper bound");
    } else if (row.family == "fc") {
      auto net = perturb(build_fc_shallow(n, m * n, 1, std::nullopt, seed), Rational(1, 100), seed + 1);
      const auto set = enumerate_pieces(net, auto_clip_box(net.first_layer_arrangement()), eo);
      const auto rep = c_tilde(set, opts);
      row.c_sharp = std::to_string(rep.c_sharp);
      row.c_tilde = rep.c_tilde_text();
      row.method = to_string(rep.method);
    } else {
      const bool deep = row.family == "deepset";
      if (L < 1) throw UsageError("sweep: folding families need L >= 1");
      std::string spec = std::string(deep ? "deepset(" : "montufar(") + std::to_string(n);
      for (std::size_t l = 0; l < L; ++l) spec += "," + std::to_string(m);
      spec += ")";
      const auto p = load_preset(spec);
      std::vector<std::size_t> widths(L, n * m);
      const std::size_t head_units = deep ? n * default_deep_set_head().params.size() : (n == 1 ? 1 : 4);
      const Integer expected = montufar_count(widths, n, head_units);
      row.montufar = expected.str();
      if (projected_piece_bound(*p.network) > Integer(cfg.cap) && !cfg.override_cap) throw CapExceeded("cap");
      const auto set = enumerate_pieces(*p.network, *p.box, eo);
      const auto rep = c_tilde(set, opts);
      row.c_sharp = std::to_string(rep.c_sharp);
      row.c_tilde = rep.c_tilde_text();
      row.method = to_string(rep.method);
      if (Integer(set.pieces.size()) != expected)
        row.failures.push_back(spec + ": " + std::to_string(set.pieces.size()) + " pieces but the product formula gives " + expected.str());
    }
  } catch (const CapExceeded&) {
    row.status = "skipped";
    row.c_sharp = row.c_tilde = row.method = "";
  } catch (const Error& e) {
    row.status = "error";
    row.failures.push_back(row.family + " m=" + std::to_string(m) + " n=" + std::to_string(n) + ": " + e.what());
  }
}

void cmd_sweep(Context& ctx, const std::string& family, const std::string& mr, const std::string& nr, const std::string& lr) {
  static const std::set<std::string> families{"inv", "fc", "montufar", "deepset"};
  if (!families.count(family)) throw UsageError("--family must be one of inv, fc, montufar, deepset");
  const Range m = parse_range(mr, "--m"), n = parse_range(nr, "--n");
  const bool folding = family == "montufar" || family == "deepset";
  const Range L = folding ? parse_range(lr.empty() ? "1" : lr, "--L") : Range{1, 1};
  std::vector<SweepRow> rows;
  for (std::size_t a = m.lo; a <= m.hi; ++a)
    for (std::size_t b = n.lo; b <= n.hi; ++b)
      for (std::size_t c = L.lo; c <= L.hi; ++c) {
        SweepRow r;
        r.family = family;
        r.m = a;
        r.n = b;
        r.L = c;
        rows.push_back(std::move(r));
      }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < rows.size();) run_cell(rows[i], ctx.cfg);
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(ctx.cfg.jobs, rows.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::ostringstream csv;
  csv << "family,m,n,L,c_sharp,c_tilde,method,schlafli,b_recurrence,invariant_upper_bound,invariant_upper_bound_decimal,montufar_count,status\n";
  Json list = Json::array();
  for (const auto& r : rows) {
    csv << r.family << ',' << r.m << ',' << r.n << ',' << r.L << ',' << r.c_sharp << ',' << r.c_tilde << ',' << r.method << ','
        << r.schlafli << ',' << r.b_rec << ',' << r.inv_bound << ',' << r.inv_bound_dec << ',' << r.montufar << ',' << r.status << '\n';
    list.push_back({{"family", r.family}, {"m", r.m}, {"n", r.n}, {"L", r.L}, {"c_sharp", r.c_sharp}, {"c_tilde", r.c_tilde},
                    {"method", r.method}, {"schlafli", r.schlafli}, {"b_recurrence", r.b_rec}, {"invariant_upper_bound", r.inv_bound},
                    {"montufar_count", r.montufar}, {"status", r.status}});
    for (const auto& f : r.failures) ctx.fail(f);
  }
  ctx.say() << csv.str();
  emit(ctx, {{"rows", list}}, csv.str());
}

void add_common(CLI::App* sub, RunConfig& cfg, bool source = true) {
  if (source) {
    sub->add_option("--preset", cfg.preset, "named instance (see README)");
    sub->add_option("--input", cfg.input, "JSON file with a network, arrangement or piece set");
    sub->add_option("--box", cfg.box, "clip box lo:hi or l1,..,ln:h1,..,hn");
  }
  sub->add_option("--seed", cfg.seed, "seed for random instances")->default_val(0);
  sub->add_option("--cap", cfg.cap, "refuse when the projected piece count exceeds this")->default_val(1000000);
  sub->add_flag("--override-cap", cfg.override_cap, "enumerate past the cap");
  sub->add_option("--precision", cfg.precision, "significant digits for transcendental bounds")->default_val(kDefaultDigits);
  sub->add_option("--format", cfg.format, "artifact format")->check(CLI::IsMember({"json", "csv"}))->default_val("json");
  sub->add_option("--output", cfg.output, "artifact path ('-' for stdout)");
  sub->add_option("--jobs", cfg.jobs, "parallel sweep cells")->default_val(1);
}

void failure_report(Context& ctx) {
  Json j{{"status", "check_failed"}, {"config", ctx.cfg.echo()}, {"failures", ctx.failures}};
  ctx.err << j.dump() << "\n";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"pwlc: exact linear regions and refined complexity of ReLU networks"};
  app.require_subcommand(1);
  RunConfig cfg;
  BoundsArgs bargs;
  std::string family, mrange, nrange, lrange;
  std::string widths;

  auto* regions = app.add_subcommand("regions", "enumerate linear pieces and report c#");
  add_common(regions, cfg);
  auto* complexity = app.add_subcommand("complexity", "c# and c~ with the method used");
  add_common(complexity, cfg);
  complexity->add_option("--path", cfg.path, "equivalence path")->check(CLI::IsMember({"auto", "one_dim", "isometry"}));
  auto* chambers = app.add_subcommand("chambers", "chambers of an arrangement (or a first layer)");
  add_common(chambers, cfg);
  auto* orbits = app.add_subcommand("orbits", "chamber orbits under coordinate permutations");
  add_common(orbits, cfg);
  auto* bounds = app.add_subcommand("bounds", "closed-form bounds and recurrences");
  add_common(bounds, cfg, false);
  bounds->add_option("--n0", bargs.n0)->default_val(2);
  bounds->add_option("--n1", bargs.n1)->default_val(4);
  bounds->add_option("--m", bargs.m)->default_val(2);
  bounds->add_option("--n", bargs.n)->default_val(2);
  bounds->add_option("--n-last", bargs.n_last, "head width for montufar_count")->default_val(4);
  bounds->add_option("--widths", widths, "comma-separated folding widths for montufar_count")->default_val("6");
  auto* sweep = app.add_subcommand("sweep", "comparison table over a parameter grid (CSV on stdout)");
  add_common(sweep, cfg, false);
  sweep->add_option("--family", family, "inv, fc, montufar or deepset")->required();
  sweep->add_option("--m", mrange, "range a:b (blocks, hidden multiple, or parts per fold)");
  sweep->add_option("--n", nrange, "range a:b (input dimension)");
  sweep->add_option("--L", lrange, "range a:b of fold levels (folding families)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  Context ctx{cfg, out, &out, err, {}};
  ctx.cfg.command = app.get_subcommands().front()->get_name();
  if (ctx.cfg.output == "-") ctx.summary = &err;
  try {
    if (ctx.cfg.command == "regions") cmd_regions(ctx);
    else if (ctx.cfg.command == "complexity") cmd_complexity(ctx);
    else if (ctx.cfg.command == "chambers") cmd_chambers(ctx);
    else if (ctx.cfg.command == "orbits") cmd_orbits(ctx);
    else if (ctx.cfg.command == "bounds") {
      std::stringstream ss(widths);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) throw UsageError("--widths expects integers");
        bargs.widths.push_back(std::stoul(tok));
      }
      cmd_bounds(ctx, bargs);
    } else {
      cmd_sweep(ctx, family, mrange, nrange, lrange);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const CapExceeded& e) {
    err << "refused: " << e.what() << "\n";
    return kRefused;
  } catch (const Error& e) {
    ctx.fail(e.what());
  }
  if (!ctx.failures.empty()) {
    failure_report(ctx);
    return kCheckFailed;
  }
  return kOk;
}

}  // namespace pwl
