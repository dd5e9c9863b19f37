#include <catch_amalgamated.hpp>

#include "pwl/json_io.hpp"
#include "pwl/presets.hpp"

using namespace pwl;

namespace {
Rational q(const char* s) { return parse_rational(s); }

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}
}  // namespace

TEST_CASE("rationals travel as p/q") {
  CHECK(to_json(q("-3/4")) == "-3/4");
  CHECK(rational_from_json(Json("6/8"), "x") == q("3/4"));
  CHECK(rational_from_json(Json(5), "x") == 5);
  auto msg = error_of([] { rational_from_json(Json(0.5), "layers[0].bias"); });
  CHECK(msg.find("layers[0].bias") != std::string::npos);
  CHECK(msg.find("floating-point") != std::string::npos);
  CHECK(matrix_from_json(to_json(QMatrix::identity(3)), "m") == QMatrix::identity(3));
}

TEST_CASE("parse errors carry line and column") {
  auto msg = error_of([] { parse_json("{\"a\": 1,\n  \"b\": ]}", "net.json"); });
  CHECK(msg.rfind("net.json:2:", 0) == 0);
  CHECK_THROWS_AS(parse_json("[1, 2", "x"), ParseError);
  CHECK_THROWS(read_json_file("/nonexistent/file.json"));
}

TEST_CASE("arrangement round trip") {
  auto a = *load_preset("appendixA1b_gp").arrangement;
  auto j = to_json(a);
  auto b = arrangement_from_json(j);
  REQUIRE(b.size() == a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(b.hyperplanes()[i].normal == a.hyperplanes()[i].normal);
    CHECK(b.hyperplanes()[i].offset == a.hyperplanes()[i].offset);
    CHECK(b.hyperplanes()[i].label == a.hyperplanes()[i].label);
  }
  CHECK(to_json(b).dump() == j.dump());
  auto bad = j;
  bad["hyperplanes"][0]["normal"] = Json::array({"1"});
  CHECK_THROWS(arrangement_from_json(bad));
}

TEST_CASE("network round trips preserve the function") {
  QVector x2{q("1/3"), q("2/7")};
  for (const char* name : {"appendixA2", "fc(2,3)", "montufar(2,2)", "deepset(2,2)", "inv(2,2)"}) {
    auto net = *load_preset(name).network;
    auto j = to_json(net);
    auto back = network_from_json(j);
    CHECK(back.family() == net.family());
    CHECK(back.forward(x2) == net.forward(x2));
    CHECK(to_json(back).dump() == j.dump());
  }
}

TEST_CASE("network builder forms") {
  auto inv = parse_json(R"({"family": "inv_shallow", "n": 2,
    "first": [{"a": "1", "b": "2", "c": "-1"}, {"a": "-1", "b": "1/2", "c": "1"}],
    "head": [["1", "2"]], "head_bias": ["0"]})");
  auto net = network_from_json(inv);
  CHECK(net.family() == Family::inv_shallow);
  CHECK(net.invariant_params().size() == 2);

  auto fc = parse_json(R"({"family": "fc_shallow", "w1": [["1", "0"], ["0", "1"]], "c1": ["0", "0"],
    "w2": [["1", "1"]], "c2": ["0"]})");
  auto f = network_from_json(fc);
  CHECK(f.forward({q("2"), q("-3")}) == QVector{q("2")});

  // layers contradicting the builder form are rejected
  auto mont = to_json(*load_preset("montufar(2,2)").network);
  mont["layers"][0]["bias"][0] = "7/1";
  CHECK_THROWS(network_from_json(mont));
}

TEST_CASE("piece set round trip") {
  auto p = load_preset("appendixA2");
  auto set = enumerate_pieces(*p.network, *p.box);
  auto j = to_json(set);
  auto back = pieceset_from_json(j);
  REQUIRE(back.pieces.size() == set.pieces.size());
  for (std::size_t i = 0; i < set.pieces.size(); ++i) {
    CHECK(back.pieces[i].map == set.pieces[i].map);
    CHECK(back.pieces[i].volume == set.pieces[i].volume);
    CHECK(back.pieces[i].vertices == set.pieces[i].vertices);
  }
  CHECK(to_json(back).dump() == j.dump());
  auto tampered = j;
  tampered["pieces"][0]["volume"] = "1/1";
  CHECK_THROWS(pieceset_from_json(tampered));
}

TEST_CASE("csv output") {
  auto set = *load_preset("example1").pieces;
  auto csv = pieces_csv(set);
  CHECK(csv.rfind("id,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
  auto a = *load_preset("appendixA2").arrangement;
  auto ch = enumerate_chambers(a);
  auto c = chambers_csv(a, ch);
  CHECK(std::count(c.begin(), c.end(), '\n') == 12);
  auto j = chambers_to_json(a, ch);
  CHECK(j.dump().find("H_{1,1}") != std::string::npos);
}

TEST_CASE("complexity report serializes classes and witnesses") {
  auto r = c_tilde(*load_preset("example2").pieces);
  auto j = to_json(r);
  CHECK(j["c_sharp"] == 4);
  CHECK(j.contains("classes"));
  CHECK(j.contains("witnesses"));
  CHECK(j.dump().find("one_dim_exact") != std::string::npos);
}
