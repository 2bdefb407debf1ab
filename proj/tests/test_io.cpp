#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <string>

#include "onx/engine.hpp"
#include "onx/error.hpp"
#include "onx/generators.hpp"
#include "onx/io.hpp"

using namespace onx;

namespace {

json parse(const char* text) { return json::parse(text); }

}  // namespace

TEST_CASE("finite instances round-trip bit-exactly") {
  auto b = gen_tagged_thirds(2);
  json j = instance_to_json(b.space);
  ParsedInstance p = instance_from_json(j);
  REQUIRE(p.is_finite());
  CHECK(p.finite->n() == b.space.n());
  for (int i = 0; i < b.space.n(); ++i) {
    CHECK(p.finite->label(i) == b.space.label(i));
    for (int k = 0; k < b.space.n(); ++k)
      CHECK(p.finite->d(i, k) == b.space.d(i, k));
  }
  CHECK(instance_to_json(*p.finite) == j);
}

TEST_CASE("box instances round-trip bit-exactly") {
  auto b = gen_box_contraction(3, Rat(2, 5));
  json j = instance_to_json(b.space);
  ParsedInstance p = instance_from_json(j);
  REQUIRE(!p.is_finite());
  CHECK(p.box->ambient == b.space.ambient);
  CHECK(instance_to_json(*p.box) == j);
}

TEST_CASE("hand-written instances parse") {
  json fin = parse(R"({
    "type": "finite",
    "labels": ["a", "b"],
    "matrix": [["0", "1/2"], ["1/2", "0"]]
  })");
  ParsedInstance p = instance_from_json(fin);
  REQUIRE(p.is_finite());
  CHECK(p.finite->d(0, 1) == Rat(1, 2));
  CHECK(p.finite->label(1) == "b");

  json box = parse(R"({"type": "box", "lo": ["-1", "0"], "hi": ["1", "3/2"]})");
  ParsedInstance q = instance_from_json(box);
  REQUIRE(!q.is_finite());
  CHECK(q.box->ambient.hi[1] == Rat(3, 2));
}

TEST_CASE("malformed instances are rejected with positions") {
  auto rejects = [](const char* text) {
    try {
      instance_from_json(parse(text));
      return false;
    } catch (const invalid_input& e) {
      return e.detail().is_object();
    }
  };
  CHECK(rejects(R"({"matrix": []})"));                        // no type
  CHECK(rejects(R"({"type": "widget"})"));                    // unknown type
  CHECK(rejects(R"({"type": "finite"})"));                    // no matrix
  CHECK(rejects(R"({"type": "finite", "matrix": [["0", "x"], ["1", "0"]]})"));
  CHECK(rejects(R"({"type": "finite", "matrix": [["0", "1"], ["2", "0"]]})"));  // asymmetric
  CHECK(rejects(R"({"type": "finite", "matrix": [["0", "5"], ["5", "0"], ["1", "1"]]})"));
  CHECK(rejects(R"({"type": "box", "lo": ["0"], "hi": ["-1"]})"));
  CHECK(rejects(R"({"type": "box", "lo": ["0"], "hi": ["1"], "dim": 2})"));

  // triangle violation carries the witness triple
  try {
    instance_from_json(parse(R"({
      "type": "finite",
      "matrix": [["0","1","5"],["1","0","1"],["5","1","0"]]
    })"));
    CHECK(false);
  } catch (const invalid_input& e) {
    CHECK(e.detail().contains("i"));
    CHECK(e.detail().contains("k"));
  }
}

TEST_CASE("expressions round-trip through their trees") {
  Expr e = Expr::max_of(
      Expr::add(Expr::scale(Rat(-2, 3), Expr::var(1)), Expr::constant(Rat(1, 4))),
      Expr::min_of(Expr::var(0), Expr::sub(Expr::constant(Rat(1)), Expr::var(1))));
  json j = expr_to_json(e);
  Expr back = expr_from_json(j);
  CHECK(expr_to_json(back) == j);
  for (const auto& x : {std::vector<Rat>{Rat(1, 7), Rat(-1, 3)},
                        std::vector<Rat>{Rat(0), Rat(1)}})
    CHECK(eval_point(e, x) == eval_point(back, x));

  CHECK_THROWS_AS(expr_from_json(parse(R"({"op": "pow", "args": []})")),
                  invalid_input);
  CHECK_THROWS_AS(expr_from_json(parse(R"({"op": "add", "args": [{"op": "var", "index": 0}]})")),
                  invalid_input);
}

TEST_CASE("map files carry tables, expressions, and family flags") {
  auto fin = gen_rotation3();
  json j = maps_to_json(fin.maps, true, false);
  ParsedMaps p = maps_from_json(j);
  CHECK(p.group);
  CHECK(!p.commuting);
  REQUIRE(p.tables.size() == 3);
  CHECK(p.tables[1].image == fin.maps[1].image);
  CHECK(p.tables[1].name == "rot");
  CHECK(maps_to_json(p.tables, p.group, p.commuting) == j);

  auto box = gen_box_interval_pair();
  json bj = maps_to_json(box.maps);
  ParsedMaps bp = maps_from_json(bj);
  REQUIRE(bp.exprs.size() == 2);
  CHECK(map_point(bp.exprs[0], {Rat(1, 2)}) == std::vector<Rat>{Rat(1, 6)});
  CHECK(maps_to_json(bp.exprs) == bj);
}

TEST_CASE("map validation is model- and bounds-aware") {
  ParsedInstance fin = instance_from_json(instance_to_json(gen_path(3).space));
  ParsedInstance box =
      instance_from_json(instance_to_json(gen_box_contraction(1, Rat(1, 2)).space));

  ParsedMaps tables = maps_from_json(parse(
      R"({"maps": [{"kind": "table", "images": [1, 1, 1]}]})"));
  CHECK_NOTHROW(validate_maps_for(fin, tables));
  CHECK_THROWS_AS(validate_maps_for(box, tables), invalid_input);

  ParsedMaps exprs = maps_from_json(parse(
      R"({"maps": [{"kind": "expr", "coords": [{"op": "var", "index": 0}]}]})"));
  CHECK_NOTHROW(validate_maps_for(box, exprs));
  CHECK_THROWS_AS(validate_maps_for(fin, exprs), invalid_input);

  ParsedMaps short_table = maps_from_json(parse(
      R"({"maps": [{"kind": "table", "images": [1, 1]}]})"));
  CHECK_THROWS_AS(validate_maps_for(fin, short_table), invalid_input);
  ParsedMaps oob = maps_from_json(parse(
      R"({"maps": [{"kind": "table", "images": [1, 3, 1]}]})"));
  CHECK_THROWS_AS(validate_maps_for(fin, oob), invalid_input);
  ParsedMaps badvar = maps_from_json(parse(
      R"({"maps": [{"kind": "expr", "coords": [{"op": "var", "index": 2}]}]})"));
  CHECK_THROWS_AS(validate_maps_for(box, badvar), invalid_input);
  ParsedMaps none = maps_from_json(parse(R"({"maps": []})"));
  CHECK_THROWS_AS(validate_maps_for(fin, none), invalid_input);
}

TEST_CASE("finite certificates survive the file format") {
  auto b = gen_path(5);
  Certificate cert = solve_fixed_point(b.space, b.maps, Method::Ns, EngineConfig{});
  json j = certificate_to_json(cert);
  Certificate back = certificate_from_json(j);
  CHECK(certificate_to_json(back) == j);
  CHECK(verify_certificate(b.space, b.maps, back).ok);

  auto rot = gen_rotation3();
  Certificate stall = solve_fixed_point(rot.space, rot.maps, Method::Ns, EngineConfig{});
  json js = certificate_to_json(stall);
  Certificate back2 = certificate_from_json(js);
  CHECK(certificate_to_json(back2) == js);
  CHECK(verify_certificate(rot.space, rot.maps, back2).ok);

  // tampering the serialized trace breaks verification after the round-trip
  json forged = js;
  forged["stall"]["set-witness"]["diameter"] = "2";
  CHECK(!verify_certificate(rot.space, rot.maps, certificate_from_json(forged)).ok);
}

TEST_CASE("box certificates survive the file format") {
  auto b = gen_box_interval_pair();
  Certificate cert = solve_fixed_point(b.space, b.maps, Method::Ns, EngineConfig{});
  REQUIRE(cert.outcome == Outcome::CommonFixedPoint);
  json j = certificate_to_json(cert);
  Certificate back = certificate_from_json(j);
  CHECK(certificate_to_json(back) == j);
  CHECK(verify_certificate(b.space, b.maps, back).ok);

  EngineConfig pq;
  pq.pq_p = Rat(3, 4);
  pq.pq_q = Rat(3, 4);
  auto weak = gen_box_contraction(1, Rat(15, 16));
  Certificate c2 = solve_fixed_point(weak.space, weak.maps, Method::Pq, pq);
  json j2 = certificate_to_json(c2);
  Certificate back2 = certificate_from_json(j2);
  CHECK(certificate_to_json(back2) == j2);
  CHECK(verify_certificate(weak.space, weak.maps, back2).ok);
}

TEST_CASE("certificate parsing rejects malformed payloads") {
  auto b = gen_path(3);
  json good = certificate_to_json(
      solve_fixed_point(b.space, b.maps, Method::Ns, EngineConfig{}));

  json v = good;
  v["version"] = 99;
  CHECK_THROWS_AS(certificate_from_json(v), invalid_input);
  json m = good;
  m["method"] = "zigzag";
  CHECK_THROWS_AS(certificate_from_json(m), invalid_input);
  json o = good;
  o["outcome"] = "victory";
  CHECK_THROWS_AS(certificate_from_json(o), invalid_input);
  json t = good;
  t["trace"][0]["kind"] = "leap";
  CHECK_THROWS_AS(certificate_from_json(t), invalid_input);
  json r = good;
  r["radius"] = "1/0";
  CHECK_THROWS_AS(certificate_from_json(r), invalid_input);
  json c = good;
  c["config"].erase("eps");
  CHECK_THROWS_AS(certificate_from_json(c), invalid_input);
}

TEST_CASE("files are written and read back stably") {
  std::string path = "io_test_tmp.json";
  auto b = gen_box_contraction(2, Rat(1, 3));
  json inst = instance_to_json(b.space);
  write_json_file(path, inst);
  CHECK(read_json_file(path) == inst);
  write_json_file(path, inst);
  CHECK(read_json_file(path) == inst);
  std::remove(path.c_str());

  CHECK_THROWS_AS(read_json_file("does_not_exist.json"), invalid_input);
  write_json_file(path, json::object());
  std::ofstream(path) << "{not json";
  CHECK_THROWS_AS(read_json_file(path), invalid_input);
  std::remove(path.c_str());
}
