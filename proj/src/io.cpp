#include "onx/io.hpp"

#include <fstream>
#include <sstream>
#include <utility>

namespace onx {

namespace {

[[noreturn]] void bad(const std::string& what, const std::string& at) {
  throw invalid_input(what, {{"at", at}});
}

const json& need(const json& j, const char* key, const std::string& at) {
  if (!j.is_object() || !j.contains(key)) bad("missing field", at + key);
  return j.at(key);
}

std::string as_string(const json& j, const std::string& at) {
  if (!j.is_string()) bad("expected a string", at);
  return j.get<std::string>();
}

Rat as_rat(const json& j, const std::string& at) {
  if (!j.is_string()) bad("expected a rational string", at);
  try {
    return rat_from_string(j.get<std::string>());
  } catch (const invalid_input&) {
    bad("malformed rational", at);
  }
}

long as_long(const json& j, const std::string& at) {
  if (!j.is_number_integer()) bad("expected an integer", at);
  return j.get<long>();
}

int as_int(const json& j, const std::string& at) {
  return static_cast<int>(as_long(j, at));
}

bool as_bool(const json& j, const std::string& at) {
  if (!j.is_boolean()) bad("expected a boolean", at);
  return j.get<bool>();
}

const json& need_array(const json& j, const std::string& at) {
  if (!j.is_array()) bad("expected an array", at);
  return j;
}

json rats_to_json(const std::vector<Rat>& v) {
  json a = json::array();
  for (const auto& r : v) a.push_back(rat_to_string(r));
  return a;
}

std::vector<Rat> rats_from_json(const json& j, const std::string& at) {
  need_array(j, at);
  std::vector<Rat> v;
  for (std::size_t i = 0; i < j.size(); ++i)
    v.push_back(as_rat(j[i], at + "[" + std::to_string(i) + "]"));
  return v;
}

}  // namespace

json instance_to_json(const FiniteSpace& sp) {
  json labels = json::array();
  json matrix = json::array();
  for (int i = 0; i < sp.n(); ++i) {
    labels.push_back(sp.label(i));
    json row = json::array();
    for (int j = 0; j < sp.n(); ++j) row.push_back(rat_to_string(sp.d(i, j)));
    matrix.push_back(std::move(row));
  }
  return {{"type", "finite"}, {"labels", std::move(labels)},
          {"matrix", std::move(matrix)}};
}

json instance_to_json(const BoxSpace& sp) {
  return {{"type", "box"},
          {"dim", sp.dim()},
          {"lo", rats_to_json(sp.ambient.lo)},
          {"hi", rats_to_json(sp.ambient.hi)}};
}

ParsedInstance instance_from_json(const json& j) {
  std::string type = as_string(need(j, "type", ""), "type");
  ParsedInstance out;
  if (type == "finite") {
    const json& matrix = need_array(need(j, "matrix", ""), "matrix");
    std::vector<std::vector<Rat>> d;
    for (std::size_t i = 0; i < matrix.size(); ++i)
      d.push_back(rats_from_json(matrix[i], "matrix[" + std::to_string(i) + "]"));
    std::vector<std::string> labels;
    if (j.contains("labels")) {
      const json& ls = need_array(j.at("labels"), "labels");
      for (std::size_t i = 0; i < ls.size(); ++i)
        labels.push_back(as_string(ls[i], "labels[" + std::to_string(i) + "]"));
    }
    out.finite = FiniteSpace::build(std::move(labels), std::move(d));
    return out;
  }
  if (type == "box") {
    Box b = make_box(rats_from_json(need(j, "lo", ""), "lo"),
                     rats_from_json(need(j, "hi", ""), "hi"));
    if (j.contains("dim") && as_int(j.at("dim"), "dim") != b.dim())
      bad("dim disagrees with lo/hi length", "dim");
    out.box = make_box_space(std::move(b));
    return out;
  }
  bad("unknown instance type", "type");
}

json expr_to_json(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Const:
      return {{"op", "const"}, {"value", rat_to_string(e.value())}};
    case Expr::Kind::Var:
      return {{"op", "var"}, {"index", e.index()}};
    case Expr::Kind::Add:
      return {{"op", "add"},
              {"args", json::array({expr_to_json(e.left()), expr_to_json(e.right())})}};
    case Expr::Kind::Sub:
      return {{"op", "sub"},
              {"args", json::array({expr_to_json(e.left()), expr_to_json(e.right())})}};
    case Expr::Kind::Scale:
      return {{"op", "scale"},
              {"factor", rat_to_string(e.value())},
              {"arg", expr_to_json(e.child())}};
    case Expr::Kind::Max:
      return {{"op", "max"},
              {"args", json::array({expr_to_json(e.left()), expr_to_json(e.right())})}};
    case Expr::Kind::Min:
      return {{"op", "min"},
              {"args", json::array({expr_to_json(e.left()), expr_to_json(e.right())})}};
  }
  throw invalid_input("unreachable expression kind");
}

namespace {

Expr expr_from(const json& j, const std::string& at) {
  std::string op = as_string(need(j, "op", at + "."), at + ".op");
  if (op == "const") return Expr::constant(as_rat(need(j, "value", at + "."), at + ".value"));
  if (op == "var") return Expr::var(as_int(need(j, "index", at + "."), at + ".index"));
  if (op == "scale")
    return Expr::scale(as_rat(need(j, "factor", at + "."), at + ".factor"),
                       expr_from(need(j, "arg", at + "."), at + ".arg"));
  if (op == "add" || op == "sub" || op == "max" || op == "min") {
    const json& args = need_array(need(j, "args", at + "."), at + ".args");
    if (args.size() != 2) bad("expected two operands", at + ".args");
    Expr l = expr_from(args[0], at + ".args[0]");
    Expr r = expr_from(args[1], at + ".args[1]");
    if (op == "add") return Expr::add(std::move(l), std::move(r));
    if (op == "sub") return Expr::sub(std::move(l), std::move(r));
    if (op == "max") return Expr::max_of(std::move(l), std::move(r));
    return Expr::min_of(std::move(l), std::move(r));
  }
  bad("unknown expression op", at + ".op");
}

}  // namespace

Expr expr_from_json(const json& j) { return expr_from(j, "expr"); }

json maps_to_json(const std::vector<MapTable>& tables, bool group,
                  bool commuting) {
  json arr = json::array();
  for (const auto& t : tables)
    arr.push_back({{"kind", "table"}, {"name", t.name}, {"images", t.image}});
  return {{"maps", std::move(arr)}, {"group", group}, {"commuting", commuting}};
}

json maps_to_json(const std::vector<BoxMap>& maps) {
  json arr = json::array();
  for (const auto& m : maps) {
    json coords = json::array();
    for (const auto& e : m.coords) coords.push_back(expr_to_json(e));
    arr.push_back({{"kind", "expr"}, {"coords", std::move(coords)}});
  }
  return {{"maps", std::move(arr)}, {"group", false}, {"commuting", false}};
}

ParsedMaps maps_from_json(const json& j) {
  ParsedMaps out;
  const json& arr = need_array(need(j, "maps", ""), "maps");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    std::string at = "maps[" + std::to_string(i) + "]";
    const json& m = arr[i];
    std::string kind = as_string(need(m, "kind", at + "."), at + ".kind");
    if (kind == "table") {
      const json& imgs = need_array(need(m, "images", at + "."), at + ".images");
      std::vector<int> image;
      for (std::size_t k = 0; k < imgs.size(); ++k)
        image.push_back(as_int(imgs[k], at + ".images[" + std::to_string(k) + "]"));
      std::string name = m.contains("name")
                             ? as_string(m.at("name"), at + ".name")
                             : "t" + std::to_string(i);
      out.tables.push_back(MapTable{std::move(image), std::move(name)});
    } else if (kind == "expr") {
      const json& cs = need_array(need(m, "coords", at + "."), at + ".coords");
      std::vector<Expr> coords;
      for (std::size_t k = 0; k < cs.size(); ++k)
        coords.push_back(expr_from(cs[k], at + ".coords[" + std::to_string(k) + "]"));
      out.exprs.push_back(BoxMap{std::move(coords)});
    } else {
      bad("unknown map kind", at + ".kind");
    }
  }
  if (j.contains("group")) out.group = as_bool(j.at("group"), "group");
  if (j.contains("commuting")) out.commuting = as_bool(j.at("commuting"), "commuting");
  return out;
}

void validate_maps_for(const ParsedInstance& inst, const ParsedMaps& maps) {
  if (inst.is_finite()) {
    if (!maps.exprs.empty())
      throw invalid_input("expression maps require a box instance");
    if (maps.tables.empty()) throw invalid_input("empty map family");
    for (std::size_t i = 0; i < maps.tables.size(); ++i)
      validate_map(maps.tables[i], inst.finite->n());
    return;
  }
  if (!maps.tables.empty())
    throw invalid_input("table maps require a finite instance");
  if (maps.exprs.empty()) throw invalid_input("empty map family");
  int dim = inst.box->dim();
  for (std::size_t i = 0; i < maps.exprs.size(); ++i) {
    const BoxMap& m = maps.exprs[i];
    if (m.out_dim() != dim)
      throw invalid_input("map arity disagrees with the instance",
                          {{"map", i}, {"out_dim", m.out_dim()}, {"dim", dim}});
    for (const auto& e : m.coords)
      if (e.max_var() >= dim)
        throw invalid_input("variable index out of range",
                            {{"map", i}, {"max_var", e.max_var()}, {"dim", dim}});
  }
}

json to_json(const PointSet& s) {
  json members = json::array();
  for (int e : s.elements()) members.push_back(e);
  return {{"universe", s.universe()}, {"members", std::move(members)}};
}

PointSet point_set_from_json(const json& j) {
  int n = as_int(need(j, "universe", "set."), "set.universe");
  if (n < 0) bad("negative universe", "set.universe");
  PointSet s(n);
  const json& ms = need_array(need(j, "members", "set."), "set.members");
  for (std::size_t i = 0; i < ms.size(); ++i) {
    int e = as_int(ms[i], "set.members[" + std::to_string(i) + "]");
    if (e < 0 || e >= n) bad("member out of range", "set.members");
    s.add(e);
  }
  return s;
}

json to_json(const Box& b) {
  return {{"lo", rats_to_json(b.lo)}, {"hi", rats_to_json(b.hi)}};
}

Box box_from_json(const json& j) {
  return make_box(rats_from_json(need(j, "lo", "box."), "box.lo"),
                  rats_from_json(need(j, "hi", "box."), "box.hi"));
}

namespace {

json set_repr_to_json(const SetRepr& r) {
  if (std::holds_alternative<PointSet>(r)) {
    json j = to_json(std::get<PointSet>(r));
    j["kind"] = "points";
    return j;
  }
  json j = to_json(std::get<Box>(r));
  j["kind"] = "box";
  return j;
}

SetRepr set_repr_from_json(const json& j, const std::string& at) {
  std::string kind = as_string(need(j, "kind", at + "."), at + ".kind");
  if (kind == "points") return point_set_from_json(j);
  if (kind == "box") return box_from_json(j);
  bad("unknown set kind", at + ".kind");
}

json point_repr_to_json(const PointRepr& p) {
  if (std::holds_alternative<int>(p)) return std::get<int>(p);
  return rats_to_json(std::get<std::vector<Rat>>(p));
}

PointRepr point_repr_from_json(const json& j, const std::string& at) {
  if (j.is_number_integer()) return j.get<int>();
  if (j.is_array()) return rats_from_json(j, at);
  bad("expected a point index or coordinate array", at);
}

json olr_to_json(const OlrReport& o) {
  json j{{"holds", o.holds}, {"points-checked", o.points_checked}};
  if (o.cex_point) j["cex-point"] = *o.cex_point;
  if (o.cex_meet) j["cex-meet"] = to_json(*o.cex_meet);
  return j;
}

OlrReport olr_from_json(const json& j) {
  OlrReport o;
  o.holds = as_bool(need(j, "holds", "olr."), "olr.holds");
  o.points_checked = as_long(need(j, "points-checked", "olr."), "olr.points-checked");
  if (j.contains("cex-point")) o.cex_point = as_int(j.at("cex-point"), "olr.cex-point");
  if (j.contains("cex-meet")) o.cex_meet = point_set_from_json(j.at("cex-meet"));
  return o;
}

json stall_to_json(const StallInfo& s) {
  json j{{"reason", s.reason}};
  if (!s.note.empty()) j["note"] = s.note;
  if (s.witness_member) j["witness-member"] = *s.witness_member;
  if (s.ns_witness) {
    j["set-witness"] = {{"set", to_json(s.ns_witness->set)},
                        {"diameter", rat_to_string(s.ns_witness->diameter)},
                        {"radii", rats_to_json(s.ns_witness->radii)}};
  }
  if (s.pq_witness) {
    json w{{"set", to_json(s.pq_witness->set)},
           {"diameter", rat_to_string(s.pq_witness->diameter)},
           {"stage", s.pq_witness->stage}};
    if (s.pq_witness->hull) w["hull"] = to_json(*s.pq_witness->hull);
    if (s.pq_witness->second) w["second"] = to_json(*s.pq_witness->second);
    j["stage-witness"] = std::move(w);
  }
  if (s.box_pq_witness) {
    json w{{"set", to_json(s.box_pq_witness->set)},
           {"diameter", rat_to_string(s.box_pq_witness->diameter)},
           {"stage", s.box_pq_witness->stage}};
    if (s.box_pq_witness->hull) w["hull"] = to_json(*s.box_pq_witness->hull);
    if (s.box_pq_witness->second) w["second"] = to_json(*s.box_pq_witness->second);
    j["box-stage-witness"] = std::move(w);
  }
  if (s.orbit_witness) {
    j["orbit-witness"] = {{"x", s.orbit_witness->x},
                          {"y", s.orbit_witness->y},
                          {"lhs", rat_to_string(s.orbit_witness->lhs)},
                          {"rhs", rat_to_string(s.orbit_witness->rhs)}};
  }
  if (s.interlace_witness) {
    j["interlace-witness"] = {{"t", s.interlace_witness->t},
                              {"s", s.interlace_witness->s},
                              {"x", s.interlace_witness->x},
                              {"y", s.interlace_witness->y},
                              {"lhs", rat_to_string(s.interlace_witness->lhs)},
                              {"rhs", rat_to_string(s.interlace_witness->rhs)}};
  }
  if (s.box_witness) {
    j["sample-witness"] = {{"x", rats_to_json(s.box_witness->x)},
                           {"y", rats_to_json(s.box_witness->y)},
                           {"lhs", rat_to_string(s.box_witness->lhs)},
                           {"rhs-upper", rat_to_string(s.box_witness->rhs_upper)}};
  }
  if (s.contract_set) j["contract-set"] = set_repr_to_json(*s.contract_set);
  if (s.contract_image) j["contract-image"] = set_repr_to_json(*s.contract_image);
  return j;
}

StallInfo stall_from_json(const json& j) {
  StallInfo s;
  s.reason = as_string(need(j, "reason", "stall."), "stall.reason");
  if (j.contains("note")) s.note = as_string(j.at("note"), "stall.note");
  if (j.contains("witness-member"))
    s.witness_member = as_int(j.at("witness-member"), "stall.witness-member");
  if (j.contains("set-witness")) {
    const json& w = j.at("set-witness");
    NsCounterexample c;
    c.set = point_set_from_json(need(w, "set", "set-witness."));
    c.diameter = as_rat(need(w, "diameter", "set-witness."), "set-witness.diameter");
    c.radii = rats_from_json(need(w, "radii", "set-witness."), "set-witness.radii");
    s.ns_witness = std::move(c);
  }
  if (j.contains("stage-witness")) {
    const json& w = j.at("stage-witness");
    PqCounterexample c;
    c.set = point_set_from_json(need(w, "set", "stage-witness."));
    c.diameter = as_rat(need(w, "diameter", "stage-witness."), "stage-witness.diameter");
    c.stage = as_string(need(w, "stage", "stage-witness."), "stage-witness.stage");
    if (w.contains("hull")) c.hull = point_set_from_json(w.at("hull"));
    if (w.contains("second")) c.second = point_set_from_json(w.at("second"));
    s.pq_witness = std::move(c);
  }
  if (j.contains("box-stage-witness")) {
    const json& w = j.at("box-stage-witness");
    BoxPqWitness c;
    c.set = box_from_json(need(w, "set", "box-stage-witness."));
    c.diameter = as_rat(need(w, "diameter", "box-stage-witness."),
                        "box-stage-witness.diameter");
    c.stage = as_string(need(w, "stage", "box-stage-witness."),
                        "box-stage-witness.stage");
    if (w.contains("hull")) c.hull = box_from_json(w.at("hull"));
    if (w.contains("second")) c.second = box_from_json(w.at("second"));
    s.box_pq_witness = std::move(c);
  }
  if (j.contains("orbit-witness")) {
    const json& w = j.at("orbit-witness");
    s.orbit_witness = PairCex{as_int(need(w, "x", "orbit-witness."), "orbit-witness.x"),
                              as_int(need(w, "y", "orbit-witness."), "orbit-witness.y"),
                              as_rat(need(w, "lhs", "orbit-witness."), "orbit-witness.lhs"),
                              as_rat(need(w, "rhs", "orbit-witness."), "orbit-witness.rhs")};
  }
  if (j.contains("interlace-witness")) {
    const json& w = j.at("interlace-witness");
    s.interlace_witness =
        QuadCex{as_int(need(w, "t", "interlace-witness."), "interlace-witness.t"),
                as_int(need(w, "s", "interlace-witness."), "interlace-witness.s"),
                as_int(need(w, "x", "interlace-witness."), "interlace-witness.x"),
                as_int(need(w, "y", "interlace-witness."), "interlace-witness.y"),
                as_rat(need(w, "lhs", "interlace-witness."), "interlace-witness.lhs"),
                as_rat(need(w, "rhs", "interlace-witness."), "interlace-witness.rhs")};
  }
  if (j.contains("sample-witness")) {
    const json& w = j.at("sample-witness");
    BoxPairCex c;
    c.x = rats_from_json(need(w, "x", "sample-witness."), "sample-witness.x");
    c.y = rats_from_json(need(w, "y", "sample-witness."), "sample-witness.y");
    c.lhs = as_rat(need(w, "lhs", "sample-witness."), "sample-witness.lhs");
    c.rhs_upper = as_rat(need(w, "rhs-upper", "sample-witness."), "sample-witness.rhs-upper");
    s.box_witness = std::move(c);
  }
  if (j.contains("contract-set"))
    s.contract_set = set_repr_from_json(j.at("contract-set"), "stall.contract-set");
  if (j.contains("contract-image"))
    s.contract_image = set_repr_from_json(j.at("contract-image"), "stall.contract-image");
  return s;
}

json config_to_json(const EngineConfig& c) {
  json j{{"eps", rat_to_string(c.eps)},
         {"step-budget", c.step_budget},
         {"descend-iter-budget", c.descend_iter_budget},
         {"covf-iter-budget", c.covf_iter_budget},
         {"orbit-budget", c.orbit_budget},
         {"max-den", c.max_den},
         {"presamples", c.presamples},
         {"seed", c.seed}};
  if (c.descend_tol) j["descend-tol"] = rat_to_string(*c.descend_tol);
  if (c.pq_p) j["p"] = rat_to_string(*c.pq_p);
  if (c.pq_q) j["q"] = rat_to_string(*c.pq_q);
  return j;
}

EngineConfig config_from_json(const json& j) {
  EngineConfig c;
  c.eps = as_rat(need(j, "eps", "config."), "config.eps");
  c.step_budget = as_long(need(j, "step-budget", "config."), "config.step-budget");
  c.descend_iter_budget =
      as_int(need(j, "descend-iter-budget", "config."), "config.descend-iter-budget");
  c.covf_iter_budget =
      as_int(need(j, "covf-iter-budget", "config."), "config.covf-iter-budget");
  c.orbit_budget = as_int(need(j, "orbit-budget", "config."), "config.orbit-budget");
  const json& md = need(j, "max-den", "config.");
  if (!md.is_number_unsigned() && !md.is_number_integer())
    bad("expected an integer", "config.max-den");
  c.max_den = md.get<unsigned>();
  c.presamples = as_long(need(j, "presamples", "config."), "config.presamples");
  const json& sd = need(j, "seed", "config.");
  if (!sd.is_number_unsigned() && !sd.is_number_integer())
    bad("expected an integer", "config.seed");
  c.seed = sd.get<std::uint64_t>();
  if (j.contains("descend-tol")) c.descend_tol = as_rat(j.at("descend-tol"), "config.descend-tol");
  if (j.contains("p")) c.pq_p = as_rat(j.at("p"), "config.p");
  if (j.contains("q")) c.pq_q = as_rat(j.at("q"), "config.q");
  return c;
}

std::optional<StepKind> step_kind_from(const std::string& s) {
  if (s == "descend") return StepKind::Descend;
  if (s == "ns-shrink") return StepKind::NsShrink;
  if (s == "pq-shrink") return StepKind::PqShrink;
  return std::nullopt;
}

std::optional<StepCert> step_cert_from(const std::string& s) {
  if (s == "exact") return StepCert::Exact;
  if (s == "enclosure-certified") return StepCert::EnclosureCertified;
  if (s == "contract-dependent") return StepCert::ContractDependent;
  return std::nullopt;
}

json step_to_json(const TraceStep& s) {
  json j{{"kind", to_string(s.kind)},
         {"certainty", to_string(s.cert)},
         {"before", set_repr_to_json(s.before)},
         {"after", set_repr_to_json(s.after)},
         {"delta-before", rat_to_string(s.delta_before)},
         {"delta-after", rat_to_string(s.delta_after)},
         {"iterations", s.iterations},
         {"widened", s.widened}};
  if (s.center) j["center"] = point_repr_to_json(*s.center);
  if (s.radius) j["radius"] = rat_to_string(*s.radius);
  if (s.p) j["p"] = rat_to_string(*s.p);
  if (s.q) j["q"] = rat_to_string(*s.q);
  return j;
}

TraceStep step_from_json(const json& j, const std::string& at) {
  TraceStep s;
  auto kind = step_kind_from(as_string(need(j, "kind", at + "."), at + ".kind"));
  if (!kind) bad("unknown step kind", at + ".kind");
  s.kind = *kind;
  auto cert = step_cert_from(as_string(need(j, "certainty", at + "."), at + ".certainty"));
  if (!cert) bad("unknown step certainty", at + ".certainty");
  s.cert = *cert;
  s.before = set_repr_from_json(need(j, "before", at + "."), at + ".before");
  s.after = set_repr_from_json(need(j, "after", at + "."), at + ".after");
  s.delta_before = as_rat(need(j, "delta-before", at + "."), at + ".delta-before");
  s.delta_after = as_rat(need(j, "delta-after", at + "."), at + ".delta-after");
  s.iterations = as_int(need(j, "iterations", at + "."), at + ".iterations");
  s.widened = as_bool(need(j, "widened", at + "."), at + ".widened");
  if (j.contains("center")) s.center = point_repr_from_json(j.at("center"), at + ".center");
  if (j.contains("radius")) s.radius = as_rat(j.at("radius"), at + ".radius");
  if (j.contains("p")) s.p = as_rat(j.at("p"), at + ".p");
  if (j.contains("q")) s.q = as_rat(j.at("q"), at + ".q");
  return s;
}

}  // namespace

json certificate_to_json(const Certificate& c) {
  json j{{"version", kFormatVersion},
         {"model", c.model},
         {"method", to_string(c.method)},
         {"config", config_to_json(c.config)},
         {"outcome", to_string(c.outcome)},
         {"steps-used", c.steps_used}};
  if (c.point) j["point"] = point_repr_to_json(*c.point);
  if (c.radius) j["radius"] = rat_to_string(*c.radius);
  if (c.residual) j["residual"] = rat_to_string(*c.residual);
  if (c.stall) j["stall"] = stall_to_json(*c.stall);
  json trace = json::array();
  for (const auto& s : c.trace) trace.push_back(step_to_json(s));
  j["trace"] = std::move(trace);
  if (c.fix) {
    json f{{"set", to_json(c.fix->fix_set)}};
    if (c.fix->olr) f["olr"] = olr_to_json(*c.fix->olr);
    j["fix"] = std::move(f);
  }
  return j;
}

Certificate certificate_from_json(const json& j) {
  if (as_int(need(j, "version", ""), "version") != kFormatVersion)
    bad("unsupported certificate version", "version");
  Certificate c;
  c.model = as_string(need(j, "model", ""), "model");
  auto method = method_from(as_string(need(j, "method", ""), "method"));
  if (!method) bad("unknown method", "method");
  c.method = *method;
  c.config = config_from_json(need(j, "config", ""));
  auto outcome = outcome_from(as_string(need(j, "outcome", ""), "outcome"));
  if (!outcome) bad("unknown outcome", "outcome");
  c.outcome = *outcome;
  c.steps_used = as_long(need(j, "steps-used", ""), "steps-used");
  if (j.contains("point")) c.point = point_repr_from_json(j.at("point"), "point");
  if (j.contains("radius")) c.radius = as_rat(j.at("radius"), "radius");
  if (j.contains("residual")) c.residual = as_rat(j.at("residual"), "residual");
  if (j.contains("stall")) c.stall = stall_from_json(j.at("stall"));
  const json& trace = need_array(need(j, "trace", ""), "trace");
  for (std::size_t i = 0; i < trace.size(); ++i)
    c.trace.push_back(step_from_json(trace[i], "trace[" + std::to_string(i) + "]"));
  if (j.contains("fix")) {
    FixInfo f;
    f.fix_set = point_set_from_json(need(j.at("fix"), "set", "fix."));
    if (j.at("fix").contains("olr")) f.olr = olr_from_json(j.at("fix").at("olr"));
    c.fix = std::move(f);
  }
  return c;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_input("cannot open file", {{"path", path}});
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw invalid_input("malformed json", {{"path", path}, {"what", e.what()}});
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw invalid_input("cannot open file for writing", {{"path", path}});
  out << j.dump(2) << '\n';
  if (!out) throw invalid_input("write failed", {{"path", path}});
}

}  // namespace onx
