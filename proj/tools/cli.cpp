#include "cli.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "onx/engine.hpp"
#include "onx/error.hpp"
#include "onx/generators.hpp"
#include "onx/io.hpp"
#include "onx/maps.hpp"
#include "onx/rat.hpp"
#include "onx/structures.hpp"

namespace onx {
namespace {

constexpr int kExitHolds = 0;    // success, or the queried property holds
constexpr int kExitFails = 1;    // property fails, stall, or failed verify
constexpr int kExitInvalid = 2;  // malformed input or arguments
constexpr int kExitCap = 3;      // enumeration cap or step budget exceeded

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

json report_head(const char* command) {
  return json{{"command", command}, {"version", kFormatVersion}};
}

// ---- report fragments ----

json rats_json(const std::vector<Rat>& v) {
  json a = json::array();
  for (const auto& r : v) a.push_back(rat_to_string(r));
  return a;
}

json pair_cex_json(const PairCex& c) {
  return json{{"x", c.x},
              {"y", c.y},
              {"lhs", rat_to_string(c.lhs)},
              {"rhs", rat_to_string(c.rhs)}};
}

json quad_cex_json(const QuadCex& c) {
  return json{{"t", c.t},          {"s", c.s},
              {"x", c.x},          {"y", c.y},
              {"lhs", rat_to_string(c.lhs)}, {"rhs", rat_to_string(c.rhs)}};
}

json box_pair_cex_json(const BoxPairCex& c) {
  return json{{"x", rats_json(c.x)},
              {"y", rats_json(c.y)},
              {"lhs", rat_to_string(c.lhs)},
              {"rhs-upper", rat_to_string(c.rhs_upper)}};
}

json map_verdict_json(const MapVerdict& v) {
  json j{{"holds", v.holds}};
  if (v.cex) j["counterexample"] = pair_cex_json(*v.cex);
  return j;
}

json interlaced_json(const InterlacedVerdict& v) {
  json j{{"holds", v.holds}};
  if (v.cex) j["counterexample"] = quad_cex_json(*v.cex);
  return j;
}

json center_witness_json(const CenterWitness& w) {
  return json{{"set", to_json(w.set)},
              {"diameter", rat_to_string(w.diameter)},
              {"center", w.center},
              {"radius", rat_to_string(w.radius)}};
}

json ns_report_json(const NsReport& r, bool with_witnesses) {
  json j{{"holds", r.holds}, {"sets-checked", r.sets_checked}};
  if (with_witnesses) {
    json a = json::array();
    for (const auto& w : r.witnesses) a.push_back(center_witness_json(w));
    j["witnesses"] = a;
  } else {
    j["witness-count"] = static_cast<long>(r.witnesses.size());
  }
  if (r.cex) {
    j["counterexample"] = json{{"set", to_json(r.cex->set)},
                               {"diameter", rat_to_string(r.cex->diameter)},
                               {"radii", rats_json(r.cex->radii)}};
  }
  return j;
}

json uns_report_json(const UnsReport& r, bool with_witnesses) {
  json j{{"c", rat_to_string(r.c)},
         {"holds", r.holds},
         {"sets-checked", r.sets_checked}};
  if (r.c_star) j["c-star"] = rat_to_string(*r.c_star);
  if (r.c_star_argmax) j["c-star-argmax"] = to_json(*r.c_star_argmax);
  if (with_witnesses) {
    json a = json::array();
    for (const auto& w : r.witnesses) a.push_back(center_witness_json(w));
    j["witnesses"] = a;
  } else {
    j["witness-count"] = static_cast<long>(r.witnesses.size());
  }
  if (r.cex) j["counterexample"] = to_json(*r.cex);
  return j;
}

json pq_report_json(const PqReport& r, bool with_witnesses) {
  json j{{"p", rat_to_string(r.p)},
         {"q", rat_to_string(r.q)},
         {"holds", r.holds},
         {"sets-checked", r.sets_checked}};
  if (with_witnesses) {
    json a = json::array();
    for (const auto& [set, meet] : r.witnesses)
      a.push_back(json{{"set", to_json(set)}, {"meet-point", meet}});
    j["witnesses"] = a;
  } else {
    j["witness-count"] = static_cast<long>(r.witnesses.size());
  }
  if (r.cex) {
    json c{{"set", to_json(r.cex->set)},
           {"diameter", rat_to_string(r.cex->diameter)},
           {"stage", r.cex->stage}};
    if (r.cex->hull) c["hull"] = to_json(*r.cex->hull);
    if (r.cex->second) c["second"] = to_json(*r.cex->second);
    j["counterexample"] = c;
  }
  return j;
}

json olr_report_json(const OlrReport& r) {
  json j{{"holds", r.holds}, {"points-checked", r.points_checked}};
  if (r.cex_point) j["cex-point"] = *r.cex_point;
  if (r.cex_meet) j["cex-meet"] = to_json(*r.cex_meet);
  return j;
}

const char* verdict_str(BoxVerdict v) {
  switch (v) {
    case BoxVerdict::Holds: return "holds";
    case BoxVerdict::Fails: return "fails";
    default: return "vacuous";
  }
}

json box_pq_report_json(const BoxPqReport& r) {
  json j{{"p", rat_to_string(r.p)},
         {"q", rat_to_string(r.q)},
         {"verdict", verdict_str(r.verdict)},
         {"effective-dim", r.effective_dim},
         {"reason", r.reason}};
  if (r.cex) {
    json c{{"set", to_json(r.cex->set)},
           {"diameter", rat_to_string(r.cex->diameter)},
           {"stage", r.cex->stage}};
    if (r.cex->hull) c["hull"] = to_json(*r.cex->hull);
    if (r.cex->second) c["second"] = to_json(*r.cex->second);
    j["counterexample"] = c;
  }
  return j;
}

json falsify_report_json(const FalsifyReport& r) {
  json j{{"total", r.total},
         {"certified", r.certified},
         {"inconclusive", r.inconclusive},
         {"violation-found", r.violation_found}};
  if (r.violation) j["violation"] = box_pair_cex_json(*r.violation);
  if (r.violating_map) j["violating-map"] = *r.violating_map;
  return j;
}

// ---- argument parsing helpers ----

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::size_t pos = 0;
  while (true) {
    auto next = s.find(sep, pos);
    out.push_back(s.substr(pos, next - pos));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

int int_from_string(const std::string& s) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = std::string::npos;
  }
  if (used != s.size())
    throw invalid_input("expected an integer", {{"got", s}});
  return v;
}

// ns | uns=<c> | urns=<c> | pq-urns=<p>,<q> | olr=<i,j,...>
struct PropertySpec {
  std::string name;
  std::vector<Rat> coeffs;
  std::vector<int> points;
};

PropertySpec parse_property(const std::string& s) {
  PropertySpec spec;
  auto eq = s.find('=');
  spec.name = s.substr(0, eq);
  std::string args = eq == std::string::npos ? "" : s.substr(eq + 1);
  auto parts = split(args, ',');
  if (spec.name == "ns") {
    if (!args.empty())
      throw invalid_input("property ns takes no coefficient", {{"got", s}});
  } else if (spec.name == "uns" || spec.name == "urns") {
    if (parts.size() != 1)
      throw invalid_input("property needs one coefficient, e.g. " + spec.name +
                              "=1/2",
                          {{"got", s}});
    spec.coeffs.push_back(rat_from_string(parts[0]));
  } else if (spec.name == "pq-urns") {
    if (parts.size() != 2)
      throw invalid_input("property needs two coefficients, e.g. pq-urns=1,1/2",
                          {{"got", s}});
    spec.coeffs.push_back(rat_from_string(parts[0]));
    spec.coeffs.push_back(rat_from_string(parts[1]));
  } else if (spec.name == "olr") {
    if (parts.empty())
      throw invalid_input("property olr needs point indices, e.g. olr=0,2",
                          {{"got", s}});
    for (const auto& p : parts) spec.points.push_back(int_from_string(p));
  } else {
    throw invalid_input("unknown property", {{"got", s}});
  }
  return spec;
}

ParsedInstance load_instance(const std::string& path) {
  return instance_from_json(read_json_file(path));
}

ParsedMaps load_maps_for(const ParsedInstance& inst, const std::string& path) {
  ParsedMaps pm = maps_from_json(read_json_file(path));
  validate_maps_for(inst, pm);
  return pm;
}

// ---- commands ----

int do_validate(std::ostream& out, const std::string& inst_path) {
  ParsedInstance inst = load_instance(inst_path);
  json j = report_head("validate");
  if (inst.is_finite()) {
    j["type"] = "finite";
    j["points"] = inst.finite->n();
  } else {
    j["type"] = "box";
    j["dim"] = inst.box->dim();
  }
  j["valid"] = true;
  emit(out, j);
  return kExitHolds;
}

int do_admissible(std::ostream& out, const std::string& inst_path,
                  std::size_t cap, bool list_members) {
  ParsedInstance inst = load_instance(inst_path);
  if (!inst.is_finite())
    throw invalid_input("admissible enumeration needs a finite instance");
  AdmissibleLattice lat = enumerate_admissible(*inst.finite, cap);
  json j = report_head("admissible");
  j["count"] = static_cast<long>(lat.members.size());
  if (list_members) {
    json a = json::array();
    for (const auto& s : lat.members) a.push_back(to_json(s));
    j["members"] = a;
  }
  emit(out, j);
  return kExitHolds;
}

int do_check(std::ostream& out, const std::string& inst_path,
             const std::string& prop_str, std::size_t cap,
             bool with_witnesses) {
  ParsedInstance inst = load_instance(inst_path);
  PropertySpec prop = parse_property(prop_str);
  json j = report_head("check");
  j["property"] = prop_str;
  bool holds = false;
  if (inst.is_finite()) {
    const FiniteSpace& sp = *inst.finite;
    if (prop.name == "olr") {
      PointSet d = PointSet::of(sp.n(), prop.points);
      if (d.empty()) throw invalid_input("olr target set is empty");
      OlrReport r = check_one_local_retract(sp, d);
      holds = r.holds;
      j["report"] = olr_report_json(r);
    } else {
      AdmissibleLattice lat = enumerate_admissible(sp, cap);
      if (prop.name == "ns") {
        NsReport r = check_ns(sp, lat);
        holds = r.holds;
        j["report"] = ns_report_json(r, with_witnesses);
      } else if (prop.name == "uns") {
        UnsReport r = check_uns(sp, lat, prop.coeffs[0]);
        holds = r.holds;
        j["report"] = uns_report_json(r, with_witnesses);
      } else {
        // urns is the p = q = c diagonal of the pq family
        const Rat& p = prop.coeffs[0];
        const Rat& q = prop.coeffs.size() > 1 ? prop.coeffs[1] : prop.coeffs[0];
        PqReport r = check_pq_urns(sp, lat, p, q);
        holds = r.holds;
        j["report"] = pq_report_json(r, with_witnesses);
      }
    }
  } else {
    const BoxSpace& sp = *inst.box;
    BoxVerdict verdict = BoxVerdict::Vacuous;
    if (prop.name == "olr") {
      throw invalid_input("olr checking needs a finite instance");
    } else if (prop.name == "ns") {
      BoxNsReport r = box_check_ns(sp);
      verdict = r.verdict;
      j["report"] = json{{"verdict", verdict_str(r.verdict)},
                         {"reason", r.reason}};
    } else if (prop.name == "uns") {
      BoxUnsReport r = box_check_uns(sp, prop.coeffs[0]);
      verdict = r.verdict;
      j["report"] = json{{"c", rat_to_string(r.c)},
                         {"verdict", verdict_str(r.verdict)},
                         {"threshold", rat_to_string(r.threshold)},
                         {"reason", r.reason}};
    } else {
      BoxPqReport r = prop.coeffs.size() > 1
                          ? box_check_pq_urns(sp, prop.coeffs[0], prop.coeffs[1])
                          : box_check_urns(sp, prop.coeffs[0]);
      verdict = r.verdict;
      j["report"] = box_pq_report_json(r);
    }
    holds = verdict != BoxVerdict::Fails;
  }
  j["holds"] = holds;
  emit(out, j);
  return holds ? kExitHolds : kExitFails;
}

int do_map_check(std::ostream& out, const std::string& inst_path,
                 const std::string& maps_path, const std::string& prop,
                 const std::string& mean_str) {
  ParsedInstance inst = load_instance(inst_path);
  ParsedMaps pm = load_maps_for(inst, maps_path);
  if (!inst.is_finite())
    throw invalid_input(
        "map-check needs a finite instance; use falsify on box families");
  const FiniteSpace& sp = *inst.finite;
  const std::vector<MapTable>& fam = pm.tables;
  json j = report_head("map-check");
  j["property"] = prop;
  bool holds = true;
  if (prop == "orbit") {
    json a = json::array();
    for (const auto& t : fam) {
      MapVerdict v = check_orbit_nonexpansive(sp, t);
      holds = holds && v.holds;
      json e = map_verdict_json(v);
      e["name"] = t.name;
      a.push_back(e);
    }
    j["members"] = a;
  } else if (prop == "interlaced") {
    InterlacedVerdict v = check_interlaced(sp, fam);
    holds = v.holds;
    j["report"] = interlaced_json(v);
  } else if (prop == "group") {
    GroupVerdict g = check_group(sp, fam);
    json r{{"is-group", g.is_group},
           {"all-orbit-nonexpansive", g.all_orbit_nonexpansive}};
    if (!g.failure.empty()) r["failure"] = g.failure;
    if (g.witness_member) r["witness-member"] = *g.witness_member;
    if (g.witness_pair)
      r["witness-pair"] = json::array({g.witness_pair->first,
                                       g.witness_pair->second});
    if (g.orbit_cex_member) r["orbit-cex-member"] = *g.orbit_cex_member;
    if (g.orbit_cex) r["orbit-cex"] = pair_cex_json(*g.orbit_cex);
    if (g.interlaced) r["interlaced"] = interlaced_json(*g.interlaced);
    j["report"] = r;
    // the full hypothesis: a group of orbit-nonexpansive maps, re-verified
    // to interlace rather than trusted to
    holds = g.is_group && g.all_orbit_nonexpansive && g.interlaced &&
            g.interlaced->holds;
  } else if (prop == "commuting") {
    CommuteVerdict v = check_commuting(fam);
    holds = v.holds;
    json r{{"holds", v.holds}};
    if (v.t) r["t"] = *v.t;
    if (v.s) r["s"] = *v.s;
    if (v.x) r["x"] = *v.x;
    j["report"] = r;
  } else if (prop == "classify") {
    std::optional<std::pair<Rat, Rat>> mean_params;
    if (!mean_str.empty()) {
      auto parts = split(mean_str, ',');
      if (parts.size() != 2)
        throw invalid_input("--mean needs two coefficients, e.g. 1/2,1/2",
                            {{"got", mean_str}});
      mean_params = {rat_from_string(parts[0]), rat_from_string(parts[1])};
    }
    json a = json::array();
    for (const auto& t : fam) {
      ClassifyReport r = classify_map(sp, t, mean_params);
      json e{{"name", t.name},
             {"nonexpansive", map_verdict_json(r.nonexpansive)},
             {"orbit-nonexpansive", map_verdict_json(r.orbit_nonexpansive)}};
      if (r.mean) {
        json m = map_verdict_json(*r.mean);
        m["a"] = rat_to_string(*r.mean_a);
        m["b"] = rat_to_string(*r.mean_b);
        e["mean"] = m;
      }
      a.push_back(e);
    }
    j["members"] = a;
    // classification is descriptive, not a pass/fail property
  } else {
    throw invalid_input("unknown map property", {{"got", prop}});
  }
  j["holds"] = holds;
  emit(out, j);
  return holds ? kExitHolds : kExitFails;
}

int do_falsify(std::ostream& out, const std::string& inst_path,
               const std::string& maps_path, const FalsifyConfig& cfg) {
  ParsedInstance inst = load_instance(inst_path);
  ParsedMaps pm = load_maps_for(inst, maps_path);
  if (inst.is_finite())
    throw invalid_input(
        "falsify samples box instances; finite families have exact checkers");
  json j = report_head("falsify");
  j["samples"] = cfg.samples;
  j["seed"] = cfg.seed;
  FalsifyReport orb = falsify_orbit_nonexpansive(*inst.box, pm.exprs, cfg);
  j["orbit"] = falsify_report_json(orb);
  bool violated = orb.violation_found;
  if (!violated) {
    FalsifyReport il = falsify_interlaced(*inst.box, pm.exprs, cfg);
    j["interlaced"] = falsify_report_json(il);
    violated = il.violation_found;
  }
  j["violation-found"] = violated;
  emit(out, j);
  return violated ? kExitFails : kExitHolds;
}

int do_solve(std::ostream& out, const std::string& inst_path,
             const std::string& maps_path, const std::string& method_str,
             const EngineConfig& cfg, const std::string& trace_path) {
  ParsedInstance inst = load_instance(inst_path);
  ParsedMaps pm = load_maps_for(inst, maps_path);
  auto method = method_from(method_str);
  if (!method) throw invalid_input("unknown method", {{"got", method_str}});
  Certificate cert = inst.is_finite()
                         ? solve_fixed_point(*inst.finite, pm.tables, *method, cfg)
                         : solve_fixed_point(*inst.box, pm.exprs, *method, cfg);
  json cj = certificate_to_json(cert);
  if (!trace_path.empty()) write_json_file(trace_path, cj);
  json j = report_head("solve");
  j["certificate"] = cj;
  emit(out, j);
  if (cert.outcome != Outcome::Stall) return kExitHolds;
  bool out_of_budget = cert.stall && cert.stall->reason == "budget-exceeded";
  return out_of_budget ? kExitCap : kExitFails;
}

int do_verify(std::ostream& out, const std::string& inst_path,
              const std::string& maps_path, const std::string& trace_path) {
  ParsedInstance inst = load_instance(inst_path);
  ParsedMaps pm = load_maps_for(inst, maps_path);
  Certificate cert = certificate_from_json(read_json_file(trace_path));
  VerifyResult r = inst.is_finite()
                       ? verify_certificate(*inst.finite, pm.tables, cert)
                       : verify_certificate(*inst.box, pm.exprs, cert);
  json j = report_head("verify");
  j["ok"] = r.ok;
  if (!r.message.empty()) j["message"] = r.message;
  emit(out, j);
  return r.ok ? kExitHolds : kExitFails;
}

struct GenParams {
  int depth = 2;
  int n = 3;
  int leaves = 3;
  int dim = 1;
  std::string d = "1";
  std::string ratio = "1/2";
  bool shifted = false;
  std::uint64_t seed = 0;
};

int do_gen(std::ostream& out, const std::string& kind, const GenParams& gp,
           const std::string& out_path, const std::string& maps_out_path) {
  json instance_json, family_json, annotations;
  std::string note;
  auto take_finite = [&](FiniteBundle b) {
    bool group = b.annotations.is_object() && b.annotations.value("group", false);
    instance_json = instance_to_json(b.space);
    family_json = maps_to_json(b.maps, group);
    annotations = std::move(b.annotations);
    note = std::move(b.note);
  };
  auto take_box = [&](BoxBundle b) {
    instance_json = instance_to_json(b.space);
    family_json = maps_to_json(b.maps);
    annotations = std::move(b.annotations);
    note = std::move(b.note);
  };
  if (kind == "tagged-thirds") {
    take_finite(gen_tagged_thirds(gp.depth));
  } else if (kind == "equilateral") {
    take_finite(gen_equilateral(gp.n, rat_from_string(gp.d)));
  } else if (kind == "path") {
    take_finite(gen_path(gp.n));
  } else if (kind == "rotation3") {
    take_finite(gen_rotation3());
  } else if (kind == "star") {
    take_finite(gen_star(gp.leaves));
  } else if (kind == "random") {
    take_finite(gen_random_space(gp.n, gp.seed));
  } else if (kind == "contraction") {
    take_box(gen_box_contraction(gp.dim, rat_from_string(gp.ratio), gp.shifted));
  } else if (kind == "tropical") {
    take_box(gen_box_tropical(gp.dim, gp.seed));
  } else if (kind == "interval-pair") {
    take_box(gen_box_interval_pair());
  } else {
    throw invalid_input("unknown generator kind", {{"got", kind}});
  }
  write_json_file(out_path, instance_json);
  json files{{"instance", out_path}};
  if (!maps_out_path.empty()) {
    write_json_file(maps_out_path, family_json);
    files["maps"] = maps_out_path;
  }
  json j = report_head("gen");
  j["kind"] = kind;
  j["annotations"] = annotations;
  j["note"] = note;
  j["files"] = files;
  emit(out, j);
  return kExitHolds;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"exact solver and checkers for families of orbit-nonexpansive "
               "maps on finite metric spaces and rational boxes"};
  app.require_subcommand(1);

  std::string inst_path, maps_path, trace_path, out_path, maps_out_path;
  std::string property, method_str = "ns", kind, mean_str;
  std::string p_str, q_str, eps_str, tol_str;
  std::size_t cap = kDefaultLatticeCap;
  bool witnesses = false, list_members = false;
  EngineConfig ecfg;
  FalsifyConfig fcfg;
  GenParams gp;

  auto* c_validate = app.add_subcommand(
      "validate", "parse an instance file and report its shape");
  c_validate->add_option("instance", inst_path, "instance file (json)")
      ->required();

  auto* c_adm = app.add_subcommand(
      "admissible", "enumerate the admissible sets of a finite instance");
  c_adm->add_option("instance", inst_path)->required();
  c_adm->add_option("--cap", cap, "abort past this many sets");
  c_adm->add_flag("--members", list_members, "list every set, not just counts");

  auto* c_check = app.add_subcommand(
      "check", "decide a center or hull property of the space");
  c_check
      ->add_option("--property", property,
                   "ns | uns=<c> | urns=<c> | pq-urns=<p>,<q> | olr=<i,j,...>")
      ->required();
  c_check->add_option("instance", inst_path)->required();
  c_check->add_option("--cap", cap, "admissible enumeration cap");
  c_check->add_flag("--witnesses", witnesses, "include per-set witness data");

  auto* c_map = app.add_subcommand(
      "map-check", "check map hypotheses exactly on a finite instance");
  c_map
      ->add_option("--property", property,
                   "orbit | interlaced | group | commuting | classify")
      ->required();
  c_map->add_option("--mean", mean_str, "a,b coefficients for classify");
  c_map->add_option("instance", inst_path)->required();
  c_map->add_option("maps", maps_path)->required();

  auto* c_falsify = app.add_subcommand(
      "falsify", "sample a box family for hypothesis violations");
  c_falsify->add_option("instance", inst_path)->required();
  c_falsify->add_option("maps", maps_path)->required();
  c_falsify->add_option("--samples", fcfg.samples, "pairs to sample");
  c_falsify->add_option("--seed", fcfg.seed);
  c_falsify->add_option("--orbit-budget", fcfg.orbit_budget,
                        "enclosure iterations per pair");
  c_falsify->add_option("--max-den", fcfg.max_den,
                        "sample coordinate denominator bound");

  auto* c_solve = app.add_subcommand(
      "solve", "run the shrinking solver and emit a certificate");
  c_solve->add_option("--method", method_str, "ns | pq (default ns)");
  c_solve->add_option("--p", p_str, "pq shrink coefficient p");
  c_solve->add_option("--q", q_str, "pq shrink coefficient q, in (0,1)");
  c_solve->add_option("--eps", eps_str, "box model residual target");
  c_solve->add_option("--budget", ecfg.step_budget, "max recorded steps");
  c_solve->add_option("--descend-budget", ecfg.descend_iter_budget,
                      "box inner descent rounds");
  c_solve->add_option("--cover-budget", ecfg.covf_iter_budget,
                      "box upward cover rounds");
  c_solve->add_option("--orbit-budget", ecfg.orbit_budget,
                      "falsification enclosure iterations");
  c_solve->add_option("--max-den", ecfg.max_den,
                      "falsification denominator bound");
  c_solve->add_option("--presamples", ecfg.presamples,
                      "falsification pairs before solving (box)");
  c_solve->add_option("--seed", ecfg.seed);
  c_solve->add_option("--descend-tol", tol_str,
                      "box descent stop threshold (default eps/16)");
  c_solve->add_option("--trace", trace_path, "write the certificate here");
  c_solve->add_option("instance", inst_path)->required();
  c_solve->add_option("maps", maps_path)->required();

  auto* c_verify = app.add_subcommand(
      "verify", "replay a certificate against an instance and family");
  c_verify->add_option("instance", inst_path)->required();
  c_verify->add_option("maps", maps_path)->required();
  c_verify->add_option("trace", trace_path, "certificate file")->required();

  auto* c_gen = app.add_subcommand(
      "gen", "write a generated instance (and optionally its family)");
  c_gen
      ->add_option("kind", kind,
                   "tagged-thirds | equilateral | path | rotation3 | star | "
                   "random | contraction | tropical | interval-pair")
      ->required();
  c_gen->add_option("-o,--out", out_path, "instance file to write")->required();
  c_gen->add_option("--maps-out", maps_out_path, "family file to write");
  c_gen->add_option("--depth", gp.depth, "tagged-thirds levels");
  c_gen->add_option("--n", gp.n, "point count (equilateral, path, random)");
  c_gen->add_option("--d", gp.d, "equilateral distance");
  c_gen->add_option("--leaves", gp.leaves, "star leaf count");
  c_gen->add_option("--dim", gp.dim, "box dimension");
  c_gen->add_option("--ratio", gp.ratio, "contraction ratio in (0,1)");
  c_gen->add_flag("--shifted", gp.shifted, "contraction with off-center fix");
  c_gen->add_option("--seed", gp.seed, "random / tropical seed");

  try {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("onx");
    for (const auto& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? kExitHolds : kExitInvalid;
  }

  try {
    if (c_validate->parsed()) return do_validate(out, inst_path);
    if (c_adm->parsed()) return do_admissible(out, inst_path, cap, list_members);
    if (c_check->parsed())
      return do_check(out, inst_path, property, cap, witnesses);
    if (c_map->parsed())
      return do_map_check(out, inst_path, maps_path, property, mean_str);
    if (c_falsify->parsed()) return do_falsify(out, inst_path, maps_path, fcfg);
    if (c_solve->parsed()) {
      if (!eps_str.empty()) ecfg.eps = rat_from_string(eps_str);
      if (!tol_str.empty()) ecfg.descend_tol = rat_from_string(tol_str);
      if (!p_str.empty()) ecfg.pq_p = rat_from_string(p_str);
      if (!q_str.empty()) ecfg.pq_q = rat_from_string(q_str);
      return do_solve(out, inst_path, maps_path, method_str, ecfg, trace_path);
    }
    if (c_verify->parsed())
      return do_verify(out, inst_path, maps_path, trace_path);
    if (c_gen->parsed())
      return do_gen(out, kind, gp, out_path, maps_out_path);
  } catch (const cap_exceeded& e) {
    json j{{"error", "cap-exceeded"}, {"message", e.what()}};
    if (!e.detail().empty()) j["detail"] = e.detail();
    emit(err, j);
    return kExitCap;
  } catch (const invalid_input& e) {
    json j{{"error", "invalid-input"}, {"message", e.what()}};
    if (!e.detail().empty()) j["detail"] = e.detail();
    emit(err, j);
    return kExitInvalid;
  }
  return kExitInvalid;  // unreachable: require_subcommand guarantees a branch
}

}  // namespace onx
