#include "clipcone/commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>

#include "clipcone/chamber.hpp"
#include "clipcone/descent.hpp"
#include "json.hpp"

#ifndef CLIPCONE_VERSION
#define CLIPCONE_VERSION "0.0.0"
#endif

namespace clipcone {

namespace {

using nlohmann::json;

json jratvec(const RatVec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(rat_str(v(i)));
  return a;
}

json jintvec(const IntVec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i).str());
  return a;
}

json jratmat(const RatMat& m) {
  json a = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(rat_str(m(r, c)));
    a.push_back(row);
  }
  return a;
}

json jintmat(const IntMat& m) {
  json a = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c).str());
    a.push_back(row);
  }
  return a;
}

json jqvec(const QVec& v, long) {
  json a = json::array();
  for (const QScalar& x : v) a.push_back(json::array({rat_str(x.a), rat_str(x.b)}));
  return a;
}

std::string kind_str(FactorKind k) {
  switch (k) {
    case FactorKind::Halfline: return "halfline";
    case FactorKind::Lorentz: return "lorentz";
    case FactorKind::PsdSym: return "psd";
  }
  return "?";
}

std::string type_str(HyperbolicType t) {
  switch (t) {
    case HyperbolicType::Halfline: return "halfline";
    case HyperbolicType::TwoHalflines: return "two-halflines";
    case HyperbolicType::Hyperbolic: return "hyperbolic";
  }
  return "?";
}

std::string angle_str(AngleClass c) {
  switch (c) {
    case AngleClass::RightAngle: return "right";
    case AngleClass::Pi3: return "pi3";
    case AngleClass::Pi4: return "pi4";
    case AngleClass::Pi6: return "pi6";
    case AngleClass::Parallel: return "parallel";
    case AngleClass::Ultraparallel: return "ultraparallel";
    case AngleClass::Violation: return "violation";
  }
  return "?";
}

json validation_json(const ValidationReport& rep) {
  json fails = json::array();
  for (const CheckFailure& f : rep.failures)
    fails.push_back({{"factor", f.factor}, {"check", f.check}, {"detail", f.detail}});
  return json{{"ok", rep.ok()}, {"failures", fails}};
}

json sizes(const std::vector<size_t>& v) {
  json a = json::array();
  for (size_t x : v) a.push_back(x);
  return a;
}

json descent_json(const DescentReport& rep) {
  json j;
  j["m"] = rep.invariant_basis.cols();
  j["invariant_basis"] = jintmat(rep.invariant_basis);
  j["invariant_gram"] = jratmat(rep.invariant_gram);
  j["witness"] = jratvec(rep.witness);

  json orbits = json::array();
  for (const FactorOrbit& o : rep.orbit_table) {
    json cols = json::array();
    for (long c : o.cols) cols.push_back(c);
    orbits.push_back({{"kind", kind_str(o.kind)},
                      {"factors", sizes(o.factors)},
                      {"cols", cols},
                      {"d", o.d},
                      {"type", o.kind == FactorKind::Lorentz ? json(type_str(o.type)) : json()}});
  }
  j["orbit_table"] = orbits;
  j["J1"] = sizes(rep.J1);
  j["J2"] = sizes(rep.J2);
  j["J3p"] = sizes(rep.J3p);

  json ros = json::array();
  for (const RootOrbit& ro : rep.root_orbits)
    ros.push_back({{"roots", sizes(ro.roots)},
                   {"carrier", ro.carrier},
                   {"epsilon_ambient", jintvec(ro.epsilon_ambient)},
                   {"epsilon", jintvec(ro.epsilon)},
                   {"q_epsilon", rat_str(ro.q_epsilon)},
                   {"pairing", rat_str(ro.pairing)},
                   {"in_star", ro.in_star}});
  j["root_orbits"] = ros;
  j["I_star"] = sizes(rep.I_star);

  json bfac = json::array();
  for (const Factor& f : rep.B.factors)
    bfac.push_back({{"kind", kind_str(f.kind)}, {"dim", f.dim()}});
  json bcols = json::array();
  for (long c : rep.B_cols) bcols.push_back(c);
  j["B"] = {{"factors", bfac}, {"cols", bcols}};

  json wedges = json::array();
  for (const WedgeB& w : rep.wedges)
    wedges.push_back({{"orbit", w.orbit},
                      {"cols", json::array({w.cols[0], w.cols[1]})},
                      {"disc", w.disc},
                      {"ambient_edges",
                       json::array({jqvec(w.ambient_edges[0], 0), jqvec(w.ambient_edges[1], 0)})},
                      {"edges", json::array({jqvec(w.edges[0], 0), jqvec(w.edges[1], 0)})}});
  j["wedges"] = wedges;

  json psd = json::array();
  for (const PsdPartB& p : rep.psd_parts)
    psd.push_back({{"orbit", p.orbit}, {"factor", p.factor}});
  j["psd_parts"] = psd;

  json desc = json::array();
  for (const Root& r : rep.descended)
    desc.push_back({{"e", jintvec(r.e)}, {"factor", r.factor}, {"s", rat_str(r.s)}});
  j["descended"] = desc;

  json taus = json::array();
  for (const RatMat& t : rep.taus) taus.push_back(jratmat(t));
  j["taus"] = taus;

  json lifts = json::array();
  for (const Lift& l : rep.lifts)
    lifts.push_back({{"word", sizes(l.word)},
                     {"blocks", l.blocks},
                     {"block_size", l.block_size},
                     {"b", jratmat(l.b)}});
  j["lifts"] = lifts;

  json checks;
  for (const auto& [name, value] : rep.checks) checks[name] = value;
  j["checks"] = checks;
  j["equality_exact"] = rep.equality_exact;
  j["ok"] = rep.ok;
  return j;
}

Report finish(const std::string& command, const Instance* inst, const RunOptions* opt,
              bool with_samples, json payload, bool ok) {
  json j;
  j["schema"] = 1;
  j["version"] = CLIPCONE_VERSION;
  j["command"] = command;
  if (inst) j["instance"] = inst->digest;
  if (opt && with_samples) {
    j["seed"] = opt->seed;
    j["samples"] = opt->samples;
  }
  j["ok"] = ok;
  j["payload"] = std::move(payload);
  return Report{j.dump(2) + "\n", ok ? 0 : 1};
}

// Closure of the generator set under products of up to len factors, identity
// included.  Deterministic breadth-first order.
std::vector<RatMat> word_closure(const std::vector<RatMat>& gens, long n, long len, long cap) {
  std::vector<RatMat> out{RatMat::Identity(n, n)};
  std::vector<RatMat> frontier = out;
  for (long depth = 0; depth < len; ++depth) {
    std::vector<RatMat> next;
    for (const RatMat& f : frontier)
      for (const RatMat& g : gens) {
        RatMat h = (f * g).eval();
        bool seen = false;
        for (const RatMat& o : out)
          if (o == h) {
            seen = true;
            break;
          }
        for (const RatMat& o : next)
          if (o == h) {
            seen = true;
            break;
          }
        if (!seen) next.push_back(h);
        if (static_cast<long>(out.size() + next.size()) > cap)
          throw CapExceeded("word closure exceeds " + std::to_string(cap) + " elements");
      }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  return out;
}

bool has_psd(const SymCone& sym) {
  for (const Factor& f : sym.factors)
    if (f.kind == FactorKind::PsdSym) return true;
  return false;
}

}  // namespace

Report cmd_validate(const Instance& inst) {
  json payload;
  payload["ambient"] = validation_json(validate(inst.cone.ambient));
  payload["structure"] = validation_json(validate_clipped(inst.cone));

  json rej = json::array();
  for (const Rejection& r : inst.rejected)
    rej.push_back({{"index", r.index}, {"reason", r.reason}});
  payload["rejected"] = rej;

  bool integral = true;
  json entries = json::array();
  for (size_t i = 0; i < inst.cone.roots.size(); ++i) {
    IntegralityReport r = check_integrality(inst.cone.roots[i], inst.cone.ambient.lattice);
    integral = integral && r.ok;
    json e = {{"root", i}, {"ok", r.ok}};
    if (!r.ok) {
      e["witness_basis"] = r.witness_basis;
      e["coefficient"] = rat_str(r.coefficient);
    }
    entries.push_back(e);
  }
  payload["integrality"] = {{"ok", integral}, {"entries", entries}};

  PairwiseReport pw = check_pairwise(inst.cone.roots, inst.cone.ambient.lattice);
  json viol = json::array();
  for (const PairEntry& p : pw.pairs)
    if (p.cls == AngleClass::Violation || !p.pairing_nonneg)
      viol.push_back({{"i", p.i},
                      {"k", p.k},
                      {"pairing", rat_str(p.pairing)},
                      {"ratio", rat_str(p.ratio)},
                      {"class", angle_str(p.cls)}});
  payload["pairwise"] = {{"ok", pw.ok}, {"violations", viol}};

  bool witness_ok = false;
  try {
    witness_ok = member_clipped(inst.cone, inst.cone.witness, Mode::Interior);
  } catch (const Error&) {
    witness_ok = false;
  }
  payload["witness_interior"] = witness_ok;

  bool ok = payload["ambient"]["ok"].get<bool>() && payload["structure"]["ok"].get<bool>() &&
            inst.rejected.empty() && integral && pw.ok && witness_ok;
  return finish("validate", &inst, nullptr, false, payload, ok);
}

Report cmd_descend(const Instance& inst, const RunOptions& opt) {
  FiniteAction action = instance_action(inst);
  DescentReport rep = descend(inst.cone, action, opt.seed, opt.samples);
  json payload = descent_json(rep);
  payload["group_order"] = action.order();
  RunOptions o = opt;
  return finish("descend", &inst, &o, true, payload, rep.ok);
}

Report cmd_reduce(const Instance& inst, const RatVec& point, const RunOptions& opt) {
  if (point.size() != inst.cone.ambient.lattice.n)
    throw ParseError("point length does not match the instance rank");
  ReductionTrace trace = reduce(point, inst.cone, opt.cap);
  bool in_chamber = true;
  for (const Root& r : inst.cone.roots)
    if (sign(pair_q(inst.cone.ambient, to_rat(r.e), trace.end)) < 0) in_chamber = false;
  json payload = {{"start", jratvec(trace.start)},
                  {"end", jratvec(trace.end)},
                  {"word", sizes(trace.word)},
                  {"crossings_initial", trace.crossings_initial},
                  {"end_in_chamber", in_chamber}};
  return finish("reduce", &inst, nullptr, false, payload, in_chamber);
}

Report cmd_domain(const Instance& inst, const RatVec& base, const RunOptions& opt) {
  const SymCone& sym = inst.cone.ambient;
  long n = sym.lattice.n;
  RatVec a = base.size() == 0 ? inst.cone.witness : base;
  if (a.size() != n) throw ParseError("base length does not match the instance rank");

  std::vector<RatMat> gens;
  for (const Root& r : inst.cone.roots)
    gens.push_back(reflection_matrix(r, sym.lattice));
  if (inst.group)
    for (const IntMat& g : inst.group->generators) gens.push_back(to_rat(g));

  std::vector<RatMat> elements = word_closure(gens, n, opt.word_length, 20000);
  DirichletDomain dom = dirichlet_domain(a, elements, sym);

  Mode filter_mode = has_psd(sym) ? Mode::Closure : Mode::Plus;
  DisjointnessReport dis{};
  if (opt.samples > 0)
    dis = translate_disjointness(
        dom.domain, elements,
        [&](const RatVec& v) { return member(sym, v, filter_mode); }, opt.samples, opt.seed, 8);

  json rays = json::array();
  for (const IntVec& r : dom.domain.rays) rays.push_back(jintvec(r));
  json cuts = json::array();
  for (const RatVec& c : dom.cuts) cuts.push_back(jratvec(c));
  json payload = {{"elements", dom.elements_checked},
                  {"stabilizer", sizes(dom.stabilizer)},
                  {"cuts", cuts},
                  {"rays", rays},
                  {"lines", dom.domain.lines.size()},
                  {"disjointness",
                   {{"samples", dis.samples},
                    {"in_plus", dis.in_plus},
                    {"covered", dis.covered},
                    {"max_count", dis.max_count}}}};
  bool ok = opt.samples == 0 || dis.max_count <= 1;
  RunOptions o = opt;
  return finish("domain", &inst, &o, true, payload, ok);
}

Report cmd_angles(const Instance& inst) {
  PairwiseReport pw = check_pairwise(inst.cone.roots, inst.cone.ambient.lattice);
  json pairs = json::array();
  for (const PairEntry& p : pw.pairs)
    pairs.push_back({{"i", p.i},
                     {"k", p.k},
                     {"pairing", rat_str(p.pairing)},
                     {"ratio", rat_str(p.ratio)},
                     {"class", angle_str(p.cls)},
                     {"nonneg", p.pairing_nonneg}});
  json payload = {{"roots", inst.cone.roots.size()}, {"pairs", pairs}};
  return finish("angles", &inst, nullptr, false, payload, pw.ok);
}

Report cmd_walls(const Instance& inst) {
  FiniteAction action = instance_action(inst);
  std::vector<IntVec> kept = descend_walls(inst.walls, action, inst.cone.ambient.lattice);
  json out = json::array();
  for (const IntVec& w : kept) out.push_back(jintvec(w));
  json payload = {{"input", inst.walls.size()}, {"kept", out}};
  return finish("walls", &inst, nullptr, false, payload, true);
}

Report cmd_selftest(const RunOptions& opt) {
  json results = json::array();
  bool all = true;
  auto record = [&](const std::string& name, bool ok, json detail) {
    detail["name"] = name;
    detail["ok"] = ok;
    results.push_back(detail);
    all = all && ok;
  };

  // A negative-curve pair on a klt surface: the reflection in (1,0) has the
  // non-integral coefficient 4/3, so assumption (ii) fails.
  {
    RatMat g(2, 2);
    g(0, 0) = Rat(-3) / 2;
    g(0, 1) = g(1, 0) = 1;
    g(1, 1) = -2;
    QuadLattice lat(2, g);
    Root root{(IntVec(2) << 1, 0).finished(), 0, Rat(3) / 2};
    IntegralityReport rep = check_integrality(root, lat);
    bool ok = !rep.ok && (rep.coefficient == Rat(4) / 3 || rep.coefficient == Rat(-4) / 3);
    record("klt_regression", ok,
           {{"coefficient", rat_str(rep.coefficient)}, {"witness_basis", rep.witness_basis}});
  }

  // The inscribed 13-gon always carries a pair outside the admissible ratio
  // set.
  {
    ClippedCone gon = thirteen_gon();
    PairwiseReport pw = check_pairwise(gon.roots, gon.ambient.lattice);
    long violations = 0;
    for (const PairEntry& p : pw.pairs)
      if (p.cls == AngleClass::Violation) ++violations;
    record("thirteen_gon_rejected", !pw.ok && violations > 0, {{"violations", violations}});
  }

  // Chamber reduction on U + <-2>.
  {
    RatMat g = RatMat::Zero(3, 3);
    g(0, 1) = g(1, 0) = 1;
    g(2, 2) = -2;
    Factor f;
    f.kind = FactorKind::Lorentz;
    f.coords = {0, 1, 2};
    f.h = (RatVec(3) << 1, 1, 0).finished();
    SymCone sym{QuadLattice(3, g), {f}};
    ClippedCone cone{sym, {Root{(IntVec(3) << 0, 0, 1).finished(), 0, 2}},
                     (RatVec(3) << 2, 1, -1).finished()};
    ReductionTrace trace = reduce((RatVec(3) << 2, 1, 1).finished(), cone);
    bool ok = trace.word == std::vector<size_t>{0} &&
              trace.end == (RatVec(3) << 2, 1, -1).finished();
    record("reduce_example", ok, {{"word_length", trace.word.size()}});
  }

  // Sampled Coxeter ratio law: integral pairs with nonnegative pairing land
  // in {0, 1/4, 1/2, 3/4} or at 1 and beyond.
  {
    std::vector<RatMat> grams;
    for (int k = 1; k <= 4; ++k) {
      RatMat g = RatMat::Zero(3, 3);
      g(0, 1) = g(1, 0) = 1;
      g(2, 2) = -2 * k;
      grams.push_back(g);
      RatMat h = RatMat::Zero(3, 3);
      h(0, 0) = 1;
      h(1, 1) = -1;
      h(2, 2) = -k;
      grams.push_back(h);
    }
    std::mt19937_64 rng(opt.seed + 99);
    std::uniform_int_distribution<long> coord(-5, 5);
    std::uniform_int_distribution<size_t> pick(0, grams.size() - 1);
    long checked = 0, bad_pairs = 0;
    long target = std::max<long>(200, opt.samples);
    while (checked < target) {
      QuadLattice lat(3, grams[pick(rng)]);
      IntVec e1(3), e2(3);
      for (long i = 0; i < 3; ++i) e1(i) = Int(coord(rng));
      for (long i = 0; i < 3; ++i) e2(i) = Int(coord(rng));
      Rat s1 = -lat.norm(to_rat(e1)), s2 = -lat.norm(to_rat(e2));
      if (sign(s1) <= 0 || sign(s2) <= 0) continue;
      if (sign(lat.pair(to_rat(e1), to_rat(e2))) < 0) e2 = (-e2).eval();
      Root r1{e1, 0, s1}, r2{e2, 0, s2};
      if (!check_integrality(r1, lat).ok || !check_integrality(r2, lat).ok) continue;
      PairwiseReport pw = check_pairwise({r1, r2}, lat);
      ++checked;
      if (!pw.ok) ++bad_pairs;
    }
    record("coxeter_ratio_law", bad_pairs == 0,
           {{"pairs", checked}, {"violations", bad_pairs}});
  }

  // Descent round trip on the rank-4 swap example.
  {
    RatMat g = RatMat::Zero(4, 4);
    g(0, 1) = g(1, 0) = 1;
    g(2, 2) = g(3, 3) = -2;
    g(2, 3) = g(3, 2) = 1;
    Factor f;
    f.kind = FactorKind::Lorentz;
    f.coords = {0, 1, 2, 3};
    f.h = (RatVec(4) << 1, 1, 0, 0).finished();
    SymCone sym{QuadLattice(4, g), {f}};
    ClippedCone cone{sym,
                     {Root{(IntVec(4) << 0, 0, 1, 0).finished(), 0, 2},
                      Root{(IntVec(4) << 0, 0, 0, 1).finished(), 0, 2}},
                     (RatVec(4) << 2, 1, -1, -1).finished()};
    IntMat swap = IntMat::Identity(4, 4);
    swap(2, 2) = swap(3, 3) = 0;
    swap(2, 3) = swap(3, 2) = 1;
    DescentReport rep = descend(cone, group_closure({swap}, 8), opt.seed, 200);
    bool ok = rep.ok && rep.I_star.size() == 1 && rep.lifts.size() == 1 &&
              rep.lifts[0].word == std::vector<size_t>{0, 1, 0};
    record("descent_roundtrip", ok, {{"checks", rep.checks.size()}});
  }

  json payload = {{"results", results}};
  RunOptions o = opt;
  return finish("selftest", nullptr, &o, true, payload, all);
}

Report error_report(const std::string& command, const Error& e) {
  json j;
  j["schema"] = 1;
  j["version"] = CLIPCONE_VERSION;
  j["command"] = command;
  j["ok"] = false;
  j["payload"] = {{"error", {{"name", e.name()}, {"message", e.what()}}}};
  return Report{j.dump(2) + "\n", e.name() == "ParseError" ? 2 : 1};
}

long thread_budget() {
  const char* env = std::getenv("CLIPCONE_THREADS");
  if (!env) return 1;
  std::string s(env);
  try {
    size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos != s.size() || v < 1) throw ParseError("");
    return v;
  } catch (const std::exception&) {
    throw ParseError("CLIPCONE_THREADS must be a positive integer, got '" + s + "'");
  }
}

}  // namespace clipcone
