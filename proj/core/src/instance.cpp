#include "clipcone/instance.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace clipcone {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

const json& field(const json& j, const std::string& key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) bad(where, "missing field '" + key + "'");
  return *it;
}

long integer_at(const json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where, "expected an integer");
  return j.get<long>();
}

Rat rat_at(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  if (j.is_string()) return parse_rat(j.get<std::string>());
  bad(where, "expected an integer or a rational string");
}

RatVec rat_vec(const json& j, long rank, const std::string& where) {
  if (!j.is_array() || static_cast<long>(j.size()) != rank)
    bad(where, "expected an array of length " + std::to_string(rank));
  RatVec v(rank);
  for (long i = 0; i < rank; ++i)
    v(i) = rat_at(j[static_cast<size_t>(i)], where + "[" + std::to_string(i) + "]");
  return v;
}

IntVec int_vec(const json& j, long rank, const std::string& where) {
  if (!j.is_array() || static_cast<long>(j.size()) != rank)
    bad(where, "expected an array of length " + std::to_string(rank));
  IntVec v(rank);
  for (long i = 0; i < rank; ++i)
    v(i) = Int(integer_at(j[static_cast<size_t>(i)], where + "[" + std::to_string(i) + "]"));
  return v;
}

IntMat int_mat(const json& j, long rank, const std::string& where) {
  if (!j.is_array() || static_cast<long>(j.size()) != rank)
    bad(where, "expected " + std::to_string(rank) + " rows");
  IntMat m(rank, rank);
  for (long r = 0; r < rank; ++r) {
    IntVec row = int_vec(j[static_cast<size_t>(r)], rank, where + "[" + std::to_string(r) + "]");
    for (long c = 0; c < rank; ++c) m(r, c) = row(c);
  }
  return m;
}

Factor parse_factor(const json& j, long rank, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  Factor f;
  std::string kind = field(j, "kind", where).get<std::string>();
  if (kind == "halfline")
    f.kind = FactorKind::Halfline;
  else if (kind == "lorentz")
    f.kind = FactorKind::Lorentz;
  else if (kind == "psd")
    f.kind = FactorKind::PsdSym;
  else
    bad(where, "unknown factor kind '" + kind + "'");

  const json& coords = field(j, "coords", where);
  if (!coords.is_array() || coords.empty()) bad(where, "coords must be a nonempty array");
  for (const json& c : coords) {
    long idx = integer_at(c, where + ".coords");
    if (idx < 0 || idx >= rank) bad(where, "coordinate index out of range");
    f.coords.push_back(idx);
  }
  if (f.kind == FactorKind::Lorentz)
    f.h = rat_vec(field(j, "h", where), f.dim(), where + ".h");
  if (f.kind == FactorKind::PsdSym) f.m = integer_at(field(j, "m", where), where + ".m");
  return f;
}

}  // namespace

std::string json_digest(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  // nlohmann::json keeps object keys sorted, so dump() is canonical.
  std::string canon = j.dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : canon) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream out;
  out << std::hex << h;
  return out.str();
}

Instance parse_instance(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("instance: top level must be an object");

  Instance inst;
  inst.schema = integer_at(field(j, "schema", "instance"), "schema");
  if (inst.schema != 1) throw ParseError("instance: unsupported schema version");
  long rank = integer_at(field(j, "rank", "instance"), "rank");
  if (rank < 1) throw ParseError("rank: must be positive");

  RatMat gram(rank, rank);
  {
    const json& g = field(j, "gram", "instance");
    if (!g.is_array() || static_cast<long>(g.size()) != rank)
      throw ParseError("gram: expected " + std::to_string(rank) + " rows");
    for (long r = 0; r < rank; ++r) {
      RatVec row = rat_vec(g[static_cast<size_t>(r)], rank, "gram[" + std::to_string(r) + "]");
      for (long c = 0; c < rank; ++c) gram(r, c) = row(c);
    }
  }

  std::optional<QuadLattice> lat;
  try {
    lat.emplace(rank, gram);
  } catch (const Error& e) {
    throw ParseError(std::string("gram: ") + e.what());
  }
  SymCone sym{*lat, {}};
  const json& factors = field(j, "factors", "instance");
  if (!factors.is_array()) throw ParseError("factors: expected an array");
  for (size_t i = 0; i < factors.size(); ++i)
    sym.factors.push_back(parse_factor(factors[i], rank, "factors[" + std::to_string(i) + "]"));

  RatVec witness = rat_vec(field(j, "witness", "instance"), rank, "witness");

  std::vector<RatVec> raw;
  if (j.contains("roots")) {
    const json& roots = j["roots"];
    if (!roots.is_array()) throw ParseError("roots: expected an array");
    for (size_t i = 0; i < roots.size(); ++i)
      raw.push_back(to_rat(int_vec(roots[i], rank, "roots[" + std::to_string(i) + "]")));
  }

  ClippedCone shell{sym, {}, witness};
  CanonicalRoots canon = canonicalize_roots(raw, shell);
  inst.cone = ClippedCone{sym, canon.roots, witness};
  inst.rejected = canon.rejected;

  if (j.contains("group")) {
    const json& g = j["group"];
    if (!g.is_object()) throw ParseError("group: expected an object");
    GroupSpec spec;
    const json& gens = field(g, "generators", "group");
    if (!gens.is_array()) throw ParseError("group.generators: expected an array");
    for (size_t i = 0; i < gens.size(); ++i)
      spec.generators.push_back(
          int_mat(gens[i], rank, "group.generators[" + std::to_string(i) + "]"));
    if (g.contains("cap")) spec.cap = integer_at(g["cap"], "group.cap");
    if (spec.cap < 1) throw ParseError("group.cap: must be positive");
    inst.group = spec;
  }

  if (j.contains("walls")) {
    const json& walls = j["walls"];
    if (!walls.is_array()) throw ParseError("walls: expected an array");
    for (size_t i = 0; i < walls.size(); ++i)
      inst.walls.push_back(int_vec(walls[i], rank, "walls[" + std::to_string(i) + "]"));
  }

  if (j.contains("d")) {
    inst.d = integer_at(j["d"], "d");
    if (inst.d < 1) throw ParseError("d: must be a positive integer");
  }

  inst.digest = json_digest(text);
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read instance file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

FiniteAction instance_action(const Instance& inst) {
  if (!inst.group) throw PreconditionFailure("instance has no group block");
  return group_closure(inst.group->generators, inst.group->cap);
}

}  // namespace clipcone
