#include <cstdlib>
#include <string>

#include "clipcone/commands.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace clipcone;
using nlohmann::json;

namespace {

Instance corpus(const std::string& name) {
  return load_instance(std::string(CLIPCONE_CORPUS_DIR) + "/" + name + ".json");
}

json payload_of(const Report& rep) { return json::parse(rep.text)["payload"]; }

RatVec rv(std::initializer_list<int> xs) {
  RatVec v(static_cast<long>(xs.size()));
  long i = 0;
  for (int x : xs) v(i++) = x;
  return v;
}

}  // namespace

TEST_CASE("validate accepts the baseline instance") {
  Report rep = cmd_validate(corpus("u_neg2"));
  CHECK(rep.exit_code == 0);
  json j = json::parse(rep.text);
  CHECK(j["ok"] == true);
  CHECK(j["command"] == "validate");
  CHECK(j["instance"].is_string());
  CHECK(j["payload"]["pairwise"]["ok"] == true);
  CHECK(j["payload"]["witness_interior"] == true);
}

TEST_CASE("validate rejects the klt surface pair with the exact coefficient") {
  Report rep = cmd_validate(corpus("kltk3"));
  CHECK(rep.exit_code == 1);
  CHECK(rep.text.find("4/3") != std::string::npos);
  json j = payload_of(rep);
  CHECK(j["integrality"]["ok"] == false);
  CHECK(j["integrality"]["entries"][0]["coefficient"].get<std::string>().find("4/3") !=
        std::string::npos);
}

TEST_CASE("validate rejects the thirteen gon through the angle law") {
  Report rep = cmd_validate(corpus("thirteen_gon"));
  CHECK(rep.exit_code == 1);
  json j = payload_of(rep);
  CHECK(j["pairwise"]["ok"] == false);
  CHECK(j["pairwise"]["violations"].size() >= 1);
  CHECK(j["witness_interior"] == true);
}

TEST_CASE("descend reports the swap instance") {
  Report rep = cmd_descend(corpus("rank4_swap"), RunOptions{3, 300, 2, 10000});
  CHECK(rep.exit_code == 0);
  json j = payload_of(rep);
  CHECK(j["ok"] == true);
  CHECK(j["I_star"].size() == 1);
  CHECK(j["lifts"][0]["word"] == json::array({0, 1, 0}));
  CHECK(j["root_orbits"][0]["pairing"] == "-1");
  CHECK(j["checks"]["geometric_equality"] == true);
  CHECK(json::parse(rep.text)["seed"] == 3);
}

TEST_CASE("descend on the identity group keeps the ambient cone") {
  Report rep = cmd_descend(corpus("rank4_identity"), RunOptions{1, 200, 2, 10000});
  CHECK(rep.exit_code == 0);
  json j = payload_of(rep);
  CHECK(j["m"] == 4);
  CHECK(j["group_order"] == 1);
  CHECK(j["B"]["factors"][0]["dim"] == 4);
  CHECK(j["I_star"].size() == 2);
}

TEST_CASE("descend surfaces broken-witness groups as domain errors") {
  Instance inst = corpus("bad_witness");
  Report rep;
  try {
    rep = cmd_descend(inst, RunOptions{});
  } catch (const Error& e) {
    rep = error_report("descend", e);
  }
  CHECK(rep.exit_code == 1);
  json j = payload_of(rep);
  CHECK(j["error"]["name"] == "PreconditionFailure");
  CHECK(j["error"]["message"].get<std::string>().find("preserve") != std::string::npos);
}

TEST_CASE("descend needs a group block") {
  Instance inst = corpus("kltk3");
  Report rep;
  try {
    rep = cmd_descend(inst, RunOptions{});
  } catch (const Error& e) {
    rep = error_report("descend", e);
  }
  CHECK(rep.exit_code == 1);
  CHECK(payload_of(rep)["error"]["name"] == "PreconditionFailure");
}

TEST_CASE("reduce walks the example point home") {
  Report rep = cmd_reduce(corpus("u_neg2"), rv({2, 1, 1}), RunOptions{});
  CHECK(rep.exit_code == 0);
  json j = payload_of(rep);
  CHECK(j["word"] == json::array({0}));
  CHECK(j["end"] == json::array({"2", "1", "-1"}));
  CHECK(j["end_in_chamber"] == true);
  CHECK_THROWS_AS(cmd_reduce(corpus("u_neg2"), rv({1, 2}), RunOptions{}), ParseError);
}

TEST_CASE("domain with word length zero is the ambient predicate") {
  RunOptions opt;
  opt.word_length = 0;
  opt.samples = 200;
  Report rep = cmd_domain(corpus("u_neg2"), RatVec(0), opt);
  CHECK(rep.exit_code == 0);
  json j = payload_of(rep);
  CHECK(j["elements"] == 1);
  CHECK(j["cuts"].empty());
  CHECK(j["disjointness"]["max_count"] <= 1);
}

TEST_CASE("domain translates stay disjoint") {
  RunOptions opt;
  opt.word_length = 3;
  opt.samples = 400;
  opt.seed = 5;
  Report rep = cmd_domain(corpus("u_neg2"), RatVec(0), opt);
  CHECK(rep.exit_code == 0);
  json j = payload_of(rep);
  CHECK(j["elements"].get<long>() >= 2);
  CHECK(j["disjointness"]["max_count"] == 1);
  CHECK(j["disjointness"]["covered"].get<long>() >= 1);
}

TEST_CASE("angles tabulates the pair classes") {
  Report rep = cmd_angles(corpus("rank4_swap"));
  CHECK(rep.exit_code == 0);
  json j = payload_of(rep);
  REQUIRE(j["pairs"].size() == 1);
  CHECK(j["pairs"][0]["ratio"] == "1/4");
  CHECK(j["pairs"][0]["class"] == "pi3");

  Report gon = cmd_angles(corpus("thirteen_gon"));
  CHECK(gon.exit_code == 1);
  CHECK(gon.text.find("violation") != std::string::npos);
}

TEST_CASE("walls keeps the separating sums") {
  Report rep = cmd_walls(corpus("rank4_swap"));
  CHECK(rep.exit_code == 0);
  json j = payload_of(rep);
  CHECK(j["kept"] == json::array({json::array({"0", "0", "1", "1"})}));

  Report neg = cmd_walls(corpus("negwall"));
  CHECK(neg.exit_code == 0);
  CHECK(payload_of(neg)["kept"] == json::array({json::array({"0", "2", "-2"})}));
}

TEST_CASE("selftest passes its battery") {
  RunOptions opt;
  opt.samples = 300;
  Report rep = cmd_selftest(opt);
  CHECK(rep.exit_code == 0);
  json j = payload_of(rep);
  for (const json& r : j["results"]) CHECK(r["ok"] == true);
  CHECK(j["results"].size() == 5);
}

TEST_CASE("reports are byte identical across runs") {
  RunOptions opt{7, 250, 2, 10000};
  Report a = cmd_descend(corpus("rank4_swap"), opt);
  Report b = cmd_descend(corpus("rank4_swap"), opt);
  CHECK(a.text == b.text);
  Report c = cmd_validate(corpus("thirteen_gon"));
  Report d = cmd_validate(corpus("thirteen_gon"));
  CHECK(c.text == d.text);
}

TEST_CASE("parse errors map to exit code two") {
  try {
    parse_instance("{broken");
    CHECK(false);
  } catch (const Error& e) {
    Report rep = error_report("validate", e);
    CHECK(rep.exit_code == 2);
    CHECK(payload_of(rep)["error"]["name"] == "ParseError");
  }
}

TEST_CASE("the thread budget comes from the environment") {
  unsetenv("CLIPCONE_THREADS");
  CHECK(thread_budget() == 1);
  setenv("CLIPCONE_THREADS", "4", 1);
  CHECK(thread_budget() == 4);
  setenv("CLIPCONE_THREADS", "zero", 1);
  CHECK_THROWS_AS(thread_budget(), ParseError);
  setenv("CLIPCONE_THREADS", "0", 1);
  CHECK_THROWS_AS(thread_budget(), ParseError);
  unsetenv("CLIPCONE_THREADS");
}
