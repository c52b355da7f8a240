#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "clipcone/commands.hpp"

namespace {

using namespace clipcone;

RatVec parse_point(const std::string& text) {
  std::vector<Rat> vals;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t a = item.find_first_not_of(" \t");
    size_t b = item.find_last_not_of(" \t");
    if (a == std::string::npos) throw ParseError("empty coordinate in '" + text + "'");
    vals.push_back(parse_rat(item.substr(a, b - a + 1)));
  }
  if (vals.empty()) throw ParseError("empty point literal");
  RatVec v(static_cast<long>(vals.size()));
  for (size_t i = 0; i < vals.size(); ++i) v(static_cast<long>(i)) = vals[i];
  return v;
}

int emit(const Report& rep, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << rep.text;
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return 2;
    }
    out << rep.text;
  }
  return rep.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact arithmetic toolkit for clipped symmetric cones"};
  app.require_subcommand(1);

  std::string instance_path, out_path, point_text, base_text;
  RunOptions opt;

  app.add_option("--out", out_path, "write the report to this file instead of stdout");
  app.add_option("--seed", opt.seed, "seed for sampled checks");
  app.add_option("--samples", opt.samples, "sample count for sampled checks");
  app.add_option("--word-length", opt.word_length, "word length for the element closure");
  app.add_option("--cap", opt.cap, "iteration cap for the reduction");
  app.fallthrough();

  CLI::App* validate = app.add_subcommand("validate", "structural and arithmetic validation");
  validate->add_option("instance", instance_path, "instance file")->required();
  CLI::App* descend = app.add_subcommand("descend", "invariant descent under the group");
  descend->add_option("instance", instance_path, "instance file")->required();
  CLI::App* reduce = app.add_subcommand("reduce", "reflect a point into the chamber");
  reduce->add_option("instance", instance_path, "instance file")->required();
  reduce->add_option("--point", point_text, "comma separated rational coordinates")->required();
  CLI::App* domain = app.add_subcommand("domain", "truncated Dirichlet cell");
  domain->add_option("instance", instance_path, "instance file")->required();
  domain->add_option("--base", base_text, "cell base point, default: the witness");
  CLI::App* angles = app.add_subcommand("angles", "pairwise angle table of the roots");
  angles->add_option("instance", instance_path, "instance file")->required();
  CLI::App* walls = app.add_subcommand("walls", "symmetrize the wall list");
  walls->add_option("instance", instance_path, "instance file")->required();
  app.add_subcommand("selftest", "built-in regression battery");

  CLI11_PARSE(app, argc, argv);
  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();

  auto t0 = std::chrono::steady_clock::now();
  Report rep;
  try {
    long budget = thread_budget();  // validates CLIPCONE_THREADS
    (void)budget;
    if (name == "selftest") {
      rep = cmd_selftest(opt);
    } else {
      Instance inst = load_instance(instance_path);
      if (sub == validate) rep = cmd_validate(inst);
      else if (sub == descend) rep = cmd_descend(inst, opt);
      else if (sub == reduce) rep = cmd_reduce(inst, parse_point(point_text), opt);
      else if (sub == domain)
        rep = cmd_domain(inst, base_text.empty() ? RatVec(0) : parse_point(base_text), opt);
      else if (sub == angles) rep = cmd_angles(inst);
      else if (sub == walls) rep = cmd_walls(inst);
    }
  } catch (const Error& e) {
    rep = error_report(name, e);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  auto t1 = std::chrono::steady_clock::now();
  double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  std::cerr << name << ": " << ms << " ms\n";  // timing stays off the report
  return emit(rep, out_path);
}
