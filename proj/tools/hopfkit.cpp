#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <string>

#include "hopfkit/suites.hpp"

using namespace hopfkit;

namespace {

const std::set<std::string> kFamilyHeads = {"dihedral", "taft",     "liu", "qplane",
                                            "bfam",     "ueps_sl2", "abf", "up"};

bool is_family_ref(const std::string& ref) {
  size_t colon = ref.find(':');
  std::string head = colon == std::string::npos ? ref : ref.substr(0, colon);
  return kFamilyHeads.count(head) > 0;
}

FieldDesc parse_field_flag(const std::string& s) {
  if (s == "Q" || s == "q") return FieldDesc::rationals();
  auto num_after = [&](size_t at) {
    try {
      size_t used = 0;
      long v = std::stol(s.substr(at), &used);
      if (at + used != s.size() || v <= 0) throw field_error("");
      return v;
    } catch (...) {
      throw field_error("parse: bad field override '" + s + "' (use Q, cyclotomic:N, gf:P)");
    }
  };
  if (s.rfind("cyclotomic:", 0) == 0) return FieldDesc::cyclotomic(num_after(11));
  if (s.rfind("zeta", 0) == 0) return FieldDesc::cyclotomic(num_after(4));
  if (s.rfind("gf:", 0) == 0) return FieldDesc::gf(num_after(3));
  throw field_error("parse: bad field override '" + s + "' (use Q, cyclotomic:N, gf:P)");
}

/// Re-reads a structure-constant object in a larger coefficient field.
FdHopf with_field(const FdHopf& h, const FieldDesc& f) {
  json j = fdhopf_to_json(h);
  j["field"] = field_to_json(f);
  return fdhopf_from_json(j);
}

void emit(const Report& rep, const std::string& json_path) {
  std::cout << report_text(rep);
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    if (!out) throw field_error("cannot write '" + json_path + "'");
    out << report_to_json(rep).dump(2) << "\n";
  }
}

long resolve_jobs(long jobs_flag) {
  if (jobs_flag > 0) return jobs_flag;
  if (const char* env = std::getenv("HOPFKIT_JOBS")) {
    try {
      long v = std::stol(env);
      if (v > 0) return v;
    } catch (...) {
    }
  }
  return 1;
}

int cmd_verify(const std::string& ref, long degree, unsigned long seed,
               const std::string& field_override, const std::string& json_path) {
  Report rep;
  rep.input = "verify " + ref;
  rep.degree = degree;
  rep.seed = seed;
  if (is_family_ref(ref)) {
    FamilyObject fo = make_family(ref);
    if (fo.is_based) {
      rep.merge("", verify_based(fo.based, degree));
    } else {
      rep.merge("", verify(fo.up.h));
      rep.merge("restricted", fo.up.checks);
    }
  } else {
    FdHopf h = load_fdhopf(ref);
    if (!field_override.empty()) h = with_field(h, parse_field_flag(field_override));
    rep.merge("", verify(h));
  }
  emit(rep, json_path);
  return rep.exit_code();
}

int cmd_dual(const std::string& ref, const std::string& out_path,
             const std::string& field_override, const std::string& json_path) {
  if (is_family_ref(ref)) {
    FamilyObject fo = make_family(ref);
    if (fo.is_based)
      throw field_error("finite dual of based families is handled by suites, not cmd_dual");
    FdHopf d = dual(fo.up.h);
    Report rep;
    rep.input = "dual " + ref;
    rep.add("bidual_roundtrip", bidual_certified(fo.up.h));
    if (out_path.empty() || out_path == "-")
      std::cout << fdhopf_to_json(d).dump(2) << "\n";
    else
      save_fdhopf(d, out_path);
    emit(rep, json_path);
    return rep.exit_code();
  }
  FdHopf h = load_fdhopf(ref);
  if (!field_override.empty()) h = with_field(h, parse_field_flag(field_override));
  FdHopf d = dual(h);
  Report rep;
  rep.input = "dual " + ref;
  rep.add("bidual_roundtrip", bidual_certified(h));
  if (out_path.empty() || out_path == "-")
    std::cout << fdhopf_to_json(d).dump(2) << "\n";
  else
    save_fdhopf(d, out_path);
  emit(rep, json_path);
  return rep.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hopfkit: exact verification toolkit for Hopf algebra families"};
  app.require_subcommand(1);
  app.fallthrough();

  long degree = 6;
  unsigned long seed = 0;
  long jobs_flag = 0;
  std::string field_override, json_path;
  app.add_option("--degree", degree, "Degree bound for based-family sweeps")->capture_default_str();
  app.add_option("--seed", seed, "Seed for randomized property checks")->capture_default_str();
  app.add_option("--field", field_override, "Coefficient field override (Q, cyclotomic:N, gf:P)");
  app.add_option("--json", json_path, "Write the JSON report to this path");
  app.add_option("--jobs", jobs_flag, "Max concurrent checks (default: HOPFKIT_JOBS or 1)");

  std::string ref, suite_name, out_path;
  auto* verify_cmd = app.add_subcommand("verify", "Run the axiom suite on a family or file");
  verify_cmd->add_option("ref", ref, "Family reference or structure-constant file")->required();

  auto* dual_cmd = app.add_subcommand("dual", "Emit the dual of a finite-dimensional object");
  dual_cmd->add_option("ref", ref, "Family reference or structure-constant file")->required();
  dual_cmd->add_option("--out", out_path, "Output path for the dual (default: stdout)");

  auto* suite_cmd = app.add_subcommand("suite", "Run a named check suite");
  suite_cmd->add_option("name", suite_name, "Suite name")->required();
  suite_cmd->add_option("ref", ref, "Family reference");

  auto* orbits_cmd = app.add_subcommand("orbits", "Run the orbit/core suite");
  orbits_cmd->add_option("ref", ref, "Family reference")->required();

  auto* cosplit_cmd = app.add_subcommand("cosplit", "Run the coideal-splitting suite");
  cosplit_cmd->add_option("ref", ref, "Family reference")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    long jobs = resolve_jobs(jobs_flag);
    if (verify_cmd->parsed()) return cmd_verify(ref, degree, seed, field_override, json_path);
    if (dual_cmd->parsed()) return cmd_dual(ref, out_path, field_override, json_path);
    Report rep;
    if (suite_cmd->parsed())
      rep = run_suite(suite_name, ref, degree, seed, jobs);
    else if (orbits_cmd->parsed())
      rep = run_suite("orbits", ref, degree, seed, jobs);
    else
      rep = run_suite("cosplit", ref, degree, seed, jobs);
    emit(rep, json_path);
    return rep.exit_code();
  } catch (const field_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
