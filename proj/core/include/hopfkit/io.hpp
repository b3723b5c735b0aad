#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "hopfkit/fdhopf.hpp"

namespace hopfkit {

using json = nlohmann::ordered_json;

/// {"kind":"Q"} | {"kind":"cyclotomic","n":N} | {"kind":"gf","p":P}
json field_to_json(const FieldDesc& f);
FieldDesc field_from_json(const json& j);

/// Scalar literals: rational "a/b", cyclotomic polynomial "3/2*z^2 - 1"
/// interpreted in the declared field, prime-field residue "3".
/// Throws field_error with a "parse:" prefix on malformed input.
Scalar parse_scalar_literal(const std::string& s, const FieldDesc& f);
std::string scalar_literal(const Scalar& s);

/// Structure-constant file: JSON object with "field", "basis" (labels),
/// "mult"/"comult" as arrays of [i, j, k, "scalar"] (a comult entry means
/// e_i contributes scalar * e_j (x) e_k), "unit"/"counit" vectors, optional
/// "antipode" matrix.
json fdhopf_to_json(const FdHopf& h);
FdHopf fdhopf_from_json(const json& j);
FdHopf load_fdhopf(const std::string& path);
void save_fdhopf(const FdHopf& h, const std::string& path);

/// One line of a report: a named check with status pass/fail/conditional
/// and an optional witness in family word notation.
struct CheckLine {
  std::string name;
  std::string status;
  std::string witness;
};

/// Deterministic run report; serialization carries a schema version and no
/// wall-clock data, so identical inputs give byte-identical files.
struct Report {
  std::string input;
  long degree = 0;
  unsigned long seed = 0;
  std::vector<CheckLine> checks;

  void add(const std::string& name, bool pass, const std::string& witness = "");
  void add_conditional(const std::string& name, const std::string& witness = "");
  void merge(const std::string& prefix, const VerifyReport& r);

  bool any_fail() const;
  bool any_conditional() const;
  /// CLI exit code: 0 all pass, 1 any failure, 3 conditional-only.
  int exit_code() const;
};

json report_to_json(const Report& r);
std::string report_text(const Report& r);

}  // namespace hopfkit
