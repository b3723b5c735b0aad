#include "hopfkit/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace hopfkit {

json field_to_json(const FieldDesc& f) {
  json j;
  switch (f.kind) {
    case FieldDesc::Kind::Rationals:
      j["kind"] = "Q";
      break;
    case FieldDesc::Kind::Cyclotomic:
      j["kind"] = "cyclotomic";
      j["n"] = f.n;
      break;
    case FieldDesc::Kind::PrimeField:
      j["kind"] = "gf";
      j["p"] = f.n;
      break;
  }
  return j;
}

FieldDesc field_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw field_error("parse: field descriptor needs a \"kind\" string");
  std::string k = j["kind"].get<std::string>();
  if (k == "Q") return FieldDesc::rationals();
  if (k == "cyclotomic") {
    if (!j.contains("n") || !j["n"].is_number_integer())
      throw field_error("parse: cyclotomic field needs integer \"n\"");
    return FieldDesc::cyclotomic(j["n"].get<long>());
  }
  if (k == "gf") {
    if (!j.contains("p") || !j["p"].is_number_integer())
      throw field_error("parse: prime field needs integer \"p\"");
    return FieldDesc::gf(j["p"].get<long>());
  }
  throw field_error("parse: unknown field kind '" + k + "'");
}

namespace {

mpq_class parse_rational(const std::string& s) {
  if (s.empty()) throw field_error("parse: empty rational literal");
  try {
    mpq_class v(s);
    v.canonicalize();
    return v;
  } catch (...) {
    throw field_error("parse: bad rational literal '" + s + "'");
  }
}

std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

}  // namespace

Scalar parse_scalar_literal(const std::string& s0, const FieldDesc& f) {
  std::string s = strip(s0);
  if (s.empty()) throw field_error("parse: empty scalar literal");
  if (f.is_prime_field()) {
    try {
      size_t used = 0;
      long v = std::stol(s, &used);
      if (used != s.size()) throw field_error("parse: bad residue '" + s + "'");
      return Scalar::gf(f.n, v);
    } catch (const field_error&) {
      throw;
    } catch (...) {
      throw field_error("parse: bad residue '" + s + "'");
    }
  }
  // Split into signed terms at top level.
  std::vector<std::pair<int, std::string>> terms;  // sign, body
  int sign = 1;
  std::string cur;
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if ((c == '+' || c == '-') && !cur.empty() && strip(cur) != "") {
      // 'e'-style exponents never appear; +/- always separate terms except a
      // leading sign or a sign directly after '^' (not produced here).
      terms.emplace_back(sign, strip(cur));
      sign = c == '-' ? -1 : 1;
      cur.clear();
    } else if ((c == '+' || c == '-') && strip(cur).empty()) {
      if (c == '-') sign = -sign;
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (strip(cur).empty()) throw field_error("parse: dangling sign in '" + s0 + "'");
  terms.emplace_back(sign, strip(cur));

  long deg = f.is_cyclotomic() ? f.degree() : 1;
  QPoly coeffs(deg, mpq_class(0));
  for (auto& [sg, body] : terms) {
    mpq_class coef(1);
    long power = 0;
    size_t star = body.find('*');
    std::string zpart;
    if (star != std::string::npos) {
      coef = parse_rational(strip(body.substr(0, star)));
      zpart = strip(body.substr(star + 1));
    } else if (!body.empty() && body[0] == 'z') {
      zpart = body;
    } else {
      coef = parse_rational(body);
    }
    if (!zpart.empty()) {
      if (zpart[0] != 'z') throw field_error("parse: bad term '" + body + "'");
      if (zpart.size() == 1) {
        power = 1;
      } else if (zpart[1] == '^') {
        try {
          power = std::stol(zpart.substr(2));
        } catch (...) {
          throw field_error("parse: bad exponent in '" + body + "'");
        }
      } else {
        throw field_error("parse: bad term '" + body + "'");
      }
      if (power < 0) throw field_error("parse: negative exponent in '" + body + "'");
    }
    if (power > 0 && !f.is_cyclotomic())
      throw field_error("parse: 'z' literal outside a cyclotomic field");
    if (sg < 0) coef = -coef;
    if (f.is_cyclotomic()) {
      // Reduce high powers via the primitive root itself.
      Scalar term = Scalar::primitive_root(f.n).coerce(f).pow(power) *
                    Scalar::rational(coef).coerce(f);
      Scalar acc = Scalar::cyclotomic(f, coeffs) + term;
      const QPoly& cc = acc.coeffs();
      coeffs.assign(deg, mpq_class(0));
      for (size_t i = 0; i < cc.size(); ++i) coeffs[i] = cc[i];
      continue;
    }
    coeffs[0] += coef;
  }
  if (f.is_cyclotomic()) return Scalar::cyclotomic(f, coeffs);
  return Scalar::rational(coeffs[0]);
}

std::string scalar_literal(const Scalar& s) { return s.str(); }

json fdhopf_to_json(const FdHopf& h) {
  json j;
  j["field"] = field_to_json(h.field);
  j["basis"] = h.basis_labels;
  json mult = json::array();
  for (long i = 0; i < h.dim; ++i)
    for (long k = 0; k < h.dim; ++k)
      for (const auto& [m, c] : h.mult[i][k])
        mult.push_back(json::array({i, k, m, scalar_literal(c)}));
  j["mult"] = mult;
  json unit = json::array();
  for (const auto& c : h.unit) unit.push_back(scalar_literal(c));
  j["unit"] = unit;
  if (h.has_coalgebra()) {
    json comult = json::array();
    for (long i = 0; i < h.dim; ++i)
      for (const auto& [a, b, c] : h.comult[i])
        comult.push_back(json::array({i, a, b, scalar_literal(c)}));
    j["comult"] = comult;
    json counit = json::array();
    for (const auto& c : h.counit) counit.push_back(scalar_literal(c));
    j["counit"] = counit;
  }
  if (h.antipode) {
    json s = json::array();
    for (long r = 0; r < h.dim; ++r) {
      json row = json::array();
      for (long c = 0; c < h.dim; ++c) row.push_back(scalar_literal(h.antipode->at(r, c)));
      s.push_back(row);
    }
    j["antipode"] = s;
  }
  return j;
}

FdHopf fdhopf_from_json(const json& j) {
  if (!j.is_object()) throw field_error("parse: structure-constant file must be a JSON object");
  for (const char* key : {"field", "basis", "mult", "unit"})
    if (!j.contains(key))
      throw field_error(std::string("parse: missing \"") + key + "\" entry");
  FdHopf h;
  h.field = field_from_json(j["field"]);
  if (!j["basis"].is_array() || j["basis"].empty())
    throw field_error("parse: \"basis\" must be a nonempty array of labels");
  for (const auto& b : j["basis"]) h.basis_labels.push_back(b.get<std::string>());
  h.dim = static_cast<long>(h.basis_labels.size());
  auto entry = [&](const json& e, const char* what) {
    if (!e.is_array() || e.size() != 4 || !e[0].is_number_integer() ||
        !e[1].is_number_integer() || !e[2].is_number_integer() || !e[3].is_string())
      throw field_error(std::string("parse: bad ") + what + " entry " + e.dump());
    long a = e[0].get<long>(), b = e[1].get<long>(), c = e[2].get<long>();
    if (a < 0 || a >= h.dim || b < 0 || b >= h.dim || c < 0 || c >= h.dim)
      throw field_error(std::string("parse: index out of range in ") + what + " entry " + e.dump());
    return std::tuple<long, long, long, Scalar>(
        a, b, c, parse_scalar_literal(e[3].get<std::string>(), h.field));
  };
  h.mult.assign(h.dim, std::vector<SparseVec>(h.dim));
  for (const auto& e : j["mult"]) {
    auto [i, k, m, c] = entry(e, "mult");
    h.mult[i][k].push_back({m, c});
  }
  auto vec = [&](const json& v, const char* what) {
    if (!v.is_array() || static_cast<long>(v.size()) != h.dim)
      throw field_error(std::string("parse: \"") + what + "\" must have one entry per basis element");
    Vec out;
    for (const auto& c : v) out.push_back(parse_scalar_literal(c.get<std::string>(), h.field));
    return out;
  };
  h.unit = vec(j["unit"], "unit");
  if (j.contains("comult") != j.contains("counit"))
    throw field_error("parse: \"comult\" and \"counit\" must appear together");
  if (j.contains("comult")) {
    h.comult.assign(h.dim, {});
    for (const auto& e : j["comult"]) {
      auto [i, a, b, c] = entry(e, "comult");
      h.comult[i].emplace_back(a, b, c);
    }
    h.counit = vec(j["counit"], "counit");
  }
  if (j.contains("antipode")) {
    const json& s = j["antipode"];
    if (!s.is_array() || static_cast<long>(s.size()) != h.dim)
      throw field_error("parse: \"antipode\" must be a dim x dim matrix");
    Matrix m(h.dim, h.dim, h.field);
    for (long r = 0; r < h.dim; ++r) {
      if (!s[r].is_array() || static_cast<long>(s[r].size()) != h.dim)
        throw field_error("parse: \"antipode\" must be a dim x dim matrix");
      for (long c = 0; c < h.dim; ++c)
        m.at(r, c) = parse_scalar_literal(s[r][c].get<std::string>(), h.field);
    }
    h.antipode = m;
  }
  return h;
}

FdHopf load_fdhopf(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw field_error("parse: cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw field_error(std::string("parse: ") + e.what());
  }
  return fdhopf_from_json(j);
}

void save_fdhopf(const FdHopf& h, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw field_error("cannot write '" + path + "'");
  out << fdhopf_to_json(h).dump(2) << "\n";
}

void Report::add(const std::string& name, bool pass, const std::string& witness) {
  checks.push_back({name, pass ? "pass" : "fail", pass ? "" : witness});
}

void Report::add_conditional(const std::string& name, const std::string& witness) {
  checks.push_back({name, "conditional", witness});
}

void Report::merge(const std::string& prefix, const VerifyReport& r) {
  for (const auto& c : r.checks)
    add(prefix.empty() ? c.name : prefix + "." + c.name, c.pass, c.witness);
}

bool Report::any_fail() const {
  for (const auto& c : checks)
    if (c.status == "fail") return true;
  return false;
}

bool Report::any_conditional() const {
  for (const auto& c : checks)
    if (c.status == "conditional") return true;
  return false;
}

int Report::exit_code() const {
  if (any_fail()) return 1;
  if (any_conditional()) return 3;
  return 0;
}

json report_to_json(const Report& r) {
  json j;
  j["schema"] = "hopfkit-report-1";
  j["input"] = r.input;
  j["degree"] = r.degree;
  j["seed"] = r.seed;
  json checks = json::array();
  for (const auto& c : r.checks) {
    json e;
    e["name"] = c.name;
    e["status"] = c.status;
    if (!c.witness.empty()) e["witness"] = c.witness;
    checks.push_back(e);
  }
  j["checks"] = checks;
  j["exit_code"] = r.exit_code();
  return j;
}

std::string report_text(const Report& r) {
  std::ostringstream os;
  os << "input: " << r.input << " (degree " << r.degree << ", seed " << r.seed << ")\n";
  for (const auto& c : r.checks) {
    os << "  [" << c.status << "] " << c.name;
    if (!c.witness.empty()) os << "  -- " << c.witness;
    os << "\n";
  }
  os << (r.any_fail() ? "FAIL" : (r.any_conditional() ? "CONDITIONAL" : "PASS")) << "\n";
  return os.str();
}

}  // namespace hopfkit
