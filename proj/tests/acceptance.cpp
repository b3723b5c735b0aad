// Acceptance gate: one pass/fail line per criterion, exit 0 iff all pass.
#include <chrono>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>
#include <vector>

#include "hopfkit/io.hpp"
#include "hopfkit/suites.hpp"

using namespace hopfkit;

namespace {

int g_failures = 0;

void crit(int num, bool pass, const std::string& detail = "") {
  std::cout << "criterion " << num << ": " << (pass ? "PASS" : "FAIL");
  if (!detail.empty()) std::cout << "  (" << detail << ")";
  std::cout << std::endl;
  if (!pass) ++g_failures;
}

bool rep_ok(const Report& r) { return !r.any_fail(); }

bool lines_pass(const Report& r, const std::string& prefix, long* count = nullptr) {
  long n = 0;
  for (const auto& c : r.checks)
    if (c.name.rfind(prefix, 0) == 0 || c.name.find(prefix) != std::string::npos) {
      ++n;
      if (c.status != "pass") return false;
    }
  if (count) *count = n;
  return n > 0;
}

std::string first_failure(const Report& r) {
  for (const auto& c : r.checks)
    if (c.status == "fail") return c.name + (c.witness.empty() ? "" : ": " + c.witness);
  return "";
}

ModAction conj_action(const FdHopf& hb, const Vec& g, long m) {
  ModAction act;
  act.t_dim = m;
  act.r_dim = hb.dim;
  Vec ginv = hb.apply_antipode(g);
  Vec gp = hb.unit, gip = hb.unit;
  for (long s = 0; s < m; ++s) {
    act.ops.push_back(hb.left_mult_matrix(gp) * hb.right_mult_matrix(gip));
    gp = hb.multiply(gp, g);
    gip = hb.multiply(gip, ginv);
  }
  return act;
}

GenSpec taft_self_dual_spec(long n, const Scalar& q) {
  Scalar one = Scalar::one(q.field());
  GenSpec spec;
  GenSpec::Gen g;
  g.name = "g";
  g.kind = GenSpec::Gen::Kind::GroupLike;
  GenSpec::Gen x;
  x.name = "x";
  x.kind = GenSpec::Gen::Kind::SkewPrimitive;
  x.a_word = {};
  x.b_word = {0};
  spec.gens = {g, x};
  spec.rels.push_back({GenSpec::Poly{{one, std::vector<long>(n, 0)}}, GenSpec::Poly{{one, {}}}});
  spec.rels.push_back({GenSpec::Poly{{one, std::vector<long>(n, 1)}}, GenSpec::Poly{}});
  spec.rels.push_back({GenSpec::Poly{{one, {1, 0}}}, GenSpec::Poly{{q, {0, 1}}}});
  spec.basis_exprs.resize(n * n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      std::vector<long> w;
      for (long e = 0; e < i; ++e) w.push_back(0);
      for (long e = 0; e < j; ++e) w.push_back(1);
      spec.basis_exprs[i * n + j] = GenSpec::Poly{{one, w}};
    }
  return spec;
}

// The smash and crossed products appearing in the structural suites:
// conjugation of the finite quotient by its distinguished group-like.
struct SmashCase {
  std::string name;
  FdHopf smash;
  FdHopf crossed;
};

SmashCase build_smash_case(const std::string& name, const FdHopf& hb, long gen_index) {
  Vec g = hb.basis_vec(gen_index);
  long m = 1;
  Vec v = g;
  while (true) {
    bool is_unit = true;
    for (size_t i = 0; i < v.size(); ++i)
      if (!(v[i] == hb.unit[i])) {
        is_unit = false;
        break;
      }
    if (is_unit) break;
    ++m;
    v = hb.multiply(v, g);
  }
  ModAction act = conj_action(hb, g, m);
  FdHopf k = group_algebra(GroupTable::cyclic(m), hb.field);
  SmashCase sc;
  sc.name = name;
  sc.smash = smash_product(hb, k, act);
  solve_antipode(sc.smash);
  sc.crossed = crossed_product(hb, k, act, Cocycle::trivial(k, hb));
  return sc;
}

// ---------------------------------------------------------------------------
// Criterion 6 brute-force oracle: on the semisimple model k[b]/(b^N - 1),
// stable ideals are exactly the vanishing ideals of inversion-closed point
// sets; the core of a vanishing ideal is the vanishing ideal of the
// inversion-closure.
// ---------------------------------------------------------------------------

bool brute_force_core_match(long n, std::string* detail) {
  FieldDesc f = FieldDesc::cyclotomic(n);
  FdHopf a = group_algebra(GroupTable::cyclic(n), f);
  ModAction act;
  act.t_dim = 2;
  act.r_dim = n;
  Matrix inv(n, n, f);
  for (long k = 0; k < n; ++k) inv.at((n - k) % n, k) = Scalar::one(f);
  act.ops = {Matrix::identity(n, f), inv};
  CommAlgFd ca = CommAlgFd::make(a);
  long npts = static_cast<long>(ca.points.characters.size());
  if (npts != n || !ca.points.certified_complete) {
    *detail = "point enumeration incomplete at N=" + std::to_string(n);
    return false;
  }
  // Point permutation induced by the inversion operator.
  std::vector<long> sigma(npts, -1);
  for (long p = 0; p < npts; ++p) {
    Vec moved(n, Scalar::zero(f));
    for (long j = 0; j < n; ++j)
      for (long i = 0; i < n; ++i) moved[j] += ca.points.characters[p][i] * act.ops[1].at(i, j);
    for (long q = 0; q < npts; ++q) {
      bool eq = true;
      for (long i = 0; i < n; ++i)
        if (!(moved[i] == ca.points.characters[q][i])) {
          eq = false;
          break;
        }
      if (eq) {
        sigma[p] = q;
        break;
      }
    }
    if (sigma[p] < 0) {
      *detail = "inversion does not permute the points";
      return false;
    }
  }
  std::vector<Subspace> kerns;
  for (const auto& chi : ca.points.characters)
    kerns.push_back(IdealFd::point_kernel(ca, chi).space);
  auto vanishing = [&](unsigned long mask) {
    Subspace sp = Subspace::full(n, f);
    for (long p = 0; p < npts; ++p)
      if (mask & (1ul << p)) sp = sp.intersect(kerns[p]);
    return sp;
  };
  // All stable ideals: vanishing ideals of sigma-closed sets.
  std::vector<std::pair<unsigned long, Subspace>> stable;
  for (unsigned long mask = 0; mask < (1ul << npts); ++mask) {
    unsigned long closed = 0;
    for (long p = 0; p < npts; ++p)
      if (mask & (1ul << p)) closed |= (1ul << p) | (1ul << sigma[p]);
    if (closed == mask) stable.push_back({mask, vanishing(mask)});
  }
  for (const auto& [mask, sp] : stable) {
    IdealFd i = IdealFd::make(ca, sp);
    if (!is_stable(act, i)) {
      *detail = "oracle stable ideal not engine-stable at N=" + std::to_string(n);
      return false;
    }
  }
  // Engine core vs brute-force maximum stable ideal, for every vanishing ideal.
  for (unsigned long mask = 0; mask < (1ul << npts); ++mask) {
    Subspace sp = vanishing(mask);
    IdealFd c = core(ca, act, IdealFd::make(ca, sp));
    const Subspace* best = nullptr;
    for (const auto& [smask, ssp] : stable) {
      if (!sp.contains(ssp)) continue;
      if (!best || ssp.dim() > best->dim()) best = &ssp;
    }
    if (!best || !(c.space == *best)) {
      *detail = "core mismatch at N=" + std::to_string(n) + ", mask " + std::to_string(mask);
      return false;
    }
  }
  return true;
}

}  // namespace

int main() {
  long jobs = static_cast<long>(std::thread::hardware_concurrency());
  if (jobs < 1) jobs = 1;
  if (jobs > 8) jobs = 8;

  // ---- criterion 1: axiom suite under a 60 s budget --------------------
  auto t0 = std::chrono::steady_clock::now();
  bool c1 = true;
  std::string c1_detail;
  auto note1 = [&](bool ok, const std::string& what) {
    if (!ok && c1) {
      c1 = false;
      c1_detail = what;
    }
  };
  std::vector<std::pair<std::string, FdHopf>> fd_objects;
  for (long m = 1; m <= 12; ++m)
    fd_objects.push_back({"kC" + std::to_string(m),
                          group_algebra(GroupTable::cyclic(m), FieldDesc::rationals())});
  for (auto [n, t] : std::vector<std::pair<long, long>>{{2, 1}, {3, 1}, {4, 2}, {6, 2}, {6, 3}}) {
    // Finite generalized Taft quotient: x^{n'} = 0 with n' = n/gcd(n,t).
    // (x^n = 0 only yields a bialgebra when gcd(n,t) = 1.)
    Scalar q = Scalar::primitive_root(n);
    long np = n / std::gcd(n, t);
    fd_objects.push_back({"Tf(" + std::to_string(n) + "," + std::to_string(t) + ")",
                          gtx_fd(n, np, t, q, q.field())});
  }
  std::vector<UPosChar> ups;
  for (long p : {3L, 5L}) {
    ups.push_back(u_positive_char(RestrictedLie::sl2(p)));
    note1(ups.back().checks.all_pass, "restricted structure checks at p=" + std::to_string(p));
    fd_objects.push_back({"u[p](sl2), p=" + std::to_string(p), ups.back().h});
  }
  std::vector<SmashCase> smashes;
  smashes.push_back(build_smash_case(
      "dihedral quotient", group_algebra(GroupTable::cyclic(2), FieldDesc::rationals()), 1));
  {
    FdHopf tq = taft_fd(2, 1, Scalar::integer(-1), FieldDesc::rationals());
    smashes.push_back(build_smash_case("taft quotient", tq, tq.label_index("g")));
  }
  for (const auto& sc : smashes) {
    note1(verify(sc.smash).all_pass, "smash product on " + sc.name);
    note1(verify(sc.crossed).all_pass, "crossed product on " + sc.name);
    fd_objects.push_back({"smash(" + sc.name + ")", sc.smash});
  }
  for (const auto& [name, h] : fd_objects) note1(verify(h).all_pass, name);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  note1(secs < 60.0, "runtime " + std::to_string(secs) + " s");
  {
    std::ostringstream os;
    os.precision(1);
    os << std::fixed << fd_objects.size() << " objects in " << secs << " s";
    crit(1, c1, c1 ? os.str() : c1_detail);
  }

  // ---- criterion 2: biduality ------------------------------------------
  {
    bool ok = true;
    std::string detail;
    for (const auto& [name, h] : fd_objects) {
      if (!h.has_coalgebra() || !h.antipode) continue;
      if (!bidual_certified(h)) {
        ok = false;
        detail = name;
        break;
      }
    }
    crit(2, ok, detail);
  }

  // ---- criterion 3: self-duality of T_f(n,1,q) -------------------------
  {
    bool ok = true;
    std::string detail;
    for (long n : {2L, 3L, 4L}) {
      Scalar q = Scalar::primitive_root(n);
      FdHopf t = taft_fd(n, 1, q, q.field());
      IsoResult iso = iso_search(t, dual(t), taft_self_dual_spec(n, q.coerce(t.field)), {q});
      if (!iso.found) {
        ok = false;
        detail = "n=" + std::to_string(n) + ": " + iso.summary;
        break;
      }
    }
    crit(3, ok, detail);
  }

  // ---- criterion 4: restricted enveloping dimensions -------------------
  {
    bool ok = true;
    std::string detail;
    long ps[2] = {3, 5};
    for (size_t i = 0; i < ups.size(); ++i) {
      long p = ps[i];
      if (ups[i].h.dim != p * p * p) {
        ok = false;
        detail = "dim at p=" + std::to_string(p);
        break;
      }
      if (!dual(ups[i].h).is_commutative()) {
        ok = false;
        detail = "dual not commutative at p=" + std::to_string(p);
        break;
      }
    }
    crit(4, ok, detail);
  }

  // ---- run the full suite bundle (reused by criteria 5-11) -------------
  std::vector<std::tuple<std::string, std::string, long>> bundle = {
      {"dihedral-dual", "dihedral", 6},
      {"taft-dual", "taft:4,2,zeta4", 6},
      {"liu-dual", "liu:2,1,-1", 6},
      {"qplane-dual", "qplane:4,2,zeta4", 6},
      {"bfam-dual", "bfam:1,1,2,3", 6},
      {"orbits", "dihedral", 6},
      {"cosplit", "dihedral", 6},
      {"cosplit", "taft:2,1,-1", 6},
      {"cosplit", "taft:4,2,zeta4", 6},
      {"cosplit", "taft:6,3,zeta6", 6},
      {"cosplit", "liu:2,1,-1", 6},
      {"cosplit", "qplane:4,2,zeta4", 6},
      {"cosplit", "bfam:1,1,2,3", 6},
      {"cosplit", "ueps_sl2:3", 4},
      {"w-filtration", "dihedral", 6},
      {"w-filtration", "taft:2,1,-1", 6},
      {"crux", "dihedral", 6},
      {"crux", "taft:2,1,-1", 6},
  };
  auto run_bundle = [&] {
    std::map<std::string, std::pair<Report, std::string>> out;
    for (const auto& [suite, ref, deg] : bundle) {
      Report r = run_suite(suite, ref, deg, 0, jobs);
      out[suite + " " + ref] = {r, report_to_json(r).dump(2)};
    }
    return out;
  };
  auto reports = run_bundle();
  auto get = [&](const std::string& key) -> const Report& { return reports.at(key).first; };

  // ---- criterion 5: dihedral suite -------------------------------------
  {
    const Report& r = get("dihedral-dual dihedral");
    bool ok = rep_ok(r) && lines_pass(r, "coproduct.tangent_formula") &&
              lines_pass(r, "coproduct.character_formula") && lines_pass(r, "hat_dim") &&
              lines_pass(r, "product_law") && lines_pass(r, "hbar_star");
    crit(5, ok, ok ? "" : first_failure(r));
  }

  // ---- criterion 6: orbit engine vs brute force ------------------------
  {
    bool ok = true;
    std::string detail;
    for (long n : {4L, 6L, 8L}) {
      Report r = orbits_suite("dihedral", n, 0);
      if (!rep_ok(r) || r.any_conditional()) {
        ok = false;
        detail = "suite at N=" + std::to_string(n) + ": " + first_failure(r);
        break;
      }
      if (!brute_force_core_match(n, &detail)) {
        ok = false;
        break;
      }
    }
    crit(6, ok, detail);
  }

  // ---- criterion 7: dimension law --------------------------------------
  {
    bool ok = true;
    std::string detail;
    for (const char* key : {"dihedral-dual dihedral", "taft-dual taft:4,2,zeta4",
                            "liu-dual liu:2,1,-1", "qplane-dual qplane:4,2,zeta4"}) {
      const Report& r = get(key);
      if (!lines_pass(r, "dim_law")) {
        ok = false;
        detail = std::string(key) + ": " + first_failure(r);
        break;
      }
    }
    crit(7, ok, detail);
  }

  // ---- criterion 8: coideal splitting ----------------------------------
  {
    bool ok = true;
    std::string detail;
    for (const char* key :
         {"cosplit dihedral", "cosplit taft:2,1,-1", "cosplit taft:4,2,zeta4",
          "cosplit taft:6,3,zeta6", "cosplit liu:2,1,-1", "cosplit qplane:4,2,zeta4",
          "cosplit bfam:1,1,2,3", "cosplit ueps_sl2:3"}) {
      const Report& r = get(key);
      if (!rep_ok(r) || !lines_pass(r, "cosplit(")) {
        ok = false;
        detail = std::string(key) + ": " + first_failure(r);
        break;
      }
    }
    crit(8, ok, detail);
  }

  // ---- criterion 9: dual decomposition and character homomorphism ------
  {
    bool ok = true;
    std::string detail;
    if (!lines_pass(get("taft-dual taft:4,2,zeta4"), "dual_decomposition.iso_found")) {
      ok = false;
      detail = "taft dual decomposition";
    } else if (!lines_pass(get("liu-dual liu:2,1,-1"), "equals_truncated_gx_model")) {
      ok = false;
      detail = "liu finite quotient model";
    } else {
      for (const char* key : {"taft-dual taft:4,2,zeta4", "liu-dual liu:2,1,-1",
                              "qplane-dual qplane:4,2,zeta4", "bfam-dual bfam:1,1,2,3"}) {
        if (!lines_pass(get(key), "character_homomorphism")) {
          ok = false;
          detail = std::string(key) + ": " + first_failure(get(key));
          break;
        }
      }
    }
    crit(9, ok, detail);
  }

  // ---- criterion 10: filtration classification and normality -----------
  {
    bool ok = true;
    std::string detail;
    for (const char* key : {"w-filtration dihedral", "w-filtration taft:2,1,-1"}) {
      const Report& r = get(key);
      if (!rep_ok(r) || !lines_pass(r, "normality.")) {
        ok = false;
        detail = std::string(key) + ": " + first_failure(r);
        break;
      }
    }
    crit(10, ok, detail);
  }

  // All bundle reports must pass overall (the structural suites beyond the
  // criteria named above are part of the gate too).
  {
    for (const auto& [key, rp] : reports)
      if (!rep_ok(rp.first)) {
        crit(11, false, "suite failed before determinism check: " + key + ": " +
                            first_failure(rp.first));
        std::cout << (g_failures ? "ACCEPTANCE: FAIL" : "ACCEPTANCE: PASS") << std::endl;
        return g_failures ? 1 : 0;
      }
  }

  // ---- criterion 11: byte-identical reruns ------------------------------
  {
    auto second = run_bundle();
    bool ok = true;
    std::string detail;
    for (const auto& [key, rp] : reports) {
      if (second.at(key).second != rp.second) {
        ok = false;
        detail = key;
        break;
      }
    }
    crit(11, ok, detail);
  }

  std::cout << (g_failures ? "ACCEPTANCE: FAIL" : "ACCEPTANCE: PASS") << std::endl;
  return g_failures ? 1 : 0;
}
