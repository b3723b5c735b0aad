#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hopfkit/io.hpp"
#include "hopfkit/suites.hpp"

using namespace hopfkit;

namespace {

Scalar I(long v) { return Scalar::integer(v); }

GenSpec taft_self_dual_spec(long n, const Scalar& q) {
  FieldDesc f = q.field();
  Scalar one = Scalar::one(f);
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

}  // namespace

TEST_CASE("exact scalar arithmetic") {
  Scalar z4 = Scalar::primitive_root(4);
  CHECK(z4 * z4 == I(-1));
  Scalar z6 = Scalar::primitive_root(6);
  CHECK(z6 * z6 == z6 - Scalar::one(z6.field()));  // Phi_6 = x^2 - x + 1
  CHECK(z6.pow(3) == I(-1));
  CHECK(z6.multiplicative_order() == 6);
  CHECK(is_primitive_root_of_unity(z4, 4));
  CHECK(!is_primitive_root_of_unity(z4 * z4, 4));
  CHECK(Scalar::rational(mpq_class(1, 2)) + Scalar::rational(mpq_class(1, 3)) ==
        Scalar::rational(mpq_class(5, 6)));
  CHECK(Scalar::gf(7, 3) * Scalar::gf(7, 5) == Scalar::gf(7, 1));
  CHECK(q_binomial(4, 2, I(1)) == I(6));
  CHECK(q_binomial(4, 2, I(-1)) == I(2));
  CHECK(q_binomial(3, 1, z4) == I(1) + z4 + z4 * z4);
}

TEST_CASE("rref rank and subspace lattice") {
  FieldDesc f = FieldDesc::rationals();
  Matrix m(3, 4, f);
  long vals[3][4] = {{1, 2, 3, 4}, {2, 4, 6, 8}, {0, 1, 0, 1}};
  for (long r = 0; r < 3; ++r)
    for (long c = 0; c < 4; ++c) m.at(r, c) = I(vals[r][c]);
  CHECK(rref(m).rank == 2);
  Subspace full = Subspace::full(3, f);
  CHECK(full.dim() == 3);
  CHECK(full.contains(Vec{I(1), I(7), I(-2)}));
}

TEST_CASE("group algebras verify and dualize") {
  for (long m : {2L, 5L}) {
    FdHopf h = group_algebra(GroupTable::cyclic(m), FieldDesc::rationals());
    VerifyReport r = verify(h);
    CHECK(r.all_pass);
    CHECK(r.is_commutative);
    CHECK(r.is_cocommutative);
    CHECK(verify(dual(h)).all_pass);
    CHECK(bidual_certified(h));
  }
  FdHopf c3 = group_algebra(GroupTable::cyclic(3), FieldDesc::cyclotomic(3));
  CharacterList cl = characters(c3);
  CHECK(cl.characters.size() == 3);
  CHECK(cl.certified_complete);
}

TEST_CASE("truncated g-x algebra structure") {
  FdHopf t = taft_fd(2, 1, I(-1), FieldDesc::rationals());
  CHECK(t.dim == 4);
  CHECK(verify(t).all_pass);
  // basis order g^i x^j: 1, x, g, gx
  Vec x = t.basis_vec(1), g = t.basis_vec(2);
  Vec xg = t.multiply(x, g), gx = t.multiply(g, x);
  for (long i = 0; i < t.dim; ++i) CHECK(xg[i] == -gx[i]);
  Vec x2 = t.multiply(x, x);
  for (long i = 0; i < t.dim; ++i) CHECK(x2[i].is_zero());
  // self-duality via generator-matching search
  IsoResult iso = iso_search(t, dual(t), taft_self_dual_spec(2, I(-1).coerce(t.field)), {I(-1)});
  CHECK(iso.found);
}

TEST_CASE("restricted enveloping algebra of sl2 at p=3") {
  UPosChar up = u_positive_char(RestrictedLie::sl2(3));
  CHECK(up.h.dim == 27);
  CHECK(up.checks.all_pass);
  CHECK(verify(up.h).all_pass);
  CHECK(dual(up.h).is_commutative());
}

TEST_CASE("dihedral group algebra word arithmetic") {
  BasedHopf h = dihedral_family();
  // (b^2 a)(b^3) = b^-1 a
  BElem p = h.product_ww({2, 1}, {3, 0});
  REQUIRE(p.size() == 1);
  CHECK(p.begin()->first == Word{-1, 1});
  CHECK(p.begin()->second == Scalar::one(h.field));
  CHECK(h.counit_w({5, 1}) == Scalar::one(h.field));
  // S(a) = a
  BElem s = h.antipode_w({0, 1});
  REQUIRE(s.size() == 1);
  CHECK(s.begin()->first == Word{0, 1});
  CHECK(verify_based(h, 3).all_pass);
}

TEST_CASE("infinite taft family coproduct") {
  BasedHopf h = taft_family(2, 1, I(-1));
  // Delta(x^2) = x^2 (x) 1 + 1 (x) x^2 when q = -1 (the mixed q-binomial
  // coefficient 1+q vanishes and g^2 = 1).
  BTensor d = h.coproduct_w({0, 2});
  BTensor expect;
  expect[{Word{0, 2}, Word{0, 0}}] = Scalar::one(h.field);
  expect[{Word{0, 0}, Word{0, 2}}] = Scalar::one(h.field);
  REQUIRE(d.size() == expect.size());
  for (const auto& [k, v] : expect) {
    auto it = d.find(k);
    REQUIRE(it != d.end());
    CHECK(it->second == v);
  }
  CHECK(verify_based(h, 3).all_pass);
}

TEST_CASE("liu family defining relation") {
  BasedHopf h = liu_family(2, 1, I(-1));
  // y^2 = 1 - x^w with w = 1
  BElem p = h.product_ww({0, 0, 1}, {0, 0, 1});
  REQUIRE(p.size() == 2);
  CHECK(p.at(Word{0, 0, 0}) == Scalar::one(h.field));
  CHECK(p.at(Word{1, 0, 0}) == -Scalar::one(h.field));
  CHECK(verify_based(h, 3).all_pass);
}

TEST_CASE("orbit partition under inversion on four points") {
  long M = 4;
  FieldDesc f = FieldDesc::cyclotomic(M);
  FdHopf a = group_algebra(GroupTable::cyclic(M), f);
  ModAction act;
  act.t_dim = 2;
  act.r_dim = M;
  Matrix inv(M, M, f);
  for (long k = 0; k < M; ++k) inv.at((M - k) % M, k) = Scalar::one(f);
  act.ops = {Matrix::identity(M, f), inv};
  CommAlgFd ca = CommAlgFd::make(a);
  REQUIRE(ca.points.certified_complete);
  OrbitReport orep = is_orbitally_semisimple(ca, act);
  CHECK(orep.semisimple);
  CHECK(!orep.conditional);
  std::vector<long> sizes;
  for (const auto& o : orep.orbits) sizes.push_back(static_cast<long>(o.size()));
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<long>{1, 1, 2});
  CHECK(find_frobenius_witness(ca, 0).found);
}

TEST_CASE("structure-constant files round-trip byte-identically") {
  FdHopf t = taft_fd(3, 1, Scalar::primitive_root(3), FieldDesc::cyclotomic(3));
  json j = fdhopf_to_json(t);
  FdHopf t2 = fdhopf_from_json(j);
  CHECK(verify(t2).all_pass);
  CHECK(fdhopf_to_json(t2).dump() == j.dump());
  CHECK(parse_scalar_literal("1/2", FieldDesc::rationals()) == Scalar::rational(mpq_class(1, 2)));
  CHECK(parse_scalar_literal("z", FieldDesc::cyclotomic(4)) == Scalar::primitive_root(4));
  CHECK_THROWS_AS(parse_scalar_literal("z", FieldDesc::rationals()), field_error);
}

TEST_CASE("suite reports are deterministic") {
  Report a = run_suite("cosplit", "taft:2,1,-1", 4, 0, 1);
  Report b = run_suite("cosplit", "taft:2,1,-1", 4, 0, 2);
  CHECK(!a.any_fail());
  CHECK(report_to_json(a).dump(2) == report_to_json(b).dump(2));
  CHECK_THROWS_AS(run_suite("no-such-suite", "", 4, 0, 1), field_error);
}
