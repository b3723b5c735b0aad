#pragma once

#include "hopfkit/based.hpp"
#include "hopfkit/construct.hpp"

namespace hopfkit {

/// Group algebra of the infinite dihedral group <a, b : a^2 = 1, a b a = b^-1>
/// over Q; words b^i a^eps, normal subalgebra A = k[b^{+-1}].
BasedHopf dihedral_family();

/// Infinite Taft algebra T(n,t,q) = k<g, x : g^n = 1, x g = q g x> with
/// Delta(x) = x (x) 1 + g^t (x) x; A = k[x^{n'}], n' = n / gcd(n,t).
/// q must be a primitive n-th root of unity.
BasedHopf taft_family(long n, long t, const Scalar& q);

/// Generalised Liu algebra: x^{+-1} central group-like, g, y with
/// y g = q g y, g^n = x^w, y^n = 1 - x^w, Delta(y) = y (x) 1 + g (x) y;
/// A = k[x^{+-1}]. q must be a primitive n-th root of unity.
BasedHopf liu_family(long n, long w, const Scalar& q);

/// Localised quantum plane k<x^{+-1}, y : x y = q y x> with x group-like and
/// Delta(y) = y (x) 1 + x^n (x) y; A = k[x^{+-l}, y^{l'}], l' = l / gcd(n,l).
/// q must be a primitive l-th root of unity.
BasedHopf qplane_family(long ell, long n, const Scalar& q);

/// Subalgebra of the localised quantum plane generated by x^{+-1} and the
/// y^{m_i} (m_i = prod_{j != i, j >= 1} p_j), with l = (n/p0) p1...ps and
/// A = k[y^{p1...ps}, x^{+-l}]. p is the list {p0, ..., ps}; q defaults to a
/// primitive l-th root when omitted in a reference string.
BasedHopf bfam_family(long n, const std::vector<long>& p, const Scalar& q);

/// Quantised enveloping algebra of sl2 at a primitive l-th root of unity
/// (l odd, >= 3), PBW words F^a K^b E^c; central A = k[E^l, F^l, K^{+-l}].
/// Only verify_based and cosplit_check are supported (hbar is left empty).
BasedHopf ueps_sl2_family(long ell);

/// Group algebra of Z^rank x| F for a finite group F acting by the integer
/// matrices mats[f] (one rank x rank matrix per group element, forming a
/// homomorphism F -> GL(rank, Z)); A = k[Z^rank].
BasedHopf abf_group_family(long rank, const std::vector<std::vector<std::vector<long>>>& mats,
                           const GroupTable& f);

/// Restricted enveloping algebra data: H = u^[p](g) together with the images
/// of the x_i^p (= x_i^[p] in u^[p]) and the checks that they are primitive
/// and central, mechanizing that A = k[x_i^p - x_i^[p]] is a central Hopf
/// subalgebra with H/A+H = u^[p](g) itself.
struct UPosChar {
  FdHopf h;
  FdHopf hbar;  // equal to h
  std::vector<Vec> p_powers;
  VerifyReport checks;  // p_power_primitive, p_power_central
};
UPosChar u_positive_char(const RestrictedLie& lie);

/// One constructed family instance: either a based (infinite-dimensional)
/// Hopf algebra or a finite-dimensional restricted enveloping algebra.
struct FamilyObject {
  std::string name;
  bool is_based = true;
  BasedHopf based;
  UPosChar up;
};

/// Parses a family reference: "dihedral", "taft:4,2,zeta4", "liu:2,1,-1",
/// "qplane:4,2,zeta4", "bfam:1,1,2,3", "ueps_sl2:3", "abf:inv", "abf:swap2",
/// "up:sl2,5", "up:ab2,3". Throws field_error on malformed references.
FamilyObject make_family(const std::string& ref);

/// Scalar literals used in references: "zetaN", integers, "a/b".
Scalar parse_scalar_token(const std::string& tok);

/// Finite Hopf algebra k<g, x : g^ng = 1, x^nx = 0, x g = qc g x> with
/// Delta(x) = x (x) 1 + g^m (x) x; basis g^i x^j. Requires ord(qc^m) = nx
/// (or nx = 1) so that x^nx = 0 is a coideal relation.
FdHopf gtx_fd(long ng, long nx, long m, const Scalar& qc, const FieldDesc& field,
              const std::string& gname = "g", const std::string& xname = "x");

}  // namespace hopfkit
