#pragma once

#include "hopfkit/fdhopf.hpp"

namespace hopfkit {

/// Finite group by multiplication table.
struct GroupTable {
  long order = 0;
  std::vector<std::vector<long>> mult;  // mult[i][j] = index of g_i g_j
  std::vector<long> inverse;
  long identity = 0;
  std::vector<std::string> labels;

  static GroupTable cyclic(long n);
  static GroupTable dihedral(long n);  // order 2n: b^i a^j, a b a = b^-1
  static GroupTable direct_product(const GroupTable& a, const GroupTable& b);

  /// Throws field_error when associativity/identity/inverse laws fail.
  void validate() const;
};

/// Restricted Lie algebra over F_p by brackets and p-th power map on a basis.
struct RestrictedLie {
  long p = 0;
  long dim = 0;
  std::vector<std::vector<Vec>> brackets;  // [x_i, x_j] as a vector over F_p
  std::vector<Vec> p_map;                  // x_i^[p]
  std::vector<std::string> labels;

  static RestrictedLie abelian(long dim, long p);  // zero brackets, zero p-map
  static RestrictedLie sl2(long p);  // basis e, h, f with h^[p] = h

  /// Antisymmetry, Jacobi, and ad(x^[p]) = ad(x)^p on the basis.
  void validate() const;
};

/// Left module action of a Hopf algebra T on a space R: ops[i] is the
/// operator on R for the i-th basis element of T.
struct ModAction {
  long t_dim = 0, r_dim = 0;
  std::vector<Matrix> ops;

  static ModAction trivial(const FdHopf& t, const FdHopf& r);
  Vec act(const Vec& t_elem, const Vec& r_elem) const;
};

/// sigma : T (x) T -> R on basis pairs; validity is certified extensionally
/// by associativity of the resulting crossed product.
struct Cocycle {
  std::vector<std::vector<Vec>> sigma;  // sigma[i][j] in R

  static Cocycle trivial(const FdHopf& t, const FdHopf& r);
};

FdHopf group_algebra(const GroupTable& g, const FieldDesc& field);

/// Truncated Taft algebra T_f(n,t,q): g^n = 1, x^n = 0, x g = q g x,
/// Delta(x) = x (x) 1 + g^t (x) x. Basis g^i x^j in that order.
FdHopf taft_fd(long n, long t, const Scalar& q, const FieldDesc& field);

FdHopf restricted_enveloping(const RestrictedLie& lie);

Subspace augmentation_ideal(const FdHopf& h);

enum class AdjointSide { Left, Right };

/// ad_l(h)(k) = sum h_1 k S(h_2); ad_r(h)(k) = sum S(h_1) k h_2.
ModAction adjoint_action(const FdHopf& h, AdjointSide side);

struct NormalityResult {
  bool normal = true;
  std::string witness;
};

/// K must be a multiplicatively closed subspace; throws otherwise.
NormalityResult is_normal(const FdHopf& h, const Subspace& k);

/// Throws field_error naming the failed Hopf-ideal test.
FdHopf quotient_hopf(const FdHopf& h, const Subspace& ideal);

/// Smallest two-sided ideal containing the given subspace.
Subspace ideal_closure(const FdHopf& h, const Subspace& seed);

/// Elements commuting with every basis element.
Subspace center(const FdHopf& h);

FdHopf smash_product(const FdHopf& r, const FdHopf& t, const ModAction& act);

FdHopf crossed_product(const FdHopf& r, const FdHopf& t, const ModAction& act,
                       const Cocycle& sigma);

VerifyReport module_algebra_check(const FdHopf& t, const FdHopf& r, const ModAction& act);

}  // namespace hopfkit
