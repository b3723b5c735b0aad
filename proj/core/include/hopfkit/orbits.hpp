#pragma once

#include "hopfkit/construct.hpp"

namespace hopfkit {

/// Commutative finite-dimensional algebra together with its distinguished
/// character list ("points").
struct CommAlgFd {
  FdHopf alg;  // algebra structure (coalgebra optional, unused here)
  CharacterList points;

  /// Verifies commutativity, enumerates points. Throws on noncommutative input.
  static CommAlgFd make(FdHopf a, const std::vector<Scalar>& extra_candidates = {},
                        const std::vector<Vec>& generators = {});
};

/// Subspace certified to be an ideal of a CommAlgFd.
struct IdealFd {
  Subspace space;

  static IdealFd make(const CommAlgFd& a, const Subspace& s);  // verifies ideal
  static IdealFd zero(const CommAlgFd& a);
  /// ker chi for a point chi.
  static IdealFd point_kernel(const CommAlgFd& a, const Vec& chi);
};

/// K . I subset of I on basis pairs.
bool is_stable(const ModAction& act, const IdealFd& i);

/// Largest stable ideal inside I, by the descending chain
/// I_0 = I, I_{m+1} = {v in I_m : K . v in I_m}.
IdealFd core(const CommAlgFd& a, const ModAction& act, const IdealFd& i);

/// Indices into a.points of {chi' : core(ker chi) subset ker chi'}.
std::vector<long> orbit(const CommAlgFd& a, const ModAction& act, long chi_index);

struct OrbitReport {
  std::vector<std::vector<long>> orbits;  // partition of point indices
  std::vector<bool> orbit_ok;             // core == intersection over orbit
  std::vector<bool> crosscheck_ok;        // nilradical of A/core vanishes
  bool semisimple = true;
  bool conditional = false;  // character list not certified complete
};

OrbitReport is_orbitally_semisimple(const CommAlgFd& a, const ModAction& act);

struct HSimpleResult {
  bool simple = true;
  bool conditional = false;
};

/// True iff core(ker chi) = 0 for every point chi.
HSimpleResult is_H_simple(const CommAlgFd& a, const ModAction& act);

/// Full-rank Gram matrix of (x, y) -> lambda(x y).
bool frobenius_witness(const CommAlgFd& a, const Vec& lambda);

struct FrobeniusSearch {
  bool found = false;
  Vec lambda;
  std::string method;  // "dual_basis", "zero_one", or "seeded"
};

/// Deterministic candidates (dual basis vectors, 0/1 combinations up to a
/// budget), then a seeded random fallback.
FrobeniusSearch find_frobenius_witness(const CommAlgFd& a, unsigned long seed = 0);

struct NilradicalResult {
  Subspace radical;
  bool conditional = false;
};

/// Intersection of point kernels, verified nilpotent by matrix powers.
/// Throws "character list incomplete" when the intersection is not nilpotent.
NilradicalResult nilradical(const CommAlgFd& a);

/// Algebra-only quotient by a verified two-sided ideal.
FdHopf quotient_algebra(const FdHopf& h, const Subspace& ideal);

}  // namespace hopfkit
