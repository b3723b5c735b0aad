#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "hopfkit/matrix.hpp"

namespace hopfkit {

/// Sparse linear combination of basis elements, sorted by index.
using SparseVec = std::vector<std::pair<long, Scalar>>;
/// One comultiplication entry: e_i contributes c * e_j (x) e_k.
using ComultEntry = std::tuple<long, long, Scalar>;

SparseVec to_sparse(const Vec& v);
Vec to_dense(const SparseVec& v, long dim, const FieldDesc& f);

/// Finite-dimensional (co/bi/Hopf) algebra by structure constants on a
/// labeled basis. The comultiplication may be absent (plain algebra), and
/// the antipode may be absent (bialgebra).
class FdHopf {
 public:
  FieldDesc field = FieldDesc::rationals();
  long dim = 0;
  std::vector<std::string> basis_labels;

  std::vector<std::vector<SparseVec>> mult;  // mult[i][j]: e_i e_j
  Vec unit;                                  // coordinates of 1
  std::vector<std::vector<ComultEntry>> comult;  // empty vector: no coalgebra
  Vec counit;                                // covector
  std::optional<Matrix> antipode;

  bool has_coalgebra() const { return !comult.empty(); }

  Vec zero_vec() const { return Vec(dim, Scalar::zero(field)); }
  Vec basis_vec(long i) const;
  long label_index(const std::string& label) const;

  Vec multiply(const Vec& a, const Vec& b) const;
  Scalar counit_of(const Vec& v) const;
  /// Delta(v) as a dense vector on the flattened tensor basis (row-major).
  Vec comult_vec(const Vec& v) const;
  Matrix left_mult_matrix(const Vec& x) const;
  Matrix right_mult_matrix(const Vec& x) const;
  Vec apply_antipode(const Vec& v) const;

  bool is_commutative() const;
  bool is_cocommutative() const;
};

struct CheckItem {
  std::string name;
  bool pass = true;
  std::string witness;  // empty when passing
};

struct VerifyReport {
  std::vector<CheckItem> checks;
  bool all_pass = true;
  bool is_commutative = false;
  bool is_cocommutative = false;
  bool has_antipode = false;

  void add(const std::string& name, bool pass, const std::string& witness = "");
  const CheckItem* find(const std::string& name) const;
};

/// Full axiom verification: associativity, unit, coassociativity, counit,
/// Delta and epsilon algebra maps, antipode axiom; plus commutativity flags.
VerifyReport verify(const FdHopf& h);

/// Dual Hopf algebra on the dual basis (transpose structure tensors).
FdHopf dual(const FdHopf& h);

FdHopf tensor_product(const FdHopf& a, const FdHopf& b);

/// Solve for the antipode as the convolution inverse of the identity;
/// returns false when no antipode exists (object stays a bialgebra).
bool solve_antipode(FdHopf& h);

struct CharacterList {
  std::vector<Vec> characters;  // covectors, each verified multiplicative
  bool certified_complete = false;
};

/// All algebra maps H -> k found by the per-generator minimal-polynomial
/// candidate method. `generators` empty means: use every basis element.
/// `extra_candidates` extends the root candidate pool.
CharacterList characters(const FdHopf& h, const std::vector<Scalar>& extra_candidates = {},
                         const std::vector<Vec>& generators = {});

/// Group-like elements, computed as characters of dual(H).
CharacterList group_likes(const FdHopf& h, const std::vector<Scalar>& extra_candidates = {});

bool is_group_like(const FdHopf& h, const Vec& v);
bool is_character(const FdHopf& h, const Vec& chi);

/// Solution space of Delta(x) = x (x) a + b (x) x.
Subspace skew_primitives(const FdHopf& h, const Vec& a, const Vec& b);

/// Convolution product on covectors of the coalgebra h (values in k):
/// (f*g)(c) = sum f(c_1) g(c_2).
Vec convolve_cov(const FdHopf& h, const Vec& f, const Vec& g);
/// Convolution unit (the counit as a covector).
Vec convolution_unit(const FdHopf& h);
/// chi compose S (convolution inverse for characters).
Vec precompose_antipode(const FdHopf& h, const Vec& f);

/// Generator-matching isomorphism search specification: named generators
/// with coalgebra roles, defining relations, and an expression of every
/// H1 basis element as a polynomial in the generators.
struct GenSpec {
  struct Gen {
    std::string name;
    enum class Kind { GroupLike, SkewPrimitive } kind = Kind::GroupLike;
    std::vector<long> a_word, b_word;  // generator words for the (a,b) pair
  };
  struct Term {
    Scalar coeff;
    std::vector<long> word;  // product of generator indices; empty = 1
  };
  using Poly = std::vector<Term>;
  struct Rel {
    Poly lhs, rhs;
  };
  std::vector<Gen> gens;
  std::vector<Rel> rels;
  std::vector<Poly> basis_exprs;
};

struct IsoResult {
  bool found = false;
  Matrix map;  // dim2 x dim1, columns are images of H1 basis vectors
  std::vector<Vec> gen_images;
  long nodes_searched = 0;
  std::string summary;
};

/// Depth-first exact search for a Hopf isomorphism matching gen_spec.
IsoResult iso_search(const FdHopf& h1, const FdHopf& h2, const GenSpec& spec,
                     const std::vector<Scalar>& extra_candidates = {});

/// Certify an algebra (not coalgebra) isomorphism from explicitly supplied
/// generator images: builds the basis-expression matrix, then checks
/// invertibility, unit preservation, and multiplicativity on all basis pairs.
IsoResult certify_algebra_iso(const FdHopf& h1, const FdHopf& h2, const GenSpec& spec,
                              const std::vector<Vec>& gen_images);

/// Certify H == dual(dual(H)) via the canonical evaluation map.
bool bidual_certified(const FdHopf& h);

}  // namespace hopfkit
