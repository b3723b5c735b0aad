#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "hopfkit/fdhopf.hpp"

namespace hopfkit {

/// Family-specific word encoding: an integer tuple in the family's normal form.
using Word = std::vector<long>;

/// Finitely supported element: normal-form words with coefficients.
using BElem = std::map<Word, Scalar>;
/// Finitely supported tensor: pairs of normal-form words with coefficients.
using BTensor = std::map<std::pair<Word, Word>, Scalar>;

BElem belem_scale(const BElem& e, const Scalar& c);
BElem belem_add(const BElem& a, const BElem& b);
void belem_accum(BElem& into, const BElem& e, const Scalar& c);
bool belem_is_zero(const BElem& e);

/// Finite quotient presentation of an ideal of a based Hopf algebra:
/// a word basis of the quotient and the projection onto it.
struct IdealSpec {
  enum class Kind { AugPower, CoreIdeal, PointIdeal, Intersection };
  Kind kind = Kind::AugPower;
  std::string descr;
  std::vector<Word> quotient_basis;
  std::function<Vec(const BElem&)> project;  // coordinates on quotient_basis
  std::vector<BElem> ideal_generators;       // for vanishing audits
};

/// Normal-form-based (typically infinite-dimensional) Hopf algebra. All maps
/// act on normal-form words and return finitely supported combinations.
struct BasedHopf {
  std::string name;
  FieldDesc field = FieldDesc::rationals();
  Word unit_word;

  std::function<BElem(const Word&, const Word&)> product_ww;
  std::function<BTensor(const Word&)> coproduct_w;
  std::function<Scalar(const Word&)> counit_w;
  std::function<BElem(const Word&)> antipode_w;
  std::function<long(const Word&)> degree;
  std::function<std::vector<Word>(long)> words_up_to;  // all words of degree <= N
  std::function<std::string(const Word&)> word_str;

  std::function<bool(const Word&)> A_predicate;
  std::function<BElem(const Word&)> project_to_A_w;  // the splitting Pi on words
  std::vector<BElem> Aplus_generators;
  /// Which side the complement X is an A-module on (so Pi is A-linear there).
  enum class ASide { Left, Right };
  ASide a_side = ASide::Right;

  FdHopf hbar;  // the declared finite quotient H/A+H
  std::function<Vec(const BElem&)> quotient_to_hbar;

  /// PointIdeal / CoreIdeal / Intersection specs from character parameters;
  /// AugPower(n) from the power. Throws field_error for unsupported requests.
  std::function<IdealSpec(IdealSpec::Kind, long, const std::vector<Scalar>&)> ideal_spec;

  /// chi_g on A-words, for parameters as in char_param_doc.
  std::function<Scalar(const Word&, const std::vector<Scalar>&)> chi_on_A;
  std::string char_param_doc;

  /// Tangent directions on A (f(1)=0, f((A+)^2)=0), by direction index.
  std::function<Scalar(const Word&, long)> tangent_on_A;  // null if none
  long tangent_count = 0;

  // --- conveniences ---
  BElem word_elem(const Word& w) const;
  BElem product(const BElem& a, const BElem& b) const;
  BTensor coproduct(const BElem& e) const;
  Scalar counit(const BElem& e) const;
  BElem antipode(const BElem& e) const;
  BElem project_to_A(const BElem& e) const;
  std::string elem_str(const BElem& e) const;
};

/// Functional on the based Hopf algebra factoring through spec.project.
struct CofiniteFunctional {
  const BasedHopf* host = nullptr;
  IdealSpec spec;
  Vec values;  // on spec.quotient_basis

  Scalar eval(const BElem& e) const;
  Scalar eval_word(const Word& w) const;
};

/// Axioms on all words of degree <= N; also checks A_predicate closure
/// under products. The report witness strings use family word notation.
VerifyReport verify_based(const BasedHopf& h, long n);

struct CosplitResult {
  bool pass = true;
  std::string witness;
};

/// (CoSplit): every element w - Pi(w), for words w of degree <= N, satisfies
/// eps = 0 and (Pi (x) Pi)(Delta .) = 0.
CosplitResult cosplit_check(const BasedHopf& h, long n);

/// Pi-degree functional chi_g o Pi, carried on the family's CoreIdeal(g) quotient.
CofiniteFunctional character_functional(const BasedHopf& h, const std::vector<Scalar>& params);

/// beta o pi for a covector beta on hbar; vanishes on A+H by construction.
CofiniteFunctional pi_upper(const BasedHopf& h, const Vec& beta);

/// Tangent direction extended by zero along X; vanishes on (A+H)^2.
CofiniteFunctional tangent_functional(const BasedHopf& h, long direction);

/// Restriction of f to A-words of degree <= N.
std::vector<std::pair<Word, Scalar>> iota_upper(const CofiniteFunctional& f, long n);

/// Convolution on the named target quotient, with a vanishing audit on the
/// target's ideal generators times words of degree <= N (throws on failure).
CofiniteFunctional convolve(const CofiniteFunctional& f, const CofiniteFunctional& g,
                            const IdealSpec& target, long n);

/// f(h h').
Scalar dual_coproduct_eval(const CofiniteFunctional& f, const BElem& h, const BElem& hp);

/// f(a h) = 0 = f(h a) for A+-generators a and words h of degree <= N.
bool in_Hbar_star(const CofiniteFunctional& f, long n);

/// f vanishes on products of n_power A+-generators times words of degree <= N.
bool in_W(const CofiniteFunctional& f, long n_power, long n);

/// Dual basis of the CoreIdeal(g) quotient.
std::vector<CofiniteFunctional> hat_space(const BasedHopf& h, const std::vector<Scalar>& params);

/// f o S carried on the supplied S-image spec.
CofiniteFunctional antipode_dual(const CofiniteFunctional& f, const IdealSpec& target);

/// Rank of the value matrix of the functionals on the words of spec's
/// quotient basis (for independence and span comparisons).
Matrix functional_value_matrix(const std::vector<CofiniteFunctional>& fs, const IdealSpec& spec);

}  // namespace hopfkit
