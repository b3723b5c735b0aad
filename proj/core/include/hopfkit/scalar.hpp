#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace hopfkit {

/// Thrown on domain errors: mixed-field arithmetic with a prime field,
/// division by zero, invalid parameters.
struct field_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Coefficient field descriptor: Q, Q(zeta_n) or F_p.
/// Cyclotomic(1) and Cyclotomic(2) normalize to Rationals.
struct FieldDesc {
  enum class Kind { Rationals, Cyclotomic, PrimeField };
  Kind kind = Kind::Rationals;
  long n = 0;  // cyclotomic order, or the prime p

  static FieldDesc rationals() { return {Kind::Rationals, 0}; }
  static FieldDesc cyclotomic(long n);
  static FieldDesc gf(long p);

  bool is_rationals() const { return kind == Kind::Rationals; }
  bool is_cyclotomic() const { return kind == Kind::Cyclotomic; }
  bool is_prime_field() const { return kind == Kind::PrimeField; }

  /// Euler phi(n) for cyclotomic fields, 1 for Q, undefined for F_p.
  long degree() const;

  bool operator==(const FieldDesc&) const = default;
  std::string str() const;
};

/// Smallest common field of a and b. Q joins Q(zeta_n) as Q(zeta_n),
/// Q(zeta_m) joins Q(zeta_n) as Q(zeta_lcm(m,n)). Any mix involving a
/// prime field is an error unless the fields are equal.
FieldDesc join(const FieldDesc& a, const FieldDesc& b);

/// Dense rational polynomial, coeff[i] * z^i, no trailing zeros.
using QPoly = std::vector<mpq_class>;

/// n-th cyclotomic polynomial Phi_n over Q, computed by exact division
/// of z^n - 1 by the Phi_d for proper divisors d. Cached per n.
const QPoly& cyclotomic_polynomial(long n);

long euler_phi(long n);

/// Exact field element in canonical form; structural equality equals
/// field equality. Values from different compatible fields coerce on
/// arithmetic (see join()).
class Scalar {
 public:
  Scalar() : field_(FieldDesc::rationals()), coeffs_{mpq_class(0)} {}

  static Scalar rational(const mpq_class& v);
  static Scalar integer(long v) { return rational(mpq_class(v)); }
  static Scalar zero(const FieldDesc& f);
  static Scalar one(const FieldDesc& f);
  static Scalar from_int(long v, const FieldDesc& f);
  /// Element of Q(zeta_n) given by a polynomial in zeta; reduced mod Phi_n.
  static Scalar cyclotomic(const FieldDesc& f, QPoly coeffs);
  static Scalar gf(long p, long v);
  /// zeta_n as an element of Q(zeta_n) (of Q for n <= 2).
  static Scalar primitive_root(long n);

  const FieldDesc& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  /// Coefficient vector in zeta (length <= phi(n)); for Q a single entry.
  const QPoly& coeffs() const { return coeffs_; }
  /// Residue in [0,p) for prime-field values.
  long residue() const { return residue_; }
  /// The rational value, if this scalar lies in Q (inside any cyclotomic field).
  bool is_rational_value() const;
  mpq_class rational_value() const;

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar inverse() const;
  Scalar pow(long e) const;

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  /// Least e in [1, bound] with this^e == 1, or 0 if none.
  long multiplicative_order(long bound = 1024) const;

  /// Coerce into field f (which must contain this value's field).
  Scalar coerce(const FieldDesc& f) const;

  std::string str() const;

 private:
  FieldDesc field_;
  QPoly coeffs_;      // rational / cyclotomic representation
  long residue_ = 0;  // prime-field representation

  void reduce();
};

/// Gaussian binomial [m i]_q by the Pascal recurrence
/// [m i]_q = [m-1 i-1]_q + q^i [m-1 i]_q. Requires 0 <= i <= m.
Scalar q_binomial(long m, long i, const Scalar& q);

/// True iff s is a primitive n-th root of unity.
bool is_primitive_root_of_unity(const Scalar& s, long n);

}  // namespace hopfkit
