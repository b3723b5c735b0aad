#include "hopfkit/scalar.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace hopfkit {

FieldDesc FieldDesc::cyclotomic(long n) {
  if (n < 1) throw field_error("cyclotomic order must be >= 1");
  if (n <= 2) return rationals();
  return {Kind::Cyclotomic, n};
}

FieldDesc FieldDesc::gf(long p) {
  if (p < 2) throw field_error("prime field characteristic must be >= 2");
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) throw field_error("prime field characteristic must be prime");
  return {Kind::PrimeField, p};
}

long euler_phi(long n) {
  long result = n;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

long FieldDesc::degree() const {
  if (kind == Kind::Cyclotomic) return euler_phi(n);
  return 1;
}

std::string FieldDesc::str() const {
  switch (kind) {
    case Kind::Rationals: return "Q";
    case Kind::Cyclotomic: return "Q(zeta_" + std::to_string(n) + ")";
    case Kind::PrimeField: return "GF(" + std::to_string(n) + ")";
  }
  return "?";
}

FieldDesc join(const FieldDesc& a, const FieldDesc& b) {
  if (a == b) return a;
  if (a.is_prime_field() || b.is_prime_field())
    throw field_error("cannot mix " + a.str() + " with " + b.str());
  if (a.is_rationals()) return b;
  if (b.is_rationals()) return a;
  return FieldDesc::cyclotomic(std::lcm(a.n, b.n));
}

namespace {

void poly_trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Remainder of a modulo the monic polynomial m.
QPoly poly_rem(QPoly a, const QPoly& m) {
  poly_trim(a);
  const size_t dm = m.size() - 1;
  while (a.size() > dm) {
    mpq_class c = a.back();
    size_t shift = a.size() - 1 - dm;
    for (size_t i = 0; i < dm; ++i) a[shift + i] -= c * m[i];
    a.pop_back();
    poly_trim(a);
  }
  return a;
}

// Quotient of a by the monic polynomial m, assuming exact division.
QPoly poly_quo_exact(QPoly a, const QPoly& m) {
  poly_trim(a);
  const size_t dm = m.size() - 1;
  QPoly q(a.size() > dm ? a.size() - dm : 0, mpq_class(0));
  while (a.size() > dm) {
    mpq_class c = a.back();
    size_t shift = a.size() - 1 - dm;
    q[shift] = c;
    for (size_t i = 0; i <= dm; ++i) a[shift + i] -= c * m[i];
    poly_trim(a);
  }
  return q;
}

QPoly poly_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1, mpq_class(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// Extended Euclid: returns (g, u) with u*a = g mod m, g the monic gcd.
std::pair<QPoly, QPoly> poly_half_xgcd(QPoly a, QPoly m) {
  QPoly r0 = std::move(m), r1 = std::move(a);
  poly_trim(r0);
  poly_trim(r1);
  QPoly u0 = {}, u1 = {mpq_class(1)};
  while (!r1.empty()) {
    // divide r0 by r1
    QPoly q;
    QPoly rem = r0;
    const mpq_class lead = r1.back();
    while (rem.size() >= r1.size()) {
      mpq_class c = rem.back() / lead;
      size_t shift = rem.size() - r1.size();
      if (q.size() < shift + 1) q.resize(shift + 1, mpq_class(0));
      q[shift] = c;
      for (size_t i = 0; i < r1.size(); ++i) rem[shift + i] -= c * r1[i];
      poly_trim(rem);
    }
    QPoly qu1 = poly_mul(q, u1);
    QPoly u2 = u0;
    if (u2.size() < qu1.size()) u2.resize(qu1.size(), mpq_class(0));
    for (size_t i = 0; i < qu1.size(); ++i) u2[i] -= qu1[i];
    poly_trim(u2);
    u0 = std::move(u1);
    u1 = std::move(u2);
    r0 = std::move(r1);
    r1 = std::move(rem);
  }
  // normalize gcd monic
  if (!r0.empty()) {
    mpq_class lead = r0.back();
    for (auto& c : r0) c /= lead;
    for (auto& c : u0) c /= lead;
  }
  return {r0, u0};
}

std::vector<long> divisors(long n) {
  std::vector<long> ds;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      ds.push_back(d);
      if (d != n / d) ds.push_back(n / d);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

long mod_pow(long b, long e, long p) {
  long r = 1 % p;
  b %= p;
  if (b < 0) b += p;
  while (e > 0) {
    if (e & 1) r = (long)((__int128)r * b % p);
    b = (long)((__int128)b * b % p);
    e >>= 1;
  }
  return r;
}

long mod_inv(long a, long p) {
  long t = 0, nt = 1, r = p, nr = a % p;
  if (nr < 0) nr += p;
  while (nr != 0) {
    long q = r / nr;
    std::swap(t -= q * nt, nt);
    std::swap(r -= q * nr, nr);
  }
  if (r != 1) throw field_error("division by zero divisor in GF(p)");
  return t < 0 ? t + p : t;
}

}  // namespace

const QPoly& cyclotomic_polynomial(long n) {
  static std::map<long, QPoly> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  if (n < 1) throw field_error("cyclotomic order must be >= 1");

  std::function<const QPoly&(long)> get = [&](long m) -> const QPoly& {
    auto jt = cache.find(m);
    if (jt != cache.end()) return jt->second;
    QPoly xm1(m + 1, mpq_class(0));
    xm1[0] = -1;
    xm1[m] = 1;
    QPoly acc = xm1;
    for (long d : divisors(m)) {
      if (d == m) continue;
      acc = poly_quo_exact(acc, get(d));
    }
    return cache.emplace(m, std::move(acc)).first->second;
  };
  return get(n);
}

void Scalar::reduce() {
  if (field_.is_prime_field()) {
    residue_ %= field_.n;
    if (residue_ < 0) residue_ += field_.n;
    coeffs_.clear();
    return;
  }
  if (field_.is_cyclotomic()) {
    coeffs_ = poly_rem(std::move(coeffs_), cyclotomic_polynomial(field_.n));
  }
  poly_trim(coeffs_);
  if (coeffs_.empty()) coeffs_.push_back(mpq_class(0));
  if (field_.is_rationals() && coeffs_.size() > 1)
    throw field_error("rational scalar with nonconstant representation");
}

Scalar Scalar::rational(const mpq_class& v) {
  Scalar s;
  s.coeffs_ = {v};
  return s;
}

Scalar Scalar::zero(const FieldDesc& f) { return from_int(0, f); }
Scalar Scalar::one(const FieldDesc& f) { return from_int(1, f); }

Scalar Scalar::from_int(long v, const FieldDesc& f) {
  Scalar s;
  s.field_ = f;
  if (f.is_prime_field()) {
    s.residue_ = v;
    s.coeffs_.clear();
  } else {
    s.coeffs_ = {mpq_class(v)};
  }
  s.reduce();
  return s;
}

Scalar Scalar::cyclotomic(const FieldDesc& f, QPoly coeffs) {
  if (f.is_prime_field()) throw field_error("cyclotomic representation in GF(p)");
  Scalar s;
  s.field_ = f;
  s.coeffs_ = std::move(coeffs);
  s.reduce();
  return s;
}

Scalar Scalar::gf(long p, long v) { return from_int(v, FieldDesc::gf(p)); }

Scalar Scalar::primitive_root(long n) {
  if (n < 1) throw field_error("root order must be >= 1");
  if (n == 1) return integer(1);
  if (n == 2) return integer(-1);
  return cyclotomic(FieldDesc::cyclotomic(n), {mpq_class(0), mpq_class(1)});
}

bool Scalar::is_zero() const {
  if (field_.is_prime_field()) return residue_ == 0;
  return coeffs_.size() == 1 && coeffs_[0] == 0;
}

bool Scalar::is_one() const {
  if (field_.is_prime_field()) return residue_ == 1 % field_.n;
  return coeffs_.size() == 1 && coeffs_[0] == 1;
}

bool Scalar::is_rational_value() const {
  if (field_.is_prime_field()) return false;
  return coeffs_.size() == 1;
}

mpq_class Scalar::rational_value() const {
  if (!is_rational_value()) throw field_error("scalar is not rational");
  return coeffs_[0];
}

Scalar Scalar::coerce(const FieldDesc& f) const {
  if (field_ == f) return *this;
  if (field_.is_prime_field() || f.is_prime_field())
    throw field_error("cannot coerce between " + field_.str() + " and " + f.str());
  if (!f.is_cyclotomic()) throw field_error("cannot coerce " + field_.str() + " into Q");
  Scalar s;
  s.field_ = f;
  if (field_.is_rationals()) {
    s.coeffs_ = coeffs_;
  } else {
    // zeta_m -> zeta_n^(n/m)
    if (f.n % field_.n != 0)
      throw field_error("cannot coerce " + field_.str() + " into " + f.str());
    long step = f.n / field_.n;
    QPoly out(coeffs_.size() * step, mpq_class(0));
    out.resize(std::max<size_t>(out.size(), 1), mpq_class(0));
    for (size_t i = 0; i < coeffs_.size(); ++i) {
      size_t e = i * step;
      if (out.size() <= e) out.resize(e + 1, mpq_class(0));
      out[e] += coeffs_[i];
    }
    s.coeffs_ = std::move(out);
  }
  s.reduce();
  return s;
}

Scalar Scalar::operator-() const {
  Scalar s = *this;
  if (field_.is_prime_field()) {
    s.residue_ = (field_.n - residue_) % field_.n;
  } else {
    for (auto& c : s.coeffs_) c = -c;
  }
  return s;
}

Scalar Scalar::operator+(const Scalar& o) const {
  FieldDesc f = join(field_, o.field_);
  if (f.is_prime_field()) {
    Scalar s;
    s.field_ = f;
    s.coeffs_.clear();
    s.residue_ = (residue_ + o.residue_) % f.n;
    return s;
  }
  Scalar a = coerce(f), b = o.coerce(f);
  if (a.coeffs_.size() < b.coeffs_.size()) a.coeffs_.resize(b.coeffs_.size(), mpq_class(0));
  for (size_t i = 0; i < b.coeffs_.size(); ++i) a.coeffs_[i] += b.coeffs_[i];
  a.reduce();
  return a;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  FieldDesc f = join(field_, o.field_);
  if (f.is_prime_field()) {
    Scalar s;
    s.field_ = f;
    s.coeffs_.clear();
    s.residue_ = (long)((__int128)residue_ * o.residue_ % f.n);
    return s;
  }
  Scalar a = coerce(f), b = o.coerce(f);
  Scalar s;
  s.field_ = f;
  s.coeffs_ = poly_mul(a.coeffs_, b.coeffs_);
  s.reduce();
  return s;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw field_error("division by zero");
  if (field_.is_prime_field()) {
    Scalar s;
    s.field_ = field_;
    s.coeffs_.clear();
    s.residue_ = mod_inv(residue_, field_.n);
    return s;
  }
  if (field_.is_rationals()) return rational(1 / coeffs_[0]);
  auto [g, u] = poly_half_xgcd(coeffs_, cyclotomic_polynomial(field_.n));
  if (g.size() != 1) throw field_error("noninvertible cyclotomic element");
  Scalar s;
  s.field_ = field_;
  s.coeffs_ = std::move(u);
  for (auto& c : s.coeffs_) c /= g[0];
  s.reduce();
  return s;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  if (field_.is_prime_field()) {
    Scalar s;
    s.field_ = field_;
    s.coeffs_.clear();
    s.residue_ = mod_pow(residue_, e, field_.n);
    return s;
  }
  Scalar base = *this, acc = one(field_);
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

bool Scalar::operator==(const Scalar& o) const {
  if (field_ == o.field_) {
    if (field_.is_prime_field()) return residue_ == o.residue_;
    return coeffs_ == o.coeffs_;
  }
  FieldDesc f = join(field_, o.field_);
  return coerce(f).coeffs_ == o.coerce(f).coeffs_;
}

long Scalar::multiplicative_order(long bound) const {
  if (is_zero()) return 0;
  Scalar acc = *this;
  for (long e = 1; e <= bound; ++e) {
    if (acc.is_one()) return e;
    acc = acc * *this;
  }
  return 0;
}

std::string Scalar::str() const {
  if (field_.is_prime_field()) return std::to_string(residue_);
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0 && coeffs_.size() > 1) continue;
    mpq_class c = coeffs_[i];
    if (!first) {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    } else if (c < 0 && i > 0) {
      os << "-";
      c = -c;
    }
    first = false;
    if (i == 0) {
      os << c;
    } else {
      if (c != 1) os << c << "*";
      os << "z";
      if (i > 1) os << "^" << i;
    }
  }
  if (first) os << "0";
  return os.str();
}

Scalar q_binomial(long m, long i, const Scalar& q) {
  if (i < 0 || i > m) throw field_error("q_binomial requires 0 <= i <= m");
  const FieldDesc& f = q.field();
  // Pascal table row by row.
  std::vector<Scalar> row{Scalar::one(f)};
  for (long r = 1; r <= m; ++r) {
    std::vector<Scalar> next(r + 1, Scalar::one(f));
    for (long j = 1; j < r; ++j) next[j] = row[j - 1] + q.pow(j) * row[j];
    row = std::move(next);
  }
  return row[i];
}

bool is_primitive_root_of_unity(const Scalar& s, long n) {
  if (!s.pow(n).is_one()) return false;
  for (long d : divisors(n))
    if (d < n && s.pow(d).is_one()) return false;
  return true;
}

}  // namespace hopfkit
