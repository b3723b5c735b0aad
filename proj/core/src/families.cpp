#include "hopfkit/families.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>

namespace hopfkit {

namespace {

long posmod(long a, long n) { return ((a % n) + n) % n; }

BElem mono(Word w, const Scalar& c) {
  BElem e;
  if (!c.is_zero()) e.emplace(std::move(w), c);
  return e;
}

/// c^a with 0^0 = 1 and 0^a = 0 for a > 0.
Scalar pow0(const Scalar& c, long a, const FieldDesc& f) {
  if (a == 0) return Scalar::one(f);
  if (c.is_zero()) return Scalar::zero(f);
  return c.coerce(f).pow(a);
}

/// Lower coefficients c[0..D-1] of the monic polynomial prod (y - roots[i]),
/// read as the reduction rule y^D = -sum c[k] y^k.
std::vector<Scalar> lower_coeffs_from_roots(const std::vector<Scalar>& roots,
                                            const FieldDesc& f) {
  std::vector<Scalar> poly{Scalar::one(f)};  // coefficients, low to high
  for (const auto& r0 : roots) {
    Scalar r = r0.coerce(f);
    std::vector<Scalar> next(poly.size() + 1, Scalar::zero(f));
    for (size_t k = 0; k < poly.size(); ++k) {
      next[k + 1] += poly[k];
      next[k] -= r * poly[k];
    }
    poly = std::move(next);
  }
  poly.pop_back();  // drop the leading 1
  return poly;
}

/// Representation of y^a modulo y^D = -sum c[k] y^k (a may be negative when
/// c[0] is invertible).
std::vector<Scalar> reduced_power(const std::vector<Scalar>& c, long a, const FieldDesc& f) {
  long D = static_cast<long>(c.size());
  std::vector<Scalar> rep(D, Scalar::zero(f));
  rep[0] = Scalar::one(f);
  auto mul_y = [&](const std::vector<Scalar>& v) {
    std::vector<Scalar> out(D, Scalar::zero(f));
    for (long k = 1; k < D; ++k) out[k] = v[k - 1];
    Scalar top = v[D - 1];
    for (long k = 0; k < D; ++k) out[k] -= top * c[k].coerce(f);
    return out;
  };
  if (a >= 0) {
    for (long s = 0; s < a; ++s) rep = mul_y(rep);
    return rep;
  }
  // y^-1 = -(c[1] + c[2] y + ... + c[D-1] y^{D-2} + y^{D-1}) / c[0]
  if (c[0].is_zero()) throw field_error("reduced_power: negative power with singular modulus");
  std::vector<Scalar> inv(D, Scalar::zero(f));
  Scalar c0i = c[0].coerce(f).inverse();
  for (long k = 1; k < D; ++k) inv[k - 1] = -c[k].coerce(f) * c0i;
  inv[D - 1] -= c0i;
  auto mulmod = [&](const std::vector<Scalar>& u, const std::vector<Scalar>& v) {
    std::vector<Scalar> out(D, Scalar::zero(f));
    std::vector<Scalar> shifted = v;  // v * y^k as k grows
    for (long k = 0; k < D; ++k) {
      if (k > 0) shifted = mul_y(shifted);
      if (u[k].is_zero()) continue;
      for (long t = 0; t < D; ++t) out[t] += u[k] * shifted[t];
    }
    return out;
  };
  for (long s = 0; s < -a; ++s) rep = mulmod(rep, inv);
  return rep;
}

/// Multiply two finitely supported tensors with the family product.
BTensor btensor_mult(const std::function<BElem(const Word&, const Word&)>& prod,
                     const BTensor& a, const BTensor& b) {
  BTensor out;
  for (const auto& [pa, ca] : a)
    for (const auto& [pb, cb] : b) {
      BElem l = prod(pa.first, pb.first);
      BElem r = prod(pa.second, pb.second);
      Scalar cc = ca * cb;
      for (const auto& [wl, cl] : l)
        for (const auto& [wr, cr] : r) {
          auto key = std::make_pair(wl, wr);
          auto it = out.find(key);
          Scalar add = cc * cl * cr;
          if (it == out.end()) {
            if (!add.is_zero()) out.emplace(key, add);
          } else {
            it->second += add;
            if (it->second.is_zero()) out.erase(it);
          }
        }
    }
  return out;
}

BElem belem_product(const std::function<BElem(const Word&, const Word&)>& prod,
                    const BElem& a, const BElem& b) {
  BElem out;
  for (const auto& [wa, ca] : a)
    for (const auto& [wb, cb] : b) belem_accum(out, prod(wa, wb), ca * cb);
  return out;
}

Vec dense_tensor_mult(const FdHopf& h, const Vec& a, const Vec& b) {
  long d = h.dim;
  Vec out(d * d, Scalar::zero(h.field));
  for (long i = 0; i < d * d; ++i) {
    if (a[i].is_zero()) continue;
    long i1 = i / d, i2 = i % d;
    for (long j = 0; j < d * d; ++j) {
      if (b[j].is_zero()) continue;
      long j1 = j / d, j2 = j % d;
      Scalar c = a[i] * b[j];
      for (const auto& [k1, c1] : h.mult[i1][j1])
        for (const auto& [k2, c2] : h.mult[i2][j2]) {
          out[tensor_index(k1, k2, d)] += c * c1 * c2;
        }
    }
  }
  return out;
}

std::vector<ComultEntry> tensor_entries(const Vec& t, long d) {
  std::vector<ComultEntry> out;
  for (long i = 0; i < d * d; ++i)
    if (!t[i].is_zero()) out.emplace_back(i / d, i % d, t[i]);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Finite g/x builder
// ---------------------------------------------------------------------------

FdHopf gtx_fd(long ng, long nx, long m, const Scalar& qc, const FieldDesc& field,
              const std::string& gname, const std::string& xname) {
  if (ng < 1 || nx < 1) throw field_error("gtx_fd: need ng, nx >= 1");
  Scalar q = qc.coerce(field);
  if (nx > 1) {
    long ord = q.pow(m).multiplicative_order();
    if (ord != nx) throw field_error("gtx_fd: ord(qc^m) must equal nx");
  }
  FdHopf h;
  h.field = field;
  h.dim = ng * nx;
  auto idx = [&](long i, long j) { return posmod(i, ng) * nx + j; };
  h.basis_labels.resize(h.dim);
  for (long i = 0; i < ng; ++i)
    for (long j = 0; j < nx; ++j) {
      std::string gi = i == 0 ? "" : (i == 1 ? gname : gname + "^" + std::to_string(i));
      std::string xj = j == 0 ? "" : (j == 1 ? xname : xname + "^" + std::to_string(j));
      std::string l = gi + xj;
      h.basis_labels[idx(i, j)] = l.empty() ? "1" : l;
    }
  h.mult.assign(h.dim, std::vector<SparseVec>(h.dim));
  for (long a = 0; a < ng; ++a)
    for (long b = 0; b < nx; ++b)
      for (long c = 0; c < ng; ++c)
        for (long d = 0; d < nx; ++d) {
          if (b + d >= nx) continue;
          h.mult[idx(a, b)][idx(c, d)] = {{idx(a + c, b + d), q.pow(b * c)}};
        }
  h.unit = h.zero_vec();
  h.unit[idx(0, 0)] = Scalar::one(field);
  Scalar t = q.pow(m);
  h.comult.assign(h.dim, {});
  for (long i = 0; i < ng; ++i)
    for (long j = 0; j < nx; ++j) {
      std::vector<ComultEntry> entries;
      for (long k = 0; k <= j; ++k)
        entries.emplace_back(idx(i + m * k, j - k), idx(i, k), q_binomial(j, k, t));
      h.comult[idx(i, j)] = std::move(entries);
    }
  h.counit.assign(h.dim, Scalar::zero(field));
  for (long a = 0; a < ng; ++a) h.counit[idx(a, 0)] = Scalar::one(field);
  Matrix s(h.dim, h.dim, field);
  for (long a = 0; a < ng; ++a)
    for (long b = 0; b < nx; ++b) {
      // S(g^a x^b) = (-1)^b q^{-m b(b-1)/2 - a b} g^{-m b - a} x^b; the
      // q^{-a b} factor comes from straightening x^b past g^{-a}.
      Scalar coef = q.pow(-m * b * (b - 1) / 2 - a * b);
      if (b % 2 == 1) coef = -coef;
      s.at(idx(-m * b - a, b), idx(a, b)) = coef;
    }
  h.antipode = s;
  return h;
}

// ---------------------------------------------------------------------------
// Dihedral group algebra (and its rank-1 generalization used by abf)
// ---------------------------------------------------------------------------

namespace {

/// Quotient spec with words b^j a^eps (or (j, f)) for j below the modulus
/// degree; projection reduces the b-power on the left.
IdealSpec modulus_spec(IdealSpec::Kind kind, const std::string& descr,
                       const std::vector<Scalar>& lower, long fcount,
                       const FieldDesc& f) {
  IdealSpec spec;
  spec.kind = kind;
  spec.descr = descr;
  long D = static_cast<long>(lower.size());
  for (long eps = 0; eps < fcount; ++eps)
    for (long j = 0; j < D; ++j) spec.quotient_basis.push_back({j, eps});
  auto lw = std::make_shared<std::vector<Scalar>>(lower);
  spec.project = [lw, D, fcount, f](const BElem& e) {
    Vec out(static_cast<size_t>(D) * fcount, Scalar::zero(f));
    for (const auto& [w, c] : e) {
      std::vector<Scalar> rep = reduced_power(*lw, w[0], f);
      for (long k = 0; k < D; ++k) out[w[1] * D + k] += c.coerce(f) * rep[k];
    }
    return out;
  };
  BElem gen;
  for (long k = 0; k < D; ++k)
    if (!lower[k].is_zero()) gen[{k, 0}] = lower[k];
  gen[{D, 0}] = Scalar::one(f);
  spec.ideal_generators.push_back(gen);
  return spec;
}

}  // namespace

BasedHopf dihedral_family() {
  BasedHopf h;
  h.name = "dihedral";
  h.field = FieldDesc::rationals();
  h.unit_word = {0, 0};
  h.a_side = BasedHopf::ASide::Left;
  FieldDesc F = h.field;

  h.product_ww = [F](const Word& u, const Word& v) {
    long i = u[0] + (u[1] ? -v[0] : v[0]);
    return mono({i, (u[1] + v[1]) % 2}, Scalar::one(F));
  };
  h.coproduct_w = [F](const Word& w) {
    BTensor t;
    t[{w, w}] = Scalar::one(F);
    return t;
  };
  h.counit_w = [F](const Word&) { return Scalar::one(F); };
  h.antipode_w = [F](const Word& w) {
    return mono(w[1] ? Word{w[0], 1} : Word{-w[0], 0}, Scalar::one(F));
  };
  h.degree = [](const Word& w) { return std::labs(w[0]) + w[1]; };
  h.words_up_to = [](long n) {
    std::vector<Word> out;
    for (long eps = 0; eps <= 1; ++eps)
      for (long i = -(n - eps); i <= n - eps; ++i) out.push_back({i, eps});
    return out;
  };
  h.word_str = [](const Word& w) {
    std::string b = w[0] == 0 ? "" : (w[0] == 1 ? "b" : "b^" + std::to_string(w[0]));
    std::string a = w[1] ? "a" : "";
    std::string s = b + (b.empty() || a.empty() ? "" : "*") + a;
    return s.empty() ? std::string("1") : s;
  };
  h.A_predicate = [](const Word& w) { return w[1] == 0; };
  h.project_to_A_w = [F](const Word& w) { return mono({w[0], 0}, Scalar::one(F)); };
  BElem bm1;
  bm1[{1, 0}] = Scalar::one(F);
  bm1[{0, 0}] = -Scalar::one(F);
  h.Aplus_generators = {bm1};
  h.hbar = group_algebra(GroupTable::cyclic(2), F);
  h.quotient_to_hbar = [F](const BElem& e) {
    Vec out(2, Scalar::zero(F));
    for (const auto& [w, c] : e) out[w[1]] += c;
    return out;
  };
  h.ideal_spec = [F](IdealSpec::Kind kind, long n, const std::vector<Scalar>& params) {
    FieldDesc jf = F;
    for (const auto& p : params) jf = join(jf, p.field());
    Scalar one = Scalar::one(jf);
    switch (kind) {
      case IdealSpec::Kind::AugPower: {
        if (n < 1) throw field_error("dihedral: AugPower needs n >= 1");
        std::vector<Scalar> roots(n, one);
        return modulus_spec(kind, "AugPower(" + std::to_string(n) + ")",
                            lower_coeffs_from_roots(roots, jf), 2, jf);
      }
      case IdealSpec::Kind::CoreIdeal: {
        if (params.size() != 1) throw field_error("dihedral: CoreIdeal takes one parameter");
        Scalar lam = params[0].coerce(jf);
        if (lam.is_zero()) throw field_error("dihedral: parameter must be nonzero");
        std::vector<Scalar> roots{lam};
        if (lam != one && lam != -one) roots.push_back(lam.inverse());
        return modulus_spec(kind, "CoreIdeal(" + params[0].str() + ")",
                            lower_coeffs_from_roots(roots, jf), 2, jf);
      }
      case IdealSpec::Kind::Intersection: {
        if (params.empty()) throw field_error("dihedral: Intersection needs parameters");
        std::vector<Scalar> roots;
        for (const auto& p : params) {
          Scalar lam = p.coerce(jf);
          if (lam.is_zero()) throw field_error("dihedral: parameter must be nonzero");
          for (const Scalar& r : {lam, lam.inverse()})
            if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
        }
        return modulus_spec(kind, "Intersection(" + std::to_string(params.size()) + ")",
                            lower_coeffs_from_roots(roots, jf), 2, jf);
      }
      case IdealSpec::Kind::PointIdeal: {
        if (params.size() != 1) throw field_error("dihedral: PointIdeal takes one parameter");
        Scalar lam = params[0].coerce(jf);
        if (lam.is_zero()) throw field_error("dihedral: parameter must be nonzero");
        IdealSpec spec;
        spec.kind = kind;
        spec.descr = "PointIdeal(" + params[0].str() + ")";
        spec.quotient_basis = {{0, 0}, {0, 1}};
        spec.project = [lam, jf](const BElem& e) {
          Vec out(2, Scalar::zero(jf));
          for (const auto& [w, c] : e)
            out[w[1]] += c.coerce(jf) * lam.pow(w[1] ? -w[0] : w[0]);
          return out;
        };
        BElem gen;
        gen[{1, 0}] = Scalar::one(jf);
        gen[{0, 0}] = -lam;
        spec.ideal_generators = {gen};
        return spec;
      }
    }
    throw field_error("dihedral: unsupported ideal kind");
  };
  h.chi_on_A = [](const Word& w, const std::vector<Scalar>& params) {
    if (params.size() != 1 || params[0].is_zero())
      throw field_error("dihedral: character needs one nonzero parameter");
    return params[0].pow(w[0]);
  };
  h.char_param_doc = "one nonzero scalar: the value of the character at b";
  h.tangent_on_A = [](const Word& w, long) { return Scalar::integer(w[0]); };
  h.tangent_count = 1;
  return h;
}

// ---------------------------------------------------------------------------
// Infinite Taft algebra T(n, t, q)
// ---------------------------------------------------------------------------

BasedHopf taft_family(long n, long t, const Scalar& q) {
  if (n < 2 || t < 1) throw field_error("taft: need n >= 2 and t >= 1");
  if (!is_primitive_root_of_unity(q, n))
    throw field_error("taft: q must be a primitive n-th root of unity");
  FieldDesc F = join(FieldDesc::rationals(), q.field());
  Scalar qf = q.coerce(F);
  long np = n / std::gcd(n, t);

  BasedHopf h;
  h.name = "taft:" + std::to_string(n) + "," + std::to_string(t);
  h.field = F;
  h.unit_word = {0, 0};

  h.product_ww = [n, qf](const Word& u, const Word& v) {
    return mono({posmod(u[0] + v[0], n), u[1] + v[1]}, qf.pow(u[1] * v[0]));
  };
  h.coproduct_w = [n, t, qf](const Word& w) {
    BTensor out;
    Scalar tb = qf.pow(t);
    for (long k = 0; k <= w[1]; ++k) {
      Scalar c = q_binomial(w[1], k, tb);
      if (!c.is_zero()) out[{{posmod(w[0] + t * k, n), w[1] - k}, {w[0], k}}] = c;
    }
    return out;
  };
  h.counit_w = [F](const Word& w) {
    return w[1] == 0 ? Scalar::one(F) : Scalar::zero(F);
  };
  h.antipode_w = [n, t, qf](const Word& w) {
    // S(g^i x^j) = (-1)^j (g^{-t} x)^j g^{-i}; straightening x^j past g^{-i}
    // contributes q^{-ij} on top of the q^{-t j(j-1)/2} from (g^{-t} x)^j.
    long j = w[1];
    Scalar coef = qf.pow(-t * j * (j - 1) / 2 - w[0] * j);
    if (j % 2 == 1) coef = -coef;
    return mono({posmod(-t * j - w[0], n), j}, coef);
  };
  h.degree = [](const Word& w) { return w[1]; };
  h.words_up_to = [n](long nn) {
    std::vector<Word> out;
    for (long i = 0; i < n; ++i)
      for (long j = 0; j <= nn; ++j) out.push_back({i, j});
    return out;
  };
  h.word_str = [](const Word& w) {
    std::string gi = w[0] == 0 ? "" : (w[0] == 1 ? "g" : "g^" + std::to_string(w[0]));
    std::string xj = w[1] == 0 ? "" : (w[1] == 1 ? "x" : "x^" + std::to_string(w[1]));
    std::string s = gi + (gi.empty() || xj.empty() ? "" : "*") + xj;
    return s.empty() ? std::string("1") : s;
  };
  h.A_predicate = [np](const Word& w) { return w[0] == 0 && w[1] % np == 0; };
  h.project_to_A_w = [np, F](const Word& w) {
    if (w[1] % np != 0) return BElem{};
    return mono({0, w[1]}, Scalar::one(F));
  };
  h.Aplus_generators = {mono({0, np}, Scalar::one(F))};
  h.hbar = gtx_fd(n, np, t, qf, F);
  h.quotient_to_hbar = [n, np, F](const BElem& e) {
    Vec out(n * np, Scalar::zero(F));
    for (const auto& [w, c] : e)
      if (w[1] < np) out[w[0] * np + w[1]] += c;
    return out;
  };
  h.ideal_spec = [n, np, qf, F](IdealSpec::Kind kind, long nn,
                                const std::vector<Scalar>& params) {
    FieldDesc jf = F;
    for (const auto& p : params) jf = join(jf, p.field());
    auto point_spec = [&](const Scalar& c0, IdealSpec::Kind k, const std::string& descr) {
      Scalar c = c0.coerce(jf);
      IdealSpec spec;
      spec.kind = k;
      spec.descr = descr;
      for (long i = 0; i < n; ++i)
        for (long r = 0; r < np; ++r) spec.quotient_basis.push_back({i, r});
      spec.project = [n, np, c, jf](const BElem& e) {
        Vec out(static_cast<size_t>(n) * np, Scalar::zero(jf));
        for (const auto& [w, cc] : e)
          out[w[0] * np + w[1] % np] += cc.coerce(jf) * pow0(c, w[1] / np, jf);
        return out;
      };
      BElem gen = mono({0, np}, Scalar::one(jf));
      belem_accum(gen, mono({0, 0}, Scalar::one(jf)), -c);
      spec.ideal_generators = {gen};
      return spec;
    };
    switch (kind) {
      case IdealSpec::Kind::AugPower: {
        if (nn < 1) throw field_error("taft: AugPower needs n >= 1");
        if (nn == 1) return point_spec(Scalar::zero(jf), kind, "AugPower(1)");
        IdealSpec spec;
        spec.kind = kind;
        spec.descr = "AugPower(" + std::to_string(nn) + ")";
        for (long i = 0; i < n; ++i)
          for (long j = 0; j < nn * np; ++j) spec.quotient_basis.push_back({i, j});
        spec.project = [n, np, nn, jf](const BElem& e) {
          Vec out(static_cast<size_t>(n) * nn * np, Scalar::zero(jf));
          for (const auto& [w, c] : e)
            if (w[1] < nn * np) out[w[0] * nn * np + w[1]] += c.coerce(jf);
          return out;
        };
        spec.ideal_generators = {mono({0, nn * np}, Scalar::one(jf))};
        return spec;
      }
      case IdealSpec::Kind::PointIdeal: {
        if (params.size() != 1) throw field_error("taft: PointIdeal takes one parameter");
        return point_spec(params[0], kind, "PointIdeal(" + params[0].str() + ")");
      }
      case IdealSpec::Kind::CoreIdeal:
      case IdealSpec::Kind::Intersection: {
        if (params.empty()) throw field_error("taft: need at least one parameter");
        if (kind == IdealSpec::Kind::CoreIdeal && params.size() != 1)
          throw field_error("taft: CoreIdeal takes one parameter");
        // Orbit of each point under x^np -> q^np x^np.
        std::vector<Scalar> roots;
        Scalar step = qf.pow(np).coerce(jf);
        for (const auto& p : params) {
          Scalar v = p.coerce(jf);
          for (long guard = 0; guard < 4096; ++guard) {
            if (std::find(roots.begin(), roots.end(), v) == roots.end()) roots.push_back(v);
            if (v.is_zero()) break;
            v = v * step;
            if (v == p.coerce(jf)) break;
          }
        }
        std::vector<Scalar> lower = lower_coeffs_from_roots(roots, jf);
        long D = static_cast<long>(roots.size());
        IdealSpec spec;
        spec.kind = kind;
        spec.descr = (kind == IdealSpec::Kind::CoreIdeal
                          ? "CoreIdeal(" + params[0].str() + ")"
                          : "Intersection(" + std::to_string(params.size()) + ")");
        for (long i = 0; i < n; ++i)
          for (long j = 0; j < D * np; ++j) spec.quotient_basis.push_back({i, j});
        auto lw = std::make_shared<std::vector<Scalar>>(lower);
        spec.project = [n, np, D, lw, jf](const BElem& e) {
          Vec out(static_cast<size_t>(n) * D * np, Scalar::zero(jf));
          for (const auto& [w, c] : e) {
            long a = w[1] / np, r = w[1] % np;
            std::vector<Scalar> rep = reduced_power(*lw, a, jf);
            for (long m = 0; m < D; ++m)
              out[w[0] * D * np + m * np + r] += c.coerce(jf) * rep[m];
          }
          return out;
        };
        BElem gen;
        for (long k = 0; k < D; ++k)
          if (!lower[k].is_zero()) gen[{0, k * np}] = lower[k];
        gen[{0, D * np}] = Scalar::one(jf);
        spec.ideal_generators = {gen};
        return spec;
      }
    }
    throw field_error("taft: unsupported ideal kind");
  };
  h.chi_on_A = [np](const Word& w, const std::vector<Scalar>& params) {
    if (params.size() != 1) throw field_error("taft: character needs one parameter");
    return pow0(params[0], w[1] / np, params[0].field());
  };
  h.char_param_doc = "one scalar: the value of the character at x^{n'}";
  h.tangent_on_A = [np, F](const Word& w, long) {
    return w[1] == np ? Scalar::one(F) : Scalar::zero(F);
  };
  h.tangent_count = 1;
  return h;
}

// ---------------------------------------------------------------------------
// Generalised Liu algebra
// ---------------------------------------------------------------------------

BasedHopf liu_family(long n, long w, const Scalar& q) {
  if (n < 2 || w < 1) throw field_error("liu: need n >= 2 and w >= 1");
  if (!is_primitive_root_of_unity(q, n))
    throw field_error("liu: q must be a primitive n-th root of unity");
  FieldDesc F = join(FieldDesc::rationals(), q.field());
  Scalar qf = q.coerce(F);

  struct State {
    long n, w;
    Scalar q;
    FieldDesc f;
    std::map<Word, BTensor> delta_memo;
  };
  auto st = std::make_shared<State>();
  st->n = n;
  st->w = w;
  st->q = qf;
  st->f = F;

  BasedHopf h;
  h.name = "liu:" + std::to_string(n) + "," + std::to_string(w);
  h.field = F;
  h.unit_word = {0, 0, 0};

  auto prod = [st](const Word& u, const Word& v) {
    long n = st->n, w = st->w;
    Scalar coef = st->q.pow(u[2] * v[1]);
    long i = u[0] + v[0], j = u[1] + v[1], l = u[2] + v[2];
    if (j >= n) {
      j -= n;
      i += w;
    }
    BElem out;
    if (l < n) {
      out[{i, j, l}] = coef;
    } else {
      l -= n;  // y^n = 1 - x^w
      out[{i, j, l}] = coef;
      out[{i + w, j, l}] = -coef;
    }
    return out;
  };
  h.product_ww = prod;
  std::function<BTensor(const Word&)> delta = [st, prod, &h](const Word&) { return BTensor{}; };
  h.coproduct_w = [st, prod](const Word& wd) {
    std::function<BTensor(const Word&)> rec = [&](const Word& u) -> BTensor {
      auto it = st->delta_memo.find(u);
      if (it != st->delta_memo.end()) return it->second;
      BTensor out;
      const Scalar one = Scalar::one(st->f);
      if (u == Word{0, 0, 0}) {
        out[{u, u}] = one;
      } else if (u[2] > 0) {
        BTensor dy;
        dy[{{0, 0, 1}, {0, 0, 0}}] = one;
        dy[{{0, 1, 0}, {0, 0, 1}}] = one;
        out = btensor_mult(prod, rec({u[0], u[1], u[2] - 1}), dy);
      } else if (u[1] > 0) {
        BTensor dg;
        dg[{{0, 1, 0}, {0, 1, 0}}] = one;
        out = btensor_mult(prod, rec({u[0], u[1] - 1, 0}), dg);
      } else {
        long s = u[0] > 0 ? 1 : -1;
        BTensor dx;
        dx[{{s, 0, 0}, {s, 0, 0}}] = one;
        out = btensor_mult(prod, rec({u[0] - s, 0, 0}), dx);
      }
      st->delta_memo[u] = out;
      return out;
    };
    return rec(wd);
  };
  h.counit_w = [F](const Word& u) {
    return u[2] == 0 ? Scalar::one(F) : Scalar::zero(F);
  };
  h.antipode_w = [st, prod](const Word& u) {
    const Scalar one = Scalar::one(st->f);
    BElem acc = mono({0, 0, 0}, one);
    BElem sy = mono({-st->w, st->n - 1, 1}, -one);  // S(y) = -g^{-1} y
    BElem sg = mono({-st->w, st->n - 1, 0}, one);   // S(g) = g^{n-1} x^{-w}
    for (long k = 0; k < u[2]; ++k) acc = belem_product(prod, acc, sy);
    for (long k = 0; k < u[1]; ++k) acc = belem_product(prod, acc, sg);
    long s = u[0] >= 0 ? -1 : 1;  // S(x^i) = x^{-i}
    for (long k = 0; k < std::labs(u[0]); ++k)
      acc = belem_product(prod, acc, mono({s, 0, 0}, one));
    return acc;
  };
  h.degree = [](const Word& u) { return std::labs(u[0]) + u[1] + u[2]; };
  h.words_up_to = [n](long nn) {
    std::vector<Word> out;
    for (long j = 0; j < n; ++j)
      for (long l = 0; l < n; ++l) {
        if (j + l > nn) continue;
        for (long i = -(nn - j - l); i <= nn - j - l; ++i) out.push_back({i, j, l});
      }
    return out;
  };
  h.word_str = [](const Word& u) {
    std::ostringstream os;
    bool any = false;
    auto emit = [&](const char* nm, long e) {
      if (e == 0) return;
      if (any) os << "*";
      any = true;
      os << nm;
      if (e != 1) os << "^" << e;
    };
    emit("x", u[0]);
    emit("g", u[1]);
    emit("y", u[2]);
    if (!any) os << "1";
    return os.str();
  };
  h.A_predicate = [](const Word& u) { return u[1] == 0 && u[2] == 0; };
  h.project_to_A_w = [F](const Word& u) {
    if (u[2] != 0) return BElem{};
    return mono({u[0], 0, 0}, Scalar::one(F));
  };
  {
    BElem xm1 = mono({1, 0, 0}, Scalar::one(F));
    belem_accum(xm1, mono({0, 0, 0}, Scalar::one(F)), -Scalar::one(F));
    h.Aplus_generators = {xm1};
  }
  h.hbar = taft_fd(n, 1, qf, F);
  h.quotient_to_hbar = [n, F](const BElem& e) {
    Vec out(n * n, Scalar::zero(F));
    for (const auto& [u, c] : e) out[u[1] * n + u[2]] += c;
    return out;
  };
  h.ideal_spec = [n, F](IdealSpec::Kind kind, long nn, const std::vector<Scalar>& params) {
    FieldDesc jf = F;
    for (const auto& p : params) jf = join(jf, p.field());
    auto lam_spec = [&](const Scalar& lam0, IdealSpec::Kind k, const std::string& descr) {
      Scalar lam = lam0.coerce(jf);
      if (lam.is_zero()) throw field_error("liu: parameter must be nonzero");
      IdealSpec spec;
      spec.kind = k;
      spec.descr = descr;
      for (long j = 0; j < n; ++j)
        for (long l = 0; l < n; ++l) spec.quotient_basis.push_back({0, j, l});
      spec.project = [n, lam, jf](const BElem& e) {
        Vec out(static_cast<size_t>(n) * n, Scalar::zero(jf));
        for (const auto& [u, c] : e)
          out[u[1] * n + u[2]] += c.coerce(jf) * lam.pow(u[0]);
        return out;
      };
      BElem gen = mono({1, 0, 0}, Scalar::one(jf));
      belem_accum(gen, mono({0, 0, 0}, Scalar::one(jf)), -lam);
      spec.ideal_generators = {gen};
      return spec;
    };
    switch (kind) {
      case IdealSpec::Kind::AugPower: {
        if (nn == 1) return lam_spec(Scalar::one(jf), kind, "AugPower(1)");
        if (nn != 2) throw field_error("liu: AugPower supported for n = 1, 2");
        IdealSpec spec;
        spec.kind = kind;
        spec.descr = "AugPower(2)";
        for (long i = 0; i <= 1; ++i)
          for (long j = 0; j < n; ++j)
            for (long l = 0; l < n; ++l) spec.quotient_basis.push_back({i, j, l});
        spec.project = [n, jf](const BElem& e) {
          Vec out(static_cast<size_t>(2) * n * n, Scalar::zero(jf));
          for (const auto& [u, c] : e) {
            Scalar cc = c.coerce(jf);
            // x^i = (1-i) + i x  (mod (x-1)^2)
            out[u[1] * n + u[2]] += cc * Scalar::from_int(1 - u[0], jf);
            out[n * n + u[1] * n + u[2]] += cc * Scalar::from_int(u[0], jf);
          }
          return out;
        };
        BElem gen = mono({2, 0, 0}, Scalar::one(jf));
        belem_accum(gen, mono({1, 0, 0}, Scalar::one(jf)), Scalar::from_int(-2, jf));
        belem_accum(gen, mono({0, 0, 0}, Scalar::one(jf)), Scalar::one(jf));
        spec.ideal_generators = {gen};
        return spec;
      }
      case IdealSpec::Kind::PointIdeal:
      case IdealSpec::Kind::CoreIdeal: {
        if (params.size() != 1) throw field_error("liu: point/core spec takes one parameter");
        std::string nm = kind == IdealSpec::Kind::PointIdeal ? "PointIdeal" : "CoreIdeal";
        return lam_spec(params[0], kind, nm + "(" + params[0].str() + ")");
      }
      default:
        throw field_error("liu: unsupported ideal kind");
    }
  };
  h.chi_on_A = [](const Word& u, const std::vector<Scalar>& params) {
    if (params.size() != 1 || params[0].is_zero())
      throw field_error("liu: character needs one nonzero parameter");
    return params[0].pow(u[0]);
  };
  h.char_param_doc = "one nonzero scalar: the value of the character at x";
  h.tangent_on_A = [](const Word& u, long) { return Scalar::integer(u[0]); };
  h.tangent_count = 1;
  return h;
}

// ---------------------------------------------------------------------------
// Localised quantum plane A(l, n, q)
// ---------------------------------------------------------------------------

BasedHopf qplane_family(long ell, long n, const Scalar& q) {
  if (ell < 2 || n < 1) throw field_error("qplane: need l >= 2 and n >= 1");
  if (!is_primitive_root_of_unity(q, ell))
    throw field_error("qplane: q must be a primitive l-th root of unity");
  FieldDesc F = join(FieldDesc::rationals(), q.field());
  Scalar qf = q.coerce(F);
  long d = std::gcd(ell, n), lp = ell / d;

  struct State {
    Scalar q;
    FieldDesc f;
    std::map<Word, BTensor> delta_memo;
  };
  auto st = std::make_shared<State>();
  st->q = qf;
  st->f = F;

  BasedHopf h;
  h.name = "qplane:" + std::to_string(ell) + "," + std::to_string(n);
  h.field = F;
  h.unit_word = {0, 0};

  auto prod = [st](const Word& u, const Word& v) {
    return mono({u[0] + v[0], u[1] + v[1]}, st->q.pow(u[1] * v[0]));
  };
  h.product_ww = prod;
  h.coproduct_w = [st, prod, n](const Word& wd) {
    std::function<BTensor(const Word&)> rec = [&](const Word& u) -> BTensor {
      auto it = st->delta_memo.find(u);
      if (it != st->delta_memo.end()) return it->second;
      BTensor out;
      const Scalar one = Scalar::one(st->f);
      if (u == Word{0, 0}) {
        out[{u, u}] = one;
      } else if (u[0] > 0) {
        BTensor dy;
        dy[{{1, 0}, {0, 0}}] = one;
        dy[{{0, n}, {1, 0}}] = one;
        out = btensor_mult(prod, dy, rec({u[0] - 1, u[1]}));
      } else {
        long s = u[1] > 0 ? 1 : -1;
        BTensor dx;
        dx[{{0, s}, {0, s}}] = one;
        out = btensor_mult(prod, rec({0, u[1] - s}), dx);
      }
      st->delta_memo[u] = out;
      return out;
    };
    return rec(wd);
  };
  h.counit_w = [F](const Word& u) {
    return u[0] == 0 ? Scalar::one(F) : Scalar::zero(F);
  };
  h.antipode_w = [st, prod, n](const Word& u) {
    const Scalar one = Scalar::one(st->f);
    BElem acc = mono({0, 0}, one);
    long s = u[1] >= 0 ? -1 : 1;
    for (long k = 0; k < std::labs(u[1]); ++k) acc = belem_product(prod, acc, mono({0, s}, one));
    // S(y) = -x^{-n} y = -q^{-n} y x^{-n} in normal form.
    BElem sy = mono({1, -n}, -st->q.pow(-n));
    for (long k = 0; k < u[0]; ++k) acc = belem_product(prod, acc, sy);
    return acc;
  };
  h.degree = [](const Word& u) { return u[0] + std::labs(u[1]); };
  h.words_up_to = [](long nn) {
    std::vector<Word> out;
    for (long i = 0; i <= nn; ++i)
      for (long j = -(nn - i); j <= nn - i; ++j) out.push_back({i, j});
    return out;
  };
  h.word_str = [](const Word& u) {
    std::ostringstream os;
    bool any = false;
    auto emit = [&](const char* nm, long e) {
      if (e == 0) return;
      if (any) os << "*";
      any = true;
      os << nm;
      if (e != 1) os << "^" << e;
    };
    emit("y", u[0]);
    emit("x", u[1]);
    if (!any) os << "1";
    return os.str();
  };
  h.A_predicate = [lp, ell](const Word& u) { return u[0] % lp == 0 && posmod(u[1], ell) == 0; };
  h.project_to_A_w = [lp, ell, qf, F](const Word& u) {
    if (u[0] % lp != 0) return BElem{};
    long s = posmod(u[1], ell);
    return mono({u[0], u[1] - s}, qf.pow(-s * u[0]));
  };
  {
    BElem xm1 = mono({0, ell}, Scalar::one(F));
    belem_accum(xm1, mono({0, 0}, Scalar::one(F)), -Scalar::one(F));
    h.Aplus_generators = {xm1, mono({lp, 0}, Scalar::one(F))};
  }
  h.hbar = gtx_fd(ell, lp, posmod(n, ell), qf.inverse(), F, "x", "y");
  h.quotient_to_hbar = [lp, ell, qf, F](const BElem& e) {
    Vec out(static_cast<size_t>(ell) * lp, Scalar::zero(F));
    for (const auto& [u, c] : e) {
      if (u[0] >= lp) continue;
      long jp = posmod(u[1], ell);
      out[jp * lp + u[0]] += c * qf.pow(-u[0] * jp);
    }
    return out;
  };
  h.ideal_spec = [lp, ell, qf, F](IdealSpec::Kind kind, long nn,
                                  const std::vector<Scalar>& params) {
    FieldDesc jf = F;
    for (const auto& p : params) jf = join(jf, p.field());
    auto xgen = [&](const Scalar& alpha) {
      BElem g = mono({0, ell}, Scalar::one(jf));
      belem_accum(g, mono({0, 0}, Scalar::one(jf)), -alpha);
      return g;
    };
    auto point_spec = [&](const Scalar& a0, const Scalar& b0, IdealSpec::Kind k,
                          const std::string& descr) {
      Scalar alpha = a0.coerce(jf), beta = b0.coerce(jf);
      if (alpha.is_zero()) throw field_error("qplane: alpha must be nonzero");
      IdealSpec spec;
      spec.kind = k;
      spec.descr = descr;
      for (long r = 0; r < lp; ++r)
        for (long s = 0; s < ell; ++s) spec.quotient_basis.push_back({r, s});
      Scalar q = qf.coerce(jf);
      spec.project = [lp, ell, q, alpha, beta, jf](const BElem& e) {
        Vec out(static_cast<size_t>(lp) * ell, Scalar::zero(jf));
        for (const auto& [u, c] : e) {
          long a = u[0] / lp, r = u[0] % lp;
          long s = posmod(u[1], ell), b = (u[1] - s) / ell;
          out[r * ell + s] +=
              c.coerce(jf) * q.pow(-s * a * lp) * pow0(beta, a, jf) * alpha.pow(b);
        }
        return out;
      };
      BElem ygen = mono({lp, 0}, Scalar::one(jf));
      belem_accum(ygen, mono({0, 0}, Scalar::one(jf)), -beta);
      spec.ideal_generators = {xgen(alpha), ygen};
      return spec;
    };
    switch (kind) {
      case IdealSpec::Kind::PointIdeal: {
        if (params.size() != 2) throw field_error("qplane: PointIdeal takes two parameters");
        return point_spec(params[0], params[1], kind,
                          "PointIdeal(" + params[0].str() + "," + params[1].str() + ")");
      }
      case IdealSpec::Kind::CoreIdeal: {
        if (params.size() != 2) throw field_error("qplane: CoreIdeal takes two parameters");
        Scalar alpha = params[0].coerce(jf), beta = params[1].coerce(jf);
        if (alpha.is_zero()) throw field_error("qplane: alpha must be nonzero");
        if (beta.is_zero())
          return point_spec(params[0], params[1], kind,
                            "CoreIdeal(" + params[0].str() + "," + params[1].str() + ")");
        Scalar step = qf.pow(lp).coerce(jf);
        std::vector<Scalar> roots;
        Scalar v = beta;
        do {
          roots.push_back(v);
          v = v * step;
        } while (v != beta);
        long D = static_cast<long>(roots.size());
        std::vector<Scalar> lower = lower_coeffs_from_roots(roots, jf);
        IdealSpec spec;
        spec.kind = kind;
        spec.descr = "CoreIdeal(" + params[0].str() + "," + params[1].str() + ")";
        for (long i = 0; i < D * lp; ++i)
          for (long s = 0; s < ell; ++s) spec.quotient_basis.push_back({i, s});
        auto lw = std::make_shared<std::vector<Scalar>>(lower);
        Scalar q = qf.coerce(jf);
        spec.project = [lp, ell, D, lw, q, alpha, jf](const BElem& e) {
          Vec out(static_cast<size_t>(D) * lp * ell, Scalar::zero(jf));
          for (const auto& [u, cc] : e) {
            long a = u[0] / lp, r = u[0] % lp;
            long s = posmod(u[1], ell), b = (u[1] - s) / ell;
            std::vector<Scalar> rep = reduced_power(*lw, a, jf);
            for (long cpos = 0; cpos < D; ++cpos)
              out[(r + cpos * lp) * ell + s] += cc.coerce(jf) * rep[cpos] * alpha.pow(b) *
                                                q.pow((cpos - a) * s * lp);
          }
          return out;
        };
        BElem ygen;
        for (long k = 0; k < D; ++k)
          if (!lower[k].is_zero()) ygen[{k * lp, 0}] = lower[k];
        ygen[{D * lp, 0}] = Scalar::one(jf);
        spec.ideal_generators = {xgen(alpha), ygen};
        return spec;
      }
      case IdealSpec::Kind::AugPower: {
        if (nn == 1)
          return point_spec(Scalar::one(jf), Scalar::zero(jf), kind, "AugPower(1)");
        if (nn != 2) throw field_error("qplane: AugPower supported for n = 1, 2");
        IdealSpec spec;
        spec.kind = kind;
        spec.descr = "AugPower(2)";
        for (long i = 0; i < 2 * lp; ++i)
          for (long s = 0; s < ell; ++s) spec.quotient_basis.push_back({i, s});
        for (long r = 0; r < lp; ++r)
          for (long s = 0; s < ell; ++s) spec.quotient_basis.push_back({r, s + ell});
        spec.project = [lp, ell, jf](const BElem& e) {
          Vec out(static_cast<size_t>(3) * lp * ell, Scalar::zero(jf));
          for (const auto& [u, cc] : e) {
            long a = u[0] / lp, r = u[0] % lp;
            long s = posmod(u[1], ell), b = (u[1] - s) / ell;
            if (a >= 2) continue;
            Scalar c = cc.coerce(jf);
            if (a == 1) {
              out[(r + lp) * ell + s] += c;
            } else {
              out[r * ell + s] += c * Scalar::from_int(1 - b, jf);
              out[2 * lp * ell + r * ell + s] += c * Scalar::from_int(b, jf);
            }
          }
          return out;
        };
        // (x^l - 1)^2, (x^l - 1) y^{l'}, y^{2l'}
        BElem g1 = mono({0, 2 * ell}, Scalar::one(jf));
        belem_accum(g1, mono({0, ell}, Scalar::one(jf)), Scalar::from_int(-2, jf));
        belem_accum(g1, mono({0, 0}, Scalar::one(jf)), Scalar::one(jf));
        BElem g2 = mono({lp, ell}, Scalar::one(jf));
        belem_accum(g2, mono({lp, 0}, Scalar::one(jf)), -Scalar::one(jf));
        BElem g3 = mono({2 * lp, 0}, Scalar::one(jf));
        spec.ideal_generators = {g1, g2, g3};
        return spec;
      }
      default:
        throw field_error("qplane: unsupported ideal kind");
    }
  };
  h.chi_on_A = [lp, ell](const Word& u, const std::vector<Scalar>& params) {
    if (params.size() != 2 || params[0].is_zero())
      throw field_error("qplane: character needs parameters (alpha != 0, beta)");
    return pow0(params[1], u[0] / lp, params[1].field()) * params[0].pow(u[1] / ell);
  };
  h.char_param_doc = "two scalars: values at x^l (nonzero) and y^{l'}";
  h.tangent_on_A = [lp, ell, F](const Word& u, long dir) {
    if (dir == 0) return u[0] == 0 ? Scalar::integer(u[1] / ell) : Scalar::zero(F);
    return u[0] == lp ? Scalar::one(F) : Scalar::zero(F);
  };
  h.tangent_count = 2;
  return h;
}

// ---------------------------------------------------------------------------
// B(n, p0, ..., ps, q)
// ---------------------------------------------------------------------------

BasedHopf bfam_family(long n, const std::vector<long>& p, const Scalar& q) {
  if (p.size() < 3) throw field_error("bfam: need p0 and at least two further p_i");
  long p0 = p[0];
  if (p0 < 1 || n < 1 || n % p0 != 0) throw field_error("bfam: need p0 >= 1 dividing n");
  std::vector<long> ps(p.begin() + 1, p.end());
  for (size_t i = 0; i < ps.size(); ++i) {
    if (ps[i] < 2) throw field_error("bfam: p_i must be >= 2");
    if (i > 0 && ps[i] <= ps[i - 1]) throw field_error("bfam: p_i must be strictly increasing");
    for (size_t j = 0; j < i; ++j)
      if (std::gcd(ps[i], ps[j]) != 1) throw field_error("bfam: p_i must be pairwise coprime");
  }
  long P = 1;
  for (long v : ps) P *= v;
  long ell = (n / p0) * P;
  if (!is_primitive_root_of_unity(q, ell))
    throw field_error("bfam: q must be a primitive l-th root of unity");
  FieldDesc F = join(FieldDesc::rationals(), q.field());
  Scalar qf = q.coerce(F);

  // Generator exponents m_i and the residue transversal R of the numerical
  // semigroup S = <m_1, ..., m_s> modulo P.
  std::vector<long> ms;
  for (size_t i = 0; i < ps.size(); ++i) ms.push_back(P / ps[i]);
  std::vector<long> rmap(P, -1);  // residue class -> least element of S
  std::vector<std::vector<long>> tuples;  // exponent tuple per residue index
  std::vector<long> rlist;
  {
    std::vector<long> tup(ps.size(), 0);
    std::function<void(size_t, long)> rec = [&](size_t t, long acc) {
      if (t == ps.size()) {
        if (rmap[acc % P] != -1) throw field_error("bfam: residue transversal not unique");
        rmap[acc % P] = acc;
        return;
      }
      for (long i = 0; i < ps[t]; ++i) {
        tup[t] = i;
        rec(t + 1, acc + i * ms[t]);
      }
    };
    rec(0, 0);
    // Sorted residue list with tuples for the finite quotient.
    for (long r = 0; r < 200 * P; ++r) {
      if (static_cast<long>(rlist.size()) == P) break;
      if (rmap[r % P] == r) rlist.push_back(r);
    }
    for (long r : rlist) {
      std::vector<long> tp(ps.size(), 0);
      long rem = r;
      for (size_t t = 0; t < ps.size(); ++t) {
        // i_t is determined by r mod p_t since m_t is invertible mod p_t.
        for (long i = 0; i < ps[t]; ++i)
          if ((i * ms[t]) % ps[t] == rem % ps[t]) {
            tp[t] = i;
            break;
          }
        rem -= tp[t] * ms[t];
      }
      if (rem != 0) throw field_error("bfam: internal transversal decomposition failed");
      tuples.push_back(tp);
    }
  }
  auto rindex = [rlist](long r) {
    return std::find(rlist.begin(), rlist.end(), r) - rlist.begin();
  };

  struct State {
    Scalar q;
    FieldDesc f;
    std::map<Word, BTensor> delta_memo;
  };
  auto st = std::make_shared<State>();
  st->q = qf;
  st->f = F;

  BasedHopf h;
  {
    std::ostringstream nm;
    nm << "bfam:" << n;
    for (long v : p) nm << "," << v;
    h.name = nm.str();
  }
  h.field = F;
  h.unit_word = {0, 0};

  auto in_s = [rmap, P](long k) { return k >= 0 && rmap[k % P] <= k; };
  auto prod = [st](const Word& u, const Word& v) {
    return mono({u[0] + v[0], u[1] + v[1]}, st->q.pow(u[1] * v[0]));
  };
  h.product_ww = prod;
  h.coproduct_w = [st, prod, ms, in_s, n](const Word& wd) {
    std::function<BTensor(const Word&)> rec = [&](const Word& u) -> BTensor {
      auto it = st->delta_memo.find(u);
      if (it != st->delta_memo.end()) return it->second;
      BTensor out;
      const Scalar one = Scalar::one(st->f);
      if (u == Word{0, 0}) {
        out[{u, u}] = one;
      } else if (u[0] > 0) {
        long m = -1;
        for (long mi : ms)
          if (u[0] - mi >= 0 && in_s(u[0] - mi)) {
            m = mi;
            break;
          }
        if (m < 0) throw field_error("bfam: word outside the semigroup");
        BTensor dy;
        dy[{{m, 0}, {0, 0}}] = one;
        dy[{{0, m * n}, {m, 0}}] = one;
        out = btensor_mult(prod, dy, rec({u[0] - m, u[1]}));
      } else {
        long s = u[1] > 0 ? 1 : -1;
        BTensor dx;
        dx[{{0, s}, {0, s}}] = one;
        out = btensor_mult(prod, rec({0, u[1] - s}), dx);
      }
      st->delta_memo[u] = out;
      return out;
    };
    return rec(wd);
  };
  h.counit_w = [F](const Word& u) {
    return u[0] == 0 ? Scalar::one(F) : Scalar::zero(F);
  };
  h.antipode_w = [st, prod, ms, in_s, n](const Word& u) {
    const Scalar one = Scalar::one(st->f);
    BElem acc = mono({0, 0}, one);
    long s = u[1] >= 0 ? -1 : 1;
    for (long k = 0; k < std::labs(u[1]); ++k) acc = belem_product(prod, acc, mono({0, s}, one));
    // S(y^k) built from S(y^{m_i}) = -x^{-m_i n} y^{m_i}.
    long k = u[0];
    while (k > 0) {
      long m = -1;
      for (long mi : ms)
        if (k - mi >= 0 && in_s(k - mi)) {
          m = mi;
          break;
        }
      if (m < 0) throw field_error("bfam: word outside the semigroup");
      // -x^{-mn} y^m = -q^{-m^2 n} y^m x^{-mn} in normal form.
      acc = belem_product(prod, acc, mono({m, -m * n}, -st->q.pow(-m * m * n)));
      k -= m;
    }
    return acc;
  };
  h.degree = [](const Word& u) { return u[0] + std::labs(u[1]); };
  h.words_up_to = [in_s](long nn) {
    std::vector<Word> out;
    for (long k = 0; k <= nn; ++k) {
      if (!in_s(k)) continue;
      for (long j = -(nn - k); j <= nn - k; ++j) out.push_back({k, j});
    }
    return out;
  };
  h.word_str = [](const Word& u) {
    std::ostringstream os;
    bool any = false;
    auto emit = [&](const char* nm, long e) {
      if (e == 0) return;
      if (any) os << "*";
      any = true;
      os << nm;
      if (e != 1) os << "^" << e;
    };
    emit("y", u[0]);
    emit("x", u[1]);
    if (!any) os << "1";
    return os.str();
  };
  h.A_predicate = [P, ell](const Word& u) { return u[0] % P == 0 && posmod(u[1], ell) == 0; };
  h.project_to_A_w = [P, ell, qf, F](const Word& u) {
    if (u[0] % P != 0) return BElem{};
    long s = posmod(u[1], ell);
    long a = u[0] / P;
    return mono({u[0], u[1] - s}, qf.pow(-s * a * P));
  };
  {
    BElem xm1 = mono({0, ell}, Scalar::one(F));
    belem_accum(xm1, mono({0, 0}, Scalar::one(F)), -Scalar::one(F));
    h.Aplus_generators = {mono({P, 0}, Scalar::one(F)), xm1};
  }

  // Finite quotient: basis y^r x^j with r in the transversal R, j mod l.
  {
    FdHopf hb;
    hb.field = F;
    hb.dim = P * ell;
    auto idx = [ell](long ri, long j) { return ri * ell + j; };
    hb.basis_labels.resize(hb.dim);
    for (long ri = 0; ri < P; ++ri)
      for (long j = 0; j < ell; ++j) {
        long r = rlist[ri];
        std::string yl = r == 0 ? "" : (r == 1 ? "y" : "y^" + std::to_string(r));
        std::string xl = j == 0 ? "" : (j == 1 ? "x" : "x^" + std::to_string(j));
        std::string l = yl + xl;
        hb.basis_labels[idx(ri, j)] = l.empty() ? "1" : l;
      }
    hb.mult.assign(hb.dim, std::vector<SparseVec>(hb.dim));
    for (long ri = 0; ri < P; ++ri)
      for (long j = 0; j < ell; ++j)
        for (long ri2 = 0; ri2 < P; ++ri2)
          for (long j2 = 0; j2 < ell; ++j2) {
            long k = rlist[ri] + rlist[ri2];
            if (rmap[k % P] != k) continue;  // y^P = 0 in the quotient
            hb.mult[idx(ri, j)][idx(ri2, j2)] = {
                {idx(rindex(k), (j + j2) % ell), qf.pow(j * rlist[ri2])}};
          }
    hb.unit = hb.zero_vec();
    hb.unit[idx(0, 0)] = Scalar::one(F);
    // Coproduct by multiplying generator coproducts in the tensor square.
    long dd = hb.dim;
    std::vector<Vec> dgen;  // coproducts of the y^{m_i}
    for (long m : ms) {
      Vec t(dd * dd, Scalar::zero(F));
      t[tensor_index(idx(rindex(m), 0), idx(0, 0), dd)] = Scalar::one(F);
      t[tensor_index(idx(0, posmod(m * n, ell)), idx(rindex(m), 0), dd)] = Scalar::one(F);
      dgen.push_back(t);
    }
    Vec dx(dd * dd, Scalar::zero(F));
    dx[tensor_index(idx(0, 1), idx(0, 1), dd)] = Scalar::one(F);
    hb.comult.assign(hb.dim, {});
    for (long ri = 0; ri < P; ++ri) {
      Vec acc(dd * dd, Scalar::zero(F));
      acc[tensor_index(idx(0, 0), idx(0, 0), dd)] = Scalar::one(F);
      for (size_t t = 0; t < ms.size(); ++t)
        for (long e = 0; e < tuples[ri][t]; ++e) acc = dense_tensor_mult(hb, acc, dgen[t]);
      for (long j = 0; j < ell; ++j) {
        hb.comult[idx(ri, j)] = tensor_entries(acc, dd);
        if (j + 1 < ell) acc = dense_tensor_mult(hb, acc, dx);
      }
    }
    hb.counit.assign(hb.dim, Scalar::zero(F));
    for (long j = 0; j < ell; ++j) hb.counit[idx(0, j)] = Scalar::one(F);
    // Antipode: S(x) = x^{l-1}, S(y^{m_i}) = -q^{c m_i} y^{m_i} x^c with
    // c = -m_i n mod l.
    Matrix sm(hb.dim, hb.dim, F);
    std::vector<Vec> sgen;
    for (long m : ms) {
      long c = posmod(-m * n, ell);
      Vec v = hb.zero_vec();
      v[idx(rindex(m), c)] = -qf.pow(c * m);
      sgen.push_back(v);
    }
    for (long ri = 0; ri < P; ++ri)
      for (long j = 0; j < ell; ++j) {
        Vec acc = hb.basis_vec(idx(0, posmod(-j, ell)));
        for (size_t t = 0; t < ms.size(); ++t)
          for (long e = 0; e < tuples[ri][t]; ++e) acc = hb.multiply(acc, sgen[t]);
        for (long r2 = 0; r2 < hb.dim; ++r2) sm.at(r2, idx(ri, j)) = acc[r2];
      }
    hb.antipode = sm;
    h.hbar = hb;
  }
  h.quotient_to_hbar = [P, ell, rmap, rindex, F](const BElem& e) {
    Vec out(static_cast<size_t>(P) * ell, Scalar::zero(F));
    for (const auto& [u, c] : e) {
      if (rmap[u[0] % P] != u[0]) continue;  // y^P divides the word
      out[rindex(u[0]) * ell + posmod(u[1], ell)] += c;
    }
    return out;
  };
  h.ideal_spec = [P, ell, rmap, rlist, qf, F](IdealSpec::Kind kind, long nn,
                                              const std::vector<Scalar>& params) {
    FieldDesc jf = F;
    for (const auto& p2 : params) jf = join(jf, p2.field());
    auto make_spec = [&](const Scalar& alpha, const std::vector<Scalar>& roots,
                         IdealSpec::Kind k, const std::string& descr) {
      long D = static_cast<long>(roots.size());
      std::vector<Scalar> lower = lower_coeffs_from_roots(roots, jf);
      IdealSpec spec;
      spec.kind = k;
      spec.descr = descr;
      for (long c = 0; c < D; ++c)
        for (long r : rlist)
          for (long s = 0; s < ell; ++s) spec.quotient_basis.push_back({r + c * P, s});
      auto lw = std::make_shared<std::vector<Scalar>>(lower);
      auto rpos = std::make_shared<std::vector<long>>();
      {  // residue value -> position in rlist
        rpos->assign(P, 0);
        for (long i = 0; i < P; ++i)
          (*rpos)[rlist[i] % P] = i;
      }
      Scalar q = qf.coerce(jf);
      spec.project = [P, ell, D, lw, rpos, rmap, q, alpha, jf](const BElem& e) {
        Vec out(static_cast<size_t>(D) * P * ell, Scalar::zero(jf));
        for (const auto& [u, cc] : e) {
          long r = rmap[u[0] % P], a = (u[0] - r) / P;
          long s = posmod(u[1], ell), b = (u[1] - s) / ell;
          long ri = (*rpos)[r % P];
          std::vector<Scalar> rep = reduced_power(*lw, a, jf);
          for (long c = 0; c < D; ++c)
            out[(c * P + ri) * ell + s] +=
                cc.coerce(jf) * rep[c] * alpha.pow(b) * q.pow((c - a) * s * P);
        }
        return out;
      };
      BElem xg = mono({0, ell}, Scalar::one(jf));
      belem_accum(xg, mono({0, 0}, Scalar::one(jf)), -alpha);
      BElem yg;
      for (long k2 = 0; k2 < D; ++k2)
        if (!lower[k2].is_zero()) yg[{k2 * P, 0}] = lower[k2];
      yg[{D * P, 0}] = Scalar::one(jf);
      spec.ideal_generators = {xg, yg};
      return spec;
    };
    switch (kind) {
      case IdealSpec::Kind::PointIdeal:
      case IdealSpec::Kind::CoreIdeal: {
        if (params.size() != 2) throw field_error("bfam: point/core spec takes two parameters");
        Scalar alpha = params[0].coerce(jf), beta = params[1].coerce(jf);
        if (alpha.is_zero()) throw field_error("bfam: alpha must be nonzero");
        std::vector<Scalar> roots;
        if (kind == IdealSpec::Kind::PointIdeal || beta.is_zero()) {
          roots = {beta};
        } else {
          Scalar step = qf.pow(P).coerce(jf);
          Scalar v = beta;
          do {
            roots.push_back(v);
            v = v * step;
          } while (v != beta);
        }
        std::string nm = kind == IdealSpec::Kind::PointIdeal ? "PointIdeal" : "CoreIdeal";
        return make_spec(alpha, roots, kind,
                         nm + "(" + params[0].str() + "," + params[1].str() + ")");
      }
      case IdealSpec::Kind::AugPower: {
        if (nn != 1) throw field_error("bfam: AugPower supported only for n = 1");
        return make_spec(Scalar::one(jf), {Scalar::zero(jf)}, kind, "AugPower(1)");
      }
      default:
        throw field_error("bfam: unsupported ideal kind");
    }
  };
  h.chi_on_A = [P, ell](const Word& u, const std::vector<Scalar>& params) {
    if (params.size() != 2 || params[0].is_zero())
      throw field_error("bfam: character needs parameters (alpha != 0, beta)");
    return pow0(params[1], u[0] / P, params[1].field()) * params[0].pow(u[1] / ell);
  };
  h.char_param_doc = "two scalars: values at x^l (nonzero) and y^{p1...ps}";
  h.tangent_on_A = nullptr;
  h.tangent_count = 0;
  return h;
}

// ---------------------------------------------------------------------------
// U_eps(sl2)
// ---------------------------------------------------------------------------

BasedHopf ueps_sl2_family(long ell) {
  if (ell < 3 || ell % 2 == 0) throw field_error("ueps_sl2: need odd l >= 3");
  FieldDesc F = FieldDesc::cyclotomic(ell);
  Scalar eps = Scalar::primitive_root(ell).coerce(F);
  Scalar denom_inv = (eps - eps.inverse()).inverse();

  struct State {
    long ell;
    Scalar eps, dinv;
    FieldDesc f;
    std::map<Word, BTensor> delta_memo;
  };
  auto st = std::make_shared<State>();
  st->ell = ell;
  st->eps = eps;
  st->dinv = denom_inv;
  st->f = F;

  BasedHopf h;
  h.name = "ueps_sl2:" + std::to_string(ell);
  h.field = F;
  h.unit_word = {0, 0, 0};

  // Right multiplication by the generators on normal-form combinations.
  struct Ops {
    std::shared_ptr<State> st;
    BElem rK(const BElem& e, long sign) const {
      BElem out;
      for (const auto& [w, c] : e)
        belem_accum(out, mono({w[0], w[1] + sign, w[2]}, st->eps.pow(-2 * sign * w[2])), c);
      return out;
    }
    BElem rE(const BElem& e) const {
      BElem out;
      for (const auto& [w, c] : e) belem_accum(out, mono({w[0], w[1], w[2] + 1}, c), Scalar::one(st->f));
      return out;
    }
    BElem rF(const BElem& e) const {
      BElem out;
      for (const auto& [w, c] : e) belem_accum(out, wF(w), c);
      return out;
    }
    BElem wF(const Word& w) const {
      if (w[2] == 0) return mono({w[0] + 1, w[1], 0}, st->eps.pow(-2 * w[1]));
      Word prev{w[0], w[1], w[2] - 1};
      BElem fe = rE(wF(prev));
      BElem corr;  // E F = F E + (K - K^-1)/(eps - eps^-1)
      belem_accum(corr, rK(mono(prev, st->dinv), 1), Scalar::one(st->f));
      belem_accum(corr, rK(mono(prev, st->dinv), -1), -Scalar::one(st->f));
      return belem_add(fe, corr);
    }
  };
  auto ops = std::make_shared<Ops>(Ops{st});

  auto prod = [ops](const Word& u, const Word& v) {
    BElem acc = mono(u, Scalar::one(ops->st->f));
    for (long k = 0; k < v[0]; ++k) acc = ops->rF(acc);
    long sign = v[1] >= 0 ? 1 : -1;
    for (long k = 0; k < std::labs(v[1]); ++k) acc = ops->rK(acc, sign);
    for (long k = 0; k < v[2]; ++k) acc = ops->rE(acc);
    return acc;
  };
  h.product_ww = prod;
  h.coproduct_w = [st, prod](const Word& wd) {
    std::function<BTensor(const Word&)> rec = [&](const Word& u) -> BTensor {
      auto it = st->delta_memo.find(u);
      if (it != st->delta_memo.end()) return it->second;
      BTensor out;
      const Scalar one = Scalar::one(st->f);
      if (u == Word{0, 0, 0}) {
        out[{u, u}] = one;
      } else if (u[2] > 0) {
        BTensor de;  // Delta(E) = E (x) 1 + K (x) E
        de[{{0, 0, 1}, {0, 0, 0}}] = one;
        de[{{0, 1, 0}, {0, 0, 1}}] = one;
        out = btensor_mult(prod, rec({u[0], u[1], u[2] - 1}), de);
      } else if (u[1] != 0) {
        long s = u[1] > 0 ? 1 : -1;
        BTensor dk;
        dk[{{0, s, 0}, {0, s, 0}}] = one;
        out = btensor_mult(prod, rec({u[0], u[1] - s, 0}), dk);
      } else {
        BTensor df;  // Delta(F) = F (x) K^-1 + 1 (x) F
        df[{{1, 0, 0}, {0, -1, 0}}] = one;
        df[{{0, 0, 0}, {1, 0, 0}}] = one;
        out = btensor_mult(prod, rec({u[0] - 1, 0, 0}), df);
      }
      st->delta_memo[u] = out;
      return out;
    };
    return rec(wd);
  };
  h.counit_w = [F](const Word& u) {
    return (u[0] == 0 && u[2] == 0) ? Scalar::one(F) : Scalar::zero(F);
  };
  h.antipode_w = [st, prod](const Word& u) {
    const Scalar one = Scalar::one(st->f);
    BElem acc = mono({0, 0, 0}, one);
    BElem se = mono({0, -1, 1}, -one);  // S(E) = -K^-1 E
    BElem sf = mono({1, 1, 0}, -one);   // S(F) = -F K
    for (long k = 0; k < u[2]; ++k) acc = belem_product(prod, acc, se);
    long s = u[1] >= 0 ? -1 : 1;
    for (long k = 0; k < std::labs(u[1]); ++k)
      acc = belem_product(prod, acc, mono({0, s, 0}, one));
    for (long k = 0; k < u[0]; ++k) acc = belem_product(prod, acc, sf);
    return acc;
  };
  h.degree = [](const Word& u) { return u[0] + std::labs(u[1]) + u[2]; };
  h.words_up_to = [](long nn) {
    std::vector<Word> out;
    for (long a = 0; a <= nn; ++a)
      for (long c = 0; a + c <= nn; ++c)
        for (long b = -(nn - a - c); b <= nn - a - c; ++b) out.push_back({a, b, c});
    return out;
  };
  h.word_str = [](const Word& u) {
    std::ostringstream os;
    bool any = false;
    auto emit = [&](const char* nm, long e) {
      if (e == 0) return;
      if (any) os << "*";
      any = true;
      os << nm;
      if (e != 1) os << "^" << e;
    };
    emit("F", u[0]);
    emit("K", u[1]);
    emit("E", u[2]);
    if (!any) os << "1";
    return os.str();
  };
  h.A_predicate = [ell](const Word& u) {
    return u[0] % ell == 0 && posmod(u[1], ell) == 0 && u[2] % ell == 0;
  };
  h.project_to_A_w = [ell, F](const Word& u) {
    if (u[0] % ell != 0 || u[2] % ell != 0) return BElem{};
    return mono({u[0], u[1] - posmod(u[1], ell), u[2]}, Scalar::one(F));
  };
  {
    BElem km1 = mono({0, ell, 0}, Scalar::one(F));
    belem_accum(km1, mono({0, 0, 0}, Scalar::one(F)), -Scalar::one(F));
    h.Aplus_generators = {mono({ell, 0, 0}, Scalar::one(F)), km1,
                          mono({0, 0, ell}, Scalar::one(F))};
  }
  // No finite quotient machinery is exposed for this family.
  h.quotient_to_hbar = nullptr;
  h.ideal_spec = [](IdealSpec::Kind, long, const std::vector<Scalar>&) -> IdealSpec {
    throw field_error("ueps_sl2: ideal specs are not supported");
  };
  h.chi_on_A = nullptr;
  h.tangent_on_A = nullptr;
  h.tangent_count = 0;
  return h;
}

// ---------------------------------------------------------------------------
// Z^rank x| F group algebras
// ---------------------------------------------------------------------------

BasedHopf abf_group_family(long rank, const std::vector<std::vector<std::vector<long>>>& mats,
                           const GroupTable& f) {
  if (rank < 1) throw field_error("abf: need rank >= 1");
  f.validate();
  if (static_cast<long>(mats.size()) != f.order)
    throw field_error("abf: need one matrix per group element");
  for (const auto& m : mats) {
    if (static_cast<long>(m.size()) != rank) throw field_error("abf: matrix has wrong size");
    for (const auto& row : m)
      if (static_cast<long>(row.size()) != rank) throw field_error("abf: matrix has wrong size");
  }
  auto matmul = [rank](const std::vector<std::vector<long>>& a,
                       const std::vector<std::vector<long>>& b) {
    std::vector<std::vector<long>> c(rank, std::vector<long>(rank, 0));
    for (long i = 0; i < rank; ++i)
      for (long j = 0; j < rank; ++j)
        for (long k = 0; k < rank; ++k) c[i][j] += a[i][k] * b[k][j];
    return c;
  };
  for (long i = 0; i < rank; ++i)
    for (long j = 0; j < rank; ++j)
      if (mats[f.identity][i][j] != (i == j ? 1 : 0))
        throw field_error("abf: identity must act as the identity matrix");
  for (long a = 0; a < f.order; ++a)
    for (long b = 0; b < f.order; ++b)
      if (matmul(mats[a], mats[b]) != mats[f.mult[a][b]])
        throw field_error("abf: matrices do not define a group action");

  FieldDesc F = FieldDesc::rationals();
  auto apply = [rank](const std::vector<std::vector<long>>& m, const Word& w) {
    std::vector<long> out(rank, 0);
    for (long i = 0; i < rank; ++i)
      for (long j = 0; j < rank; ++j) out[i] += m[i][j] * w[j];
    return out;
  };

  BasedHopf h;
  h.name = "abf:rank" + std::to_string(rank);
  h.field = F;
  h.unit_word.assign(rank + 1, 0);
  h.unit_word[rank] = f.identity;
  h.a_side = BasedHopf::ASide::Left;

  auto grp = std::make_shared<GroupTable>(f);
  auto mm = std::make_shared<std::vector<std::vector<std::vector<long>>>>(mats);
  h.product_ww = [rank, grp, mm, apply, F](const Word& u, const Word& v) {
    Word out(rank + 1, 0);
    std::vector<long> mv = apply((*mm)[u[rank]], v);
    for (long i = 0; i < rank; ++i) out[i] = u[i] + mv[i];
    out[rank] = grp->mult[u[rank]][v[rank]];
    return mono(out, Scalar::one(F));
  };
  h.coproduct_w = [F](const Word& w) {
    BTensor t;
    t[{w, w}] = Scalar::one(F);
    return t;
  };
  h.counit_w = [F](const Word&) { return Scalar::one(F); };
  h.antipode_w = [rank, grp, mm, apply, F](const Word& w) {
    long fi = grp->inverse[w[rank]];
    std::vector<long> mv = apply((*mm)[fi], w);
    Word out(rank + 1, 0);
    for (long i = 0; i < rank; ++i) out[i] = -mv[i];
    out[rank] = fi;
    return mono(out, Scalar::one(F));
  };
  h.degree = [rank, grp](const Word& w) {
    long d = w[rank] == grp->identity ? 0 : 1;
    for (long i = 0; i < rank; ++i) d += std::labs(w[i]);
    return d;
  };
  h.words_up_to = [rank, grp](long nn) {
    std::vector<Word> out;
    std::function<void(Word&, long, long)> rec = [&](Word& w, long pos, long budget) {
      if (pos == rank) {
        for (long fi = 0; fi < grp->order; ++fi) {
          if (fi != grp->identity && budget < 1) continue;
          w[rank] = fi;
          out.push_back(w);
        }
        return;
      }
      for (long v = -budget; v <= budget; ++v) {
        w[pos] = v;
        rec(w, pos + 1, budget - std::labs(v));
      }
    };
    Word w(rank + 1, 0);
    rec(w, 0, nn);
    return out;
  };
  h.word_str = [rank, grp](const Word& w) {
    std::ostringstream os;
    os << "(";
    for (long i = 0; i < rank; ++i) os << (i ? "," : "") << w[i];
    os << ";" << grp->labels[w[rank]] << ")";
    return os.str();
  };
  h.A_predicate = [rank, grp](const Word& w) { return w[rank] == grp->identity; };
  h.project_to_A_w = [rank, grp, F](const Word& w) {
    Word out = w;
    out[rank] = grp->identity;
    return mono(out, Scalar::one(F));
  };
  for (long i = 0; i < rank; ++i) {
    Word e = h.unit_word;
    e[i] = 1;
    BElem gen = mono(e, Scalar::one(F));
    belem_accum(gen, mono(h.unit_word, Scalar::one(F)), -Scalar::one(F));
    h.Aplus_generators.push_back(gen);
  }
  h.hbar = group_algebra(f, F);
  h.quotient_to_hbar = [rank, grp, F](const BElem& e) {
    Vec out(grp->order, Scalar::zero(F));
    for (const auto& [w, c] : e) out[w[rank]] += c;
    return out;
  };
  h.ideal_spec = [rank, grp, mm, apply, F](IdealSpec::Kind kind, long nn,
                                           const std::vector<Scalar>& params) {
    FieldDesc jf = F;
    for (const auto& p : params) jf = join(jf, p.field());
    long order = grp->order;
    switch (kind) {
      case IdealSpec::Kind::PointIdeal: {
        if (static_cast<long>(params.size()) != rank)
          throw field_error("abf: PointIdeal takes rank parameters");
        std::vector<Scalar> lam;
        for (const auto& p : params) {
          Scalar v = p.coerce(jf);
          if (v.is_zero()) throw field_error("abf: parameters must be nonzero");
          lam.push_back(v);
        }
        IdealSpec spec;
        spec.kind = kind;
        spec.descr = "PointIdeal";
        for (long fi = 0; fi < order; ++fi) {
          Word w(rank + 1, 0);
          w[rank] = fi;
          spec.quotient_basis.push_back(w);
        }
        auto lamp = std::make_shared<std::vector<Scalar>>(lam);
        spec.project = [rank, grp, mm, apply, lamp, jf](const BElem& e) {
          Vec out(grp->order, Scalar::zero(jf));
          for (const auto& [w, c] : e) {
            std::vector<long> v = apply((*mm)[grp->inverse[w[rank]]], w);
            Scalar s = c.coerce(jf);
            for (long i = 0; i < rank; ++i) s = s * (*lamp)[i].pow(v[i]);
            out[w[rank]] += s;
          }
          return out;
        };
        for (long i = 0; i < rank; ++i) {
          Word e(rank + 1, 0);
          e[rank] = grp->identity;
          Word b = e;
          b[i] = 1;
          BElem gen = mono(b, Scalar::one(jf));
          belem_accum(gen, mono(e, Scalar::one(jf)), -lam[i]);
          spec.ideal_generators.push_back(gen);
        }
        return spec;
      }
      case IdealSpec::Kind::AugPower:
      case IdealSpec::Kind::CoreIdeal:
      case IdealSpec::Kind::Intersection: {
        if (rank != 1 && !(kind == IdealSpec::Kind::AugPower && nn == 1))
          throw field_error("abf: this ideal kind needs rank 1");
        std::vector<Scalar> roots;
        std::string descr;
        if (kind == IdealSpec::Kind::AugPower) {
          if (nn < 1) throw field_error("abf: AugPower needs n >= 1");
          roots.assign(nn, Scalar::one(jf));
          descr = "AugPower(" + std::to_string(nn) + ")";
        } else {
          if (params.empty()) throw field_error("abf: need parameters");
          if (kind == IdealSpec::Kind::CoreIdeal && params.size() != 1)
            throw field_error("abf: CoreIdeal takes one parameter");
          for (const auto& p : params) {
            Scalar lam = p.coerce(jf);
            if (lam.is_zero()) throw field_error("abf: parameters must be nonzero");
            for (long fi = 0; fi < grp->order; ++fi) {
              Scalar r = lam.pow((*mm)[fi][0][0]);
              if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
            }
          }
          descr = (kind == IdealSpec::Kind::CoreIdeal ? "CoreIdeal(" + params[0].str() + ")"
                                                      : "Intersection");
        }
        IdealSpec spec =
            modulus_spec(kind, descr, lower_coeffs_from_roots(roots, jf), grp->order, jf);
        // modulus_spec words are {j, f}; rewrite to rank-1 abf words {j, f}.
        return spec;
      }
    }
    throw field_error("abf: unsupported ideal kind");
  };
  h.chi_on_A = [rank](const Word& w, const std::vector<Scalar>& params) {
    if (static_cast<long>(params.size()) != rank)
      throw field_error("abf: character needs rank parameters");
    Scalar s = Scalar::one(params[0].field());
    for (long i = 0; i < rank; ++i) s = s * params[i].pow(w[i]);
    return s;
  };
  h.char_param_doc = "rank nonzero scalars: character values at the lattice generators";
  h.tangent_on_A = [](const Word& w, long dir) { return Scalar::integer(w[dir]); };
  h.tangent_count = rank;
  return h;
}

// ---------------------------------------------------------------------------
// Restricted enveloping algebras in characteristic p
// ---------------------------------------------------------------------------

UPosChar u_positive_char(const RestrictedLie& lie) {
  lie.validate();
  UPosChar up;
  up.h = restricted_enveloping(lie);
  up.hbar = up.h;
  const FdHopf& h = up.h;
  // x_i sits at exponent vector e_i.
  auto gen_index = [&](long i) {
    long idx = 1;
    for (long k = lie.dim - 1 - i; k > 0; --k) idx *= lie.p;
    return idx;
  };
  bool prim = true, central = true;
  std::string prim_wit, central_wit;
  for (long i = 0; i < lie.dim; ++i) {
    Vec xi = h.basis_vec(gen_index(i));
    Vec v = xi;
    for (long e = 1; e < lie.p; ++e) v = h.multiply(v, xi);
    up.p_powers.push_back(v);
    // Primitivity of x_i^p (= x_i^[p] here) in the quotient.
    Vec dv = h.comult_vec(v);
    for (long k = 0; k < h.dim; ++k) {
      dv[tensor_index(k, 0, h.dim)] -= v[k];
      dv[tensor_index(0, k, h.dim)] -= v[k];
    }
    for (const auto& s : dv)
      if (!s.is_zero()) {
        prim = false;
        prim_wit = lie.labels[i];
        break;
      }
    // The restriction relation x_i^p = x_i^[p] holds in the quotient, so the
    // central elements x_i^p - x_i^[p] of the enveloping algebra map to zero.
    Vec w = h.zero_vec();
    for (long k = 0; k < lie.dim; ++k) {
      const Scalar& c = lie.p_map[i][k];
      if (c.is_zero()) continue;
      Vec xk = h.basis_vec(gen_index(k));
      for (long r = 0; r < h.dim; ++r) w[r] += c * xk[r];
    }
    for (long r = 0; r < h.dim; ++r)
      if (!(v[r] == w[r])) {
        central = false;
        central_wit = lie.labels[i];
        break;
      }
  }
  up.checks.add("p_power_primitive", prim, prim_wit);
  up.checks.add("p_power_restriction", central, central_wit);
  return up;
}

// ---------------------------------------------------------------------------
// Reference parsing
// ---------------------------------------------------------------------------

Scalar parse_scalar_token(const std::string& tok) {
  if (tok.empty()) throw field_error("parse: empty scalar token");
  if (tok.rfind("zeta", 0) == 0) {
    long n = 0;
    try {
      n = std::stol(tok.substr(4));
    } catch (...) {
      throw field_error("parse: bad root-of-unity token '" + tok + "'");
    }
    if (n < 1) throw field_error("parse: bad root-of-unity order in '" + tok + "'");
    return Scalar::primitive_root(n);
  }
  try {
    size_t slash = tok.find('/');
    if (slash != std::string::npos) {
      long num = std::stol(tok.substr(0, slash));
      long den = std::stol(tok.substr(slash + 1));
      if (den == 0) throw field_error("parse: zero denominator in '" + tok + "'");
      return Scalar::rational(mpq_class(num, den));
    }
    return Scalar::integer(std::stol(tok));
  } catch (const field_error&) {
    throw;
  } catch (...) {
    throw field_error("parse: bad scalar token '" + tok + "'");
  }
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

long parse_long(const std::string& tok) {
  try {
    size_t used = 0;
    long v = std::stol(tok, &used);
    if (used != tok.size()) throw field_error("parse: bad integer '" + tok + "'");
    return v;
  } catch (const field_error&) {
    throw;
  } catch (...) {
    throw field_error("parse: bad integer '" + tok + "'");
  }
}

bool is_integer_token(const std::string& tok) {
  if (tok.empty()) return false;
  size_t i = tok[0] == '-' ? 1 : 0;
  if (i == tok.size()) return false;
  for (; i < tok.size(); ++i)
    if (!isdigit(static_cast<unsigned char>(tok[i]))) return false;
  return true;
}

}  // namespace

FamilyObject make_family(const std::string& ref) {
  FamilyObject obj;
  obj.name = ref;
  std::string head = ref, args;
  size_t colon = ref.find(':');
  if (colon != std::string::npos) {
    head = ref.substr(0, colon);
    args = ref.substr(colon + 1);
  }
  std::vector<std::string> toks = args.empty() ? std::vector<std::string>{} : split(args, ',');

  if (head == "dihedral") {
    if (!toks.empty()) throw field_error("parse: dihedral takes no parameters");
    obj.based = dihedral_family();
  } else if (head == "taft") {
    if (toks.size() != 3) throw field_error("parse: taft:n,t,q");
    obj.based = taft_family(parse_long(toks[0]), parse_long(toks[1]), parse_scalar_token(toks[2]));
  } else if (head == "liu") {
    if (toks.size() != 3) throw field_error("parse: liu:n,w,q");
    obj.based = liu_family(parse_long(toks[0]), parse_long(toks[1]), parse_scalar_token(toks[2]));
  } else if (head == "qplane") {
    if (toks.size() != 3) throw field_error("parse: qplane:l,n,q");
    obj.based =
        qplane_family(parse_long(toks[0]), parse_long(toks[1]), parse_scalar_token(toks[2]));
  } else if (head == "bfam") {
    if (toks.size() < 4) throw field_error("parse: bfam:n,p0,p1,...[,q]");
    bool has_q = !is_integer_token(toks.back()) || parse_long(toks.back()) < 0;
    std::vector<long> nums;
    for (size_t i = 0; i + (has_q ? 1 : 0) < toks.size(); ++i) nums.push_back(parse_long(toks[i]));
    if (nums.size() < 4) throw field_error("parse: bfam:n,p0,p1,...[,q]");
    long n = nums[0];
    std::vector<long> ps(nums.begin() + 1, nums.end());
    Scalar q;
    if (has_q) {
      q = parse_scalar_token(toks.back());
    } else {
      long P = 1;
      for (size_t i = 1; i < ps.size(); ++i) P *= ps[i];
      if (ps[0] == 0 || n % ps[0] != 0) throw field_error("parse: bfam needs p0 | n");
      q = Scalar::primitive_root((n / ps[0]) * P);
    }
    obj.based = bfam_family(n, ps, q);
  } else if (head == "ueps_sl2") {
    if (toks.size() != 1) throw field_error("parse: ueps_sl2:l");
    obj.based = ueps_sl2_family(parse_long(toks[0]));
  } else if (head == "abf") {
    if (toks.size() != 1) throw field_error("parse: abf:inv or abf:swap2");
    if (toks[0] == "inv") {
      obj.based = abf_group_family(1, {{{1}}, {{-1}}}, GroupTable::cyclic(2));
    } else if (toks[0] == "swap2") {
      obj.based =
          abf_group_family(2, {{{1, 0}, {0, 1}}, {{0, 1}, {1, 0}}}, GroupTable::cyclic(2));
    } else {
      throw field_error("parse: unknown abf action '" + toks[0] + "'");
    }
  } else if (head == "up") {
    if (toks.size() != 2) throw field_error("parse: up:lie,p");
    long p = parse_long(toks[1]);
    obj.is_based = false;
    if (toks[0] == "sl2") {
      obj.up = u_positive_char(RestrictedLie::sl2(p));
    } else if (toks[0].rfind("ab", 0) == 0) {
      obj.up = u_positive_char(RestrictedLie::abelian(parse_long(toks[0].substr(2)), p));
    } else {
      throw field_error("parse: unknown Lie algebra '" + toks[0] + "'");
    }
  } else {
    throw field_error("parse: unknown family '" + head + "'");
  }
  obj.name = ref;
  return obj;
}

}  // namespace hopfkit
