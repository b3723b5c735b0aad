#include "hopfkit/based.hpp"

#include <sstream>

namespace hopfkit {

BElem belem_scale(const BElem& e, const Scalar& c) {
  BElem out;
  if (c.is_zero()) return out;
  for (const auto& [w, v] : e) {
    Scalar cv = c * v;
    if (!cv.is_zero()) out[w] = cv;
  }
  return out;
}

void belem_accum(BElem& into, const BElem& e, const Scalar& c) {
  if (c.is_zero()) return;
  for (const auto& [w, v] : e) {
    auto it = into.find(w);
    if (it == into.end()) {
      Scalar cv = c * v;
      if (!cv.is_zero()) into.emplace(w, cv);
    } else {
      it->second += c * v;
      if (it->second.is_zero()) into.erase(it);
    }
  }
}

BElem belem_add(const BElem& a, const BElem& b) {
  BElem out = a;
  for (const auto& [w, v] : b) {
    auto it = out.find(w);
    if (it == out.end())
      out.emplace(w, v);
    else {
      it->second += v;
      if (it->second.is_zero()) out.erase(it);
    }
  }
  return out;
}

bool belem_is_zero(const BElem& e) {
  for (const auto& [w, v] : e)
    if (!v.is_zero()) return false;
  return true;
}

BElem BasedHopf::word_elem(const Word& w) const { return BElem{{w, Scalar::one(field)}}; }

BElem BasedHopf::product(const BElem& a, const BElem& b) const {
  BElem out;
  for (const auto& [wa, ca] : a)
    for (const auto& [wb, cb] : b) belem_accum(out, product_ww(wa, wb), ca * cb);
  return out;
}

BTensor BasedHopf::coproduct(const BElem& e) const {
  BTensor out;
  for (const auto& [w, c] : e)
    for (const auto& [pair, v] : coproduct_w(w)) {
      auto it = out.find(pair);
      if (it == out.end()) {
        Scalar cv = c * v;
        if (!cv.is_zero()) out.emplace(pair, cv);
      } else {
        it->second += c * v;
        if (it->second.is_zero()) out.erase(it);
      }
    }
  return out;
}

Scalar BasedHopf::counit(const BElem& e) const {
  Scalar s = Scalar::zero(field);
  for (const auto& [w, c] : e) s += c * counit_w(w);
  return s;
}

BElem BasedHopf::antipode(const BElem& e) const {
  BElem out;
  for (const auto& [w, c] : e) belem_accum(out, antipode_w(w), c);
  return out;
}

BElem BasedHopf::project_to_A(const BElem& e) const {
  BElem out;
  for (const auto& [w, c] : e) belem_accum(out, project_to_A_w(w), c);
  return out;
}

std::string BasedHopf::elem_str(const BElem& e) const {
  if (e.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : e) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")*" << word_str(w);
  }
  return os.str();
}

Scalar CofiniteFunctional::eval(const BElem& e) const {
  Vec coords = spec.project(e);
  Scalar s = Scalar::zero(host->field);
  for (size_t i = 0; i < coords.size(); ++i) s += values[i].coerce(host->field) * coords[i];
  return s;
}

Scalar CofiniteFunctional::eval_word(const Word& w) const { return eval(host->word_elem(w)); }

VerifyReport verify_based(const BasedHopf& h, long n) {
  VerifyReport rep;
  std::vector<Word> words = h.words_up_to(n);

  // Associativity on word triples.
  {
    bool ok = true;
    std::string wit;
    for (const auto& u : words) {
      if (!ok) break;
      for (const auto& v : words) {
        if (!ok) break;
        BElem uv = h.product_ww(u, v);
        for (const auto& w : words) {
          BElem lhs = h.product(uv, h.word_elem(w));
          BElem rhs = h.product(h.word_elem(u), h.product_ww(v, w));
          belem_accum(lhs, rhs, -Scalar::one(h.field));
          if (!belem_is_zero(lhs)) {
            ok = false;
            wit = "(" + h.word_str(u) + " " + h.word_str(v) + ") " + h.word_str(w);
            break;
          }
        }
      }
    }
    rep.add("associativity", ok, wit);
  }

  // Unit word.
  {
    bool ok = true;
    std::string wit;
    for (const auto& w : words) {
      BElem l = h.product_ww(h.unit_word, w);
      BElem r = h.product_ww(w, h.unit_word);
      BElem e = h.word_elem(w);
      belem_accum(l, e, -Scalar::one(h.field));
      belem_accum(r, e, -Scalar::one(h.field));
      if (!belem_is_zero(l) || !belem_is_zero(r)) {
        ok = false;
        wit = h.word_str(w);
        break;
      }
    }
    rep.add("unit", ok, wit);
  }

  // Coassociativity.
  {
    bool ok = true;
    std::string wit;
    for (const auto& w : words) {
      std::map<std::tuple<Word, Word, Word>, Scalar> acc;
      for (const auto& [pair, c] : h.coproduct_w(w)) {
        for (const auto& [p2, c2] : h.coproduct_w(pair.first)) {
          auto key = std::make_tuple(p2.first, p2.second, pair.second);
          auto it = acc.find(key);
          if (it == acc.end())
            acc.emplace(key, c * c2);
          else
            it->second += c * c2;
        }
        for (const auto& [p2, c2] : h.coproduct_w(pair.second)) {
          auto key = std::make_tuple(pair.first, p2.first, p2.second);
          auto it = acc.find(key);
          if (it == acc.end())
            acc.emplace(key, -(c * c2));
          else
            it->second -= c * c2;
        }
      }
      for (const auto& [key, v] : acc)
        if (!v.is_zero()) {
          ok = false;
          wit = h.word_str(w);
          break;
        }
      if (!ok) break;
    }
    rep.add("coassociativity", ok, wit);
  }

  // Counit axiom.
  {
    bool ok = true;
    std::string wit;
    for (const auto& w : words) {
      BElem left, right;
      for (const auto& [pair, c] : h.coproduct_w(w)) {
        belem_accum(left, h.word_elem(pair.second), c * h.counit_w(pair.first));
        belem_accum(right, h.word_elem(pair.first), c * h.counit_w(pair.second));
      }
      BElem e = h.word_elem(w);
      belem_accum(left, e, -Scalar::one(h.field));
      belem_accum(right, e, -Scalar::one(h.field));
      if (!belem_is_zero(left) || !belem_is_zero(right)) {
        ok = false;
        wit = h.word_str(w);
        break;
      }
    }
    rep.add("counit", ok, wit);
  }

  // Delta multiplicative on word pairs.
  {
    bool ok = true;
    std::string wit;
    for (const auto& u : words) {
      if (!ok) break;
      for (const auto& v : words) {
        BTensor lhs = h.coproduct(h.product_ww(u, v));
        BTensor rhs;
        for (const auto& [p1, c1] : h.coproduct_w(u))
          for (const auto& [p2, c2] : h.coproduct_w(v)) {
            BElem a = h.product_ww(p1.first, p2.first);
            BElem b = h.product_ww(p1.second, p2.second);
            Scalar c12 = c1 * c2;
            for (const auto& [wa, ca] : a)
              for (const auto& [wb, cb] : b) {
                auto key = std::make_pair(wa, wb);
                auto it = rhs.find(key);
                Scalar add = c12 * ca * cb;
                if (it == rhs.end()) {
                  if (!add.is_zero()) rhs.emplace(key, add);
                } else {
                  it->second += add;
                  if (it->second.is_zero()) rhs.erase(it);
                }
              }
          }
        if (!(lhs == rhs)) {
          ok = false;
          wit = "Delta(" + h.word_str(u) + " " + h.word_str(v) + ")";
          break;
        }
      }
    }
    rep.add("comult_algebra_map", ok, wit);
  }

  // Epsilon multiplicative.
  {
    bool ok = true;
    std::string wit;
    for (const auto& u : words) {
      if (!ok) break;
      for (const auto& v : words) {
        if (h.counit(h.product_ww(u, v)) != h.counit_w(u) * h.counit_w(v)) {
          ok = false;
          wit = "eps(" + h.word_str(u) + " " + h.word_str(v) + ")";
          break;
        }
      }
    }
    rep.add("counit_algebra_map", ok, wit);
  }

  // Antipode axiom.
  {
    bool ok = true;
    std::string wit;
    for (const auto& w : words) {
      BElem left, right;
      for (const auto& [pair, c] : h.coproduct_w(w)) {
        belem_accum(left, h.product(h.antipode_w(pair.first), h.word_elem(pair.second)), c);
        belem_accum(right, h.product(h.word_elem(pair.first), h.antipode_w(pair.second)), c);
      }
      BElem expect;
      Scalar e = h.counit_w(w);
      if (!e.is_zero()) expect[h.unit_word] = e;
      belem_accum(left, expect, -Scalar::one(h.field));
      belem_accum(right, expect, -Scalar::one(h.field));
      if (!belem_is_zero(left) || !belem_is_zero(right)) {
        ok = false;
        wit = h.word_str(w);
        break;
      }
    }
    rep.add("antipode", ok, wit);
  }

  // A closed under products.
  {
    bool ok = true;
    std::string wit;
    for (const auto& u : words) {
      if (!ok || !h.A_predicate(u)) continue;
      for (const auto& v : words) {
        if (!h.A_predicate(v)) continue;
        for (const auto& [w, c] : h.product_ww(u, v))
          if (!h.A_predicate(w)) {
            ok = false;
            wit = h.word_str(u) + " * " + h.word_str(v) + " -> " + h.word_str(w);
            break;
          }
        if (!ok) break;
      }
    }
    rep.add("A_closed", ok, wit);
  }

  // Pi is A-linear with Pi|_A = id (on words up to N).
  {
    bool ok = true;
    std::string wit;
    for (const auto& a : words) {
      if (!ok || !h.A_predicate(a)) continue;
      BElem ea = h.word_elem(a);
      if (!belem_is_zero(belem_add(h.project_to_A(ea), belem_scale(ea, -Scalar::one(h.field))))) {
        ok = false;
        wit = "Pi(" + h.word_str(a) + ") != " + h.word_str(a);
        break;
      }
      for (const auto& w : words) {
        bool left = h.a_side == BasedHopf::ASide::Left;
        BElem lhs = left ? h.project_to_A(h.product_ww(a, w))
                         : h.project_to_A(h.product_ww(w, a));
        BElem rhs = left ? h.product(ea, h.project_to_A_w(w))
                         : h.product(h.project_to_A_w(w), ea);
        belem_accum(lhs, rhs, -Scalar::one(h.field));
        if (!belem_is_zero(lhs)) {
          ok = false;
          wit = left ? "Pi(" + h.word_str(a) + " " + h.word_str(w) + ")"
                     : "Pi(" + h.word_str(w) + " " + h.word_str(a) + ")";
          break;
        }
      }
    }
    rep.add("projection_A_linear", ok, wit);
  }

  return rep;
}

CosplitResult cosplit_check(const BasedHopf& h, long n) {
  CosplitResult res;
  for (const auto& w : h.words_up_to(n)) {
    BElem x = h.word_elem(w);
    belem_accum(x, h.project_to_A_w(w), -Scalar::one(h.field));
    if (belem_is_zero(x)) continue;  // w lies in A
    if (!h.counit(x).is_zero()) {
      res.pass = false;
      res.witness = "eps != 0 on X part of " + h.word_str(w);
      return res;
    }
    // (Pi (x) Pi)(Delta x) must vanish.
    BTensor acc;
    for (const auto& [pair, c] : h.coproduct(x)) {
      BElem pa = h.project_to_A_w(pair.first);
      BElem pb = h.project_to_A_w(pair.second);
      for (const auto& [wa, ca] : pa)
        for (const auto& [wb, cb] : pb) {
          auto key = std::make_pair(wa, wb);
          auto it = acc.find(key);
          Scalar add = c * ca * cb;
          if (it == acc.end()) {
            if (!add.is_zero()) acc.emplace(key, add);
          } else {
            it->second += add;
            if (it->second.is_zero()) acc.erase(it);
          }
        }
    }
    if (!acc.empty()) {
      res.pass = false;
      res.witness = "(Pi(x)Pi)(Delta) != 0 on X part of " + h.word_str(w);
      return res;
    }
  }
  return res;
}

CofiniteFunctional character_functional(const BasedHopf& h, const std::vector<Scalar>& params) {
  CofiniteFunctional f;
  f.host = &h;
  f.spec = h.ideal_spec(IdealSpec::Kind::CoreIdeal, 0, params);
  f.values.assign(f.spec.quotient_basis.size(), Scalar::zero(h.field));
  for (size_t i = 0; i < f.spec.quotient_basis.size(); ++i) {
    // value = chi_g(Pi(w)) on each quotient-basis word
    BElem pa = h.project_to_A_w(f.spec.quotient_basis[i]);
    Scalar v = Scalar::zero(h.field);
    for (const auto& [w, c] : pa) v += c * h.chi_on_A(w, params);
    f.values[i] = v;
  }
  return f;
}

CofiniteFunctional pi_upper(const BasedHopf& h, const Vec& beta) {
  CofiniteFunctional f;
  f.host = &h;
  f.spec = h.ideal_spec(IdealSpec::Kind::AugPower, 1, {});
  f.values.assign(f.spec.quotient_basis.size(), Scalar::zero(h.field));
  for (size_t i = 0; i < f.spec.quotient_basis.size(); ++i) {
    Vec hb = h.quotient_to_hbar(h.word_elem(f.spec.quotient_basis[i]));
    Scalar v = Scalar::zero(h.field);
    for (long j = 0; j < h.hbar.dim; ++j) v += beta[j].coerce(h.field) * hb[j];
    f.values[i] = v;
  }
  return f;
}

CofiniteFunctional tangent_functional(const BasedHopf& h, long direction) {
  if (!h.tangent_on_A || direction < 0 || direction >= h.tangent_count)
    throw field_error("tangent direction unsupported");
  CofiniteFunctional f;
  f.host = &h;
  f.spec = h.ideal_spec(IdealSpec::Kind::AugPower, 2, {});
  f.values.assign(f.spec.quotient_basis.size(), Scalar::zero(h.field));
  for (size_t i = 0; i < f.spec.quotient_basis.size(); ++i) {
    BElem pa = h.project_to_A_w(f.spec.quotient_basis[i]);
    Scalar v = Scalar::zero(h.field);
    for (const auto& [w, c] : pa) v += c * h.tangent_on_A(w, direction);
    f.values[i] = v;
  }
  return f;
}

std::vector<std::pair<Word, Scalar>> iota_upper(const CofiniteFunctional& f, long n) {
  std::vector<std::pair<Word, Scalar>> out;
  for (const auto& w : f.host->words_up_to(n))
    if (f.host->A_predicate(w)) out.push_back({w, f.eval_word(w)});
  return out;
}

CofiniteFunctional convolve(const CofiniteFunctional& f, const CofiniteFunctional& g,
                            const IdealSpec& target, long n) {
  const BasedHopf& h = *f.host;
  CofiniteFunctional out;
  out.host = &h;
  out.spec = target;
  out.values.assign(target.quotient_basis.size(), Scalar::zero(h.field));
  auto conv_at = [&](const BElem& e) {
    Scalar s = Scalar::zero(h.field);
    for (const auto& [pair, c] : h.coproduct(e))
      s += c * f.eval_word(pair.first) * g.eval_word(pair.second);
    return s;
  };
  for (size_t i = 0; i < target.quotient_basis.size(); ++i)
    out.values[i] = conv_at(h.word_elem(target.quotient_basis[i]));
  // Audit: the convolution must vanish on the target's ideal generators
  // times words of degree <= n (the chosen target would be wrong otherwise).
  for (const auto& gen : target.ideal_generators)
    for (const auto& w : h.words_up_to(n)) {
      BElem gw = h.product(gen, h.word_elem(w));
      Scalar direct = conv_at(gw);
      Scalar through = out.eval(gw);
      if (direct != through)
        throw field_error("convolution audit failed at " + h.elem_str(gw));
    }
  return out;
}

Scalar dual_coproduct_eval(const CofiniteFunctional& f, const BElem& h, const BElem& hp) {
  return f.eval(f.host->product(h, hp));
}

bool in_Hbar_star(const CofiniteFunctional& f, long n) {
  const BasedHopf& h = *f.host;
  for (const auto& a : h.Aplus_generators)
    for (const auto& w : h.words_up_to(n)) {
      if (!f.eval(h.product(a, h.word_elem(w))).is_zero()) return false;
      if (!f.eval(h.product(h.word_elem(w), a)).is_zero()) return false;
    }
  return true;
}

bool in_W(const CofiniteFunctional& f, long n_power, long n) {
  const BasedHopf& h = *f.host;
  // Products of n_power A+-generators (with repetition) times words <= N.
  std::vector<BElem> prods{BElem{{h.unit_word, Scalar::one(h.field)}}};
  for (long k = 0; k < n_power; ++k) {
    std::vector<BElem> next;
    for (const auto& p : prods)
      for (const auto& a : h.Aplus_generators) next.push_back(h.product(p, a));
    prods = std::move(next);
  }
  for (const auto& p : prods)
    for (const auto& w : h.words_up_to(n))
      if (!f.eval(h.product(p, h.word_elem(w))).is_zero()) return false;
  return true;
}

std::vector<CofiniteFunctional> hat_space(const BasedHopf& h,
                                          const std::vector<Scalar>& params) {
  IdealSpec spec = h.ideal_spec(IdealSpec::Kind::CoreIdeal, 0, params);
  std::vector<CofiniteFunctional> out;
  for (size_t i = 0; i < spec.quotient_basis.size(); ++i) {
    CofiniteFunctional f;
    f.host = &h;
    f.spec = spec;
    f.values.assign(spec.quotient_basis.size(), Scalar::zero(h.field));
    f.values[i] = Scalar::one(h.field);
    out.push_back(std::move(f));
  }
  return out;
}

CofiniteFunctional antipode_dual(const CofiniteFunctional& f, const IdealSpec& target) {
  const BasedHopf& h = *f.host;
  CofiniteFunctional out;
  out.host = &h;
  out.spec = target;
  out.values.assign(target.quotient_basis.size(), Scalar::zero(h.field));
  for (size_t i = 0; i < target.quotient_basis.size(); ++i)
    out.values[i] = f.eval(h.antipode_w(target.quotient_basis[i]));
  return out;
}

Matrix functional_value_matrix(const std::vector<CofiniteFunctional>& fs,
                               const IdealSpec& spec) {
  FieldDesc f = fs.empty() ? FieldDesc::rationals() : fs[0].host->field;
  Matrix m(static_cast<long>(fs.size()), static_cast<long>(spec.quotient_basis.size()), f);
  for (size_t i = 0; i < fs.size(); ++i)
    for (size_t j = 0; j < spec.quotient_basis.size(); ++j)
      m.at(static_cast<long>(i), static_cast<long>(j)) =
          fs[i].eval_word(spec.quotient_basis[j]);
  return m;
}

}  // namespace hopfkit
