#include "hopfkit/fdhopf.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>
#include <thread>
#include <unordered_map>

namespace hopfkit {

namespace {

std::string describe_basis(const FdHopf& h, long i) {
  if (i >= 0 && i < static_cast<long>(h.basis_labels.size()) && !h.basis_labels[i].empty())
    return h.basis_labels[i];
  return "e" + std::to_string(i);
}

void add_sparse(Vec& dense, const SparseVec& s, const Scalar& c) {
  if (c.is_zero()) return;
  for (const auto& [idx, v] : s) dense[idx] += c * v;
}

bool all_zero(const Vec& v) {
  for (const auto& s : v)
    if (!s.is_zero()) return false;
  return true;
}

long worker_count() {
  if (const char* env = std::getenv("HOPFKIT_JOBS")) {
    long j = std::atol(env);
    if (j >= 1) return j;
  }
  long hw = static_cast<long>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  return std::min<long>(hw, 8);
}

/// Run fn(i) over [0, n) on several threads; fn returns the smallest failing
/// index in its chunk or -1. The global result is deterministic (minimum).
long parallel_first_failure(long n, const std::function<long(long, long)>& chunk_fn) {
  long jobs = std::min(worker_count(), std::max<long>(n, 1));
  if (jobs <= 1) return chunk_fn(0, n);
  std::vector<long> results(jobs, -1);
  std::vector<std::thread> threads;
  long per = (n + jobs - 1) / jobs;
  for (long t = 0; t < jobs; ++t) {
    long lo = t * per, hi = std::min(n, lo + per);
    threads.emplace_back([&, t, lo, hi] { results[t] = chunk_fn(lo, hi); });
  }
  for (auto& th : threads) th.join();
  for (long t = 0; t < jobs; ++t)
    if (results[t] >= 0) return results[t];
  return -1;
}

/// Integer copy of the structure tensors over F_p for the hot loops.
struct FpTensors {
  long p = 0;
  long dim = 0;
  std::vector<std::vector<std::pair<long, long>>> mult;           // (index, value)
  std::vector<std::vector<std::tuple<long, long, long>>> comult;  // (j, k, value)

  static FpTensors build(const FdHopf& h) {
    FpTensors t;
    t.p = h.field.n;
    t.dim = h.dim;
    t.mult.resize(h.dim * h.dim);
    for (long i = 0; i < h.dim; ++i)
      for (long j = 0; j < h.dim; ++j)
        for (const auto& [m, c] : h.mult[i][j])
          if (c.residue() != 0) t.mult[i * h.dim + j].push_back({m, c.residue()});
    if (h.has_coalgebra()) {
      t.comult.resize(h.dim);
      for (long i = 0; i < h.dim; ++i)
        for (const auto& [j, k, c] : h.comult[i])
          if (c.residue() != 0) t.comult[i].push_back({j, k, c.residue()});
    }
    return t;
  }
};

/// Smallest i with a failing triple (i, j, k), or -1. Scratch-buffer
/// accumulation with lazy modular reduction keeps the inner loop integral.
long fp_assoc_failure(const FpTensors& t, long* out_j, long* out_k) {
  long d = t.dim;
  long fail = parallel_first_failure(d, [&](long lo, long hi) -> long {
    std::vector<long> scratch(d, 0);
    std::vector<long> touched;
    touched.reserve(64);
    for (long i = lo; i < hi; ++i) {
      for (long j = 0; j < d; ++j) {
        const auto& u = t.mult[i * d + j];
        for (long k = 0; k < d; ++k) {
          for (const auto& [m, c] : u)
            for (const auto& [r, v] : t.mult[m * d + k]) {
              if (scratch[r] == 0) touched.push_back(r);
              scratch[r] += c * v;
            }
          for (const auto& [m, c] : t.mult[j * d + k])
            for (const auto& [r, v] : t.mult[i * d + m]) {
              if (scratch[r] == 0) touched.push_back(r);
              scratch[r] -= c * v;
            }
          bool ok = true;
          for (long r : touched) {
            if (scratch[r] % t.p != 0) ok = false;
            scratch[r] = 0;
          }
          touched.clear();
          if (!ok) return i;
        }
      }
    }
    return -1;
  });
  if (fail < 0) return -1;
  // Recover the witness (j, k) single-threaded for the failing i.
  std::vector<long> scratch(d, 0);
  for (long j = 0; j < d; ++j) {
    const auto& u = t.mult[fail * d + j];
    for (long k = 0; k < d; ++k) {
      for (const auto& [m, c] : u)
        for (const auto& [r, v] : t.mult[m * d + k]) scratch[r] += c * v;
      for (const auto& [m, c] : t.mult[j * d + k])
        for (const auto& [r, v] : t.mult[fail * d + m]) scratch[r] -= c * v;
      bool ok = true;
      for (long r = 0; r < d; ++r) {
        if (scratch[r] % t.p != 0) ok = false;
        scratch[r] = 0;
      }
      if (!ok) {
        *out_j = j;
        *out_k = k;
        return fail;
      }
    }
  }
  return fail;
}

/// Delta(e_i e_j) = Delta(e_i) Delta(e_j): smallest failing i, or -1.
long fp_comult_mult_failure(const FpTensors& t, long* out_j) {
  long d = t.dim;
  long fail = parallel_first_failure(d, [&](long lo, long hi) -> long {
    std::vector<long> scratch(d * d, 0);
    std::vector<long> touched;
    touched.reserve(1024);
    for (long i = lo; i < hi; ++i) {
      for (long j = 0; j < d; ++j) {
        for (const auto& [m, c] : t.mult[i * d + j])
          for (const auto& [a, b, v] : t.comult[m]) {
            long idx = a * d + b;
            if (scratch[idx] == 0) touched.push_back(idx);
            scratch[idx] += c * v;
          }
        for (const auto& [p1, q1, c1] : t.comult[i])
          for (const auto& [p2, q2, c2] : t.comult[j]) {
            long c12 = (c1 * c2) % t.p;
            for (const auto& [r1, v1] : t.mult[p1 * d + p2]) {
              long cv = c12 * v1;
              long base = r1 * d;
              for (const auto& [r2, v2] : t.mult[q1 * d + q2]) {
                long idx = base + r2;
                if (scratch[idx] == 0) touched.push_back(idx);
                scratch[idx] -= cv * v2 % (t.p * t.p);
              }
            }
          }
        bool ok = true;
        for (long idx : touched) {
          if (scratch[idx] % t.p != 0) ok = false;
          scratch[idx] = 0;
        }
        touched.clear();
        if (!ok) return i;
      }
    }
    return -1;
  });
  if (fail < 0) return -1;
  // Recover j.
  FdHopf dummy;
  for (long j = 0; j < d; ++j) {
    std::unordered_map<long, long> acc;
    for (const auto& [m, c] : t.mult[fail * d + j])
      for (const auto& [a, b, v] : t.comult[m]) acc[a * d + b] += c * v;
    for (const auto& [p1, q1, c1] : t.comult[fail])
      for (const auto& [p2, q2, c2] : t.comult[j])
        for (const auto& [r1, v1] : t.mult[p1 * d + p2])
          for (const auto& [r2, v2] : t.mult[q1 * d + q2])
            acc[r1 * d + r2] -= ((c1 * c2) % t.p) * v1 % (t.p * t.p) * v2;
    for (const auto& [idx, v] : acc)
      if (v % t.p != 0) {
        *out_j = j;
        return fail;
      }
  }
  return fail;
}

}  // namespace

SparseVec to_sparse(const Vec& v) {
  SparseVec s;
  for (long i = 0; i < static_cast<long>(v.size()); ++i)
    if (!v[i].is_zero()) s.push_back({i, v[i]});
  return s;
}

Vec to_dense(const SparseVec& v, long dim, const FieldDesc& f) {
  Vec d(dim, Scalar::zero(f));
  for (const auto& [i, c] : v) d[i] = c.coerce(f);
  return d;
}

Vec FdHopf::basis_vec(long i) const {
  Vec v = zero_vec();
  v[i] = Scalar::one(field);
  return v;
}

long FdHopf::label_index(const std::string& label) const {
  for (long i = 0; i < static_cast<long>(basis_labels.size()); ++i)
    if (basis_labels[i] == label) return i;
  throw field_error("unknown basis label: " + label);
}

Vec FdHopf::multiply(const Vec& a, const Vec& b) const {
  Vec out = zero_vec();
  for (long i = 0; i < dim; ++i) {
    if (a[i].is_zero()) continue;
    for (long j = 0; j < dim; ++j) {
      if (b[j].is_zero()) continue;
      add_sparse(out, mult[i][j], a[i] * b[j]);
    }
  }
  return out;
}

Scalar FdHopf::counit_of(const Vec& v) const {
  Scalar s = Scalar::zero(field);
  for (long i = 0; i < dim; ++i) s += counit[i] * v[i];
  return s;
}

Vec FdHopf::comult_vec(const Vec& v) const {
  Vec out(dim * dim, Scalar::zero(field));
  for (long i = 0; i < dim; ++i) {
    if (v[i].is_zero()) continue;
    for (const auto& [j, k, c] : comult[i]) out[tensor_index(j, k, dim)] += v[i] * c;
  }
  return out;
}

Matrix FdHopf::left_mult_matrix(const Vec& x) const {
  Matrix m(dim, dim, field);
  for (long j = 0; j < dim; ++j) {
    Vec col = multiply(x, basis_vec(j));
    for (long i = 0; i < dim; ++i) m.at(i, j) = col[i];
  }
  return m;
}

Matrix FdHopf::right_mult_matrix(const Vec& x) const {
  Matrix m(dim, dim, field);
  for (long j = 0; j < dim; ++j) {
    Vec col = multiply(basis_vec(j), x);
    for (long i = 0; i < dim; ++i) m.at(i, j) = col[i];
  }
  return m;
}

Vec FdHopf::apply_antipode(const Vec& v) const {
  if (!antipode) throw field_error("no antipode available");
  return antipode->apply(v);
}

bool FdHopf::is_commutative() const {
  for (long i = 0; i < dim; ++i)
    for (long j = i + 1; j < dim; ++j) {
      Vec a = to_dense(mult[i][j], dim, field);
      Vec b = to_dense(mult[j][i], dim, field);
      if (a != b) return false;
    }
  return true;
}

bool FdHopf::is_cocommutative() const {
  for (long i = 0; i < dim; ++i) {
    Vec d = comult_vec(basis_vec(i));
    for (long j = 0; j < dim; ++j)
      for (long k = 0; k < dim; ++k)
        if (d[tensor_index(j, k, dim)] != d[tensor_index(k, j, dim)]) return false;
  }
  return true;
}

void VerifyReport::add(const std::string& name, bool pass, const std::string& witness) {
  checks.push_back({name, pass, witness});
  if (!pass) all_pass = false;
}

const CheckItem* VerifyReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

VerifyReport verify(const FdHopf& h) {
  VerifyReport rep;
  const long d = h.dim;
  bool fast = h.field.is_prime_field();
  FpTensors fp;
  if (fast) fp = FpTensors::build(h);

  // Associativity.
  {
    bool ok = true;
    std::string wit;
    if (fast) {
      long j = -1, k = -1;
      long i = fp_assoc_failure(fp, &j, &k);
      if (i >= 0) {
        ok = false;
        wit = "(" + describe_basis(h, i) + " " + describe_basis(h, j) + ") " +
              describe_basis(h, k) + " != " + describe_basis(h, i) + " (" +
              describe_basis(h, j) + " " + describe_basis(h, k) + ")";
      }
    } else {
      for (long i = 0; i < d && ok; ++i)
        for (long j = 0; j < d && ok; ++j) {
          Vec ij = to_dense(h.mult[i][j], d, h.field);
          for (long k = 0; k < d && ok; ++k) {
            Vec lhs = h.multiply(ij, h.basis_vec(k));
            Vec rhs = h.multiply(h.basis_vec(i), to_dense(h.mult[j][k], d, h.field));
            if (lhs != rhs) {
              ok = false;
              wit = "(" + describe_basis(h, i) + " " + describe_basis(h, j) + ") " +
                    describe_basis(h, k) + " != " + describe_basis(h, i) + " (" +
                    describe_basis(h, j) + " " + describe_basis(h, k) + ")";
            }
          }
        }
    }
    rep.add("associativity", ok, wit);
  }

  // Unit.
  {
    bool ok = true;
    std::string wit;
    for (long i = 0; i < d && ok; ++i) {
      Vec e = h.basis_vec(i);
      if (h.multiply(h.unit, e) != e || h.multiply(e, h.unit) != e) {
        ok = false;
        wit = "1 * " + describe_basis(h, i);
      }
    }
    rep.add("unit", ok, wit);
  }

  if (h.has_coalgebra()) {
    // Coassociativity: (Delta x id) Delta = (id x Delta) Delta on e_i.
    {
      bool ok = true;
      std::string wit;
      for (long i = 0; i < d && ok; ++i) {
        std::map<std::tuple<long, long, long>, Scalar> acc;
        for (const auto& [j, k, c] : h.comult[i]) {
          for (const auto& [a, b, c2] : h.comult[j]) {
            auto key = std::make_tuple(a, b, k);
            auto it = acc.find(key);
            if (it == acc.end())
              acc.emplace(key, c * c2);
            else
              it->second += c * c2;
          }
          for (const auto& [a, b, c2] : h.comult[k]) {
            auto key = std::make_tuple(j, a, b);
            auto it = acc.find(key);
            if (it == acc.end())
              acc.emplace(key, -(c * c2));
            else
              it->second -= c * c2;
          }
        }
        for (const auto& [key, val] : acc)
          if (!val.is_zero()) {
            ok = false;
            wit = describe_basis(h, i);
            break;
          }
      }
      rep.add("coassociativity", ok, wit);
    }

    // Counit: (eps x id) Delta = id = (id x eps) Delta.
    {
      bool ok = true;
      std::string wit;
      for (long i = 0; i < d && ok; ++i) {
        Vec left = h.zero_vec(), right = h.zero_vec();
        for (const auto& [j, k, c] : h.comult[i]) {
          left[k] += c * h.counit[j];
          right[j] += c * h.counit[k];
        }
        Vec e = h.basis_vec(i);
        if (left != e || right != e) {
          ok = false;
          wit = describe_basis(h, i);
        }
      }
      rep.add("counit", ok, wit);
    }

    // Delta is an algebra map.
    {
      bool ok = true;
      std::string wit;
      if (fast) {
        long j = -1;
        long i = fp_comult_mult_failure(fp, &j);
        if (i >= 0) {
          ok = false;
          wit = "Delta(" + describe_basis(h, i) + " " + describe_basis(h, j) + ")";
        }
      } else {
        for (long i = 0; i < d && ok; ++i)
          for (long j = 0; j < d && ok; ++j) {
            Vec lhs = h.comult_vec(to_dense(h.mult[i][j], d, h.field));
            Vec rhs(d * d, Scalar::zero(h.field));
            for (const auto& [p1, q1, c1] : h.comult[i])
              for (const auto& [p2, q2, c2] : h.comult[j]) {
                Scalar c12 = c1 * c2;
                for (const auto& [r1, v1] : h.mult[p1][p2]) {
                  Scalar cv = c12 * v1;
                  for (const auto& [r2, v2] : h.mult[q1][q2])
                    rhs[tensor_index(r1, r2, d)] += cv * v2;
                }
              }
            if (lhs != rhs) {
              ok = false;
              wit = "Delta(" + describe_basis(h, i) + " " + describe_basis(h, j) + ")";
            }
          }
      }
      bool unit_ok = true;
      Vec du = h.comult_vec(h.unit);
      Vec uu(d * d, Scalar::zero(h.field));
      for (long i = 0; i < d; ++i)
        for (long j = 0; j < d; ++j) uu[tensor_index(i, j, d)] = h.unit[i] * h.unit[j];
      if (du != uu) unit_ok = false;
      rep.add("comult_algebra_map", ok && unit_ok,
              !ok ? wit : (unit_ok ? "" : "Delta(1) != 1 (x) 1"));
    }

    // Epsilon is an algebra map.
    {
      bool ok = true;
      std::string wit;
      if (!h.counit_of(h.unit).is_one()) {
        ok = false;
        wit = "eps(1) != 1";
      }
      for (long i = 0; i < d && ok; ++i)
        for (long j = 0; j < d && ok; ++j) {
          Scalar lhs = h.counit_of(to_dense(h.mult[i][j], d, h.field));
          if (lhs != h.counit[i] * h.counit[j]) {
            ok = false;
            wit = "eps(" + describe_basis(h, i) + " " + describe_basis(h, j) + ")";
          }
        }
      rep.add("counit_algebra_map", ok, wit);
    }

    // Antipode axiom.
    if (h.antipode) {
      bool ok = true;
      std::string wit;
      for (long i = 0; i < d && ok; ++i) {
        Vec left = h.zero_vec(), right = h.zero_vec();
        for (const auto& [j, k, c] : h.comult[i]) {
          Vec sj = h.antipode->apply(h.basis_vec(j));
          add_sparse(left, to_sparse(h.multiply(sj, h.basis_vec(k))), c);
          Vec sk = h.antipode->apply(h.basis_vec(k));
          add_sparse(right, to_sparse(h.multiply(h.basis_vec(j), sk)), c);
        }
        Vec target = h.unit;
        Scalar e = h.counit[i];
        Vec expect(d, Scalar::zero(h.field));
        for (long m = 0; m < d; ++m) expect[m] = e * target[m];
        if (left != expect || right != expect) {
          ok = false;
          wit = describe_basis(h, i);
        }
      }
      rep.add("antipode", ok, wit);
    }
  }

  rep.is_commutative = h.is_commutative();
  rep.is_cocommutative = h.has_coalgebra() && h.is_cocommutative();
  rep.has_antipode = h.antipode.has_value();
  return rep;
}

FdHopf dual(const FdHopf& h) {
  if (!h.has_coalgebra()) throw field_error("dual requires a coalgebra structure");
  FdHopf g;
  g.field = h.field;
  g.dim = h.dim;
  g.basis_labels.resize(h.dim);
  for (long i = 0; i < h.dim; ++i) g.basis_labels[i] = describe_basis(h, i) + "^*";
  // Multiplication of the dual: transpose of comultiplication.
  g.mult.assign(h.dim, std::vector<SparseVec>(h.dim));
  for (long i = 0; i < h.dim; ++i)
    for (const auto& [j, k, c] : h.comult[i]) g.mult[j][k].push_back({i, c});
  for (auto& row : g.mult)
    for (auto& s : row) std::sort(s.begin(), s.end(), [](const auto& a, const auto& b) {
      return a.first < b.first;
    });
  // Unit of the dual: the counit covector.
  g.unit = h.counit;
  // Comultiplication of the dual: transpose of multiplication.
  g.comult.assign(h.dim, {});
  for (long i = 0; i < h.dim; ++i)
    for (long j = 0; j < h.dim; ++j)
      for (const auto& [m, c] : h.mult[i][j]) g.comult[m].push_back({i, j, c});
  // Counit of the dual: evaluation at 1.
  g.counit = h.unit;
  if (h.antipode) g.antipode = h.antipode->transpose();
  return g;
}

FdHopf tensor_product(const FdHopf& a, const FdHopf& b) {
  FieldDesc f = join(a.field, b.field);
  FdHopf t;
  t.field = f;
  t.dim = a.dim * b.dim;
  t.basis_labels.resize(t.dim);
  for (long i = 0; i < a.dim; ++i)
    for (long j = 0; j < b.dim; ++j)
      t.basis_labels[tensor_index(i, j, b.dim)] =
          describe_basis(a, i) + "(x)" + describe_basis(b, j);
  t.mult.assign(t.dim, std::vector<SparseVec>(t.dim));
  for (long i1 = 0; i1 < a.dim; ++i1)
    for (long j1 = 0; j1 < b.dim; ++j1)
      for (long i2 = 0; i2 < a.dim; ++i2)
        for (long j2 = 0; j2 < b.dim; ++j2) {
          SparseVec& out = t.mult[tensor_index(i1, j1, b.dim)][tensor_index(i2, j2, b.dim)];
          for (const auto& [m1, c1] : a.mult[i1][i2])
            for (const auto& [m2, c2] : b.mult[j1][j2])
              out.push_back({tensor_index(m1, m2, b.dim), c1.coerce(f) * c2.coerce(f)});
          std::sort(out.begin(), out.end(),
                    [](const auto& x, const auto& y) { return x.first < y.first; });
        }
  t.unit.assign(t.dim, Scalar::zero(f));
  for (long i = 0; i < a.dim; ++i)
    for (long j = 0; j < b.dim; ++j)
      t.unit[tensor_index(i, j, b.dim)] = a.unit[i].coerce(f) * b.unit[j].coerce(f);
  if (a.has_coalgebra() && b.has_coalgebra()) {
    t.comult.assign(t.dim, {});
    for (long i = 0; i < a.dim; ++i)
      for (long j = 0; j < b.dim; ++j) {
        auto& row = t.comult[tensor_index(i, j, b.dim)];
        for (const auto& [p1, q1, c1] : a.comult[i])
          for (const auto& [p2, q2, c2] : b.comult[j])
            row.push_back({tensor_index(p1, p2, b.dim), tensor_index(q1, q2, b.dim),
                           c1.coerce(f) * c2.coerce(f)});
      }
    t.counit.assign(t.dim, Scalar::zero(f));
    for (long i = 0; i < a.dim; ++i)
      for (long j = 0; j < b.dim; ++j)
        t.counit[tensor_index(i, j, b.dim)] = a.counit[i].coerce(f) * b.counit[j].coerce(f);
    if (a.antipode && b.antipode) {
      Matrix s(t.dim, t.dim, f);
      for (long i = 0; i < a.dim; ++i)
        for (long j = 0; j < b.dim; ++j)
          for (long p = 0; p < a.dim; ++p)
            for (long q = 0; q < b.dim; ++q)
              s.at(tensor_index(p, q, b.dim), tensor_index(i, j, b.dim)) =
                  a.antipode->at(p, i).coerce(f) * b.antipode->at(q, j).coerce(f);
      t.antipode = s;
    }
  }
  return t;
}

bool solve_antipode(FdHopf& h) {
  if (!h.has_coalgebra()) return false;
  const long d = h.dim;
  // Unknown S as a d x d matrix; equations: for each i,
  // sum_{(j,k,c) in Delta e_i} c * S(e_j) e_k = eps(e_i) 1.
  Matrix sys(d * d, d * d, h.field);
  Vec rhs(d * d, Scalar::zero(h.field));
  for (long i = 0; i < d; ++i) {
    for (const auto& [j, k, c] : h.comult[i]) {
      // S(e_j) = sum_m S_{m j} e_m; S(e_j) e_k = sum_m S_{m j} mult[m][k].
      for (long m = 0; m < d; ++m)
        for (const auto& [r, v] : h.mult[m][k])
          sys.at(i * d + r, m * d + j) += c * v;
    }
    for (long r = 0; r < d; ++r) rhs[i * d + r] = h.counit[i] * h.unit[r];
  }
  auto sol = solve(sys, rhs);
  if (!sol) return false;
  Matrix s(d, d, h.field);
  for (long m = 0; m < d; ++m)
    for (long j = 0; j < d; ++j) s.at(m, j) = (*sol)[m * d + j];
  // The left convolution inverse of id is the antipode iff it also works on
  // the right; check and reject otherwise.
  FdHopf probe = h;
  probe.antipode = s;
  VerifyReport rep = verify(probe);
  const CheckItem* anti = rep.find("antipode");
  if (!anti || !anti->pass) return false;
  h.antipode = s;
  return true;
}

bool is_character(const FdHopf& h, const Vec& chi) {
  Scalar on_unit = Scalar::zero(h.field);
  for (long i = 0; i < h.dim; ++i) on_unit += chi[i].coerce(h.field) * h.unit[i];
  if (!on_unit.is_one()) return false;
  for (long i = 0; i < h.dim; ++i)
    for (long j = 0; j < h.dim; ++j) {
      Scalar lhs = Scalar::zero(h.field);
      for (const auto& [m, c] : h.mult[i][j]) lhs += c * chi[m];
      if (lhs != chi[i] * chi[j]) return false;
    }
  return true;
}

bool is_group_like(const FdHopf& h, const Vec& v) {
  if (!h.counit_of(v).is_one()) return false;
  Vec d = h.comult_vec(v);
  for (long j = 0; j < h.dim; ++j)
    for (long k = 0; k < h.dim; ++k)
      if (d[tensor_index(j, k, h.dim)] != v[j] * v[k]) return false;
  return true;
}

namespace {

/// Candidate scalar pool for character values over field f.
std::vector<Scalar> candidate_pool(const FieldDesc& f, const std::vector<Scalar>& extra) {
  std::vector<Scalar> pool;
  auto push = [&](const Scalar& s) {
    for (const auto& p : pool)
      if (p == s) return;
    pool.push_back(s);
  };
  if (f.is_prime_field()) {
    for (long v = 0; v < f.n; ++v) push(Scalar::gf(f.n, v));
  } else {
    push(Scalar::zero(f));
    for (long v = 1; v <= 6; ++v) {
      push(Scalar::from_int(v, f));
      push(Scalar::from_int(-v, f));
    }
    push(Scalar::rational(mpq_class(1, 2)).coerce(f));
    push(Scalar::rational(mpq_class(-1, 2)).coerce(f));
    if (f.is_cyclotomic()) {
      Scalar z = Scalar::primitive_root(f.n);
      Scalar p = Scalar::one(f);
      for (long j = 0; j < f.n; ++j) {
        push(p);
        push(-p);
        p = p * z;
      }
    }
  }
  for (const auto& e : extra) {
    try {
      push(e.coerce(f));
    } catch (const field_error&) {
      // candidate outside the working field: ignore
    }
  }
  return pool;
}

Scalar eval_poly_at(const Vec& poly, const Scalar& x) {
  Scalar acc = Scalar::zero(x.field());
  for (long i = static_cast<long>(poly.size()) - 1; i >= 0; --i)
    acc = acc * x + poly[i].coerce(x.field());
  return acc;
}

/// Divide poly (low-first, monic-ish) by (x - r); remainder must be checked
/// by the caller via eval_poly_at.
Vec deflate(const Vec& poly, const Scalar& r) {
  long deg = static_cast<long>(poly.size()) - 1;
  Vec q(deg, Scalar::zero(poly[0].field()));
  Scalar carry = poly[deg];
  for (long i = deg - 1; i >= 0; --i) {
    q[i] = carry;
    carry = poly[i] + carry * r;
  }
  return q;
}

/// All rational roots of a Q-coefficient polynomial (low-first), by the
/// rational root theorem on the denominator-cleared form. Bounded effort.
std::vector<mpq_class> rational_roots(const Vec& poly) {
  std::vector<mpq_class> roots;
  if (!poly[0].field().is_rationals() && !poly[0].field().is_cyclotomic()) return roots;
  std::vector<mpq_class> q;
  for (const auto& s : poly) {
    if (!s.is_rational_value()) return roots;
    q.push_back(s.rational_value());
  }
  mpz_class den = 1;
  for (const auto& c : q) den = den * c.get_den() / gcd(den, mpz_class(c.get_den()));
  std::vector<mpz_class> z;
  for (const auto& c : q) z.push_back(mpz_class(c * den));
  long lo = 0;
  while (lo < static_cast<long>(z.size()) && z[lo] == 0) ++lo;
  if (lo > 0) roots.push_back(0);
  if (lo >= static_cast<long>(z.size())) return roots;
  mpz_class a0 = abs(z[lo]), lead = abs(z.back());
  if (a0 > 1000000000 || lead > 1000000000) return roots;
  auto divisors = [](long n) {
    std::vector<long> ds;
    for (long d2 = 1; d2 * d2 <= n; ++d2)
      if (n % d2 == 0) {
        ds.push_back(d2);
        if (d2 != n / d2) ds.push_back(n / d2);
      }
    std::sort(ds.begin(), ds.end());
    return ds;
  };
  for (long p : divisors(a0.get_si()))
    for (long qd : divisors(lead.get_si()))
      for (int sign : {1, -1}) {
        mpq_class cand(sign * p, qd);
        cand.canonicalize();
        mpq_class acc = 0;
        for (long i = static_cast<long>(z.size()) - 1; i >= lo; --i) acc = acc * cand + z[i];
        if (acc == 0) {
          bool seen = false;
          for (const auto& r : roots)
            if (r == cand) seen = true;
          if (!seen) roots.push_back(cand);
        }
      }
  return roots;
}

struct GenInfo {
  Vec vec;
  std::vector<Scalar> roots;  // candidate values, with multiplicity collapsed
  bool split_completely = false;
};

/// Incremental word-closure consistency check for a partial assignment.
/// Returns false on contradiction; at full assignment, chi_out receives the
/// unique solution when the words span (span_full set accordingly).
bool closure_solve(const FdHopf& h, const std::vector<GenInfo>& gens,
                   const std::vector<Scalar>& values, long assigned, Vec* chi_out,
                   bool* span_full) {
  std::vector<Vec> words{h.unit};
  std::vector<Scalar> vals{Scalar::one(h.field)};
  Subspace span = Subspace::span(h.dim, h.field, {h.unit});
  for (long t = 0; t < assigned; ++t) {
    words.push_back(gens[t].vec);
    vals.push_back(values[t]);
    span = span.sum(Subspace::span(h.dim, h.field, {gens[t].vec}));
  }
  // Multiply existing words by assigned generators until the span stops
  // growing; bounded by the ambient dimension.
  size_t frontier_start = 0;
  while (span.dim() < h.dim) {
    size_t old_size = words.size();
    bool grew = false;
    for (size_t w = frontier_start; w < old_size; ++w)
      for (long t = 0; t < assigned; ++t) {
        Vec prod = h.multiply(words[w], gens[t].vec);
        if (!span.contains(prod)) {
          span = span.sum(Subspace::span(h.dim, h.field, {prod}));
          words.push_back(prod);
          vals.push_back(vals[w] * values[t]);
          grew = true;
        }
      }
    if (!grew) break;
    frontier_start = old_size;
  }
  // Consistency: the affine system words . chi = vals must be solvable, and
  // additionally every product of two listed words must evaluate to the
  // product of values whenever it lies in the span (checked lazily by just
  // adding pairwise products of generators as rows).
  for (long s = 0; s < assigned; ++s)
    for (long t = 0; t < assigned; ++t) {
      words.push_back(h.multiply(gens[s].vec, gens[t].vec));
      vals.push_back(values[s] * values[t]);
    }
  Matrix sys(static_cast<long>(words.size()), h.dim, h.field);
  for (long r = 0; r < static_cast<long>(words.size()); ++r) sys.set_row(r, words[r]);
  auto sol = solve(sys, vals);
  if (!sol) return false;
  if (chi_out) *chi_out = *sol;
  if (span_full) *span_full = (span.dim() == h.dim);
  return true;
}

}  // namespace

CharacterList characters(const FdHopf& h, const std::vector<Scalar>& extra_candidates,
                         const std::vector<Vec>& generators) {
  CharacterList out;
  out.certified_complete = true;
  std::vector<Vec> gens = generators;
  if (gens.empty())
    for (long i = 0; i < h.dim; ++i) gens.push_back(h.basis_vec(i));

  std::vector<Scalar> pool = candidate_pool(h.field, extra_candidates);
  std::vector<GenInfo> info;
  for (const auto& g : gens) {
    GenInfo gi;
    gi.vec = g;
    Vec mp = minimal_polynomial(h.left_mult_matrix(g));
    for (const auto& r : rational_roots(mp)) {
      Scalar s = Scalar::rational(r).coerce(h.field);
      bool seen = false;
      for (const auto& p : pool)
        if (p == s) seen = true;
      if (!seen) pool.push_back(s);
    }
    Vec rem = mp;
    for (const auto& c : pool) {
      while (rem.size() > 1 && eval_poly_at(rem, c).is_zero()) rem = deflate(rem, c);
      if (eval_poly_at(mp, c).is_zero()) gi.roots.push_back(c);
    }
    gi.split_completely = (rem.size() <= 1);
    if (!gi.split_completely) out.certified_complete = false;
    info.push_back(std::move(gi));
  }

  std::vector<Scalar> values(info.size(), Scalar::zero(h.field));
  std::function<void(long)> dfs = [&](long depth) {
    if (depth == static_cast<long>(info.size())) {
      Vec chi;
      bool span_full = false;
      if (!closure_solve(h, info, values, depth, &chi, &span_full)) return;
      if (!span_full) {
        out.certified_complete = false;
        return;
      }
      if (!is_character(h, chi)) return;
      for (const auto& existing : out.characters)
        if (existing == chi) return;
      out.characters.push_back(chi);
      return;
    }
    for (const auto& r : info[depth].roots) {
      values[depth] = r;
      if (!closure_solve(h, info, values, depth + 1, nullptr, nullptr)) continue;
      dfs(depth + 1);
    }
  };
  dfs(0);

  std::sort(out.characters.begin(), out.characters.end(), [](const Vec& a, const Vec& b) {
    for (size_t i = 0; i < a.size(); ++i) {
      if (a[i] == b[i]) continue;
      return a[i].str() < b[i].str();
    }
    return false;
  });
  return out;
}

CharacterList group_likes(const FdHopf& h, const std::vector<Scalar>& extra_candidates) {
  CharacterList out = characters(dual(h), extra_candidates);
  // Sanity: each result must be group-like in H itself.
  std::vector<Vec> kept;
  for (const auto& v : out.characters)
    if (is_group_like(h, v)) kept.push_back(v);
  out.characters = kept;
  return out;
}

Subspace skew_primitives(const FdHopf& h, const Vec& a, const Vec& b) {
  const long d = h.dim;
  Matrix sys(d * d, d, h.field);
  for (long m = 0; m < d; ++m) {
    Vec col(d * d, Scalar::zero(h.field));
    for (const auto& [j, k, c] : h.comult[m]) col[tensor_index(j, k, d)] += c;
    for (long j = 0; j < d; ++j) {
      col[tensor_index(m, j, d)] -= a[j];  // x (x) a term
      col[tensor_index(j, m, d)] -= b[j];  // b (x) x term
    }
    for (long r = 0; r < d * d; ++r) sys.at(r, m) = col[r];
  }
  return kernel(sys);
}

Vec convolve_cov(const FdHopf& h, const Vec& f, const Vec& g) {
  Vec out(h.dim, Scalar::zero(h.field));
  for (long i = 0; i < h.dim; ++i)
    for (const auto& [j, k, c] : h.comult[i])
      out[i] += c * f[j].coerce(h.field) * g[k].coerce(h.field);
  return out;
}

Vec convolution_unit(const FdHopf& h) { return h.counit; }

Vec precompose_antipode(const FdHopf& h, const Vec& f) {
  if (!h.antipode) throw field_error("no antipode available");
  return h.antipode->transpose().apply(f);
}

namespace {

Vec eval_word(const FdHopf& h, const std::vector<long>& word, const std::vector<Vec>& images) {
  Vec acc = h.unit;
  for (long g : word) acc = h.multiply(acc, images[g]);
  return acc;
}

Vec eval_poly_word(const FdHopf& h, const GenSpec::Poly& poly, const std::vector<Vec>& images) {
  Vec acc = h.zero_vec();
  for (const auto& term : poly) {
    Vec w = eval_word(h, term.word, images);
    Scalar c = term.coeff.coerce(h.field);
    for (long i = 0; i < h.dim; ++i) acc[i] += c * w[i];
  }
  return acc;
}

long max_gen_in_poly(const GenSpec::Poly& p) {
  long m = -1;
  for (const auto& t : p)
    for (long g : t.word) m = std::max(m, g);
  return m;
}

long element_order(const FdHopf& h, const Vec& g, long bound) {
  Vec acc = g;
  for (long e = 1; e <= bound; ++e) {
    if (acc == h.unit) return e;
    acc = h.multiply(acc, g);
  }
  return 0;
}

}  // namespace

IsoResult iso_search(const FdHopf& h1, const FdHopf& h2, const GenSpec& spec,
                     const std::vector<Scalar>& extra_candidates) {
  IsoResult res;
  std::ostringstream summary;
  if (h1.dim != h2.dim) {
    res.summary = "dimension mismatch";
    return res;
  }
  if (static_cast<long>(spec.basis_exprs.size()) != h1.dim)
    throw field_error("gen_spec inconsistent with H1: basis expression count");

  // Candidate group-likes in H2, computed once.
  CharacterList gl2 = group_likes(h2, extra_candidates);
  std::vector<Scalar> coeff_pool = candidate_pool(h2.field, extra_candidates);

  // Per-relation earliest depth at which all generators are assigned.
  std::vector<long> rel_ready(spec.rels.size(), 0);
  for (size_t r = 0; r < spec.rels.size(); ++r)
    rel_ready[r] =
        std::max(max_gen_in_poly(spec.rels[r].lhs), max_gen_in_poly(spec.rels[r].rhs)) + 1;

  std::vector<Vec> images;
  long nodes = 0;

  std::function<bool(long)> dfs = [&](long depth) -> bool {
    ++nodes;
    if (depth == static_cast<long>(spec.gens.size())) {
      // Build the map and certify.
      Matrix P(h2.dim, h1.dim, h2.field);
      for (long i = 0; i < h1.dim; ++i) {
        Vec col = eval_poly_word(h2, spec.basis_exprs[i], images);
        for (long r = 0; r < h2.dim; ++r) P.at(r, i) = col[r];
      }
      if (!inverse(P)) return false;
      Vec u1(h1.dim, Scalar::zero(h2.field));
      for (long i = 0; i < h1.dim; ++i) u1[i] = h1.unit[i].coerce(h2.field);
      if (P.apply(u1) != h2.unit) return false;
      // Algebra map on basis pairs.
      for (long i = 0; i < h1.dim; ++i)
        for (long j = 0; j < h1.dim; ++j) {
          Vec prod(h1.dim, Scalar::zero(h2.field));
          for (const auto& [m, c] : h1.mult[i][j]) prod[m] = c.coerce(h2.field);
          Vec lhs = P.apply(prod);
          Vec rhs = h2.multiply([&] {
            Vec v(h2.dim, Scalar::zero(h2.field));
            for (long r = 0; r < h2.dim; ++r) v[r] = P.at(r, i);
            return v;
          }(), [&] {
            Vec v(h2.dim, Scalar::zero(h2.field));
            for (long r = 0; r < h2.dim; ++r) v[r] = P.at(r, j);
            return v;
          }());
          if (lhs != rhs) return false;
        }
      // Coalgebra map on basis: (P (x) P) Delta1(e_i) == Delta2(P e_i).
      if (h1.has_coalgebra() && h2.has_coalgebra()) {
        for (long i = 0; i < h1.dim; ++i) {
          Vec lhs(h2.dim * h2.dim, Scalar::zero(h2.field));
          for (const auto& [j, k, c] : h1.comult[i]) {
            Scalar cc = c.coerce(h2.field);
            for (long r1 = 0; r1 < h2.dim; ++r1) {
              if (P.at(r1, j).is_zero()) continue;
              Scalar pj = cc * P.at(r1, j);
              for (long r2 = 0; r2 < h2.dim; ++r2)
                lhs[tensor_index(r1, r2, h2.dim)] += pj * P.at(r2, k);
            }
          }
          Vec pei(h2.dim, Scalar::zero(h2.field));
          for (long r = 0; r < h2.dim; ++r) pei[r] = P.at(r, i);
          Vec rhs = h2.comult_vec(pei);
          if (lhs != rhs) return false;
          Scalar e1 = h1.counit[i].coerce(h2.field);
          if (h2.counit_of(pei) != e1) return false;
        }
      }
      res.found = true;
      res.map = P;
      res.gen_images = images;
      return true;
    }

    const auto& gen = spec.gens[depth];
    std::vector<Vec> cands;
    if (gen.kind == GenSpec::Gen::Kind::GroupLike) {
      for (const auto& g : gl2.characters) cands.push_back(g);
    } else {
      Vec a_img = eval_word(h2, gen.a_word, images);
      Vec b_img = eval_word(h2, gen.b_word, images);
      Subspace sp = skew_primitives(h2, a_img, b_img);
      // Candidate images: pool-coefficient combinations of the basis.
      long sd = sp.dim();
      if (sd > 3) {
        summary << "skew-primitive space dim " << sd << " too large; truncated search; ";
        sd = 3;
      }
      std::vector<long> idx(sd, 0);
      bool done = (sd == 0);
      while (!done) {
        Vec v(h2.dim, Scalar::zero(h2.field));
        bool nonzero = false;
        for (long t = 0; t < sd; ++t) {
          const Scalar& c = coeff_pool[idx[t]];
          if (c.is_zero()) continue;
          nonzero = true;
          Vec bv = sp.basis_vector(t);
          for (long r = 0; r < h2.dim; ++r) v[r] += c * bv[r];
        }
        if (nonzero) cands.push_back(v);
        long t = 0;
        while (t < sd && ++idx[t] == static_cast<long>(coeff_pool.size())) idx[t++] = 0;
        if (t == sd) done = true;
      }
    }

    for (const auto& cand : cands) {
      images.push_back(cand);
      bool ok = true;
      for (size_t r = 0; r < spec.rels.size(); ++r) {
        if (rel_ready[r] != depth + 1) continue;
        Vec lhs = eval_poly_word(h2, spec.rels[r].lhs, images);
        Vec rhs = eval_poly_word(h2, spec.rels[r].rhs, images);
        if (lhs != rhs) {
          ok = false;
          break;
        }
      }
      if (ok && dfs(depth + 1)) return true;
      images.pop_back();
    }
    return false;
  };

  dfs(0);
  res.nodes_searched = nodes;
  summary << "nodes=" << nodes << " group_like_candidates=" << gl2.characters.size()
          << (res.found ? " found" : " none found");
  res.summary = summary.str();
  return res;
}

IsoResult certify_algebra_iso(const FdHopf& h1, const FdHopf& h2, const GenSpec& spec,
                              const std::vector<Vec>& gen_images) {
  IsoResult res;
  if (h1.dim != h2.dim) {
    res.summary = "dimension mismatch";
    return res;
  }
  if (static_cast<long>(spec.basis_exprs.size()) != h1.dim)
    throw field_error("gen_spec inconsistent with H1: basis expression count");
  Matrix P(h2.dim, h1.dim, h2.field);
  for (long i = 0; i < h1.dim; ++i) {
    Vec col = eval_poly_word(h2, spec.basis_exprs[i], gen_images);
    for (long r = 0; r < h2.dim; ++r) P.at(r, i) = col[r];
  }
  if (!inverse(P)) {
    res.summary = "images do not span";
    return res;
  }
  Vec u1(h1.dim, Scalar::zero(h2.field));
  for (long i = 0; i < h1.dim; ++i) u1[i] = h1.unit[i].coerce(h2.field);
  if (P.apply(u1) != h2.unit) {
    res.summary = "unit not preserved";
    return res;
  }
  for (long i = 0; i < h1.dim; ++i)
    for (long j = 0; j < h1.dim; ++j) {
      Vec prod(h1.dim, Scalar::zero(h2.field));
      for (const auto& [m, c] : h1.mult[i][j]) prod[m] = c.coerce(h2.field);
      Vec pi(h2.dim, Scalar::zero(h2.field)), pj(h2.dim, Scalar::zero(h2.field));
      for (long r = 0; r < h2.dim; ++r) {
        pi[r] = P.at(r, i);
        pj[r] = P.at(r, j);
      }
      if (P.apply(prod) != h2.multiply(pi, pj)) {
        res.summary = "not multiplicative at basis pair (" + std::to_string(i) + "," +
                      std::to_string(j) + ")";
        return res;
      }
    }
  res.found = true;
  res.map = P;
  res.gen_images = gen_images;
  res.summary = "algebra iso certified on explicit generator images";
  return res;
}

bool bidual_certified(const FdHopf& h) {
  FdHopf dd = dual(dual(h));
  if (dd.dim != h.dim || !(dd.unit == h.unit) || !(dd.counit == h.counit)) return false;
  for (long i = 0; i < h.dim; ++i)
    for (long j = 0; j < h.dim; ++j)
      if (to_dense(dd.mult[i][j], h.dim, h.field) != to_dense(h.mult[i][j], h.dim, h.field))
        return false;
  for (long i = 0; i < h.dim; ++i) {
    Vec a = dd.comult_vec(dd.basis_vec(i));
    Vec b = h.comult_vec(h.basis_vec(i));
    if (a != b) return false;
  }
  if (h.antipode && dd.antipode && !(*h.antipode == *dd.antipode)) return false;
  return true;
}

}  // namespace hopfkit
