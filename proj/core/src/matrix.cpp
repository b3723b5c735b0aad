#include "hopfkit/matrix.hpp"

#include <algorithm>

namespace hopfkit {

Matrix::Matrix(long rows, long cols, const FieldDesc& f)
    : rows_(rows), cols_(cols), field_(f), a_(rows * cols, Scalar::zero(f)) {}

Matrix Matrix::identity(long n, const FieldDesc& f) {
  Matrix m(n, n, f);
  for (long i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_, field_);
  for (long i = 0; i < rows_; ++i)
    for (long j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw field_error("matrix product shape mismatch");
  Matrix r(rows_, o.cols_, field_);
  for (long i = 0; i < rows_; ++i)
    for (long k = 0; k < cols_; ++k) {
      const Scalar& c = at(i, k);
      if (c.is_zero()) continue;
      for (long j = 0; j < o.cols_; ++j) {
        if (o.at(k, j).is_zero()) continue;
        r.at(i, j) += c * o.at(k, j);
      }
    }
  return r;
}

Vec Matrix::apply(const Vec& x) const {
  if ((long)x.size() != cols_) throw field_error("matrix apply shape mismatch");
  Vec r(rows_, Scalar::zero(field_));
  for (long i = 0; i < rows_; ++i)
    for (long j = 0; j < cols_; ++j)
      if (!at(i, j).is_zero() && !x[j].is_zero()) r[i] += at(i, j) * x[j];
  return r;
}

Vec Matrix::apply_left(const Vec& x) const {
  if ((long)x.size() != rows_) throw field_error("matrix apply shape mismatch");
  Vec r(cols_, Scalar::zero(field_));
  for (long i = 0; i < rows_; ++i) {
    if (x[i].is_zero()) continue;
    for (long j = 0; j < cols_; ++j)
      if (!at(i, j).is_zero()) r[j] += x[i] * at(i, j);
  }
  return r;
}

bool Matrix::operator==(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (size_t i = 0; i < a_.size(); ++i)
    if (a_[i] != o.a_[i]) return false;
  return true;
}

Vec Matrix::row(long i) const {
  return Vec(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
}

void Matrix::set_row(long i, const Vec& v) {
  for (long j = 0; j < cols_; ++j) a_[i * cols_ + j] = v[j];
}

bool Matrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Scalar& s) { return s.is_zero(); });
}

RrefResult rref(const Matrix& m) {
  RrefResult res;
  res.R = m;
  res.transform = Matrix::identity(m.rows(), m.field());
  Matrix& r = res.R;
  Matrix& t = res.transform;
  long lead = 0;
  for (long col = 0; col < m.cols() && lead < m.rows(); ++col) {
    long piv = -1;
    for (long i = lead; i < m.rows(); ++i)
      if (!r.at(i, col).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != lead) {
      for (long j = 0; j < m.cols(); ++j) std::swap(r.at(piv, j), r.at(lead, j));
      for (long j = 0; j < m.rows(); ++j) std::swap(t.at(piv, j), t.at(lead, j));
    }
    Scalar inv = r.at(lead, col).inverse();
    for (long j = 0; j < m.cols(); ++j)
      if (!r.at(lead, j).is_zero()) r.at(lead, j) *= inv;
    for (long j = 0; j < m.rows(); ++j)
      if (!t.at(lead, j).is_zero()) t.at(lead, j) *= inv;
    for (long i = 0; i < m.rows(); ++i) {
      if (i == lead || r.at(i, col).is_zero()) continue;
      Scalar c = r.at(i, col);
      for (long j = 0; j < m.cols(); ++j)
        if (!r.at(lead, j).is_zero()) r.at(i, j) -= c * r.at(lead, j);
      for (long j = 0; j < m.rows(); ++j)
        if (!t.at(lead, j).is_zero()) t.at(i, j) -= c * t.at(lead, j);
    }
    res.pivots.push_back(col);
    ++lead;
  }
  res.rank = lead;
  return res;
}

std::optional<Vec> solve(const Matrix& m, const Vec& b) {
  if ((long)b.size() != m.rows()) throw field_error("solve shape mismatch");
  // Eliminate on [M | b].
  Matrix aug(m.rows(), m.cols() + 1, m.field());
  for (long i = 0; i < m.rows(); ++i) {
    for (long j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols()) = b[i].field() == m.field() ? b[i] : b[i].coerce(m.field());
  }
  RrefResult r = rref(aug);
  Vec x(m.cols(), Scalar::zero(m.field()));
  for (long i = 0; i < r.rank; ++i) {
    long p = r.pivots[i];
    if (p == m.cols()) return std::nullopt;  // inconsistent
    x[p] = r.R.at(i, m.cols());
  }
  return x;
}

Subspace kernel(const Matrix& m) {
  RrefResult r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (long p : r.pivots) is_pivot[p] = true;
  std::vector<Vec> vecs;
  for (long j = 0; j < m.cols(); ++j) {
    if (is_pivot[j]) continue;
    Vec v(m.cols(), Scalar::zero(m.field()));
    v[j] = Scalar::one(m.field());
    for (long i = 0; i < r.rank; ++i) v[r.pivots[i]] = -r.R.at(i, j);
    vecs.push_back(std::move(v));
  }
  return Subspace::span(m.cols(), m.field(), vecs);
}

Scalar determinant(const Matrix& m) {
  if (m.rows() != m.cols()) throw field_error("determinant of nonsquare matrix");
  Matrix a = m;
  Scalar det = Scalar::one(m.field());
  long n = m.rows();
  for (long col = 0; col < n; ++col) {
    long piv = -1;
    for (long i = col; i < n; ++i)
      if (!a.at(i, col).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) return Scalar::zero(m.field());
    if (piv != col) {
      for (long j = 0; j < n; ++j) std::swap(a.at(piv, j), a.at(col, j));
      det = -det;
    }
    det *= a.at(col, col);
    Scalar inv = a.at(col, col).inverse();
    for (long i = col + 1; i < n; ++i) {
      if (a.at(i, col).is_zero()) continue;
      Scalar c = a.at(i, col) * inv;
      for (long j = col; j < n; ++j)
        if (!a.at(col, j).is_zero()) a.at(i, j) -= c * a.at(col, j);
    }
  }
  return det;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw field_error("inverse of nonsquare matrix");
  RrefResult r = rref(m);
  if (r.rank != m.rows()) return std::nullopt;
  return r.transform;
}

Vec minimal_polynomial(const Matrix& m) {
  if (m.rows() != m.cols()) throw field_error("minimal polynomial of nonsquare matrix");
  long n = m.rows();
  const FieldDesc& f = m.field();
  // Vectorize powers of m, find the first linear dependency.
  std::vector<Vec> powers;  // flattened
  Matrix p = Matrix::identity(n, f);
  for (long d = 0;; ++d) {
    Vec flat(n * n, Scalar::zero(f));
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) flat[i * n + j] = p.at(i, j);
    powers.push_back(std::move(flat));
    // Solve sum_{i<d} c_i m^i = m^d.
    Matrix sys(n * n, d, f);
    for (long c = 0; c < d; ++c)
      for (long k = 0; k < n * n; ++k) sys.at(k, c) = powers[c][k];
    if (d > 0) {
      auto sol = solve(sys, powers[d]);
      if (sol) {
        Vec poly(d + 1, Scalar::zero(f));
        for (long c = 0; c < d; ++c) poly[c] = -(*sol)[c];
        poly[d] = Scalar::one(f);
        return poly;
      }
    }
    p = p * m;
    if (d > n) throw field_error("minimal polynomial search exceeded dimension");
  }
}

Subspace::Subspace(long ambient_dim, const FieldDesc& f)
    : ambient_(ambient_dim), field_(f), basis_(0, ambient_dim, f) {}

Subspace Subspace::span(long ambient_dim, const FieldDesc& f,
                        const std::vector<Vec>& vectors) {
  Matrix m((long)vectors.size(), ambient_dim, f);
  for (size_t i = 0; i < vectors.size(); ++i) {
    if ((long)vectors[i].size() != ambient_dim)
      throw field_error("span vector has wrong ambient dimension");
    for (long j = 0; j < ambient_dim; ++j)
      m.at((long)i, j) = vectors[i][j].field() == f ? vectors[i][j] : vectors[i][j].coerce(f);
  }
  RrefResult r = rref(m);
  Subspace s(ambient_dim, f);
  s.basis_ = Matrix(r.rank, ambient_dim, f);
  for (long i = 0; i < r.rank; ++i) s.basis_.set_row(i, r.R.row(i));
  s.pivots_ = r.pivots;
  return s;
}

Subspace Subspace::full(long ambient_dim, const FieldDesc& f) {
  Subspace s(ambient_dim, f);
  s.basis_ = Matrix::identity(ambient_dim, f);
  for (long i = 0; i < ambient_dim; ++i) s.pivots_.push_back(i);
  return s;
}

void Subspace::recompute_pivots() {
  pivots_.clear();
  for (long i = 0; i < basis_.rows(); ++i)
    for (long j = 0; j < ambient_; ++j)
      if (!basis_.at(i, j).is_zero()) {
        pivots_.push_back(j);
        break;
      }
}

Vec Subspace::reduce(const Vec& v) const {
  Vec r = v;
  for (auto& c : r)
    if (c.field() != field_) c = c.coerce(field_);
  for (long i = 0; i < basis_.rows(); ++i) {
    long p = pivots_[i];
    if (r[p].is_zero()) continue;
    Scalar c = r[p];
    for (long j = 0; j < ambient_; ++j)
      if (!basis_.at(i, j).is_zero()) r[j] -= c * basis_.at(i, j);
  }
  return r;
}

bool Subspace::contains(const Vec& v) const {
  Vec r = reduce(v);
  return std::all_of(r.begin(), r.end(), [](const Scalar& s) { return s.is_zero(); });
}

bool Subspace::contains(const Subspace& o) const {
  for (long i = 0; i < o.basis_.rows(); ++i)
    if (!contains(o.basis_.row(i))) return false;
  return true;
}

std::optional<Vec> Subspace::coordinates(const Vec& v) const {
  if (!contains(v)) return std::nullopt;
  Vec c(basis_.rows(), Scalar::zero(field_));
  // RREF basis: coordinate i is just v at pivot i, after peeling.
  Vec r = v;
  for (auto& x : r)
    if (x.field() != field_) x = x.coerce(field_);
  for (long i = 0; i < basis_.rows(); ++i) {
    long p = pivots_[i];
    c[i] = r[p];
    if (!c[i].is_zero())
      for (long j = 0; j < ambient_; ++j)
        if (!basis_.at(i, j).is_zero()) r[j] -= c[i] * basis_.at(i, j);
  }
  return c;
}

Subspace Subspace::sum(const Subspace& o) const {
  if (ambient_ != o.ambient_) throw field_error("subspace ambient mismatch");
  std::vector<Vec> vecs;
  for (long i = 0; i < basis_.rows(); ++i) vecs.push_back(basis_.row(i));
  for (long i = 0; i < o.basis_.rows(); ++i) vecs.push_back(o.basis_.row(i));
  return span(ambient_, join(field_, o.field_), vecs);
}

Subspace Subspace::intersect(const Subspace& o) const {
  if (ambient_ != o.ambient_) throw field_error("subspace ambient mismatch");
  FieldDesc f = join(field_, o.field_);
  long r1 = basis_.rows(), r2 = o.basis_.rows();
  // x = alpha^T B1 = beta^T B2; kernel of [B1^T | -B2^T].
  Matrix sys(ambient_, r1 + r2, f);
  for (long i = 0; i < r1; ++i)
    for (long j = 0; j < ambient_; ++j) sys.at(j, i) = basis_.at(i, j).coerce(f);
  for (long i = 0; i < r2; ++i)
    for (long j = 0; j < ambient_; ++j) sys.at(j, r1 + i) = -o.basis_.at(i, j).coerce(f);
  Subspace k = kernel(sys);
  std::vector<Vec> vecs;
  for (long v = 0; v < k.dim(); ++v) {
    Vec kv = k.basis_vector(v);
    Vec x(ambient_, Scalar::zero(f));
    for (long i = 0; i < r1; ++i)
      if (!kv[i].is_zero())
        for (long j = 0; j < ambient_; ++j)
          if (!basis_.at(i, j).is_zero()) x[j] += kv[i] * basis_.at(i, j);
    vecs.push_back(std::move(x));
  }
  return span(ambient_, f, vecs);
}

bool Subspace::operator==(const Subspace& o) const {
  return ambient_ == o.ambient_ && basis_ == o.basis_;
}

std::vector<long> Subspace::complement_indices() const {
  std::vector<bool> is_pivot(ambient_, false);
  for (long p : pivots_) is_pivot[p] = true;
  std::vector<long> out;
  for (long j = 0; j < ambient_; ++j)
    if (!is_pivot[j]) out.push_back(j);
  return out;
}

}  // namespace hopfkit
