#include "logf1/linalg.hpp"

#include "logf1/errors.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace logf1 {

namespace {

Integer abs_value(const Integer& a) { return a < 0 ? Integer(-a) : a; }

// Quotient rounded toward negative infinity.
Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

}  // namespace

IntVector make_vector(std::initializer_list<long long> entries) {
  IntVector v;
  v.reserve(entries.size());
  for (long long e : entries) v.emplace_back(e);
  return v;
}

std::string to_string(const IntVector& v) {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out << ",";
    out << v[i];
  }
  out << ")";
  return out.str();
}

Integer dot(const IntVector& a, const IntVector& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Integer content(const IntVector& v) {
  Integer g = 0;
  for (const auto& x : v) g = boost::multiprecision::gcd(g, abs_value(x));
  return g;
}

bool is_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

bool is_primitive(const IntVector& v) { return content(v) == 1; }

IntVector primitive(const IntVector& v) {
  Integer g = content(v);
  if (g == 0) throw DomainError("nonzero required");
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
  return out;
}

IntVector add(const IntVector& a, const IntVector& b) {
  IntVector out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

IntVector sub(const IntVector& a, const IntVector& b) {
  IntVector out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
  return out;
}

IntVector scale(const Integer& s, const IntVector& v) {
  IntVector out(v);
  for (auto& x : out) x *= s;
  return out;
}

IntVector negate(const IntVector& v) { return scale(Integer(-1), v); }

// ---------------------------------------------------------------- IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw InternalError("from_rows: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector>& cols, std::size_t rows) {
  IntMatrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw InternalError("from_columns: ragged columns");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

IntMatrix IntMatrix::from_list(std::initializer_list<std::initializer_list<long long>> rows) {
  std::vector<IntVector> vs;
  std::size_t cols = 0;
  for (auto& r : rows) {
    vs.push_back(make_vector(r));
    cols = r.size();
  }
  return from_rows(vs, cols);
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
}

IntVector IntMatrix::column(std::size_t c) const {
  IntVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

std::vector<IntVector> IntMatrix::row_vectors() const {
  std::vector<IntVector> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r));
  return out;
}

std::vector<IntVector> IntMatrix::column_vectors() const {
  std::vector<IntVector> out;
  out.reserve(cols_);
  for (std::size_t c = 0; c < cols_; ++c) out.push_back(column(c));
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const {
  if (cols_ != other.rows_) throw InternalError("matrix product: dimension mismatch");
  IntMatrix out(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Integer& a = (*this)(r, k);
      if (a == 0) continue;
      for (std::size_t c = 0; c < other.cols_; ++c) {
        const Integer& b = other(k, c);
        if (b != 0) out(r, c) += a * b;
      }
    }
  return out;
}

IntVector IntMatrix::operator*(const IntVector& v) const {
  if (cols_ != v.size()) throw InternalError("matrix-vector product: dimension mismatch");
  IntVector out(rows_, Integer(0));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (v[c] != 0) out[r] += (*this)(r, c) * v[c];
  return out;
}

IntMatrix IntMatrix::operator+(const IntMatrix& other) const {
  IntMatrix out(*this);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += other.data_[i];
  return out;
}

IntMatrix IntMatrix::operator-(const IntMatrix& other) const {
  IntMatrix out(*this);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= other.data_[i];
  return out;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
}

IntMatrix IntMatrix::select_rows(std::size_t begin, std::size_t end) const {
  IntMatrix out(end - begin, cols_);
  for (std::size_t r = begin; r < end; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(r - begin, c) = (*this)(r, c);
  return out;
}

IntMatrix IntMatrix::select_columns(std::size_t begin, std::size_t end) const {
  IntMatrix out(rows_, end - begin);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = begin; c < end; ++c) out(r, c - begin) = (*this)(r, c);
  return out;
}

void IntMatrix::append_row(const IntVector& row) {
  if (rows_ == 0 && cols_ == 0) cols_ = row.size();
  if (row.size() != cols_) throw InternalError("append_row: width mismatch");
  data_.insert(data_.end(), row.begin(), row.end());
  ++rows_;
}

IntMatrix IntMatrix::hstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_) throw InternalError("hstack: row mismatch");
  IntMatrix out(a.rows_, a.cols_ + b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r) {
    for (std::size_t c = 0; c < a.cols_; ++c) out(r, c) = a(r, c);
    for (std::size_t c = 0; c < b.cols_; ++c) out(r, a.cols_ + c) = b(r, c);
  }
  return out;
}

IntMatrix IntMatrix::vstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.cols_) throw InternalError("vstack: column mismatch");
  IntMatrix out(a.rows_ + b.rows_, a.cols_);
  std::copy(a.data_.begin(), a.data_.end(), out.data_.begin());
  std::copy(b.data_.begin(), b.data_.end(), out.data_.begin() + a.data_.size());
  return out;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_columns(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::add_row_multiple(std::size_t target, std::size_t source, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t c = 0; c < cols_; ++c) {
    const Integer& s = (*this)(source, c);
    if (s != 0) (*this)(target, c) += factor * s;
  }
}

void IntMatrix::add_column_multiple(std::size_t target, std::size_t source, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t r = 0; r < rows_; ++r) {
    const Integer& s = (*this)(r, source);
    if (s != 0) (*this)(r, target) += factor * s;
  }
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

void IntMatrix::negate_column(std::size_t c) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = -(*this)(r, c);
}

std::string IntMatrix::str() const {
  std::ostringstream out;
  out << "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) out << ",";
    out << "[";
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) out << ",";
      out << (*this)(r, c);
    }
    out << "]";
  }
  out << "]";
  return out.str();
}

// ---------------------------------------------------------------- normal forms

HermiteResult hermite_normal_form(const IntMatrix& m) {
  HermiteResult res{m, IntMatrix::identity(m.rows()), 0};
  IntMatrix& H = res.H;
  IntMatrix& U = res.U;
  const std::size_t rows = m.rows();
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < rows; ++c) {
    while (true) {
      std::size_t best = rows;
      for (std::size_t i = r; i < rows; ++i) {
        if (H(i, c) == 0) continue;
        if (best == rows || abs_value(H(i, c)) < abs_value(H(best, c))) best = i;
      }
      if (best == rows) break;
      H.swap_rows(r, best);
      U.swap_rows(r, best);
      bool clean = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (H(i, c) == 0) continue;
        Integer q = H(i, c) / H(r, c);
        H.add_row_multiple(i, r, -q);
        U.add_row_multiple(i, r, -q);
        if (H(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (H(r, c) == 0) continue;
    if (H(r, c) < 0) {
      H.negate_row(r);
      U.negate_row(r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer q = floor_div(H(i, c), H(r, c));
      H.add_row_multiple(i, r, -q);
      U.add_row_multiple(i, r, -q);
    }
    ++r;
  }
  res.rank = r;
  return res;
}

std::vector<Integer> SmithResult::diagonal() const {
  std::vector<Integer> d;
  for (std::size_t i = 0; i < rank; ++i) d.push_back(D(i, i));
  return d;
}

SmithResult smith_normal_form(const IntMatrix& m) {
  SmithResult res{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols()), 0};
  IntMatrix& D = res.D;
  IntMatrix& U = res.U;
  IntMatrix& V = res.V;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t t = 0;
  for (; t < std::min(rows, cols); ++t) {
    std::size_t bi = rows, bj = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j) {
        if (D(i, j) == 0) continue;
        if (bi == rows || abs_value(D(i, j)) < abs_value(D(bi, bj))) {
          bi = i;
          bj = j;
        }
      }
    if (bi == rows) break;
    D.swap_rows(t, bi);
    U.swap_rows(t, bi);
    D.swap_columns(t, bj);
    V.swap_columns(t, bj);
    while (true) {
      bool changed = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (D(i, t) == 0) continue;
        Integer q = D(i, t) / D(t, t);
        D.add_row_multiple(i, t, -q);
        U.add_row_multiple(i, t, -q);
        if (D(i, t) != 0) {
          D.swap_rows(i, t);
          U.swap_rows(i, t);
          changed = true;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (D(t, j) == 0) continue;
        Integer q = D(t, j) / D(t, t);
        D.add_column_multiple(j, t, -q);
        V.add_column_multiple(j, t, -q);
        if (D(t, j) != 0) {
          D.swap_columns(j, t);
          V.swap_columns(j, t);
          changed = true;
        }
      }
      if (changed) continue;
      bool divisible = true;
      for (std::size_t i = t + 1; i < rows && divisible; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (D(i, j) % D(t, t) != 0) {
            D.add_row_multiple(t, i, Integer(1));
            U.add_row_multiple(t, i, Integer(1));
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (D(t, t) < 0) {
      D.negate_row(t);
      U.negate_row(t);
    }
  }
  res.rank = t;
  return res;
}

std::size_t rank(const IntMatrix& m) {
  // Fraction-free elimination.
  IntMatrix a(m);
  std::size_t r = 0;
  Integer prev = 1;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = a.rows();
    for (std::size_t i = r; i < a.rows(); ++i)
      if (a(i, c) != 0) {
        p = i;
        break;
      }
    if (p == a.rows()) continue;
    a.swap_rows(r, p);
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      for (std::size_t j = c + 1; j < a.cols(); ++j)
        a(i, j) = (a(r, c) * a(i, j) - a(i, c) * a(r, j)) / prev;
      a(i, c) = 0;
    }
    prev = a(r, c);
    ++r;
  }
  return r;
}

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw InternalError("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a(m);
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = n;
      for (std::size_t i = k + 1; i < n; ++i)
        if (a(i, k) != 0) {
          p = i;
          break;
        }
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(k, k) * a(i, j) - a(i, k) * a(k, j)) / prev;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

IntMatrix kernel_basis(const IntMatrix& m) {
  HermiteResult h = hermite_normal_form(m.transpose());
  IntMatrix k = h.U.select_rows(h.rank, h.U.rows());
  if (k.rows() == 0) return IntMatrix(0, m.cols());
  HermiteResult kh = hermite_normal_form(k);
  return kh.H.select_rows(0, kh.rank);
}

std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b) {
  SmithResult s = smith_normal_form(a);
  IntVector ub = s.U * b;
  IntVector y(a.cols(), Integer(0));
  for (std::size_t i = 0; i < ub.size(); ++i) {
    if (i < s.rank) {
      if (ub[i] % s.D(i, i) != 0) return std::nullopt;
      y[i] = ub[i] / s.D(i, i);
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  return s.V * y;
}

std::optional<std::vector<Rational>> solve_rational(const IntMatrix& a, const IntVector& b) {
  const std::size_t rows = a.rows(), cols = a.cols();
  std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(cols + 1));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m[r][c] = Rational(a(r, c));
    m[r][cols] = Rational(b[r]);
  }
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (m[i][c] != 0) {
        p = i;
        break;
      }
    if (p == rows) continue;
    std::swap(m[r], m[p]);
    Rational inv = Rational(1) / m[r][c];
    for (std::size_t j = c; j <= cols; ++j) m[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (std::size_t j = c; j <= cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivot_cols.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (m[i][cols] != 0) return std::nullopt;
  std::vector<Rational> x(cols, Rational(0));
  for (std::size_t i = 0; i < pivot_cols.size(); ++i) x[pivot_cols[i]] = m[i][cols];
  return x;
}

IntMatrix inverse_unimodular(const IntMatrix& m) {
  HermiteResult h = hermite_normal_form(m);
  if (h.H != IntMatrix::identity(m.rows())) throw InternalError("inverse_unimodular: matrix is not unimodular");
  return h.U;
}

IntMatrix right_inverse(const IntMatrix& m) {
  const std::size_t k = m.rows();
  SmithResult s = smith_normal_form(m);
  auto d = s.diagonal();
  if (d.size() != k || std::any_of(d.begin(), d.end(), [](const Integer& x) { return x != 1; }))
    throw DomainError("right_inverse: map is not surjective");
  // m = U^-1 D V^-1 with D = [I 0], so V[:, :k] U is a right inverse.
  return s.V.select_columns(0, k) * s.U;
}

// ---------------------------------------------------------------- groups

FPAbelianGroup::FPAbelianGroup(IntMatrix relations) : relations_(std::move(relations)) {
  SmithResult s = smith_normal_form(relations_);
  factors_ = s.diagonal();
}

std::size_t FPAbelianGroup::rank() const { return relations_.rows() - factors_.size(); }

std::vector<Integer> FPAbelianGroup::torsion() const {
  std::vector<Integer> t;
  for (const auto& d : factors_)
    if (d > 1) t.push_back(d);
  return t;
}

bool FPAbelianGroup::is_trivial() const { return rank() == 0 && torsion().empty(); }

std::string FPAbelianGroup::str() const {
  std::ostringstream out;
  bool first = true;
  if (rank() > 0) {
    out << "Z";
    if (rank() > 1) out << "^" << rank();
    first = false;
  }
  for (const auto& d : torsion()) {
    if (!first) out << " + ";
    out << "Z/" << d;
    first = false;
  }
  if (first) out << "0";
  return out.str();
}

FPAbelianGroup cokernel(const IntMatrix& m) { return FPAbelianGroup(m); }

// ---------------------------------------------------------------- lattices

Lattice::Lattice(std::size_t ambient, const std::vector<IntVector>& generators) : ambient_(ambient) {
  if (generators.empty()) {
    basis_ = IntMatrix(0, ambient);
    return;
  }
  HermiteResult h = hermite_normal_form(IntMatrix::from_rows(generators, ambient));
  basis_ = h.H.select_rows(0, h.rank);
}

Lattice Lattice::full(std::size_t ambient) {
  Lattice l;
  l.ambient_ = ambient;
  l.basis_ = IntMatrix::identity(ambient);
  return l;
}

std::optional<IntVector> Lattice::coordinates(const IntVector& v) const {
  IntVector rest(v);
  IntVector c(rank(), Integer(0));
  std::size_t col = 0;
  for (std::size_t k = 0; k < rank(); ++k) {
    while (basis_(k, col) == 0) {
      if (rest[col] != 0) return std::nullopt;
      ++col;
    }
    if (rest[col] % basis_(k, col) != 0) return std::nullopt;
    c[k] = rest[col] / basis_(k, col);
    if (c[k] != 0)
      for (std::size_t j = col; j < ambient_; ++j) rest[j] -= c[k] * basis_(k, j);
    ++col;
  }
  if (!is_zero(rest)) return std::nullopt;
  return c;
}

bool Lattice::contains(const IntVector& v) const { return coordinates(v).has_value(); }

bool Lattice::contains(const Lattice& other) const {
  for (std::size_t k = 0; k < other.rank(); ++k)
    if (!contains(other.basis_.row(k))) return false;
  return true;
}

Lattice Lattice::operator+(const Lattice& other) const {
  std::vector<IntVector> gens = basis_vectors();
  for (auto& v : other.basis_vectors()) gens.push_back(v);
  return Lattice(ambient_, gens);
}

FPAbelianGroup quotient(const Lattice& big, const Lattice& small) {
  IntMatrix rel(big.rank(), small.rank());
  for (std::size_t k = 0; k < small.rank(); ++k) {
    auto c = big.coordinates(small.basis().row(k));
    if (!c) throw InternalError("quotient: sublattice not contained");
    for (std::size_t i = 0; i < big.rank(); ++i) rel(i, k) = (*c)[i];
  }
  return FPAbelianGroup(rel);
}

Lattice preimage(const Lattice& domain, const IntMatrix& map, const Lattice& target) {
  const std::size_t k = domain.rank(), l = target.rank(), t = map.rows();
  if (map.cols() != domain.ambient() || target.ambient() != t) throw InternalError("preimage: shape mismatch");
  if (k == 0 || t == 0) return domain;
  // Kernel of [map * domain^T | -target^T] over (c, y); x = c * domain.
  IntMatrix lhs = map * domain.basis().transpose();
  IntMatrix m(t, k + l);
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = 0; j < k; ++j) m(i, j) = lhs(i, j);
    for (std::size_t j = 0; j < l; ++j) m(i, k + j) = -target.basis()(j, i);
  }
  IntMatrix ker = kernel_basis(m);
  std::vector<IntVector> gens;
  for (std::size_t r = 0; r < ker.rows(); ++r) {
    IntVector x(domain.ambient(), Integer(0));
    for (std::size_t j = 0; j < k; ++j)
      if (ker(r, j) != 0)
        for (std::size_t a = 0; a < x.size(); ++a) x[a] += ker(r, j) * domain.basis()(j, a);
    gens.push_back(std::move(x));
  }
  return Lattice(domain.ambient(), gens);
}

Lattice image(const IntMatrix& map, const Lattice& l) {
  if (map.cols() != l.ambient()) throw InternalError("image: shape mismatch");
  std::vector<IntVector> gens;
  for (const auto& b : l.basis_vectors()) gens.push_back(map * b);
  return Lattice(map.rows(), gens);
}

}  // namespace logf1
