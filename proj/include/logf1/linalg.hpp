#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace logf1 {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using IntVector = std::vector<Integer>;

IntVector make_vector(std::initializer_list<long long> entries);
std::string to_string(const IntVector& v);

Integer dot(const IntVector& a, const IntVector& b);
Integer content(const IntVector& v);  // gcd of entries, 0 for the zero vector
bool is_zero(const IntVector& v);
bool is_primitive(const IntVector& v);
// v / gcd(v). Throws DomainError("nonzero required") on the zero vector.
IntVector primitive(const IntVector& v);
IntVector add(const IntVector& a, const IntVector& b);
IntVector sub(const IntVector& a, const IntVector& b);
IntVector scale(const Integer& s, const IntVector& v);
IntVector negate(const IntVector& v);

// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);
  static IntMatrix from_columns(const std::vector<IntVector>& cols, std::size_t rows);
  static IntMatrix from_list(std::initializer_list<std::initializer_list<long long>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector row(std::size_t r) const;
  IntVector column(std::size_t c) const;
  std::vector<IntVector> row_vectors() const;
  std::vector<IntVector> column_vectors() const;

  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix& other) const;
  IntVector operator*(const IntVector& v) const;
  IntMatrix operator+(const IntMatrix& other) const;
  IntMatrix operator-(const IntMatrix& other) const;
  bool operator==(const IntMatrix& other) const = default;

  bool is_zero() const;
  IntMatrix select_rows(std::size_t begin, std::size_t end) const;
  IntMatrix select_columns(std::size_t begin, std::size_t end) const;
  void append_row(const IntVector& row);
  static IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
  static IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);

  void swap_rows(std::size_t a, std::size_t b);
  void swap_columns(std::size_t a, std::size_t b);
  // row[target] += factor * row[source]
  void add_row_multiple(std::size_t target, std::size_t source, const Integer& factor);
  void add_column_multiple(std::size_t target, std::size_t source, const Integer& factor);
  void negate_row(std::size_t r);
  void negate_column(std::size_t c);

  std::string str() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

struct HermiteResult {
  IntMatrix H;  // row-style Hermite normal form
  IntMatrix U;  // unimodular, H = U * m
  std::size_t rank = 0;
};

// Row-style HNF: nonzero rows first, strictly increasing pivot columns,
// positive pivots, entries above a pivot reduced into [0, pivot).
HermiteResult hermite_normal_form(const IntMatrix& m);

struct SmithResult {
  IntMatrix D;  // D = U * m * V
  IntMatrix U;
  IntMatrix V;
  std::size_t rank = 0;
  std::vector<Integer> diagonal() const;  // the first `rank` diagonal entries
};

SmithResult smith_normal_form(const IntMatrix& m);

std::size_t rank(const IntMatrix& m);
Integer determinant(const IntMatrix& m);

// Rows form a basis of the saturated lattice { x : m x = 0 }, in Hermite form.
IntMatrix kernel_basis(const IntMatrix& m);

// Some integer x with a x = b, if one exists.
std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b);

// Some rational x with a x = b, if one exists (free variables set to zero).
std::optional<std::vector<Rational>> solve_rational(const IntMatrix& a, const IntVector& b);

IntMatrix inverse_unimodular(const IntMatrix& m);
// s with m * s = identity, for m surjective onto Z^rows. Throws DomainError otherwise.
IntMatrix right_inverse(const IntMatrix& m);

// Finitely presented abelian group Z^rows / (column span of the relation matrix).
class FPAbelianGroup {
 public:
  FPAbelianGroup() = default;
  explicit FPAbelianGroup(IntMatrix relations);

  std::size_t generator_count() const { return relations_.rows(); }
  const IntMatrix& relations() const { return relations_; }
  // Nonzero Smith diagonal, each entry dividing the next.
  const std::vector<Integer>& invariant_factors() const { return factors_; }
  std::size_t rank() const;
  std::vector<Integer> torsion() const;  // invariant factors greater than one
  bool is_trivial() const;
  std::string str() const;  // e.g. "Z^2 + Z/6", "0"

 private:
  IntMatrix relations_;
  std::vector<Integer> factors_;
};

FPAbelianGroup cokernel(const IntMatrix& m);

// A sublattice of Z^n with its basis kept in Hermite form.
class Lattice {
 public:
  Lattice() = default;
  Lattice(std::size_t ambient, const std::vector<IntVector>& generators);
  static Lattice full(std::size_t ambient);

  std::size_t ambient() const { return ambient_; }
  std::size_t rank() const { return basis_.rows(); }
  const IntMatrix& basis() const { return basis_; }
  std::vector<IntVector> basis_vectors() const { return basis_.row_vectors(); }

  bool contains(const IntVector& v) const;
  bool contains(const Lattice& other) const;
  // c with c * basis = v.
  std::optional<IntVector> coordinates(const IntVector& v) const;
  Lattice operator+(const Lattice& other) const;
  bool operator==(const Lattice& other) const { return ambient_ == other.ambient_ && basis_ == other.basis_; }

 private:
  std::size_t ambient_ = 0;
  IntMatrix basis_;
};

// big / small as an abelian group; requires small contained in big.
FPAbelianGroup quotient(const Lattice& big, const Lattice& small);

// { x in domain : map x in target }.
Lattice preimage(const Lattice& domain, const IntMatrix& map, const Lattice& target);
// The image of a lattice under a matrix.
Lattice image(const IntMatrix& map, const Lattice& l);

}  // namespace logf1
