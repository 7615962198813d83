#pragma once

// Exact integer and rational linear algebra over GMP.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

namespace conjlen {

using Int = mpz_class;
using Rat = mpq_class;
using IntVector = std::vector<Int>;
using RatVector = std::vector<Rat>;

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init);

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::vector<T> column(std::size_t j) const;
  std::span<const T> entries() const noexcept { return data_; }

  Matrix transpose() const;
  bool is_zero() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
IntVector operator*(const IntMatrix& a, const IntVector& x);
RatVector operator*(const RatMatrix& a, const RatVector& x);

IntVector operator+(const IntVector& a, const IntVector& b);
IntVector operator-(const IntVector& a, const IntVector& b);
IntVector operator-(const IntVector& a);
RatVector operator+(const RatVector& a, const RatVector& b);
RatVector operator-(const RatVector& a, const RatVector& b);

RatMatrix to_rat(const IntMatrix& a);
RatVector to_rat(const IntVector& x);
// Entries must be integral; throws DomainError otherwise.
IntMatrix to_int(const RatMatrix& a);
std::optional<IntVector> to_int(const RatVector& x);

IntVector zero_vector(std::size_t n);
bool is_zero(const IntVector& x);
bool is_zero(const RatVector& x);
Int l1_norm(const IntVector& x);
Int lcm_of_denominators(const RatVector& x);
IntVector make_vector(std::initializer_list<long> values);

Int det(const IntMatrix& a);
RatMatrix inverse_rat(const IntMatrix& a);
// Exact inverse of a unimodular matrix.
IntMatrix inverse_unimodular(const IntMatrix& a);
IntMatrix int_pow(const IntMatrix& a, std::uint64_t e);
// Negative exponents go through one exact inverse, then binary powering.
RatMatrix mat_pow(const IntMatrix& a, std::int64_t e);

// u_left * A * v_right == diag, u_left and v_right unimodular,
// diag(0,0) | diag(1,1) | ... with nonnegative entries and zeros last.
struct SNFDecomposition {
  IntMatrix u_left;
  IntMatrix diag;
  IntMatrix v_right;
  std::size_t rank = 0;

  Int diagonal(std::size_t i) const { return diag(i, i); }
};

SNFDecomposition snf(const IntMatrix& a);

struct IntegerSolution {
  IntVector particular;
  std::vector<IntVector> kernel_basis;
};

// Solves a*x = b over Z.  Absent when no integer solution exists.
std::optional<IntegerSolution> solve_integer(const IntMatrix& a, const IntVector& b);

// Row-style Hermite normal form of the lattice spanned by the rows of
// `generators`: upper echelon, positive pivots, entries above each pivot
// reduced into [0, pivot).  Zero rows are dropped.
IntMatrix hermite_rows(const IntMatrix& generators);

// Z^d / L for a full-rank lattice L spanned by the columns of `basis`.
// Residues live in invariant-factor coordinates, each entry reduced into
// [0, invariant_factors[i]).
struct FinQuotient {
  IntMatrix basis;
  IntVector invariant_factors;
  IntMatrix to_canonical;
  IntMatrix from_canonical;

  std::size_t dim() const noexcept { return invariant_factors.size(); }
  Int order() const;
};

using Residue = IntVector;

FinQuotient quotient(const IntMatrix& lattice_basis);
Residue project(const FinQuotient& q, const IntVector& x);
// Some integer vector whose residue is `r`.
IntVector lift(const FinQuotient& q, const Residue& r);

// Smallest m >= 1 with t^m x = x in Z^d/L.
Int orbit_order(const IntMatrix& t, const FinQuotient& q, const Residue& x);

// Calls f on every x in Z^n with |x|_1 == r, in lexicographic order.
// Stops early and returns false as soon as f returns false.
bool for_each_l1_sphere(std::size_t n, long r, const std::function<bool(const std::vector<long>&)>& f);
// Number of points of Z^n with |x|_1 == r, saturating at `limit`.
std::uint64_t l1_sphere_size(std::size_t n, long r, std::uint64_t limit);

std::ostream& operator<<(std::ostream& os, const IntVector& x);
std::ostream& operator<<(std::ostream& os, const IntMatrix& a);

}  // namespace conjlen
