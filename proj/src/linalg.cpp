#include "conjlen/linalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <cassert>
#include <set>
#include <utility>

#include "conjlen/errors.hpp"

namespace conjlen {

template <class T>
Matrix<T>::Matrix(std::initializer_list<std::initializer_list<T>> init) {
  rows_ = init.size();
  cols_ = rows_ == 0 ? 0 : init.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : init) {
    if (r.size() != cols_) throw DomainError("ragged matrix initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

template <class T>
Matrix<T> Matrix<T>::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

template <class T>
std::vector<T> Matrix<T>::column(std::size_t j) const {
  std::vector<T> c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

template <class T>
Matrix<T> Matrix<T>::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

template <class T>
bool Matrix<T>::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const T& x) { return sgn(x) == 0; });
}

template class Matrix<Int>;
template class Matrix<Rat>;

namespace {

template <class T>
Matrix<T> multiply(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw DomainError("matrix product dimension mismatch");
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

template <class T>
std::vector<T> apply(const Matrix<T>& a, const std::vector<T>& x) {
  if (a.cols() != x.size()) throw DomainError("matrix-vector dimension mismatch");
  std::vector<T> y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

template <class T, class Op>
std::vector<T> zip(const std::vector<T>& a, const std::vector<T>& b, Op op) {
  if (a.size() != b.size()) throw DomainError("vector dimension mismatch");
  std::vector<T> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = op(a[i], b[i]);
  return c;
}

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row[dst] -= q * row[src]
void sub_row(IntMatrix& m, std::size_t dst, std::size_t src, const Int& q) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) -= q * m(src, j);
}

void sub_col(IntMatrix& m, std::size_t dst, std::size_t src, const Int& q) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) -= q * m(i, src);
}

Int mod_floor(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

}  // namespace

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) { return multiply(a, b); }
RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) { return multiply(a, b); }
IntVector operator*(const IntMatrix& a, const IntVector& x) { return apply(a, x); }
RatVector operator*(const RatMatrix& a, const RatVector& x) { return apply(a, x); }

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DomainError("matrix sum dimension mismatch");
  IntMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DomainError("matrix difference dimension mismatch");
  IntMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

IntVector operator+(const IntVector& a, const IntVector& b) {
  return zip(a, b, [](const Int& x, const Int& y) { return Int(x + y); });
}
IntVector operator-(const IntVector& a, const IntVector& b) {
  return zip(a, b, [](const Int& x, const Int& y) { return Int(x - y); });
}
IntVector operator-(const IntVector& a) {
  IntVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = -a[i];
  return c;
}
RatVector operator+(const RatVector& a, const RatVector& b) {
  return zip(a, b, [](const Rat& x, const Rat& y) { return Rat(x + y); });
}
RatVector operator-(const RatVector& a, const RatVector& b) {
  return zip(a, b, [](const Rat& x, const Rat& y) { return Rat(x - y); });
}

RatMatrix to_rat(const IntMatrix& a) {
  RatMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = Rat(a(i, j));
  return r;
}

RatVector to_rat(const IntVector& x) {
  RatVector r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = Rat(x[i]);
  return r;
}

IntMatrix to_int(const RatMatrix& a) {
  IntMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).get_den() != 1) throw DomainError("matrix entry is not integral");
      r(i, j) = a(i, j).get_num();
    }
  return r;
}

std::optional<IntVector> to_int(const RatVector& x) {
  IntVector r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].get_den() != 1) return std::nullopt;
    r[i] = x[i].get_num();
  }
  return r;
}

IntVector zero_vector(std::size_t n) { return IntVector(n); }

bool is_zero(const IntVector& x) {
  return std::all_of(x.begin(), x.end(), [](const Int& v) { return sgn(v) == 0; });
}

bool is_zero(const RatVector& x) {
  return std::all_of(x.begin(), x.end(), [](const Rat& v) { return sgn(v) == 0; });
}

Int l1_norm(const IntVector& x) {
  Int n = 0;
  for (const auto& v : x) n += abs(v);
  return n;
}

Int lcm_of_denominators(const RatVector& x) {
  Int l = 1;
  for (const auto& v : x) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  return l;
}

IntVector make_vector(std::initializer_list<long> values) {
  IntVector v;
  v.reserve(values.size());
  for (long x : values) v.emplace_back(x);
  return v;
}

// Fraction-free Bareiss elimination.
Int det(const IntMatrix& a) {
  if (!a.square()) throw DomainError("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      swap_rows(m, k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

RatMatrix inverse_rat(const IntMatrix& a) {
  if (!a.square()) throw DomainError("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  RatMatrix m = to_rat(a);
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) throw SingularMatrix();
    if (p != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(p, j), m(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    const Rat pivot = m(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      m(c, j) /= pivot;
      inv(c, j) /= pivot;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m(i, c) == 0) continue;
      const Rat f = m(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= f * m(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

IntMatrix inverse_unimodular(const IntMatrix& a) {
  Int d = det(a);
  if (abs(d) != 1) throw DomainError("matrix is not unimodular");
  return to_int(inverse_rat(a));
}

IntMatrix int_pow(const IntMatrix& a, std::uint64_t e) {
  if (!a.square()) throw DomainError("power of a non-square matrix");
  IntMatrix result = IntMatrix::identity(a.rows());
  IntMatrix base = a;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

RatMatrix mat_pow(const IntMatrix& a, std::int64_t e) {
  if (!a.square()) throw DomainError("power of a non-square matrix");
  if (e >= 0) return to_rat(int_pow(a, static_cast<std::uint64_t>(e)));
  RatMatrix base = inverse_rat(a);
  RatMatrix result = RatMatrix::identity(a.rows());
  auto k = static_cast<std::uint64_t>(-(e + 1)) + 1;
  while (k > 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return result;
}

SNFDecomposition snf(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  IntMatrix d = a;
  IntMatrix u = IntMatrix::identity(m);
  IntMatrix v = IntMatrix::identity(n);
  std::size_t rank = 0;
  const std::size_t steps = std::min(m, n);

  for (std::size_t t = 0; t < steps; ++t) {
    bool found_any = false;
    for (;;) {
      // Minimal nonzero |entry| in the trailing block becomes the pivot.
      std::size_t pi = 0, pj = 0;
      bool found = false;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (d(i, j) == 0) continue;
          if (!found || mpz_cmpabs(d(i, j).get_mpz_t(), d(pi, pj).get_mpz_t()) < 0) {
            pi = i;
            pj = j;
            found = true;
          }
        }
      if (!found) break;
      found_any = true;
      swap_rows(d, t, pi);
      swap_rows(u, t, pi);
      swap_cols(d, t, pj);
      swap_cols(v, t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        Int q = d(i, t) / d(t, t);
        sub_row(d, i, t, q);
        sub_row(u, i, t, q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        Int q = d(t, j) / d(t, t);
        sub_col(d, j, t, q);
        sub_col(v, j, t, q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
            sub_row(d, t, i, Int(-1));
            sub_row(u, t, i, Int(-1));
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (!found_any) break;
    if (d(t, t) < 0) {
      for (std::size_t j = 0; j < n; ++j) d(t, j) = -d(t, j);
      for (std::size_t j = 0; j < m; ++j) u(t, j) = -u(t, j);
    }
    ++rank;
  }
  return {std::move(u), std::move(d), std::move(v), rank};
}

std::optional<IntegerSolution> solve_integer(const IntMatrix& a, const IntVector& b) {
  if (a.rows() != b.size()) throw DomainError("solve_integer: dimension mismatch");
  const SNFDecomposition s = snf(a);
  const IntVector c = s.u_left * b;
  IntVector z(a.cols());
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < s.rank) {
      const Int& di = s.diag(i, i);
      if (!mpz_divisible_p(c[i].get_mpz_t(), di.get_mpz_t())) return std::nullopt;
      mpz_divexact(z[i].get_mpz_t(), c[i].get_mpz_t(), di.get_mpz_t());
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  IntegerSolution sol;
  sol.particular = s.v_right * z;
  for (std::size_t j = s.rank; j < a.cols(); ++j) sol.kernel_basis.push_back(s.v_right.column(j));
  return sol;
}

IntMatrix hermite_rows(const IntMatrix& generators) {
  IntMatrix h = generators;
  const std::size_t m = h.rows();
  const std::size_t n = h.cols();
  std::size_t r = 0;
  std::vector<std::pair<std::size_t, std::size_t>> pivots;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    for (;;) {
      std::size_t p = m;
      for (std::size_t i = r; i < m; ++i)
        if (h(i, c) != 0 && (p == m || mpz_cmpabs(h(i, c).get_mpz_t(), h(p, c).get_mpz_t()) < 0)) p = i;
      if (p == m) break;
      swap_rows(h, r, p);
      bool clean = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (h(i, c) == 0) continue;
        Int q = h(i, c) / h(r, c);
        sub_row(h, i, r, q);
        if (h(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0)
      for (std::size_t j = 0; j < n; ++j) h(r, j) = -h(r, j);
    for (std::size_t i = 0; i < r; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), h(r, c).get_mpz_t());
      if (q != 0) sub_row(h, i, r, q);
    }
    pivots.emplace_back(r, c);
    ++r;
  }
  IntMatrix out(r, n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = h(i, j);
  return out;
}

Int FinQuotient::order() const {
  Int o = 1;
  for (const auto& f : invariant_factors) o *= f;
  return o;
}

FinQuotient quotient(const IntMatrix& lattice_basis) {
  if (!lattice_basis.square()) throw DomainError("lattice basis must be square");
  const std::size_t d = lattice_basis.rows();
  SNFDecomposition s = snf(lattice_basis);
  if (s.rank < d) throw SingularMatrix("lattice basis is rank deficient");
  FinQuotient q;
  q.basis = lattice_basis;
  q.invariant_factors.resize(d);
  for (std::size_t i = 0; i < d; ++i) q.invariant_factors[i] = s.diag(i, i);
  q.from_canonical = inverse_unimodular(s.u_left);
  q.to_canonical = std::move(s.u_left);
  return q;
}

Residue project(const FinQuotient& q, const IntVector& x) {
  Residue r = q.to_canonical * x;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = mod_floor(r[i], q.invariant_factors[i]);
  return r;
}

IntVector lift(const FinQuotient& q, const Residue& r) { return q.from_canonical * r; }

Int orbit_order(const IntMatrix& t, const FinQuotient& q, const Residue& x) {
  const std::size_t d = q.dim();
  if (t.rows() != d || t.cols() != d) throw DomainError("orbit_order: dimension mismatch");
  for (std::size_t j = 0; j < d; ++j)
    if (!is_zero(project(q, t * q.basis.column(j)))) throw LatticeNotInvariant();

  // t is a bijection on Z^d/L iff t Z^d + L = Z^d.
  IntMatrix joined(d, 2 * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      joined(i, j) = t(i, j);
      joined(i, d + j) = q.basis(i, j);
    }
  const SNFDecomposition s = snf(joined);
  for (std::size_t i = 0; i < d; ++i)
    if (s.diag(i, i) != 1) throw NonInvertibleAction();

  const Int bound = q.order();
  Residue y = x;
  Int m = 0;
  do {
    y = project(q, t * lift(q, y));
    ++m;
    assert(m <= bound);
  } while (y != x);
  return m;
}

namespace {

bool sphere_rec(std::vector<long>& x, std::size_t i, long r,
                const std::function<bool(const std::vector<long>&)>& f) {
  if (i + 1 == x.size()) {
    if (r == 0) {
      x[i] = 0;
      return f(x);
    }
    x[i] = -r;
    if (!f(x)) return false;
    x[i] = r;
    return f(x);
  }
  for (long v = -r; v <= r; ++v) {
    x[i] = v;
    if (!sphere_rec(x, i + 1, r - std::labs(v), f)) return false;
  }
  return true;
}

}  // namespace

bool for_each_l1_sphere(std::size_t n, long r, const std::function<bool(const std::vector<long>&)>& f) {
  if (r < 0) return true;
  std::vector<long> x(n, 0);
  if (n == 0) return r == 0 ? f(x) : true;
  return sphere_rec(x, 0, r, f);
}

std::uint64_t l1_sphere_size(std::size_t n, long r, std::uint64_t limit) {
  // Points with exactly j nonzero coordinates: C(n,j) 2^j C(r-1,j-1).
  if (r < 0) return 0;
  if (r == 0) return 1;
  Int total = 0;
  for (std::size_t j = 1; j <= n && static_cast<long>(j) <= r; ++j) {
    Int a, b;
    mpz_bin_uiui(a.get_mpz_t(), n, j);
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(r - 1), j - 1);
    total += a * b * (Int(1) << static_cast<unsigned>(j));
  }
  if (total > limit) return limit;
  return total.get_ui();
}

std::ostream& operator<<(std::ostream& os, const IntVector& x) {
  os << '(';
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
  return os << ')';
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& a) {
  os << '[';
  for (std::size_t i = 0; i < a.rows(); ++i) {
    os << (i ? "," : "") << '[';
    for (std::size_t j = 0; j < a.cols(); ++j) os << (j ? "," : "") << a(i, j);
    os << ']';
  }
  return os << ']';
}

}  // namespace conjlen
