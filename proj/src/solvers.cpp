#include "conjlen/solvers.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <set>
#include <unordered_set>

#include "conjlen/errors.hpp"

namespace conjlen {

namespace {

bool all_zero(const std::vector<std::int64_t>& y) {
  return std::all_of(y.begin(), y.end(), [](std::int64_t v) { return v == 0; });
}

Int mod_floor(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

std::vector<std::int64_t> to_i64(const std::vector<long>& v) { return {v.begin(), v.end()}; }

Element verified(const GroupConfig& cfg, Element g, const Element& u, const Element& v) {
  if (conj(cfg, g, u) != v) throw Error("internal error: conjugator failed verification");
  return g;
}

// Common eigenbasis of the commuting phi_i (from a generic combination) and
// log|eigenvalue| table; absent when the combination does not diagonalize
// every generator.
struct EigenLogs {
  Eigen::MatrixXcd p_inv;
  Eigen::MatrixXd log_lambda;  // d x k
};

std::optional<EigenLogs> eigen_logs(const GroupConfig& cfg) {
  const std::size_t d = cfg.d();
  const auto& phi = cfg.phi_gens();
  const std::size_t k = phi.size();
  std::vector<Eigen::MatrixXd> mats;
  Eigen::MatrixXd comb = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t i = 0; i < k; ++i) {
    Eigen::MatrixXd m(d, d);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) m(r, c) = phi[i](r, c).get_d();
    const double ci = 1.0 + 0.7548776662466927 * static_cast<double>(i) + 0.5698402909980532 * static_cast<double>(i * i);
    comb += ci * m;
    mats.push_back(std::move(m));
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comb.cast<std::complex<double>>());
  if (es.info() != Eigen::Success) return std::nullopt;
  const Eigen::MatrixXcd p = es.eigenvectors();
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(p);
  if (!lu.isInvertible() || lu.rcond() < 1e-10) return std::nullopt;
  EigenLogs out;
  out.p_inv = lu.inverse();
  out.log_lambda.resize(d, k);
  for (std::size_t i = 0; i < k; ++i) {
    const Eigen::MatrixXcd dm = out.p_inv * mats[i].cast<std::complex<double>>() * p;
    const double scale = std::max(1.0, dm.cwiseAbs().maxCoeff());
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c)
        if (r != c && std::abs(dm(r, c)) > 1e-7 * scale) return std::nullopt;
    for (std::size_t r = 0; r < d; ++r) out.log_lambda(r, i) = std::log(std::abs(dm(r, r)));
  }
  return out;
}

// Float estimate of y from log|u_j| - log|w_j| = sum_i y_i log|lambda_{j,i}|
// on the best-conditioned k x k minor.
std::optional<Eigen::VectorXd> log_cramer_guess(const EigenLogs& el, const IntVector& u, const IntVector& w) {
  const auto d = static_cast<Eigen::Index>(u.size());
  const Eigen::Index k = el.log_lambda.cols();
  Eigen::VectorXcd uc(d), wc(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    uc(i) = u[i].get_d();
    wc(i) = w[i].get_d();
  }
  const Eigen::VectorXcd uh = el.p_inv * uc;
  const Eigen::VectorXcd wh = el.p_inv * wc;
  const double un = uh.cwiseAbs().maxCoeff();
  const double wn = wh.cwiseAbs().maxCoeff();
  std::vector<Eigen::Index> rows;
  for (Eigen::Index j = 0; j < d; ++j)
    if (std::abs(uh(j)) > 1e-9 * un && std::abs(wh(j)) > 1e-9 * wn) rows.push_back(j);
  if (static_cast<Eigen::Index>(rows.size()) < k) return std::nullopt;

  // Exhaustive minor choice; d is small.
  std::vector<int> pick(rows.size(), 0);
  std::fill(pick.begin(), pick.begin() + k, 1);
  std::sort(pick.begin(), pick.end());
  double best = 0.0;
  Eigen::VectorXd best_y;
  do {
    Eigen::MatrixXd l(k, k);
    Eigen::VectorXd r(k);
    Eigen::Index at = 0;
    for (std::size_t t = 0; t < rows.size(); ++t) {
      if (!pick[t]) continue;
      const Eigen::Index j = rows[t];
      l.row(at) = el.log_lambda.row(j);
      r(at) = std::log(std::abs(uh(j))) - std::log(std::abs(wh(j)));
      ++at;
    }
    const double scale = std::max(1e-300, l.cwiseAbs().maxCoeff());
    const double quality = std::abs(l.determinant()) / std::pow(scale, static_cast<double>(k));
    if (quality > 1e-9 && quality > best) {
      best = quality;
      best_y = l.fullPivLu().solve(r);
    }
  } while (std::next_permutation(pick.begin(), pick.end()));
  if (best == 0.0) return std::nullopt;
  return best_y;
}

// Centered representatives of prod_i Z/m_i, sorted by (l1, lex).
std::vector<std::vector<std::int64_t>> centered_residues(const std::vector<Int>& m, std::size_t cap) {
  Int count = 1;
  for (const auto& mi : m) count *= mi;
  if (count > cap) throw CapExceeded(cap);
  std::vector<std::vector<std::int64_t>> out{{}};
  for (const auto& mi : m) {
    const std::int64_t n = mi.get_si();
    const std::int64_t lo = -((n - 1) / 2);
    std::vector<std::vector<std::int64_t>> next;
    for (const auto& base : out)
      for (std::int64_t v = lo; v < lo + n; ++v) {
        auto b = base;
        b.push_back(v);
        next.push_back(std::move(b));
      }
    out = std::move(next);
  }
  auto l1 = [](const std::vector<std::int64_t>& b) {
    std::int64_t s = 0;
    for (auto v : b) s += v < 0 ? -v : v;
    return s;
  };
  std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
    const auto la = l1(a), lb = l1(b);
    return la != lb ? la < lb : a < b;
  });
  return out;
}

RatVector rat_apply(const RatMatrix& m, const RatVector& x) { return m * x; }

RatVector gm_vector(const GroupConfig& cfg, const GmElement& g) {
  return rat_apply(mat_pow(cfg.matrix_m(), -g.p), to_rat(g.w));
}

// nu(a) = min{q : M^q a in Z^d} for a != 0 and expanding M.
std::int64_t valuation(const GroupConfig& cfg, const GmElement& g) {
  if (g.p > 0) return g.p;
  IntVector w = g.w, z;
  std::int64_t j = 0;
  while (cfg.m_divide(w, z)) {
    w.swap(z);
    ++j;
    if (j > 1'000'000) throw Error("valuation did not terminate");
  }
  return -j;
}

}  // namespace

std::optional<TwistedWitness> twisted_conj_abelian(const IntVector& u, const IntVector& v, const IntMatrix& phi) {
  const std::size_t d = u.size();
  if (v.size() != d || phi.rows() != d || phi.cols() != d) throw DomainError("twisted_conj_abelian: dimension mismatch");
  auto sol = solve_integer(IntMatrix::identity(d) - phi, u - v);
  if (!sol) return std::nullopt;
  return TwistedWitness{std::move(sol->particular), std::move(sol->kernel_basis)};
}

IntVector minimal_twisted_witness(const TwistedWitness& tw, std::size_t cap) {
  IntVector best = tw.gamma;
  const auto& basis = tw.kernel_basis;
  if (basis.empty()) return best;
  const std::size_t r = basis.size();
  const std::size_t d = best.size();

  // Greedy descent first, so the box below is small.
  for (bool improved = true; improved;) {
    improved = false;
    for (const auto& b : basis)
      for (int sgn_ : {1, -1}) {
        for (;;) {
          IntVector cand = sgn_ > 0 ? best + b : best - b;
          if (l1_norm(cand) < l1_norm(best)) {
            best = std::move(cand);
            improved = true;
          } else {
            break;
          }
        }
      }
  }

  // Any better point best + K c has |K c|_1 <= 2 |best|_1, so
  // |c|_inf <= max|K^+| * 2 |best|_1 with K^+ = (K^T K)^-1 K^T.
  IntMatrix k(d, r);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < d; ++i) k(i, j) = basis[j][i];
  const IntMatrix ktk = k.transpose() * k;
  const RatMatrix pinv = inverse_rat(ktk) * to_rat(k.transpose());
  Rat maxabs = 0;
  for (const auto& e : pinv.entries()) maxabs = std::max(maxabs, Rat(abs(e)));
  Rat bound_q = maxabs * 2 * l1_norm(best);
  Int bound = floor_div(bound_q.get_num(), bound_q.get_den());
  Int count = 1;
  for (std::size_t j = 0; j < r; ++j) count *= 2 * bound + 1;
  if (count > cap) throw CapExceeded(cap);

  const long b = bound.get_si();
  const IntVector start = best;
  Int best_norm = l1_norm(best);
  std::vector<long> c(r, -b);
  for (;;) {
    IntVector cand = start;
    for (std::size_t j = 0; j < r; ++j)
      if (c[j] != 0)
        for (std::size_t i = 0; i < d; ++i) cand[i] += Int(c[j]) * basis[j][i];
    const Int n = l1_norm(cand);
    if (n < best_norm || (n == best_norm && cand < best)) {
      best_norm = n;
      best = std::move(cand);
    }
    std::size_t j = 0;
    while (j < r && c[j] == b) c[j++] = -b;
    if (j == r) break;
    ++c[j];
  }
  return best;
}

std::optional<std::vector<std::int64_t>> restricted_conj_semidirect(const GroupConfig& cfg, const IntVector& u,
                                                                    const IntVector& w, const SolverCaps& caps) {
  if (cfg.family() != Family::semidirect) throw DomainError("restricted_conj_semidirect needs a semidirect config");
  const std::size_t k = cfg.k();
  const std::vector<std::int64_t> zero(k, 0);
  if (u == w) return zero;
  if (is_zero(u) || is_zero(w) || k == 0) return std::nullopt;

  auto check = [&](const std::vector<std::int64_t>& y) { return cfg.phi_apply(y, w) == u; };

  std::optional<Eigen::VectorXd> guess;
  if (auto el = eigen_logs(cfg)) guess = log_cramer_guess(*el, u, w);

  long window = -1;
  if (guess) {
    std::vector<std::int64_t> base(k);
    double norm = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      if (!std::isfinite((*guess)(i)) || std::abs((*guess)(i)) > 1e15) throw SearchExhausted();
      base[i] = std::llround((*guess)(i));
      norm += std::abs((*guess)(i));
    }
    for (long r = 0; r <= static_cast<long>(k); ++r) {
      std::optional<std::vector<std::int64_t>> hit;
      for_each_l1_sphere(k, r, [&](const std::vector<long>& delta) {
        bool unit = std::all_of(delta.begin(), delta.end(), [](long v) { return v >= -1 && v <= 1; });
        if (!unit) return true;
        std::vector<std::int64_t> y = base;
        for (std::size_t i = 0; i < k; ++i) y[i] += delta[i];
        if (check(y)) {
          hit = y;
          return false;
        }
        return true;
      });
      if (hit) return hit;
    }
    window = static_cast<long>(std::ceil(2.0 * norm)) + 2;
  }

  const bool certified = window >= 0;
  const long limit = certified ? window : std::numeric_limits<long>::max();
  std::uint64_t visited = 0;
  for (long r = 0; r <= limit; ++r) {
    visited += l1_sphere_size(k, r, caps.enumeration_cap);
    if (visited >= caps.enumeration_cap) break;
    std::optional<std::vector<std::int64_t>> hit;
    for_each_l1_sphere(k, r, [&](const std::vector<long>& y) {
      auto yy = to_i64(y);
      if (check(yy)) {
        hit = std::move(yy);
        return false;
      }
      return true;
    });
    if (hit) return hit;
    if (r == limit) return std::nullopt;
  }
  throw SearchExhausted();
}

StabilizerLattice stabilizer_lattice(const GroupConfig& cfg, const IntVector& u, const std::vector<std::int64_t>& y,
                                     std::size_t cap) {
  if (cfg.family() != Family::semidirect) throw DomainError("stabilizer_lattice needs a semidirect config");
  const std::size_t d = cfg.d();
  const std::size_t k = cfg.k();
  if (u.size() != d || y.size() != k) throw DomainError("stabilizer_lattice: dimension mismatch");
  const IntMatrix l = IntMatrix::identity(d) - cfg.phi_matrix(y);
  if (det(l) == 0) throw SingularMatrix("Id - phi(y) is singular");
  const FinQuotient q = quotient(l);
  const Residue ub = project(q, u);

  std::vector<Int> m(k);
  Int box = 1;
  for (std::size_t i = 0; i < k; ++i) {
    m[i] = orbit_order(cfg.phi_gens()[i], q, ub);
    box *= m[i];
  }
  if (box > cap) throw CapExceeded(cap);

  std::vector<std::vector<Int>> gens;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Int> g(k, 0);
    g[i] = m[i];
    gens.push_back(std::move(g));
  }
  // Odometer over prod [0, m_i).  acted[i] is phi_0^b_0 ... phi_{i-1}^b_{i-1} u
  // with the deeper digits at zero.
  std::vector<long> b(k, 0);
  std::vector<Residue> acted(k + 1, ub);
  for (;;) {
    if (acted[k] == ub && std::any_of(b.begin(), b.end(), [](long v) { return v != 0; })) {
      std::vector<Int> g(b.begin(), b.end());
      gens.push_back(std::move(g));
    }
    std::size_t i = k;
    while (i > 0 && b[i - 1] + 1 == m[i - 1].get_si()) {
      b[i - 1] = 0;
      --i;
    }
    if (i == 0) break;
    ++b[i - 1];
    acted[i] = project(q, cfg.phi_gens()[i - 1] * lift(q, acted[i]));
    for (std::size_t j = i + 1; j <= k; ++j) acted[j] = acted[i];
  }

  IntMatrix gm(gens.size(), k);
  for (std::size_t r = 0; r < gens.size(); ++r)
    for (std::size_t c = 0; c < k; ++c) gm(r, c) = gens[r][c];
  StabilizerLattice out;
  out.basis = hermite_rows(gm);
  out.index = 1;
  for (std::size_t i = 0; i < out.basis.rows(); ++i) out.index *= out.basis(i, i);
  return out;
}

Int covering_radius(const StabilizerLattice& lattice, std::size_t cap) {
  const std::size_t k = lattice.basis.cols();
  if (k == 0 || lattice.index == 1) return 0;
  if (lattice.index > cap) throw CapExceeded(cap);
  const IntMatrix& h = lattice.basis;
  auto canonical = [&](const std::vector<long>& x) {
    IntVector v(x.begin(), x.end());
    for (std::size_t i = 0; i < k; ++i) {
      const Int qd = floor_div(v[i], h(i, i));
      if (qd != 0)
        for (std::size_t j = i; j < k; ++j) v[j] -= qd * h(i, j);
    }
    return v;
  };
  std::set<IntVector> seen;
  const std::size_t classes = lattice.index.get_ui();
  std::uint64_t visited = 0;
  long radius = 0;
  for (long r = 0; seen.size() < classes; ++r) {
    visited += l1_sphere_size(k, r, cap);
    if (visited >= cap) throw CapExceeded(cap);
    for_each_l1_sphere(k, r, [&](const std::vector<long>& x) {
      if (seen.insert(canonical(x)).second) radius = r;
      return true;
    });
  }
  return radius;
}

Rat rho(const GroupConfig& cfg, const IntVector& u, const std::vector<std::int64_t>& y, std::size_t cap) {
  return Rat(covering_radius(stabilizer_lattice(cfg, u, y, cap), cap));
}

std::string_view case_name(CaseTaken c) {
  switch (c) {
    case CaseTaken::restricted: return "restricted";
    case CaseTaken::twisted_same_quotient: return "twisted-same-quotient";
    case CaseTaken::quotient_shift: return "quotient-shift";
  }
  return "";
}

ConjReport conj_semidirect(const GroupConfig& cfg, const SdElement& u, const SdElement& v, const SolverCaps& caps) {
  ConjReport rep;
  if (u.y != v.y) {
    rep.case_taken = CaseTaken::quotient_shift;
    return rep;
  }
  const std::size_t d = cfg.d();
  const auto& y = u.y;
  auto witness = [&](IntVector a, std::vector<std::int64_t> b) {
    rep.conjugate = true;
    rep.witness = verified(cfg, SdElement{std::move(a), std::move(b)}, u, v);
  };

  // g = (a, b):  g^-1 u g = (phi(-b)(x1 + (phi(y) - Id) a), y).
  const IntMatrix lmat = IntMatrix::identity(d) - cfg.phi_matrix(y);
  rep.case_taken = all_zero(y) ? CaseTaken::restricted : CaseTaken::twisted_same_quotient;
  if (lmat.is_zero()) {
    // phi(b) x2 = x1 with any a.
    try {
      if (auto b = restricted_conj_semidirect(cfg, u.x, v.x, caps)) witness(zero_vector(d), *b);
    } catch (const SearchExhausted&) {
      rep.search_exhausted = true;
    }
    return rep;
  }

  if (det(lmat) != 0) {
    // (Id - phi(y)) a = x1 - phi(b) x2 needs x1 = phi(b) x2 in Z^d / L.
    const FinQuotient q = quotient(lmat);
    const Residue x1 = project(q, u.x);
    const Residue x2 = project(q, v.x);
    std::vector<Int> m;
    for (const auto& phi_i : cfg.phi_gens()) m.push_back(orbit_order(phi_i, q, x2));
    std::vector<std::vector<std::int64_t>> candidates;
    try {
      candidates = centered_residues(m, caps.enumeration_cap);
    } catch (const CapExceeded&) {
      rep.search_exhausted = true;
      return rep;
    }
    for (const auto& b : candidates) {
      const IntVector moved = cfg.phi_apply(b, v.x);
      if (project(q, moved) != x1) continue;
      auto sol = solve_integer(lmat, u.x - moved);
      if (!sol) throw Error("internal error: residue test and integer solve disagree");
      witness(std::move(sol->particular), b);
      return rep;
    }
    return rep;
  }

  // Singular, nonzero Id - phi(y): bounded search over b.
  std::uint64_t visited = 0;
  for (long r = 0;; ++r) {
    visited += l1_sphere_size(cfg.k(), r, caps.enumeration_cap);
    if (visited >= caps.enumeration_cap) break;
    bool found = false;
    for_each_l1_sphere(cfg.k(), r, [&](const std::vector<long>& bl) {
      auto b = to_i64(bl);
      auto sol = solve_integer(lmat, u.x - cfg.phi_apply(b, v.x));
      if (!sol) return true;
      witness(std::move(sol->particular), std::move(b));
      found = true;
      return false;
    });
    if (found) return rep;
  }
  rep.search_exhausted = true;
  return rep;
}

std::optional<std::int64_t> ascending_union_level(const GroupConfig& cfg, const RatVector& x, std::size_t cap) {
  const Int den = lcm_of_denominators(x);
  if (den == 1) return 0;
  const IntMatrix& m = cfg.matrix_m();
  IntVector r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = mod_floor(Rat(x[i] * den).get_num(), den);
  std::set<IntVector> visited;
  for (std::int64_t j = 0;; ++j) {
    if (is_zero(r)) return j;
    if (!visited.insert(r).second) return std::nullopt;
    if (visited.size() > cap) throw SearchExhausted("ascending-union orbit exceeded the enumeration cap");
    r = m * r;
    for (auto& v : r) v = mod_floor(v, den);
  }
}

ConjReport conj_gamma_m(const GroupConfig& cfg, const GmElement& u, const GmElement& v, const SolverCaps& caps) {
  ConjReport rep;
  if (u.s != v.s) {
    rep.case_taken = CaseTaken::quotient_shift;
    return rep;
  }
  const std::size_t d = cfg.d();
  const IntMatrix& mm = cfg.matrix_m();
  const bool expanding = cfg.spectral().expanding;
  auto accept = [&](GmElement g) {
    rep.conjugate = true;
    rep.witness = verified(cfg, std::move(g), u, v);
  };
  auto uncertified = [&]() {
    if (caps.require_certified && !expanding)
      throw HypothesisViolated("a certified negative needs an expanding matrix");
    rep.search_exhausted = true;
  };
  auto t_power = [&](std::int64_t b) { return GmElement{0, zero_vector(d), b}; };

  // g = alpha t^b:  g^-1 u g = M^-b (a1 + (M^s - Id) alpha) t^s.
  if (u.s == 0) {
    rep.case_taken = CaseTaken::restricted;
    if (u == v) {
      accept(t_power(0));
      return rep;
    }
    if (is_zero(u.w) || is_zero(v.w)) return rep;
    if (expanding) {
      // M^b a2 = a1 forces nu(a1) = nu(a2) - b.
      const std::int64_t b = valuation(cfg, v) - valuation(cfg, u);
      const GmElement g = t_power(b);
      if (gm_mul(cfg, gm_inv(cfg, g), gm_mul(cfg, u, g)) == v) accept(g);
      return rep;
    }
    if (abs(det(mm)) == 1) {
      // A = Z^d and the problem is restricted conjugacy for the single automorphism M.
      const GroupConfig sd = GroupConfig::semidirect({mm});
      try {
        // M^b w2 = w1
        if (auto b = restricted_conj_semidirect(sd, u.w, v.w, caps)) accept(t_power((*b)[0]));
      } catch (const SearchExhausted&) {
        uncertified();
      }
      return rep;
    }
    double norm = 1.0;
    for (const auto& e : u.w) norm += std::abs(e.get_d());
    for (const auto& e : v.w) norm += std::abs(e.get_d());
    const auto window = static_cast<std::int64_t>(u.p + v.p + 2 + std::ceil(std::log2(norm)));
    for (std::int64_t r = 0; r <= window; ++r)
      for (std::int64_t b : {-r, r}) {
        const GmElement g = t_power(b);
        if (gm_mul(cfg, gm_inv(cfg, g), gm_mul(cfg, u, g)) == v) {
          accept(g);
          return rep;
        }
        if (r == 0) break;
      }
    uncertified();
    return rep;
  }

  rep.case_taken = CaseTaken::twisted_same_quotient;
  if (u == v) {
    accept(t_power(0));
    return rep;
  }
  const std::int64_t s = u.s;
  const std::uint64_t n = s < 0 ? static_cast<std::uint64_t>(-(s + 1)) + 1 : static_cast<std::uint64_t>(s);
  const IntMatrix mn = int_pow(mm, n);
  const IntMatrix kmat = mn - IntMatrix::identity(d);
  if (det(kmat) == 0) {
    uncertified();
    return rep;
  }
  // (M^s - Id)^-1 = K^-1 for s > 0 and -K^-1 M^|s| for s < 0, K = M^|s| - Id.
  RatMatrix solve = inverse_rat(kmat);
  if (s < 0) {
    solve = solve * to_rat(mn);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) solve(i, j) = -solve(i, j);
  }
  const RatVector a1 = gm_vector(cfg, u);
  // u g is a conjugator whenever g is, shifting b by s, so |s| consecutive
  // values of b suffice.
  const auto width = static_cast<std::int64_t>(n);
  const std::int64_t lo = -((width - 1) / 2);
  std::vector<std::int64_t> window;
  for (std::int64_t b = lo; b < lo + width; ++b) window.push_back(b);
  std::stable_sort(window.begin(), window.end(), [](std::int64_t a, std::int64_t b) {
    return std::llabs(a) != std::llabs(b) ? std::llabs(a) < std::llabs(b) : a < b;
  });
  if (window.size() > caps.enumeration_cap) {
    uncertified();
    return rep;
  }
  for (std::int64_t b : window) {
    const RatVector mb_a2 = rat_apply(mat_pow(mm, b - v.p), to_rat(v.w));
    const RatVector alpha = solve * (mb_a2 - a1);
    std::optional<std::int64_t> level;
    try {
      level = ascending_union_level(cfg, alpha, caps.enumeration_cap);
    } catch (const SearchExhausted&) {
      uncertified();
      return rep;
    }
    if (!level) continue;
    const RatVector scaled = rat_apply(mat_pow(mm, *level), alpha);
    auto z = to_int(scaled);
    if (!z) throw Error("internal error: ascending-union level is not integral");
    accept(gm_normalize(cfg, *level, std::move(*z), b));
    return rep;
  }
  return rep;
}

ConjReport conj_solve(const GroupConfig& cfg, const Element& u, const Element& v, const SolverCaps& caps) {
  if (cfg.family() == Family::semidirect)
    return conj_semidirect(cfg, std::get<SdElement>(u), std::get<SdElement>(v), caps);
  return conj_gamma_m(cfg, std::get<GmElement>(u), std::get<GmElement>(v), caps);
}

}  // namespace conjlen
