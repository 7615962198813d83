#include "conjlen/metrics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "conjlen/errors.hpp"

namespace conjlen {

LengthBounds bs_length_bounds(const Int& r, long m) {
  if (r == 0) throw DomainError("bs_length_bounds: r must be nonzero");
  if (m < 2) throw DomainError("bs_length_bounds: m must be at least 2");
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, Int(abs(r)).get_mpz_t());
  const double log_m_r = (std::log(mant) + static_cast<double>(exp) * std::log(2.0)) / std::log(static_cast<double>(m));
  return {0.5 * log_m_r, static_cast<double>(m + 2) * log_m_r + static_cast<double>(m) / 2.0 + 1.0};
}

namespace {

bool in_subgroup(const Element& e, SubgroupSelector::Subgroup sub) {
  if (sub == SubgroupSelector::Subgroup::whole) return true;
  if (const auto* g = std::get_if<GmElement>(&e)) return g->p == 0 && g->s == 0;
  const auto& sd = std::get<SdElement>(e);
  return std::all_of(sd.y.begin(), sd.y.end(), [](std::int64_t v) { return v == 0; });
}

const IntVector& kernel_coords(const Element& e) {
  if (const auto* g = std::get_if<GmElement>(&e)) return g->w;
  return std::get<SdElement>(e).x;
}

Element kernel_element(const GroupConfig& cfg, const std::vector<long>& x) {
  IntVector v(x.begin(), x.end());
  if (cfg.family() == Family::semidirect) return SdElement{std::move(v), std::vector<std::int64_t>(cfg.k(), 0)};
  return GmElement{0, std::move(v), 0};
}

}  // namespace

std::vector<DistortionRow> distortion_table(const GroupConfig& cfg, SubgroupSelector sel, std::uint32_t n_max,
                                            std::size_t cap) {
  const Ball ball = bfs_ball(cfg, n_max, cap);
  return distortion_table(ball, sel, n_max, cap);
}

std::vector<DistortionRow> distortion_table(const Ball& ball, SubgroupSelector sel, std::uint32_t n_max,
                                            std::size_t cap) {
  using Sub = SubgroupSelector::Subgroup;
  using Met = SubgroupSelector::Metric;
  if (sel.subgroup == Sub::whole && sel.metric == Met::a_generator)
    throw DomainError("the a-generator metric is only defined on the a-subgroup");
  const std::uint32_t R = ball.radius();
  if (n_max > R) throw DomainError("distortion_table: n_max exceeds the ball radius");
  const GroupConfig& cfg = ball.config();

  // Per length: max and min of |f|_F among F-elements of that exact length.
  std::vector<std::optional<Int>> max_at(R + 1), min_at(R + 1);
  for (std::uint32_t i = 0; i < ball.size(); ++i) {
    const Element e = ball.element(i);
    if (!in_subgroup(e, sel.subgroup)) continue;
    const std::uint32_t len = ball.length(i);
    const Int f = sel.metric == Met::restricted ? Int(len) : l1_norm(kernel_coords(e));
    if (!max_at[len] || f > *max_at[len]) max_at[len] = f;
    if (!min_at[len] || f < *min_at[len]) min_at[len] = f;
  }

  // ldist candidates for k = 0..R, from elements with length in [k, R].
  std::vector<std::optional<Int>> ld(R + 2);
  for (std::int64_t k = R; k >= 0; --k) {
    ld[k] = ld[k + 1];
    if (min_at[k] && (!ld[k] || *min_at[k] < *ld[k])) ld[k] = min_at[k];
  }

  // Largest c such that every F-element with |f|_F <= c lies in the ball.
  long complete = std::numeric_limits<long>::max();
  if (sel.metric == Met::a_generator) {
    Int needed = 0;
    for (const auto& v : ld)
      if (v && *v > needed) needed = *v;
    complete = -1;
    std::uint64_t visited = 0;
    for (long c = 0; c < needed; ++c) {
      visited += l1_sphere_size(cfg.d(), c, cap);
      if (visited >= cap) break;
      const bool all_in = for_each_l1_sphere(cfg.d(), c, [&](const std::vector<long>& x) {
        return ball.find(kernel_element(cfg, x)).has_value();
      });
      if (!all_in) break;
      complete = c;
    }
  }
  auto ld_certified = [&](std::uint32_t k) {
    if (!ld[k]) return false;
    if (sel.metric == Met::restricted) return true;
    return *ld[k] - 1 <= complete;
  };

  std::vector<DistortionRow> rows;
  Int delta = 0;
  for (std::uint32_t n = 0; n <= n_max; ++n) {
    DistortionRow row;
    row.n = n;
    if (max_at[n] && *max_at[n] > delta) delta = *max_at[n];
    row.delta = delta;
    row.ldist = ld[n] ? *ld[n] : Int(-1);
    bool cert = ld_certified(n);
    std::optional<std::uint32_t> inv;
    bool inv_cert = true;
    for (std::uint32_t k = 0; k <= R; ++k) {
      if (!ld_certified(k)) inv_cert = false;
      if (ld[k] && *ld[k] >= n) {
        inv = k;
        break;
      }
    }
    row.invdist = inv ? static_cast<std::int64_t>(*inv) : static_cast<std::int64_t>(R) + 1;
    row.certified = cert && inv && inv_cert;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string distortion_to_csv(const std::vector<DistortionRow>& rows) {
  std::string out = "n,delta,ldist,invdist,certified\n";
  for (const auto& r : rows) {
    out += std::to_string(r.n) + ',' + r.delta.get_str() + ',' + r.ldist.get_str() + ',' +
           std::to_string(r.invdist) + ',' + (r.certified ? "1" : "0") + '\n';
  }
  return out;
}

double dl_distance(const GroupConfig& cfg, const HeightPoint& g, const HeightPoint& h) {
  if (cfg.family() == Family::semidirect) throw DomainError("dl_distance is defined for gamma_m and bs");
  if (!cfg.spectral().expanding) throw HypothesisViolated("dl_distance needs an expanding matrix");
  const std::size_t d = cfg.d();
  if (g.a.size() != d || h.a.size() != d) throw DomainError("dl_distance: wrong dimension");
  const IntMatrix& m = cfg.matrix_m();
  Eigen::MatrixXd md(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) md(i, j) = m(i, j).get_d();
  Eigen::EigenSolver<Eigen::MatrixXd> es(md);
  Eigen::VectorXd lambda(d);
  Eigen::MatrixXd p(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    const auto ev = es.eigenvalues()(i);
    if (std::abs(ev.imag()) > 1e-9 || ev.real() <= 0.0)
      throw HypothesisViolated("dl_distance needs positive real eigenvalues");
    lambda(i) = ev.real();
    p.col(i) = es.eigenvectors().col(i).real();
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(p);
  if (!lu.isInvertible() || lu.rcond() < 1e-12) throw HypothesisViolated("dl_distance needs a diagonalizable matrix");

  Eigen::VectorXd diff(d);
  for (std::size_t i = 0; i < d; ++i) diff(i) = Rat(h.a[i] - g.a[i]).get_d();
  const Eigen::VectorXd coeff = lu.solve(diff);
  auto sep = [&](double t) {
    Eigen::VectorXd c = coeff;
    for (std::size_t i = 0; i < d; ++i) c(i) *= std::pow(lambda(i), -t);
    return (p * c).lpNorm<1>();
  };

  const double ta = g.t.get_d();
  const double tb = h.t.get_d();
  const double t_hi = std::max(ta, tb);
  const double t_lo = std::min(ta, tb);
  if (diff.isZero(0.0)) return t_hi - t_lo;

  double lo = 0.0, hi = 0.0, step = 1.0;
  if (sep(0.0) <= 1.0) {
    while (sep(lo) <= 1.0) {
      hi = lo;
      lo -= step;
      step *= 2.0;
    }
  } else {
    while (sep(hi) > 1.0) {
      lo = hi;
      hi += step;
      step *= 2.0;
    }
  }
  for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (sep(mid) <= 1.0)
      hi = mid;
    else
      lo = mid;
  }
  const double t0 = hi;
  if (t0 >= t_hi) return std::abs(ta - t0) + std::abs(t0 - tb) + 1.0;
  return t_hi - t_lo + sep(t_hi);
}

}  // namespace conjlen
