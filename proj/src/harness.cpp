#include "conjlen/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "conjlen/errors.hpp"
#include "conjlen/io.hpp"
#include "conjlen/oracle.hpp"

namespace conjlen {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

struct Candidate {
  std::uint32_t length = 0;
  std::string ukey;
  std::string vkey;
  std::uint32_t u = 0;
  std::uint32_t v = 0;
  Word g;  // g^-1 u g = v
};

bool better(const Candidate& a, const Candidate& b) {
  if (a.length != b.length) return a.length > b.length;
  return std::tie(a.ukey, a.vkey) < std::tie(b.ukey, b.vkey);
}

std::string vec_string(const std::vector<long>& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

}  // namespace

ClfTable empirical_clf(const GroupConfig& cfg, const ClfOptions& opts) {
  const std::uint32_t n_max = opts.n_max;
  const std::uint32_t r0 = std::max(opts.ball_radius, n_max);
  const std::uint32_t rc = opts.conjugator_radius ? opts.conjugator_radius : 4 * n_max;
  Ball ball = bfs_ball(cfg, r0, opts.cap);
  const auto count = static_cast<std::uint32_t>(ball.level_end(n_max));

  ClfTable table;
  std::vector<Element> els(count);
  std::vector<std::string> names(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    els[i] = ball.element(i);
    names[i] = to_string(els[i]);
  }

  // Conjugate pairs (u, v), u < v in ball order, |u| + |v| <= n_max.
  std::map<std::vector<std::int64_t>, std::vector<std::uint32_t>> buckets;
  for (std::uint32_t i = 0; i < count; ++i) buckets[quotient_part(els[i])].push_back(i);
  UnionFind uf(count);
  std::map<std::uint32_t, std::vector<std::uint32_t>> targets;  // u -> v's
  std::uint32_t uncertified_from = std::numeric_limits<std::uint32_t>::max();
  for (const auto& [q, members] : buckets) {
    for (std::size_t a = 0; a < members.size(); ++a) {
      const std::uint32_t u = members[a];
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        const std::uint32_t v = members[b];
        if (ball.length(u) + ball.length(v) > n_max) break;
        if (uf.find(u) == uf.find(v)) {
          targets[u].push_back(v);
          continue;
        }
        ++table.solver_calls;
        const ConjReport rep = conj_solve(cfg, els[u], els[v], opts.solver);
        if (rep.conjugate) {
          uf.unite(u, v);
          targets[u].push_back(v);
        } else if (rep.search_exhausted) {
          targets[u].push_back(v);
        }
      }
    }
  }

  // Exact minimal conjugators from the conjugation graph search.  A pair
  // left open (cap hit or no conjugator up to rc) leaves rows from
  // |u| + |v| on uncertified.
  std::map<std::pair<std::uint32_t, std::uint32_t>, Word> found;
  for (const auto& [u, vs] : targets)
    for (auto v : vs) {
      std::optional<ShortestConjugator> sc;
      try {
        sc = shortest_conjugator(cfg, els[u], els[v], rc, opts.cap);
      } catch (const CapExceeded&) {
      }
      if (sc)
        found[{u, v}] = std::move(sc->word);
      else
        uncertified_from = std::min(uncertified_from, ball.length(u) + ball.length(v));
    }
  table.conjugator_radius_reached = rc;

  // Best candidate at each exact n.
  std::vector<std::optional<Candidate>> at(n_max + 1);
  auto offer = [&](Candidate c, std::uint32_t n) {
    if (!at[n] || better(c, *at[n])) at[n] = std::move(c);
  };
  for (std::uint32_t i = 0; i < count; ++i) {
    const std::uint32_t n = 2 * ball.length(i);
    if (n <= n_max) offer(Candidate{0, names[i], names[i], i, i, {}}, n);
  }
  for (const auto& [pair, g] : found) {
    const auto [u, v] = pair;
    const auto len = static_cast<std::uint32_t>(g.size());
    const std::uint32_t n = ball.length(u) + ball.length(v);
    offer(Candidate{len, names[u], names[v], u, v, g}, n);
    offer(Candidate{len, names[v], names[u], v, u, inverse_word(g)}, n);
  }

  std::optional<Candidate> best;
  for (std::uint32_t n = 0; n <= n_max; ++n) {
    if (at[n] && (!best || better(*at[n], *best))) best = at[n];
    ClfRow row;
    row.n = n;
    row.certified = n < uncertified_from;
    if (best) {
      row.clf = best->length;
      row.u = els[best->u];
      row.v = els[best->v];
      row.u_word = ball.geodesic(best->u);
      row.v_word = ball.geodesic(best->v);
      row.conjugator_word = best->g;
      row.conjugator = eval_word(cfg, row.conjugator_word);
      if (conj(cfg, row.conjugator, row.u) != row.v) throw Error("internal error: table conjugator failed verification");
    } else {
      row.u = row.v = row.conjugator = identity(cfg);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string clf_to_csv(const GroupConfig& cfg, const ClfTable& table) {
  std::string out = "n,clf,u_word,v_word,conjugator_word,certified\n";
  for (const auto& r : table.rows) {
    out += std::to_string(r.n) + ',' + std::to_string(r.clf) + ',' + csv_quote(word_to_string(cfg, r.u_word)) + ',' +
           csv_quote(word_to_string(cfg, r.v_word)) + ',' + csv_quote(word_to_string(cfg, r.conjugator_word)) + ',' +
           (r.certified ? "1" : "0") + '\n';
  }
  return out;
}

std::vector<SeriesRow> empirical_tclf(const IntMatrix& phi, std::uint32_t n_max, std::size_t cap) {
  const std::size_t d = phi.rows();
  if (!phi.square() || d == 0) throw DomainError("empirical_tclf: phi must be square");
  std::vector<std::vector<long>> pts;
  std::vector<long> norms;
  for (long r = 0; r <= static_cast<long>(n_max); ++r)
    for_each_l1_sphere(d, r, [&](const std::vector<long>& x) {
      pts.push_back(x);
      norms.push_back(r);
      if (pts.size() > cap) throw CapExceeded(cap);
      return true;
    });

  struct Best {
    Int value = -1;
    std::size_t u = 0, v = 0;
    IntVector gamma;
  };
  std::vector<Best> at(n_max + 1);
  std::map<std::vector<long>, std::optional<IntVector>> memo;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const long n = norms[i] + norms[j];
      if (n > static_cast<long>(n_max)) continue;
      std::vector<long> diff(d);
      for (std::size_t t = 0; t < d; ++t) diff[t] = pts[i][t] - pts[j][t];
      auto it = memo.find(diff);
      if (it == memo.end()) {
        const IntVector u(pts[i].begin(), pts[i].end());
        const IntVector v(pts[j].begin(), pts[j].end());
        std::optional<IntVector> g;
        if (auto tw = twisted_conj_abelian(u, v, phi)) g = minimal_twisted_witness(*tw, cap);
        it = memo.emplace(diff, std::move(g)).first;
      }
      if (!it->second) continue;
      const Int val = l1_norm(*it->second);
      auto& b = at[n];
      if (val > b.value) b = Best{val, i, j, *it->second};
    }

  std::vector<SeriesRow> rows;
  Best run;
  for (std::uint32_t n = 0; n <= n_max; ++n) {
    if (at[n].value > run.value) run = at[n];
    SeriesRow row;
    row.n = n;
    row.value = run.value;
    row.u = vec_string(pts[run.u]);
    row.v = vec_string(pts[run.v]);
    std::ostringstream os;
    os << run.gamma;
    row.conjugator = os.str();
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<SeriesRow> empirical_rclf_bs(long m, std::uint32_t r_max, std::size_t cap) {
  const GroupConfig cfg = GroupConfig::bs(m);
  auto a_pow = [&](long r) { return Element(GmElement{0, IntVector{Int(r)}, 0}); };
  const std::vector<long> exps = [&] {
    std::vector<long> e;
    for (long r = 1; r <= static_cast<long>(r_max); ++r) {
      e.push_back(r);
      e.push_back(-r);
    }
    return e;
  }();

  Ball ball = bfs_ball(cfg, 8, cap);
  auto all_inside = [&] {
    return std::all_of(exps.begin(), exps.end(), [&](long r) { return ball.find(a_pow(r)).has_value(); });
  };
  while (!all_inside()) ball.extend(ball.radius() + 2, cap);

  // Least length of a^r with |r| > r_max, capped at radius + 1.
  std::uint32_t n_complete = ball.radius() + 1;
  for (std::uint32_t i = 0; i < ball.size(); ++i) {
    const auto g = std::get<GmElement>(ball.element(i));
    if (g.p == 0 && g.s == 0 && abs(g.w[0]) > static_cast<long>(r_max)) {
      n_complete = std::min(n_complete, ball.length(i));
      break;  // BFS order: the first hit is the shortest
    }
  }

  struct Best {
    long length = -1;
    long r = 0, s = 0;
    Word g;
  };
  std::vector<Best> at(n_complete + 1);
  auto len = [&](long r) { return ball.length(*ball.find(a_pow(r))); };
  auto offer = [&](std::uint32_t n, long length, long r, long s, Word g) {
    if (n > n_complete) return;
    auto& b = at[n];
    if (length > b.length || (length == b.length && std::tie(r, s) < std::tie(b.r, b.s))) b = Best{length, r, s, std::move(g)};
  };
  for (long r : exps) offer(2 * len(r), 0, r, r, {});

  for (;;) {
    bool missing = false;
    ConjugatorScanner scanner(ball);
    for (long r : exps) {
      std::vector<long> ss;
      for (long s : exps) {
        if (s == r || len(r) + len(s) > n_complete) continue;
        // a^r ~ a^s iff s = r m^j for some integer j.
        long big = std::max(std::labs(r), std::labs(s));
        long small = std::min(std::labs(r), std::labs(s));
        if ((r > 0) != (s > 0) || big % small != 0) continue;
        long q = big / small;
        while (q % m == 0) q /= m;
        if (q == 1) ss.push_back(s);
      }
      if (ss.empty()) continue;
      std::vector<Element> tv;
      for (long s : ss) tv.push_back(a_pow(s));
      const auto hits = scanner.scan(a_pow(r), tv);
      for (std::size_t t = 0; t < ss.size(); ++t) {
        if (!hits[t]) {
          missing = true;
          continue;
        }
        offer(len(r) + len(ss[t]), ball.length(*hits[t]), r, ss[t], ball.geodesic(*hits[t]));
      }
    }
    if (!missing) break;
    ball.extend(ball.radius() + 2, cap);
  }

  std::vector<SeriesRow> rows;
  Best run;
  for (std::uint32_t n = 0; n <= n_complete; ++n) {
    if (at[n].length > run.length) run = at[n];
    if (n < 2) continue;
    SeriesRow row;
    row.n = n;
    row.value = run.length;
    row.u = "a^" + std::to_string(run.r);
    row.v = "a^" + std::to_string(run.s);
    row.conjugator = word_to_string(cfg, run.g);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string series_to_csv(const std::vector<SeriesRow>& rows, const std::string& value_name) {
  std::string out = "n," + value_name + ",u,v,witness,certified\n";
  for (const auto& r : rows)
    out += std::to_string(r.n) + ',' + r.value.get_str() + ',' + csv_quote(r.u) + ',' + csv_quote(r.v) + ',' +
           csv_quote(r.conjugator) + ',' + (r.certified ? "1" : "0") + '\n';
  return out;
}

std::string_view model_name(FitModel m) { return m == FitModel::linear ? "linear" : "exponential"; }

FitResult fit_bound(const std::vector<FitPoint>& rows, FitModel model) {
  auto bound = [&](double c, std::uint32_t n) {
    return model == FitModel::linear ? c * n : std::pow(c, static_cast<double>(n));
  };
  double c = 0.0;
  bool any = false;
  for (const auto& r : rows) {
    if (!r.certified) continue;
    any = true;
    if (r.n == 0) {
      if (r.value > (model == FitModel::linear ? 0.0 : 1.0))
        throw DomainError("fit_bound: no constant bounds a positive value at n = 0");
      continue;
    }
    const double need = model == FitModel::linear ? r.value / r.n : std::pow(r.value, 1.0 / r.n);
    c = std::max(c, need);
  }
  if (!any) throw EmptyTable();
  for (const auto& r : rows)
    if (r.certified && r.n > 0)
      while (bound(c, r.n) < r.value) c = std::nextafter(c, INFINITY);
  FitResult fr{model, c, 0.0};
  for (const auto& r : rows)
    if (r.certified) fr.max_residual = std::max(fr.max_residual, bound(c, r.n) - r.value);
  return fr;
}

FitResult fit_bound(const ClfTable& table, FitModel model) {
  std::vector<FitPoint> pts;
  for (const auto& r : table.rows) pts.push_back({r.n, static_cast<double>(r.clf), r.certified});
  return fit_bound(pts, model);
}

FitResult fit_bound(const std::vector<SeriesRow>& rows, FitModel model) {
  std::vector<FitPoint> pts;
  for (const auto& r : rows) pts.push_back({r.n, r.value.get_d(), r.certified});
  return fit_bound(pts, model);
}

}  // namespace conjlen
