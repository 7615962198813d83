#include "conjlen/oracle.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <unordered_map>

#include "conjlen/errors.hpp"

namespace conjlen {

namespace {

using i128 = __int128;
constexpr std::size_t kFastDim = 4;
constexpr std::int64_t kFastLimit = std::int64_t{1} << 62;

using FastKey = std::array<std::int64_t, kFastDim>;

struct FastKeyHash {
  std::size_t operator()(const FastKey& k) const noexcept {
    std::uint64_t h = 0x9E3779B97F4A7C15ULL;
    for (auto v : k) {
      h ^= static_cast<std::uint64_t>(v) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
      h *= 0xBF58476D1CE4E5B9ULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 31));
  }
};

bool fits(const Int& v) { return v.fits_slong_p() && v.get_si() < kFastLimit && v.get_si() > -kFastLimit; }
bool fits(i128 v) { return v < kFastLimit && v > -kFastLimit; }

}  // namespace

std::optional<MinConjugator> min_conjugator(const Ball& ball, const Element& u, const Element& v) {
  const GroupConfig& cfg = ball.config();
  for (std::uint32_t i = 0; i < ball.size(); ++i) {
    const Element g = ball.element(i);
    if (mul(cfg, u, g) == mul(cfg, g, v)) return MinConjugator{g, ball.length(i), i};
  }
  return std::nullopt;
}

namespace {

struct Side {
  std::unordered_map<std::string, std::pair<std::uint32_t, std::int16_t>> seen;  // key -> (depth, letter code)
  std::vector<Element> frontier;
  std::uint32_t depth = 0;
};

// Letters s_1 .. s_j with (s_1 .. s_j)^-1 root (s_1 .. s_j) = x.
Word path_to(const GroupConfig& cfg, const Side& side, Element x) {
  Word w;
  for (;;) {
    const auto& [depth, code] = side.seen.at(encode_key(x));
    if (code < 0) break;
    const Letter l = letter_from_code(code);
    w.push_back(l);
    const Element s = eval_word(cfg, {l});
    x = mul(cfg, mul(cfg, s, x), inv(cfg, s));
  }
  std::reverse(w.begin(), w.end());
  return w;
}

}  // namespace

std::optional<ShortestConjugator> shortest_conjugator(const GroupConfig& cfg, const Element& u, const Element& v,
                                                      std::uint32_t max_length, std::size_t cap) {
  const auto letters = generator_letters(cfg);
  std::vector<Element> gens;
  for (const auto& l : letters) gens.push_back(eval_word(cfg, {l}));
  if (u == v) return ShortestConjugator{{}, identity(cfg), 0};
  if (quotient_part(u) != quotient_part(v)) return std::nullopt;

  Side a, b;
  a.seen.emplace(encode_key(u), std::pair<std::uint32_t, std::int16_t>{0, -1});
  b.seen.emplace(encode_key(v), std::pair<std::uint32_t, std::int16_t>{0, -1});
  a.frontier.push_back(u);
  b.frontier.push_back(v);
  while (a.depth + b.depth < max_length && !a.frontier.empty() && !b.frontier.empty()) {
    const bool grow_a = a.frontier.size() <= b.frontier.size();
    Side& s = grow_a ? a : b;
    const Side& o = grow_a ? b : a;
    std::vector<Element> next;
    std::optional<std::pair<std::uint32_t, Element>> best;
    for (const auto& x : s.frontier) {
      for (std::size_t i = 0; i < gens.size(); ++i) {
        Element y = conj(cfg, gens[i], x);
        std::string key = encode_key(y);
        if (s.seen.count(key)) continue;
        if (s.seen.size() + o.seen.size() >= cap) throw CapExceeded(cap);
        if (const auto it = o.seen.find(key); it != o.seen.end()) {
          const std::uint32_t total = s.depth + 1 + it->second.first;
          if (!best || total < best->first) best.emplace(total, y);
        }
        s.seen.emplace(std::move(key), std::pair<std::uint32_t, std::int16_t>{s.depth + 1, letter_code(letters[i])});
        next.push_back(std::move(y));
      }
    }
    ++s.depth;
    s.frontier = std::move(next);
    if (best) {
      // u -> x along a, v -> x along b; g = g_a g_b^-1.
      Word w = path_to(cfg, a, best->second);
      const Word wb = path_to(cfg, b, best->second);
      const Word tail = inverse_word(wb);
      w.insert(w.end(), tail.begin(), tail.end());
      Element g = eval_word(cfg, w);
      if (conj(cfg, g, u) != v) throw Error("internal error: conjugation graph path failed verification");
      return ShortestConjugator{std::move(w), std::move(g), best->first};
    }
  }
  return std::nullopt;
}

struct ConjugatorScanner::Flat {
  std::size_t d = 0;
  std::size_t k = 0;
  std::vector<std::int64_t> x;      // d per element
  std::vector<std::uint32_t> b_id;  // index into phi_neg
  std::vector<std::vector<std::int64_t>> phi_neg;  // phi(-b), row-major d x d
};

ConjugatorScanner::ConjugatorScanner(const Ball& ball) : ball_(ball) {
  const GroupConfig& cfg = ball.config();
  if (cfg.family() != Family::semidirect || cfg.d() > kFastDim) return;
  auto flat = std::make_unique<Flat>();
  flat->d = cfg.d();
  flat->k = cfg.k();
  flat->x.reserve(ball.size() * flat->d);
  flat->b_id.reserve(ball.size());
  std::map<std::vector<std::int64_t>, std::uint32_t> ids;
  for (std::uint32_t i = 0; i < ball.size(); ++i) {
    const auto e = std::get<SdElement>(ball.element(i));
    for (const auto& v : e.x) {
      if (!fits(v)) return;
      flat->x.push_back(v.get_si());
    }
    auto [it, inserted] = ids.emplace(e.y, static_cast<std::uint32_t>(flat->phi_neg.size()));
    if (inserted) {
      std::vector<std::int64_t> neg(e.y.size());
      for (std::size_t j = 0; j < e.y.size(); ++j) neg[j] = -e.y[j];
      const IntMatrix m = cfg.phi_matrix(neg);
      std::vector<std::int64_t> entries;
      for (const auto& v : m.entries()) {
        if (!fits(v)) return;
        entries.push_back(v.get_si());
      }
      flat->phi_neg.push_back(std::move(entries));
    }
    flat->b_id.push_back(it->second);
  }
  flat_ = std::move(flat);
}

ConjugatorScanner::~ConjugatorScanner() = default;

bool ConjugatorScanner::fast_path() const { return flat_ != nullptr; }

std::vector<std::optional<std::uint32_t>> ConjugatorScanner::scan(const Element& u,
                                                                  const std::vector<Element>& targets) const {
  if (flat_) {
    if (auto r = scan_fast(std::get<SdElement>(u), targets)) return *r;
  }
  return scan_exact(u, targets);
}

std::vector<std::optional<std::uint32_t>> ConjugatorScanner::scan_exact(const Element& u,
                                                                        const std::vector<Element>& targets) const {
  const GroupConfig& cfg = ball_.config();
  std::vector<std::optional<std::uint32_t>> out(targets.size());
  std::unordered_map<std::string, std::vector<std::size_t>> wanted;
  for (std::size_t t = 0; t < targets.size(); ++t) wanted[encode_key(targets[t])].push_back(t);
  std::size_t remaining = wanted.size();
  for (std::uint32_t i = 0; i < ball_.size() && remaining > 0; ++i) {
    const Element g = ball_.element(i);
    const auto it = wanted.find(encode_key(conj(cfg, g, u)));
    if (it == wanted.end() || it->second.empty()) continue;
    for (auto t : it->second) out[t] = i;
    it->second.clear();
    --remaining;
  }
  return out;
}

std::optional<std::vector<std::optional<std::uint32_t>>> ConjugatorScanner::scan_fast(
    const SdElement& u, const std::vector<Element>& targets) const {
  const GroupConfig& cfg = ball_.config();
  const Flat& f = *flat_;
  const std::size_t d = f.d;

  // g = (a, b):  g^-1 u g = (phi(-b)(x1 + (phi(y) - Id) a), y).
  std::array<std::int64_t, kFastDim * kFastDim> amat{};
  std::array<std::int64_t, kFastDim> x1{};
  {
    const IntMatrix a = cfg.phi_matrix(u.y) - IntMatrix::identity(d);
    for (std::size_t i = 0; i < d; ++i) {
      if (!fits(u.x[i])) return std::nullopt;
      x1[i] = u.x[i].get_si();
      for (std::size_t j = 0; j < d; ++j) {
        if (!fits(a(i, j))) return std::nullopt;
        amat[i * d + j] = a(i, j).get_si();
      }
    }
  }

  std::vector<std::optional<std::uint32_t>> out(targets.size());
  std::unordered_map<FastKey, std::vector<std::size_t>, FastKeyHash> wanted;
  for (std::size_t t = 0; t < targets.size(); ++t) {
    const auto& v = std::get<SdElement>(targets[t]);
    if (v.y != u.y) continue;
    FastKey key{};
    bool ok = true;
    for (std::size_t i = 0; i < d; ++i) {
      if (!fits(v.x[i])) {
        ok = false;
        break;
      }
      key[i] = v.x[i].get_si();
    }
    if (ok) wanted[key].push_back(t);
  }
  std::size_t remaining = wanted.size();
  if (remaining == 0) return out;

  const std::size_t n = ball_.size();
  for (std::size_t g = 0; g < n && remaining > 0; ++g) {
    const std::int64_t* a = &f.x[g * d];
    std::array<i128, kFastDim> z{};
    bool small = true;
    for (std::size_t i = 0; i < d; ++i) {
      i128 acc = x1[i];
      for (std::size_t j = 0; j < d; ++j) acc += static_cast<i128>(amat[i * d + j]) * a[j];
      z[i] = acc;
      if (!fits(acc)) small = false;
    }
    FastKey key{};
    if (small) {
      const std::int64_t* p = f.phi_neg[f.b_id[g]].data();
      for (std::size_t i = 0; i < d; ++i) {
        i128 acc = 0;
        for (std::size_t j = 0; j < d; ++j) acc += static_cast<i128>(p[i * d + j]) * z[j];
        if (!fits(acc)) {
          small = false;
          break;
        }
        key[i] = static_cast<std::int64_t>(acc);
      }
    }
    if (!small) {
      const auto r = std::get<SdElement>(conj(cfg, ball_.element(static_cast<std::uint32_t>(g)), u));
      bool ok = true;
      for (std::size_t i = 0; i < d && ok; ++i) {
        if (!fits(r.x[i])) ok = false;
        else key[i] = r.x[i].get_si();
      }
      if (!ok) continue;
    }
    const auto it = wanted.find(key);
    if (it == wanted.end() || it->second.empty()) continue;
    for (auto t : it->second) out[t] = static_cast<std::uint32_t>(g);
    it->second.clear();
    --remaining;
  }
  return out;
}

}  // namespace conjlen
