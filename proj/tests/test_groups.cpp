#include <gtest/gtest.h>

#include "conjlen/errors.hpp"
#include "conjlen/groups.hpp"
#include "conjlen/io.hpp"
#include "support.hpp"

using namespace conjlen;
using conjlen::testing::uniform;

namespace {

// Affine oracle: an element acts on Q^d as x -> A x + c, i.e. the matrix
// [[A, c], [0, 1]].  For Gamma_M, A = M^s and c = M^-p w; for semidirect,
// A = phi(y) and c = x.  The quotient coordinate is tracked alongside.
struct Affine {
  RatMatrix m;
  std::vector<std::int64_t> q;
  bool operator==(const Affine&) const = default;
};

RatMatrix rat_pow_product(const std::vector<IntMatrix>& gens, const std::vector<std::int64_t>& y, std::size_t d) {
  RatMatrix a = RatMatrix::identity(d);
  for (std::size_t i = 0; i < gens.size(); ++i) a = a * mat_pow(gens[i], y[i]);
  return a;
}

Affine affine_of(const GroupConfig& cfg, const Element& e) {
  const std::size_t d = cfg.d();
  Affine out{RatMatrix(d + 1, d + 1), {}};
  RatMatrix lin;
  RatVector c;
  if (const auto* g = std::get_if<GmElement>(&e)) {
    lin = mat_pow(cfg.matrix_m(), g->s);
    c = mat_pow(cfg.matrix_m(), -g->p) * to_rat(g->w);
    out.q = {g->s};
  } else {
    const auto& x = std::get<SdElement>(e);
    lin = rat_pow_product(cfg.phi_gens(), x.y, d);
    c = to_rat(x.x);
    out.q = x.y;
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) out.m(i, j) = lin(i, j);
    out.m(i, d) = c[i];
  }
  out.m(d, d) = 1;
  return out;
}

Affine affine_mul(const Affine& a, const Affine& b) {
  Affine r{a.m * b.m, a.q};
  for (std::size_t i = 0; i < r.q.size(); ++i) r.q[i] += b.q[i];
  return r;
}

Word random_word(std::mt19937_64& rng, const GroupConfig& cfg, int len) {
  Word w;
  for (int i = 0; i < len; ++i)
    w.push_back(Letter{static_cast<std::uint32_t>(uniform(rng, 0, static_cast<long>(cfg.num_generators()) - 1)),
                       uniform(rng, 0, 1) ? 1 : -1});
  return w;
}

std::vector<GroupConfig> sample_configs() {
  return {GroupConfig::bs(2), GroupConfig::bs(3), GroupConfig::gamma_m(IntMatrix{{8, 4}, {4, 4}}),
          GroupConfig::gamma_m(IntMatrix{{2, 1}, {1, 1}}), GroupConfig::gamma_m(IntMatrix{{0, -2}, {1, 0}}),
          GroupConfig::semidirect({IntMatrix{{2, 1}, {1, 1}}}),
          GroupConfig::semidirect({IntMatrix{{2, 1}, {1, 1}}, IntMatrix{{3, 2}, {2, 1}}}),
          GroupConfig::semidirect({}, 2)};
}

}  // namespace

TEST(Groups, MultiplicationMatchesAffineOracle) {
  std::mt19937_64 rng(conjlen::testing::seed());
  for (const auto& cfg : sample_configs()) {
    for (int t = 0; t < 60; ++t) {
      const Element a = eval_word(cfg, random_word(rng, cfg, static_cast<int>(uniform(rng, 0, 8))));
      const Element b = eval_word(cfg, random_word(rng, cfg, static_cast<int>(uniform(rng, 0, 8))));
      EXPECT_EQ(affine_of(cfg, mul(cfg, a, b)), affine_mul(affine_of(cfg, a), affine_of(cfg, b)));
      EXPECT_EQ(affine_of(cfg, mul(cfg, a, inv(cfg, a))), affine_of(cfg, identity(cfg)));
    }
  }
}

TEST(Groups, GroupLaws) {
  std::mt19937_64 rng(conjlen::testing::seed() + 1);
  for (const auto& cfg : sample_configs()) {
    const Element e = identity(cfg);
    EXPECT_TRUE(is_identity(e));
    for (int t = 0; t < 80; ++t) {
      const Element a = eval_word(cfg, random_word(rng, cfg, 6));
      const Element b = eval_word(cfg, random_word(rng, cfg, 6));
      const Element c = eval_word(cfg, random_word(rng, cfg, 6));
      EXPECT_EQ(mul(cfg, mul(cfg, a, b), c), mul(cfg, a, mul(cfg, b, c)));
      EXPECT_EQ(mul(cfg, a, e), a);
      EXPECT_EQ(mul(cfg, e, a), a);
      EXPECT_TRUE(is_identity(mul(cfg, inv(cfg, a), a)));
      EXPECT_EQ(conj(cfg, b, a), mul(cfg, mul(cfg, inv(cfg, b), a), b));
    }
  }
}

TEST(Groups, NormalFormIsUniqueUnderRelators) {
  // Insert t a t^-1 a^-m (and its conjugates) into random words; the
  // canonical element must not change.
  std::mt19937_64 rng(conjlen::testing::seed() + 2);
  const GroupConfig cfg = GroupConfig::bs(3);
  const Word rel = parse_word(cfg, "t a t^-1 a^-3");
  for (int t = 0; t < 200; ++t) {
    Word w = random_word(rng, cfg, 10);
    const Element before = eval_word(cfg, w);
    const auto pos = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(w.size())));
    Word v(w.begin(), w.begin() + static_cast<long>(pos));
    const Word c = random_word(rng, cfg, 3);
    v.insert(v.end(), c.begin(), c.end());
    v.insert(v.end(), rel.begin(), rel.end());
    const Word ci = inverse_word(c);
    v.insert(v.end(), ci.begin(), ci.end());
    v.insert(v.end(), w.begin() + static_cast<long>(pos), w.end());
    EXPECT_EQ(eval_word(cfg, v), before);
    // The spelled normal form evaluates back to the element.
    EXPECT_EQ(eval_word(cfg, normal_form_word(cfg, before)), before);
  }
}

TEST(Groups, GammaMNormalization) {
  const GroupConfig cfg = GroupConfig::bs(2);
  EXPECT_EQ(to_string(eval_word(cfg, parse_word(cfg, "t a t^-1"))), "(0,(2),0)");
  EXPECT_EQ(to_string(eval_word(cfg, parse_word(cfg, "t^-1 a t"))), "(1,(1),0)");
  EXPECT_EQ(to_string(eval_word(cfg, parse_word(cfg, "t^-1 a^2 t"))), "(0,(1),0)");
  EXPECT_EQ(to_string(eval_word(cfg, parse_word(cfg, ""))), "(0,(0),0)");
  // b is an alias of t in BS(1,m).
  EXPECT_EQ(eval_word(cfg, parse_word(cfg, "b a b^-1")), eval_word(cfg, parse_word(cfg, "a^2")));
  const GmElement g = gm_normalize(cfg, 3, make_vector({4}), 1);
  EXPECT_EQ(g.p, 1);
  EXPECT_EQ(g.w, make_vector({1}));
  EXPECT_EQ(g.s, 1);
}

TEST(Groups, ParseErrorsCarryPositions) {
  const GroupConfig cfg = GroupConfig::bs(2);
  try {
    parse_word(cfg, "a t x");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
  EXPECT_THROW(parse_word(cfg, "a^"), ParseError);
  EXPECT_THROW(parse_word(cfg, "a^{2"), ParseError);
  EXPECT_THROW(parse_word(cfg, "a^99999999"), ParseError);
  EXPECT_EQ(parse_word(cfg, "a^{-2} t^3").size(), 5u);
  EXPECT_EQ(word_to_string(cfg, parse_word(cfg, "a a a t^-1")), "a^3 b^-1");
}

TEST(Groups, ElementStringsAndKeysRoundTrip) {
  std::mt19937_64 rng(conjlen::testing::seed() + 3);
  for (const auto& cfg : sample_configs()) {
    for (int t = 0; t < 50; ++t) {
      const Element a = eval_word(cfg, random_word(rng, cfg, 12));
      EXPECT_EQ(parse_element(cfg, to_string(a)), a);
      EXPECT_EQ(decode_key(cfg, encode_key(a)), a);
    }
  }
  // Keys of big coordinates survive as well.
  const GroupConfig cfg = GroupConfig::semidirect({IntMatrix{{2, 1}, {1, 1}}});
  const Element big = SdElement{IntVector{Int("123456789012345678901234567890"), Int(-7)}, {3}};
  EXPECT_EQ(decode_key(cfg, encode_key(big)), big);
}

TEST(Groups, ConfigValidation) {
  EXPECT_THROW(GroupConfig::bs(1), ConfigError);
  EXPECT_THROW(GroupConfig::gamma_m(IntMatrix{{1, 2}, {2, 4}}), ConfigError);
  EXPECT_THROW(GroupConfig::semidirect({IntMatrix{{2, 0}, {0, 1}}}), ConfigError);
  EXPECT_THROW(GroupConfig::semidirect({IntMatrix{{1, 1}, {0, 1}}, IntMatrix{{1, 0}, {1, 1}}}), ConfigError);
  EXPECT_THROW(config_from_json("{\"family\":\"bs\"}"), ConfigError);
  EXPECT_THROW(config_from_json("not json"), ConfigError);
  EXPECT_THROW(config_from_json("{\"family\":\"lie\"}"), ConfigError);

  const GroupConfig cfg = config_from_json(R"({"family":"gamma_m","matrix_m":[[8,4],["4",4]]})");
  EXPECT_EQ(cfg.matrix_m(), (IntMatrix{{8, 4}, {4, 4}}));
  EXPECT_TRUE(cfg.spectral().expanding);
  const GroupConfig back = config_from_json(config_to_json(cfg));
  EXPECT_EQ(back.matrix_m(), cfg.matrix_m());
  EXPECT_EQ(back.generator_names(), cfg.generator_names());

  const GroupConfig named = config_from_json(R"({"family":"bs","m":2,"generator_names":["x","y"]})");
  EXPECT_EQ(named.generator_index("y"), 1);
  EXPECT_EQ(named.generator_index("t"), -1);
}

TEST(Groups, SpectralData) {
  const auto sol = GroupConfig::gamma_m(IntMatrix{{2, 1}, {1, 1}});
  EXPECT_NEAR(sol.spectral().lambda_max, (3 + std::sqrt(5.0)) / 2, 1e-9);
  EXPECT_FALSE(sol.spectral().expanding);
  EXPECT_TRUE(sol.spectral().r_split);
  const auto rot = GroupConfig::gamma_m(IntMatrix{{0, -2}, {1, 0}});
  EXPECT_FALSE(rot.spectral().r_split);
  EXPECT_TRUE(rot.spectral().expanding);
}
