#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "conjlen/ball.hpp"
#include "conjlen/groups.hpp"

namespace conjlen {

struct LengthBounds {
  double lower = 0.0;
  double upper = 0.0;
};

// (1/2) log_m|r| <= |a^r| <= (m+2) log_m|r| + m/2 + 1 in BS(1,m).
LengthBounds bs_length_bounds(const Int& r, long m);

// F is either the subgroup generated by a1..ad (Z^d inside the kernel) or
// the whole group.  |f|_F is the l1 norm in the a-generators, or the
// ambient word length restricted to F.
struct SubgroupSelector {
  enum class Subgroup { a_subgroup, whole };
  enum class Metric { a_generator, restricted };
  Subgroup subgroup = Subgroup::a_subgroup;
  Metric metric = Metric::a_generator;
};

struct DistortionRow {
  std::uint32_t n = 0;
  Int delta;
  Int ldist;
  std::int64_t invdist = 0;
  bool certified = false;
};

// delta(n)   = max{|f|_F : f in F, |f| <= n}
// ldist(n)   = min{|f|_F : f in F, |f| >= n}
// invdist(n) = min{k : ldist(k) >= n}
// A row is certified when all three values are determined by the ball.
std::vector<DistortionRow> distortion_table(const GroupConfig& cfg, SubgroupSelector sel, std::uint32_t n_max,
                                            std::size_t cap = kDefaultBallCap);
std::vector<DistortionRow> distortion_table(const Ball& ball, SubgroupSelector sel, std::uint32_t n_max,
                                            std::size_t cap = kDefaultBallCap);
std::string distortion_to_csv(const std::vector<DistortionRow>& rows);

// Points (a, t) of the solvable Lie group G_M with a in R^d, t in R.
struct HeightPoint {
  RatVector a;
  Rat t;
};

// Two-case horocyclic estimate of distance; needs an expanding M that is
// diagonalizable with positive real eigenvalues.
double dl_distance(const GroupConfig& cfg, const HeightPoint& g, const HeightPoint& h);

}  // namespace conjlen
