#pragma once

// Empirical conjugacy length measurements and bound fitting.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "conjlen/ball.hpp"
#include "conjlen/groups.hpp"
#include "conjlen/solvers.hpp"

namespace conjlen {

struct ClfRow {
  std::uint32_t n = 0;
  std::uint32_t clf = 0;
  Element u;
  Element v;
  Element conjugator;  // g^-1 u g = v
  Word u_word;
  Word v_word;
  Word conjugator_word;
  bool certified = true;
};

struct ClfOptions {
  std::uint32_t n_max = 0;
  std::uint32_t ball_radius = 0;        // raised to n_max if smaller
  std::uint32_t conjugator_radius = 0;  // longest conjugator searched; 0 means 4 * n_max
  std::size_t cap = kDefaultBallCap;
  SolverCaps solver;
};

struct ClfTable {
  std::vector<ClfRow> rows;
  std::uint32_t conjugator_radius_reached = 0;
  std::size_t solver_calls = 0;
};

ClfTable empirical_clf(const GroupConfig& cfg, const ClfOptions& opts);
std::string clf_to_csv(const GroupConfig& cfg, const ClfTable& table);

// One value per n with an optional witness description.
struct SeriesRow {
  std::uint32_t n = 0;
  Int value;
  bool certified = true;
  std::string u;
  std::string v;
  std::string conjugator;
};

// Max over u ~_phi v with |u|_1 + |v|_1 <= n of the least |gamma|_1.
std::vector<SeriesRow> empirical_tclf(const IntMatrix& phi, std::uint32_t n_max, std::size_t cap = 2'000'000);

// Restricted conjugacy of (a^r, a^s), 0 < |r|, |s| <= r_max, in BS(1,m),
// tabulated against n = |a^r| + |a^s|.  Only rows n = 2 .. n_complete are
// emitted, where every pair with |u| + |v| <= n has |r|, |s| <= r_max.
std::vector<SeriesRow> empirical_rclf_bs(long m, std::uint32_t r_max, std::size_t cap = kDefaultBallCap);

std::string series_to_csv(const std::vector<SeriesRow>& rows, const std::string& value_name);

enum class FitModel { linear, exponential };

struct FitResult {
  FitModel model = FitModel::linear;
  double constant = 0.0;
  double max_residual = 0.0;  // max over rows of bound(n) - value
};

struct FitPoint {
  std::uint32_t n = 0;
  double value = 0.0;
  bool certified = true;
};

// Least constant with value <= C n (linear) or value <= C^n (exponential)
// on every certified row.  Throws EmptyTable when no row is certified.
FitResult fit_bound(const std::vector<FitPoint>& rows, FitModel model);
FitResult fit_bound(const ClfTable& table, FitModel model);
FitResult fit_bound(const std::vector<SeriesRow>& rows, FitModel model);

std::string_view model_name(FitModel m);

}  // namespace conjlen
