#pragma once

// Breadth-first Cayley balls: the exact word-length oracle.

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "conjlen/groups.hpp"

namespace conjlen {

inline constexpr std::size_t kDefaultBallCap = 5'000'000;

// Elements are stored in BFS order: level by level, and inside a level in
// the order (parent index, generator order a1^+1, a1^-1, a2^+1, ...).
// Each element g != e records the last letter s of a geodesic, i.e. g = h s
// with |h| = |g| - 1.
class Ball {
 public:
  explicit Ball(GroupConfig cfg);
  Ball(Ball&&) noexcept = default;
  Ball& operator=(Ball&&) noexcept = default;
  Ball(const Ball&) = delete;
  Ball& operator=(const Ball&) = delete;

  const GroupConfig& config() const noexcept { return cfg_; }
  std::uint32_t radius() const noexcept { return static_cast<std::uint32_t>(level_offsets_.size() - 2); }
  std::size_t size() const noexcept { return keys_.size(); }

  // Grows the ball to `radius`.  If the cap is exceeded the partially built
  // level is discarded, the ball keeps its previous radius, and CapExceeded
  // is thrown.
  void extend(std::uint32_t radius, std::size_t cap = kDefaultBallCap);

  std::optional<std::uint32_t> find(const Element& g) const;
  std::optional<std::uint32_t> find_key(std::string_view key) const;
  std::uint32_t length(std::uint32_t index) const { return lengths_[index]; }
  std::optional<Letter> last_letter(std::uint32_t index) const;
  Element element(std::uint32_t index) const;
  std::string_view key(std::uint32_t index) const { return keys_[index]; }
  Word geodesic(std::uint32_t index) const;

  // Elements of length exactly r occupy [level_begin(r), level_end(r)).
  std::size_t level_begin(std::uint32_t r) const { return level_offsets_.at(r); }
  std::size_t level_end(std::uint32_t r) const { return level_offsets_.at(r + 1); }

 private:
  std::uint32_t insert(std::string key, std::uint16_t length, std::int16_t pred);

  GroupConfig cfg_;
  std::vector<Element> gens_;
  std::deque<std::string> keys_;
  std::unordered_map<std::string_view, std::uint32_t> index_;
  std::vector<std::uint16_t> lengths_;
  std::vector<std::int16_t> pred_;  // letter code 2*gen + (sign < 0), -1 for identity
  std::vector<std::size_t> level_offsets_;
};

Ball bfs_ball(const GroupConfig& cfg, std::uint32_t radius, std::size_t cap = kDefaultBallCap);

// Throws BeyondRadius when g is not in the ball.
std::uint32_t word_length(const Ball& ball, const Element& g);
Word geodesic_word(const Ball& ball, const Element& g);

// CSV with header "element,length", rows in BFS order.
std::string ball_to_csv(const Ball& ball);

// Letter enumeration order used by the BFS.
std::vector<Letter> generator_letters(const GroupConfig& cfg);
inline int letter_code(const Letter& l) { return static_cast<int>(2 * l.gen + (l.sign < 0 ? 1 : 0)); }
inline Letter letter_from_code(int code) {
  return Letter{static_cast<std::uint32_t>(code / 2), code % 2 == 0 ? 1 : -1};
}

}  // namespace conjlen
