#pragma once

// Brute-force conjugator search over a Cayley ball.

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "conjlen/ball.hpp"
#include "conjlen/groups.hpp"

namespace conjlen {

struct MinConjugator {
  Element g;
  std::uint32_t length = 0;
  std::uint32_t index = 0;  // position in the ball
};

// First g in BFS order with u g = g v; absent when the ball has none.
std::optional<MinConjugator> min_conjugator(const Ball& ball, const Element& u, const Element& v);

// Shortest g with g^-1 u g = v, by bidirectional breadth-first search in
// the graph on conjugates of u whose edges are x -> s^-1 x s for generators
// s.  Its distances are exactly minimal conjugator lengths.  Absent when no
// conjugator has length <= max_length; CapExceeded when more than cap
// conjugates would be stored.
struct ShortestConjugator {
  Word word;
  Element g;
  std::uint32_t length = 0;
};
std::optional<ShortestConjugator> shortest_conjugator(const GroupConfig& cfg, const Element& u, const Element& v,
                                                      std::uint32_t max_length, std::size_t cap);

// Scans a ball once per u, reporting for every target v the first ball
// index g (BFS order) with g^-1 u g = v.  Semidirect groups with d <= 4 and
// machine-sized coordinates use an overflow-checked int64 path; everything
// else, and any overflow, goes through exact arithmetic.
class ConjugatorScanner {
 public:
  explicit ConjugatorScanner(const Ball& ball);
  ~ConjugatorScanner();
  ConjugatorScanner(const ConjugatorScanner&) = delete;
  ConjugatorScanner& operator=(const ConjugatorScanner&) = delete;

  std::vector<std::optional<std::uint32_t>> scan(const Element& u, const std::vector<Element>& targets) const;
  bool fast_path() const;

 private:
  struct Flat;
  const Ball& ball_;
  std::unique_ptr<Flat> flat_;

  std::vector<std::optional<std::uint32_t>> scan_exact(const Element& u, const std::vector<Element>& targets) const;
  std::optional<std::vector<std::optional<std::uint32_t>>> scan_fast(const SdElement& u,
                                                                     const std::vector<Element>& targets) const;
};

}  // namespace conjlen
