#include "conjlen/ball.hpp"

#include <algorithm>
#include <limits>

#include "conjlen/errors.hpp"
#include "conjlen/io.hpp"

namespace conjlen {

std::vector<Letter> generator_letters(const GroupConfig& cfg) {
  std::vector<Letter> out;
  for (std::uint32_t g = 0; g < cfg.num_generators(); ++g) {
    out.push_back({g, 1});
    out.push_back({g, -1});
  }
  return out;
}

Ball::Ball(GroupConfig cfg) : cfg_(std::move(cfg)) {
  for (const auto& l : generator_letters(cfg_)) gens_.push_back(generator(cfg_, l));
  insert(encode_key(identity(cfg_)), 0, -1);
  level_offsets_ = {0, 1};
}

std::uint32_t Ball::insert(std::string key, std::uint16_t length, std::int16_t pred) {
  const auto idx = static_cast<std::uint32_t>(keys_.size());
  keys_.push_back(std::move(key));
  index_.emplace(keys_.back(), idx);
  lengths_.push_back(length);
  pred_.push_back(pred);
  return idx;
}

void Ball::extend(std::uint32_t radius, std::size_t cap) {
  if (radius > std::numeric_limits<std::uint16_t>::max() - 1) throw DomainError("ball radius too large");
  while (this->radius() < radius) {
    const std::uint32_t r = this->radius();
    const std::size_t begin = level_offsets_[r];
    const std::size_t end = level_offsets_[r + 1];
    try {
      for (std::size_t i = begin; i < end; ++i) {
        const Element g = element(static_cast<std::uint32_t>(i));
        const int back = pred_[i] < 0 ? -1 : (pred_[i] ^ 1);
        for (std::size_t c = 0; c < gens_.size(); ++c) {
          if (static_cast<int>(c) == back) continue;
          std::string key = encode_key(mul(cfg_, g, gens_[c]));
          if (index_.count(key)) continue;
          if (keys_.size() >= cap) throw CapExceeded(cap);
          insert(std::move(key), static_cast<std::uint16_t>(r + 1), static_cast<std::int16_t>(c));
        }
      }
    } catch (...) {
      while (keys_.size() > end) {
        index_.erase(keys_.back());
        keys_.pop_back();
        lengths_.pop_back();
        pred_.pop_back();
      }
      throw;
    }
    level_offsets_.push_back(keys_.size());
  }
}

std::optional<std::uint32_t> Ball::find(const Element& g) const { return find_key(encode_key(g)); }

std::optional<std::uint32_t> Ball::find_key(std::string_view key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<Letter> Ball::last_letter(std::uint32_t index) const {
  if (pred_[index] < 0) return std::nullopt;
  return letter_from_code(pred_[index]);
}

Element Ball::element(std::uint32_t index) const { return decode_key(cfg_, keys_[index]); }

Word Ball::geodesic(std::uint32_t index) const {
  Word w;
  Element g = element(index);
  std::uint32_t idx = index;
  while (pred_[idx] >= 0) {
    const int code = pred_[idx];
    w.push_back(letter_from_code(code));
    g = mul(cfg_, g, gens_[static_cast<std::size_t>(code ^ 1)]);
    const auto next = find(g);
    if (!next || lengths_[*next] + 1 != lengths_[idx]) throw Error("ball predecessor chain is inconsistent");
    idx = *next;
  }
  std::reverse(w.begin(), w.end());
  return w;
}

Ball bfs_ball(const GroupConfig& cfg, std::uint32_t radius, std::size_t cap) {
  Ball b(cfg);
  b.extend(radius, cap);
  return b;
}

std::uint32_t word_length(const Ball& ball, const Element& g) {
  const auto idx = ball.find(g);
  if (!idx) throw BeyondRadius();
  return ball.length(*idx);
}

Word geodesic_word(const Ball& ball, const Element& g) {
  const auto idx = ball.find(g);
  if (!idx) throw BeyondRadius();
  return ball.geodesic(*idx);
}

std::string ball_to_csv(const Ball& ball) {
  std::string out = "element,length\n";
  for (std::uint32_t i = 0; i < ball.size(); ++i) {
    out += csv_quote(to_string(ball.element(i)));
    out += ',';
    out += std::to_string(ball.length(i));
    out += '\n';
  }
  return out;
}

}  // namespace conjlen
