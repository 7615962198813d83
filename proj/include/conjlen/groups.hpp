#pragma once

// Group families, elements, exact multiplication and word evaluation.
//
// Gamma_M elements are triples (p, w, s) denoting (M^-p w) t^s with the
// minimality rule p = 0 or w not in M Z^d.  Semidirect elements are pairs
// (x, y) in Z^d x Z^k with (x1,y1)(x2,y2) = (x1 + phi(y1) x2, y1 + y2).

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "conjlen/linalg.hpp"

namespace conjlen {

enum class Family { bs, gamma_m, semidirect };

std::string_view family_name(Family f);

struct Spectral {
  double lambda_max = 0.0;  // largest eigenvalue modulus
  double lambda_min = 0.0;  // smallest eigenvalue modulus
  bool expanding = false;   // every modulus exceeds 1 + 1e-9
  bool r_split = false;     // every eigenvalue real
};

struct GmElement {
  std::int64_t p = 0;
  IntVector w;
  std::int64_t s = 0;

  friend bool operator==(const GmElement&, const GmElement&) = default;
};

struct SdElement {
  IntVector x;
  std::vector<std::int64_t> y;

  friend bool operator==(const SdElement&, const SdElement&) = default;
};

using Element = std::variant<GmElement, SdElement>;

struct Letter {
  std::uint32_t gen = 0;
  int sign = 1;  // +1 or -1

  friend bool operator==(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

class GroupConfig {
 public:
  static GroupConfig bs(long m);
  static GroupConfig gamma_m(IntMatrix m);
  // k = 0 gives the free abelian group Z^d.
  static GroupConfig semidirect(std::vector<IntMatrix> phi_gens, std::size_t d = 0);

  Family family() const;
  std::size_t d() const;
  // Rank of the abelian quotient; 1 for bs and gamma_m.
  std::size_t k() const;
  // bs only.
  const Int& m() const;
  // bs and gamma_m.
  const IntMatrix& matrix_m() const;
  const std::vector<IntMatrix>& phi_gens() const;
  const Spectral& spectral() const;

  std::size_t num_generators() const;
  const std::vector<std::string>& generator_names() const;
  void set_generator_names(std::vector<std::string> names);
  // Index of a generator name or accepted alias; -1 when unknown.
  int generator_index(std::string_view name) const;

  // M^e x for e >= 0.
  IntVector m_apply(std::uint64_t e, const IntVector& x) const;
  // M z = w solved exactly; false when w is not in M Z^d.
  bool m_divide(const IntVector& w, IntVector& z) const;
  // phi(y) x = prod_i phi_i^{y_i} x.
  IntVector phi_apply(const std::vector<std::int64_t>& y, const IntVector& x) const;
  IntMatrix phi_matrix(const std::vector<std::int64_t>& y) const;

  struct Impl;

 private:
  explicit GroupConfig(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

GmElement gm_normalize(const GroupConfig& cfg, std::int64_t p, IntVector w, std::int64_t s);
GmElement gm_mul(const GroupConfig& cfg, const GmElement& a, const GmElement& b);
GmElement gm_inv(const GroupConfig& cfg, const GmElement& a);
SdElement sd_mul(const GroupConfig& cfg, const SdElement& a, const SdElement& b);
SdElement sd_inv(const GroupConfig& cfg, const SdElement& a);

Element identity(const GroupConfig& cfg);
Element generator(const GroupConfig& cfg, const Letter& l);
Element mul(const GroupConfig& cfg, const Element& a, const Element& b);
Element inv(const GroupConfig& cfg, const Element& a);
// g^-1 u g
Element conj(const GroupConfig& cfg, const Element& g, const Element& u);
Element eval_word(const GroupConfig& cfg, const Word& w);
bool is_identity(const Element& e);

// The image in the abelian quotient coordinate: s for Gamma_M, y for
// semidirect products.
std::vector<std::int64_t> quotient_part(const Element& e);

// "name" / "name^k" / "name^{k}" tokens separated by whitespace.
Word parse_word(const GroupConfig& cfg, std::string_view text);
std::string word_to_string(const GroupConfig& cfg, const Word& w);
Word inverse_word(const Word& w);
// Freely reduced word spelling the canonical form:
// t^-p a^w t^(p+s) for Gamma_M, a^x t^y for semidirect.
Word normal_form_word(const GroupConfig& cfg, const Element& e);

// "(p,(w1,...),s)" or "((x1,...),(y1,...))".
std::string to_string(const Element& e);
Element parse_element(const GroupConfig& cfg, std::string_view text);

// Compact, collision-free binary key of a canonical element.
std::string encode_key(const Element& e);
Element decode_key(const GroupConfig& cfg, std::string_view key);

}  // namespace conjlen
