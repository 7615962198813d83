#include "conjlen/groups.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <utility>

#include "conjlen/errors.hpp"
#include "group_impl.hpp"

namespace conjlen {

namespace {

constexpr std::int64_t kPowCache = 64;

std::int64_t add_exp(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw DomainError("exponent overflow");
  return r;
}

std::int64_t sub_exp(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw DomainError("exponent overflow");
  return r;
}

std::int64_t neg_exp(std::int64_t a) { return sub_exp(0, a); }

Eigen::MatrixXd to_double(const IntMatrix& a) {
  Eigen::MatrixXd m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j).get_d();
  return m;
}

std::vector<std::complex<double>> eigenvalues(const IntMatrix& a) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(to_double(a), false);
  std::vector<std::complex<double>> out;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()(i));
  return out;
}

Spectral spectral_of(const std::vector<IntMatrix>& mats, bool expanding_meaningful) {
  Spectral sp;
  if (mats.empty()) {
    sp.lambda_max = sp.lambda_min = 1.0;
    sp.r_split = true;
    return sp;
  }
  sp.lambda_max = 0.0;
  sp.lambda_min = INFINITY;
  sp.r_split = true;
  bool expanding = true;
  for (const auto& a : mats)
    for (const auto& ev : eigenvalues(a)) {
      const double mod = std::abs(ev);
      sp.lambda_max = std::max(sp.lambda_max, mod);
      sp.lambda_min = std::min(sp.lambda_min, mod);
      if (std::abs(ev.imag()) > 1e-9 * std::max(1.0, mod)) sp.r_split = false;
      if (mod <= 1.0 + 1e-9) expanding = false;
    }
  sp.expanding = expanding_meaningful && expanding;
  return sp;
}

void add_alias(GroupConfig::Impl& impl, std::string name, int index) {
  impl.aliases.emplace_back(std::move(name), index);
}

}  // namespace

GroupConfig::GroupConfig(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

std::string_view family_name(Family f) {
  switch (f) {
    case Family::bs: return "bs";
    case Family::gamma_m: return "gamma_m";
    case Family::semidirect: return "semidirect";
  }
  return "";
}

void GroupConfig::Impl::build_m_data() {
  m_pows.clear();
  m_pows.push_back(IntMatrix::identity(d));
  for (std::int64_t e = 1; e <= kPowCache; ++e) m_pows.push_back(m_pows.back() * matrix_m);
  SNFDecomposition s = snf(matrix_m);
  m_snf_u = std::move(s.u_left);
  m_snf_v = std::move(s.v_right);
  m_snf_diag.resize(d);
  for (std::size_t i = 0; i < d; ++i) m_snf_diag[i] = s.diag(i, i);
}

void GroupConfig::Impl::build_phi_data() {
  phi_pows.assign(phi.size(), {});
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const IntMatrix inv_i = inverse_unimodular(phi[i]);
    auto& cache = phi_pows[i];
    cache.resize(2 * kPowCache + 1);
    cache[kPowCache] = IntMatrix::identity(d);
    for (std::int64_t e = 1; e <= kPowCache; ++e) {
      cache[kPowCache + e] = cache[kPowCache + e - 1] * phi[i];
      cache[kPowCache - e] = cache[kPowCache - e + 1] * inv_i;
    }
  }
}

GroupConfig GroupConfig::bs(long m) {
  if (m < 2) throw ConfigError("bs requires m >= 2");
  auto impl = std::make_shared<Impl>();
  impl->family = Family::bs;
  impl->d = 1;
  impl->m = m;
  impl->matrix_m = IntMatrix{{Int(m)}};
  impl->spectral = spectral_of({impl->matrix_m}, true);
  impl->names = {"a", "b"};
  add_alias(*impl, "t", 1);
  add_alias(*impl, "a1", 0);
  impl->build_m_data();
  return GroupConfig(std::move(impl));
}

GroupConfig GroupConfig::gamma_m(IntMatrix m) {
  if (!m.square() || m.rows() == 0) throw ConfigError("matrix_m must be a nonempty square matrix");
  if (det(m) == 0) throw ConfigError("matrix_m must have nonzero determinant");
  auto impl = std::make_shared<Impl>();
  impl->family = Family::gamma_m;
  impl->d = m.rows();
  impl->matrix_m = std::move(m);
  impl->spectral = spectral_of({impl->matrix_m}, true);
  for (std::size_t i = 0; i < impl->d; ++i) impl->names.push_back("a" + std::to_string(i + 1));
  impl->names.push_back("t");
  if (impl->d == 1) add_alias(*impl, "a", 0);
  impl->build_m_data();
  return GroupConfig(std::move(impl));
}

GroupConfig GroupConfig::semidirect(std::vector<IntMatrix> phi_gens, std::size_t d) {
  if (phi_gens.empty() && d == 0) throw ConfigError("semidirect with k = 0 needs an explicit dimension");
  if (!phi_gens.empty()) {
    const std::size_t d0 = phi_gens.front().rows();
    if (d != 0 && d != d0) throw ConfigError("phi_gens dimension disagrees with d");
    d = d0;
  }
  if (d == 0) throw ConfigError("dimension must be positive");
  for (const auto& a : phi_gens) {
    if (a.rows() != d || a.cols() != d) throw ConfigError("phi_gens must all be d x d");
    if (abs(det(a)) != 1) throw ConfigError("phi_gens must have determinant +-1");
  }
  for (std::size_t i = 0; i < phi_gens.size(); ++i)
    for (std::size_t j = i + 1; j < phi_gens.size(); ++j)
      if (phi_gens[i] * phi_gens[j] != phi_gens[j] * phi_gens[i])
        throw ConfigError("phi_gens must pairwise commute");

  auto impl = std::make_shared<Impl>();
  impl->family = Family::semidirect;
  impl->d = d;
  impl->phi = std::move(phi_gens);
  impl->spectral = spectral_of(impl->phi, false);
  for (std::size_t i = 0; i < d; ++i) impl->names.push_back("a" + std::to_string(i + 1));
  for (std::size_t j = 0; j < impl->phi.size(); ++j) impl->names.push_back("t" + std::to_string(j + 1));
  if (impl->phi.size() == 1) add_alias(*impl, "t", static_cast<int>(d));
  if (d == 1) add_alias(*impl, "a", 0);
  impl->build_phi_data();
  return GroupConfig(std::move(impl));
}

Family GroupConfig::family() const { return impl_->family; }
std::size_t GroupConfig::d() const { return impl_->d; }
std::size_t GroupConfig::k() const { return impl_->family == Family::semidirect ? impl_->phi.size() : 1; }

const Int& GroupConfig::m() const {
  if (impl_->family != Family::bs) throw DomainError("m is defined for bs only");
  return impl_->m;
}

const IntMatrix& GroupConfig::matrix_m() const {
  if (impl_->family == Family::semidirect) throw DomainError("matrix_m is undefined for semidirect");
  return impl_->matrix_m;
}

const std::vector<IntMatrix>& GroupConfig::phi_gens() const { return impl_->phi; }
const Spectral& GroupConfig::spectral() const { return impl_->spectral; }
std::size_t GroupConfig::num_generators() const { return impl_->names.size(); }
const std::vector<std::string>& GroupConfig::generator_names() const { return impl_->names; }

void GroupConfig::set_generator_names(std::vector<std::string> names) {
  if (names.size() != impl_->names.size()) throw ConfigError("generator_names has the wrong length");
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto& n = names[i];
    if (n.empty() || n.find_first_of(" \t\n^{}()") != std::string::npos)
      throw ConfigError("invalid generator name '" + n + "'");
    if (std::count(names.begin(), names.end(), n) > 1) throw ConfigError("duplicate generator name '" + n + "'");
  }
  auto copy = std::make_shared<Impl>(*impl_);
  copy->names = std::move(names);
  copy->aliases.clear();
  impl_ = std::move(copy);
}

int GroupConfig::generator_index(std::string_view name) const {
  for (std::size_t i = 0; i < impl_->names.size(); ++i)
    if (impl_->names[i] == name) return static_cast<int>(i);
  for (const auto& [alias, idx] : impl_->aliases)
    if (alias == name) return idx;
  return -1;
}

IntVector GroupConfig::m_apply(std::uint64_t e, const IntVector& x) const {
  IntVector y = x;
  while (e > static_cast<std::uint64_t>(kPowCache)) {
    y = impl_->m_pows[kPowCache] * y;
    e -= kPowCache;
  }
  if (e == 0) return y;
  if (impl_->d == 1) {
    IntVector r{y[0]};
    mpz_class f = impl_->m_pows[e](0, 0);
    r[0] *= f;
    return r;
  }
  return impl_->m_pows[e] * y;
}

bool GroupConfig::m_divide(const IntVector& w, IntVector& z) const {
  if (impl_->d == 1) {
    const Int& m = impl_->matrix_m(0, 0);
    if (!mpz_divisible_p(w[0].get_mpz_t(), m.get_mpz_t())) return false;
    z.resize(1);
    mpz_divexact(z[0].get_mpz_t(), w[0].get_mpz_t(), m.get_mpz_t());
    return true;
  }
  IntVector c = impl_->m_snf_u * w;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!mpz_divisible_p(c[i].get_mpz_t(), impl_->m_snf_diag[i].get_mpz_t())) return false;
    mpz_divexact(c[i].get_mpz_t(), c[i].get_mpz_t(), impl_->m_snf_diag[i].get_mpz_t());
  }
  z = impl_->m_snf_v * c;
  return true;
}

IntVector GroupConfig::phi_apply(const std::vector<std::int64_t>& y, const IntVector& x) const {
  if (y.size() != impl_->phi.size()) throw DomainError("phi_apply: wrong quotient dimension");
  IntVector r = x;
  for (std::size_t i = 0; i < y.size(); ++i) {
    std::int64_t e = y[i];
    const auto& cache = impl_->phi_pows[i];
    while (e > kPowCache) {
      r = cache[2 * kPowCache] * r;
      e -= kPowCache;
    }
    while (e < -kPowCache) {
      r = cache[0] * r;
      e += kPowCache;
    }
    if (e != 0) r = cache[kPowCache + e] * r;
  }
  return r;
}

IntMatrix GroupConfig::phi_matrix(const std::vector<std::int64_t>& y) const {
  if (y.size() != impl_->phi.size()) throw DomainError("phi_matrix: wrong quotient dimension");
  IntMatrix r = IntMatrix::identity(impl_->d);
  for (std::size_t i = 0; i < y.size(); ++i) {
    std::int64_t e = y[i];
    const auto& cache = impl_->phi_pows[i];
    while (e > kPowCache) {
      r = r * cache[2 * kPowCache];
      e -= kPowCache;
    }
    while (e < -kPowCache) {
      r = r * cache[0];
      e += kPowCache;
    }
    if (e != 0) r = r * cache[kPowCache + e];
  }
  return r;
}

GmElement gm_normalize(const GroupConfig& cfg, std::int64_t p, IntVector w, std::int64_t s) {
  if (p < 0) throw DomainError("gm_normalize: p must be nonnegative");
  if (w.size() != cfg.d()) throw DomainError("gm_normalize: wrong dimension");
  if (is_zero(w)) return {0, std::move(w), s};
  IntVector z;
  while (p > 0 && cfg.m_divide(w, z)) {
    w.swap(z);
    --p;
  }
  return {p, std::move(w), s};
}

GmElement gm_mul(const GroupConfig& cfg, const GmElement& a, const GmElement& b) {
  const std::int64_t p = std::max<std::int64_t>({a.p, sub_exp(b.p, a.s), 0});
  IntVector w = cfg.m_apply(static_cast<std::uint64_t>(p - a.p), a.w);
  const std::int64_t eb = add_exp(sub_exp(p, b.p), a.s);
  if (!is_zero(b.w)) w = w + cfg.m_apply(static_cast<std::uint64_t>(eb), b.w);
  return gm_normalize(cfg, p, std::move(w), add_exp(a.s, b.s));
}

GmElement gm_inv(const GroupConfig& cfg, const GmElement& a) {
  const std::int64_t ps = add_exp(a.p, a.s);
  const std::int64_t p = std::max<std::int64_t>(ps, 0);
  IntVector w = -cfg.m_apply(static_cast<std::uint64_t>(p - ps), a.w);
  return gm_normalize(cfg, p, std::move(w), neg_exp(a.s));
}

SdElement sd_mul(const GroupConfig& cfg, const SdElement& a, const SdElement& b) {
  SdElement r;
  r.x = is_zero(b.x) ? a.x : a.x + cfg.phi_apply(a.y, b.x);
  r.y.resize(a.y.size());
  for (std::size_t i = 0; i < a.y.size(); ++i) r.y[i] = add_exp(a.y[i], b.y[i]);
  return r;
}

SdElement sd_inv(const GroupConfig& cfg, const SdElement& a) {
  SdElement r;
  r.y.resize(a.y.size());
  for (std::size_t i = 0; i < a.y.size(); ++i) r.y[i] = neg_exp(a.y[i]);
  r.x = -cfg.phi_apply(r.y, a.x);
  return r;
}

Element identity(const GroupConfig& cfg) {
  if (cfg.family() == Family::semidirect) return SdElement{zero_vector(cfg.d()), std::vector<std::int64_t>(cfg.k(), 0)};
  return GmElement{0, zero_vector(cfg.d()), 0};
}

Element generator(const GroupConfig& cfg, const Letter& l) {
  if (l.gen >= cfg.num_generators()) throw DomainError("generator index out of range");
  Element e = identity(cfg);
  const std::size_t d = cfg.d();
  if (auto* g = std::get_if<GmElement>(&e)) {
    if (l.gen < d)
      g->w[l.gen] = l.sign;
    else
      g->s = l.sign;
  } else {
    auto& sd = std::get<SdElement>(e);
    if (l.gen < d)
      sd.x[l.gen] = l.sign;
    else
      sd.y[l.gen - d] = l.sign;
  }
  return e;
}

Element mul(const GroupConfig& cfg, const Element& a, const Element& b) {
  if (cfg.family() == Family::semidirect) return sd_mul(cfg, std::get<SdElement>(a), std::get<SdElement>(b));
  return gm_mul(cfg, std::get<GmElement>(a), std::get<GmElement>(b));
}

Element inv(const GroupConfig& cfg, const Element& a) {
  if (cfg.family() == Family::semidirect) return sd_inv(cfg, std::get<SdElement>(a));
  return gm_inv(cfg, std::get<GmElement>(a));
}

Element conj(const GroupConfig& cfg, const Element& g, const Element& u) {
  return mul(cfg, inv(cfg, g), mul(cfg, u, g));
}

Element eval_word(const GroupConfig& cfg, const Word& w) {
  Element e = identity(cfg);
  for (const auto& l : w) e = mul(cfg, e, generator(cfg, l));
  return e;
}

bool is_identity(const Element& e) {
  if (const auto* g = std::get_if<GmElement>(&e)) return g->s == 0 && is_zero(g->w);
  const auto& sd = std::get<SdElement>(e);
  return is_zero(sd.x) && std::all_of(sd.y.begin(), sd.y.end(), [](std::int64_t v) { return v == 0; });
}

std::vector<std::int64_t> quotient_part(const Element& e) {
  if (const auto* g = std::get_if<GmElement>(&e)) return {g->s};
  return std::get<SdElement>(e).y;
}

}  // namespace conjlen
