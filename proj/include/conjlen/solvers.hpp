#pragma once

// Conjugacy solvers.  Witnesses g always satisfy g^-1 u g = v.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "conjlen/groups.hpp"
#include "conjlen/linalg.hpp"

namespace conjlen {

struct SolverCaps {
  // Largest enumeration (box, residue set or orbit) a solver may walk.
  std::size_t enumeration_cap = 2'000'000;
  // Turn an uncertified negative into HypothesisViolated when the group
  // lacks the expanding hypothesis.
  bool require_certified = false;
};

// u + phi(gamma) = gamma + v, i.e. (Id - phi) gamma = u - v.
struct TwistedWitness {
  IntVector gamma;
  std::vector<IntVector> kernel_basis;
};

std::optional<TwistedWitness> twisted_conj_abelian(const IntVector& u, const IntVector& v, const IntMatrix& phi);

// Minimal l1 norm element of gamma + span_Z(kernel_basis), ties broken
// lexicographically.  Throws CapExceeded when the search box is too large.
IntVector minimal_twisted_witness(const TwistedWitness& w, std::size_t cap = 2'000'000);

// y with phi(y) w = u, found by the eigen-log guess plus exact verification,
// then an exhaustive l1 box search.  Absent means certified "no";
// SearchExhausted when the box could not be closed.
std::optional<std::vector<std::int64_t>> restricted_conj_semidirect(const GroupConfig& cfg, const IntVector& u,
                                                                    const IntVector& w,
                                                                    const SolverCaps& caps = {});

// Lambda = {b in Z^k : phi(b) u = u in Z^d / (Id - phi(y)) Z^d}.
struct StabilizerLattice {
  IntMatrix basis;  // Hermite rows, k x k upper triangular
  Int index;
};

StabilizerLattice stabilizer_lattice(const GroupConfig& cfg, const IntVector& u, const std::vector<std::int64_t>& y,
                                     std::size_t cap = 2'000'000);
// l1 covering radius of Lambda in Z^k.
Int covering_radius(const StabilizerLattice& lattice, std::size_t cap = 2'000'000);
Rat rho(const GroupConfig& cfg, const IntVector& u, const std::vector<std::int64_t>& y, std::size_t cap = 2'000'000);

enum class CaseTaken { restricted, twisted_same_quotient, quotient_shift };
std::string_view case_name(CaseTaken c);

struct ConjReport {
  bool conjugate = false;
  std::optional<Element> witness;
  std::optional<std::uint32_t> witness_length;
  CaseTaken case_taken = CaseTaken::restricted;
  bool search_exhausted = false;
};

ConjReport conj_semidirect(const GroupConfig& cfg, const SdElement& u, const SdElement& v, const SolverCaps& caps = {});
ConjReport conj_gamma_m(const GroupConfig& cfg, const GmElement& u, const GmElement& v, const SolverCaps& caps = {});
ConjReport conj_solve(const GroupConfig& cfg, const Element& u, const Element& v, const SolverCaps& caps = {});

// Membership of x in A = union_p M^-p Z^d via the orbit of den*x modulo den.
// Returns the least p with M^p x integral.
std::optional<std::int64_t> ascending_union_level(const GroupConfig& cfg, const RatVector& x,
                                                  std::size_t cap = 2'000'000);

}  // namespace conjlen
