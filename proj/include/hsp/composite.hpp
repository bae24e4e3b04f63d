#pragma once

#include <span>
#include <vector>

#include "hsp/oracle.hpp"
#include "hsp/solver.hpp"

namespace hsp {

inline constexpr i64 kCompositeFactorBound = 10'000'000;

/// Z_N x|_phi Z_{p^2}, phi(1) = multiplication by alpha.
struct CompositeParams {
  i64 N = 0;
  i64 p = 0;
  i64 alpha = 1;
  /// p^{r_1} first, remaining prime powers ascending.
  std::vector<PrimePower> factorization;
  SemidirectLaw law;
};

/// Validates N = p^{r_1} q_2^{r_2} ... with r_1 > 4, p not dividing q_i - 1,
/// gcd(alpha, N) = 1 and alpha^{p^2} = 1 mod N. Throws Errc::PreconditionViolated.
CompositeParams make_composite(i64 N, i64 p, i64 alpha);

/// Z_N x| Z_{p^2} = (Z_{p^{r_1}} x|_psi Z_{p^2}) x Z_{q_2^{r_2}} x ... via CRT
/// on the first coordinate.
struct FactorDecomposition {
  GroupParams semidirect_factor;
  std::vector<i64> abelian_moduli;
  /// p^{r_1}, then the abelian moduli.
  std::vector<i64> moduli;
  i64 N = 0;

  std::vector<i64> to_factors(i64 a) const;
  i64 from_factors(std::span<const i64> residues) const;

  GroupElement semidirect_part(const GroupElement& g) const;
  i64 abelian_part(std::size_t k, const GroupElement& g) const;
  GroupElement embed_semidirect(const GroupElement& g) const;
  GroupElement embed_abelian(std::size_t k, i64 a) const;
  /// Law of the k-th cyclic factor, as Z_{q^s} x| Z_1.
  SemidirectLaw abelian_law(std::size_t k) const;
};

/// Throws Errc::PreconditionViolated if alpha is not 1 modulo every abelian
/// factor (impossible under the make_composite hypotheses, checked anyway).
FactorDecomposition decompose(const CompositeParams& cp);

struct AbelianFactorResult {
  i64 modulus = 0;
  /// The hidden subgroup of Z_modulus is <generator>, generator | modulus.
  i64 generator = 0;
  i64 order = 0;
  int rounds = 0;
};

struct CompositeReport {
  SolveReport semidirect;
  std::vector<AbelianFactorResult> abelian;
  /// Generators of H in Z_N x| Z_{p^2}.
  std::vector<GroupElement> generators;
  u64 oracle_queries = 0;
  u64 simulation_cost = 0;
  u64 seed = 0;
  bool verified = false;
};

/// Solves each factor through the restricted oracle and recombines; H is the
/// internal direct product of its intersections with the factors.
CompositeReport solve_composite(const CompositeParams& cp, CosetOracle& oracle, u64 seed,
                                SolveOptions options = {});

}  // namespace hsp
