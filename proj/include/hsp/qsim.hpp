#pragma once

#include <span>
#include <unordered_map>
#include <vector>

#include <boost/rational.hpp>

#include "hsp/oracle.hpp"
#include "hsp/rng.hpp"

namespace hsp {

using Tuple = std::vector<i64>;
using Rational = boost::rational<i64>;

/// One register |c>, c in Z_modulus, standing for generator^c.
struct Register {
  i64 modulus;
  GroupElement generator;
};

/// Registers c_1..c_k; a tuple maps to g_1^{c_1} g_2^{c_2} ... g_k^{c_k}.
using Domain = std::vector<Register>;

inline constexpr i64 kDomainLimit = i64{1} << 20;
inline constexpr i64 kDenseLimit = i64{1} << 14;

std::vector<i64> dims_of(const Domain& domain);
/// Product of dims; throws Errc::TooLarge past `limit`.
i64 domain_size(std::span<const i64> dims, i64 limit = kDomainLimit);
/// Mixed radix, last register fastest.
u64 pack_tuple(std::span<const i64> dims, std::span<const i64> tuple);
Tuple unpack_tuple(std::span<const i64> dims, u64 index);
GroupElement embed(const SemidirectLaw& law, const Domain& domain, std::span<const i64> tuple);

/// Uniform-amplitude support of the register state left after the label
/// register is measured. Points are packed tuples, sorted.
struct CosetSupport {
  std::vector<i64> dims;
  std::vector<u64> points;

  std::vector<Tuple> tuples() const;
};

/// Exact outcome distribution over packed outcome tuples (sorted).
struct OutcomeDistribution {
  std::vector<i64> dims;
  std::vector<u64> outcomes;
  std::vector<Rational> probabilities;

  Rational total() const;
  Rational probability(std::span<const i64> outcome) const;
};

/// Floating-point distribution indexed by packed outcome.
struct DenseDistribution {
  std::vector<i64> dims;
  std::vector<double> probabilities;

  double total() const;
};

/// Prepares sum_g |g>|f(g)> over a domain. The classical simulation evaluates
/// f on every domain point once (charged as simulation cost); each sample()
/// is one measurement of the label register and is charged as one query.
class CosetSampler {
 public:
  CosetSampler(CosetOracle& oracle, Domain domain);

  const Domain& domain() const noexcept { return domain_; }
  const std::vector<i64>& dims() const noexcept { return dims_; }
  std::size_t size() const noexcept { return point_class_.size(); }

  CosetSupport sample(Rng& rng);

  /// Every label class with its weight |class| / |domain|.
  std::size_t class_count() const noexcept { return classes_.size(); }
  CosetSupport support_of_class(std::size_t k) const;
  Rational class_weight(std::size_t k) const;

 private:
  CosetOracle* oracle_;
  Domain domain_;
  std::vector<i64> dims_;
  std::vector<std::size_t> point_class_;
  std::vector<std::vector<u64>> classes_;
  std::unordered_map<Label, std::size_t, LabelHash> class_of_label_;
};

CosetSupport coset_sample(CosetOracle& oracle, const Domain& domain, Rng& rng);

/// Generators of the subgroup K with support = s0 + K. Throws Errc::NotACoset.
std::vector<Tuple> coset_generators(const CosetSupport& support);

/// Value of the character c at h as an exponent of the root of unity of order
/// L = lcm(dims): sum_i c_i h_i (L / n_i) mod L.
i64 character_phase(std::span<const i64> dims, std::span<const i64> c, std::span<const i64> h);

/// Exact distribution of measuring (F_{n_1} x ... x F_{n_k}) applied to the
/// uniform superposition over `support`. For support s0 + K the phase sum
/// over K vanishes off the annihilator and has modulus |K| on it, so the
/// distribution is uniform with mass |K| / prod(n_i) on K^perp.
OutcomeDistribution fourier_distribution(const CosetSupport& support, std::span<const i64> dims);

Tuple sample_outcome(const OutcomeDistribution& dist, Rng& rng);
Tuple fourier_sample(const CosetSupport& support, std::span<const i64> dims, Rng& rng);

/// sum over label classes of weight * fourier_distribution(class): the exact
/// outcome law of one coset_sample + fourier_sample round.
OutcomeDistribution structured_mixture(const CosetSampler& sampler);

/// Independent cross-check: full state vector in double precision, dense
/// DFT matrices applied register by register, label register marginalized.
DenseDistribution dense_reference_distribution(CosetOracle& oracle, const Domain& domain,
                                               std::span<const i64> dims);

double total_variation(const OutcomeDistribution& exact, const DenseDistribution& dense);

/// Generators of {h : character_phase(c, h) = 0 for every c}, computed by
/// Smith normal form over Z/p^e. All dims must be powers of one prime.
std::vector<Tuple> annihilator(std::span<const i64> dims, std::span<const Tuple> characters);

struct AbelianHspOptions {
  int kappa = 10;
  int max_rounds = 20;
};

struct AbelianHspResult {
  /// Generators of the hidden subgroup of the register group.
  std::vector<Tuple> generators;
  std::vector<GroupElement> embedded;
  std::vector<Tuple> characters;
  int rounds = 0;
};

/// Abelian HSP on the register group of `domain`: ceil(log2 |domain|) + kappa
/// Fourier samples per round, annihilator, then oracle verification of every
/// returned generator. Throws Errc::RetriesExhausted after max_rounds.
AbelianHspResult abelian_hsp(CosetOracle& oracle, const Domain& domain, Rng& rng,
                             AbelianHspOptions options = {});

}  // namespace hsp
