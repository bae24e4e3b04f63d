#include "hsp/composite.hpp"

#include <algorithm>
#include <numeric>

namespace hsp {

namespace {

[[noreturn]] void violated(const std::string& why) { throw Error(Errc::PreconditionViolated, why); }

}  // namespace

CompositeParams make_composite(i64 N, i64 p, i64 alpha) {
  if (N < 2 || N > kCompositeFactorBound) violated("N must lie in [2, 10^7]");
  if (p < 3 || !is_prime(p)) throw Error(Errc::InvalidPrime, "p must be an odd prime");
  auto factors = factorize(N);
  auto own = std::find_if(factors.begin(), factors.end(), [p](const PrimePower& f) { return f.prime == p; });
  if (own == factors.end()) violated("p must divide N");
  if (own->exponent <= 4) violated("the p-part of N needs exponent r_1 > 4");
  std::rotate(factors.begin(), own, own + 1);
  for (std::size_t k = 1; k < factors.size(); ++k) {
    if ((factors[k].prime - 1) % p == 0) {
      violated(std::to_string(p) + " divides " + std::to_string(factors[k].prime) + " - 1");
    }
  }
  const i64 a = reduce(alpha, N);
  if (std::gcd(a, N) != 1) violated("alpha must be a unit mod N");
  if (mod_pow(a, static_cast<u64>(p * p), Modulus(N)) != 1) violated("alpha^{p^2} != 1 mod N");
  return {N, p, a, std::move(factors), make_law(N, p * p, a)};
}

std::vector<i64> FactorDecomposition::to_factors(i64 a) const {
  std::vector<i64> out;
  out.reserve(moduli.size());
  for (i64 m : moduli) out.push_back(reduce(a, m));
  return out;
}

i64 FactorDecomposition::from_factors(std::span<const i64> residues) const {
  if (residues.size() != moduli.size()) throw Error(Errc::DimensionMismatch, "residue count");
  std::vector<Residue> rs;
  for (std::size_t k = 0; k < moduli.size(); ++k) rs.push_back({residues[k], moduli[k]});
  return crt_combine(rs);
}

GroupElement FactorDecomposition::semidirect_part(const GroupElement& g) const {
  return {reduce(g.a, moduli.front()), g.b};
}

i64 FactorDecomposition::abelian_part(std::size_t k, const GroupElement& g) const {
  return reduce(g.a, abelian_moduli.at(k));
}

GroupElement FactorDecomposition::embed_semidirect(const GroupElement& g) const {
  std::vector<i64> residues(moduli.size(), 0);
  residues.front() = g.a;
  return {from_factors(residues), g.b};
}

GroupElement FactorDecomposition::embed_abelian(std::size_t k, i64 a) const {
  std::vector<i64> residues(moduli.size(), 0);
  residues.at(k + 1) = a;
  return {from_factors(residues), 0};
}

SemidirectLaw FactorDecomposition::abelian_law(std::size_t k) const {
  return make_law(abelian_moduli.at(k), 1, 1);
}

FactorDecomposition decompose(const CompositeParams& cp) {
  FactorDecomposition dec;
  dec.N = cp.N;
  for (const auto& f : cp.factorization) dec.moduli.push_back(f.value());
  dec.abelian_moduli.assign(dec.moduli.begin() + 1, dec.moduli.end());
  for (i64 q : dec.abelian_moduli) {
    if (reduce(cp.alpha, q) != reduce(1, q)) {
      violated("alpha = " + std::to_string(cp.alpha) + " is not 1 mod " + std::to_string(q));
    }
  }
  // Order of alpha mod p^{r_1} divides p^2, so alpha = 1 + tau p^{r_1 - 2}.
  const int r1 = cp.factorization.front().exponent;
  const i64 p_r = dec.moduli.front();
  const i64 shifted = reduce(cp.alpha - 1, p_r);
  const i64 step = checked_pow(cp.p, r1 - 2);
  if (shifted % step != 0) violated("alpha mod p^{r_1} is not of the form 1 + tau p^{r_1 - 2}");
  dec.semidirect_factor = make_group(cp.p, r1, shifted / step);
  return dec;
}

CompositeReport solve_composite(const CompositeParams& cp, CosetOracle& oracle, u64 seed,
                                SolveOptions options) {
  if (!(oracle.law() == cp.law)) throw Error(Errc::InvalidArgument, "oracle is over another group");
  const FactorDecomposition dec = decompose(cp);
  const u64 queries0 = oracle.queries();
  const u64 sim0 = oracle.simulation_cost();

  CompositeReport report;
  report.seed = seed;
  const GroupParams& gp = dec.semidirect_factor;
  RestrictedOracle semidirect(oracle, gp.law, [&dec](const GroupElement& g) { return dec.embed_semidirect(g); });
  report.semidirect = solve(gp, semidirect, Strategy::Auto, derive_seed(seed, 0), options);
  for (const auto& g : generators(gp, report.semidirect.recovered)) {
    report.generators.push_back(dec.embed_semidirect(g));
  }

  for (std::size_t k = 0; k < dec.abelian_moduli.size(); ++k) {
    const i64 q = dec.abelian_moduli[k];
    RestrictedOracle cyclic(oracle, dec.abelian_law(k),
                            [&dec, k](const GroupElement& g) { return dec.embed_abelian(k, g.a); });
    Rng rng(derive_seed(seed, k + 1));
    const auto result = abelian_hsp(cyclic, {{q, {1, 0}}}, rng, options.abelian);
    i64 gen = q;
    for (const auto& t : result.generators) gen = std::gcd(gen, t.front());
    report.abelian.push_back({q, gen, q / gen, result.rounds});
    if (gen != q) report.generators.push_back(dec.embed_abelian(k, gen));
  }

  const Label at_identity = oracle.query(identity());
  for (const auto& g : report.generators) {
    if (!(oracle.query(g) == at_identity)) {
      throw Error(Errc::VerificationFailed, "recombined generator outside H");
    }
  }
  report.verified = true;
  report.oracle_queries = oracle.queries() - queries0;
  report.simulation_cost = oracle.simulation_cost() - sim0;
  return report;
}

}  // namespace hsp
