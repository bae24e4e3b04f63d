#pragma once

#include <optional>
#include <string>

#include "hsp/oracle.hpp"
#include "hsp/qsim.hpp"
#include "hsp/subgroup.hpp"

namespace hsp {

enum class Strategy { Auto, Direct, Abelianization };
enum class StrategyTaken { Direct, Abelianization, AbelianOnly };

std::string to_string(Strategy s);
std::string to_string(StrategyTaken s);

struct SolveOptions {
  AbelianHspOptions abelian;
  /// Attempts of a direct Fourier routine before giving up.
  int direct_attempts = 20;
};

struct SolveReport {
  GroupParams group;
  SubgroupDescriptor recovered;
  StrategyTaken strategy = StrategyTaken::AbelianOnly;
  std::string branch;
  int m = 0;
  int n = 0;
  u64 oracle_queries = 0;
  u64 simulation_cost = 0;
  /// Sampling rounds across every probabilistic step.
  int iterations = 0;
  /// Rounds beyond the first in any step; zero means first-try success.
  int retries = 0;
  u64 seed = 0;
  bool verified = false;

  bool first_try() const noexcept { return retries == 0; }
};

/// State shared by the steps of one solve: the oracle, the RNG stream, the
/// cached label f(1), and round bookkeeping.
class SolveContext {
 public:
  SolveContext(const GroupParams& gp, CosetOracle& oracle, Rng& rng, SolveOptions options = {});

  const GroupParams& group() const noexcept { return gp_; }
  CosetOracle& oracle() noexcept { return *oracle_; }
  Rng& rng() noexcept { return *rng_; }
  const SolveOptions& options() const noexcept { return options_; }

  /// f(g) = f(1); f(1) is queried once per context.
  bool in_hidden(const GroupElement& g);

  AbelianHspResult run_abelian_hsp(const Domain& domain);
  void record_rounds(int rounds);

  int iterations = 0;
  int retries = 0;
  StrategyTaken taken = StrategyTaken::AbelianOnly;

 private:
  GroupParams gp_;
  CosetOracle* oracle_;
  Rng* rng_;
  SolveOptions options_;
  std::optional<Label> at_identity_;
};

struct AxisValuations {
  int m = 0;
  int n = 0;

  friend bool operator==(const AxisValuations&, const AxisValuations&) = default;
};

/// Abelian HSP on <x> (dims [p^r]) and <y> (dims [p^2]).
AxisValuations find_m_n(SolveContext& ctx);

enum class Cyclicity { Cyclic, NonCyclic };

/// Cyclic iff m = r or n = 2.
Cyclicity classify_cyclicity(int m, int n, int r);

/// -a^{-1} b mod `modulus` (a power of p), or nullopt when a = 0 mod p.
std::optional<i64> recover_t(i64 a, i64 b, i64 modulus);

/// Human-readable branch for (m, n), e.g. "class1/cyclic/m=2".
std::string branch_name(const GroupParams& gp, int m, int n);

/// True when (m, n) forces H to contain [G, G] = <x^{p^e}>, i.e. m <= e.
bool contains_commutator(const GroupParams& gp, int m);

/// Registers of the direct routines:
///   cyclic m in {1,2,3}:  a' in Z_{p^m} (x), b' in Z_{p^2} (y)
///   non-cyclic m = 1:     a' in Z_p (x),     b' in Z_p (y)
///   non-cyclic m = 2:     a'/p in Z_p (x^p), b' in Z_p (y)
Domain cyclic_class1_domain(const GroupParams& gp, int m);
Domain noncyclic_class1_domain(const GroupParams& gp, int m);

/// Abelian subgroups used for the abelian reduction: <x^{p^2}, y> (Class1),
/// <x^p, y> (Class2), and the section (u, v) -> x^u y^v of G/[G, G].
Domain class1_abelian_domain(const GroupParams& gp);
Domain class2_abelian_domain(const GroupParams& gp);
Domain abelianization_domain(const GroupParams& gp);

/// One measurement round of a direct routine.
struct DirectAttempt {
  Tuple outcome;
  bool invertible = false;
  std::optional<SubgroupDescriptor> result;
};

DirectAttempt cyclic_class1_attempt(SolveContext& ctx, CosetSampler& sampler, int m);
DirectAttempt noncyclic_class1_attempt(SolveContext& ctx, CosetSampler& sampler, int m);

/// Class1, m = r or n = 2.
SubgroupDescriptor solve_cyclic_class1(SolveContext& ctx, int m, int n);
/// Class1, m < r and n < 2.
SubgroupDescriptor solve_noncyclic_class1(SolveContext& ctx, int m, int n);
/// Class2, cases (i) closed form, (ii) abelian HSP on <x^p, y>,
/// (iii) H normal: abelianization.
SubgroupDescriptor solve_class2(SolveContext& ctx, int m, int n);
/// H must contain [G, G]; f then factors through G/[G, G].
SubgroupDescriptor solve_via_abelianization(SolveContext& ctx);

/// find_m_n, dispatch, canonicalize, final verification. Throws
/// Errc::RetriesExhausted, Errc::VerificationFailed, and
/// Errc::StrategyNotApplicable (Abelianization requested but m > e).
SolveReport solve(const GroupParams& gp, CosetOracle& oracle, Strategy strategy, u64 seed,
                  SolveOptions options = {});

}  // namespace hsp
