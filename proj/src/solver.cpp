#include "hsp/solver.hpp"

#include <array>

namespace hsp {

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::Auto: return "auto";
    case Strategy::Direct: return "direct";
    case Strategy::Abelianization: return "abelianization";
  }
  return "?";
}

std::string to_string(StrategyTaken s) {
  switch (s) {
    case StrategyTaken::Direct: return "direct";
    case StrategyTaken::Abelianization: return "abelianization";
    case StrategyTaken::AbelianOnly: return "abelian_only";
  }
  return "?";
}

SolveContext::SolveContext(const GroupParams& gp, CosetOracle& oracle, Rng& rng, SolveOptions options)
    : gp_(gp), oracle_(&oracle), rng_(&rng), options_(options) {
  if (!(oracle.law() == gp.law)) throw Error(Errc::InvalidArgument, "oracle is over another group");
}

bool SolveContext::in_hidden(const GroupElement& g) {
  if (!at_identity_) at_identity_ = oracle_->query(identity());
  return oracle_->query(g) == *at_identity_;
}

void SolveContext::record_rounds(int rounds) {
  iterations += rounds;
  retries += rounds - 1;
}

AbelianHspResult SolveContext::run_abelian_hsp(const Domain& domain) {
  auto result = abelian_hsp(*oracle_, domain, *rng_, options_.abelian);
  record_rounds(result.rounds);
  return result;
}

namespace {

// Smallest exponent among nonzero generator coordinates; `cap` if none.
int least_valuation(const std::vector<Tuple>& gens, i64 p, int cap) {
  int best = cap;
  for (const auto& g : gens) best = std::min(best, p_valuation_capped(g.front(), p, cap));
  return best;
}

GroupElement x_pow(const GroupParams& gp, i64 e) { return {reduce(e, gp.p_r()), 0}; }

GroupElement xy(const GroupParams& gp, i64 x_exp, i64 y_exp) {
  return {reduce(x_exp, gp.p_r()), reduce(y_exp, gp.p_sq())};
}

}  // namespace

AxisValuations find_m_n(SolveContext& ctx) {
  const GroupParams& gp = ctx.group();
  const auto hx = ctx.run_abelian_hsp({{gp.p_r(), gp.x()}});
  const auto hy = ctx.run_abelian_hsp({{gp.p_sq(), gp.y()}});
  return {least_valuation(hx.generators, gp.p, gp.r), least_valuation(hy.generators, gp.p, 2)};
}

Cyclicity classify_cyclicity(int m, int n, int r) {
  return (m == r || n == 2) ? Cyclicity::Cyclic : Cyclicity::NonCyclic;
}

std::optional<i64> recover_t(i64 a, i64 b, i64 modulus) {
  const i64 ar = reduce(a, modulus);
  if (std::gcd(ar, modulus) != 1) return std::nullopt;
  if (modulus == 1) return 0;
  const i64 a_inv = mod_inv(ar, Modulus(modulus));
  return reduce(-static_cast<i128>(mul_mod(a_inv, reduce(b, modulus), modulus)), modulus);
}

bool contains_commutator(const GroupParams& gp, int m) {
  return !gp.abelian() && m <= commutator_exponent(gp);
}

std::string branch_name(const GroupParams& gp, int m, int n) {
  const std::string mn = "m=" + std::to_string(m);
  switch (gp.group_class) {
    case GroupClass::Abelian:
      return "abelian";
    case GroupClass::Class1:
      if (classify_cyclicity(m, n, gp.r) == Cyclicity::Cyclic) {
        if (m == gp.r) return n == 2 ? "class1/cyclic/i" : "class1/cyclic/ii";
        if (m == 0) return "class1/cyclic/iii/m=0";
        if (m >= 4) return "class1/cyclic/iii/m>=4";
        return "class1/cyclic/iii/" + mn;
      }
      if (n == 0) return "class1/noncyclic/n=0";
      if (m == 0) return "class1/noncyclic/m=0";
      if (m >= 3) return "class1/noncyclic/m>=3";
      return "class1/noncyclic/" + mn;
    case GroupClass::Class2:
      if (m == 0 || n == 0) return "class2/i";
      if (m == gp.r || (m >= 3 && n == 2) || (m >= 2 && n == 1)) return "class2/ii";
      return "class2/iii";
  }
  return "?";
}

Domain cyclic_class1_domain(const GroupParams& gp, int m) {
  if (m < 1 || m > 3) throw Error(Errc::InvalidArgument, "direct cyclic routine needs m in {1,2,3}");
  return {{gp.p_pow(m), gp.x()}, {gp.p_sq(), gp.y()}};
}

Domain noncyclic_class1_domain(const GroupParams& gp, int m) {
  if (m == 1) return {{gp.p, gp.x()}, {gp.p, gp.y()}};
  if (m == 2) return {{gp.p, x_pow(gp, gp.p)}, {gp.p, gp.y()}};
  throw Error(Errc::InvalidArgument, "direct non-cyclic routine needs m in {1,2}");
}

Domain class1_abelian_domain(const GroupParams& gp) {
  return {{gp.p_pow(gp.r - 2), x_pow(gp, gp.p_sq())}, {gp.p_sq(), gp.y()}};
}

Domain class2_abelian_domain(const GroupParams& gp) {
  return {{gp.p_pow(gp.r - 1), x_pow(gp, gp.p)}, {gp.p_sq(), gp.y()}};
}

Domain abelianization_domain(const GroupParams& gp) {
  return {{gp.p_pow(commutator_exponent(gp)), gp.x()}, {gp.p_sq(), gp.y()}};
}

DirectAttempt cyclic_class1_attempt(SolveContext& ctx, CosetSampler& sampler, int m) {
  const GroupParams& gp = ctx.group();
  const i64 p = gp.p;
  DirectAttempt attempt;
  attempt.outcome = fourier_sample(sampler.sample(ctx.rng()), sampler.dims(), ctx.rng());
  const i64 a = attempt.outcome[0];
  const i64 b = attempt.outcome[1];
  // Outcomes satisfy a t + b = 0 modulo p (t unit mod p) or p^2 (t unit mod p^2).
  const auto t1 = recover_t(a, b, m == 1 ? p : p * p);
  if (!t1) return attempt;
  attempt.invertible = true;
  const i64 t2 = *t1 % p;
  switch (m) {
    case 1:
      if (*t1 != 0 && ctx.in_hidden(xy(gp, *t1, p))) {
        attempt.result = SubgroupDescriptor::sg1m(*t1, 0, 1);
      } else {
        attempt.result = SubgroupDescriptor::sg1x(1);
      }
      break;
    case 2:
      if (*t1 % p != 0 && ctx.in_hidden(xy(gp, *t1, 1))) {
        attempt.result = SubgroupDescriptor::sg1m(*t1, 0, 0);
      } else if (t2 != 0 && ctx.in_hidden(xy(gp, t2 * p, p))) {
        attempt.result = SubgroupDescriptor::sg1m(t2, 1, 1);
      } else {
        attempt.result = SubgroupDescriptor::sg1x(2);
      }
      break;
    case 3:
      if (*t1 % p != 0 && ctx.in_hidden(xy(gp, *t1 * p, 1))) {
        attempt.result = SubgroupDescriptor::sg1m(*t1, 1, 0);
      } else if (t2 != 0 && ctx.in_hidden(xy(gp, t2 * p * p, p))) {
        attempt.result = SubgroupDescriptor::sg1m(t2, 2, 1);
      } else {
        attempt.result = SubgroupDescriptor::sg1x(3);
      }
      break;
    default:
      throw Error(Errc::InvalidArgument, "direct cyclic routine needs m in {1,2,3}");
  }
  return attempt;
}

DirectAttempt noncyclic_class1_attempt(SolveContext& ctx, CosetSampler& sampler, int m) {
  const GroupParams& gp = ctx.group();
  const i64 p = gp.p;
  if (m != 1 && m != 2) throw Error(Errc::InvalidArgument, "direct non-cyclic routine needs m in {1,2}");
  DirectAttempt attempt;
  attempt.outcome = fourier_sample(sampler.sample(ctx.rng()), sampler.dims(), ctx.rng());
  const auto t1 = recover_t(attempt.outcome[0], attempt.outcome[1], p);
  if (!t1) return attempt;
  attempt.invertible = true;
  const i64 scale = m == 1 ? 1 : p;
  if (*t1 != 0 && ctx.in_hidden(xy(gp, *t1 * scale, 1))) {
    attempt.result = SubgroupDescriptor::sg3(*t1, m - 1);
  } else {
    attempt.result = SubgroupDescriptor::sg2(m, 1);
  }
  return attempt;
}

namespace {

template <typename Attempt>
SubgroupDescriptor run_direct(SolveContext& ctx, const Domain& domain, Attempt attempt) {
  ctx.taken = StrategyTaken::Direct;
  CosetSampler sampler(ctx.oracle(), domain);
  for (int k = 1; k <= ctx.options().direct_attempts; ++k) {
    DirectAttempt a = attempt(sampler);
    if (a.result) {
      ctx.record_rounds(k);
      return *a.result;
    }
  }
  ctx.record_rounds(ctx.options().direct_attempts);
  throw Error(Errc::RetriesExhausted, "direct routine sampled a = 0 mod p on every attempt");
}

SubgroupDescriptor abelian_subgroup_route(SolveContext& ctx, const Domain& domain) {
  ctx.taken = StrategyTaken::AbelianOnly;
  return canonicalize(ctx.group(), ctx.run_abelian_hsp(domain).embedded);
}

SubgroupDescriptor closed_form(SolveContext& ctx, const std::vector<GroupElement>& gens) {
  ctx.taken = StrategyTaken::AbelianOnly;
  return canonicalize(ctx.group(), gens);
}

}  // namespace

SubgroupDescriptor solve_cyclic_class1(SolveContext& ctx, int m, int n) {
  const GroupParams& gp = ctx.group();
  if (gp.group_class != GroupClass::Class1 || classify_cyclicity(m, n, gp.r) != Cyclicity::Cyclic) {
    throw Error(Errc::InvalidArgument, "solve_cyclic_class1 needs Class1 and m = r or n = 2");
  }
  if (m == gp.r || m >= 4) return abelian_subgroup_route(ctx, class1_abelian_domain(gp));
  if (m == 0) return closed_form(ctx, {gp.x()});
  return run_direct(ctx, cyclic_class1_domain(gp, m),
                    [&](CosetSampler& s) { return cyclic_class1_attempt(ctx, s, m); });
}

SubgroupDescriptor solve_noncyclic_class1(SolveContext& ctx, int m, int n) {
  const GroupParams& gp = ctx.group();
  if (gp.group_class != GroupClass::Class1 || classify_cyclicity(m, n, gp.r) != Cyclicity::NonCyclic) {
    throw Error(Errc::InvalidArgument, "solve_noncyclic_class1 needs Class1, m < r and n < 2");
  }
  if (n == 0) return closed_form(ctx, {x_pow(gp, gp.p_pow(m)), gp.y()});
  if (m == 0) return closed_form(ctx, {gp.x(), xy(gp, 0, gp.p)});
  if (m >= 3) return abelian_subgroup_route(ctx, class1_abelian_domain(gp));
  return run_direct(ctx, noncyclic_class1_domain(gp, m),
                    [&](CosetSampler& s) { return noncyclic_class1_attempt(ctx, s, m); });
}

SubgroupDescriptor solve_class2(SolveContext& ctx, int m, int n) {
  const GroupParams& gp = ctx.group();
  if (gp.group_class != GroupClass::Class2) throw Error(Errc::InvalidArgument, "solve_class2 needs Class2");
  if (m == 0) return closed_form(ctx, {gp.x(), xy(gp, 0, gp.p_pow(n))});
  if (n == 0) return closed_form(ctx, {x_pow(gp, gp.p_pow(m)), gp.y()});
  if (branch_name(gp, m, n) == "class2/ii") return abelian_subgroup_route(ctx, class2_abelian_domain(gp));
  return solve_via_abelianization(ctx);
}

SubgroupDescriptor solve_via_abelianization(SolveContext& ctx) {
  const GroupParams& gp = ctx.group();
  ctx.taken = StrategyTaken::Abelianization;
  const int e = commutator_exponent(gp);
  auto gens = ctx.run_abelian_hsp(abelianization_domain(gp)).embedded;
  gens.push_back(x_pow(gp, gp.p_pow(e)));
  return canonicalize(ctx.group(), gens);
}

SolveReport solve(const GroupParams& gp, CosetOracle& oracle, Strategy strategy, u64 seed,
                  SolveOptions options) {
  Rng rng(seed);
  SolveContext ctx(gp, oracle, rng, options);
  const u64 queries0 = oracle.queries();
  const u64 sim0 = oracle.simulation_cost();

  SolveReport report;
  report.group = gp;
  report.seed = seed;

  AxisValuations mn;
  if (gp.abelian()) {
    report.recovered = abelian_subgroup_route(ctx, {{gp.p_r(), gp.x()}, {gp.p_sq(), gp.y()}});
    const SubgroupSet set = elements(gp, report.recovered);
    mn = {intersect_with_axis(gp, set, Axis::X), intersect_with_axis(gp, set, Axis::Y)};
  } else {
    mn = find_m_n(ctx);
    if (strategy == Strategy::Abelianization) {
      if (!contains_commutator(gp, mn.m)) {
        throw Error(Errc::StrategyNotApplicable,
                    "m = " + std::to_string(mn.m) + " exceeds the commutator exponent " +
                        std::to_string(commutator_exponent(gp)) + "; H need not contain [G,G]");
      }
      report.recovered = solve_via_abelianization(ctx);
    } else if (gp.group_class == GroupClass::Class2) {
      report.recovered = solve_class2(ctx, mn.m, mn.n);
    } else if (classify_cyclicity(mn.m, mn.n, gp.r) == Cyclicity::Cyclic) {
      report.recovered = solve_cyclic_class1(ctx, mn.m, mn.n);
    } else {
      report.recovered = solve_noncyclic_class1(ctx, mn.m, mn.n);
    }
  }
  report.m = mn.m;
  report.n = mn.n;
  report.branch = branch_name(gp, mn.m, mn.n);
  report.strategy = ctx.taken;

  // Every generator lies in H, and the recovered subgroup meets the axes
  // exactly as H does.
  for (const auto& g : generators(gp, report.recovered)) {
    if (!ctx.in_hidden(g)) {
      throw Error(Errc::VerificationFailed, to_string(report.recovered) + " has a generator outside H");
    }
  }
  const SubgroupSet recovered = elements(gp, report.recovered);
  if (intersect_with_axis(gp, recovered, Axis::X) != mn.m ||
      intersect_with_axis(gp, recovered, Axis::Y) != mn.n) {
    throw Error(Errc::VerificationFailed, to_string(report.recovered) + " disagrees with (m, n)");
  }
  report.verified = true;
  report.iterations = ctx.iterations;
  report.retries = ctx.retries;
  report.oracle_queries = oracle.queries() - queries0;
  report.simulation_cost = oracle.simulation_cost() - sim0;
  return report;
}

}  // namespace hsp
