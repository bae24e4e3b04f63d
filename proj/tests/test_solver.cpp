#include <doctest.h>

#include <map>

#include "hsp/solver.hpp"

using namespace hsp;
using D = SubgroupDescriptor;

namespace {

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::InvalidArgument;
}

/// Solve with a fresh oracle and compare with an independent brute-force
/// recovery from a second oracle over the same subgroup.
SolveReport solve_and_check(const GroupParams& gp, const SubgroupSet& hidden, Strategy s, u64 seed) {
  HidingOracle o(gp.law, hidden);
  const auto rep = solve(gp, o, s, seed);
  HidingOracle fresh(gp.law, hidden);
  REQUIRE(elements(gp, rep.recovered) == brute_force_recover(fresh));
  REQUIRE(rep.verified);
  REQUIRE(rep.oracle_queries == o.queries());
  REQUIRE(rep.oracle_queries >= 1);
  return rep;
}

}  // namespace

TEST_CASE("classify_cyclicity") {
  CHECK(classify_cyclicity(5, 2, 5) == Cyclicity::Cyclic);
  CHECK(classify_cyclicity(1, 1, 5) == Cyclicity::NonCyclic);
  CHECK(classify_cyclicity(0, 2, 5) == Cyclicity::Cyclic);
  CHECK(classify_cyclicity(5, 0, 5) == Cyclicity::Cyclic);
  CHECK(classify_cyclicity(4, 0, 5) == Cyclicity::NonCyclic);
}

TEST_CASE("recover_t") {
  CHECK(recover_t(2, 7, 3) == std::optional<i64>(1));
  CHECK(recover_t(0, 5, 3) == std::nullopt);
  CHECK(recover_t(1, 0, 9) == std::optional<i64>(0));
  CHECK(recover_t(3, 1, 9) == std::nullopt);
  for (i64 a = 1; a < 9; ++a) {
    if (a % 3 == 0) continue;
    for (i64 b = 0; b < 9; ++b) {
      const auto t = recover_t(a, b, 9);
      REQUIRE(t);
      REQUIRE((a * *t + b) % 9 == 0);
    }
  }
}

TEST_CASE("branch names and commutator containment") {
  const auto c1 = make_group(3, 5, 1);
  const auto c2 = make_group(3, 5, 3);
  CHECK(branch_name(c1, 5, 2) == "class1/cyclic/i");
  CHECK(branch_name(c1, 5, 1) == "class1/cyclic/ii");
  CHECK(branch_name(c1, 0, 2) == "class1/cyclic/iii/m=0");
  CHECK(branch_name(c1, 2, 2) == "class1/cyclic/iii/m=2");
  CHECK(branch_name(c1, 4, 2) == "class1/cyclic/iii/m>=4");
  CHECK(branch_name(c1, 3, 0) == "class1/noncyclic/n=0");
  CHECK(branch_name(c1, 0, 1) == "class1/noncyclic/m=0");
  CHECK(branch_name(c1, 1, 1) == "class1/noncyclic/m=1");
  CHECK(branch_name(c1, 3, 1) == "class1/noncyclic/m>=3");
  CHECK(branch_name(c2, 0, 1) == "class2/i");
  CHECK(branch_name(c2, 5, 2) == "class2/ii");
  CHECK(branch_name(c2, 3, 2) == "class2/ii");
  CHECK(branch_name(c2, 2, 1) == "class2/ii");
  CHECK(branch_name(c2, 2, 2) == "class2/iii");
  CHECK(branch_name(c2, 1, 1) == "class2/iii");
  CHECK(branch_name(make_group(3, 5, 0), 1, 1) == "abelian");
  CHECK(contains_commutator(c1, 3));
  CHECK_FALSE(contains_commutator(c1, 4));
  CHECK(contains_commutator(c2, 4));
  CHECK_FALSE(contains_commutator(make_group(3, 5, 0), 0));
}

TEST_CASE("find_m_n examples") {
  const auto gp = make_group(3, 5, 1);
  auto check = [&](const D& d, int m, int n) {
    auto o = make_oracle(gp, d);
    Rng rng(1);
    SolveContext ctx(gp, o, rng);
    CHECK(find_m_n(ctx) == AxisValuations{m, n});
  };
  check(D::sg2(0, 0), 0, 0);
  check(D::sg1x(5), 5, 2);
  check(D::sg1m(2, 0, 1), 1, 2);
}

TEST_CASE("find_m_n matches intersect_with_axis on the catalog") {
  for (i64 tau : {1, 3}) {
    const auto gp = make_group(3, 5, tau);
    for (const auto& e : catalog_for(gp)->entries()) {
      HidingOracle o(gp.law, e.set);
      Rng rng(derive_seed(3, gp.law.pack(e.set.elements().back())));
      SolveContext ctx(gp, o, rng);
      const auto mn = find_m_n(ctx);
      REQUIRE(mn.m == intersect_with_axis(gp, e.set, Axis::X));
      REQUIRE(mn.n == intersect_with_axis(gp, e.set, Axis::Y));
    }
  }
}

TEST_CASE("solve_cyclic_class1 examples") {
  const auto gp = make_group(3, 5, 1);
  SUBCASE("case i: trivial") {
    auto o = make_oracle(gp, D::sg1x(5));
    Rng rng(2);
    SolveContext ctx(gp, o, rng);
    CHECK(solve_cyclic_class1(ctx, 5, 2) == D::sg1x(5));
  }
  SUBCASE("m = 1 with a mixed generator") {
    auto o = make_oracle(gp, D::sg1m(2, 0, 1));
    Rng rng(3);
    SolveContext ctx(gp, o, rng);
    CHECK(solve_cyclic_class1(ctx, 1, 2) == D::sg1m(2, 0, 1));
    CHECK(ctx.taken == StrategyTaken::Direct);
  }
  SUBCASE("m = 1 falls back to <x^p>") {
    auto o = make_oracle(gp, D::sg1x(1));
    for (u64 seed = 0; seed < 30; ++seed) {
      Rng rng(seed);
      SolveContext ctx(gp, o, rng);
      REQUIRE(solve_cyclic_class1(ctx, 1, 2) == D::sg1x(1));
    }
  }
  SUBCASE("m = 0 is <x>") {
    auto o = make_oracle(gp, D::sg1x(0));
    Rng rng(4);
    SolveContext ctx(gp, o, rng);
    CHECK(solve_cyclic_class1(ctx, 0, 2) == D::sg1x(0));
  }
  SUBCASE("guards") {
    auto o = make_oracle(gp, D::sg1x(0));
    Rng rng(4);
    SolveContext ctx(gp, o, rng);
    CHECK(code_of([&] { solve_cyclic_class1(ctx, 1, 1); }) == Errc::InvalidArgument);
  }
}

TEST_CASE("direct attempts: every invertible outcome ends in a result") {
  const auto gp = make_group(3, 5, 1);
  for (const auto& [d, m] : std::vector<std::pair<D, int>>{{D::sg1m(1, 0, 1), 1}, {D::sg1m(4, 0, 0), 2}, {D::sg1m(2, 1, 1), 2}, {D::sg1x(2), 2},
                                                          {D::sg1m(5, 1, 0), 3}, {D::sg1m(1, 2, 1), 3}, {D::sg1x(3), 3}}) {
    auto o = make_oracle(gp, d);
    Rng rng(8);
    SolveContext ctx(gp, o, rng);
    CosetSampler sampler(o, cyclic_class1_domain(gp, m));
    for (int k = 0; k < 40; ++k) {
      const auto a = cyclic_class1_attempt(ctx, sampler, m);
      REQUIRE(a.invertible == a.result.has_value());
      if (a.result) REQUIRE(*a.result == d);
    }
  }
}

TEST_CASE("solve_noncyclic_class1 examples") {
  const auto gp = make_group(3, 5, 1);
  auto run = [&](const D& d, int m, int n) {
    auto o = make_oracle(gp, d);
    Rng rng(5);
    SolveContext ctx(gp, o, rng);
    return solve_noncyclic_class1(ctx, m, n);
  };
  CHECK(run(D::sg2(2, 0), 2, 0) == D::sg2(2, 0));
  CHECK(run(D::sg3(2, 0), 1, 1) == D::sg3(2, 0));
  CHECK(run(D::sg2(1, 1), 1, 1) == D::sg2(1, 1));
  CHECK(run(D::sg3(1, 1), 2, 1) == D::sg3(1, 1));
  CHECK(run(D::sg2(2, 1), 2, 1) == D::sg2(2, 1));
  CHECK(run(D::sg2(0, 1), 0, 1) == D::sg2(0, 1));
  CHECK(run(D::sg2(3, 1), 3, 1) == D::sg2(3, 1));
}

TEST_CASE("solve_class2 examples") {
  const auto gp = make_group(3, 5, 3);
  auto run = [&](const D& d, int m, int n, StrategyTaken* taken = nullptr) {
    auto o = make_oracle(gp, d);
    Rng rng(6);
    SolveContext ctx(gp, o, rng);
    auto out = solve_class2(ctx, m, n);
    if (taken) *taken = ctx.taken;
    return out;
  };
  CHECK(run(D::sg2(0, 1), 0, 1) == D::sg2(0, 1));
  CHECK(run(D::sg1x(0), 0, 2) == D::sg1x(0));
  StrategyTaken taken{};
  CHECK(run(D::sg2(3, 1), 3, 1, &taken) == D::sg2(3, 1));
  CHECK(taken == StrategyTaken::AbelianOnly);
  CHECK(run(D::sg3(2, 0), 1, 1, &taken) == D::sg3(2, 0));
  CHECK(taken == StrategyTaken::Abelianization);
}

TEST_CASE("solve_via_abelianization examples") {
  const auto gp = make_group(3, 5, 1);
  for (const auto& d : {D::sg1x(1), D::sg2(0, 0), D::sg1m(7, 0, 0), D::sg3(1, 1)}) {
    auto o = make_oracle(gp, d);
    Rng rng(7);
    SolveContext ctx(gp, o, rng);
    CHECK(solve_via_abelianization(ctx) == d);
  }
}

TEST_CASE("solve report fields") {
  const auto gp = make_group(3, 5, 1);
  auto o = make_oracle(gp, D::sg1m(2, 0, 1));
  const auto rep = solve(gp, o, Strategy::Auto, 42);
  CHECK(rep.recovered == D::sg1m(2, 0, 1));
  CHECK(rep.branch == "class1/cyclic/iii/m=1");
  CHECK(rep.strategy == StrategyTaken::Direct);
  CHECK(rep.m == 1);
  CHECK(rep.n == 2);
  CHECK(rep.seed == 42);
  CHECK(rep.verified);
  CHECK(rep.iterations >= 3);
  CHECK(rep.simulation_cost > 0);
  CHECK(rep.group == gp);
}

TEST_CASE("solve is deterministic in the seed") {
  const auto gp = make_group(3, 5, 1);
  for (const auto& d : {D::sg3(2, 0), D::sg1m(4, 0, 0), D::sg1x(2)}) {
    auto o1 = make_oracle(gp, d);
    auto o2 = make_oracle(gp, d);
    const auto a = solve(gp, o1, Strategy::Auto, 1234);
    const auto b = solve(gp, o2, Strategy::Auto, 1234);
    CHECK(a.recovered == b.recovered);
    CHECK(a.oracle_queries == b.oracle_queries);
    CHECK(a.iterations == b.iterations);
    CHECK(a.retries == b.retries);
  }
}

TEST_CASE("abelianization strategy guard") {
  const auto gp = make_group(3, 5, 1);
  auto o = make_oracle(gp, D::sg1x(4));
  CHECK(code_of([&] { solve(gp, o, Strategy::Abelianization, 1); }) == Errc::StrategyNotApplicable);
  auto ok = make_oracle(gp, D::sg1x(3));
  CHECK(solve(gp, ok, Strategy::Abelianization, 1).strategy == StrategyTaken::Abelianization);
}

TEST_CASE("retry budget exhaustion surfaces as RetriesExhausted") {
  const auto gp = make_group(3, 5, 1);
  auto o = make_oracle(gp, D::sg1x(3));
  SolveOptions opts;
  opts.abelian.kappa = -9;  // no samples: every round guesses the whole axis
  opts.abelian.max_rounds = 2;
  CHECK(code_of([&] { solve(gp, o, Strategy::Auto, 1, opts); }) == Errc::RetriesExhausted);
}

TEST_SUITE("solver sweeps") {
  TEST_CASE("Las Vegas correctness over full catalogs") {
    for (auto [p, r, tau] : {std::tuple{3, 5, 1}, {3, 5, 3}, {3, 5, 2}, {3, 5, 6}, {3, 5, 0}, {3, 6, 1}, {3, 6, 3}}) {
      const auto gp = make_group(p, r, tau);
      std::map<std::string, int> branches;
      for (const auto& e : catalog_for(gp)->entries()) {
        for (u64 t = 0; t < 3; ++t) {
          const auto rep = solve_and_check(gp, e.set, Strategy::Auto, derive_seed(1000 + static_cast<u64>(tau), t));
          REQUIRE(rep.recovered == e.descriptor);
          ++branches[rep.branch];
        }
      }
      if (gp.group_class == GroupClass::Class1) CHECK(branches.size() == 12);
      if (gp.group_class == GroupClass::Class2) CHECK(branches.size() == 3);
    }
  }

  TEST_CASE("Las Vegas correctness at p = 5") {
    for (i64 tau : {1, 5}) {
      const auto gp = make_group(5, 5, tau);
      for (const auto& e : catalog_for(gp)->entries()) {
        const auto rep = solve_and_check(gp, e.set, Strategy::Auto, gp.law.pack(e.set.elements().back()));
        REQUIRE(rep.recovered == e.descriptor);
      }
    }
  }

  TEST_CASE("direct and abelianization agree wherever both apply") {
    for (i64 tau : {1, 3}) {
      const auto gp = make_group(3, 5, tau);
      for (const auto& e : catalog_for(gp)->entries()) {
        if (!contains_commutator(gp, intersect_with_axis(gp, e.set, Axis::X))) continue;
        const auto a = solve_and_check(gp, e.set, Strategy::Direct, 5);
        const auto b = solve_and_check(gp, e.set, Strategy::Abelianization, 5);
        REQUIRE(a.recovered == b.recovered);
        REQUIRE(b.strategy == StrategyTaken::Abelianization);
      }
    }
  }
}
