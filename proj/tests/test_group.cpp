#include <doctest.h>

#include <set>

#include "hsp/group.hpp"
#include "hsp/rng.hpp"
#include "reference.hpp"

using namespace hsp;

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

ref::Elem as_ref(const GroupElement& g) { return {g.a, g.b}; }

}  // namespace

TEST_CASE("make_group classifies and computes alpha") {
  const auto g1 = make_group(3, 5, 1);
  CHECK(g1.alpha == 28);
  CHECK(g1.group_class == GroupClass::Class1);
  CHECK(g1.order() == 2187);

  const auto g2 = make_group(3, 5, 3);
  CHECK(g2.alpha == 82);
  CHECK(g2.group_class == GroupClass::Class2);

  const auto g0 = make_group(3, 5, 0);
  CHECK(g0.alpha == 1);
  CHECK(g0.abelian());

  for (i64 tau = 0; tau < 25; ++tau) {
    const auto gp = make_group(5, 5, tau);
    const GroupClass want = tau == 0 ? GroupClass::Abelian : (tau % 5 == 0 ? GroupClass::Class2 : GroupClass::Class1);
    CHECK(gp.group_class == want);
    CHECK(gp.alpha == tau * 125 + 1);
  }
}

TEST_CASE("make_group errors") {
  CHECK(code_of([] { make_group(2, 5, 1); }) == Errc::InvalidPrime);
  CHECK(code_of([] { make_group(9, 5, 1); }) == Errc::InvalidPrime);
  CHECK(code_of([] { make_group(3, 2, 1, Classification::Unchecked); }) == Errc::RTooSmall);
  CHECK(code_of([] { make_group(3, 4, 1); }) == Errc::RTooSmall);
  CHECK(code_of([] { make_group(3, 5, 9); }) == Errc::InvalidArgument);
  CHECK(code_of([] { make_group(3, 5, -1); }) == Errc::InvalidArgument);
  CHECK(code_of([] { make_group(7, 24, 1); }) == Errc::Overflow);

  const auto small = make_group(3, 4, 1, Classification::Unchecked);
  CHECK_FALSE(small.classified);
  CHECK(small.alpha == 10);
  CHECK(make_group(3, 5, 1).classified);
}

TEST_CASE("make_law validation") {
  CHECK(code_of([] { make_law(9, 9, 3); }) == Errc::InvalidArgument);
  CHECK(code_of([] { make_law(243, 9, 2); }) == Errc::InvalidArgument);
  CHECK(make_law(15, 1, 1).order() == 15);
}

TEST_CASE("mul examples") {
  const auto g1 = make_group(3, 5, 1);
  CHECK(mul(g1, {1, 1}, {1, 0}) == GroupElement{29, 1});
  const auto g2 = make_group(3, 5, 3);
  CHECK(mul(g2, {0, 1}, {1, 0}) == GroupElement{82, 1});
  Rng rng(1);
  for (int k = 0; k < 100; ++k) {
    const auto g = random_element(g1.law, rng);
    CHECK(mul(g1, identity(), g) == g);
    CHECK(mul(g1, g, identity()) == g);
  }
}

TEST_CASE("inv examples") {
  const auto gp = make_group(3, 5, 1);
  CHECK(inv(gp, {1, 0}) == GroupElement{242, 0});
  CHECK(inv(gp, identity()) == identity());
  CHECK(inv(gp, {0, 1}) == GroupElement{0, 8});
}

TEST_CASE("pow examples") {
  const auto gp = make_group(3, 5, 1);
  CHECK(pow(gp, {7, 4}, 0) == identity());
  CHECK(pow(gp, gp.x(), 5) == GroupElement{5, 0});
  CHECK(pow(gp, gp.y(), 9) == identity());
  CHECK(pow(gp, gp.y(), -1) == GroupElement{0, 8});
  CHECK(pow(gp, {1, 3}, -1) == inv(gp, {1, 3}));
}

TEST_CASE("element_order examples") {
  const auto gp = make_group(3, 5, 1);
  CHECK(element_order(gp, identity()) == 1);
  CHECK(element_order(gp, gp.x()) == 243);
  const auto G = ref::group(3, 5, 1);
  i64 k = 1;
  ref::Elem acc{1, 3};
  while (acc != ref::Elem{0, 0}) {
    acc = G.mul(acc, {1, 3});
    ++k;
  }
  CHECK(element_order(gp, {1, 3}) == k);
}

TEST_SUITE("group properties") {
  TEST_CASE("mul and inv agree with the loop reference on every instance") {
    for (auto [p, r, tau] : {std::tuple{3, 5, 1}, {3, 5, 2}, {3, 5, 3}, {3, 5, 0}, {5, 5, 1}, {5, 5, 10}, {3, 6, 4}}) {
      const auto gp = make_group(p, r, tau);
      const auto G = ref::group(p, r, tau);
      Rng rng(static_cast<u64>(p * 100 + r * 10 + tau));
      for (int k = 0; k < 2000; ++k) {
        const auto g = random_element(gp.law, rng);
        const auto h = random_element(gp.law, rng);
        REQUIRE(as_ref(mul(gp, g, h)) == G.mul(as_ref(g), as_ref(h)));
        REQUIRE(mul(gp, g, inv(gp, g)) == identity());
        REQUIRE(mul(gp, inv(gp, g), g) == identity());
      }
    }
  }

  TEST_CASE("associativity on random triples") {
    for (i64 tau : {1, 3}) {
      const auto gp = make_group(3, 5, tau);
      Rng rng(99 + static_cast<u64>(tau));
      for (int k = 0; k < 10000; ++k) {
        const auto a = random_element(gp.law, rng);
        const auto b = random_element(gp.law, rng);
        const auto c = random_element(gp.law, rng);
        REQUIRE(mul(gp, mul(gp, a, b), c) == mul(gp, a, mul(gp, b, c)));
      }
    }
  }

  TEST_CASE("group order is p^(r+2) by exhaustive count") {
    const auto gp = make_group(3, 5, 1);
    std::set<GroupElement> seen;
    for (u64 idx = 0; idx < static_cast<u64>(gp.order()); ++idx) seen.insert(gp.law.unpack(idx));
    CHECK(seen.size() == 2187u);
    CHECK(ref::closure(ref::group(3, 5, 1), {{1, 0}, {0, 1}}).size() == 2187u);
  }

  TEST_CASE("defining relation y x = x^alpha y") {
    for (i64 tau : {1, 2, 3, 6, 0}) {
      const auto gp = make_group(3, 5, tau);
      CHECK(mul(gp, gp.y(), gp.x()) == mul(gp, pow(gp, gp.x(), gp.alpha), gp.y()));
    }
  }

  TEST_CASE("alpha has order p^2 or p") {
    const auto c1 = make_group(3, 5, 1);
    const auto c2 = make_group(3, 5, 3);
    CHECK(mod_pow(c1.alpha, 9, Modulus(243)) == 1);
    CHECK(mod_pow(c1.alpha, 3, Modulus(243)) != 1);
    CHECK(mod_pow(c2.alpha, 9, Modulus(243)) == 1);
    CHECK(mod_pow(c2.alpha, 3, Modulus(243)) == 1);
  }

  TEST_CASE("closed-form pow matches iterated mul for every exponent") {
    for (i64 tau : {1, 3}) {
      const auto gp = make_group(3, 5, tau);
      Rng rng(5);
      for (int s = 0; s < 6; ++s) {
        const auto g = random_element(gp.law, rng);
        GroupElement acc = identity();
        for (i64 k = 0; k < gp.order(); ++k) {
          REQUIRE(pow(gp, g, k) == acc);
          acc = mul(gp, acc, g);
        }
      }
    }
  }

  TEST_CASE("geometric_sum matches the explicit sum") {
    for (i64 beta : {1, 28, 82, 55, 0}) {
      i64 acc = 0;
      for (u64 k = 0; k < 300; ++k) {
        REQUIRE(geometric_sum(beta, k, 243) == acc);
        acc = ref::norm(acc + ref::pow_loop(beta, static_cast<i64>(k), 243), 243);
      }
    }
  }
}

TEST_CASE("commutator and abelianization") {
  const auto c1 = make_group(3, 5, 1);
  const auto c2 = make_group(3, 5, 3);
  CHECK(commutator_exponent(c1) == 3);
  CHECK(commutator_exponent(c2) == 4);
  CHECK(code_of([] { commutator_exponent(make_group(3, 5, 0)); }) == Errc::AbelianGroup);
  CHECK(code_of([] { abelianization_map(make_group(3, 5, 0), {1, 1}); }) == Errc::AbelianGroup);

  CHECK(abelianization_map(c1, identity()) == std::pair<i64, i64>{0, 0});
  CHECK(abelianization_map(c1, {27, 0}) == std::pair<i64, i64>{0, 0});
  CHECK(commutator(c1.law, c1.x(), c1.y()) == GroupElement{ref::norm(-27, 243), 0});

  for (const auto* gp : {&c1, &c2}) {
    const i64 pe = gp->p_pow(commutator_exponent(*gp));
    Rng rng(17);
    for (int k = 0; k < 1000; ++k) {
      const auto g = random_element(gp->law, rng);
      const auto h = random_element(gp->law, rng);
      const auto [u1, v1] = abelianization_map(*gp, g);
      const auto [u2, v2] = abelianization_map(*gp, h);
      const auto [u, v] = abelianization_map(*gp, mul(*gp, g, h));
      REQUIRE(u == (u1 + u2) % pe);
      REQUIRE(v == (v1 + v2) % 9);
      REQUIRE(abelianization_map(*gp, commutator(gp->law, g, h)) == std::pair<i64, i64>{0, 0});
    }
  }
}

TEST_CASE("tau representatives give isomorphic structure") {
  // Class1 groups for tau = 1 and tau = 2 share element-order statistics.
  auto histogram = [](const GroupParams& gp) {
    std::map<i64, int> h;
    for (u64 idx = 0; idx < static_cast<u64>(gp.order()); ++idx) ++h[element_order(gp, gp.law.unpack(idx))];
    return h;
  };
  CHECK(histogram(make_group(3, 5, 1)) == histogram(make_group(3, 5, 2)));
  CHECK(histogram(make_group(3, 5, 3)) == histogram(make_group(3, 5, 6)));
  // The classes differ in the centralizer of y: x^a commutes with y iff (alpha - 1) a = 0.
  auto centralizer_of_y = [](const GroupParams& gp) {
    i64 count = 0;
    for (u64 idx = 0; idx < static_cast<u64>(gp.order()); ++idx) {
      const auto g = gp.law.unpack(idx);
      count += mul(gp, g, gp.y()) == mul(gp, gp.y(), g);
    }
    return count;
  };
  CHECK(centralizer_of_y(make_group(3, 5, 1)) == 243);
  CHECK(centralizer_of_y(make_group(3, 5, 3)) == 729);
}

TEST_CASE("to_string of classes") {
  CHECK(to_string(GroupClass::Abelian) == "abelian");
  CHECK(to_string(GroupClass::Class1) == "class1");
  CHECK(to_string(GroupClass::Class2) == "class2");
}
