#include "hsp/group.hpp"

#include <bit>
#include <numeric>

namespace hsp {

std::string to_string(GroupClass c) {
  switch (c) {
    case GroupClass::Abelian: return "abelian";
    case GroupClass::Class1: return "class1";
    case GroupClass::Class2: return "class2";
  }
  return "unknown";
}

SemidirectLaw make_law(i64 mod_a, i64 mod_b, i64 alpha) {
  if (mod_a < 1 || mod_b < 1) throw Error(Errc::InvalidArgument, "moduli must be positive");
  checked_mul(mod_a, mod_b);
  const i64 alpha_red = reduce(alpha, mod_a);
  if (mod_a > 1 && std::gcd(alpha_red, mod_a) != 1) {
    throw Error(Errc::InvalidArgument, "alpha must be a unit mod " + std::to_string(mod_a));
  }
  if (pow_mod_raw(alpha_red, static_cast<u64>(mod_b), mod_a) != reduce(1, mod_a)) {
    throw Error(Errc::InvalidArgument, "alpha^" + std::to_string(mod_b) + " != 1 mod " +
                                           std::to_string(mod_a));
  }
  return {mod_a, mod_b, mod_a == 1 ? 0 : alpha_red};
}

i64 GroupParams::p_pow(int k) const {
  if (k < 0) throw Error(Errc::InvalidArgument, "negative exponent");
  if (k >= r) return k == r ? law.mod_a : 0;
  return checked_pow(p, k);
}

GroupParams make_group(i64 p, int r, i64 tau, Classification mode) {
  if (p < 3 || !is_prime(p)) {
    throw Error(Errc::InvalidPrime, "p must be an odd prime, got " + std::to_string(p));
  }
  if (r <= 2) throw Error(Errc::RTooSmall, "r must be >= 3, got " + std::to_string(r));
  if (mode == Classification::Required && r <= 4) {
    throw Error(Errc::RTooSmall,
                "classified instances need r > 4, got " + std::to_string(r));
  }
  const i64 p_sq = p * p;
  if (tau < 0 || tau >= p_sq) {
    throw Error(Errc::InvalidArgument, "tau must lie in [0, p^2)");
  }
  checked_pow(p, r + 2);  // Errc::Overflow past 2^63

  GroupParams gp;
  gp.p = p;
  gp.r = r;
  gp.tau = tau;
  gp.classified = r > 4;
  const i64 p_r = checked_pow(p, r);
  gp.alpha = reduce(static_cast<i128>(tau) * checked_pow(p, r - 2) + 1, p_r);
  const i64 g = std::gcd(tau, p_sq);
  if (tau == 0) {
    gp.group_class = GroupClass::Abelian;
  } else if (g == 1) {
    gp.group_class = GroupClass::Class1;
  } else {
    gp.group_class = GroupClass::Class2;
  }
  gp.law = make_law(p_r, p_sq, gp.alpha);
  return gp;
}

GroupElement mul(const SemidirectLaw& law, const GroupElement& g1, const GroupElement& g2) {
  const i64 twist = pow_mod_raw(law.alpha, static_cast<u64>(g1.b), law.mod_a);
  return {add_mod(g1.a, mul_mod(twist, g2.a, law.mod_a), law.mod_a),
          add_mod(g1.b, g2.b, law.mod_b)};
}

GroupElement inv(const SemidirectLaw& law, const GroupElement& g) {
  // (x^a y^b)^{-1} = y^{-b} x^{-a} = x^{-a alpha^{-b}} y^{-b}; alpha^{-b} = alpha^{mod_b - b}.
  const u64 back = static_cast<u64>(reduce(-static_cast<i128>(g.b), law.mod_b));
  const i64 twist = pow_mod_raw(law.alpha, back, law.mod_a);
  return {reduce(-static_cast<i128>(mul_mod(g.a, twist, law.mod_a)), law.mod_a),
          static_cast<i64>(back)};
}

i64 geometric_sum(i64 beta, u64 k, i64 m) {
  if (m == 1 || k == 0) return 0;
  beta = reduce(beta, m);
  // (sum, power) for the prefix length n read off the high bits of k.
  i64 sum = 0;
  i64 power = 1;
  for (int bit = 63 - std::countl_zero(k); bit >= 0; --bit) {
    sum = add_mod(sum, mul_mod(power, sum, m), m);  // n -> 2n
    power = mul_mod(power, power, m);
    if ((k >> bit) & 1u) {  // n -> n + 1
      sum = add_mod(sum, power, m);
      power = mul_mod(power, beta, m);
    }
  }
  return sum;
}

GroupElement pow(const SemidirectLaw& law, const GroupElement& g, i64 k) {
  if (k < 0) {
    // -k overflows only for INT64_MIN; |G| < 2^63 so reduce first.
    return pow(law, inv(law, g), -(k % law.order()));
  }
  const i64 beta = pow_mod_raw(law.alpha, static_cast<u64>(g.b), law.mod_a);
  const i64 s = geometric_sum(beta, static_cast<u64>(k), law.mod_a);
  return {mul_mod(g.a, s, law.mod_a), mul_mod(reduce(k, law.mod_b), g.b, law.mod_b)};
}

i64 element_order(const SemidirectLaw& law, const GroupElement& g) {
  i64 ord = law.order();
  for (const auto& pp : factorize(ord)) {
    for (int e = 0; e < pp.exponent && ord % pp.prime == 0; ++e) {
      if (pow(law, g, ord / pp.prime) != identity()) break;
      ord /= pp.prime;
    }
  }
  return ord;
}

GroupElement commutator(const SemidirectLaw& law, const GroupElement& g, const GroupElement& h) {
  return mul(law, mul(law, inv(law, g), inv(law, h)), mul(law, g, h));
}

GroupElement random_element(const SemidirectLaw& law, Rng& rng) {
  return {static_cast<i64>(rng.below(static_cast<u64>(law.mod_a))),
          static_cast<i64>(rng.below(static_cast<u64>(law.mod_b)))};
}

int commutator_exponent(const GroupParams& gp) {
  if (gp.abelian()) throw Error(Errc::AbelianGroup, "group has trivial commutator");
  return p_valuation_capped(gp.alpha - 1, gp.p, gp.r);
}

std::pair<i64, i64> abelianization_map(const GroupParams& gp, const GroupElement& g) {
  const i64 quotient = gp.p_pow(commutator_exponent(gp));
  return {g.a % quotient, g.b};
}

}  // namespace hsp
