#pragma once

#include <compare>
#include <string>
#include <utility>

#include "hsp/numtheory.hpp"
#include "hsp/rng.hpp"

namespace hsp {

/// Exponent pair (a, b) standing for x^a y^b.
struct GroupElement {
  i64 a = 0;
  i64 b = 0;

  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

/// Multiplication rule of Z_{mod_a} x| Z_{mod_b} with y x y^{-1} = x^alpha:
///   (a1, b1)(a2, b2) = (a1 + alpha^{b1} a2, b1 + b2).
/// Shared by the prime-power groups and the composite Z_N x| Z_{p^2}.
struct SemidirectLaw {
  i64 mod_a = 1;
  i64 mod_b = 1;
  i64 alpha = 1;

  i64 order() const noexcept { return mod_a * mod_b; }

  /// Row-major index; increasing index order is lexicographic (a, b) order.
  u64 pack(const GroupElement& g) const noexcept {
    return static_cast<u64>(g.a) * static_cast<u64>(mod_b) + static_cast<u64>(g.b);
  }

  GroupElement unpack(u64 index) const noexcept {
    return {static_cast<i64>(index / static_cast<u64>(mod_b)),
            static_cast<i64>(index % static_cast<u64>(mod_b))};
  }

  bool contains(const GroupElement& g) const noexcept {
    return g.a >= 0 && g.a < mod_a && g.b >= 0 && g.b < mod_b;
  }

  friend bool operator==(const SemidirectLaw&, const SemidirectLaw&) = default;
};

/// Validates gcd(alpha, mod_a) = 1, alpha^{mod_b} = 1 and |G| <= 2^63.
SemidirectLaw make_law(i64 mod_a, i64 mod_b, i64 alpha);

enum class GroupClass { Abelian, Class1, Class2 };

std::string to_string(GroupClass c);

/// One concrete Z_{p^r} x|_phi Z_{p^2} with alpha = tau p^{r-2} + 1.
struct GroupParams {
  i64 p = 3;
  int r = 5;
  i64 tau = 1;
  GroupClass group_class = GroupClass::Class1;
  i64 alpha = 1;
  /// False for the r in {3, 4} instances kept only for brute-force checks.
  bool classified = true;
  SemidirectLaw law;

  i64 p_r() const noexcept { return law.mod_a; }
  i64 p_sq() const noexcept { return law.mod_b; }
  i64 order() const noexcept { return law.order(); }
  bool abelian() const noexcept { return group_class == GroupClass::Abelian; }

  GroupElement x() const noexcept { return {1, 0}; }
  GroupElement y() const noexcept { return {0, 1}; }

  /// p^k for 0 <= k <= r; p^k mod p^r for larger k is 0.
  i64 p_pow(int k) const;

  friend bool operator==(const GroupParams&, const GroupParams&) = default;
};

enum class Classification { Required, Unchecked };

/// Builds and classifies a group. With Classification::Required r must exceed
/// 4; Unchecked admits r >= 3 with `classified = false`.
GroupParams make_group(i64 p, int r, i64 tau,
                       Classification mode = Classification::Required);

inline constexpr GroupElement identity() noexcept { return {0, 0}; }

GroupElement mul(const SemidirectLaw& law, const GroupElement& g1, const GroupElement& g2);
GroupElement inv(const SemidirectLaw& law, const GroupElement& g);
/// g^k for any integer k via the closed form
///   (x^a y^b)^k = x^{a (1 + beta + ... + beta^{k-1})} y^{kb},  beta = alpha^b,
/// with the geometric sum folded by binary splitting (no division by beta - 1).
GroupElement pow(const SemidirectLaw& law, const GroupElement& g, i64 k);
i64 element_order(const SemidirectLaw& law, const GroupElement& g);
/// g^{-1} h^{-1} g h.
GroupElement commutator(const SemidirectLaw& law, const GroupElement& g, const GroupElement& h);
GroupElement random_element(const SemidirectLaw& law, Rng& rng);

inline GroupElement mul(const GroupParams& gp, const GroupElement& g1, const GroupElement& g2) {
  return mul(gp.law, g1, g2);
}
inline GroupElement inv(const GroupParams& gp, const GroupElement& g) { return inv(gp.law, g); }
inline GroupElement pow(const GroupParams& gp, const GroupElement& g, i64 k) {
  return pow(gp.law, g, k);
}
inline i64 element_order(const GroupParams& gp, const GroupElement& g) {
  return element_order(gp.law, g);
}

/// e with [G, G] = <x^{p^e}>: the p-valuation of alpha - 1 (r - 2 for
/// Class1, r - 1 for Class2). Throws Errc::AbelianGroup for tau = 0.
int commutator_exponent(const GroupParams& gp);

/// (a mod p^e, b) for e = commutator_exponent(gp); a homomorphism onto
/// Z_{p^e} x Z_{p^2} with kernel <x^{p^e}>.
std::pair<i64, i64> abelianization_map(const GroupParams& gp, const GroupElement& g);

/// 1 + beta + ... + beta^{k-1} mod m, k >= 0.
i64 geometric_sum(i64 beta, u64 k, i64 m);

}  // namespace hsp
