#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hsp/error.hpp"

namespace hsp {

using i64 = std::int64_t;
using u64 = std::uint64_t;
__extension__ using i128 = __int128;

/// A modulus m >= 2.
class Modulus {
 public:
  explicit Modulus(i64 value);

  i64 value() const noexcept { return value_; }

 private:
  i64 value_;
};

/// Least non-negative residue of `a` modulo `m` (m >= 1).
inline i64 reduce(i128 a, i64 m) noexcept {
  i128 r = a % m;
  if (r < 0) r += m;
  return static_cast<i64>(r);
}

inline i64 mul_mod(i64 a, i64 b, i64 m) noexcept {
  return reduce(static_cast<i128>(a) * b, m);
}

inline i64 add_mod(i64 a, i64 b, i64 m) noexcept {
  return reduce(static_cast<i128>(a) + b, m);
}

/// base^exp mod m by square-and-multiply. Negative bases are reduced first.
i64 mod_pow(i64 base, u64 exp, Modulus m);

/// Same as mod_pow but tolerates m == 1 (returns 0); used by group laws whose
/// second factor may be trivial.
i64 pow_mod_raw(i64 base, u64 exp, i64 m) noexcept;

/// a^{-1} mod m. Throws Errc::NotInvertible when gcd(a, m) != 1.
i64 mod_inv(i64 a, Modulus m);

/// A residue together with its modulus (modulus >= 1).
struct Residue {
  i64 value;
  i64 modulus;
};

/// Unique x in [0, prod m_i) with x = r_i mod m_i. Throws
/// Errc::ModuliNotCoprime or Errc::Overflow.
i64 crt_combine(std::span<const Residue> residues);

/// a = p^v * u with p not dividing u. For a == 0 the exponent is empty
/// (infinite valuation) and the unit is 0.
struct Valuation {
  std::optional<int> exponent;
  i64 unit = 0;

  bool infinite() const noexcept { return !exponent.has_value(); }
};

Valuation p_valuation(i64 a, i64 p);

/// Valuation capped at `cap`; a == 0 (mod anything) maps to `cap`.
int p_valuation_capped(i64 a, i64 p, int cap);

bool is_prime(i64 n) noexcept;

struct PrimePower {
  i64 prime;
  int exponent;

  i64 value() const;
};

/// Trial-division factorization, smallest prime first. Bounded to n <= 10^12.
std::vector<PrimePower> factorize(i64 n);

/// base^exp over the integers; throws Errc::Overflow past 2^63.
i64 checked_pow(i64 base, int exp);

/// Product with overflow check.
i64 checked_mul(i64 a, i64 b);

}  // namespace hsp
