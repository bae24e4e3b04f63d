#include "hsp/numtheory.hpp"

#include <limits>
#include <numeric>
#include <string>

namespace hsp {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::NotInvertible: return "NotInvertible";
    case Errc::ModuliNotCoprime: return "ModuliNotCoprime";
    case Errc::InvalidPrime: return "InvalidPrime";
    case Errc::RTooSmall: return "RTooSmall";
    case Errc::Overflow: return "Overflow";
    case Errc::InvalidDescriptor: return "InvalidDescriptor";
    case Errc::TooLarge: return "TooLarge";
    case Errc::AbelianGroup: return "AbelianGroup";
    case Errc::NotInCatalog: return "NotInCatalog";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NotACoset: return "NotACoset";
    case Errc::RetriesExhausted: return "RetriesExhausted";
    case Errc::VerificationFailed: return "VerificationFailed";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::StrategyNotApplicable: return "StrategyNotApplicable";
  }
  return "Unknown";
}

Modulus::Modulus(i64 value) : value_(value) {
  if (value < 2) {
    throw Error(Errc::InvalidArgument, "modulus must be >= 2, got " + std::to_string(value));
  }
}

i64 pow_mod_raw(i64 base, u64 exp, i64 m) noexcept {
  if (m == 1) return 0;
  i64 result = 1;
  i64 acc = reduce(base, m);
  while (exp != 0) {
    if (exp & 1u) result = mul_mod(result, acc, m);
    acc = mul_mod(acc, acc, m);
    exp >>= 1;
  }
  return result;
}

i64 mod_pow(i64 base, u64 exp, Modulus m) { return pow_mod_raw(base, exp, m.value()); }

namespace {

// Extended Euclid on non-negative inputs: returns g and x with a*x = g (mod m).
std::pair<i64, i64> ext_gcd(i64 a, i64 m) {
  i64 old_r = a, r = m;
  i128 old_s = 1, s = 0;
  while (r != 0) {
    const i64 q = old_r / r;
    const i64 next_r = old_r - q * r;
    old_r = r;
    r = next_r;
    const i128 next_s = old_s - static_cast<i128>(q) * s;
    old_s = s;
    s = next_s;
  }
  return {old_r, reduce(old_s, m)};
}

}  // namespace

i64 mod_inv(i64 a, Modulus m) {
  const i64 reduced = reduce(a, m.value());
  auto [g, x] = ext_gcd(reduced, m.value());
  if (g != 1) {
    throw Error(Errc::NotInvertible, std::to_string(a) + " mod " + std::to_string(m.value()));
  }
  return x;
}

i64 crt_combine(std::span<const Residue> residues) {
  i64 x = 0;
  i64 modulus = 1;
  for (const auto& [value, mi] : residues) {
    if (mi < 1) throw Error(Errc::InvalidArgument, "CRT modulus must be positive");
    if (std::gcd(modulus, mi) != 1) {
      throw Error(Errc::ModuliNotCoprime,
                  std::to_string(modulus) + " and " + std::to_string(mi));
    }
    const i64 next_modulus = checked_mul(modulus, mi);
    const i64 target = reduce(value, mi);
    if (mi > 1) {
      // x + modulus * k = target (mod mi)
      const i64 inv = mod_inv(reduce(modulus, mi), Modulus(mi));
      const i64 k = mul_mod(reduce(static_cast<i128>(target) - x, mi), inv, mi);
      x = reduce(static_cast<i128>(x) + static_cast<i128>(modulus) * k, next_modulus);
    }
    modulus = next_modulus;
  }
  return x;
}

Valuation p_valuation(i64 a, i64 p) {
  if (p < 2) throw Error(Errc::InvalidArgument, "valuation base must be >= 2");
  if (a < 0) a = -a;
  if (a == 0) return {};
  int v = 0;
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  return {v, a};
}

int p_valuation_capped(i64 a, i64 p, int cap) {
  const Valuation val = p_valuation(a, p);
  if (val.infinite()) return cap;
  return std::min(*val.exponent, cap);
}

bool is_prime(i64 n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (i64 d = 3; d <= n / d; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

i64 PrimePower::value() const { return checked_pow(prime, exponent); }

std::vector<PrimePower> factorize(i64 n) {
  if (n < 1) throw Error(Errc::InvalidArgument, "factorize expects n >= 1");
  if (n > 1'000'000'000'000LL) throw Error(Errc::TooLarge, "trial division bound exceeded");
  std::vector<PrimePower> out;
  for (i64 d = 2; d <= n / d; ++d) {
    if (n % d != 0) continue;
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.push_back({d, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

i64 checked_mul(i64 a, i64 b) {
  const i128 prod = static_cast<i128>(a) * b;
  if (prod > std::numeric_limits<i64>::max() || prod < std::numeric_limits<i64>::min()) {
    throw Error(Errc::Overflow, std::to_string(a) + " * " + std::to_string(b));
  }
  return static_cast<i64>(prod);
}

i64 checked_pow(i64 base, int exp) {
  if (exp < 0) throw Error(Errc::InvalidArgument, "negative exponent");
  i64 result = 1;
  for (int k = 0; k < exp; ++k) result = checked_mul(result, base);
  return result;
}

}  // namespace hsp
