// Naive reference implementations used only by tests. Nothing here calls the
// library's arithmetic: powers are loops, groups are explicit std::set
// closures, Fourier amplitudes are complex sums.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <set>
#include <utility>
#include <vector>

namespace ref {

using i64 = std::int64_t;
using Elem = std::pair<i64, i64>;

inline i64 norm(i64 a, i64 m) { return ((a % m) + m) % m; }

inline i64 pow_loop(i64 base, i64 exp, i64 m) {
  i64 acc = 1 % m;
  for (i64 k = 0; k < exp; ++k) acc = norm(acc * norm(base, m), m);
  return acc;
}

inline i64 ipow(i64 b, int e) {
  i64 acc = 1;
  while (e-- > 0) acc *= b;
  return acc;
}

/// Z_{P} x|_alpha Z_{Q} with every twist alpha^b computed by a loop.
struct Semidirect {
  i64 P, Q, alpha;

  Elem mul(Elem g, Elem h) const { return {norm(g.first + pow_loop(alpha, g.second, P) * h.first, P), norm(g.second + h.second, Q)}; }
  Elem pow(Elem g, i64 k) const {
    Elem acc{0, 0};
    for (i64 s = 0; s < k; ++s) acc = mul(acc, g);
    return acc;
  }
  Elem inv(Elem g) const {
    // Search: slow but independent.
    for (i64 a = 0; a < P; ++a) {
      Elem h{a, norm(-g.second, Q)};
      if (mul(g, h) == Elem{0, 0}) return h;
    }
    return {-1, -1};
  }
  i64 order() const { return P * Q; }
};

inline Semidirect group(i64 p, int r, i64 tau) { return {ipow(p, r), p * p, tau * ipow(p, r - 2) + 1}; }

inline std::set<Elem> closure(const Semidirect& G, const std::vector<Elem>& gens) {
  std::set<Elem> h{{0, 0}};
  std::vector<Elem> frontier{{0, 0}};
  while (!frontier.empty()) {
    std::vector<Elem> next;
    for (const auto& x : frontier) {
      for (const auto& g : gens) {
        const Elem y = G.mul(x, g);
        if (h.insert(y).second) next.push_back(y);
      }
    }
    frontier = std::move(next);
  }
  return h;
}

/// |sum_{s in support} exp(2 pi i sum_k c_k s_k / n_k)|^2 / (|support| prod n).
inline std::map<std::vector<i64>, double> fourier(const std::vector<std::vector<i64>>& support,
                                                  const std::vector<i64>& dims) {
  std::map<std::vector<i64>, double> out;
  i64 total = 1;
  for (i64 n : dims) total *= n;
  std::vector<i64> c(dims.size(), 0);
  for (i64 idx = 0; idx < total; ++idx) {
    i64 rest = idx;
    for (std::size_t k = dims.size(); k-- > 0;) {
      c[k] = rest % dims[k];
      rest /= dims[k];
    }
    std::complex<double> amp = 0;
    for (const auto& s : support) {
      double phase = 0;
      for (std::size_t k = 0; k < dims.size(); ++k) phase += static_cast<double>(c[k] * s[k] % dims[k]) / dims[k];
      amp += std::polar(1.0, 2 * std::numbers::pi * phase);
    }
    const double pr = std::norm(amp) / (static_cast<double>(support.size()) * total);
    if (pr > 1e-12) out[c] = pr;
  }
  return out;
}

}  // namespace ref
