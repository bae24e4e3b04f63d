#include "hsp/qsim.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace hsp {

std::vector<i64> dims_of(const Domain& domain) {
  std::vector<i64> dims;
  dims.reserve(domain.size());
  for (const auto& reg : domain) dims.push_back(reg.modulus);
  return dims;
}

i64 domain_size(std::span<const i64> dims, i64 limit) {
  i64 size = 1;
  for (i64 n : dims) {
    if (n < 1) throw Error(Errc::InvalidArgument, "register modulus must be positive");
    size = checked_mul(size, n);
    if (size > limit) throw Error(Errc::TooLarge, "domain exceeds " + std::to_string(limit));
  }
  return size;
}

u64 pack_tuple(std::span<const i64> dims, std::span<const i64> tuple) {
  if (dims.size() != tuple.size()) throw Error(Errc::DimensionMismatch, "tuple arity");
  u64 index = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    index = index * static_cast<u64>(dims[i]) + static_cast<u64>(reduce(tuple[i], dims[i]));
  }
  return index;
}

Tuple unpack_tuple(std::span<const i64> dims, u64 index) {
  Tuple t(dims.size());
  for (std::size_t i = dims.size(); i-- > 0;) {
    t[i] = static_cast<i64>(index % static_cast<u64>(dims[i]));
    index /= static_cast<u64>(dims[i]);
  }
  return t;
}

GroupElement embed(const SemidirectLaw& law, const Domain& domain, std::span<const i64> tuple) {
  if (domain.size() != tuple.size()) throw Error(Errc::DimensionMismatch, "tuple arity");
  GroupElement g = identity();
  for (std::size_t i = 0; i < domain.size(); ++i) {
    g = mul(law, g, pow(law, domain[i].generator, tuple[i]));
  }
  return g;
}

std::vector<Tuple> CosetSupport::tuples() const {
  std::vector<Tuple> out;
  out.reserve(points.size());
  for (u64 k : points) out.push_back(unpack_tuple(dims, k));
  return out;
}

Rational OutcomeDistribution::total() const {
  Rational sum(0);
  for (const auto& q : probabilities) sum += q;
  return sum;
}

Rational OutcomeDistribution::probability(std::span<const i64> outcome) const {
  const u64 key = pack_tuple(dims, outcome);
  auto it = std::lower_bound(outcomes.begin(), outcomes.end(), key);
  if (it == outcomes.end() || *it != key) return Rational(0);
  return probabilities[static_cast<std::size_t>(it - outcomes.begin())];
}

double DenseDistribution::total() const {
  return std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
}

CosetSampler::CosetSampler(CosetOracle& oracle, Domain domain)
    : oracle_(&oracle), domain_(std::move(domain)), dims_(dims_of(domain_)) {
  const i64 size = domain_size(dims_);
  point_class_.resize(static_cast<std::size_t>(size));
  for (u64 k = 0; k < static_cast<u64>(size); ++k) {
    const Label label = oracle_->simulate(embed(oracle_->law(), domain_, unpack_tuple(dims_, k)));
    auto [it, fresh] = class_of_label_.try_emplace(label, classes_.size());
    if (fresh) classes_.emplace_back();
    classes_[it->second].push_back(k);
    point_class_[k] = it->second;
  }
}

CosetSupport CosetSampler::sample(Rng& rng) {
  const u64 k = rng.below(point_class_.size());
  const Label label = oracle_->query(embed(oracle_->law(), domain_, unpack_tuple(dims_, k)));
  return {dims_, classes_[class_of_label_.at(label)]};
}

CosetSupport CosetSampler::support_of_class(std::size_t k) const { return {dims_, classes_.at(k)}; }

Rational CosetSampler::class_weight(std::size_t k) const {
  return Rational(static_cast<i64>(classes_.at(k).size()), static_cast<i64>(point_class_.size()));
}

CosetSupport coset_sample(CosetOracle& oracle, const Domain& domain, Rng& rng) {
  CosetSampler sampler(oracle, domain);
  return sampler.sample(rng);
}

namespace {

Tuple add_tuples(std::span<const i64> dims, std::span<const i64> u, std::span<const i64> v) {
  Tuple out(dims.size());
  for (std::size_t i = 0; i < dims.size(); ++i) out[i] = add_mod(u[i], v[i], dims[i]);
  return out;
}

i64 lcm_of(std::span<const i64> dims) {
  i64 l = 1;
  for (i64 n : dims) l = checked_mul(l / std::gcd(l, n), n);
  return l;
}

}  // namespace

std::vector<Tuple> coset_generators(const CosetSupport& support) {
  if (support.points.empty()) throw Error(Errc::NotACoset, "empty support");
  const auto& dims = support.dims;
  const i64 size = domain_size(dims);
  const Tuple s0 = unpack_tuple(dims, support.points.front());
  Tuple minus_s0(dims.size());
  for (std::size_t i = 0; i < dims.size(); ++i) minus_s0[i] = reduce(-s0[i], dims[i]);

  std::vector<char> in_k(static_cast<std::size_t>(size), 0);
  std::vector<u64> k_points;
  k_points.reserve(support.points.size());
  for (u64 s : support.points) {
    const u64 k = pack_tuple(dims, add_tuples(dims, unpack_tuple(dims, s), minus_s0));
    if (!in_k[k]) k_points.push_back(k);
    in_k[k] = 1;
  }

  std::vector<char> in_span(static_cast<std::size_t>(size), 0);
  std::vector<Tuple> span{Tuple(dims.size(), 0)};
  in_span[0] = 1;
  std::vector<Tuple> gens;
  for (u64 k : k_points) {
    if (in_span[k]) continue;
    const Tuple gen = unpack_tuple(dims, k);
    gens.push_back(gen);
    const std::size_t old = span.size();
    for (std::size_t s = 0; s < old; ++s) {
      Tuple cur = span[s];
      while (true) {
        cur = add_tuples(dims, cur, gen);
        const u64 idx = pack_tuple(dims, cur);
        if (in_span[idx]) break;
        if (!in_k[idx]) throw Error(Errc::NotACoset, "support is not a coset of a subgroup");
        in_span[idx] = 1;
        span.push_back(cur);
      }
    }
  }
  if (span.size() != k_points.size()) throw Error(Errc::NotACoset, "support is not a coset");
  return gens;
}

i64 character_phase(std::span<const i64> dims, std::span<const i64> c, std::span<const i64> h) {
  const i64 l = lcm_of(dims);
  i64 phase = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    phase = add_mod(phase, mul_mod(mul_mod(c[i], h[i], l), l / dims[i], l), l);
  }
  return phase;
}

OutcomeDistribution fourier_distribution(const CosetSupport& support, std::span<const i64> dims) {
  if (!std::equal(dims.begin(), dims.end(), support.dims.begin(), support.dims.end())) {
    throw Error(Errc::DimensionMismatch, "Fourier dims differ from the support domain");
  }
  const i64 size = domain_size(dims);
  const auto gens = coset_generators(support);
  const Rational mass(static_cast<i64>(support.points.size()), size);
  OutcomeDistribution dist{support.dims, {}, {}};
  for (u64 k = 0; k < static_cast<u64>(size); ++k) {
    const Tuple c = unpack_tuple(dims, k);
    const bool trivial = std::all_of(gens.begin(), gens.end(), [&](const Tuple& g) {
      return character_phase(dims, c, g) == 0;
    });
    if (trivial) {
      dist.outcomes.push_back(k);
      dist.probabilities.push_back(mass);
    }
  }
  return dist;
}

Tuple sample_outcome(const OutcomeDistribution& dist, Rng& rng) {
  if (dist.outcomes.empty()) throw Error(Errc::InvalidArgument, "empty distribution");
  i64 denom = 1;
  for (const auto& q : dist.probabilities) denom = checked_mul(denom / std::gcd(denom, q.denominator()), q.denominator());
  const i64 draw = static_cast<i64>(rng.below(static_cast<u64>(denom)));
  i64 acc = 0;
  for (std::size_t k = 0; k < dist.outcomes.size(); ++k) {
    acc += dist.probabilities[k].numerator() * (denom / dist.probabilities[k].denominator());
    if (draw < acc) return unpack_tuple(dist.dims, dist.outcomes[k]);
  }
  return unpack_tuple(dist.dims, dist.outcomes.back());
}

Tuple fourier_sample(const CosetSupport& support, std::span<const i64> dims, Rng& rng) {
  return sample_outcome(fourier_distribution(support, dims), rng);
}

OutcomeDistribution structured_mixture(const CosetSampler& sampler) {
  const auto& dims = sampler.dims();
  const i64 size = domain_size(dims);
  std::vector<Rational> acc(static_cast<std::size_t>(size), Rational(0));
  for (std::size_t k = 0; k < sampler.class_count(); ++k) {
    const Rational w = sampler.class_weight(k);
    const auto part = fourier_distribution(sampler.support_of_class(k), dims);
    for (std::size_t o = 0; o < part.outcomes.size(); ++o) acc[part.outcomes[o]] += w * part.probabilities[o];
  }
  OutcomeDistribution dist{dims, {}, {}};
  for (u64 k = 0; k < acc.size(); ++k) {
    if (acc[k].numerator() != 0) {
      dist.outcomes.push_back(k);
      dist.probabilities.push_back(acc[k]);
    }
  }
  return dist;
}

double total_variation(const OutcomeDistribution& exact, const DenseDistribution& dense) {
  if (exact.dims != dense.dims) throw Error(Errc::DimensionMismatch, "distribution domains differ");
  std::vector<double> p(dense.probabilities.size(), 0.0);
  for (std::size_t k = 0; k < exact.outcomes.size(); ++k) {
    p[exact.outcomes[k]] = boost::rational_cast<double>(exact.probabilities[k]);
  }
  double tv = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) tv += std::abs(p[k] - dense.probabilities[k]);
  return 0.5 * tv;
}

std::vector<Tuple> annihilator(std::span<const i64> dims, std::span<const Tuple> characters) {
  if (dims.empty()) return {};
  // Common prime p and modulus L = p^e = max dims.
  const auto first = factorize(dims.front());
  if (first.size() != 1) throw Error(Errc::InvalidArgument, "register moduli must be prime powers");
  const i64 p = first.front().prime;
  i64 big = 1;
  for (i64 n : dims) {
    const auto f = factorize(n);
    if (f.size() != 1 || f.front().prime != p) {
      throw Error(Errc::InvalidArgument, "register moduli must be powers of one prime");
    }
    big = std::max(big, n);
  }
  const int e = p_valuation_capped(big, p, 64);
  const std::size_t cols = dims.size();
  const std::size_t rows = characters.size();

  // A h = 0 (mod L) with A[r][i] = c_{r,i} L / n_i; column operations are
  // mirrored in V so that kernel vectors come out as V h'.
  std::vector<std::vector<i64>> a(rows, std::vector<i64>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (characters[r].size() != cols) throw Error(Errc::DimensionMismatch, "character arity");
    for (std::size_t i = 0; i < cols; ++i) a[r][i] = mul_mod(characters[r][i], big / dims[i], big);
  }
  std::vector<std::vector<i64>> v(cols, std::vector<i64>(cols, 0));
  for (std::size_t i = 0; i < cols; ++i) v[i][i] = 1;

  const auto col_axpy = [&](std::size_t dst, std::size_t src, i64 f) {  // col_dst -= f col_src
    for (auto& row : a) row[dst] = reduce(static_cast<i128>(row[dst]) - static_cast<i128>(f) * row[src], big);
    for (auto& row : v) row[dst] = reduce(static_cast<i128>(row[dst]) - static_cast<i128>(f) * row[src], big);
  };
  const auto col_swap = [&](std::size_t x, std::size_t y) {
    for (auto& row : a) std::swap(row[x], row[y]);
    for (auto& row : v) std::swap(row[x], row[y]);
  };
  const auto col_scale = [&](std::size_t c, i64 f) {
    for (auto& row : a) row[c] = mul_mod(row[c], f, big);
    for (auto& row : v) row[c] = mul_mod(row[c], f, big);
  };

  std::vector<int> pivot_val;
  std::size_t t = 0;
  for (; t < std::min(rows, cols); ++t) {
    int best = e;
    std::size_t br = 0, bc = 0;
    for (std::size_t r = t; r < rows; ++r) {
      for (std::size_t c = t; c < cols; ++c) {
        if (a[r][c] == 0) continue;
        const int val = p_valuation_capped(a[r][c], p, e);
        if (val < best) {
          best = val;
          br = r;
          bc = c;
        }
      }
    }
    if (best == e) break;
    std::swap(a[t], a[br]);
    col_swap(t, bc);
    const i64 pv = checked_pow(p, best);
    const i64 unit = a[t][t] / pv;
    col_scale(t, mod_inv(unit, Modulus(big)));
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == t || a[r][t] == 0) continue;
      const i64 f = a[r][t] / pv;
      for (std::size_t c = 0; c < cols; ++c) {
        a[r][c] = reduce(static_cast<i128>(a[r][c]) - static_cast<i128>(f) * a[t][c], big);
      }
    }
    for (std::size_t c = 0; c < cols; ++c) {
      if (c != t && a[t][c] != 0) col_axpy(c, t, a[t][c] / pv);
    }
    pivot_val.push_back(best);
  }

  std::vector<Tuple> gens;
  for (std::size_t c = 0; c < cols; ++c) {
    const i64 scale = c < t ? checked_pow(p, e - pivot_val[c]) : 1;
    Tuple g(cols);
    bool nonzero = false;
    for (std::size_t i = 0; i < cols; ++i) {
      g[i] = reduce(static_cast<i128>(v[i][c]) * scale, dims[i]);
      nonzero = nonzero || g[i] != 0;
    }
    if (nonzero) gens.push_back(std::move(g));
  }
  return gens;
}

AbelianHspResult abelian_hsp(CosetOracle& oracle, const Domain& domain, Rng& rng,
                             AbelianHspOptions options) {
  CosetSampler sampler(oracle, domain);
  const auto& dims = sampler.dims();
  const u64 size = sampler.size();
  const int batch = static_cast<int>(std::bit_width(size - 1)) + options.kappa;
  const Label at_identity = oracle.query(identity());

  AbelianHspResult result;
  for (int round = 1; round <= options.max_rounds; ++round) {
    for (int s = 0; s < batch; ++s) {
      result.characters.push_back(fourier_sample(sampler.sample(rng), dims, rng));
    }
    result.rounds = round;
    result.generators = annihilator(dims, result.characters);
    result.embedded.clear();
    bool verified = true;
    for (const auto& g : result.generators) {
      result.embedded.push_back(embed(oracle.law(), domain, g));
      if (!(oracle.query(result.embedded.back()) == at_identity)) {
        verified = false;
        break;
      }
    }
    if (verified) return result;
  }
  throw Error(Errc::RetriesExhausted,
              "abelian HSP did not verify after " + std::to_string(options.max_rounds) + " rounds");
}

}  // namespace hsp
