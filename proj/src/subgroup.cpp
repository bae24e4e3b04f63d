#include "hsp/subgroup.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <tuple>

#include <boost/functional/hash.hpp>

namespace hsp {

std::string to_string(const SubgroupDescriptor& d) {
  const auto n = [](const char* k, i64 v) { return std::string(k) + "=" + std::to_string(v); };
  switch (d.form) {
    case Form::Sg1X: return "sg1x[" + n("i", d.i) + "]";
    case Form::Sg1Mixed: return "sg1m[" + n("t", d.t) + " " + n("i", d.i) + " " + n("j", d.j) + "]";
    case Form::Sg2: return "sg2[" + n("i", d.i) + " " + n("j", d.j) + "]";
    case Form::Sg3: return "sg3[" + n("t", d.t) + " " + n("i", d.i) + "]";
  }
  return "?";
}

int sg1m_unit_exponent(const GroupParams& gp, int i, int j) { return std::min(gp.r - i, 2 - j); }

namespace {

bool is_unit_rep(i64 t, i64 p, i64 modulus) {
  if (modulus == 1) return t == 1;
  return t >= 1 && t < modulus && t % p != 0;
}

[[noreturn]] void bad(const SubgroupDescriptor& d, const char* why) {
  throw Error(Errc::InvalidDescriptor, to_string(d) + ": " + why);
}

}  // namespace

void validate(const GroupParams& gp, const SubgroupDescriptor& d) {
  switch (d.form) {
    case Form::Sg1X:
      if (d.i < 0 || d.i > gp.r) bad(d, "i out of range");
      if (d.t != 0 || d.j != 0) bad(d, "unused fields must be zero");
      return;
    case Form::Sg1Mixed: {
      if (d.i < 0 || d.i > gp.r) bad(d, "i out of range");
      if (d.j < 0 || d.j > 1) bad(d, "j out of range");
      const i64 modulus = checked_pow(gp.p, sg1m_unit_exponent(gp, d.i, d.j));
      if (!is_unit_rep(d.t, gp.p, modulus)) bad(d, "t must be a unit");
      return;
    }
    case Form::Sg2:
      if (d.i < 0 || d.i >= gp.r) bad(d, "i out of range");
      if (d.j < 0 || d.j > 1) bad(d, "j out of range");
      if (d.t != 0) bad(d, "unused fields must be zero");
      return;
    case Form::Sg3:
      if (d.i < 0 || d.i >= gp.r) bad(d, "i out of range");
      if (d.j != 0) bad(d, "unused fields must be zero");
      if (!is_unit_rep(d.t, gp.p, gp.p)) bad(d, "t must be a unit mod p");
      return;
  }
  bad(d, "unknown form");
}

std::vector<GroupElement> generators(const GroupParams& gp, const SubgroupDescriptor& d) {
  validate(gp, d);
  const i64 pr = gp.p_r();
  const auto x_pow = [&](i64 e) { return reduce(e, pr); };
  switch (d.form) {
    case Form::Sg1X:
      return {{x_pow(gp.p_pow(d.i)), 0}};
    case Form::Sg1Mixed:
      return {{reduce(static_cast<i128>(d.t) * gp.p_pow(d.i), pr), reduce(gp.p_pow(d.j), gp.p_sq())}};
    case Form::Sg2:
      return {{x_pow(gp.p_pow(d.i)), 0}, {0, reduce(gp.p_pow(d.j), gp.p_sq())}};
    case Form::Sg3:
      return {{reduce(static_cast<i128>(d.t) * gp.p_pow(d.i), pr), 1},
              {x_pow(gp.p_pow(d.i + 1)), 0}};
  }
  return {};
}

SubgroupSet::SubgroupSet(const SemidirectLaw& law)
    : law_(law), bits_(static_cast<std::size_t>(law.order())) {}

std::vector<GroupElement> SubgroupSet::elements() const {
  std::vector<GroupElement> out;
  out.reserve(bits_.count());
  for (auto k = bits_.find_first(); k != boost::dynamic_bitset<>::npos; k = bits_.find_next(k)) {
    out.push_back(law_.unpack(k));
  }
  return out;
}

bool SubgroupSet::is_closed() const {
  if (!contains(identity())) return false;
  const auto elems = elements();
  for (const auto& g : elems) {
    if (!contains(inv(law_, g))) return false;
    for (const auto& h : elems) {
      if (!contains(mul(law_, g, h))) return false;
    }
  }
  return true;
}

std::size_t SubgroupSet::hash() const {
  std::vector<boost::dynamic_bitset<>::block_type> blocks(bits_.num_blocks());
  boost::to_block_range(bits_, blocks.begin());
  return boost::hash_range(blocks.begin(), blocks.end());
}

SubgroupSet closure(const SemidirectLaw& law, std::span<const GroupElement> gens) {
  if (law.order() > kMaterializeLimit) {
    throw Error(Errc::TooLarge, "group order " + std::to_string(law.order()) +
                                    " exceeds materialization limit");
  }
  SubgroupSet set(law);
  std::vector<GroupElement> frontier{identity()};
  set.insert(identity());
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    const GroupElement u = frontier[head];
    for (const auto& s : gens) {
      const GroupElement v = mul(law, u, s);
      if (!set.contains(v)) {
        set.insert(v);
        frontier.push_back(v);
      }
    }
  }
  return set;
}

SubgroupSet elements(const GroupParams& gp, const SubgroupDescriptor& d) {
  const auto gens = generators(gp, d);
  return closure(gp.law, gens);
}

std::vector<SubgroupDescriptor> all_descriptors(const GroupParams& gp) {
  std::vector<SubgroupDescriptor> out;
  const i64 p = gp.p;
  const auto units = [p](i64 modulus) {
    std::vector<i64> ts;
    if (modulus == 1) return std::vector<i64>{1};
    for (i64 t = 1; t < modulus; ++t) {
      if (t % p != 0) ts.push_back(t);
    }
    return ts;
  };
  for (int i = 0; i <= gp.r; ++i) out.push_back(SubgroupDescriptor::sg1x(i));
  for (int i = 0; i <= gp.r; ++i) {
    for (int j = 0; j <= 1; ++j) {
      for (i64 t : units(checked_pow(p, sg1m_unit_exponent(gp, i, j)))) {
        out.push_back(SubgroupDescriptor::sg1m(t, i, j));
      }
    }
  }
  for (int i = 0; i < gp.r; ++i) {
    for (int j = 0; j <= 1; ++j) out.push_back(SubgroupDescriptor::sg2(i, j));
  }
  for (int i = 0; i < gp.r; ++i) {
    for (i64 t : units(p)) out.push_back(SubgroupDescriptor::sg3(t, i));
  }
  return out;
}

SubgroupCatalog::SubgroupCatalog(const GroupParams& gp) : gp_(gp) {
  for (const auto& d : all_descriptors(gp)) {
    SubgroupSet set = elements(gp, d);
    if (find(set)) continue;  // descriptors come in canonical order
    by_hash_.emplace(set.hash(), entries_.size());
    entries_.push_back({d, std::move(set)});
  }
}

std::optional<SubgroupDescriptor> SubgroupCatalog::find(const SubgroupSet& set) const {
  auto [lo, hi] = by_hash_.equal_range(set.hash());
  for (auto it = lo; it != hi; ++it) {
    if (entries_[it->second].set == set) return entries_[it->second].descriptor;
  }
  return std::nullopt;
}

const SubgroupCatalog::Entry& SubgroupCatalog::at(const SubgroupDescriptor& d) const {
  for (const auto& e : entries_) {
    if (e.descriptor == d) return e;
  }
  throw Error(Errc::NotInCatalog, to_string(d) + " is not a canonical descriptor");
}

std::shared_ptr<const SubgroupCatalog> catalog_for(const GroupParams& gp) {
  using Key = std::tuple<i64, int, i64>;
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const SubgroupCatalog>> cache;
  const Key key{gp.p, gp.r, gp.tau};
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto built = std::make_shared<const SubgroupCatalog>(gp);
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(built)).first->second;
}

std::vector<SubgroupDescriptor> enumerate_catalog(const GroupParams& gp) {
  std::vector<SubgroupDescriptor> out;
  for (const auto& e : catalog_for(gp)->entries()) out.push_back(e.descriptor);
  return out;
}

namespace {

struct LatticeNode {
  SubgroupSet set;
  std::vector<GroupElement> gens;
};

class SetIndex {
 public:
  bool insert_if_new(const std::vector<LatticeNode>& nodes, const SubgroupSet& set) {
    auto [lo, hi] = index_.equal_range(set.hash());
    for (auto it = lo; it != hi; ++it) {
      if (nodes[it->second].set == set) return false;
    }
    index_.emplace(set.hash(), nodes.size());
    return true;
  }

 private:
  std::unordered_multimap<std::size_t, std::size_t> index_;
};

}  // namespace

std::vector<SubgroupSet> brute_force_lattice(const SemidirectLaw& law) {
  if (law.order() > kBruteForceLimit) {
    throw Error(Errc::TooLarge, "brute-force lattice limited to 2^20 elements");
  }
  std::vector<LatticeNode> nodes;
  SetIndex index;
  // Cyclic subgroups. An element already covered by a known cyclic subgroup
  // may still generate a different (larger) one, so every element is tried.
  for (u64 k = 0; k < static_cast<u64>(law.order()); ++k) {
    const GroupElement g = law.unpack(k);
    SubgroupSet set = closure(law, std::span(&g, 1));
    if (index.insert_if_new(nodes, set)) nodes.push_back({std::move(set), {g}});
  }
  const std::size_t cyclic_count = nodes.size();
  // Every subgroup is a join of its cyclic subgroups; extend by one cyclic
  // subgroup at a time until nothing new appears.
  for (std::size_t s = 0; s < nodes.size(); ++s) {
    for (std::size_t c = 0; c < cyclic_count; ++c) {
      if (nodes[c].set.is_subset_of(nodes[s].set)) continue;
      std::vector<GroupElement> gens = nodes[s].gens;
      gens.push_back(nodes[c].gens.front());
      SubgroupSet joined = closure(law, gens);
      if (index.insert_if_new(nodes, joined)) nodes.push_back({std::move(joined), std::move(gens)});
    }
  }
  std::vector<SubgroupSet> out;
  out.reserve(nodes.size());
  for (auto& n : nodes) out.push_back(std::move(n.set));
  std::sort(out.begin(), out.end(), [](const SubgroupSet& l, const SubgroupSet& r) {
    if (l.size() != r.size()) return l.size() < r.size();
    return l.bits() < r.bits();
  });
  return out;
}

bool is_normal(const SemidirectLaw& law, const SubgroupSet& h, std::span<const GroupElement> gens) {
  if (law.order() > kMaterializeLimit) throw Error(Errc::TooLarge, "normality check too large");
  for (u64 k = 0; k < static_cast<u64>(law.order()); ++k) {
    const GroupElement g = law.unpack(k);
    const GroupElement g_inv = inv(law, g);
    for (const auto& s : gens) {
      if (!h.contains(mul(law, mul(law, g, s), g_inv))) return false;
    }
  }
  return true;
}

bool is_normal(const GroupParams& gp, const SubgroupDescriptor& d) {
  const auto gens = generators(gp, d);
  return is_normal(gp.law, closure(gp.law, gens), gens);
}

SubgroupDescriptor commutator_subgroup(const GroupParams& gp) {
  return SubgroupDescriptor::sg1x(commutator_exponent(gp));
}

SubgroupSet brute_force_commutator(const SemidirectLaw& law) {
  if (law.order() > kBruteForceLimit) throw Error(Errc::TooLarge, "commutator brute force too large");
  SubgroupSet seen(law);
  std::vector<GroupElement> distinct;
  const auto n = static_cast<u64>(law.order());
  for (u64 i = 0; i < n; ++i) {
    for (u64 k = 0; k < n; ++k) {
      const GroupElement c = commutator(law, law.unpack(i), law.unpack(k));
      if (!seen.contains(c)) {
        seen.insert(c);
        distinct.push_back(c);
      }
    }
  }
  return closure(law, distinct);
}

int intersect_with_axis(const GroupParams& gp, const SubgroupSet& h, Axis axis) {
  if (axis == Axis::X) {
    int m = gp.r;
    for (i64 a = 1; a < gp.p_r(); ++a) {
      if (h.contains({a, 0})) m = std::min(m, p_valuation_capped(a, gp.p, gp.r));
    }
    return m;
  }
  int n = 2;
  for (i64 b = 1; b < gp.p_sq(); ++b) {
    if (h.contains({0, b})) n = std::min(n, p_valuation_capped(b, gp.p, 2));
  }
  return n;
}

SubgroupDescriptor canonicalize(const GroupParams& gp, std::span<const GroupElement> gens) {
  const SubgroupSet set = closure(gp.law, gens);
  if (auto d = catalog_for(gp)->find(set)) return *d;
  throw Error(Errc::NotInCatalog, "subgroup of order " + std::to_string(set.size()) +
                                      " matches no catalog descriptor");
}

std::vector<SubgroupDescriptor> direct_routine_subgroups(const GroupParams& gp) {
  std::vector<SubgroupDescriptor> out;
  for (int k = 1; k <= 3; ++k) out.push_back(SubgroupDescriptor::sg1x(k));
  out.push_back(SubgroupDescriptor::sg2(1, 1));
  out.push_back(SubgroupDescriptor::sg2(2, 1));
  const i64 p = gp.p;
  for (i64 t = 1; t < p; ++t) {
    for (int k = 0; k <= 2; ++k) out.push_back(SubgroupDescriptor::sg1m(t, k, 1));
    for (int k = 0; k <= 1; ++k) out.push_back(SubgroupDescriptor::sg3(t, k));
  }
  for (i64 t = 1; t < p * p; ++t) {
    if (t % p == 0) continue;
    for (int k = 0; k <= 1; ++k) out.push_back(SubgroupDescriptor::sg1m(t, k, 0));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace hsp
