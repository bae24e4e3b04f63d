#include "hsp/oracle.hpp"

#include <limits>

namespace hsp {

namespace {
constexpr u64 kUnlabeled = std::numeric_limits<u64>::max();
}

HidingOracle::HidingOracle(const SemidirectLaw& law, const SubgroupSet& hidden)
    : law_(law), hidden_(hidden), table_(static_cast<std::size_t>(law.order()), kUnlabeled) {
  if (!(hidden.law() == law)) throw Error(Errc::InvalidArgument, "subgroup from another group");
  const auto members = hidden.elements();
  // Scanning in packed (= lexicographic) order, the first unlabeled element
  // of a coset is its least element.
  for (u64 k = 0; k < table_.size(); ++k) {
    if (table_[k] != kUnlabeled) continue;
    const GroupElement g = law_.unpack(k);
    for (const auto& h : members) table_[law_.pack(mul(law_, g, h))] = k;
  }
}

Label HidingOracle::lookup(const GroupElement& g) const {
  if (!law_.contains(g)) throw Error(Errc::InvalidArgument, "element outside the group");
  return Label(table_[law_.pack(g)]);
}

Label HidingOracle::query(const GroupElement& g) {
  queries_.fetch_add(1, std::memory_order_relaxed);
  return lookup(g);
}

Label HidingOracle::simulate(const GroupElement& g) {
  simulated_.fetch_add(1, std::memory_order_relaxed);
  return lookup(g);
}

HidingOracle make_oracle(const GroupParams& gp, const SubgroupDescriptor& hidden) {
  return HidingOracle(gp.law, elements(gp, hidden));
}

HidingOracle make_oracle(const SemidirectLaw& law, std::span<const GroupElement> hidden_gens) {
  return HidingOracle(law, closure(law, hidden_gens));
}

SubgroupSet brute_force_recover(CosetOracle& oracle) {
  const SemidirectLaw& law = oracle.law();
  if (law.order() > kBruteForceLimit) throw Error(Errc::TooLarge, "brute-force recovery too large");
  std::vector<Label> labels;
  labels.reserve(static_cast<std::size_t>(law.order()));
  for (u64 k = 0; k < static_cast<u64>(law.order()); ++k) labels.push_back(oracle.query(law.unpack(k)));
  const Label at_identity = labels[law.pack(identity())];
  SubgroupSet out(law);
  for (u64 k = 0; k < labels.size(); ++k) {
    if (labels[k] == at_identity) out.insert(law.unpack(k));
  }
  return out;
}

}  // namespace hsp
