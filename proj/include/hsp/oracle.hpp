#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <vector>

#include "hsp/group.hpp"
#include "hsp/subgroup.hpp"

namespace hsp {

class HidingOracle;

/// Opaque coset label. Only equality and hashing are available to callers;
/// the numeric value is reachable solely through debug_value().
class Label {
 public:
  friend bool operator==(const Label&, const Label&) = default;
  std::size_t hash() const noexcept { return std::hash<u64>{}(value_); }
  u64 debug_value() const noexcept { return value_; }

 private:
  friend class HidingOracle;
  explicit Label(u64 value) : value_(value) {}
  u64 value_;
};

struct LabelHash {
  std::size_t operator()(const Label& l) const noexcept { return l.hash(); }
};

/// Access to a hiding function f: G -> labels. `query` is a counted oracle
/// call; `simulate` evaluates f on behalf of the classical simulator of a
/// quantum routine and is counted separately as simulation cost.
class CosetOracle {
 public:
  virtual ~CosetOracle() = default;

  virtual const SemidirectLaw& law() const = 0;
  virtual Label query(const GroupElement& g) = 0;
  virtual Label simulate(const GroupElement& g) = 0;
  virtual u64 queries() const = 0;
  virtual u64 simulation_cost() const = 0;
};

/// f(g) = lexicographically least element of gH, precomputed for all of G.
class HidingOracle final : public CosetOracle {
 public:
  HidingOracle(const SemidirectLaw& law, const SubgroupSet& hidden);

  const SemidirectLaw& law() const override { return law_; }
  Label query(const GroupElement& g) override;
  Label simulate(const GroupElement& g) override;
  u64 queries() const override { return queries_.load(std::memory_order_relaxed); }
  u64 simulation_cost() const override { return simulated_.load(std::memory_order_relaxed); }

  /// The sealed hidden subgroup; for test verification only.
  const SubgroupSet& sealed_subgroup_for_testing() const noexcept { return hidden_; }

 private:
  Label lookup(const GroupElement& g) const;

  SemidirectLaw law_;
  SubgroupSet hidden_;
  std::vector<u64> table_;
  std::atomic<u64> queries_{0};
  std::atomic<u64> simulated_{0};
};

HidingOracle make_oracle(const GroupParams& gp, const SubgroupDescriptor& hidden);
HidingOracle make_oracle(const SemidirectLaw& law, std::span<const GroupElement> hidden_gens);

/// f restricted along an embedding of a smaller group into the parent's
/// group: g -> f(embed(g)). Hides embed^{-1}(H). Counters are the parent's.
class RestrictedOracle final : public CosetOracle {
 public:
  using Embedding = std::function<GroupElement(const GroupElement&)>;

  RestrictedOracle(CosetOracle& parent, const SemidirectLaw& law, Embedding embed)
      : parent_(&parent), law_(law), embed_(std::move(embed)) {}

  const SemidirectLaw& law() const override { return law_; }
  Label query(const GroupElement& g) override { return parent_->query(embed_(g)); }
  Label simulate(const GroupElement& g) override { return parent_->simulate(embed_(g)); }
  u64 queries() const override { return parent_->queries(); }
  u64 simulation_cost() const override { return parent_->simulation_cost(); }

 private:
  CosetOracle* parent_;
  SemidirectLaw law_;
  Embedding embed_;
};

/// {g : f(g) = f(1)} by querying every element once (|G| queries).
SubgroupSet brute_force_recover(CosetOracle& oracle);

}  // namespace hsp
