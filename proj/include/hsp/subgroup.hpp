#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "hsp/group.hpp"

namespace hsp {

/// Materialization guards.
inline constexpr i64 kMaterializeLimit = i64{1} << 24;
inline constexpr i64 kBruteForceLimit = i64{1} << 20;

/// The four generator shapes of the subgroup classification:
///   Sg1X      <x^{p^i}>                    0 <= i <= r
///   Sg1Mixed  <x^{t p^i} y^{p^j}>          0 <= i <= r, j in {0,1}, t unit mod p^l,
///                                          l = min(r - i, 2 - j)
///   Sg2       <x^{p^i}, y^{p^j}>           0 <= i < r, j in {0,1}
///   Sg3       <x^{t p^i} y, x^{p^{i+1}}>   0 <= i < r, t unit mod p
/// Unused fields are zero. When l = 0 the unit group is trivial and t = 1.
enum class Form { Sg1X = 0, Sg1Mixed = 1, Sg2 = 2, Sg3 = 3 };

struct SubgroupDescriptor {
  Form form = Form::Sg1X;
  i64 t = 0;
  int i = 0;
  int j = 0;

  static SubgroupDescriptor sg1x(int i) { return {Form::Sg1X, 0, i, 0}; }
  static SubgroupDescriptor sg1m(i64 t, int i, int j) { return {Form::Sg1Mixed, t, i, j}; }
  static SubgroupDescriptor sg2(int i, int j) { return {Form::Sg2, 0, i, j}; }
  static SubgroupDescriptor sg3(i64 t, int i) { return {Form::Sg3, t, i, 0}; }

  friend bool operator==(const SubgroupDescriptor&, const SubgroupDescriptor&) = default;
  /// Canonical order: (form, i, j, t).
  friend std::strong_ordering operator<=>(const SubgroupDescriptor& l,
                                          const SubgroupDescriptor& r) {
    if (auto c = l.form <=> r.form; c != 0) return c;
    if (auto c = l.i <=> r.i; c != 0) return c;
    if (auto c = l.j <=> r.j; c != 0) return c;
    return l.t <=> r.t;
  }
};

/// Compact, comma-free rendering, e.g. "sg1m[t=2 i=0 j=1]".
std::string to_string(const SubgroupDescriptor& d);

/// l = min(r - i, 2 - j) for Sg1Mixed.
int sg1m_unit_exponent(const GroupParams& gp, int i, int j);

/// Throws Errc::InvalidDescriptor if `d` violates the ranges above.
void validate(const GroupParams& gp, const SubgroupDescriptor& d);

/// The literal generator list of the descriptor (one or two elements).
std::vector<GroupElement> generators(const GroupParams& gp, const SubgroupDescriptor& d);

/// A materialized subgroup: one bit per group element in packed order.
class SubgroupSet {
 public:
  explicit SubgroupSet(const SemidirectLaw& law);

  const SemidirectLaw& law() const noexcept { return law_; }
  const boost::dynamic_bitset<>& bits() const noexcept { return bits_; }

  bool contains(const GroupElement& g) const { return law_.contains(g) && bits_[law_.pack(g)]; }
  i64 size() const noexcept { return static_cast<i64>(bits_.count()); }
  /// Elements sorted lexicographically.
  std::vector<GroupElement> elements() const;

  bool is_subset_of(const SubgroupSet& other) const { return bits_.is_subset_of(other.bits_); }
  /// Identity present, closed under mul and inv (exhaustive).
  bool is_closed() const;

  std::size_t hash() const;

  void insert(const GroupElement& g) { bits_.set(law_.pack(g)); }

  friend bool operator==(const SubgroupSet& l, const SubgroupSet& r) {
    return l.law_ == r.law_ && l.bits_ == r.bits_;
  }

 private:
  SemidirectLaw law_;
  boost::dynamic_bitset<> bits_;
};

struct SubgroupSetHash {
  std::size_t operator()(const SubgroupSet& s) const { return s.hash(); }
};

/// <gens>, by breadth-first right multiplication. Throws Errc::TooLarge past
/// kMaterializeLimit.
SubgroupSet closure(const SemidirectLaw& law, std::span<const GroupElement> gens);

/// Throws Errc::TooLarge past kMaterializeLimit.
SubgroupSet elements(const GroupParams& gp, const SubgroupDescriptor& d);

/// The deduplicated descriptor catalog with each entry's element set.
class SubgroupCatalog {
 public:
  struct Entry {
    SubgroupDescriptor descriptor;
    SubgroupSet set;
  };

  explicit SubgroupCatalog(const GroupParams& gp);

  const GroupParams& group() const noexcept { return gp_; }
  const std::vector<Entry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

  /// Canonical descriptor of the subgroup equal to `set`, if any.
  std::optional<SubgroupDescriptor> find(const SubgroupSet& set) const;
  const Entry& at(const SubgroupDescriptor& d) const;

 private:
  GroupParams gp_;
  std::vector<Entry> entries_;
  std::unordered_multimap<std::size_t, std::size_t> by_hash_;
};

/// Every in-range descriptor, in canonical order, each subgroup once.
std::vector<SubgroupDescriptor> all_descriptors(const GroupParams& gp);

/// Process-wide cached catalog for `gp` (thread-safe).
std::shared_ptr<const SubgroupCatalog> catalog_for(const GroupParams& gp);

/// Deduplicated catalog; requires a classified group (r > 4) unless the group
/// was built with Classification::Unchecked, in which case it is still
/// produced for comparison purposes.
std::vector<SubgroupDescriptor> enumerate_catalog(const GroupParams& gp);

/// All subgroups: cyclic subgroups, then joins with cyclic subgroups to a
/// fixpoint. Sorted by (size, bits). Throws Errc::TooLarge past kBruteForceLimit.
std::vector<SubgroupSet> brute_force_lattice(const SemidirectLaw& law);

/// g h g^{-1} in H for every g in G and every generator h of H.
bool is_normal(const GroupParams& gp, const SubgroupDescriptor& d);
bool is_normal(const SemidirectLaw& law, const SubgroupSet& h,
               std::span<const GroupElement> gens);

/// <x^{p^e}> with e = commutator_exponent(gp). Throws Errc::AbelianGroup.
SubgroupDescriptor commutator_subgroup(const GroupParams& gp);

/// Closure of all commutators [g, h].
SubgroupSet brute_force_commutator(const SemidirectLaw& law);

enum class Axis { X, Y };

/// m with H cap <x> = <x^{p^m}> (Axis::X, m = r when trivial) or n with
/// H cap <y> = <y^{p^n}> (Axis::Y, n = 2 when trivial).
int intersect_with_axis(const GroupParams& gp, const SubgroupSet& h, Axis axis);

/// Catalog descriptor whose element set is <gens>. Throws Errc::NotInCatalog.
SubgroupDescriptor canonicalize(const GroupParams& gp, std::span<const GroupElement> gens);

/// The subgroups reached by the direct Fourier routines: <x^{p^k}> (1<=k<=3),
/// <x^p, y^p>, <x^{p^2}, y^p>, <x^{t p^k} y^p> (k<=2), <x^{t p^k} y, x^{p^{k+1}}>
/// (k<=1) for t unit mod p, and <x^{t p^k} y> (k<=1) for t unit mod p^2.
std::vector<SubgroupDescriptor> direct_routine_subgroups(const GroupParams& gp);

}  // namespace hsp
