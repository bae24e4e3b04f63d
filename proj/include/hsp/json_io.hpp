#pragma once

#include <json.hpp>

#include "hsp/composite.hpp"
#include "hsp/solver.hpp"
#include "hsp/subgroup.hpp"

namespace hsp {

using nlohmann::ordered_json;

/// {"form":"sg1x"|"sg1m"|"sg2"|"sg3", "t", "i", "j"}; fields unused by the form
/// are omitted on output and rejected on input.
ordered_json to_json(const SubgroupDescriptor& d);
SubgroupDescriptor descriptor_from_json(const ordered_json& j);

ordered_json to_json(const GroupParams& gp);
ordered_json to_json(const GroupElement& g);
ordered_json to_json(const SolveReport& report);

/// {"N","p","alpha"}.
ordered_json to_json(const CompositeParams& cp);
CompositeParams composite_from_json(const ordered_json& j);
ordered_json to_json(const CompositeReport& report);

/// [[a,b], ...].
std::vector<GroupElement> elements_from_json(const ordered_json& j);

}  // namespace hsp
