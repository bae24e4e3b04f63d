#include "hsp/json_io.hpp"

#include <array>
#include <set>

namespace hsp {

namespace {

constexpr std::array<const char*, 4> kFormNames{"sg1x", "sg1m", "sg2", "sg3"};

[[noreturn]] void bad(const std::string& why) { throw Error(Errc::InvalidDescriptor, why); }

template <typename T>
T field(const ordered_json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field \"") + key + "\"");
  if (!it->is_number_integer()) bad(std::string("field \"") + key + "\" must be an integer");
  return it->get<T>();
}

}  // namespace

ordered_json to_json(const SubgroupDescriptor& d) {
  ordered_json j;
  j["form"] = kFormNames[static_cast<int>(d.form)];
  switch (d.form) {
    case Form::Sg1X:
      j["i"] = d.i;
      break;
    case Form::Sg1Mixed:
      j["t"] = d.t;
      j["i"] = d.i;
      j["j"] = d.j;
      break;
    case Form::Sg2:
      j["i"] = d.i;
      j["j"] = d.j;
      break;
    case Form::Sg3:
      j["t"] = d.t;
      j["i"] = d.i;
      break;
  }
  return j;
}

SubgroupDescriptor descriptor_from_json(const ordered_json& j) {
  if (!j.is_object()) bad("descriptor must be a JSON object");
  const auto form_it = j.find("form");
  if (form_it == j.end() || !form_it->is_string()) bad("missing string field \"form\"");
  const std::string form = form_it->get<std::string>();

  std::set<std::string> allowed{"form", "i"};
  SubgroupDescriptor d;
  if (form == "sg1x") {
    d = SubgroupDescriptor::sg1x(field<int>(j, "i"));
  } else if (form == "sg1m") {
    allowed.insert({"t", "j"});
    d = SubgroupDescriptor::sg1m(field<i64>(j, "t"), field<int>(j, "i"), field<int>(j, "j"));
  } else if (form == "sg2") {
    allowed.insert("j");
    d = SubgroupDescriptor::sg2(field<int>(j, "i"), field<int>(j, "j"));
  } else if (form == "sg3") {
    allowed.insert("t");
    d = SubgroupDescriptor::sg3(field<i64>(j, "t"), field<int>(j, "i"));
  } else {
    bad("unknown form \"" + form + "\"");
  }
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) bad("unexpected field \"" + key + "\" for form " + form);
  }
  return d;
}

ordered_json to_json(const GroupParams& gp) {
  return {{"p", gp.p}, {"r", gp.r}, {"tau", gp.tau}, {"class", to_string(gp.group_class)}, {"alpha", gp.alpha}};
}

ordered_json to_json(const GroupElement& g) { return ordered_json::array({g.a, g.b}); }

ordered_json to_json(const SolveReport& report) {
  ordered_json j;
  j["group"] = to_json(report.group);
  j["recovered"] = to_json(report.recovered);
  j["strategy"] = to_string(report.strategy);
  j["branch"] = report.branch;
  j["m"] = report.m;
  j["n"] = report.n;
  j["oracle_queries"] = report.oracle_queries;
  j["simulation_cost"] = report.simulation_cost;
  j["iterations"] = report.iterations;
  j["retries"] = report.retries;
  j["seed"] = report.seed;
  j["verified"] = report.verified;
  return j;
}

ordered_json to_json(const CompositeParams& cp) { return {{"N", cp.N}, {"p", cp.p}, {"alpha", cp.alpha}}; }

CompositeParams composite_from_json(const ordered_json& j) {
  if (!j.is_object()) throw Error(Errc::InvalidArgument, "composite instance must be a JSON object");
  auto get = [&j](const char* key) {
    const auto it = j.find(key);
    if (it == j.end() || !it->is_number_integer()) {
      throw Error(Errc::InvalidArgument, std::string("composite field \"") + key + "\" must be an integer");
    }
    return it->get<i64>();
  };
  return make_composite(get("N"), get("p"), get("alpha"));
}

ordered_json to_json(const CompositeReport& report) {
  ordered_json factors = ordered_json::array();
  for (const auto& f : report.abelian) {
    factors.push_back({{"modulus", f.modulus}, {"generator", f.generator}, {"order", f.order}, {"rounds", f.rounds}});
  }
  ordered_json gens = ordered_json::array();
  for (const auto& g : report.generators) gens.push_back(to_json(g));
  ordered_json j;
  j["semidirect"] = to_json(report.semidirect);
  j["abelian_factors"] = std::move(factors);
  j["generators"] = std::move(gens);
  j["oracle_queries"] = report.oracle_queries;
  j["simulation_cost"] = report.simulation_cost;
  j["seed"] = report.seed;
  j["verified"] = report.verified;
  return j;
}

std::vector<GroupElement> elements_from_json(const ordered_json& j) {
  if (!j.is_array()) throw Error(Errc::InvalidArgument, "generator list must be a JSON array");
  std::vector<GroupElement> out;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
      throw Error(Errc::InvalidArgument, "each generator must be [a, b]");
    }
    out.push_back({e[0].get<i64>(), e[1].get<i64>()});
  }
  return out;
}

}  // namespace hsp
