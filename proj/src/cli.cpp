#include "hsp/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <mutex>
#include <thread>
#include <unordered_set>

#include <CLI11.hpp>

#include "hsp/composite.hpp"
#include "hsp/json_io.hpp"

namespace hsp {

unsigned sweep_threads() {
  if (const char* env = std::getenv("HSP_SDP_THREADS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1 || v > 1024) {
      throw Error(Errc::InvalidArgument, std::string("HSP_SDP_THREADS must be a positive integer, got \"") + env + "\"");
    }
    return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<SweepRow> run_sweep(const GroupParams& gp, int trials, u64 seed, unsigned threads,
                                Strategy strategy) {
  if (trials < 1) throw Error(Errc::InvalidArgument, "trials must be positive");
  const auto catalog = catalog_for(gp);
  const auto& entries = catalog->entries();
  const std::size_t cells = entries.size() * static_cast<std::size_t>(trials);

  struct Cell {
    bool success = false;
    bool first_try = false;
    u64 queries = 0;
    u64 iterations = 0;
  };
  std::vector<Cell> results(cells);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t c = next++; c < cells; c = next++) {
      const auto& entry = entries[c / static_cast<std::size_t>(trials)];
      HidingOracle oracle(gp.law, entry.set);
      Cell& cell = results[c];
      try {
        const SolveReport rep = solve(gp, oracle, strategy, derive_seed(seed, c));
        cell.success = rep.verified && rep.recovered == entry.descriptor;
        cell.first_try = cell.success && rep.first_try();
        cell.queries = rep.oracle_queries;
        cell.iterations = static_cast<u64>(rep.iterations);
      } catch (const Error& e) {
        if (e.code() != Errc::RetriesExhausted && e.code() != Errc::VerificationFailed) throw;
        cell.queries = oracle.queries();
      }
    }
  };

  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(cells)));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (unsigned k = 0; k < n; ++k) {
      pool.emplace_back([&] {
        try {
          worker();
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = cells;
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  std::vector<SweepRow> rows;
  rows.reserve(entries.size());
  for (std::size_t k = 0; k < entries.size(); ++k) {
    SweepRow row;
    row.subgroup = entries[k].descriptor;
    row.trials = trials;
    for (int t = 0; t < trials; ++t) {
      const Cell& cell = results[k * static_cast<std::size_t>(trials) + static_cast<std::size_t>(t)];
      row.successes += cell.success;
      row.first_try += cell.first_try;
      row.failures += !cell.success;
      row.total_queries += cell.queries;
      row.total_iterations += cell.iterations;
    }
    rows.push_back(row);
  }
  std::sort(rows.begin(), rows.end(), [](const SweepRow& l, const SweepRow& r) { return l.subgroup < r.subgroup; });
  return rows;
}

std::string sweep_csv_line(const SweepRow& row) {
  const double n = row.trials;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s,%.4f,%.4f,%.2f,%.2f", to_string(row.subgroup).c_str(), row.successes / n,
                row.first_try / n, static_cast<double>(row.total_queries) / n,
                static_cast<double>(row.total_iterations) / n);
  return buf;
}

namespace {

struct GroupArgs {
  i64 p = 3;
  int r = 5;
  i64 tau = 1;
};

void add_group_options(CLI::App* cmd, GroupArgs& g) {
  cmd->add_option("--p", g.p, "odd prime p")->required();
  cmd->add_option("--r", g.r, "exponent r of Z_{p^r}, r > 4")->required();
  cmd->add_option("--tau", g.tau, "twist: alpha = tau p^{r-2} + 1, 0 <= tau < p^2")->required();
}

/// Output sink: --out file when given, else the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw Error(Errc::InvalidArgument, "cannot open --out file " + path);
      stream_ = &file_;
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

Strategy parse_strategy(const std::string& s) {
  if (s == "auto") return Strategy::Auto;
  if (s == "direct") return Strategy::Direct;
  if (s == "abelianization") return Strategy::Abelianization;
  throw Error(Errc::InvalidArgument, "unknown strategy " + s);
}

ordered_json parse_json_arg(const std::string& text, const char* what) {
  try {
    return ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw Error(Errc::InvalidArgument, std::string("malformed ") + what + " JSON: " + e.what());
  }
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::RetriesExhausted:
    case Errc::VerificationFailed:
      return kExitFailure;
    default:
      return kExitUsage;
  }
}

int cmd_enumerate(const GroupArgs& g, const std::string& out_path, std::ostream& out) {
  const GroupParams gp = make_group(g.p, g.r, g.tau);
  const auto catalog = catalog_for(gp);
  Sink sink(out_path, out);
  for (const auto& entry : catalog->entries()) {
    ordered_json line;
    line["subgroup"] = to_json(entry.descriptor);
    line["order"] = entry.set.size();
    line["normal"] = is_normal(gp, entry.descriptor);
    *sink << line.dump() << '\n';
  }
  return kExitOk;
}

int cmd_solve(const GroupArgs& g, const std::string& subgroup, const std::string& gens, const std::string& strategy,
              u64 seed, const std::string& out_path, std::ostream& out) {
  const GroupParams gp = make_group(g.p, g.r, g.tau);
  const Strategy s = parse_strategy(strategy);
  auto build = [&]() -> HidingOracle {
    if (!subgroup.empty()) {
      const auto d = descriptor_from_json(parse_json_arg(subgroup, "--subgroup"));
      validate(gp, d);
      return make_oracle(gp, d);
    }
    const auto elems = elements_from_json(parse_json_arg(gens, "--gens"));
    for (const auto& e : elems) {
      if (!gp.law.contains(e)) throw Error(Errc::InvalidArgument, "generator outside the group");
    }
    return make_oracle(gp.law, elems);
  };
  HidingOracle oracle = build();
  const SolveReport report = solve(gp, oracle, s, seed);
  Sink sink(out_path, out);
  *sink << to_json(report).dump() << '\n';
  return report.verified ? kExitOk : kExitFailure;
}

int cmd_sweep(const GroupArgs& g, int trials, u64 seed, const std::string& out_path, std::ostream& out) {
  const GroupParams gp = make_group(g.p, g.r, g.tau);
  const auto rows = run_sweep(gp, trials, seed, sweep_threads());
  Sink sink(out_path, out);
  *sink << kSweepHeader << '\n';
  bool clean = true;
  for (const auto& row : rows) {
    *sink << sweep_csv_line(row) << '\n';
    clean = clean && row.failures == 0;
  }
  return clean ? kExitOk : kExitFailure;
}

int cmd_verify_catalog(const GroupArgs& g, std::ostream& out, std::ostream& err) {
  const GroupParams gp = make_group(g.p, g.r, g.tau);
  if (gp.order() > kBruteForceLimit) throw Error(Errc::TooLarge, "|G| exceeds the brute-force limit 2^20");
  const auto catalog = catalog_for(gp);
  const auto lattice = brute_force_lattice(gp.law);

  std::vector<std::string> diff;
  std::unordered_set<SubgroupSet, SubgroupSetHash> from_catalog;
  for (const auto& e : catalog->entries()) from_catalog.insert(e.set);
  std::unordered_set<SubgroupSet, SubgroupSetHash> from_lattice(lattice.begin(), lattice.end());
  for (const auto& e : catalog->entries()) {
    if (!e.set.is_closed()) diff.push_back("not a subgroup: " + to_string(e.descriptor));
    if (!from_lattice.count(e.set)) diff.push_back("catalog only: " + to_string(e.descriptor));
  }
  for (const auto& h : lattice) {
    if (from_catalog.count(h)) continue;
    std::ostringstream s;
    s << "lattice only: order " << h.size() << " {";
    const auto elems = h.elements();
    for (std::size_t k = 0; k < std::min<std::size_t>(elems.size(), 8); ++k) {
      s << (k ? " " : "") << '(' << elems[k].a << ',' << elems[k].b << ')';
    }
    s << (elems.size() > 8 ? " ...}" : "}");
    diff.push_back(s.str());
  }

  if (!gp.abelian()) {
    const SubgroupDescriptor comm = commutator_subgroup(gp);
    const SubgroupSet& comm_set = catalog->at(comm).set;
    if (!(brute_force_commutator(gp.law) == comm_set)) {
      diff.push_back("commutator subgroup differs from " + to_string(comm));
    }
    if (gp.group_class == GroupClass::Class1) {
      for (const auto& d : direct_routine_subgroups(gp)) {
        if (!is_normal(gp, d)) diff.push_back("not normal: " + to_string(d));
        if (!comm_set.is_subset_of(catalog->at(d).set)) diff.push_back("misses [G,G]: " + to_string(d));
      }
    }
  }

  for (const auto& line : diff) err << line << '\n';
  out << "catalog " << catalog->size() << " lattice " << lattice.size() << ' '
      << (diff.empty() ? "ok" : "MISMATCH") << '\n';
  return diff.empty() ? kExitOk : kExitFailure;
}

int cmd_solve_composite(const std::string& instance, i64 N, i64 p, i64 alpha, const std::string& gens, u64 seed,
                        const std::string& out_path, std::ostream& out) {
  const CompositeParams cp =
      instance.empty() ? make_composite(N, p, alpha) : composite_from_json(parse_json_arg(instance, "--instance"));
  const auto elems = elements_from_json(parse_json_arg(gens, "--gens"));
  for (const auto& e : elems) {
    if (!cp.law.contains(e)) throw Error(Errc::InvalidArgument, "generator outside the group");
  }
  HidingOracle oracle = make_oracle(cp.law, elems);
  const CompositeReport report = solve_composite(cp, oracle, seed);
  Sink sink(out_path, out);
  *sink << to_json(report).dump() << '\n';
  return report.verified ? kExitOk : kExitFailure;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hidden subgroups of Z_{p^r} x| Z_{p^2} by exact simulation", "hsp_sdp"};
  app.require_subcommand(1);

  GroupArgs g;
  std::string out_path;
  std::string subgroup;
  std::string gens;
  std::string strategy = "auto";
  std::string instance;
  u64 seed = 0;
  int trials = 25;
  i64 N = 0;
  i64 cp_p = 0;
  i64 cp_alpha = 0;

  auto* enumerate = app.add_subcommand("enumerate", "print the subgroup catalog as JSON lines");
  add_group_options(enumerate, g);
  enumerate->add_option("--out", out_path, "write to a file instead of stdout");

  auto* solve_cmd = app.add_subcommand("solve", "recover a hidden subgroup, print a JSON report");
  add_group_options(solve_cmd, g);
  auto* sub_opt = solve_cmd->add_option("--subgroup", subgroup, "hidden subgroup descriptor JSON");
  auto* gens_opt = solve_cmd->add_option("--gens", gens, "hidden subgroup generators, [[a,b],...]");
  sub_opt->excludes(gens_opt);
  solve_cmd->add_option("--strategy", strategy, "auto | direct | abelianization")
      ->check(CLI::IsMember({"auto", "direct", "abelianization"}));
  solve_cmd->add_option("--seed", seed, "RNG seed");
  solve_cmd->add_option("--out", out_path, "write to a file instead of stdout");

  auto* sweep = app.add_subcommand("sweep", "solve every catalog subgroup repeatedly, print CSV");
  add_group_options(sweep, g);
  sweep->add_option("--trials", trials, "trials per subgroup")->check(CLI::PositiveNumber);
  sweep->add_option("--seed", seed, "base seed");
  sweep->add_option("--out", out_path, "write to a file instead of stdout");

  auto* verify = app.add_subcommand("verify-catalog", "compare the catalog with the brute-force lattice");
  add_group_options(verify, g);

  auto* composite = app.add_subcommand("solve-composite", "hidden subgroup of Z_N x| Z_{p^2}");
  auto* inst_opt = composite->add_option("--instance", instance, "{\"N\":..,\"p\":..,\"alpha\":..}");
  auto* n_opt = composite->add_option("--N", N, "modulus N");
  auto* p_opt = composite->add_option("--p", cp_p, "odd prime p, p^5 | N");
  auto* a_opt = composite->add_option("--alpha", cp_alpha, "twist, alpha^{p^2} = 1 mod N");
  n_opt->needs(p_opt, a_opt);
  inst_opt->excludes(n_opt, p_opt, a_opt);
  composite->add_option("--gens", gens, "hidden subgroup generators, [[a,b],...]")->required();
  composite->add_option("--seed", seed, "RNG seed");
  composite->add_option("--out", out_path, "write to a file instead of stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*enumerate) return cmd_enumerate(g, out_path, out);
    if (*solve_cmd) {
      if (subgroup.empty() && gens.empty()) {
        err << "error: solve needs --subgroup or --gens\n";
        return kExitUsage;
      }
      return cmd_solve(g, subgroup, gens, strategy, seed, out_path, out);
    }
    if (*sweep) return cmd_sweep(g, trials, seed, out_path, out);
    if (*verify) return cmd_verify_catalog(g, out, err);
    if (instance.empty() && !*n_opt) {
      err << "error: solve-composite needs --instance or --N/--p/--alpha\n";
      return kExitUsage;
    }
    return cmd_solve_composite(instance, N, cp_p, cp_alpha, gens, seed, out_path, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
}

}  // namespace hsp
