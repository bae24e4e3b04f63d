#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hsp/solver.hpp"

namespace hsp {

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitUsage = 2 };

/// Aggregate of `trials` solves of one hidden subgroup.
struct SweepRow {
  SubgroupDescriptor subgroup;
  int trials = 0;
  int successes = 0;
  int first_try = 0;
  u64 total_queries = 0;
  u64 total_iterations = 0;
  /// Wrong answers, failed verification, or exhausted retries.
  int failures = 0;
};

inline constexpr const char* kSweepHeader =
    "subgroup,success_rate,first_try_rate,mean_queries,mean_iterations";

/// Worker count: HSP_SDP_THREADS if set (must be a positive integer), else the
/// hardware concurrency. Throws Errc::InvalidArgument on a malformed value.
unsigned sweep_threads();

/// Full catalog x trials. Cell (k, t) uses seed derive_seed(seed, k * trials + t),
/// so the rows are independent of `threads`.
std::vector<SweepRow> run_sweep(const GroupParams& gp, int trials, u64 seed, unsigned threads,
                                Strategy strategy = Strategy::Auto);

std::string sweep_csv_line(const SweepRow& row);

/// Entry point of the hsp_sdp tool; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hsp
