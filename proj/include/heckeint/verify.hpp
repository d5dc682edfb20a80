#pragma once

#include <functional>
#include <string>
#include <vector>

namespace heckeint {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

struct VerifyOptions {
  /// Smaller parameter grids; every criterion still runs.
  bool fast = false;
  std::string cache_dir;
  unsigned threads = 0;
};

constexpr int kCriterionCount = 10;

/// Runs acceptance criterion `id` (1..10). Exceptions become a failed result.
CriterionResult run_criterion(int id, const VerifyOptions& opt);
/// All criteria in order; `sink` sees each result as soon as it is ready.
std::vector<CriterionResult> run_acceptance(const VerifyOptions& opt,
                                            const std::function<void(const CriterionResult&)>& sink = {});

/// "PASS [3] gauss-equivalence: ..." style line; `timing` adds the seconds.
std::string format_result(const CriterionResult& r, bool timing = false);

}  // namespace heckeint
