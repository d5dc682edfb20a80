// One line per acceptance criterion; the exit code is the number of failures.
#include <cstdio>
#include <cstdlib>

#include "heckeint/verify.hpp"

int main(int argc, char** argv) {
  heckeint::VerifyOptions opt;
  if (const char* dir = std::getenv("HECKEINT_CACHE_DIR")) opt.cache_dir = dir;
  for (int i = 1; i < argc; ++i)
    if (std::string(argv[i]) == "--fast") opt.fast = true;
  int failed = 0;
  heckeint::run_acceptance(opt, [&](const heckeint::CriterionResult& r) {
    std::printf("%s\n", heckeint::format_result(r, true).c_str());
    std::fflush(stdout);
    failed += !r.passed;
  });
  std::printf("%d of %d criteria passed\n", heckeint::kCriterionCount - failed, heckeint::kCriterionCount);
  return failed;
}
