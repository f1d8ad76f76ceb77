// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "bpmed/verify/acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"bpmed acceptance suite"};
  std::string level = "full";
  bpmed::acceptance::Options opts;
  app.add_option("--level", level, "quick or full")->check(CLI::IsMember({"quick", "full"}));
  app.add_flag("--force-literal", opts.force_literal, "use the uncorrected placement formula");
  app.add_option("--threads", opts.par.threads, "OpenMP threads (0 = runtime default)");
  app.add_option("--seed", opts.seed, "base seed for sampled checks");
  CLI11_PARSE(app, argc, argv);
  opts.level = *bpmed::acceptance::parse_level(level);

  int failed = 0;
  bpmed::acceptance::run(opts, [&](const bpmed::acceptance::CriterionResult& r) {
    std::cout << bpmed::acceptance::format(r) << std::endl;
    failed += !r.passed;
  });
  std::cout << (failed ? "FAILED: " + std::to_string(failed) + " of 9 criteria" : std::string("all 9 criteria passed"))
            << std::endl;
  return failed ? 4 : 0;
}
