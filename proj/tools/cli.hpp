#pragma once
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace bpmed::cli {

struct Subcommand {
  std::string_view name;
  std::string_view summary;
  /// Library operations this subcommand is the entry point for.
  std::vector<std::string_view> owns;
  /// Shared plumbing it calls on the way.
  std::vector<std::string_view> uses;
};

const std::vector<Subcommand>& dispatch_table();

/// The library's public operations, each of which some subcommand owns.
const std::vector<std::string_view>& catalog_operations();
/// Helpers reached from several subcommands.
const std::vector<std::string_view>& shared_operations();

/// Parses argv (argv[0] is the program name), runs the subcommand and returns
/// the exit code: 0 ok, 2 invalid input, 3 size limit, 4 verification failure.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace bpmed::cli
