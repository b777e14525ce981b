#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "multicat/category.hpp"

namespace multicat {

struct CheckOptions {
  /// "all" or one of core, finset, group, graph, module, knot.
  std::string scope = "all";
  std::size_t max_group_order = 12;
  unsigned threads = 1;
  /// Swap in a finite-set instance whose identity maps have multiplicity 2.
  bool inject_fault = false;
};

struct SuiteResult {
  std::string name;
  Report report;
  /// Object pairs whose multiplicities were computed.
  std::size_t pairs = 0;
};

/// Throws DomainError for an unknown scope.
std::vector<SuiteResult> run_checks(const CheckOptions& options);

const std::vector<std::string>& check_scopes();

}  // namespace multicat
