#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "coplanar/spec_file.hpp"

namespace coplanar {

// Suites in dependency order.
const std::vector<std::string>& suite_names();
// 2 + position in suite_names(); 0 for success.
int suite_exit_code(const std::string& suite);

struct Report {
  CheckList records;
  bool all_pass = true;
  std::string first_failing_suite;
  int exit_code = 0;
  std::optional<double> delta;
  std::vector<int> poincare;
  int n_max = 0;
  double tolerance = 0.0;
  std::uint64_t seed = 0;
};

Report run(const SpecFile& spec);

// One JSON object per record, then a summary object.
void write_report(std::ostream& out, const Report& report);

}  // namespace coplanar
