#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "coplanar/coaction.hpp"

namespace coplanar {

// Rejected input, with a JSON pointer to the offending field.
class SpecError : public Error {
 public:
  SpecError(const std::string& path, const std::string& what) : Error(path + ": " + what), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct RunSettings {
  int n_max = 4;
  double tolerance = kDefaultTolerance;
  std::vector<std::string> suites;  // empty: all
  std::uint64_t seed = 20240601;
};

struct SpecFile {
  std::optional<IndexedAlgebra> algebra;
  std::shared_ptr<const HopfData> hopf;
  std::optional<CoactionTable> coaction;
  std::string coaction_kind;
  RunSettings run;
};

bool is_suite_name(const std::string& name);
// 4 when dim A <= 4, otherwise 3.
int default_n_max(const IndexedAlgebra& alg);

SpecFile parse_spec(const nlohmann::json& doc);
SpecFile load_spec(const std::string& path);

}  // namespace coplanar
