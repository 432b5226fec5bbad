#pragma once

#include <string>
#include <vector>

namespace coplanar {

// Running maximum of a residual together with where it was attained.
struct Residual {
  double value = 0.0;
  std::string where;

  template <class Describe>
  void update(double r, Describe&& describe) {
    if (r > value) {
      value = r;
      where = describe();
    }
  }
  void merge(const Residual& other) {
    if (other.value > value) *this = other;
  }
};

struct CheckRecord {
  std::string suite;
  std::string name;
  int degree = -1;
  double max_residual = 0.0;
  std::string worst_index;
  bool pass = true;
  // Informational records are reported but never gate the overall result.
  bool informational = false;
  bool skipped = false;
  std::string note;
};

inline CheckRecord make_record(std::string suite, std::string name, int degree, const Residual& r, double tol) {
  CheckRecord rec;
  rec.suite = std::move(suite);
  rec.name = std::move(name);
  rec.degree = degree;
  rec.max_residual = r.value;
  rec.worst_index = r.where;
  rec.pass = r.value < tol;
  return rec;
}

using CheckList = std::vector<CheckRecord>;

inline bool all_pass(const CheckList& list) {
  for (const auto& r : list)
    if (!r.pass && !r.informational) return false;
  return true;
}

}  // namespace coplanar
