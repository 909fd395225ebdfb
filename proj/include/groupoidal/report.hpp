#ifndef GROUPOIDAL_REPORT_HPP
#define GROUPOIDAL_REPORT_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace groupoidal {

struct Violation {
  std::string check;
  std::string detail;
  std::vector<long long> witness;
};

// Total (not fail-fast) collection of check outcomes.
class ValidationReport {
 public:
  void record(const std::string& check) { ++evaluated_[index_of(check)].second; }
  void fail(std::string check, std::string detail, std::vector<long long> witness = {});
  void merge(const ValidationReport& other);

  bool ok() const { return violations_.empty(); }
  const std::vector<Violation>& violations() const { return violations_; }
  // Checks in first-seen order with their evaluation counts.
  const std::vector<std::pair<std::string, std::size_t>>& evaluated() const { return evaluated_; }
  std::size_t failures(const std::string& check) const;
  bool passed(const std::string& check) const { return failures(check) == 0; }

 private:
  std::size_t index_of(const std::string& check);

  std::vector<Violation> violations_;
  std::vector<std::pair<std::string, std::size_t>> evaluated_;
};

}  // namespace groupoidal

#endif
