#include "groupoidal/report.hpp"

#include <algorithm>

namespace groupoidal {

std::size_t ValidationReport::index_of(const std::string& check) {
  auto it = std::find_if(evaluated_.begin(), evaluated_.end(),
                         [&](const auto& e) { return e.first == check; });
  if (it != evaluated_.end()) return static_cast<std::size_t>(it - evaluated_.begin());
  evaluated_.emplace_back(check, 0);
  return evaluated_.size() - 1;
}

void ValidationReport::fail(std::string check, std::string detail, std::vector<long long> witness) {
  index_of(check);
  violations_.push_back({std::move(check), std::move(detail), std::move(witness)});
}

void ValidationReport::merge(const ValidationReport& other) {
  for (const auto& [name, count] : other.evaluated_) evaluated_[index_of(name)].second += count;
  violations_.insert(violations_.end(), other.violations_.begin(), other.violations_.end());
}

std::size_t ValidationReport::failures(const std::string& check) const {
  return static_cast<std::size_t>(std::count_if(violations_.begin(), violations_.end(),
                                                [&](const Violation& v) { return v.check == check; }));
}

}  // namespace groupoidal
