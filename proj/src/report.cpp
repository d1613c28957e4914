#include "nbihom/report.hpp"

#include <algorithm>
#include <stdexcept>

namespace nbihom {

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::HypothesisNotMet:
      return "hypothesis not met";
  }
  return "unknown";
}

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed(); });
}

bool Report::any_failed() const {
  return std::any_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.status == Status::Fail; });
}

bool Report::any_hypothesis_not_met() const {
  return std::any_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.status == Status::HypothesisNotMet; });
}

const CheckResult* Report::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

const CheckResult& Report::at(const std::string& name) const {
  if (const auto* c = find(name)) return *c;
  throw std::out_of_range("report has no check named '" + name + "'");
}

void ResultBuilder::fail(std::vector<std::size_t> indices, std::optional<std::size_t> position, const Vector& lhs,
                         const Vector& rhs, std::string detail) {
  ++result_.instances;
  result_.status = Status::Fail;
  Witness w{std::move(indices), position, {}, {}, {}};
  if (result_.failures.empty()) {
    w.lhs = lhs;
    w.rhs = rhs;
    w.detail = std::move(detail);
  }
  result_.failures.push_back(std::move(w));
}

CheckResult ResultBuilder::finish() && { return std::move(result_); }

}  // namespace nbihom
