#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nbihom/exactla.hpp"

namespace nbihom {

enum class Status { Pass, Fail, HypothesisNotMet };

std::string to_string(Status s);

// A failing instance. `indices` are basis indices of the tuple; `position` is the
// slot or swap index when the identity has one. lhs/rhs are filled for the first
// (lexicographically smallest) failure only.
struct Witness {
  std::vector<std::size_t> indices;
  std::optional<std::size_t> position;
  Vector lhs;
  Vector rhs;
  std::string detail;

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct CheckResult {
  std::string name;
  Status status = Status::Pass;
  std::size_t instances = 0;
  std::vector<Witness> failures;
  std::string note;

  bool passed() const { return status == Status::Pass; }
  const Witness* witness() const { return failures.empty() ? nullptr : &failures.front(); }
};

struct Report {
  std::string subject;
  std::vector<CheckResult> checks;

  bool passed() const;
  bool any_failed() const;
  bool any_hypothesis_not_met() const;
  const CheckResult* find(const std::string& name) const;
  const CheckResult& at(const std::string& name) const;
};

// Helper used by every checker: records one checked instance.
class ResultBuilder {
 public:
  explicit ResultBuilder(std::string name) { result_.name = std::move(name); }

  void pass() { ++result_.instances; }
  void fail(std::vector<std::size_t> indices, std::optional<std::size_t> position, const Vector& lhs,
            const Vector& rhs, std::string detail = {});
  void check(bool ok, std::vector<std::size_t> indices, std::optional<std::size_t> position, const Vector& lhs,
             const Vector& rhs, std::string detail = {}) {
    if (ok) {
      pass();
    } else {
      fail(std::move(indices), position, lhs, rhs, std::move(detail));
    }
  }
  void note(std::string text) { result_.note = std::move(text); }
  CheckResult finish() &&;

 private:
  CheckResult result_;
};

}  // namespace nbihom
