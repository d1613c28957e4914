#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace nbihom {

// Operand sizes disagree (vector lengths, matrix shapes, ambient dimensions).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A value violates the invariants of its type.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

// A construction or solver was called outside its stated hypotheses.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace nbihom
