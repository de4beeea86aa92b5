#pragma once

#include <stdexcept>
#include <string>

namespace hjm {

enum class ErrorCode {
  kDimensionOverflow,
  kInvalidArgument,
  kDimensionMismatch,
  kDegenerateSphere,
  kGroupTooLarge,
  kBudgetExceeded,
  kMalformedInput,
  kInfeasible,
  kInternal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline void require(bool ok, ErrorCode code, const std::string& what) {
  if (!ok) throw Error(code, what);
}

}  // namespace hjm
