#pragma once

#include <stdexcept>
#include <string>

namespace gal {

// Thrown when a documented precondition is violated by the caller.
class ContractViolation : public std::logic_error {
 public:
  explicit ContractViolation(const std::string& msg) : std::logic_error(msg) {}
};

// Input-data problems (malformed files, invalid graph invariants).
enum class DataCode {
  Malformed,
  SelfLoop,
  DuplicateEdge,
  EdgeOrder,
  NodeRange,
  LabelRange,
  SplitOverlap,
  FeatureDim,
  ArchMismatch,
  VersionMismatch,
};

const char* data_code_name(DataCode code);

class DataError : public std::runtime_error {
 public:
  DataError(DataCode code, const std::string& msg)
      : std::runtime_error(std::string(data_code_name(code)) + ": " + msg),
        code_(code) {}
  DataCode code() const { return code_; }

 private:
  DataCode code_;
};

// NaN or non-finite values detected mid-computation.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

namespace detail {
[[noreturn]] void require_failed(const char* expr, const std::string& msg);
}

#define GAL_REQUIRE(cond, msg)                        \
  do {                                                \
    if (!(cond)) {                                    \
      ::gal::detail::require_failed(#cond, (msg));    \
    }                                                 \
  } while (0)

}  // namespace gal
