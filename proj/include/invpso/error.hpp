#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace invpso {

enum class ErrorCode {
  // input / validation errors
  Io,
  Parse,
  DuplicateTid,
  MissingLeadTimeRow,
  MissingRawMaterial,
  DimensionMismatch,
  UnknownTid,
  // configuration / domain errors
  InvalidConfig,
  ZeroPrioritySum,
  DegenerateLeadTimeWeights,
  LogDomain,
};

std::string_view to_string(ErrorCode code) noexcept;

/// True for errors caused by the input data rather than the configuration.
bool is_input_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace invpso
