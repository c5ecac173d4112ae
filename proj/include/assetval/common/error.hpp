#pragma once

#include <stdexcept>
#include <string>

namespace assetval {

// Error codes shared across modules. Rejection of a transaction during
// filtering is a result, not an error, and has its own enum.
enum class Errc {
  NoDelimiter,
  EmptyName,
  EmptySuffix,
  MissingParty,
  MissingRate,
  EmptyInput,
  ShapeMismatch,
  NonPositiveWeight,
  NonPositiveValue,
  InvalidBounds,
  SchemaMismatch,
  MalformedLine,
  NegativeCount,
  SequenceTooLong,
  MissingField,
  InvalidValue,
  IoFailure,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void raise(Errc code, const std::string& message);

}  // namespace assetval
