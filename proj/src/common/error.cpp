#include "assetval/common/error.hpp"

namespace assetval {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::NoDelimiter: return "NoDelimiter";
    case Errc::EmptyName: return "EmptyName";
    case Errc::EmptySuffix: return "EmptySuffix";
    case Errc::MissingParty: return "MissingParty";
    case Errc::MissingRate: return "MissingRate";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::NonPositiveWeight: return "NonPositiveWeight";
    case Errc::NonPositiveValue: return "NonPositiveValue";
    case Errc::InvalidBounds: return "InvalidBounds";
    case Errc::SchemaMismatch: return "SchemaMismatch";
    case Errc::MalformedLine: return "MalformedLine";
    case Errc::NegativeCount: return "NegativeCount";
    case Errc::SequenceTooLong: return "SequenceTooLong";
    case Errc::MissingField: return "MissingField";
    case Errc::InvalidValue: return "InvalidValue";
    case Errc::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

void raise(Errc code, const std::string& message) { throw Error(code, message); }

}  // namespace assetval
