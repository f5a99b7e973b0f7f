#pragma once

#include <stdexcept>
#include <string>

namespace conicpen {

/// Failure categories shared by every module. The CLI and the C API map these
/// onto exit codes / status values.
enum class ErrorCode {
  ParseError,             // malformed input document or literal
  InvalidArgument,        // wrong arity, dimension or flag value
  ZeroVector,             // homogeneous element with all coordinates zero
  CoincidentPoints,
  CoincidentLines,
  CollinearPoints,
  DuplicatePoints,
  DegenerateConfiguration,
  IndeterminatePencil,
  DegenerateChoice,
  CoplanarTriple,
  RankDeficient,
  InvalidDisplacement,
  DegenerateSource,
  BadPentagon,
  ZeroTranslation,
  PointsOffCone,
  DegenerateTriple,
};

const char* error_code_name(ErrorCode code);

/// True for the purely geometric failures (exit code 2 at the CLI).
bool is_geometric(ErrorCode code);

class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw GeometryError(code, std::string(error_code_name(code)) + ": " + what);
}

}  // namespace conicpen
