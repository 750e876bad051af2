#include "sqrlat/error.hpp"

#include <cstdlib>

namespace sqrlat {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_input: return "invalid_input";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::budget: return "budget";
    case ErrorKind::numerical: return "numerical";
  }
  return "unknown";
}

int default_precision_bits() {
  const char* env = std::getenv("SQRLAT_PRECISION");
  if (env == nullptr || *env == '\0') return 64;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 32 || v > 4096)
    throw Error(ErrorKind::invalid_input, "bad_precision",
                "SQRLAT_PRECISION must be an integer number of bits in [32, 4096]");
  return static_cast<int>(v);
}

}  // namespace sqrlat
