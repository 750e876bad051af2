#pragma once

#include <stdexcept>
#include <string>

namespace sqrlat {

enum class ErrorKind {
  invalid_input,   // malformed or out-of-domain arguments
  precondition,    // mathematical precondition of an operation failed
  budget,          // search or truncation budget exhausted
  numerical,       // a numeric quantity is too close to a singularity
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& what)
      : std::runtime_error(what), kind_(kind), code_(std::move(code)) {}

  ErrorKind kind() const { return kind_; }
  // stable machine-readable identifier, e.g. "reducible_polynomial"
  const std::string& code() const { return code_; }

 private:
  ErrorKind kind_;
  std::string code_;
};

const char* to_string(ErrorKind kind);

// Working precision in bits for root isolation; SQRLAT_PRECISION overrides the default of 64.
int default_precision_bits();

}  // namespace sqrlat
