#pragma once

#include <stdexcept>
#include <string>

namespace smtjsim {

// Error taxonomy maps onto CLI exit codes: validation -> 1, runtime and
// numerical -> 2, assertion-mode failures -> 3.
enum class ErrorKind { kValidation, kRuntime, kNumerical };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_validation(const std::string& msg) {
  throw Error(ErrorKind::kValidation, msg);
}
[[noreturn]] inline void throw_runtime(const std::string& msg) {
  throw Error(ErrorKind::kRuntime, msg);
}
[[noreturn]] inline void throw_numerical(const std::string& msg) {
  throw Error(ErrorKind::kNumerical, msg);
}

}  // namespace smtjsim
