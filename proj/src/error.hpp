#pragma once

#include <stdexcept>
#include <string>

namespace ssimlab {

// Error taxonomy mirrored by the C API status codes and the CLI exit codes:
// config errors are caller mistakes (bad arguments, malformed inputs),
// numeric errors are runtime failures (solver breakdown, refused fits),
// io errors are filesystem failures while writing results.
enum class ErrorKind { config, numeric, io };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

[[noreturn]] inline void fail_config(const std::string& msg) {
  throw Error(ErrorKind::config, msg);
}

[[noreturn]] inline void fail_numeric(const std::string& msg) {
  throw Error(ErrorKind::numeric, msg);
}

}  // namespace ssimlab
