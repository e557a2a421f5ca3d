#pragma once

#include <stdexcept>
#include <string>

namespace tropws {

// Input errors map to exit code 2 in the CLI, domain errors to exit code 1.
enum class ErrorKind { Input, Domain };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string name, const std::string& detail)
      : std::runtime_error(name + ": " + detail), kind_(kind), name_(std::move(name)) {}

  ErrorKind kind() const { return kind_; }
  const std::string& name() const { return name_; }

 private:
  ErrorKind kind_;
  std::string name_;
};

[[noreturn]] inline void input_error(const std::string& name, const std::string& detail) {
  throw Error(ErrorKind::Input, name, detail);
}

[[noreturn]] inline void domain_error(const std::string& name, const std::string& detail) {
  throw Error(ErrorKind::Domain, name, detail);
}

}  // namespace tropws
