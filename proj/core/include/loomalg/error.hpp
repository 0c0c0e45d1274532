#pragma once

#include <stdexcept>
#include <string>

namespace loomalg {

// Every failure raised by the library carries a short stable code so that
// reports and the CLI can classify it without parsing the message.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

}  // namespace loomalg
