#ifndef SCHARGRAPH_ERROR_HPP
#define SCHARGRAPH_ERROR_HPP

#include <stdexcept>
#include <string>

namespace schargraph {

/// Library failure carrying a stable machine-readable code such as "NO_SWITCHES".
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

}  // namespace schargraph

#endif  // SCHARGRAPH_ERROR_HPP
