#pragma once

#include <stdexcept>
#include <string>

namespace autores {

/// A request that is well-formed but has no solution in the model, e.g. a
/// growing asymptotic family below the forcing threshold.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File-system failure; the message carries the offending path.
class IoError : public std::runtime_error {
 public:
  IoError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(path) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace autores
