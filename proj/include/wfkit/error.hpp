#pragma once

#include <stdexcept>
#include <string>

namespace wfkit {

// Input violates a documented contract (bad wireframe, bad config, shape
// mismatch). The CLI maps this to exit code 1.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// File could not be opened, read, parsed or written. The CLI maps this to
// exit code 2.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace wfkit
