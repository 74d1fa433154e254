#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace aot {

/// Malformed textual input (graph6, edge-list JSON, named graph).
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}
  explicit parse_error(const std::string& what) : std::runtime_error(what), offset_(0) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// A precondition on the mathematical input does not hold.
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Input is valid but exceeds a configured size limit.
class size_guard_error : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Two independent computations disagree; always a bug.
class consistency_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace aot
