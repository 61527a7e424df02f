#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace grz {

/// Raised by the formula parser. Carries the byte offset of the failure and
/// the set of tokens that would have been accepted at that position.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t offset,
             std::vector<std::string> expected)
      : std::runtime_error(what), offset_(offset),
        expected_(std::move(expected)) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept {
    return expected_;
  }

private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

/// Raised when an enumeration or validity sweep exceeds its configured bound.
/// Bounded search is a semi-decision; callers must treat this as
/// "inconclusive", never as a negative answer.
class ResourceLimitError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace grz
