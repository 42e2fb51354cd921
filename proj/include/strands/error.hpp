#pragma once

#include <stdexcept>
#include <string>

namespace strands {

// Invalid input that a caller can act on: malformed words, mismatched
// presentations, policy violations, resource caps.  The kind string is a
// stable machine-readable tag; the CLI forwards it in JSON error output.
class DomainError : public std::runtime_error {
 public:
  DomainError(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

class ParseError : public DomainError {
 public:
  ParseError(const std::string& message, std::size_t byte_offset)
      : DomainError("parse",
                    message + " (at byte " + std::to_string(byte_offset) + ")"),
        offset_(byte_offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace strands
