#pragma once

#include <stdexcept>
#include <string>

namespace annmat {

// Malformed input file or argv. CLI maps this to exit code 2.
struct parse_error : std::runtime_error {
  std::string file;
  int line = 0;  // 1-based; 0 when not tied to a file location

  parse_error(std::string file_, int line_, const std::string& what_)
      : std::runtime_error(file_.empty()
                               ? what_
                               : file_ + ":" + std::to_string(line_) + ": " + what_),
        file(std::move(file_)),
        line(line_) {}
  explicit parse_error(const std::string& what_) : std::runtime_error(what_) {}
};

// Well-formed input that violates a documented precondition or internal
// invariant (non-commuting squares, non-complex composites, ...). CLI maps
// this to exit code 3.
struct invariant_error : std::runtime_error {
  explicit invariant_error(const std::string& what_) : std::runtime_error(what_) {}
};

}  // namespace annmat
