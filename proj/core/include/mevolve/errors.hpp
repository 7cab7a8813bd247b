#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mevolve {

/// Parse failure in a structured text file; carries the file name and 1-based
/// line (0 for whole-file problems such as a missing file).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string file, std::size_t line, const std::string& message)
      : std::runtime_error(line == 0 ? file + ": " + message
                                     : file + ":" + std::to_string(line) + ": " + message),
        file_(std::move(file)),
        line_(line) {}

  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

/// A mapping could not produce an edit plan for a graph (candidate set too
/// small or empty). Carries which side of the plan ran out.
class AugmentInfeasible : public std::runtime_error {
 public:
  enum class Side { Addition, Deletion };

  AugmentInfeasible(Side side, const std::string& message)
      : std::runtime_error(message), side_(side) {}

  Side side() const { return side_; }

 private:
  Side side_;
};

/// A stratified split cannot honor the per-class minimums.
class SplitError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace mevolve
