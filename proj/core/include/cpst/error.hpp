#pragma once

#include <stdexcept>
#include <string>

namespace cpst {

/// Raised when an operation's precondition on its input does not hold.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a tensor is required to be rank-one but is not.
class NotRankOne : public InvalidInput {
 public:
  NotRankOne(const std::string& what, int measured_rank)
      : InvalidInput(what), measured_rank_(measured_rank) {}

  int measured_rank() const noexcept { return measured_rank_; }

 private:
  int measured_rank_;
};

/// Raised by the file readers on malformed content.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cpst
