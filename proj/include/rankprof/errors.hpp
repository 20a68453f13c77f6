#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rankprof {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class AlphabetMismatch : public Error {
 public:
  using Error::Error;
};

/// A ball or search would exceed a configured size limit.
class HorizonTooLarge : public Error {
 public:
  using Error::Error;
};

/// The rank-type engine ran out of its elementary step budget.
class CostCapExceeded : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class UnboundVariable : public Error {
 public:
  using Error::Error;
};

/// The two languages given to the separator profile share a word.
class NotDisjoint : public Error {
 public:
  NotDisjoint(const std::string& what, std::string common_word)
      : Error(what), common_word_(std::move(common_word)) {}
  const std::string& common_word() const noexcept { return common_word_; }

 private:
  std::string common_word_;
};

/// Cycle extraction was asked for an aperiodic monoid.
class NoWitness : public Error {
 public:
  using Error::Error;
};

/// A proven bound was violated; indicates a bug, never user error.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace rankprof
