#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dcover {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input document. `position` is a byte offset when known.
class ParseError : public Error {
public:
  explicit ParseError(const std::string& what, std::size_t position = npos)
      : Error(position == npos ? what
                               : what + " (at byte " + std::to_string(position) + ")"),
        position_(position) {}

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

/// Input is well formed but violates a model invariant.
class ValidationError : public Error {
public:
  using Error::Error;
};

/// The cover fails the semi-stability criterion; downstream stages refuse it.
class NotSemistableError : public Error {
public:
  using Error::Error;
};

/// Dual graph construction or Galois action failed.
class GraphError : public Error {
public:
  using Error::Error;
};

/// Lattice / component group computation failed.
class LatticeError : public Error {
public:
  using Error::Error;
};

}  // namespace dcover
