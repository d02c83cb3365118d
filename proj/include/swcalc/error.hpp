#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace swcalc {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A mathematical hypothesis of a construction is not met
/// (e.g. b2+(M) > 1, an embedded torus with trivial complement group).
class GuardViolation : public Error {
 public:
  using Error::Error;
};

/// Two group-ring operands live over different ambient groups.
class AmbientMismatch : public Error {
 public:
  using Error::Error;
};

/// The operation is well defined but outside what the library computes.
class Unsupported : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Syntax error in an expression, annotated with a 0-based offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at column " + std::to_string(position + 1) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class UnknownName : public ParseError {
 public:
  UnknownName(const std::string& name, std::size_t position,
              std::vector<std::string> suggestions)
      : ParseError(compose(name, suggestions), position),
        name_(name),
        suggestions_(std::move(suggestions)) {}

  const std::string& name() const noexcept { return name_; }
  const std::vector<std::string>& suggestions() const noexcept {
    return suggestions_;
  }

 private:
  static std::string compose(const std::string& name,
                             const std::vector<std::string>& suggestions) {
    std::string msg = "unknown name '" + name + "'";
    if (!suggestions.empty()) {
      msg += "; did you mean";
      for (std::size_t i = 0; i < suggestions.size(); ++i)
        msg += (i ? ", " : " ") + suggestions[i];
      msg += "?";
    }
    return msg;
  }

  std::string name_;
  std::vector<std::string> suggestions_;
};

}  // namespace swcalc
