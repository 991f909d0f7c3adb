#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

namespace detox {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input record; line is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(std::string message, std::size_t line)
      : Error(line ? "line " + std::to_string(line) + ": " + message : message),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class DecodeError : public Error {
 public:
  using Error::Error;
};

class PreTaggedInputError : public Error {
 public:
  PreTaggedInputError() : Error("pre-tagged input") {}
};

// Violation of the shim wire contract. offending_line holds the raw line, if any.
class ProtocolError : public Error {
 public:
  explicit ProtocolError(std::string message, std::string offending_line = {})
      : Error(offending_line.empty() ? message : message + ": " + offending_line),
        offending_line_(std::move(offending_line)) {}
  const std::string& offending_line() const { return offending_line_; }

 private:
  std::string offending_line_;
};

class TimeoutError : public Error {
 public:
  using Error::Error;
};

class ChannelError : public Error {
 public:
  using Error::Error;
};

class CapabilityError : public Error {
 public:
  using Error::Error;
};

enum class FailureKind { Input, Protocol, Timeout, Channel, Backend, Capability };

const char* to_string(FailureKind kind);

struct Failure {
  FailureKind kind;
  std::string message;
};

// Per-item outcome of a batched backend call: a value or a Failure.
template <typename T>
class Result {
 public:
  Result(T value) : state_(std::move(value)) {}  // NOLINT(google-explicit-constructor)
  Result(Failure failure) : state_(std::move(failure)) {}  // NOLINT(google-explicit-constructor)

  bool ok() const { return std::holds_alternative<T>(state_); }
  explicit operator bool() const { return ok(); }

  const T& value() const& {
    if (!ok()) throw Error(std::get<Failure>(state_).message);
    return std::get<T>(state_);
  }
  T&& value() && {
    if (!ok()) throw Error(std::get<Failure>(state_).message);
    return std::get<T>(std::move(state_));
  }
  const Failure& failure() const { return std::get<Failure>(state_); }

 private:
  std::variant<T, Failure> state_;
};

}  // namespace detox
