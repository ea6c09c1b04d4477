#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace osmloc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameter combination (e.g. range not a multiple of the bin length).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Caller passed data that violates an operation's precondition.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Binary or text file whose layout does not match the expected format.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Malformed XML; carries the byte offset reported by the tokenizer.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t byte_offset)
      : Error(what + " at byte offset " + std::to_string(byte_offset)),
        message_(what),
        byte_offset_(byte_offset) {}

  /// Message without the offset suffix.
  const std::string& message() const noexcept { return message_; }
  std::size_t byte_offset() const noexcept { return byte_offset_; }

 private:
  std::string message_;
  std::size_t byte_offset_;
};

/// An OSM extract contained no elements for a required layer.
class EmptyLayerError : public Error {
 public:
  explicit EmptyLayerError(std::string layer)
      : Error("empty layer: no " + layer + " found in OSM extract"), layer_(std::move(layer)) {}

  const std::string& layer() const noexcept { return layer_; }

 private:
  std::string layer_;
};

}  // namespace osmloc
