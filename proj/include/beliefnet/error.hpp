#pragma once

#include <stdexcept>
#include <string>

namespace beliefnet {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configuration value is out of range or otherwise invalid.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error("invalid '" + field + "': " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// Malformed configuration text.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& what)
      : Error("parse error at byte " + std::to_string(position) + ": " + what),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// The adjacency admits no doubly stochastic scaling.
class NotScalableError : public Error {
 public:
  using Error::Error;
};

// Inputs of mismatched shape reached an internal routine.
class DimensionError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  IoError(std::string path, const std::string& what)
      : Error(path + ": " + what), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace beliefnet
