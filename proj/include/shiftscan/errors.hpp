#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace shiftscan {

// Base of every error raised by the library. The CLI maps subclasses to exit
// codes (see cli.hpp).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyRef : public Error {
 public:
  EmptyRef() : Error("cited reference is empty after normalization") {}
};

class InvalidThreshold : public Error {
 public:
  using Error::Error;
};

class YearOutOfRange : public Error {
 public:
  YearOutOfRange(int year, int first, int last)
      : Error("year " + std::to_string(year) + " outside range " + std::to_string(first) +
              ":" + std::to_string(last)),
        year_(year) {}
  int year() const noexcept { return year_; }

 private:
  int year_;
};

class DuplicateRecord : public Error {
 public:
  explicit DuplicateRecord(const std::string& id) : Error("duplicate record id " + id), id_(id) {}
  const std::string& record_id() const noexcept { return id_; }

 private:
  std::string id_;
};

// Tag-structure violation in an export file.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& reason, const std::string& file = {})
      : Error(locate(file, line) + reason), line_(line), reason_(reason) {}
  std::size_t line() const noexcept { return line_; }
  const std::string& reason() const noexcept { return reason_; }

 protected:
  static std::string locate(const std::string& file, std::size_t line) {
    return (file.empty() ? "line " : file + ":") + std::to_string(line) + ": ";
  }

 private:
  std::size_t line_;
  std::string reason_;
};

// Structurally valid block that lacks a required field.
class MalformedRecord : public Error {
 public:
  MalformedRecord(std::size_t line, const std::string& reason, const std::string& file = {})
      : Error((file.empty() ? "record at line " : file + ":") + std::to_string(line) + ": " + reason),
        line_(line),
        reason_(reason) {}
  std::size_t line() const noexcept { return line_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t line_;
  std::string reason_;
};

class ThresholdMismatch : public Error {
 public:
  ThresholdMismatch() : Error("core reference sets were built with different thresholds") {}
};

class InsufficientYears : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

class StopwordQuery : public Error {
 public:
  explicit StopwordQuery(const std::string& term)
      : Error("query term '" + term + "' is a stopword") {}
};

class InvalidTerm : public Error {
 public:
  using Error::Error;
};

class WindowOverlap : public Error {
 public:
  WindowOverlap() : Error("year windows overlap") {}
};

class WindowOrder : public Error {
 public:
  WindowOrder() : Error("second year window must lie after the first") {}
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace shiftscan
