#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace tdg {

// Base for every recoverable failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateDirection : public Error {
 public:
  DegenerateDirection() : Error("degenerate direction: points coincide") {}
};

class CoincidentAgents : public Error {
 public:
  explicit CoincidentAgents(const std::string& what = "coincident agents")
      : Error(what) {}
};

class TargetInsideCircle : public Error {
 public:
  TargetInsideCircle()
      : Error("target lies inside the Apollonius circle; capture point is fixed") {}
};

class DegenerateGeometry : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public Error {
 public:
  using Error::Error;
};

class Infeasible : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::string field, const std::string& detail)
      : Error("parse error in '" + field + "': " + detail), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& detail)
      : Error("invalid '" + field + "': " + detail), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace tdg
