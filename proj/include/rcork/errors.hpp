#pragma once

#include <stdexcept>
#include <string>

namespace rcork {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// (C - mu D) is singular or too ill-conditioned: mu is (numerically) a pole.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// R(mu) could not be factorized: mu is (numerically) an eigenvalue.
class SingularShiftError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

class ZeroVectorError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class SizeCapError : public Error {
 public:
  using Error::Error;
};

/// h_{j+1,j} fell below the breakdown tolerance; the subspace is (numerically) invariant.
class BreakdownError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

class RankCollapseError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file. The message carries the file name and line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& file, long line, const std::string& what)
      : Error(file + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + what),
        file_(file),
        line_(line) {}

  const std::string& file() const { return file_; }
  long line() const { return line_; }

 private:
  std::string file_;
  long line_;
};

}  // namespace rcork
