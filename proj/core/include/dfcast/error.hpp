#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dfcast {

enum class Errc {
  invalid_weekday,
  parse,
  duplicate_record,
  imputation_impossible,
  too_short_series,
  empty_fit,
  schema,
  split,
  numeric,
  shape,
  config,
  training_diverged,
  search_failed,
  alignment,
  empty_input,
  undefined_correlation,
  io,
};

const char* to_string(Errc code) noexcept;

/// Base exception for every failure raised by the library. The code lets
/// callers (and tests) branch on the failure class without parsing text.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(Errc::parse, "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class TrainingDiverged : public Error {
 public:
  explicit TrainingDiverged(int epoch)
      : Error(Errc::training_diverged,
              "training diverged (non-finite loss) at epoch " + std::to_string(epoch)),
        epoch_(epoch) {}

  int epoch() const noexcept { return epoch_; }

 private:
  int epoch_;
};

}  // namespace dfcast
