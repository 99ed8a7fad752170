#pragma once

#include <stdexcept>
#include <string>

namespace shl {

// Error classes map one-to-one onto CLI exit codes (see README).
enum class ErrorClass {
  usage = 1,
  parse = 2,
  model_invalid = 3,
  omega_invalid = 4,
  group_invalid = 5,
  foliation_invalid = 6,
  equivalence_violation = 7,
  not_closed = 8,
  hypothesis_violated = 9,
  unknown_name = 10,
  internal = 11,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, const std::string& what) : std::runtime_error(what), cls_(cls) {}
  ErrorClass cls() const noexcept { return cls_; }

 private:
  ErrorClass cls_;
};

[[noreturn]] inline void fail(ErrorClass cls, const std::string& msg) { throw Error(cls, msg); }

// Raised by harmonize when a required Lefschetz power is not surjective.
class HypothesisViolated : public Error {
 public:
  HypothesisViolated(int k, const std::string& what)
      : Error(ErrorClass::hypothesis_violated, what), k_(k) {}
  int k() const noexcept { return k_; }

 private:
  int k_;
};

}  // namespace shl
