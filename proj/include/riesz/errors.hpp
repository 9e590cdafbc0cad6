#pragma once

#include <stdexcept>
#include <string>

namespace riesz {

// Base for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the admissible parameter window.
class DomainError : public Error {
 public:
  using Error::Error;
};

// 2F1 requested at z = 1 with c - a - b <= 0.
class DivergentAtOne : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

// Derivative order beyond what the field variant provides.
class OrderUnavailable : public Error {
 public:
  using Error::Error;
};

// One-sided limits disagree or do not exist.
class LimitUndefined : public Error {
 public:
  using Error::Error;
};

// Certificate selector applied outside its (s, d) window.
class WrongWindow : public Error {
 public:
  using Error::Error;
};

class MalformedCertificate : public Error {
 public:
  using Error::Error;
};

// Iterative solver stopped before reaching its tolerance.
class NotConverged : public Error {
 public:
  using Error::Error;
};

}  // namespace riesz
