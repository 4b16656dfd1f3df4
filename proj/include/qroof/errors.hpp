#pragma once

#include <stdexcept>
#include <string>

namespace qroof {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

/// eta*Q0 has a complex eigenvalue pair: the map cannot be positive.
class NonRealEigenvalues : public Error {
 public:
  using Error::Error;
};

class NegativeForm : public Error {
 public:
  using Error::Error;
};

class NotPositive : public Error {
 public:
  using Error::Error;
};

class NotAtBifurcation : public Error {
 public:
  using Error::Error;
};

class DegenerateFamily : public Error {
 public:
  using Error::Error;
};

/// A pure state only has the trivial decomposition.
class PureInput : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace qroof
