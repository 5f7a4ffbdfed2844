#pragma once

#include <stdexcept>
#include <string>

namespace pslab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Point outside a chart or embedding domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

class SingularMetricError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class ForbiddenQuadricError : public Error {
 public:
  using Error::Error;
};

class NotIsometryError : public Error {
 public:
  using Error::Error;
};

class IndefiniteMetricError : public Error {
 public:
  using Error::Error;
};

class SpeedLimitError : public Error {
 public:
  using Error::Error;
};

class UnknownCheckError : public Error {
 public:
  using Error::Error;
};

}  // namespace pslab
