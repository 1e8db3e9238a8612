#pragma once

#include <stdexcept>
#include <string>

namespace vacuumlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonConvergence : public Error { using Error::Error; };
class DomainError : public Error { using Error::Error; };
class SingularRoot : public Error { using Error::Error; };
class IncompatibleClasses : public Error { using Error::Error; };
class DegenerateMode : public Error { using Error::Error; };
class NoSignChange : public Error { using Error::Error; };
class BranchError : public Error { using Error::Error; };
class DimensionCap : public Error { using Error::Error; };
class CombinatorialCap : public Error { using Error::Error; };
class ConfigError : public Error { using Error::Error; };
class IoError : public Error { using Error::Error; };

}  // namespace vacuumlab
