#ifndef MULTIBIN_ERRORS_HPP_
#define MULTIBIN_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace multibin {

// Base class for all library errors.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Instance is structurally valid but no feasible solution exists.
class InfeasibleError : public Error {
  public:
    explicit InfeasibleError(const std::string& what) : Error(what) {}
};

// Malformed input: bad syntax, dangling ids, scale mismatches, bad values.
class SchemaError : public Error {
  public:
    explicit SchemaError(const std::string& what) : Error(what) {}
};

// Instance exceeds the configured exact-search limit.
class SizeLimitError : public Error {
  public:
    explicit SizeLimitError(const std::string& what) : Error(what) {}
};

// Integer arithmetic would overflow; never wraps silently.
class OverflowError : public Error {
  public:
    explicit OverflowError(const std::string& what) : Error(what) {}
};

}  // namespace multibin

#endif
