#ifndef BIALG_ERRORS_HPP
#define BIALG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bialg {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// malformed or inconsistent input (non-antisymmetric tensor, bad binding, ...)
struct InputError : Error {
  using Error::Error;
};

struct ParseError : Error {
  int line = 0;
  int column = 0;
  ParseError(const std::string& msg, int l, int c)
      : Error(msg + " (line " + std::to_string(l) + ", column " + std::to_string(c) + ")"),
        line(l), column(c) {}
};

// characteristic polynomial has a root outside Q and Q(i)
struct UnsupportedSpectrum : Error {
  using Error::Error;
};

struct NonUnitDeterminant : Error {
  using Error::Error;
};

// numeric evaluation hit a singular point
struct EvalError : Error {
  using Error::Error;
};

}  // namespace bialg

#endif  // BIALG_ERRORS_HPP
