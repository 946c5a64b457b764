#ifndef LEAVITT_ERROR_HPP
#define LEAVITT_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace leavitt {

  // Base for everything the library throws on bad input or a violated
  // precondition.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  class ParseError : public Error {
   public:
    ParseError(std::size_t line, std::string const& msg)
        : Error("line " + std::to_string(line) + ": " + msg), _line(line) {}

    std::size_t line() const noexcept {
      return _line;
    }

   private:
    std::size_t _line;
  };

  // The input is well formed but outside the class of graphs an operation is
  // defined for (disconnected, out-degree > 1, cyclic where acyclic is
  // required, ...).
  class ScopeError : public Error {
   public:
    using Error::Error;
  };

}  // namespace leavitt

#endif  // LEAVITT_ERROR_HPP
