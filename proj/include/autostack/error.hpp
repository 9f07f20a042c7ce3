// Error types shared by every module.  The CLI maps ErrorKind onto exit codes.

#ifndef AUTOSTACK_ERROR_HPP_
#define AUTOSTACK_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace autostack {

  enum class ErrorKind {
    validation,  // a structure violates its contract
    budget,      // a step or depth budget was exhausted
    parse,       // malformed input text
    usage        // bad arguments (unknown entry, alphabet mismatch, ...)
  };

  class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, std::string const& what)
        : std::runtime_error(what), _kind(kind) {}

    ErrorKind kind() const noexcept {
      return _kind;
    }

   private:
    ErrorKind _kind;
  };

  [[noreturn]] inline void fail(ErrorKind kind, std::string const& what) {
    throw Error(kind, what);
  }

  char const* to_string(ErrorKind kind) noexcept;

}  // namespace autostack

#endif  // AUTOSTACK_ERROR_HPP_
