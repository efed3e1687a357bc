#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pdef {

  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  class ParseError : public Error {
   public:
    ParseError(std::string const& what, std::size_t line, std::size_t column)
        : Error("line " + std::to_string(line) + ", column "
                + std::to_string(column) + ": " + what),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept {
      return line_;
    }
    std::size_t column() const noexcept {
      return column_;
    }

   private:
    std::size_t line_;
    std::size_t column_;
  };

  class UnknownGenerator : public Error {
   public:
    using Error::Error;
  };

  class NotPrime : public Error {
   public:
    explicit NotPrime(long long p)
        : Error(std::to_string(p) + " is not a prime") {}
  };

  class IncompleteTable : public Error {
   public:
    IncompleteTable() : Error("coset table is not complete") {}
  };

}  // namespace pdef
