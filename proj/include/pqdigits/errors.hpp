/*
   Copyright 2026 The pqdigits authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef PQDIGITS_ERRORS_HPP
#define PQDIGITS_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pqdigits {

/* Base class for all library errors that map to CLI exit codes. */
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/* Malformed textual input (polynomials, digit strings, series patterns, field flags). */
class ParseError : public Error {
  public:
    ParseError(const std::string& msg, std::size_t position)
        : Error(msg + " (at position " + std::to_string(position) + ")"), position_(position) {}
    explicit ParseError(const std::string& msg) : Error(msg), position_(0) {}

    std::size_t position() const noexcept { return position_; }

  private:
    std::size_t position_;
};

/* Violated digit-system preconditions: zero P or Q, deg P <= deg Q, P and Q not coprime. */
class InvalidSystemError : public Error {
  public:
    using Error::Error;
};

/* An enumeration or state-discovery budget was exceeded. */
class BudgetError : public Error {
  public:
    using Error::Error;
};

/* A series operation needed coefficients below the known precision floor. */
class PrecisionError : public Error {
  public:
    using Error::Error;
};

/* An evaluation input did not have the structural shape the formula requires. */
class ShapeError : public Error {
  public:
    using Error::Error;
};

}  // namespace pqdigits

#endif
