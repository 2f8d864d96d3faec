// Copyright 2026 The Conveyor Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>

namespace conveyor {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad N, bad site id, ...).
class InvalidArgument : public Error {
  public:
    using Error::Error;
};

/// Raised by the text/JSON readers; carries the 1-based line when known.
class ParseError : public Error {
  public:
    ParseError(const std::string &what, std::size_t line = 0)
        : Error(line == 0 ? what
                          : "line " + std::to_string(line) + ": " + what),
          line_(line) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

/// The state has weight outside both well-formed subspaces.
class NotWellFormed : public Error {
  public:
    explicit NotWellFormed(double residual)
        : Error(message(residual)), residual_(residual) {}

    [[nodiscard]] double residual() const noexcept { return residual_; }

  private:
    static std::string message(double residual) {
        std::ostringstream os;
        os << "not well-formed (residual = " << std::setprecision(3)
           << residual << ")";
        return os.str();
    }

    double residual_;
};

} // namespace conveyor
