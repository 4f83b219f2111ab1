// Copyright 2026 The stabgs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STABGS_ERRORS_HPP
#define STABGS_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stabgs {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Operands with different qubit counts, or a window outside the register.
class SizeError : public Error {
  public:
    using Error::Error;
};

/// Malformed text input. `where` is a character offset for Pauli text and a
/// 1-based line number for Hamiltonian files.
class ParseError : public Error {
  public:
    ParseError(const std::string &msg, std::size_t where) : Error(msg), where_(where) {}
    std::size_t where() const { return where_; }

  private:
    std::size_t where_;
};

/// A hard size limit of an exponential-time routine was exceeded.
class GuardError : public Error {
  public:
    using Error::Error;
};

class AnticommutingGenerators : public Error {
  public:
    using Error::Error;
};

/// The requested generators would put -I into the group.
class MinusIdentity : public Error {
  public:
    using Error::Error;
};

class NotFullRank : public Error {
  public:
    using Error::Error;
};

class NoCycleFound : public Error {
  public:
    using Error::Error;
};

}  // namespace stabgs

#endif
