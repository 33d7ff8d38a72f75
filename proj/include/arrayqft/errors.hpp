// Copyright 2026 The arrayqft Authors.
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

#include <stdexcept>
#include <string>

namespace arrayqft {

/// Base class for all library errors, so callers can catch everything at once.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An argument value is outside its documented domain (bad taper parameters,
/// degenerate inputs, missing data for an operation).
class ParameterError : public Error {
  public:
    using Error::Error;
};

/// Two containers that must agree in size do not, or a register/grid is too
/// small to hold its payload.
class SizeError : public Error {
  public:
    using Error::Error;
};

/// Malformed text input (excitation CSV, config file). The message carries
/// the offending line number.
class ParseError : public Error {
  public:
    using Error::Error;
};

/// A numeric argument lies outside the function's mathematical domain.
class DomainError : public Error {
  public:
    using Error::Error;
};

/// A pattern scan reached the array edge without finding a local minimum.
class NullNotFoundError : public Error {
  public:
    using Error::Error;
};

/// Filesystem failure; the message includes the path involved.
class IoError : public Error {
  public:
    using Error::Error;
};

} // namespace arrayqft
