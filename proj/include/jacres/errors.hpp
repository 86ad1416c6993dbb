// Copyright 2026 The jacres Authors.
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

namespace jacres {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid arguments: empty landmark lists, malformed input, bad flags.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Masks that belong to ground sets of different sizes.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A formula evaluated outside the range where it is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Refusal to start an enumeration that exceeds the configured limits.
class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace jacres
