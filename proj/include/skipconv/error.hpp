// Copyright 2026 The skipconv Authors. All Rights Reserved.
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

namespace skipconv {

// Error taxonomy. The CLI maps each kind onto a process exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Tensor or grid extents that do not fit together.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration or arguments (exit code 1).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Bad or unreadable input data (exit code 2).
class DataError : public Error {
 public:
  using Error::Error;
};

// NaN/Inf or another numerical breakdown (exit code 3).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace skipconv
