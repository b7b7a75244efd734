// Copyright 2026 The wgqed Authors
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

namespace wgqed {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidSpec : public Error {
 public:
  using Error::Error;
};

class DimensionOverflow : public Error {
 public:
  using Error::Error;
};

/// L0 has more than one zero mode at the requested tolerance.
class DegenerateSteadyState : public Error {
 public:
  DegenerateSteadyState(const std::string& what, int null_dim)
      : Error(what), null_dimension(null_dim) {}
  int null_dimension;
};

class SingularAtZeroDetuning : public Error {
 public:
  using Error::Error;
};

class SingularPi : public Error {
 public:
  SingularPi(const std::string& what, double cond)
      : Error(what), condition_number(cond) {}
  double condition_number;
};

class ZeroRelaxation : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public Error {
 public:
  using Error::Error;
};

class WindowMismatch : public Error {
 public:
  using Error::Error;
};

/// Configuration error carrying the JSON path of the offending field.
class ConfigError : public Error {
 public:
  ConfigError(std::string path, const std::string& message)
      : Error(path + ": " + message), field_path(std::move(path)) {}
  std::string field_path;
};

}  // namespace wgqed
