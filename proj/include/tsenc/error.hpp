// Copyright 2026 The tsenc Authors
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

namespace tsenc {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad values: non-finite entries, out-of-range inputs, broken invariants.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Dimension or index mismatches, including register capacity limits.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Unsupported or inconsistent configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Degenerate training setups (e.g. a single-class label vector).
class TrainingError : public Error {
 public:
  using Error::Error;
};

/// A metric is undefined on the given inputs.
class MetricError : public Error {
 public:
  using Error::Error;
};

/// File system and parsing failures; the message names the file.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace tsenc
