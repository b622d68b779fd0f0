// Copyright 2026 The twirl Authors

// Licensed under the Apache License, Version 2.0 (the License);
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

// http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an AS IS BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace twirl {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Operand sizes disagree (qubit counts, vector lengths).
class DimensionError : public Error {
  public:
    using Error::Error;
};

/// Requested operator would exceed the dense-matrix qubit cap.
class DenseLimitError : public Error {
  public:
    using Error::Error;
};

/// A quarter/full twirl was requested at zero energy without an override.
class ZeroEnergyError : public Error {
  public:
    using Error::Error;
};

/// Post-selection probability fell below the extinction floor.
class ExtinguishedError : public Error {
  public:
    using Error::Error;
};

/// Manifest or CLI configuration is malformed. `pointer()` is a JSON
/// pointer into the offending document, empty when not applicable.
class ConfigError : public Error {
  public:
    ConfigError(std::string pointer, const std::string &message)
        : Error(pointer.empty() ? message : pointer + ": " + message),
          pointer_(std::move(pointer)) {}

    [[nodiscard]] const std::string &pointer() const noexcept {
        return pointer_;
    }

  private:
    std::string pointer_;
};

} // namespace twirl
