// Copyright 2026 The frictrack Authors
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

namespace frictrack {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A state or field component became non-finite (or left the divergence bound).
class NumericalBlowup : public Error {
 public:
  NumericalBlowup(double t, std::string component);

  double time() const noexcept { return t_; }
  const std::string& component() const noexcept { return component_; }

 private:
  double t_;
  std::string component_;
};

/// The adaptation covariance lost positive-definiteness.
class CovarianceDegenerate : public Error {
 public:
  CovarianceDegenerate(double t, double minor1, double minor2);

  double time() const noexcept { return t_; }

 private:
  double t_;
};

/// Configuration schema violation. `field()` names the offending key path.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& detail);

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  IoError(const std::string& path, const std::string& detail);
};

}  // namespace frictrack
