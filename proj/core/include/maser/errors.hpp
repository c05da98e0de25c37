// Copyright 2026 The maser-sim Authors
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

namespace maser {

// Base for every error raised by the library. Callers that only care about
// success/failure catch this; the CLI maps subclasses onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidDimension : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// Adaptive integrator could not make progress (step size underflow).
class StiffnessError : public Error {
 public:
  using Error::Error;
};

// Steady-state solve did not produce a unique, converged state.
class SolverError : public Error {
 public:
  using Error::Error;
};

class AmbiguousSteadyState : public SolverError {
 public:
  using SolverError::SolverError;
};

class DivergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace maser
