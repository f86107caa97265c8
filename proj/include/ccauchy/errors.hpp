// Copyright 2026 The ccauchy Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace ccauchy {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A Hermitian matrix failed the positive-definiteness pivot guard.
class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

/// A matrix required to be invertible is numerically rank deficient.
class SingularInput : public Error {
 public:
  using Error::Error;
};

/// Guarded random generation exhausted its resampling budget.
class ResampleExhausted : public Error {
 public:
  using Error::Error;
};

/// A fractional-linear map was evaluated on its polar set (denominator ~ 0).
class PoleHit : public Error {
 public:
  using Error::Error;
};

/// A random draw landed on a measure-zero degenerate configuration twice.
class DegenerateDraw : public Error {
 public:
  using Error::Error;
};

/// A CDF callable returned a value outside [0, 1].
class InvalidCDF : public Error {
 public:
  using Error::Error;
};

/// Operands have incompatible dimensions.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A precondition on an argument value was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace ccauchy
