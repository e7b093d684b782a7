// Copyright 2026 The sbmrd Authors.
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

#ifndef SBMRD_ERRORS_H_
#define SBMRD_ERRORS_H_

#include <stdexcept>
#include <string>

namespace sbmrd {

// Base class for every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A scalar argument lies outside its mathematical domain, e.g. a
// probability outside [0, 1].
class DomainError : public Error {
 public:
  using Error::Error;
};

// Model parameters or a configuration violate a documented invariant.
class InvalidParams : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// A distortion (or piecewise target) lies beyond what the model can reach.
// `limit()` is the largest admissible value.
class InfeasibleError : public Error {
 public:
  InfeasibleError(const std::string& what, double limit)
      : Error(what), limit_(limit) {}
  double limit() const { return limit_; }

 private:
  double limit_;
};

// An iterative oracle hit its sweep budget before meeting its tolerance.
class NonConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace sbmrd

#endif  // SBMRD_ERRORS_H_
