// Copyright 2026 The hadamard-sim Authors
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

#ifndef HADAMARD_ERRORS_HPP_
#define HADAMARD_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace hadamard {

// Matrix or vector dimensions do not fit the operation.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input is above a documented size cap (permanent order, photon number).
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Argument is outside the mathematical domain of the operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A geometric construction collapsed: orthogonal consecutive states,
// antipodal consecutive sphere points and the like.
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A quantity is undefined for the given data (zero denominators, zero means,
// singular least-squares systems).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hadamard

#endif  // HADAMARD_ERRORS_HPP_
