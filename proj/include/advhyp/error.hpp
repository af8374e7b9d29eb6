// Copyright 2026 The advhyp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ADVHYP_ERROR_HPP_
#define ADVHYP_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace advhyp {

// Precondition and validation failures (bad dimensions, out-of-range
// parameters, malformed configs).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical routine did not reach its tolerance. `certificate` is the best
// duality gap or residual seen before giving up.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double certificate)
      : std::runtime_error(what), certificate_(certificate) {}
  double certificate() const { return certificate_; }

 private:
  double certificate_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace advhyp

#endif  // ADVHYP_ERROR_HPP_
