// Copyright 2026 The qcnnpad authors.
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
/**
 * @file
 * Shared scalar/matrix typedefs and error types.
 */
#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qcnn {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// A numerical or physicality invariant was violated (non-CPTP channel,
/// non-normalized state, out-of-range probability, ...).
class ValidationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A data file could not be parsed (bad magic, truncated payload, ...).
class FormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An experiment configuration is malformed or inconsistent.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A required input file is missing.
class MissingDataError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace qcnn
