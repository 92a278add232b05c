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
 * Small dense linear-algebra helpers shared by the simulator and its tests.
 */
#pragma once

#include <cmath>

#include "qcnn/types.hpp"

namespace qcnn {

inline Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b;
    return out;
}

inline Matrix dagger(const Matrix &a) { return a.adjoint(); }

inline Matrix identity(Eigen::Index dim) { return Matrix::Identity(dim, dim); }

inline Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

inline Matrix pauli_y() {
    Matrix m(2, 2);
    m << 0, cplx(0, -1), cplx(0, 1), 0;
    return m;
}

inline Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

inline bool is_unitary(const Matrix &u, double tol) {
    return (u.adjoint() * u - identity(u.rows())).cwiseAbs().maxCoeff() <= tol;
}

/// Max entrywise deviation |a - e^{i phi} b| minimized over the global phase
/// phi. Returns the deviation (0 means equal up to global phase).
inline double phase_distance(const Matrix &a, const Matrix &b) {
    Eigen::Index r = 0, c = 0;
    a.cwiseAbs().maxCoeff(&r, &c);
    cplx phase(1, 0);
    if (std::abs(b(r, c)) > 1e-14 && std::abs(a(r, c)) > 1e-14) {
        phase = (a(r, c) / b(r, c));
        phase /= std::abs(phase);
    }
    return (a - phase * b).cwiseAbs().maxCoeff();
}

inline bool equal_up_to_phase(const Matrix &a, const Matrix &b, double tol) {
    return a.rows() == b.rows() && a.cols() == b.cols() &&
           phase_distance(a, b) <= tol;
}

} // namespace qcnn
