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
 * Dense amplitude-array kernels. All kernels address *bit positions* of the
 * flat index (bit 0 = least significant), not wire labels; callers translate
 * wires to bit positions. Gate matrices are row-major, with the first listed
 * bit position being the most significant bit of the gate basis index.
 */
#pragma once

#include <cstddef>

#include "qcnn/types.hpp"

namespace qcnn::detail {

inline void apply_1bit(cplx *v, std::size_t dim, int bp, const cplx *m) {
    const std::size_t mask = std::size_t{1} << bp;
    for (std::size_t base = 0; base < dim; base += (mask << 1)) {
        for (std::size_t off = 0; off < mask; ++off) {
            const std::size_t i0 = base + off;
            const std::size_t i1 = i0 | mask;
            const cplx a0 = v[i0];
            const cplx a1 = v[i1];
            v[i0] = m[0] * a0 + m[1] * a1;
            v[i1] = m[2] * a0 + m[3] * a1;
        }
    }
}

inline void apply_diag_1bit(cplx *v, std::size_t dim, int bp, cplx d0,
                            cplx d1) {
    const std::size_t mask = std::size_t{1} << bp;
    for (std::size_t base = 0; base < dim; base += (mask << 1)) {
        for (std::size_t off = 0; off < mask; ++off) {
            const std::size_t i0 = base + off;
            v[i0] *= d0;
            v[i0 | mask] *= d1;
        }
    }
}

inline void apply_x_1bit(cplx *v, std::size_t dim, int bp) {
    const std::size_t mask = std::size_t{1} << bp;
    for (std::size_t base = 0; base < dim; base += (mask << 1)) {
        for (std::size_t off = 0; off < mask; ++off) {
            const std::size_t i0 = base + off;
            std::swap(v[i0], v[i0 | mask]);
        }
    }
}

/// 4x4 gate on bit positions (bpa, bpb); gate basis index = bit(bpa)*2 +
/// bit(bpb).
inline void apply_2bit(cplx *v, std::size_t dim, int bpa, int bpb,
                       const cplx *m) {
    const std::size_t ma = std::size_t{1} << bpa;
    const std::size_t mb = std::size_t{1} << bpb;
    const std::size_t both = ma | mb;
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & both) != 0)
            continue;
        const std::size_t i00 = i;
        const std::size_t i01 = i | mb;
        const std::size_t i10 = i | ma;
        const std::size_t i11 = i | both;
        const cplx a0 = v[i00], a1 = v[i01], a2 = v[i10], a3 = v[i11];
        v[i00] = m[0] * a0 + m[1] * a1 + m[2] * a2 + m[3] * a3;
        v[i01] = m[4] * a0 + m[5] * a1 + m[6] * a2 + m[7] * a3;
        v[i10] = m[8] * a0 + m[9] * a1 + m[10] * a2 + m[11] * a3;
        v[i11] = m[12] * a0 + m[13] * a1 + m[14] * a2 + m[15] * a3;
    }
}

inline void apply_cx_bits(cplx *v, std::size_t dim, int bp_control,
                          int bp_target) {
    const std::size_t mc = std::size_t{1} << bp_control;
    const std::size_t mt = std::size_t{1} << bp_target;
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & mc) != 0 && (i & mt) == 0)
            std::swap(v[i], v[i | mt]);
    }
}

/// Generic k-bit gate (k <= 4). `bps` lists bit positions most-significant
/// first within the gate basis index. `m` is (2^k x 2^k), row-major.
inline void apply_kbit(cplx *v, std::size_t dim, const int *bps, int k,
                       const cplx *m) {
    const int gd = 1 << k;
    std::size_t all = 0;
    std::size_t masks[4];
    for (int j = 0; j < k; ++j) {
        masks[j] = std::size_t{1} << bps[j];
        all |= masks[j];
    }
    cplx in[16];
    std::size_t idx[16];
    for (std::size_t base = 0; base < dim; ++base) {
        if ((base & all) != 0)
            continue;
        for (int g = 0; g < gd; ++g) {
            std::size_t i = base;
            for (int j = 0; j < k; ++j)
                if ((g >> (k - 1 - j)) & 1)
                    i |= masks[j];
            idx[g] = i;
            in[g] = v[i];
        }
        for (int r = 0; r < gd; ++r) {
            cplx acc(0, 0);
            const cplx *row = m + static_cast<std::size_t>(r) * gd;
            for (int cidx = 0; cidx < gd; ++cidx)
                acc += row[cidx] * in[cidx];
            v[idx[r]] = acc;
        }
    }
}

} // namespace qcnn::detail
