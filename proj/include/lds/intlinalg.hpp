/*
 * Copyright 2026 The ldskit authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef LDS_INTLINALG_HPP
#define LDS_INTLINALG_HPP

#include <vector>

#include "lds/rational.hpp"

namespace lds {

using IntVec = std::vector<Int>;
using IntMat = std::vector<IntVec>;

// Saturated kernel of the integer matrix whose columns are `cols`:
// a basis of { e in Z^k : sum_i e_i * cols[i] = 0 }.  Column-style Hermite
// reduction with a unimodular transform keeps the kernel basis saturated.
inline IntMat integer_kernel(IntMat cols) {
    std::size_t k = cols.size();
    if (k == 0) return {};
    std::size_t rows = cols[0].size();
    IntMat u(k, IntVec(k, 0));
    for (std::size_t i = 0; i < k; ++i) u[i][i] = 1;

    std::size_t done = 0;  // columns fixed as pivots
    for (std::size_t r = 0; r < rows && done < k; ++r) {
        // Euclid across columns done..k-1 on row r.
        for (;;) {
            std::size_t nz = k;
            for (std::size_t c = done; c < k; ++c)
                if (cols[c][r] != 0 && (nz == k || abs(cols[c][r]) < abs(cols[nz][r]))) nz = c;
            if (nz == k) break;
            std::swap(cols[done], cols[nz]);
            std::swap(u[done], u[nz]);
            bool again = false;
            for (std::size_t c = done + 1; c < k; ++c) {
                if (cols[c][r] == 0) continue;
                Int q = cols[c][r] / cols[done][r];
                for (std::size_t i = 0; i < rows; ++i) cols[c][i] -= q * cols[done][i];
                for (std::size_t i = 0; i < k; ++i) u[c][i] -= q * u[done][i];
                if (cols[c][r] != 0) again = true;
            }
            if (!again) {
                ++done;
                break;
            }
        }
    }
    IntMat kernel;
    for (std::size_t c = done; c < k; ++c) {
        bool zero = true;
        for (std::size_t i = 0; i < rows; ++i)
            if (cols[c][i] != 0) { zero = false; break; }
        if (zero) kernel.push_back(u[c]);
    }
    return kernel;
}

// Basis (as rows) of the lattice spanned by integer row vectors.
inline IntMat row_lattice_basis(IntMat rows) {
    if (rows.empty()) return {};
    std::size_t n = rows[0].size();
    IntMat basis;
    std::size_t col = 0, start = 0;
    for (col = 0; col < n; ++col) {
        // Reduce column `col` across rows start..end by Euclid.
        for (;;) {
            std::size_t nz = rows.size();
            for (std::size_t rix = start; rix < rows.size(); ++rix)
                if (rows[rix][col] != 0 && (nz == rows.size() || abs(rows[rix][col]) < abs(rows[nz][col])))
                    nz = rix;
            if (nz == rows.size()) break;
            std::swap(rows[start], rows[nz]);
            bool again = false;
            for (std::size_t rix = start + 1; rix < rows.size(); ++rix) {
                if (rows[rix][col] == 0) continue;
                Int q = rows[rix][col] / rows[start][col];
                for (std::size_t j = 0; j < n; ++j) rows[rix][j] -= q * rows[start][j];
                if (rows[rix][col] != 0) again = true;
            }
            if (!again) break;
        }
        if (start < rows.size() && rows[start][col] != 0) ++start;
    }
    for (std::size_t rix = 0; rix < start; ++rix) basis.push_back(rows[rix]);
    return basis;
}

// Express `target` as an integer combination of lattice basis rows from
// row_lattice_basis (row-echelon shape); empty optional if impossible.
inline bool solve_in_row_basis(const IntMat& basis, IntVec target, IntVec& out) {
    out.assign(basis.size(), 0);
    if (basis.empty()) {
        for (auto& t : target)
            if (t != 0) return false;
        return true;
    }
    std::size_t n = target.size();
    for (std::size_t b = 0; b < basis.size(); ++b) {
        std::size_t lead = 0;
        while (lead < n && basis[b][lead] == 0) ++lead;
        if (lead == n) continue;
        if (target[lead] % basis[b][lead] != 0) {
            // May still be reducible by later rows only if they share the
            // leading column, which echelon form forbids.
            return false;
        }
        Int q = target[lead] / basis[b][lead];
        out[b] = q;
        for (std::size_t j = 0; j < n; ++j) target[j] -= q * basis[b][j];
    }
    for (auto& t : target)
        if (t != 0) return false;
    return true;
}

// Extended gcd over a list: returns g >= 0 and coefficients with
// sum c_i a_i = g.
inline Int ext_gcd_list(const std::vector<Int>& a, std::vector<Int>& c) {
    c.assign(a.size(), 0);
    Int g = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        if (g == 0) {
            g = abs(a[i]);
            c[i] = sgn(a[i]);
            continue;
        }
        Int s, t, ng;
        mpz_gcdext(ng.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), g.get_mpz_t(),
                   a[i].get_mpz_t());
        for (std::size_t j = 0; j < i; ++j) c[j] *= s;
        c[i] = t;
        g = ng;
    }
    return g;
}

}  // namespace lds

#endif
