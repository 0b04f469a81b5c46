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

#ifndef LDS_APOLY_HPP
#define LDS_APOLY_HPP

#include <utility>
#include <vector>

#include "lds/algnum.hpp"

namespace lds {

// Polynomial with algebraic-number coefficients, used for the g_i(n).
using APoly = std::vector<AlgNum>;

inline APoly ap_trim(APoly p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
    return p;
}
inline bool ap_is_zero(const APoly& p) { return ap_trim(p).empty(); }
inline APoly ap_add(const APoly& a, const APoly& b) {
    APoly r(std::max(a.size(), b.size()), AlgNum(Rat(0)));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = r[i] + a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = r[i] + b[i];
    return ap_trim(r);
}
inline APoly ap_mul(const APoly& a, const APoly& b) {
    if (a.empty() || b.empty()) return {};
    APoly r(a.size() + b.size() - 1, AlgNum(Rat(0)));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    return ap_trim(r);
}
inline APoly ap_scale(const APoly& a, const AlgNum& s) {
    APoly r;
    for (auto& c : a) r.push_back(c * s);
    return ap_trim(r);
}
inline AlgNum ap_eval(const APoly& p, const AlgNum& x) {
    AlgNum acc(Rat(0));
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}
// p(c0 + c1*x)
inline APoly ap_compose_affine(const APoly& p, const Rat& c0, const Rat& c1) {
    APoly acc;
    APoly lin = {AlgNum(c0), AlgNum(c1)};
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        acc = ap_mul(acc, lin);
        if (acc.empty()) acc = {AlgNum(Rat(0))};
        acc[0] = acc[0] + *it;
        acc = ap_trim(acc);
    }
    return acc;
}

inline std::pair<APoly, APoly> ap_divmod(APoly num, const APoly& den0) {
    APoly den = ap_trim(den0);
    if (den.empty()) throw division_by_zero_error("polynomial division by zero");
    num = ap_trim(num);
    APoly q;
    if (num.size() >= den.size()) q.assign(num.size() - den.size() + 1, AlgNum(Rat(0)));
    AlgNum lead_inv = den.back().inverse();
    while (num.size() >= den.size()) {
        AlgNum f = num.back() * lead_inv;
        std::size_t shift = num.size() - den.size();
        q[shift] = f;
        for (std::size_t i = 0; i < den.size(); ++i)
            num[i + shift] = num[i + shift] - f * den[i];
        num = ap_trim(num);
        if (num.size() < den.size()) break;
        if (num.empty()) break;
    }
    return {ap_trim(q), num};
}

inline bool ap_divisible(const APoly& num, const APoly& den) {
    return ap_divmod(num, den).second.empty();
}

}  // namespace lds

#endif
