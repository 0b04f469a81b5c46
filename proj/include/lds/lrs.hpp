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

#ifndef LDS_LRS_HPP
#define LDS_LRS_HPP

#include <optional>
#include <utility>
#include <vector>

#include "lds/apoly.hpp"
#include "lds/multiplicative.hpp"
#include "lds/poly.hpp"

namespace lds {

// u_n = c_1 u_{n-1} + ... + c_k u_{n-k} with integer data and c_k != 0.
struct RecurrenceSpec {
    std::vector<Int> coeffs;  // c_1..c_k
    std::vector<Int> init;    // u_0..u_{k-1}

    std::size_t order() const { return coeffs.size(); }
    void validate() const {
        if (coeffs.empty() || coeffs.back() == 0)
            throw invalid_argument_error("recurrence needs c_k != 0");
        if (init.size() != coeffs.size())
            throw invalid_argument_error("initial terms must match the order");
    }
    UniPolyQ char_poly() const {
        std::vector<Rat> v(coeffs.size() + 1, Rat(0));
        v[coeffs.size()] = 1;
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            v[coeffs.size() - 1 - i] = -Rat(coeffs[i]);
        return UniPolyQ(std::move(v));
    }
};

inline std::vector<Int> eval_terms(const RecurrenceSpec& spec, std::size_t count) {
    spec.validate();
    std::vector<Int> u(spec.init.begin(), spec.init.end());
    u.resize(std::max(count, u.size()));
    for (std::size_t n = spec.init.size(); n < count; ++n) {
        Int acc = 0;
        for (std::size_t i = 0; i < spec.coeffs.size(); ++i) acc += spec.coeffs[i] * u[n - 1 - i];
        u[n] = acc;
    }
    u.resize(count);
    return u;
}

inline Int eval(const RecurrenceSpec& spec, unsigned long n) {
    return eval_terms(spec, n + 1)[n];
}

// Closed form u_n = sum_i g_i(n) * alpha_i^n with distinct nonzero roots.
struct ExpTerm {
    APoly poly;   // g_i, ascending coefficients
    AlgNum root;  // alpha_i
};

struct ExpPoly {
    std::vector<ExpTerm> terms;

    void normalize() {
        std::vector<ExpTerm> merged;
        for (auto& t : terms) {
            if (t.root.is_zero()) throw invalid_argument_error("zero characteristic root");
            APoly p = ap_trim(t.poly);
            if (p.empty()) continue;
            bool found = false;
            for (auto& m : merged)
                if (m.root == t.root) {
                    m.poly = ap_add(m.poly, p);
                    found = true;
                    break;
                }
            if (!found) merged.push_back({p, t.root});
        }
        for (auto it = merged.begin(); it != merged.end();)
            it = ap_is_zero(it->poly) ? merged.erase(it) : std::next(it);
        terms = std::move(merged);
    }

    std::size_t order() const {
        std::size_t k = 0;
        for (auto& t : terms) k += t.poly.size();
        return k;
    }
};

inline AlgNum eval_algebraic(const ExpPoly& ep, unsigned long n) {
    AlgNum acc(Rat(0));
    AlgNum nn(Rat(static_cast<long>(n)));
    for (auto& t : ep.terms) acc = acc + ap_eval(t.poly, nn) * t.root.pow(Int(n));
    return acc;
}

inline Rat eval(const ExpPoly& ep, unsigned long n) {
    AlgNum v = eval_algebraic(ep, n);
    if (!v.is_rational())
        throw invalid_argument_error("closed form is not rational at n=" + std::to_string(n));
    return v.as_rat();
}

// ---- linear algebra over the algebraic numbers ---------------------------

inline std::optional<std::vector<AlgNum>> solve_linear_algnum(
    std::vector<std::vector<AlgNum>> a, std::vector<AlgNum> b) {
    std::size_t rows = a.size(), colsn = rows ? a[0].size() : 0;
    std::vector<long> pivot(colsn, -1);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < colsn && rank < rows; ++col) {
        std::size_t sel = rank;
        while (sel < rows && a[sel][col].is_zero()) ++sel;
        if (sel == rows) continue;
        std::swap(a[sel], a[rank]);
        std::swap(b[sel], b[rank]);
        AlgNum inv = a[rank][col].inverse();
        for (auto& v : a[rank]) v = v * inv;
        b[rank] = b[rank] * inv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || a[r][col].is_zero()) continue;
            AlgNum f = a[r][col];
            for (std::size_t c = 0; c < colsn; ++c) a[r][c] = a[r][c] - f * a[rank][c];
            b[r] = b[r] - f * b[rank];
        }
        pivot[col] = static_cast<long>(rank);
        ++rank;
    }
    for (std::size_t r = rank; r < rows; ++r)
        if (!b[r].is_zero()) return std::nullopt;
    std::vector<AlgNum> x(colsn, AlgNum(Rat(0)));
    for (std::size_t col = 0; col < colsn; ++col)
        if (pivot[col] >= 0) x[col] = b[static_cast<std::size_t>(pivot[col])];
    return x;
}

// ---- characteristic polynomial factorization ------------------------------

struct unsupported_splitting_field_error : unsupported_field_error {
    unsupported_splitting_field_error(const std::string& msg, UniPolyQ g, unsigned long l)
        : unsupported_field_error(msg), inner(std::move(g)), ell(l) {}
    UniPolyQ inner;     // when f(x) = inner(x^ell), the designated fallback
    unsigned long ell = 1;
};

// Factor a monic integer polynomial into roots living in Q(sqrt d, zeta_N):
// integer roots, cyclotomic factors, and integer quadratics.  Anything
// deeper reports unsupported-splitting-field (carrying the g(x^ell) shape
// when there is one).
inline std::vector<std::pair<AlgNum, std::size_t>> factor_supported_roots(UniPolyQ f) {
    if (f.is_zero() || f.lead() != 1)
        throw invalid_argument_error("expected a monic characteristic polynomial");
    for (auto& c : f.coeffs())
        if (c.get_den() != 1) throw invalid_argument_error("expected integer coefficients");
    std::vector<std::pair<AlgNum, std::size_t>> roots;
    auto add_root = [&roots](const AlgNum& r, std::size_t m) {
        for (auto& [x, mult] : roots)
            if (x == r) {
                mult += m;
                return;
            }
        roots.emplace_back(r, m);
    };

    // Integer roots (monic integer polynomial: rational roots are integers).
    bool progress = true;
    while (progress && f.degree() > 0) {
        progress = false;
        Int c0 = f.coeff(0).get_num();
        if (c0 == 0) throw invalid_argument_error("characteristic polynomial has root 0");
        std::vector<Int> divs = {Int(1)};
        for (auto& [p, e] : factorize(c0)) {
            std::vector<Int> next;
            Int pk = 1;
            for (unsigned long i = 0; i <= e; ++i) {
                for (auto& d : divs) next.push_back(d * pk);
                pk *= p;
            }
            divs = std::move(next);
        }
        for (auto& d : divs) {
            for (Int r : {d, Int(-d)}) {
                Rat rr(r);
                while (f.degree() > 0 && f.eval(rr) == 0) {
                    f = f / (UniPolyQ::x() - UniPolyQ(rr));
                    add_root(AlgNum(rr), 1);
                    progress = true;
                }
            }
        }
    }

    // Cyclotomic factors.
    for (unsigned long m = 2; f.degree() > 0 && m <= 2 * static_cast<unsigned long>(f.degree()) * 2 + 4; ++m) {
        if (euler_phi(m) > static_cast<unsigned long>(f.degree())) continue;
        while (f.degree() >= cyclotomic(m).degree() && f.divisible_by(cyclotomic(m))) {
            f = f / cyclotomic(m);
            for (unsigned long j = 1; j <= m; ++j)
                if (std::gcd(j, m) == 1) add_root(AlgNum::zeta(m, static_cast<long>(j)), 1);
        }
    }

    // Integer quadratic factors x^2 + b x + c with non-square discriminant.
    if (f.degree() > 0) {
        Rat bound(0);
        for (auto& c : f.coeffs()) {
            Rat ac = abs(c);
            if (ac > bound) bound = ac;
        }
        Int bmax = 2 * (bound.get_num() + 1);
        bool again = true;
        while (again && f.degree() >= 2) {
            again = false;
            Int c0 = abs(f.coeff(0).get_num());
            std::vector<Int> divs = {Int(1)};
            for (auto& [p, e] : factorize(c0)) {
                std::vector<Int> next;
                Int pk = 1;
                for (unsigned long i = 0; i <= e; ++i) {
                    for (auto& d : divs) next.push_back(d * pk);
                    pk *= p;
                }
                divs = std::move(next);
            }
            for (auto& dv : divs) {
                for (Int c : {dv, Int(-dv)}) {
                    for (Int b = -bmax; b <= bmax && f.degree() >= 2; ++b) {
                        UniPolyQ quad(std::vector<Rat>{Rat(c), Rat(b), Rat(1)});
                        while (f.degree() >= 2 && f.divisible_by(quad)) {
                            Int disc = b * b - 4 * c;
                            if (disc == 0) {
                                add_root(AlgNum(Rat(-b, 2)), 2);
                            } else {
                                // disc = k^2 * d with d squarefree
                                Int k = 1, d = disc;
                                for (auto& [p, e] : factorize(disc)) {
                                    for (unsigned long i = 0; i + 1 < e; i += 2) {
                                        k *= p;
                                        d /= p * p;
                                    }
                                }
                                long dl = static_cast<long>(d.get_si());
                                Rat half(-b, 2), kk(k, 2);
                                half.canonicalize();
                                kk.canonicalize();
                                add_root(AlgNum::quad(half, kk, dl), 1);
                                add_root(AlgNum::quad(half, -kk, dl), 1);
                            }
                            f = f / quad;
                            again = true;
                        }
                    }
                }
            }
        }
    }

    if (f.degree() > 0) {
        // Shape report: f = g(x^ell)?
        unsigned long ell = 0;
        for (long i = 1; i <= f.degree(); ++i)
            if (f.coeff(static_cast<std::size_t>(i)) != 0)
                ell = std::gcd(ell, static_cast<unsigned long>(i));
        if (ell > 1) {
            std::vector<Rat> g;
            for (long i = 0; i <= f.degree(); i += static_cast<long>(ell))
                g.push_back(f.coeff(static_cast<std::size_t>(i)));
            throw unsupported_splitting_field_error(
                "irreducible factor of degree " + std::to_string(f.degree()) +
                    " beyond supported fields; factor has the shape g(x^" +
                    std::to_string(ell) + ")",
                UniPolyQ(std::move(g)), ell);
        }
        throw unsupported_splitting_field_error(
            "irreducible factor of degree " + std::to_string(f.degree()) +
                " beyond supported fields",
            UniPolyQ::zero(), 1);
    }
    return roots;
}

// ---- conversions -----------------------------------------------------------

inline ExpPoly recurrence_to_closed_form(const RecurrenceSpec& spec) {
    spec.validate();
    auto roots = factor_supported_roots(spec.char_poly());
    std::size_t k = spec.order();
    // Unknowns: g_{i,j} for j < mult_i; equations from u_0..u_{k-1}.
    std::vector<std::vector<AlgNum>> a(k);
    std::vector<AlgNum> b;
    for (std::size_t n = 0; n < k; ++n) {
        for (auto& [root, mult] : roots) {
            AlgNum rn = root.pow(Int(static_cast<long>(n)));
            AlgNum npow(Rat(1));
            for (std::size_t j = 0; j < mult; ++j) {
                a[n].push_back(npow * rn);
                npow = npow * AlgNum(Rat(static_cast<long>(n)));
            }
        }
        b.push_back(AlgNum(Rat(spec.init[n])));
    }
    auto sol = solve_linear_algnum(a, b);
    if (!sol) throw invalid_argument_error("initial terms do not determine a closed form");
    ExpPoly ep;
    std::size_t ix = 0;
    for (auto& [root, mult] : roots) {
        ExpTerm t;
        t.root = root;
        for (std::size_t j = 0; j < mult; ++j) t.poly.push_back((*sol)[ix++]);
        ep.terms.push_back(std::move(t));
    }
    ep.normalize();
    return ep;
}

inline RecurrenceSpec closed_form_to_recurrence(const ExpPoly& ep0) {
    ExpPoly ep = ep0;
    ep.normalize();
    if (ep.terms.empty()) throw invalid_argument_error("empty closed form");
    // characteristic polynomial = prod (x - alpha_i)^{k_i}
    APoly cp = {AlgNum(Rat(1))};
    for (auto& t : ep.terms) {
        APoly lin = {-t.root, AlgNum(Rat(1))};
        for (std::size_t j = 0; j < t.poly.size(); ++j) cp = ap_mul(cp, lin);
    }
    RecurrenceSpec spec;
    std::size_t k = cp.size() - 1;
    for (std::size_t i = 1; i <= k; ++i) {
        const AlgNum& c = cp[k - i];
        if (!c.is_rational() || c.as_rat().get_den() != 1)
            throw invalid_argument_error("characteristic polynomial is not integral");
        spec.coeffs.push_back(-c.as_rat().get_num());
    }
    for (std::size_t n = 0; n < k; ++n) {
        Rat v = eval(ep, n);
        if (v.get_den() != 1)
            throw invalid_argument_error("closed form is not integral at n=" + std::to_string(n));
        spec.init.push_back(v.get_num());
    }
    spec.validate();
    return spec;
}

// ---- minimal order ---------------------------------------------------------

// Least k <= k_max whose recurrence fits every supplied term; exact Hankel
// fitting over Q, verified by re-evaluation.  Bounded verdict only.
inline std::optional<std::pair<std::size_t, RecurrenceSpec>> minimal_order(
    const std::vector<Rat>& terms, std::size_t k_max) {
    if (terms.size() < 2 * k_max + 2)
        throw invalid_argument_error("minimal_order needs at least 2*k_max+2 terms");
    for (std::size_t k = 1; k <= k_max; ++k) {
        std::size_t eqs = terms.size() - k;
        std::vector<std::vector<Rat>> cols(k, std::vector<Rat>(eqs));
        std::vector<Rat> rhs(eqs);
        for (std::size_t n = 0; n < eqs; ++n) {
            for (std::size_t i = 0; i < k; ++i) cols[i][n] = terms[n + k - 1 - i];
            rhs[n] = terms[n + k];
        }
        std::vector<Rat> c;
        if (!detail::solve_columns(cols, rhs, c)) continue;
        if (c[k - 1] == 0) continue;  // c_k must be nonzero
        bool ok = true;
        for (std::size_t n = k; n < terms.size() && ok; ++n) {
            Rat acc(0);
            for (std::size_t i = 0; i < k; ++i) acc += c[i] * terms[n - 1 - i];
            ok = acc == terms[n];
        }
        if (!ok) continue;
        RecurrenceSpec spec;
        for (std::size_t i = 0; i < k; ++i) {
            if (c[i].get_den() != 1) {
                ok = false;
                break;
            }
            spec.coeffs.push_back(c[i].get_num());
        }
        if (!ok) continue;
        for (std::size_t i = 0; i < k; ++i) {
            if (terms[i].get_den() != 1) throw invalid_argument_error("integer terms expected");
            spec.init.push_back(terms[i].get_num());
        }
        return std::make_pair(k, spec);
    }
    return std::nullopt;
}

// ---- period and multiplicative structure -----------------------------------

// Period M: every root of unity among monomials in the root *ratios* is an
// M-th root of unity, and roots that are themselves roots of unity have
// order dividing M.
inline unsigned long period(const ExpPoly& ep0, const MultPolicy& policy = {}) {
    ExpPoly ep = ep0;
    ep.normalize();
    if (ep.terms.empty()) return 1;
    unsigned long M = 1;
    std::vector<AlgNum> ratio_gens;
    const AlgNum& base = ep.terms[0].root;
    for (auto& t : ep.terms) {
        if (auto ord = t.root.is_root_of_unity())
            M = std::lcm(M, static_cast<unsigned long>(*ord));
    }
    for (std::size_t i = 1; i < ep.terms.size(); ++i) {
        AlgNum ratio = ep.terms[i].root * base.inverse();
        if (auto ord = ratio.is_root_of_unity())
            M = std::lcm(M, static_cast<unsigned long>(*ord));
        else
            ratio_gens.push_back(ratio);
    }
    if (!ratio_gens.empty()) M = std::lcm(M, torsion_exponent(ratio_gens, policy));
    return M;
}

struct PeriodStructure {
    unsigned long M = 1;
    std::vector<AlgNum> basis;  // gamma_j, multiplicatively independent
    struct RootExpr {
        long torsion = 0;            // e_{i,0}: root = zeta_M^torsion * prod gamma^e
        std::vector<long> exps;      // e_{i,1}..e_{i,r}
    };
    std::vector<RootExpr> roots;     // aligned with the normalized ExpPoly terms
    ExpPoly normalized;              // term order matching `roots`
    long radius = 12;                // dependence search bound used

    // Evaluate through the U_a representation: u_n = sum g_i(n)
    // zeta_M^{t_i n} prod gamma_j^{n e_ij}; per residue class the torsion
    // factor is constant.
    AlgNum eval_via_structure(unsigned long n) const {
        AlgNum acc(Rat(0));
        AlgNum nn(Rat(static_cast<long>(n)));
        for (std::size_t i = 0; i < roots.size(); ++i) {
            AlgNum v = ap_eval(normalized.terms[i].poly, nn);
            v = v * AlgNum::zeta(M, static_cast<long>((roots[i].torsion * (n % M)) % M));
            for (std::size_t j = 0; j < basis.size(); ++j)
                if (roots[i].exps[j] != 0)
                    v = v * basis[j].pow(Int(roots[i].exps[j]) * Int(static_cast<long>(n)));
            acc = acc + v;
        }
        return acc;
    }
};

inline PeriodStructure period_structure(const ExpPoly& ep0, const MultPolicy& policy = {}) {
    PeriodStructure ps;
    ps.radius = policy.radius;
    ps.normalized = ep0;
    ps.normalized.normalize();
    auto& terms = ps.normalized.terms;
    if (terms.empty()) {
        ps.M = 1;
        return ps;
    }

    std::vector<AlgNum> roots;
    for (auto& t : terms) roots.push_back(t.root);

    // M must cover the ratio torsion *and* the torsion of the full root
    // group so every root is zeta_M^t times a monomial in a torsion-free
    // basis.
    ps.M = std::lcm(period(ps.normalized, policy), torsion_exponent(roots, policy));

    // Classify roots: prime-lattice rows (scaled by 2) vs free classes.
    struct LatticeEntry {
        std::size_t term;
        std::map<Int, long> primes;  // x2
        std::map<std::size_t, long> syms;  // x2, indices into class_bases
    };
    std::vector<LatticeEntry> entries(roots.size());
    std::vector<AlgNum> class_bases;
    std::vector<std::size_t> pending;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        entries[i].term = i;
        if (roots[i].is_root_of_unity()) continue;  // pure torsion root
        if (roots[i].is_rational()) {
            for (auto& [p, e] : rat_exponents(roots[i].as_rat()).exps)
                entries[i].primes[p] = 2 * e;
            continue;
        }
        AlgNum sq = roots[i] * roots[i];
        if (sq.is_rational()) {
            for (auto& [p, e] : rat_exponents(sq.as_rat()).exps) entries[i].primes[p] = e;
            continue;
        }
        pending.push_back(i);
    }
    // Group the leftovers into dependence classes and anchor each class on
    // a mult_dep base so all exponents are integers.
    std::vector<bool> seen(roots.size(), false);
    for (std::size_t a = 0; a < pending.size(); ++a) {
        std::size_t i = pending[a];
        if (seen[i]) continue;
        std::vector<std::size_t> members = {i};
        seen[i] = true;
        for (std::size_t b = a + 1; b < pending.size(); ++b) {
            std::size_t j = pending[b];
            if (seen[j]) continue;
            AlgNum prod = roots[i] * roots[j];
            if (prod.is_rational() || find_mult_relation(roots[j], roots[i], policy)) {
                members.push_back(j);
                seen[j] = true;
            }
        }
        // Conjugate-pair shortcut: root_j * root_i rational.
        bool all_pairs_rational = members.size() == 2 &&
                                  (roots[members[0]] * roots[members[1]]).is_rational();
        if (all_pairs_rational) {
            std::size_t sym = class_bases.size();
            class_bases.push_back(roots[members[0]]);
            entries[members[0]].syms[sym] = 2;
            AlgNum prod = roots[members[0]] * roots[members[1]];
            entries[members[1]].syms[sym] = -2;
            for (auto& [p, e] : rat_exponents(prod.as_rat()).exps)
                entries[members[1]].primes[p] = 2 * e;
            continue;
        }
        std::vector<AlgNum> vals;
        for (auto m : members) vals.push_back(roots[m]);
        auto dep = mult_dep_normalize(vals, policy);
        if (dep.kind != MultDepResult::Kind::dependent && members.size() > 1)
            throw dependence_undecided_error("class members failed joint normalization");
        std::size_t sym = class_bases.size();
        if (dep.kind == MultDepResult::Kind::dependent) {
            class_bases.push_back(dep.base);
            for (std::size_t m = 0; m < members.size(); ++m)
                entries[members[m]].syms[sym] = 2 * dep.exponents[m];
        } else {
            class_bases.push_back(roots[i]);
            entries[i].syms[sym] = 2;
        }
    }

    // Prime-part basis from the row lattice (entries scaled by 2).
    std::set<Int> primes;
    for (auto& e : entries)
        for (auto& [p, v] : e.primes) primes.insert(p);
    std::vector<Int> plist(primes.begin(), primes.end());
    IntMat rows;
    for (auto& e : entries) {
        if (e.primes.empty()) continue;
        IntVec r(plist.size(), 0);
        for (std::size_t pi = 0; pi < plist.size(); ++pi) {
            auto it = e.primes.find(plist[pi]);
            if (it != e.primes.end()) r[pi] = it->second;
        }
        rows.push_back(std::move(r));
    }
    IntMat basis_rows = row_lattice_basis(rows);
    std::vector<AlgNum> gamma;
    for (auto& row : basis_rows) {
        // row entries live in the x2 space: gamma = prod p^{row/2}.
        AlgNum g(Rat(1));
        long sq = 1;
        for (std::size_t pi = 0; pi < plist.size(); ++pi) {
            Int e = row[pi];
            Int half;
            mpz_fdiv_q_2exp(half.get_mpz_t(), e.get_mpz_t(), 1);
            if (e < 0 && mpz_odd_p(e.get_mpz_t())) half += 1;  // round toward zero
            bool odd = (e - 2 * half) != 0;
            if (half != 0) g = g * AlgNum(Rat(plist[pi])).pow(half);
            if (odd) {
                sq *= static_cast<long>(plist[pi].get_si());
                if (e < 0) g = g * AlgNum(Rat(1, plist[pi])).pow(Int(1));
            }
        }
        if (sq != 1) g = g * AlgNum::sqrt_of(sq);
        gamma.push_back(g);
    }

    ps.basis = gamma;
    for (auto& w : class_bases) ps.basis.push_back(w);

    // Express every root over the basis, collecting torsion.
    for (std::size_t i = 0; i < roots.size(); ++i) {
        PeriodStructure::RootExpr ex;
        ex.exps.assign(ps.basis.size(), 0);
        AlgNum mono(Rat(1));
        if (!entries[i].primes.empty()) {
            IntVec target(plist.size(), 0);
            for (std::size_t pi = 0; pi < plist.size(); ++pi) {
                auto it = entries[i].primes.find(plist[pi]);
                if (it != entries[i].primes.end()) target[pi] = it->second;
            }
            IntVec combo;
            if (!solve_in_row_basis(basis_rows, target, combo))
                throw dependence_undecided_error("root not expressible over the computed basis");
            for (std::size_t j = 0; j < combo.size(); ++j) {
                ex.exps[j] = static_cast<long>(combo[j].get_si());
                if (ex.exps[j] != 0) mono = mono * gamma[j].pow(combo[j]);
            }
        }
        for (auto& [sym, e2] : entries[i].syms) {
            long e = e2 / 2;
            ex.exps[gamma.size() + sym] = e;
            if (e != 0) mono = mono * class_bases[sym].pow(Int(e));
        }
        AlgNum residual = roots[i] * mono.inverse();
        auto ord = residual.is_root_of_unity();
        if (!ord || ps.M % *ord != 0)
            throw dependence_undecided_error("torsion residual outside zeta_M");
        long t = -1;
        for (unsigned long cand = 0; cand < ps.M; ++cand)
            if (AlgNum::zeta(ps.M, static_cast<long>(cand)) == residual) {
                t = static_cast<long>(cand);
                break;
            }
        if (t < 0) throw dependence_undecided_error("torsion residual not a power of zeta_M");
        ex.torsion = t;
        ps.roots.push_back(std::move(ex));
    }
    return ps;
}

// ---- sequence algebra -------------------------------------------------------

inline ExpPoly product(const ExpPoly& a0, const ExpPoly& b0) {
    ExpPoly a = a0, b = b0, r;
    a.normalize();
    b.normalize();
    for (auto& ta : a.terms)
        for (auto& tb : b.terms) r.terms.push_back({ap_mul(ta.poly, tb.poly), ta.root * tb.root});
    r.normalize();
    return r;
}

// Fit a recurrence for w_n / u_n.  Leading indices where both are zero are
// skipped (the quotient is not determined there); a zero u_n after that is
// reported as division-by-zero unless the caller filtered indices.  The
// returned spec describes the quotient from the first determined index on.
struct QuotientFit {
    std::size_t first_index = 0;
    std::size_t order = 0;
    RecurrenceSpec spec;
};

inline std::optional<QuotientFit> quotient_fit(const std::vector<Rat>& w,
                                               const std::vector<Rat>& u, std::size_t k_max) {
    if (w.size() != u.size()) throw invalid_argument_error("length mismatch");
    std::size_t start = 0;
    while (start < u.size() && u[start] == 0 && w[start] == 0) ++start;
    std::vector<Rat> v;
    for (std::size_t i = start; i < u.size(); ++i) {
        if (u[i] == 0) throw division_by_zero_error("quotient_fit hit u_n = 0 at n=" + std::to_string(i));
        v.push_back(w[i] / u[i]);
    }
    if (v.size() < 2 * k_max + 2) throw invalid_argument_error("not enough terms after filtering");
    auto fit = minimal_order(v, k_max);
    if (!fit) return std::nullopt;
    QuotientFit qf;
    qf.first_index = start;
    qf.order = fit->first;
    qf.spec = fit->second;
    return qf;
}

}  // namespace lds

#endif
