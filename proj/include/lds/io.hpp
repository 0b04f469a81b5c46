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

#ifndef LDS_IO_HPP
#define LDS_IO_HPP

#include <json.hpp>

#include <fstream>
#include <memory>

#include "lds/decompose.hpp"

namespace lds {

using json = nlohmann::json;

struct schema_error : std::runtime_error {
    schema_error(const std::string& where, const std::string& what)
        : std::runtime_error("schema error at " + where + ": " + what) {}
};

// ---- exact literals -----------------------------------------------------------

inline Rat parse_rat(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
    if (j.is_string()) {
        try {
            return rat_from_string(j.get<std::string>());
        } catch (const invalid_argument_error& e) {
            throw schema_error(where, e.what());
        }
    }
    throw schema_error(where, "expected an integer or a fraction string");
}

inline Int parse_int(const json& j, const std::string& where) {
    Rat r = parse_rat(j, where);
    if (r.get_den() != 1) throw schema_error(where, "expected an integer");
    return r.get_num();
}

// AlgNum literal: {"rat": "3/2"} and/or {"quad": [a, b, d]} (= a + b sqrt d)
// and/or {"zeta": [j, N]}; present parts multiply.
inline AlgNum parse_algnum(const json& j, const std::string& where) {
    if (j.is_number_integer() || j.is_string()) return AlgNum(parse_rat(j, where));
    if (!j.is_object()) throw schema_error(where, "expected an algebraic number literal");
    AlgNum v(Rat(1));
    bool any = false;
    if (j.contains("rat")) {
        v = v * AlgNum(parse_rat(j.at("rat"), where + ".rat"));
        any = true;
    }
    if (j.contains("quad")) {
        const json& q = j.at("quad");
        if (!q.is_array() || q.size() != 3) throw schema_error(where + ".quad", "expected [a, b, d]");
        Rat a = parse_rat(q[0], where + ".quad[0]");
        Rat b = parse_rat(q[1], where + ".quad[1]");
        Int d = parse_int(q[2], where + ".quad[2]");
        v = v * AlgNum::quad(a, b, static_cast<long>(d.get_si()));
        any = true;
    }
    if (j.contains("zeta")) {
        const json& z = j.at("zeta");
        if (!z.is_array() || z.size() != 2) throw schema_error(where + ".zeta", "expected [j, N]");
        long jj = static_cast<long>(parse_int(z[0], where + ".zeta[0]").get_si());
        unsigned long N = parse_int(z[1], where + ".zeta[1]").get_ui();
        v = v * AlgNum::zeta(N, jj);
        any = true;
    }
    if (!any) throw schema_error(where, "empty algebraic number literal");
    return v;
}

inline json algnum_to_json(const AlgNum& x) {
    if (x.is_rational()) return json{{"rat", rat_to_string(x.as_rat())}};
    return json{{"str", x.to_string()}};
}

// ---- sequence specifications -----------------------------------------------------

// The discriminated union behind every spec file; evaluation is exact and,
// where the type admits one, a closed form is available for the
// decomposition pipeline.
class SequenceSpec {
   public:
    static SequenceSpec parse(const json& j, const std::string& where = "/sequence");

    Int eval_int(unsigned long n) const { return eval_fn_(n); }
    IntSeq seq() const {
        auto fn = eval_fn_;
        return [fn](unsigned long n) { return fn(n); };
    }
    bool has_closed_form() const { return has_cf_; }
    const ExpPoly& closed_form() const {
        if (!has_cf_) throw invalid_argument_error("spec type has no closed form");
        return cf_;
    }
    const std::string& type() const { return type_; }

   private:
    std::string type_;
    std::function<Int(unsigned long)> eval_fn_;
    bool has_cf_ = false;
    ExpPoly cf_;
};

inline SequenceSpec SequenceSpec::parse(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("type"))
        throw schema_error(where, "expected an object with a type field");
    SequenceSpec s;
    s.type_ = j.at("type").get<std::string>();
    const std::string& t = s.type_;

    auto ul = [&where](const json& v, const char* key) {
        if (!v.contains(key)) throw schema_error(where, std::string("missing ") + key);
        return v.at(key).get<unsigned long>();
    };

    if (t == "recurrence") {
        RecurrenceSpec spec;
        for (auto& c : j.at("coeffs")) spec.coeffs.push_back(parse_int(c, where + ".coeffs"));
        for (auto& c : j.at("init")) spec.init.push_back(parse_int(c, where + ".init"));
        spec.validate();
        s.eval_fn_ = [spec](unsigned long n) { return eval(spec, n); };
        try {
            s.cf_ = recurrence_to_closed_form(spec);
            s.has_cf_ = true;
        } catch (const unsupported_field_error&) {
        }
        return s;
    }
    if (t == "closed_form") {
        ExpPoly ep;
        for (auto& tj : j.at("terms")) {
            ExpTerm term;
            term.root = parse_algnum(tj.at("root"), where + ".terms.root");
            for (auto& c : tj.at("poly")) term.poly.push_back(parse_algnum(c, where + ".terms.poly"));
            ep.terms.push_back(std::move(term));
        }
        ep.normalize();
        s.cf_ = ep;
        s.has_cf_ = true;
        s.eval_fn_ = [ep](unsigned long n) {
            Rat v = eval(ep, n);
            if (v.get_den() != 1)
                throw invalid_argument_error("closed form is not integral at n=" + std::to_string(n));
            return v.get_num();
        };
        return s;
    }
    if (t == "periodic") {
        unsigned long M = ul(j, "M");
        std::map<unsigned long, Int> values;
        for (auto& [k, v] : j.at("values").items())
            values[std::stoul(k)] = parse_int(v, where + ".values");
        std::map<unsigned long, int> signs;
        if (j.contains("signs"))
            for (auto& [k, v] : j.at("signs").items()) signs[std::stoul(k)] = v.get<int>();
        auto p = make_periodic(M, values, signs);
        s.eval_fn_ = [p](unsigned long n) { return p.eval(n); };
        s.cf_ = to_expoly(p);
        s.has_cf_ = true;
        return s;
    }
    if (t == "power") {
        unsigned long M = ul(j, "M");
        std::map<unsigned long, unsigned long> exps;
        for (auto& [k, v] : j.at("exps").items()) exps[std::stoul(k)] = v.get<unsigned long>();
        auto p = make_power(M, exps);
        s.eval_fn_ = [p](unsigned long n) { return p.eval(n); };
        s.cf_ = to_expoly(p);
        s.has_cf_ = true;
        return s;
    }
    if (t == "exponential") {
        unsigned long M = ul(j, "M");
        std::vector<Int> primes;
        for (auto& p : j.at("primes")) primes.push_back(parse_int(p, where + ".primes"));
        std::vector<std::vector<unsigned long>> tables;
        for (auto& row : j.at("tables")) tables.push_back(row.get<std::vector<unsigned long>>());
        auto p = make_exponential(M, primes, tables);
        s.eval_fn_ = [p](unsigned long n) { return p.eval(n); };
        try {
            s.cf_ = to_expoly(p);
            s.has_cf_ = true;
        } catch (const unsupported_field_error&) {
        }
        return s;
    }
    if (t == "lucas") {
        Int P = parse_int(j.at("P"), where + ".P");
        Int Q = parse_int(j.at("Q"), where + ".Q");
        s.eval_fn_ = [P, Q](unsigned long n) { return lucas(P, Q, n); };
        try {
            s.cf_ = lucas_expoly(P, Q);
            s.has_cf_ = true;
        } catch (const unsupported_field_error&) {
        }
        return s;
    }
    if (t == "lehmer") {
        Int r = parse_int(j.at("r"), where + ".r");
        Int sv = parse_int(j.at("s"), where + ".s");
        lehmer_validate(r, sv);
        s.eval_fn_ = [r, sv](unsigned long n) { return lehmer(r, sv, n); };
        try {
            s.cf_ = lehmer_expoly(r, sv);
            s.has_cf_ = true;
        } catch (const unsupported_field_error&) {
        }
        return s;
    }
    if (t == "polygen") {
        PolyGenSpec spec;
        for (auto& rj : j.at("roots")) {
            long num = static_cast<long>(parse_int(rj.at("num"), where + ".roots.num").get_si());
            unsigned long den = parse_int(rj.at("den"), where + ".roots.den").get_ui();
            unsigned long mult = rj.contains("mult") ? rj.at("mult").get<unsigned long>() : 1;
            spec.f.add_root(RootFrac::make(num, den), mult);
        }
        if (j.contains("M")) spec.M = j.at("M").get<unsigned long>();
        spec.alpha = parse_algnum(j.at("alpha"), where + ".alpha");
        spec.beta = parse_algnum(j.at("beta"), where + ".beta");
        if (j.contains("conjugate_pair")) spec.conjugate_pair = j.at("conjugate_pair").get<bool>();
        if (j.contains("q")) spec.q = parse_int(j.at("q"), where + ".q");
        spec.validate();
        s.eval_fn_ = [spec](unsigned long n) {
            return n == 0 ? Int(0) : polygen_eval(spec, n);
        };
        return s;
    }
    if (t == "combine") {
        unsigned long M = ul(j, "M");
        std::map<unsigned long, IntSeq> parts;
        for (auto& [k, v] : j.at("parts").items()) {
            auto sub = std::make_shared<SequenceSpec>(parse(v, where + ".parts." + k));
            parts[std::stoul(k)] = sub->seq();
        }
        IntSeq c = combine_by_divisors(M, parts);
        s.eval_fn_ = [c](unsigned long n) { return c(n); };
        return s;
    }
    if (t == "product") {
        std::vector<SequenceSpec> factors;
        bool cf = true;
        for (auto& f : j.at("factors")) {
            factors.push_back(parse(f, where + ".factors"));
            cf = cf && factors.back().has_closed_form();
        }
        if (factors.empty()) throw schema_error(where, "product needs factors");
        if (cf) {
            ExpPoly ep = factors[0].closed_form();
            for (std::size_t i = 1; i < factors.size(); ++i)
                ep = product(ep, factors[i].closed_form());
            s.cf_ = ep;
            s.has_cf_ = true;
        }
        auto shared = std::make_shared<std::vector<SequenceSpec>>(std::move(factors));
        s.eval_fn_ = [shared](unsigned long n) {
            Int acc = 1;
            for (auto& f : *shared) acc *= f.eval_int(n);
            return acc;
        };
        return s;
    }
    throw schema_error(where, "unknown sequence type '" + t + "'");
}

// ---- spec files -------------------------------------------------------------------

struct RunOptions {
    unsigned long bound = 50;
    unsigned long k_max = 8;
    unsigned long n_max = 120;
    Rat eps = Rat(1, 10);
    long radius = 12;
};

struct SpecFile {
    int version = 1;
    std::string name, notes;
    SequenceSpec sequence;
    RunOptions options;
};

inline SpecFile load_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw schema_error(path, "cannot open file");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw schema_error(path, e.what());
    }
    SpecFile f;
    if (!j.contains("version")) throw schema_error("/", "missing version field");
    f.version = j.at("version").get<int>();
    if (f.version != 1) throw schema_error("/version", "unsupported version");
    if (j.contains("name")) f.name = j.at("name").get<std::string>();
    if (j.contains("notes")) f.notes = j.at("notes").get<std::string>();
    f.sequence = SequenceSpec::parse(j.at("sequence"));
    if (j.contains("options")) {
        const json& o = j.at("options");
        if (o.contains("bound")) f.options.bound = o.at("bound").get<unsigned long>();
        if (o.contains("k_max")) f.options.k_max = o.at("k_max").get<unsigned long>();
        if (o.contains("n_max")) f.options.n_max = o.at("n_max").get<unsigned long>();
        if (o.contains("eps")) f.options.eps = parse_rat(o.at("eps"), "/options/eps");
        if (o.contains("radius")) f.options.radius = o.at("radius").get<long>();
    }
    return f;
}

// ---- report serialization -----------------------------------------------------------

inline json to_json(const DivisionReport& r) {
    json j;
    j["bound"] = r.bound;
    j["division_ok"] = r.division_ok;
    if (r.strong_checked) j["strong_ok"] = r.strong_ok;
    if (r.witness) {
        j["witness"] = {{"m", r.witness->first},
                        {"n", r.witness->second},
                        {"u_m", r.witness_um.get_str()},
                        {"u_n", r.witness_un.get_str()}};
        if (r.strong_checked && r.witness_expected != 0)
            j["witness"]["expected_gcd"] = r.witness_expected.get_str();
    }
    return j;
}

inline json to_json(const ZeroStructure& z) {
    json j;
    j["no_positive_zeros"] = z.no_positive_zeros;
    j["M"] = z.M;
    j["divisors"] = z.divisors;
    return j;
}

inline json to_json(const DecompositionCertificate& c) {
    json j;
    j["M"] = c.M;
    j["verified_bound"] = c.verified_bound;
    j["dependence_search_radius"] = c.dependence_radius;
    json kap = json::array();
    for (auto& k : c.kappa) kap.push_back(rat_to_string(k));
    j["kappa"] = kap;
    json pw;
    for (auto& [d, e] : c.power_exps) pw[std::to_string(d)] = e;
    j["power_exps"] = pw;
    json tau = json::array();
    for (auto& t : c.tau) tau.push_back(t.get_str());
    j["tau"] = tau;
    json factors = json::array();
    for (auto& f : c.factors) {
        json fj;
        fj["eta"] = algnum_to_json(f.eta);
        fj["nu"] = algnum_to_json(f.nu);
        fj["delta"] = algnum_to_json(f.delta);
        fj["conjugate_pair"] = f.conjugate_pair;
        fj["q"] = f.q.get_str();
        fj["combine"] = f.mode == PolygenFactor::Combine::lcm_mode ? "lcm" : "product";
        fj["twist_order"] = f.twist_order;
        json entries = json::array();
        for (std::size_t i = 0; i < f.entries.size(); ++i) {
            if (!f.active.empty() && !f.active[i]) continue;
            auto& e = f.entries[i];
            entries.push_back({{"tau", e.tau}, {"g", e.g}, {"d", e.d}, {"e", e.e}});
        }
        fj["entries"] = entries;
        factors.push_back(fj);
    }
    j["factors"] = factors;
    return j;
}

inline json to_json(const PeriodicRow& r) {
    json j;
    j["k"] = r.k;
    j["M"] = r.M;
    j["orders"] = r.mset;
    j["symbolic"] = r.symbolic;
    j["values"] = r.values_string();
    return j;
}

inline json to_json(const std::vector<GcdGrowthPair>& pairs) {
    json j = json::array();
    for (auto& p : pairs) j.push_back({{"m", p.m}, {"n", p.n}, {"gcd", p.gcd_value.get_str()}});
    return j;
}

}  // namespace lds

#endif
