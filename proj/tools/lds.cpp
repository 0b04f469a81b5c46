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

// Command-line front end: evaluate sequence spec files, run the division
// and strong-division checkers, decompose, enumerate periodic tables, and
// detect gcd growth.  Exit codes: 0 pass, 1 property failure (with a
// witness), 2 error.

#include <CLI11.hpp>

#include <cstdlib>
#include <iomanip>
#include <iostream>

#include "lds/io.hpp"

namespace {

unsigned long default_bound() {
    if (const char* env = std::getenv("LDS_DEFAULT_BOUND")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0' && v >= 2) return v;
    }
    return 50;
}

int run_eval(const std::string& path, unsigned long from, unsigned long to, bool as_json) {
    auto file = lds::load_spec_file(path);
    if (to < from) throw lds::invalid_argument_error("empty range");
    if (as_json) {
        lds::json j;
        j["name"] = file.name;
        j["from"] = from;
        j["to"] = to;
        lds::json terms = lds::json::array();
        for (unsigned long n = from; n <= to; ++n) terms.push_back(file.sequence.eval_int(n).get_str());
        j["terms"] = terms;
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    for (unsigned long n = from; n <= to; ++n) {
        if (n > from) std::cout << " ";
        std::cout << file.sequence.eval_int(n).get_str();
    }
    std::cout << "\n";
    return 0;
}

int run_check(const std::string& path, bool strong, unsigned long bound, bool as_json) {
    auto file = lds::load_spec_file(path);
    lds::DivisionReport rep = strong ? lds::check_strong(file.sequence.seq(), bound)
                                     : lds::check_division(file.sequence.seq(), bound);
    if (as_json) {
        std::cout << lds::to_json(rep).dump(2) << "\n";
        return rep.ok() ? 0 : 1;
    }
    if (rep.division_ok) std::cout << "division: pass (bound " << bound << ")\n";
    else
        std::cout << "division: fail, witness (m,n)=(" << rep.witness->first << ","
                  << rep.witness->second << "): " << rep.witness_um.get_str()
                  << " does not divide " << rep.witness_un.get_str() << "\n";
    if (strong && rep.division_ok) {
        if (rep.strong_ok) std::cout << "strong:   pass\n";
        else
            std::cout << "strong:   fail, witness (m,n)=(" << rep.witness->first << ","
                      << rep.witness->second << "): gcd(" << rep.witness_um.get_str() << ","
                      << rep.witness_un.get_str() << ") != " << rep.witness_expected.get_str()
                      << "\n";
    }
    return rep.ok() ? 0 : 1;
}

int run_decompose(const std::string& path, unsigned long bound, bool as_json) {
    auto file = lds::load_spec_file(path);
    if (!file.sequence.has_closed_form())
        throw lds::invalid_argument_error("decompose needs a spec with a closed form");
    lds::MultPolicy policy;
    policy.radius = file.options.radius;
    auto cert = lds::decompose(file.sequence.closed_form(), bound, policy);
    if (as_json) {
        std::cout << lds::to_json(cert).dump(2) << "\n";
        return 0;
    }
    std::cout << "period M = " << cert.M << "\n";
    std::cout << "kappa    =";
    for (auto& k : cert.kappa) std::cout << " " << lds::rat_to_string(k);
    std::cout << "\npower    =";
    for (auto& [d, e] : cert.power_exps) std::cout << " e_" << d << "=" << e;
    std::cout << "\ntau      =";
    for (auto& t : cert.tau) std::cout << " " << t.get_str();
    std::cout << "\nfactors  = " << cert.factors.size() << "\n";
    for (auto& f : cert.factors) {
        std::cout << "  eta = " << f.eta.to_string() << "  pair (" << f.nu.to_string() << ", "
                  << f.delta.to_string() << ")  q = " << f.q.get_str()
                  << (f.conjugate_pair ? "  [conjugate pair]" : "") << "\n";
    }
    std::cout << "verified exactly for n <= " << cert.verified_bound << "\n";
    return 0;
}

int run_enumerate(unsigned long k, bool as_json, bool aligned) {
    auto rows = lds::enumerate_periodic(k);
    if (as_json) {
        lds::json j = lds::json::array();
        for (auto& r : rows) j.push_back(lds::to_json(r));
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    if (aligned) {
        std::cout << std::left << std::setw(4) << "k" << std::setw(5) << "M" << std::setw(14)
                  << "orders"
                  << "terms\n";
        for (auto& r : rows) {
            std::string orders = "{";
            for (std::size_t i = 0; i < r.mset.size(); ++i) {
                if (i) orders += ",";
                orders += std::to_string(r.mset[i]);
            }
            orders += "}";
            std::cout << std::left << std::setw(4) << r.k << std::setw(5) << r.M << std::setw(14)
                      << orders << r.values_string() << "\n";
        }
        return 0;
    }
    for (auto& r : rows) {
        std::cout << r.k << " " << r.M << " {";
        for (std::size_t i = 0; i < r.mset.size(); ++i) {
            if (i) std::cout << ",";
            std::cout << r.mset[i];
        }
        std::cout << "} " << r.values_string() << "\n";
    }
    return 0;
}

int run_gcd_growth(const std::string& pa, const std::string& pb, const std::string& eps_str,
                   unsigned long n_max, bool as_json) {
    auto fa = lds::load_spec_file(pa);
    auto fb = lds::load_spec_file(pb);
    lds::Rat eps = lds::rat_from_string(eps_str);
    auto pairs = lds::gcd_growth_detect(fa.sequence.seq(), fb.sequence.seq(), n_max, eps);
    if (as_json) {
        std::cout << lds::to_json(pairs).dump(2) << "\n";
        return 0;
    }
    if (pairs.empty()) {
        std::cout << "no pairs with gcd exceeding exp(eps*(m+n)) for n <= " << n_max << "\n";
        return 0;
    }
    for (auto& p : pairs)
        std::cout << p.m << " " << p.n << " " << p.gcd_value.get_str() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact arithmetic for linear division sequences"};
    app.require_subcommand(1);

    std::string spec_path, spec_path_b, eps_str = "1/10";
    unsigned long from = 0, to = 10, bound = default_bound(), kparam = 3, n_max = 120;
    bool as_json = false, strong = false, periodic = true;

    auto* eval_cmd = app.add_subcommand("eval", "print exact terms of a sequence");
    eval_cmd->add_option("spec", spec_path, "sequence spec file")->required();
    eval_cmd->add_option("--from", from, "first index");
    eval_cmd->add_option("--to", to, "last index");
    eval_cmd->add_flag("--json", as_json, "machine-readable output");

    auto* check_cmd = app.add_subcommand("check", "division / strong-division checks");
    check_cmd->add_option("spec", spec_path, "sequence spec file")->required();
    check_cmd->add_flag("--strong", strong, "also check gcd(u_m,u_n) = |u_(m,n)|");
    check_cmd->add_option("--bound", bound, "check all m | n up to this bound");
    check_cmd->add_flag("--json", as_json, "machine-readable output");

    auto* dec_cmd = app.add_subcommand("decompose", "factor-recovery pipeline");
    dec_cmd->add_option("spec", spec_path, "sequence spec file")->required();
    dec_cmd->add_option("--bound", bound, "verification bound");
    dec_cmd->add_flag("--json", as_json, "machine-readable output");

    auto* enum_cmd = app.add_subcommand("enumerate", "periodic linear division sequences of order k");
    enum_cmd->add_option("--k", kparam, "order")->required();
    enum_cmd->add_flag("--periodic", periodic, "periodic family (default)");
    enum_cmd->add_flag("--json", as_json, "machine-readable output");

    auto* table_cmd =
        app.add_subcommand("table", "aligned periodic table (columns k, M, orders, terms)");
    table_cmd->add_option("--k", kparam, "order")->required();

    auto* gcd_cmd = app.add_subcommand("gcd-growth", "pairs with gcd(u_m, v_n) > exp(eps*(m+n))");
    gcd_cmd->add_option("spec-a", spec_path, "first sequence spec")->required();
    gcd_cmd->add_option("spec-b", spec_path_b, "second sequence spec")->required();
    gcd_cmd->add_option("--eps", eps_str, "exact threshold as a fraction, e.g. 1/10");
    gcd_cmd->add_option("--n-max", n_max, "index bound");
    gcd_cmd->add_flag("--json", as_json, "machine-readable output");

    CLI11_PARSE(app, argc, argv);

    try {
        if (eval_cmd->parsed()) return run_eval(spec_path, from, to, as_json);
        if (check_cmd->parsed()) return run_check(spec_path, strong, bound, as_json);
        if (dec_cmd->parsed()) return run_decompose(spec_path, bound, as_json);
        if (enum_cmd->parsed()) return run_enumerate(kparam, as_json, false);
        if (table_cmd->parsed()) return run_enumerate(kparam, false, true);
        if (gcd_cmd->parsed()) return run_gcd_growth(spec_path, spec_path_b, eps_str, n_max, as_json);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
