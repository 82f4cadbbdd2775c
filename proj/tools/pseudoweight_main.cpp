// pseudoweight: growth rates of the degree-M AWGN-pseudoweight distribution
// of (j,k)-regular LDPC code ensembles, with exact enumerator construction
// and brute-force verification oracles.
//
// Exit codes: 0 success, 1 verification disagreement, 2 usage/domain error,
// 3 partial numerical failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>
#include <json.hpp>

#include "pwg/growth.hpp"
#include "pwg/oracle.hpp"
#include "pwg/pwef.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDisagree = 1;
constexpr int kExitUsage = 2;
constexpr int kExitPartial = 3;

// --- small input parsers -------------------------------------------------

std::vector<long long> parse_int_list(const std::string& s) {
    std::vector<long long> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t next = s.find(',', pos);
        if (next == std::string::npos) next = s.size();
        out.push_back(std::stoll(s.substr(pos, next - pos)));
        pos = next + 1;
    }
    return out;
}

pwg::Rational parse_rational(const std::string& s) {
    if (const auto slash = s.find('/'); slash != std::string::npos) {
        const long long num = std::stoll(s.substr(0, slash));
        const long long den = std::stoll(s.substr(slash + 1));
        return {num, den};
    }
    if (const auto dot = s.find('.'); dot != std::string::npos) {
        const std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        long long den = 1;
        for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
        return {std::stoll(digits), den};
    }
    return {std::stoll(s), 1};
}

std::vector<pwg::Rational> parse_rational_list(const std::string& s) {
    std::vector<pwg::Rational> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t next = s.find(',', pos);
        if (next == std::string::npos) next = s.size();
        out.push_back(parse_rational(s.substr(pos, next - pos)));
        pos = next + 1;
    }
    return out;
}

// Polynomial expressions like "1+x1", "1 + 15*x1^2 + x1^6", "2x1*x2^3".
// Terms are separated by +/-; factors by '*' or juxtaposition.
pwg::SparsePoly parse_poly(const std::string& text) {
    struct Term {
        long long coeff = 1;
        std::map<int, int> powers;  // var index (1-based) -> exponent
    };
    std::vector<Term> terms;
    std::size_t pos = 0;
    const auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    const auto read_int = [&]() -> long long {
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) throw std::invalid_argument("polynomial parse: expected integer at offset " + std::to_string(pos));
        return std::stoll(text.substr(start, pos - start));
    };

    skip_ws();
    while (pos < text.size()) {
        long long sign = 1;
        while (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            if (text[pos] == '-') sign = -sign;
            ++pos;
            skip_ws();
        }
        if (pos >= text.size()) throw std::invalid_argument("polynomial parse: dangling sign");
        Term term;
        term.coeff = sign;
        bool saw_factor = false;
        while (pos < text.size()) {
            skip_ws();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                skip_ws();
            }
            if (pos >= text.size() || text[pos] == '+' || text[pos] == '-') break;
            if (std::isdigit(static_cast<unsigned char>(text[pos]))) {
                term.coeff *= read_int();
                saw_factor = true;
            } else if (text[pos] == 'x' || text[pos] == 'X') {
                ++pos;
                const int var = static_cast<int>(read_int());
                if (var < 1) throw std::invalid_argument("polynomial parse: variable index must be >= 1");
                int exp = 1;
                if (pos < text.size() && text[pos] == '^') {
                    ++pos;
                    exp = static_cast<int>(read_int());
                }
                term.powers[var] += exp;
                saw_factor = true;
            } else {
                throw std::invalid_argument(std::string("polynomial parse: unexpected character '") + text[pos] + "'");
            }
        }
        if (!saw_factor) throw std::invalid_argument("polynomial parse: empty term");
        terms.push_back(std::move(term));
        skip_ws();
    }

    int vars = 0;
    for (const auto& t : terms)
        for (const auto& [var, exp] : t.powers) vars = std::max(vars, var);
    vars = std::max(vars, 1);
    pwg::SparsePoly poly(vars);
    for (const auto& t : terms) {
        pwg::ExponentVec e(static_cast<std::size_t>(vars), 0);
        for (const auto& [var, exp] : t.powers) e[static_cast<std::size_t>(var - 1)] = exp;
        poly.add_term(e, t.coeff);
    }
    return poly;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    os << content;
}

int env_threads() {
    if (const char* env = std::getenv("PSEUDOWEIGHT_THREADS")) {
        try {
            return std::max(0, std::stoi(env));
        } catch (...) {
        }
    }
    return 0;
}

// --- subcommand payloads --------------------------------------------------

struct PwefArgs {
    int M = 1;
    long long k = 2;
    std::string part = "B";
    std::string coeff;
    std::string out;
    bool dump = false;
};

int run_pwef(const PwefArgs& a) {
    const pwg::PwefSpec spec{a.M, a.k};
    spec.validate();
    pwg::SparsePoly poly(a.M);
    if (a.part == "B")
        poly = pwg::build_B(spec);
    else if (a.part == "T")
        poly = pwg::build_T(spec);
    else if (a.part == "P")
        poly = pwg::build_P(spec);
    else if (a.part == "Q")
        poly = pwg::build_Q(spec);
    else
        throw CLI::ValidationError("--part must be one of B, T, P, Q");

    if (!a.coeff.empty()) {
        const std::vector<long long> u = parse_int_list(a.coeff);
        if (static_cast<int>(u.size()) != a.M) throw CLI::ValidationError("--coeff needs exactly M entries");
        pwg::ExponentVec e(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) {
            if (u[i] < 0) throw CLI::ValidationError("--coeff entries must be nonnegative");
            e[i] = static_cast<int>(u[i]);
        }
        write_output(a.out, poly.coeff(e).str() + "\n");
        return kExitOk;
    }
    write_output(a.out, poly.dump());
    return kExitOk;
}

struct VerifyArgs {
    std::string mode;
    int M = 2;
    int k = 3;
    bool symmetry_reduction = false;
    std::string R = "1+x1";
    std::string xi = "1/2";
    long long ell_max = 200;
    std::string ells;
    bool snap = false;
    std::string out;
    int threads = 0;
};

int run_verify(const VerifyArgs& a) {
    nlohmann::ordered_json report;
    bool agree = false;

    if (a.mode == "s-set") {
        const auto H = pwg::ParityCheckMatrix::spc(a.k);
        const auto zs = pwg::enumerate_pseudocodewords(H, a.M, a.threads);
        std::map<std::vector<long long>, long long> counts;
        for (const auto& z : zs) ++counts[pwg::type_of(z, a.M)];

        const pwg::PwefSpec spec{a.M, a.k};
        nlohmann::ordered_json mismatches = nlohmann::ordered_json::array();
        // All candidate types u with sum <= k, plus anything enumerated.
        std::vector<long long> u(static_cast<std::size_t>(a.M), 0);
        const auto check_u = [&](const std::vector<long long>& uu) {
            const bool in_s = pwg::membership_S(uu, spec);
            const pwg::BigInt predicted = in_s ? pwg::multinomial(a.k, uu) : 0;
            const auto it = counts.find(uu);
            const long long enumerated = it == counts.end() ? 0 : it->second;
            if (predicted != enumerated) {
                mismatches.push_back({{"u", uu}, {"enumerated", enumerated}, {"predicted", predicted.str()}});
            }
        };
        // Odometer over {0..k}^M restricted to sum <= k.
        while (true) {
            long long sum = 0;
            for (long long v : u) sum += v;
            if (sum <= a.k) check_u(u);
            int pos = 0;
            while (pos < a.M) {
                if (++u[static_cast<std::size_t>(pos)] <= a.k) break;
                u[static_cast<std::size_t>(pos)] = 0;
                ++pos;
            }
            if (pos == a.M) break;
        }
        agree = mismatches.empty();
        report["instance"] = "spc k=" + std::to_string(a.k) + " M=" + std::to_string(a.M);
        report["method_a"] = "cone-parity-enumeration";
        report["method_b"] = "s-set-multinomial";
        report["agree"] = agree;
        report["mismatches"] = std::move(mismatches);
    } else if (a.mode == "cover") {
        const auto H = pwg::ParityCheckMatrix::spc(a.k);
        const auto from_cover = pwg::enumerate_cover_codewords(H, a.M, a.symmetry_reduction);
        const auto from_cone = pwg::enumerate_pseudocodewords(H, a.M, a.threads);
        std::set<pwg::Pseudocodeword> sa(from_cover.begin(), from_cover.end());
        std::set<pwg::Pseudocodeword> sb(from_cone.begin(), from_cone.end());
        nlohmann::ordered_json mismatches = nlohmann::ordered_json::array();
        for (const auto& z : sb)
            if (!sa.count(z)) mismatches.push_back({{"z", z}, {"in_cover", false}, {"in_cone_parity", true}});
        for (const auto& z : sa)
            if (!sb.count(z)) mismatches.push_back({{"z", z}, {"in_cover", true}, {"in_cone_parity", false}});
        agree = mismatches.empty();
        report["instance"] = "spc k=" + std::to_string(a.k) + " M=" + std::to_string(a.M);
        report["method_a"] = "cover-lifting-projection";
        report["method_b"] = "cone-parity-enumeration";
        report["agree"] = agree;
        report["mismatches"] = std::move(mismatches);
    } else if (a.mode == "lemma") {
        const pwg::SparsePoly R = parse_poly(a.R);
        std::vector<pwg::Rational> xi = parse_rational_list(a.xi);
        if (static_cast<int>(xi.size()) < R.vars()) xi.resize(static_cast<std::size_t>(R.vars()), xi.back());
        std::vector<long long> ells;
        if (!a.ells.empty())
            ells = parse_int_list(a.ells);
        else
            ells = pwg::lemma_default_ells(R, xi, a.ell_max);
        const pwg::LemmaReport lr = pwg::verify_lemma_asymptotics(R, xi, ells, a.snap);

        agree = !lr.empty_branch && lr.monotone_ok;
        report["instance"] = "R=" + a.R + "; xi=" + a.xi;
        report["method_a"] = "exact-coefficient-extraction";
        report["method_b"] = "stationary-point-limit";
        report["agree"] = agree;
        nlohmann::ordered_json mismatches = nlohmann::ordered_json::array();
        const pwg::LemmaPoint* prev = nullptr;
        for (const auto& pt : lr.points) {
            if (!pt.coeff_positive) continue;
            if (prev && pt.gap > prev->gap + std::log(static_cast<double>(prev->ell)) / static_cast<double>(prev->ell))
                mismatches.push_back({{"ell", pt.ell}, {"gap", pt.gap}, {"previous_gap", prev->gap}});
            prev = &pt;
        }
        if (lr.empty_branch)
            for (long long ell : lr.tested) mismatches.push_back({{"ell", ell}, {"reason", "no positive coefficient"}});
        report["mismatches"] = std::move(mismatches);
        report["empty_branch"] = lr.empty_branch;
        report["monotone_ok"] = lr.monotone_ok;
        report["limit_value"] = lr.limit_value;
        report["x0"] = lr.x0;
        report["final_gap"] = lr.final_gap;
        nlohmann::ordered_json pts = nlohmann::ordered_json::array();
        for (const auto& pt : lr.points) {
            nlohmann::ordered_json jp;
            jp["ell"] = pt.ell;
            jp["coeff_positive"] = pt.coeff_positive;
            if (pt.coeff_positive) {
                jp["exponent"] = pt.exponent;
                jp["finite_value"] = pt.finite_value;
                jp["gap"] = pt.gap;
            }
            pts.push_back(std::move(jp));
        }
        report["points"] = std::move(pts);
    } else {
        throw CLI::ValidationError("verify mode must be one of: s-set, cover, lemma");
    }

    write_output(a.out, report.dump(2) + "\n");
    return agree ? kExitOk : kExitDisagree;
}

struct GrowthArgs {
    int j = 3;
    int k = 6;
    int M = 1;
    std::string alpha = "0.01:0.99:99";
    std::string out;
    std::string format = "csv";
    std::string units = "nats";
    bool gnuplot = false;
    int threads = 0;
    pwg::SolverOptions opts;
};

int run_growth(const GrowthArgs& a) {
    const pwg::EnsembleParams params{a.j, a.k, a.M};
    params.validate();

    double amin = 0, amax = 0;
    int steps = 0;
    {
        const auto c1 = a.alpha.find(':');
        const auto c2 = a.alpha.find(':', c1 == std::string::npos ? c1 : c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw CLI::ValidationError("--alpha must look like min:max:steps");
        amin = std::stod(a.alpha.substr(0, c1));
        amax = std::stod(a.alpha.substr(c1 + 1, c2 - c1 - 1));
        steps = std::stoi(a.alpha.substr(c2 + 1));
    }
    const pwg::Units units = a.units == "bits" ? pwg::Units::bits : pwg::Units::nats;

    const pwg::GrowthCurve curve = pwg::sweep(params, amin, amax, steps, a.opts, a.threads);
    const std::string body =
        a.format == "json" ? pwg::curve_to_json(curve, units, a.threads) : pwg::curve_to_csv(curve, units);
    write_output(a.out, body);
    if (a.gnuplot) {
        if (a.out.empty()) throw CLI::ValidationError("--gnuplot requires --out");
        write_output(a.out + ".gp", pwg::gnuplot_script(curve, a.out, units));
    }

    const bool partial =
        std::any_of(curve.points.begin(), curve.points.end(), [](const pwg::CurvePoint& p) { return !p.ok; });
    return partial ? kExitPartial : kExitOk;
}

struct ThresholdArgs {
    int j = 3;
    int k = 6;
    int M = 1;
    pwg::SolverOptions opts;
};

int run_threshold(const ThresholdArgs& a) {
    const pwg::EnsembleParams params{a.j, a.k, a.M};
    params.validate();
    const pwg::ThresholdResult res = pwg::threshold(params, a.opts);
    switch (res.outcome) {
        case pwg::ThresholdResult::Outcome::found: {
            char buf[64];
            std::snprintf(buf, sizeof buf, "alpha_star=%.8g\n", res.alpha_star);
            std::cout << buf;
            if (!res.later_crossings.empty()) {
                std::cout << "later_crossings=";
                for (std::size_t i = 0; i < res.later_crossings.size(); ++i) {
                    if (i) std::cout << ';';
                    std::cout << res.later_crossings[i].first << ':' << res.later_crossings[i].second;
                }
                std::cout << '\n';
            }
            return kExitOk;
        }
        case pwg::ThresholdResult::Outcome::no_sign_change:
            std::cout << "no_threshold scanned=" << res.scanned << " failures=" << res.scan_failures << "\n";
            return kExitOk;
        case pwg::ThresholdResult::Outcome::blocked:
            std::cerr << "threshold blocked: " << res.message << "\n";
            return kExitPartial;
    }
    return kExitPartial;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Degree-M AWGN-pseudoweight growth rates of (j,k)-regular LDPC ensembles"};
    app.require_subcommand(1);

    PwefArgs pwef_args;
    auto* cmd_pwef = app.add_subcommand("pwef", "Exact SPC enumerator polynomials (dump or single coefficient)");
    cmd_pwef->add_option("--M", pwef_args.M, "Cover degree (1..8)")->required();
    cmd_pwef->add_option("--k", pwef_args.k, "SPC code length (>= 2)")->required();
    cmd_pwef->add_option("--part", pwef_args.part, "Which polynomial: B (default), T, P, Q");
    cmd_pwef->add_option("--coeff", pwef_args.coeff, "Print one exact coefficient for u1,...,uM");
    cmd_pwef->add_option("--out", pwef_args.out, "Output file (default stdout)");
    cmd_pwef->add_flag("--dump", pwef_args.dump, "Dump the full polynomial (default when --coeff absent)");

    VerifyArgs verify_args;
    auto* cmd_verify = app.add_subcommand("verify", "Brute-force oracle comparisons (s-set, cover, lemma)");
    cmd_verify->add_option("mode", verify_args.mode, "s-set | cover | lemma")->required();
    cmd_verify->add_option("--M", verify_args.M, "Cover degree");
    cmd_verify->add_option("--k", verify_args.k, "SPC code length");
    cmd_verify->add_flag("--symmetry-reduction", verify_args.symmetry_reduction,
                         "Pin the first edge of every check to the identity permutation (cover mode)");
    cmd_verify->add_option("--R", verify_args.R, "Polynomial, e.g. \"1+x1\" or \"1+15*x1^2+15*x1^4+x1^6\"");
    cmd_verify->add_option("--xi", verify_args.xi, "Comma-separated positive rationals, e.g. 1/2 or 0.3");
    cmd_verify->add_option("--ell-max", verify_args.ell_max, "Largest power tested (lemma mode)");
    cmd_verify->add_option("--ells", verify_args.ells, "Explicit comma-separated powers (overrides --ell-max ladder)");
    cmd_verify->add_flag("--snap", verify_args.snap, "Snap requested powers to the nearest valid subsequence member");
    cmd_verify->add_option("--out", verify_args.out, "Output file for the JSON report (default stdout)");
    cmd_verify->add_option("--threads", verify_args.threads, "Worker threads (0 = hardware default)");

    GrowthArgs growth_args;
    growth_args.threads = env_threads();
    auto* cmd_growth = app.add_subcommand("growth", "Growth-rate curve over an alpha grid (CSV or JSON)");
    cmd_growth->add_option("--j", growth_args.j, "Variable-node degree")->required();
    cmd_growth->add_option("--k", growth_args.k, "Check-node degree")->required();
    cmd_growth->add_option("--M", growth_args.M, "Cover degree")->required();
    cmd_growth->add_option("--alpha", growth_args.alpha, "Grid as min:max:steps (default 0.01:0.99:99)");
    cmd_growth->add_option("--out", growth_args.out, "Output file (default stdout)");
    cmd_growth->add_option("--format", growth_args.format, "csv (default) or json");
    cmd_growth->add_option("--units", growth_args.units, "nats (default) or bits");
    cmd_growth->add_flag("--gnuplot", growth_args.gnuplot, "Also write a gnuplot script next to --out");
    cmd_growth->add_option("--threads", growth_args.threads, "Worker threads (0 = hardware default)");
    cmd_growth->add_option("--tol-inner", growth_args.opts.tol_inner, "Inner solve relative tolerance");
    cmd_growth->add_option("--tol-outer", growth_args.opts.tol_outer, "Full-system residual tolerance");

    ThresholdArgs threshold_args;
    auto* cmd_threshold = app.add_subcommand("threshold", "Smallest alpha with nonnegative growth rate");
    cmd_threshold->add_option("--j", threshold_args.j, "Variable-node degree")->required();
    cmd_threshold->add_option("--k", threshold_args.k, "Check-node degree")->required();
    cmd_threshold->add_option("--M", threshold_args.M, "Cover degree")->required();
    cmd_threshold->add_option("--tol-inner", threshold_args.opts.tol_inner, "Inner solve relative tolerance");
    cmd_threshold->add_option("--tol-outer", threshold_args.opts.tol_outer, "Full-system residual tolerance");
    cmd_threshold->add_option("--tol-threshold", threshold_args.opts.tol_threshold, "Bisection alpha-interval width");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (cmd_pwef->parsed()) return run_pwef(pwef_args);
        if (cmd_verify->parsed()) return run_verify(verify_args);
        if (cmd_growth->parsed()) return run_growth(growth_args);
        if (cmd_threshold->parsed()) return run_threshold(threshold_args);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const pwg::resource_limit_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const pwg::solver_failure& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kExitPartial;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPartial;
    }
    return kExitUsage;
}
