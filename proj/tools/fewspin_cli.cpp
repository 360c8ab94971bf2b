#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fewspin/cg_basis.hpp"
#include "fewspin/constraints.hpp"
#include "fewspin/gates.hpp"
#include "fewspin/heitler_london.hpp"
#include "fewspin/io.hpp"
#include "fewspin/monte_carlo.hpp"

using namespace fewspin;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kIo = 2, kFail = 3, kNoRoot = 4 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// "min:max:steps" with inclusive ends, or a single number.
std::vector<double> parse_grid(const std::string& spec, const char* name) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    auto num = [&](const std::string& s) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size() || !std::isfinite(v))
            throw UsageError(std::string("--") + name + ": '" + spec + "' is not min:max:steps");
        return v;
    };
    if (parts.size() == 1) return {num(parts[0])};
    if (parts.size() != 3) throw UsageError(std::string("--") + name + ": expected min:max:steps, got '" + spec + "'");
    const double lo = num(parts[0]), hi = num(parts[1]), steps_d = num(parts[2]);
    if (steps_d < 1 || steps_d != std::floor(steps_d))
        throw UsageError(std::string("--") + name + ": steps must be a positive integer");
    const auto steps = static_cast<std::size_t>(steps_d);
    if (steps == 1) return {lo};
    std::vector<double> out(steps);
    for (std::size_t k = 0; k < steps; ++k) out[k] = lo + (hi - lo) * static_cast<double>(k) / (steps - 1);
    return out;
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw IoError("cannot open '" + out + "' for writing");
    f << text;
    if (!f) throw IoError("write to '" + out + "' failed");
}

void check_positive(const std::vector<double>& v, const char* name) {
    for (double x : v)
        if (!(x > 0)) throw UsageError(std::string("--") + name + " values must be positive");
}

// Parses "3/2", "1.5", "0" as twice the spin.
int parse_two_s(const std::string& s) {
    const auto slash = s.find('/');
    double v;
    try {
        std::size_t used = 0;
        if (slash == std::string::npos) {
            v = 2.0 * std::stod(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
        } else {
            if (s.substr(slash + 1) != "2") throw std::invalid_argument(s);
            v = std::stod(s.substr(0, slash), &used);
            if (used != slash) throw std::invalid_argument(s);
        }
    } catch (const std::exception&) {
        throw UsageError("--s: '" + s + "' is not a spin value");
    }
    if (v < 0 || v != std::floor(v)) throw UsageError("--s: '" + s + "' is not a non-negative half-integer");
    return static_cast<int>(v);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Few-body spin couplings and encoded gate checks"};
    app.require_subcommand(1);

    std::string out, format = "csv";
    std::uint64_t seed = 0;
    std::string geometry = "linear3", potential = "gaussian";
    std::string xb = "3", xv = "3";
    double xc = 1.5;
    unsigned threads = 1;
    std::size_t mc_samples = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", out, "Output path (stdout if omitted)");
        sub->add_option("--seed", seed, "Random seed")->capture_default_str();
    };
    auto add_model = [&](CLI::App* sub) {
        sub->add_option("--geometry", geometry, "linear3 | square4")
            ->check(CLI::IsMember({"linear3", "square4"}))
            ->capture_default_str();
        sub->add_option("--potential", potential, "gaussian | quadratic")
            ->check(CLI::IsMember({"gaussian", "quadratic"}))
            ->capture_default_str();
        sub->add_option("--xc", xc, "Coulomb parameter x_c")->capture_default_str();
    };

    auto* sweep_cmd = app.add_subcommand("sweep", "Coupling coefficients over an (x_b, x_v) grid");
    add_model(sweep_cmd);
    add_common(sweep_cmd);
    sweep_cmd->add_option("--xb", xb, "x_b grid min:max:steps")->required();
    sweep_cmd->add_option("--xv", xv, "x_v grid min:max:steps")->required();
    sweep_cmd->add_option("--threads", threads, "Worker threads")->check(CLI::Range(1u, 256u))->capture_default_str();
    sweep_cmd->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

    auto* coeffs_cmd = app.add_subcommand("coeffs", "Coupling coefficients at one point, as JSON");
    add_model(coeffs_cmd);
    add_common(coeffs_cmd);
    coeffs_cmd->add_option("--xb", xb, "x_b")->capture_default_str();
    coeffs_cmd->add_option("--xv", xv, "x_v")->capture_default_str();
    coeffs_cmd->add_option("--mc-samples", mc_samples, "Use Monte Carlo integrals with this many samples (0: analytic)")
        ->capture_default_str();

    FourBodyCouplings c;
    bool tune = false;
    double ratio = 2.0;
    unsigned lambda_n = 1;
    auto* cp_cmd = app.add_subcommand("verify-cp", "Assemble the encoded CP gate and check it");
    add_common(cp_cmd);
    cp_cmd->add_option("--ja", c.Ja, "U1' J_a");
    cp_cmd->add_option("--jb1", c.Jb, "U1' J_b");
    cp_cmd->add_option("--jc", c.Jc, "U1' J_c");
    cp_cmd->add_option("--jd", c.Jd, "U1' J_d");
    cp_cmd->add_option("--j2p", c.J2p, "U2' J'");
    cp_cmd->add_option("--j2pp", c.J2pp, "U2' J''");
    cp_cmd->add_option("--j3p", c.J3p, "U3' J'");
    cp_cmd->add_option("--j3pp", c.J3pp, "U3' J''");
    cp_cmd->add_option("--j5", c.J5, "U5' J");
    cp_cmd->add_option("--jb", c.JB, "UB' J_B");
    auto* tune_flag = cp_cmd->add_flag("--tune", tune, "Solve conditions 2, 3, 4, 6 (keeps --jb, --jc, --j2p, --j3p)");
    cp_cmd->add_option("--ratio", ratio, "J_b/J_d for the chi_+ condition")->needs(tune_flag)->capture_default_str();
    cp_cmd->add_option("--lambda-n", lambda_n, "Lambda = 2n for U5'")->needs(tune_flag)->check(CLI::PositiveNumber);

    std::string condition;
    std::string fixed = "primed";
    double value = 0.5;
    int branch = 1;
    auto* tune_cmd = app.add_subcommand("tune", "Solve one tuning condition");
    add_common(tune_cmd);
    tune_cmd->add_option("--condition", condition, "lambda | eta2 | eta3 | chi")
        ->check(CLI::IsMember({"lambda", "eta2", "eta3", "chi"}))
        ->required();
    tune_cmd->add_option("--n", lambda_n, "lambda: Lambda = 2n")->check(CLI::PositiveNumber)->capture_default_str();
    tune_cmd->add_option("--branch", branch, "lambda: +1 or -1")->check(CLI::IsMember({1, -1}))->capture_default_str();
    tune_cmd->add_option("--fixed", fixed, "eta: which constant is held")
        ->check(CLI::IsMember({"primed", "double-primed"}))
        ->capture_default_str();
    tune_cmd->add_option("--value", value, "eta: value of the held constant")->capture_default_str();
    tune_cmd->add_option("--ratio", ratio, "chi: J_b/J_d")->capture_default_str();

    std::size_t n_sites = 8;
    std::string spin = "0";
    int two_sz = 0;
    auto* basis_cmd = app.add_subcommand("basis", "Dump the total-spin path basis");
    add_common(basis_cmd);
    basis_cmd->add_option("--n", n_sites, "Number of spins (1..8)")->check(CLI::Range(1, 8))->capture_default_str();
    auto* s_opt = basis_cmd->add_option("--s", spin, "Total spin, e.g. 0, 1, 3/2")->capture_default_str();
    auto* sz_opt = basis_cmd->add_option("--two-sz", two_sz, "Twice S_z (default: lowest non-negative)");

    std::string gate_name, assignment_path, assignment_inline;
    auto* cons_cmd = app.add_subcommand("check-constraints", "Check coupling-coefficient constraints for a gate");
    add_common(cons_cmd);
    cons_cmd->add_option("--gate", gate_name, "UA | UB | U1 | U2 | U3 | U5 | U6")->required();
    auto* file_opt = cons_cmd->add_option("--assignment", assignment_path, "JSON file {\"AB\": K, \"ABCD\": K, ...}");
    auto* inline_opt = cons_cmd->add_option("--json", assignment_inline, "Assignment as an inline JSON object");
    file_opt->excludes(inline_opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    (void)s_opt;

    try {
        if (*sweep_cmd) {
            const auto b = parse_grid(xb, "xb"), v = parse_grid(xv, "xv");
            check_positive(b, "xb");
            check_positive(v, "xv");
            if (!(xc > 0)) throw UsageError("--xc must be positive");
            const auto rows = sweep(b, v, xc, parse_geometry(geometry), parse_potential(potential), threads);
            std::ostringstream os;
            if (format == "csv")
                write_sweep_csv(os, rows);
            else
                os << sweep_json(rows).dump(2) << "\n";
            emit(os.str(), out);
            return kOk;
        }
        if (*coeffs_cmd) {
            const auto b = parse_grid(xb, "xb"), v = parse_grid(xv, "xv");
            if (b.size() != 1 || v.size() != 1) throw UsageError("coeffs takes a single --xb and --xv");
            const DimensionlessParams p{b[0], v[0], xc};
            if (!(p.x_b > 0) || !(p.x_v > 0) || !(p.x_c > 0)) throw UsageError("x_b, x_v, x_c must be positive");
            const Geometry g = parse_geometry(geometry);
            const PotentialKind kind = parse_potential(potential);
            CouplingResult r;
            if (mc_samples > 0) {
                const DotModel m = make_dot_model(p, g, kind);
                r = couplings_from_integrals(
                    MonteCarloIntegrals(m.orbitals.centers, m.potential, m.units.coulomb_strength, mc_samples, seed), g);
                r.displacement = m.orbitals.displacement;
                r.bracket_failed = m.orbitals.bracket_failed;
            } else {
                r = compute_couplings(p, g, kind);
            }
            json j = coeffs_json(p, g, kind, r);
            if (mc_samples > 0) j["mc_samples"] = mc_samples;
            emit(j.dump(2) + "\n", out);
            return kOk;
        }
        if (*cp_cmd) {
            if (tune) c = tuned_couplings(ratio, c.JB, c.Jc, lambda_n, c.J2p, c.J3p);
            const CpResult r = assemble_cp(c);
            emit(verify_cp_json(c, cp_conditions(c), r).dump(2) + "\n", out);
            return r.pass ? kOk : kFail;
        }
        if (*tune_cmd) {
            json j{{"condition", condition}};
            if (condition == "lambda") {
                const double j5 = tune_lambda_even(lambda_n, branch);
                j["n"] = lambda_n;
                j["branch"] = branch;
                j["J5"] = round12(j5);
                j["Lambda"] = round12(u5_entries(j5).Lambda.real());
            } else if (condition == "chi") {
                const ChiTriple t = tune_chi_plus_zero(ratio);
                j["ratio"] = round12(ratio);
                j["Ja"] = round12(t.Ja);
                j["Jb"] = round12(t.Jb);
                j["Jd"] = round12(t.Jd);
                j["abs_chi_plus"] = round12(std::abs(u1_entries(t.Ja, t.Jb, 0.0, t.Jd).chi_plus));
            } else {
                const GateId g = condition == "eta2" ? GateId::U2 : GateId::U3;
                const FixedConstant which = fixed == "primed" ? FixedConstant::primed : FixedConstant::double_primed;
                const double other = tune_eta_zero(g, which, value);
                const double jp = which == FixedConstant::primed ? value : other;
                const double jpp = which == FixedConstant::primed ? other : value;
                j["Jp"] = round12(jp);
                j["Jpp"] = round12(jpp);
                j["abs_eta"] = round12(std::abs(u23_entries(jp, jpp).eta));
            }
            emit(j.dump(2) + "\n", out);
            return kOk;
        }
        if (*basis_cmd) {
            const int two_s = parse_two_s(spin);
            if (static_cast<std::size_t>(two_s) > n_sites || (n_sites - two_s) % 2 != 0)
                throw UsageError("spin " + spin + " is not reachable with " + std::to_string(n_sites) + " spins");
            const SpinPathBasis b =
                sz_opt->count() ? make_path_basis(n_sites, two_s, two_sz) : make_path_basis(n_sites, two_s);
            emit(basis_json(b).dump(2) + "\n", out);
            return kOk;
        }
        if (*cons_cmd) {
            json a;
            if (!assignment_path.empty()) {
                std::ifstream f(assignment_path);
                if (!f) throw IoError("cannot read '" + assignment_path + "'");
                try {
                    a = json::parse(f);
                } catch (const json::exception& e) {
                    throw UsageError(std::string("assignment is not valid JSON: ") + e.what());
                }
            } else if (!assignment_inline.empty()) {
                try {
                    a = json::parse(assignment_inline);
                } catch (const json::exception& e) {
                    throw UsageError(std::string("assignment is not valid JSON: ") + e.what());
                }
            } else {
                throw UsageError("check-constraints needs --assignment or --json");
            }
            const GateId g = parse_gate(gate_name);
            const auto results = check_gate_constraints(parse_assignment(a), g);
            emit(constraints_json(g, results).dump(2) + "\n", out);
            for (const auto& r : results)
                if (r.status == ConstraintStatus::violated) return kFail;
            return kOk;
        }
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    } catch (const NoRootError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNoRoot;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
