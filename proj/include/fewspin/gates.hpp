#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "fewspin/matrix.hpp"

namespace fewspin {

enum class GateId { UA, UB, U1, U2, U3, U5, U6 };

std::string to_string(GateId g);
GateId parse_gate(const std::string& s);

// Dimensionless four-body tuning constants; all zero is the uncorrected gate set.
struct FourBodyCouplings {
    double Ja = 0.0, Jb = 0.0, Jc = 0.0, Jd = 0.0;  // U1'
    double J2p = 0.0, J2pp = 0.0;                   // U2'
    double J3p = 0.0, J3pp = 0.0;                   // U3'
    double J5 = 0.0;                                // U5'
    double JB = 0.0;                                // UB'
};

// Exchange E_ij in the 14-dim singlet basis, dots named 'A'..'H'.
ComplexMatrix E(char a, char b);

ComplexMatrix build_generator(GateId g, const FourBodyCouplings& c);
double gate_angle(GateId g);
// exp(i angle H); U6 is (UA UB' UA^dag UB'^dag)^2.
ComplexMatrix gate(GateId g, const FourBodyCouplings& c);

struct U1Entries {
    cplx x, y, chi_plus, chi_minus, lambda, xi, theta, tau_plus, tau_minus, mu;
};
U1Entries u1_entries(double Ja, double Jb, double Jc, double Jd);

struct U5Entries {
    cplx Lambda, p, Phi, single;
};
U5Entries u5_entries(double J5);

struct U23Entries {
    cplx nu, delta, epsilon, zeta, eta, eta_bar, rho, single;
};
U23Entries u23_entries(double Jp, double Jpp);

cplx ub_gamma(double JB);

// Matrices assembled from the entry formulas above.
ComplexMatrix closed_form_gate(GateId g, const FourBodyCouplings& c);
// Reference matrices of the uncorrected gates U1, U5, UB.
ComplexMatrix bacon_u1();
ComplexMatrix bacon_u5();
ComplexMatrix bacon_ub();

struct ClassicalityResult {
    bool classical = false;
    double max_off_pattern = 0.0;  // largest magnitude beyond the first per column
};

ClassicalityResult classicality_check(const ComplexMatrix& u, const std::vector<std::size_t>& subset,
                                      double eps = 1e-8);

// Raised when a scan finds no acceptable root.
struct NoRootError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double tune_lambda_even(unsigned n, int branch);
enum class FixedConstant { primed, double_primed };
// Returns the free constant making eta vanish for U2' or U3'.
double tune_eta_zero(GateId g, FixedConstant fixed, double value);

struct ChiTriple {
    double Ja, Jb, Jd;
};
// J_b'/J_d' = r with J_b' - J_d' = 1.
ChiTriple tune_chi_plus_zero(double r);

// Conditions 2, 3, 4, 6 solved; JB and Jc given.
FourBodyCouplings tuned_couplings(double ratio, double JB = 1.0, double Jc = 0.37, unsigned lambda_n = 1,
                                  double J2 = 0.5, double J3 = 0.5);

struct GateStep {
    GateId gate;
    bool dagger;
};
std::vector<GateStep> cp_sequence();

struct CpResult {
    ComplexMatrix full;        // 14x14
    ComplexMatrix code_block;  // 4x4 on the first four basis states
    double block_deviation = 0.0;
    double leakage = 0.0;
    bool pass = false;
};

CpResult assemble_cp(const FourBodyCouplings& c, double tol = 1e-8);

struct ConditionReport {
    std::string id;
    bool satisfied;
    double residual;
};
// The six tuning conditions evaluated on a coupling set.
std::vector<ConditionReport> cp_conditions(const FourBodyCouplings& c);

}  // namespace fewspin
