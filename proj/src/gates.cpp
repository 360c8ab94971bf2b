#include "fewspin/gates.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fewspin/cg_basis.hpp"

namespace fewspin {

namespace {

constexpr double pi = std::numbers::pi;
const double sqrt2 = std::sqrt(2.0), sqrt3 = std::sqrt(3.0), sqrt6 = std::sqrt(6.0);
const double theta23 = pi / (4.0 * std::sqrt(2.0));
constexpr cplx I{0.0, 1.0};

std::size_t dot_index(char c) {
    if (c < 'A' || c > 'H') throw std::invalid_argument(std::string("unknown dot '") + c + "'");
    return static_cast<std::size_t>(c - 'A');
}

ComplexMatrix EE(const char* p, const char* q) { return E(p[0], p[1]) * E(q[0], q[1]); }

// sin(a z) / z, continuous at z = 0
cplx sin_over(double a, cplx z) {
    if (std::abs(z) < 1e-8) return a - a * a * a * z * z / 6.0;
    return std::sin(a * z) / z;
}

}  // namespace

std::string to_string(GateId g) {
    switch (g) {
        case GateId::UA: return "UA";
        case GateId::UB: return "UB";
        case GateId::U1: return "U1";
        case GateId::U2: return "U2";
        case GateId::U3: return "U3";
        case GateId::U5: return "U5";
        case GateId::U6: return "U6";
    }
    return "?";
}

GateId parse_gate(const std::string& s) {
    for (GateId g : {GateId::UA, GateId::UB, GateId::U1, GateId::U2, GateId::U3, GateId::U5, GateId::U6})
        if (to_string(g) == s) return g;
    throw std::domain_error("unknown gate id '" + s + "'");
}

ComplexMatrix E(char a, char b) { return exchange_in_path_basis(dot_index(a), dot_index(b)); }

ComplexMatrix build_generator(GateId g, const FourBodyCouplings& c) {
    switch (g) {
        case GateId::UA: return E('D', 'E');
        case GateId::UB:
            return E('A', 'B') + E('A', 'C') + E('A', 'D') + E('B', 'C') + E('B', 'D') + E('C', 'D') +
                   c.JB * (EE("AB", "CD") + EE("AC", "BD") + EE("AD", "BC"));
        case GateId::U1:
            return E('D', 'E') +
                   0.5 * (E('A', 'B') + E('A', 'C') + E('A', 'D') + E('B', 'C') + E('B', 'D') + E('C', 'D')) +
                   c.Ja * (EE("AB", "CD") + EE("AC", "BD") + EE("AD", "BC")) +
                   c.Jb * (EE("AB", "CE") + EE("AC", "BE") + EE("AE", "BC")) +
                   c.Jc * (EE("AB", "DE") + EE("AC", "DE") + EE("BC", "DE")) +
                   c.Jd * (EE("AD", "BE") + EE("AD", "CE") + EE("AE", "BD") + EE("AE", "CD") +
                           EE("BD", "CE") + EE("BE", "CD"));
        case GateId::U2:
            return -3.0 * E('E', 'F') - (2.0 / 3.0) * (E('F', 'G') + E('F', 'H') + E('G', 'H')) +
                   c.J2p * EE("EF", "GH") + c.J2pp * (EE("EG", "FH") + EE("EH", "FG"));
        case GateId::U3:
            return -3.0 * E('C', 'D') - (2.0 / 3.0) * (E('A', 'B') + E('A', 'C') + E('B', 'C')) +
                   c.J3p * EE("AB", "CD") + c.J3pp * (EE("AC", "BD") + EE("AD", "BC"));
        case GateId::U5: return E('F', 'G') + 0.5 * E('G', 'H') + c.J5 * E('F', 'H');
        case GateId::U6: break;
    }
    throw std::domain_error("gate " + to_string(g) + " has no single generator");
}

double gate_angle(GateId g) {
    switch (g) {
        case GateId::UA: return -0.5 * std::acos(-1.0 / 3.0);
        case GateId::UB: return -pi / 2.0;
        case GateId::U1:
        case GateId::U5: return pi / sqrt3;
        case GateId::U2:
        case GateId::U3: return theta23;
        case GateId::U6: break;
    }
    throw std::domain_error("gate " + to_string(g) + " has no single angle");
}

ComplexMatrix gate(GateId g, const FourBodyCouplings& c) {
    if (g == GateId::U6) {
        const ComplexMatrix ua = gate(GateId::UA, c);
        const ComplexMatrix ub = gate(GateId::UB, c);
        const ComplexMatrix comm = ua * ub * ua.adjoint() * ub.adjoint();
        return comm * comm;
    }
    return exp_i_hermitian(build_generator(g, c), gate_angle(g));
}

U1Entries u1_entries(double Ja, double Jb, double Jc, double Jd) {
    U1Entries e{};
    e.x = std::sqrt(cplx(9.0 * (1 + 4 * Jb - 4 * Jd) +
                         48.0 * (Ja * Ja + Jb * Jb - Jb * Jd + Jd * Jd - Ja * (Jb + Jd))));
    e.y = std::sqrt(cplx(3 + 8 * Ja * Ja + 8 * Jb * Jb + 9 * Jc - Jb * (9 + 6 * Jc - 4 * Jd) +
                         2 * (3 * Jc - 2 * Jd) * (3 * Jc - 2 * Jd) - 2 * Ja * (-3 + 7 * Jb + 3 * Jc - 2 * Jd) -
                         6 * Jd));
    const cplx ph1 = std::exp(I * pi * (sqrt3 / 6.0) * (1 + 2 * Ja + 2 * Jb + 2 * Jd));
    const cplx cx = std::cos(pi * e.x / 6.0);
    const cplx sx = sin_over(pi / 6.0, e.x);
    e.chi_plus = (cx + 2.0 * I * sqrt3 * (2 * Ja - Jb - Jd) * sx) * ph1;
    e.chi_minus = (cx - 2.0 * I * sqrt3 * (2 * Ja - Jb - Jd) * sx) * ph1;
    e.lambda = 3.0 * I * (1 + 2 * Jb - 2 * Jd) * sx * ph1;
    e.xi = std::exp(I * (pi / sqrt3) * (2 - Ja - Jb + 2 * Jd));
    e.theta = e.xi * std::exp(I * pi * sqrt3 * Jc);
    const cplx ph2 = std::exp(I * (pi / sqrt3) * (2 + Ja + Jb - 2 * Jd));
    const cplx cy = std::cos(pi * e.y / sqrt6);
    const cplx sy = sin_over(pi / sqrt6, e.y);
    const double tcoef = (3 + 8 * Ja - 7 * Jb - 3 * Jc + 2 * Jd) / (2 * sqrt2);
    e.tau_plus = (cy + I * tcoef * sy) * ph2;
    e.tau_minus = (cy - I * tcoef * sy) * ph2;
    e.mu = std::sqrt(15.0) * (Jb - 3 * Jc + 2 * Jd - 1) / (2 * sqrt2 * I) * sy * ph2;
    return e;
}

U5Entries u5_entries(double J5) {
    U5Entries e{};
    const double lam = std::sqrt(4.0 / 3.0 * J5 * J5 - 2 * J5 + 1);
    e.Lambda = lam;
    const double s = std::sin(pi * lam / 2.0);
    e.p = std::cos(pi * lam / 2.0) + I * J5 / (sqrt3 * lam) * s;
    e.Phi = I * (1 - J5) * s / lam;
    e.single = std::exp(I * pi * (2 * J5 + 3) / (2 * sqrt3));
    return e;
}

U23Entries u23_entries(double Jp, double Jpp) {
    U23Entries e{};
    const double nu = std::sqrt(3 * Jp * Jp + 3 * Jpp * Jpp - 6 * Jp * Jpp - 16 * Jp + 16 * Jpp + 24);
    e.nu = nu;
    const double phi = pi * nu / (4 * sqrt6);
    const cplx ph = std::exp(-I * theta23 * (1 + Jpp));
    e.delta = std::exp(I * theta23 * (Jp + 2 * Jpp + 3));
    e.epsilon = std::exp(I * theta23 * (Jp + 2 * Jpp - 3));
    e.zeta = std::exp(-I * theta23 * (Jp + 3));
    e.single = std::exp(I * theta23 * (-5 + Jp + 2 * Jpp));
    const double k = (Jp - Jpp) / (sqrt3 * nu);
    e.eta = ph * (std::cos(phi) + I * k * std::sin(phi));
    e.eta_bar = ph * (std::cos(phi) - I * k * std::sin(phi));
    e.rho = -I * 2.0 * sqrt2 * (3 - Jp + Jpp) / (sqrt3 * nu) * std::sin(phi) * ph;
    return e;
}

cplx ub_gamma(double JB) { return std::exp(I * pi * JB / 2.0); }

namespace {

void put_pair(ComplexMatrix& m, std::size_t a, std::size_t b, cplx da, cplx db, cplx off) {
    m(a, a) = da;
    m(b, b) = db;
    m(a, b) = off;
    m(b, a) = off;
}

ComplexMatrix closed_u23(GateId g, double Jp, double Jpp) {
    const U23Entries e = u23_entries(Jp, Jpp);
    ComplexMatrix m(14, 14);
    m(11, 11) = e.single;
    if (g == GateId::U3) {
        for (std::size_t k : {0, 1}) m(k, k) = e.delta;
        for (std::size_t k : {2, 3}) m(k, k) = e.epsilon;
        for (std::size_t k : {4, 6, 8}) m(k, k) = e.zeta;
        put_pair(m, 5, 9, e.eta, e.eta_bar, e.rho);
        put_pair(m, 7, 13, e.eta, e.eta_bar, e.rho);
        put_pair(m, 10, 12, e.eta_bar, e.eta, e.rho);
    } else {
        for (std::size_t k : {0, 2}) m(k, k) = e.delta;
        for (std::size_t k : {1, 3}) m(k, k) = e.epsilon;
        for (std::size_t k : {4, 5, 9}) m(k, k) = e.zeta;
        put_pair(m, 6, 8, e.eta, e.eta_bar, e.rho);
        put_pair(m, 7, 12, e.eta, e.eta_bar, e.rho);
        put_pair(m, 10, 13, e.eta_bar, e.eta, e.rho);
    }
    return m;
}

const std::size_t kU1Pairs[4][2] = {{0, 4}, {1, 6}, {2, 5}, {3, 7}};

}  // namespace

ComplexMatrix closed_form_gate(GateId g, const FourBodyCouplings& c) {
    ComplexMatrix m(14, 14);
    switch (g) {
        case GateId::UA: {
            const cplx alpha = (sqrt2 - I) / sqrt6;
            const cplx beta = std::exp(-0.5 * I * std::acos(-1.0 / 3.0));
            const cplx off = 1.0 / (I * sqrt2);
            for (const auto& p : kU1Pairs) put_pair(m, p[0], p[1], alpha, std::conj(alpha), off);
            for (std::size_t k : {8, 9, 12, 13}) m(k, k) = beta;
            put_pair(m, 10, 11, 1.0 / sqrt3 + 1.0 / (2.0 * I * sqrt6), 1.0 / sqrt3 - 1.0 / (2.0 * I * sqrt6),
                     std::sqrt(2.5) / (2.0 * I));
            return m;
        }
        case GateId::UB: {
            const cplx gm = ub_gamma(c.JB);
            const cplx gm3 = 1.0 / (gm * gm * gm);
            for (std::size_t k = 0; k < 14; ++k) m(k, k) = k < 4 ? gm3 : -gm;
            m(11, 11) = -gm3;
            return m;
        }
        case GateId::U1: {
            const U1Entries e = u1_entries(c.Ja, c.Jb, c.Jc, c.Jd);
            for (const auto& p : kU1Pairs) put_pair(m, p[0], p[1], e.chi_plus, e.chi_minus, e.lambda);
            m(8, 8) = m(12, 12) = e.xi;
            m(9, 9) = m(13, 13) = e.theta;
            put_pair(m, 10, 11, e.tau_minus, e.tau_plus, e.mu);
            return m;
        }
        case GateId::U2: return closed_u23(g, c.J2p, c.J2pp);
        case GateId::U3: return closed_u23(g, c.J3p, c.J3pp);
        case GateId::U5: {
            const U5Entries e = u5_entries(c.J5);
            const cplx pc = std::conj(e.p);
            put_pair(m, 0, 1, e.p, pc, e.Phi);
            put_pair(m, 2, 3, e.p, pc, e.Phi);
            put_pair(m, 4, 6, e.p, pc, e.Phi);
            put_pair(m, 5, 7, e.p, pc, e.Phi);
            put_pair(m, 9, 13, e.p, pc, e.Phi);
            for (std::size_t k : {8, 10, 11, 12}) m(k, k) = e.single;
            return m;
        }
        case GateId::U6: break;
    }
    throw std::domain_error("no closed form for gate " + to_string(g));
}

ComplexMatrix bacon_u1() {
    ComplexMatrix m(14, 14);
    const cplx omega = I * std::exp(I * pi / (2 * sqrt3));
    const cplx xi = std::exp(I * 2.0 * pi / sqrt3);
    const double s = std::sin(pi / sqrt2), c = std::cos(pi / sqrt2);
    for (const auto& p : kU1Pairs) put_pair(m, p[0], p[1], 0.0, 0.0, omega);
    for (std::size_t k : {8, 9, 12, 13}) m(k, k) = xi;
    put_pair(m, 10, 11, xi * (c - I * std::sqrt(3.0 / 8.0) * s), xi * (c + I * std::sqrt(3.0 / 8.0) * s),
             0.5 * I * std::sqrt(2.5) * xi * s);
    return m;
}

ComplexMatrix bacon_u5() {
    ComplexMatrix m(14, 14);
    for (auto [a, b] : {std::pair{0, 1}, {2, 3}, {4, 6}, {5, 7}, {9, 13}}) put_pair(m, a, b, 0.0, 0.0, I);
    for (std::size_t k : {8, 10, 11, 12}) m(k, k) = std::exp(I * sqrt3 * pi / 2.0);
    return m;
}

ComplexMatrix bacon_ub() {
    ComplexMatrix m(14, 14);
    for (std::size_t k = 0; k < 14; ++k) m(k, k) = k < 4 ? 1.0 : -1.0;
    return m;
}

ClassicalityResult classicality_check(const ComplexMatrix& u, const std::vector<std::size_t>& subset,
                                      double eps) {
    ClassicalityResult r{true, 0.0};
    for (std::size_t c : subset) {
        std::size_t count = 0;
        double largest = 0.0, second = 0.0;
        for (std::size_t row : subset) {
            const double a = std::abs(u(row, c));
            if (a > eps) ++count;
            if (a > largest) {
                second = largest;
                largest = a;
            } else if (a > second) {
                second = a;
            }
        }
        if (count != 1) r.classical = false;
        r.max_off_pattern = std::max(r.max_off_pattern, second);
    }
    return r;
}

double tune_lambda_even(unsigned n, int branch) {
    if (n < 1) throw std::invalid_argument("n must be at least 1");
    if (branch != 1 && branch != -1) throw std::invalid_argument("branch must be +1 or -1");
    const double nn = static_cast<double>(n);
    return 0.75 * (1.0 + branch * std::sqrt((16.0 * nn * nn - 1.0) / 3.0));
}

namespace {

// Bisection over sign changes of f on a 200-point scan of [-10, 10]; first root passing `accept`.
template <class F, class A>
double scan_bisect(F f, A accept, const char* what) {
    constexpr int kScan = 200;
    const double lo = -10.0, hi = 10.0;
    double xa = lo, fa = f(xa);
    for (int k = 1; k < kScan; ++k) {
        const double xb = lo + (hi - lo) * k / (kScan - 1);
        const double fb = f(xb);
        double root = NAN;
        if (fa == 0.0) {
            root = xa;
        } else if (fa * fb < 0.0) {
            double a = xa, b = xb, ya = fa;
            while (b - a > 1e-12) {
                const double m = 0.5 * (a + b);
                const double ym = f(m);
                if (ym == 0.0) {
                    a = b = m;
                    break;
                }
                if ((ym < 0) == (ya < 0)) {
                    a = m;
                    ya = ym;
                } else {
                    b = m;
                }
            }
            root = 0.5 * (a + b);
        }
        if (!std::isnan(root) && accept(root)) return root;
        xa = xb;
        fa = fb;
    }
    if (fa == 0.0 && accept(xa)) return xa;
    throw NoRootError(std::string("no root for ") + what + " in [-10, 10]");
}

}  // namespace

double tune_eta_zero(GateId g, FixedConstant fixed, double value) {
    if (g != GateId::U2 && g != GateId::U3) throw std::domain_error("eta condition applies to U2 and U3 only");
    if (!std::isfinite(value)) throw std::invalid_argument("fixed constant must be finite");
    auto pair = [&](double free) {
        return fixed == FixedConstant::primed ? std::pair{value, free} : std::pair{free, value};
    };
    // Im of eta with its leading phase removed
    auto f = [&](double free) {
        const auto [jp, jpp] = pair(free);
        return std::imag(u23_entries(jp, jpp).eta * std::exp(I * theta23 * (1 + jpp)));
    };
    auto ok = [&](double free) {
        const auto [jp, jpp] = pair(free);
        return std::abs(u23_entries(jp, jpp).eta) < 1e-10;
    };
    return scan_bisect(f, ok, "eta = 0");
}

ChiTriple tune_chi_plus_zero(double r) {
    if (!std::isfinite(r)) throw std::invalid_argument("ratio must be finite");
    if (std::abs(r - 1.0) < 1e-12) throw std::invalid_argument("ratio J_b'/J_d' = 1 is excluded");
    const double jd = 1.0 / (r - 1.0);
    const double jb = r * jd;
    auto f = [&](double ja) {
        const double phase = pi * (sqrt3 / 6.0) * (1 + 2 * ja + 2 * jb + 2 * jd);
        return std::imag(u1_entries(ja, jb, 0.0, jd).chi_plus * std::exp(-I * phase));
    };
    auto ok = [&](double ja) { return std::abs(u1_entries(ja, jb, 0.0, jd).chi_plus) < 1e-10; };
    return {scan_bisect(f, ok, "chi_+ = 0"), jb, jd};
}

FourBodyCouplings tuned_couplings(double ratio, double JB, double Jc, unsigned lambda_n, double J2,
                                  double J3) {
    FourBodyCouplings c;
    c.JB = JB;
    c.Jc = Jc;
    c.J5 = tune_lambda_even(lambda_n, +1);
    c.J2p = J2;
    c.J2pp = tune_eta_zero(GateId::U2, FixedConstant::primed, J2);
    c.J3p = J3;
    c.J3pp = tune_eta_zero(GateId::U3, FixedConstant::primed, J3);
    const ChiTriple t = tune_chi_plus_zero(ratio);
    c.Ja = t.Ja;
    c.Jb = t.Jb;
    c.Jd = t.Jd;
    return c;
}

std::vector<GateStep> cp_sequence() {
    return {{GateId::U1, false}, {GateId::U2, false}, {GateId::U3, false}, {GateId::U5, false},
            {GateId::U6, false}, {GateId::U5, true},  {GateId::U3, true},  {GateId::U2, true},
            {GateId::U1, true}};
}

CpResult assemble_cp(const FourBodyCouplings& c, double tol) {
    CpResult r;
    r.full = ComplexMatrix::identity(14);
    for (const auto& step : cp_sequence()) {
        const ComplexMatrix u = gate(step.gate, c);
        r.full = (step.dagger ? u.adjoint() : u) * r.full;
    }
    const std::vector<std::size_t> code{0, 1, 2, 3};
    r.code_block = submatrix(r.full, code, code);
    double leak = 0.0;
    for (std::size_t col : code)
        for (std::size_t row = 4; row < 14; ++row) leak += std::norm(r.full(row, col));
    r.leakage = std::sqrt(leak);
    r.block_deviation = compare_up_to_phase(r.code_block, ComplexMatrix::diagonal({-1.0, 1.0, 1.0, 1.0})).deviation;
    r.pass = r.block_deviation < tol && r.leakage < tol;
    return r;
}

std::vector<ConditionReport> cp_conditions(const FourBodyCouplings& c) {
    constexpr double tol = 1e-8;
    std::vector<ConditionReport> out;
    out.push_back({"1", true, 0.0});
    const double eta2 = std::abs(u23_entries(c.J2p, c.J2pp).eta);
    out.push_back({"2", eta2 < tol, eta2});
    const double eta3 = std::abs(u23_entries(c.J3p, c.J3pp).eta);
    out.push_back({"3", eta3 < tol, eta3});
    const double lam = u5_entries(c.J5).Lambda.real();
    const double even = std::max(2.0, 2.0 * std::round(lam / 2.0));
    const double r4 = std::min(std::abs(c.J5), std::abs(lam - even));
    out.push_back({"4", r4 < tol, r4});
    const double r5 = std::abs(c.JB - std::round(c.JB));
    out.push_back({"5", r5 < tol, r5});
    const double chi = std::abs(u1_entries(c.Ja, c.Jb, c.Jc, c.Jd).chi_plus);
    out.push_back({"6", chi < tol, chi});
    return out;
}

}  // namespace fewspin
