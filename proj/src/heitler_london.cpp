#include "fewspin/heitler_london.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "fewspin/spin_ops.hpp"

namespace fewspin {

std::string to_string(Geometry g) { return g == Geometry::linear3 ? "linear3" : "square4"; }
std::string to_string(PotentialKind p) { return p == PotentialKind::gaussian ? "gaussian" : "quadratic"; }

Geometry parse_geometry(const std::string& s) {
    if (s == "linear3") return Geometry::linear3;
    if (s == "square4") return Geometry::square4;
    throw std::invalid_argument("unknown geometry '" + s + "'");
}

PotentialKind parse_potential(const std::string& s) {
    if (s == "gaussian") return PotentialKind::gaussian;
    if (s == "quadratic") return PotentialKind::quadratic;
    throw std::invalid_argument("unknown potential '" + s + "'");
}

std::size_t dot_count(Geometry g) { return g == Geometry::linear3 ? 3 : 4; }

NaturalUnits reduce_to_natural_units(const DimensionlessParams& p) {
    if (!(p.x_b > 0) || !(p.x_v > 0) || !(p.x_c > 0) || !std::isfinite(p.x_b) ||
        !std::isfinite(p.x_v) || !std::isfinite(p.x_c))
        throw std::domain_error("x_b, x_v and x_c must be positive and finite");
    const double l = std::sqrt(p.x_b);
    return {l, p.x_c * l, p.x_v / 2.0, p.x_b / (p.x_v * l * l)};
}

std::vector<Vec3> nominal_centers(Geometry g, double l) {
    if (g == Geometry::linear3) return {Vec3{-2 * l, 0, 0}, Vec3{0, 0, 0}, Vec3{2 * l, 0, 0}};
    return {Vec3{0, 2 * l, 0}, Vec3{2 * l, 2 * l, 0}, Vec3{2 * l, 0, 0}, Vec3{0, 0, 0}};
}

double ConfiningPotential::value(const Vec3& r) const {
    if (kind == PotentialKind::gaussian) {
        double v = 0.0;
        for (const auto& w : wells) v -= depth * std::exp(-alpha * dist2(r, w));
        return v;
    }
    double best = INFINITY;
    for (const auto& w : wells) best = std::min(best, dist2(r, w));
    return 0.5 * best;
}

double ConfiningPotential::element(const Vec3& c1, const Vec3& c2) const {
    if (kind == PotentialKind::quadratic) return quadratic_wells_element(c1, c2, wells);
    double v = 0.0;
    for (const auto& w : wells) v += gaussian_well_element(c1, c2, w, depth, alpha);
    return v;
}

ConfiningPotential make_potential(PotentialKind kind, Geometry g, const NaturalUnits& u) {
    ConfiningPotential v;
    v.kind = kind;
    v.wells = nominal_centers(g, u.half_spacing);
    if (kind == PotentialKind::gaussian) {
        v.depth = u.well_depth;
        v.alpha = u.gaussian_alpha;
    }
    return v;
}

double one_body_element(const Vec3& c1, const Vec3& c2, const ConfiningPotential& v) {
    return kinetic(c1, c2) + v.element(c1, c2);
}

std::vector<Vec3> displaced_centers(Geometry g, double l, double delta) {
    auto c = nominal_centers(g, l);
    if (g == Geometry::linear3) {
        c[0][0] += delta;
        c[2][0] -= delta;
        return c;
    }
    const Vec3 target{l, l, 0};
    for (auto& p : c) {
        const double d = std::sqrt(dist2(p, target));
        for (int k = 0; k < 3; ++k) p[k] += delta * (target[k] - p[k]) / d;
    }
    return c;
}

double self_energy_at(Geometry g, double l, const ConfiningPotential& v, double delta) {
    const Vec3 a = displaced_centers(g, l, delta)[0];
    return one_body_element(a, a, v);
}

OrbitalSet optimize_orbital_centers(Geometry g, double l, const ConfiningPotential& v) {
    OrbitalSet out;
    if (v.kind == PotentialKind::quadratic) {
        out.centers = nominal_centers(g, l);
        return out;
    }
    auto f = [&](double d) { return self_energy_at(g, l, v, d); };
    const double tol = 1e-10 * l;
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = 0.0, b = l;
    double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
    }
    double delta = 0.5 * (a + b);
    // An interior minimum must beat the interval end.
    if (delta > l - 1e3 * tol || f(l) <= f(delta)) {
        out.bracket_failed = true;
        delta = 0.0;
    }
    out.displacement = delta;
    out.centers = displaced_centers(g, l, delta);
    return out;
}

DotModel make_dot_model(const DimensionlessParams& p, Geometry g, PotentialKind kind) {
    const NaturalUnits u = reduce_to_natural_units(p);
    ConfiningPotential v = make_potential(kind, g, u);
    OrbitalSet orb = optimize_orbital_centers(g, u.half_spacing, v);
    return {g, p, u, std::move(v), std::move(orb)};
}

AnalyticIntegrals::AnalyticIntegrals(std::vector<Vec3> orbitals, ConfiningPotential potential,
                                     double coulomb_strength)
    : n_(orbitals.size()) {
    s_.resize(n_ * n_);
    h_.resize(n_ * n_);
    w_.resize(n_ * n_ * n_ * n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) {
            s_[i * n_ + j] = fewspin::overlap(orbitals[i], orbitals[j]);
            h_[i * n_ + j] = one_body_element(orbitals[i], orbitals[j], potential);
            for (std::size_t k = 0; k < n_; ++k)
                for (std::size_t l = 0; l < n_; ++l)
                    w_[((i * n_ + j) * n_ + k) * n_ + l] = fewspin::coulomb(
                        orbitals[i], orbitals[j], orbitals[k], orbitals[l], coulomb_strength);
        }
}

AnalyticIntegrals::AnalyticIntegrals(const DotModel& m)
    : AnalyticIntegrals(m.orbitals.centers, m.potential, m.units.coulomb_strength) {}

namespace {

int permutation_sign(const std::vector<std::size_t>& p) {
    int sign = 1;
    std::vector<bool> seen(p.size(), false);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        std::size_t len = 0;
        for (std::size_t j = i; !seen[j]; j = p[j]) {
            seen[j] = true;
            ++len;
        }
        if (len % 2 == 0) sign = -sign;
    }
    return sign;
}

double factorial(std::size_t n) { return n <= 1 ? 1.0 : static_cast<double>(n) * factorial(n - 1); }

}  // namespace

double antisym_matrix_element(const IntegralProvider& ints, std::size_t s, std::size_t s_prime,
                              Observable op) {
    const std::size_t n = ints.size();
    auto spin = [n](std::size_t cfg, std::size_t k) { return site_bit(cfg, k, n); };
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    double total = 0.0;
    do {
        bool match = true;
        for (std::size_t k = 0; k < n && match; ++k) match = spin(s, k) == spin(s_prime, p[k]);
        if (!match) continue;
        std::vector<double> sv(n);
        for (std::size_t k = 0; k < n; ++k) sv[k] = ints.overlap(k, p[k]);
        double v = 0.0;
        if (op == Observable::identity) {
            v = 1.0;
            for (double x : sv) v *= x;
        } else {
            for (std::size_t i = 0; i < n; ++i) {
                double term = ints.one_body(i, p[i]);
                for (std::size_t k = 0; k < n; ++k)
                    if (k != i) term *= sv[k];
                v += term;
            }
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) {
                    double term = ints.coulomb(i, p[i], j, p[j]);
                    for (std::size_t k = 0; k < n; ++k)
                        if (k != i && k != j) term *= sv[k];
                    v += term;
                }
        }
        total += permutation_sign(p) * v;
    } while (std::next_permutation(p.begin(), p.end()));
    return factorial(n) * total;
}

ConfigurationMatrices configuration_matrices(const IntegralProvider& ints) {
    const std::size_t dim = std::size_t{1} << ints.size();
    ConfigurationMatrices m{ComplexMatrix(dim, dim), ComplexMatrix(dim, dim)};
    for (std::size_t a = 0; a < dim; ++a)
        for (std::size_t b = a; b < dim; ++b) {
            if (std::popcount(a) != std::popcount(b)) continue;
            const double g = antisym_matrix_element(ints, a, b, Observable::identity);
            const double h = antisym_matrix_element(ints, a, b, Observable::hamiltonian);
            m.gram(a, b) = m.gram(b, a) = g;
            m.hamiltonian(a, b) = m.hamiltonian(b, a) = h;
        }
    return m;
}

std::string SectorLabel::name() const {
    auto half = [](int two) {
        return two % 2 == 0 ? std::to_string(two / 2) : std::to_string(two) + "/2";
    };
    std::string s = "(" + half(two_total) + ";" + half(two_ac);
    if (two_bd >= 0) s += "," + half(two_bd);
    return s + ")";
}

std::vector<SectorLabel> all_sectors(Geometry g) {
    if (g == Geometry::linear3) return {{3, 2, -1}, {1, 2, -1}, {1, 0, -1}};
    return {{0, 0, 0}, {2, 0, 2}, {2, 2, 0}, {0, 2, 2}, {2, 2, 2}, {4, 2, 2}};
}

void validate_sector(Geometry g, const SectorLabel& s) {
    auto bad = [&] { throw std::domain_error("invalid quantum numbers " + s.name() + " for " + to_string(g)); };
    if (s.two_ac != 0 && s.two_ac != 2) bad();
    if (g == Geometry::linear3) {
        if (s.two_bd != -1) bad();
        if (s.two_total % 2 != 1 || s.two_total < std::abs(s.two_ac - 1) || s.two_total > s.two_ac + 1)
            bad();
        return;
    }
    if (s.two_bd != 0 && s.two_bd != 2) bad();
    if (s.two_total % 2 != 0 || s.two_total < std::abs(s.two_ac - s.two_bd) ||
        s.two_total > s.two_ac + s.two_bd)
        bad();
}

namespace {

// Projector onto eigenvalue `target` of an operator with the listed spectrum.
ComplexMatrix spectral_projector(const ComplexMatrix& op, double target, const std::vector<double>& spectrum) {
    const std::size_t dim = op.rows();
    ComplexMatrix p = ComplexMatrix::identity(dim);
    for (double v : spectrum) {
        if (std::abs(v - target) < 1e-9) continue;
        p = p * ((1.0 / (target - v)) * (op - v * ComplexMatrix::identity(dim)));
    }
    return p;
}

double ss1(int two_s) { return 0.25 * two_s * (two_s + 2); }

}  // namespace

CVector sector_state(Geometry g, const SectorLabel& s) {
    validate_sector(g, s);
    const std::size_t n = dot_count(g);
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    const std::vector<double> pair_spectrum{0.0, 2.0};
    const std::vector<double> total_spectrum =
        g == Geometry::linear3 ? std::vector<double>{0.75, 3.75} : std::vector<double>{0.0, 2.0, 6.0};
    ComplexMatrix p = spectral_projector(total_spin_squared(n, all), ss1(s.two_total), total_spectrum) *
                      spectral_projector(total_spin_squared(n, {0, 2}), ss1(s.two_ac), pair_spectrum);
    if (g == Geometry::square4)
        p = p * spectral_projector(total_spin_squared(n, {1, 3}), ss1(s.two_bd), pair_spectrum);
    std::size_t best = 0;
    double best_norm = -1.0;
    for (std::size_t c = 0; c < p.cols(); ++c) {
        double nn = 0.0;
        for (std::size_t r = 0; r < p.rows(); ++r) nn += std::norm(p(r, c));
        if (nn > best_norm + 1e-12) {
            best_norm = nn;
            best = c;
        }
    }
    CVector v(p.rows());
    const double scale = 1.0 / std::sqrt(best_norm);
    for (std::size_t r = 0; r < p.rows(); ++r) v[r] = p(r, best) * scale;
    return v;
}

double sector_energy(const ConfigurationMatrices& m, Geometry g, const SectorLabel& s) {
    const CVector v = sector_state(g, s);
    const double num = std::real(inner(v, m.hamiltonian * v));
    const double den = std::real(inner(v, m.gram * v));
    return num / den;
}

double sector_energy(const IntegralProvider& ints, Geometry g, const SectorLabel& s) {
    if (ints.size() != dot_count(g)) throw std::invalid_argument("orbital count does not match geometry");
    return sector_energy(configuration_matrices(ints), g, s);
}

std::vector<double> design_row(Geometry g, const SectorLabel& s) {
    validate_sector(g, s);
    const double t = ss1(s.two_total), ac = ss1(s.two_ac);
    if (g == Geometry::linear3) return {1.0, t, ac};
    const double bd = ss1(s.two_bd);
    return {1.0, t, ac + bd, t * t, ac * bd};
}

LSolution solve_L(Geometry g, const std::vector<SectorLabel>& sectors, const std::vector<double>& energies) {
    if (sectors.size() != energies.size()) throw std::invalid_argument("sector/energy count mismatch");
    const std::size_t ncol = g == Geometry::linear3 ? 3 : 5;
    std::vector<std::vector<double>> rows;
    for (const auto& s : sectors) rows.push_back(design_row(g, s));

    // Rows that add nothing to the span of the earlier ones.
    std::vector<std::vector<double>> basis;
    std::vector<std::string> dependent;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        std::vector<double> v = rows[r];
        const double n0 = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
        for (const auto& b : basis) {
            const double c = std::inner_product(v.begin(), v.end(), b.begin(), 0.0);
            for (std::size_t k = 0; k < ncol; ++k) v[k] -= c * b[k];
        }
        const double nr = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
        if (nr < 1e-10 * std::max(1.0, n0)) {
            dependent.push_back(sectors[r].name());
            continue;
        }
        for (auto& x : v) x /= nr;
        basis.push_back(v);
    }
    if (basis.size() < ncol) {
        std::ostringstream msg;
        msg << "design matrix is rank deficient (rank " << basis.size() << " of " << ncol << ")";
        if (!dependent.empty()) {
            msg << "; dependent sectors:";
            for (const auto& d : dependent) msg << ' ' << d;
        }
        throw std::domain_error(msg.str());
    }

    // Least squares via modified Gram-Schmidt on the columns.
    const std::size_t m = rows.size();
    std::vector<std::vector<double>> q(ncol, std::vector<double>(m));
    std::vector<std::vector<double>> r(ncol, std::vector<double>(ncol, 0.0));
    for (std::size_t j = 0; j < ncol; ++j)
        for (std::size_t i = 0; i < m; ++i) q[j][i] = rows[i][j];
    for (std::size_t j = 0; j < ncol; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            const double c = std::inner_product(q[k].begin(), q[k].end(), q[j].begin(), 0.0);
            r[k][j] = c;
            for (std::size_t i = 0; i < m; ++i) q[j][i] -= c * q[k][i];
        }
        const double nn = std::sqrt(std::inner_product(q[j].begin(), q[j].end(), q[j].begin(), 0.0));
        r[j][j] = nn;
        for (auto& x : q[j]) x /= nn;
    }
    std::vector<double> x(ncol, 0.0);
    for (std::size_t j = ncol; j-- > 0;) {
        double s = std::inner_product(q[j].begin(), q[j].end(), energies.begin(), 0.0);
        for (std::size_t k = j + 1; k < ncol; ++k) s -= r[j][k] * x[k];
        x[j] = s / r[j][j];
    }
    double res = 0.0, en = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double fit = std::inner_product(rows[i].begin(), rows[i].end(), x.begin(), 0.0);
        res += (fit - energies[i]) * (fit - energies[i]);
        en += energies[i] * energies[i];
    }
    LSolution out;
    out.L.L0 = x[0];
    out.L.L1 = x[1];
    out.L.L1p = x[2];
    if (ncol == 5) {
        out.L.L2 = x[3];
        out.L.L2p = x[4];
    }
    out.relative_residual = en > 0 ? std::sqrt(res / en) : std::sqrt(res);
    return out;
}

CouplingCoefficients L_to_K(const LCoefficients& L, Geometry g) {
    CouplingCoefficients k;
    k.geometry = g;
    if (g == Geometry::linear3) {
        k.K0 = L.L0 + 2.25 * L.L1 + 1.5 * L.L1p;
        k.K2_AB = 2 * L.L1;
        k.K2_AC = 2 * L.L1 + 2 * L.L1p;
        return k;
    }
    // (S_T^2)^2 = 27/2 + 14 sum S.S + 8 (disjoint pair products)
    k.K0 = L.L0 + 3 * L.L1 + 3 * L.L1p + 13.5 * L.L2 + 2.25 * L.L2p;
    k.K2_AB = 2 * L.L1 + 14 * L.L2;
    k.K2_AC = 2 * L.L1 + 2 * L.L1p + 14 * L.L2 + 3 * L.L2p;
    k.K4_ABCD = 8 * L.L2;
    k.K4_ACBD = 8 * L.L2 + 4 * L.L2p;
    return k;
}

ComplexMatrix spin_hamiltonian(const LCoefficients& L, Geometry g) {
    const std::size_t n = dot_count(g);
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    const ComplexMatrix id = ComplexMatrix::identity(std::size_t{1} << n);
    const ComplexMatrix st = total_spin_squared(n, all);
    const ComplexMatrix ac = total_spin_squared(n, {0, 2});
    if (g == Geometry::linear3) return L.L0 * id + L.L1 * st + L.L1p * ac;
    const ComplexMatrix bd = total_spin_squared(n, {1, 3});
    return L.L0 * id + L.L1 * st + L.L1p * (ac + bd) + L.L2 * (st * st) + L.L2p * (ac * bd);
}

ComplexMatrix spin_hamiltonian(const CouplingCoefficients& K) {
    const std::size_t n = dot_count(K.geometry);
    const ComplexMatrix id = ComplexMatrix::identity(std::size_t{1} << n);
    auto d = [n](std::size_t i, std::size_t j) { return dot_coupling(n, i, j); };
    if (K.geometry == Geometry::linear3)
        return K.K0 * id + K.K2_AB * (d(0, 1) + d(1, 2)) + K.K2_AC * d(0, 2);
    return K.K0 * id + K.K2_AB * (d(0, 1) + d(1, 2) + d(2, 3) + d(3, 0)) + K.K2_AC * (d(0, 2) + d(1, 3)) +
           K.K4_ABCD.value_or(0.0) * (d(0, 1) * d(2, 3) + d(1, 2) * d(3, 0)) +
           K.K4_ACBD.value_or(0.0) * (d(0, 2) * d(1, 3));
}

CouplingResult couplings_from_integrals(const IntegralProvider& ints, Geometry g) {
    if (ints.size() != dot_count(g)) throw std::invalid_argument("orbital count does not match geometry");
    const ConfigurationMatrices m = configuration_matrices(ints);
    CouplingResult out;
    out.sectors = all_sectors(g);
    for (const auto& s : out.sectors) out.energies.push_back(sector_energy(m, g, s));
    const LSolution sol = solve_L(g, out.sectors, out.energies);
    out.L = sol.L;
    out.relative_residual = sol.relative_residual;
    out.K = L_to_K(sol.L, g);
    return out;
}

CouplingResult compute_couplings(const DimensionlessParams& p, Geometry g, PotentialKind kind) {
    const DotModel model = make_dot_model(p, g, kind);
    CouplingResult out = couplings_from_integrals(AnalyticIntegrals(model), g);
    out.displacement = model.orbitals.displacement;
    out.bracket_failed = model.orbitals.bracket_failed;
    return out;
}

std::vector<SweepRow> sweep(const std::vector<double>& x_b, const std::vector<double>& x_v, double x_c,
                            Geometry g, PotentialKind kind, unsigned threads) {
    std::vector<SweepRow> rows;
    for (double b : x_b)
        for (double v : x_v) rows.push_back({DimensionlessParams{b, v, x_c}, std::nullopt, {}});
    auto work = [&](std::size_t i) {
        try {
            rows[i].result = compute_couplings(rows[i].params, g, kind);
        } catch (const std::exception& e) {
            rows[i].error = e.what();
        }
    };
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(rows.size())));
    if (threads <= 1) {
        for (std::size_t i = 0; i < rows.size(); ++i) work(i);
        return rows;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < rows.size();) work(i);
        });
    for (auto& th : pool) th.join();
    return rows;
}

}  // namespace fewspin
