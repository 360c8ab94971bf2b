#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "fewspin/heitler_london.hpp"
#include "fewspin/spin_ops.hpp"

using namespace fewspin;

namespace {

int parity(const std::vector<std::size_t>& p) {
    int inv = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) ++inv;
    return inv % 2 ? -1 : 1;
}

// Brute-force double sum over both determinant expansions. In the P-term electron k sits
// in spin orbital P[k] of configuration s.
double double_sum_element(const IntegralProvider& ints, std::size_t s, std::size_t sp, bool hamiltonian) {
    const std::size_t n = ints.size();
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    double total = 0.0;
    do {
        std::vector<std::size_t> q(n);
        std::iota(q.begin(), q.end(), 0);
        do {
            bool ok = true;
            for (std::size_t k = 0; k < n && ok; ++k) ok = site_bit(s, p[k], n) == site_bit(sp, q[k], n);
            if (!ok) continue;
            double v = 0.0;
            if (!hamiltonian) {
                v = 1.0;
                for (std::size_t k = 0; k < n; ++k) v *= ints.overlap(p[k], q[k]);
            } else {
                for (std::size_t e = 0; e < n; ++e) {
                    double t = ints.one_body(p[e], q[e]);
                    for (std::size_t k = 0; k < n; ++k)
                        if (k != e) t *= ints.overlap(p[k], q[k]);
                    v += t;
                }
                for (std::size_t e = 0; e < n; ++e)
                    for (std::size_t f = e + 1; f < n; ++f) {
                        double t = ints.coulomb(p[e], q[e], p[f], q[f]);
                        for (std::size_t k = 0; k < n; ++k)
                            if (k != e && k != f) t *= ints.overlap(p[k], q[k]);
                        v += t;
                    }
            }
            total += parity(p) * parity(q) * v;
        } while (std::next_permutation(q.begin(), q.end()));
    } while (std::next_permutation(p.begin(), p.end()));
    return total;
}

AnalyticIntegrals model_integrals(Geometry g, double xb = 3.0, double xv = 3.0) {
    return AnalyticIntegrals(make_dot_model({xb, xv, 1.5}, g, PotentialKind::gaussian));
}

void check_same_k(const CouplingCoefficients& a, const CouplingCoefficients& b, double tol) {
    CHECK(a.K0 == doctest::Approx(b.K0).epsilon(tol));
    CHECK(a.K2_AB == doctest::Approx(b.K2_AB).epsilon(tol).scale(1e-6));
    CHECK(a.K2_AC == doctest::Approx(b.K2_AC).epsilon(tol).scale(1e-6));
    if (a.K4_ABCD) {
        CHECK(*a.K4_ABCD == doctest::Approx(*b.K4_ABCD).epsilon(tol).scale(1e-6));
        CHECK(*a.K4_ACBD == doctest::Approx(*b.K4_ACBD).epsilon(tol).scale(1e-6));
    }
}

}  // namespace

TEST_CASE("natural units") {
    const NaturalUnits u = reduce_to_natural_units({4.0, 3.0, 1.5});
    CHECK(u.half_spacing == doctest::Approx(2.0));
    CHECK(u.coulomb_strength == doctest::Approx(3.0));
    CHECK(u.well_depth == doctest::Approx(1.5));
    CHECK(u.gaussian_alpha == doctest::Approx(1.0 / 3.0));
    CHECK_THROWS_AS(reduce_to_natural_units({-1.0, 3.0, 1.5}), std::domain_error);
    CHECK_THROWS_AS(reduce_to_natural_units({1.0, 0.0, 1.5}), std::domain_error);
    CHECK_THROWS_AS(reduce_to_natural_units({1.0, 3.0, INFINITY}), std::domain_error);
}

TEST_CASE("antisymmetrized elements match the double permutation sum") {
    for (Geometry g : {Geometry::linear3, Geometry::square4}) {
        const AnalyticIntegrals ints = model_integrals(g);
        const std::size_t dim = std::size_t{1} << ints.size();
        for (std::size_t s = 0; s < dim; ++s)
            for (std::size_t sp = 0; sp < dim; ++sp) {
                if (std::popcount(s) != std::popcount(sp)) continue;
                CHECK(antisym_matrix_element(ints, s, sp, Observable::identity) ==
                      doctest::Approx(double_sum_element(ints, s, sp, false)).epsilon(1e-10));
                CHECK(antisym_matrix_element(ints, s, sp, Observable::hamiltonian) ==
                      doctest::Approx(double_sum_element(ints, s, sp, true)).epsilon(1e-10));
            }
    }
}

TEST_CASE("two electrons reproduce the Heitler-London singlet and triplet") {
    const ConfiningPotential v{PotentialKind::gaussian, {{-1.2, 0, 0}, {1.2, 0, 0}}, 1.4, 0.3};
    const AnalyticIntegrals ints({Vec3{-1.0, 0, 0}, Vec3{1.1, 0.2, 0}}, v, 2.0);
    const double s = ints.overlap(0, 1);
    const double direct = ints.coulomb(0, 0, 1, 1), exch = ints.coulomb(0, 1, 1, 0);
    const double hsum = ints.one_body(0, 0) + ints.one_body(1, 1);
    const double e_plus = (hsum + 2 * s * ints.one_body(0, 1) + direct + exch) / (1 + s * s);
    const double e_minus = (hsum - 2 * s * ints.one_body(0, 1) + direct - exch) / (1 - s * s);

    const ConfigurationMatrices m = configuration_matrices(ints);
    auto energy = [&](double sign) {
        const CVector vec{0.0, 1.0, sign, 0.0};
        return std::real(inner(vec, m.hamiltonian * vec)) / std::real(inner(vec, m.gram * vec));
    };
    // Singlet spin pairs with the symmetric spatial combination.
    CHECK(energy(-1.0) == doctest::Approx(e_plus).epsilon(1e-12));
    CHECK(energy(1.0) == doctest::Approx(e_minus).epsilon(1e-12));
}

TEST_CASE("couplings are invariant under relabelling the dots") {
    {
        const DotModel m = make_dot_model({3.0, 3.0, 1.5}, Geometry::linear3, PotentialKind::gaussian);
        auto c = m.orbitals.centers;
        std::reverse(c.begin(), c.end());
        const auto a = couplings_from_integrals(AnalyticIntegrals(m), Geometry::linear3).K;
        const auto b = couplings_from_integrals(AnalyticIntegrals(c, m.potential, m.units.coulomb_strength),
                                                Geometry::linear3).K;
        check_same_k(a, b, 1e-9);
    }
    {
        const DotModel m = make_dot_model({3.0, 3.0, 1.5}, Geometry::square4, PotentialKind::gaussian);
        auto c = m.orbitals.centers;
        std::rotate(c.begin(), c.begin() + 1, c.end());
        const auto a = couplings_from_integrals(AnalyticIntegrals(m), Geometry::square4).K;
        const auto b = couplings_from_integrals(AnalyticIntegrals(c, m.potential, m.units.coulomb_strength),
                                                Geometry::square4).K;
        check_same_k(a, b, 1e-9);
    }
}

TEST_CASE("sector states are orthogonal and decouple the configuration matrices") {
    for (Geometry g : {Geometry::linear3, Geometry::square4}) {
        const ConfigurationMatrices m = configuration_matrices(model_integrals(g));
        const auto sectors = all_sectors(g);
        std::vector<CVector> states;
        for (const auto& s : sectors) states.push_back(sector_state(g, s));
        const double scale = m.hamiltonian.max_abs();
        for (std::size_t i = 0; i < states.size(); ++i) {
            CHECK(norm(states[i]) == doctest::Approx(1.0));
            for (std::size_t j = i + 1; j < states.size(); ++j) {
                CHECK(std::abs(inner(states[i], states[j])) < 1e-10);
                CHECK(std::abs(inner(states[i], m.gram * states[j])) < 1e-10);
                CHECK(std::abs(inner(states[i], m.hamiltonian * states[j])) < 1e-10 * scale);
            }
        }
    }
}

TEST_CASE("sector validation") {
    CHECK_NOTHROW(validate_sector(Geometry::linear3, {1, 0, -1}));
    CHECK_THROWS_AS(validate_sector(Geometry::linear3, {3, 0, -1}), std::domain_error);
    CHECK_THROWS_AS(validate_sector(Geometry::linear3, {2, 2, -1}), std::domain_error);
    CHECK_THROWS_AS(validate_sector(Geometry::square4, {4, 2, 0}), std::domain_error);
    CHECK_THROWS_AS(validate_sector(Geometry::square4, {2, 0, 0}), std::domain_error);
    CHECK_THROWS_AS(validate_sector(Geometry::square4, {0, 4, 2}), std::domain_error);
    CHECK_THROWS_AS(sector_state(Geometry::square4, {1, 2, 2}), std::domain_error);
}

TEST_CASE("design rows are spin-operator eigenvalues") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (Geometry g : {Geometry::linear3, Geometry::square4}) {
        const LCoefficients L{u(rng), u(rng), u(rng), g == Geometry::square4 ? u(rng) : 0.0,
                              g == Geometry::square4 ? u(rng) : 0.0};
        const ComplexMatrix h = spin_hamiltonian(L, g);
        const std::vector<double> coeff{L.L0, L.L1, L.L1p, L.L2, L.L2p};
        for (const auto& s : all_sectors(g)) {
            const CVector v = sector_state(g, s);
            const auto row = design_row(g, s);
            const double expect = std::inner_product(row.begin(), row.end(), coeff.begin(), 0.0);
            const CVector hv = h * v;
            for (std::size_t k = 0; k < v.size(); ++k) CHECK(std::abs(hv[k] - expect * v[k]) < 1e-12);
        }
    }
    CHECK(design_row(Geometry::square4, {4, 2, 2}) == std::vector<double>{1.0, 6.0, 4.0, 36.0, 4.0});
}

TEST_CASE("solve_L recovers exact coefficients and rejects rank deficiency") {
    const LCoefficients truth{0.7, -0.3, 0.2, 0.05, -0.11};
    const std::vector<double> t{truth.L0, truth.L1, truth.L1p, truth.L2, truth.L2p};
    const auto sectors = all_sectors(Geometry::square4);
    std::vector<double> energies;
    for (const auto& s : sectors) {
        const auto row = design_row(Geometry::square4, s);
        energies.push_back(std::inner_product(row.begin(), row.end(), t.begin(), 0.0));
    }
    const LSolution sol = solve_L(Geometry::square4, sectors, energies);
    CHECK(sol.L.L0 == doctest::Approx(truth.L0));
    CHECK(sol.L.L1 == doctest::Approx(truth.L1));
    CHECK(sol.L.L1p == doctest::Approx(truth.L1p));
    CHECK(sol.L.L2 == doctest::Approx(truth.L2));
    CHECK(sol.L.L2p == doctest::Approx(truth.L2p));
    CHECK(sol.relative_residual < 1e-12);

    const std::vector<SectorLabel> few{{0, 0, 0}, {2, 0, 2}, {2, 2, 0}, {0, 2, 2}};
    try {
        solve_L(Geometry::square4, few, {1, 2, 3, 4});
        FAIL("expected rank deficiency");
    } catch (const std::domain_error& e) {
        CHECK(std::string(e.what()).find("rank deficient") != std::string::npos);
        CHECK(std::string(e.what()).find("(1;1,0)") != std::string::npos);
    }
    CHECK_THROWS_AS(solve_L(Geometry::linear3, all_sectors(Geometry::linear3), {1.0}), std::invalid_argument);
}

TEST_CASE("L to K mapping is an operator identity") {
    const LCoefficients L{0.4, 0.3, -0.2, 0.15, 0.07};
    for (Geometry g : {Geometry::linear3, Geometry::square4}) {
        LCoefficients l = L;
        if (g == Geometry::linear3) l.L2 = l.L2p = 0.0;
        CHECK(max_abs_diff(spin_hamiltonian(l, g), spin_hamiltonian(L_to_K(l, g))) < 1e-12);
    }
    // K2 = 2 L1 + 24 L2, K0 shift 45/2 L2 is not the square of the total spin.
    CouplingCoefficients alt = L_to_K(L, Geometry::square4);
    alt.K2_AB += 10 * L.L2;
    alt.K2_AC += 10 * L.L2;
    alt.K0 += 9 * L.L2;
    CHECK(max_abs_diff(spin_hamiltonian(L, Geometry::square4), spin_hamiltonian(alt)) > 0.1);
    CHECK_FALSE(L_to_K(L, Geometry::linear3).K4_ABCD.has_value());
}

TEST_CASE("exchange vanishes at large separation") {
    for (Geometry g : {Geometry::linear3, Geometry::square4}) {
        const auto near = compute_couplings({2.0, 3.0, 1.5}, g, PotentialKind::quadratic).K;
        const auto far = compute_couplings({8.0, 3.0, 1.5}, g, PotentialKind::quadratic).K;
        CHECK(std::abs(far.K2_AB) < 1e-3 * std::abs(near.K2_AB));
        if (g == Geometry::square4) CHECK(std::abs(*far.K4_ABCD) < 1e-3 * std::abs(*near.K4_ABCD));
    }
}

TEST_CASE("orbital optimization") {
    const DotModel q = make_dot_model({3.0, 3.0, 1.5}, Geometry::square4, PotentialKind::quadratic);
    CHECK(q.orbitals.displacement == 0.0);
    CHECK_FALSE(q.orbitals.bracket_failed);
    const DotModel m = make_dot_model({3.0, 3.0, 1.5}, Geometry::linear3, PotentialKind::gaussian);
    if (!m.orbitals.bracket_failed) {
        const double d = m.orbitals.displacement, l = m.units.half_spacing;
        CHECK(d > 0.0);
        CHECK(d < l);
        const double e = self_energy_at(Geometry::linear3, l, m.potential, d);
        CHECK(e <= self_energy_at(Geometry::linear3, l, m.potential, d + 1e-3));
        CHECK(e <= self_energy_at(Geometry::linear3, l, m.potential, d - 1e-3));
    }
}

TEST_CASE("sweep order, thread determinism and error capture") {
    const std::vector<double> xb{2.0, 3.0, -1.0}, xv{2.5, 3.5};
    const auto one = sweep(xb, xv, 1.5, Geometry::linear3, PotentialKind::gaussian, 1);
    const auto four = sweep(xb, xv, 1.5, Geometry::linear3, PotentialKind::gaussian, 4);
    REQUIRE(one.size() == 6);
    for (std::size_t i = 0; i < one.size(); ++i) {
        CHECK(one[i].params.x_b == xb[i / 2]);
        CHECK(one[i].params.x_v == xv[i % 2]);
        CHECK(one[i].result.has_value() == four[i].result.has_value());
        if (one[i].result) {
            CHECK(one[i].result->K.K0 == four[i].result->K.K0);
            CHECK(one[i].result->K.K2_AB == four[i].result->K.K2_AB);
            CHECK(one[i].result->K.K2_AC == four[i].result->K.K2_AC);
        }
    }
    CHECK_FALSE(one[4].result.has_value());
    CHECK_FALSE(one[4].error.empty());
}
