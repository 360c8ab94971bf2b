#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fewspin/integrals.hpp"
#include "fewspin/matrix.hpp"

namespace fewspin {

enum class Geometry { linear3, square4 };
enum class PotentialKind { gaussian, quadratic };

std::string to_string(Geometry g);
std::string to_string(PotentialKind p);
Geometry parse_geometry(const std::string& s);
PotentialKind parse_potential(const std::string& s);
std::size_t dot_count(Geometry g);

struct DimensionlessParams {
    double x_b = 3.0;
    double x_v = 3.0;
    double x_c = 1.5;
};

// hbar = m = omega0 = 1
struct NaturalUnits {
    double half_spacing;      // l
    double coulomb_strength;  // e^2 / kappa
    double well_depth;        // V0
    double gaussian_alpha;    // alpha
};

NaturalUnits reduce_to_natural_units(const DimensionlessParams& p);

// linear3: A, B, C on the x axis. square4: A=(0,2l), B=(2l,2l), C=(2l,0), D=(0,0).
std::vector<Vec3> nominal_centers(Geometry g, double l);

struct ConfiningPotential {
    PotentialKind kind = PotentialKind::gaussian;
    std::vector<Vec3> wells;
    double depth = 0.0;  // gaussian only
    double alpha = 0.0;  // gaussian only

    double value(const Vec3& r) const;
    double element(const Vec3& c1, const Vec3& c2) const;
};

ConfiningPotential make_potential(PotentialKind kind, Geometry g, const NaturalUnits& u);

// <c1| p^2/2 + V |c2>
double one_body_element(const Vec3& c1, const Vec3& c2, const ConfiningPotential& v);

struct OrbitalSet {
    std::vector<Vec3> centers;
    double displacement = 0.0;
    bool bracket_failed = false;  // minimum ran into the end of [0, l]; displacement reset to 0
};

std::vector<Vec3> displaced_centers(Geometry g, double l, double delta);
// <A|h|A> as a function of the inward displacement of dot A.
double self_energy_at(Geometry g, double l, const ConfiningPotential& v, double delta);
OrbitalSet optimize_orbital_centers(Geometry g, double l, const ConfiningPotential& v);

struct DotModel {
    Geometry geometry;
    DimensionlessParams params;
    NaturalUnits units;
    ConfiningPotential potential;
    OrbitalSet orbitals;
};

DotModel make_dot_model(const DimensionlessParams& p, Geometry g, PotentialKind kind);

// Integrals indexed by orbital number.
class IntegralProvider {
public:
    virtual ~IntegralProvider() = default;
    virtual std::size_t size() const = 0;
    virtual double overlap(std::size_t i, std::size_t j) const = 0;
    virtual double one_body(std::size_t i, std::size_t j) const = 0;
    // <i k| 1/r12 |j l>
    virtual double coulomb(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const = 0;
};

class AnalyticIntegrals : public IntegralProvider {
public:
    AnalyticIntegrals(std::vector<Vec3> orbitals, ConfiningPotential potential,
                      double coulomb_strength);
    explicit AnalyticIntegrals(const DotModel& m);

    std::size_t size() const override { return n_; }
    double overlap(std::size_t i, std::size_t j) const override { return s_[i * n_ + j]; }
    double one_body(std::size_t i, std::size_t j) const override { return h_[i * n_ + j]; }
    double coulomb(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const override {
        return w_[((i * n_ + j) * n_ + k) * n_ + l];
    }

private:
    std::size_t n_;
    std::vector<double> s_, h_, w_;
};

// Spin configuration as a bit pattern: bit of site k (site 0 most significant), 1 = down.
enum class Observable { identity, hamiltonian };

// <Psi(s)|O|Psi(s')> for antisymmetrized product states, including the N! factor.
double antisym_matrix_element(const IntegralProvider& ints, std::size_t s, std::size_t s_prime,
                              Observable op);

struct ConfigurationMatrices {
    ComplexMatrix gram;
    ComplexMatrix hamiltonian;
};

ConfigurationMatrices configuration_matrices(const IntegralProvider& ints);

// Twice the spins: S_T, |S_A + S_C|, |S_B + S_D| (square4 only, else -1).
struct SectorLabel {
    int two_total = 0;
    int two_ac = 0;
    int two_bd = -1;

    std::string name() const;
    bool operator==(const SectorLabel&) const = default;
};

std::vector<SectorLabel> all_sectors(Geometry g);
void validate_sector(Geometry g, const SectorLabel& s);
// A spin vector inside the sector, unit norm in the 2^N configuration space.
CVector sector_state(Geometry g, const SectorLabel& s);
double sector_energy(const IntegralProvider& ints, Geometry g, const SectorLabel& s);
double sector_energy(const ConfigurationMatrices& m, Geometry g, const SectorLabel& s);

std::vector<double> design_row(Geometry g, const SectorLabel& s);

struct LCoefficients {
    double L0 = 0.0;
    double L1 = 0.0;
    double L1p = 0.0;
    double L2 = 0.0;   // square4 only
    double L2p = 0.0;  // square4 only
};

struct LSolution {
    LCoefficients L;
    double relative_residual = 0.0;
};

LSolution solve_L(Geometry g, const std::vector<SectorLabel>& sectors,
                  const std::vector<double>& energies);

struct CouplingCoefficients {
    Geometry geometry = Geometry::linear3;
    double K0 = 0.0;
    double K2_AB = 0.0;
    double K2_AC = 0.0;
    std::optional<double> K4_ABCD;
    std::optional<double> K4_ACBD;
};

CouplingCoefficients L_to_K(const LCoefficients& L, Geometry g);

// Spin Hamiltonians as 2^N matrices, for the L and K forms.
ComplexMatrix spin_hamiltonian(const LCoefficients& L, Geometry g);
ComplexMatrix spin_hamiltonian(const CouplingCoefficients& K);

struct CouplingResult {
    CouplingCoefficients K;
    LCoefficients L;
    std::vector<SectorLabel> sectors;
    std::vector<double> energies;
    double relative_residual = 0.0;
    double displacement = 0.0;
    bool bracket_failed = false;
};

CouplingResult couplings_from_integrals(const IntegralProvider& ints, Geometry g);
CouplingResult compute_couplings(const DimensionlessParams& p, Geometry g, PotentialKind kind);

struct SweepRow {
    DimensionlessParams params;
    std::optional<CouplingResult> result;
    std::string error;
};

// Row-major over (x_b, x_v).
std::vector<SweepRow> sweep(const std::vector<double>& x_b, const std::vector<double>& x_v,
                            double x_c, Geometry g, PotentialKind kind, unsigned threads = 1);

}  // namespace fewspin
