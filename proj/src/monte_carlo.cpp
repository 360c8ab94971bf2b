#include "fewspin/monte_carlo.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace fewspin {

std::string to_string(Integrand i) {
    switch (i) {
        case Integrand::overlap: return "overlap";
        case Integrand::kinetic: return "kinetic";
        case Integrand::potential: return "potential";
        case Integrand::one_body: return "one_body";
        case Integrand::coulomb: return "coulomb";
    }
    return "?";
}

Integrand parse_integrand(const std::string& s) {
    for (Integrand i : {Integrand::overlap, Integrand::kinetic, Integrand::potential, Integrand::one_body,
                        Integrand::coulomb})
        if (to_string(i) == s) return i;
    throw std::invalid_argument("unknown integrand '" + s + "'");
}

namespace {

const double kOrbitalNorm = std::pow(std::numbers::pi, -0.75);
const double kProposalNorm = std::pow(2.0 * std::numbers::pi, -1.5);

double orbital(const Vec3& r, const Vec3& c) { return kOrbitalNorm * std::exp(-0.5 * dist2(r, c)); }

// -(1/2) laplacian(phi_c)(r) / phi_c(r)
double kinetic_ratio(const Vec3& r, const Vec3& c) { return -0.5 * (dist2(r, c) - 3.0); }

struct Sampler {
    std::mt19937_64 rng;
    std::normal_distribution<double> normal{0.0, 1.0};

    // Draw around `center`; returns the point and its proposal density.
    std::pair<Vec3, double> draw(const Vec3& center) {
        Vec3 u{normal(rng), normal(rng), normal(rng)};
        const double q = kProposalNorm * std::exp(-0.5 * (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]));
        return {Vec3{center[0] + u[0], center[1] + u[1], center[2] + u[2]}, q};
    }
};

}  // namespace

McEstimate mc_oracle(Integrand what, const McInput& in, std::size_t samples, std::uint64_t seed) {
    if (samples < 10000) throw std::invalid_argument("mc_oracle needs at least 1e4 samples");
    Sampler s{std::mt19937_64(seed)};
    const Vec3 p = midpoint(in.c1, in.c2);
    const Vec3 q = midpoint(in.c3, in.c4);
    double sum = 0.0, sum2 = 0.0;
    for (std::size_t k = 0; k < samples; ++k) {
        const auto [r1, q1] = s.draw(p);
        const double rho1 = orbital(r1, in.c1) * orbital(r1, in.c2) / q1;
        double w = 0.0;
        switch (what) {
            case Integrand::overlap: w = rho1; break;
            case Integrand::kinetic: w = rho1 * kinetic_ratio(r1, in.c2); break;
            case Integrand::potential: w = rho1 * in.potential.value(r1); break;
            case Integrand::one_body:
                w = rho1 * (kinetic_ratio(r1, in.c2) + in.potential.value(r1));
                break;
            case Integrand::coulomb: {
                const auto [r2, q2] = s.draw(q);
                const double rho2 = orbital(r2, in.c3) * orbital(r2, in.c4) / q2;
                w = rho1 * rho2 * in.coulomb_strength / std::sqrt(dist2(r1, r2));
                break;
            }
        }
        sum += w;
        sum2 += w * w;
    }
    const double n = static_cast<double>(samples);
    const double mean = sum / n;
    const double var = std::max(0.0, sum2 / n - mean * mean);
    return {mean, std::sqrt(var / (n - 1.0))};
}

MonteCarloIntegrals::MonteCarloIntegrals(const std::vector<Vec3>& orbitals, const ConfiningPotential& potential,
                                         double coulomb_strength, std::size_t samples, std::uint64_t seed)
    : n_(orbitals.size()) {
    s_.assign(n_ * n_, 0.0);
    h_.assign(n_ * n_, 0.0);
    w_.assign(n_ * n_ * n_ * n_, 0.0);
    std::uint64_t counter = 0;
    auto next_seed = [&] { return seed * 1000003u + (counter++); };
    McInput in;
    in.potential = potential;
    in.coulomb_strength = coulomb_strength;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i; j < n_; ++j) {
            in.c1 = orbitals[i];
            in.c2 = orbitals[j];
            s_[i * n_ + j] = s_[j * n_ + i] = mc_oracle(Integrand::overlap, in, samples, next_seed()).value;
            h_[i * n_ + j] = h_[j * n_ + i] = mc_oracle(Integrand::one_body, in, samples, next_seed()).value;
        }
    // Pair (i,j) with i <= j, pairs unordered among themselves.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i; j < n_; ++j) pairs.emplace_back(i, j);
    auto at = [this](std::size_t i, std::size_t j, std::size_t k, std::size_t l) -> double& {
        return w_[((i * n_ + j) * n_ + k) * n_ + l];
    };
    for (std::size_t a = 0; a < pairs.size(); ++a)
        for (std::size_t b = a; b < pairs.size(); ++b) {
            const auto [i, j] = pairs[a];
            const auto [k, l] = pairs[b];
            in.c1 = orbitals[i];
            in.c2 = orbitals[j];
            in.c3 = orbitals[k];
            in.c4 = orbitals[l];
            const double v = mc_oracle(Integrand::coulomb, in, samples, next_seed()).value;
            for (auto [x, y] : {std::pair{i, j}, std::pair{j, i}})
                for (auto [z, t] : {std::pair{k, l}, std::pair{l, k}}) {
                    at(x, y, z, t) = v;
                    at(z, t, x, y) = v;
                }
        }
}

}  // namespace fewspin
