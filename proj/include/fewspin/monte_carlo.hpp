#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fewspin/heitler_london.hpp"

namespace fewspin {

enum class Integrand { overlap, kinetic, potential, one_body, coulomb };

std::string to_string(Integrand i);
Integrand parse_integrand(const std::string& s);

// c1, c2 carry electron 1; c3, c4 carry electron 2 (coulomb only).
struct McInput {
    Vec3 c1{}, c2{}, c3{}, c4{};
    ConfiningPotential potential;
    double coulomb_strength = 1.0;
};

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

// Importance sampling from a Gaussian centered on each orbital product, unit variance per axis.
McEstimate mc_oracle(Integrand what, const McInput& in, std::size_t samples, std::uint64_t seed);

// Every integral estimated by mc_oracle; entry seeds derive from `seed`.
class MonteCarloIntegrals : public IntegralProvider {
public:
    MonteCarloIntegrals(const std::vector<Vec3>& orbitals, const ConfiningPotential& potential,
                        double coulomb_strength, std::size_t samples, std::uint64_t seed);

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

}  // namespace fewspin
