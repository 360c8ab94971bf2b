#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fewspin/matrix.hpp"

namespace fewspin {

// Site 0 is the leftmost tensor factor; bit value 0 is spin up.
enum class PauliAxis { identity = 0, x = 1, y = 2, z = 3 };

char axis_char(PauliAxis a);

// Bit of `site` in computational index `state` for an n-site register.
inline unsigned site_bit(std::size_t state, std::size_t site, std::size_t n_sites) {
    return static_cast<unsigned>((state >> (n_sites - 1 - site)) & 1u);
}

ComplexMatrix pauli(PauliAxis a);
ComplexMatrix embed_pauli(std::size_t n_sites, std::size_t site, PauliAxis axis);
// S_i . S_j with S = sigma/2
ComplexMatrix dot_coupling(std::size_t n_sites, std::size_t i, std::size_t j);
// Spin swap on sites i, j.
ComplexMatrix exchange(std::size_t n_sites, std::size_t i, std::size_t j);
ComplexMatrix total_spin_squared(std::size_t n_sites, const std::vector<std::size_t>& subset);
// Total S_z (diagonal).
ComplexMatrix total_sz(std::size_t n_sites);

struct SpinTerm {
    double coefficient = 0.0;
    // Each factor is S_axis = sigma_axis / 2 on one site; identity contributes 1.
    std::vector<std::pair<std::size_t, PauliAxis>> factors;
};

struct SpinOperatorSpec {
    std::size_t n_sites = 0;
    std::vector<SpinTerm> terms;
};

ComplexMatrix build_operator(const SpinOperatorSpec& spec);

// Coefficients over the 4^n Pauli strings, index base 4 with site 0 most significant.
struct PauliDecomposition {
    std::size_t n_sites = 0;
    std::vector<cplx> coefficients;

    cplx coefficient(const std::vector<PauliAxis>& axes) const;
    static std::string label(std::size_t index, std::size_t n_sites);
    static std::vector<PauliAxis> axes(std::size_t index, std::size_t n_sites);
    double max_imaginary() const;
};

PauliDecomposition pauli_decompose(const ComplexMatrix& m);
ComplexMatrix reconstruct(const PauliDecomposition& d);
// Pauli string as a matrix.
ComplexMatrix pauli_string(const std::vector<PauliAxis>& axes);

}  // namespace fewspin
