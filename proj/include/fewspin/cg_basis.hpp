#pragma once

#include <vector>

#include "fewspin/matrix.hpp"

namespace fewspin {

// <j, M - ms; 1/2, ms | J M>, everything given as twice the value.
double clebsch_half(int two_j, int two_M, int two_ms, int two_J);

// Partial spins S_1..S_N stored as 2S_k.
using BratteliPath = std::vector<int>;

bool valid_path(const BratteliPath& p);
// Lexicographic in (2S_1, ..., 2S_N), then the fixed reference order for (4,0) and (8,0).
std::vector<BratteliPath> enumerate_paths(std::size_t n_sites, int two_total);
std::size_t path_count(std::size_t n_sites, int two_total);

// Sequential coupling; largest component made positive.
CVector path_to_vector(const BratteliPath& path, int two_sz);

struct SpinPathBasis {
    std::size_t n_sites = 0;
    int two_total = 0;
    int two_sz = 0;
    std::vector<BratteliPath> paths;
    std::vector<CVector> vectors;

    std::size_t size() const { return paths.size(); }
    // Columns are the basis vectors.
    ComplexMatrix as_matrix() const;
};

SpinPathBasis make_path_basis(std::size_t n_sites, int two_total, int two_sz);
SpinPathBasis make_path_basis(std::size_t n_sites, int two_total);
// The 14 singlet states of 8 spins; shared instance.
const SpinPathBasis& singlet_basis_8();

struct CodeStates {
    CVector zero_L;
    CVector one_L;
};
// |0_L> is the (1/2,0,1/2,0) path vector, |1_L> minus the (1/2,1,1/2,0) one.
const CodeStates& code_states();

// Spin swap applied to a state vector.
CVector apply_exchange(const CVector& v, std::size_t n_sites, std::size_t i, std::size_t j);

ComplexMatrix exchange_in_path_basis(const SpinPathBasis& b, std::size_t i, std::size_t j);
// In the 14-dim 8-spin singlet basis, sites 0..7 = A..H.
ComplexMatrix exchange_in_path_basis(std::size_t i, std::size_t j);

// Restriction of a 4-spin operator to span{|0_L>, |1_L>}; throws when it leaks out.
ComplexMatrix encoded_operator_check(const ComplexMatrix& op, double leak_tol = 1e-10);
double code_leakage(const ComplexMatrix& op);

}  // namespace fewspin
