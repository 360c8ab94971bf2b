#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace fewspin {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

// Dense row-major complex matrix.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(const CVector& d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    const std::vector<cplx>& entries() const { return data_; }

    ComplexMatrix adjoint() const;
    cplx trace() const;
    double max_abs() const;
    double frobenius_norm() const;
    // Largest |M - M^dagger| entry.
    double hermiticity_defect() const;

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(cplx s);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
ComplexMatrix operator*(double s, ComplexMatrix a);
CVector operator*(const ComplexMatrix& a, const CVector& v);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix power(const ComplexMatrix& a, unsigned n);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
// Sub-block with the given row and column indices.
ComplexMatrix submatrix(const ComplexMatrix& a, const std::vector<std::size_t>& rows,
                        const std::vector<std::size_t>& cols);

cplx inner(const CVector& a, const CVector& b);  // <a|b>
double norm(const CVector& v);

struct HermitianEigen {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // columns
};

// Cyclic complex Jacobi. Throws std::domain_error when h is not Hermitian to tol.
HermitianEigen eigh(const ComplexMatrix& h, double hermitian_tol = 1e-12);

// exp(i theta H) for Hermitian H.
ComplexMatrix exp_i_hermitian(const ComplexMatrix& h, double theta);

struct PhaseComparison {
    double deviation;  // max |a - phase*b|
    cplx phase;
};

// Compares a to b up to one global phase, taken from b's largest entry.
PhaseComparison compare_up_to_phase(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace fewspin
