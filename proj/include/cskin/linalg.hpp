#ifndef CSKIN_LINALG_HPP
#define CSKIN_LINALG_HPP

#include <complex>
#include <span>
#include <vector>

namespace cskin {

using Complex = std::complex<double>;

// Dense square complex matrix, row-major storage. Energies are expressed in
// units of gamma_1D throughout the library.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(int dim) : dim_(dim), a_(static_cast<size_t>(dim) * dim) {}

    int dim() const { return dim_; }
    Complex& operator()(int r, int c) { return a_[static_cast<size_t>(r) * dim_ + c]; }
    const Complex& operator()(int r, int c) const { return a_[static_cast<size_t>(r) * dim_ + c]; }
    Complex* data() { return a_.data(); }
    const Complex* data() const { return a_.data(); }

    double frobenius_norm() const;
    bool all_finite() const;
    Complex trace() const;

private:
    int dim_ = 0;
    std::vector<Complex> a_;
};

// Right eigendecomposition of a general complex matrix. Eigenvalues are
// sorted by ascending real part, ties broken by ascending imaginary part;
// eigenvectors have unit 2-norm and residuals[i] = ||A v_i - w_i v_i||_2.
struct Spectrum {
    std::vector<Complex> eigenvalues;
    std::vector<std::vector<Complex>> eigenvectors;
    std::vector<double> residuals;

    int size() const { return static_cast<int>(eigenvalues.size()); }
};

// Full right eigendecomposition of a general (non-Hermitian, non-symmetric)
// complex matrix. Throws NonConvergence if the QR iteration fails or any
// residual exceeds tol*||A||_F; throws DimensionMismatch for empty input.
Spectrum eig_general(const ComplexMatrix& a, double tol = 1e-10);

// psi(K) = sum_{n=1..N} psi_n exp(-i K n), evaluated at each grid point.
std::vector<Complex> dft_1d(std::span<const Complex> values, std::span<const double> k_grid);

// Square complex grid over [-pi, pi)^2; v[i*size + j] = psi(k1_i, k2_j).
struct Grid2D {
    int size = 0;
    std::vector<Complex> v;

    Complex& at(int i, int j) { return v[static_cast<size_t>(i) * size + j]; }
    const Complex& at(int i, int j) const { return v[static_cast<size_t>(i) * size + j]; }
    static double node(int i, int size);
};

// psi(k1,k2) = sum_{m,n=1..N} psi_mn exp(-i(k1 m + k2 n)) on a uniform
// grid_size x grid_size grid over [-pi, pi)^2. psi_full must be the full
// symmetric N x N amplitude matrix.
Grid2D dft_2d(const ComplexMatrix& psi_full, int grid_size);

} // namespace cskin

#endif
