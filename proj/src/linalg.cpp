#include "cskin/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <lapacke.h>

#include "cskin/errors.hpp"

namespace cskin {

double ComplexMatrix::frobenius_norm() const {
    double s = 0;
    for (const auto& z : a_) s += std::norm(z);
    return std::sqrt(s);
}

bool ComplexMatrix::all_finite() const {
    for (const auto& z : a_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

Spectrum eig_general(const ComplexMatrix& a, double tol) {
    const int n = a.dim();
    if (n < 1) throw DimensionMismatch("eig_general: matrix dimension must be >= 1");
    if (tol <= 0) throw InvalidParams("eig_general: tol must be positive");
    if (!a.all_finite()) throw InvalidParams("eig_general: matrix has non-finite entries");

    // LAPACK wants column-major storage.
    std::vector<Complex> acm(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) acm[static_cast<size_t>(j) * n + i] = a(i, j);

    std::vector<Complex> w(n), vr(static_cast<size_t>(n) * n);
    int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'V', n,
                             reinterpret_cast<lapack_complex_double*>(acm.data()), n,
                             reinterpret_cast<lapack_complex_double*>(w.data()), nullptr, 1,
                             reinterpret_cast<lapack_complex_double*>(vr.data()), n);
    if (info != 0)
        throw NonConvergence("eig_general: zgeev failed to converge (info=" + std::to_string(info) + ")");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) {
        if (w[i].real() != w[j].real()) return w[i].real() < w[j].real();
        return w[i].imag() < w[j].imag();
    });

    Spectrum s;
    s.eigenvalues.resize(n);
    s.eigenvectors.assign(n, std::vector<Complex>(n));
    s.residuals.resize(n);

    const double anorm = a.frobenius_norm();
    for (int k = 0; k < n; ++k) {
        const int src = order[k];
        s.eigenvalues[k] = w[src];
        auto& v = s.eigenvectors[k];
        double nrm = 0;
        for (int i = 0; i < n; ++i) {
            v[i] = vr[static_cast<size_t>(src) * n + i];
            nrm += std::norm(v[i]);
        }
        nrm = std::sqrt(nrm);
        for (auto& z : v) z /= nrm;

        double res = 0;
        for (int i = 0; i < n; ++i) {
            Complex y = 0;
            const Complex* row = a.data() + static_cast<size_t>(i) * n;
            for (int j = 0; j < n; ++j) y += row[j] * v[j];
            res += std::norm(y - w[src] * v[i]);
        }
        s.residuals[k] = std::sqrt(res);
        if (s.residuals[k] > tol * anorm)
            throw NonConvergence("eig_general: residual " + std::to_string(s.residuals[k]) +
                                 " exceeds tol*||A||_F");
    }
    return s;
}

std::vector<Complex> dft_1d(std::span<const Complex> values, std::span<const double> k_grid) {
    if (values.empty()) throw EmptyInput("dft_1d: empty input vector");
    std::vector<Complex> out(k_grid.size());
    for (size_t g = 0; g < k_grid.size(); ++g) {
        const double k = k_grid[g];
        Complex s = 0;
        for (size_t n = 0; n < values.size(); ++n)
            s += values[n] * std::polar(1.0, -k * static_cast<double>(n + 1));
        out[g] = s;
    }
    return out;
}

double Grid2D::node(int i, int size) {
    return -std::numbers::pi + 2.0 * std::numbers::pi * i / size;
}

Grid2D dft_2d(const ComplexMatrix& psi_full, int grid_size) {
    const int n = psi_full.dim();
    if (n < 2) throw EmptyInput("dft_2d: need at least a 2x2 amplitude matrix");
    if (grid_size < n) throw InvalidParams("dft_2d: grid_size must be >= N");

    double asym = 0, scale = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            asym = std::max(asym, std::abs(psi_full(i, j) - psi_full(j, i)));
            scale = std::max(scale, std::abs(psi_full(i, j)));
        }
    if (asym > 1e-10 * std::max(scale, 1e-300))
        throw InvalidParams("dft_2d: amplitude matrix is not symmetric");

    // F[g][m] = exp(-i k_g (m+1)); the double sum factorizes into two passes.
    std::vector<Complex> f(static_cast<size_t>(grid_size) * n);
    for (int g = 0; g < grid_size; ++g) {
        const double k = Grid2D::node(g, grid_size);
        for (int m = 0; m < n; ++m)
            f[static_cast<size_t>(g) * n + m] = std::polar(1.0, -k * (m + 1));
    }

    // t[g][j] = sum_m F[g][m] psi[m][j]
    std::vector<Complex> t(static_cast<size_t>(grid_size) * n, Complex(0));
    for (int g = 0; g < grid_size; ++g) {
        Complex* trow = t.data() + static_cast<size_t>(g) * n;
        const Complex* frow = f.data() + static_cast<size_t>(g) * n;
        for (int m = 0; m < n; ++m) {
            const Complex fm = frow[m];
            const Complex* prow = psi_full.data() + static_cast<size_t>(m) * n;
            for (int j = 0; j < n; ++j) trow[j] += fm * prow[j];
        }
    }

    Grid2D out;
    out.size = grid_size;
    out.v.assign(static_cast<size_t>(grid_size) * grid_size, Complex(0));
    for (int g1 = 0; g1 < grid_size; ++g1) {
        const Complex* trow = t.data() + static_cast<size_t>(g1) * n;
        for (int g2 = 0; g2 < grid_size; ++g2) {
            const Complex* frow = f.data() + static_cast<size_t>(g2) * n;
            Complex s = 0;
            for (int j = 0; j < n; ++j) s += trow[j] * frow[j];
            out.at(g1, g2) = s;
        }
    }
    return out;
}

} // namespace cskin
