// ── linalg.hpp ──────────────────────────────────────────────────────────────
// Dense symmetric matrices at the scale this library meets (corpora of at
// most a few hundred formulas): Cholesky solves for ridge systems and a
// cyclic Jacobi eigensolver for Gram spectra.  Row-major storage.
// ─────────────────────────────────────────────────────────────────────────────

#pragma once

#include <cstddef>
#include <vector>

namespace stlkern {

class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

    std::size_t size() const { return n_; }
    double& at(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    double at(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    double trace() const;

    // A += value * I
    void add_diagonal(double value);

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

// In-place lower Cholesky attempt; returns false if a pivot is not
// strictly positive (matrix not numerically PD).
bool cholesky(SymMatrix& a);

// Solve L L^T x = b given the factor from cholesky().
std::vector<double> cholesky_solve(const SymMatrix& chol,
                                   const std::vector<double>& b);

// Solve (a) x = b for symmetric positive definite a; throws
// std::domain_error when factorization fails.
std::vector<double> solve_spd(SymMatrix a, const std::vector<double>& b);

// All eigenvalues of a symmetric matrix, ascending (cyclic Jacobi).
std::vector<double> symmetric_eigenvalues(SymMatrix a);

std::vector<double> mat_vec(const SymMatrix& a, const std::vector<double>& x);

}  // namespace stlkern
