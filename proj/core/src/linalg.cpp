#include "stlkern/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stlkern {

double SymMatrix::trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < n_; ++i) t += at(i, i);
    return t;
}

void SymMatrix::add_diagonal(double value) {
    for (std::size_t i = 0; i < n_; ++i) at(i, i) += value;
}

bool cholesky(SymMatrix& a) {
    const std::size_t n = a.size();
    for (std::size_t j = 0; j < n; ++j) {
        double d = a.at(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= a.at(j, k) * a.at(j, k);
        if (!(d > 0.0) || !std::isfinite(d)) return false;
        const double ljj = std::sqrt(d);
        a.at(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a.at(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= a.at(i, k) * a.at(j, k);
            a.at(i, j) = s / ljj;
        }
    }
    // zero the unused upper triangle so the factor is self-describing
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) a.at(i, j) = 0.0;
    }
    return true;
}

std::vector<double> cholesky_solve(const SymMatrix& chol,
                                   const std::vector<double>& b) {
    const std::size_t n = chol.size();
    if (b.size() != n) throw std::invalid_argument("cholesky_solve: size mismatch");
    std::vector<double> x = b;
    for (std::size_t i = 0; i < n; ++i) {  // L y = b
        double s = x[i];
        for (std::size_t k = 0; k < i; ++k) s -= chol.at(i, k) * x[k];
        x[i] = s / chol.at(i, i);
    }
    for (std::size_t i = n; i-- > 0;) {  // L^T x = y
        double s = x[i];
        for (std::size_t k = i + 1; k < n; ++k) s -= chol.at(k, i) * x[k];
        x[i] = s / chol.at(i, i);
    }
    return x;
}

std::vector<double> solve_spd(SymMatrix a, const std::vector<double>& b) {
    if (!cholesky(a)) {
        throw std::domain_error("solve_spd: matrix is not positive definite");
    }
    return cholesky_solve(a, b);
}

std::vector<double> symmetric_eigenvalues(SymMatrix a) {
    const std::size_t n = a.size();
    if (n == 0) return {};
    // cyclic Jacobi sweeps until off-diagonal mass is negligible
    const double eps = 1e-14;
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) off += a.at(i, j) * a.at(i, j);
        }
        double scale = 0.0;
        for (std::size_t i = 0; i < n; ++i) scale += a.at(i, i) * a.at(i, i);
        if (off <= eps * eps * std::max(scale, 1.0)) break;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a.at(p, q);
                if (apq == 0.0) continue;
                const double app = a.at(p, p);
                const double aqq = a.at(q, q);
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0.0)
                                     ? 1.0 / (theta + std::sqrt(1.0 + theta * theta))
                                     : 1.0 / (theta - std::sqrt(1.0 + theta * theta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a.at(k, p);
                    const double akq = a.at(k, q);
                    a.at(k, p) = c * akp - s * akq;
                    a.at(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a.at(p, k);
                    const double aqk = a.at(q, k);
                    a.at(p, k) = c * apk - s * aqk;
                    a.at(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = a.at(i, i);
    std::sort(eig.begin(), eig.end());
    return eig;
}

std::vector<double> mat_vec(const SymMatrix& a, const std::vector<double>& x) {
    const std::size_t n = a.size();
    if (x.size() != n) throw std::invalid_argument("mat_vec: size mismatch");
    std::vector<double> y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += a.at(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

}  // namespace stlkern
