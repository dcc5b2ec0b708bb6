#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "gframe/error.hpp"
#include "gframe/matrix.hpp"

namespace gframe {

using ComplexScalar = std::complex<double>;

// Eigenvalues in descending order; column j of `vectors` pairs with values[j].
struct EigenDecomposition {
    std::vector<double> values;
    Matrix vectors;
};

namespace detail {

inline double offdiag_norm(const Matrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
}

// Orient each eigenvector so its largest-magnitude component is positive;
// ties resolved by the first occurrence. Keeps output deterministic.
inline void fix_column_signs(Matrix& v) {
    for (std::size_t j = 0; j < v.cols(); ++j) {
        std::size_t arg = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < v.rows(); ++i) {
            double m = std::fabs(v(i, j));
            if (m > best) {
                best = m;
                arg = i;
            }
        }
        if (v(arg, j) < 0.0)
            for (std::size_t i = 0; i < v.rows(); ++i) v(i, j) = -v(i, j);
    }
}

} // namespace detail

// Symmetric eigendecomposition by cyclic Jacobi rotations. Sweeps until the
// off-diagonal Frobenius norm falls below tol * ||M||_F.
inline EigenDecomposition sym_eig(const Matrix& m, double tol = 1e-12) {
    if (!m.is_square()) throw NonSymmetric("sym_eig: matrix not square");
    if (!m.all_finite()) throw DomainError("sym_eig: non-finite entry");
    const std::size_t n = m.rows();
    if (n == 0) throw DomainError("sym_eig: empty matrix");

    const double norm_f = m.frobenius_norm();
    double asym = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            asym = std::max(asym, std::fabs(m(i, j) - m(j, i)));
    if (asym > 1e-12 * std::max(norm_f, 1.0))
        throw NonSymmetric("sym_eig: matrix asymmetric beyond tolerance");

    Matrix a = m;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double v = 0.5 * (a(i, j) + a(j, i));
            a(i, j) = a(j, i) = v;
        }
    Matrix v = Matrix::identity(n);

    const double threshold = tol * norm_f;
    const int max_sweeps = 100;
    bool converged = n == 1 || detail::offdiag_norm(a) <= threshold;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double apq = a(p, q);
                if (apq == 0.0) continue;
                double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
                double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;

                double app = a(p, p), aqq = a(q, q);
                a(p, p) = c * c * app - 2.0 * s * c * apq + s * s * aqq;
                a(q, q) = s * s * app + 2.0 * s * c * apq + c * c * aqq;
                a(p, q) = a(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    double akp = a(k, p), akq = a(k, q);
                    a(k, p) = a(p, k) = c * akp - s * akq;
                    a(k, q) = a(q, k) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
        converged = detail::offdiag_norm(a) <= threshold;
    }
    if (!converged)
        throw NoConvergence("sym_eig: Jacobi sweeps exhausted without convergence");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

    EigenDecomposition out;
    out.values.resize(n);
    out.vectors = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = a(order[j], order[j]);
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
    }
    detail::fix_column_signs(out.vectors);
    return out;
}

namespace detail {

// Householder reduction to upper Hessenberg form, in place. Transform is not
// accumulated; callers only need eigenvalues.
inline void hessenberg_reduce(Matrix& h) {
    const std::size_t n = h.rows();
    std::vector<double> u(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double scale = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) scale += std::fabs(h(i, k));
        if (scale == 0.0) continue;

        double sigma = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) {
            u[i] = h(i, k) / scale;
            sigma += u[i] * u[i];
        }
        double alpha = std::sqrt(sigma);
        if (u[k + 1] < 0.0) alpha = -alpha;
        u[k + 1] += alpha;
        double beta = alpha * u[k + 1];
        if (beta == 0.0) continue;

        // H <- P H with P = I - u u^T / beta, acting on rows k+1..n-1.
        for (std::size_t j = 0; j < n; ++j) {
            double g = 0.0;
            for (std::size_t i = k + 1; i < n; ++i) g += u[i] * h(i, j);
            g /= beta;
            for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= g * u[i];
        }
        // H <- H P, acting on columns k+1..n-1.
        for (std::size_t i = 0; i < n; ++i) {
            double g = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) g += h(i, j) * u[j];
            g /= beta;
            for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= g * u[j];
        }
        h(k + 1, k) = -alpha * scale;
        for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
    }
}

} // namespace detail

// All eigenvalues of a general real square matrix: Hessenberg reduction
// followed by Francis double-shift QR with deflation. Returned values are
// sorted by descending real part, then descending imaginary part.
inline std::vector<ComplexScalar> general_eigenvalues(const Matrix& m) {
    if (!m.is_square()) throw DomainError("general_eigenvalues: matrix not square");
    if (!m.all_finite()) throw DomainError("general_eigenvalues: non-finite entry");
    const int n = static_cast<int>(m.rows());
    if (n == 0) throw DomainError("general_eigenvalues: empty matrix");
    if (n > 16) throw DomainError("general_eigenvalues: size above supported limit 16");

    std::vector<ComplexScalar> eig(static_cast<std::size_t>(n));
    if (n == 1) {
        eig[0] = ComplexScalar(m(0, 0), 0.0);
        return eig;
    }

    Matrix h = m;
    detail::hessenberg_reduce(h);

    const double eps = std::numeric_limits<double>::epsilon();
    double norm = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = std::max(i - 1, 0); j < n; ++j) norm += std::fabs(h(i, j));

    int en = n - 1;
    int iters_left = 30 * n;
    double exshift = 0.0;
    int iter = 0;
    const int low = 0;

    while (en >= low) {
        // Look for a single small subdiagonal element.
        int l = en;
        while (l > low) {
            double s = std::fabs(h(l - 1, l - 1)) + std::fabs(h(l, l));
            if (s == 0.0) s = norm;
            if (std::fabs(h(l, l - 1)) <= eps * s) break;
            --l;
        }

        if (l == en) {
            eig[en] = ComplexScalar(h(en, en) + exshift, 0.0);
            --en;
            iter = 0;
            continue;
        }
        if (l == en - 1) {
            double x = h(en, en) + exshift;
            double y = h(en - 1, en - 1) + exshift;
            double w = h(en, en - 1) * h(en - 1, en);
            double p = (y - x) / 2.0;
            double q = p * p + w;
            double z = std::sqrt(std::fabs(q));
            if (q >= 0.0) {
                z = (p >= 0.0) ? p + z : p - z;
                double l1 = x + z;
                double l2 = (z != 0.0) ? x - w / z : l1;
                eig[en - 1] = ComplexScalar(l1, 0.0);
                eig[en] = ComplexScalar(l2, 0.0);
            } else {
                eig[en - 1] = ComplexScalar(x + p, z);
                eig[en] = ComplexScalar(x + p, -z);
            }
            en -= 2;
            iter = 0;
            continue;
        }

        if (iters_left-- <= 0)
            throw NoConvergence("general_eigenvalues: QR iteration limit reached");

        double x = h(en, en);
        double y = h(en - 1, en - 1);
        double w = h(en, en - 1) * h(en - 1, en);

        if (iter == 10 || iter == 20) {
            // Exceptional shift to break symmetric-cycle stalls.
            exshift += x;
            for (int i = low; i <= en; ++i) h(i, i) -= x;
            double s = std::fabs(h(en, en - 1)) + std::fabs(h(en - 1, en - 2));
            x = y = 0.75 * s;
            w = -0.4375 * s * s;
        }
        ++iter;

        // Look for two consecutive small subdiagonal elements.
        int mm = en - 2;
        double p = 0.0, q = 0.0, r = 0.0;
        while (mm >= l) {
            double z = h(mm, mm);
            double rr = x - z;
            double ss = y - z;
            p = (rr * ss - w) / h(mm + 1, mm) + h(mm, mm + 1);
            q = h(mm + 1, mm + 1) - z - rr - ss;
            r = h(mm + 2, mm + 1);
            double s = std::fabs(p) + std::fabs(q) + std::fabs(r);
            p /= s;
            q /= s;
            r /= s;
            if (mm == l) break;
            double tst1 = std::fabs(p) * (std::fabs(h(mm - 1, mm - 1)) + std::fabs(z) +
                                          std::fabs(h(mm + 1, mm + 1)));
            if (std::fabs(h(mm, mm - 1)) * (std::fabs(q) + std::fabs(r)) <= eps * tst1) break;
            --mm;
        }
        for (int i = mm + 2; i <= en; ++i) {
            h(i, i - 2) = 0.0;
            if (i > mm + 2) h(i, i - 3) = 0.0;
        }

        // Double QR step over rows l..en, columns mm..en.
        for (int k = mm; k <= en - 1; ++k) {
            bool notlast = (k != en - 1);
            if (k != mm) {
                p = h(k, k - 1);
                q = h(k + 1, k - 1);
                r = notlast ? h(k + 2, k - 1) : 0.0;
                x = std::fabs(p) + std::fabs(q) + std::fabs(r);
                if (x == 0.0) continue;
                p /= x;
                q /= x;
                r /= x;
            }
            double s = std::sqrt(p * p + q * q + r * r);
            if (p < 0.0) s = -s;
            if (s == 0.0) continue;
            if (k != mm)
                h(k, k - 1) = -s * x;
            else if (l != mm)
                h(k, k - 1) = -h(k, k - 1);
            p += s;
            x = p / s;
            y = q / s;
            double z = r / s;
            q /= p;
            r /= p;

            for (int j = k; j <= en; ++j) {
                double pp = h(k, j) + q * h(k + 1, j);
                if (notlast) pp += r * h(k + 2, j);
                h(k, j) -= pp * x;
                h(k + 1, j) -= pp * y;
                if (notlast) h(k + 2, j) -= pp * z;
            }
            int upper = std::min(en, k + 3);
            for (int i = l; i <= upper; ++i) {
                double pp = x * h(i, k) + y * h(i, k + 1);
                if (notlast) pp += z * h(i, k + 2);
                h(i, k) -= pp;
                h(i, k + 1) -= pp * q;
                if (notlast) h(i, k + 2) -= pp * r;
            }
        }
    }

    std::sort(eig.begin(), eig.end(), [](const ComplexScalar& a, const ComplexScalar& b) {
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    });

    ComplexScalar sum = std::accumulate(eig.begin(), eig.end(), ComplexScalar(0.0, 0.0));
    double tr = m.trace();
    if (std::fabs(sum.real() - tr) + std::fabs(sum.imag()) > 1e-8 * (1.0 + std::fabs(tr)))
        throw NoConvergence("general_eigenvalues: eigenvalue sum deviates from trace");
    return eig;
}

inline double spectral_radius(const Matrix& m) {
    auto eig = general_eigenvalues(m);
    double rho = 0.0;
    for (const auto& z : eig) rho = std::max(rho, std::abs(z));
    return rho;
}

// Largest singular value, via the top eigenvalue of M^T M.
inline double operator_norm(const Matrix& m) {
    if (!m.all_finite()) throw DomainError("operator_norm: non-finite entry");
    if (m.rows() == 0 || m.cols() == 0) return 0.0;
    Matrix mtm = m.transposed() * m;
    auto eig = sym_eig(mtm);
    double top = eig.values.empty() ? 0.0 : eig.values.front();
    return std::sqrt(std::max(top, 0.0));
}

// Orthonormal basis for the near-null eigenspace of a symmetric PSD matrix:
// eigenvectors whose eigenvalue falls below tol * lambda_max. May have zero
// columns.
inline Matrix null_space_basis(const Matrix& m, double tol) {
    auto eig = sym_eig(m);
    const std::size_t n = m.rows();
    double lambda_max = eig.values.front();
    double scale = lambda_max > 0.0 ? lambda_max : 1.0;
    if (eig.values.back() < -tol * scale)
        throw DomainError("null_space_basis: matrix has a significantly negative eigenvalue");

    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < n; ++j)
        if (eig.values[j] < tol * scale) keep.push_back(j);

    Matrix basis(n, keep.size());
    for (std::size_t j = 0; j < keep.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) basis(i, j) = eig.vectors(i, keep[j]);
    return basis;
}

enum class PowerMeanOrder { GreaterEqual, LessEqual, Equal };

// Compares the weighted m-th power mean sum(w a^m)/sum(w) against
// (sum(w a)/sum(w))^m. Equal only when all a_i coincide to 1e-12 relative.
inline PowerMeanOrder power_mean_check(std::span<const double> a, std::span<const double> w,
                                       double m) {
    if (a.empty() || a.size() != w.size())
        throw DomainError("power_mean_check: empty input or size mismatch");
    double amin = a[0], amax = a[0];
    for (double v : a) {
        if (!std::isfinite(v) || v <= 0.0) throw DomainError("power_mean_check: a_i must be positive");
        amin = std::min(amin, v);
        amax = std::max(amax, v);
    }
    for (double v : w)
        if (!std::isfinite(v) || v <= 0.0) throw DomainError("power_mean_check: w_i must be positive");
    if (!std::isfinite(m)) throw DomainError("power_mean_check: exponent not finite");

    if (amax - amin <= 1e-12 * amax) return PowerMeanOrder::Equal;

    double wsum = 0.0, wa = 0.0, wam = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        wsum += w[i];
        wa += w[i] * a[i];
        wam += w[i] * std::pow(a[i], m);
    }
    double lhs = wam / wsum;
    double rhs = std::pow(wa / wsum, m);
    return lhs >= rhs ? PowerMeanOrder::GreaterEqual : PowerMeanOrder::LessEqual;
}

} // namespace gframe
