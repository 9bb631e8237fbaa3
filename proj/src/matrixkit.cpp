#include "mami/matrixkit.hpp"

#include <cmath>
#include <cstddef>

namespace mami {

namespace {

constexpr double kPivotTol = 1e-12;
constexpr double kDiagTol = 1e-14;

// Forward/back substitution with the Cholesky factor L (lower triangular),
// solving (L L^H) X = B in place.
void cholesky_solve_inplace(const CMat& l, CMat& b) {
    const std::size_t n = l.rows();
    // L y = b
    for (std::size_t col = 0; col < b.cols(); col++) {
        for (std::size_t i = 0; i < n; i++) {
            cplx s = b(i, col);
            for (std::size_t k = 0; k < i; k++) s -= l(i, k) * b(k, col);
            b(i, col) = s / l(i, i);
        }
        // L^H x = y
        for (std::size_t ii = n; ii-- > 0;) {
            cplx s = b(ii, col);
            for (std::size_t k = ii + 1; k < n; k++) s -= std::conj(l(k, ii)) * b(k, col);
            b(ii, col) = s / l(ii, ii);
        }
    }
}

CMat cholesky_lower(const CMat& a) {
    const std::size_t n = a.rows();
    CMat l(n, n);
    double max_diag = 0.0;
    for (std::size_t i = 0; i < n; i++) max_diag = std::max(max_diag, std::abs(a(i, i)));
    for (std::size_t j = 0; j < n; j++) {
        double d = a(j, j).real();
        for (std::size_t k = 0; k < j; k++) d -= std::norm(l(j, k));
        if (!(d > kPivotTol * max_diag))
            throw RankDeficient("cholesky: pivot collapsed at column " + std::to_string(j));
        l(j, j) = std::sqrt(d);
        for (std::size_t i = j + 1; i < n; i++) {
            cplx s = a(i, j);
            for (std::size_t k = 0; k < j; k++) s -= l(i, k) * std::conj(l(j, k));
            l(i, j) = s / l(j, j).real();
        }
    }
    return l;
}

// R^-1 B for upper-triangular R, in place.
void upper_solve_inplace(const CMat& r, CMat& b) {
    const std::size_t n = r.rows();
    for (std::size_t col = 0; col < b.cols(); col++) {
        for (std::size_t ii = n; ii-- > 0;) {
            cplx s = b(ii, col);
            for (std::size_t k = ii + 1; k < n; k++) s -= r(ii, k) * b(k, col);
            b(ii, col) = s / r(ii, ii);
        }
    }
}

}  // namespace

CMat gram(const CMat& a) {
    if (a.empty()) throw DimensionMismatch("gram: empty input");
    const std::size_t m = a.rows(), n = a.cols();
    CMat g(n, n);
    for (std::size_t i = 0; i < n; i++) {
        for (std::size_t j = i; j < n; j++) {
            cplx s = 0.0;
            for (std::size_t r = 0; r < m; r++) s += std::conj(a(r, i)) * a(r, j);
            g(i, j) = s;
            if (i != j) g(j, i) = std::conj(s);
        }
    }
    // exact Hermitian diagonal
    for (std::size_t i = 0; i < n; i++) g(i, i) = g(i, i).real();
    return g;
}

QrFactors qr_mgs(const CMat& a) {
    if (a.empty()) throw DimensionMismatch("qr_mgs: empty input");
    const std::size_t m = a.rows(), n = a.cols();
    if (m < n) throw DimensionMismatch("qr_mgs: more columns than rows");

    CMat q = a;
    CMat r(n, n);
    std::vector<double> col_norm(n, 0.0);
    for (std::size_t j = 0; j < n; j++) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; i++) s += std::norm(a(i, j));
        col_norm[j] = std::sqrt(s);
    }

    for (std::size_t k = 0; k < n; k++) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; i++) s += std::norm(q(i, k));
        const double pivot = std::sqrt(s);
        if (!(pivot > kPivotTol * col_norm[k]) || col_norm[k] == 0.0)
            throw RankDeficient("qr_mgs: pivot collapsed at column " + std::to_string(k));
        r(k, k) = pivot;
        const double inv = 1.0 / pivot;
        for (std::size_t i = 0; i < m; i++) q(i, k) *= inv;
        // orthogonalize the remaining columns against column k
        for (std::size_t j = k + 1; j < n; j++) {
            cplx proj = 0.0;
            for (std::size_t i = 0; i < m; i++) proj += std::conj(q(i, k)) * q(i, j);
            r(k, j) = proj;
            for (std::size_t i = 0; i < m; i++) q(i, j) -= proj * q(i, k);
        }
    }
    return {std::move(q), std::move(r)};
}

CMat neumann_inverse(const CMat& a, std::size_t terms) {
    if (a.rows() != a.cols() || a.empty())
        throw DimensionMismatch("neumann_inverse: square input required");
    const std::size_t n = a.rows();
    for (std::size_t i = 0; i < n; i++)
        if (std::abs(a(i, i)) < kDiagTol)
            throw SingularDiagonal("neumann_inverse: zero diagonal at " + std::to_string(i));

    // B = D^-1 (D - A) has zero diagonal; accumulate sum B^t X0.
    CMat b(n, n), x0(n, n);
    for (std::size_t i = 0; i < n; i++) {
        const cplx inv_d = 1.0 / a(i, i);
        x0(i, i) = inv_d;
        for (std::size_t j = 0; j < n; j++)
            if (i != j) b(i, j) = -a(i, j) * inv_d;
    }
    CMat sum = x0;
    CMat power = x0;
    for (std::size_t t = 1; t < terms; t++) {
        power = multiply(b, power);
        sum = add(sum, power);
    }
    return sum;
}

CMat hpd_inverse(const CMat& a) {
    CMat l = cholesky_lower(a);
    CMat x = CMat::identity(a.rows());
    cholesky_solve_inplace(l, x);
    return x;
}

CMat regularized_pinv(const CMat& g, double beta, InverseEngine engine,
                      std::size_t neumann_terms) {
    if (g.rows() < g.cols())
        throw DimensionMismatch("regularized_pinv: requires rows >= cols");
    if (beta < 0.0) throw DimensionMismatch("regularized_pinv: beta must be >= 0");
    const std::size_t m = g.rows(), k = g.cols();
    const CMat gh = hermitian(g);

    switch (engine) {
        case InverseEngine::QR: {
            if (beta == 0.0) {
                QrFactors f = qr_mgs(g);
                CMat w = hermitian(f.q);
                upper_solve_inplace(f.r, w);
                return w;
            }
            // augment with the regularization rows: [g ; sqrt(beta) I_K]
            CMat aug(m + k, k);
            for (std::size_t i = 0; i < m; i++)
                for (std::size_t j = 0; j < k; j++) aug(i, j) = g(i, j);
            const double rb = std::sqrt(beta);
            for (std::size_t j = 0; j < k; j++) aug(m + j, j) = rb;
            QrFactors f = qr_mgs(aug);
            // W = R^-1 Q1^H with Q1 the top m rows of Q
            CMat q1h(k, m);
            for (std::size_t i = 0; i < m; i++)
                for (std::size_t j = 0; j < k; j++) q1h(j, i) = std::conj(f.q(i, j));
            upper_solve_inplace(f.r, q1h);
            return q1h;
        }
        case InverseEngine::Neumann: {
            CMat a = gram(g);
            for (std::size_t i = 0; i < k; i++) a(i, i) += beta;
            return multiply(neumann_inverse(a, neumann_terms), gh);
        }
        case InverseEngine::Direct:
        default: {
            CMat a = gram(g);
            for (std::size_t i = 0; i < k; i++) a(i, i) += beta;
            return multiply(hpd_inverse(a), gh);
        }
    }
}

double neumann_spectral_radius(const CMat& a, std::size_t iters) {
    const std::size_t n = a.rows();
    CMat b(n, n);
    for (std::size_t i = 0; i < n; i++) {
        const cplx inv_d = 1.0 / a(i, i);
        for (std::size_t j = 0; j < n; j++)
            if (i != j) b(i, j) = -a(i, j) * inv_d;
    }
    std::vector<cplx> v(n, cplx{1.0});
    double lambda = 0.0;
    for (std::size_t it = 0; it < iters; it++) {
        std::vector<cplx> w = multiply(b, v);
        double norm = 0.0;
        for (const auto& x : w) norm += std::norm(x);
        norm = std::sqrt(norm);
        if (norm == 0.0) return 0.0;
        lambda = norm;
        for (auto& x : w) x /= norm;
        v = std::move(w);
    }
    return lambda;
}

}  // namespace mami
