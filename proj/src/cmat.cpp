#include "mami/cmat.hpp"

#include <cmath>

namespace mami {

CMat multiply(const CMat& a, const CMat& b) {
    if (a.cols() != b.rows())
        throw DimensionMismatch("multiply: inner dimensions disagree");
    CMat c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); i++) {
        for (std::size_t k = 0; k < a.cols(); k++) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) continue;
            for (std::size_t j = 0; j < b.cols(); j++) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

std::vector<cplx> multiply(const CMat& a, const std::vector<cplx>& x) {
    if (a.cols() != x.size())
        throw DimensionMismatch("multiply: vector length disagrees");
    std::vector<cplx> y(a.rows());
    for (std::size_t i = 0; i < a.rows(); i++) {
        cplx s = 0.0;
        for (std::size_t k = 0; k < a.cols(); k++) s += a(i, k) * x[k];
        y[i] = s;
    }
    return y;
}

CMat add(const CMat& a, const CMat& b) {
    if (!a.same_shape(b)) throw DimensionMismatch("add: shape mismatch");
    CMat c = a;
    for (std::size_t i = 0; i < c.data().size(); i++) c.data()[i] += b.data()[i];
    return c;
}

CMat subtract(const CMat& a, const CMat& b) {
    if (!a.same_shape(b)) throw DimensionMismatch("subtract: shape mismatch");
    CMat c = a;
    for (std::size_t i = 0; i < c.data().size(); i++) c.data()[i] -= b.data()[i];
    return c;
}

CMat scale(const CMat& a, cplx s) {
    CMat c = a;
    for (auto& v : c.data()) v *= s;
    return c;
}

CMat transpose(const CMat& a) {
    CMat t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); i++)
        for (std::size_t j = 0; j < a.cols(); j++) t(j, i) = a(i, j);
    return t;
}

CMat conjugate(const CMat& a) {
    CMat c = a;
    for (auto& v : c.data()) v = std::conj(v);
    return c;
}

CMat hermitian(const CMat& a) {
    CMat h(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); i++)
        for (std::size_t j = 0; j < a.cols(); j++) h(j, i) = std::conj(a(i, j));
    return h;
}

double frobenius_norm(const CMat& a) {
    double s = 0.0;
    for (const auto& v : a.data()) s += std::norm(v);
    return std::sqrt(s);
}

double frobenius_distance(const CMat& a, const CMat& b) {
    if (!a.same_shape(b)) throw DimensionMismatch("frobenius_distance: shape mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.data().size(); i++) s += std::norm(a.data()[i] - b.data()[i]);
    return std::sqrt(s);
}

double identity_distance(const CMat& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); i++)
        for (std::size_t j = 0; j < a.cols(); j++)
            s += std::norm(a(i, j) - (i == j ? cplx{1.0} : cplx{}));
    return std::sqrt(s);
}

CMat diag_left_multiply(const std::vector<cplx>& d, const CMat& a) {
    if (d.size() != a.rows()) throw DimensionMismatch("diag_left_multiply: length mismatch");
    CMat c = a;
    for (std::size_t i = 0; i < a.rows(); i++)
        for (std::size_t j = 0; j < a.cols(); j++) c(i, j) *= d[i];
    return c;
}

CMat diag_right_multiply(const CMat& a, const std::vector<cplx>& d) {
    if (d.size() != a.cols()) throw DimensionMismatch("diag_right_multiply: length mismatch");
    CMat c = a;
    for (std::size_t i = 0; i < a.rows(); i++)
        for (std::size_t j = 0; j < a.cols(); j++) c(i, j) *= d[j];
    return c;
}

}  // namespace mami
