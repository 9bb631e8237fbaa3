#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "mami/errors.hpp"

namespace mami {

using cplx = std::complex<double>;

// Dense complex matrix, row-major. Small and value-semantic: channel
// matrices here are at most a few hundred by a few tens.
class CMat {
  public:
    CMat() = default;
    CMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static CMat identity(std::size_t n) {
        CMat m(n, n);
        for (std::size_t i = 0; i < n; i++) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<cplx>& data() { return data_; }
    const std::vector<cplx>& data() const { return data_; }

    bool same_shape(const CMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<cplx> data_;
};

CMat multiply(const CMat& a, const CMat& b);
std::vector<cplx> multiply(const CMat& a, const std::vector<cplx>& x);
CMat add(const CMat& a, const CMat& b);
CMat subtract(const CMat& a, const CMat& b);
CMat scale(const CMat& a, cplx s);
CMat transpose(const CMat& a);
CMat conjugate(const CMat& a);
CMat hermitian(const CMat& a);

double frobenius_norm(const CMat& a);
// ||a - b||_F
double frobenius_distance(const CMat& a, const CMat& b);
// ||a - I||_F, a square
double identity_distance(const CMat& a);

// Scales every entry of the left factor's row r by d[r]: diag(d) * a.
CMat diag_left_multiply(const std::vector<cplx>& d, const CMat& a);
// a * diag(d)
CMat diag_right_multiply(const CMat& a, const std::vector<cplx>& d);

}  // namespace mami
