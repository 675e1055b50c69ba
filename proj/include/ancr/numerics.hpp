#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "ancr/errors.hpp"

namespace ancr {

// Column-major dense storage throughout; one sample per column.
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

void require_finite(const Matrix& m, const char* what);
void require_finite(const Vector& v, const char* what);

// Rescales every column to unit l2 norm. Throws ZeroColumn if a column's
// norm is <= 1e-12.
Matrix normalize_columns(const Matrix& m);

// Cached Cholesky factorization of a fixed symmetric positive-definite
// matrix. solve() is const and safe to call from multiple threads.
class SpdFactorization {
public:
    explicit SpdFactorization(const Matrix& a);

    Eigen::Index dimension() const { return llt_.matrixL().rows(); }
    Vector solve(const Vector& b) const;

private:
    Eigen::LLT<Matrix> llt_;
};

SpdFactorization spd_factorize(const Matrix& a);

struct PcaModel {
    Vector mean;    // length input_dim
    Matrix basis;   // input_dim x output_dim, orthonormal columns
    Vector eigenvalues;  // top output_dim covariance eigenvalues, descending

    Eigen::Index input_dim() const { return basis.rows(); }
    Eigen::Index output_dim() const { return basis.cols(); }
};

// Fits PCA on the columns of `data`. Works on the d x d covariance or the
// m x m Gram matrix, whichever is smaller.
PcaModel pca_fit(const Matrix& data, Eigen::Index target_dim);

Vector pca_project(const PcaModel& model, const Vector& v);
Matrix pca_project(const PcaModel& model, const Matrix& m);

}  // namespace ancr
