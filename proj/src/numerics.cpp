#include "ancr/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <string>

namespace ancr {

namespace {
constexpr double kZeroNormTol = 1e-12;
constexpr double kSymmetryTol = 1e-10;
}  // namespace

void require_finite(const Matrix& m, const char* what) {
    if (!m.allFinite()) throw Error(std::string(what) + " contains NaN/Inf");
}

void require_finite(const Vector& v, const char* what) {
    if (!v.allFinite()) throw Error(std::string(what) + " contains NaN/Inf");
}

Matrix normalize_columns(const Matrix& m) {
    require_finite(m, "matrix");
    Matrix out(m.rows(), m.cols());
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        const double norm = m.col(j).norm();
        if (norm <= kZeroNormTol) throw ZeroColumn(static_cast<std::size_t>(j));
        out.col(j) = m.col(j) / norm;
    }
    return out;
}

SpdFactorization::SpdFactorization(const Matrix& a) {
    if (a.rows() != a.cols())
        throw DimensionMismatch("spd_factorize needs a square matrix");
    const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
    // X'X is symmetric only up to rounding.
    if (asym > kSymmetryTol * (1.0 + a.cwiseAbs().maxCoeff()))
        throw NotPositiveDefinite();
    llt_.compute(Matrix(0.5 * (a + a.transpose())));
    if (llt_.info() != Eigen::Success) throw NotPositiveDefinite();
}

Vector SpdFactorization::solve(const Vector& b) const {
    if (b.size() != dimension())
        throw DimensionMismatch("solve rhs length != factorized dimension");
    return llt_.solve(b);
}

SpdFactorization spd_factorize(const Matrix& a) { return SpdFactorization(a); }

PcaModel pca_fit(const Matrix& data, Eigen::Index target_dim) {
    require_finite(data, "pca data");
    const Eigen::Index d = data.rows();
    const Eigen::Index m = data.cols();
    if (target_dim < 1 || target_dim > std::min(d, m))
        throw DimensionTooLarge("pca target_dim " + std::to_string(target_dim) +
                                " exceeds min(dim, samples)");

    PcaModel model;
    model.mean = data.rowwise().mean();
    Matrix centered = data.colwise() - model.mean;
    const double denom = m > 1 ? static_cast<double>(m - 1) : 1.0;

    model.basis.resize(d, target_dim);
    model.eigenvalues.resize(target_dim);

    if (d <= m) {
        Matrix cov = centered * centered.transpose() / denom;
        Eigen::SelfAdjointEigenSolver<Matrix> eig(cov);
        // Eigen returns ascending order; take the tail reversed.
        for (Eigen::Index k = 0; k < target_dim; ++k) {
            model.basis.col(k) = eig.eigenvectors().col(d - 1 - k);
            model.eigenvalues(k) = std::max(0.0, eig.eigenvalues()(d - 1 - k));
        }
    } else {
        Matrix gram = centered.transpose() * centered / denom;
        Eigen::SelfAdjointEigenSolver<Matrix> eig(gram);
        for (Eigen::Index k = 0; k < target_dim; ++k) {
            const Eigen::Index src = m - 1 - k;
            const double lam = std::max(0.0, eig.eigenvalues()(src));
            model.eigenvalues(k) = lam;
            Vector dir = centered * eig.eigenvectors().col(src);
            const double norm = dir.norm();
            if (norm > kZeroNormTol) {
                model.basis.col(k) = dir / norm;
            } else {
                // Zero-variance direction: fill with any unit vector orthogonal
                // to the columns picked so far (Gram-Schmidt over the basis).
                Vector cand = Vector::Zero(d);
                for (Eigen::Index e = 0; e < d; ++e) {
                    cand.setZero();
                    cand(e) = 1.0;
                    cand -= model.basis.leftCols(k) * (model.basis.leftCols(k).transpose() * cand);
                    if (cand.norm() > 0.5) break;
                }
                model.basis.col(k) = cand / cand.norm();
            }
        }
    }
    return model;
}

Vector pca_project(const PcaModel& model, const Vector& v) {
    if (v.size() != model.input_dim())
        throw DimensionMismatch("pca_project input length != model input_dim");
    return model.basis.transpose() * (v - model.mean);
}

Matrix pca_project(const PcaModel& model, const Matrix& m) {
    if (m.rows() != model.input_dim())
        throw DimensionMismatch("pca_project input rows != model input_dim");
    return model.basis.transpose() * (m.colwise() - model.mean);
}

}  // namespace ancr
