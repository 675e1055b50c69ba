#include "ancr/oracle.hpp"

#include <Eigen/LU>
#include <cmath>

namespace ancr {
namespace oracle {

namespace {

// Ridge-coding objective through the Gram matrix: c'(G+lambda I)c - 2(X'y)'c + y'y.
struct QuadForm {
    Matrix q;
    Vector lin;
    double constant;

    double eval(const Vector& c) const { return c.dot(q * c) - 2.0 * lin.dot(c) + constant; }
};

QuadForm quad_form(const PreparedDictionary& dict, const Vector& y, double lambda) {
    QuadForm f{dict.gram(), dict.x().transpose() * y, y.squaredNorm()};
    f.q.diagonal().array() += lambda;
    return f;
}

}  // namespace

GridResult grid_qp_simplex(const PreparedDictionary& dict, const Vector& y, double lambda,
                           double step) {
    const Eigen::Index n = dict.atoms();
    if (n > 4) throw TooManyAtoms(static_cast<std::size_t>(n));
    if (!(step > 0.0 && step <= 0.5)) throw ConfigError("grid step must be in (0, 0.5]");
    if (y.size() != dict.dim())
        throw DimensionMismatch("query length != dictionary dimension");

    const QuadForm f = quad_form(dict, y, lambda);
    const long ticks = std::lround(1.0 / step);

    GridResult best{Vector::Zero(n), 0.0};
    bool have = false;
    Vector c(n);
    // Enumerate compositions of `ticks` into n parts; the last coordinate
    // absorbs the remainder so every visited point sums to exactly 1.
    auto visit = [&](auto&& self, Eigen::Index coord, long remaining) -> void {
        if (coord == n - 1) {
            c(coord) = static_cast<double>(remaining) / ticks;
            const double obj = f.eval(c);
            if (!have || obj < best.objective) {
                best = {c, obj};
                have = true;
            }
            return;
        }
        for (long t = 0; t <= remaining; ++t) {
            c(coord) = static_cast<double>(t) / ticks;
            self(self, coord + 1, remaining - t);
        }
    };
    visit(visit, 0, ticks);
    return best;
}

double kkt_certificate_ancr(const PreparedDictionary& dict, const Vector& y, double lambda,
                            const Vector& c) {
    if (c.size() != dict.atoms())
        throw DimensionMismatch("coding vector length != dictionary atoms");
    if (c.minCoeff() < -1e-8 || std::abs(c.sum() - 1.0) > 1e-8)
        throw InfeasibleInput("c is not on the simplex within 1e-8");

    const QuadForm f = quad_form(dict, y, lambda);
    const Vector grad = 2.0 * (f.q * c - f.lin);

    // Stationarity: grad_i + mu = nu_i with nu_i >= 0 and nu_i = 0 where c_i > 0.
    double mu_sum = 0.0;
    int free_count = 0;
    for (Eigen::Index i = 0; i < c.size(); ++i) {
        if (c(i) > 1e-6) {
            mu_sum += -grad(i);
            ++free_count;
        }
    }
    if (free_count == 0) throw InfeasibleInput("no coordinate above 1e-6 on a simplex point");
    const double mu = mu_sum / free_count;

    double residual = 0.0;
    for (Eigen::Index i = 0; i < c.size(); ++i) {
        const double nu = grad(i) + mu;
        if (c(i) > 1e-6) {
            residual = std::max(residual, std::abs(nu));
        } else {
            residual = std::max(residual, std::max(0.0, -nu));
        }
    }
    return residual;
}

Vector bordered_system_acr(const PreparedDictionary& dict, const Vector& y, double lambda) {
    const Eigen::Index n = dict.atoms();
    const QuadForm f = quad_form(dict, y, lambda);

    Matrix kkt = Matrix::Zero(n + 1, n + 1);
    kkt.topLeftCorner(n, n) = 2.0 * f.q;
    kkt.topRightCorner(n, 1).setOnes();
    kkt.bottomLeftCorner(1, n).setOnes();

    Vector rhs(n + 1);
    rhs.head(n) = 2.0 * f.lin;
    rhs(n) = 1.0;

    Eigen::FullPivLU<Matrix> lu(kkt);
    if (!lu.isInvertible()) throw SingularSystem();
    const Vector sol = lu.solve(rhs);
    return sol.head(n);
}

}  // namespace oracle
}  // namespace ancr
