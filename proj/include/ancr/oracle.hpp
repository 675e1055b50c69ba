#pragma once

#include "ancr/solvers.hpp"

namespace ancr {
// Brute-force references, independent of the ADMM/closed-form solve paths.
// Test support plus the `oracle-check` CLI spot audit; tiny instances only.
namespace oracle {

struct GridResult {
    Vector c;
    double objective;
};

// Best point of the simplex lattice {c : c_i = k_i * step, sum c_i = 1} for
// the ridge-coding objective. n <= 4 (TooManyAtoms otherwise).
GridResult grid_qp_simplex(const PreparedDictionary& dict, const Vector& y, double lambda,
                           double step);

// Stationarity residual of a simplex-feasible c for the ridge-coding
// objective: recover the equality multiplier from coordinates with
// c_i > 1e-6, then report the worst KKT violation across all coordinates.
double kkt_certificate_ancr(const PreparedDictionary& dict, const Vector& y, double lambda,
                            const Vector& c);

// Exact affine-constrained minimizer via the bordered (n+1)x(n+1) KKT
// system -- a route that never forms the displaced Gram matrix.
Vector bordered_system_acr(const PreparedDictionary& dict, const Vector& y, double lambda);

}  // namespace oracle
}  // namespace ancr
