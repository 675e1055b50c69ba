#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "ancr/numerics.hpp"

namespace ancr {

struct SolverConfig {
    double lambda = 1e-3;   // ridge weight on the coding vector
    double rho = 1.0;       // ADMM penalty
    double tol = 1e-6;      // gate on ||z - c||_inf
    int max_iters = 200;

    void validate() const;
};

struct SolveResult {
    Vector c;
    Vector z;
    int iterations = 0;
    bool converged = false;
    // Index t holds the state after t iterations; index 0 is the all-zero start.
    std::vector<double> primal_residual_history;  // ||z_t - c_t||_inf
    std::vector<double> dual_residual_history;    // rho ||z_t - z_{t-1}||_inf
    // Ridge objective at the feasible iterate z_t (equals c_t for the
    // closed-form solvers).
    std::vector<double> objective_history;
};

// Unit-column dictionary with the query-independent pieces hoisted out of the
// per-query solves: the Gram matrix and the factorizations of the ADMM and
// ridge system matrices. Immutable once built; share freely across threads.
class PreparedDictionary {
public:
    PreparedDictionary(Matrix x, const SolverConfig& cfg);

    const Matrix& x() const { return x_; }
    const Matrix& gram() const { return gram_; }
    Eigen::Index dim() const { return x_.rows(); }
    Eigen::Index atoms() const { return x_.cols(); }
    const SolverConfig& config() const { return cfg_; }

    const SpdFactorization& admm_system() const { return *admm_system_; }
    const SpdFactorization& ridge_system() const { return *ridge_system_; }

    double objective(const Vector& y, const Vector& coef, double lambda) const;

private:
    Matrix x_;
    Matrix gram_;
    SolverConfig cfg_;
    std::unique_ptr<SpdFactorization> admm_system_;   // X'X + ((rho+2*lambda)/2) I
    std::unique_ptr<SpdFactorization> ridge_system_;  // X'X + lambda I
};

PreparedDictionary prepare_dictionary(Matrix x, const SolverConfig& cfg);

// ADMM loop shared by the simplex-constrained and nonnegative models; the
// projection argument is the z-update.
SolveResult solve_admm(const PreparedDictionary& dict, const Vector& y, const SolverConfig& cfg,
                       const std::function<Vector(const Vector&)>& project);

SolveResult solve_ancr(const PreparedDictionary& dict, const Vector& y, const SolverConfig& cfg);
SolveResult solve_ncr(const PreparedDictionary& dict, const Vector& y, const SolverConfig& cfg);

// Ridge coding, closed form: c = (X'X + lambda I)^-1 X'y. The cached
// factorization is used when lambda matches the prepared config.
SolveResult solve_crc(const PreparedDictionary& dict, const Vector& y, double lambda);

// Affine-constrained ridge coding, closed form via the displaced Gram matrix
// M = (X' - 1 y')(X' - 1 y')': c = chat / (1'chat), chat = (M + lambda I)^-1 1.
SolveResult solve_acr(const PreparedDictionary& dict, const Vector& y, double lambda);

enum class Method { ancr, ncr, crc, acr };

const char* method_name(Method m);
Method parse_method(const std::string& name);

SolveResult solve(const PreparedDictionary& dict, const Vector& y, const SolverConfig& cfg,
                  Method method);

}  // namespace ancr
