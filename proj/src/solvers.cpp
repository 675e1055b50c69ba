#include "ancr/solvers.hpp"

#include <cmath>
#include <string>

#include "ancr/projections.hpp"

namespace ancr {

void SolverConfig::validate() const {
    if (!(lambda > 0.0)) throw ConfigError("lambda must be > 0");
    if (!(rho > 0.0)) throw ConfigError("rho must be > 0");
    if (!(tol > 0.0)) throw ConfigError("tol must be > 0");
    if (max_iters < 1) throw ConfigError("max_iters must be >= 1");
}

PreparedDictionary::PreparedDictionary(Matrix x, const SolverConfig& cfg)
    : x_(std::move(x)), cfg_(cfg) {
    cfg_.validate();
    require_finite(x_, "dictionary");
    if (x_.rows() < 1 || x_.cols() < 1)
        throw DimensionMismatch("dictionary must be nonempty");
    for (Eigen::Index j = 0; j < x_.cols(); ++j) {
        if (std::abs(x_.col(j).norm() - 1.0) > 1e-6)
            throw Error("dictionary column " + std::to_string(j) + " is not unit-norm");
    }
    gram_ = x_.transpose() * x_;
    const double shift = (cfg_.rho + 2.0 * cfg_.lambda) / 2.0;
    Matrix admm = gram_;
    admm.diagonal().array() += shift;
    admm_system_ = std::make_unique<SpdFactorization>(admm);
    Matrix ridge = gram_;
    ridge.diagonal().array() += cfg_.lambda;
    ridge_system_ = std::make_unique<SpdFactorization>(ridge);
}

double PreparedDictionary::objective(const Vector& y, const Vector& coef, double lambda) const {
    const Vector r = y - x_ * coef;
    return r.squaredNorm() + lambda * coef.squaredNorm();
}

PreparedDictionary prepare_dictionary(Matrix x, const SolverConfig& cfg) {
    return PreparedDictionary(std::move(x), cfg);
}

SolveResult solve_admm(const PreparedDictionary& dict, const Vector& y, const SolverConfig& cfg,
                       const std::function<Vector(const Vector&)>& project) {
    cfg.validate();
    if (y.size() != dict.dim())
        throw DimensionMismatch("query length != dictionary dimension");
    require_finite(y, "query");

    const Eigen::Index n = dict.atoms();
    const Vector xty = dict.x().transpose() * y;

    SolveResult res;
    Vector c = Vector::Zero(n);
    Vector z = Vector::Zero(n);
    Vector delta = Vector::Zero(n);

    res.primal_residual_history.push_back(0.0);
    res.dual_residual_history.push_back(0.0);
    res.objective_history.push_back(dict.objective(y, c, cfg.lambda));

    for (int t = 0; t < cfg.max_iters; ++t) {
        c = dict.admm_system().solve(xty + 0.5 * (cfg.rho * z + delta));
        const Vector z_prev = z;
        z = project(c - delta / cfg.rho);
        delta += cfg.rho * (z - c);

        const double primal = (z - c).lpNorm<Eigen::Infinity>();
        const double dual = cfg.rho * (z - z_prev).lpNorm<Eigen::Infinity>();
        res.primal_residual_history.push_back(primal);
        res.dual_residual_history.push_back(dual);
        res.objective_history.push_back(dict.objective(y, z, cfg.lambda));
        res.iterations = t + 1;

        // Gating on the primal residual alone stops one step in whenever the
        // projection leaves c untouched (z = c exactly, e.g. a nonnegative c
        // under the orthant projection) long before the fixed point; the dual
        // residual must vanish too.
        if (primal <= cfg.tol && dual <= cfg.tol) {
            res.converged = true;
            break;
        }
    }

    res.c = std::move(c);
    res.z = std::move(z);
    return res;
}

SolveResult solve_ancr(const PreparedDictionary& dict, const Vector& y, const SolverConfig& cfg) {
    return solve_admm(dict, y, cfg, [](const Vector& v) { return project_simplex(v); });
}

SolveResult solve_ncr(const PreparedDictionary& dict, const Vector& y, const SolverConfig& cfg) {
    return solve_admm(dict, y, cfg, [](const Vector& v) { return project_nonnegative(v); });
}

SolveResult solve_crc(const PreparedDictionary& dict, const Vector& y, double lambda) {
    if (!(lambda > 0.0)) throw ConfigError("lambda must be > 0");
    if (y.size() != dict.dim())
        throw DimensionMismatch("query length != dictionary dimension");
    require_finite(y, "query");

    const Vector xty = dict.x().transpose() * y;
    SolveResult res;
    if (lambda == dict.config().lambda) {
        res.c = dict.ridge_system().solve(xty);
    } else {
        Matrix sys = dict.gram();
        sys.diagonal().array() += lambda;
        res.c = SpdFactorization(sys).solve(xty);
    }
    res.z = res.c;
    res.iterations = 1;
    res.converged = true;
    res.objective_history.push_back(dict.objective(y, res.c, lambda));
    return res;
}

SolveResult solve_acr(const PreparedDictionary& dict, const Vector& y, double lambda) {
    if (!(lambda > 0.0)) throw ConfigError("lambda must be > 0");
    if (y.size() != dict.dim())
        throw DimensionMismatch("query length != dictionary dimension");
    require_finite(y, "query");

    const Eigen::Index n = dict.atoms();
    // M = (X' - 1 y')(X' - 1 y')' expanded through the cached Gram matrix.
    const Vector xty = dict.x().transpose() * y;
    Matrix m = dict.gram();
    m.noalias() -= xty * Vector::Ones(n).transpose();
    m.noalias() -= Vector::Ones(n) * xty.transpose();
    m.array() += y.squaredNorm();
    m.diagonal().array() += lambda;

    const Vector chat = SpdFactorization(m).solve(Vector::Ones(n));
    const double total = chat.sum();
    if (std::abs(total) <= 1e-12) throw DegenerateAffineSolution();

    SolveResult res;
    res.c = chat / total;
    res.z = res.c;
    res.iterations = 1;
    res.converged = true;
    res.objective_history.push_back(dict.objective(y, res.c, lambda));
    return res;
}

const char* method_name(Method m) {
    switch (m) {
        case Method::ancr: return "ancr";
        case Method::ncr: return "ncr";
        case Method::crc: return "crc";
        case Method::acr: return "acr";
    }
    return "?";
}

Method parse_method(const std::string& name) {
    if (name == "ancr") return Method::ancr;
    if (name == "ncr") return Method::ncr;
    if (name == "crc") return Method::crc;
    if (name == "acr") return Method::acr;
    throw ConfigError("unknown method '" + name + "' (expected ancr|ncr|crc|acr)");
}

SolveResult solve(const PreparedDictionary& dict, const Vector& y, const SolverConfig& cfg,
                  Method method) {
    switch (method) {
        case Method::ancr: return solve_ancr(dict, y, cfg);
        case Method::ncr: return solve_ncr(dict, y, cfg);
        case Method::crc: return solve_crc(dict, y, cfg.lambda);
        case Method::acr: return solve_acr(dict, y, cfg.lambda);
    }
    throw Error("unreachable");
}

}  // namespace ancr
