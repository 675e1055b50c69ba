#include "ancr/projections.hpp"

#include <algorithm>
#include <vector>

namespace ancr {

Vector project_simplex(const Vector& v) {
    require_finite(v, "vector");
    const Eigen::Index n = v.size();
    if (n < 1) throw DimensionMismatch("project_simplex needs len >= 1");

    std::vector<double> u(v.data(), v.data() + n);
    std::sort(u.begin(), u.end(), std::greater<double>());

    // Largest k with u_k + (1 - sum_{i<=k} u_i)/k > 0.
    double cumsum = 0.0;
    double tau = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        cumsum += u[k];
        const double cand = (cumsum - 1.0) / static_cast<double>(k + 1);
        if (u[k] - cand > 0.0) tau = cand;
    }

    Vector out(n);
    for (Eigen::Index i = 0; i < n; ++i) out(i) = std::max(v(i) - tau, 0.0);
    return out;
}

Vector project_nonnegative(const Vector& v) {
    require_finite(v, "vector");
    return v.cwiseMax(0.0);
}

}  // namespace ancr
