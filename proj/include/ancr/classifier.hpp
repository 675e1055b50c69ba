#pragma once

#include <vector>

#include "ancr/solvers.hpp"

namespace ancr {

// Contiguous per-class column ranges [start_i, end_i) covering [0, n).
class ClassIndex {
public:
    ClassIndex(std::vector<Eigen::Index> starts, Eigen::Index total);

    int class_count() const { return static_cast<int>(starts_.size()); }
    Eigen::Index total() const { return total_; }
    Eigen::Index start(int i) const { return starts_.at(static_cast<std::size_t>(i)); }
    Eigen::Index size(int i) const {
        return (i + 1 < class_count() ? starts_[static_cast<std::size_t>(i) + 1] : total_) -
               start(i);
    }

private:
    std::vector<Eigen::Index> starts_;
    Eigen::Index total_;
};

struct Prediction {
    int label = 0;          // argmin of residuals, ties -> lowest class index
    Vector residuals;       // length K, r_i = ||y - X_i c_i||_2
};

// Per-class reconstruction residuals r_i = ||y - X_i c_i||_2 using only
// class i's columns and coefficients.
Vector class_residuals(const PreparedDictionary& dict, const ClassIndex& idx, const Vector& y,
                       const Vector& c);

int argmin_label(const Vector& residuals);

// Alg-2-style pipeline: normalize y, code it over the dictionary with the
// chosen method, then pick the class of least residual. Residuals use c.
Prediction classify(const PreparedDictionary& dict, const ClassIndex& idx, const Vector& y,
                    const SolverConfig& cfg, Method method);

}  // namespace ancr
