#include "ancr/classifier.hpp"

namespace ancr {

ClassIndex::ClassIndex(std::vector<Eigen::Index> starts, Eigen::Index total)
    : starts_(std::move(starts)), total_(total) {
    if (starts_.empty()) throw EmptyClass("no classes");
    if (starts_.front() != 0) throw Error("class ranges must start at 0");
    for (std::size_t i = 0; i + 1 < starts_.size(); ++i) {
        if (starts_[i] >= starts_[i + 1]) throw EmptyClass("class " + std::to_string(i));
    }
    if (starts_.back() >= total_) throw EmptyClass("last class");
}

Vector class_residuals(const PreparedDictionary& dict, const ClassIndex& idx, const Vector& y,
                       const Vector& c) {
    if (c.size() != dict.atoms())
        throw DimensionMismatch("coding vector length != dictionary atoms");
    if (y.size() != dict.dim())
        throw DimensionMismatch("query length != dictionary dimension");
    if (idx.total() != dict.atoms())
        throw DimensionMismatch("class index total != dictionary atoms");

    const int k = idx.class_count();
    Vector residuals(k);
    for (int i = 0; i < k; ++i) {
        const Eigen::Index s = idx.start(i);
        const Eigen::Index w = idx.size(i);
        residuals(i) = (y - dict.x().middleCols(s, w) * c.segment(s, w)).norm();
    }
    return residuals;
}

int argmin_label(const Vector& residuals) {
    int best = 0;
    for (int i = 1; i < residuals.size(); ++i) {
        if (residuals(i) < residuals(best)) best = i;  // strict: ties keep lowest index
    }
    return best;
}

Prediction classify(const PreparedDictionary& dict, const ClassIndex& idx, const Vector& y,
                    const SolverConfig& cfg, Method method) {
    const double norm = y.norm();
    if (norm <= 1e-12) throw ZeroColumn(0);
    const Vector yn = y / norm;

    const SolveResult sol = solve(dict, yn, cfg, method);
    Prediction pred;
    pred.residuals = class_residuals(dict, idx, yn, sol.c);
    pred.label = argmin_label(pred.residuals);
    return pred;
}

}  // namespace ancr
