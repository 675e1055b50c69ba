#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ancr/classifier.hpp"
#include "ancr/numerics.hpp"

namespace ancr {

struct LabeledDataset {
    Matrix features;                        // d x m, one sample per column
    std::vector<int> labels;                // dense ids in [0, K)
    std::vector<std::string> label_names;   // dense id -> original label text
    bool rescaled_from_signed = false;      // [-1,1] source affinely mapped to [0,1]

    int class_count() const { return static_cast<int>(label_names.size()); }
    Eigen::Index dim() const { return features.rows(); }
    Eigen::Index size() const { return features.cols(); }

    std::vector<std::vector<Eigen::Index>> columns_by_class() const;
};

// Dense CSV: "label,f1,f2,..." per line, '#' starts a comment line.
LabeledDataset load_csv(const std::string& path);

// SVM-style sparse lines: "label idx:val idx:val ..." with 1-based indices.
// Dimension is the largest index seen unless forced.
LabeledDataset load_sparse(const std::string& path, Eigen::Index force_dim = 0);

// Dispatches on content (sparse if the second token contains ':'). When
// `usps_rescale` is set and the value range dips below zero, features are
// mapped v -> (v+1)/2 so [-1,1] renditions match [0,1] ones.
LabeledDataset load_auto(const std::string& path, bool usps_rescale = false,
                         Eigen::Index force_dim = 0);

struct SplitSpec {
    std::size_t per_class_train = 1;
    std::uint64_t seed = 0;
    std::size_t repetitions = 1;
};

struct DatasetSplit {
    Matrix train;                 // class-contiguous columns
    ClassIndex index;             // per-class column ranges into train
    Matrix test;
    std::vector<int> test_labels;
};

// Draws `per_class_train` training columns per class without replacement.
// The selection for a class is a pure function of (seed, rep, class id):
// each class gets its own mt19937_64 stream keyed by splitmix64 mixing,
// so results are stable across platforms and process restarts.
DatasetSplit sample_split(const LabeledDataset& train_pool, const LabeledDataset& test_pool,
                          const SplitSpec& spec, std::size_t rep);

// Optional PCA (fit on train only) followed by column l2 normalization of
// both train and test.
DatasetSplit preprocess(const DatasetSplit& split, std::optional<Eigen::Index> pca_dim);

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t rep, std::uint64_t class_id);

}  // namespace ancr
