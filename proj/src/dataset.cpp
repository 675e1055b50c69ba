#include "ancr/dataset.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

namespace ancr {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& path, std::size_t line, const std::string& tok) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError(path, line, "bad number '" + tok + "'");
    }
}

struct RawSamples {
    std::vector<std::vector<double>> rows;  // one sample per row
    std::vector<std::string> labels;
};

LabeledDataset finish(const std::string& path, RawSamples raw) {
    if (raw.rows.empty()) throw DataError(path + ": no samples");
    const Eigen::Index d = static_cast<Eigen::Index>(raw.rows.front().size());
    const Eigen::Index m = static_cast<Eigen::Index>(raw.rows.size());
    if (d < 1) throw DataError(path + ": zero-dimensional samples");

    // Dense relabeling; numeric labels sort numerically when possible.
    std::map<std::string, int> id_of;
    for (const auto& l : raw.labels) id_of.emplace(l, 0);
    {
        std::vector<std::string> keys;
        for (auto& [k, v] : id_of) keys.push_back(k);
        const bool all_numeric = std::all_of(keys.begin(), keys.end(), [](const std::string& s) {
            char* end = nullptr;
            std::strtod(s.c_str(), &end);
            return end && *end == '\0';
        });
        if (all_numeric) {
            std::sort(keys.begin(), keys.end(), [](const std::string& a, const std::string& b) {
                return std::stod(a) < std::stod(b);
            });
        }
        for (std::size_t i = 0; i < keys.size(); ++i) id_of[keys[i]] = static_cast<int>(i);
        LabeledDataset ds;
        ds.label_names = keys;
        ds.features.resize(d, m);
        ds.labels.resize(static_cast<std::size_t>(m));
        for (Eigen::Index j = 0; j < m; ++j) {
            const auto& row = raw.rows[static_cast<std::size_t>(j)];
            for (Eigen::Index i = 0; i < d; ++i) ds.features(i, j) = row[static_cast<std::size_t>(i)];
            ds.labels[static_cast<std::size_t>(j)] = id_of[raw.labels[static_cast<std::size_t>(j)]];
        }
        require_finite(ds.features, path.c_str());
        return ds;
    }
}

}  // namespace

std::vector<std::vector<Eigen::Index>> LabeledDataset::columns_by_class() const {
    std::vector<std::vector<Eigen::Index>> by_class(static_cast<std::size_t>(class_count()));
    for (Eigen::Index j = 0; j < size(); ++j)
        by_class[static_cast<std::size_t>(labels[static_cast<std::size_t>(j)])].push_back(j);
    return by_class;
}

LabeledDataset load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);

    RawSamples raw;
    std::string line;
    std::size_t lineno = 0;
    std::size_t dim = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;

        std::vector<double> feats;
        std::string label;
        std::stringstream ss(line);
        std::string tok;
        bool first = true;
        while (std::getline(ss, tok, ',')) {
            tok = trim(tok);
            if (first) {
                if (tok.empty()) throw ParseError(path, lineno, "missing label");
                label = tok;
                first = false;
            } else {
                feats.push_back(parse_double(path, lineno, tok));
            }
        }
        if (first) throw ParseError(path, lineno, "empty record");
        if (feats.empty()) throw ParseError(path, lineno, "no features");
        if (dim == 0) dim = feats.size();
        if (feats.size() != dim) throw InconsistentDimension(path, lineno, dim, feats.size());
        raw.rows.push_back(std::move(feats));
        raw.labels.push_back(std::move(label));
    }
    return finish(path, std::move(raw));
}

LabeledDataset load_sparse(const std::string& path, Eigen::Index force_dim) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);

    std::vector<std::vector<std::pair<Eigen::Index, double>>> entries;
    std::vector<std::string> labels;
    std::string line;
    std::size_t lineno = 0;
    Eigen::Index max_idx = force_dim;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;

        std::stringstream ss(line);
        std::string tok;
        if (!(ss >> tok)) throw ParseError(path, lineno, "empty record");
        labels.push_back(tok);
        std::vector<std::pair<Eigen::Index, double>> sample;
        while (ss >> tok) {
            const auto colon = tok.find(':');
            if (colon == std::string::npos)
                throw ParseError(path, lineno, "expected idx:val, got '" + tok + "'");
            const long idx = std::strtol(tok.substr(0, colon).c_str(), nullptr, 10);
            if (idx < 1) throw ParseError(path, lineno, "indices are 1-based");
            if (force_dim > 0 && idx > force_dim)
                throw InconsistentDimension(path, lineno, static_cast<std::size_t>(force_dim),
                                            static_cast<std::size_t>(idx));
            const double v = parse_double(path, lineno, tok.substr(colon + 1));
            sample.emplace_back(static_cast<Eigen::Index>(idx) - 1, v);
            max_idx = std::max(max_idx, static_cast<Eigen::Index>(idx));
        }
        entries.push_back(std::move(sample));
    }
    if (entries.empty()) throw DataError(path + ": no samples");
    if (max_idx < 1) throw DataError(path + ": all samples empty, dimension unknown");

    RawSamples raw;
    raw.labels = std::move(labels);
    for (auto& sample : entries) {
        std::vector<double> row(static_cast<std::size_t>(max_idx), 0.0);
        for (auto& [i, v] : sample) row[static_cast<std::size_t>(i)] = v;
        raw.rows.push_back(std::move(row));
    }
    return finish(path, std::move(raw));
}

LabeledDataset load_auto(const std::string& path, bool usps_rescale, Eigen::Index force_dim) {
    bool sparse = false;
    {
        std::ifstream in(path);
        if (!in) throw DataError("cannot open " + path);
        std::string line;
        while (std::getline(in, line)) {
            line = trim(line);
            if (line.empty() || line[0] == '#') continue;
            sparse = line.find(':') != std::string::npos;
            break;
        }
    }
    LabeledDataset ds = sparse ? load_sparse(path, force_dim) : load_csv(path);
    if (usps_rescale && ds.features.minCoeff() < -1e-9) {
        ds.features = (ds.features.array() + 1.0) / 2.0;
        ds.rescaled_from_signed = true;
    }
    return ds;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t rep, std::uint64_t class_id) {
    return splitmix64(splitmix64(splitmix64(seed) ^ rep) ^ class_id);
}

DatasetSplit sample_split(const LabeledDataset& train_pool, const LabeledDataset& test_pool,
                          const SplitSpec& spec, std::size_t rep) {
    if (spec.per_class_train < 1) throw ConfigError("per_class_train must be >= 1");
    if (train_pool.dim() != test_pool.dim())
        throw DimensionMismatch("train/test feature dimensions differ");
    if (test_pool.class_count() > train_pool.class_count())
        throw DataError("test pool has classes absent from the training pool");

    const auto by_class = train_pool.columns_by_class();
    const int k = train_pool.class_count();
    const Eigen::Index n_train = static_cast<Eigen::Index>(spec.per_class_train) * k;

    Matrix train(train_pool.dim(), n_train);
    std::vector<Eigen::Index> starts(static_cast<std::size_t>(k));
    Eigen::Index col = 0;
    for (int cls = 0; cls < k; ++cls) {
        const auto& pool = by_class[static_cast<std::size_t>(cls)];
        if (pool.size() < spec.per_class_train)
            throw ClassTooSmall(cls, pool.size(), spec.per_class_train);
        starts[static_cast<std::size_t>(cls)] = col;

        // Partial Fisher-Yates with explicit modulo draws; mt19937_64's output
        // sequence is standard-specified, so this is reproducible everywhere.
        std::mt19937_64 eng(derive_stream(spec.seed, rep, static_cast<std::uint64_t>(cls)));
        std::vector<Eigen::Index> deck(pool);
        std::vector<Eigen::Index> chosen;
        for (std::size_t i = 0; i < spec.per_class_train; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(eng() % (deck.size() - i));
            std::swap(deck[i], deck[j]);
            chosen.push_back(deck[i]);
        }
        std::sort(chosen.begin(), chosen.end());
        for (Eigen::Index src : chosen) train.col(col++) = train_pool.features.col(src);
    }
    return DatasetSplit{std::move(train), ClassIndex(std::move(starts), n_train),
                        test_pool.features, test_pool.labels};
}

DatasetSplit preprocess(const DatasetSplit& split, std::optional<Eigen::Index> pca_dim) {
    DatasetSplit out = split;
    if (pca_dim) {
        const PcaModel model = pca_fit(split.train, *pca_dim);
        out.train = pca_project(model, split.train);
        out.test = pca_project(model, split.test);
    }
    out.train = normalize_columns(out.train);
    out.test = normalize_columns(out.test);
    return out;
}

}  // namespace ancr
