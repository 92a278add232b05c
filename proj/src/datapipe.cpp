// Copyright 2026 The qcnnpad authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qcnn/datapipe.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <zlib.h>

#include "qcnn/architect.hpp"
#include "qcnn/rng.hpp"

namespace qcnn {

namespace {

constexpr std::uint32_t kImageMagic = 0x00000803; // 2051
constexpr std::uint32_t kLabelMagic = 0x00000801; // 2049

// gzread handles both plain and gzip-compressed files transparently.
class IdxReader {
  public:
    explicit IdxReader(const std::string &path) : path_(path) {
        file_ = gzopen(path.c_str(), "rb");
        if (!file_)
            throw MissingDataError("cannot open IDX file: " + path);
    }
    ~IdxReader() {
        if (file_)
            gzclose(file_);
    }
    IdxReader(const IdxReader &) = delete;
    IdxReader &operator=(const IdxReader &) = delete;

    std::uint32_t read_u32_be() {
        unsigned char buf[4];
        read_exact(buf, 4);
        return (std::uint32_t(buf[0]) << 24) | (std::uint32_t(buf[1]) << 16) |
               (std::uint32_t(buf[2]) << 8) | std::uint32_t(buf[3]);
    }

    void read_exact(void *dst, std::size_t count) {
        const int got = gzread(file_, dst, static_cast<unsigned>(count));
        if (got < 0 || static_cast<std::size_t>(got) != count)
            throw FormatError(path_ + ": truncated at byte offset " +
                              std::to_string(offset_));
        offset_ += count;
    }

    std::size_t offset() const { return offset_; }

  private:
    std::string path_;
    gzFile file_ = nullptr;
    std::size_t offset_ = 0;
};

double sample_std(const std::vector<double> &v) {
    if (v.size() < 2)
        return 0.0;
    double mean = 0;
    for (double x : v)
        mean += x;
    mean /= static_cast<double>(v.size());
    double acc = 0;
    for (double x : v)
        acc += (x - mean) * (x - mean);
    return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

double quantile_sorted(const std::vector<double> &sorted, double q) {
    if (sorted.empty())
        return 0.0;
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

double gauss_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

} // namespace

RawDataset load_mnist(const std::string &idx_image_path,
                      const std::string &idx_label_path) {
    IdxReader images(idx_image_path);
    const std::uint32_t image_magic = images.read_u32_be();
    if (image_magic != kImageMagic)
        throw FormatError(idx_image_path + ": bad magic number at offset 0 (" +
                          std::to_string(image_magic) + ")");
    const std::uint32_t count = images.read_u32_be();
    const std::uint32_t rows = images.read_u32_be();
    const std::uint32_t cols = images.read_u32_be();

    IdxReader labels(idx_label_path);
    const std::uint32_t label_magic = labels.read_u32_be();
    if (label_magic != kLabelMagic)
        throw FormatError(idx_label_path + ": bad magic number at offset 0 (" +
                          std::to_string(label_magic) + ")");
    const std::uint32_t label_count = labels.read_u32_be();
    if (label_count != count)
        throw FormatError(idx_label_path + ": label count " +
                          std::to_string(label_count) +
                          " does not match image count " +
                          std::to_string(count) + " (offset 4)");

    const std::size_t pixels = std::size_t(rows) * cols;
    RawDataset data;
    data.source = DataSource::Mnist;
    data.features.reserve(count);
    data.labels.reserve(count);
    std::vector<unsigned char> buf(pixels);
    for (std::uint32_t i = 0; i < count; ++i) {
        images.read_exact(buf.data(), pixels);
        std::vector<double> feat(pixels);
        for (std::size_t p = 0; p < pixels; ++p)
            feat[p] = static_cast<double>(buf[p]) / 255.0;
        unsigned char label = 0;
        labels.read_exact(&label, 1);
        data.features.push_back(std::move(feat));
        data.labels.push_back(static_cast<int>(label));
    }
    return data;
}

RawDataset load_wdbc(const std::string &csv_path) {
    std::ifstream in(csv_path);
    if (!in)
        throw MissingDataError("cannot open CSV file: " + csv_path);
    RawDataset data;
    data.source = DataSource::Wdbc;
    std::string line;
    int row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty())
            continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ','))
            fields.push_back(field);
        if (row == 1 && !fields.empty()) {
            // Header row: first field is non-numeric.
            char *end = nullptr;
            std::strtod(fields[0].c_str(), &end);
            if (end == fields[0].c_str())
                continue;
        }
        if (fields.size() != 32)
            throw FormatError(csv_path + ": row " + std::to_string(row) +
                              " has " + std::to_string(fields.size()) +
                              " columns, expected 32");
        const std::string &diag = fields[1];
        int label;
        if (diag == "M")
            label = 1;
        else if (diag == "B")
            label = 0;
        else
            throw FormatError(csv_path + ": row " + std::to_string(row) +
                              " has diagnosis '" + diag + "', expected M or B");
        std::vector<double> feat(30);
        for (int c = 0; c < 30; ++c) {
            const std::string &cell = fields[c + 2];
            char *end = nullptr;
            feat[c] = std::strtod(cell.c_str(), &end);
            if (end == cell.c_str() || !std::isfinite(feat[c]))
                throw FormatError(csv_path + ": row " + std::to_string(row) +
                                  " column " + std::to_string(c + 3) +
                                  " is not numeric: '" + cell + "'");
        }
        data.features.push_back(std::move(feat));
        data.labels.push_back(label);
    }
    return data;
}

PcaModel pca_fit(const std::vector<std::vector<double>> &train_features,
                 int k) {
    if (train_features.empty())
        throw std::invalid_argument("PCA needs training samples");
    const int d = static_cast<int>(train_features.front().size());
    const int n = static_cast<int>(train_features.size());
    if (k < 1 || k > d)
        throw std::invalid_argument("PCA dimension k out of range");
    if (n < k)
        throw std::invalid_argument("PCA needs at least k training rows");

    Eigen::MatrixXd X(n, d);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j)
            X(i, j) = train_features[i][j];
    PcaModel model;
    model.mean = X.colwise().mean();
    X.rowwise() -= model.mean.transpose();

    Eigen::BDCSVD<Eigen::MatrixXd> svd(X, Eigen::ComputeThinV);
    model.components = svd.matrixV().leftCols(k);
    for (int c = 0; c < k; ++c) {
        Eigen::Index imax = 0;
        model.components.col(c).cwiseAbs().maxCoeff(&imax);
        if (model.components(imax, c) < 0)
            model.components.col(c) = -model.components.col(c);
    }
    return model;
}

std::vector<double> pca_transform(const PcaModel &model,
                                  const std::vector<double> &features) {
    if (static_cast<Eigen::Index>(features.size()) != model.mean.size())
        throw std::invalid_argument("feature dimension mismatch");
    Eigen::VectorXd x(features.size());
    for (std::size_t i = 0; i < features.size(); ++i)
        x(static_cast<Eigen::Index>(i)) = features[i];
    Eigen::VectorXd y = model.components.transpose() * (x - model.mean);
    return {y.data(), y.data() + y.size()};
}

KdeModel kde_fit(const std::vector<std::vector<double>> &train_features) {
    if (train_features.empty())
        throw std::invalid_argument("KDE needs training samples");
    const std::size_t d = train_features.front().size();
    const double n = static_cast<double>(train_features.size());
    KdeModel model;
    model.features.resize(d);
    for (std::size_t j = 0; j < d; ++j) {
        auto &f = model.features[j];
        f.train_values.reserve(train_features.size());
        for (const auto &row : train_features)
            f.train_values.push_back(row[j]);
        std::vector<double> sorted = f.train_values;
        std::sort(sorted.begin(), sorted.end());
        const double sigma = sample_std(f.train_values);
        const double iqr =
            quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
        double basis = sigma;
        if (iqr > 0)
            basis = std::min(sigma, iqr / 1.34);
        f.bandwidth = 0.9 * basis * std::pow(n, -0.2);
        f.degenerate = !(f.bandwidth > 0);
    }
    return model;
}

std::vector<double> kde_transform(const KdeModel &model,
                                  const std::vector<double> &features) {
    if (features.size() != model.features.size())
        throw std::invalid_argument("feature dimension mismatch");
    std::vector<double> out(features.size());
    for (std::size_t j = 0; j < features.size(); ++j) {
        const auto &f = model.features[j];
        if (f.degenerate) {
            out[j] = 0.5;
            continue;
        }
        double acc = 0;
        for (double x : f.train_values)
            acc += gauss_cdf((features[j] - x) / f.bandwidth);
        out[j] = acc / static_cast<double>(f.train_values.size());
    }
    return out;
}

PadMode pad_mode_from_string(const std::string &name) {
    if (name == "none")
        return PadMode::None;
    if (name == "zero")
        return PadMode::Zero;
    if (name == "periodic")
        return PadMode::Periodic;
    throw ConfigError("unknown pad mode: " + name);
}

PureState amplitude_encode(const std::vector<double> &features, PadMode mode,
                           int target_qubits) {
    const std::size_t n = features.size();
    if (n == 0)
        throw std::invalid_argument("empty feature vector");
    if (target_qubits < 1)
        throw std::invalid_argument("target_qubits must be >= 1");
    const std::size_t dim = std::size_t{1} << target_qubits;
    if (n > dim)
        throw std::invalid_argument("feature vector does not fit in " +
                                    std::to_string(target_qubits) + " qubits");
    if (mode == PadMode::None &&
        (std::size_t{1} << ceil_log2(static_cast<int>(n))) != dim)
        throw std::invalid_argument(
            "pad mode 'none' requires the minimal qubit register");

    Vector amps = Vector::Zero(static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < dim; ++i) {
        if (i < n)
            amps(static_cast<Eigen::Index>(i)) = features[i];
        else if (mode == PadMode::Periodic)
            amps(static_cast<Eigen::Index>(i)) = features[i % n];
    }
    const double norm = amps.norm();
    if (norm <= 0)
        throw ValidationError("cannot encode the all-zero feature vector");
    amps /= norm;
    return {target_qubits, std::move(amps)};
}

Splits make_splits(const RawDataset &dataset, const SplitSpec &spec,
                   const EncodeOptions &options) {
    std::vector<int> pool;
    for (std::size_t i = 0; i < dataset.labels.size(); ++i)
        if (dataset.labels[i] == spec.label_pair[0] ||
            dataset.labels[i] == spec.label_pair[1])
            pool.push_back(static_cast<int>(i));

    const int need = spec.train_size + spec.val_size + spec.test_size;
    if (static_cast<int>(pool.size()) < need)
        throw std::invalid_argument(
            "not enough samples for the requested splits: need " +
            std::to_string(need) + ", have " + std::to_string(pool.size()) +
            " with labels {" + std::to_string(spec.label_pair[0]) + "," +
            std::to_string(spec.label_pair[1]) + "}");

    Rng rng(spec.seed);
    rng.shuffle(pool);

    std::vector<int> idx_train(pool.begin(), pool.begin() + spec.train_size);
    std::vector<int> idx_val(pool.begin() + spec.train_size,
                             pool.begin() + spec.train_size + spec.val_size);
    std::vector<int> idx_test(pool.begin() + spec.train_size + spec.val_size,
                              pool.begin() + need);

    // Transforms are fitted on the training subset only.
    PcaModel pca;
    KdeModel kde;
    if (options.apply_pca) {
        std::vector<std::vector<double>> train_feats;
        train_feats.reserve(idx_train.size());
        for (int i : idx_train)
            train_feats.push_back(dataset.features[i]);
        pca = pca_fit(train_feats, options.pca_dim);
    }
    if (options.apply_kde) {
        std::vector<std::vector<double>> train_feats;
        train_feats.reserve(idx_train.size());
        for (int i : idx_train) {
            train_feats.push_back(options.apply_pca
                                      ? pca_transform(pca, dataset.features[i])
                                      : dataset.features[i]);
        }
        kde = kde_fit(train_feats);
    }

    auto encode = [&](const std::vector<int> &indices) {
        std::vector<EncodedSample> out;
        out.reserve(indices.size());
        for (int i : indices) {
            std::vector<double> feat = dataset.features[i];
            if (options.apply_pca)
                feat = pca_transform(pca, feat);
            if (options.apply_kde)
                feat = kde_transform(kde, feat);
            EncodedSample s{
                amplitude_encode(feat, options.pad, options.target_qubits),
                dataset.labels[i] == spec.label_pair[0] ? 1 : -1, i};
            out.push_back(std::move(s));
        }
        return out;
    };

    Splits splits;
    splits.train = encode(idx_train);
    splits.val = encode(idx_val);
    splits.test = encode(idx_test);
    return splits;
}

} // namespace qcnn
