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
/**
 * @file
 * Dataset ingestion (MNIST IDX, WDBC CSV), PCA and per-feature Gaussian-CDF
 * (KDE) preprocessing, deterministic splits, and amplitude encoding with
 * zero / periodic padding.
 */
#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "qcnn/simcore.hpp"

namespace qcnn {

enum class DataSource { Mnist, Wdbc };

struct RawDataset {
    DataSource source = DataSource::Mnist;
    std::vector<std::vector<double>> features;
    std::vector<int> labels;
};

/// Reads an MNIST-layout IDX image/label pair (plain or gzip-compressed),
/// scaling pixels to [0,1]. Throws FormatError (with the byte offset) on a
/// bad magic number, truncation, or an image/label count mismatch.
RawDataset load_mnist(const std::string &idx_image_path,
                      const std::string &idx_label_path);

/// Reads the UCI WDBC layout: id, diagnosis (M/B), 30 numeric features per
/// row; a header row is skipped when its first field is non-numeric.
/// M maps to class 1, B to class 0. Throws FormatError with the row number.
RawDataset load_wdbc(const std::string &csv_path);

struct PcaModel {
    Eigen::VectorXd mean;
    Eigen::MatrixXd components; // d x k, columns ordered by singular value
};

/// Fits mean + top-k right singular vectors on the training matrix. The
/// largest-magnitude entry of every component is made positive.
PcaModel pca_fit(const std::vector<std::vector<double>> &train_features,
                 int k = 30);

std::vector<double> pca_transform(const PcaModel &model,
                                  const std::vector<double> &features);

struct KdeModel {
    struct Feature {
        double bandwidth = 0;
        bool degenerate = false; // constant training feature; maps to 0.5
        std::vector<double> train_values;
    };
    std::vector<Feature> features;
};

/// Per-feature Gaussian-kernel CDF transform fitted on the training set;
/// bandwidth by Silverman's rule h = 0.9 min(sigma, IQR/1.34) n^(-1/5).
KdeModel kde_fit(const std::vector<std::vector<double>> &train_features);

/// value -> mean_j Phi((v - x_j) / h), strictly inside (0,1) for finite v.
std::vector<double> kde_transform(const KdeModel &model,
                                  const std::vector<double> &features);

enum class PadMode { None, Zero, Periodic };

PadMode pad_mode_from_string(const std::string &name);

/// Normalized amplitude encoding of a feature vector onto target_qubits
/// wires. Zero mode appends zeros; periodic mode tiles the vector цyclically
/// (truncating the last repetition); none requires the minimal register.
/// Throws ValidationError for an all-zero vector and std::invalid_argument
/// when the vector does not fit.
PureState amplitude_encode(const std::vector<double> &features, PadMode mode,
                           int target_qubits);

struct SplitSpec {
    int train_size = 0;
    int val_size = 0;
    int test_size = 0;
    std::uint64_t seed = 0;
    std::array<int, 2> label_pair{0, 1}; // first entry maps to +1
};

struct EncodedSample {
    PureState state;
    int label = 1; // +1 / -1
    int raw_index = -1;
};

struct Splits {
    std::vector<EncodedSample> train, val, test;
};

struct EncodeOptions {
    PadMode pad = PadMode::Zero;
    int target_qubits = 0;
    bool apply_pca = false;
    int pca_dim = 30;
    bool apply_kde = false;
};

/// Filters the dataset to the configured label pair, shuffles
/// deterministically, carves disjoint train/val/test subsets, fits the
/// configured transforms on the training subset only, and amplitude-encodes
/// every sample. Throws std::invalid_argument naming the shortfall when the
/// filtered population is too small.
Splits make_splits(const RawDataset &dataset, const SplitSpec &spec,
                   const EncodeOptions &options);

} // namespace qcnn
