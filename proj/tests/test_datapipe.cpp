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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <zlib.h>

#include "qcnn/datapipe.hpp"
#include "testutil.hpp"

using namespace qcnn;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("qcnn_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

void put_u32_be(std::vector<unsigned char> &buf, std::uint32_t v) {
    buf.push_back(static_cast<unsigned char>(v >> 24));
    buf.push_back(static_cast<unsigned char>(v >> 16));
    buf.push_back(static_cast<unsigned char>(v >> 8));
    buf.push_back(static_cast<unsigned char>(v));
}

// 10-record IDX fixture: image i is constant pixel value 25*i, label i.
void write_idx_fixture(const fs::path &images, const fs::path &labels,
                       bool gzipped, int rows = 4, int cols = 3,
                       int count = 10) {
    std::vector<unsigned char> img;
    put_u32_be(img, 0x00000803);
    put_u32_be(img, count);
    put_u32_be(img, rows);
    put_u32_be(img, cols);
    for (int i = 0; i < count; ++i)
        for (int p = 0; p < rows * cols; ++p)
            img.push_back(static_cast<unsigned char>(25 * i));
    std::vector<unsigned char> lab;
    put_u32_be(lab, 0x00000801);
    put_u32_be(lab, count);
    for (int i = 0; i < count; ++i)
        lab.push_back(static_cast<unsigned char>(i));

    auto dump = [&](const fs::path &p, const std::vector<unsigned char> &buf) {
        if (gzipped) {
            gzFile f = gzopen(p.c_str(), "wb");
            REQUIRE(f != nullptr);
            gzwrite(f, buf.data(), static_cast<unsigned>(buf.size()));
            gzclose(f);
        } else {
            std::ofstream out(p, std::ios::binary);
            out.write(reinterpret_cast<const char *>(buf.data()),
                      static_cast<std::streamsize>(buf.size()));
        }
    };
    dump(images, img);
    dump(labels, lab);
}

} // namespace

TEST_CASE("IDX fixture round trip, plain and gzipped") {
    TempDir tmp;
    for (bool gz : {false, true}) {
        const auto img = tmp.path / (gz ? "img.idx.gz" : "img.idx");
        const auto lab = tmp.path / (gz ? "lab.idx.gz" : "lab.idx");
        write_idx_fixture(img, lab, gz);
        const RawDataset data = load_mnist(img.string(), lab.string());
        REQUIRE(data.features.size() == 10);
        REQUIRE(data.labels.size() == 10);
        CHECK(data.features[0].size() == 12);
        CHECK(data.labels[0] == 0);
        CHECK(data.labels[9] == 9);
        // All-zero image gives an all-zero feature vector.
        for (double v : data.features[0])
            CHECK(v == 0.0);
        // Pixels are scaled by 1/255.
        CHECK(data.features[9][0] == doctest::Approx(225.0 / 255.0));
    }
}

TEST_CASE("IDX errors carry byte offsets") {
    TempDir tmp;
    const auto img = tmp.path / "img.idx";
    const auto lab = tmp.path / "lab.idx";
    write_idx_fixture(img, lab, false);

    // Bad magic.
    {
        std::fstream f(img, std::ios::in | std::ios::out | std::ios::binary);
        f.put(0x42);
    }
    CHECK_THROWS_AS(load_mnist(img.string(), lab.string()), FormatError);

    // Truncated payload.
    write_idx_fixture(img, lab, false);
    fs::resize_file(img, 40);
    CHECK_THROWS_WITH_AS(load_mnist(img.string(), lab.string()),
                         doctest::Contains("offset"), FormatError);

    // Count mismatch.
    write_idx_fixture(img, lab, false, 4, 3, 10);
    {
        // Rewrite the label file with a different count.
        std::vector<unsigned char> lab2;
        put_u32_be(lab2, 0x00000801);
        put_u32_be(lab2, 9);
        for (int i = 0; i < 9; ++i)
            lab2.push_back(0);
        std::ofstream out(lab, std::ios::binary | std::ios::trunc);
        out.write(reinterpret_cast<const char *>(lab2.data()),
                  static_cast<std::streamsize>(lab2.size()));
    }
    CHECK_THROWS_AS(load_mnist(img.string(), lab.string()), FormatError);
}

TEST_CASE("WDBC fixture parsing") {
    TempDir tmp;
    const auto csv = tmp.path / "wdbc.csv";
    {
        std::ofstream out(csv);
        for (int r = 0; r < 3; ++r) {
            out << (1000 + r) << "," << (r == 0 ? "M" : "B");
            for (int c = 0; c < 30; ++c)
                out << "," << (r * 100 + c) * 0.5;
            out << "\n";
        }
    }
    const RawDataset data = load_wdbc(csv.string());
    REQUIRE(data.features.size() == 3);
    CHECK(data.labels == std::vector<int>{1, 0, 0});
    // CSV column 3 (first feature) lands in feature slot 0.
    CHECK(data.features[1][0] == doctest::Approx(50.0));
    CHECK(data.features[2][29] == doctest::Approx(114.5));

    // Wrong column count names the row.
    {
        std::ofstream out(csv, std::ios::app);
        out << "1003,M,1.0\n";
    }
    CHECK_THROWS_WITH_AS(load_wdbc(csv.string()), doctest::Contains("row 4"),
                         FormatError);
}

TEST_CASE("PCA: centering, low-rank reconstruction, decorrelation") {
    Rng rng(3);
    // Rank-3 data embedded in 6 dimensions.
    const int n = 40, d = 6, r = 3;
    Eigen::MatrixXd basis(d, r), coef(n, r);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < r; ++j)
            basis(i, j) = rng.uniform(-1, 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < r; ++j)
            coef(i, j) = rng.uniform(-2, 2);
    Eigen::MatrixXd X = coef * basis.transpose();
    std::vector<std::vector<double>> rows(n, std::vector<double>(d));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j)
            rows[i][j] = X(i, j);

    const PcaModel model = pca_fit(rows, r);
    // Transform of the train mean is ~0.
    std::vector<double> mean_row(d);
    for (int j = 0; j < d; ++j)
        mean_row[j] = X.col(j).mean();
    for (double v : pca_transform(model, mean_row))
        CHECK(std::abs(v) < 1e-10);

    // Rank-r data reconstructs exactly from r components.
    for (int i = 0; i < 5; ++i) {
        const auto y = pca_transform(model, rows[i]);
        Eigen::VectorXd back = model.mean;
        for (int c = 0; c < r; ++c)
            back += y[c] * model.components.col(c);
        for (int j = 0; j < d; ++j)
            CHECK(std::abs(back(j) - rows[i][j]) < 1e-8);
    }

    // Projected training covariance is diagonal.
    Eigen::MatrixXd Y(n, r);
    for (int i = 0; i < n; ++i) {
        const auto y = pca_transform(model, rows[i]);
        for (int c = 0; c < r; ++c)
            Y(i, c) = y[c];
    }
    Eigen::MatrixXd cov = Y.transpose() * Y;
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b)
            if (a != b)
                CHECK(std::abs(cov(a, b)) < 1e-8 * cov.cwiseAbs().maxCoeff());
}

TEST_CASE("KDE transform: limits, symmetry, monotonicity") {
    Rng rng(5);
    std::vector<std::vector<double>> train;
    for (int i = 0; i < 100; ++i)
        train.push_back({rng.uniform(-2, 2), 42.0});
    const KdeModel model = kde_fit(train);

    CHECK(kde_transform(model, {-1e12, 0})[0] ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(kde_transform(model, {1e12, 0})[0] ==
          doctest::Approx(1.0).epsilon(1e-12));
    // Strictly inside (0, 1) for finite values.
    for (double v : {-5.0, 0.0, 5.0}) {
        const double t = kde_transform(model, {v, 0})[0];
        CHECK(t > 0.0);
        CHECK(t < 1.0);
    }
    // Degenerate feature passes through as 0.5.
    CHECK(kde_transform(model, {0.0, 17.0})[1] == 0.5);

    // Symmetric training set: the median maps to 0.5.
    std::vector<std::vector<double>> sym;
    for (int i = 1; i <= 50; ++i) {
        sym.push_back({3.0 + i * 0.01});
        sym.push_back({3.0 - i * 0.01});
    }
    const KdeModel symmodel = kde_fit(sym);
    CHECK(kde_transform(symmodel, {3.0})[0] ==
          doctest::Approx(0.5).epsilon(1e-6));

    // Monotone non-decreasing on a grid.
    double prev = -1;
    for (double v = -3; v <= 3; v += 0.05) {
        const double t = kde_transform(model, {v, 0})[0];
        CHECK(t >= prev);
        prev = t;
    }
}

TEST_CASE("amplitude encoding: padding semantics") {
    // 30 features on 8 qubits: amplitudes 30..255 are exactly zero.
    std::vector<double> feat(30);
    Rng rng(7);
    for (auto &v : feat)
        v = rng.uniform(0.1, 1.0);
    const PureState s = amplitude_encode(feat, PadMode::Zero, 8);
    CHECK(s.num_qubits == 8);
    for (int i = 30; i < 256; ++i)
        CHECK(s.amplitudes(i) == cplx(0, 0));
    CHECK(std::abs(s.amplitudes.norm() - 1.0) < 1e-12);
    // Ratios of original amplitudes survive zero padding.
    CHECK(std::abs(s.amplitudes(3).real() / s.amplitudes(7).real() -
                   feat[3] / feat[7]) < 1e-12);

    // Unit basis vector maps to |00>.
    const PureState basis =
        amplitude_encode({1, 0, 0, 0}, PadMode::None, 2);
    CHECK(std::abs(basis.amplitudes(0) - cplx(1, 0)) < 1e-15);

    // Periodic tiling truncates the last repetition.
    const PureState tiled =
        amplitude_encode({1, 2, 3}, PadMode::Periodic, 2);
    const double norm = std::sqrt(1 + 4 + 9 + 1);
    CHECK(tiled.amplitudes(0).real() == doctest::Approx(1 / norm));
    CHECK(tiled.amplitudes(3).real() == doctest::Approx(1 / norm));

    // All three modes coincide for N = 2^n.
    const std::vector<double> exact{0.5, -0.5, 0.5, 0.5};
    for (auto mode : {PadMode::None, PadMode::Zero, PadMode::Periodic}) {
        const PureState e = amplitude_encode(exact, mode, 2);
        CHECK((e.amplitudes -
               amplitude_encode(exact, PadMode::None, 2).amplitudes)
                  .cwiseAbs()
                  .maxCoeff() < 1e-15);
    }

    CHECK_THROWS_AS(amplitude_encode({0, 0, 0}, PadMode::Zero, 2),
                    ValidationError);
    CHECK_THROWS_AS(amplitude_encode(std::vector<double>(5, 1.0),
                                     PadMode::Zero, 2),
                    std::invalid_argument);
    CHECK_THROWS_AS(amplitude_encode({1.0, 2.0}, PadMode::None, 3),
                    std::invalid_argument);
}

TEST_CASE("splits are deterministic, disjoint, and label-mapped") {
    RawDataset data;
    data.source = DataSource::Mnist;
    Rng rng(9);
    for (int i = 0; i < 300; ++i) {
        std::vector<double> feat(8);
        for (auto &v : feat)
            v = rng.uniform(0.1, 1.0);
        data.features.push_back(feat);
        data.labels.push_back(static_cast<int>(rng.below(4)));
    }
    SplitSpec spec;
    spec.train_size = 60;
    spec.val_size = 20;
    spec.test_size = 20;
    spec.seed = 99;
    spec.label_pair = {0, 1};
    EncodeOptions opts;
    opts.pad = PadMode::Zero;
    opts.target_qubits = 3;

    const Splits a = make_splits(data, spec, opts);
    const Splits b = make_splits(data, spec, opts);
    REQUIRE(a.train.size() == 60);
    REQUIRE(a.val.size() == 20);
    REQUIRE(a.test.size() == 20);

    std::set<int> seen;
    for (const auto *part : {&a.train, &a.val, &a.test})
        for (const auto &s : *part) {
            CHECK(seen.insert(s.raw_index).second); // no duplicates
            CHECK((s.label == 1 || s.label == -1));
            CHECK((data.labels[s.raw_index] == 0) == (s.label == 1));
            CHECK(std::abs(s.state.amplitudes.norm() - 1.0) < 1e-12);
        }
    for (std::size_t i = 0; i < a.train.size(); ++i)
        CHECK(a.train[i].raw_index == b.train[i].raw_index);

    SplitSpec big = spec;
    big.train_size = 1000;
    CHECK_THROWS_WITH_AS(make_splits(data, big, opts),
                         doctest::Contains("not enough samples"),
                         std::invalid_argument);
}
