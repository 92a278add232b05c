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

#include <cmath>
#include <numbers>

#include "qcnn/noise.hpp"
#include "qcnn/trainer.hpp"
#include "testutil.hpp"

using namespace qcnn;
using test::random_pure;

namespace {

EncodedSample sample_of(PureState state, int label, int idx = 0) {
    return {std::move(state), label, idx};
}

ParamStore random_params(Rng &rng, int slots) {
    ParamStore p;
    p.values.resize(static_cast<std::size_t>(slots));
    for (auto &v : p.values)
        v = rng.uniform(0, 2 * std::numbers::pi);
    return p;
}

// Central finite difference of the batch MSE loss.
std::vector<double> fd_loss_gradient(const QcnnCircuit &circuit,
                                     const ParamStore &params,
                                     const std::vector<EncodedSample> &batch,
                                     const Executor &executor,
                                     double h = 1e-5) {
    auto loss_at = [&](const ParamStore &p) {
        BoundCircuit bound(circuit, p);
        std::vector<double> f, y;
        for (const auto &s : batch) {
            f.push_back(executor.run(bound, s.state));
            y.push_back(s.label);
        }
        return mse_loss(f, y);
    };
    std::vector<double> grad(params.values.size());
    for (std::size_t i = 0; i < params.values.size(); ++i) {
        ParamStore up = params, dn = params;
        up.values[i] += h;
        dn.values[i] -= h;
        grad[i] = (loss_at(up) - loss_at(dn)) / (2 * h);
    }
    return grad;
}

void check_close(const std::vector<double> &a, const std::vector<double> &b,
                 double rtol, double atol) {
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double err = std::abs(a[i] - b[i]);
        CHECK(err <= std::max(atol, rtol * std::abs(b[i])));
    }
}

Splits toy_separable_splits(int train_n, int test_n, std::uint64_t seed) {
    // Two clusters in a 2-feature space, zero-padded onto 2 qubits: class +1
    // concentrates on |00>, class -1 on |01>.
    Rng rng(seed);
    Splits splits;
    auto make = [&](int count) {
        std::vector<EncodedSample> out;
        for (int i = 0; i < count; ++i) {
            const int label = (i % 2 == 0) ? 1 : -1;
            const double eps = rng.uniform(0.0, 0.25);
            std::vector<double> feat =
                label == 1 ? std::vector<double>{1.0, eps}
                           : std::vector<double>{eps, 1.0};
            out.push_back(
                sample_of(amplitude_encode(feat, PadMode::Zero, 2), label, i));
        }
        return out;
    };
    splits.train = make(train_n);
    splits.val = make(32);
    splits.test = make(test_n);
    return splits;
}

const std::vector<PaddingMethod> kAllMethods = {
    PaddingMethod::ZeroData, PaddingMethod::PeriodicData,
    PaddingMethod::SkipPooling, PaddingMethod::LayerWiseAncilla,
    PaddingMethod::SingleAncilla};

} // namespace

TEST_CASE("zero-parameter ansatz-set-1 circuit maps |0..0> to f = +1") {
    for (auto method : kAllMethods) {
        const auto circuit = decompose_circuit(plan_architecture(
            5, method, {1, 1, 1}, AnsatzSet::set1(), false));
        ParamStore params;
        params.values.assign(static_cast<std::size_t>(circuit.num_slots), 0.0);
        const EncodedSample s = sample_of(PureState::zero(5), 1);
        NoiselessExecutor noiseless;
        CHECK(forward(circuit, params, s, noiseless) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("pure and lifted-mixed forward paths agree") {
    Rng rng(3);
    DeviceNoiseProfile free;
    free.p1 = free.p2 = 0;
    free.t_1q = free.t_2q = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const int K = 3 + static_cast<int>(rng.below(3)); // 3..5
        const auto method = kAllMethods[rng.below(kAllMethods.size())];
        const auto set = rng.below(2) == 0 ? AnsatzSet::set1()
                                           : AnsatzSet::set2();
        const int m = ceil_log2(K);
        const auto circuit = decompose_circuit(plan_architecture(
            K, method, std::vector<int>(m, 1), set, true));
        const ParamStore params = random_params(rng, circuit.num_slots);
        BoundCircuit bound(circuit, params);
        const PureState input =
            random_pure(rng, is_classical_padding(method) ? (1 << m) : K);

        const double pure = run_pure(bound, input);
        double mixed = 0;
        noisy_execute(bound, input, free, &mixed);
        CHECK(std::abs(pure - mixed) < 1e-10);
    }
}

TEST_CASE("mse loss arithmetic") {
    CHECK(mse_loss({1, -1, 1}, {1, -1, 1}) == 0.0);
    CHECK(mse_loss({0}, {1}) == 1.0);
    CHECK(mse_loss({0.5, 0.5}, {1, -1}) == doctest::Approx(1.25).epsilon(1e-15));
    CHECK_THROWS_AS(mse_loss({}, {}), std::invalid_argument);
}

TEST_CASE("parameter shift on a single RY gives -sin(theta)") {
    CircuitOp ry = make_op(GateKind::RY, 0);
    ry.param_refs = {ParamRef{0, 0}};
    const auto circuit =
        decompose_circuit(test::make_circuit(1, {ry}, 1, 0, false));
    NoiselessExecutor noiseless;
    for (double theta : {0.3, 1.0}) {
        ParamStore params{{theta}};
        const auto grad = grad_expectation_shift(
            circuit, params, sample_of(PureState::zero(1), 1), noiseless);
        CHECK(grad[0] == doctest::Approx(-std::sin(theta)).epsilon(1e-12));
    }
}

TEST_CASE("shared slots accumulate both occurrence shifts") {
    // Two RY gates bound to the same slot: f = cos(2 theta).
    CircuitOp ry1 = make_op(GateKind::RY, 0);
    ry1.param_refs = {ParamRef{0, 0}};
    const auto circuit = decompose_circuit(
        test::make_circuit(1, {ry1, ry1}, 1, 0, false));
    NoiselessExecutor noiseless;
    const double theta = 0.47;
    ParamStore params{{theta}};
    const auto grad = grad_expectation_shift(
        circuit, params, sample_of(PureState::zero(1), 1), noiseless);
    CHECK(grad[0] == doctest::Approx(-2 * std::sin(2 * theta)).epsilon(1e-12));

    const auto batch = std::vector<EncodedSample>{
        sample_of(PureState::zero(1), -1)};
    const auto ps = grad_parameter_shift(circuit, params, batch, noiseless);
    const auto fd = fd_loss_gradient(circuit, params, batch, noiseless);
    check_close(ps, fd, 1e-7, 1e-9);
}

TEST_CASE("parameter shift matches finite differences on full circuits") {
    Rng rng(5);
    NoiselessExecutor noiseless;
    for (const int K : {3, 5}) {
        const int m = ceil_log2(K);
        for (const auto set : {AnsatzSet::set1(), AnsatzSet::set2()}) {
            const auto circuit = decompose_circuit(plan_architecture(
                K, PaddingMethod::SingleAncilla, std::vector<int>(m, 1), set,
                true));
            const ParamStore params = random_params(rng, circuit.num_slots);
            std::vector<EncodedSample> batch;
            for (int i = 0; i < 3; ++i)
                batch.push_back(
                    sample_of(random_pure(rng, K), i % 2 == 0 ? 1 : -1, i));
            const auto ps =
                grad_parameter_shift(circuit, params, batch, noiseless);
            const auto fd = fd_loss_gradient(circuit, params, batch, noiseless);
            check_close(ps, fd, 1e-5, 1e-8);
        }
    }
}

TEST_CASE("adjoint gradient equals parameter shift everywhere") {
    Rng rng(7);
    NoiselessExecutor noiseless;
    for (auto method : kAllMethods) {
        for (const auto set : {AnsatzSet::set1(), AnsatzSet::set2()}) {
            const int K = 5;
            const auto circuit = decompose_circuit(plan_architecture(
                K, method, {1, 1, 1}, set, rng.below(2) == 0));
            const ParamStore params = random_params(rng, circuit.num_slots);
            std::vector<EncodedSample> batch;
            const int in_qubits = is_classical_padding(method) ? 8 : K;
            for (int i = 0; i < 2; ++i)
                batch.push_back(sample_of(random_pure(rng, in_qubits),
                                          i % 2 == 0 ? 1 : -1, i));
            double loss_ps = 0, loss_adj = 0;
            const auto ps = grad_parameter_shift(circuit, params, batch,
                                                 noiseless, 0, &loss_ps);
            const auto adj =
                grad_adjoint(circuit, params, batch, 0, &loss_adj);
            CHECK(loss_ps == doctest::Approx(loss_adj).epsilon(1e-12));
            check_close(adj, ps, 1e-11, 1e-12);
        }
    }
}

TEST_CASE("parameter shift stays exact under the noisy executor") {
    const auto circuit = decompose_circuit(plan_architecture(
        2, PaddingMethod::SkipPooling, {1}, AnsatzSet::set1(), false));
    Rng rng(9);
    const ParamStore params = random_params(rng, circuit.num_slots);
    const std::vector<EncodedSample> batch{
        sample_of(random_pure(rng, 2), 1, 0),
        sample_of(random_pure(rng, 2), -1, 1)};
    NoisyExecutor noisy(DeviceNoiseProfile::ibmq_jakarta());
    const auto ps = grad_parameter_shift(circuit, params, batch, noisy);
    const auto fd = fd_loss_gradient(circuit, params, batch, noisy);
    check_close(ps, fd, 1e-5, 1e-8);
}

TEST_CASE("adam update behavior") {
    ParamStore params{{0.5, -0.2}};
    AdamState state(2);
    adam_step(state, params, {0.0, 0.0}, 0.01);
    CHECK(params.values[0] == 0.5);
    CHECK(params.values[1] == -0.2);

    // Constant gradient: step size approaches lr.
    ParamStore p2{{0.0}};
    AdamState s2(1);
    double prev = 0.0;
    double step = 0;
    for (int i = 0; i < 200; ++i) {
        adam_step(s2, p2, {2.5}, 0.01);
        step = prev - p2.values[0];
        prev = p2.values[0];
    }
    CHECK(step == doctest::Approx(0.01).epsilon(1e-3));

    // Determinism: identical seeds and gradients give identical parameters.
    ParamStore a{{0.1, 0.2}}, b{{0.1, 0.2}};
    AdamState sa(2), sb(2);
    for (int i = 0; i < 50; ++i) {
        const std::vector<double> g{std::sin(i * 0.1), std::cos(i * 0.2)};
        adam_step(sa, a, g, 0.01);
        adam_step(sb, b, g, 0.01);
    }
    CHECK(a.values == b.values);
}

TEST_CASE("accuracy evaluation: trivial values, flips, and a loop oracle") {
    const auto circuit = decompose_circuit(plan_architecture(
        2, PaddingMethod::ZeroData, {1}, AnsatzSet::set1(), false));
    Rng rng(11);
    const ParamStore params = random_params(rng, circuit.num_slots);
    std::vector<EncodedSample> samples;
    for (int i = 0; i < 40; ++i)
        samples.push_back(sample_of(random_pure(rng, 2), rng.below(2) ? 1 : -1,
                                    i));
    NoiselessExecutor noiseless;
    const double acc =
        evaluate_accuracy(circuit, params, samples, noiseless);

    // Independent per-sample loop.
    BoundCircuit bound(circuit, params);
    int hits = 0;
    for (const auto &s : samples) {
        const double f = run_pure(bound, s.state);
        hits += ((f >= 0 ? 1 : -1) == s.label) ? 1 : 0;
    }
    CHECK(acc ==
          doctest::Approx(static_cast<double>(hits) / samples.size())
              .epsilon(1e-15));

    auto flipped = samples;
    for (auto &s : flipped)
        s.label = -s.label;
    CHECK(evaluate_accuracy(circuit, params, flipped, noiseless) ==
          doctest::Approx(1.0 - acc).epsilon(1e-12));
}

TEST_CASE("training separates a toy dataset") {
    const auto circuit = plan_architecture(2, PaddingMethod::SkipPooling, {1},
                                           AnsatzSet::set1(), false);
    const Splits splits = toy_separable_splits(200, 64, 13);
    TrainConfig config;
    config.learning_rate = 0.1;
    config.batch_size = 25;
    config.epochs = 5;
    config.restarts = 2;
    config.seed = 21;
    NoiselessExecutor noiseless;
    const Metrics metrics = train(circuit, splits, config, noiseless);
    CHECK(metrics.mean_test_accuracy == doctest::Approx(1.0));
    // Loss decreases over training.
    const auto &losses = metrics.restarts[0].epoch_train_loss;
    CHECK(losses.back() < losses.front());
}

TEST_CASE("training is bit-reproducible in the noiseless executor") {
    const auto circuit = plan_architecture(3, PaddingMethod::SingleAncilla,
                                           {1, 1}, AnsatzSet::set1(), false);
    Rng rng(15);
    Splits splits;
    for (int i = 0; i < 60; ++i)
        splits.train.push_back(
            sample_of(random_pure(rng, 3), i % 2 ? 1 : -1, i));
    for (int i = 0; i < 20; ++i)
        splits.test.push_back(
            sample_of(random_pure(rng, 3), i % 2 ? 1 : -1, 60 + i));
    TrainConfig config;
    config.epochs = 2;
    config.restarts = 2;
    config.batch_size = 20;
    config.seed = 33;
    NoiselessExecutor noiseless;
    ParamStore pa, pb;
    const Metrics a = train(circuit, splits, config, noiseless, 2, &pa);
    const Metrics b = train(circuit, splits, config, noiseless, 1, &pb);
    CHECK(pa.values == pb.values); // identical across worker counts too
    REQUIRE(a.restarts.size() == b.restarts.size());
    for (std::size_t r = 0; r < a.restarts.size(); ++r) {
        CHECK(a.restarts[r].epoch_train_loss ==
              b.restarts[r].epoch_train_loss);
        CHECK(a.restarts[r].test_accuracy == b.restarts[r].test_accuracy);
    }
}

TEST_CASE("slot count is validated against the resource report") {
    auto circuit = plan_architecture(3, PaddingMethod::SkipPooling, {1, 1},
                                     AnsatzSet::set1(), false);
    circuit.num_slots += 1; // corrupt
    Splits splits = toy_separable_splits(40, 10, 17);
    TrainConfig config;
    config.epochs = 1;
    config.restarts = 1;
    config.batch_size = 10;
    NoiselessExecutor noiseless;
    CHECK_THROWS_AS(train(circuit, splits, config, noiseless),
                    std::exception);
}
