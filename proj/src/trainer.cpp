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

#include "qcnn/trainer.hpp"

#include <chrono>
#include <cmath>
#include <numbers>

#include "qcnn/detail/kernels.hpp"
#include "qcnn/detail/parallel.hpp"
#include "qcnn/rng.hpp"

namespace qcnn {

namespace {

constexpr double kShift = std::numbers::pi / 2;

void require_basis(const QcnnCircuit &circuit) {
    if (!circuit.basis_only)
        throw std::invalid_argument(
            "gradients require a basis-compiled circuit "
            "(see decompose_circuit)");
}

// Applies the dagger of a bound gate to a raw amplitude array.
void unapply(const BoundInstr &bi, cplx *v, std::size_t dim, int n) {
    const int b0 = n - 1 - bi.wires[0];
    switch (bi.kind) {
    case GateKind::ID:
        return;
    case GateKind::X:
        detail::apply_x_1bit(v, dim, b0);
        return;
    case GateKind::CX:
        detail::apply_cx_bits(v, dim, b0, n - 1 - bi.wires[1]);
        return;
    case GateKind::RZ:
        detail::apply_diag_1bit(v, dim, b0, std::conj(bi.m[0]),
                                std::conj(bi.m[3]));
        return;
    default: {
        cplx dag[16];
        const int d = bi.arity == 1 ? 2 : 4;
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c)
                dag[r * d + c] = std::conj(bi.m[c * d + r]);
        if (bi.arity == 1)
            detail::apply_1bit(v, dim, b0, dag);
        else
            detail::apply_2bit(v, dim, b0, n - 1 - bi.wires[1], dag);
    }
    }
}

// Im <lambda| P_w |psi> for P in {Y, Z}.
double generator_overlap(GateKind kind, const cplx *lam, const cplx *psi,
                         std::size_t dim, std::size_t mask) {
    cplx acc(0, 0);
    if (kind == GateKind::RZ) {
        for (std::size_t i = 0; i < dim; ++i) {
            const cplx t = std::conj(lam[i]) * psi[i];
            acc += (i & mask) ? -t : t;
        }
    } else { // Y rotation written as U3(theta, 0, 0)
        const cplx mi(0, -1), pi_(0, 1);
        for (std::size_t i0 = 0; i0 < dim; ++i0) {
            if (i0 & mask)
                continue;
            const std::size_t i1 = i0 | mask;
            acc += std::conj(lam[i0]) * (mi * psi[i1]);
            acc += std::conj(lam[i1]) * (pi_ * psi[i0]);
        }
    }
    return acc.imag();
}

// Per-sample reverse-mode d<Z>/dtheta; also returns the forward value.
double adjoint_sample(const BoundCircuit &bound, const EncodedSample &sample,
                      std::vector<double> &df) {
    const QcnnCircuit &circ = bound.circuit();
    const int n = circ.total_qubits;
    const std::size_t dim = std::size_t{1} << n;

    PureState chi = lift_input(sample.state, n);
    cplx *psi = chi.amplitudes.data();
    for (const auto &bi : bound.instrs()) {
        if (bi.is_trace)
            continue;
        const int b0 = n - 1 - bi.wires[0];
        switch (bi.kind) {
        case GateKind::ID:
            break;
        case GateKind::X:
            detail::apply_x_1bit(psi, dim, b0);
            break;
        case GateKind::RZ:
            detail::apply_diag_1bit(psi, dim, b0, bi.m[0], bi.m[3]);
            break;
        case GateKind::CX:
            detail::apply_cx_bits(psi, dim, b0, n - 1 - bi.wires[1]);
            break;
        default:
            if (bi.arity == 1)
                detail::apply_1bit(psi, dim, b0, bi.m.data());
            else
                detail::apply_2bit(psi, dim, b0, n - 1 - bi.wires[1],
                                   bi.m.data());
        }
    }

    const std::size_t zmask = std::size_t{1}
                              << (n - 1 - circ.measurement_wire);
    double f = 0;
    Vector lambda_vec(chi.amplitudes.size());
    cplx *lam = lambda_vec.data();
    for (std::size_t i = 0; i < dim; ++i) {
        f += (i & zmask) ? -std::norm(psi[i]) : std::norm(psi[i]);
        lam[i] = (i & zmask) ? -psi[i] : psi[i];
    }

    std::fill(df.begin(), df.end(), 0.0);
    const auto &instrs = bound.instrs();
    const auto &occs = bound.occurrences();
    int next_occ = static_cast<int>(occs.size()) - 1;
    for (int g = static_cast<int>(instrs.size()) - 1; g >= 0; --g) {
        const auto &bi = instrs[g];
        if (bi.is_trace)
            continue;
        while (next_occ >= 0 && occs[next_occ].instr > g)
            --next_occ;
        if (next_occ >= 0 && occs[next_occ].instr == g) {
            const std::size_t mask = std::size_t{1}
                                     << (n - 1 - bi.wires[0]);
            df[occs[next_occ].slot] +=
                occs[next_occ].scale *
                generator_overlap(bi.kind, lam, psi, dim, mask);
        }
        unapply(bi, psi, dim, n);
        unapply(bi, lam, dim, n);
    }
    return f;
}

double mean(const std::vector<double> &v) {
    double acc = 0;
    for (double x : v)
        acc += x;
    return v.empty() ? 0.0 : acc / static_cast<double>(v.size());
}

double sample_std(const std::vector<double> &v, double mu) {
    if (v.size() < 2)
        return 0.0;
    double acc = 0;
    for (double x : v)
        acc += (x - mu) * (x - mu);
    return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

} // namespace

void TrainConfig::validate(int train_size) const {
    if (learning_rate <= 0)
        throw std::invalid_argument("learning rate must be positive");
    if (batch_size <= 0 || epochs <= 0 || restarts <= 0)
        throw std::invalid_argument(
            "batch size, epochs and restarts must be positive");
    if (batch_size > train_size)
        throw std::invalid_argument("batch size exceeds the training set");
}

double forward(const QcnnCircuit &circuit, const ParamStore &params,
               const EncodedSample &sample, const Executor &executor) {
    if (!executor.is_noiseless())
        require_basis(circuit);
    BoundCircuit bound(circuit, params);
    return executor.run(bound, sample.state);
}

double mse_loss(const std::vector<double> &predictions,
                const std::vector<double> &labels) {
    if (predictions.empty() || predictions.size() != labels.size())
        throw std::invalid_argument("predictions/labels size mismatch");
    double acc = 0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        const double d = labels[i] - predictions[i];
        acc += d * d;
    }
    return acc / static_cast<double>(predictions.size());
}

namespace {

// Per-occurrence +-pi/2 shifts of f for a set of samples. Results are
// indexed by (occurrence, sample); workers own private circuit copies so
// the output is independent of the worker count.
std::vector<std::vector<double>>
occurrence_derivatives(const QcnnCircuit &circuit, const ParamStore &params,
                       const std::vector<EncodedSample> &samples,
                       const Executor &executor, int jobs) {
    const BoundCircuit base(circuit, params);
    const auto &occs = base.occurrences();
    const int n_occ = static_cast<int>(occs.size());
    const int n_samp = static_cast<int>(samples.size());
    std::vector<std::vector<double>> dfo(
        n_occ, std::vector<double>(static_cast<std::size_t>(n_samp), 0.0));

    const int workers = std::max(1, detail::resolve_jobs(jobs));
    std::vector<BoundCircuit> copies(static_cast<std::size_t>(workers), base);
    detail::parallel_for(n_occ, jobs, [&](int worker, int o) {
        BoundCircuit &bc = copies[static_cast<std::size_t>(worker)];
        bc.shift_occurrence(o, kShift, params);
        std::vector<double> fplus(static_cast<std::size_t>(n_samp));
        for (int s = 0; s < n_samp; ++s)
            fplus[static_cast<std::size_t>(s)] =
                executor.run(bc, samples[static_cast<std::size_t>(s)].state);
        bc.shift_occurrence(o, -kShift, params);
        for (int s = 0; s < n_samp; ++s) {
            const double fminus =
                executor.run(bc, samples[static_cast<std::size_t>(s)].state);
            dfo[static_cast<std::size_t>(o)][static_cast<std::size_t>(s)] =
                occs[static_cast<std::size_t>(o)].scale *
                (fplus[static_cast<std::size_t>(s)] - fminus) / 2.0;
        }
        bc.shift_occurrence(o, 0.0, params);
    });
    return dfo;
}

} // namespace

std::vector<double> grad_expectation_shift(const QcnnCircuit &circuit,
                                           const ParamStore &params,
                                           const EncodedSample &sample,
                                           const Executor &executor,
                                           int jobs) {
    require_basis(circuit);
    const BoundCircuit base(circuit, params);
    const auto dfo =
        occurrence_derivatives(circuit, params, {sample}, executor, jobs);
    std::vector<double> grad(static_cast<std::size_t>(circuit.num_slots), 0.0);
    for (std::size_t o = 0; o < dfo.size(); ++o)
        grad[static_cast<std::size_t>(base.occurrences()[o].slot)] +=
            dfo[o][0];
    return grad;
}

std::vector<double> grad_parameter_shift(const QcnnCircuit &circuit,
                                         const ParamStore &params,
                                         const std::vector<EncodedSample> &batch,
                                         const Executor &executor, int jobs,
                                         double *batch_loss) {
    require_basis(circuit);
    if (batch.empty())
        throw std::invalid_argument("empty batch");
    const BoundCircuit base(circuit, params);
    const int n_samp = static_cast<int>(batch.size());

    std::vector<double> f(static_cast<std::size_t>(n_samp), 0.0);
    detail::parallel_for(n_samp, jobs, [&](int, int s) {
        f[static_cast<std::size_t>(s)] =
            executor.run(base, batch[static_cast<std::size_t>(s)].state);
    });
    std::vector<double> weights(static_cast<std::size_t>(n_samp));
    double loss = 0;
    for (int s = 0; s < n_samp; ++s) {
        const double y = batch[static_cast<std::size_t>(s)].label;
        const double d = f[static_cast<std::size_t>(s)] - y;
        loss += d * d;
        weights[static_cast<std::size_t>(s)] =
            2.0 * d / static_cast<double>(n_samp);
    }
    if (batch_loss)
        *batch_loss = loss / static_cast<double>(n_samp);

    const auto dfo =
        occurrence_derivatives(circuit, params, batch, executor, jobs);
    std::vector<double> grad(static_cast<std::size_t>(circuit.num_slots), 0.0);
    for (std::size_t o = 0; o < dfo.size(); ++o) {
        double acc = 0;
        for (int s = 0; s < n_samp; ++s)
            acc += weights[static_cast<std::size_t>(s)] *
                   dfo[o][static_cast<std::size_t>(s)];
        grad[static_cast<std::size_t>(base.occurrences()[o].slot)] += acc;
    }
    return grad;
}

std::vector<double> grad_adjoint(const QcnnCircuit &circuit,
                                 const ParamStore &params,
                                 const std::vector<EncodedSample> &batch,
                                 int jobs, double *batch_loss) {
    require_basis(circuit);
    if (batch.empty())
        throw std::invalid_argument("empty batch");
    const BoundCircuit bound(circuit, params);
    const int n_samp = static_cast<int>(batch.size());
    const std::size_t slots = static_cast<std::size_t>(circuit.num_slots);

    std::vector<std::vector<double>> dfs(
        static_cast<std::size_t>(n_samp), std::vector<double>(slots, 0.0));
    std::vector<double> f(static_cast<std::size_t>(n_samp), 0.0);
    detail::parallel_for(n_samp, jobs, [&](int, int s) {
        f[static_cast<std::size_t>(s)] = adjoint_sample(
            bound, batch[static_cast<std::size_t>(s)],
            dfs[static_cast<std::size_t>(s)]);
    });

    std::vector<double> grad(slots, 0.0);
    double loss = 0;
    for (int s = 0; s < n_samp; ++s) {
        const double y = batch[static_cast<std::size_t>(s)].label;
        const double d = f[static_cast<std::size_t>(s)] - y;
        loss += d * d;
        const double w = 2.0 * d / static_cast<double>(n_samp);
        const auto &df = dfs[static_cast<std::size_t>(s)];
        for (std::size_t k = 0; k < slots; ++k)
            grad[k] += w * df[k];
    }
    if (batch_loss)
        *batch_loss = loss / static_cast<double>(n_samp);
    return grad;
}

void adam_step(AdamState &state, ParamStore &params,
               const std::vector<double> &gradient, double learning_rate) {
    if (gradient.size() != params.values.size() ||
        state.m.size() != gradient.size())
        throw std::invalid_argument("gradient dimension mismatch");
    ++state.step;
    const double b1t = 1.0 - std::pow(state.beta1, state.step);
    const double b2t = 1.0 - std::pow(state.beta2, state.step);
    for (std::size_t i = 0; i < gradient.size(); ++i) {
        state.m[i] = state.beta1 * state.m[i] +
                     (1.0 - state.beta1) * gradient[i];
        state.v[i] = state.beta2 * state.v[i] +
                     (1.0 - state.beta2) * gradient[i] * gradient[i];
        const double mhat = state.m[i] / b1t;
        const double vhat = state.v[i] / b2t;
        params.values[i] -= learning_rate * mhat /
                            (std::sqrt(vhat) + state.eps);
    }
}

double evaluate_accuracy(const QcnnCircuit &circuit, const ParamStore &params,
                         const std::vector<EncodedSample> &samples,
                         const Executor &executor, int jobs) {
    if (samples.empty())
        throw std::invalid_argument("no samples to evaluate");
    const BoundCircuit bound(circuit, params);
    const int n = static_cast<int>(samples.size());
    std::vector<int> correct(static_cast<std::size_t>(n), 0);
    detail::parallel_for(n, jobs, [&](int, int s) {
        const double fval =
            executor.run(bound, samples[static_cast<std::size_t>(s)].state);
        const int pred = fval >= 0 ? 1 : -1; // f = 0 counts as +1
        correct[static_cast<std::size_t>(s)] =
            pred == samples[static_cast<std::size_t>(s)].label ? 1 : 0;
    });
    int hits = 0;
    for (int c : correct)
        hits += c;
    return static_cast<double>(hits) / static_cast<double>(n);
}

Metrics train(const QcnnCircuit &circuit, const Splits &splits,
              const TrainConfig &config, const Executor &executor, int jobs,
              ParamStore *final_params) {
    if (splits.train.empty() || splits.test.empty())
        throw std::invalid_argument("train/test splits must be nonempty");
    config.validate(static_cast<int>(splits.train.size()));

    const QcnnCircuit basis =
        circuit.basis_only ? circuit : decompose_circuit(circuit);

    // Slot count must agree with the closed-form resource report.
    const ResourceReport report =
        estimate_resources(basis.input_qubits, basis.method, basis.reps(),
                           basis.ansatz, basis.sharing);
    const long expected =
        basis.sharing ? report.params_shared : report.params_unshared;
    if (basis.num_slots != expected)
        throw ValidationError("circuit slot count " +
                              std::to_string(basis.num_slots) +
                              " does not match the resource report " +
                              std::to_string(expected));

    const auto t0 = std::chrono::steady_clock::now();
    Metrics metrics;
    std::vector<double> test_accs;

    for (int r = 0; r < config.restarts; ++r) {
        RestartMetrics rm;
        rm.seed = config.seed + static_cast<std::uint64_t>(r);
        Rng rng(rm.seed);

        ParamStore params;
        params.values.resize(static_cast<std::size_t>(basis.num_slots));
        for (auto &v : params.values)
            v = rng.uniform(0.0, 2.0 * std::numbers::pi);
        AdamState adam(params.values.size());

        std::vector<int> order(splits.train.size());
        for (std::size_t i = 0; i < order.size(); ++i)
            order[i] = static_cast<int>(i);

        for (int epoch = 0; epoch < config.epochs; ++epoch) {
            rng.shuffle(order);
            double loss_sum = 0;
            int batches = 0;
            for (std::size_t pos = 0; pos < order.size();
                 pos += static_cast<std::size_t>(config.batch_size)) {
                const std::size_t end =
                    std::min(order.size(),
                             pos + static_cast<std::size_t>(config.batch_size));
                std::vector<EncodedSample> batch;
                batch.reserve(end - pos);
                for (std::size_t i = pos; i < end; ++i)
                    batch.push_back(
                        splits.train[static_cast<std::size_t>(order[i])]);
                double batch_loss = 0;
                std::vector<double> grad =
                    executor.is_noiseless()
                        ? grad_adjoint(basis, params, batch, jobs, &batch_loss)
                        : grad_parameter_shift(basis, params, batch, executor,
                                               jobs, &batch_loss);
                adam_step(adam, params, grad, config.learning_rate);
                loss_sum += batch_loss;
                ++batches;
            }
            rm.epoch_train_loss.push_back(loss_sum /
                                          static_cast<double>(batches));
            if (!splits.val.empty())
                rm.epoch_val_accuracy.push_back(evaluate_accuracy(
                    basis, params, splits.val, executor, jobs));
        }

        rm.test_accuracy =
            evaluate_accuracy(basis, params, splits.test, executor, jobs);
        rm.final_params = params.values;
        test_accs.push_back(rm.test_accuracy);
        metrics.restarts.push_back(std::move(rm));
        if (final_params)
            *final_params = params;
    }

    metrics.mean_test_accuracy = mean(test_accs);
    metrics.std_test_accuracy =
        sample_std(test_accs, metrics.mean_test_accuracy);
    metrics.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return metrics;
}

} // namespace qcnn
