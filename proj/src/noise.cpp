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

#include "qcnn/noise.hpp"

#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "qcnn/linalg.hpp"

namespace qcnn {

namespace {

// CODATA values in eV units.
constexpr double kPlanckEvS = 4.135667696e-15;
constexpr double kBoltzmannEvK = 8.617333262e-5;

void require_prob(double p, const char *name) {
    if (!(p >= 0.0 && p <= 1.0))
        throw ValidationError(std::string(name) + " = " + std::to_string(p) +
                              " is not a probability");
}

} // namespace

void DeviceNoiseProfile::validate() const {
    require_prob(p1_eff(), "scaled p1");
    require_prob(p2_eff(), "scaled p2");
    if (t_1q < 0 || t_2q < 0)
        throw ValidationError("gate lengths must be non-negative");
    if (T1 <= 0 || T2 <= 0)
        throw ValidationError("T1 and T2 must be positive");
    if (temperature < 0)
        throw ValidationError("temperature must be non-negative");
    if (scale < 0)
        throw ValidationError("scale must be non-negative");
}

DeviceNoiseProfile DeviceNoiseProfile::ibmq_jakarta() {
    DeviceNoiseProfile p;
    p.p1 = 0.0004;
    p.p2 = 0.0126;
    // Same arithmetic as the JSON loader so both paths agree bit-exactly.
    p.t_1q = 35.56 * 1e-9;
    p.t_2q = 327.11 * 1e-9;
    p.T1 = 128.43 * 1e-6;
    p.T2 = 33.85 * 1e-6;
    p.temperature = 0.0;
    return p;
}

double p_excited(double temperature_kelvin, double frequency_hertz) {
    if (temperature_kelvin < 0)
        throw std::invalid_argument("temperature must be >= 0");
    if (frequency_hertz <= 0)
        throw std::invalid_argument("frequency must be > 0");
    if (temperature_kelvin == 0)
        return 0.0;
    const double x = 2.0 * kPlanckEvS * frequency_hertz /
                     (kBoltzmannEvK * temperature_kelvin);
    return 1.0 / (1.0 + std::exp(x));
}

KrausChannel depolarizing_channel(double p, int dim) {
    require_prob(p, "p");
    if (dim == 2) {
        // Pauli form with p1 = 3p/4 reproduces E(rho) = p I/2 + (1-p) rho.
        const double p1 = 0.75 * p;
        std::vector<Matrix> ops;
        ops.push_back(std::sqrt(1.0 - p1) * identity(2));
        ops.push_back(std::sqrt(p1 / 3.0) * pauli_x());
        ops.push_back(std::sqrt(p1 / 3.0) * pauli_y());
        ops.push_back(std::sqrt(p1 / 3.0) * pauli_z());
        return KrausChannel(1, std::move(ops));
    }
    if (dim == 4) {
        const double p2 = 15.0 * p / 16.0;
        const Matrix paulis[4] = {identity(2), pauli_x(), pauli_y(),
                                  pauli_z()};
        std::vector<Matrix> ops;
        ops.push_back(std::sqrt(1.0 - p2) * identity(4));
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                if (a == 0 && b == 0)
                    continue;
                ops.push_back(std::sqrt(p2 / 15.0) *
                              kron(paulis[a], paulis[b]));
            }
        return KrausChannel(2, std::move(ops));
    }
    throw std::invalid_argument("depolarizing channel supports dim 2 or 4");
}

ThermalRelaxationParams ThermalRelaxationParams::from(double T1, double T2,
                                                      double t_gate,
                                                      double p_e) {
    if (T1 <= 0 || T2 <= 0)
        throw ValidationError("T1 and T2 must be positive");
    if (t_gate < 0)
        throw ValidationError("gate duration must be non-negative");
    require_prob(p_e, "p_e");
    ThermalRelaxationParams tp;
    tp.eps_T1 = std::exp(-t_gate / T1);
    tp.eps_T2 = std::exp(-t_gate / T2);
    tp.p_reset = 1.0 - tp.eps_T1;
    tp.p_e = p_e;
    tp.p_z = (1.0 - tp.p_reset) * (1.0 - tp.eps_T2 / tp.eps_T1) / 2.0;
    tp.p_r0 = (1.0 - p_e) * tp.p_reset;
    tp.p_r1 = p_e * tp.p_reset;
    tp.p_id = 1.0 - tp.p_z - tp.p_r0 - tp.p_r1;
    return tp;
}

void ChoiMap::validate(double psd_tol, double tp_tol) const {
    if (lambda.rows() != 4 || lambda.cols() != 4)
        throw ValidationError("Choi matrix must be 4x4");
    if ((lambda - lambda.adjoint()).cwiseAbs().maxCoeff() > psd_tol)
        throw ValidationError("Choi matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> es(lambda, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -psd_tol)
        throw ValidationError("Choi matrix is not positive semidefinite");
    // Tr_out over the second (output) factor must give the identity.
    Matrix tr = Matrix::Zero(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            tr(i, j) = lambda(2 * i, 2 * j) + lambda(2 * i + 1, 2 * j + 1);
    if ((tr - identity(2)).cwiseAbs().maxCoeff() > tp_tol)
        throw ValidationError("Choi map is not trace preserving");
}

ThermalChannel thermal_relaxation_channel(double T1, double T2, double t_gate,
                                          double p_e) {
    const auto tp = ThermalRelaxationParams::from(T1, T2, t_gate, p_e);
    if (T2 <= T1) {
        for (double p : {tp.p_z, tp.p_r0, tp.p_r1, tp.p_id})
            require_prob(p, "thermal relaxation probability");
        Matrix k2 = Matrix::Zero(2, 2), k3 = Matrix::Zero(2, 2);
        Matrix k4 = Matrix::Zero(2, 2), k5 = Matrix::Zero(2, 2);
        k2(0, 0) = 1;
        k3(0, 1) = 1;
        k4(1, 0) = 1;
        k5(1, 1) = 1;
        std::vector<Matrix> ops;
        ops.push_back(std::sqrt(tp.p_id) * identity(2));
        if (tp.p_z > 0)
            ops.push_back(std::sqrt(tp.p_z) * pauli_z());
        if (tp.p_r0 > 0) {
            ops.push_back(std::sqrt(tp.p_r0) * k2);
            ops.push_back(std::sqrt(tp.p_r0) * k3);
        }
        if (tp.p_r1 > 0) {
            ops.push_back(std::sqrt(tp.p_r1) * k4);
            ops.push_back(std::sqrt(tp.p_r1) * k5);
        }
        return KrausChannel(1, std::move(ops));
    }
    ChoiMap choi;
    choi.lambda = Matrix::Zero(4, 4);
    choi.lambda(0, 0) = 1.0 - tp.p_e * tp.p_reset;
    choi.lambda(0, 3) = tp.eps_T2;
    choi.lambda(3, 0) = tp.eps_T2;
    choi.lambda(1, 1) = tp.p_e * tp.p_reset;
    choi.lambda(2, 2) = (1.0 - tp.p_e) * tp.p_reset;
    choi.lambda(3, 3) = 1.0 - (1.0 - tp.p_e) * tp.p_reset;
    choi.validate();
    return choi;
}

KrausChannel kraus_from_choi(const ChoiMap &choi) {
    choi.validate();
    Eigen::SelfAdjointEigenSolver<Matrix> es(choi.lambda);
    std::vector<Matrix> ops;
    for (int k = 0; k < 4; ++k) {
        const double ev = es.eigenvalues()(k);
        if (ev <= 1e-14)
            continue;
        // Lambda = sum |i><j| (x) E(|i><j|): eigenvector entry (i*2 + o)
        // contributes K[o][i].
        Matrix kop = Matrix::Zero(2, 2);
        const auto v = es.eigenvectors().col(k);
        for (int i = 0; i < 2; ++i)
            for (int o = 0; o < 2; ++o)
                kop(o, i) = std::sqrt(ev) * v(2 * i + o);
        ops.push_back(std::move(kop));
    }
    return KrausChannel(1, std::move(ops));
}

DeviceNoiseProfile load_profile(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw MissingDataError("cannot open profile file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception &e) {
        throw FormatError("profile " + path + ": " + e.what());
    }
    DeviceNoiseProfile p;
    auto need = [&](const char *field) -> double {
        if (!j.contains(field) || !j[field].is_number())
            throw FormatError("profile " + path + ": missing numeric field '" +
                              field + "'");
        return j[field].get<double>();
    };
    p.p1 = need("p1");
    p.p2 = need("p2");
    p.t_1q = need("t_1q_ns") * 1e-9;
    p.t_2q = need("t_2q_ns") * 1e-9;
    p.T1 = need("T1_us") * 1e-6;
    p.T2 = need("T2_us") * 1e-6;
    p.temperature = j.value("temperature_K", 0.0);
    if (j.contains("frequency_GHz"))
        p.frequency = j["frequency_GHz"].get<double>() * 1e9;
    try {
        p.validate();
    } catch (const ValidationError &e) {
        throw ValidationError("profile " + path + ": " + e.what());
    }
    return p;
}

DeviceNoiseProfile scale_profile(const DeviceNoiseProfile &profile, double k) {
    if (k < 1)
        throw std::invalid_argument("scale multiplier must be >= 1");
    DeviceNoiseProfile out = profile;
    out.scale = profile.scale * k;
    out.validate();
    return out;
}

namespace {

// Wire bookkeeping across in-place partial traces.
struct LiveRegister {
    std::vector<int> position; // circuit wire -> current index, -1 if traced
    int live = 0;

    explicit LiveRegister(int total) : position(total), live(total) {
        for (int w = 0; w < total; ++w)
            position[w] = w;
    }

    int index(int wire) const {
        const int p = position[wire];
        if (p < 0)
            throw ValidationError("gate on an already traced wire");
        return p;
    }

    void trace(int wire) {
        const int p = index(wire);
        position[wire] = -1;
        for (auto &q : position)
            if (q > p)
                --q;
        --live;
    }
};

} // namespace

MixedState noisy_execute(const BoundCircuit &bound, const PureState &input,
                         const DeviceNoiseProfile &profile,
                         double *expectation_out, const StepHook &hook) {
    if (!bound.circuit().basis_only)
        throw std::invalid_argument(
            "noisy execution requires a basis-compiled circuit");
    profile.validate();

    const QcnnCircuit &circ = bound.circuit();
    MixedState state = purestate_to_mixed(lift_input(input, circ.total_qubits));
    LiveRegister reg(circ.total_qubits);

    const double pe = p_excited(profile.temperature, profile.frequency);
    const KrausChannel dep1 = depolarizing_channel(profile.p1_eff(), 2);
    const KrausChannel dep2 = depolarizing_channel(profile.p2_eff(), 4);
    auto trc_for = [&](double t_gate) -> KrausChannel {
        const ThermalChannel ch =
            thermal_relaxation_channel(profile.T1, profile.T2, t_gate, pe);
        if (const auto *kr = std::get_if<KrausChannel>(&ch))
            return *kr;
        return kraus_from_choi(std::get<ChoiMap>(ch));
    };
    const KrausChannel trc1 = trc_for(profile.t_1q_eff());
    const KrausChannel trc2 = trc_for(profile.t_2q_eff());

    std::size_t step = 0;
    for (const auto &bi : bound.instrs()) {
        if (bi.is_trace) {
            state = partial_trace(state, {reg.index(bi.trace_wire)});
            reg.trace(bi.trace_wire);
            if (hook)
                hook(state, step);
            ++step;
            continue;
        }
        std::vector<int> wires;
        wires.push_back(reg.index(bi.wires[0]));
        if (bi.arity == 2)
            wires.push_back(reg.index(bi.wires[1]));

        Matrix gm(bi.arity == 1 ? 2 : 4, bi.arity == 1 ? 2 : 4);
        for (Eigen::Index r = 0; r < gm.rows(); ++r)
            for (Eigen::Index c = 0; c < gm.cols(); ++c)
                gm(r, c) = bi.m[static_cast<std::size_t>(r * gm.cols() + c)];
        apply_unitary(state, GateMatrix{bi.kind, bi.arity, std::move(gm)},
                      wires);

        if (bi.arity == 1)
            apply_channel(state, dep1, {wires[0]});
        else
            apply_channel(state, dep2, wires);

        const KrausChannel &trc = (bi.arity == 1) ? trc1 : trc2;
        for (int q = 0; q < state.num_qubits; ++q)
            apply_channel(state, trc, {q});

        if (hook)
            hook(state, step);
        ++step;
    }

    if (expectation_out)
        *expectation_out =
            expectation(state, Observable{reg.index(circ.measurement_wire)});
    return state;
}

} // namespace qcnn
