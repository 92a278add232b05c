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

#include "qcnn/architect.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace qcnn {

namespace {

// Allocates parameter slots. With sharing on, one block is reused by every
// template instance of the same (layer, repetition) for convolutions and of
// the same layer for pooling; with sharing off every instance gets a fresh
// block. Each allocation is one share group.
class SlotAllocator {
  public:
    explicit SlotAllocator(bool sharing) : sharing_(sharing) {}

    std::vector<ParamRef> fresh_block(int count) {
        std::vector<ParamRef> refs(count);
        for (int i = 0; i < count; ++i)
            refs[i] = ParamRef{next_slot_++, next_group_};
        ++next_group_;
        return refs;
    }

    // Shared block keyed by caller-provided identity.
    std::vector<ParamRef> block(int count, std::optional<int> share_key) {
        if (!sharing_ || !share_key)
            return fresh_block(count);
        auto it = shared_.find(*share_key);
        if (it != shared_.end())
            return it->second;
        auto refs = fresh_block(count);
        shared_.emplace(*share_key, refs);
        return refs;
    }

    int num_slots() const { return next_slot_; }

  private:
    bool sharing_;
    int next_slot_ = 0;
    int next_group_ = 0;
    std::map<int, std::vector<ParamRef>> shared_;
};

// Greedy maximal matchings over the ring edges (w1,w2),...,(wn,w1), taken
// top-down. Even rosters resolve to two steps, odd rosters to three.
std::vector<std::vector<std::pair<int, int>>>
ring_steps(const std::vector<int> &roster) {
    const int n = static_cast<int>(roster.size());
    std::vector<std::pair<int, int>> edges;
    for (int j = 0; j + 1 < n; ++j)
        edges.emplace_back(roster[j], roster[j + 1]);
    edges.emplace_back(roster[n - 1], roster[0]);

    std::vector<std::vector<std::pair<int, int>>> steps;
    std::vector<std::set<int>> used;
    for (const auto &e : edges) {
        bool placed = false;
        for (std::size_t s = 0; s < steps.size() && !placed; ++s) {
            if (!used[s].count(e.first) && !used[s].count(e.second)) {
                steps[s].push_back(e);
                used[s].insert(e.first);
                used[s].insert(e.second);
                placed = true;
            }
        }
        if (!placed) {
            steps.push_back({e});
            used.push_back({e.first, e.second});
        }
    }
    return steps;
}

void emit_conv(std::vector<Instruction> &program, const AnsatzSet &ansatz,
               int a, int b, const std::vector<ParamRef> &refs) {
    if (ansatz.id == 1) {
        for (auto &op : conv1_template(a, b, {refs[0], refs[1]}))
            program.emplace_back(op);
    } else {
        std::array<ParamRef, 15> p{};
        std::copy_n(refs.begin(), 15, p.begin());
        for (auto &op : conv2_template(a, b, p))
            program.emplace_back(op);
    }
}

} // namespace

const char *to_string(PaddingMethod method) {
    switch (method) {
    case PaddingMethod::ZeroData:
        return "zero_data";
    case PaddingMethod::PeriodicData:
        return "periodic_data";
    case PaddingMethod::SkipPooling:
        return "skip_pooling";
    case PaddingMethod::LayerWiseAncilla:
        return "layerwise_ancilla";
    case PaddingMethod::SingleAncilla:
        return "single_ancilla";
    }
    return "?";
}

PaddingMethod padding_method_from_string(const std::string &name) {
    if (name == "zero_data" || name == "zero")
        return PaddingMethod::ZeroData;
    if (name == "periodic_data" || name == "periodic")
        return PaddingMethod::PeriodicData;
    if (name == "skip_pooling" || name == "skip")
        return PaddingMethod::SkipPooling;
    if (name == "layerwise_ancilla" || name == "layerwise")
        return PaddingMethod::LayerWiseAncilla;
    if (name == "single_ancilla" || name == "single")
        return PaddingMethod::SingleAncilla;
    throw ConfigError("unknown padding method: " + name);
}

int ceil_log2(int k) {
    if (k < 1)
        throw std::invalid_argument("ceil_log2 needs k >= 1");
    int m = 0;
    while ((1 << m) < k)
        ++m;
    return m;
}

int layer_parity(int K, int layer_index) {
    const int denom = 1 << (layer_index - 1);
    const int count = (K + denom - 1) / denom;
    return count % 2;
}

std::vector<int> QcnnCircuit::reps() const {
    std::vector<int> out;
    out.reserve(layers.size());
    for (const auto &l : layers)
        out.push_back(l.reps);
    return out;
}

QcnnCircuit plan_architecture(int K, PaddingMethod method,
                              const std::vector<int> &reps,
                              const AnsatzSet &ansatz, bool sharing) {
    if (K < 2)
        throw std::invalid_argument("need at least 2 input qubits");
    const int m = std::max(1, ceil_log2(K));
    if (static_cast<int>(reps.size()) != m)
        throw std::invalid_argument("reps length must be ceil(log2(K)) = " +
                                    std::to_string(m));
    for (int l : reps)
        if (l < 1)
            throw std::invalid_argument("every l_i must be >= 1");

    QcnnCircuit circuit;
    circuit.input_qubits = K;
    circuit.method = method;
    circuit.ansatz = ansatz;
    circuit.sharing = sharing;

    int total = is_classical_padding(method) ? (1 << m) : K;
    std::vector<int> roster(total);
    for (int w = 0; w < total; ++w)
        roster[w] = w;

    SlotAllocator alloc(sharing);
    int single_ancilla = -1;
    const int conv_params = ansatz.conv_param_count();
    const int pool_params = ansatz.pool_param_count();
    int share_key = 0; // distinct per (layer, rep) conv block / layer pool

    for (int i = 1; i <= m; ++i) {
        LayerPlan layer;
        layer.index = i;
        layer.reps = reps[i - 1];
        layer.parity = layer_parity(K, i);

        const bool final_layer = (i == m);
        const bool odd = roster.size() % 2 == 1;
        if (!final_layer && odd && method == PaddingMethod::LayerWiseAncilla) {
            const int w = total++;
            roster.push_back(w);
            layer.ancilla_added = w;
        } else if (!final_layer && odd &&
                   method == PaddingMethod::SingleAncilla) {
            if (single_ancilla < 0)
                single_ancilla = total++;
            roster.push_back(single_ancilla);
            layer.ancilla_added = single_ancilla;
        }
        layer.roster = roster;
        const int n = static_cast<int>(roster.size());

        if (final_layer) {
            if (n != 2)
                throw ValidationError("final layer must hold 2 qubits");
            layer.conv_steps = {{{roster[0], roster[1]}}};
        } else {
            layer.conv_steps = ring_steps(roster);
        }

        for (int r = 0; r < layer.reps; ++r) {
            const int conv_key = share_key++;
            for (const auto &step : layer.conv_steps)
                for (const auto &pair : step)
                    emit_conv(circuit.program, ansatz, pair.first, pair.second,
                              alloc.block(conv_params, conv_key));
        }

        // Pooling: pair top-down; the lower wire of each pair is the control
        // and is discarded. Skip pooling leaves the odd wire for the next
        // layer; the single ancilla is never traced.
        std::vector<int> next;
        const int pool_key = share_key++;
        for (int j = 0; j + 1 < n; j += 2) {
            const int survivor = roster[j];
            const int control = roster[j + 1];
            layer.pool_pairs.push_back({control, survivor});
            std::optional<std::array<ParamRef, 2>> pparams;
            if (ansatz.parameterized_pool()) {
                auto refs = alloc.block(pool_params, pool_key);
                pparams = std::array<ParamRef, 2>{refs[0], refs[1]};
            }
            for (auto &instr : pooling_template(control, survivor, pparams)) {
                if (std::holds_alternative<TraceOut>(instr) &&
                    control == single_ancilla)
                    continue; // reused ancilla carries its state onward
                circuit.program.push_back(std::move(instr));
            }
            next.push_back(survivor);
        }
        if (n % 2 == 1) {
            layer.skipped_wire = roster[n - 1];
            next.push_back(roster[n - 1]);
        }

        circuit.layers.push_back(std::move(layer));
        roster = std::move(next);
    }

    if (roster.size() != 1)
        throw ValidationError("circuit did not reduce to a single wire");
    circuit.measurement_wire = roster[0];
    circuit.total_qubits = total;
    circuit.num_slots = alloc.num_slots();
    return circuit;
}

ResourceReport estimate_resources(int K, PaddingMethod method,
                                  const std::vector<int> &reps,
                                  const AnsatzSet &ansatz, bool /*sharing*/) {
    if (K < 2)
        throw std::invalid_argument("need at least 2 input qubits");
    const int m = std::max(1, ceil_log2(K));
    if (static_cast<int>(reps.size()) != m)
        throw std::invalid_argument("reps length must be ceil(log2(K)) = " +
                                    std::to_string(m));
    for (int l : reps)
        if (l < 1)
            throw std::invalid_argument("every l_i must be >= 1");

    const long C = ansatz.conv_param_count();
    const long P = ansatz.pool_param_count();

    ResourceReport rep;
    int sum_parity = 0;
    for (int i = 1; i < m; ++i)
        sum_parity += layer_parity(K, i);

    switch (method) {
    case PaddingMethod::ZeroData:
    case PaddingMethod::PeriodicData:
        rep.ancilla_qubits = (1 << m) - K;
        break;
    case PaddingMethod::SkipPooling:
        rep.ancilla_qubits = 0;
        break;
    case PaddingMethod::LayerWiseAncilla:
        rep.ancilla_qubits = sum_parity;
        break;
    case PaddingMethod::SingleAncilla:
        rep.ancilla_qubits = std::min(1, sum_parity);
        break;
    }

    int depth = 0;
    for (int i = 1; i <= m; ++i)
        depth += 2 * reps[i - 1] + 1;
    depth -= reps[m - 1];
    if (method == PaddingMethod::SkipPooling)
        for (int i = 1; i < m; ++i)
            depth += layer_parity(K, i) * reps[i - 1];
    rep.logical_depth = depth;

    long shared = 0;
    for (int i = 1; i <= m; ++i)
        shared += static_cast<long>(reps[i - 1]) * C + P;
    rep.params_shared = shared;

    long unshared = 0;
    for (int i = 1; i < m; ++i) {
        const int li = reps[i - 1];
        const int yi = layer_parity(K, i);
        long conv_i = 0, pool_i = 0;
        switch (method) {
        case PaddingMethod::ZeroData:
        case PaddingMethod::PeriodicData: {
            const long ni = (1L << m) >> (i - 1);
            conv_i = ni * li;
            pool_i = ni / 2;
            break;
        }
        case PaddingMethod::SkipPooling: {
            const long ni = (K + (1 << (i - 1)) - 1) >> (i - 1);
            conv_i = ni * li;
            pool_i = (ni - yi) / 2;
            break;
        }
        case PaddingMethod::LayerWiseAncilla:
        case PaddingMethod::SingleAncilla: {
            const long ni =
                ((K + (1 << (i - 1)) - 1) >> (i - 1)) + yi;
            conv_i = ni * li;
            pool_i = ni / 2;
            break;
        }
        }
        unshared += conv_i * C + pool_i * P;
        rep.per_layer.push_back({static_cast<int>(conv_i),
                                 static_cast<int>(pool_i),
                                 (2 + (method == PaddingMethod::SkipPooling
                                           ? yi
                                           : 0)) *
                                         li +
                                     1});
    }
    unshared += static_cast<long>(reps[m - 1]) * C + P;
    rep.per_layer.push_back({reps[m - 1], 1, reps[m - 1] + 1});
    rep.params_unshared = unshared;
    return rep;
}

ResourceReport measure_resources(const QcnnCircuit &circuit) {
    ResourceReport rep;
    rep.ancilla_qubits = circuit.total_qubits - circuit.input_qubits;

    const long C = circuit.ansatz.conv_param_count();
    const long P = circuit.ansatz.pool_param_count();
    long shared = 0, unshared = 0;
    int depth = 0;
    for (const auto &layer : circuit.layers) {
        long conv_instances = 0;
        for (const auto &step : layer.conv_steps)
            conv_instances += static_cast<long>(step.size());
        conv_instances *= layer.reps;
        const long pools = static_cast<long>(layer.pool_pairs.size());
        const int layer_depth =
            static_cast<int>(layer.conv_steps.size()) * layer.reps +
            (layer.pool_pairs.empty() ? 0 : 1);
        depth += layer_depth;
        unshared += conv_instances * C + pools * P;
        shared += static_cast<long>(layer.reps) * C + P;
        rep.per_layer.push_back({static_cast<int>(conv_instances),
                                 static_cast<int>(pools), layer_depth});
    }
    rep.logical_depth = depth;
    rep.params_shared = shared;
    rep.params_unshared = unshared;

    // Cross-check: distinct slots in the emitted program must match the
    // count for the circuit's sharing mode.
    std::set<int> slots;
    for (const auto &instr : circuit.program)
        if (const auto *op = std::get_if<CircuitOp>(&instr))
            for (const auto &ref : op->param_refs)
                slots.insert(ref.slot);
    const long expected = circuit.sharing ? shared : unshared;
    if (static_cast<long>(slots.size()) != expected ||
        circuit.num_slots != expected)
        throw ValidationError("slot count mismatch with built structure");
    return rep;
}

int min_ancillas_multiqubit(int m, int n) {
    if (n < 2)
        throw std::invalid_argument("convolution arity must be >= 2");
    if (m < n)
        throw std::invalid_argument("layer must hold at least n qubits");
    for (int extra = 0; extra < n; ++extra)
        if ((m + extra) % n == 0)
            return extra;
    return 0; // unreachable
}

QcnnCircuit decompose_circuit(const QcnnCircuit &circuit) {
    QcnnCircuit out = circuit;
    out.program = decompose_to_basis(circuit.program);
    out.basis_only = true;
    return out;
}

} // namespace qcnn
