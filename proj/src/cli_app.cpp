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

#include "qcnn/cli_app.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

namespace qcnn {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char *kVersion = "0.1.0";

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string resolve_data_path(const std::string &path) {
    if (path.empty())
        return path;
    if (fs::path(path).is_absolute() || fs::exists(path))
        return path;
    if (const char *root = std::getenv("QCNN_DATA_DIR")) {
        const fs::path candidate = fs::path(root) / path;
        if (fs::exists(candidate))
            return candidate.string();
    }
    return path;
}

void require_file(const std::string &path, const char *what) {
    if (path.empty())
        throw ConfigError(std::string("missing ") + what + " path");
    if (!fs::exists(path))
        throw MissingDataError(std::string(what) + " file not found: " + path);
}

void write_atomic(const fs::path &path, const std::string &content) {
    fs::create_directories(path.parent_path());
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << content;
    }
    fs::rename(tmp, path);
}

std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

json config_to_json(const ExperimentConfig &c) {
    json j;
    j["dataset"] = c.dataset == DataSource::Mnist ? "mnist" : "wdbc";
    if (c.dataset == DataSource::Mnist)
        j["data"] = {{"images", c.mnist_images}, {"labels", c.mnist_labels}};
    else
        j["data"] = {{"csv", c.wdbc_csv}};
    j["label_pair"] = {c.label_pair[0], c.label_pair[1]};
    j["method"] = to_string(c.method);
    if (!c.sweep_methods.empty()) {
        json ms = json::array();
        for (auto m : c.sweep_methods)
            ms.push_back(to_string(m));
        j["methods"] = ms;
    }
    j["ansatz"] = c.ansatz;
    j["sharing"] = c.sharing;
    if (!c.reps.empty())
        j["reps"] = c.reps;
    j["splits"] = {{"train", c.splits.train_size},
                   {"val", c.splits.val_size},
                   {"test", c.splits.test_size},
                   {"seed", c.splits.seed}};
    j["train"] = {{"learning_rate", c.train.learning_rate},
                  {"batch_size", c.train.batch_size},
                  {"epochs", c.train.epochs},
                  {"restarts", c.train.restarts},
                  {"seed", c.train.seed}};
    j["encode_pad"] = c.encode_pad == PadMode::Zero
                          ? "zero"
                          : (c.encode_pad == PadMode::Periodic ? "periodic"
                                                               : "none");
    json ex;
    ex["kind"] = c.executor.noisy ? "noisy" : "noiseless";
    if (c.executor.noisy) {
        ex["profile"] = c.executor.profile_path;
        ex["scale"] = c.executor.scale;
    }
    j["executor"] = ex;
    j["noisy_training"] = c.noisy_training;
    j["output_dir"] = c.output_dir;
    return j;
}

json manifest_json(const ExperimentConfig &config) {
    json m;
    m["version"] = kVersion;
    m["created_utc"] = timestamp_utc();
    m["config"] = config_to_json(config);
    m["constants"] = {
        {"parameter_init", "iid uniform [0, 2*pi), mt19937_64(seed + r)"},
        {"label_map", "first pair entry -> +1, second -> -1"},
        {"prediction_rule", "sign(f); f = 0 counts as +1"},
        {"kde_bandwidth", "0.9 * min(sigma, IQR/1.34) * n^(-1/5)"},
        {"adam", {{"beta1", 0.9}, {"beta2", 0.999}, {"eps", 1e-8}}},
        {"mnist_pipeline", "scale 1/255, PCA(30) fit on train split"},
        {"wdbc_pipeline", "per-feature Gaussian-CDF (KDE) fit on train"},
        {"depolarizing", "affine p; Pauli Kraus with p1 = 3p/4 (15p/16)"},
    };
    json seeds = json::array();
    for (int r = 0; r < config.train.restarts; ++r)
        seeds.push_back(config.train.seed + static_cast<std::uint64_t>(r));
    m["seeds"] = seeds;
    return m;
}

std::string metrics_csv(const Metrics &metrics) {
    std::ostringstream out;
    out << "record,restart,seed,epoch,train_loss,val_accuracy,test_accuracy,"
           "test_accuracy_std\n";
    for (std::size_t r = 0; r < metrics.restarts.size(); ++r) {
        const auto &rm = metrics.restarts[r];
        for (std::size_t e = 0; e < rm.epoch_train_loss.size(); ++e) {
            out << "epoch," << r << ',' << rm.seed << ',' << (e + 1) << ','
                << fmt_double(rm.epoch_train_loss[e]) << ',';
            if (e < rm.epoch_val_accuracy.size())
                out << fmt_double(rm.epoch_val_accuracy[e]);
            out << ",,\n";
        }
        out << "final," << r << ',' << rm.seed << ",,,,"
            << fmt_double(rm.test_accuracy) << ",\n";
    }
    out << "summary,,,,,," << fmt_double(metrics.mean_test_accuracy) << ','
        << fmt_double(metrics.std_test_accuracy) << '\n';
    return out.str();
}

int exit_code_for(const std::exception &e) {
    if (dynamic_cast<const MissingDataError *>(&e))
        return 3;
    if (dynamic_cast<const ValidationError *>(&e))
        return 4;
    if (dynamic_cast<const FormatError *>(&e))
        return 3;
    return 2; // config / usage
}

} // namespace

int ExperimentConfig::input_qubits() const { return ceil_log2(feature_dim()); }

ExperimentConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw MissingDataError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception &e) {
        throw ConfigError("config " + path + ": " + e.what());
    }
    if (j.contains("config") && j.contains("version"))
        j = j["config"]; // run manifest round trip

    ExperimentConfig c;
    try {
        const std::string ds = j.at("dataset").get<std::string>();
        if (ds == "mnist")
            c.dataset = DataSource::Mnist;
        else if (ds == "wdbc")
            c.dataset = DataSource::Wdbc;
        else
            throw ConfigError("dataset must be 'mnist' or 'wdbc'");

        const json &data = j.at("data");
        if (c.dataset == DataSource::Mnist) {
            c.mnist_images =
                resolve_data_path(data.at("images").get<std::string>());
            c.mnist_labels =
                resolve_data_path(data.at("labels").get<std::string>());
        } else {
            c.wdbc_csv = resolve_data_path(data.at("csv").get<std::string>());
        }

        if (j.contains("label_pair")) {
            const auto lp = j["label_pair"].get<std::vector<int>>();
            if (lp.size() != 2 || lp[0] == lp[1])
                throw ConfigError("label_pair must hold two distinct labels");
            c.label_pair = {lp[0], lp[1]};
        }
        if (j.contains("method"))
            c.method =
                padding_method_from_string(j["method"].get<std::string>());
        if (j.contains("methods"))
            for (const auto &m : j["methods"])
                c.sweep_methods.push_back(
                    padding_method_from_string(m.get<std::string>()));
        c.ansatz = j.value("ansatz", 2);
        if (c.ansatz != 1 && c.ansatz != 2)
            throw ConfigError("ansatz must be 1 or 2");
        c.sharing = j.value("sharing", false);
        if (j.contains("reps"))
            c.reps = j["reps"].get<std::vector<int>>();

        const json &sp = j.at("splits");
        c.splits.train_size = sp.at("train").get<int>();
        c.splits.val_size = sp.value("val", 0);
        c.splits.test_size = sp.at("test").get<int>();
        c.splits.seed = sp.value("seed", std::uint64_t{0});
        c.splits.label_pair = c.label_pair;

        if (j.contains("train")) {
            const json &t = j["train"];
            c.train.learning_rate = t.value("learning_rate", 0.01);
            c.train.batch_size = t.value("batch_size", 25);
            c.train.epochs = t.value("epochs", 10);
            c.train.restarts = t.value("restarts", 10);
            c.train.seed = t.value("seed", std::uint64_t{0});
        }
        if (j.contains("encode_pad"))
            c.encode_pad =
                pad_mode_from_string(j["encode_pad"].get<std::string>());

        if (j.contains("executor")) {
            const json &ex = j["executor"];
            const std::string kind = ex.value("kind", "noiseless");
            if (kind == "noisy") {
                c.executor.noisy = true;
                c.executor.profile_path = resolve_data_path(
                    ex.at("profile").get<std::string>());
                c.executor.scale = ex.value("scale", 1.0);
            } else if (kind != "noiseless") {
                throw ConfigError("executor.kind must be noiseless or noisy");
            }
        }
        c.noisy_training = j.value("noisy_training", false);
        c.output_dir = j.value("output_dir", std::string("runs/out"));
    } catch (const json::exception &e) {
        throw ConfigError("config " + path + ": " + e.what());
    }

    // Fail fast: every referenced file must exist before any compute.
    if (c.dataset == DataSource::Mnist) {
        require_file(c.mnist_images, "MNIST image");
        require_file(c.mnist_labels, "MNIST label");
    } else {
        require_file(c.wdbc_csv, "WDBC csv");
    }
    if (c.executor.noisy)
        require_file(c.executor.profile_path, "noise profile");

    const int m = ceil_log2(c.input_qubits());
    if (c.reps.empty())
        c.reps.assign(static_cast<std::size_t>(m), 1);
    if (static_cast<int>(c.reps.size()) != m)
        throw ConfigError("reps must have length " + std::to_string(m));
    for (int l : c.reps)
        if (l < 1)
            throw ConfigError("every reps entry must be >= 1");
    if (c.splits.train_size <= 0 || c.splits.test_size <= 0)
        throw ConfigError("train and test split sizes must be positive");
    try {
        c.train.validate(c.splits.train_size);
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
    return c;
}

QcnnCircuit build_circuit(const ExperimentConfig &config,
                          PaddingMethod method) {
    return plan_architecture(config.input_qubits(), method, config.reps,
                             AnsatzSet::from_id(config.ansatz),
                             config.sharing);
}

Splits load_splits(const ExperimentConfig &config, PaddingMethod method) {
    RawDataset raw;
    EncodeOptions opts;
    if (config.dataset == DataSource::Mnist) {
        raw = load_mnist(config.mnist_images, config.mnist_labels);
        opts.apply_pca = true;
        opts.pca_dim = config.feature_dim();
    } else {
        raw = load_wdbc(config.wdbc_csv);
        opts.apply_kde = true;
    }
    const int K = config.input_qubits();
    if (is_classical_padding(method)) {
        opts.target_qubits = 1 << ceil_log2(K);
        opts.pad = method == PaddingMethod::ZeroData ? PadMode::Zero
                                                     : PadMode::Periodic;
    } else {
        opts.target_qubits = K;
        opts.pad = config.encode_pad;
    }
    return make_splits(raw, config.splits, opts);
}

int cmd_resources(const ResourcesOptions &options, std::ostream &out) {
    if (!options.qubits && !options.range)
        throw ConfigError("one of --qubits or --range is required");
    if (options.qubits && options.range)
        throw ConfigError("--qubits and --range are mutually exclusive");
    if (options.format != "csv" && options.format != "json")
        throw ConfigError("--format must be csv or json");

    const auto reps_for = [&](int K) {
        const int m = std::max(1, ceil_log2(K));
        if (options.reps.empty())
            return std::vector<int>(static_cast<std::size_t>(m), 1);
        if (options.reps.size() == 1)
            return std::vector<int>(static_cast<std::size_t>(m),
                                    options.reps[0]);
        if (static_cast<int>(options.reps.size()) != m)
            throw ConfigError("--reps needs 1 or " + std::to_string(m) +
                              " values for K=" + std::to_string(K));
        return options.reps;
    };

    const std::vector<PaddingMethod> all = {
        PaddingMethod::ZeroData, PaddingMethod::PeriodicData,
        PaddingMethod::SkipPooling, PaddingMethod::LayerWiseAncilla,
        PaddingMethod::SingleAncilla};
    std::vector<PaddingMethod> methods;
    if (options.method == "all")
        methods = all;
    else
        methods = {padding_method_from_string(options.method)};

    if (options.qubits) {
        const int K = *options.qubits;
        if (K < 2)
            throw ConfigError("--qubits must be >= 2");
        json rows = json::array();
        for (auto method : methods) {
            const auto reps = reps_for(K);
            const auto r1 = estimate_resources(K, method, reps,
                                               AnsatzSet::set1(),
                                               options.sharing);
            const auto r2 = estimate_resources(K, method, reps,
                                               AnsatzSet::set2(),
                                               options.sharing);
            json row;
            row["qubits"] = K;
            row["method"] = to_string(method);
            row["ancilla_qubits"] = r1.ancilla_qubits;
            row["circuit_depth"] = r1.logical_depth;
            if (!options.ansatz || *options.ansatz == 1) {
                row["params_shared_set1"] = r1.params_shared;
                row["params_unshared_set1"] = r1.params_unshared;
            }
            if (!options.ansatz || *options.ansatz == 2) {
                row["params_shared_set2"] = r2.params_shared;
                row["params_unshared_set2"] = r2.params_unshared;
            }
            rows.push_back(row);
        }
        if (options.format == "json") {
            out << rows.dump(2) << '\n';
        } else {
            out << "qubits,method,ancilla_qubits,circuit_depth";
            if (!options.ansatz || *options.ansatz == 1)
                out << ",params_shared_set1,params_unshared_set1";
            if (!options.ansatz || *options.ansatz == 2)
                out << ",params_shared_set2,params_unshared_set2";
            out << '\n';
            for (const auto &row : rows) {
                out << row["qubits"].get<int>() << ','
                    << row["method"].get<std::string>() << ','
                    << row["ancilla_qubits"].get<int>() << ','
                    << row["circuit_depth"].get<int>();
                if (row.contains("params_shared_set1"))
                    out << ',' << row["params_shared_set1"].get<long>() << ','
                        << row["params_unshared_set1"].get<long>();
                if (row.contains("params_shared_set2"))
                    out << ',' << row["params_shared_set2"].get<long>() << ','
                        << row["params_unshared_set2"].get<long>();
                out << '\n';
            }
        }
        return 0;
    }

    // Range mode: depth-difference and unshared-parameter curves vs K.
    const auto [lo, hi] = *options.range;
    if (lo < 2 || hi < lo)
        throw ConfigError("--range bounds must satisfy 2 <= A <= B");
    json rows = json::array();
    for (int K = lo; K <= hi; ++K) {
        const auto reps = reps_for(K);
        const auto skip = estimate_resources(K, PaddingMethod::SkipPooling,
                                             reps, AnsatzSet::set1(), false);
        const auto pad = estimate_resources(K, PaddingMethod::SingleAncilla,
                                            reps, AnsatzSet::set1(), false);
        const auto cls1 = estimate_resources(K, PaddingMethod::ZeroData, reps,
                                             AnsatzSet::set1(), false);
        const auto skip2 = estimate_resources(K, PaddingMethod::SkipPooling,
                                              reps, AnsatzSet::set2(), false);
        const auto pad2 = estimate_resources(K, PaddingMethod::SingleAncilla,
                                             reps, AnsatzSet::set2(), false);
        const auto cls2 = estimate_resources(K, PaddingMethod::ZeroData, reps,
                                             AnsatzSet::set2(), false);
        json row;
        row["qubits"] = K;
        row["depth_skip"] = skip.logical_depth;
        row["depth_qubit_padding"] = pad.logical_depth;
        row["depth_diff"] = skip.logical_depth - pad.logical_depth;
        row["unshared_classical_set1"] = cls1.params_unshared;
        row["unshared_skip_set1"] = skip.params_unshared;
        row["unshared_qubit_padding_set1"] = pad.params_unshared;
        row["unshared_classical_set2"] = cls2.params_unshared;
        row["unshared_skip_set2"] = skip2.params_unshared;
        row["unshared_qubit_padding_set2"] = pad2.params_unshared;
        rows.push_back(row);
    }
    if (options.format == "json") {
        out << rows.dump(2) << '\n';
    } else {
        out << "qubits,depth_skip,depth_qubit_padding,depth_diff,"
               "unshared_classical_set1,unshared_skip_set1,"
               "unshared_qubit_padding_set1,unshared_classical_set2,"
               "unshared_skip_set2,unshared_qubit_padding_set2\n";
        for (const auto &row : rows)
            out << row["qubits"].get<int>() << ','
                << row["depth_skip"].get<int>() << ','
                << row["depth_qubit_padding"].get<int>() << ','
                << row["depth_diff"].get<int>() << ','
                << row["unshared_classical_set1"].get<long>() << ','
                << row["unshared_skip_set1"].get<long>() << ','
                << row["unshared_qubit_padding_set1"].get<long>() << ','
                << row["unshared_classical_set2"].get<long>() << ','
                << row["unshared_skip_set2"].get<long>() << ','
                << row["unshared_qubit_padding_set2"].get<long>() << '\n';
    }
    return 0;
}

int cmd_train(const ExperimentConfig &config, const std::string &config_path,
              int jobs) {
    (void)config_path;
    const QcnnCircuit circuit = build_circuit(config, config.method);
    const Splits splits = load_splits(config, config.method);

    std::unique_ptr<Executor> executor;
    if (config.executor.noisy) {
        auto profile = scale_profile(load_profile(config.executor.profile_path),
                                     config.executor.scale);
        executor = std::make_unique<NoisyExecutor>(profile);
    } else {
        executor = std::make_unique<NoiselessExecutor>();
    }

    const Metrics metrics =
        train(circuit, splits, config.train, *executor, jobs);

    const fs::path out_dir(config.output_dir);
    write_atomic(out_dir / "metrics.csv", metrics_csv(metrics));
    write_atomic(out_dir / "manifest.json", manifest_json(config).dump(2) + "\n");

    json params;
    params["restarts"] = json::array();
    for (const auto &rm : metrics.restarts)
        params["restarts"].push_back(
            {{"seed", rm.seed}, {"values", rm.final_params}});
    write_atomic(out_dir / "params.json", params.dump(2) + "\n");

    std::cout << "mean_test_accuracy=" << fmt_double(metrics.mean_test_accuracy)
              << " std=" << fmt_double(metrics.std_test_accuracy)
              << " wall_s=" << fmt_double(metrics.wall_seconds) << '\n';
    return 0;
}

int cmd_noise_sweep(const ExperimentConfig &config,
                    const std::string &config_path,
                    const std::vector<double> &scales, int jobs) {
    (void)config_path;
    if (!config.executor.noisy)
        throw ConfigError("noise-sweep requires executor.kind = noisy");
    if (scales.empty())
        throw ConfigError("at least one scale is required");
    const DeviceNoiseProfile base = load_profile(config.executor.profile_path);
    for (double s : scales)
        scale_profile(base, s).validate(); // fail fast on every scale

    std::vector<PaddingMethod> methods = config.sweep_methods;
    if (methods.empty())
        methods = {PaddingMethod::SkipPooling, PaddingMethod::SingleAncilla};

    std::ostringstream csv;
    csv << "record,method,scale,restart,seed,test_accuracy,"
           "test_accuracy_std\n";

    for (auto method : methods) {
        const QcnnCircuit circuit =
            decompose_circuit(build_circuit(config, method));
        const Splits splits = load_splits(config, method);

        if (config.noisy_training) {
            // Full-fidelity protocol: train and evaluate at each scale.
            for (double scale : scales) {
                NoisyExecutor noisy(scale_profile(base, scale));
                const Metrics m =
                    train(circuit, splits, config.train, noisy, jobs);
                for (std::size_t r = 0; r < m.restarts.size(); ++r)
                    csv << "cell," << to_string(method) << ',' << scale << ','
                        << r << ',' << m.restarts[r].seed << ','
                        << fmt_double(m.restarts[r].test_accuracy) << ",\n";
                csv << "summary," << to_string(method) << ',' << scale
                    << ",,," << fmt_double(m.mean_test_accuracy) << ','
                    << fmt_double(m.std_test_accuracy) << '\n';
            }
            continue;
        }

        // Default protocol: train once per restart in the noiseless
        // executor, then evaluate the trained parameters under noise at
        // every scale (noisy training at experiment scale is far beyond a
        // workstation budget).
        NoiselessExecutor noiseless;
        const Metrics m =
            train(circuit, splits, config.train, noiseless, jobs);
        for (double scale : scales) {
            NoisyExecutor noisy(scale_profile(base, scale));
            std::vector<double> accs;
            for (std::size_t r = 0; r < m.restarts.size(); ++r) {
                ParamStore params{m.restarts[r].final_params};
                const double acc = evaluate_accuracy(circuit, params,
                                                     splits.test, noisy, jobs);
                accs.push_back(acc);
                csv << "cell," << to_string(method) << ',' << scale << ','
                    << r << ',' << m.restarts[r].seed << ','
                    << fmt_double(acc) << ",\n";
            }
            double mean = 0;
            for (double a : accs)
                mean += a;
            mean /= static_cast<double>(accs.size());
            double var = 0;
            for (double a : accs)
                var += (a - mean) * (a - mean);
            const double sd = accs.size() > 1
                                  ? std::sqrt(var / (accs.size() - 1.0))
                                  : 0.0;
            csv << "summary," << to_string(method) << ',' << scale << ",,,"
                << fmt_double(mean) << ',' << fmt_double(sd) << '\n';
        }
    }

    const fs::path out_dir(config.output_dir);
    write_atomic(out_dir / "sweep.csv", csv.str());
    write_atomic(out_dir / "manifest.json", manifest_json(config).dump(2) + "\n");
    std::cout << "sweep written to " << (out_dir / "sweep.csv").string()
              << '\n';
    return 0;
}

int run_cli(int argc, char **argv) {
    CLI::App app{"QCNN padding-architecture benchmark harness"};
    app.require_subcommand(1);

    ResourcesOptions ropts;
    std::string range_text;
    auto *res = app.add_subcommand(
        "resources", "closed-form resource reports (Table/curve data)");
    res->add_option("--qubits", ropts.qubits, "input qubit count K");
    res->add_option("--range", range_text, "K range, e.g. 2..64");
    res->add_option("--method", ropts.method,
                    "zero|periodic|skip|layerwise|single|all");
    res->add_option("--reps", ropts.reps,
                    "per-layer loop counts l_i (single value broadcasts)")
        ->delimiter(',');
    res->add_option("--ansatz", ropts.ansatz, "restrict to ansatz set 1 or 2")
        ->check(CLI::IsMember({1, 2}));
    res->add_flag("--sharing", ropts.sharing, "parameter sharing flag");
    res->add_option("--format", ropts.format, "csv|json");

    std::string config_path;
    int jobs = 0;
    auto *tr = app.add_subcommand("train", "train a QCNN classifier");
    tr->add_option("--config", config_path, "experiment config JSON")
        ->required();
    tr->add_option("--jobs", jobs, "worker threads (default: all cores)");
    std::string out_override;
    tr->add_option("--out", out_override, "override output directory");

    std::vector<double> scales{1, 2, 3, 4, 5};
    auto *sw = app.add_subcommand(
        "noise-sweep", "accuracy vs noise-scale sweep (Fig. 6 style data)");
    sw->add_option("--config", config_path, "experiment config JSON")
        ->required();
    sw->add_option("--scales", scales, "noise multipliers")->delimiter(',');
    sw->add_option("--jobs", jobs, "worker threads (default: all cores)");
    sw->add_option("--out", out_override, "override output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    try {
        if (res->parsed()) {
            if (!range_text.empty()) {
                const auto dots = range_text.find("..");
                if (dots == std::string::npos)
                    throw ConfigError("--range must look like A..B");
                ropts.range = {std::stoi(range_text.substr(0, dots)),
                               std::stoi(range_text.substr(dots + 2))};
            }
            return cmd_resources(ropts, std::cout);
        }
        ExperimentConfig config = load_config(config_path);
        if (!out_override.empty())
            config.output_dir = out_override;
        if (tr->parsed())
            return cmd_train(config, config_path, jobs);
        return cmd_noise_sweep(config, config_path, scales, jobs);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
}

} // namespace qcnn
