// Copyright 2026 The XpookyNet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "xpooky/checksum.h"
#include "xpooky/dataset_io.h"
#include "xpooky/errors.h"
#include "xpooky/nn/checkpoint.h"
#include "xpooky/sweeps.h"
#include "xpooky/version.h"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace xpooky;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Worker count: `requested` (0 = all cores), capped by XPOOKY_THREADS.
size_t resolve_threads(size_t requested) {
    size_t n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
    if (const char *cap = std::getenv("XPOOKY_THREADS")) {
        char *end = nullptr;
        unsigned long v = std::strtoul(cap, &end, 10);
        if (end == cap || *end != '\0' || v == 0) {
            throw UsageError("XPOOKY_THREADS must be a positive integer");
        }
        n = std::min<size_t>(n, v);
    }
    return n;
}

void write_text(const fs::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    out << text;
    if (!out) {
        throw std::runtime_error("failed writing '" + path.string() + "'");
    }
}

void ensure_dir(const fs::path &dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create directory '" + dir.string() + "': " + ec.message());
    }
}

/// Resolved options of the active subcommand as INI lines, loadable again
/// with --config.
std::string command_ini(const CLI::App &app, const CLI::App &sub) {
    std::istringstream all(app.config_to_str(true, false));
    std::string prefix = sub.get_name() + ".";
    std::string line, out;
    while (std::getline(all, line)) {
        if (line.rfind(prefix, 0) == 0) {
            out += line + "\n";
        }
    }
    return out;
}

/// Provenance shared by every manifest: the resolved command configuration
/// plus tool and format versions.
json base_manifest(const CLI::App &app, const CLI::App &sub) {
    return json{
        {"tool", "xpooky"},
        {"version", kVersion},
        {"command", sub.get_name()},
        {"config_ini", command_ini(app, sub)},
        {"dataset_format_version", kDatasetVersion},
        {"model_format_version", nn::kCheckpointVersion},
    };
}

void write_manifest(const fs::path &dir, const CLI::App &app, const CLI::App &sub, const json &manifest) {
    write_text(dir / "manifest.json", manifest.dump(2) + "\n");
    write_text(dir / "run.ini", command_ini(app, sub));
}

struct GenerateArgs {
    size_t qubits = 2;
    size_t per_class = 100;
    uint64_t seed = 0;
    std::string out;
    double purity = 0;
    double purity_width = 0.02;
    std::string mode = "psd-guaranteed";
    size_t m_min = 1;
    size_t m_max = 10;
    double nonzero = -1;
    size_t threads = 0;
};

int run_generate(const CLI::App &app, const CLI::App &sub, const GenerateArgs &a) {
    GenSpec spec;
    spec.n_qubits = a.qubits;
    spec.count_per_class = a.per_class;
    spec.seed = a.seed;
    spec.m_min = a.m_min;
    spec.m_max = a.m_max;
    spec.mode = generator_mode_from_string(a.mode);
    if (a.purity > 0) {
        spec.target_purity = PurityBin{a.purity, a.purity_width};
    }
    if (a.nonzero >= 0) {
        spec.nonzero_fraction = a.nonzero;
    }
    spec.validate();
    auto ds = build_dataset(spec, resolve_threads(a.threads));

    // The embedded manifest holds only what determines the bytes, so equal
    // specs give identical files wherever they are written.
    json embedded{{"tool", "xpooky"}, {"version", kVersion}, {"gen_spec", spec}};
    embedded["audit"] = {{"checked", ds.audit.checked}, {"violations", ds.audit.violations}};
    fs::path out(a.out);
    if (out.has_parent_path()) {
        ensure_dir(out.parent_path());
    }
    uint64_t checksum = write_dataset(out, ds.records, ds.n_qubits, embedded);
    json manifest = base_manifest(app, sub);
    manifest["gen_spec"] = spec;
    manifest["audit"] = embedded["audit"];
    manifest["payload_checksum"] = hex64(checksum);
    write_text(fs::path(a.out + ".manifest.json"), manifest.dump(2) + "\n");
    std::cout << "wrote " << ds.records.size() << " records to " << a.out << " (fnv1a64 " << hex64(checksum)
              << ")\n";
    return 0;
}

struct TrainArgs {
    std::string data;
    std::string val;
    double val_fraction = 0.1;
    std::string variant = "brch";
    std::string task = "classify";
    bool plateau = false;
    std::string out;
    double width = 1.0;
    size_t epochs = 20;
    double lr = 0.01;
    double momentum = 0.9;
    size_t batch = 64;
    size_t patience = 2;
    double factor = 0.5;
    double min_lr = 1e-5;
    double min_delta = 1e-4;
    uint64_t seed = 0;
};

/// Deterministic hold-out: shuffle indices with a seed derived from `seed`.
void split_validation(std::vector<LabeledState> &records, std::vector<LabeledState> &val, double fraction,
                      uint64_t seed) {
    if (fraction <= 0 || fraction >= 1) {
        throw std::invalid_argument("--val-fraction must lie in (0, 1)");
    }
    std::vector<size_t> order(records.size());
    std::iota(order.begin(), order.end(), 0);
    Rng rng(derive_seed(seed, 0x56414c));
    std::shuffle(order.begin(), order.end(), rng);
    size_t n_val = std::max<size_t>(1, static_cast<size_t>(fraction * static_cast<double>(records.size())));
    if (n_val >= records.size()) {
        throw std::invalid_argument("data set too small to hold out a validation split");
    }
    std::vector<LabeledState> train;
    for (size_t k = 0; k < order.size(); k++) {
        (k < n_val ? val : train).push_back(records[order[k]]);
    }
    records = std::move(train);
}

int run_train(const CLI::App &app, const CLI::App &sub, const TrainArgs &a) {
    auto data = read_dataset(a.data);
    auto records = std::move(data.records);
    std::vector<LabeledState> val_records;
    if (!a.val.empty()) {
        auto v = read_dataset(a.val);
        if (v.n_qubits != data.n_qubits) {
            throw DimensionMismatch("validation data has " + std::to_string(v.n_qubits) + " qubits but training data has " +
                                    std::to_string(data.n_qubits));
        }
        val_records = std::move(v.records);
    } else {
        split_validation(records, val_records, a.val_fraction, a.seed);
    }

    auto variant = nn::variant_from_string(a.variant);
    auto task = nn::task_from_string(a.task);
    auto spec = nn::build_model(variant, data.n_qubits, task, nn::ArchOptions{}.scaled(a.width));
    spec.name = nn::to_string(variant) + (a.plateau ? "+plat" : "");
    nn::Model model(spec);
    model.init(a.seed);

    nn::TrainConfig config;
    config.lr = a.lr;
    config.momentum = a.momentum;
    config.batch_size = a.batch;
    config.epochs = a.epochs;
    config.plateau = a.plateau;
    config.plateau_config = {a.patience, a.factor, a.min_lr, a.min_delta};
    config.seed = a.seed;
    config.validate();

    auto train_set = make_training_data(records, data.n_qubits, task);
    auto val_set = make_training_data(val_records, data.n_qubits, task);
    auto history = nn::train(model, train_set, val_set, config, [](const nn::EpochRecord &e) {
        std::cerr << "epoch " << e.epoch << " train_loss " << e.train_loss << " val_loss " << e.val_loss << " lr "
                  << e.lr << "\n";
    });

    fs::path dir(a.out);
    ensure_dir(dir);
    json manifest = base_manifest(app, sub);
    manifest["train_config"] = config;
    manifest["data"] = {{"path", a.data}, {"manifest", data.manifest}};
    manifest["train_records"] = records.size();
    manifest["val_records"] = val_records.size();
    manifest["best_epoch"] = history.best_epoch;
    manifest["best_val_loss"] = history.best_val_loss;
    nn::save_checkpoint(dir / "model.xpkm", model, manifest);
    manifest["model_checksum"] = hex64(nn::model_checksum(model));
    write_text(dir / "history.csv", history.to_csv());
    write_manifest(dir, app, sub, manifest);
    std::cout << "best epoch " << history.best_epoch << ", val loss " << history.best_val_loss << ", model "
              << hex64(nn::model_checksum(model)) << "\n";
    return 0;
}

std::vector<std::string> class_names_for(size_t n_qubits) {
    std::vector<std::string> names;
    for (size_t c = 0; c < class_count(n_qubits); c++) {
        names.push_back(class_name(n_qubits, static_cast<ClassId>(c)));
    }
    return names;
}

size_t model_qubits(const nn::Model &model) {
    return model.spec().input.h == 8 ? 3 : 2;
}

struct EvaluateArgs {
    std::string model;
    std::string data;
    std::string out = ".";
};

int run_evaluate(const CLI::App &app, const CLI::App &sub, const EvaluateArgs &a) {
    auto ckpt = nn::load_checkpoint(a.model);
    auto data = read_dataset(a.data);
    if (model_qubits(ckpt.model) != data.n_qubits) {
        throw DimensionMismatch("model expects " + ckpt.model.spec().input.str() + " inputs (" +
                                std::to_string(model_qubits(ckpt.model)) + " qubits) but the data has " +
                                std::to_string(data.n_qubits) + " qubits");
    }
    auto ev = evaluate_model(ckpt.model, data.records, data.n_qubits);
    auto names = class_names_for(data.n_qubits);

    fs::path dir(a.out);
    ensure_dir(dir);
    uint64_t checksum = nn::model_checksum(ckpt.model);
    auto stem = report_stem("evaluate", ckpt.manifest.value("train_config", json::object()).value("seed", 0),
                            checksum);
    json metrics = to_json_value(ev.metrics, names);
    write_text(dir / (stem + "-metrics.json"), metrics.dump(2) + "\n");
    write_text(dir / (stem + "-confusion.csv"), ev.cm.to_csv(names));
    json manifest = base_manifest(app, sub);
    manifest["model_checksum"] = hex64(checksum);
    manifest["data"] = {{"path", a.data}, {"manifest", data.manifest}};
    manifest["metrics"] = metrics;
    write_manifest(dir, app, sub, manifest);
    std::cout << metrics.dump(2) << "\n";
    return 0;
}

struct SweepArgs {
    std::string kind;
    std::string model;
    std::string data;
    std::string space = "entire";
    std::vector<size_t> budgets{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15};
    size_t trials = 20;
    std::vector<double> purities{1.0, 0.83, 0.56, 0.37};
    double purity_width = 0.02;
    size_t per_class = 200;
    uint64_t seed = 0;
    std::string out;
    size_t threads = 0;
};

int run_sweep(const CLI::App &app, const CLI::App &sub, const SweepArgs &a) {
    auto ckpt = nn::load_checkpoint(a.model);
    size_t threads = resolve_threads(a.threads);
    uint64_t checksum = nn::model_checksum(ckpt.model);
    fs::path dir(a.out);
    json manifest = base_manifest(app, sub);
    manifest["model_checksum"] = hex64(checksum);

    SweepCurve curve;
    json summary;
    if (a.kind == "incomplete") {
        if (a.data.empty()) {
            throw UsageError("sweep --kind incomplete needs --data");
        }
        auto data = read_dataset(a.data);
        IncompleteSweepConfig config;
        config.budgets = a.budgets;
        config.trials = a.trials;
        config.space = sweep_space_from_string(a.space);
        config.seed = a.seed;
        config.threads = threads;
        curve = incomplete_sweep(ckpt.model, data.records, config);
        manifest["data"] = {{"path", a.data}, {"manifest", data.manifest}};
        summary = curve.to_json();
    } else {
        GenSpec base;
        base.n_qubits = model_qubits(ckpt.model);
        base.count_per_class = a.per_class;
        base.seed = a.seed;
        base.target_purity = PurityBin{1.0, a.purity_width};
        auto sweep = purity_sweep(ckpt.model, base, a.purities, a.seed, threads);
        curve = sweep.curve;
        summary = curve.to_json();
        auto names = class_names_for(base.n_qubits);
        json per = json::array();
        ensure_dir(dir);
        for (const auto &p : sweep.points) {
            per.push_back({{"purity", p.purity}, {"metrics", to_json_value(p.metrics, names)}});
            char tag[32];
            std::snprintf(tag, sizeof(tag), "-p%.2f-confusion.csv", p.purity);
            write_text(dir / (report_stem("purity", a.seed, checksum) + tag), p.cm.to_csv(names));
        }
        summary["per_purity"] = per;
        manifest["gen_spec"] = base;
    }
    ensure_dir(dir);
    auto stem = report_stem(a.kind, a.seed, checksum);
    write_text(dir / (stem + ".csv"), curve.to_csv());
    write_text(dir / (stem + ".json"), summary.dump(2) + "\n");
    write_manifest(dir, app, sub, manifest);
    std::cout << curve.to_csv();
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Entanglement detection with convolutional networks on density matrices"};
    app.set_config("--config", "", "INI file with [generate]/[train]/[evaluate]/[sweep] sections; flags override it");
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    GenerateArgs gen;
    auto *g = app.add_subcommand("generate", "Build a balanced labeled dataset");
    g->add_option("--qubits", gen.qubits, "2 or 3")->check(CLI::IsMember({2, 3}))->capture_default_str();
    g->add_option("--per-class", gen.per_class, "Records per class")->check(CLI::PositiveNumber)->capture_default_str();
    g->add_option("--seed", gen.seed)->capture_default_str();
    g->add_option("--out", gen.out, "Dataset file")->required();
    g->add_option("--purity", gen.purity, "Purity bin center (0 = unconstrained)")->capture_default_str();
    g->add_option("--purity-width", gen.purity_width)->capture_default_str();
    g->add_option("--mode", gen.mode)->check(CLI::IsMember({"psd-guaranteed", "paper-literal"}))->capture_default_str();
    g->add_option("--m-min", gen.m_min)->capture_default_str();
    g->add_option("--m-max", gen.m_max)->capture_default_str();
    g->add_option("--nonzero-fraction", gen.nonzero, "Minimum nonzero fraction (-1 = default)")->capture_default_str();
    g->add_option("--threads", gen.threads, "Worker threads (0 = all cores)")->capture_default_str();

    TrainArgs tr;
    auto *t = app.add_subcommand("train", "Train a model and save the best checkpoint");
    t->add_option("--data", tr.data)->required();
    t->add_option("--val", tr.val, "Validation dataset (default: hold out --val-fraction)");
    t->add_option("--val-fraction", tr.val_fraction)->capture_default_str();
    t->add_option("--variant", tr.variant)
        ->check(CLI::IsMember({"nn", "simple", "brch", "bnsep", "brch-bnsep"}))
        ->capture_default_str();
    t->add_option("--task", tr.task)->check(CLI::IsMember({"classify", "regress"}))->capture_default_str();
    t->add_flag("--plateau", tr.plateau, "Reduce the learning rate on validation plateaus");
    t->add_option("--out", tr.out, "Output directory")->required();
    t->add_option("--width", tr.width, "Filter count multiplier")->check(CLI::PositiveNumber)->capture_default_str();
    t->add_option("--epochs", tr.epochs)->check(CLI::PositiveNumber)->capture_default_str();
    t->add_option("--lr", tr.lr)->capture_default_str();
    t->add_option("--momentum", tr.momentum)->capture_default_str();
    t->add_option("--batch", tr.batch)->check(CLI::PositiveNumber)->capture_default_str();
    t->add_option("--patience", tr.patience)->capture_default_str();
    t->add_option("--factor", tr.factor)->capture_default_str();
    t->add_option("--min-lr", tr.min_lr)->capture_default_str();
    t->add_option("--min-delta", tr.min_delta)->capture_default_str();
    t->add_option("--seed", tr.seed)->capture_default_str();

    EvaluateArgs ev;
    auto *e = app.add_subcommand("evaluate", "Confusion matrix and metrics of a model on a dataset");
    e->add_option("--model", ev.model)->required();
    e->add_option("--data", ev.data)->required();
    e->add_option("--out", ev.out, "Output directory")->capture_default_str();

    SweepArgs sw;
    auto *s = app.add_subcommand("sweep", "Incomplete-measurement or purity sweep");
    s->add_option("--kind", sw.kind)->check(CLI::IsMember({"incomplete", "purity"}))->required();
    s->add_option("--model", sw.model)->required();
    s->add_option("--data", sw.data, "Test set (incomplete sweeps)");
    s->add_option("--space", sw.space)->check(CLI::IsMember({"entire", "bell"}))->capture_default_str();
    s->add_option("--budgets", sw.budgets, "Retained non-identity bases")->delimiter(',')->capture_default_str();
    s->add_option("--trials", sw.trials)->check(CLI::PositiveNumber)->capture_default_str();
    s->add_option("--purities", sw.purities)->delimiter(',')->capture_default_str();
    s->add_option("--purity-width", sw.purity_width)->capture_default_str();
    s->add_option("--per-class", sw.per_class, "Fresh records per class and purity")->capture_default_str();
    s->add_option("--seed", sw.seed)->capture_default_str();
    s->add_option("--out", sw.out, "Output directory")->required();
    s->add_option("--threads", sw.threads, "Worker threads (0 = all cores)")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &err) {
        return app.exit(err);
    } catch (const CLI::CallForAllHelp &err) {
        return app.exit(err);
    } catch (const CLI::CallForVersion &err) {
        return app.exit(err);
    } catch (const CLI::ParseError &err) {
        std::cerr << "error: " << err.what() << "\n" << app.help();
        return 2;
    }

    try {
        if (g->parsed()) {
            return run_generate(app, *g, gen);
        }
        if (t->parsed()) {
            return run_train(app, *t, tr);
        }
        if (e->parsed()) {
            return run_evaluate(app, *e, ev);
        }
        return run_sweep(app, *s, sw);
    } catch (const UsageError &err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const std::exception &err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
}
