#include "gloss/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "gloss/csv_io.hpp"
#include "gloss/gloss.hpp"

namespace gloss {

RocCurve roc_auc(const Vector& scores, const BoolArray& labels) {
    const Index n = scores.size();
    if (labels.size() != n) throw std::invalid_argument("roc_auc: length mismatch");
    const Index pos = labels.count();
    const Index neg = n - pos;
    if (pos == 0 || neg == 0)
        throw std::invalid_argument("roc_auc needs at least one positive and one negative label");

    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index(0));
    std::sort(order.begin(), order.end(),
              [&](Index a, Index b) { return scores(a) > scores(b); });

    RocCurve curve;
    curve.points.emplace_back(0.0, 0.0);
    Scalar tp = 0, fp = 0, prev_fpr = 0, prev_tpr = 0;
    std::size_t i = 0;
    while (i < order.size()) {
        // One threshold per distinct score: all ties advance in a single step.
        const Scalar threshold = scores(order[i]);
        while (i < order.size() && scores(order[i]) == threshold) {
            if (labels(order[i])) ++tp;
            else ++fp;
            ++i;
        }
        const Scalar fpr = fp / static_cast<Scalar>(neg);
        const Scalar tpr = tp / static_cast<Scalar>(pos);
        curve.points.emplace_back(fpr, tpr);
        curve.auc += (fpr - prev_fpr) * (tpr + prev_tpr) / 2;
        prev_fpr = fpr;
        prev_tpr = tpr;
    }
    return curve;
}

void write_roc_csv(const RocCurve& curve, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << "fpr,tpr\n";
    for (const auto& [fpr, tpr] : curve.points)
        out << format_value(fpr) << ',' << format_value(tpr) << '\n';
}

Algorithm parse_algorithm(const std::string& name) {
    if (name == "gloss") return Algorithm::Gloss;
    if (name == "hics") return Algorithm::HiCS;
    if (name == "lof") return Algorithm::Lof;
    if (name == "loop") return Algorithm::Loop;
    if (name == "local-loop") return Algorithm::LocalLoop;
    throw std::invalid_argument("unknown algorithm: " + name);
}

std::string algorithm_name(Algorithm algo) {
    switch (algo) {
    case Algorithm::Gloss: return "gloss";
    case Algorithm::HiCS: return "hics";
    case Algorithm::Lof: return "lof";
    case Algorithm::Loop: return "loop";
    case Algorithm::LocalLoop: return "local-loop";
    }
    throw std::invalid_argument("unknown algorithm enum value");
}

std::vector<Subspace> all_feature_pairs(Index dims) {
    if (dims < 2) throw std::invalid_argument("feature pairs require at least two features");
    std::vector<Subspace> pairs;
    pairs.reserve(static_cast<std::size_t>(dims * (dims - 1) / 2));
    for (Index i = 0; i < dims; ++i)
        for (Index j = i + 1; j < dims; ++j) pairs.push_back(Subspace{{i, j}});
    return pairs;
}

Vector score_dataset(Algorithm algo, const Dataset& data, const LoopParams& params,
                     const SearchParams& search,
                     const std::optional<std::vector<Subspace>>& subspaces,
                     Algorithm hics_inner) {
    switch (algo) {
    case Algorithm::Gloss: {
        SearchParams sp = search;
        sp.mode = SearchMode::GlossGlobal;
        return gloss(data, params, subspaces, sp).aggregate;
    }
    case Algorithm::HiCS: {
        std::vector<Subspace> subs;
        if (subspaces) {
            subs = *subspaces;
        } else {
            SearchParams sp = search;
            sp.mode = SearchMode::HiCS;
            for (auto& cs : search_subspaces(data, sp)) subs.push_back(std::move(cs.subspace));
        }
        if (subs.empty()) throw std::invalid_argument("no subspaces to score");
        if (hics_inner == Algorithm::Loop) return local_loop_scores(data, subs, params);
        if (hics_inner != Algorithm::Lof)
            throw std::invalid_argument("inner scorer must be lof or loop");
        std::optional<Vector> best;
        for (const auto& sub : subs) {
            const Vector s = lof_scores(project(data, sub), params.k, params.metric);
            best = best ? best->cwiseMax(s).eval() : s;
        }
        return *best;
    }
    case Algorithm::Lof:
        return lof_scores(data, params.k, params.metric);
    case Algorithm::Loop:
        return loop_scores(data, params);
    case Algorithm::LocalLoop:
        return local_loop_scores(data, subspaces ? *subspaces : all_feature_pairs(data.dims()),
                                 params);
    }
    throw std::invalid_argument("unknown algorithm enum value");
}

namespace {

Dataset materialise_dataset(const DatasetSpec& spec, std::uint64_t seed) {
    Dataset data;
    if (spec.synth) {
        SynthConfig cfg = *spec.synth;
        cfg.seed = seed;
        data = generate_synthetic(cfg);
    } else if (spec.path) {
        CsvOptions opts;
        opts.id_column = spec.id_column;
        opts.label_column = spec.label_column;
        opts.class_column = spec.class_column;
        data = load_csv(*spec.path, opts);
    } else {
        throw std::invalid_argument("dataset '" + spec.id + "' has neither synth config nor path");
    }

    switch (spec.protocol) {
    case DatasetSpec::Protocol::AsIs:
        break;
    case DatasetSpec::Protocol::Implant:
        data = implant_benchmark_outliers(data, spec.implant_fraction, seed);
        break;
    case DatasetSpec::Protocol::Minority:
        data.labels = minority_class_labels(data);
        break;
    }
    if (!data.labels)
        throw std::invalid_argument("dataset '" + spec.id + "' produced no ground-truth labels");

    // Scaling happens after labelling/implantation: implants copy raw donor
    // values, scoring then sees comparable feature ranges.
    if (spec.standardize_features) data = standardize(data);
    return data;
}

DatasetSpec::Protocol parse_protocol(const std::string& name) {
    if (name == "as-is") return DatasetSpec::Protocol::AsIs;
    if (name == "implant") return DatasetSpec::Protocol::Implant;
    if (name == "minority") return DatasetSpec::Protocol::Minority;
    throw std::invalid_argument("unknown protocol: " + name);
}

} // namespace

ExperimentReport run_experiment(const ExperimentMatrix& matrix) {
    if (matrix.algorithms.empty() || matrix.datasets.empty() || matrix.seeds.empty())
        throw std::invalid_argument("experiment matrix needs algorithms, datasets and seeds");

    ExperimentReport report;
    for (const auto& spec : matrix.datasets) {
        for (const std::uint64_t seed : matrix.seeds) {
            std::optional<Dataset> data;
            std::string data_error;
            try {
                data = materialise_dataset(spec, seed);
            } catch (const std::exception& e) {
                data_error = e.what();
            }
            for (const Algorithm algo : matrix.algorithms) {
                CellResult cell;
                cell.algorithm = algorithm_name(algo);
                cell.config_id = spec.id;
                cell.seed = seed;
                cell.auc = std::numeric_limits<Scalar>::quiet_NaN();
                cell.runtime_seconds = 0;
                if (!data) {
                    cell.error = data_error;
                    report.cells.push_back(std::move(cell));
                    continue;
                }
                try {
                    SearchParams sp = matrix.search;
                    sp.seed = seed;
                    const auto t0 = std::chrono::steady_clock::now();
                    const Vector scores =
                        score_dataset(algo, *data, matrix.params, sp, std::nullopt,
                                      matrix.hics_inner);
                    const auto t1 = std::chrono::steady_clock::now();
                    cell.runtime_seconds = std::chrono::duration<Scalar>(t1 - t0).count();
                    const RocCurve curve = roc_auc(scores, *data->labels);
                    cell.auc = curve.auc;
                    if (!matrix.output_dir.empty())
                        write_roc_csv(curve, matrix.output_dir + "/roc_" + cell.algorithm + "_" +
                                                 cell.config_id + "_" + std::to_string(seed) +
                                                 ".csv");
                } catch (const std::exception& e) {
                    cell.error = e.what();
                }
                report.cells.push_back(std::move(cell));
            }
        }
    }

    std::sort(report.cells.begin(), report.cells.end(), [](const CellResult& a, const CellResult& b) {
        if (a.algorithm != b.algorithm) return a.algorithm < b.algorithm;
        if (a.config_id != b.config_id) return a.config_id < b.config_id;
        return a.seed < b.seed;
    });
    return report;
}

void write_report_csv(const ExperimentReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << "algorithm,config_id,seed,auc,runtime_seconds\n";

    std::size_t i = 0;
    while (i < report.cells.size()) {
        const std::string& algo = report.cells[i].algorithm;
        const std::string& config = report.cells[i].config_id;
        Scalar auc_sum = 0, rt_sum = 0;
        Index valid = 0;
        std::size_t j = i;
        for (; j < report.cells.size() && report.cells[j].algorithm == algo &&
               report.cells[j].config_id == config;
             ++j) {
            const CellResult& c = report.cells[j];
            out << c.algorithm << ',' << c.config_id << ',' << c.seed << ','
                << format_value(c.auc) << ',' << format_value(c.runtime_seconds) << '\n';
            if (!std::isnan(c.auc)) {
                auc_sum += c.auc;
                rt_sum += c.runtime_seconds;
                ++valid;
            }
        }
        const Scalar mean_auc =
            valid ? auc_sum / static_cast<Scalar>(valid) : std::numeric_limits<Scalar>::quiet_NaN();
        const Scalar mean_rt = valid ? rt_sum / static_cast<Scalar>(valid) : 0;
        out << algo << ',' << config << ",mean," << format_value(mean_auc) << ','
            << format_value(mean_rt) << '\n';
        i = j;
    }
}

ExperimentMatrix load_matrix_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("invalid JSON in " + path + ": " + e.what());
    }

    ExperimentMatrix m;
    for (const auto& a : j.at("algorithms")) m.algorithms.push_back(parse_algorithm(a));
    for (const auto& s : j.at("seeds")) m.seeds.push_back(s.get<std::uint64_t>());

    m.params.k = j.value("k", Index(20));
    m.params.lambda = j.value("lambda", Scalar(3));
    m.params.metric = parse_metric(j.value("metric", std::string("euclidean")));

    if (j.contains("search")) {
        const auto& s = j["search"];
        m.search.monte_carlo_iters = s.value("monte_carlo_iters", 50);
        m.search.alpha = s.value("alpha", Scalar(0.1));
        m.search.candidate_cutoff = s.value("candidate_cutoff", 400);
        m.search.max_subspaces = s.value("max_subspaces", 100);
        m.search.level_cap = s.value("level_cap", 5);
    }
    m.hics_inner = parse_algorithm(j.value("hics_inner", std::string("lof")));
    m.output_dir = j.value("output_dir", std::string());

    for (const auto& dj : j.at("datasets")) {
        DatasetSpec spec;
        spec.id = dj.at("id").get<std::string>();
        if (dj.contains("synth")) {
            const auto& sj = dj["synth"];
            SynthConfig cfg;
            cfg.n = sj.value("n", Index(1000));
            cfg.dims = sj.value("dims", Index(10));
            cfg.n_clusters = sj.value("n_clusters", Index(3));
            cfg.mu_upper = sj.value("mu_upper", Scalar(3));
            cfg.sigma2 = sj.value("sigma2", Scalar(1));
            cfg.n_outliers = sj.value("n_outliers", Index(50));
            spec.synth = cfg;
        }
        if (dj.contains("path")) spec.path = dj["path"].get<std::string>();
        if (dj.contains("id_column")) spec.id_column = dj["id_column"].get<std::string>();
        if (dj.contains("label_column")) spec.label_column = dj["label_column"].get<std::string>();
        if (dj.contains("class_column")) spec.class_column = dj["class_column"].get<std::string>();
        spec.protocol = parse_protocol(dj.value("protocol", std::string("as-is")));
        spec.implant_fraction = dj.value("implant_fraction", Scalar(0.10));
        spec.standardize_features = dj.value("standardize", false);
        m.datasets.push_back(std::move(spec));
    }
    return m;
}

} // namespace gloss
