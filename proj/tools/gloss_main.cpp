// Command-line front end: generate synthetic benchmark data, search for
// high-contrast subspaces, score datasets with the detection algorithms, and
// run full evaluation matrices. Every subcommand is deterministic given its
// flags and seed.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gloss/csv_io.hpp"
#include "gloss/eval.hpp"
#include "gloss/gloss.hpp"
#include "gloss/parallel.hpp"
#include "gloss/synthgen.hpp"

namespace {

/// A seed left unset is drawn from entropy and echoed so the run can be
/// reproduced exactly.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
    if (seed) return *seed;
    std::random_device rd;
    const std::uint64_t drawn =
        (static_cast<std::uint64_t>(rd()) << 32) ^ static_cast<std::uint64_t>(rd());
    std::cerr << "seed: " << drawn << "\n";
    return drawn;
}

struct DetectFlags {
    std::string input;
    std::string output;
    std::string algo = "gloss";
    std::optional<std::string> subspaces_path;
    std::optional<std::string> id_column, label_column, class_column;
    bool no_auto_columns = false;
    bool standardize = false;
    std::string details_path;  // aggregate + best subspace (gloss only)
    std::string matrix_path;   // full per-subspace score matrix (gloss only)
    std::string knn_dump_path; // debug neighbour table
    gloss::LoopParams params;
    gloss::SearchParams search;
    std::optional<std::uint64_t> seed;
};

/// Columns named exactly "id"/"outlier"/"class" (the names this tool writes)
/// are treated as id/label/class unless flags say otherwise.
void auto_columns(const std::string& path, gloss::CsvOptions& opts) {
    std::ifstream in(path);
    std::string header;
    if (!in || !std::getline(in, header)) return; // loading reports the real error
    if (!header.empty() && header.back() == '\r') header.pop_back();
    const auto has = [&](const std::string& name) {
        std::stringstream ss(header);
        std::string cell;
        while (std::getline(ss, cell, ','))
            if (cell == name) return true;
        return false;
    };
    if (!opts.id_column && has("id")) opts.id_column = "id";
    if (!opts.label_column && has("outlier")) opts.label_column = "outlier";
    if (!opts.class_column && has("class")) opts.class_column = "class";
}

void add_search_flags(CLI::App* cmd, gloss::SearchParams& sp) {
    cmd->add_option("-M,--iters", sp.monte_carlo_iters, "Monte-Carlo iterations per candidate")
        ->capture_default_str();
    cmd->add_option("--alpha", sp.alpha, "expected slice fraction in (0,1)")
        ->capture_default_str();
    cmd->add_option("--cutoff", sp.candidate_cutoff, "candidates kept per search level")
        ->capture_default_str();
    cmd->add_option("--max-subspaces", sp.max_subspaces, "subspaces returned by the search")
        ->capture_default_str();
    cmd->add_option("--level-cap", sp.level_cap, "largest subspace size explored")
        ->capture_default_str();
}

gloss::Dataset load_input(const DetectFlags& f) {
    gloss::CsvOptions opts;
    opts.id_column = f.id_column;
    opts.label_column = f.label_column;
    opts.class_column = f.class_column;
    if (!f.no_auto_columns) auto_columns(f.input, opts);
    gloss::Dataset data = gloss::load_csv(f.input, opts);
    if (f.standardize) data = gloss::standardize(data);
    return data;
}

int run_detect(const DetectFlags& flags_in) {
    DetectFlags f = flags_in;
    const gloss::Dataset data = load_input(f);
    if (f.params.k > data.n() - 1)
        std::cerr << "note: k=" << f.params.k << " exceeds n-1, clamped to " << data.n() - 1
                  << "\n";

    std::optional<std::vector<gloss::Subspace>> subs;
    if (f.subspaces_path) subs = gloss::load_subspaces_json(*f.subspaces_path, data.dims());

    const gloss::Algorithm algo = gloss::parse_algorithm(f.algo);
    // Only gloss/hics without --subspaces actually search, so only they draw
    // (and echo) an entropy seed; every other path is deterministic.
    const bool searches =
        !subs && (algo == gloss::Algorithm::Gloss || algo == gloss::Algorithm::HiCS);
    if (searches) f.search.validate();
    f.search.seed = searches ? resolve_seed(f.seed) : f.seed.value_or(0);
    if (algo == gloss::Algorithm::Gloss && (!f.details_path.empty() || !f.matrix_path.empty())) {
        gloss::SearchParams sp = f.search;
        sp.mode = gloss::SearchMode::GlossGlobal;
        const gloss::ScoreMatrix m = gloss::gloss(data, f.params, subs, sp);
        if (!f.details_path.empty()) gloss::write_gloss_csv(data, m, f.details_path);
        if (!f.matrix_path.empty()) gloss::write_score_matrix_csv(data, m, f.matrix_path);
        gloss::write_scores_csv(data, m.aggregate, f.output);
    } else {
        const gloss::Vector scores = gloss::score_dataset(algo, data, f.params, f.search, subs);
        gloss::write_scores_csv(data, scores, f.output);
    }
    if (!f.knn_dump_path.empty())
        gloss::write_table_csv(data, gloss::knn_table(data, f.params.k, f.params.metric),
                               f.knn_dump_path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Local subspace outlier detection with globally-built neighbourhoods: "
                 "generator, subspace search, detectors and evaluation harness"};
    app.require_subcommand(1);
    unsigned threads = 0;
    app.add_option("--threads", threads,
                   "worker threads (0 = all cores); results are identical for any value")
        ->capture_default_str();

    // generate ------------------------------------------------------------
    auto* gen = app.add_subcommand("generate", "draw a Gaussian-mixture dataset with implanted "
                                               "subspace outliers and write it as CSV");
    gloss::SynthConfig synth_cfg;
    std::optional<std::uint64_t> gen_seed;
    std::string gen_output;
    gen->add_option("--n", synth_cfg.n, "points")->capture_default_str();
    gen->add_option("--d", synth_cfg.dims, "dimensions")->capture_default_str();
    gen->add_option("--clusters", synth_cfg.n_clusters, "mixture components")
        ->capture_default_str();
    gen->add_option("--mu-upper", synth_cfg.mu_upper,
                    "cluster centers are uniform on [0, mu-upper] per dimension")
        ->capture_default_str();
    gen->add_option("--sigma2", synth_cfg.sigma2, "cluster variance")->capture_default_str();
    gen->add_option("--outliers", synth_cfg.n_outliers, "implanted outlier count")
        ->capture_default_str();
    gen->add_option("--seed", gen_seed, "RNG seed (drawn from entropy and echoed when omitted)");
    gen->add_option("-o,--output", gen_output, "output CSV path")->required();

    // search ---------------------------------------------------------------
    auto* search = app.add_subcommand("search", "rank high-contrast subspaces and write them as "
                                                "a JSON array of feature-index arrays");
    std::string search_input, search_output, search_mode = "gloss-global", contrast_csv;
    gloss::SearchParams search_params;
    std::optional<std::uint64_t> search_seed;
    std::optional<std::string> search_id_col, search_label_col, search_class_col;
    bool search_no_auto_columns = false;
    search->add_option("-i,--input", search_input, "input CSV path")->required();
    search->add_option("-o,--output", search_output, "output JSON path")->required();
    search->add_option("--mode", search_mode,
                       "conditioning set: 'hics' = rest of the candidate, "
                       "'gloss-global' = rest of all features")
        ->check(CLI::IsMember({"hics", "gloss-global", "global"}))
        ->capture_default_str();
    add_search_flags(search, search_params);
    search->add_option("--seed", search_seed, "RNG seed (echoed when omitted)");
    search->add_option("--contrast-csv", contrast_csv, "also write 'subspace,contrast' report");
    search->add_option("--id-column", search_id_col, "CSV column holding row ids");
    search->add_option("--label-column", search_label_col, "CSV column holding 0/1 labels");
    search->add_option("--class-column", search_class_col, "CSV column holding class names");
    search->add_flag("--no-auto-columns", search_no_auto_columns,
                     "do not treat columns named id/outlier/class specially");

    // detect ---------------------------------------------------------------
    auto* detect = app.add_subcommand("detect", "score every point of a dataset and write "
                                                "'point_id,score' CSV");
    DetectFlags df;
    detect->add_option("-i,--input", df.input, "input CSV path")->required();
    detect->add_option("-o,--output", df.output, "output scores CSV path")->required();
    detect->add_option("--algo", df.algo,
                       "gloss | hics | lof | loop | local-loop")
        ->check(CLI::IsMember({"gloss", "hics", "lof", "loop", "local-loop"}))
        ->capture_default_str();
    detect->add_option("--subspaces", df.subspaces_path,
                       "JSON subspace list; when given, no search runs");
    detect->add_option("-k", df.params.k, "neighbourhood size")->capture_default_str();
    detect->add_option("--lambda", df.params.lambda, "significance multiplier")
        ->capture_default_str();
    std::string metric_name_flag = "euclidean";
    detect->add_option("--metric", metric_name_flag, "euclidean | manhattan")
        ->check(CLI::IsMember({"euclidean", "manhattan"}))
        ->capture_default_str();
    add_search_flags(detect, df.search);
    detect->add_option("--seed", df.seed, "RNG seed for the subspace search (echoed when omitted)");
    detect->add_flag("--standardize", df.standardize, "z-score every feature before scoring");
    detect->add_option("--id-column", df.id_column, "CSV column holding row ids");
    detect->add_option("--label-column", df.label_column, "CSV column holding 0/1 labels");
    detect->add_option("--class-column", df.class_column, "CSV column holding class names");
    detect->add_flag("--no-auto-columns", df.no_auto_columns,
                     "do not treat columns named id/outlier/class specially");
    detect->add_option("--details", df.details_path,
                       "also write 'point_id,aggregate_score,best_subspace' (gloss only)");
    detect->add_option("--score-matrix", df.matrix_path,
                       "also write the full per-subspace score matrix (gloss only)");
    detect->add_option("--knn-dump", df.knn_dump_path,
                       "also write the neighbour table as 'point_id,rank,neighbor_id,distance'");

    // evaluate ---------------------------------------------------------------
    auto* evaluate = app.add_subcommand("evaluate", "run an experiment matrix JSON and write "
                                                    "the AUC/runtime report CSV");
    std::string matrix_path, report_path;
    evaluate->add_option("-m,--matrix", matrix_path, "experiment matrix JSON path")->required();
    evaluate->add_option("-o,--output", report_path, "report CSV path")->required();

    for (CLI::App* sub : {gen, search, detect, evaluate}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    gloss::set_thread_count(threads);
    try {
        if (*gen) {
            synth_cfg.seed = resolve_seed(gen_seed);
            synth_cfg.validate();
            const gloss::Dataset data = gloss::generate_synthetic(synth_cfg);
            gloss::write_csv(data, gen_output);
            gloss::write_synth_sidecar(synth_cfg, gen_output + ".meta.json");
        } else if (*search) {
            search_params.mode = gloss::parse_search_mode(search_mode);
            search_params.validate();
            search_params.seed = resolve_seed(search_seed);
            gloss::CsvOptions opts;
            opts.id_column = search_id_col;
            opts.label_column = search_label_col;
            opts.class_column = search_class_col;
            if (!search_no_auto_columns) auto_columns(search_input, opts);
            const gloss::Dataset data = gloss::load_csv(search_input, opts);
            const auto ranked = gloss::search_subspaces(data, search_params);
            std::vector<gloss::Subspace> subs;
            for (const auto& cs : ranked) subs.push_back(cs.subspace);
            gloss::write_subspaces_json(subs, search_output);
            if (!contrast_csv.empty()) gloss::write_contrast_csv(ranked, contrast_csv);
        } else if (*detect) {
            df.params.metric = gloss::parse_metric(metric_name_flag);
            return run_detect(df);
        } else if (*evaluate) {
            const gloss::ExperimentMatrix matrix = gloss::load_matrix_json(matrix_path);
            gloss::write_report_csv(gloss::run_experiment(matrix), report_path);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
