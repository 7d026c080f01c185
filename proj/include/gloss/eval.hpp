#ifndef GLOSS_EVAL_HPP_
#define GLOSS_EVAL_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gloss/density.hpp"
#include "gloss/subspace_search.hpp"
#include "gloss/synthgen.hpp"
#include "gloss/types.hpp"

namespace gloss {

/**
 * ROC step curve and its trapezoidal area. Thresholds sweep the distinct
 * score values descending; scores tied at a threshold advance the curve in
 * one diagonal step, which makes the area equal P(score_pos > score_neg)
 * + 0.5 * P(tie).
 */
struct RocCurve {
    std::vector<std::pair<Scalar, Scalar>> points; // (fpr, tpr), (0,0) .. (1,1)
    Scalar auc = 0.0;
};

/// Requires at least one positive and one negative label.
RocCurve roc_auc(const Vector& scores, const BoolArray& labels);

void write_roc_csv(const RocCurve& curve, const std::string& path);

enum class Algorithm { Gloss, HiCS, Lof, Loop, LocalLoop };

Algorithm parse_algorithm(const std::string& name);
std::string algorithm_name(Algorithm algo);

/// All 2-D subspaces of a d-dimensional space, lexicographic order. This is
/// the subspace family the Local LoOP baseline scores when none are supplied.
std::vector<Subspace> all_feature_pairs(Index dims);

/**
 * Runs one algorithm on one dataset and returns the per-point scores used
 * for ranking. GLOSS and HiCS discover subspaces with their respective
 * search modes (seeded by search.seed) unless an explicit list is given;
 * hics_inner selects the scorer HiCS applies inside each subspace.
 */
Vector score_dataset(Algorithm algo, const Dataset& data, const LoopParams& params,
                     const SearchParams& search,
                     const std::optional<std::vector<Subspace>>& subspaces = std::nullopt,
                     Algorithm hics_inner = Algorithm::Lof);

/// One synthetic config or one CSV file plus a labelling protocol.
struct DatasetSpec {
    std::string id;
    std::optional<SynthConfig> synth;

    std::optional<std::string> path;
    std::optional<std::string> id_column;
    std::optional<std::string> label_column;
    std::optional<std::string> class_column;
    enum class Protocol { AsIs, Implant, Minority };
    Protocol protocol = Protocol::AsIs;
    Scalar implant_fraction = 0.10;
    bool standardize_features = false;
};

struct ExperimentMatrix {
    std::vector<Algorithm> algorithms;
    std::vector<DatasetSpec> datasets;
    std::vector<std::uint64_t> seeds;
    LoopParams params;
    SearchParams search;
    Algorithm hics_inner = Algorithm::Lof;
    std::string output_dir; // ROC curves per cell land here; empty = skip
};

struct CellResult {
    std::string algorithm;
    std::string config_id;
    std::uint64_t seed;
    Scalar auc;             // NaN when the cell failed
    Scalar runtime_seconds; // scoring call only, I/O excluded
    std::string error;
};

struct ExperimentReport {
    std::vector<CellResult> cells; // sorted by (algorithm, config, seed)
};

/**
 * Runs every (algorithm, dataset, seed) cell. The dataset is materialised
 * per seed (generation and implantation reseeded), the scoring call is
 * timed, and failures are recorded without stopping the run.
 */
ExperimentReport run_experiment(const ExperimentMatrix& matrix);

/// "algorithm,config_id,seed,auc,runtime_seconds" plus one mean row per
/// (algorithm, config) with seed column "mean".
void write_report_csv(const ExperimentReport& report, const std::string& path);

ExperimentMatrix load_matrix_json(const std::string& path);

} // namespace gloss

#endif // GLOSS_EVAL_HPP_
