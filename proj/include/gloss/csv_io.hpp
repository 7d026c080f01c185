#ifndef GLOSS_CSV_IO_HPP_
#define GLOSS_CSV_IO_HPP_

#include <optional>
#include <string>
#include <vector>

#include "gloss/dataset.hpp"
#include "gloss/types.hpp"

namespace gloss {

struct CsvOptions {
    bool has_header = true;
    std::optional<std::string> id_column;     // row ids; 0..n-1 when absent
    std::optional<std::string> label_column;  // boolean outlier column, {0,1}
    std::optional<std::string> class_column;  // categorical class column
};

/**
 * Reads a comma-separated, '.'-decimal, UTF-8 file. Every cell outside the
 * id/label/class columns must parse as a finite real; violations raise
 * std::runtime_error naming the 1-based row and column. Named column
 * selection requires a header.
 */
Dataset load_csv(const std::string& path, const CsvOptions& opts = {});

/**
 * Writes "id,f0..f{d-1}[,outlier][,class]" with values at 17 significant
 * digits so that load_csv(write_csv(data)) reproduces the dataset bitwise.
 */
void write_csv(const Dataset& data, const std::string& path);

/// One value formatted as "%.17g"; round-trips doubles exactly.
std::string format_value(Scalar v);

/// Scores CSV: "point_id,score" rows aligned with the dataset.
void write_scores_csv(const Dataset& data, const Vector& scores, const std::string& path);

/// Subspace list file: a JSON array of arrays of 0-based feature indices.
std::vector<Subspace> load_subspaces_json(const std::string& path, Index dims);
void write_subspaces_json(const std::vector<Subspace>& subspaces, const std::string& path);

} // namespace gloss

#endif // GLOSS_CSV_IO_HPP_
