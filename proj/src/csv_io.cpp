#include "gloss/csv_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace gloss {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cell);
            cell.clear();
        } else {
            cell += c;
        }
    }
    cells.push_back(cell);
    for (auto& s : cells) {
        const auto b = s.find_first_not_of(" \t");
        const auto e = s.find_last_not_of(" \t");
        s = (b == std::string::npos) ? std::string() : s.substr(b, e - b + 1);
    }
    return cells;
}

std::string cell_location(std::size_t row, std::size_t col, const std::string& name) {
    std::string loc = "row " + std::to_string(row) + ", column " + std::to_string(col + 1);
    if (!name.empty()) loc += " (" + name + ")";
    return loc;
}

Scalar parse_number(const std::string& cell, std::size_t row, std::size_t col,
                    const std::string& name) {
    Scalar v = 0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last)
        throw std::runtime_error("cannot parse '" + cell + "' as a real number at " +
                                 cell_location(row, col, name));
    if (!std::isfinite(v))
        throw std::runtime_error("non-finite value '" + cell + "' at " +
                                 cell_location(row, col, name));
    return v;
}

bool parse_label(const std::string& cell, std::size_t row, std::size_t col,
                 const std::string& name) {
    if (cell == "1" || cell == "true") return true;
    if (cell == "0" || cell == "false") return false;
    throw std::runtime_error("cannot parse '" + cell + "' as a boolean label at " +
                             cell_location(row, col, name));
}

} // namespace

Dataset load_csv(const std::string& path, const CsvOptions& opts) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);

    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        rows.push_back(split_line(line));
    }
    if (rows.empty()) throw std::runtime_error("empty file: " + path);

    std::vector<std::string> names;
    std::size_t first_data = 0;
    const std::size_t arity = rows[0].size();
    if (opts.has_header) {
        names = rows[0];
        first_data = 1;
        if (rows.size() == 1) throw std::runtime_error("no data rows in " + path);
    } else {
        if (opts.id_column || opts.label_column || opts.class_column)
            throw std::invalid_argument("named column selection requires a header");
        names.resize(arity);
        for (std::size_t j = 0; j < arity; ++j) names[j] = "c" + std::to_string(j);
    }

    auto find_column = [&](const std::string& wanted) {
        const auto it = std::find(names.begin(), names.end(), wanted);
        if (it == names.end())
            throw std::runtime_error("column '" + wanted + "' not found in " + path);
        return static_cast<std::size_t>(it - names.begin());
    };
    constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    const std::size_t id_col = opts.id_column ? find_column(*opts.id_column) : kNone;
    const std::size_t label_col = opts.label_column ? find_column(*opts.label_column) : kNone;
    const std::size_t class_col = opts.class_column ? find_column(*opts.class_column) : kNone;

    std::vector<std::size_t> feature_cols;
    for (std::size_t j = 0; j < arity; ++j)
        if (j != id_col && j != label_col && j != class_col) feature_cols.push_back(j);
    if (feature_cols.empty()) throw std::runtime_error("no feature columns left in " + path);

    const Index n = static_cast<Index>(rows.size() - first_data);
    Dataset out;
    out.values.resize(n, static_cast<Index>(feature_cols.size()));
    out.row_ids.resize(static_cast<std::size_t>(n));
    if (label_col != kNone) out.labels = BoolArray(n);
    if (class_col != kNone) out.class_col = std::vector<std::string>(static_cast<std::size_t>(n));

    for (Index i = 0; i < n; ++i) {
        const auto& cells = rows[first_data + static_cast<std::size_t>(i)];
        const std::size_t file_row = first_data + static_cast<std::size_t>(i) + 1;
        if (cells.size() != arity)
            throw std::runtime_error("row " + std::to_string(file_row) + " has " +
                                     std::to_string(cells.size()) + " cells, expected " +
                                     std::to_string(arity));
        for (std::size_t f = 0; f < feature_cols.size(); ++f) {
            const std::size_t j = feature_cols[f];
            out.values(i, static_cast<Index>(f)) = parse_number(cells[j], file_row, j, names[j]);
        }
        out.row_ids[static_cast<std::size_t>(i)] =
            id_col != kNone ? cells[id_col] : std::to_string(i);
        if (label_col != kNone)
            (*out.labels)(i) = parse_label(cells[label_col], file_row, label_col, names[label_col]);
        if (class_col != kNone) (*out.class_col)[static_cast<std::size_t>(i)] = cells[class_col];
    }

    out.validate();
    return out;
}

std::string format_value(Scalar v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_csv(const Dataset& data, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << "id";
    for (Index j = 0; j < data.dims(); ++j) out << ",f" << j;
    if (data.labels) out << ",outlier";
    if (data.class_col) out << ",class";
    out << '\n';
    for (Index i = 0; i < data.n(); ++i) {
        out << data.row_ids[static_cast<std::size_t>(i)];
        for (Index j = 0; j < data.dims(); ++j) out << ',' << format_value(data.values(i, j));
        if (data.labels) out << ',' << ((*data.labels)(i) ? '1' : '0');
        if (data.class_col) out << ',' << (*data.class_col)[static_cast<std::size_t>(i)];
        out << '\n';
    }
}

void write_scores_csv(const Dataset& data, const Vector& scores, const std::string& path) {
    if (scores.size() != data.n())
        throw std::invalid_argument("score vector length does not match dataset");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << "point_id,score\n";
    for (Index i = 0; i < data.n(); ++i)
        out << data.row_ids[static_cast<std::size_t>(i)] << ',' << format_value(scores(i)) << '\n';
}

std::vector<Subspace> load_subspaces_json(const std::string& path, Index dims) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("invalid JSON in " + path + ": " + e.what());
    }
    if (!j.is_array()) throw std::runtime_error(path + ": expected an array of arrays");
    std::vector<Subspace> subs;
    subs.reserve(j.size());
    for (const auto& arr : j) {
        if (!arr.is_array()) throw std::runtime_error(path + ": expected an array of arrays");
        IndexVector f;
        for (const auto& v : arr) {
            if (!v.is_number_integer())
                throw std::runtime_error(path + ": feature indices must be integers");
            f.push_back(v.get<Index>());
        }
        Subspace s{std::move(f)};
        if (!s.valid_for(dims))
            throw std::runtime_error(path + ": subspace " + s.to_string() +
                                     " out of range for " + std::to_string(dims) + " features");
        subs.push_back(std::move(s));
    }
    return subs;
}

void write_subspaces_json(const std::vector<Subspace>& subspaces, const std::string& path) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& s : subspaces) j.push_back(s.features());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << j.dump(1) << '\n';
}

} // namespace gloss
