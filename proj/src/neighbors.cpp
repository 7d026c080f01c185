#include "gloss/neighbors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "gloss/csv_io.hpp"
#include "gloss/parallel.hpp"

namespace gloss {

namespace {

std::atomic<std::uint64_t> g_knn_builds{0};

bool neighbor_less(const Neighbor& a, const Neighbor& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return a.id < b.id;
}

} // namespace

DistanceMetric parse_metric(const std::string& name) {
    if (name == "euclidean") return DistanceMetric::Euclidean;
    if (name == "manhattan") return DistanceMetric::Manhattan;
    throw std::invalid_argument("unknown metric: " + name);
}

std::string metric_name(DistanceMetric metric) {
    return metric == DistanceMetric::Euclidean ? "euclidean" : "manhattan";
}

Scalar distance(const RowVector& a, const RowVector& b, DistanceMetric metric) {
    if (a.size() != b.size()) throw std::invalid_argument("distance: length mismatch");
    Scalar acc = 0;
    if (metric == DistanceMetric::Euclidean) {
        for (Index j = 0; j < a.size(); ++j) {
            const Scalar diff = a(j) - b(j);
            acc += diff * diff;
        }
        return std::sqrt(acc);
    }
    for (Index j = 0; j < a.size(); ++j) acc += std::abs(a(j) - b(j));
    return acc;
}

Scalar distance_in_subspace(const Matrix& values, Index a, Index b,
                            const IndexVector& features, DistanceMetric metric) {
    Scalar acc = 0;
    if (metric == DistanceMetric::Euclidean) {
        for (const Index j : features) {
            const Scalar diff = values(a, j) - values(b, j);
            acc += diff * diff;
        }
        return std::sqrt(acc);
    }
    for (const Index j : features) acc += std::abs(values(a, j) - values(b, j));
    return acc;
}

NeighborhoodTable knn_table(const Dataset& data, Index k, DistanceMetric metric) {
    const Index n = data.n();
    if (n < 2) throw std::invalid_argument("knn_table requires at least two points");
    if (k < 1) throw std::invalid_argument("knn_table requires k >= 1");
    const bool clamped = k > n - 1;
    if (clamped) k = n - 1;

    g_knn_builds.fetch_add(1, std::memory_order_relaxed);

    std::vector<Neighbor> flat(static_cast<std::size_t>(n) * static_cast<std::size_t>(k));
    parallel_for(n, [&](Index i) {
        // Max-heap of the k best candidates seen so far; the heap top is the
        // current worst, compared by (distance, id) so ties resolve stably.
        Neighbor* heap = flat.data() + i * k;
        Index filled = 0;
        for (Index j = 0; j < n; ++j) {
            if (j == i) continue;
            const Neighbor cand{j, distance(data.values.row(i), data.values.row(j), metric)};
            if (filled < k) {
                heap[filled++] = cand;
                if (filled == k) std::make_heap(heap, heap + k, neighbor_less);
            } else if (neighbor_less(cand, heap[0])) {
                std::pop_heap(heap, heap + k, neighbor_less);
                heap[k - 1] = cand;
                std::push_heap(heap, heap + k, neighbor_less);
            }
        }
        std::sort(heap, heap + k, neighbor_less);
    });

    return NeighborhoodTable(n, k, clamped, std::move(flat));
}

void write_table_csv(const Dataset& data, const NeighborhoodTable& table,
                     const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << "point_id,rank,neighbor_id,distance\n";
    for (Index i = 0; i < table.n(); ++i) {
        const auto nb = table.of(i);
        for (std::size_t r = 0; r < nb.size(); ++r)
            out << data.row_ids[static_cast<std::size_t>(i)] << ',' << (r + 1) << ','
                << data.row_ids[static_cast<std::size_t>(nb[r].id)] << ','
                << format_value(nb[r].distance) << '\n';
    }
}

std::uint64_t knn_build_count() { return g_knn_builds.load(std::memory_order_relaxed); }

void reset_knn_build_count() { g_knn_builds.store(0, std::memory_order_relaxed); }

} // namespace gloss
