// Independent reference implementations used only by tests. Everything here
// is written as direct, unoptimised transliterations of the defining
// formulas, sharing no code with the library (only the Eigen matrix type and
// elementary std:: math), so agreement is evidence rather than tautology.
#ifndef GLOSS_TESTS_ORACLES_HPP_
#define GLOSS_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

enum class Metric { L2, L1 };

inline double point_distance(const Matrix& values, Index a, Index b,
                             const std::vector<Index>& features, Metric metric) {
    double acc = 0;
    for (const Index j : features) {
        const double diff = values(a, j) - values(b, j);
        acc += metric == Metric::L2 ? diff * diff : std::abs(diff);
    }
    return metric == Metric::L2 ? std::sqrt(acc) : acc;
}

inline std::vector<Index> all_features(Index d) {
    std::vector<Index> f(static_cast<std::size_t>(d));
    std::iota(f.begin(), f.end(), Index(0));
    return f;
}

struct Neighbor {
    Index id;
    double distance;
};

/// Full-sort exact kNN: computes every pairwise distance, sorts the whole
/// list by (distance, id), takes the first k. O(n^2 log n).
inline std::vector<std::vector<Neighbor>> knn(const Matrix& values, Index k, Metric metric) {
    const Index n = values.rows();
    const std::vector<Index> feats = all_features(values.cols());
    std::vector<std::vector<Neighbor>> out(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
        std::vector<Neighbor> cand;
        for (Index j = 0; j < n; ++j)
            if (j != i) cand.push_back({j, point_distance(values, i, j, feats, metric)});
        std::sort(cand.begin(), cand.end(), [](const Neighbor& a, const Neighbor& b) {
            if (a.distance != b.distance) return a.distance < b.distance;
            return a.id < b.id;
        });
        cand.resize(static_cast<std::size_t>(std::min(k, n - 1)));
        out[static_cast<std::size_t>(i)] = std::move(cand);
    }
    return out;
}

/// Standard distance of point i to the given reference rows, restricted to
/// the feature set: sqrt( sum dist^2 / |S| ).
inline double standard_distance(const Matrix& values, Index i, const std::vector<Neighbor>& refs,
                                const std::vector<Index>& features, Metric metric) {
    double acc = 0;
    for (const auto& r : refs) {
        const double dist = point_distance(values, i, r.id, features, metric);
        acc += dist * dist;
    }
    return std::sqrt(acc / static_cast<double>(refs.size()));
}

inline double pdist(double lambda, const Matrix& values, Index i,
                    const std::vector<Neighbor>& refs, const std::vector<Index>& features,
                    Metric metric) {
    return lambda * standard_distance(values, i, refs, features, metric);
}

inline double ratio_minus_one(double own, double neighbor_mean) {
    if (neighbor_mean == 0) return own == 0 ? 0.0 : 1e12;
    return own / neighbor_mean - 1.0;
}

/// Direct evaluation of the probabilistic local outlier factor of every
/// point: pdist over its own neighbours divided by the mean of its
/// neighbours' pdists, minus one.
inline std::vector<double> plof_all(const Matrix& values, Index k, double lambda, Metric metric) {
    const auto nn = knn(values, k, metric);
    const std::vector<Index> feats = all_features(values.cols());
    const Index n = values.rows();
    std::vector<double> pd(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i)
        pd[static_cast<std::size_t>(i)] =
            pdist(lambda, values, i, nn[static_cast<std::size_t>(i)], feats, metric);
    std::vector<double> out(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
        double mean = 0;
        for (const auto& s : nn[static_cast<std::size_t>(i)])
            mean += pd[static_cast<std::size_t>(s.id)];
        mean /= static_cast<double>(nn[static_cast<std::size_t>(i)].size());
        out[static_cast<std::size_t>(i)] = ratio_minus_one(pd[static_cast<std::size_t>(i)], mean);
    }
    return out;
}

inline std::vector<double> probabilities(const std::vector<double>& factors, double lambda) {
    double sq = 0;
    for (const double v : factors) sq += v * v;
    const double norm = lambda * std::sqrt(sq / static_cast<double>(factors.size()));
    std::vector<double> out(factors.size(), 0.0);
    if (norm == 0) return out;
    for (std::size_t i = 0; i < factors.size(); ++i)
        out[i] = std::max(0.0, std::erf(factors[i] / (norm * std::sqrt(2.0))));
    return out;
}

inline std::vector<double> loop_scores(const Matrix& values, Index k, double lambda,
                                       Metric metric) {
    return probabilities(plof_all(values, k, lambda, metric), lambda);
}

/// Per-subspace outlier probabilities with one global neighbour table: the
/// factor of point i in subspace F divides i's subspace-restricted pdist to
/// its FULL-SPACE neighbours by the mean of those neighbours' own values.
inline std::vector<std::vector<double>> gloss_matrix(const Matrix& values, Index k, double lambda,
                                                     Metric metric,
                                                     const std::vector<std::vector<Index>>& subs) {
    const auto nn = knn(values, k, metric);
    const Index n = values.rows();
    std::vector<std::vector<double>> cols;
    for (const auto& features : subs) {
        std::vector<double> pd(static_cast<std::size_t>(n));
        for (Index i = 0; i < n; ++i)
            pd[static_cast<std::size_t>(i)] =
                pdist(lambda, values, i, nn[static_cast<std::size_t>(i)], features, metric);
        std::vector<double> factors(static_cast<std::size_t>(n));
        for (Index i = 0; i < n; ++i) {
            double mean = 0;
            for (const auto& s : nn[static_cast<std::size_t>(i)])
                mean += pd[static_cast<std::size_t>(s.id)];
            mean /= static_cast<double>(nn[static_cast<std::size_t>(i)].size());
            factors[static_cast<std::size_t>(i)] =
                ratio_minus_one(pd[static_cast<std::size_t>(i)], mean);
        }
        cols.push_back(probabilities(factors, lambda));
    }
    return cols;
}

/// Classical LOF by the book: k-distance, reachability distance, local
/// reachability density, then the mean density ratio.
inline std::vector<double> lof(const Matrix& values, Index k, Metric metric) {
    const auto nn = knn(values, k, metric);
    const Index n = values.rows();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> lrd(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
        double sum = 0;
        for (const auto& o : nn[static_cast<std::size_t>(i)])
            sum += std::max(nn[static_cast<std::size_t>(o.id)].back().distance, o.distance);
        lrd[static_cast<std::size_t>(i)] =
            sum == 0 ? inf : static_cast<double>(nn[static_cast<std::size_t>(i)].size()) / sum;
    }
    std::vector<double> out(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
        if (lrd[static_cast<std::size_t>(i)] == inf) {
            out[static_cast<std::size_t>(i)] = 1.0;
            continue;
        }
        double sum = 0;
        for (const auto& o : nn[static_cast<std::size_t>(i)])
            sum += lrd[static_cast<std::size_t>(o.id)];
        out[static_cast<std::size_t>(i)] =
            sum / lrd[static_cast<std::size_t>(i)] /
            static_cast<double>(nn[static_cast<std::size_t>(i)].size());
    }
    return out;
}

/// Gauss error function by adaptive Simpson quadrature of its defining
/// integral, accurate to ~1e-12 on [-6, 6].
inline double erf_integrand(double t) { return std::exp(-t * t); }

inline double adaptive_simpson(double a, double b, double fa, double fm, double fb, double whole,
                               double tol, int depth) {
    const double m = (a + b) / 2;
    const double lm = (a + m) / 2, rm = (m + b) / 2;
    const double flm = erf_integrand(lm), frm = erf_integrand(rm);
    const double left = (m - a) / 6 * (fa + 4 * flm + fm);
    const double right = (b - m) / 6 * (fm + 4 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15 * tol)
        return left + right + (left + right - whole) / 15;
    return adaptive_simpson(a, m, fa, flm, fm, left, tol / 2, depth - 1) +
           adaptive_simpson(m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

inline double erf(double x) {
    if (x < 0) return -erf(-x);
    if (x == 0) return 0;
    const double fa = erf_integrand(0), fb = erf_integrand(x);
    const double fm = erf_integrand(x / 2);
    const double whole = x / 6 * (fa + 4 * fm + fb);
    const double integral = adaptive_simpson(0, x, fa, fm, fb, whole, 1e-14, 40);
    return 2.0 / std::sqrt(std::acos(-1.0)) * integral;
}

/// AUC as the exhaustive pairwise probability: P(pos > neg) + 0.5 P(tie).
inline double pairwise_auc(const std::vector<double>& scores, const std::vector<bool>& labels) {
    double wins = 0, ties = 0;
    std::size_t pairs = 0;
    for (std::size_t p = 0; p < scores.size(); ++p) {
        if (!labels[p]) continue;
        for (std::size_t q = 0; q < scores.size(); ++q) {
            if (labels[q]) continue;
            ++pairs;
            if (scores[p] > scores[q]) ++wins;
            else if (scores[p] == scores[q]) ++ties;
        }
    }
    if (pairs == 0) throw std::invalid_argument("pairwise_auc: need both label values");
    return (wins + ties / 2) / static_cast<double>(pairs);
}

/// Exhaustive two-sample KS: evaluates |ECDF_a - ECDF_b| at every value
/// occurring in either sample. Inputs need not be sorted.
inline double ks(std::vector<double> a, std::vector<double> b) {
    std::vector<double> grid = a;
    grid.insert(grid.end(), b.begin(), b.end());
    double best = 0;
    for (const double x : grid) {
        double ca = 0, cb = 0;
        for (const double v : a) ca += v <= x ? 1 : 0;
        for (const double v : b) cb += v <= x ? 1 : 0;
        best = std::max(best, std::abs(ca / static_cast<double>(a.size()) -
                                       cb / static_cast<double>(b.size())));
    }
    return best;
}

} // namespace oracle

#endif // GLOSS_TESTS_ORACLES_HPP_
