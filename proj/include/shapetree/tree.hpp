#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "shapetree/boundary.hpp"
#include "shapetree/core.hpp"
#include "shapetree/sampling.hpp"

namespace shapetree {

// A sample point set realized on its boundary: concrete points plus the
// curvature of the underlying curve at each of them, in counter-clockwise
// order starting at the seed.
struct SampledShape {
    std::vector<Vec2> points;
    std::vector<double> curvatures;
    std::vector<double> positions;  // arc lengths on the source boundary

    std::size_t size() const { return points.size(); }
};

// Interpolate sample points and curvature values at the set's arc positions.
inline SampledShape realize_samples(const SampledBoundary& b, const SamplePointSet& sp) {
    if (sp.positions.size() < 3)
        throw ArgumentError("realize_samples: need at least 3 sample points");
    const CurvatureProfile prof = curvature_profile(b);
    SampledShape out;
    out.positions = sp.positions;
    out.points.reserve(sp.positions.size());
    out.curvatures.reserve(sp.positions.size());
    for (const double s : sp.positions) {
        out.points.push_back(point_at_arc(b, s));
        out.curvatures.push_back(curvature_at_arc(b, prof, s));
    }
    return out;
}

// The root sample point plus vectors to the n-1 others in counter-clockwise
// order after the root, and the curvature at every sample. Curvature slot k
// (0-based k-1 in storage) belongs to the tip of vector k; the last slot
// holds the root's own curvature.
struct CompactShapeTree {
    Vec2 root;
    std::vector<Vec2> vectors;      // n-1 entries
    std::vector<double> curvatures; // n entries, root's last
    std::size_t root_index = 0;     // index of the root in the sample ordering

    std::size_t size() const { return curvatures.size(); }
};

struct Weights {
    double w1 = 1.0;
    double w2 = 1.0;
    double w3 = 1.0;
};

enum class CostKind { tentative, full };

// Smallest admissible value of the weighted moment sum inside the log of the
// full cost; keeps identical shapes at a large finite negative term instead
// of -inf, and below any cost two genuinely different shapes can reach.
inline constexpr double log_moment_floor = 1e-30;

inline CompactShapeTree build_tree(const SampledShape& s, std::size_t root_index) {
    const std::size_t n = s.size();
    if (n < 3) throw ArgumentError("build_tree: need at least 3 samples");
    if (root_index >= n)
        throw ArgumentError("build_tree: root index " + std::to_string(root_index) +
                            " out of range for n = " + std::to_string(n));
    CompactShapeTree t;
    t.root = s.points[root_index];
    t.root_index = root_index;
    t.vectors.reserve(n - 1);
    t.curvatures.reserve(n);
    for (std::size_t k = 1; k < n; ++k) {
        const std::size_t idx = (root_index + k) % n;
        t.vectors.push_back(s.points[idx] - t.root);
        t.curvatures.push_back(s.curvatures[idx]);
    }
    t.curvatures.push_back(s.curvatures[root_index]);
    return t;
}

inline CompactShapeTree build_tree(const SampledBoundary& b, const SamplePointSet& sp,
                                   std::size_t root_index) {
    return build_tree(realize_samples(b, sp), root_index);
}

// Rotation and scale normalization of a tree: rotate so the first vector lies
// along the positive x-axis, divide all vectors by the largest modulus, and
// multiply curvatures by that modulus (curvature carries units of 1/length).
// Two trees of similar shapes sampled invariantly become equal under this
// map, which is what makes the plain squared-difference costs usable across
// rotated and scaled copies.
inline CompactShapeTree normalize_tree(const CompactShapeTree& t) {
    if (t.vectors.empty()) throw ArgumentError("normalize_tree: tree has no vectors");
    double max_len = 0.0;
    for (const Vec2& u : t.vectors) max_len = std::max(max_len, norm(u));
    if (max_len <= 0.0)
        throw DegenerateShapeError("normalize_tree: all vectors have zero length");
    const double phi = -angle_of(t.vectors.front());
    CompactShapeTree out;
    out.root = t.root;
    out.root_index = t.root_index;
    out.vectors.reserve(t.vectors.size());
    for (const Vec2& u : t.vectors) out.vectors.push_back(rotated(u, phi) / max_len);
    out.curvatures.reserve(t.curvatures.size());
    for (const double k : t.curvatures) out.curvatures.push_back(k * max_len);
    return out;
}

// w1 * sum |u_k - v_k|^2 + w2 * sum (delta_k - kappa_k)^2. The two terms are
// returned separately; `term_counter`, when given, accumulates the number of
// elementary squared differences evaluated (the unit of the complexity
// accounting).
inline std::pair<double, double> cost_terms_tentative(const CompactShapeTree& tp,
                                                      const CompactShapeTree& tq,
                                                      const Weights& w,
                                                      std::uint64_t* term_counter = nullptr) {
    if (tp.size() != tq.size())
        throw ArgumentError("cost: tree sizes differ (" + std::to_string(tp.size()) + " vs " +
                            std::to_string(tq.size()) + ")");
    if (w.w1 < 0.0 || w.w2 < 0.0) throw ArgumentError("cost: weights must be non-negative");
    double vec_sum = 0.0;
    for (std::size_t k = 0; k < tp.vectors.size(); ++k)
        vec_sum += squared_norm(tp.vectors[k] - tq.vectors[k]);
    double curv_sum = 0.0;
    for (std::size_t k = 0; k < tp.curvatures.size(); ++k) {
        const double d = tp.curvatures[k] - tq.curvatures[k];
        curv_sum += d * d;
    }
    if (term_counter) *term_counter += tp.vectors.size() + tp.curvatures.size();
    return {w.w1 * vec_sum, w.w2 * curv_sum};
}

inline double tentative_cost(const CompactShapeTree& tp, const CompactShapeTree& tq,
                             const Weights& w, std::uint64_t* term_counter = nullptr) {
    const auto [t1, t2] = cost_terms_tentative(tp, tq, w, term_counter);
    return t1 + t2;
}

// Index-weighted curvature moment term: log(w3 * sum k * (delta_k - kappa_k)^2),
// k = 1..n, floored at log(w3 * 1e-30) when the curvature sequences agree.
inline double log_moment_term(const std::vector<double>& deltas, const std::vector<double>& kappas,
                              double w3, std::uint64_t* term_counter = nullptr) {
    if (deltas.size() != kappas.size())
        throw ArgumentError("log moment: curvature sequence lengths differ");
    if (w3 <= 0.0) throw ArgumentError("log moment: w3 must be positive");
    double sum = 0.0;
    for (std::size_t k = 0; k < deltas.size(); ++k) {
        const double d = deltas[k] - kappas[k];
        sum += static_cast<double>(k + 1) * d * d;
    }
    if (term_counter) *term_counter += deltas.size();
    return std::log(w3 * std::max(sum, log_moment_floor));
}

inline double full_cost(const CompactShapeTree& tp, const CompactShapeTree& tq, const Weights& w,
                        std::uint64_t* term_counter = nullptr) {
    const auto [t1, t2] = cost_terms_tentative(tp, tq, w, term_counter);
    return t1 + t2 + log_moment_term(tp.curvatures, tq.curvatures, w.w3, term_counter);
}

// One matched pair of sample indices and the full outcome of a match.
struct CorrespondenceMap {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    double cost = 0.0;
    std::array<double, 3> cost_terms{0.0, 0.0, 0.0};
};

struct MatchReport {
    std::size_t root_p = 0;
    std::size_t root_q = 0;
    double cost = 0.0;
    std::array<double, 3> cost_terms{0.0, 0.0, 0.0};
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::uint64_t term_evaluations = 0;  // elementary squared differences evaluated
};

struct MatchOptions {
    // Normalize both trees (rotation + scale) before comparing. Required for
    // matching across rotated or scaled copies; disable to compare raw trees.
    bool normalize = true;
};

namespace detail {

inline std::array<double, 3> evaluate_cost(const CompactShapeTree& tp, const CompactShapeTree& tq,
                                           const Weights& w, CostKind kind,
                                           std::uint64_t* term_counter) {
    const auto [t1, t2] = cost_terms_tentative(tp, tq, w, term_counter);
    double t3 = 0.0;
    if (kind == CostKind::full)
        t3 = log_moment_term(tp.curvatures, tq.curvatures, w.w3, term_counter);
    return {t1, t2, t3};
}

}  // namespace detail

// Evaluate tp against the tree rooted at every sample of q and return the
// root minimizing the cost (ties to the smallest index). n tree builds of
// O(n) each: the whole scan is O(n^2).
inline std::pair<std::size_t, MatchReport> best_match_root(const CompactShapeTree& tp,
                                                           const SampledShape& q, const Weights& w,
                                                           CostKind kind = CostKind::tentative,
                                                           const MatchOptions& opts = {}) {
    if (tp.size() != q.size())
        throw ArgumentError("best_match_root: sample counts differ (" + std::to_string(tp.size()) +
                            " vs " + std::to_string(q.size()) + ")");
    const CompactShapeTree ref = opts.normalize ? normalize_tree(tp) : tp;
    MatchReport report;
    report.root_p = tp.root_index;
    bool first = true;
    double best_cost = 0.0;
    for (std::size_t root = 0; root < q.size(); ++root) {
        CompactShapeTree tq = build_tree(q, root);
        if (opts.normalize) tq = normalize_tree(tq);
        const auto terms = detail::evaluate_cost(ref, tq, w, kind, &report.term_evaluations);
        const double cost = terms[0] + terms[1] + terms[2];
        if (first || cost < best_cost) {
            first = false;
            best_cost = cost;
            report.root_q = root;
            report.cost = cost;
            report.cost_terms = terms;
        }
    }
    return {report.root_q, report};
}

// Root matches root, then k-th vector tip matches k-th vector tip: both trees
// walk their boundaries counter-clockwise from the root, so index arithmetic
// is all that is needed.
inline CorrespondenceMap retrieve_correspondences(const CompactShapeTree& tp,
                                                  const CompactShapeTree& tq) {
    if (tp.size() != tq.size())
        throw ArgumentError("retrieve_correspondences: tree sizes differ");
    const std::size_t n = tp.size();
    CorrespondenceMap map;
    map.pairs.reserve(n);
    for (std::size_t k = 0; k < n; ++k)
        map.pairs.push_back({(tp.root_index + k) % n, (tq.root_index + k) % n});
    return map;
}

// End-to-end matching: build one tree on p (root_p, default the seed), scan
// all roots on q, retrieve the correspondences.
inline MatchReport match_shapes(const SampledShape& p, const SampledShape& q, const Weights& w,
                                CostKind kind = CostKind::tentative, std::size_t root_p = 0,
                                const MatchOptions& opts = {}) {
    if (p.size() != q.size())
        throw ArgumentError("match_shapes: sample counts differ (" + std::to_string(p.size()) +
                            " vs " + std::to_string(q.size()) + ")");
    const CompactShapeTree tp = build_tree(p, root_p);
    auto [root_q, report] = best_match_root(tp, q, w, kind, opts);
    const CompactShapeTree tq = build_tree(q, root_q);
    report.pairs = retrieve_correspondences(tp, tq).pairs;
    return report;
}

// Length and direction of the segment between samples i and j, recovered from
// the tree alone: a root-to-tip segment is a tree vector, tip-to-tip is the
// difference of two. Demonstrates that the tree carries the same information
// as the full O(n^2) set of pairwise segments.
inline std::pair<double, double> forest_line(const CompactShapeTree& t, std::size_t i,
                                             std::size_t j) {
    const std::size_t n = t.size();
    if (i == j) throw ArgumentError("forest_line: need two distinct sample indices");
    if (i >= n || j >= n) throw ArgumentError("forest_line: sample index out of range");
    auto slot = [&](std::size_t sample) {
        // Position of the sample's vector in the rooted ordering.
        return (sample + n - t.root_index) % n - 1;
    };
    Vec2 v;
    if (i == t.root_index)
        v = t.vectors[slot(j)];
    else if (j == t.root_index)
        v = Vec2{0.0, 0.0} - t.vectors[slot(i)];
    else
        v = t.vectors[slot(j)] - t.vectors[slot(i)];
    return {norm(v), angle_of(v)};
}

}  // namespace shapetree
