#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "shapetree/boundary.hpp"
#include "shapetree/core.hpp"

namespace shapetree {

enum class SamplingMethod { bisection, centroid_distance, curvature_maxima };

inline const char* to_string(SamplingMethod m) {
    switch (m) {
        case SamplingMethod::bisection: return "bisection";
        case SamplingMethod::centroid_distance: return "centroid-distance";
        case SamplingMethod::curvature_maxima: return "curvature-maxima";
    }
    return "?";
}

// Sample locations on a boundary, as arc lengths in [0, s_t). The sequence
// starts at the seed point and follows the boundary counter-clockwise, so the
// values increase except for at most one wrap past zero.
struct SamplePointSet {
    std::vector<double> positions;
    double seed_arc = 0.0;
    SamplingMethod method = SamplingMethod::bisection;
};

enum class ExtremeKind { minima, maxima };

// Arc positions where a boundary profile attains its absolute minimum or
// maximum, within tolerance. Positions are sorted ascending.
struct ExtremaSet {
    std::vector<double> positions;
    std::vector<double> values;
    ExtremeKind kind = ExtremeKind::maxima;
};

// A scalar function sampled at the boundary points, indexed by cumulative arc
// length.
struct ScalarProfile {
    std::vector<double> arcs;
    std::vector<double> values;
    double total = 0.0;  // total arc length of the owning boundary
};

namespace detail {

// Emit n equally spaced arc positions starting at seed (w = s_t / n).
inline SamplePointSet equispaced(double seed, double st, std::size_t n, SamplingMethod method) {
    SamplePointSet out;
    out.method = method;
    out.seed_arc = seed;
    out.positions.resize(n);
    const double w = st / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
        double s = seed + static_cast<double>(k) * w;
        s = std::fmod(s, st);
        if (s < 0.0) s += st;
        out.positions[k] = s;
    }
    return out;
}

// Cyclic gap sequence of an extrema set, starting at member `start`:
// gap k is the arc distance from the k-th visited member to the next, the
// last gap closing back to the start.
inline std::vector<double> cyclic_gaps(const std::vector<double>& sorted_positions,
                                       std::size_t start, double st) {
    const std::size_t L = sorted_positions.size();
    std::vector<double> gaps(L);
    for (std::size_t k = 0; k < L; ++k) {
        const double from = sorted_positions[(start + k) % L];
        const double to = sorted_positions[(start + k + 1) % L];
        double g = to - from;
        if (g <= 0.0) g += st;
        gaps[k] = g;
    }
    return gaps;
}

}  // namespace detail

// Recursive-bisection sampling: split the boundary into two equal halves,
// then each half again, k times over. Equivalent to 2^k equally spaced
// points seeded at the boundary's first point.
inline SamplePointSet sample_bisection(const SampledBoundary& b, unsigned k) {
    if (k < 2) throw ArgumentError("sample_bisection: need k >= 2 (n = 2^k >= 4)");
    if (k >= 8 * sizeof(std::size_t) - 1) throw ArgumentError("sample_bisection: k too large");
    const std::size_t n = std::size_t{1} << k;
    return detail::equispaced(0.0, b.total_length(), n, SamplingMethod::bisection);
}

// Count-based entry point; the count must be a power of two.
inline SamplePointSet sample_bisection_n(const SampledBoundary& b, std::size_t n) {
    if (n < 4 || (n & (n - 1)) != 0)
        throw ArgumentError("bisection sampling requires n to be a power of two (n = 2^k, n >= 4); got " +
                            std::to_string(n));
    unsigned k = 0;
    while ((std::size_t{1} << k) < n) ++k;
    return sample_bisection(b, k);
}

// Distance from the area centroid to each boundary point.
inline ScalarProfile centroid_distance_profile(const SampledBoundary& b) {
    const Vec2 c = centroid(b);
    ScalarProfile prof;
    prof.arcs = b.cum_arc;
    prof.total = b.total_length();
    prof.values.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) prof.values[i] = distance(b.points[i], c);
    return prof;
}

inline ScalarProfile curvature_arc_profile(const SampledBoundary& b) {
    ScalarProfile prof;
    prof.arcs = b.cum_arc;
    prof.total = b.total_length();
    prof.values = curvature_profile(b).values;
    return prof;
}

// All positions whose profile value lies within rel_tol * (max - min) of the
// global extremum. Adjacent qualifying samples (within a window of two mean
// spacings, circularly) collapse to one representative at their arc centroid.
inline ExtremaSet find_absolute_extrema(const ScalarProfile& prof, ExtremeKind kind,
                                        double rel_tol = 1e-3) {
    const std::size_t n = prof.values.size();
    if (n == 0) throw ArgumentError("find_absolute_extrema: empty profile");
    const auto [mn_it, mx_it] = std::minmax_element(prof.values.begin(), prof.values.end());
    const double vmin = *mn_it, vmax = *mx_it;
    const double range = vmax - vmin;
    if (range < 1e-12 * std::max(std::abs(vmax), std::abs(vmin)))
        throw NoExtremaError("no distinct extrema: profile is constant to within 1e-12");

    const double target = (kind == ExtremeKind::maxima) ? vmax : vmin;
    const double thresh = rel_tol * range;
    std::vector<std::size_t> hits;
    for (std::size_t i = 0; i < n; ++i)
        if (std::abs(prof.values[i] - target) <= thresh) hits.push_back(i);

    // Cluster circularly: indices whose arc gap is at most two mean spacings
    // belong to the same extremum.
    const double window = 2.0 * prof.total / static_cast<double>(n);
    std::vector<std::vector<std::size_t>> clusters;
    for (const std::size_t i : hits) {
        if (!clusters.empty() &&
            prof.arcs[i] - prof.arcs[clusters.back().back()] <= window)
            clusters.back().push_back(i);
        else
            clusters.push_back({i});
    }
    // Merge the last cluster into the first when they touch across the seam.
    if (clusters.size() > 1) {
        const double wrap_gap = prof.total - prof.arcs[clusters.back().back()] + prof.arcs[clusters.front().front()];
        if (wrap_gap <= window) {
            auto& first = clusters.front();
            auto& last = clusters.back();
            first.insert(first.begin(), last.begin(), last.end());
            clusters.pop_back();
        }
    }

    ExtremaSet out;
    out.kind = kind;
    for (const auto& cluster : clusters) {
        // Arc centroid; a cluster that crosses the seam is unwrapped first.
        const bool wraps = cluster.front() > cluster.back();
        double sum = 0.0;
        double best = prof.values[cluster.front()];
        for (const std::size_t i : cluster) {
            double a = prof.arcs[i];
            if (wraps && i >= cluster.front()) a -= prof.total;
            sum += a;
            if (kind == ExtremeKind::maxima)
                best = std::max(best, prof.values[i]);
            else
                best = std::min(best, prof.values[i]);
        }
        double center = sum / static_cast<double>(cluster.size());
        if (center < 0.0) center += prof.total;
        out.positions.push_back(center);
        out.values.push_back(best);
    }

    // Sort ascending by position, values kept aligned.
    std::vector<std::size_t> order(out.positions.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return out.positions[a] < out.positions[b]; });
    ExtremaSet sorted;
    sorted.kind = kind;
    for (const std::size_t i : order) {
        sorted.positions.push_back(out.positions[i]);
        sorted.values.push_back(out.values[i]);
    }
    return sorted;
}

// Arc length correspondence score between extremum i of A and extremum j of
// B: the sum of squared differences of the normalized cyclic gap sequences
// read counter-clockwise from those members. Zero iff the normalized gap
// sequences agree, i.e. the pairing is consistent with a similarity
// transform.
inline double correspondence_score(const ExtremaSet& A, std::size_t i, const ExtremaSet& B,
                                   std::size_t j, double st_a, double st_b) {
    const std::size_t L = A.positions.size();
    if (L != B.positions.size())
        throw AlignmentError("extrema counts differ (" + std::to_string(L) + " vs " +
                             std::to_string(B.positions.size()) +
                             "); shapes cannot correspond under this method");
    if (L == 0) throw ArgumentError("correspondence_score: empty extrema sets");
    if (i >= L || j >= L) throw ArgumentError("correspondence_score: extremum index out of range");
    const std::vector<double> ga = detail::cyclic_gaps(A.positions, i, st_a);
    const std::vector<double> gb = detail::cyclic_gaps(B.positions, j, st_b);
    double score = 0.0;
    for (std::size_t k = 0; k < L; ++k) {
        const double d = ga[k] / st_a - gb[k] / st_b;
        score += d * d;
    }
    return score;
}

namespace detail {

// Canonical member of an extrema set: the one whose normalized cyclic gap
// sequence is lexicographically smallest. Deterministic and preserved by
// rotation and scaling, which makes it a usable seed when only one shape is
// in hand.
inline std::size_t canonical_extremum(const ExtremaSet& ex, double st) {
    const std::size_t L = ex.positions.size();
    std::size_t best = 0;
    std::vector<double> best_gaps = cyclic_gaps(ex.positions, 0, st);
    for (double& g : best_gaps) g /= st;
    for (std::size_t i = 1; i < L; ++i) {
        std::vector<double> gaps = cyclic_gaps(ex.positions, i, st);
        for (double& g : gaps) g /= st;
        if (std::lexicographical_compare(gaps.begin(), gaps.end(), best_gaps.begin(),
                                         best_gaps.end())) {
            best = i;
            best_gaps = std::move(gaps);
        }
    }
    return best;
}

}  // namespace detail

// Seeded equal-spacing driven by the extrema of the centroid-distance
// profile. A unique extremum seeds directly; with several, the canonical
// member seeds. A caller that has already aligned two shapes' extrema (see
// align_extrema) passes the chosen extremum through seed_override instead.
inline SamplePointSet sample_by_distance_seed(const SampledBoundary& b, std::size_t n,
                                              ExtremeKind kind = ExtremeKind::maxima,
                                              double rel_tol = 1e-3,
                                              std::optional<double> seed_override = {}) {
    if (n < 3) throw ArgumentError("sample_by_distance_seed: need n >= 3");
    const ScalarProfile prof = centroid_distance_profile(b);
    const ExtremaSet ex = find_absolute_extrema(prof, kind, rel_tol);
    const double st = prof.total;
    double seed;
    if (seed_override) {
        seed = *seed_override;
    } else {
        const std::size_t seed_idx =
            ex.positions.size() == 1 ? 0 : detail::canonical_extremum(ex, st);
        seed = ex.positions[seed_idx];
    }
    return detail::equispaced(seed, st, n, SamplingMethod::centroid_distance);
}

// Local maxima of a profile on a circular grid. Runs of near-equal values
// (within flat_tol * range of each other) count as a single candidate whose
// position is the run's arc centroid; the run is a maximum when both
// neighboring runs sit lower. Returned sorted by position.
inline ExtremaSet find_local_maxima(const ScalarProfile& prof, double flat_tol = 1e-3) {
    const std::size_t n = prof.values.size();
    if (n < 3) throw ArgumentError("find_local_maxima: profile too short");
    const auto [mn_it, mx_it] = std::minmax_element(prof.values.begin(), prof.values.end());
    const double range = *mx_it - *mn_it;
    if (range < 1e-12 * std::max(std::abs(*mx_it), std::abs(*mn_it)))
        throw NoExtremaError("no distinct extrema: curvature profile is constant to within 1e-12");
    const double tol = flat_tol * range;

    // Group circular indices into maximal runs of near-equal values.
    std::vector<std::vector<std::size_t>> runs;
    std::vector<double> run_value;
    for (std::size_t i = 0; i < n; ++i) {
        if (!runs.empty() && std::abs(prof.values[i] - run_value.back()) <= tol) {
            runs.back().push_back(i);
        } else {
            runs.push_back({i});
            run_value.push_back(prof.values[i]);
        }
    }
    if (runs.size() > 1 &&
        std::abs(prof.values[runs.front().front()] - run_value.back()) <= tol) {
        // First and last runs join across the seam.
        auto& first = runs.front();
        auto& last = runs.back();
        first.insert(first.begin(), last.begin(), last.end());
        runs.pop_back();
        run_value.pop_back();
    }
    if (runs.size() == 1)
        throw NoExtremaError("no distinct extrema: curvature profile is flat to within tolerance");

    ExtremaSet out;
    out.kind = ExtremeKind::maxima;
    const std::size_t R = runs.size();
    for (std::size_t r = 0; r < R; ++r) {
        const double v = run_value[r];
        const double v_prev = run_value[(r + R - 1) % R];
        const double v_next = run_value[(r + 1) % R];
        if (v > v_prev && v > v_next) {
            const auto& run = runs[r];
            const bool wraps = run.front() > run.back();
            double sum = 0.0;
            double best = prof.values[run.front()];
            for (const std::size_t i : run) {
                double a = prof.arcs[i];
                if (wraps && i >= run.front()) a -= prof.total;
                sum += a;
                best = std::max(best, prof.values[i]);
            }
            double center = sum / static_cast<double>(run.size());
            if (center < 0.0) center += prof.total;
            out.positions.push_back(center);
            out.values.push_back(best);
        }
    }
    if (out.positions.empty())
        throw NoExtremaError("no distinct extrema: no local curvature maxima found");

    std::vector<std::size_t> order(out.positions.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return out.positions[a] < out.positions[b]; });
    ExtremaSet sorted;
    sorted.kind = ExtremeKind::maxima;
    for (const std::size_t i : order) {
        sorted.positions.push_back(out.positions[i]);
        sorted.values.push_back(out.values[i]);
    }
    return sorted;
}

namespace detail {

// Fill a point set up from the L curvature maxima to n points. Each round
// measures the smallest gap between consecutive points and marks off that
// length repeatedly inside every interval, widest interval first (ties by
// start position). When no mark fits strictly inside any interval (all gaps
// equal), the widest interval is split at its midpoint so every round makes
// progress.
inline std::vector<double> mark_off_points(std::vector<double> pts, std::size_t n, double st) {
    std::sort(pts.begin(), pts.end());
    while (pts.size() < n) {
        const std::size_t m = pts.size();
        struct Interval {
            double start, length;
        };
        std::vector<Interval> intervals(m);
        double smallest = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m; ++i) {
            double g = pts[(i + 1) % m] - pts[i];
            if (g <= 0.0) g += st;
            intervals[i] = {pts[i], g};
            smallest = std::min(smallest, g);
        }
        std::sort(intervals.begin(), intervals.end(), [](const Interval& a, const Interval& b) {
            if (a.length != b.length) return a.length > b.length;
            return a.start < b.start;
        });

        std::vector<double> added;
        for (const Interval& iv : intervals) {
            if (pts.size() + added.size() >= n) break;
            for (double mark = smallest; mark < iv.length - 1e-12 * st; mark += smallest) {
                double s = iv.start + mark;
                if (s >= st) s -= st;
                added.push_back(s);
                if (pts.size() + added.size() >= n) break;
            }
        }
        if (added.empty()) {
            // Every interval has length == smallest; bisect the widest.
            const Interval& iv = intervals.front();
            double s = iv.start + 0.5 * iv.length;
            if (s >= st) s -= st;
            added.push_back(s);
        }
        pts.insert(pts.end(), added.begin(), added.end());
        std::sort(pts.begin(), pts.end());
    }
    return pts;
}

}  // namespace detail

// Sampling at the local maxima of the curvature profile. With more maxima
// than requested points, the strongest n win; with fewer, intervals between
// maxima are subdivided by the mark-off rule above until n points exist.
// seed_override works as in sample_by_distance_seed and must name one of the
// kept maxima.
inline SamplePointSet sample_by_curvature_maxima(const SampledBoundary& b, std::size_t n,
                                                 double flat_tol = 1e-3,
                                                 std::optional<double> seed_override = {}) {
    if (n < 3) throw ArgumentError("sample_by_curvature_maxima: need n >= 3");
    const ScalarProfile prof = curvature_arc_profile(b);
    const ExtremaSet ex = find_local_maxima(prof, flat_tol);
    const double st = prof.total;
    const std::size_t L = ex.positions.size();

    std::vector<double> kept = ex.positions;
    std::vector<double> kept_values = ex.values;
    if (n < L) {
        std::vector<std::size_t> order(L);
        for (std::size_t i = 0; i < L; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (ex.values[a] != ex.values[b]) return ex.values[a] > ex.values[b];
            return ex.positions[a] < ex.positions[b];
        });
        order.resize(n);
        std::sort(order.begin(), order.end());
        kept.clear();
        kept_values.clear();
        for (const std::size_t i : order) {
            kept.push_back(ex.positions[i]);
            kept_values.push_back(ex.values[i]);
        }
    }

    if (kept.size() == 1) {
        if (seed_override && *seed_override != kept[0])
            throw ArgumentError("sample_by_curvature_maxima: seed override is not a kept maximum");
        // A single maximum reduces to the seeded equal-spacing scheme.
        return detail::equispaced(kept[0], st, n, SamplingMethod::curvature_maxima);
    }
    double seed;
    if (seed_override) {
        if (std::find(kept.begin(), kept.end(), *seed_override) == kept.end())
            throw ArgumentError("sample_by_curvature_maxima: seed override is not a kept maximum");
        seed = *seed_override;
    } else {
        ExtremaSet kept_set;
        kept_set.kind = ExtremeKind::maxima;
        kept_set.positions = kept;
        kept_set.values = kept_values;
        seed = kept[detail::canonical_extremum(kept_set, st)];
    }

    std::vector<double> pts = (n > kept.size()) ? detail::mark_off_points(kept, n, st) : kept;

    // Rotate so the seed comes first (mark-off only inserts, so the seed is
    // still present verbatim).
    SamplePointSet out;
    out.method = SamplingMethod::curvature_maxima;
    out.seed_arc = seed;
    const auto it = std::find(pts.begin(), pts.end(), seed);
    const std::size_t seed_pos = static_cast<std::size_t>(it - pts.begin()) % pts.size();
    out.positions.reserve(pts.size());
    for (std::size_t k = 0; k < pts.size(); ++k)
        out.positions.push_back(pts[(seed_pos + k) % pts.size()]);
    return out;
}

// Joint seed choice for two shapes sampled by an extrema-based method: the
// pairing of extrema minimizing the arc length correspondence score, ties to
// the smallest index pair.
struct AlignedSeeds {
    std::size_t index_a = 0, index_b = 0;
    double seed_a = 0.0, seed_b = 0.0;
    double score = 0.0;
};

inline AlignedSeeds align_extrema(const ExtremaSet& A, double st_a, const ExtremaSet& B,
                                  double st_b) {
    const std::size_t L = A.positions.size();
    if (L != B.positions.size())
        throw AlignmentError("extrema counts differ (" + std::to_string(L) + " vs " +
                             std::to_string(B.positions.size()) +
                             "); shapes cannot correspond under this method");
    if (L == 0) throw ArgumentError("align_extrema: empty extrema sets");
    AlignedSeeds best;
    best.score = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < L; ++i)
        for (std::size_t j = 0; j < L; ++j) {
            const double score = correspondence_score(A, i, B, j, st_a, st_b);
            if (score < best.score) {
                best = {i, j, A.positions[i], B.positions[j], score};
            }
        }
    return best;
}

}  // namespace shapetree
