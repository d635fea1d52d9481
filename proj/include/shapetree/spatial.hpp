#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "shapetree/core.hpp"
#include "shapetree/tree.hpp"

namespace shapetree {

// Rotation/scale normalized view of a tree's vectors: consecutive angle
// differences (rotation cancels) and moduli divided by their maximum (scale
// cancels). Optionally carries a per-sample scalar feature sequence, whose
// ordering along the boundary is itself rotation invariant.
struct SpatialDescriptor {
    std::vector<double> angle_diffs;  // n-1 values in (-pi, pi]
    std::vector<double> norm_moduli;  // n-1 values in (0, 1], max exactly 1
    std::vector<double> feature_values;
};

inline SpatialDescriptor spatial_descriptor(const CompactShapeTree& t) {
    const std::size_t m = t.vectors.size();
    if (m < 2) throw ArgumentError("spatial_descriptor: need at least 3 samples");

    std::vector<double> angles(m);
    std::vector<double> moduli(m);
    double max_mod = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const double len = norm(t.vectors[k]);
        if (len <= 0.0)
            throw DegenerateShapeError("spatial_descriptor: zero-length vector at position " +
                                       std::to_string(k) + " (duplicate sample point?)");
        angles[k] = angle_of(t.vectors[k]);
        moduli[k] = len;
        max_mod = std::max(max_mod, len);
    }

    SpatialDescriptor d;
    d.angle_diffs.resize(m);
    // Consecutive differences with cyclic closure: the last entry compares the
    // first angle against the last, so a uniform rotation cancels everywhere.
    for (std::size_t k = 0; k + 1 < m; ++k) d.angle_diffs[k] = wrap_angle(angles[k + 1] - angles[k]);
    d.angle_diffs[m - 1] = wrap_angle(angles[0] - angles[m - 1]);
    d.norm_moduli.resize(m);
    for (std::size_t k = 0; k < m; ++k) d.norm_moduli[k] = moduli[k] / max_mod;
    return d;
}

// Squared distance between descriptors: wrapped angle-difference residuals
// plus modulus residuals. Zero iff the descriptors agree.
inline double spatial_distance(const SpatialDescriptor& a, const SpatialDescriptor& b) {
    if (a.angle_diffs.size() != b.angle_diffs.size() || a.norm_moduli.size() != b.norm_moduli.size())
        throw ArgumentError("spatial_distance: descriptor lengths differ");
    double sum = 0.0;
    for (std::size_t k = 0; k < a.angle_diffs.size(); ++k) {
        const double d = wrap_angle(a.angle_diffs[k] - b.angle_diffs[k]);
        sum += d * d;
    }
    for (std::size_t k = 0; k < a.norm_moduli.size(); ++k) {
        const double d = a.norm_moduli[k] - b.norm_moduli[k];
        sum += d * d;
    }
    return sum;
}

}  // namespace shapetree
