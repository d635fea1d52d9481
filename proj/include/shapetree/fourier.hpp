#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "shapetree/core.hpp"
#include "shapetree/tree.hpp"

namespace shapetree {

struct Spectrum {
    enum class Kind { angle, modulus };
    std::vector<double> omegas;
    std::vector<std::complex<double>> values;
    Kind kind = Kind::angle;
};

// Finite aperiodic transform X(w) = sum_{i=1..m} seq[i-1] * e^{-j*w*i},
// evaluated by direct summation at each requested frequency. The index
// starts at 1, matching the vector numbering of the tree.
inline std::vector<std::complex<double>> aperiodic_spectrum(const std::vector<double>& seq,
                                                            const std::vector<double>& omegas) {
    std::vector<std::complex<double>> out;
    out.reserve(omegas.size());
    for (const double w : omegas) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t i = 0; i < seq.size(); ++i) {
            const double phase = -w * static_cast<double>(i + 1);
            acc += seq[i] * std::complex<double>{std::cos(phase), std::sin(phase)};
        }
        out.push_back(acc);
    }
    return out;
}

// Unwrap a sequence of raw atan2 angles into a continuous path: successive
// differences are forced into (-pi, pi] by adding multiples of 2*pi, with the
// first element kept in (-pi, pi].
inline std::vector<double> unwrap_angles(std::vector<double> angles) {
    for (std::size_t i = 1; i < angles.size(); ++i) {
        const double step = wrap_angle(angles[i] - angles[i - 1]);
        angles[i] = angles[i - 1] + step;
    }
    return angles;
}

// Transform of the exponentiated angle sequence. When `center` is set the
// angles are shifted to zero mean before exponentiation; that multiplies the
// whole spectrum by the constant e^{-mean}, leaves every spectral ratio
// untouched, and keeps e^theta in floating range for long sequences.
inline std::vector<std::complex<double>> exp_sequence_spectrum(const std::vector<double>& thetas,
                                                               const std::vector<double>& omegas,
                                                               bool center) {
    std::vector<double> values(thetas.size());
    double mean = 0.0;
    if (center && !thetas.empty()) {
        for (const double t : thetas) mean += t;
        mean /= static_cast<double>(thetas.size());
    }
    for (std::size_t i = 0; i < thetas.size(); ++i) values[i] = std::exp(thetas[i] - mean);
    return aperiodic_spectrum(values, omegas);
}

// Angle spectrum of a tree: vector angles unwrapped to a continuous sequence,
// centered, exponentiated, transformed.
inline Spectrum angle_spectrum(const CompactShapeTree& t, const std::vector<double>& omegas) {
    if (t.vectors.size() < 2) throw ArgumentError("angle_spectrum: need at least 3 samples");
    std::vector<double> angles;
    angles.reserve(t.vectors.size());
    for (const Vec2& u : t.vectors) {
        if (squared_norm(u) <= 0.0)
            throw DegenerateShapeError("angle_spectrum: zero-length vector (duplicate sample?)");
        angles.push_back(angle_of(u));
    }
    Spectrum s;
    s.kind = Spectrum::Kind::angle;
    s.omegas = omegas;
    s.values = exp_sequence_spectrum(unwrap_angles(std::move(angles)), omegas, /*center=*/true);
    return s;
}

// Modulus spectrum: plain transform of the vector lengths.
inline Spectrum modulus_spectrum(const CompactShapeTree& t, const std::vector<double>& omegas) {
    if (t.vectors.size() < 2) throw ArgumentError("modulus_spectrum: need at least 3 samples");
    std::vector<double> lengths;
    lengths.reserve(t.vectors.size());
    for (const Vec2& u : t.vectors) lengths.push_back(norm(u));
    Spectrum s;
    s.kind = Spectrum::Kind::modulus;
    s.omegas = omegas;
    s.values = aperiodic_spectrum(lengths, omegas);
    return s;
}

// Default evaluation grid for n samples: w = 2*pi*m/(n-1) for
// m = 1..floor((n-1)/2), i.e. the harmonics of the vector sequence length.
inline std::vector<double> default_omegas(std::size_t n) {
    if (n < 3) throw ArgumentError("default_omegas: need n >= 3");
    const std::size_t m_max = std::max<std::size_t>(1, (n - 1) / 2);
    std::vector<double> out;
    out.reserve(m_max);
    for (std::size_t m = 1; m <= m_max; ++m)
        out.push_back(2.0 * pi * static_cast<double>(m) / static_cast<double>(n - 1));
    return out;
}

namespace detail {

inline std::size_t spectrum_index(const Spectrum& s, double omega) {
    for (std::size_t i = 0; i < s.omegas.size(); ++i)
        if (std::abs(s.omegas[i] - omega) <= 1e-9) return i;
    throw ArgumentError("spectral_ratio: frequency not present in the spectrum");
}

}  // namespace detail

// X(w1) / X(w2). The ratio cancels the common factors a rotation (angle
// spectrum) or scaling (modulus spectrum) multiplies in, so it is the
// invariant of record.
inline std::complex<double> spectral_ratio(const Spectrum& s, double omega1, double omega2) {
    const std::size_t i1 = detail::spectrum_index(s, omega1);
    const std::size_t i2 = detail::spectrum_index(s, omega2);
    const std::complex<double> denom = s.values[i2];
    if (std::abs(denom) <= 1e-12)
        throw UnstableFrequencyError(
            "spectral ratio denominator |X(omega2)| <= 1e-12 at omega2 = " + std::to_string(omega2) +
            "; choose a different omega2");
    if (i1 == i2) return {1.0, 0.0};
    return s.values[i1] / denom;
}

}  // namespace shapetree
