#pragma once

// Independent reference computations the tests check the library against.
// Nothing here calls into pamflow's implementation paths.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <numbers>
#include <string>
#include <tuple>
#include <vector>

namespace oracle {

// Textbook DFT, O(N^2), with a precomputed root table so large N stays
// affordable. X[k] = sum_n x[n] e^{-2pi i nk/N}.
inline std::vector<std::complex<double>> direct_dft(const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<std::complex<double>> roots(n);
    for (std::size_t k = 0; k < n; ++k) {
        double ang = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        roots[k] = {std::cos(ang), std::sin(ang)};
    }
    std::vector<std::complex<double>> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> acc{0.0, 0.0};
        std::size_t idx = 0;
        for (std::size_t i = 0; i < n; ++i) {
            acc += x[i] * roots[idx];
            idx += k;
            if (idx >= n) idx -= n;
        }
        out[k] = acc;
    }
    return out;
}

inline std::vector<double> magnitudes(const std::vector<std::complex<double>>& spectrum) {
    std::vector<double> mags(spectrum.size());
    for (std::size_t i = 0; i < spectrum.size(); ++i) mags[i] = std::abs(spectrum[i]);
    return mags;
}

inline std::size_t peak_bin(const std::vector<double>& mags, std::size_t lo, std::size_t hi) {
    std::size_t best = lo;
    for (std::size_t k = lo; k < hi && k < mags.size(); ++k)
        if (mags[k] > mags[best]) best = k;
    return best;
}

// Same periodic Hann the spectrogram contract documents.
inline std::vector<double> hann_periodic(std::size_t n) {
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i)
        w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                    static_cast<double>(n));
    return w;
}

// Clip-count enumeration: lay clips down one at a time, then keep a tail
// iff at least min_tail seconds of real content remain.
inline std::size_t count_clips(double duration, double clip_length, double min_tail) {
    std::size_t k = 0;
    while ((static_cast<double>(k) + 1.0) * clip_length <= duration) ++k;
    const double tail = duration - static_cast<double>(k) * clip_length;
    return k + (tail >= min_tail ? 1 : 0);
}

// Brute-force detection filter: the double loop over rows and classes.
struct SimpleDetection {
    std::string class_code;
    std::string clip_id;
    double score;
    double threshold;

    bool operator==(const SimpleDetection&) const = default;
};

template <typename Rows, typename Classes, typename Lookup>
std::vector<SimpleDetection> filter_brute_force(const Rows& rows, const Classes& classes,
                                                Lookup&& effective_threshold) {
    std::vector<SimpleDetection> out;
    for (const auto& row : rows) {
        for (std::size_t k = 0; k < classes.size(); ++k) {
            const double th = effective_threshold(classes[k]);
            if (row.scores[k] >= th)
                out.push_back({classes[k].code, row.clip_id, row.scores[k], th});
        }
    }
    std::sort(out.begin(), out.end(), [](const SimpleDetection& a, const SimpleDetection& b) {
        if (a.class_code != b.class_code) return a.class_code < b.class_code;
        if (a.score != b.score) return a.score > b.score;
        return a.clip_id < b.clip_id;
    });
    return out;
}

} // namespace oracle
