#pragma once

#include "frametk/linalg.hpp"
#include "frametk/sequence.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace frametk::testing {

using Rng = std::mt19937_64;

inline cplx gaussian(Rng& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    return {n(rng), n(rng)};
}

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = gaussian(rng);
    return m;
}

inline std::vector<cplx> random_unit(Rng& rng, std::size_t d) {
    std::vector<cplx> v(d);
    for (auto& x : v) x = gaussian(rng);
    const double n = norm2(v);
    for (auto& x : v) x /= n;
    return v;
}

/// Product of d x r and r x n Gaussian factors: rank r almost surely.
inline Matrix random_rank(Rng& rng, std::size_t d, std::size_t n, std::size_t r) {
    return random_matrix(rng, d, r) * random_matrix(rng, r, n);
}

inline FiniteSequence random_sequence(Rng& rng, std::size_t d, std::size_t n) {
    return FiniteSequence::from_matrix(random_matrix(rng, d, n));
}

/// Random family of one of four shapes: full rank, low rank with zero
/// columns, duplicated columns, or widely scaled columns.
inline FiniteSequence random_family(Rng& rng, std::size_t d, std::size_t n, int kind) {
    Matrix m = random_matrix(rng, d, n);
    switch (kind % 4) {
    case 0: break;
    case 1: {
        const std::size_t r = uniform(rng, 1, std::min(d, n));
        m = random_rank(rng, d, n, r);
        for (std::size_t j = 0; j < n; ++j)
            if (uniform(rng, 0, 3) == 0)
                for (std::size_t i = 0; i < d; ++i) m(i, j) = 0.0;
        break;
    }
    case 2:
        if (n > 1)
            for (std::size_t j = 1; j < n; ++j)
                if (uniform(rng, 0, 2) == 0) m.set_column(j, m.column(uniform(rng, 0, j - 1)));
        break;
    case 3:
        for (std::size_t j = 0; j < n; ++j) {
            const double s = std::pow(10.0, std::uniform_real_distribution<double>(-3.0, 3.0)(rng));
            for (std::size_t i = 0; i < d; ++i) m(i, j) *= s;
        }
        break;
    }
    return FiniteSequence::from_matrix(m);
}

/// sum_k |<f, psi_k>|^2, the brute-force frame quotient for unit f.
inline double frame_quotient(const FiniteSequence& seq, const std::vector<cplx>& f) {
    double acc = 0.0;
    for (const auto& psi : seq.vectors()) acc += std::norm(inner(f, psi));
    return acc;
}

} // namespace frametk::testing
