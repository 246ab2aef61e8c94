#pragma once

#include "drg/graphs.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>

namespace autos {

using drg::VertexMap;

inline VertexMap cycle(int n, std::mt19937& rng)
{
    std::uniform_int_distribution<int> shift(0, n - 1), flip(0, 1);
    const int s = shift(rng);
    const bool f = flip(rng) != 0;
    VertexMap m(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v)
        m[static_cast<size_t>(v)] = ((f ? n - v : v) + s) % n;
    return m;
}

// Induced by a permutation of the ground set; vertices are k-subsets in
// colex order.
inline VertexMap kneser(int v, int k, std::mt19937& rng)
{
    std::vector<unsigned> subsets;
    for (unsigned mask = 0; mask < (1u << v); ++mask)
        if (std::popcount(mask) == k)
            subsets.push_back(mask);
    std::vector<int> perm(static_cast<size_t>(v));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    VertexMap m(subsets.size());
    for (size_t i = 0; i < subsets.size(); ++i) {
        unsigned img = 0;
        for (int b = 0; b < v; ++b)
            if (subsets[i] >> b & 1u)
                img |= 1u << perm[static_cast<size_t>(b)];
        m[i] = static_cast<int>(std::lower_bound(subsets.begin(), subsets.end(), img) - subsets.begin());
    }
    return m;
}

// Coordinate permutation composed with a symbol permutation per coordinate;
// vertex index is sum digit_i q^i.
inline VertexMap hamming(int d, int q, std::mt19937& rng)
{
    std::vector<int> coord(static_cast<size_t>(d));
    std::iota(coord.begin(), coord.end(), 0);
    std::shuffle(coord.begin(), coord.end(), rng);
    std::vector<std::vector<int>> sym(static_cast<size_t>(d), std::vector<int>(static_cast<size_t>(q)));
    for (auto& s : sym) {
        std::iota(s.begin(), s.end(), 0);
        std::shuffle(s.begin(), s.end(), rng);
    }
    int n = 1;
    for (int i = 0; i < d; ++i)
        n *= q;
    VertexMap m(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) {
        std::vector<int> digit(static_cast<size_t>(d));
        for (int i = 0, x = v; i < d; ++i, x /= q)
            digit[static_cast<size_t>(i)] = x % q;
        int img = 0;
        for (int i = d - 1; i >= 0; --i) {
            const int src = coord[static_cast<size_t>(i)];
            img = img * q + sym[static_cast<size_t>(i)][static_cast<size_t>(digit[static_cast<size_t>(src)])];
        }
        m[static_cast<size_t>(v)] = img;
    }
    return m;
}

}  // namespace autos
