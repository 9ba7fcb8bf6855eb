#pragma once

#include <cstdint>
#include <vector>

#include "twisted.hpp"

namespace tgrs {

/// Minimum Hamming distance from u to any codeword, i.e. the minimum weight
/// in the coset u + C. Full q^k enumeration; projective shortcuts do not
/// apply to cosets.
inline std::size_t error_distance(const FVector& u, const LinearCode& C, std::uint64_t cap = 10000000) {
    if (u.size() != C.length()) throw LengthMismatch("vector length disagrees with code length");
    const auto& f = *C.field();
    const std::size_t n = C.length(), k = C.dimension();
    const std::uint32_t q = static_cast<std::uint32_t>(f.q());
    {
        std::uint64_t total = 1;
        for (std::size_t i = 0; i < k; ++i) {
            total *= q;
            if (total > cap) throw EnumerationCapExceeded("q^k exceeds the enumeration cap " + std::to_string(cap));
        }
    }
    const auto& G = C.generator();

    // Start from u itself (message zero) and walk messages by odometer,
    // keeping partial sums per digit layer.
    std::vector<std::uint32_t> layers((k + 1) * n);
    auto layer = [&](std::size_t j) { return layers.data() + j * n; };
    for (std::size_t c = 0; c < n; ++c) layer(0)[c] = u[c].index();
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t c = 0; c < n; ++c) layer(j + 1)[c] = layer(j)[c];

    std::vector<std::uint32_t> digit(k, 0);
    std::size_t best = n + 1;
    while (true) {
        std::size_t w = 0;
        const std::uint32_t* word = layer(k);
        for (std::size_t c = 0; c < n; ++c) w += word[c] != 0;
        if (w < best) best = w;
        if (best == 0) return 0;
        std::size_t pos = k;
        while (pos > 0 && digit[pos - 1] + 1 == q) {
            digit[pos - 1] = 0;
            --pos;
        }
        if (pos == 0) break;
        digit[pos - 1] += 1;
        for (std::size_t j = pos - 1; j < k; ++j) {
            const std::uint32_t* src = layer(j);
            std::uint32_t* dst = layer(j + 1);
            for (std::size_t c = 0; c < n; ++c) dst[c] = f.subx(src[c], f.mulx(digit[j], G.idx(j, c)));
        }
    }
    return best;
}

/// Largest coset-leader weight, found syndrome-first: vectors are enumerated
/// by increasing weight and each syndrome records the weight of its first
/// hit; the scan stops once every syndrome is covered. This costs on the
/// order of q^(n-k) cosets instead of q^n vectors.
inline std::size_t covering_radius(const LinearCode& C, std::uint64_t cap = 1000000) {
    const auto& f = *C.field();
    const std::size_t n = C.length(), r = C.length() - C.dimension();
    const std::uint32_t q = static_cast<std::uint32_t>(f.q());
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < r; ++i) {
        total *= q;
        if (total > cap) throw EnumerationCapExceeded("q^(n-k) exceeds the syndrome cap " + std::to_string(cap));
    }
    if (r == 0) return 0;

    auto H = C.parity_check();
    std::vector<char> seen(total, 0);
    std::uint64_t covered = 1;  // zero syndrome, weight 0
    seen[0] = 1;
    std::size_t radius = 0;

    // Syndrome of a support/value assignment, packed base q.
    std::vector<std::uint32_t> syn(r);
    auto syn_index = [&]() {
        std::uint64_t idx = 0;
        for (std::size_t j = r; j-- > 0;) idx = idx * q + syn[j];
        return idx;
    };

    for (std::size_t w = 1; w <= n && covered < total; ++w) {
        std::vector<std::size_t> support(w);
        for (std::size_t i = 0; i < w; ++i) support[i] = i;
        while (true) {
            // All (q-1)^w nonzero value assignments on this support.
            std::vector<std::uint32_t> val(w, 1);
            while (true) {
                for (std::size_t j = 0; j < r; ++j) {
                    std::uint32_t acc = 0;
                    for (std::size_t i = 0; i < w; ++i) acc = f.addx(acc, f.mulx(val[i], H.idx(j, support[i])));
                    syn[j] = acc;
                }
                auto idx = syn_index();
                if (!seen[idx]) {
                    seen[idx] = 1;
                    ++covered;
                    radius = w;
                    if (covered == total) return radius;
                }
                std::size_t pos = w;
                while (pos > 0 && val[pos - 1] + 1 == q) {
                    val[pos - 1] = 1;
                    --pos;
                }
                if (pos == 0) break;
                val[pos - 1] += 1;
            }
            std::size_t i = w;
            while (i > 0 && support[i - 1] == n - w + (i - 1)) --i;
            if (i == 0) break;
            ++support[i - 1];
            for (std::size_t j = i; j < w; ++j) support[j] = support[j - 1] + 1;
        }
    }
    return radius;
}

/// One candidate deep hole of the dual code: the scaled power vector
/// u_i = s a_i^t w_i / v_i, where class 1 takes t = n-k-1 with s = eta^{-1}
/// and class 2 takes t = n-k with s = (1 + eta sum a)^{-1}.
struct DeepHole {
    std::size_t t;
    FieldElement s;
    FVector u;
};

inline DeepHole deep_hole(const TwistedSpec& spec, int which_class) {
    if (spec.extended) throw InvalidSpec("deep holes are defined for non-extended specs");
    spec.validate();
    if (which_class != 1 && which_class != 2) throw InvalidSpec("deep hole class must be 1 or 2");
    const auto& f = *spec.field;
    std::size_t n = spec.n(), k = spec.k;

    std::size_t t;
    FieldElement s = f.zero();
    if (which_class == 1) {
        t = n - k - 1;
        s = spec.eta.inverse();
    } else {
        t = n - k;
        FieldElement pivot = f.one() + spec.eta * sum_points(spec.S);
        if (pivot.is_zero()) throw Class2Unavailable("1 + eta * sum(a) vanishes");
        s = pivot.inverse();
    }

    auto w = w_vector(spec.S);
    FVector u;
    u.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        u.push_back(s * spec.S[i].pow(static_cast<std::int64_t>(t)) * w[i] / spec.v[i]);
    return {t, s, std::move(u)};
}

/// Second extension of the twisted code by the deep-hole vector; equals the
/// extended twisted code for both admissible classes.
inline LinearCode second_extension_of_tgrs(const TwistedSpec& spec, int which_class) {
    auto dh = deep_hole(spec, which_class);
    return tgrs(spec).second_extend(dh.u);
}

inline bool is_deep_hole(const FVector& u, const LinearCode& C,
                         std::uint64_t word_cap = 10000000, std::uint64_t syndrome_cap = 1000000) {
    return error_distance(u, C, word_cap) == covering_radius(C, syndrome_cap);
}

} // namespace tgrs
