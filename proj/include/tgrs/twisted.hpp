#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_set>
#include <vector>

#include "linear_code.hpp"

namespace tgrs {

/// Parameters of a (+)-twisted generalized Reed-Solomon code: n distinct
/// evaluation points S, nonzero column multipliers v, a nonzero twist eta,
/// the dimension k, and whether the length-(n+1) extended variant is meant.
///
/// Point order matters: the printed generator and parity-check matrices
/// depend on it, so S is a sequence here even though it is mathematically a
/// set.
struct TwistedSpec {
    FieldPtr field;
    FVector S;
    FVector v;
    FieldElement eta;
    std::size_t k = 0;
    bool extended = false;

    std::size_t n() const { return S.size(); }

    /// Full invariant check: distinct points, nonzero multipliers and twist,
    /// 3 <= k <= n-2. Matrix builders accept a wider dimension range; this
    /// strict form gates external inputs.
    void validate() const {
        if (!field) throw InvalidSpec("missing field");
        if (v.size() != S.size()) throw InvalidSpec("v and S lengths disagree");
        check_points(S);
        for (auto& vi : v)
            if (vi.is_zero()) throw InvalidSpec("zero column multiplier");
        if (eta.is_zero()) throw InvalidSpec("zero twist");
        if (k < 3 || k + 2 > n()) throw InvalidSpec("dimension k must satisfy 3 <= k <= n-2");
    }

    static void check_points(const FVector& S) {
        if (S.size() < 2) throw InvalidSpec("need at least two evaluation points");
        std::unordered_set<std::uint32_t> seen;
        for (auto& a : S)
            if (!seen.insert(a.index()).second) throw DuplicatePoints("repeated evaluation point");
    }
};

inline FieldElement sum_points(const FVector& S) {
    FieldElement acc = S.front().field().zero();
    for (auto& a : S) acc = acc + a;
    return acc;
}

/// w_i = prod_{j != i} (a_i - a_j)^{-1}, the dual-side multipliers.
inline FVector w_vector(const FVector& S) {
    TwistedSpec::check_points(S);
    const auto& f = S.front().field();
    FVector w;
    w.reserve(S.size());
    for (std::size_t i = 0; i < S.size(); ++i) {
        std::uint32_t prod = 1;
        for (std::size_t j = 0; j < S.size(); ++j) {
            if (j == i) continue;
            prod = f.mulx(prod, f.subx(S[i].index(), S[j].index()));
        }
        w.push_back({f.invx(prod), &f});
    }
    return w;
}

/// Vandermonde-with-multipliers generator: row j holds v_i * a_i^j.
inline FMatrix grs_generator(const FVector& S, const FVector& v, std::size_t k) {
    TwistedSpec::check_points(S);
    if (v.size() != S.size()) throw InvalidSpec("v and S lengths disagree");
    if (k < 1 || k > S.size()) throw InvalidSpec("GRS dimension out of range");
    const auto& f = S.front().field();
    for (auto& vi : v)
        if (vi.is_zero()) throw InvalidSpec("zero column multiplier");
    FMatrix G(f.shared_from_this(), k, S.size());
    for (std::size_t i = 0; i < S.size(); ++i) {
        std::uint32_t pw = v[i].index();
        for (std::size_t j = 0; j < k; ++j) {
            G.set_idx(j, i, pw);
            pw = f.mulx(pw, S[i].index());
        }
    }
    return G;
}

inline LinearCode grs(const FVector& S, const FVector& v, std::size_t k) {
    return LinearCode::from_generator(grs_generator(S, v, k));
}

/// GRS generator plus the (0,...,0,1)^T extension column.
inline FMatrix egrs_generator(const FVector& S, const FVector& v, std::size_t k) {
    auto G = grs_generator(S, v, k);
    FMatrix E(G.field(), k, S.size() + 1);
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < S.size(); ++c) E.set_idx(r, c, G.idx(r, c));
    E.set_idx(k - 1, S.size(), 1);
    return E;
}

inline LinearCode egrs(const FVector& S, const FVector& v, std::size_t k) {
    return LinearCode::from_generator(egrs_generator(S, v, k));
}

/// The defining generator matrix of the (+)-twisted code: rows 0..k-2 match
/// the GRS rows, the last row is v_i (a_i^{k-1} + eta a_i^k); the extended
/// variant appends the (0,...,0,1)^T column.
inline FMatrix twisted_generator(const TwistedSpec& spec) {
    TwistedSpec::check_points(spec.S);
    if (spec.v.size() != spec.S.size()) throw InvalidSpec("v and S lengths disagree");
    for (auto& vi : spec.v)
        if (vi.is_zero()) throw InvalidSpec("zero column multiplier");
    if (spec.eta.is_zero()) throw InvalidSpec("zero twist");
    std::size_t n = spec.n(), k = spec.k;
    if (k < 1 || k + 1 > n) throw InvalidSpec("twisted dimension out of range");
    const auto& f = *spec.field;
    FMatrix G(spec.field, k, n + (spec.extended ? 1 : 0));
    for (std::size_t i = 0; i < n; ++i) {
        std::uint32_t a = spec.S[i].index();
        std::uint32_t pw = spec.v[i].index();
        for (std::size_t j = 0; j + 1 < k; ++j) {
            G.set_idx(j, i, pw);
            pw = f.mulx(pw, a);
        }
        // pw now holds v_i a_i^(k-1); fold in the twist term.
        std::uint32_t twisted = f.addx(pw, f.mulx(spec.eta.index(), f.mulx(pw, a)));
        G.set_idx(k - 1, i, twisted);
    }
    if (spec.extended) G.set_idx(k - 1, n, 1);
    return G;
}

inline LinearCode tgrs(const TwistedSpec& spec) {
    if (spec.extended) throw InvalidSpec("spec is extended; build the extended code instead");
    return LinearCode::from_generator(twisted_generator(spec));
}

inline LinearCode etgrs(const TwistedSpec& spec) {
    if (!spec.extended) throw InvalidSpec("spec is not extended");
    return LinearCode::from_generator(twisted_generator(spec));
}

inline LinearCode twisted_code(const TwistedSpec& spec) {
    return spec.extended ? etgrs(spec) : tgrs(spec);
}

/// The closed-form parity check of the extended twisted code: an
/// (n+1-k) x (n+1) matrix whose point columns carry (w_i/v_i) a_i^h and
/// whose last column is (0, ..., 0, -eta, -1 - eta * sum a_i).
inline FMatrix etgrs_parity_check(const TwistedSpec& spec) {
    if (!spec.extended) throw InvalidSpec("parity-check form requires an extended spec");
    std::size_t n = spec.n(), k = spec.k;
    if (k < 1 || k + 1 > n) throw InvalidSpec("twisted dimension out of range");
    const auto& f = *spec.field;
    auto w = w_vector(spec.S);
    FMatrix H(spec.field, n + 1 - k, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        if (spec.v[i].is_zero()) throw InvalidSpec("zero column multiplier");
        std::uint32_t base = f.divx(w[i].index(), spec.v[i].index());
        for (std::size_t h = 0; h + k <= n; ++h) {
            H.set_idx(h, i, base);
            base = f.mulx(base, spec.S[i].index());
        }
    }
    FieldElement sa = sum_points(spec.S);
    H.set(n - k - 1, n, -spec.eta);
    H.set(n - k, n, -(spec.field->one() + spec.eta * sa));
    return H;
}

struct SubsetSumResult {
    bool found = false;
    std::vector<std::size_t> witness;  // indices into S, ascending
};

namespace detail {

inline std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > cap) return cap + 1;
    }
    return r;
}

/// Depth-first lexicographic scan; fills witness with the first hit.
inline bool subset_sum_dfs(const Field& f, const std::vector<std::uint32_t>& a,
                           std::size_t start, std::size_t count, std::uint32_t target,
                           std::vector<std::size_t>& witness) {
    if (count == 0) return target == 0;
    if (a.size() - start < count) return false;
    for (std::size_t i = start; i + count <= a.size(); ++i) {
        witness.push_back(i);
        if (subset_sum_dfs(f, a, i + 1, count - 1, f.subx(target, a[i]), witness)) return true;
        witness.pop_back();
    }
    return false;
}

/// Meet-in-the-middle existence test on the suffix a[start..].
inline bool subset_sum_mitm(const Field& f, const std::vector<std::uint32_t>& a,
                            std::size_t start, std::size_t count, std::uint32_t target) {
    std::size_t n = a.size() - start;
    if (count > n) return false;
    if (count == 0) return target == 0;
    std::size_t n1 = n / 2, n2 = n - n1;
    // Sums of all c-subsets of a half, grouped by subset size.
    auto half_sums = [&](std::size_t off, std::size_t len, std::size_t maxc) {
        std::vector<std::unordered_set<std::uint32_t>> by_count(maxc + 1);
        std::function<void(std::size_t, std::size_t, std::uint32_t)> rec =
            [&](std::size_t i, std::size_t c, std::uint32_t s) {
                by_count[c].insert(s);
                if (i == len || c == maxc) return;
                for (std::size_t j = i; j < len; ++j) rec(j + 1, c + 1, f.addx(s, a[off + j]));
            };
        rec(0, 0, 0);
        return by_count;
    };
    auto left = half_sums(start, n1, std::min(count, n1));
    auto right = half_sums(start + n1, n2, std::min(count, n2));
    for (std::size_t c1 = 0; c1 <= std::min(count, n1); ++c1) {
        std::size_t c2 = count - c1;
        if (c2 > n2) continue;
        for (std::uint32_t s : left[c1])
            if (right[c2].count(f.subx(target, s))) return true;
    }
    return false;
}

inline bool subset_sum_feasible(const Field& f, const std::vector<std::uint32_t>& a,
                                std::size_t start, std::size_t count, std::uint32_t target) {
    if (binomial_capped(a.size() - start, count, 100000) <= 100000) {
        std::vector<std::size_t> scratch;
        return subset_sum_dfs(f, a, start, count, target, scratch);
    }
    return subset_sum_mitm(f, a, start, count, target);
}

} // namespace detail

/// Does some k-subset of S sum to target? Returns the lexicographically
/// first witness (by point index) when one exists. Small instances scan
/// subsets directly; larger ones run meet-in-the-middle and then rebuild the
/// lexicographic witness greedily from feasibility queries.
inline SubsetSumResult subset_sum_contains(const FVector& S, std::size_t k, FieldElement target,
                                           std::uint64_t cap = 10000000) {
    if (k == 0 || k > S.size()) throw InvalidSpec("subset size out of range");
    const auto& f = target.field();
    if (detail::binomial_capped(S.size(), k, cap) > cap)
        throw CombinatorialCapExceeded("C(n,k) exceeds the combinatorial cap " + std::to_string(cap));
    std::vector<std::uint32_t> a;
    a.reserve(S.size());
    for (auto& x : S) a.push_back(x.index());

    SubsetSumResult res;
    if (detail::binomial_capped(S.size(), k, 100000) <= 100000) {
        res.found = detail::subset_sum_dfs(f, a, 0, k, target.index(), res.witness);
        if (!res.found) res.witness.clear();
        return res;
    }

    if (!detail::subset_sum_mitm(f, a, 0, k, target.index())) return res;
    res.found = true;
    std::uint32_t t = target.index();
    std::size_t need = k, next = 0;
    while (need > 0) {
        for (std::size_t i = next; i + need <= a.size(); ++i) {
            if (detail::subset_sum_feasible(f, a, i + 1, need - 1, f.subx(t, a[i]))) {
                res.witness.push_back(i);
                t = f.subx(t, a[i]);
                next = i + 1;
                --need;
                break;
            }
        }
    }
    return res;
}

/// Singleton classification straight from the subset-sum criterion: the code
/// is MDS exactly when -eta^{-1} is not a k-subset sum of S, and NMDS
/// otherwise. Distances follow from the dichotomy without any enumeration.
inline SingletonClass classify_twisted(const TwistedSpec& spec, std::uint64_t cap = 10000000) {
    spec.validate();
    const auto& f = *spec.field;
    FieldElement target = {f.negx(f.invx(spec.eta.index())), &f};
    bool mds = !subset_sum_contains(spec.S, spec.k, target, cap).found;
    std::size_t len = spec.n() + (spec.extended ? 1 : 0);
    std::size_t d = mds ? len - spec.k + 1 : len - spec.k;
    std::size_t dual_d = mds ? spec.k + 1 : spec.k;
    return {mds ? SingletonTag::MDS : SingletonTag::NMDS, d, dual_d};
}

/// Which family the Euclidean dual of a non-extended twisted code lands in,
/// split by sum conditions on the points. The two TGRS rows carry the dual's
/// own parameters (points S, multipliers w/v, twist as below, dimension n-k);
/// the remaining row is the Han-Zhang case, which this library represents
/// only through the dual itself.
struct DualFamily {
    enum class Tag { HAN_ZHANG, TGRS_SHIFTED, TGRS_NEGATED };
    Tag tag;
    std::optional<TwistedSpec> dual_spec;
};

inline const char* dual_family_name(DualFamily::Tag t) {
    switch (t) {
        case DualFamily::Tag::HAN_ZHANG: return "HAN_ZHANG";
        case DualFamily::Tag::TGRS_SHIFTED: return "TGRS_SHIFTED";
        default: return "TGRS_NEGATED";
    }
}

inline DualFamily dual_family(const TwistedSpec& spec) {
    if (spec.extended) throw InvalidSpec("dual family classification applies to non-extended specs");
    const auto& f = *spec.field;
    auto w = w_vector(spec.S);
    FVector wv;
    wv.reserve(spec.n());
    for (std::size_t i = 0; i < spec.n(); ++i) {
        if (spec.v[i].is_zero()) throw InvalidSpec("zero column multiplier");
        wv.push_back(w[i] / spec.v[i]);
    }
    if (spec.eta.is_zero()) throw InvalidSpec("zero twist");
    FieldElement sa = sum_points(spec.S);
    FieldElement one_eta_sa = f.one() + spec.eta * sa;

    if (sa.is_zero()) {
        TwistedSpec d{spec.field, spec.S, std::move(wv), -spec.eta, spec.n() - spec.k, false};
        return {DualFamily::Tag::TGRS_NEGATED, std::move(d)};
    }
    if (one_eta_sa.is_zero()) return {DualFamily::Tag::HAN_ZHANG, std::nullopt};
    // The dual's twisted row satisfies (1 + eta*sum a) g_{n-k} = -eta g_{n-k-1},
    // hence the negative shifted twist.
    TwistedSpec d{spec.field, spec.S, std::move(wv), -(spec.eta / one_eta_sa), spec.n() - spec.k, false};
    return {DualFamily::Tag::TGRS_SHIFTED, std::move(d)};
}

} // namespace tgrs
