#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "tgrs/twisted.hpp"

namespace tgrs {

/// A monomial map between codes of the same length: position j of the image
/// is position perm[j] of the source scaled by diag[j], so codeword x maps to
/// y with y[j] = diag[j] * x[perm[j]].
struct MonomialWitness {
    std::vector<std::size_t> perm;
    FVector diag;
};

/// Outcome of a non-GRS certificate or an equivalence search. Exactly one
/// kind of evidence is populated: Schur-square statistics for certificates,
/// witness data for searches. INCONCLUSIVE still carries the statistics that
/// failed to certify.
struct GrsVerdict {
    enum class Tag { CERTIFIED_NON_GRS, EQUIVALENT_TO_GRS, INCONCLUSIVE };
    enum class Route { NONE, SQUARE_DIMENSION, DUAL_SQUARE_DISTANCE, EXHAUSTION };

    Tag tag = Tag::INCONCLUSIVE;
    Route route = Route::NONE;

    // Schur-square evidence.
    std::size_t square_dim = 0;
    std::size_t expected_square_dim = 0;
    bool dual_square_zero_column = false;
    bool dual_square_weight_one = false;

    // Equivalence evidence: the first witness in lexicographic candidate
    // order, the evaluation set it certifies, and every equivalent set seen.
    std::optional<MonomialWitness> witness;
    FVector witness_set;
    std::vector<FVector> witness_sets;
    std::uint64_t candidates_tested = 0;
};

inline const char* grs_verdict_name(GrsVerdict::Tag t) {
    switch (t) {
        case GrsVerdict::Tag::CERTIFIED_NON_GRS: return "CERTIFIED_NON_GRS";
        case GrsVerdict::Tag::EQUIVALENT_TO_GRS: return "EQUIVALENT_TO_GRS";
        default: return "INCONCLUSIVE";
    }
}

/// Route selection for schur_certificate: AUTO tries whichever statistics
/// the dimensions admit, the other two force one statistic and reject
/// dimensions outside its range.
enum class SchurRoute { AUTO, DIMENSION, DISTANCE };

/// Schur-square test against the two statistics every GRS code satisfies:
/// for 3 <= k < (n+1)/2 the square has dimension exactly 2k-1, and for
/// n/2 <= k <= n-3 the square of the dual has distance at least 2 and no
/// identically zero coordinate. A violation certifies the code is not GRS;
/// agreement proves nothing. Requires 3 <= k <= n-3.
inline GrsVerdict schur_certificate(const LinearCode& C, SchurRoute route = SchurRoute::AUTO) {
    std::size_t n = C.length(), k = C.dimension();
    if (k < 3 || k + 3 > n)
        throw DimensionOutOfRange("certificate requires 3 <= k <= n-3, got [" + std::to_string(n) +
                                  "," + std::to_string(k) + "]");
    if (route == SchurRoute::DIMENSION && 2 * k >= n + 1)
        throw DimensionOutOfRange("dimension statistic requires k < (n+1)/2");
    if (route == SchurRoute::DISTANCE && 2 * k < n)
        throw DimensionOutOfRange("dual-distance statistic requires k >= n/2");

    GrsVerdict v;
    if (route != SchurRoute::DISTANCE && 2 * k < n + 1) {
        auto sq = C.schur_square();
        v.route = GrsVerdict::Route::SQUARE_DIMENSION;
        v.square_dim = sq.dimension();
        v.expected_square_dim = 2 * k - 1;
        if (v.square_dim != v.expected_square_dim) {
            v.tag = GrsVerdict::Tag::CERTIFIED_NON_GRS;
            return v;
        }
    }
    if (route != SchurRoute::DIMENSION && 2 * k >= n) {
        auto dsq = C.dual(0).schur_square();
        const auto& g = dsq.generator();
        for (std::size_t j = 0; j < n; ++j) {
            bool zero_col = true;
            for (std::size_t r = 0; r < g.rows() && zero_col; ++r) zero_col = g.idx(r, j) == 0;
            if (zero_col) v.dual_square_zero_column = true;
            FVector ej(n, C.field()->zero());
            ej[j] = C.field()->one();
            if (dsq.contains(ej)) v.dual_square_weight_one = true;
        }
        if (v.dual_square_zero_column || v.dual_square_weight_one) {
            v.tag = GrsVerdict::Tag::CERTIFIED_NON_GRS;
            v.route = GrsVerdict::Route::DUAL_SQUARE_DISTANCE;
            return v;
        }
        if (v.route == GrsVerdict::Route::NONE) v.route = GrsVerdict::Route::DUAL_SQUARE_DISTANCE;
    }
    return v;
}

namespace detail {

/// Per-column fingerprint that is invariant under column permutation and
/// scaling: how often the column is zero across minimum-weight codewords,
/// plus the sorted multiset of nonzero value counts.
struct ColumnProfile {
    std::size_t zeros = 0;
    std::vector<std::size_t> value_counts;

    bool operator==(const ColumnProfile&) const = default;
};

inline std::vector<ColumnProfile> column_profiles(const std::vector<std::vector<std::uint32_t>>& min_words,
                                                  std::size_t n) {
    std::vector<ColumnProfile> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::map<std::uint32_t, std::size_t> hist;
        for (const auto& w : min_words) {
            if (w[j] == 0)
                ++out[j].zeros;
            else
                ++hist[w[j]];
        }
        for (auto& [val, count] : hist) out[j].value_counts.push_back(count);
        std::sort(out[j].value_counts.begin(), out[j].value_counts.end());
    }
    return out;
}

/// Solve for the diagonal once the permutation is fixed: every source
/// generator row, permuted, scaled and fed to the target parity check, must
/// vanish. That is linear in the diagonal entries; any kernel vector with
/// all entries nonzero is a valid diagonal.
inline std::optional<FVector> diagonal_for(const FMatrix& src_gen, const FMatrix& dst_check,
                                           const std::vector<std::size_t>& perm) {
    auto f = src_gen.field();
    const auto& F = *f;
    std::size_t n = src_gen.cols();
    FMatrix M(f, src_gen.rows() * dst_check.rows(), n);
    std::size_t r = 0;
    for (std::size_t i = 0; i < src_gen.rows(); ++i)
        for (std::size_t h = 0; h < dst_check.rows(); ++h, ++r)
            for (std::size_t j = 0; j < n; ++j)
                M.set_idx(r, j, F.mulx(dst_check.idx(h, j), src_gen.idx(i, perm[j])));

    auto kernel = M.null_space();
    if (kernel.empty()) return std::nullopt;

    // Scan kernel combinations projectively (leading coefficient 1, earlier
    // ones zero) for a vector avoiding zero in every coordinate.
    std::size_t nu = kernel.size();
    FVector cand(n, f->zero());
    for (std::size_t lead = 0; lead < nu; ++lead) {
        std::vector<std::uint32_t> coef(nu, 0);
        coef[lead] = 1;
        while (true) {
            bool ok = true;
            for (std::size_t j = 0; j < n; ++j) {
                std::uint32_t acc = 0;
                for (std::size_t t = lead; t < nu; ++t)
                    if (coef[t] != 0) acc = F.addx(acc, F.mulx(coef[t], kernel[t][j].index()));
                cand[j] = f->element(acc);
                ok = ok && acc != 0;
            }
            if (ok) return cand;

            std::size_t pos = lead + 1;
            while (pos < nu && coef[pos] + 1 == F.q()) coef[pos++] = 0;
            if (pos == nu) break;
            ++coef[pos];
        }
    }
    return std::nullopt;
}

} // namespace detail

/// Search for a monomial map carrying C onto D. Returns the witness or
/// nullopt. Backtracks over column assignments, pruning with minimum-weight
/// column fingerprints and partial-rank consistency; a complete permutation
/// is accepted once a compatible diagonal exists. Enumerates all q^k
/// codewords of each code, so requires q^k within the cap.
inline std::optional<MonomialWitness> monomial_equivalent(const LinearCode& C, const LinearCode& D,
                                                          std::uint64_t cap = 1000000) {
    if (C.field() != D.field()) throw FieldMismatch("codes live in different fields");
    if (C.length() != D.length() || C.dimension() != D.dimension()) return std::nullopt;
    if (C.weight_distribution(cap) != D.weight_distribution(cap)) return std::nullopt;

    std::size_t n = C.length();
    auto min_weight_words = [&](const LinearCode& X) {
        auto words = X.codewords(cap);
        std::size_t best = n + 1;
        for (const auto& w : words) {
            std::size_t wt = 0;
            for (auto e : w) wt += e != 0;
            if (wt > 0 && wt < best) best = wt;
        }
        std::vector<std::vector<std::uint32_t>> out;
        for (const auto& w : words) {
            std::size_t wt = 0;
            for (auto e : w) wt += e != 0;
            if (wt == best) out.push_back(w);
        }
        return out;
    };
    auto prof_c = detail::column_profiles(min_weight_words(C), n);
    auto prof_d = detail::column_profiles(min_weight_words(D), n);

    const auto& gc = C.generator();
    std::vector<std::size_t> perm(n, 0);
    std::vector<bool> used(n, false);
    FMatrix partial(C.field(), C.dimension(), n);
    auto dst_check = D.parity_check();
    const auto& gd = D.generator();

    // Depth-first over target positions; perm[j] is the source column that
    // lands at position j.
    std::optional<MonomialWitness> found;
    auto rank_consistent = [&](std::size_t depth) {
        std::vector<std::size_t> src(perm.begin(), perm.begin() + depth + 1);
        std::vector<std::size_t> dst(depth + 1);
        for (std::size_t j = 0; j <= depth; ++j) dst[j] = j;
        return gc.select_columns(src).rank() == gd.select_columns(dst).rank();
    };
    std::function<bool(std::size_t)> descend = [&](std::size_t depth) -> bool {
        if (depth == n) {
            auto diag = detail::diagonal_for(gc, dst_check, perm);
            if (!diag) return false;
            found = MonomialWitness{perm, *diag};
            return true;
        }
        for (std::size_t s = 0; s < n; ++s) {
            if (used[s] || !(prof_c[s] == prof_d[depth])) continue;
            perm[depth] = s;
            used[s] = true;
            if (rank_consistent(depth) && descend(depth + 1)) return true;
            used[s] = false;
        }
        return false;
    };
    descend(0);
    return found;
}

/// Apply a monomial witness to a vector.
inline FVector apply_witness(const MonomialWitness& w, const FVector& x) {
    if (w.perm.size() != x.size()) throw LengthMismatch("witness length disagrees with vector");
    FVector y;
    y.reserve(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) y.push_back(w.diag[j] * x[w.perm[j]]);
    return y;
}

/// Compare C against the GRS code of every size-n evaluation subset of the
/// field, unit multipliers, in lexicographic subset order (multipliers are
/// absorbed by the diagonal part of the monomial map). Collects every
/// equivalent evaluation set; the stored witness is the first one found.
/// The subset count must stay within the budget.
inline GrsVerdict exhaustive_grs_search(const LinearCode& C, std::uint64_t budget = 100000,
                                        std::uint64_t word_cap = 1000000) {
    auto f = C.field();
    std::size_t n = C.length(), k = C.dimension();
    std::uint64_t q = f->q();
    if (n > q) {
        GrsVerdict v;
        v.tag = GrsVerdict::Tag::CERTIFIED_NON_GRS;
        v.route = GrsVerdict::Route::EXHAUSTION;
        return v;
    }
    if (detail::binomial_capped(q, n, budget) > budget)
        throw BudgetExceeded("C(q,n) exceeds the search budget " + std::to_string(budget));

    GrsVerdict v;
    v.route = GrsVerdict::Route::EXHAUSTION;
    std::vector<std::uint32_t> pick(n);
    for (std::size_t i = 0; i < n; ++i) pick[i] = static_cast<std::uint32_t>(i);
    while (true) {
        FVector S;
        S.reserve(n);
        for (auto idx : pick) S.push_back(f->element(idx));
        ++v.candidates_tested;
        auto w = monomial_equivalent(grs(S, FVector(n, f->one()), k), C, word_cap);
        if (w) {
            if (!v.witness) {
                v.witness = *w;
                v.witness_set = S;
            }
            v.witness_sets.push_back(S);
        }

        // Next subset in lexicographic order.
        std::size_t pos = n;
        while (pos > 0) {
            --pos;
            if (pick[pos] + (n - pos) < q) break;
            if (pos == 0) { pos = n; break; }
        }
        if (pos == n) break;
        ++pick[pos];
        for (std::size_t t = pos + 1; t < n; ++t) pick[t] = pick[t - 1] + 1;
    }
    v.tag = v.witness ? GrsVerdict::Tag::EQUIVALENT_TO_GRS : GrsVerdict::Tag::CERTIFIED_NON_GRS;
    return v;
}

} // namespace tgrs
