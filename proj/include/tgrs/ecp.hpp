#pragma once

#include <cstdint>
#include <vector>

#include "twisted.hpp"

namespace tgrs {

/// A t-error-correcting pair (A, B) for an extended twisted code, carrying
/// both the canonical codes and the raw construction matrices. The raw forms
/// matter: the decoder's intermediate values (kernel vectors, zero sets) are
/// only reproducible against these exact matrices, not against their RREFs.
struct EcpPair {
    LinearCode A;
    LinearCode B;
    FMatrix GA;
    FMatrix GB;
    std::size_t t;
    bool odd_gap;  // parity of n-k picks the construction
};

/// Build the (A, B) pair for an extended spec.
///
/// Odd n-k: t = (n-k-1)/2, A is the (n-k+1)/2-dimensional evaluation code
/// with a zero extension column, B the extended evaluation code of dimension
/// t with multipliers w/v. Even n-k: t = (n-k)/2, A gains one dimension and
/// a (0,...,0,1) column, and B's extension entry is scaled by -eta.
inline EcpPair build_ecp(const TwistedSpec& spec) {
    if (!spec.extended) throw InvalidSpec("error-correcting pairs are built for extended specs");
    spec.validate();
    std::size_t n = spec.n(), k = spec.k;
    const auto& f = *spec.field;
    auto w = w_vector(spec.S);
    FVector wv;
    wv.reserve(n);
    for (std::size_t i = 0; i < n; ++i) wv.push_back(w[i] / spec.v[i]);
    FVector one_v(n, spec.field->one());

    std::size_t gap = n - k;
    bool odd = (gap % 2) == 1;
    std::size_t t = odd ? (gap - 1) / 2 : gap / 2;

    FMatrix GA = [&] {
        if (odd) {
            // (G | 0): a second extension by the zero vector.
            auto G = grs_generator(spec.S, one_v, (gap + 1) / 2);
            FMatrix ext(spec.field, G.rows(), n + 1);
            for (std::size_t r = 0; r < G.rows(); ++r)
                for (std::size_t c = 0; c < n; ++c) ext.set_idx(r, c, G.idx(r, c));
            return ext;
        }
        return egrs_generator(spec.S, one_v, (gap + 2) / 2);
    }();

    FMatrix GB = [&] {
        auto G = egrs_generator(spec.S, wv, odd ? (gap - 1) / 2 : gap / 2);
        if (!odd) G.set(G.rows() - 1, n, -spec.eta);
        return G;
    }();

    return {LinearCode::from_generator(GA), LinearCode::from_generator(GB), std::move(GA), std::move(GB), t, odd};
}

/// Per-condition report for the four defining properties of a t-ECP.
struct EcpReport {
    bool product_in_dual;   // A * B subset of C-dual
    bool dual_b_distance;   // d(B-dual) > t
    bool a_dimension;       // dim(A) > t
    bool distance_sum;      // d(A) + d(C) > length
    bool all() const { return product_in_dual && dual_b_distance && a_dimension && distance_sum; }
};

/// Check the Def-style ECP conditions directly.
///
/// Condition 2 uses the classical equivalence d(B-dual) > t iff every t
/// columns of B's generator are linearly independent, which stays feasible
/// where enumerating B-dual (dimension n-dim(B)) would not.
inline EcpReport verify_ecp(const LinearCode& A, const LinearCode& B, const LinearCode& C,
                            std::size_t t, std::uint64_t cap = 10000000) {
    if (A.length() != B.length() || A.length() != C.length()) throw LengthMismatch("codes of different lengths");
    EcpReport rep{};

    auto prod = A.schur_product(B);
    auto dual_c = C.dual(0);
    auto stacked = dual_c.generator().vstack(prod.generator());
    rep.product_in_dual = stacked.rank() == dual_c.dimension();

    if (t > B.dimension()) {
        rep.dual_b_distance = false;  // any t columns are forced dependent
    } else if (t == 0) {
        rep.dual_b_distance = true;
    } else {
        if (detail::binomial_capped(B.length(), t, cap) > cap)
            throw EnumerationCapExceeded("too many column subsets for the dual-distance check");
        rep.dual_b_distance = true;
        std::vector<std::size_t> pick(t);
        for (std::size_t i = 0; i < t; ++i) pick[i] = i;
        while (true) {
            if (B.generator().select_columns(pick).rank() < t) {
                rep.dual_b_distance = false;
                break;
            }
            // Next combination in lexicographic order.
            std::size_t i = t;
            while (i > 0 && pick[i - 1] == B.length() - t + (i - 1)) --i;
            if (i == 0) break;
            ++pick[i - 1];
            for (std::size_t j = i; j < t; ++j) pick[j] = pick[j - 1] + 1;
        }
    }

    rep.a_dimension = A.dimension() > t;
    rep.distance_sum = A.min_distance(cap) + C.min_distance(cap) > C.length();
    return rep;
}

/// Result of one decoding attempt, with the intermediate trace preserved so
/// runs can be compared step by step.
struct DecodeOutcome {
    enum class Tag { ALREADY_CODEWORD, CODEWORD, TOO_MANY_ERRORS };
    Tag tag;
    FVector c;                      // decoded codeword (CODEWORD, ALREADY_CODEWORD)
    FVector e;                      // error vector, wt <= t (CODEWORD; zero when ALREADY_CODEWORD)
    std::size_t t = 0;
    FVector syndrome;               // H y^T
    std::vector<FVector> kernel;    // null-space basis of G_B diag(y) G_A^T
    FVector u_prime;                // chosen kernel vector (first basis vector)
    FVector locator;                // u' G_A, whose zeros locate candidate errors
    std::vector<std::size_t> zeros; // 1-indexed zero positions of the locator
};

/// Error-locating decoder for extended twisted codes.
///
/// Follows the ECP recipe: a nonzero kernel vector of G_B diag(y) G_A^T
/// yields a locator u' G_A whose zero set Z must cover the error support;
/// the error values come from solving the parity system restricted to Z.
/// Failures at any stage (trivial kernel, no or ambiguous restricted
/// solution, weight above t) report TOO_MANY_ERRORS rather than guessing.
inline DecodeOutcome decode(const TwistedSpec& spec, const FVector& y) {
    if (!spec.extended) throw InvalidSpec("decoding targets extended specs");
    spec.validate();
    if (y.size() != spec.n() + 1) throw LengthMismatch("received word length disagrees with code length");
    for (auto& yi : y)
        if (yi.field_ptr() != spec.field.get()) throw FieldMismatch("received word from another field");

    DecodeOutcome out{};
    auto H = etgrs_parity_check(spec);
    out.syndrome = mat_vec(H, y);
    bool clean = true;
    for (auto& s : out.syndrome)
        if (!s.is_zero()) { clean = false; break; }
    if (clean) {
        out.tag = DecodeOutcome::Tag::ALREADY_CODEWORD;
        out.c = y;
        out.e = FVector(y.size(), spec.field->zero());
        return out;
    }

    auto pair = build_ecp(spec);
    out.t = pair.t;
    auto M = pair.GB * FMatrix::diag(y) * pair.GA.transpose();
    out.kernel = M.null_space();
    if (out.kernel.empty()) {
        out.tag = DecodeOutcome::Tag::TOO_MANY_ERRORS;
        return out;
    }

    out.u_prime = out.kernel.front();
    out.locator = vec_mat(out.u_prime, pair.GA);
    for (std::size_t i = 0; i < out.locator.size(); ++i)
        if (out.locator[i].is_zero()) out.zeros.push_back(i + 1);
    if (out.zeros.empty()) {
        out.tag = DecodeOutcome::Tag::TOO_MANY_ERRORS;
        return out;
    }

    std::vector<std::size_t> cols;
    for (auto z : out.zeros) cols.push_back(z - 1);
    auto sol = H.select_columns(cols).solve_right(out.syndrome);
    if (sol.kind != FMatrix::SolveKind::Unique) {
        out.tag = DecodeOutcome::Tag::TOO_MANY_ERRORS;
        return out;
    }

    FVector x(y.size(), spec.field->zero());
    std::size_t weight = 0;
    for (std::size_t j = 0; j < cols.size(); ++j) {
        x[cols[j]] = sol.x0[j];
        weight += !sol.x0[j].is_zero();
    }
    if (weight > pair.t) {
        out.tag = DecodeOutcome::Tag::TOO_MANY_ERRORS;
        return out;
    }

    out.tag = DecodeOutcome::Tag::CODEWORD;
    out.e = std::move(x);
    out.c.reserve(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) out.c.push_back(y[i] - out.e[i]);
    return out;
}

} // namespace tgrs
