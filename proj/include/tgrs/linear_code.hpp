#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "matrix.hpp"

namespace tgrs {

enum class SingletonTag { MDS, AMDS, NMDS, OTHER };

inline const char* singleton_tag_name(SingletonTag t) {
    switch (t) {
        case SingletonTag::MDS: return "MDS";
        case SingletonTag::AMDS: return "AMDS";
        case SingletonTag::NMDS: return "NMDS";
        default: return "OTHER";
    }
}

/// Where an [n,k,d] code sits relative to the Singleton bound, together with
/// the two distances that witness it.
struct SingletonClass {
    SingletonTag tag;
    std::size_t d;
    std::size_t dual_d;
};

/// An [n,k] linear code held by its canonical generator matrix (the RREF of
/// whatever matrix it was built from), so two codes are equal exactly when
/// they are the same subspace.
///
/// Distance work enumerates codewords over projective representatives (first
/// nonzero message digit fixed to 1), which cuts the q^k walk by a factor of
/// q-1 without losing exactness. Results are cached and shared across copies.
class LinearCode {
public:
    static LinearCode from_generator(const FMatrix& G) {
        if (G.is_zero()) throw ZeroMatrix("generator matrix is zero");
        auto rr = G.rref();
        FMatrix gen(G.field(), rr.rank, G.cols());
        for (std::size_t r = 0; r < rr.rank; ++r)
            for (std::size_t c = 0; c < G.cols(); ++c) gen.set_idx(r, c, rr.R.idx(r, c));
        return LinearCode(std::move(gen));
    }

    std::size_t length() const { return gen_.cols(); }
    std::size_t dimension() const { return gen_.rows(); }
    const FieldPtr& field() const { return gen_.field(); }

    /// Canonical (RREF) generator matrix, k rows of length n.
    const FMatrix& generator() const { return gen_; }

    /// A generator of the Euclidean dual, (n-k) rows of length n.
    FMatrix parity_check() const {
        auto basis = gen_.null_space();
        FMatrix H(gen_.field(), basis.size(), length());
        for (std::size_t r = 0; r < basis.size(); ++r)
            for (std::size_t c = 0; c < length(); ++c) H.set(r, c, basis[r][c]);
        return H;
    }

    bool operator==(const LinearCode& o) const { return gen_ == o.gen_; }
    bool operator!=(const LinearCode& o) const { return !(*this == o); }

    bool contains(const FVector& word) const {
        if (word.size() != length()) throw LengthMismatch("word length disagrees with code length");
        FMatrix stacked(gen_.field(), dimension() + 1, length());
        for (std::size_t r = 0; r < dimension(); ++r)
            for (std::size_t c = 0; c < length(); ++c) stacked.set_idx(r, c, gen_.idx(r, c));
        for (std::size_t c = 0; c < length(); ++c) stacked.set(dimension(), c, word[c]);
        return stacked.rank() == dimension();
    }

    /// The e-Galois dual {y : sum_i x_i y_i^(p^e) = 0 for all x in C}.
    ///
    /// Raising the defining equation to the power p^(m-e) turns it into a
    /// Euclidean condition against the entrywise (m-e)-fold Frobenius of the
    /// generator, so the dual is that matrix's kernel.
    LinearCode dual(std::uint32_t e) const {
        const auto& f = *gen_.field();
        if (e >= f.m()) throw EOutOfRange("Galois parameter " + std::to_string(e) + " not in [0," + std::to_string(f.m()) + ")");
        if (dimension() == length()) throw DimensionMismatch("dual of the full space is the zero code");
        std::uint32_t back = (f.m() - e) % f.m();
        FMatrix M(gen_.field(), dimension(), length());
        for (std::size_t r = 0; r < dimension(); ++r)
            for (std::size_t c = 0; c < length(); ++c) M.set_idx(r, c, f.frobx(gen_.idx(r, c), back));
        auto basis = M.null_space();
        FMatrix D(gen_.field(), basis.size(), length());
        for (std::size_t r = 0; r < basis.size(); ++r)
            for (std::size_t c = 0; c < length(); ++c) D.set(r, c, basis[r][c]);
        return from_generator(D);
    }

    bool is_self_dual(std::uint32_t e) const {
        if (2 * dimension() != length()) return false;
        return dual(e) == *this;
    }

    /// Full weight distribution A_0..A_n; enumeration guarded by cap >= q^k.
    std::vector<std::uint64_t> weight_distribution(std::uint64_t cap = 10000000) const {
        std::lock_guard<std::mutex> lock(cache_->mu);
        if (!cache_->weights) cache_->weights = enumerate_weights(cap);
        return *cache_->weights;
    }

    std::size_t min_distance(std::uint64_t cap = 10000000) const {
        auto w = weight_distribution(cap);
        for (std::size_t d = 1; d < w.size(); ++d)
            if (w[d]) return d;
        return 0;  // unreachable for k >= 1
    }

    /// Places the code against the Singleton bound by enumerating d and the
    /// Euclidean dual's d. MDS codes skip the dual enumeration since their
    /// duals are MDS again.
    SingletonClass classify_singleton(std::uint64_t cap = 10000000) const {
        std::size_t n = length(), k = dimension();
        std::size_t d = min_distance(cap);
        if (d == n - k + 1) return {SingletonTag::MDS, d, k + 1};
        std::size_t dual_d = dual(0).min_distance(cap);
        if (d == n - k) return {dual_d == k ? SingletonTag::NMDS : SingletonTag::AMDS, d, dual_d};
        return {SingletonTag::OTHER, d, dual_d};
    }

    /// Span of all elementwise products of rows of the two generators.
    LinearCode schur_product(const LinearCode& o) const {
        if (gen_.field().get() != o.gen_.field().get()) throw FieldMismatch("codes over different fields");
        if (length() != o.length()) throw LengthMismatch("codes of different lengths");
        const auto& f = *gen_.field();
        FMatrix prod(gen_.field(), dimension() * o.dimension(), length());
        for (std::size_t i = 0; i < dimension(); ++i)
            for (std::size_t j = 0; j < o.dimension(); ++j)
                for (std::size_t c = 0; c < length(); ++c)
                    prod.set_idx(i * o.dimension() + j, c, f.mulx(gen_.idx(i, c), o.gen_.idx(j, c)));
        return from_generator(prod);
    }

    LinearCode schur_square() const { return schur_product(*this); }

    /// Append one fixed column g (length k) to the generator.
    LinearCode first_extend(const FVector& g) const {
        if (g.size() != dimension()) throw DimensionMismatch("extension column length disagrees with dimension");
        FMatrix ext(gen_.field(), dimension(), length() + 1);
        for (std::size_t r = 0; r < dimension(); ++r) {
            for (std::size_t c = 0; c < length(); ++c) ext.set_idx(r, c, gen_.idx(r, c));
            ext.set(r, length(), g[r]);
        }
        return from_generator(ext);
    }

    /// Append the coordinate c_{n+1} = sum_i u_i c_i, i.e. the column G u^T.
    LinearCode second_extend(const FVector& u) const {
        if (u.size() != length()) throw DimensionMismatch("weight row length disagrees with code length");
        return first_extend(mat_vec(gen_, u));
    }

    /// Drop the last coordinate.
    LinearCode punctured_last() const {
        if (length() < 2) throw DimensionMismatch("cannot puncture below length 1");
        FMatrix cut(gen_.field(), dimension(), length() - 1);
        for (std::size_t r = 0; r < dimension(); ++r)
            for (std::size_t c = 0; c + 1 < length(); ++c) cut.set_idx(r, c, gen_.idx(r, c));
        return from_generator(cut);
    }

    /// All q^k codewords as rows of element indices, message order.
    std::vector<std::vector<std::uint32_t>> codewords(std::uint64_t cap = 10000000) const {
        check_cap(cap);
        const auto& f = *gen_.field();
        std::size_t n = length(), k = dimension();
        std::vector<std::vector<std::uint32_t>> out;
        out.reserve(static_cast<std::size_t>(pow_or_cap(f.q(), k, cap)));
        std::vector<std::uint32_t> msg(k, 0);
        std::vector<std::uint32_t> word(n, 0);
        out.push_back(word);
        // Odometer over messages with incremental row updates.
        std::vector<std::vector<std::uint32_t>> layers(k + 1, std::vector<std::uint32_t>(n, 0));
        while (true) {
            std::size_t pos = k;
            while (pos > 0 && msg[pos - 1] + 1 == f.q()) {
                msg[pos - 1] = 0;
                --pos;
            }
            if (pos == 0) break;
            msg[pos - 1] += 1;
            for (std::size_t j = pos - 1; j < k; ++j)
                for (std::size_t c = 0; c < n; ++c)
                    layers[j + 1][c] = f.addx(layers[j][c], f.mulx(msg[j], gen_.idx(j, c)));
            out.push_back(layers[k]);
        }
        return out;
    }

private:
    explicit LinearCode(FMatrix gen) : gen_(std::move(gen)), cache_(std::make_shared<Cache>()) {}

    struct Cache {
        std::mutex mu;
        std::optional<std::vector<std::uint64_t>> weights;
    };

    static std::uint64_t pow_or_cap(std::uint64_t q, std::size_t k, std::uint64_t cap) {
        std::uint64_t total = 1;
        for (std::size_t i = 0; i < k; ++i) {
            if (total > cap / q + 1) return cap + 1;
            total *= q;
        }
        return total;
    }

    void check_cap(std::uint64_t cap) const {
        if (pow_or_cap(gen_.field()->q(), dimension(), cap) > cap)
            throw EnumerationCapExceeded("q^k exceeds the enumeration cap " + std::to_string(cap));
    }

    std::vector<std::uint64_t> enumerate_weights(std::uint64_t cap) const {
        check_cap(cap);
        const auto& f = *gen_.field();
        const std::size_t n = length(), k = dimension();
        const std::uint32_t q = static_cast<std::uint32_t>(f.q());
        std::vector<std::uint64_t> hist(n + 1, 0);

        // Scaled generator rows, scaled[r][s] = s * row_r, indexed flat.
        std::vector<std::uint32_t> scaled(k * q * n);
        for (std::size_t r = 0; r < k; ++r)
            for (std::uint32_t s = 0; s < q; ++s)
                for (std::size_t c = 0; c < n; ++c)
                    scaled[(r * q + s) * n + c] = f.mulx(s, gen_.idx(r, c));

        std::vector<std::uint32_t> layers((k + 1) * n, 0);
        auto layer = [&](std::size_t j) { return layers.data() + j * n; };

        // Projective representatives: leading digit pinned to 1 at row t,
        // remaining digits sweep the whole field.
        for (std::size_t t = 0; t < k; ++t) {
            for (std::size_t c = 0; c < n; ++c) layer(t + 1)[c] = gen_.idx(t, c);
            std::vector<std::uint32_t> digit(k, 0);
            // Initialize suffix layers for all-zero digits.
            for (std::size_t j = t + 1; j < k; ++j)
                for (std::size_t c = 0; c < n; ++c) layer(j + 1)[c] = layer(j)[c];
            while (true) {
                std::size_t w = 0;
                const std::uint32_t* word = layer(k);
                for (std::size_t c = 0; c < n; ++c) w += word[c] != 0;
                hist[w] += 1;
                std::size_t pos = k;
                while (pos > t + 1 && digit[pos - 1] + 1 == q) {
                    digit[pos - 1] = 0;
                    --pos;
                }
                if (pos == t + 1) break;
                digit[pos - 1] += 1;
                for (std::size_t j = pos - 1; j < k; ++j) {
                    const std::uint32_t* src = layer(j);
                    const std::uint32_t* add = scaled.data() + (j * q + digit[j]) * n;
                    std::uint32_t* dst = layer(j + 1);
                    for (std::size_t c = 0; c < n; ++c) dst[c] = f.addx(src[c], add[c]);
                }
            }
        }

        // Projective counts scale by the q-1 nonzero leading values.
        for (std::size_t w = 1; w <= n; ++w) hist[w] *= q - 1;
        hist[0] = 1;
        return hist;
    }

    FMatrix gen_;
    std::shared_ptr<Cache> cache_;
};

} // namespace tgrs
