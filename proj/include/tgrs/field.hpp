#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "errors.hpp"

namespace tgrs {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// One element of a finite field, held as a canonical index into its owner.
///
/// The index encodes the polynomial-basis coefficients (c_0, ..., c_{m-1})
/// as the base-p integer sum c_i * p^i, so index 0 is the zero element and
/// index 1 is the multiplicative identity in every field. Elements are cheap
/// value types; the owning Field must outlive them (matrices and codes keep a
/// shared_ptr to the field for exactly this reason).
class FieldElement {
public:
    FieldElement() : idx_(0), field_(nullptr) {}
    FieldElement(std::uint32_t idx, const Field* field) : idx_(idx), field_(field) {}

    std::uint32_t index() const { return idx_; }
    const Field& field() const { return *field_; }
    const Field* field_ptr() const { return field_; }
    bool is_zero() const { return idx_ == 0; }

    /// Polynomial-basis coefficients, ascending degree, length m.
    std::vector<std::uint32_t> coeffs() const;

    FieldElement operator+(FieldElement o) const;
    FieldElement operator-(FieldElement o) const;
    FieldElement operator*(FieldElement o) const;
    FieldElement operator/(FieldElement o) const;
    FieldElement operator-() const;

    FieldElement inverse() const;
    FieldElement pow(std::int64_t e) const;
    /// x -> x^(p^e), the e-fold Frobenius. Requires 0 <= e < m.
    FieldElement frobenius(std::uint32_t e) const;

    std::string str() const;

    bool operator==(FieldElement o) const {
        check_same_field(o);
        return idx_ == o.idx_;
    }
    bool operator!=(FieldElement o) const { return !(*this == o); }

private:
    void check_same_field(FieldElement o) const {
        if (field_ != o.field_) throw FieldMismatch("elements belong to different fields");
    }

    std::uint32_t idx_;
    const Field* field_;
};

/// GF(p^m) with an explicit monic irreducible modulus, q = p^m <= 2^20.
///
/// All arithmetic is exact. Elements live in the polynomial basis; the field
/// additionally precomputes discrete exp/log tables over a designated
/// primitive element to make multiplication a table lookup. Construction
/// validates everything up front: primality of p, irreducibility of the
/// modulus (trial division by every monic polynomial of degree <= m/2), and
/// the multiplicative order of the generator.
///
/// Immutable after construction and safe to share across threads.
class Field : public std::enable_shared_from_this<Field> {
public:
    /// Build GF(p^m) with the built-in modulus for this size.
    ///
    /// The table pins GF(16) to x^4 + x + 1; every other extension gets the
    /// lexicographically first monic primitive polynomial (coefficients
    /// compared as ascending-degree base-p integers), which reproduces the
    /// usual textbook choices, e.g. x^3 + x + 1 for GF(8) and
    /// x^8 + x^4 + x^3 + x^2 + 1 for GF(256). Prime fields use the
    /// convention modulus x.
    static FieldPtr create(std::uint64_t p, std::uint32_t m) {
        return create_impl(p, m, {}, false);
    }

    /// Build GF(p^m) with a caller-chosen monic irreducible modulus,
    /// coefficients ascending, length m+1.
    static FieldPtr create(std::uint64_t p, std::uint32_t m, const std::vector<std::uint32_t>& modulus) {
        return create_impl(p, m, modulus, true);
    }

    std::uint64_t p() const { return p_; }
    std::uint32_t m() const { return m_; }
    std::uint64_t q() const { return q_; }
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    FieldElement zero() const { return {0, this}; }
    FieldElement one() const { return {1, this}; }
    FieldElement primitive() const { return {gen_, this}; }

    FieldElement element(std::uint64_t idx) const {
        if (idx >= q_) throw ValueOutOfField("element index " + std::to_string(idx) + " outside field of size " + std::to_string(q_));
        return {static_cast<std::uint32_t>(idx), this};
    }

    FieldElement from_coeffs(const std::vector<std::uint32_t>& c) const {
        if (c.size() != m_) throw ValueOutOfField("expected " + std::to_string(m_) + " coefficients");
        std::uint32_t idx = 0;
        for (std::size_t i = c.size(); i-- > 0;) {
            if (c[i] >= p_) throw ValueOutOfField("coefficient " + std::to_string(c[i]) + " not in [0," + std::to_string(p_) + ")");
            idx = static_cast<std::uint32_t>(idx * p_ + c[i]);
        }
        return {idx, this};
    }

    /// All q elements: zero first, then primitive^0, primitive^1, ...
    std::vector<FieldElement> enumerate() const {
        std::vector<FieldElement> out;
        out.reserve(q_);
        out.push_back(zero());
        for (std::uint32_t i = 0; i + 1 < q_; ++i) out.push_back(FieldElement(exp_[i], this));
        return out;
    }

    /// Accepted forms: "[c0,c1,...]" in any field; decimal residues in prime
    /// fields; "0", "1", "w", "w^k" in extension fields.
    FieldElement parse(std::string_view s) const;

    /// Canonical text: decimal residue when m = 1, otherwise "0", "1", "w",
    /// or "w^k" with the least exponent k in [0, q-2].
    std::string format(FieldElement a) const;

    // Raw index arithmetic. The FieldElement operators funnel through these;
    // enumeration-heavy code uses them directly on index arrays.
    std::uint32_t addx(std::uint32_t a, std::uint32_t b) const {
        if (p_ == 2) return a ^ b;
        if (!add_table_.empty()) return add_table_[a * q_ + b];
        return add_digits(a, b);
    }
    std::uint32_t negx(std::uint32_t a) const { return neg_[a]; }
    std::uint32_t subx(std::uint32_t a, std::uint32_t b) const { return addx(a, neg_[b]); }
    std::uint32_t mulx(std::uint32_t a, std::uint32_t b) const {
        if (a == 0 || b == 0) return 0;
        std::uint32_t s = log_[a] + log_[b];
        if (s >= q_ - 1) s -= static_cast<std::uint32_t>(q_ - 1);
        return exp_[s];
    }
    std::uint32_t invx(std::uint32_t a) const {
        if (a == 0) throw DivisionByZero("inverse of zero");
        std::uint32_t l = log_[a];
        return exp_[l == 0 ? 0 : q_ - 1 - l];
    }
    std::uint32_t divx(std::uint32_t a, std::uint32_t b) const { return mulx(a, invx(b)); }

    /// pow with the empty-product convention pow(0, 0) = 1.
    std::uint32_t powx(std::uint32_t a, std::int64_t e) const {
        if (a == 0) {
            if (e > 0) return 0;
            if (e == 0) return 1;
            throw DivisionByZero("negative power of zero");
        }
        const std::int64_t ord = static_cast<std::int64_t>(q_) - 1;
        std::int64_t r = e % ord;
        if (r < 0) r += ord;
        std::uint64_t le = (static_cast<std::uint64_t>(log_[a]) * static_cast<std::uint64_t>(r)) % static_cast<std::uint64_t>(ord);
        return exp_[le];
    }

    std::uint32_t frobx(std::uint32_t a, std::uint32_t e) const {
        if (e >= m_) throw EOutOfRange("frobenius exponent " + std::to_string(e) + " not in [0," + std::to_string(m_) + ")");
        if (a == 0) return 0;
        std::uint64_t pe = 1;
        for (std::uint32_t i = 0; i < e; ++i) pe *= p_;
        return powx(a, static_cast<std::int64_t>(pe));
    }

    /// Discrete log to base primitive(); element must be nonzero.
    std::uint32_t logx(std::uint32_t a) const {
        if (a == 0) throw DivisionByZero("log of zero");
        return log_[a];
    }
    std::uint32_t expx(std::uint64_t k) const { return exp_[k % (q_ - 1)]; }

private:
    Field() = default;

    static FieldPtr create_impl(std::uint64_t p, std::uint32_t m,
                                std::vector<std::uint32_t> modulus, bool explicit_modulus);

    std::uint32_t add_digits(std::uint32_t a, std::uint32_t b) const {
        std::uint32_t out = 0, mult = 1;
        for (std::uint32_t i = 0; i < m_; ++i) {
            std::uint32_t da = a % p_, db = b % p_;
            a /= static_cast<std::uint32_t>(p_);
            b /= static_cast<std::uint32_t>(p_);
            std::uint32_t s = da + db;
            if (s >= p_) s -= static_cast<std::uint32_t>(p_);
            out += s * mult;
            mult *= static_cast<std::uint32_t>(p_);
        }
        return out;
    }

    // Schoolbook product with modulus reduction; used only while building tables.
    std::uint32_t mul_poly(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t pow_poly(std::uint32_t a, std::uint64_t e) const;
    bool has_order_q_minus_1(std::uint32_t g, const std::vector<std::uint64_t>& prime_factors) const;
    bool modulus_irreducible() const;

    std::uint64_t p_ = 0, q_ = 0;
    std::uint32_t m_ = 0, gen_ = 0;
    std::vector<std::uint32_t> modulus_;
    std::vector<std::uint32_t> exp_;        // size q-1
    std::vector<std::uint32_t> log_;        // size q, log_[0] unused
    std::vector<std::uint32_t> neg_;        // size q
    std::vector<std::uint32_t> add_table_;  // q*q, only for small odd-characteristic fields
};

namespace detail {

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

} // namespace detail

inline std::uint32_t Field::mul_poly(std::uint32_t a, std::uint32_t b) const {
    // Decompose to digits, multiply, reduce by the monic modulus.
    std::vector<std::uint32_t> da(m_), db(m_), prod(2 * m_, 0);
    for (std::uint32_t i = 0; i < m_; ++i) { da[i] = a % p_; a /= static_cast<std::uint32_t>(p_); }
    for (std::uint32_t i = 0; i < m_; ++i) { db[i] = b % p_; b /= static_cast<std::uint32_t>(p_); }
    for (std::uint32_t i = 0; i < m_; ++i) {
        if (!da[i]) continue;
        for (std::uint32_t j = 0; j < m_; ++j)
            prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(da[i]) * db[j]) % p_);
    }
    for (std::uint32_t d = 2 * m_ - 1; d >= m_; --d) {
        std::uint32_t c = prod[d];
        if (!c) continue;
        prod[d] = 0;
        for (std::uint32_t i = 0; i <= m_; ++i) {
            if (!modulus_[i]) continue;
            std::uint64_t sub = static_cast<std::uint64_t>(c) * modulus_[i] % p_;
            prod[d - m_ + i] = static_cast<std::uint32_t>((prod[d - m_ + i] + p_ - sub) % p_);
        }
    }
    std::uint32_t out = 0;
    for (std::uint32_t i = m_; i-- > 0;) out = static_cast<std::uint32_t>(out * p_ + prod[i]);
    return out;
}

inline std::uint32_t Field::pow_poly(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t acc = 1;
    while (e) {
        if (e & 1) acc = mul_poly(acc, a);
        a = mul_poly(a, a);
        e >>= 1;
    }
    return acc;
}

inline bool Field::has_order_q_minus_1(std::uint32_t g, const std::vector<std::uint64_t>& prime_factors) const {
    if (g == 0) return false;
    for (std::uint64_t r : prime_factors)
        if (pow_poly(g, (q_ - 1) / r) == 1) return false;
    return true;
}

inline bool Field::modulus_irreducible() const {
    // Trial division by every monic polynomial of degree 1..m/2. A divisor
    // candidate is encoded by its non-leading coefficients as a base-p value.
    for (std::uint32_t d = 1; 2 * d <= m_; ++d) {
        std::uint64_t count = 1;
        for (std::uint32_t i = 0; i < d; ++i) count *= p_;
        for (std::uint64_t lo = 0; lo < count; ++lo) {
            std::vector<std::uint32_t> div(d + 1);
            std::uint64_t t = lo;
            for (std::uint32_t i = 0; i < d; ++i) { div[i] = static_cast<std::uint32_t>(t % p_); t /= p_; }
            div[d] = 1;
            std::vector<std::uint32_t> rem(modulus_);
            for (std::uint32_t deg = m_; deg >= d; --deg) {
                std::uint32_t c = rem[deg];
                if (c) {
                    rem[deg] = 0;
                    for (std::uint32_t i = 0; i < d; ++i) {
                        std::uint64_t sub = static_cast<std::uint64_t>(c) * div[i] % p_;
                        rem[deg - d + i] = static_cast<std::uint32_t>((rem[deg - d + i] + p_ - sub) % p_);
                    }
                }
                if (deg == d) break;
            }
            bool zero = true;
            for (std::uint32_t i = 0; i < d; ++i)
                if (rem[i]) { zero = false; break; }
            if (zero) return false;
        }
    }
    return true;
}

inline FieldPtr Field::create_impl(std::uint64_t p, std::uint32_t m,
                                   std::vector<std::uint32_t> modulus, bool explicit_modulus) {
    if (!detail::is_prime_u64(p)) throw NotPrime("p = " + std::to_string(p) + " is not prime");
    if (m < 1) throw DegreeMismatch("extension degree must be >= 1");

    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
        q *= p;
        if (q > (1u << 20)) throw NoTableEntry("p^m exceeds 2^20");
    }

    // Instances are cached by (p, m, modulus) so repeated construction is
    // cheap and elements from independently parsed inputs interoperate.
    static std::mutex cache_mutex;
    static std::map<std::tuple<std::uint64_t, std::uint32_t, std::vector<std::uint32_t>>,
                    std::weak_ptr<const Field>>
        cache;
    std::lock_guard<std::mutex> lock(cache_mutex);

    auto f = std::shared_ptr<Field>(new Field());
    f->p_ = p;
    f->m_ = m;
    f->q_ = q;

    if (explicit_modulus) {
        if (modulus.size() != static_cast<std::size_t>(m) + 1 || modulus[m] != 1)
            throw DegreeMismatch("modulus must be monic of degree m, coefficients ascending");
        for (std::uint32_t c : modulus)
            if (c >= p) throw ValueOutOfField("modulus coefficient not in [0,p)");
        f->modulus_ = std::move(modulus);
        if (m > 1 && !f->modulus_irreducible())
            throw ReduciblePolynomial("modulus is reducible");
    } else if (m == 1) {
        f->modulus_ = {0, 1};
    } else if (p == 2 && m == 4) {
        f->modulus_ = {1, 1, 0, 0, 1};  // x^4 + x + 1, pinned
    } else {
        // Lexicographically first monic primitive polynomial: walk candidates
        // by ascending base-p value of the non-leading coefficients, keep the
        // first irreducible one with x a generator. Existence is classical,
        // so the loop terminates for every q here.
        const auto factors = detail::prime_factors(q - 1);
        std::uint64_t count = 1;
        for (std::uint32_t i = 0; i < m; ++i) count *= p;
        bool found = false;
        for (std::uint64_t lo = 1; lo < count && !found; ++lo) {
            if (lo % p == 0) continue;  // zero constant term, x divides
            std::vector<std::uint32_t> cand(m + 1);
            std::uint64_t t = lo;
            for (std::uint32_t i = 0; i < m; ++i) { cand[i] = static_cast<std::uint32_t>(t % p); t /= p; }
            cand[m] = 1;
            f->modulus_ = cand;
            if (f->modulus_irreducible() && f->has_order_q_minus_1(static_cast<std::uint32_t>(p), factors))
                found = true;
        }
        if (!found) throw NoTableEntry("no primitive modulus found");  // unreachable
    }

    auto key = std::make_tuple(p, m, f->modulus_);
    if (auto it = cache.find(key); it != cache.end())
        if (auto hit = it->second.lock()) return hit;

    // Negation table.
    f->neg_.resize(q);
    if (p == 2) {
        for (std::uint64_t i = 0; i < q; ++i) f->neg_[i] = static_cast<std::uint32_t>(i);
    } else {
        for (std::uint64_t i = 0; i < q; ++i) {
            std::uint64_t a = i, out = 0, mult = 1;
            for (std::uint32_t d = 0; d < m; ++d) {
                std::uint64_t da = a % p;
                a /= p;
                out += ((p - da) % p) * mult;
                mult *= p;
            }
            f->neg_[i] = static_cast<std::uint32_t>(out);
        }
    }

    // Generator: x (index p) whenever it generates, otherwise the first
    // element in index order with full multiplicative order. Prime fields
    // start the scan at 2 so the generator is the least primitive residue.
    const auto factors = detail::prime_factors(q - 1);
    std::uint32_t gen = 0;
    if (q == 2) {
        gen = 1;
    } else if (m > 1 && f->has_order_q_minus_1(static_cast<std::uint32_t>(p), factors)) {
        gen = static_cast<std::uint32_t>(p);
    } else {
        for (std::uint32_t c = 2; c < q; ++c)
            if (f->has_order_q_minus_1(c, factors)) { gen = c; break; }
    }
    f->gen_ = gen;

    f->exp_.resize(q - 1);
    f->log_.assign(q, 0);
    std::uint32_t x = 1;
    for (std::uint64_t i = 0; i + 1 < q; ++i) {
        f->exp_[i] = x;
        f->log_[x] = static_cast<std::uint32_t>(i);
        x = f->mul_poly(x, gen);
    }

    if (p > 2 && q <= 1024) {
        f->add_table_.resize(q * q);
        for (std::uint64_t a = 0; a < q; ++a)
            for (std::uint64_t b = 0; b < q; ++b)
                f->add_table_[a * q + b] = f->add_digits(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b));
    }

    cache[key] = f;
    return f;
}

inline FieldElement Field::parse(std::string_view s) const {
    auto strip = [](std::string_view v) {
        while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
        while (!v.empty() && (v.back() == ' ' || v.back() == '\t')) v.remove_suffix(1);
        return v;
    };
    s = strip(s);
    if (s.empty()) throw SyntaxError("empty element");

    auto parse_uint = [](std::string_view v, std::uint64_t& out) {
        if (v.empty() || v.size() > 18) return false;
        out = 0;
        for (char c : v) {
            if (c < '0' || c > '9') return false;
            out = out * 10 + static_cast<std::uint64_t>(c - '0');
        }
        return true;
    };

    if (s.front() == '[') {
        if (s.back() != ']') throw SyntaxError("unterminated coefficient list");
        std::string_view body = s.substr(1, s.size() - 2);
        std::vector<std::uint32_t> coeffs;
        std::size_t pos = 0;
        while (pos <= body.size()) {
            std::size_t comma = body.find(',', pos);
            std::string_view tok = strip(comma == std::string_view::npos ? body.substr(pos) : body.substr(pos, comma - pos));
            std::uint64_t val;
            if (!parse_uint(tok, val)) throw SyntaxError("bad coefficient '" + std::string(tok) + "'");
            if (val >= p_) throw ValueOutOfField("coefficient " + std::to_string(val) + " not in [0," + std::to_string(p_) + ")");
            coeffs.push_back(static_cast<std::uint32_t>(val));
            if (comma == std::string_view::npos) break;
            pos = comma + 1;
        }
        if (coeffs.size() != m_) throw ValueOutOfField("expected " + std::to_string(m_) + " coefficients, got " + std::to_string(coeffs.size()));
        return from_coeffs(coeffs);
    }

    if (m_ == 1) {
        std::uint64_t val;
        if (!parse_uint(s, val)) throw SyntaxError("bad residue '" + std::string(s) + "'");
        if (val >= p_) throw ValueOutOfField("residue " + std::to_string(val) + " not in [0," + std::to_string(p_) + ")");
        return {static_cast<std::uint32_t>(val), this};
    }

    if (s == "0") return zero();
    if (s == "1") return one();
    if (s == "w") return primitive();
    if (s.size() > 2 && s[0] == 'w' && s[1] == '^') {
        std::uint64_t k;
        if (!parse_uint(s.substr(2), k)) throw SyntaxError("bad exponent in '" + std::string(s) + "'");
        return {expx(k), this};
    }
    throw SyntaxError("unrecognized element '" + std::string(s) + "'");
}

inline std::string Field::format(FieldElement a) const {
    if (a.field_ptr() != this) throw FieldMismatch("formatting an element of another field");
    if (m_ == 1) return std::to_string(a.index());
    if (a.index() == 0) return "0";
    std::uint32_t k = log_[a.index()];
    if (k == 0) return "1";
    if (k == 1) return "w";
    return "w^" + std::to_string(k);
}

inline std::vector<std::uint32_t> FieldElement::coeffs() const {
    std::vector<std::uint32_t> out(field_->m());
    std::uint64_t v = idx_;
    for (auto& c : out) {
        c = static_cast<std::uint32_t>(v % field_->p());
        v /= field_->p();
    }
    return out;
}

inline FieldElement FieldElement::operator+(FieldElement o) const {
    check_same_field(o);
    return {field_->addx(idx_, o.idx_), field_};
}
inline FieldElement FieldElement::operator-(FieldElement o) const {
    check_same_field(o);
    return {field_->subx(idx_, o.idx_), field_};
}
inline FieldElement FieldElement::operator*(FieldElement o) const {
    check_same_field(o);
    return {field_->mulx(idx_, o.idx_), field_};
}
inline FieldElement FieldElement::operator/(FieldElement o) const {
    check_same_field(o);
    return {field_->divx(idx_, o.idx_), field_};
}
inline FieldElement FieldElement::operator-() const { return {field_->negx(idx_), field_}; }
inline FieldElement FieldElement::inverse() const { return {field_->invx(idx_), field_}; }
inline FieldElement FieldElement::pow(std::int64_t e) const { return {field_->powx(idx_, e), field_}; }
inline FieldElement FieldElement::frobenius(std::uint32_t e) const { return {field_->frobx(idx_, e), field_}; }
inline std::string FieldElement::str() const { return field_->format(*this); }

} // namespace tgrs
