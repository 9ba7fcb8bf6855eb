#pragma once

#include <algorithm>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tgrs/twisted.hpp"

namespace tgrs::testing {

/// Comma-separated element strings in the field grammar.
inline FVector parse_vec(const FieldPtr& f, const std::string& csv) {
    FVector out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(f->parse(tok));
    return out;
}

inline FieldElement random_nonzero(const FieldPtr& f, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint64_t> dist(1, f->q() - 1);
    return f->element(dist(rng));
}

/// Random spec with distinct points, nonzero multipliers, nonzero twist.
inline TwistedSpec random_spec(const FieldPtr& f, std::size_t n, std::size_t k, bool extended,
                               std::mt19937_64& rng) {
    std::vector<std::uint64_t> idx(f->q());
    for (std::uint64_t i = 0; i < f->q(); ++i) idx[i] = i;
    std::shuffle(idx.begin(), idx.end(), rng);
    FVector S, v;
    for (std::size_t i = 0; i < n; ++i) {
        S.push_back(f->element(idx[i]));
        v.push_back(random_nonzero(f, rng));
    }
    return {f, std::move(S), std::move(v), random_nonzero(f, rng), k, extended};
}

} // namespace tgrs::testing
