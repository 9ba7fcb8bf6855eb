#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "helpers.hpp"
#include "tgrs/equivalence.hpp"

using namespace tgrs;
using tgrs::testing::parse_vec;
using tgrs::testing::random_spec;

namespace {

TwistedSpec spec_gf11_6_3() {
    auto f = Field::create(11, 1);
    return {f, parse_vec(f, "0,3,4,5,9,10"), FVector(6, f->one()), f->one(), 3, false};
}

TwistedSpec spec_gf13_half() {
    auto f = Field::create(13, 1);
    return {f, parse_vec(f, "2,5,7,9,10,12"), FVector(6, f->one()), f->one(), 3, false};
}

bool witness_maps(const MonomialWitness& w, const LinearCode& src, const LinearCode& dst) {
    for (std::size_t r = 0; r < src.dimension(); ++r) {
        FVector row;
        for (std::size_t j = 0; j < src.length(); ++j) row.push_back(src.generator().at(r, j));
        if (!dst.contains(apply_witness(w, row))) return false;
    }
    return true;
}

} // namespace

TEST_CASE("square dimension certifies the half-rate code", "[equivalence]") {
    auto C = twisted_code(spec_gf13_half());
    auto v = schur_certificate(C);
    REQUIRE(v.tag == GrsVerdict::Tag::CERTIFIED_NON_GRS);
    REQUIRE(v.route == GrsVerdict::Route::SQUARE_DIMENSION);
    REQUIRE(v.square_dim == 6);
    REQUIRE(v.expected_square_dim == 5);
}

TEST_CASE("genuine codes stay inconclusive", "[equivalence]") {
    auto f = Field::create(11, 1);
    auto S8 = parse_vec(f, "0,1,2,3,4,5,6,7");
    auto C = grs(S8, FVector(8, f->one()), 3);
    auto v = schur_certificate(C);
    REQUIRE(v.tag == GrsVerdict::Tag::INCONCLUSIVE);
    REQUIRE(v.square_dim == 5);
    REQUIRE(v.expected_square_dim == 5);

    // Both certificate ranges, randomized multipliers, plain and extended.
    std::mt19937_64 rng(4242);
    for (auto field : {Field::create(11, 1), Field::create(2, 4)}) {
        FVector pts = field->enumerate();
        for (int trial = 0; trial < 8; ++trial) {
            std::shuffle(pts.begin(), pts.end(), rng);
            std::size_t n = 7 + static_cast<std::size_t>(rng() % 2);
            std::size_t k = 3 + static_cast<std::size_t>(rng() % (n - 5));
            FVector S(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(n));
            FVector mult;
            for (std::size_t i = 0; i < n; ++i) mult.push_back(tgrs::testing::random_nonzero(field, rng));
            REQUIRE(schur_certificate(grs(S, mult, k)).tag == GrsVerdict::Tag::INCONCLUSIVE);
            if (k + 4 <= n + 1)
                REQUIRE(schur_certificate(egrs(S, mult, k)).tag == GrsVerdict::Tag::INCONCLUSIVE);
        }
    }
}

TEST_CASE("dual square distance certifies high-rate extended codes", "[equivalence]") {
    // k = 5 over 7 points puts the code outside the dimension route but the
    // square of the dual picks up a weight-one word at the extension spot.
    std::mt19937_64 rng(99);
    auto f = Field::create(11, 1);
    auto spec = random_spec(f, 7, 5, true, rng);
    auto v = schur_certificate(etgrs(spec));
    REQUIRE(v.tag == GrsVerdict::Tag::CERTIFIED_NON_GRS);
    REQUIRE(v.route == GrsVerdict::Route::DUAL_SQUARE_DISTANCE);
    REQUIRE(v.dual_square_weight_one);
    REQUIRE_FALSE(v.dual_square_zero_column);
}

TEST_CASE("certificate range is enforced", "[equivalence]") {
    auto f = Field::create(11, 1);
    auto S = parse_vec(f, "0,1,2,3,4,5");
    REQUIRE_THROWS_AS(schur_certificate(grs(S, FVector(6, f->one()), 2)), DimensionOutOfRange);
    REQUIRE_THROWS_AS(schur_certificate(grs(S, FVector(6, f->one()), 4)), DimensionOutOfRange);
}

TEST_CASE("a code is monomially equivalent to itself", "[equivalence]") {
    auto C = twisted_code(spec_gf11_6_3());
    auto w = monomial_equivalent(C, C);
    REQUIRE(w.has_value());
    for (std::size_t j = 0; j < 6; ++j) REQUIRE(w->perm[j] == j);
    REQUIRE(witness_maps(*w, C, C));
}

TEST_CASE("the known equivalent pair has a witness", "[equivalence]") {
    auto f = Field::create(11, 1);
    auto C = twisted_code(spec_gf11_6_3());
    auto D = grs(parse_vec(f, "1,2,5,6,9,10"), FVector(6, f->one()), 3);
    auto w = monomial_equivalent(C, D);
    REQUIRE(w.has_value());
    REQUIRE(witness_maps(*w, C, D));
    REQUIRE(C.weight_distribution() == D.weight_distribution());
}

TEST_CASE("the known inequivalent pair has none", "[equivalence]") {
    auto f = Field::create(13, 1);
    auto C = twisted_code(spec_gf13_half());
    auto D = grs(parse_vec(f, "1,2,3,4,5,6"), FVector(6, f->one()), 3);
    REQUIRE_FALSE(monomial_equivalent(C, D).has_value());
}

TEST_CASE("equivalence testing is symmetric", "[equivalence]") {
    std::mt19937_64 rng(515151);
    auto f = Field::create(11, 1);
    FVector pts = f->enumerate();
    int found = 0;
    for (int trial = 0; trial < 20; ++trial) {
        std::shuffle(pts.begin(), pts.end(), rng);
        FVector S(pts.begin(), pts.begin() + 6);
        FVector v1, v2;
        for (int i = 0; i < 6; ++i) {
            v1.push_back(tgrs::testing::random_nonzero(f, rng));
            v2.push_back(tgrs::testing::random_nonzero(f, rng));
        }
        // Mix equivalent pairs (same points, scaled) with twisted-vs-plain
        // pairs that are usually inequivalent.
        LinearCode C = grs(S, v1, 3), D = grs(S, v2, 3);
        if (trial % 2 == 1) {
            auto spec = random_spec(f, 6, 3, false, rng);
            C = twisted_code(spec);
        }
        auto fwd = monomial_equivalent(C, D), bwd = monomial_equivalent(D, C);
        REQUIRE(fwd.has_value() == bwd.has_value());
        if (fwd) {
            ++found;
            REQUIRE(witness_maps(*fwd, C, D));
            REQUIRE(witness_maps(*bwd, D, C));
            REQUIRE(C.weight_distribution() == D.weight_distribution());
        }
    }
    REQUIRE(found >= 10);  // the same-points pairs are always equivalent
}

TEST_CASE("shape and cap guards", "[equivalence]") {
    auto f = Field::create(11, 1);
    auto C = twisted_code(spec_gf11_6_3());
    auto S5 = parse_vec(f, "0,1,2,3,4");
    REQUIRE_FALSE(monomial_equivalent(C, grs(S5, FVector(5, f->one()), 3)).has_value());
    REQUIRE_FALSE(monomial_equivalent(C, grs(parse_vec(f, "0,1,2,3,4,5"), FVector(6, f->one()), 2)).has_value());
    REQUIRE_THROWS_AS(monomial_equivalent(C, C, 100), EnumerationCapExceeded);
    REQUIRE_THROWS_AS(monomial_equivalent(C, twisted_code(spec_gf13_half())), FieldMismatch);
}

TEST_CASE("exhaustive search finds every equivalent evaluation set", "[equivalence]") {
    auto f = Field::create(11, 1);
    auto C = twisted_code(spec_gf11_6_3());
    auto v = exhaustive_grs_search(C);
    REQUIRE(v.tag == GrsVerdict::Tag::EQUIVALENT_TO_GRS);
    REQUIRE(v.candidates_tested == 462);
    REQUIRE(v.witness_sets.size() == 165);
    REQUIRE(v.witness.has_value());

    // The first witness really maps its GRS code onto C.
    auto D = grs(v.witness_set, FVector(6, f->one()), 3);
    REQUIRE(witness_maps(*v.witness, D, C));

    for (const char* sets : {"1,2,5,6,9,10", "2,3,4,7,8,9", "1,3,5,6,8,10", "3,4,5,6,7,8", "1,2,4,7,9,10"}) {
        auto want = parse_vec(f, sets);
        bool present = false;
        for (const auto& got : v.witness_sets) present = present || got == want;
        REQUIRE(present);
    }
}

TEST_CASE("exhaustive search certifies by exhaustion", "[equivalence]") {
    auto C = twisted_code(spec_gf13_half());
    auto v = exhaustive_grs_search(C);
    REQUIRE(v.tag == GrsVerdict::Tag::CERTIFIED_NON_GRS);
    REQUIRE(v.route == GrsVerdict::Route::EXHAUSTION);
    REQUIRE(v.candidates_tested == 1716);
    REQUIRE(v.witness_sets.empty());

    REQUIRE_THROWS_AS(exhaustive_grs_search(C, 10), BudgetExceeded);
}

TEST_CASE("extended example is not equivalent to any plain code", "[equivalence]") {
    auto f = Field::create(11, 1);
    TwistedSpec spec{f, parse_vec(f, "1,5,6,9,10"), FVector(5, f->one()), f->element(3), 3, true};
    auto v = exhaustive_grs_search(etgrs(spec));
    REQUIRE(v.tag == GrsVerdict::Tag::CERTIFIED_NON_GRS);
    REQUIRE(v.candidates_tested == 462);
}
