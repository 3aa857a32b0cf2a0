#include "doctest.h"

#include <random>

#include "dzh/errors.hpp"
#include "dzh/groupmodel.hpp"
#include "dzh/tower.hpp"

using namespace dzh;

namespace {

// Random polynomial in pi with `len` digits.
LaurentElem random_poly(const Tower& tw, FieldTag tag, std::mt19937_64& rng, int len, int lead = 0)
{
    std::vector<ResidueElem> d;
    for (int i = 0; i < len; ++i) d.emplace_back(static_cast<std::uint32_t>(rng() % tw.residue().q()));
    d[0] = ResidueElem(1 + static_cast<std::uint32_t>(rng() % (tw.residue().q() - 1)));
    return tw.from_digits(tag, lead, d);
}

}  // namespace

TEST_CASE("multiplication matches schoolbook convolution")
{
    Tower tw(ResidueField::make(13), 24);
    std::mt19937_64 rng(5);
    for (int it = 0; it < 50; ++it) {
        LaurentElem a = random_poly(tw, FieldTag::F, rng, 24), b = random_poly(tw, FieldTag::F, rng, 24);
        LaurentElem c = a * b;
        for (int k = 0; k < 24; ++k) {
            long long s = 0;
            for (int i = 0; i <= k; ++i) s += static_cast<long long>(a.digit(i).index()) * b.digit(k - i).index();
            CHECK(c.digit(k).index() == s % 13);
        }
    }
}

TEST_CASE("inverse and division")
{
    Tower tw(ResidueField::make(5), 40);
    std::mt19937_64 rng(9);
    for (FieldTag tag : {FieldTag::F, FieldTag::E2, FieldTag::E4}) {
        for (int it = 0; it < 20; ++it) {
            LaurentElem a = random_poly(tw, tag, rng, 10, static_cast<int>(rng() % 7) - 3);
            CHECK((a * a.inverse()).approx_equal(tw.one(tag)));
            CHECK(a.inverse().ord_norm() == -a.ord_norm());
        }
    }
    CHECK_THROWS_AS(tw.zero(FieldTag::F).inverse(), DomainError);
    CHECK_THROWS_AS(tw.one(FieldTag::F) * tw.one(FieldTag::E2), DomainError);
}

TEST_CASE("precision exhaustion is never silently zero")
{
    Tower tw(ResidueField::make(5), 16);
    LaurentElem x = tw.one(FieldTag::F) + tw.uniformizer(FieldTag::F);
    LaurentElem d = x - x;
    CHECK(d.is_exhausted());
    CHECK_FALSE(d.is_exact_zero());
    CHECK_THROWS_AS((void)d.ord_norm(), PrecisionError);
    CHECK_THROWS_AS((void)d.inverse(), PrecisionError);
    CHECK((tw.zero(FieldTag::F) - tw.zero(FieldTag::F)).is_exact_zero());
}

TEST_CASE("uniformizer relations")
{
    for (std::uint32_t q : {5u, 13u, 25u}) {
        Tower tw(ResidueField::make(q));
        LaurentElem p2 = tw.uniformizer(FieldTag::E2), p4 = tw.uniformizer(FieldTag::E4);
        CHECK((p2 * p2).approx_equal(-tw.t_in(FieldTag::E2)));
        LaurentElem zt = tw.constant(FieldTag::E4, tw.residue().zeta()) * tw.t_in(FieldTag::E4);
        CHECK(p4.pow(4).approx_equal(-zt));
        CHECK(p4.pow(-2).ord_norm() == -2);
        CHECK(p4.pow(-2).ord() == Valuation(-1, 2));
    }
}

TEST_CASE("galois action")
{
    Tower tw(ResidueField::make(13));
    LaurentElem p2 = tw.uniformizer(FieldTag::E2), p4 = tw.uniformizer(FieldTag::E4);
    CHECK(tw.galois(1, p2).approx_equal(-p2));
    CHECK(tw.galois(1, p4).approx_equal(tw.constant(FieldTag::E4, tw.i4()) * p4));
    std::mt19937_64 rng(3);
    for (auto [tag, e] : {std::pair{FieldTag::E2, 2}, std::pair{FieldTag::E4, 4}}) {
        for (int it = 0; it < 20; ++it) {
            LaurentElem x = random_poly(tw, tag, rng, 12, -2), y = random_poly(tw, tag, rng, 12, 1);
            for (int k = 0; k < e; ++k)
                CHECK(tw.galois(k, x * y).approx_equal(tw.galois(k, x) * tw.galois(k, y)));
            CHECK(tw.galois(e, x).approx_equal(x));
            CHECK(tw.galois(0, x).approx_equal(x));
        }
    }
    // i4 is a primitive fourth root of unity
    const ResidueField& f = tw.residue();
    CHECK(f.pow(tw.i4(), 2) == f.neg(f.one()));
}

TEST_CASE("norm of a + b pi2 is a^2 + t b^2")
{
    Tower tw(ResidueField::make(13));
    std::mt19937_64 rng(11);
    LaurentElem t = tw.uniformizer(FieldTag::F);
    for (int it = 0; it < 30; ++it) {
        LaurentElem a = random_poly(tw, FieldTag::F, rng, 15), b = random_poly(tw, FieldTag::F, rng, 15);
        LaurentElem x = tw.embed(a, FieldTag::E2) + tw.embed(b, FieldTag::E2) * tw.uniformizer(FieldTag::E2);
        CHECK(tw.norm_to_F(x).approx_equal(a * a + t * b * b));
    }
}

TEST_CASE("norms and traces of uniformizers")
{
    for (std::uint32_t q : {5u, 13u}) {
        Tower tw(ResidueField::make(q));
        LaurentElem t = tw.uniformizer(FieldTag::F);
        CHECK(tw.norm_to_F(tw.uniformizer(FieldTag::E2)).approx_equal(t));
        CHECK(tw.norm_to_F(tw.uniformizer(FieldTag::E4)).approx_equal(tw.constant(FieldTag::F, tw.residue().zeta()) * t));
        CHECK(tw.trace_to_F(tw.one(FieldTag::E4)).approx_equal(tw.integer(FieldTag::F, 4)));
        CHECK(tw.trace_to_F(tw.one(FieldTag::E2)).approx_equal(tw.integer(FieldTag::F, 2)));
        CHECK(tw.trace_to_F(tw.uniformizer(FieldTag::E4)).approx_equal(tw.zero(FieldTag::F)));
    }
}

TEST_CASE("norm is multiplicative and descends")
{
    Tower tw(ResidueField::make(5));
    std::mt19937_64 rng(21);
    for (FieldTag tag : {FieldTag::E2, FieldTag::E4}) {
        for (int it = 0; it < 15; ++it) {
            LaurentElem x = random_poly(tw, tag, rng, 9, -1), y = random_poly(tw, tag, rng, 9, 2);
            CHECK(tw.norm_to_F(x * y).approx_equal(tw.norm_to_F(x) * tw.norm_to_F(y)));
            CHECK(tw.norm_to_F(x).ord() == Valuation(x.ord_norm(), 1));
        }
    }
    CHECK_THROWS_AS(tw.descend(tw.uniformizer(FieldTag::E2)), DomainError);
}

TEST_CASE("eta on F")
{
    Tower tw(ResidueField::make(13));
    const ResidueField& f = tw.residue();
    CHECK(tw.eta_F(tw.uniformizer(FieldTag::F)) == UnitI::one());
    CHECK(tw.eta_F(tw.constant(FieldTag::F, f.zeta())) == UnitI::i());
    CHECK(tw.eta_F(tw.constant(FieldTag::F, f.zeta_pow(2))) == UnitI::minus_one());
    CHECK(tw.eta_F(tw.one(FieldTag::F) + tw.uniformizer(FieldTag::F)) == UnitI::one());
    // eta(t^k zeta^m u) = i^m
    LaurentElem u = tw.one(FieldTag::F) + tw.integer(FieldTag::F, 3) * tw.uniformizer(FieldTag::F).pow(2);
    for (int k = -2; k <= 2; ++k)
        for (int m = 0; m < 12; ++m) {
            LaurentElem x = tw.uniformizer(FieldTag::F).pow(k) * tw.constant(FieldTag::F, f.zeta_pow(m)) * u;
            CHECK(tw.eta_F(x) == UnitI(m));
        }
}

TEST_CASE("norm images of units")
{
    for (std::uint32_t q : {5u, 13u, 25u}) {
        Tower tw(ResidueField::make(q));
        const ResidueField& f = tw.residue();
        LaurentElem z2 = tw.constant(FieldTag::E2, f.zeta()), z4 = tw.constant(FieldTag::E4, f.zeta());
        CHECK(tw.eta_F(tw.norm_to_F(z2)).pow(2) == UnitI::one());
        CHECK(tw.eta_F(tw.norm_to_F(z4)) == UnitI::one());
        LaurentElem x = tw.one(FieldTag::E2) + tw.uniformizer(FieldTag::E2);
        CHECK(tw.eta_F(tw.norm_to_F(x)) == UnitI::one());
        CHECK(tw.norm_unit_image_check(FieldTag::E2, 7));
        CHECK(tw.norm_unit_image_check(FieldTag::E4, 7));
    }
}

TEST_CASE("eta o N_{E2/F} is not trivial on units")
{
    // control for the previous case: only the square kills the norm image
    Tower tw(ResidueField::make(5));
    LaurentElem z2 = tw.constant(FieldTag::E2, tw.residue().zeta());
    CHECK(tw.eta_F(tw.norm_to_F(z2)) == UnitI::minus_one());
}
