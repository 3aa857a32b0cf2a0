#include "doctest.h"

#include <random>

#include "dzh/errors.hpp"
#include "dzh/groupmodel.hpp"

using namespace dzh;

namespace {

constexpr SubgroupVariant kBoth[] = {SubgroupVariant::Stabilizer, SubgroupVariant::Parahoric};

LaurentElem c2(const Tower& tw, ResidueElem c) { return tw.constant(FieldTag::E2, c); }

GroupElem mat(const Tower& tw, LaurentElem a, LaurentElem b, LaurentElem c, LaurentElem d)
{
    return GroupElem(Mat2{std::move(a), std::move(b), std::move(c), std::move(d)}, tw.one(FieldTag::E4));
}

}  // namespace

TEST_CASE("commutator of s~ and z~")
{
    for (std::uint32_t q : {5u, 13u}) {
        Tower tw(ResidueField::make(q));
        const ResidueField& f = tw.residue();
        GroupElem c = commutator(s_tilde(tw), z_tilde(tw).embed());
        TorusElem want = torus(c2(tw, f.zeta_pow(-1)), c2(tw, f.zeta()), tw.one(FieldTag::E4));
        CHECK(c.approx_equal(want.embed()));
        auto t = as_torus(c);
        REQUIRE(t);
        for (auto v : kBoth) {
            CHECK(in_KM0(*t, v));
            CHECK(rho_M0(*t, v) == UnitI::minus_one());
        }
    }
}

TEST_CASE("products of named elements")
{
    Tower tw(ResidueField::make(5));
    LaurentElem one = tw.one(FieldTag::E2), zero = tw.zero(FieldTag::E2), p = tw.uniformizer(FieldTag::E2);
    GroupElem s = s_tilde(tw);
    CHECK((s * s).approx_equal(mat(tw, -one, zero, zero, -one)));
    CHECK((s * s_prime_tilde(tw)).approx_equal(mat(tw, -p, zero, zero, -p.inverse())));
    CHECK((s * s.inverse()).approx_equal(identity(tw)));
    for (auto v : kBoth) {
        CHECK_FALSE(in_K0(s, v));
        CHECK(in_K0(s * s, v));
        CHECK_FALSE(in_K0(s_prime_tilde(tw), v));
        CHECK_FALSE(in_K0(z_tilde(tw).embed(), v));
    }
    CHECK(s.in_G0());
    CHECK(s_prime_tilde(tw).in_G0());
    CHECK(z_tilde(tw).embed().in_G0());
    CHECK(epsilon_tilde(tw).embed().in_G0());
}

TEST_CASE("K_M0 membership examples")
{
    Tower tw(ResidueField::make(13));
    const ResidueField& f = tw.residue();
    LaurentElem one2 = tw.one(FieldTag::E2), one4 = tw.one(FieldTag::E4);
    TorusElem eps = epsilon_tilde(tw);
    CHECK(in_KM0(eps, SubgroupVariant::Stabilizer));
    CHECK_FALSE(in_KM0(eps, SubgroupVariant::Parahoric));
    TorusElem mm = torus(-one2, -one2, one4);
    CHECK(in_KM0(mm, SubgroupVariant::Parahoric));
    CHECK(rho_M0(mm, SubgroupVariant::Parahoric) == UnitI::one());
    TorusElem zt = torus(c2(tw, f.zeta()), one2, one4);
    for (auto v : kBoth) {
        CHECK_FALSE(in_KM0(zt, v));
        CHECK_THROWS_AS(rho_M0(zt, v), DomainError);
    }
    CHECK_FALSE(in_KM0(z_tilde(tw), SubgroupVariant::Stabilizer));
}

TEST_CASE("rho0 is a character and extends rho_M0")
{
    for (std::uint32_t q : {5u, 13u}) {
        Tower tw(ResidueField::make(q));
        std::mt19937_64 rng(q);
        for (auto v : kBoth) {
            for (int i = 0; i < 200; ++i) {
                GroupElem a = random_K0(tw, v, rng), b = random_K0(tw, v, rng);
                CHECK(in_K0(a, v));
                CHECK(rho0(a * b, v) == rho0(a, v) * rho0(b, v));
            }
            for (int i = 0; i < 50; ++i) {
                TorusElem t = random_KM0(tw, v, rng);
                CHECK(rho0(t.embed(), v) == rho_M0(t, v));
            }
        }
        CHECK_THROWS_AS(rho0(z_tilde(tw).embed(), SubgroupVariant::Stabilizer), DomainError);
    }
}

TEST_CASE("rho0 is trivial on unipotents and on the pro-p radical")
{
    Tower tw(ResidueField::make(13));
    std::mt19937_64 rng(2);
    for (auto v : kBoth)
        for (int i = 0; i < 30; ++i) {
            LaurentElem x = random_integral(tw, FieldTag::E2, rng);
            CHECK(rho0(upper_unipotent(x), v) == UnitI::one());
            CHECK(rho0(lower_unipotent(x * tw.uniformizer(FieldTag::E2)), v) == UnitI::one());
        }
}

TEST_CASE("s~ and z~ normalize K_M0")
{
    Tower tw(ResidueField::make(13));
    std::mt19937_64 rng(8);
    GroupElem s = s_tilde(tw), z = z_tilde(tw).embed();
    for (auto v : kBoth)
        for (int i = 0; i < 40; ++i) {
            TorusElem t = random_KM0(tw, v, rng);
            auto ts = as_torus(s.inverse() * t.embed() * s);
            auto tz = as_torus(z.inverse() * t.embed() * z);
            REQUIRE(ts);
            REQUIRE(tz);
            CHECK(in_KM0(*ts, v));
            CHECK(in_KM0(*tz, v));
            CHECK(rho_M0(*tz, v) == rho_M0(t, v));
        }
}

TEST_CASE("commutator value does not depend on the lifts")
{
    Tower tw(ResidueField::make(13));
    std::mt19937_64 rng(4);
    for (auto v : kBoth)
        for (int i = 0; i < 20; ++i) {
            GroupElem s = s_tilde(tw) * random_KM0(tw, v, rng).embed();
            GroupElem z = z_tilde(tw).embed() * random_KM0(tw, v, rng).embed();
            auto t = as_torus(commutator(s, z));
            REQUIRE(t);
            CHECK(rho_M0(*t, v) == UnitI::minus_one());
        }
}

TEST_CASE("Iwahori factorization of a lower unipotent")
{
    Tower tw(ResidueField::make(5));
    LaurentElem one = tw.one(FieldTag::E2), zero = tw.zero(FieldTag::E2);
    LaurentElem x = one + tw.uniformizer(FieldTag::E2) + tw.integer(FieldTag::E2, 3) * tw.uniformizer(FieldTag::E2).pow(3);
    GroupElem g = mat(tw, one, zero, x, one);
    IwahoriFactorization f = iwahori_decompose(g);
    CHECK(f.k1.approx_equal(mat(tw, -x.inverse(), -one, zero, -x)));
    CHECK(f.m.matrix(tw).approx_equal(s_tilde(tw)));
    CHECK(f.k2.approx_equal(mat(tw, one, x.inverse(), zero, one)));
    CHECK((f.k1 * f.m.matrix(tw) * f.k2).approx_equal(g));
}

TEST_CASE("Iwahori factorization of trivial inputs")
{
    Tower tw(ResidueField::make(5));
    GroupElem u = upper_unipotent(tw.integer(FieldTag::E2, 3) + tw.uniformizer(FieldTag::E2));
    CHECK(iwahori_decompose(u).m.matrix(tw).approx_equal(identity(tw)));
    IwahoriFactorization f = iwahori_decompose(s_prime_tilde(tw));
    CHECK(f.m.matrix(tw).approx_equal(s_prime_tilde(tw)));
    CHECK(f.k1.approx_equal(identity(tw)));
    CHECK(f.k2.approx_equal(identity(tw)));
}

TEST_CASE("Iwahori factorization roundtrip")
{
    for (std::uint32_t q : {5u, 13u}) {
        Tower tw(ResidueField::make(q));
        std::mt19937_64 rng(17);
        GroupElem pieces[] = {s_tilde(tw), s_prime_tilde(tw), z_tilde(tw).embed(), epsilon_tilde(tw).embed()};
        for (int i = 0; i < 60; ++i) {
            GroupElem g = random_K0(tw, SubgroupVariant::Stabilizer, rng);
            for (int k = 0; k < 4; ++k) g = g * pieces[rng() % 4] * random_K0(tw, SubgroupVariant::Parahoric, rng);
            IwahoriFactorization f = iwahori_decompose(g);
            CHECK(in_iwahori(f.k1));
            CHECK(in_iwahori(f.k2));
            CHECK((f.k1 * f.m.matrix(tw) * f.k2).approx_equal(g));
            BruhatReduction r = bruhat_reduce(g);
            CHECK((r.left * r.monomial * r.right).approx_equal(g));
            CHECK(r.monomial.in_G0());
        }
    }
}

TEST_CASE("epsilon character")
{
    Tower tw(ResidueField::make(13));
    std::mt19937_64 rng(12);
    CHECK(epsilon_character(epsilon_tilde(tw).embed()) == UnitI::minus_one());
    CHECK(epsilon_character(s_tilde(tw)) == UnitI::one());
    CHECK(epsilon_character(s_prime_tilde(tw)) == UnitI::one());
    CHECK(epsilon_character(z_tilde(tw).embed()) == UnitI::one());
    for (int i = 0; i < 50; ++i) CHECK(epsilon_character(random_K0(tw, SubgroupVariant::Parahoric, rng)) == UnitI::one());
    GroupElem pieces[] = {s_tilde(tw), s_prime_tilde(tw), z_tilde(tw).embed(), epsilon_tilde(tw).embed()};
    for (int i = 0; i < 50; ++i) {
        GroupElem a = pieces[rng() % 4] * random_K0(tw, SubgroupVariant::Stabilizer, rng);
        GroupElem b = random_K0(tw, SubgroupVariant::Stabilizer, rng) * pieces[rng() % 4];
        CHECK(epsilon_character(a * b) == epsilon_character(a) * epsilon_character(b));
    }
}

namespace {

// Independent enumeration of the K_M0 residue constraints: for constants the
// norms are x^2 y^2 (E2) and z^4 (E4).
std::pair<std::uint64_t, bool> brute_sign_character(const ResidueField& f, SubgroupVariant v)
{
    std::uint64_t n = 0;
    bool ok = true;
    for (auto x : f.units())
        for (auto y : f.units())
            for (auto z : f.units()) {
                ResidueElem xy = f.mul(x, y);
                if (f.mul(f.pow(xy, 2), f.pow(z, 4)) != f.one()) continue;
                if (v == SubgroupVariant::Parahoric && f.mul(xy, f.pow(z, 2)) != f.one()) continue;
                ++n;
                ok = ok && f.is_square(xy);
            }
    return {n, ok};
}

}  // namespace

TEST_CASE("sign character sgn(xy) is trivial on K_M0")
{
    for (std::uint32_t q : {5u, 13u}) {
        Tower tw(ResidueField::make(q));
        for (auto v : kBoth) {
            EpsilonTrivialityResult r = epsilon_fks_trivial(tw, v);
            auto [n, ok] = brute_sign_character(tw.residue(), v);
            CHECK(r.trivial);
            CHECK(ok);
            CHECK(r.triples_checked == n);
        }
    }
}

TEST_CASE("group element validation")
{
    Tower tw(ResidueField::make(5));
    LaurentElem one = tw.one(FieldTag::E2);
    CHECK_THROWS_AS(GroupElem(Mat2{one, one, one, one}, tw.one(FieldTag::E2)), DomainError);
    GroupElem g(Mat2{one, tw.zero(FieldTag::E2), tw.zero(FieldTag::E2), tw.integer(FieldTag::E2, 2)},
                tw.one(FieldTag::E4));
    CHECK_FALSE(g.in_G0());
}
