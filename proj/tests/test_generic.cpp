#include <algorithm>
#include "doctest.h"

#include <set>

#include "dzh/generic.hpp"

using namespace dzh;

namespace {

using B = EigenCoordinate::Block;

LaurentElem pi_inv(const Tower& tw, FieldTag tag) { return tw.uniformizer(tag).inverse(); }

}  // namespace

TEST_CASE("root pair counts")
{
    CHECK(all_eigencoordinates().size() == 8);
    auto l1 = root_pairs(GenericLevel::G1minusG0);
    auto l2 = root_pairs(GenericLevel::G2minusG1);
    CHECK(l1.size() == 12);
    CHECK(l2.size() == 40);
    // G1 minus G0: ordered pairs inside the E4 block, 4*3
    for (const auto& r : l1) {
        CHECK(r.i.block == B::E4);
        CHECK(r.j.block == B::E4);
        CHECK_FALSE(r.i == r.j);
    }
    // every ordered pair of distinct coordinates appears once across levels,
    // apart from the 2+2 pairs inside one E2 slot (roots of G0)
    std::set<std::string> seen;
    for (const auto* v : {&l1, &l2})
        for (const auto& r : *v) CHECK(seen.insert(r.i.str() + "/" + r.j.str()).second);
    CHECK(seen.size() == 52);
    CHECK(8 * 7 - seen.size() == 4);
}

TEST_CASE("weights of the functionals")
{
    Tower tw(ResidueField::make(5));
    CHECK(weight(tw, {B::E2Slot1, 1}, Functional::X1star).approx_equal(-pi_inv(tw, FieldTag::E2)));
    CHECK(weight(tw, {B::E2Slot2, 0}, Functional::X1star).approx_equal(pi_inv(tw, FieldTag::E2)));
    CHECK(weight(tw, {B::E2Slot1, 0}, Functional::X0star).is_exact_zero());
    CHECK(weight(tw, {B::E4, 2}, Functional::X1star).is_exact_zero());
}

TEST_CASE("pairing values")
{
    for (std::uint32_t q : {5u, 13u}) {
        Tower tw(ResidueField::make(q));
        RootPair r1{{B::E4, 0}, {B::E4, 1}, GenericLevel::G1minusG0};
        LaurentElem want = (tw.one(FieldTag::E4) - tw.constant(FieldTag::E4, tw.residue().inv(tw.i4()))) *
                           pi_inv(tw, FieldTag::E4);
        // sigma4(pi4^-1) = i4^-1 pi4^-1
        CHECK(pairing_on_coroot(tw, r1).approx_equal(want));
        CHECK(pairing_on_coroot(tw, r1).ord() == Valuation(-1, 4));

        RootPair r2{{B::E2Slot1, 0}, {B::E2Slot2, 1}, GenericLevel::G2minusG1};
        CHECK(pairing_on_coroot(tw, r2).approx_equal(tw.integer(FieldTag::E2, 2) * pi_inv(tw, FieldTag::E2)));
        RootPair r3{{B::E2Slot1, 0}, {B::E4, 0}, GenericLevel::G2minusG1};
        CHECK(pairing_on_coroot(tw, r3).approx_equal(pi_inv(tw, FieldTag::E2)));
    }
}

TEST_CASE("pairing is antisymmetric")
{
    Tower tw(ResidueField::make(13));
    for (auto level : {GenericLevel::G1minusG0, GenericLevel::G2minusG1})
        for (const auto& r : root_pairs(level)) {
            RootPair rev{r.j, r.i, r.level};
            LaurentElem a = pairing_on_coroot(tw, r), b = pairing_on_coroot(tw, rev);
            LaurentElem sum = a + b;
            // all known digits cancel
            CHECK_FALSE(sum.is_normal());
            CHECK(sum.abs_precision() >= std::min(a.abs_precision(), b.abs_precision()));
        }
}

TEST_CASE("GE1 valuations")
{
    for (std::uint32_t q : {5u, 13u, 17u}) {
        Tower tw(ResidueField::make(q));
        GenericityReport a = check_ge1(tw, GenericLevel::G1minusG0);
        CHECK(a.pass);
        CHECK(a.entries.size() == 12);
        for (const auto& e : a.entries) CHECK(e.ord == Valuation(-1, 4));
        GenericityReport b = check_ge1(tw, GenericLevel::G2minusG1);
        CHECK(b.pass);
        CHECK(b.entries.size() == 40);
        for (const auto& e : b.entries) CHECK(e.ord == Valuation(-1, 2));
        CHECK(b.value_set.size() == 4);
    }
}

TEST_CASE("level-2 value set")
{
    Tower tw(ResidueField::make(13));
    std::vector<LaurentElem> want;
    for (int k : {1, -1, 2, -2}) want.push_back(tw.integer(FieldTag::E2, k) * pi_inv(tw, FieldTag::E2));
    std::vector<int> hits(4, 0);
    for (const auto& r : root_pairs(GenericLevel::G2minusG1)) {
        LaurentElem v = pairing_on_coroot(tw, r);
        int found = 0;
        for (std::size_t i = 0; i < 4; ++i)
            if (v.approx_equal(want[i])) {
                ++hits[i];
                ++found;
            }
        CHECK(found == 1);
    }
    for (int h : hits) CHECK(h > 0);
}

TEST_CASE("GE0 witnesses")
{
    Tower tw(ResidueField::make(5));
    CHECK(ge0_witness_value(tw, Functional::X0star).approx_equal(tw.integer(FieldTag::F, 4)));
    CHECK(ge0_witness_value(tw, Functional::X1star).approx_equal(tw.integer(FieldTag::F, 2)));
    CHECK(check_ge0_witness(tw, Functional::X0star) == Valuation(0, 1));
    CHECK(check_ge0_witness(tw, Functional::X1star) == Valuation(0, 1));
    CHECK(check_ge0_witness(tw, Functional::X0star, 2) == Valuation(2, 1));
}
