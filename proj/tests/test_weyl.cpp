#include "doctest.h"

#include <random>

#include "dzh/errors.hpp"
#include "dzh/weyl.hpp"

using namespace dzh;

namespace {

constexpr SubgroupVariant kBoth[] = {SubgroupVariant::Stabilizer, SubgroupVariant::Parahoric};

long long det3(const IntMatrix& m)
{
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// Membership of v in the lattice of an echelon basis (pivots strictly move right).
bool in_echelon_lattice(const IntMatrix& basis, std::vector<long long> v)
{
    for (const auto& row : basis) {
        std::size_t p = 0;
        while (p < row.size() && row[p] == 0) ++p;
        if (p == row.size()) continue;
        for (std::size_t k = 0; k < p; ++k)
            if (v[k] != 0) return false;
        if (v[p] % row[p] != 0) return false;
        long long c = v[p] / row[p];
        for (std::size_t k = 0; k < v.size(); ++k) v[k] -= c * row[k];
    }
    for (long long x : v)
        if (x != 0) return false;
    return true;
}

}  // namespace

TEST_CASE("Weyl group arithmetic")
{
    WeylElem s = WeylElem::s(), sp = WeylElem::s_prime(), z = WeylElem::z(), e = WeylElem::epsilon();
    CHECK((s * s).is_identity());
    CHECK((sp * sp).is_identity());
    CHECK(s * z * s.inverse() == z);
    CHECK(s * e == e * s);
    CHECK((e * e).is_identity());
    WeylElem w = (s * sp).pow(3);
    CHECK(w.str() == "s.s'.s.s'.s.s'");
    CHECK(plength(w) == 6);
    CHECK(plength(s * z.pow(3)) == 1);
    CHECK(plength(WeylElem()) == 0);
    CHECK(plength(s * sp * s) == 3);
    CHECK((w * w.inverse()).is_identity());
    CHECK(WeylElem().str() == "1");
    CHECK((s * sp * z.pow(-2) * e).str() == "s.s'.z^-2.e");
}

TEST_CASE("parse is the inverse of str")
{
    WeylElem s = WeylElem::s(), sp = WeylElem::s_prime(), z = WeylElem::z(), e = WeylElem::epsilon();
    std::mt19937_64 rng(1);
    WeylElem gens[] = {s, sp, z, z.inverse(), e};
    for (int i = 0; i < 200; ++i) {
        WeylElem w;
        for (int k = 0; k < 6; ++k) w = w * gens[rng() % 5];
        CHECK(WeylElem::parse(w.str()) == w);
    }
    CHECK_THROWS_AS(WeylElem::parse("s.q"), DomainError);
}

TEST_CASE("Weyl group multiplication is associative")
{
    std::mt19937_64 rng(2);
    auto elems = window_elements(Window{3, 2}, SubgroupVariant::Parahoric);
    for (int i = 0; i < 300; ++i) {
        const auto& a = elems[rng() % elems.size()];
        const auto& b = elems[rng() % elems.size()];
        const auto& c = elems[rng() % elems.size()];
        CHECK((a * b) * c == a * (b * c));
    }
}

TEST_CASE("window enumeration")
{
    // words of length <= 4 in the infinite dihedral group: 1 + 2*4
    CHECK(window_elements(Window{4, 2}, SubgroupVariant::Stabilizer).size() == 9 * 5);
    CHECK(window_elements(Window{4, 2}, SubgroupVariant::Parahoric).size() == 9 * 5 * 2);
    Window w{2, 1};
    CHECK(w.contains(WeylElem::parse("s.s'.z^-1")));
    CHECK_FALSE(w.contains(WeylElem::parse("s.s'.s")));
    CHECK_FALSE(w.contains(WeylElem::z(2)));
    CHECK(WeylElem::epsilon().for_variant(SubgroupVariant::Stabilizer).is_identity());
}

TEST_CASE("lifts and their shapes")
{
    Tower tw(ResidueField::make(5));
    LaurentElem p = tw.uniformizer(FieldTag::E2);
    auto t = as_torus(lift(tw, WeylElem::parse("s.s'")));
    REQUIRE(t);
    CHECK(t->x.approx_equal(-p));
    CHECK(t->y.approx_equal(-p.inverse()));
    CHECK(h_M0(*t) == std::array<long long, 3>{1, -1, 0});
    CHECK(h_M0(z_tilde(tw)) == std::array<long long, 3>{1, 1, -2});
    for (auto v : kBoth)
        for (const auto& w : window_elements(Window{4, 2}, v)) {
            GroupElem g = lift(tw, w);
            CHECK(g.in_G0());
            if (w.ebit()) continue;
            auto back = weyl_from_shape(shape_of(w));
            REQUIRE(back);
            CHECK(*back == w);
        }
    for (int n = 1; n <= 50; ++n) {
        auto tn = as_torus(lift(tw, WeylElem::parse("s.s'").pow(n)));
        REQUIRE(tn);
        CHECK(h_M0(*tn) == std::array<long long, 3>{n, -n, 0});
    }
}

TEST_CASE("Hermite normal form against determinant and membership")
{
    std::mt19937_64 rng(3);
    int tested = 0;
    while (tested < 100) {
        IntMatrix a(3, std::vector<long long>(3));
        for (auto& r : a)
            for (auto& x : r) x = static_cast<long long>(rng() % 13) - 6;
        long long d = det3(a);
        if (d == 0) continue;
        ++tested;
        IntMatrix h = hermite_normal_form(a);
        REQUIRE(h.size() == 3);
        long long prod = 1;
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(h[i][i] > 0);
            for (std::size_t j = 0; j < i; ++j) CHECK(h[i][j] == 0);
            for (std::size_t k = 0; k < i; ++k) {
                CHECK(h[k][i] >= 0);
                CHECK(h[k][i] < h[i][i]);
            }
            prod *= h[i][i];
        }
        // equal index and L(a) inside L(h), so the lattices agree
        CHECK(prod == (d < 0 ? -d : d));
        for (const auto& r : a) CHECK(in_echelon_lattice(h, r));
    }
}

TEST_CASE("HNF is canonical")
{
    IntMatrix a{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
    IntMatrix b{{2, 4, 4}, {-4, 10, 16}, {12, 0, -12}};
    CHECK(hermite_normal_form(a) == hermite_normal_form(b));
    CHECK(hermite_normal_form({{0, 0, 0}, {0, 3, 1}}) == IntMatrix{{0, 3, 1}});
}

TEST_CASE("integer kernel")
{
    std::mt19937_64 rng(4);
    for (int it = 0; it < 40; ++it) {
        IntMatrix a(2, std::vector<long long>(4));
        for (auto& r : a)
            for (auto& x : r) x = static_cast<long long>(rng() % 7) - 3;
        IntMatrix k = integer_kernel(a, 4);
        IntMatrix hk = hermite_normal_form(k);
        for (const auto& v : k)
            for (const auto& r : a) {
                long long s = 0;
                for (std::size_t j = 0; j < 4; ++j) s += r[j] * v[j];
                CHECK(s == 0);
            }
        // every small integer solution lies in the span of the basis
        for (long long x0 = -2; x0 <= 2; ++x0)
            for (long long x1 = -2; x1 <= 2; ++x1)
                for (long long x2 = -2; x2 <= 2; ++x2)
                    for (long long x3 = -2; x3 <= 2; ++x3) {
                        std::vector<long long> x{x0, x1, x2, x3};
                        bool sol = true;
                        for (const auto& r : a) {
                            long long s = 0;
                            for (std::size_t j = 0; j < 4; ++j) s += r[j] * x[j];
                            sol = sol && s == 0;
                        }
                        if (sol) CHECK(in_echelon_lattice(hk, x));
                    }
    }
}

TEST_CASE("image lattice of h_M0")
{
    for (std::uint32_t q : {5u, 13u}) {
        Tower tw(ResidueField::make(q));
        LatticeCheckResult r = lattice_check(tw, 4);
        CHECK(r.hnf_equal);
        CHECK(r.pass);
        CHECK(r.points_checked == 9 * 9 * 9);
        CHECK(r.norm_mismatches == 0);
    }
    // brute force: n = a(1,1,-2) + b(1,-1,0) iff n1+n2+n3 = 0 and n3 even
    for (int n1 = -4; n1 <= 4; ++n1)
        for (int n2 = -4; n2 <= 4; ++n2)
            for (int n3 = -4; n3 <= 4; ++n3) {
                bool cong = n1 + n2 + n3 == 0 && n3 % 2 == 0;
                bool span = false;
                for (int a = -8; a <= 8; ++a)
                    for (int b = -8; b <= 8; ++b)
                        span = span || (a + b == n1 && a - b == n2 && -2 * a == n3);
                CHECK(cong == span);
            }
}

TEST_CASE("group structure")
{
    for (std::uint32_t q : {5u, 13u}) {
        Tower tw(ResidueField::make(q));
        for (auto v : kBoth) {
            GroupStructureCheck g = group_structure_check(tw, v, 50);
            CHECK(g.s_involution);
            CHECK(g.s_prime_involution);
            CHECK(g.z_central);
            CHECK(g.eps_central);
            CHECK(g.eps_order);
            CHECK(g.ss_prime_free);
            CHECK(g.z_free);
            CHECK(g.pass);
        }
    }
}
