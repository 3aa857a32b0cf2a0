#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "dzh/tower.hpp"

namespace dzh {

// K0 is either the full point stabilizer G0(F)_x0 or the parahoric G0(F)_x0,0.
enum class SubgroupVariant : std::uint8_t { Stabilizer, Parahoric };

const char* variant_name(SubgroupVariant v);

// 2x2 matrix over E2.
struct Mat2 {
    LaurentElem a, b, c, d;

    LaurentElem det() const { return a * d - b * c; }
    Mat2 operator*(const Mat2& o) const;
    Mat2 inverse() const;
    bool approx_equal(const Mat2& o) const;
};

// (g2, g4) in GL2(E2) x E4^x, the block model of G~0(F) inside GL8(F).
class GroupElem {
public:
    GroupElem(Mat2 g2, LaurentElem g4);

    const Mat2& g2() const { return g2_; }
    const LaurentElem& g4() const { return g4_; }
    const Tower& tower() const { return g4_.tower(); }

    GroupElem operator*(const GroupElem& o) const { return {g2_ * o.g2_, g4_ * o.g4_}; }
    GroupElem inverse() const { return {g2_.inverse(), g4_.inverse()}; }
    GroupElem pow(long long n) const;

    // det over F of the GL8 image: N(det g2) * N(g4).
    LaurentElem det_F() const;
    // Lies in G0(F) = (GL2(E2) x E4^x) cap SL8(F).
    bool in_G0() const { return det_F().approx_equal(tower().one(FieldTag::F)); }

    bool approx_equal(const GroupElem& o) const { return g2_.approx_equal(o.g2_) && g4_.approx_equal(o.g4_); }
    std::string str() const;

private:
    Mat2 g2_;
    LaurentElem g4_;
};

// Element (diag(x, y), z) of the torus M~0(F).
struct TorusElem {
    LaurentElem x, y, z;

    GroupElem embed() const;
    std::string str() const;
};

GroupElem commutator(const GroupElem& a, const GroupElem& b);
// The torus element g is, when g2 is diagonal within precision.
std::optional<TorusElem> as_torus(const GroupElem& g);

GroupElem identity(const Tower& tw);
// s~ = ((0 1; -1 0), 1)
GroupElem s_tilde(const Tower& tw);
// s~' = ((0 pi2^-1; -pi2 0), 1)
GroupElem s_prime_tilde(const Tower& tw);
// z~ = (zeta*pi2, pi2, pi4^-2)
TorusElem z_tilde(const Tower& tw);
// eps~ = (-1, 1, 1)
TorusElem epsilon_tilde(const Tower& tw);
// u(x) = ((1 x; 0 1), 1)
GroupElem upper_unipotent(const LaurentElem& x);
// l(c) = ((1 0; c 1), 1)
GroupElem lower_unipotent(const LaurentElem& c);
TorusElem torus(const LaurentElem& x, const LaurentElem& y, const LaurentElem& z);

// I2 x I4: a, d units, b integral, c in p_E2, g4 a unit.
bool in_iwahori(const GroupElem& g);
bool in_K0(const GroupElem& g, SubgroupVariant v);
bool in_KM0(const TorusElem& tt, SubgroupVariant v);

// rho_M0(x, y, z) = eta(N_{E2/F}(y)); DomainError unless tt lies in K_M0.
UnitI rho_M0(const TorusElem& tt, SubgroupVariant v = SubgroupVariant::Stabilizer);
// rho0(g) = eta(N_{E2/F}(d)); DomainError unless g lies in K0.
UnitI rho0(const GroupElem& g, SubgroupVariant v);

// Reduction (det g2 mod p) * (g4 mod p)^2 of an element of I2 x I4.
ResidueElem residue_defect(const GroupElem& g);
// psi(g) = ac(det g2) * ac(g4)^2 * zeta^(ord g4 / 2), a {+-1}-valued
// homomorphism on G0(F) that is trivial exactly on the parahoric
// side: psi(K0 parahoric) = 1, psi(eps~) = -1.
UnitI epsilon_character(const GroupElem& g);

// Monomial part of an Iwahori-Bruhat factorization.
struct MonomialData {
    bool antidiagonal = false;  // s-type Weyl part
    int row1_exp = 0;           // pi2-exponent of the nonzero entry in row 1
    int row2_exp = 0;           // pi2-exponent of the nonzero entry in row 2
    int e4_exp = 0;             // pi4-exponent of the E4 block

    // diag(pi^r1, pi^r2) or (0 pi^r1; -pi^r2 0), with pi4^e4.
    GroupElem matrix(const Tower& tw) const;
    bool operator==(const MonomialData&) const = default;
    std::string str() const;
};

struct IwahoriFactorization {
    GroupElem k1;
    MonomialData m;
    GroupElem k2;
};

// g = k1 * m.matrix() * k2 with k1, k2 in I2 x I4.
IwahoriFactorization iwahori_decompose(const GroupElem& g);

// g = left * monomial * right where left, right are unipotent elements of
// the Iwahori (hence in K0 for either variant) and monomial has exactly one
// nonzero entry in each row of g2; when g lies in G0(F) so does monomial.
struct BruhatReduction {
    GroupElem left;
    GroupElem monomial;
    GroupElem right;
};
BruhatReduction bruhat_reduce(const GroupElem& g);

struct EpsilonTrivialityResult {
    bool trivial = false;
    std::uint64_t triples_checked = 0;  // triples satisfying the residue constraints
    std::uint64_t triples_total = 0;
};
// sgn(xy mod p) = 1 on every residue triple allowed by the K_M0 constraints.
EpsilonTrivialityResult epsilon_fks_trivial(const Tower& tw, SubgroupVariant v);

// Random sampling for property checks; results are verified members.
LaurentElem random_unit(const Tower& tw, FieldTag tag, std::mt19937_64& rng, int terms = 6);
LaurentElem random_integral(const Tower& tw, FieldTag tag, std::mt19937_64& rng, int terms = 6);
TorusElem random_KM0(const Tower& tw, SubgroupVariant v, std::mt19937_64& rng);
GroupElem random_K0(const Tower& tw, SubgroupVariant v, std::mt19937_64& rng);

}  // namespace dzh
