#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dzh/groupmodel.hpp"

namespace dzh {

enum class Letter : std::uint8_t { S, SPrime };

// Element of W(rho_M0) = <s, s'> x <z> (x Z/2 for the parahoric variant):
// a reduced word in the infinite dihedral group, a z-exponent and an
// epsilon bit. z and epsilon are central and written on the right.
class WeylElem {
public:
    WeylElem() = default;
    // Cancels adjacent repeated letters.
    WeylElem(std::vector<Letter> word, long long zexp = 0, int ebit = 0);

    static WeylElem s() { return WeylElem({Letter::S}); }
    static WeylElem s_prime() { return WeylElem({Letter::SPrime}); }
    static WeylElem z(long long n = 1) { return WeylElem({}, n); }
    static WeylElem epsilon() { return WeylElem({}, 0, 1); }
    // Inverse of str(): "1", "s.s'.z^3.e", "z^-2", ...
    static WeylElem parse(const std::string& text);

    const std::vector<Letter>& word() const { return word_; }
    long long zexp() const { return zexp_; }
    int ebit() const { return ebit_; }
    bool is_identity() const { return word_.empty() && zexp_ == 0 && ebit_ == 0; }

    WeylElem operator*(const WeylElem& o) const;
    WeylElem inverse() const;
    WeylElem pow(long long n) const;

    // Drops epsilon in the stabilizer variant, where eps~ lies in K_M0.
    WeylElem for_variant(SubgroupVariant v) const;

    bool operator==(const WeylElem&) const = default;
    std::strong_ordering operator<=>(const WeylElem& o) const;

    std::string str() const;

private:
    std::vector<Letter> word_;
    long long zexp_ = 0;
    int ebit_ = 0;
};

// Length of the reduced word; ignores z and epsilon.
inline int plength(const WeylElem& w) { return static_cast<int>(w.word().size()); }

// Verification window: words of length <= max_word, |zexp| <= max_z.
struct Window {
    int max_word = 4;
    int max_z = 2;

    bool contains(const WeylElem& w) const;
};

// Every element of the window in a fixed order (ebit only for parahoric).
std::vector<WeylElem> window_elements(const Window& win, SubgroupVariant v);

// Product of letter lifts (s~, s~'), then z~^zexp, then eps~^ebit.
GroupElem lift(const Tower& tw, const WeylElem& w);

// Exponent pattern of lift(w) as a monomial matrix.
MonomialData shape_of(const WeylElem& w);
// Inverse of shape_of on the word and z part (ebit = 0); nullopt when the
// shape is not that of any lift.
std::optional<WeylElem> weyl_from_shape(const MonomialData& m);

// (ord x, ord y, ord z) in normalized valuations.
std::array<long long, 3> h_M0(const TorusElem& tt);

// ---------------------------------------------------------------------------
// Integer lattices

// Rows are vectors.
using IntMatrix = std::vector<std::vector<long long>>;

// Row Hermite normal form of the lattice spanned by the rows: positive
// pivots, entries above a pivot reduced into [0, pivot), zero rows dropped.
IntMatrix hermite_normal_form(IntMatrix rows);
// Basis (as rows) of {x in Z^n : A x = 0}, A given by its rows.
IntMatrix integer_kernel(const IntMatrix& a, std::size_t n);

struct LatticeCheckResult {
    IntMatrix congruence_hnf;  // {n1+n2+n3 = 0, 2 | n3}
    IntMatrix span_hnf;        // <(1,1,-2), (1,-1,0)>
    bool hnf_equal = false;
    int points_checked = 0;
    int norm_mismatches = 0;
    bool pass = false;
};
// HNF comparison, then for every |n_i| <= bound: lattice membership agrees
// with t^(n1+n2+n3) zeta^n3 in (1 + p_F)<zeta^2>, the latter evaluated
// through N(pi2)^(n1+n2) N(pi4)^n3.
LatticeCheckResult lattice_check(const Tower& tw, int bound = 4);

struct GroupStructureCheck {
    bool s_involution = false;        // s~^2 in K_M0
    bool s_prime_involution = false;  // s~'^2 in K_M0
    bool z_central = false;           // [s~, z~], [s~', z~] in K_M0
    bool eps_central = false;         // [s~, eps~], [s~', eps~] in K_M0
    bool eps_order = false;           // eps~^2 in K_M0, eps~ not (parahoric) / in (stabilizer)
    bool ss_prime_free = false;       // h((ss')^n) = (n, -n, 0), n <= max_power
    bool z_free = false;              // h(z^n) = (n, n, -2n), n <= max_power
    bool pass = false;
};
GroupStructureCheck group_structure_check(const Tower& tw, SubgroupVariant v, int max_power = 50);

}  // namespace dzh
