#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "dzh/weyl.hpp"

namespace dzh {

// phi_w: supported on K0 lift(w) K0, phi_w(k1 g k2) = rho0(k1) phi_w(g) rho0(k2),
// phi_w(lift(w)) = scale.
struct HeckeBasisFn {
    WeylElem w;
    HeckeCoeff scale = 1;
};

using DoubleCosetSet = std::set<WeylElem>;

// Pointwise Hecke-algebra computations for (K0, rho0) in one variant.
// Caches coset transversals, so a model is not safe for concurrent use.
class HeckeModel {
public:
    HeckeModel(const Tower& tw, SubgroupVariant v, Window win = {});

    const Tower& tower() const { return *tw_; }
    SubgroupVariant variant() const { return v_; }
    const Window& window() const { return win_; }

    // Weyl element w with g in K0 lift(w) K0. DomainError when g is not in
    // G0(F) or the result lies outside the window.
    WeylElem classify(const GroupElem& g) const;
    WeylElem classify_unbounded(const GroupElem& g) const;

    // Transversal r of K0 / (K0 cap lift(w) K0 lift(w)^-1); the cosets are
    // r lift(w) K0. Validated for membership and pairwise disjointness.
    const std::vector<GroupElem>& coset_reps(const WeylElem& w) const;

    // Complete invariant of the right coset h K0.
    std::string coset_key(const GroupElem& h) const;

    HeckeCoeff phi(const HeckeBasisFn& f, const GroupElem& g) const;
    HeckeCoeff phi(const WeylElem& w, const GroupElem& g) const { return phi(HeckeBasisFn{w}, g); }

    // (phi_1 * phi_2)(g) = sum over h in K0 w1 K0 / K0 of phi_1(h) phi_2(h^-1 g).
    HeckeCoeff convolve_at(const HeckeBasisFn& f1, const HeckeBasisFn& f2, const GroupElem& g) const;
    HeckeCoeff convolve_at(const WeylElem& w1, const WeylElem& w2, const GroupElem& g) const
    {
        return convolve_at(HeckeBasisFn{w1}, HeckeBasisFn{w2}, g);
    }

    // Double cosets met by K0 w1 K0 w2 K0, from lift(w1) r lift(w2) over
    // r in coset_reps(w2).
    DoubleCosetSet double_coset_product(const WeylElem& w1, const WeylElem& w2) const;

private:
    void check_window(const WeylElem& w) const;
    WeylElem classify_reduced(const GroupElem& g, const BruhatReduction& r) const;
    // phi without the G0(F) membership test, for arguments known to lie there.
    HeckeCoeff phi_in_G0(const HeckeBasisFn& f, const GroupElem& g) const;

    const Tower* tw_;
    SubgroupVariant v_;
    Window win_;
    mutable std::map<std::vector<Letter>, std::vector<GroupElem>> reps_cache_;
};

// mu(w1, w2) = rho_M0(lift(w1 w2)^-1 lift(w1) lift(w2)) for a lift family.
// Seed 0 is the canonical family of `lift`; any other seed multiplies
// lift(w), w != 1, by a K_M0 element derived deterministically from
// (seed, w).
class CocycleTable {
public:
    CocycleTable(const Tower& tw, SubgroupVariant v, std::uint64_t perturbation_seed = 0);

    const Tower& tower() const { return *tw_; }
    SubgroupVariant variant() const { return v_; }
    std::uint64_t seed() const { return seed_; }

    GroupElem lift(const WeylElem& w) const;
    // Lift discrepancy; DomainError if it falls outside K_M0.
    TorusElem discrepancy(const WeylElem& w1, const WeylElem& w2) const;
    UnitI mu(const WeylElem& w1, const WeylElem& w2) const;
    // mu(u, v) mu(v, u)^-1 for commuting u, v; DomainError otherwise.
    UnitI beta(const WeylElem& u, const WeylElem& v) const;
    // rho_M0([lift u, lift v]), the same pairing computed in the group.
    UnitI beta_commutator(const WeylElem& u, const WeylElem& v) const;

private:
    const Tower* tw_;
    SubgroupVariant v_;
    std::uint64_t seed_;
};

struct NontrivialityCertificate {
    bool found = false;
    WeylElem u, v;
    UnitI beta;
    // rho_M0 is non-trivial on [lift u, lift v] in K_M0, so it cannot extend
    // to a character of N(rho_M0) (any extension kills commutators).
    bool rho_does_not_extend = false;
    std::string justification;
};

// Commuting pair in the window with beta != 1; (s, z) is tried first.
NontrivialityCertificate nontriviality_certificate(const CocycleTable& t, const Window& win);

struct OmegaCheckResult {
    int pairs_checked = 0;
    int cross_terms_checked = 0;
    bool s_s_vanishes = false;          // (phi_s * phi_s)(s~) = 0
    bool sp_sp_vanishes = false;        // (phi_s' * phi_s')(s~') = 0
    bool s_s_identity_is_q = false;     // (phi_s * phi_s)(1) = q
    std::vector<std::string> failures;
    bool pass = false;
};

// For every pair with words of length <= 2 and central parts in
// {1, z, z^-1} (x {1, e} for the parahoric variant): phi_w1 * phi_w2 is
// supported on K0 w1w2 K0 (vanishes at every other double coset the product
// meets) and is nonzero there.
OmegaCheckResult omega_check(const HeckeModel& m);

struct AdditivePairsResult {
    int pairs_checked = 0;
    std::vector<std::string> failures;
    bool pass = false;
};
// Every pair with plength(w1) + plength(w2) = plength(w1 w2) and w1, w2,
// w1 w2 in the window has double_coset_product = {w1 w2}. Central parts
// range over `central`.
AdditivePairsResult additive_pairs_check(const HeckeModel& m, const std::vector<WeylElem>& central);

struct NegativeControlResult {
    int families = 0;
    int multiplicative_families = 0;  // lift(sz) = lift(s) lift(z) and lift(zs) = lift(z) lift(s)
    int mu_trivial_families = 0;      // mu(s, z) = mu(z, s) = 1
    bool pass = false;
};
// No sampled lift family is multiplicative on the pairs (s, z), (z, s).
NegativeControlResult negative_control(const Tower& tw, SubgroupVariant v, std::uint64_t seed, int families = 40);

}  // namespace dzh
