#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dzh/gaussian.hpp"

namespace dzh {

// Element of the residue field, stored as its index in the canonical
// enumeration 0..q-1 (index = a0 + a1*p for a0 + a1*alpha when q = p^2).
class ResidueElem {
public:
    constexpr ResidueElem() = default;
    constexpr explicit ResidueElem(std::uint32_t index) : index_(index) {}

    constexpr std::uint32_t index() const { return index_; }
    constexpr bool is_zero() const { return index_ == 0; }

    constexpr auto operator<=>(const ResidueElem&) const = default;

private:
    std::uint32_t index_ = 0;
};

// F_q with q = p or p^2, 4 | q-1, together with a fixed primitive root zeta
// and its discrete-log table. Immutable after construction.
class ResidueField {
public:
    // Canonical field: zeta is the smallest generator in index order.
    static ResidueField make(std::uint32_t q);
    // Same field with an explicitly chosen generator (must be primitive).
    static ResidueField make(std::uint32_t q, ResidueElem zeta);

    std::uint32_t q() const { return q_; }
    std::uint32_t p() const { return p_; }
    unsigned degree() const { return degree_; }
    ResidueElem zeta() const { return zeta_; }

    ResidueElem zero() const { return ResidueElem(0); }
    ResidueElem one() const { return ResidueElem(1); }
    ResidueElem from_int(long long n) const;
    // All elements in index order.
    std::vector<ResidueElem> elements() const;
    std::vector<ResidueElem> units() const;

    ResidueElem add(ResidueElem a, ResidueElem b) const;
    ResidueElem sub(ResidueElem a, ResidueElem b) const;
    ResidueElem neg(ResidueElem a) const;
    ResidueElem mul(ResidueElem a, ResidueElem b) const
    {
        if (a.is_zero() || b.is_zero()) return zero();
        std::uint32_t e = log_[a.index()] + log_[b.index()];
        if (e >= q_ - 1) e -= q_ - 1;
        return exp_[e];
    }
    ResidueElem inv(ResidueElem a) const;
    ResidueElem div(ResidueElem a, ResidueElem b) const { return mul(a, inv(b)); }
    ResidueElem pow(ResidueElem a, long long n) const;

    // zeta^k for any integer k.
    ResidueElem zeta_pow(long long k) const;
    // k in [0, q-1) with zeta^k = x; throws DomainError for x = 0.
    std::uint32_t log(ResidueElem x) const;

    // Order of x in the multiplicative group.
    std::uint32_t order(ResidueElem x) const;
    bool is_square(ResidueElem x) const;

    std::string str(ResidueElem x) const;

private:
    ResidueField() = default;
    void build(std::uint32_t q);

    std::uint32_t q_ = 0;
    std::uint32_t p_ = 0;
    unsigned degree_ = 1;
    std::uint32_t nonresidue_ = 0;  // alpha^2 = nonresidue_ when degree_ == 2
    ResidueElem zeta_;
    std::vector<std::uint32_t> log_;   // indexed by element index; log_[0] unused
    std::vector<ResidueElem> exp_;     // exp_[k] = zeta^k
};

// eta(zeta^k) = i^k.
UnitI eta_residue(const ResidueField& f, ResidueElem x);
// Quadratic character of the residue field.
UnitI sgn(const ResidueField& f, ResidueElem x);
// Sum of eta(x^2) over all nonzero x.
HeckeCoeff char_sum_eta_squares(const ResidueField& f);

// Smallest primitive root of F_q under index order, by trial of orders.
ResidueElem smallest_generator(const ResidueField& f);

}  // namespace dzh
