#pragma once

#include <climits>
#include <cstdint>
#include <string>
#include <vector>

#include "dzh/gaussian.hpp"
#include "dzh/residue.hpp"

namespace dzh {

// F = F_q((t)), E2 = F(pi2) with pi2^2 = -t, E4 = F(pi4) with pi4^4 = -zeta*t.
// Both extensions are totally ramified, so every element of E_e is a Laurent
// series in its own uniformizer with coefficients in F_q.
enum class FieldTag : std::uint8_t { F, E2, E4 };

constexpr int ramification(FieldTag tag)
{
    switch (tag) {
    case FieldTag::F: return 1;
    case FieldTag::E2: return 2;
    default: return 4;
    }
}

const char* tag_name(FieldTag tag);

// Rational valuation with ord(t) = 1; denominators divide 4.
class Valuation {
public:
    constexpr Valuation() = default;
    Valuation(long long num, long long den);

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool operator==(const Valuation&) const = default;
    Valuation operator+(const Valuation& o) const { return {num_ * o.den_ + o.num_ * den_, den_ * o.den_}; }

    std::string str() const;

private:
    long long num_ = 0;
    long long den_ = 1;
};

class Tower;

// Truncated Laurent series in the uniformizer of its field.
//
// Three states:
//   exact zero   - the element 0, infinite precision;
//   exhausted    - known only to be divisible by pi^A (all retained digits
//                  cancelled); ord/inverse/residue queries raise PrecisionError;
//   normal       - pi^lead * (d0 + d1*pi + ...), d0 != 0, digits().size()
//                  digits known (at most the session precision N).
class LaurentElem {
public:
    LaurentElem() = default;

    const Tower& tower() const { return *tower_; }
    FieldTag tag() const { return tag_; }

    bool is_exact_zero() const { return state_ == State::ExactZero; }
    bool is_exhausted() const { return state_ == State::Exhausted; }
    bool is_normal() const { return state_ == State::Normal; }

    // Exponent below which every digit is known (INT_MAX for exact zero).
    int abs_precision() const;
    int rel_precision() const { return static_cast<int>(digits_.size()); }

    // Normalized valuation (in uniformizer units of this field).
    int ord_norm() const;
    Valuation ord() const;

    // Coefficient of pi^exponent; PrecisionError when not known.
    ResidueElem digit(int exponent) const;
    const std::vector<ResidueElem>& digits() const { return digits_; }
    ResidueElem leading_coeff() const;

    // Decides ord >= k; PrecisionError when the retained digits cannot tell.
    bool ord_at_least(int k) const;
    bool is_integral() const { return ord_at_least(0); }
    bool in_maximal_ideal() const { return ord_at_least(1); }
    bool is_unit() const;
    // Reduction mod the maximal ideal of an integral element.
    ResidueElem residue() const;

    LaurentElem operator-() const;
    LaurentElem inverse() const;
    LaurentElem pow(long long n) const;

    friend LaurentElem operator+(const LaurentElem& a, const LaurentElem& b);
    friend LaurentElem operator-(const LaurentElem& a, const LaurentElem& b);
    friend LaurentElem operator*(const LaurentElem& a, const LaurentElem& b);
    friend LaurentElem operator/(const LaurentElem& a, const LaurentElem& b);
    LaurentElem& operator+=(const LaurentElem& o) { return *this = *this + o; }
    LaurentElem& operator-=(const LaurentElem& o) { return *this = *this - o; }
    LaurentElem& operator*=(const LaurentElem& o) { return *this = *this * o; }

    // Equal on every digit both operands know.
    bool approx_equal(const LaurentElem& o) const;

    // "E2:pi^-1*(1 + 4pi^2 + O(pi^40))"
    std::string str() const;

private:
    friend class Tower;
    enum class State : std::uint8_t { ExactZero, Exhausted, Normal };

    LaurentElem(const Tower* tower, FieldTag tag) : tower_(tower), tag_(tag) {}

    const Tower* tower_ = nullptr;
    FieldTag tag_ = FieldTag::F;
    State state_ = State::ExactZero;
    int lead_ = 0;  // valuation (normal) or absolute precision (exhausted)
    std::vector<ResidueElem> digits_;
};

// Session context for the field tower: residue field, relative precision N
// and the derived Galois data. Elements keep a pointer to their tower, so a
// Tower must outlive every element made from it; it is neither copyable nor
// movable for that reason.
class Tower {
public:
    static constexpr int kDefaultPrecision = 40;

    Tower(ResidueField field, int precision = kDefaultPrecision);
    Tower(const Tower&) = delete;
    Tower& operator=(const Tower&) = delete;

    const ResidueField& residue() const { return field_; }
    int precision() const { return precision_; }
    // i4 = zeta^((q-1)/4), a primitive 4th root of unity in F_q.
    ResidueElem i4() const { return i4_; }

    LaurentElem zero(FieldTag tag) const { return LaurentElem(this, tag); }
    LaurentElem one(FieldTag tag) const { return constant(tag, field_.one()); }
    LaurentElem constant(FieldTag tag, ResidueElem c) const { return monomial(tag, c, 0); }
    LaurentElem integer(FieldTag tag, long long n) const { return constant(tag, field_.from_int(n)); }
    // c * pi^v (pi = t for F); exact zero when c = 0.
    LaurentElem monomial(FieldTag tag, ResidueElem c, int v) const;
    LaurentElem uniformizer(FieldTag tag) const { return monomial(tag, field_.one(), 1); }
    // pi^lead * sum digits[j] pi^j with digits.size() known digits (capped at
    // N); leading zero digits are skipped.
    LaurentElem from_digits(FieldTag tag, int lead, const std::vector<ResidueElem>& digits) const;
    // Element known to be divisible by pi^abs_precision and nothing more.
    LaurentElem exhausted(FieldTag tag, int abs_precision) const;

    // F -> E_e via t = -pi2^2 (E2) or t = -zeta^-1 pi4^4 (E4).
    LaurentElem embed(const LaurentElem& x, FieldTag target) const;
    // E_e -> F for an element fixed by Galois (only exponents divisible by e).
    LaurentElem descend(const LaurentElem& x) const;
    // t as an element of `tag`.
    LaurentElem t_in(FieldTag tag) const { return embed(uniformizer(FieldTag::F), tag); }

    // sigma^k with sigma2(pi2) = -pi2, sigma4(pi4) = i4*pi4.
    LaurentElem galois(int k, const LaurentElem& x) const;
    LaurentElem norm_to_F(const LaurentElem& x) const;
    LaurentElem trace_to_F(const LaurentElem& x) const;

    // eta on F^x: trivial on t and 1 + p_F, eta(zeta) = i.
    UnitI eta_F(const LaurentElem& x) const;

    // eta^2 o N_{E2/F} (E2) resp. eta o N_{E4/F} (E4) is trivial on units:
    // every residue class as a constant, then `random_samples` random units
    // with nonzero higher digits.
    bool norm_unit_image_check(FieldTag tag, std::uint64_t seed, int random_samples = 100) const;

private:
    friend class LaurentElem;
    friend LaurentElem operator+(const LaurentElem& a, const LaurentElem& b);
    LaurentElem make_normal(FieldTag tag, int lead, std::vector<ResidueElem> digits, int abs_precision) const;

    ResidueField field_;
    int precision_;
    ResidueElem i4_;
};

}  // namespace dzh
