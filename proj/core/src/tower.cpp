#include "dzh/tower.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "dzh/errors.hpp"

namespace dzh {

const char* tag_name(FieldTag tag)
{
    switch (tag) {
    case FieldTag::F: return "F";
    case FieldTag::E2: return "E2";
    default: return "E4";
    }
}

Valuation::Valuation(long long num, long long den)
{
    if (den == 0) throw DomainError("valuation with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    num_ = num / g;
    den_ = den / g;
}

std::string Valuation::str() const
{
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

// ---------------------------------------------------------------------------
// LaurentElem

int LaurentElem::abs_precision() const
{
    switch (state_) {
    case State::ExactZero: return INT_MAX;
    case State::Exhausted: return lead_;
    default: return lead_ + static_cast<int>(digits_.size());
    }
}

int LaurentElem::ord_norm() const
{
    if (state_ == State::ExactZero) throw DomainError("valuation of zero");
    if (state_ == State::Exhausted)
        throw PrecisionError("valuation undecidable: element is O(pi^" + std::to_string(lead_) + ")");
    return lead_;
}

Valuation LaurentElem::ord() const { return Valuation(ord_norm(), ramification(tag_)); }

ResidueElem LaurentElem::digit(int exponent) const
{
    if (exponent >= abs_precision())
        throw PrecisionError("digit at pi^" + std::to_string(exponent) + " is beyond the retained precision");
    if (state_ != State::Normal || exponent < lead_) return ResidueElem(0);
    return digits_[static_cast<std::size_t>(exponent - lead_)];
}

ResidueElem LaurentElem::leading_coeff() const
{
    ord_norm();
    return digits_.front();
}

bool LaurentElem::ord_at_least(int k) const
{
    switch (state_) {
    case State::ExactZero: return true;
    case State::Normal: return lead_ >= k;
    default:
        if (lead_ >= k) return true;
        throw PrecisionError("cannot decide ord >= " + std::to_string(k) + " for O(pi^" + std::to_string(lead_) + ")");
    }
}

bool LaurentElem::is_unit() const
{
    if (state_ == State::ExactZero) return false;
    if (state_ == State::Exhausted) {
        if (lead_ >= 1) return false;
        throw PrecisionError("cannot decide unit-ness of O(pi^" + std::to_string(lead_) + ")");
    }
    return lead_ == 0;
}

ResidueElem LaurentElem::residue() const
{
    if (!is_integral()) throw DomainError("residue of a non-integral element");
    return digit(0);
}

LaurentElem LaurentElem::operator-() const
{
    LaurentElem r = *this;
    const ResidueField& f = tower_->residue();
    for (auto& d : r.digits_) d = f.neg(d);
    return r;
}

LaurentElem operator+(const LaurentElem& a, const LaurentElem& b)
{
    if (a.tag_ != b.tag_) throw DomainError(std::string("tag mismatch: ") + tag_name(a.tag_) + " vs " + tag_name(b.tag_));
    if (a.is_exact_zero()) return b;
    if (b.is_exact_zero()) return a;
    const Tower& tw = *a.tower_;
    int prec = std::min(a.abs_precision(), b.abs_precision());
    if (!a.is_normal() && !b.is_normal()) return tw.exhausted(a.tag_, prec);
    int low = INT_MAX;
    if (a.is_normal()) low = a.lead_;
    if (b.is_normal()) low = std::min(low, b.lead_);
    if (low >= prec) return tw.exhausted(a.tag_, prec);
    prec = std::min(prec, low + tw.precision());
    std::vector<ResidueElem> sum(static_cast<std::size_t>(prec - low));
    const ResidueField& f = tw.residue();
    for (const LaurentElem* x : {&a, &b}) {
        if (!x->is_normal()) continue;
        for (std::size_t j = 0; j < x->digits_.size(); ++j) {
            int e = x->lead_ + static_cast<int>(j);
            if (e >= prec) break;
            auto& s = sum[static_cast<std::size_t>(e - low)];
            s = f.add(s, x->digits_[j]);
        }
    }
    return tw.make_normal(a.tag_, low, std::move(sum), prec);
}

LaurentElem operator-(const LaurentElem& a, const LaurentElem& b) { return a + (-b); }

namespace {

// Fills `out` (reused across calls to avoid allocation) and returns it.
const std::vector<std::size_t>& nonzero_positions(const std::vector<ResidueElem>& d, std::size_t n,
                                                  std::vector<std::size_t>& out)
{
    out.clear();
    for (std::size_t i = 0; i < n; ++i)
        if (!d[i].is_zero()) out.push_back(i);
    return out;
}

thread_local std::vector<std::size_t> scratch_a, scratch_b;

}  // namespace

LaurentElem operator*(const LaurentElem& a, const LaurentElem& b)
{
    if (a.tag_ != b.tag_) throw DomainError(std::string("tag mismatch: ") + tag_name(a.tag_) + " vs " + tag_name(b.tag_));
    const Tower& tw = *a.tower_;
    if (a.is_exact_zero() || b.is_exact_zero()) return tw.zero(a.tag_);
    if (a.is_exhausted() && b.is_exhausted()) return tw.exhausted(a.tag_, a.lead_ + b.lead_);
    if (a.is_exhausted()) return tw.exhausted(a.tag_, a.lead_ + b.lead_);
    if (b.is_exhausted()) return tw.exhausted(a.tag_, a.lead_ + b.lead_);

    const ResidueField& f = tw.residue();
    std::size_t n = std::min(a.digits_.size(), b.digits_.size());
    std::vector<ResidueElem> out(n);
    // Most elements in play are short polynomials, so loop over nonzero digits only.
    const auto& nza = nonzero_positions(a.digits_, n, scratch_a);
    const auto& nzb = nonzero_positions(b.digits_, n, scratch_b);
    for (std::size_t i : nza) {
        ResidueElem ai = a.digits_[i];
        for (std::size_t j : nzb) {
            if (i + j >= n) break;
            out[i + j] = f.add(out[i + j], f.mul(ai, b.digits_[j]));
        }
    }
    LaurentElem r(&tw, a.tag_);
    r.state_ = LaurentElem::State::Normal;
    r.lead_ = a.lead_ + b.lead_;
    r.digits_ = std::move(out);
    return r;
}

LaurentElem LaurentElem::inverse() const
{
    if (state_ == State::ExactZero) throw DomainError("division by zero");
    if (state_ == State::Exhausted) throw PrecisionError("inverse of an element indistinguishable from zero");
    const ResidueField& f = tower_->residue();
    std::size_t n = digits_.size();
    std::vector<ResidueElem> inv(n);
    ResidueElem a0inv = f.inv(digits_[0]);
    inv[0] = a0inv;
    const auto& nz = nonzero_positions(digits_, n, scratch_a);
    for (std::size_t k = 1; k < n; ++k) {
        ResidueElem s;
        for (std::size_t j : nz) {
            if (j == 0) continue;
            if (j > k) break;
            if (inv[k - j].is_zero()) continue;
            s = f.add(s, f.mul(digits_[j], inv[k - j]));
        }
        inv[k] = f.neg(f.mul(a0inv, s));
    }
    LaurentElem r(tower_, tag_);
    r.state_ = State::Normal;
    r.lead_ = -lead_;
    r.digits_ = std::move(inv);
    return r;
}

LaurentElem operator/(const LaurentElem& a, const LaurentElem& b) { return a * b.inverse(); }

LaurentElem LaurentElem::pow(long long n) const
{
    if (n < 0) return inverse().pow(-n);
    LaurentElem result = tower_->one(tag_);
    LaurentElem base = *this;
    while (n > 0) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return result;
}

bool LaurentElem::approx_equal(const LaurentElem& o) const
{
    LaurentElem d = *this - o;
    return !d.is_normal();
}

std::string LaurentElem::str() const
{
    const ResidueField& f = tower_->residue();
    const char* var = tag_ == FieldTag::F ? "t" : "pi";
    std::ostringstream os;
    os << tag_name(tag_) << ':';
    if (state_ == State::ExactZero) {
        os << '0';
        return os.str();
    }
    if (state_ == State::Exhausted) {
        os << "O(" << var << '^' << lead_ << ')';
        return os.str();
    }
    if (lead_ != 0) os << var << '^' << lead_ << '*';
    os << '(';
    bool first = true;
    for (std::size_t j = 0; j < digits_.size(); ++j) {
        if (digits_[j].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << f.str(digits_[j]);
        if (j == 1) os << var;
        if (j > 1) os << var << '^' << j;
    }
    os << " + O(" << var << '^' << digits_.size() << "))";
    return os.str();
}

// ---------------------------------------------------------------------------
// Tower

Tower::Tower(ResidueField field, int precision) : field_(std::move(field)), precision_(precision)
{
    if (precision_ < 2) throw ConfigError("precision must be at least 2");
    i4_ = field_.zeta_pow((field_.q() - 1) / 4);
}

LaurentElem Tower::make_normal(FieldTag tag, int lead, std::vector<ResidueElem> digits, int abs_precision) const
{
    std::size_t first = 0;
    int known = abs_precision - lead;
    std::size_t limit = std::min<std::size_t>(digits.size(), known > 0 ? static_cast<std::size_t>(known) : 0);
    while (first < limit && digits[first].is_zero()) ++first;
    if (first == limit) return exhausted(tag, abs_precision);
    LaurentElem r(this, tag);
    r.state_ = LaurentElem::State::Normal;
    r.lead_ = lead + static_cast<int>(first);
    std::size_t count = std::min<std::size_t>(limit - first, static_cast<std::size_t>(precision_));
    r.digits_.assign(digits.begin() + static_cast<std::ptrdiff_t>(first),
                     digits.begin() + static_cast<std::ptrdiff_t>(first + count));
    return r;
}

LaurentElem Tower::exhausted(FieldTag tag, int abs_precision) const
{
    LaurentElem r(this, tag);
    r.state_ = LaurentElem::State::Exhausted;
    r.lead_ = abs_precision;
    return r;
}

LaurentElem Tower::monomial(FieldTag tag, ResidueElem c, int v) const
{
    if (c.is_zero()) return zero(tag);
    std::vector<ResidueElem> d(static_cast<std::size_t>(precision_));
    d[0] = c;
    return make_normal(tag, v, std::move(d), v + precision_);
}

LaurentElem Tower::from_digits(FieldTag tag, int lead, const std::vector<ResidueElem>& digits) const
{
    return make_normal(tag, lead, digits, lead + static_cast<int>(digits.size()));
}

LaurentElem Tower::embed(const LaurentElem& x, FieldTag target) const
{
    if (x.tag() != FieldTag::F) throw DomainError("embed expects an element of F");
    if (target == FieldTag::F) return x;
    int e = ramification(target);
    if (x.is_exact_zero()) return zero(target);
    if (x.is_exhausted()) return exhausted(target, e * x.lead_);
    // t^m -> (-1)^m pi2^(2m)  or  (-zeta^-1)^m pi4^(4m)
    ResidueElem unit = target == FieldTag::E2 ? field_.neg(field_.one()) : field_.neg(field_.zeta_pow(-1));
    int lead = e * x.lead_;
    int count = std::min(e * static_cast<int>(x.digits_.size()), precision_);
    std::vector<ResidueElem> d(static_cast<std::size_t>(count));
    for (std::size_t j = 0; j < x.digits_.size(); ++j) {
        int pos = e * static_cast<int>(j);
        if (pos >= count) break;
        int m = x.lead_ + static_cast<int>(j);
        d[static_cast<std::size_t>(pos)] = field_.mul(x.digits_[j], field_.pow(unit, m));
    }
    return make_normal(target, lead, std::move(d), lead + count);
}

LaurentElem Tower::descend(const LaurentElem& x) const
{
    FieldTag tag = x.tag();
    if (tag == FieldTag::F) return x;
    int e = ramification(tag);
    auto ceil_div = [e](int a) { return a >= 0 ? (a + e - 1) / e : -((-a) / e); };
    if (x.is_exact_zero()) return zero(FieldTag::F);
    if (x.is_exhausted()) return exhausted(FieldTag::F, ceil_div(x.lead_));
    // pi2^(2m) = (-t)^m, pi4^(4m) = (-zeta t)^m
    ResidueElem unit = tag == FieldTag::E2 ? field_.neg(field_.one()) : field_.neg(field_.zeta());
    int abs = x.abs_precision();
    int lo = ceil_div(x.lead_);
    int hi = ceil_div(abs);  // t-exponents m with e*m < abs
    for (std::size_t j = 0; j < x.digits_.size(); ++j) {
        int pos = x.lead_ + static_cast<int>(j);
        if (pos % e != 0 && !x.digits_[j].is_zero())
            throw DomainError(std::string("element of ") + tag_name(tag) + " does not lie in F");
    }
    std::vector<ResidueElem> d(static_cast<std::size_t>(std::max(hi - lo, 0)));
    for (int m = lo; m < hi; ++m)
        d[static_cast<std::size_t>(m - lo)] = field_.mul(x.digit(e * m), field_.pow(unit, m));
    return make_normal(FieldTag::F, lo, std::move(d), hi);
}

LaurentElem Tower::galois(int k, const LaurentElem& x) const
{
    FieldTag tag = x.tag();
    int e = ramification(tag);
    int kk = ((k % e) + e) % e;
    if (tag == FieldTag::F) {
        if (k != 0) throw DomainError("no non-trivial Galois action on F");
        return x;
    }
    if (kk == 0 || !x.is_normal()) return x;
    ResidueElem root = tag == FieldTag::E2 ? field_.neg(field_.one()) : i4_;
    ResidueElem w = field_.pow(root, kk);
    LaurentElem r = x;
    ResidueElem factor = field_.pow(w, x.lead_);
    for (auto& d : r.digits_) {
        d = field_.mul(d, factor);
        factor = field_.mul(factor, w);
    }
    return r;
}

LaurentElem Tower::norm_to_F(const LaurentElem& x) const
{
    if (x.tag() == FieldTag::F) return x;
    LaurentElem prod = x;
    for (int k = 1; k < ramification(x.tag()); ++k) prod = prod * galois(k, x);
    return descend(prod);
}

LaurentElem Tower::trace_to_F(const LaurentElem& x) const
{
    if (x.tag() == FieldTag::F) return x;
    LaurentElem sum = x;
    for (int k = 1; k < ramification(x.tag()); ++k) sum = sum + galois(k, x);
    return descend(sum);
}

UnitI Tower::eta_F(const LaurentElem& x) const
{
    if (x.tag() != FieldTag::F) throw DomainError("eta_F expects an element of F");
    return eta_residue(field_, x.leading_coeff());
}

bool Tower::norm_unit_image_check(FieldTag tag, std::uint64_t seed, int random_samples) const
{
    if (tag == FieldTag::F) throw DomainError("norm_unit_image_check expects E2 or E4");
    auto value = [&](const LaurentElem& u) {
        UnitI v = eta_F(norm_to_F(u));
        return tag == FieldTag::E2 ? v * v : v;
    };
    for (ResidueElem c : field_.units())
        if (value(constant(tag, c)) != UnitI::one()) return false;

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint32_t> any(0, field_.q() - 1);
    std::uniform_int_distribution<std::uint32_t> nonzero(1, field_.q() - 1);
    for (int s = 0; s < random_samples; ++s) {
        std::vector<ResidueElem> d(static_cast<std::size_t>(precision_));
        d[0] = ResidueElem(nonzero(rng));
        for (std::size_t j = 1; j < d.size() && j < 12; ++j) d[j] = ResidueElem(any(rng));
        if (value(from_digits(tag, 0, d)) != UnitI::one()) return false;
    }
    return true;
}

}  // namespace dzh
