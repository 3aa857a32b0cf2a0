#include "dzh/residue.hpp"

#include <numeric>

#include "dzh/errors.hpp"

namespace dzh {

namespace {

std::uint32_t smallest_prime_factor(std::uint32_t n)
{
    for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d)
        if (n % d == 0) return d;
    return n;
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m)
{
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = r * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return r;
}

}  // namespace

void ResidueField::build(std::uint32_t q)
{
    if (q < 5) throw ConfigError("q must be at least 5, got " + std::to_string(q));
    if (q > (1u << 20)) throw ConfigError("q too large for table-driven residue arithmetic");
    if (q % 2 == 0) throw ConfigError("q must be odd, got " + std::to_string(q));
    if ((q - 1) % 4 != 0) throw ConfigError("4 must divide q-1, got q=" + std::to_string(q));
    std::uint32_t p = smallest_prime_factor(q);
    std::uint32_t rest = q;
    unsigned f = 0;
    while (rest % p == 0) {
        rest /= p;
        ++f;
    }
    if (rest != 1) throw ConfigError("q must be a prime power, got " + std::to_string(q));
    if (f > 2) throw ConfigError("only q = p or p^2 is supported, got q=" + std::to_string(q));

    q_ = q;
    p_ = p;
    degree_ = f;
    if (f == 2) {
        for (std::uint32_t n = 2; n < p; ++n) {
            if (powmod(n, (p - 1) / 2, p) == p - 1) {
                nonresidue_ = n;
                break;
            }
        }
    }
}

ResidueElem ResidueField::from_int(long long n) const
{
    long long r = n % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return ResidueElem(static_cast<std::uint32_t>(r));
}

std::vector<ResidueElem> ResidueField::elements() const
{
    std::vector<ResidueElem> out;
    out.reserve(q_);
    for (std::uint32_t i = 0; i < q_; ++i) out.emplace_back(i);
    return out;
}

std::vector<ResidueElem> ResidueField::units() const
{
    std::vector<ResidueElem> out;
    out.reserve(q_ - 1);
    for (std::uint32_t i = 1; i < q_; ++i) out.emplace_back(i);
    return out;
}

ResidueElem ResidueField::add(ResidueElem a, ResidueElem b) const
{
    if (degree_ == 1) return ResidueElem((a.index() + b.index()) % p_);
    std::uint32_t a0 = a.index() % p_, a1 = a.index() / p_;
    std::uint32_t b0 = b.index() % p_, b1 = b.index() / p_;
    return ResidueElem((a0 + b0) % p_ + ((a1 + b1) % p_) * p_);
}

ResidueElem ResidueField::neg(ResidueElem a) const
{
    if (degree_ == 1) return ResidueElem((p_ - a.index()) % p_);
    std::uint32_t a0 = a.index() % p_, a1 = a.index() / p_;
    return ResidueElem((p_ - a0) % p_ + ((p_ - a1) % p_) * p_);
}

ResidueElem ResidueField::sub(ResidueElem a, ResidueElem b) const { return add(a, neg(b)); }

ResidueElem ResidueField::inv(ResidueElem a) const
{
    if (a.is_zero()) throw DomainError("inverse of zero in the residue field");
    std::uint32_t l = log_[a.index()];
    return exp_[l == 0 ? 0 : q_ - 1 - l];
}

ResidueElem ResidueField::pow(ResidueElem a, long long n) const
{
    if (a.is_zero()) {
        if (n <= 0) throw DomainError("non-positive power of zero in the residue field");
        return zero();
    }
    long long m = q_ - 1;
    long long e = (static_cast<long long>(log_[a.index()]) * (n % m)) % m;
    if (e < 0) e += m;
    return exp_[static_cast<std::size_t>(e)];
}

ResidueElem ResidueField::zeta_pow(long long k) const
{
    long long m = q_ - 1;
    long long e = k % m;
    if (e < 0) e += m;
    return exp_[static_cast<std::size_t>(e)];
}

std::uint32_t ResidueField::log(ResidueElem x) const
{
    if (x.is_zero()) throw DomainError("discrete log of zero");
    return log_[x.index()];
}

std::uint32_t ResidueField::order(ResidueElem x) const
{
    std::uint32_t l = log(x);
    return (q_ - 1) / std::gcd(q_ - 1, l);
}

bool ResidueField::is_square(ResidueElem x) const { return log(x) % 2 == 0; }

std::string ResidueField::str(ResidueElem x) const
{
    if (degree_ == 1) return std::to_string(x.index());
    std::uint32_t a0 = x.index() % p_, a1 = x.index() / p_;
    if (a1 == 0) return std::to_string(a0);
    std::string s = (a1 == 1 ? "" : std::to_string(a1)) + "a";
    return a0 == 0 ? s : std::to_string(a0) + "+" + s;
}

namespace {

// Multiplication straight from the representation, used only while the log
// tables are being built.
std::uint32_t raw_mul(std::uint32_t a, std::uint32_t b, std::uint32_t p, unsigned degree, std::uint32_t nr)
{
    if (degree == 1) return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
    std::uint64_t a0 = a % p, a1 = a / p, b0 = b % p, b1 = b / p;
    std::uint64_t c0 = (a0 * b0 + a1 * b1 % p * nr) % p;
    std::uint64_t c1 = (a0 * b1 + a1 * b0) % p;
    return static_cast<std::uint32_t>(c0 + c1 * p);
}

}  // namespace

ResidueField ResidueField::make(std::uint32_t q)
{
    ResidueField f;
    f.build(q);
    // Smallest element of multiplicative order q-1.
    for (std::uint32_t g = 2; g < q; ++g) {
        std::uint32_t x = g;
        std::uint32_t ord = 1;
        while (x != 1) {
            x = raw_mul(x, g, f.p_, f.degree_, f.nonresidue_);
            ++ord;
        }
        if (ord == q - 1) return make(q, ResidueElem(g));
    }
    throw ConfigError("no primitive root found");  // unreachable for a field
}

ResidueField ResidueField::make(std::uint32_t q, ResidueElem zeta)
{
    ResidueField f;
    f.build(q);
    if (zeta.index() == 0 || zeta.index() >= q) throw ConfigError("zeta must be a nonzero field element");
    f.log_.assign(q, 0);
    f.exp_.assign(q - 1, ResidueElem(0));
    std::vector<bool> seen(q, false);
    std::uint32_t x = 1;
    for (std::uint32_t k = 0; k < q - 1; ++k) {
        if (seen[x]) throw ConfigError("zeta is not a primitive root of F_" + std::to_string(q));
        seen[x] = true;
        f.exp_[k] = ResidueElem(x);
        f.log_[x] = k;
        x = raw_mul(x, zeta.index(), f.p_, f.degree_, f.nonresidue_);
    }
    if (x != 1) throw ConfigError("zeta is not a primitive root of F_" + std::to_string(q));
    f.zeta_ = zeta;
    return f;
}

ResidueElem smallest_generator(const ResidueField& f)
{
    for (ResidueElem x : f.units())
        if (f.order(x) == f.q() - 1) return x;
    throw DomainError("no generator");
}

UnitI eta_residue(const ResidueField& f, ResidueElem x)
{
    if (x.is_zero()) throw DomainError("eta is undefined at 0");
    return UnitI(static_cast<int>(f.log(x) % 4));
}

UnitI sgn(const ResidueField& f, ResidueElem x)
{
    if (x.is_zero()) throw DomainError("sgn is undefined at 0");
    return f.is_square(x) ? UnitI::one() : UnitI::minus_one();
}

HeckeCoeff char_sum_eta_squares(const ResidueField& f)
{
    HeckeCoeff sum;
    for (ResidueElem x : f.units()) sum += HeckeCoeff(eta_residue(f, f.mul(x, x)));
    return sum;
}

}  // namespace dzh
