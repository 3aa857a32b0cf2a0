#include "dzh/groupmodel.hpp"

#include <algorithm>
#include <climits>
#include <stdexcept>

#include "dzh/errors.hpp"

namespace dzh {

const char* variant_name(SubgroupVariant v)
{
    return v == SubgroupVariant::Stabilizer ? "stabilizer" : "parahoric";
}

Mat2 Mat2::operator*(const Mat2& o) const
{
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

Mat2 Mat2::inverse() const
{
    LaurentElem di = det().inverse();
    return {d * di, -(b * di), -(c * di), a * di};
}

bool Mat2::approx_equal(const Mat2& o) const
{
    return a.approx_equal(o.a) && b.approx_equal(o.b) && c.approx_equal(o.c) && d.approx_equal(o.d);
}

GroupElem::GroupElem(Mat2 g2, LaurentElem g4) : g2_(std::move(g2)), g4_(std::move(g4))
{
    for (const LaurentElem* e : {&g2_.a, &g2_.b, &g2_.c, &g2_.d})
        if (e->tag() != FieldTag::E2) throw DomainError("GL2 block entries must lie in E2");
    if (g4_.tag() != FieldTag::E4) throw DomainError("GL1 block must lie in E4");
}

GroupElem GroupElem::pow(long long n) const
{
    if (n < 0) return inverse().pow(-n);
    GroupElem result = identity(tower());
    GroupElem base = *this;
    while (n > 0) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return result;
}

LaurentElem GroupElem::det_F() const
{
    const Tower& tw = tower();
    return tw.norm_to_F(g2_.det()) * tw.norm_to_F(g4_);
}

std::string GroupElem::str() const
{
    return "((" + g2_.a.str() + ", " + g2_.b.str() + "; " + g2_.c.str() + ", " + g2_.d.str() + "), " + g4_.str() + ")";
}

GroupElem TorusElem::embed() const
{
    const Tower& tw = x.tower();
    return {Mat2{x, tw.zero(FieldTag::E2), tw.zero(FieldTag::E2), y}, z};
}

std::string TorusElem::str() const { return "(" + x.str() + ", " + y.str() + ", " + z.str() + ")"; }

GroupElem commutator(const GroupElem& a, const GroupElem& b) { return a * b * a.inverse() * b.inverse(); }

std::optional<TorusElem> as_torus(const GroupElem& g)
{
    if (g.g2().b.is_normal() || g.g2().c.is_normal()) return std::nullopt;
    return TorusElem{g.g2().a, g.g2().d, g.g4()};
}

GroupElem identity(const Tower& tw)
{
    auto one = tw.one(FieldTag::E2);
    auto zero = tw.zero(FieldTag::E2);
    return {Mat2{one, zero, zero, one}, tw.one(FieldTag::E4)};
}

GroupElem s_tilde(const Tower& tw)
{
    auto one = tw.one(FieldTag::E2);
    auto zero = tw.zero(FieldTag::E2);
    return {Mat2{zero, one, -one, zero}, tw.one(FieldTag::E4)};
}

GroupElem s_prime_tilde(const Tower& tw)
{
    auto pi = tw.uniformizer(FieldTag::E2);
    auto zero = tw.zero(FieldTag::E2);
    return {Mat2{zero, pi.inverse(), -pi, zero}, tw.one(FieldTag::E4)};
}

TorusElem z_tilde(const Tower& tw)
{
    auto pi = tw.uniformizer(FieldTag::E2);
    return {tw.constant(FieldTag::E2, tw.residue().zeta()) * pi, pi, tw.uniformizer(FieldTag::E4).pow(-2)};
}

TorusElem epsilon_tilde(const Tower& tw)
{
    return {-tw.one(FieldTag::E2), tw.one(FieldTag::E2), tw.one(FieldTag::E4)};
}

GroupElem upper_unipotent(const LaurentElem& x)
{
    const Tower& tw = x.tower();
    auto one = tw.one(FieldTag::E2);
    return {Mat2{one, x, tw.zero(FieldTag::E2), one}, tw.one(FieldTag::E4)};
}

GroupElem lower_unipotent(const LaurentElem& c)
{
    const Tower& tw = c.tower();
    auto one = tw.one(FieldTag::E2);
    return {Mat2{one, tw.zero(FieldTag::E2), c, one}, tw.one(FieldTag::E4)};
}

TorusElem torus(const LaurentElem& x, const LaurentElem& y, const LaurentElem& z)
{
    if (x.tag() != FieldTag::E2 || y.tag() != FieldTag::E2 || z.tag() != FieldTag::E4)
        throw DomainError("torus entries must lie in E2, E2, E4");
    return {x, y, z};
}

bool in_iwahori(const GroupElem& g)
{
    const Mat2& m = g.g2();
    return m.a.is_unit() && m.d.is_unit() && m.b.is_integral() && m.c.in_maximal_ideal() && g.g4().is_unit();
}

ResidueElem residue_defect(const GroupElem& g)
{
    const ResidueField& f = g.tower().residue();
    ResidueElem r4 = g.g4().residue();
    return f.mul(g.g2().det().residue(), f.mul(r4, r4));
}

bool in_K0(const GroupElem& g, SubgroupVariant v)
{
    if (!in_iwahori(g) || !g.in_G0()) return false;
    if (v == SubgroupVariant::Parahoric) return residue_defect(g) == g.tower().residue().one();
    return true;
}

bool in_KM0(const TorusElem& tt, SubgroupVariant v)
{
    const Tower& tw = tt.x.tower();
    if (!tt.x.is_unit() || !tt.y.is_unit() || !tt.z.is_unit()) return false;
    LaurentElem n = tw.norm_to_F(tt.x * tt.y) * tw.norm_to_F(tt.z);
    if (!n.approx_equal(tw.one(FieldTag::F))) return false;
    if (v == SubgroupVariant::Parahoric) {
        const ResidueField& f = tw.residue();
        ResidueElem rz = tt.z.residue();
        return f.mul(f.mul(tt.x.residue(), tt.y.residue()), f.mul(rz, rz)) == f.one();
    }
    return true;
}

UnitI rho_M0(const TorusElem& tt, SubgroupVariant v)
{
    if (!in_KM0(tt, v)) throw DomainError("rho_M0: argument is not in K_M0");
    const Tower& tw = tt.y.tower();
    return tw.eta_F(tw.norm_to_F(tt.y));
}

UnitI rho0(const GroupElem& g, SubgroupVariant v)
{
    if (!in_K0(g, v)) throw DomainError("rho0: argument is not in K0");
    const Tower& tw = g.tower();
    return tw.eta_F(tw.norm_to_F(g.g2().d));
}

UnitI epsilon_character(const GroupElem& g)
{
    const Tower& tw = g.tower();
    const ResidueField& f = tw.residue();
    int n3 = g.g4().ord_norm();
    if (n3 % 2 != 0) throw DomainError("epsilon_character: odd E4 valuation, element not in G0");
    ResidueElem a4 = g.g4().leading_coeff();
    ResidueElem val = f.mul(g.g2().det().leading_coeff(), f.mul(f.mul(a4, a4), f.zeta_pow(n3 / 2)));
    if (val == f.one()) return UnitI::one();
    if (val == f.neg(f.one())) return UnitI::minus_one();
    throw DomainError("epsilon_character: element not in G0");
}

GroupElem MonomialData::matrix(const Tower& tw) const
{
    auto zero = tw.zero(FieldTag::E2);
    auto p1 = tw.monomial(FieldTag::E2, tw.residue().one(), row1_exp);
    auto p2 = tw.monomial(FieldTag::E2, tw.residue().one(), row2_exp);
    auto g4 = tw.monomial(FieldTag::E4, tw.residue().one(), e4_exp);
    if (antidiagonal) return {Mat2{zero, p1, -p2, zero}, g4};
    return {Mat2{p1, zero, zero, p2}, g4};
}

std::string MonomialData::str() const
{
    std::string s = antidiagonal ? "anti(" : "diag(";
    return s + std::to_string(row1_exp) + ", " + std::to_string(row2_exp) + "; " + std::to_string(e4_exp) + ")";
}

namespace {

constexpr long long kInf = LLONG_MAX;

// Weight 2*ord + offset; exact zero is +inf. For an exhausted entry only a
// lower bound is known.
struct Weight {
    long long w;
    bool known;
};

Weight weigh(const LaurentElem& e, int offset)
{
    if (e.is_exact_zero()) return {kInf, true};
    if (e.is_exhausted()) return {2LL * e.abs_precision() + offset, false};
    return {2LL * e.ord_norm() + offset, true};
}

}  // namespace

BruhatReduction bruhat_reduce(const GroupElem& g)
{
    const Tower& tw = g.tower();
    const Mat2& m = g.g2();
    auto zero = tw.zero(FieldTag::E2);
    auto one = tw.one(FieldTag::E2);
    auto e4one = tw.one(FieldTag::E4);

    // Entry weights for the Iwahori I2: b sits half a step up, c half a step
    // down. Parities keep diagonal and off-diagonal weights apart.
    Weight w[4] = {weigh(m.a, 0), weigh(m.b, 1), weigh(m.c, -1), weigh(m.d, 0)};
    int pivot = -1;
    for (int i : {0, 3, 1, 2}) {
        if (!w[i].known || w[i].w == kInf) continue;
        if (pivot < 0 || w[i].w < w[pivot].w) pivot = i;
    }
    if (pivot < 0) throw PrecisionError("bruhat_reduce: matrix is indistinguishable from zero");
    for (const auto& x : w)
        if (!x.known && x.w < w[pivot].w)
            throw PrecisionError("bruhat_reduce: pivot undecidable at this precision");

    auto mk = [&](LaurentElem a, LaurentElem b, LaurentElem c, LaurentElem d) {
        return GroupElem(Mat2{std::move(a), std::move(b), std::move(c), std::move(d)}, e4one);
    };
    switch (pivot) {
    case 0: {
        LaurentElem cl = m.c / m.a, br = m.b / m.a;
        return {mk(one, zero, cl, one), GroupElem(Mat2{m.a, zero, zero, m.d - cl * m.b}, g.g4()),
                mk(one, br, zero, one)};
    }
    case 3: {
        LaurentElem bl = m.b / m.d, cr = m.c / m.d;
        return {mk(one, bl, zero, one), GroupElem(Mat2{m.a - bl * m.c, zero, zero, m.d}, g.g4()),
                mk(one, zero, cr, one)};
    }
    case 1: {
        LaurentElem dl = m.d / m.b, ar = m.a / m.b;
        return {mk(one, zero, dl, one), GroupElem(Mat2{zero, m.b, m.c - ar * m.d, zero}, g.g4()),
                mk(one, zero, ar, one)};
    }
    default: {
        LaurentElem al = m.a / m.c, dr = m.d / m.c;
        return {mk(one, al, zero, one), GroupElem(Mat2{zero, m.b - al * m.d, m.c, zero}, g.g4()),
                mk(one, dr, zero, one)};
    }
    }
}

IwahoriFactorization iwahori_decompose(const GroupElem& g)
{
    const Tower& tw = g.tower();
    BruhatReduction r = bruhat_reduce(g);
    const Mat2& mm = r.monomial.g2();
    MonomialData md;
    md.antidiagonal = mm.a.is_exact_zero();
    md.row1_exp = md.antidiagonal ? mm.b.ord_norm() : mm.a.ord_norm();
    md.row2_exp = md.antidiagonal ? mm.c.ord_norm() : mm.d.ord_norm();
    md.e4_exp = g.g4().ord_norm();
    GroupElem units = r.monomial * md.matrix(tw).inverse();
    return {r.left * units, md, r.right};
}

EpsilonTrivialityResult epsilon_fks_trivial(const Tower& tw, SubgroupVariant v)
{
    const ResidueField& f = tw.residue();
    auto units = f.units();
    // Norms of constants through the tower: residues of N_{E2/F}(c), N_{E4/F}(c).
    std::vector<ResidueElem> n2(f.q()), n4(f.q());
    for (ResidueElem c : units) {
        n2[c.index()] = tw.norm_to_F(tw.constant(FieldTag::E2, c)).residue();
        n4[c.index()] = tw.norm_to_F(tw.constant(FieldTag::E4, c)).residue();
    }
    EpsilonTrivialityResult res;
    res.trivial = true;
    for (ResidueElem x : units) {
        for (ResidueElem y : units) {
            ResidueElem xy = f.mul(x, y);
            for (ResidueElem z : units) {
                ++res.triples_total;
                if (f.mul(n2[xy.index()], n4[z.index()]) != f.one()) continue;
                if (v == SubgroupVariant::Parahoric && f.mul(xy, f.mul(z, z)) != f.one()) continue;
                ++res.triples_checked;
                if (sgn(f, xy) != UnitI::one()) res.trivial = false;
            }
        }
    }
    return res;
}

LaurentElem random_integral(const Tower& tw, FieldTag tag, std::mt19937_64& rng, int terms)
{
    const std::uint32_t q = tw.residue().q();
    std::uniform_int_distribution<std::uint32_t> any(0, q - 1);
    std::vector<ResidueElem> d(static_cast<std::size_t>(tw.precision()));
    bool nonzero = false;
    for (int j = 0; j < terms && j < tw.precision(); ++j) {
        d[static_cast<std::size_t>(j)] = ResidueElem(any(rng));
        nonzero = nonzero || !d[static_cast<std::size_t>(j)].is_zero();
    }
    if (!nonzero) return tw.zero(tag);
    return tw.from_digits(tag, 0, d);
}

LaurentElem random_unit(const Tower& tw, FieldTag tag, std::mt19937_64& rng, int terms)
{
    std::uniform_int_distribution<std::uint32_t> nz(1, tw.residue().q() - 1);
    return tw.constant(tag, ResidueElem(nz(rng))) + tw.uniformizer(tag) * random_integral(tw, tag, rng, terms - 1);
}

TorusElem random_KM0(const Tower& tw, SubgroupVariant v, std::mt19937_64& rng)
{
    const bool stab = v == SubgroupVariant::Stabilizer;
    auto one4 = tw.one(FieldTag::E4);
    std::uniform_int_distribution<int> small(0, 3);
    // Parahoric elements need even uniformizer powers in the Hilbert-90 parts.
    auto hilbert90 = [&](FieldTag tag) {
        int k = small(rng);
        if (!stab) k &= ~1;
        LaurentElem w = random_unit(tw, tag, rng) * tw.uniformizer(tag).pow(k);
        return w / tw.galois(1, w);
    };

    LaurentElem u = random_unit(tw, FieldTag::E2, rng);
    TorusElem t{u, u.inverse(), one4};
    t.x *= hilbert90(FieldTag::E2);
    t.y *= hilbert90(FieldTag::E2);
    t.z *= hilbert90(FieldTag::E4);

    LaurentElem d = random_unit(tw, FieldTag::F, rng);
    LaurentElem c = tw.embed(d.pow(-2), FieldTag::E2);
    if (stab && (small(rng) & 1)) c = -c;
    t.x *= c;
    t.z *= tw.embed(d, FieldTag::E4);
    if (stab) t.z *= tw.constant(FieldTag::E4, tw.residue().pow(tw.i4(), small(rng)));

    if (!in_KM0(t, v)) throw std::logic_error("random_KM0 produced a non-member");
    return t;
}

GroupElem random_K0(const Tower& tw, SubgroupVariant v, std::mt19937_64& rng)
{
    GroupElem t = random_KM0(tw, v, rng).embed();
    GroupElem u1 = upper_unipotent(random_integral(tw, FieldTag::E2, rng));
    GroupElem l1 = lower_unipotent(tw.uniformizer(FieldTag::E2) * random_integral(tw, FieldTag::E2, rng));
    GroupElem u2 = upper_unipotent(random_integral(tw, FieldTag::E2, rng));
    GroupElem g = u1 * t * l1 * u2;
    if (!in_K0(g, v)) throw std::logic_error("random_K0 produced a non-member");
    return g;
}

}  // namespace dzh
