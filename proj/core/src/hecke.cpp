#include "dzh/hecke.hpp"

#include <climits>
#include <random>
#include <stdexcept>

#include "dzh/errors.hpp"

namespace dzh {

namespace {

long long ord_or_inf(const LaurentElem& x) { return x.is_exact_zero() ? LLONG_MAX : x.ord_norm(); }

// Canonical basis (pi^alpha, b; 0, pi^gamma), b reduced mod pi^alpha, of the
// O-lattice spanned by the columns (a1, c1) and (a2, c2).
std::string lattice_key(LaurentElem a1, LaurentElem c1, LaurentElem a2, LaurentElem c2)
{
    if (ord_or_inf(c1) < ord_or_inf(c2)) {
        std::swap(a1, a2);
        std::swap(c1, c2);
    }
    if (c2.is_exact_zero()) throw DomainError("coset key: singular matrix");
    const Tower& tw = c2.tower();
    a1 = a1 - (c1 / c2) * a2;
    int gamma = c2.ord_norm();
    int alpha = a1.ord_norm();
    LaurentElem b = a2 * tw.monomial(FieldTag::E2, tw.residue().one(), gamma) / c2;
    std::string key = std::to_string(alpha) + "," + std::to_string(gamma) + ":";
    if (b.is_normal()) {
        for (int e = b.ord_norm(); e < alpha; ++e) {
            ResidueElem d = b.digit(e);
            if (!d.is_zero()) key += std::to_string(e) + "=" + std::to_string(d.index()) + ",";
        }
    } else if (b.is_exhausted() && b.abs_precision() < alpha) {
        throw PrecisionError("coset key: reduced entry not known to pi^" + std::to_string(alpha));
    }
    return key;
}

std::uint64_t fnv1a(std::uint64_t seed, const std::string& s)
{
    std::uint64_t h = 1469598103934665603ULL ^ seed;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace

HeckeModel::HeckeModel(const Tower& tw, SubgroupVariant v, Window win) : tw_(&tw), v_(v), win_(win) {}

void HeckeModel::check_window(const WeylElem& w) const
{
    if (!win_.contains(w)) throw DomainError("Weyl element " + w.str() + " lies outside the verification window");
}

WeylElem HeckeModel::classify_unbounded(const GroupElem& g) const
{
    if (!g.in_G0()) throw DomainError("classify: element is not in G0(F)");
    BruhatReduction r = bruhat_reduce(g);
    return classify_reduced(g, r);
}

WeylElem HeckeModel::classify_reduced(const GroupElem& g, const BruhatReduction& r) const
{
    const Mat2& mm = r.monomial.g2();
    MonomialData md;
    md.antidiagonal = mm.a.is_exact_zero();
    md.row1_exp = md.antidiagonal ? mm.b.ord_norm() : mm.a.ord_norm();
    md.row2_exp = md.antidiagonal ? mm.c.ord_norm() : mm.d.ord_norm();
    md.e4_exp = g.g4().ord_norm();
    auto w = weyl_from_shape(md);
    if (!w) throw DomainError("classify: monomial part " + md.str() + " is not the shape of any lift");
    if (v_ == SubgroupVariant::Parahoric && epsilon_character(g) == UnitI::minus_one()) return *w * WeylElem::epsilon();
    return *w;
}

WeylElem HeckeModel::classify(const GroupElem& g) const
{
    WeylElem w = classify_unbounded(g);
    check_window(w);
    return w;
}

std::string HeckeModel::coset_key(const GroupElem& h) const
{
    const Mat2& m = h.g2();
    LaurentElem pi = tw_->uniformizer(FieldTag::E2);
    std::string key = lattice_key(m.a, m.c, m.b, m.d) + "|" + lattice_key(m.a, m.c, pi * m.b, pi * m.d) + "|" +
                      std::to_string(h.g4().ord_norm());
    if (v_ == SubgroupVariant::Parahoric) key += epsilon_character(h) == UnitI::one() ? "|+" : "|-";
    return key;
}

const std::vector<GroupElem>& HeckeModel::coset_reps(const WeylElem& w) const
{
    if (plength(w) > win_.max_word) check_window(w);
    auto it = reps_cache_.find(w.word());
    if (it != reps_cache_.end()) return it->second;

    const Tower& tw = *tw_;
    auto elements = tw.residue().elements();
    std::vector<GroupElem> reps{identity(tw)};
    GroupElem conj = identity(tw);
    for (Letter l : w.word()) {
        GroupElem conj_inv = conj.inverse();
        std::vector<GroupElem> trans;
        for (ResidueElem c : elements) {
            GroupElem t = l == Letter::S ? upper_unipotent(tw.constant(FieldTag::E2, c))
                                         : lower_unipotent(tw.monomial(FieldTag::E2, c, 1));
            trans.push_back(conj * t * conj_inv);
        }
        std::vector<GroupElem> next;
        next.reserve(reps.size() * trans.size());
        for (const auto& r : reps)
            for (const auto& t : trans) next.push_back(r * t);
        reps = std::move(next);
        conj = conj * (l == Letter::S ? s_tilde(tw) : s_prime_tilde(tw));
    }

    GroupElem wl = lift(tw, WeylElem(w.word()));
    std::set<std::string> keys;
    for (const auto& r : reps) {
        if (!in_K0(r, v_)) throw DomainError("coset_reps: representative outside K0 for " + w.str());
        if (!keys.insert(coset_key(r * wl)).second)
            throw DomainError("coset_reps: duplicate coset in transversal for " + w.str());
    }
    return reps_cache_.emplace(w.word(), std::move(reps)).first->second;
}

HeckeCoeff HeckeModel::phi(const HeckeBasisFn& f, const GroupElem& g) const
{
    if (!g.in_G0()) throw DomainError("phi: element is not in G0(F)");
    return phi_in_G0(f, g);
}

HeckeCoeff HeckeModel::phi_in_G0(const HeckeBasisFn& f, const GroupElem& g) const
{
    WeylElem target = f.w.for_variant(v_);
    BruhatReduction r = bruhat_reduce(g);
    WeylElem w = classify_reduced(g, r);
    if (w != target) return 0;
    // r.left and r.right are unipotent, so rho0 is trivial on them.
    auto tau = as_torus(lift(*tw_, w).inverse() * r.monomial);
    if (!tau) throw std::logic_error("phi: monomial part does not match the lift");
    return f.scale * HeckeCoeff(rho_M0(*tau, v_));
}

HeckeCoeff HeckeModel::convolve_at(const HeckeBasisFn& f1, const HeckeBasisFn& f2, const GroupElem& g) const
{
    WeylElem w1 = f1.w.for_variant(v_);
    if (!g.in_G0()) throw DomainError("convolve_at: element is not in G0(F)");
    GroupElem l1 = lift(*tw_, w1);
    HeckeCoeff sum;
    for (const auto& r : coset_reps(w1)) {
        GroupElem h = r * l1;
        HeckeCoeff a = phi_in_G0(f1, h);
        if (a.is_zero()) continue;
        sum += a * phi_in_G0(f2, h.inverse() * g);
    }
    return sum;
}

DoubleCosetSet HeckeModel::double_coset_product(const WeylElem& w1, const WeylElem& w2) const
{
    GroupElem l1 = lift(*tw_, w1.for_variant(v_));
    GroupElem l2 = lift(*tw_, w2.for_variant(v_));
    DoubleCosetSet out;
    // lifts and K0 representatives lie in G0(F), so the products do too
    for (const auto& r : coset_reps(w2)) {
        GroupElem g = l1 * r * l2;
        out.insert(classify_reduced(g, bruhat_reduce(g)));
    }
    return out;
}

// ---------------------------------------------------------------------------

CocycleTable::CocycleTable(const Tower& tw, SubgroupVariant v, std::uint64_t perturbation_seed)
    : tw_(&tw), v_(v), seed_(perturbation_seed)
{
}

GroupElem CocycleTable::lift(const WeylElem& w) const
{
    WeylElem wv = w.for_variant(v_);
    GroupElem g = dzh::lift(*tw_, wv);
    if (seed_ == 0 || wv.is_identity()) return g;
    std::mt19937_64 rng(fnv1a(seed_, wv.str()));
    return g * random_KM0(*tw_, v_, rng).embed();
}

TorusElem CocycleTable::discrepancy(const WeylElem& w1, const WeylElem& w2) const
{
    GroupElem d = lift(w1 * w2).inverse() * lift(w1) * lift(w2);
    auto t = as_torus(d);
    if (!t || !in_KM0(*t, v_))
        throw DomainError("lift discrepancy for (" + w1.str() + ", " + w2.str() + ") is not in K_M0");
    return *t;
}

UnitI CocycleTable::mu(const WeylElem& w1, const WeylElem& w2) const { return rho_M0(discrepancy(w1, w2), v_); }

UnitI CocycleTable::beta(const WeylElem& u, const WeylElem& v) const
{
    WeylElem a = u.for_variant(v_), b = v.for_variant(v_);
    if (a * b != b * a) throw DomainError("beta: " + u.str() + " and " + v.str() + " do not commute");
    return mu(a, b) * mu(b, a).inverse();
}

UnitI CocycleTable::beta_commutator(const WeylElem& u, const WeylElem& v) const
{
    WeylElem a = u.for_variant(v_), b = v.for_variant(v_);
    if (a * b != b * a) throw DomainError("beta: " + u.str() + " and " + v.str() + " do not commute");
    auto t = as_torus(commutator(lift(a), lift(b)));
    if (!t) throw DomainError("beta: commutator of lifts is not in the torus");
    return rho_M0(*t, v_);
}

NontrivialityCertificate nontriviality_certificate(const CocycleTable& t, const Window& win)
{
    NontrivialityCertificate cert;
    std::vector<std::pair<WeylElem, WeylElem>> pairs{{WeylElem::s(), WeylElem::z()}};
    auto elems = window_elements(win, t.variant());
    for (const auto& a : elems)
        for (const auto& b : elems)
            if (a * b == b * a) pairs.emplace_back(a, b);
    for (const auto& [a, b] : pairs) {
        UnitI be = t.beta(a, b);
        if (be == UnitI::one()) continue;
        cert.found = true;
        cert.u = a;
        cert.v = b;
        cert.beta = be;
        cert.rho_does_not_extend = t.beta_commutator(a, b) != UnitI::one();
        cert.justification = "beta(" + a.str() + ", " + b.str() + ") = " + be.str() +
                             " on a commuting pair; beta is unchanged by coboundaries, so the class of mu is "
                             "non-trivial, and rho_M0 is non-trivial on the commutator of the lifts, so it "
                             "does not extend to N(rho_M0)";
        return cert;
    }
    cert.justification = "trivial-so-far: no commuting pair in the window has beta != 1";
    return cert;
}

OmegaCheckResult omega_check(const HeckeModel& m)
{
    OmegaCheckResult res;
    const Tower& tw = m.tower();
    SubgroupVariant v = m.variant();
    std::vector<WeylElem> elems;
    for (const auto& w : window_elements(Window{2, 1}, v)) elems.push_back(w);

    for (const auto& w1 : elems) {
        for (const auto& w2 : elems) {
            ++res.pairs_checked;
            WeylElem prod = w1 * w2;
            DoubleCosetSet dcp = m.double_coset_product(w1, w2);
            std::string tag = "(" + w1.str() + ", " + w2.str() + ")";
            if (!dcp.count(prod)) res.failures.push_back(tag + ": product coset missing");
            for (const auto& x : dcp) {
                HeckeCoeff val = m.convolve_at(w1, w2, lift(tw, x));
                if (x == prod) {
                    if (val.is_zero()) res.failures.push_back(tag + ": product vanishes at " + x.str());
                } else {
                    ++res.cross_terms_checked;
                    if (!val.is_zero()) res.failures.push_back(tag + ": cross term " + val.str() + " at " + x.str());
                }
            }
        }
    }
    WeylElem s = WeylElem::s(), sp = WeylElem::s_prime();
    res.s_s_vanishes = m.convolve_at(s, s, s_tilde(tw)).is_zero();
    res.sp_sp_vanishes = m.convolve_at(sp, sp, s_prime_tilde(tw)).is_zero();
    res.s_s_identity_is_q = m.convolve_at(s, s, identity(tw)) == HeckeCoeff(tw.residue().q());
    res.pass = res.failures.empty() && res.s_s_vanishes && res.sp_sp_vanishes && res.s_s_identity_is_q;
    return res;
}

AdditivePairsResult additive_pairs_check(const HeckeModel& m, const std::vector<WeylElem>& central)
{
    AdditivePairsResult res;
    const Window& win = m.window();
    SubgroupVariant v = m.variant();
    std::set<std::pair<WeylElem, WeylElem>> seen;
    for (const auto& a : window_elements(Window{win.max_word, 0}, SubgroupVariant::Stabilizer)) {
        for (const auto& b : window_elements(Window{win.max_word, 0}, SubgroupVariant::Stabilizer)) {
            for (const auto& c1 : central) {
                for (const auto& c2 : central) {
                    WeylElem w1 = (a * c1).for_variant(v), w2 = (b * c2).for_variant(v);
                    WeylElem prod = w1 * w2;
                    if (!win.contains(w1) || !win.contains(w2) || !win.contains(prod)) continue;
                    if (plength(w1) + plength(w2) != plength(prod)) continue;
                    if (!seen.emplace(w1, w2).second) continue;
                    ++res.pairs_checked;
                    DoubleCosetSet dcp = m.double_coset_product(w1, w2);
                    if (dcp != DoubleCosetSet{prod}) {
                        std::string got;
                        for (const auto& x : dcp) got += x.str() + " ";
                        res.failures.push_back("(" + w1.str() + ", " + w2.str() + ") -> " + got);
                    }
                }
            }
        }
    }
    res.pass = res.failures.empty() && res.pairs_checked > 0;
    return res;
}

NegativeControlResult negative_control(const Tower& tw, SubgroupVariant v, std::uint64_t seed, int families)
{
    NegativeControlResult res;
    WeylElem s = WeylElem::s(), z = WeylElem::z();
    for (int i = 0; i < families; ++i) {
        std::uint64_t fs = seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(i) + 1;
        if (fs == 0) fs = 1;
        CocycleTable t(tw, v, fs);
        ++res.families;
        GroupElem ls = t.lift(s), lz = t.lift(z), lsz = t.lift(s * z);
        if (lsz.approx_equal(ls * lz) && lsz.approx_equal(lz * ls)) ++res.multiplicative_families;
        if (t.mu(s, z) == UnitI::one() && t.mu(z, s) == UnitI::one()) ++res.mu_trivial_families;
    }
    res.pass = res.families > 0 && res.multiplicative_families == 0 && res.mu_trivial_families == 0;
    return res;
}

}  // namespace dzh
