#pragma once

#include <functional>
#include <map>
#include <memory>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "dzh/errors.hpp"
#include "dzh/gaussian.hpp"

namespace dzh {

using Word = std::vector<int>;

// Coxeter system on generators 0..rank-1; m(i, j) = 0 encodes infinity.
class CoxeterSystem {
public:
    explicit CoxeterSystem(std::vector<std::vector<int>> m);

    static CoxeterSystem trivial() { return CoxeterSystem({}); }
    // Infinite dihedral group.
    static CoxeterSystem affine_a1() { return CoxeterSystem({{1, 0}, {0, 1}}); }
    // Symmetric group S_{n+1}.
    static CoxeterSystem type_a(int n);

    int rank() const { return static_cast<int>(m_.size()); }
    int m(int i, int j) const { return m_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }

    // Lexicographically least reduced word for the element (braid moves
    // plus deletion of ss, which suffices by Tits' word theorem).
    Word normal_form(const Word& w) const;
    bool is_normal(const Word& w) const { return normal_form(w) == w; }
    bool is_reduced(const Word& w) const { return normal_form(w).size() == w.size(); }
    int length(const Word& w) const { return static_cast<int>(normal_form(w).size()); }

    Word multiply(const Word& a, const Word& b) const;
    Word inverse(const Word& w) const;

    // All elements of length <= n, in normal form.
    std::vector<Word> elements_up_to(int n) const;

private:
    std::vector<std::vector<int>> m_;
};

std::string word_str(const Word& w);

// sum c_w T_w over normal-form words.
struct GenericHeckeElem {
    std::map<Word, HeckeCoeff> terms;

    static GenericHeckeElem basis(const Word& w, HeckeCoeff c = 1);
    GenericHeckeElem& operator+=(const GenericHeckeElem& o);
    bool operator==(const GenericHeckeElem& o) const { return terms == o.terms; }
    std::string str() const;
};

// T_s T_w = T_sw when l(sw) > l(w), else q_s T_sw + (q_s - 1) T_w.
// params[s] is q_s; it must be constant on conjugate generators.
GenericHeckeElem hecke_mul(const CoxeterSystem& sys, const GenericHeckeElem& a, const GenericHeckeElem& b,
                           const std::vector<HeckeCoeff>& params);

// ---------------------------------------------------------------------------
// Twisted group algebras C[G, mu]

template <class G>
struct Cocycle {
    std::string name;
    std::function<HeckeCoeff(const G&, const G&)> value;
};

template <class G>
using CocycleHandle = std::shared_ptr<const Cocycle<G>>;

template <class G>
struct TwistedElem {
    CocycleHandle<G> cocycle;
    std::map<G, HeckeCoeff> terms;

    static TwistedElem basis(CocycleHandle<G> mu, const G& g, HeckeCoeff c = 1)
    {
        TwistedElem e{std::move(mu), {}};
        if (!c.is_zero()) e.terms.emplace(g, std::move(c));
        return e;
    }

    TwistedElem& operator+=(const TwistedElem& o)
    {
        if (cocycle != o.cocycle) throw DomainError("twisted algebra: cocycle handle mismatch");
        for (const auto& [g, c] : o.terms) add_term(terms, g, c);
        return *this;
    }

    bool operator==(const TwistedElem& o) const { return cocycle == o.cocycle && terms == o.terms; }

    template <class K>
    static void add_term(std::map<K, HeckeCoeff>& m, const K& k, const HeckeCoeff& c)
    {
        if (c.is_zero()) return;
        auto [it, fresh] = m.emplace(k, c);
        if (fresh) return;
        it->second += c;
        if (it->second.is_zero()) m.erase(it);
    }
};

// e_u e_v = mu(u, v) e_uv, extended bilinearly.
template <class G>
TwistedElem<G> twisted_mul(const TwistedElem<G>& a, const TwistedElem<G>& b)
{
    if (a.cocycle != b.cocycle) throw DomainError("twisted algebra: cocycle handle mismatch");
    TwistedElem<G> out{a.cocycle, {}};
    for (const auto& [u, cu] : a.terms)
        for (const auto& [v, cv] : b.terms)
            TwistedElem<G>::add_term(out.terms, G(u * v), a.cocycle->value(u, v) * cu * cv);
    return out;
}

// ---------------------------------------------------------------------------
// Crossed products C[Omega, mu] x| H(W_aff, q)

// `act(omega, s)` is the right action s -> omega^-1 s omega on generators.
template <class G>
struct CrossedProductSpec {
    std::shared_ptr<const CoxeterSystem> waff;
    std::vector<HeckeCoeff> params;
    CocycleHandle<G> cocycle;
    std::function<int(const G&, int)> act;
};

template <class G>
using CrossedHandle = std::shared_ptr<const CrossedProductSpec<G>>;

template <class G>
struct CrossedElem {
    CrossedHandle<G> spec;
    std::map<std::pair<G, Word>, HeckeCoeff> terms;

    static CrossedElem basis(CrossedHandle<G> h, const G& omega, const Word& w = {}, HeckeCoeff c = 1)
    {
        CrossedElem e{std::move(h), {}};
        if (!c.is_zero()) e.terms.emplace(std::make_pair(omega, e.spec->waff->normal_form(w)), std::move(c));
        return e;
    }

    bool operator==(const CrossedElem& o) const { return spec == o.spec && terms == o.terms; }
};

// omega acts on words letterwise; the image is renormalized.
template <class G>
Word act_on_word(const CrossedProductSpec<G>& spec, const G& omega, const Word& w)
{
    const CoxeterSystem& sys = *spec.waff;
    Word out;
    out.reserve(w.size());
    for (int s : w) {
        int t = spec.act(omega, s);
        if (t < 0 || t >= sys.rank()) throw DomainError("crossed product: action inconsistency (generator out of range)");
        out.push_back(t);
    }
    return sys.normal_form(out);
}

// The action of omega must permute generators preserving m and q.
template <class G>
void check_automorphism(const CrossedProductSpec<G>& spec, const G& omega)
{
    const CoxeterSystem& sys = *spec.waff;
    std::vector<int> image(static_cast<std::size_t>(sys.rank()));
    std::vector<bool> hit(static_cast<std::size_t>(sys.rank()), false);
    for (int s = 0; s < sys.rank(); ++s) {
        int t = spec.act(omega, s);
        if (t < 0 || t >= sys.rank() || hit[static_cast<std::size_t>(t)])
            throw DomainError("crossed product: action inconsistency (not a permutation)");
        hit[static_cast<std::size_t>(t)] = true;
        image[static_cast<std::size_t>(s)] = t;
        if (!(spec.params[static_cast<std::size_t>(t)] == spec.params[static_cast<std::size_t>(s)]))
            throw DomainError("crossed product: action inconsistency (parameters not preserved)");
    }
    for (int s = 0; s < sys.rank(); ++s)
        for (int t = 0; t < sys.rank(); ++t)
            if (sys.m(image[static_cast<std::size_t>(s)], image[static_cast<std::size_t>(t)]) != sys.m(s, t))
                throw DomainError("crossed product: action inconsistency (Coxeter matrix not preserved)");
}

// Right-action law act(ab, s) = act(b, act(a, s)) on the given elements.
template <class G>
void validate_action(const CrossedProductSpec<G>& spec, const std::vector<G>& elements)
{
    for (const auto& a : elements) {
        check_automorphism(spec, a);
        for (const auto& b : elements)
            for (int s = 0; s < spec.waff->rank(); ++s)
                if (spec.act(G(a * b), s) != spec.act(b, spec.act(a, s)))
                    throw DomainError("crossed product: action inconsistency (not a right action)");
    }
}

// (e_w T_x)(e_w' T_x') = mu(w, w') e_ww' T_{w'^-1 x w'} T_x'.
template <class G>
CrossedElem<G> crossed_mul(const CrossedElem<G>& a, const CrossedElem<G>& b)
{
    if (a.spec != b.spec) throw DomainError("crossed product: algebra handle mismatch");
    const CrossedProductSpec<G>& spec = *a.spec;
    CrossedElem<G> out{a.spec, {}};
    for (const auto& [k1, c1] : a.terms) {
        for (const auto& [k2, c2] : b.terms) {
            const auto& [w1, x1] = k1;
            const auto& [w2, x2] = k2;
            check_automorphism(spec, w2);
            HeckeCoeff scalar = spec.cocycle->value(w1, w2) * c1 * c2;
            GenericHeckeElem h = hecke_mul(*spec.waff, GenericHeckeElem::basis(act_on_word(spec, w2, x1)),
                                           GenericHeckeElem::basis(x2), spec.params);
            G w = w1 * w2;
            for (const auto& [x, c] : h.terms)
                TwistedElem<G>::add_term(out.terms, std::make_pair(w, x), scalar * c);
        }
    }
    return out;
}

}  // namespace dzh
