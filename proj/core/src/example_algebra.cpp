#include "dzh/example_algebra.hpp"

namespace dzh {

CrossedHandle<WeylElem> build_example_algebra(const CocycleTable& table)
{
    auto mu = std::make_shared<Cocycle<WeylElem>>();
    mu->name = std::string("mu_T/") + variant_name(table.variant()) + "/seed=" + std::to_string(table.seed());
    const CocycleTable* t = &table;
    mu->value = [t](const WeylElem& a, const WeylElem& b) { return HeckeCoeff(t->mu(a, b)); };

    auto spec = std::make_shared<CrossedProductSpec<WeylElem>>();
    spec->waff = std::make_shared<const CoxeterSystem>(CoxeterSystem::trivial());
    spec->cocycle = std::move(mu);
    spec->act = [](const WeylElem&, int s) { return s; };
    return spec;
}

std::pair<WeylElem, HeckeCoeff> structure_constant(const CrossedHandle<WeylElem>& alg, const WeylElem& u,
                                                   const WeylElem& v)
{
    auto e = crossed_mul(CrossedElem<WeylElem>::basis(alg, u), CrossedElem<WeylElem>::basis(alg, v));
    if (e.terms.size() != 1) throw DomainError("structure_constant: product is not a single basis term");
    const auto& [key, c] = *e.terms.begin();
    return {key.first, c};
}

void dump_structure_constants(const CrossedHandle<WeylElem>& alg, const std::vector<WeylElem>& elements,
                              std::ostream& os)
{
    os << "u,v,uv,re,im\n";
    for (const auto& u : elements) {
        for (const auto& v : elements) {
            auto [uv, c] = structure_constant(alg, u, v);
            os << u.str() << ',' << v.str() << ',' << uv.str() << ',' << c.re() << ',' << c.im() << '\n';
        }
    }
}

}  // namespace dzh
