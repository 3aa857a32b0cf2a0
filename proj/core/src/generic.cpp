#include "dzh/generic.hpp"

#include <algorithm>

#include "dzh/errors.hpp"

namespace dzh {

std::string EigenCoordinate::str() const
{
    const char* b = block == Block::E2Slot1 ? "E2.1" : block == Block::E2Slot2 ? "E2.2" : "E4";
    return std::string(b) + "[" + std::to_string(galois_index) + "]";
}

std::vector<EigenCoordinate> all_eigencoordinates()
{
    using B = EigenCoordinate::Block;
    std::vector<EigenCoordinate> out;
    for (int k = 0; k < 2; ++k) out.push_back({B::E2Slot1, k});
    for (int k = 0; k < 2; ++k) out.push_back({B::E2Slot2, k});
    for (int k = 0; k < 4; ++k) out.push_back({B::E4, k});
    return out;
}

namespace {

using B = EigenCoordinate::Block;

bool is_e2(const EigenCoordinate& c) { return c.block != B::E4; }

// Roots of Res_{E2/F} GL2 x Res_{E4/F} GL1 pair the two slots inside one
// Galois copy of E2; G1 adds every pair inside the E4 block.
bool in_g0(const EigenCoordinate& a, const EigenCoordinate& b)
{
    return is_e2(a) && is_e2(b) && a.block != b.block && a.galois_index == b.galois_index;
}

bool in_g1(const EigenCoordinate& a, const EigenCoordinate& b)
{
    return in_g0(a, b) || (a.block == B::E4 && b.block == B::E4);
}

}  // namespace

std::vector<RootPair> root_pairs(GenericLevel level)
{
    std::vector<RootPair> out;
    auto coords = all_eigencoordinates();
    for (const auto& a : coords) {
        for (const auto& b : coords) {
            if (a == b) continue;
            bool keep = level == GenericLevel::G1minusG0 ? (in_g1(a, b) && !in_g0(a, b)) : !in_g1(a, b);
            if (keep) out.push_back({a, b, level});
        }
    }
    return out;
}

LaurentElem weight(const Tower& tower, const EigenCoordinate& c, Functional level)
{
    if (level == Functional::X0star) {
        if (c.block != B::E4) return tower.zero(FieldTag::E4);
        return tower.galois(c.galois_index, tower.uniformizer(FieldTag::E4).inverse());
    }
    if (c.block == B::E4) return tower.zero(FieldTag::E2);
    return tower.galois(c.galois_index, tower.uniformizer(FieldTag::E2).inverse());
}

LaurentElem pairing_on_coroot(const Tower& tower, const RootPair& r)
{
    Functional f = r.level == GenericLevel::G1minusG0 ? Functional::X0star : Functional::X1star;
    return weight(tower, r.i, f) - weight(tower, r.j, f);
}

GenericityReport check_ge1(const Tower& tower, GenericLevel level)
{
    GenericityReport rep;
    rep.level = level;
    rep.target = level == GenericLevel::G1minusG0 ? Valuation(-1, 4) : Valuation(-1, 2);
    rep.pass = true;
    try {
        for (const auto& r : root_pairs(level)) {
            LaurentElem v = pairing_on_coroot(tower, r);
            Valuation o = v.ord();
            bool ok = o == rep.target;
            rep.pass = rep.pass && ok;
            std::string s = v.str();
            if (std::find(rep.value_set.begin(), rep.value_set.end(), s) == rep.value_set.end())
                rep.value_set.push_back(s);
            rep.entries.push_back({r, std::move(s), o, ok});
        }
    } catch (const std::exception& e) {
        rep.pass = false;
        rep.error = e.what();
    }
    std::sort(rep.value_set.begin(), rep.value_set.end());
    return rep;
}

LaurentElem ge0_witness_value(const Tower& tower, Functional level, int scale_t)
{
    if (level == Functional::X0star) {
        // (0, pi4): projection to the E4 block, times pi4^-1, then trace.
        LaurentElem lie = tower.uniformizer(FieldTag::E4) * tower.t_in(FieldTag::E4).pow(scale_t);
        return tower.trace_to_F(tower.uniformizer(FieldTag::E4).inverse() * lie);
    }
    // (diag(pi2, 0), 0): Lie(det) is the trace of the 2x2 block.
    LaurentElem scale = tower.t_in(FieldTag::E2).pow(scale_t);
    LaurentElem lie_det = tower.uniformizer(FieldTag::E2) * scale + tower.zero(FieldTag::E2);
    return tower.trace_to_F(tower.uniformizer(FieldTag::E2).inverse() * lie_det);
}

Valuation check_ge0_witness(const Tower& tower, Functional level, int scale_t)
{
    return ge0_witness_value(tower, level, scale_t).ord();
}

}  // namespace dzh
