#include "report.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <random>
#include <sstream>

#include "dzh/algebra.hpp"
#include "dzh/example_algebra.hpp"
#include "dzh/generic.hpp"
#include "dzh/hecke.hpp"

namespace dzh::report {

using nlohmann::json;

namespace {

constexpr SubgroupVariant kVariants[] = {SubgroupVariant::Stabilizer, SubgroupVariant::Parahoric};

std::uint64_t fnv1a(std::uint64_t seed, const std::string& s)
{
    std::uint64_t h = 1469598103934665603ULL ^ seed;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

struct Outcome {
    std::string got;
    bool pass = false;
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string join(const std::vector<std::string>& parts, const std::string& sep = " ")
{
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
    return out;
}

std::string set_str(const DoubleCosetSet& s)
{
    std::vector<std::string> parts;
    for (const auto& w : s) parts.push_back(w.str());
    return "{" + join(parts, ", ") + "}";
}

std::string hnf_str(const IntMatrix& m)
{
    std::vector<std::string> rows;
    for (const auto& r : m) {
        std::vector<std::string> xs;
        for (long long x : r) xs.push_back(std::to_string(x));
        rows.push_back("(" + join(xs, ",") + ")");
    }
    return "[" + join(rows, " ") + "]";
}

class Runner {
public:
    Runner(const Config& c, Report& r, const Tower& tw) : c_(c), r_(r), tw_(tw) {}

    const Config& config() const { return c_; }
    const Tower& tower() const { return tw_; }

    json base() const { return json{{"q", c_.q}, {"precision", c_.precision}}; }

    std::mt19937_64 rng(const std::string& id) const { return std::mt19937_64(fnv1a(c_.seed, id)); }

    void check(const std::string& id, const std::string& module, const std::string& anchor, json inputs,
               const std::string& expected, const std::function<Outcome()>& fn)
    {
        Check k{id, module, anchor, std::move(inputs), expected, "", Status::Fail};
        try {
            Outcome o = fn();
            k.got = std::move(o.got);
            k.status = o.pass ? Status::Pass : Status::Fail;
        } catch (const std::exception& e) {
            k.got = std::string("error: ") + e.what();
            k.status = Status::Fail;
        }
        r_.checks.push_back(std::move(k));
    }

    void skip(const std::string& id, const std::string& module, const std::string& anchor, json inputs,
              const std::string& expected, const std::string& reason, Status st)
    {
        r_.checks.push_back({id, module, anchor, std::move(inputs), expected, reason, st});
    }

    // One check per variant; unselected variants are reported as skipped.
    void per_variant(const std::string& id, const std::string& module, const std::string& anchor,
                     const std::string& expected, const std::function<Outcome(SubgroupVariant)>& fn,
                     std::optional<SubgroupVariant> only = std::nullopt, json extra = json::object())
    {
        for (SubgroupVariant v : kVariants) {
            if (only && *only != v) continue;
            std::string vid = id + "." + variant_name(v);
            json in = base();
            in["variant"] = variant_name(v);
            for (auto it = extra.begin(); it != extra.end(); ++it) in[it.key()] = it.value();
            if (!c_.selects(v)) {
                skip(vid, module, anchor, std::move(in), expected, "variant not selected", Status::Skipped);
                continue;
            }
            check(vid, module, anchor, std::move(in), expected, [&] { return fn(v); });
        }
    }

    HeckeModel& model(SubgroupVariant v)
    {
        auto& slot = models_[static_cast<int>(v)];
        if (!slot) slot.emplace(tw_, v, c_.window);
        return *slot;
    }

private:
    const Config& c_;
    Report& r_;
    const Tower& tw_;
    std::optional<HeckeModel> models_[2];
};

// ---------------------------------------------------------------------------

void section_residue(Runner& R)
{
    const ResidueField& f = R.tower().residue();
    R.check("residue.zeta_primitive", "residue", "zeta generates F_q^x", R.base(), "order q-1", [&] {
        std::uint32_t n = f.order(f.zeta());
        return Outcome{"zeta=" + f.str(f.zeta()) + " order=" + std::to_string(n), n == f.q() - 1};
    });
    R.check("residue.eta_values", "residue", "eta(zeta) = i, eta(zeta^2) = -1", R.base(), "1, i, -1", [&] {
        UnitI a = eta_residue(f, f.one()), b = eta_residue(f, f.zeta()), c = eta_residue(f, f.zeta_pow(2));
        return Outcome{a.str() + ", " + b.str() + ", " + c.str(),
                       a == UnitI::one() && b == UnitI::i() && c == UnitI::minus_one()};
    });
    R.check("residue.eta_multiplicative", "residue", "eta is a character of F_q^x", R.base(),
            "eta(xy) = eta(x) eta(y) on all pairs", [&] {
                int bad = 0, n = 0;
                for (auto x : f.units())
                    for (auto y : f.units()) {
                        ++n;
                        if (eta_residue(f, f.mul(x, y)) != eta_residue(f, x) * eta_residue(f, y)) ++bad;
                    }
                return Outcome{std::to_string(n) + " pairs, " + std::to_string(bad) + " mismatches", bad == 0};
            });
    R.check("residue.sgn_is_eta_squared", "residue", "sgn = eta^2 is the quadratic character", R.base(),
            "agrees with squareness on all units", [&] {
                int bad = 0;
                for (auto x : f.units()) {
                    UnitI s = sgn(f, x);
                    UnitI want = f.is_square(x) ? UnitI::one() : UnitI::minus_one();
                    if (s != eta_residue(f, x).pow(2) || s != want) ++bad;
                }
                return Outcome{std::to_string(bad) + " mismatches", bad == 0};
            });
    R.check("residue.char_sum_eta_squares", "residue", "sum over F_q^x of eta(x^2) = 0", R.base(), "0", [&] {
        HeckeCoeff s = char_sum_eta_squares(f);
        return Outcome{s.str(), s.is_zero()};
    });
}

void section_norms(Runner& R)
{
    const Tower& tw = R.tower();
    const ResidueField& f = tw.residue();
    R.check("tower.uniformizer_relations", "tower", "pi2^2 = -t, pi4^4 = -zeta t", R.base(), "both hold", [&] {
        LaurentElem p2 = tw.uniformizer(FieldTag::E2), p4 = tw.uniformizer(FieldTag::E4);
        bool a = (p2 * p2).approx_equal(-tw.t_in(FieldTag::E2));
        bool b = p4.pow(4).approx_equal(-(tw.constant(FieldTag::E4, f.zeta()) * tw.t_in(FieldTag::E4)));
        return Outcome{"pi2^2=-t: " + yes_no(a) + ", pi4^4=-zeta t: " + yes_no(b), a && b};
    });
    R.check("tower.norm_uniformizers", "tower", "N(pi2) = t, N(pi4) = zeta t", R.base(), "t, zeta t", [&] {
        LaurentElem n2 = tw.norm_to_F(tw.uniformizer(FieldTag::E2));
        LaurentElem n4 = tw.norm_to_F(tw.uniformizer(FieldTag::E4));
        LaurentElem t = tw.uniformizer(FieldTag::F);
        bool ok = n2.approx_equal(t) && n4.approx_equal(tw.constant(FieldTag::F, f.zeta()) * t);
        return Outcome{n2.str() + ", " + n4.str(), ok};
    });
    R.check("tower.trace_one", "tower", "Tr(1) = [E:F]", R.base(), "2, 4", [&] {
        LaurentElem a = tw.trace_to_F(tw.one(FieldTag::E2)), b = tw.trace_to_F(tw.one(FieldTag::E4));
        bool ok = a.approx_equal(tw.integer(FieldTag::F, 2)) && b.approx_equal(tw.integer(FieldTag::F, 4));
        return Outcome{a.str() + ", " + b.str(), ok};
    });
    R.check("tower.eta_F_values", "tower", "eta trivial on t and 1 + p_F, eta(zeta) = i", R.base(), "1, i, 1",
            [&] {
                UnitI a = tw.eta_F(tw.uniformizer(FieldTag::F));
                UnitI b = tw.eta_F(tw.constant(FieldTag::F, f.zeta()));
                UnitI c = tw.eta_F(tw.one(FieldTag::F) + tw.uniformizer(FieldTag::F));
                return Outcome{a.str() + ", " + b.str() + ", " + c.str(),
                               a == UnitI::one() && b == UnitI::i() && c == UnitI::one()};
            });
    std::uint64_t seed = R.config().seed;
    json in = R.base();
    in["seed"] = seed;
    in["random_samples"] = 100;
    R.check("tower.norm_unit_image.E2", "tower", "eta^2 o N_{E2/F} trivial on units", in,
            "trivial on every residue class and 100 random units",
            [&] {
                bool ok = tw.norm_unit_image_check(FieldTag::E2, seed);
                return Outcome{ok ? "trivial" : "non-trivial value found", ok};
            });
    R.check("tower.norm_unit_image.E4", "tower", "eta o N_{E4/F} trivial on units", in,
            "trivial on every residue class and 100 random units",
            [&] {
                bool ok = tw.norm_unit_image_check(FieldTag::E4, seed);
                return Outcome{ok ? "trivial" : "non-trivial value found", ok};
            });
}

void section_genericity(Runner& R)
{
    const Tower& tw = R.tower();
    R.check("generic.ge1.level1", "generic", "ord <X0*, H_alpha> = -1/4 on roots of G1 outside G0", R.base(),
            "12 pairs, all ord -1/4", [&] {
                GenericityReport rep = check_ge1(tw, GenericLevel::G1minusG0);
                int ok = static_cast<int>(std::count_if(rep.entries.begin(), rep.entries.end(),
                                                        [](const auto& e) { return e.ok; }));
                std::string got = std::to_string(rep.entries.size()) + " pairs, " + std::to_string(ok) +
                                  " at ord " + rep.target.str();
                if (!rep.error.empty()) got += "; " + rep.error;
                return Outcome{got, rep.pass && rep.entries.size() == 12};
            });
    R.check("generic.ge1.level2", "generic", "ord <X1*, H_alpha> = -1/2 on roots of GL8 outside G1", R.base(),
            "40 pairs, all ord -1/2", [&] {
                GenericityReport rep = check_ge1(tw, GenericLevel::G2minusG1);
                int ok = static_cast<int>(std::count_if(rep.entries.begin(), rep.entries.end(),
                                                        [](const auto& e) { return e.ok; }));
                std::string got = std::to_string(rep.entries.size()) + " pairs, " + std::to_string(ok) +
                                  " at ord " + rep.target.str();
                if (!rep.error.empty()) got += "; " + rep.error;
                return Outcome{got, rep.pass && rep.entries.size() == 40};
            });
    R.check("generic.ge1.level2_value_set", "generic", "level-2 values are {+-pi2^-1, +-2 pi2^-1}", R.base(),
            "set equality", [&] {
                LaurentElem pinv = tw.uniformizer(FieldTag::E2).inverse();
                std::vector<LaurentElem> want;
                for (int k : {1, -1, 2, -2}) want.push_back(tw.integer(FieldTag::E2, k) * pinv);
                std::vector<bool> hit(want.size(), false);
                int stray = 0;
                for (const auto& r : root_pairs(GenericLevel::G2minusG1)) {
                    LaurentElem v = pairing_on_coroot(tw, r);
                    bool found = false;
                    for (std::size_t i = 0; i < want.size(); ++i)
                        if (v.approx_equal(want[i])) hit[i] = found = true;
                    if (!found) ++stray;
                }
                int covered = static_cast<int>(std::count(hit.begin(), hit.end(), true));
                return Outcome{std::to_string(covered) + "/4 values hit, " + std::to_string(stray) + " stray",
                               covered == 4 && stray == 0};
            });
    R.check("generic.ge0.witness_X0", "generic", "X0* on (0, pi4) has ord 0", R.base(), "value 4, ord 0", [&] {
        LaurentElem v = ge0_witness_value(tw, Functional::X0star);
        Valuation o = check_ge0_witness(tw, Functional::X0star);
        bool ok = v.approx_equal(tw.integer(FieldTag::F, 4)) && o == Valuation(0, 1);
        return Outcome{v.str() + ", ord " + o.str(), ok};
    });
    R.check("generic.ge0.witness_X1", "generic", "X1* on (diag(pi2, 0), 0) has ord 0", R.base(), "value 2, ord 0",
            [&] {
                LaurentElem v = ge0_witness_value(tw, Functional::X1star);
                Valuation o = check_ge0_witness(tw, Functional::X1star);
                bool ok = v.approx_equal(tw.integer(FieldTag::F, 2)) && o == Valuation(0, 1);
                return Outcome{v.str() + ", ord " + o.str(), ok};
            });
    R.skip("generic.ge2", "generic", "GE2 for the characters phi_i", R.base(), "not verified",
           "out of scope: GE2 is not machine-checked", Status::OutOfScope);
    R.skip("generic.dual_lattice_membership", "generic", "X_i* lies in the Moy-Prasad dual lattice", R.base(),
           "not verified", "out of scope: only the explicit witnesses are checked", Status::OutOfScope);
}

void section_epsilon(Runner& R)
{
    R.per_variant("epsilon.sign_character_trivial", "groupmodel", "sgn(xy mod p) = 1 on K_M0", "trivial on every allowed triple",
                  [&](SubgroupVariant v) {
                      EpsilonTrivialityResult e = epsilon_fks_trivial(R.tower(), v);
                      return Outcome{std::string(e.trivial ? "trivial" : "non-trivial") + " on " +
                                         std::to_string(e.triples_checked) + " of " +
                                         std::to_string(e.triples_total) + " triples",
                                     e.trivial && e.triples_checked > 0};
                  });
}

void section_subgroups(Runner& R)
{
    const Tower& tw = R.tower();
    const ResidueField& f = tw.residue();
    R.per_variant("groupmodel.commutator_s_z", "groupmodel", "[s~, z~] = (zeta^-1, zeta, 1), rho_M0 of it = -1",
                  "(zeta^-1, zeta, 1), in K_M0, rho = -1", [&](SubgroupVariant v) {
                      GroupElem c = commutator(s_tilde(tw), z_tilde(tw).embed());
                      TorusElem want = torus(tw.constant(FieldTag::E2, f.zeta_pow(-1)),
                                             tw.constant(FieldTag::E2, f.zeta()), tw.one(FieldTag::E4));
                      auto t = as_torus(c);
                      bool eq = t && c.approx_equal(want.embed());
                      bool mem = t && in_KM0(*t, v);
                      UnitI r = mem ? rho_M0(*t, v) : UnitI::one();
                      return Outcome{(t ? t->str() : c.str()) + ", rho=" + r.str(),
                                     eq && mem && r == UnitI::minus_one()};
                  });
    R.per_variant("groupmodel.epsilon_membership", "groupmodel", "eps~ lies in K0 only for the full stabilizer",
                  "stabilizer: member, parahoric: not a member", [&](SubgroupVariant v) {
                      bool in = in_K0(epsilon_tilde(tw).embed(), v);
                      bool want = v == SubgroupVariant::Stabilizer;
                      return Outcome{in ? "member" : "not a member", in == want};
                  });
    R.per_variant(
        "groupmodel.rho0_homomorphism", "groupmodel", "rho0 is a character of K0",
        "rho0(ab) = rho0(a) rho0(b) on 50 random pairs",
        [&](SubgroupVariant v) {
            auto rng = R.rng(std::string("rho0_hom.") + variant_name(v));
            int bad = 0;
            for (int i = 0; i < 50; ++i) {
                GroupElem a = random_K0(tw, v, rng), b = random_K0(tw, v, rng);
                if (rho0(a * b, v) != rho0(a, v) * rho0(b, v)) ++bad;
            }
            return Outcome{std::to_string(bad) + " mismatches", bad == 0};
        },
        std::nullopt, json{{"seed", R.config().seed}, {"samples", 50}});
    R.per_variant(
        "groupmodel.rho0_extends_rho_M0", "groupmodel", "rho0 restricted to K_M0 is rho_M0",
        "agreement on 50 random torus elements",
        [&](SubgroupVariant v) {
            auto rng = R.rng(std::string("rho0_ext.") + variant_name(v));
            int bad = 0;
            for (int i = 0; i < 50; ++i) {
                TorusElem t = random_KM0(tw, v, rng);
                if (rho0(t.embed(), v) != rho_M0(t, v)) ++bad;
            }
            return Outcome{std::to_string(bad) + " mismatches", bad == 0};
        },
        std::nullopt, json{{"seed", R.config().seed}, {"samples", 50}});
    R.per_variant(
        "groupmodel.normalizer", "groupmodel", "s~ and z~ normalize K_M0; z~ fixes rho_M0",
        "50 random torus elements",
        [&](SubgroupVariant v) {
            auto rng = R.rng(std::string("normalizer.") + variant_name(v));
            GroupElem s = s_tilde(tw), z = z_tilde(tw).embed();
            int bad = 0;
            for (int i = 0; i < 50; ++i) {
                TorusElem t = random_KM0(tw, v, rng);
                auto ts = as_torus(s.inverse() * t.embed() * s);
                auto tz = as_torus(z.inverse() * t.embed() * z);
                if (!ts || !in_KM0(*ts, v) || !tz || !in_KM0(*tz, v) || rho_M0(*tz, v) != rho_M0(t, v)) ++bad;
            }
            return Outcome{std::to_string(bad) + " failures", bad == 0};
        },
        std::nullopt, json{{"seed", R.config().seed}, {"samples", 50}});
    R.check("groupmodel.iwahori_roundtrip", "groupmodel", "g = k1 m k2 with k1, k2 in I2 x I4",
            [&] {
                json in = R.base();
                in["seed"] = R.config().seed;
                in["samples"] = 30;
                return in;
            }(),
            "30 random elements reassemble", [&] {
                auto rng = R.rng("iwahori_roundtrip");
                auto elems = window_elements(Window{2, 1}, SubgroupVariant::Parahoric);
                int bad = 0;
                for (int i = 0; i < 30; ++i) {
                    const WeylElem& w = elems[rng() % elems.size()];
                    GroupElem g = random_K0(tw, SubgroupVariant::Parahoric, rng) * lift(tw, w) *
                                  random_K0(tw, SubgroupVariant::Parahoric, rng);
                    IwahoriFactorization fz = iwahori_decompose(g);
                    if (!in_iwahori(fz.k1) || !in_iwahori(fz.k2) || !(fz.k1 * fz.m.matrix(tw) * fz.k2).approx_equal(g))
                        ++bad;
                }
                return Outcome{std::to_string(bad) + " failures", bad == 0};
            });
}

void section_weyl(Runner& R)
{
    const Tower& tw = R.tower();
    R.per_variant("weyl.group_structure", "weyl",
                  "s^2 = s'^2 = 1, z and eps central, ss' and z of infinite order, extra Z/2 for the parahoric",
                  "all relations hold", [&](SubgroupVariant v) {
                      GroupStructureCheck g = group_structure_check(tw, v, 50);
                      std::string got = "s2=" + yes_no(g.s_involution) + " s'2=" + yes_no(g.s_prime_involution) +
                                        " z_central=" + yes_no(g.z_central) + " eps_central=" + yes_no(g.eps_central) +
                                        " eps_order=" + yes_no(g.eps_order) + " ss'_free=" + yes_no(g.ss_prime_free) +
                                        " z_free=" + yes_no(g.z_free);
                      return Outcome{got, g.pass};
                  });
    R.per_variant("weyl.lift_discrepancy", "weyl", "lift is multiplicative modulo K_M0",
                  "lift(uv)^-1 lift(u) lift(v) in K_M0 on the small window", [&](SubgroupVariant v) {
                      CocycleTable t(tw, v);
                      auto elems = window_elements(Window{2, 1}, v);
                      int n = 0;
                      for (const auto& a : elems)
                          for (const auto& b : elems) {
                              (void)t.discrepancy(a, b);
                              ++n;
                          }
                      return Outcome{std::to_string(n) + " pairs in K_M0", n > 0};
                  });
    R.check("weyl.h_M0_values", "weyl", "h(z~) = (1, 1, -2), h(s~ s~') = (1, -1, 0)", R.base(),
            "(1,1,-2) (1,-1,0)", [&] {
                auto hz = h_M0(z_tilde(tw));
                auto t = as_torus(s_tilde(tw) * s_prime_tilde(tw));
                if (!t) return Outcome{"s~ s~' is not in the torus", false};
                auto hs = h_M0(*t);
                auto show = [](const std::array<long long, 3>& h) {
                    return "(" + std::to_string(h[0]) + "," + std::to_string(h[1]) + "," + std::to_string(h[2]) + ")";
                };
                bool ok = hz == std::array<long long, 3>{1, 1, -2} && hs == std::array<long long, 3>{1, -1, 0};
                return Outcome{show(hz) + " " + show(hs), ok};
            });
    R.per_variant("weyl.shape_roundtrip", "weyl", "the monomial shape of lift(w) determines w",
                  "weyl_from_shape(shape_of(w)) = w on the window", [&](SubgroupVariant v) {
                      int bad = 0, n = 0;
                      for (const auto& w : window_elements(R.config().window, v)) {
                          if (w.ebit()) continue;
                          ++n;
                          auto back = weyl_from_shape(shape_of(w));
                          if (!back || *back != w) ++bad;
                      }
                      return Outcome{std::to_string(n) + " elements, " + std::to_string(bad) + " mismatches", bad == 0};
                  });
}

void section_lattice(Runner& R)
{
    json in = R.base();
    in["bound"] = 4;
    R.check("weyl.lattice_hnf", "weyl", "{n1+n2+n3 = 0, 2 | n3} = <(1,1,-2), (1,-1,0)>", in,
            "equal HNF, norm condition agrees on |n_i| <= 4", [&] {
                LatticeCheckResult l = lattice_check(R.tower(), 4);
                std::string got = hnf_str(l.congruence_hnf) + " vs " + hnf_str(l.span_hnf) + ", " +
                                  std::to_string(l.points_checked) + " points, " + std::to_string(l.norm_mismatches) +
                                  " mismatches";
                return Outcome{got, l.pass && l.hnf_equal};
            });
}

void section_cocycle(Runner& R)
{
    const Tower& tw = R.tower();
    std::uint64_t seed = R.config().seed;
    R.per_variant("hecke.beta_s_z", "hecke", "beta(s, z) = -1", "-1 from mu and from the group commutator",
                  [&](SubgroupVariant v) {
                      CocycleTable t(tw, v);
                      UnitI a = t.beta(WeylElem::s(), WeylElem::z()), b = t.beta_commutator(WeylElem::s(), WeylElem::z());
                      return Outcome{a.str() + ", " + b.str(), a == UnitI::minus_one() && b == UnitI::minus_one()};
                  });
    R.per_variant(
        "hecke.beta_perturbed", "hecke", "beta(s, z) is independent of the lift family",
        "-1 for 20 perturbed families",
        [&](SubgroupVariant v) {
            int ok = 0;
            for (int i = 0; i < 20; ++i) {
                std::uint64_t fs = fnv1a(seed, "family" + std::to_string(i)) | 1;
                CocycleTable t(tw, v, fs);
                if (t.beta(WeylElem::s(), WeylElem::z()) == UnitI::minus_one() &&
                    t.beta_commutator(WeylElem::s(), WeylElem::z()) == UnitI::minus_one())
                    ++ok;
            }
            return Outcome{std::to_string(ok) + "/20 families give -1", ok == 20};
        },
        std::nullopt, json{{"seed", seed}, {"families", 20}});
    R.per_variant("hecke.nontriviality_certificate", "hecke", "mu_T is not a coboundary",
                  "commuting pair with beta != 1, rho_M0 does not extend", [&](SubgroupVariant v) {
                      CocycleTable t(tw, v);
                      NontrivialityCertificate c = nontriviality_certificate(t, R.config().window);
                      if (!c.found) return Outcome{c.justification, false};
                      return Outcome{"(" + c.u.str() + ", " + c.v.str() + ") beta=" + c.beta.str() +
                                         " rho_extends=" + yes_no(!c.rho_does_not_extend),
                                     c.rho_does_not_extend};
                  });
    R.per_variant(
        "hecke.cocycle_identity", "hecke", "mu(a,b) mu(ab,c) = mu(a,bc) mu(b,c)",
        "holds on 500 random triples",
        [&](SubgroupVariant v) {
            CocycleTable t(tw, v, seed);
            auto elems = window_elements(Window{2, 1}, v);
            auto rng = R.rng(std::string("cocycle.") + variant_name(v));
            int bad = 0;
            for (int i = 0; i < 500; ++i) {
                const WeylElem& a = elems[rng() % elems.size()];
                const WeylElem& b = elems[rng() % elems.size()];
                const WeylElem& c = elems[rng() % elems.size()];
                if (t.mu(a, b) * t.mu(a * b, c) != t.mu(a, b * c) * t.mu(b, c)) ++bad;
            }
            return Outcome{std::to_string(bad) + " failures", bad == 0};
        },
        std::nullopt, json{{"seed", seed}, {"triples", 500}});
    R.per_variant("hecke.beta_bimultiplicative", "hecke",
                  "beta(s, c1 c2) = beta(s, c1) beta(s, c2), beta(c, s) = beta(s, c)^-1",
                  "holds on central parts z^a e^b, |a| <= 1", [&](SubgroupVariant v) {
                      CocycleTable t(tw, v);
                      std::vector<WeylElem> cs;
                      for (int a = -1; a <= 1; ++a)
                          for (int b = 0; b <= (v == SubgroupVariant::Parahoric ? 1 : 0); ++b)
                              cs.emplace_back(std::vector<Letter>{}, a, b);
                      WeylElem s = WeylElem::s();
                      int bad = 0;
                      for (const auto& c1 : cs) {
                          if (t.beta(c1, s) != t.beta(s, c1).inverse()) ++bad;
                          for (const auto& c2 : cs)
                              if (t.beta(s, c1 * c2) != t.beta(s, c1) * t.beta(s, c2)) ++bad;
                      }
                      return Outcome{std::to_string(bad) + " failures", bad == 0};
                  });
    R.per_variant(
        "hecke.negative_control", "hecke", "no lift family is multiplicative on (s, z)",
        "0 of 40 families multiplicative",
        [&](SubgroupVariant v) {
            NegativeControlResult n = negative_control(tw, v, seed, 40);
            return Outcome{std::to_string(n.multiplicative_families) + " of " + std::to_string(n.families) +
                               " multiplicative, " + std::to_string(n.mu_trivial_families) + " with trivial mu",
                           n.pass};
        },
        std::nullopt, json{{"seed", seed}, {"families", 40}});
}

void section_convolution(Runner& R)
{
    const Tower& tw = R.tower();
    std::string q = std::to_string(tw.residue().q());
    R.per_variant("hecke.coset_counts", "hecke", "K0 s K0 and K0 s' K0 each hold q cosets", "q, q",
                  [&](SubgroupVariant v) {
                      HeckeModel& m = R.model(v);
                      auto a = m.coset_reps(WeylElem::s()).size(), b = m.coset_reps(WeylElem::s_prime()).size();
                      return Outcome{std::to_string(a) + ", " + std::to_string(b),
                                     a == tw.residue().q() && b == tw.residue().q()};
                  });
    R.per_variant("hecke.conv_s_s_at_s", "hecke", "(phi_s * phi_s)(s~) = 0", "0", [&](SubgroupVariant v) {
        HeckeCoeff c = R.model(v).convolve_at(WeylElem::s(), WeylElem::s(), s_tilde(tw));
        return Outcome{c.str(), c.is_zero()};
    });
    R.per_variant("hecke.conv_sp_sp_at_sp", "hecke", "(phi_s' * phi_s')(s~') = 0", "0", [&](SubgroupVariant v) {
        HeckeCoeff c = R.model(v).convolve_at(WeylElem::s_prime(), WeylElem::s_prime(), s_prime_tilde(tw));
        return Outcome{c.str(), c.is_zero()};
    });
    R.per_variant("hecke.conv_s_s_at_1", "hecke", "(phi_s * phi_s)(1) = q", q, [&](SubgroupVariant v) {
        HeckeCoeff c = R.model(v).convolve_at(WeylElem::s(), WeylElem::s(), identity(tw));
        return Outcome{c.str(), c == HeckeCoeff(tw.residue().q())};
    });
    R.per_variant("hecke.conv_unit", "hecke", "phi_1 is the unit: (phi_1 * phi_w)(lift w) = 1", "1 for s, s', z, s.z",
                  [&](SubgroupVariant v) {
                      HeckeModel& m = R.model(v);
                      std::vector<std::string> got;
                      bool ok = true;
                      for (const char* w : {"s", "s'", "z", "s.z"}) {
                          WeylElem x = WeylElem::parse(w);
                          HeckeCoeff c = m.convolve_at(WeylElem(), x, lift(tw, x));
                          got.push_back(c.str());
                          ok = ok && c == HeckeCoeff(1);
                      }
                      return Outcome{join(got, ", "), ok};
                  });
    R.per_variant(
        "hecke.classify_roundtrip", "hecke", "k1 lift(w) k2 lies in K0 w K0", "30 random samples classified",
        [&](SubgroupVariant v) {
            HeckeModel& m = R.model(v);
            auto rng = R.rng(std::string("classify.") + variant_name(v));
            auto elems = window_elements(Window{2, 1}, v);
            int bad = 0;
            for (int i = 0; i < 30; ++i) {
                const WeylElem& w = elems[rng() % elems.size()];
                GroupElem g = random_K0(tw, v, rng) * lift(tw, w) * random_K0(tw, v, rng);
                if (m.classify(g) != w) ++bad;
            }
            return Outcome{std::to_string(bad) + " misclassified", bad == 0};
        },
        std::nullopt, json{{"seed", R.config().seed}, {"samples", 30}});
}

void section_omega(Runner& R)
{
    R.per_variant("hecke.dcp_s_s", "hecke", "K0 s K0 s K0 = K0 K0 + K0 s K0", "{1, s}", [&](SubgroupVariant v) {
        DoubleCosetSet d = R.model(v).double_coset_product(WeylElem::s(), WeylElem::s());
        return Outcome{set_str(d), d == DoubleCosetSet{WeylElem(), WeylElem::s()}};
    });
    R.per_variant("hecke.dcp_examples", "hecke", "length-additive products are single double cosets",
                  "(s,s')->{s.s'} (z,s)->{s.z} (s',s')->{1, s'}", [&](SubgroupVariant v) {
                      HeckeModel& m = R.model(v);
                      WeylElem s = WeylElem::s(), sp = WeylElem::s_prime(), z = WeylElem::z();
                      DoubleCosetSet a = m.double_coset_product(s, sp), b = m.double_coset_product(z, s),
                                     c = m.double_coset_product(sp, sp);
                      bool ok = a == DoubleCosetSet{s * sp} && b == DoubleCosetSet{z * s} &&
                                c == DoubleCosetSet{WeylElem(), sp};
                      return Outcome{set_str(a) + " " + set_str(b) + " " + set_str(c), ok};
                  });
    json win{{"window_words", R.config().window.max_word}, {"central", "1, z, z^-1, e"}};
    R.per_variant(
        "hecke.additive_pairs", "hecke", "plength-additive pairs give a single double coset",
        "every pair yields {w1 w2}",
        [&](SubgroupVariant v) {
            std::vector<WeylElem> central{WeylElem(), WeylElem::z(), WeylElem::z(-1)};
            if (v == SubgroupVariant::Parahoric) central.push_back(WeylElem::epsilon());
            AdditivePairsResult a = additive_pairs_check(R.model(v), central);
            std::string got = std::to_string(a.pairs_checked) + " pairs, " + std::to_string(a.failures.size()) +
                              " failures";
            if (!a.failures.empty()) got += "; first: " + a.failures.front();
            return Outcome{got, a.pass};
        },
        std::nullopt, win);
    R.per_variant("hecke.omega", "hecke", "W(rho_M0) = Omega(rho_M0): phi_w1 * phi_w2 supported on K0 w1w2 K0",
                  "every pair supported on its product coset", [&](SubgroupVariant v) {
                      OmegaCheckResult o = omega_check(R.model(v));
                      std::string got = std::to_string(o.pairs_checked) + " pairs, " +
                                        std::to_string(o.cross_terms_checked) + " cross terms vanish, " +
                                        std::to_string(o.failures.size()) + " failures";
                      if (!o.failures.empty()) got += "; first: " + o.failures.front();
                      return Outcome{got, o.pass};
                  });
}

// Random element of a Hecke algebra: up to three terms with small coefficients.
GenericHeckeElem random_hecke(const std::vector<Word>& basis, std::mt19937_64& rng)
{
    GenericHeckeElem e;
    for (int i = 0; i < 3; ++i) {
        long long c = static_cast<long long>(rng() % 7) - 3;
        e += GenericHeckeElem::basis(basis[rng() % basis.size()], c);
    }
    return e;
}

int hecke_assoc_failures(const CoxeterSystem& sys, const std::vector<HeckeCoeff>& params, std::mt19937_64& rng,
                         int triples)
{
    auto basis = sys.elements_up_to(3);
    int bad = 0;
    for (int i = 0; i < triples; ++i) {
        GenericHeckeElem a = random_hecke(basis, rng), b = random_hecke(basis, rng), c = random_hecke(basis, rng);
        if (!(hecke_mul(sys, hecke_mul(sys, a, b, params), c, params) ==
              hecke_mul(sys, a, hecke_mul(sys, b, c, params), params)))
            ++bad;
    }
    return bad;
}

void section_algebra(Runner& R)
{
    const Tower& tw = R.tower();
    long long q = tw.residue().q();
    std::uint64_t seed = R.config().seed;
    R.check("algebra.hecke_quadratic", "algebra", "T_s T_s = q T_1 + (q-1) T_s", R.base(),
            "q T_1 + (q-1) T_s", [&] {
                CoxeterSystem sys = CoxeterSystem::affine_a1();
                GenericHeckeElem ts = GenericHeckeElem::basis({0});
                GenericHeckeElem got = hecke_mul(sys, ts, ts, {q, q});
                GenericHeckeElem want = GenericHeckeElem::basis({}, q);
                want += GenericHeckeElem::basis({0}, q - 1);
                return Outcome{got.str(), got == want};
            });
    R.check("algebra.hecke_associativity", "algebra", "H(W_aff, q) is associative",
            json{{"q", q}, {"seed", seed}, {"triples", 100}}, "100 triples each for affine A1 and A2", [&] {
                auto rng = R.rng("hecke_assoc");
                int a = hecke_assoc_failures(CoxeterSystem::affine_a1(), {q, q}, rng, 100);
                int b = hecke_assoc_failures(CoxeterSystem::type_a(2), {q, q}, rng, 100);
                return Outcome{std::to_string(a) + ", " + std::to_string(b) + " failures", a == 0 && b == 0};
            });
    R.check("algebra.hecke_group_algebra", "algebra", "all parameters 1 gives the group algebra", R.base(),
            "T_u T_v = T_uv on words of length <= 3", [&] {
                CoxeterSystem sys = CoxeterSystem::affine_a1();
                int bad = 0;
                for (const auto& u : sys.elements_up_to(3))
                    for (const auto& v : sys.elements_up_to(3))
                        if (!(hecke_mul(sys, GenericHeckeElem::basis(u), GenericHeckeElem::basis(v), {1, 1}) ==
                              GenericHeckeElem::basis(sys.multiply(u, v))))
                            ++bad;
                return Outcome{std::to_string(bad) + " mismatches", bad == 0};
            });

    R.per_variant(
        "algebra.twisted_associativity", "algebra", "C[W, mu_T] is associative", "100 random triples",
        [&](SubgroupVariant v) {
            CocycleTable t(tw, v, seed);
            auto mu = std::make_shared<Cocycle<WeylElem>>();
            mu->name = "mu";
            mu->value = [&t](const WeylElem& a, const WeylElem& b) { return HeckeCoeff(t.mu(a, b)); };
            auto elems = window_elements(Window{1, 1}, v);
            auto rng = R.rng(std::string("twisted_assoc.") + variant_name(v));
            auto rnd = [&] {
                TwistedElem<WeylElem> e{mu, {}};
                for (int i = 0; i < 2; ++i)
                    e += TwistedElem<WeylElem>::basis(mu, elems[rng() % elems.size()],
                                                      HeckeCoeff(static_cast<long long>(rng() % 5) - 2,
                                                                 static_cast<long long>(rng() % 5) - 2));
                return e;
            };
            int bad = 0;
            for (int i = 0; i < 100; ++i) {
                auto a = rnd(), b = rnd(), c = rnd();
                if (!(twisted_mul(twisted_mul(a, b), c) == twisted_mul(a, twisted_mul(b, c)))) ++bad;
            }
            return Outcome{std::to_string(bad) + " failures", bad == 0};
        },
        std::nullopt, json{{"seed", seed}, {"triples", 100}});
    R.per_variant("algebra.twisted_broken_cocycle", "algebra",
                  "changing mu at one pair breaks associativity", "associativity fails", [&](SubgroupVariant v) {
                      CocycleTable t(tw, v);
                      auto mu = std::make_shared<Cocycle<WeylElem>>();
                      mu->name = "broken";
                      mu->value = [&t](const WeylElem& a, const WeylElem& b) {
                          UnitI m = t.mu(a, b);
                          if (a == WeylElem::s() && b == WeylElem::z()) m *= UnitI::i();
                          return HeckeCoeff(m);
                      };
                      auto e = [&](const WeylElem& w) { return TwistedElem<WeylElem>::basis(mu, w); };
                      WeylElem s = WeylElem::s(), z = WeylElem::z(), zi = WeylElem::z(-1);
                      bool assoc = twisted_mul(twisted_mul(e(s), e(z)), e(zi)) == twisted_mul(e(s), twisted_mul(e(z), e(zi)));
                      return Outcome{assoc ? "associative" : "associativity fails", !assoc};
                  });
    R.check("algebra.crossed_associativity", "algebra", "C[Omega, mu] x| H(W_aff, q) is associative",
            json{{"q", q}, {"seed", seed}, {"triples", 100}},
            "100 random triples, Omega = <z, e> acting on affine A1 by e swapping s0, s1", [&] {
                CocycleTable t(tw, SubgroupVariant::Parahoric);
                auto mu = std::make_shared<Cocycle<WeylElem>>();
                mu->name = "mu";
                mu->value = [&t](const WeylElem& a, const WeylElem& b) { return HeckeCoeff(t.mu(a, b)); };
                auto spec = std::make_shared<CrossedProductSpec<WeylElem>>();
                spec->waff = std::make_shared<const CoxeterSystem>(CoxeterSystem::affine_a1());
                spec->params = {q, q};
                spec->cocycle = mu;
                spec->act = [](const WeylElem& w, int s) { return w.ebit() ? 1 - s : s; };
                std::vector<WeylElem> omegas;
                for (int a = -1; a <= 1; ++a)
                    for (int b = 0; b <= 1; ++b) omegas.emplace_back(std::vector<Letter>{}, a, b);
                validate_action(*spec, omegas);
                auto words = spec->waff->elements_up_to(2);
                auto rng = R.rng("crossed_assoc");
                auto rnd = [&] {
                    CrossedElem<WeylElem> e{spec, {}};
                    for (int i = 0; i < 2; ++i) {
                        auto b = CrossedElem<WeylElem>::basis(spec, omegas[rng() % omegas.size()],
                                                              words[rng() % words.size()],
                                                              static_cast<long long>(rng() % 5) - 2);
                        for (const auto& [k, c] : b.terms) TwistedElem<WeylElem>::add_term(e.terms, k, c);
                    }
                    return e;
                };
                int bad = 0;
                for (int i = 0; i < 100; ++i) {
                    auto a = rnd(), b = rnd(), c = rnd();
                    if (!(crossed_mul(crossed_mul(a, b), c) == crossed_mul(a, crossed_mul(b, c)))) ++bad;
                }
                return Outcome{std::to_string(bad) + " failures", bad == 0};
            });
    R.per_variant("algebra.example_relations", "algebra",
                  "H(G0, (K0, rho0)) = C[W(rho_M0), mu_T]: e_s e_s = e_1, e_s e_z e_s^-1 e_z^-1 = -e_1",
                  "e_1, -e_1, central e_z commute", [&](SubgroupVariant v) {
                      CocycleTable t(tw, v);
                      auto alg = build_example_algebra(t);
                      using CE = CrossedElem<WeylElem>;
                      auto e = [&](const WeylElem& w) { return CE::basis(alg, w); };
                      // e_w^-1 = mu(w, w^-1)^-1 e_{w^-1}
                      auto einv = [&](const WeylElem& w) {
                          return CE::basis(alg, w.inverse(), {}, HeckeCoeff(t.mu(w, w.inverse()).inverse()));
                      };
                      WeylElem s = WeylElem::s(), z = WeylElem::z();
                      CE ss = crossed_mul(e(s), e(s));
                      CE comm = crossed_mul(crossed_mul(crossed_mul(e(s), e(z)), einv(s)), einv(z));
                      bool central = true;
                      for (int a = -1; a <= 1; ++a)
                          for (int b = -1; b <= 1; ++b)
                              central = central && crossed_mul(e(WeylElem::z(a)), e(WeylElem::z(b))) ==
                                                       crossed_mul(e(WeylElem::z(b)), e(WeylElem::z(a)));
                      auto [sz, c] = structure_constant(alg, s, z);
                      UnitI u;
                      bool unit = c.as_unit(u) && u == t.mu(s, z) && sz == s * z;
                      bool ok = ss == CE::basis(alg, WeylElem()) && comm == CE::basis(alg, WeylElem(), {}, -1) &&
                                central && unit;
                      auto show = [](const CE& x) {
                          std::string out;
                          for (const auto& [k, cf] : x.terms) out += (out.empty() ? "" : " + ") + cf.str() + " e_" + k.first.str();
                          return out.empty() ? std::string("0") : out;
                      };
                      return Outcome{show(ss) + ", " + show(comm) + ", central " + yes_no(central) +
                                         ", c(s,z)=" + c.str(),
                                     ok};
                  });
}

using SectionFn = void (*)(Runner&);

const std::vector<std::pair<std::string, SectionFn>>& sections()
{
    static const std::vector<std::pair<std::string, SectionFn>> s{
        {"residue", section_residue},   {"norms", section_norms},         {"genericity", section_genericity},
        {"epsilon", section_epsilon},   {"subgroups", section_subgroups}, {"weyl", section_weyl},
        {"lattice", section_lattice},   {"cocycle", section_cocycle},     {"convolution", section_convolution},
        {"omega", section_omega},       {"algebra", section_algebra},
    };
    return s;
}

}  // namespace

// ---------------------------------------------------------------------------

VariantSelection parse_variant(const std::string& s)
{
    if (s == "stabilizer") return VariantSelection::Stabilizer;
    if (s == "parahoric") return VariantSelection::Parahoric;
    if (s == "both") return VariantSelection::Both;
    throw ConfigError("variant must be stabilizer, parahoric or both, got '" + s + "'");
}

const char* variant_selection_name(VariantSelection v)
{
    switch (v) {
    case VariantSelection::Stabilizer: return "stabilizer";
    case VariantSelection::Parahoric: return "parahoric";
    default: return "both";
    }
}

const char* status_name(Status s)
{
    switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
    default: return "skipped-out-of-scope";
    }
}

void Config::validate() const
{
    (void)ResidueField::make(q);
    if (precision < 16) throw ConfigError("precision must be at least 16, got " + std::to_string(precision));
    if (precision > 4096) throw ConfigError("precision must be at most 4096, got " + std::to_string(precision));
    if (window.max_word < 2 || window.max_word > 8)
        throw ConfigError("window-words must lie in [2, 8], got " + std::to_string(window.max_word));
    if (window.max_z < 1 || window.max_z > 8)
        throw ConfigError("window-z must lie in [1, 8], got " + std::to_string(window.max_z));
    if (format != "text" && format != "json") throw ConfigError("format must be text or json, got '" + format + "'");
}

bool Config::selects(SubgroupVariant v) const
{
    if (variants == VariantSelection::Both) return true;
    return (variants == VariantSelection::Stabilizer) == (v == SubgroupVariant::Stabilizer);
}

json Config::to_json() const
{
    return json{{"q", q},
                {"precision", precision},
                {"variant", variant_selection_name(variants)},
                {"seed", seed},
                {"window", {{"words", window.max_word}, {"z", window.max_z}}},
                {"action_convention", "right action: omega acts on W_aff by s -> omega^-1 s omega"}};
}

int Report::count(Status s) const
{
    return static_cast<int>(std::count_if(checks.begin(), checks.end(), [s](const Check& c) { return c.status == s; }));
}

const std::vector<std::string>& section_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [n, fn] : sections()) out.push_back(n);
        return out;
    }();
    return names;
}

Report run_all(const Config& c, const std::vector<std::string>& wanted)
{
    c.validate();
    for (const auto& w : wanted)
        if (std::find(section_names().begin(), section_names().end(), w) == section_names().end())
            throw ConfigError("unknown section '" + w + "'");
    Report rep;
    rep.config = c;
    Tower tw(ResidueField::make(c.q), c.precision);
    Runner runner(c, rep, tw);
    for (const auto& [name, fn] : sections()) {
        if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), name) == wanted.end()) continue;
        fn(runner);
    }
    return rep;
}

std::string emit_json(const Report& r)
{
    json checks = json::array();
    for (const auto& k : r.checks)
        checks.push_back({{"id", k.id},
                          {"module", k.module},
                          {"anchor", k.anchor},
                          {"inputs", k.inputs},
                          {"expected", k.expected},
                          {"got", k.got},
                          {"status", status_name(k.status)}});
    json out{{"config", r.config.to_json()},
             {"checks", std::move(checks)},
             {"summary",
              {{"total", r.checks.size()},
               {"pass", r.count(Status::Pass)},
               {"fail", r.count(Status::Fail)},
               {"skipped", r.count(Status::Skipped)},
               {"skipped_out_of_scope", r.count(Status::OutOfScope)}}}};
    return out.dump(2) + "\n";
}

std::string emit_text(const Report& r)
{
    std::ostringstream os;
    const Config& c = r.config;
    os << "dzhecke q=" << c.q << " precision=" << c.precision << " variant=" << variant_selection_name(c.variants)
       << " seed=" << c.seed << " window=" << c.window.max_word << "/" << c.window.max_z
       << " action=right: " << r.checks.size() << " checks, " << r.count(Status::Pass) << " pass, "
       << r.count(Status::Fail) << " fail, " << r.count(Status::Skipped) + r.count(Status::OutOfScope)
       << " skipped\n";
    for (const auto& k : r.checks) {
        const char* mark = k.status == Status::Pass ? "✓" : k.status == Status::Fail ? "✗" : "-";
        os << mark << ' ' << k.id << "  [" << k.anchor << "]  " << k.got;
        if (k.status == Status::Fail) os << "  (expected " << k.expected << ")";
        os << '\n';
    }
    return os.str();
}

std::string dump_constants_csv(const Config& c)
{
    c.validate();
    Tower tw(ResidueField::make(c.q), c.precision);
    std::ostringstream os;
    bool both = c.variants == VariantSelection::Both;
    if (both) os << "variant,";
    os << "u,v,uv,re,im\n";
    for (SubgroupVariant v : kVariants) {
        if (!c.selects(v)) continue;
        CocycleTable t(tw, v);
        auto alg = build_example_algebra(t);
        std::ostringstream block;
        dump_structure_constants(alg, window_elements(c.window, v), block);
        std::string line;
        std::istringstream in(block.str());
        std::getline(in, line);  // header
        while (std::getline(in, line)) os << (both ? std::string(variant_name(v)) + "," : "") << line << '\n';
    }
    return os.str();
}

}  // namespace dzh::report
