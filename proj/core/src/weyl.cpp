#include "dzh/weyl.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "dzh/errors.hpp"

namespace dzh {

WeylElem::WeylElem(std::vector<Letter> word, long long zexp, int ebit) : zexp_(zexp), ebit_(ebit & 1)
{
    for (Letter l : word) {
        if (!word_.empty() && word_.back() == l)
            word_.pop_back();
        else
            word_.push_back(l);
    }
}

WeylElem WeylElem::parse(const std::string& text)
{
    if (text == "1") return {};
    std::vector<Letter> word;
    long long z = 0;
    int e = 0;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, '.')) {
        if (tok == "s") {
            word.push_back(Letter::S);
        } else if (tok == "s'") {
            word.push_back(Letter::SPrime);
        } else if (tok == "e") {
            e ^= 1;
        } else if (tok == "z") {
            z += 1;
        } else if (tok.rfind("z^", 0) == 0 && tok.size() > 2) {
            char* end = nullptr;
            long long k = std::strtoll(tok.c_str() + 2, &end, 10);
            if (*end != '\0') throw DomainError("bad Weyl element token '" + tok + "'");
            z += k;
        } else {
            throw DomainError("bad Weyl element token '" + tok + "'");
        }
    }
    return {std::move(word), z, e};
}

WeylElem WeylElem::operator*(const WeylElem& o) const
{
    std::vector<Letter> w = word_;
    w.insert(w.end(), o.word_.begin(), o.word_.end());
    return {std::move(w), zexp_ + o.zexp_, ebit_ ^ o.ebit_};
}

WeylElem WeylElem::inverse() const
{
    std::vector<Letter> w(word_.rbegin(), word_.rend());
    return {std::move(w), -zexp_, ebit_};
}

WeylElem WeylElem::pow(long long n) const
{
    if (n < 0) return inverse().pow(-n);
    WeylElem r;
    for (long long i = 0; i < n; ++i) r = r * *this;
    return r;
}

WeylElem WeylElem::for_variant(SubgroupVariant v) const
{
    if (v == SubgroupVariant::Parahoric) return *this;
    return {word_, zexp_, 0};
}

std::strong_ordering WeylElem::operator<=>(const WeylElem& o) const
{
    if (auto c = word_.size() <=> o.word_.size(); c != 0) return c;
    if (auto c = word_ <=> o.word_; c != 0) return c;
    if (auto c = zexp_ <=> o.zexp_; c != 0) return c;
    return ebit_ <=> o.ebit_;
}

std::string WeylElem::str() const
{
    std::vector<std::string> parts;
    for (Letter l : word_) parts.emplace_back(l == Letter::S ? "s" : "s'");
    if (zexp_ == 1) parts.emplace_back("z");
    else if (zexp_ != 0) parts.push_back("z^" + std::to_string(zexp_));
    if (ebit_) parts.emplace_back("e");
    if (parts.empty()) return "1";
    std::string out = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) out += "." + parts[i];
    return out;
}

bool Window::contains(const WeylElem& w) const
{
    return plength(w) <= max_word && std::llabs(w.zexp()) <= max_z;
}

std::vector<WeylElem> window_elements(const Window& win, SubgroupVariant v)
{
    std::vector<std::vector<Letter>> words{{}};
    for (int len = 1; len <= win.max_word; ++len) {
        for (Letter first : {Letter::S, Letter::SPrime}) {
            std::vector<Letter> w;
            Letter l = first;
            for (int i = 0; i < len; ++i) {
                w.push_back(l);
                l = l == Letter::S ? Letter::SPrime : Letter::S;
            }
            words.push_back(std::move(w));
        }
    }
    int emax = v == SubgroupVariant::Parahoric ? 1 : 0;
    std::vector<WeylElem> out;
    for (const auto& w : words)
        for (int z = -win.max_z; z <= win.max_z; ++z)
            for (int e = 0; e <= emax; ++e) out.emplace_back(w, z, e);
    return out;
}

GroupElem lift(const Tower& tw, const WeylElem& w)
{
    GroupElem g = identity(tw);
    if (!w.word().empty()) {
        GroupElem s = s_tilde(tw), sp = s_prime_tilde(tw);
        for (Letter l : w.word()) g = g * (l == Letter::S ? s : sp);
    }
    if (w.zexp() != 0) g = g * z_tilde(tw).embed().pow(w.zexp());
    if (w.ebit()) g = g * epsilon_tilde(tw).embed();
    return g;
}

namespace {

MonomialData shape_mul(const MonomialData& a, const MonomialData& b)
{
    MonomialData r;
    r.antidiagonal = a.antidiagonal != b.antidiagonal;
    if (a.antidiagonal) {
        r.row1_exp = a.row1_exp + b.row2_exp;
        r.row2_exp = a.row2_exp + b.row1_exp;
    } else {
        r.row1_exp = a.row1_exp + b.row1_exp;
        r.row2_exp = a.row2_exp + b.row2_exp;
    }
    r.e4_exp = a.e4_exp + b.e4_exp;
    return r;
}

}  // namespace

MonomialData shape_of(const WeylElem& w)
{
    MonomialData r;
    const MonomialData s{true, 0, 0, 0};
    const MonomialData sp{true, -1, 1, 0};
    for (Letter l : w.word()) r = shape_mul(r, l == Letter::S ? s : sp);
    auto z = static_cast<int>(w.zexp());
    return shape_mul(r, MonomialData{false, z, z, -2 * z});
}

std::optional<WeylElem> weyl_from_shape(const MonomialData& m)
{
    if (m.e4_exp % 2 != 0) return std::nullopt;
    long long zexp = -m.e4_exp / 2;
    long long r1 = m.row1_exp - zexp;
    long long r2 = m.row2_exp - zexp;
    if (r1 + r2 != 0) return std::nullopt;
    // diag(k, -k) = (ss')^k; anti(k, -k) = (ss')^k s.
    std::vector<Letter> word;
    auto push_pairs = [&](long long k) {
        for (long long i = 0; i < std::llabs(k); ++i) {
            if (k > 0) {
                word.push_back(Letter::S);
                word.push_back(Letter::SPrime);
            } else {
                word.push_back(Letter::SPrime);
                word.push_back(Letter::S);
            }
        }
    };
    push_pairs(r1);
    if (m.antidiagonal) word.push_back(Letter::S);
    WeylElem w(std::move(word), zexp, 0);
    if (shape_of(w) != m) return std::nullopt;
    return w;
}

std::array<long long, 3> h_M0(const TorusElem& tt)
{
    return {tt.x.ord_norm(), tt.y.ord_norm(), tt.z.ord_norm()};
}

// ---------------------------------------------------------------------------
// Lattices

namespace {

void axpy_row(std::vector<long long>& dst, long long k, const std::vector<long long>& src)
{
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] -= k * src[i];
}

long long floor_div(long long a, long long b)
{
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// Row echelon form on the first `ncols` columns by gcd elimination;
// returns the rank. Rows r.. are zero on those columns afterwards.
std::size_t echelon(IntMatrix& rows, std::size_t ncols, std::vector<std::size_t>* pivots)
{
    std::size_t r = 0;
    for (std::size_t col = 0; col < ncols && r < rows.size(); ++col) {
        while (true) {
            std::size_t best = rows.size();
            for (std::size_t i = r; i < rows.size(); ++i)
                if (rows[i][col] != 0 && (best == rows.size() || std::llabs(rows[i][col]) < std::llabs(rows[best][col])))
                    best = i;
            if (best == rows.size()) break;
            std::swap(rows[r], rows[best]);
            bool clean = true;
            for (std::size_t i = r + 1; i < rows.size(); ++i) {
                if (rows[i][col] == 0) continue;
                axpy_row(rows[i], rows[i][col] / rows[r][col], rows[r]);
                if (rows[i][col] != 0) clean = false;
            }
            if (clean) break;
        }
        if (rows[r][col] == 0) continue;
        if (rows[r][col] < 0)
            for (auto& x : rows[r]) x = -x;
        if (pivots) pivots->push_back(col);
        ++r;
    }
    return r;
}

}  // namespace

IntMatrix hermite_normal_form(IntMatrix rows)
{
    if (rows.empty()) return rows;
    std::size_t n = rows[0].size();
    std::vector<std::size_t> pivots;
    std::size_t rank = echelon(rows, n, &pivots);
    rows.resize(rank);
    for (std::size_t r = 0; r < rank; ++r) {
        std::size_t col = pivots[r];
        for (std::size_t j = 0; j < r; ++j) axpy_row(rows[j], floor_div(rows[j][col], rows[r][col]), rows[r]);
    }
    return rows;
}

IntMatrix integer_kernel(const IntMatrix& a, std::size_t n)
{
    // Rows (A^T e_i | e_i); unimodular row operations keep the right half a
    // basis of Z^n, and rows whose left half vanishes span the kernel.
    std::size_t m = a.size();
    IntMatrix aug(n, std::vector<long long>(m + n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) aug[i][j] = a[j][i];
        aug[i][m + i] = 1;
    }
    std::size_t rank = echelon(aug, m, nullptr);
    IntMatrix ker;
    for (std::size_t i = rank; i < n; ++i) ker.emplace_back(aug[i].begin() + static_cast<std::ptrdiff_t>(m), aug[i].end());
    return hermite_normal_form(ker);
}

LatticeCheckResult lattice_check(const Tower& tw, int bound)
{
    LatticeCheckResult res;
    // (n1, n2, n3, m): n1 + n2 + n3 = 0 and n3 = 2m.
    IntMatrix k = integer_kernel({{1, 1, 1, 0}, {0, 0, 1, -2}}, 4);
    for (auto& row : k) row.resize(3);
    res.congruence_hnf = hermite_normal_form(k);
    res.span_hnf = hermite_normal_form({{1, 1, -2}, {1, -1, 0}});
    res.hnf_equal = res.congruence_hnf == res.span_hnf;

    const ResidueField& f = tw.residue();
    LaurentElem n2 = tw.norm_to_F(tw.uniformizer(FieldTag::E2));
    LaurentElem n4 = tw.norm_to_F(tw.uniformizer(FieldTag::E4));
    for (int a = -bound; a <= bound; ++a) {
        for (int b = -bound; b <= bound; ++b) {
            for (int c = -bound; c <= bound; ++c) {
                bool member = a + b + c == 0 && c % 2 == 0;
                LaurentElem x = n2.pow(a + b) * n4.pow(c);
                bool norm_ok = x.ord_norm() == 0 && f.is_square(x.leading_coeff());
                ++res.points_checked;
                if (member != norm_ok) ++res.norm_mismatches;
            }
        }
    }
    res.pass = res.hnf_equal && res.norm_mismatches == 0;
    return res;
}

namespace {

bool torus_member(const GroupElem& g, SubgroupVariant v)
{
    auto t = as_torus(g);
    return t && in_KM0(*t, v);
}

}  // namespace

GroupStructureCheck group_structure_check(const Tower& tw, SubgroupVariant v, int max_power)
{
    GroupStructureCheck r;
    GroupElem s = s_tilde(tw), sp = s_prime_tilde(tw);
    GroupElem z = z_tilde(tw).embed(), e = epsilon_tilde(tw).embed();
    r.s_involution = torus_member(s * s, v);
    r.s_prime_involution = torus_member(sp * sp, v);
    r.z_central = torus_member(commutator(s, z), v) && torus_member(commutator(sp, z), v);
    r.eps_central = torus_member(commutator(s, e), v) && torus_member(commutator(sp, e), v);
    bool eps_in = torus_member(e, v);
    r.eps_order = torus_member(e * e, v) && (v == SubgroupVariant::Parahoric ? !eps_in : eps_in);

    r.ss_prime_free = true;
    r.z_free = true;
    GroupElem ssp = s * sp;
    GroupElem acc = identity(tw), zacc = identity(tw);
    for (long long n = 1; n <= max_power; ++n) {
        acc = acc * ssp;
        zacc = zacc * z;
        auto t = as_torus(acc);
        if (!t || h_M0(*t) != std::array<long long, 3>{n, -n, 0}) r.ss_prime_free = false;
        auto tz = as_torus(zacc);
        if (!tz || h_M0(*tz) != std::array<long long, 3>{n, n, -2 * n}) r.z_free = false;
    }
    r.pass = r.s_involution && r.s_prime_involution && r.z_central && r.eps_central && r.eps_order &&
             r.ss_prime_free && r.z_free;
    return r;
}

}  // namespace dzh
