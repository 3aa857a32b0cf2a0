#include "dzh/algebra.hpp"

#include <deque>
#include <optional>
#include <set>
#include <sstream>

namespace dzh {

CoxeterSystem::CoxeterSystem(std::vector<std::vector<int>> m) : m_(std::move(m))
{
    std::size_t n = m_.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (m_[i].size() != n) throw ConfigError("Coxeter matrix must be square");
        if (m_[i][i] != 1) throw ConfigError("Coxeter matrix must have 1 on the diagonal");
        for (std::size_t j = 0; j < n; ++j) {
            if (m_[i][j] != m_[j][i]) throw ConfigError("Coxeter matrix must be symmetric");
            if (i != j && m_[i][j] != 0 && m_[i][j] < 2)
                throw ConfigError("off-diagonal Coxeter entries must be >= 2 or 0 (infinity)");
        }
    }
}

CoxeterSystem CoxeterSystem::type_a(int n)
{
    std::vector<std::vector<int>> m(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 2));
    for (int i = 0; i < n; ++i) {
        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
        if (i + 1 < n) {
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + 1)] = 3;
            m[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(i)] = 3;
        }
    }
    return CoxeterSystem(std::move(m));
}

Word CoxeterSystem::normal_form(const Word& w) const
{
    for (int s : w)
        if (s < 0 || s >= rank()) throw DomainError("generator " + std::to_string(s) + " out of range");
    Word cur = w;
    while (true) {
        std::set<Word> seen{cur};
        std::deque<Word> queue{cur};
        std::optional<Word> shorter;
        while (!queue.empty() && !shorter) {
            Word x = std::move(queue.front());
            queue.pop_front();
            for (std::size_t i = 0; i + 1 < x.size(); ++i) {
                if (x[i] == x[i + 1]) {
                    Word y(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(i));
                    y.insert(y.end(), x.begin() + static_cast<std::ptrdiff_t>(i + 2), x.end());
                    shorter = std::move(y);
                    break;
                }
            }
            if (shorter) break;
            for (std::size_t i = 0; i + 1 < x.size(); ++i) {
                int a = x[i], b = x[i + 1];
                auto mm = static_cast<std::size_t>(m(a, b));
                if (mm == 0 || i + mm > x.size()) continue;
                bool alternating = true;
                for (std::size_t k = 0; k < mm && alternating; ++k) alternating = x[i + k] == (k % 2 ? b : a);
                if (!alternating) continue;
                Word y = x;
                for (std::size_t k = 0; k < mm; ++k) y[i + k] = k % 2 ? a : b;
                if (seen.insert(y).second) queue.push_back(std::move(y));
            }
        }
        if (shorter) {
            cur = std::move(*shorter);
            continue;
        }
        return *seen.begin();
    }
}

Word CoxeterSystem::multiply(const Word& a, const Word& b) const
{
    Word w = a;
    w.insert(w.end(), b.begin(), b.end());
    return normal_form(w);
}

Word CoxeterSystem::inverse(const Word& w) const { return normal_form(Word(w.rbegin(), w.rend())); }

std::vector<Word> CoxeterSystem::elements_up_to(int n) const
{
    std::set<Word> all{Word{}};
    std::vector<Word> frontier{Word{}};
    for (int len = 1; len <= n; ++len) {
        std::vector<Word> next;
        for (const auto& w : frontier) {
            for (int s = 0; s < rank(); ++s) {
                Word x = multiply(w, {s});
                if (static_cast<int>(x.size()) == len && all.insert(x).second) next.push_back(std::move(x));
            }
        }
        frontier = std::move(next);
    }
    return {all.begin(), all.end()};
}

std::string word_str(const Word& w)
{
    if (w.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) out += (i ? ".s" : "s") + std::to_string(w[i]);
    return out;
}

GenericHeckeElem GenericHeckeElem::basis(const Word& w, HeckeCoeff c)
{
    GenericHeckeElem e;
    if (!c.is_zero()) e.terms.emplace(w, std::move(c));
    return e;
}

namespace {

void add_term(std::map<Word, HeckeCoeff>& m, const Word& w, const HeckeCoeff& c)
{
    if (c.is_zero()) return;
    auto [it, fresh] = m.emplace(w, c);
    if (fresh) return;
    it->second += c;
    if (it->second.is_zero()) m.erase(it);
}

GenericHeckeElem left_mul_generator(const CoxeterSystem& sys, int s, const GenericHeckeElem& e,
                                    const HeckeCoeff& qs)
{
    GenericHeckeElem out;
    for (const auto& [w, c] : e.terms) {
        Word sw = sys.multiply({s}, w);
        if (sw.size() > w.size()) {
            add_term(out.terms, sw, c);
        } else {
            add_term(out.terms, sw, qs * c);
            add_term(out.terms, w, (qs - 1) * c);
        }
    }
    return out;
}

}  // namespace

GenericHeckeElem& GenericHeckeElem::operator+=(const GenericHeckeElem& o)
{
    for (const auto& [w, c] : o.terms) add_term(terms, w, c);
    return *this;
}

std::string GenericHeckeElem::str() const
{
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : terms) {
        if (!first) os << " + ";
        first = false;
        os << '(' << c.str() << ")*T[" << word_str(w) << ']';
    }
    return os.str();
}

GenericHeckeElem hecke_mul(const CoxeterSystem& sys, const GenericHeckeElem& a, const GenericHeckeElem& b,
                           const std::vector<HeckeCoeff>& params)
{
    if (static_cast<int>(params.size()) != sys.rank()) throw ConfigError("hecke_mul: one parameter per generator");
    for (int s = 0; s < sys.rank(); ++s)
        for (int t = 0; t < sys.rank(); ++t)
            if (sys.m(s, t) % 2 == 1 && !(params[static_cast<std::size_t>(s)] == params[static_cast<std::size_t>(t)]))
                throw ConfigError("hecke_mul: parameters must agree on conjugate generators");
    for (const auto* e : {&a, &b})
        for (const auto& [w, c] : e->terms)
            if (!sys.is_normal(w)) throw DomainError("hecke_mul: key " + word_str(w) + " is not a normal form");

    GenericHeckeElem out;
    for (const auto& [x, cx] : a.terms) {
        for (const auto& [y, cy] : b.terms) {
            GenericHeckeElem cur = GenericHeckeElem::basis(y, cx * cy);
            for (auto it = x.rbegin(); it != x.rend(); ++it)
                cur = left_mul_generator(sys, *it, cur, params[static_cast<std::size_t>(*it)]);
            out += cur;
        }
    }
    return out;
}

}  // namespace dzh
