#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "xtp/error.hpp"

namespace xtp {

// Exact arbitrary-precision integer used for all coefficients and values.
using Int = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// VarSet: an immutable, ordered list of distinct variable names.  Shared by
// all polynomials over the same ring via shared_ptr; two VarSets are
// interchangeable iff their name lists are equal.
// ---------------------------------------------------------------------------
class VarSet {
public:
    explicit VarSet(std::vector<std::string> names) : names_(std::move(names)) {
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (names_[i].empty())
                throw ValueError("variable name must be non-empty");
            if (!valid_name(names_[i]))
                throw ValueError("invalid variable name: '" + names_[i] + "'");
            for (std::size_t j = i + 1; j < names_.size(); ++j)
                if (names_[i] == names_[j])
                    throw ValueError("duplicate variable name: '" + names_[i] + "'");
        }
    }

    std::size_t arity() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    const std::vector<std::string>& names() const { return names_; }

    std::optional<std::size_t> index_of(std::string_view name) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name) return i;
        return std::nullopt;
    }

    bool operator==(const VarSet& other) const { return names_ == other.names_; }
    bool operator!=(const VarSet& other) const { return !(*this == other); }

    static bool valid_name(std::string_view s) {
        if (s.empty()) return false;
        if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_')
            return false;
        for (char c : s)
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
                return false;
        return true;
    }

private:
    std::vector<std::string> names_;
};

using VarSetPtr = std::shared_ptr<const VarSet>;

inline VarSetPtr make_varset(std::vector<std::string> names) {
    return std::make_shared<const VarSet>(std::move(names));
}

inline bool same_vars(const VarSetPtr& a, const VarSetPtr& b) {
    return a == b || (a && b && *a == *b);
}

// ---------------------------------------------------------------------------
// Monomial: an exponent vector aligned with a VarSet.
// ---------------------------------------------------------------------------
struct Monomial {
    std::vector<std::uint32_t> exps;

    Monomial() = default;
    explicit Monomial(std::vector<std::uint32_t> e) : exps(std::move(e)) {}
    explicit Monomial(std::size_t arity) : exps(arity, 0) {}

    unsigned total_degree() const {
        unsigned d = 0;
        for (auto e : exps) d += e;
        return d;
    }

    bool operator==(const Monomial& o) const { return exps == o.exps; }
    bool operator!=(const Monomial& o) const { return !(*this == o); }
};

// Canonical term order: ascending total degree; within one degree,
// descending lexicographic on the exponent vector.  This is a proper
// monomial order (compatible with multiplication, with 1 minimal), and map
// iteration in this order is exactly the canonical display order, e.g.
//   1 + 3q + q^2        over (q)
//   p^2 + 4p*q + q^2    over (p, q)
struct MonomialOrder {
    bool operator()(const Monomial& a, const Monomial& b) const {
        unsigned da = a.total_degree(), db = b.total_degree();
        if (da != db) return da < db;
        return std::lexicographical_compare(b.exps.begin(), b.exps.end(),
                                            a.exps.begin(), a.exps.end());
    }
};

// How polynomial text is rendered.
enum class TextStyle {
    Spaced,      // 1 + 3q + q^2      (default; coefficient juxtaposed)
    Compact,     // 1+3q+q^2          (CLI single-line output)
    ExplicitOps, // 1 + 3*q + q^2     (every product spelled with '*')
};

// ---------------------------------------------------------------------------
// Polynomial: exact multivariable polynomial with Int coefficients over a
// fixed VarSet.  Terms are stored sorted in the canonical order; zero
// coefficients are never stored, and the zero polynomial is the empty table.
// ---------------------------------------------------------------------------
class Polynomial {
public:
    using TermMap = std::map<Monomial, Int, MonomialOrder>;

    explicit Polynomial(VarSetPtr vars) : vars_(std::move(vars)) {
        if (!vars_) throw ValueError("polynomial requires a variable set");
    }

    static Polynomial constant(VarSetPtr vars, Int c) {
        Polynomial p(std::move(vars));
        if (c != 0) p.terms_.emplace(Monomial(p.vars_->arity()), std::move(c));
        return p;
    }

    static Polynomial variable(VarSetPtr vars, std::string_view name) {
        Polynomial p(std::move(vars));
        auto idx = p.vars_->index_of(name);
        if (!idx)
            throw ValueError("unknown variable: '" + std::string(name) + "'");
        Monomial m(p.vars_->arity());
        m.exps[*idx] = 1;
        p.terms_.emplace(std::move(m), Int(1));
        return p;
    }

    static Polynomial from_term(VarSetPtr vars, Monomial m, Int c) {
        Polynomial p(std::move(vars));
        if (m.exps.size() != p.vars_->arity())
            throw ValueError("monomial arity does not match variable set");
        if (c != 0) p.terms_.emplace(std::move(m), std::move(c));
        return p;
    }

    const VarSetPtr& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t num_terms() const { return terms_.size(); }

    Int coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Int(0) : it->second;
    }

    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 && terms_.begin()->first.total_degree() == 0);
    }

    // Constant value of a constant polynomial.
    Int constant_value() const {
        if (!is_constant())
            throw ValueError("polynomial is not constant: " + to_string());
        return terms_.empty() ? Int(0) : terms_.begin()->second;
    }

    // Total degree of the polynomial.  Undefined for zero.
    unsigned degree() const {
        if (terms_.empty())
            throw ValueError("degree of the zero polynomial is undefined");
        return terms_.rbegin()->first.total_degree();
    }

    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        unsigned d = terms_.begin()->first.total_degree();
        for (const auto& [m, c] : terms_)
            if (m.total_degree() != d) return false;
        return true;
    }

    // All coefficients nonnegative.
    bool is_x_nonnegative() const {
        for (const auto& [m, c] : terms_)
            if (c < 0) return false;
        return true;
    }

    // Some negative coefficient, if any (for diagnostics).
    std::optional<std::pair<Monomial, Int>> first_negative_coefficient() const {
        for (const auto& [m, c] : terms_)
            if (c < 0) return std::make_pair(m, c);
        return std::nullopt;
    }

    // ---- ring operations -------------------------------------------------

    Polynomial operator-() const {
        Polynomial r(vars_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }

    Polynomial& operator+=(const Polynomial& o) {
        check_same_vars(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }

    Polynomial& operator-=(const Polynomial& o) {
        check_same_vars(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.check_same_vars(b);
        Polynomial r(a.vars_);
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m(ma.exps);
                for (std::size_t i = 0; i < m.exps.size(); ++i)
                    m.exps[i] += mb.exps[i];
                r.add_term(m, ca * cb);
            }
        }
        return r;
    }

    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    friend Polynomial operator*(const Polynomial& a, const Int& k) {
        Polynomial r(a.vars_);
        if (k != 0)
            for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, c * k);
        return r;
    }
    friend Polynomial operator*(const Int& k, const Polynomial& a) { return a * k; }

    Polynomial pow(unsigned e) const {
        Polynomial result = constant(vars_, 1);
        Polynomial base = *this;
        while (e > 0) {
            if (e & 1u) result = result * base;
            base = (e >>= 1) ? base * base : base;
        }
        return result;
    }

    bool operator==(const Polynomial& o) const {
        if (!same_vars(vars_, o.vars_)) return false;
        return terms_ == o.terms_;
    }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    // Coefficient-wise comparison: (*this - g) has no negative coefficient.
    bool geq_x(const Polynomial& g) const { return (*this - g).is_x_nonnegative(); }

    // ---- evaluation ------------------------------------------------------

    // Full evaluation.  Every variable must be assigned; unknown names are
    // rejected.
    Int evaluate(const std::map<std::string, Int>& assignment) const {
        for (const auto& [name, v] : assignment)
            if (!vars_->index_of(name))
                throw ValueError("assignment names unknown variable '" + name + "'");
        std::vector<Int> values(vars_->arity());
        for (std::size_t i = 0; i < vars_->arity(); ++i) {
            auto it = assignment.find(vars_->name(i));
            if (it == assignment.end())
                throw ValueError("no value assigned to variable '" +
                                 vars_->name(i) + "'");
            values[i] = it->second;
        }
        Int total = 0;
        for (const auto& [m, c] : terms_) {
            Int term = c;
            for (std::size_t i = 0; i < m.exps.size(); ++i)
                for (std::uint32_t e = 0; e < m.exps[i]; ++e) term *= values[i];
            total += term;
        }
        return total;
    }

    // Partial evaluation: substitute integers for a subset of the variables.
    // The result stays over the same VarSet (substituted variables simply no
    // longer occur).  Unknown names are rejected.
    Polynomial substitute(const std::map<std::string, Int>& assignment) const {
        std::vector<std::optional<Int>> values(vars_->arity());
        for (const auto& [name, v] : assignment) {
            auto idx = vars_->index_of(name);
            if (!idx)
                throw ValueError("assignment names unknown variable '" + name + "'");
            values[*idx] = v;
        }
        Polynomial r(vars_);
        for (const auto& [m, c] : terms_) {
            Int coeff = c;
            Monomial nm(m.exps);
            for (std::size_t i = 0; i < nm.exps.size(); ++i) {
                if (values[i]) {
                    for (std::uint32_t e = 0; e < nm.exps[i]; ++e)
                        coeff *= *values[i];
                    nm.exps[i] = 0;
                }
            }
            r.add_term(nm, coeff);
        }
        return r;
    }

    // Re-express this polynomial over a superset variable set (matching by
    // name).  Every variable that actually occurs must exist in the target.
    Polynomial embed(const VarSetPtr& target) const {
        std::vector<std::optional<std::size_t>> where(vars_->arity());
        for (std::size_t i = 0; i < vars_->arity(); ++i)
            where[i] = target->index_of(vars_->name(i));
        Polynomial r(target);
        for (const auto& [m, c] : terms_) {
            Monomial nm(target->arity());
            for (std::size_t i = 0; i < m.exps.size(); ++i) {
                if (m.exps[i] == 0) continue;
                if (!where[i])
                    throw ValueError("variable '" + vars_->name(i) +
                                     "' does not exist in the target variable set");
                nm.exps[*where[i]] += m.exps[i];
            }
            r.add_term(nm, c);
        }
        return r;
    }

    // ---- exact division --------------------------------------------------

    // Divide by g, requiring the division to be exact over the integers.
    // Throws InternalError otherwise: callers use this only where exactness
    // is mathematically guaranteed, so failure means a bug upstream.
    Polynomial divide_exact(const Polynomial& g) const {
        check_same_vars(g);
        if (g.is_zero()) throw ValueError("division by the zero polynomial");
        Polynomial rem = *this;
        Polynomial quot(vars_);
        const auto& glt = *g.terms_.rbegin(); // leading term of g
        while (!rem.is_zero()) {
            const auto& rlt = *rem.terms_.rbegin();
            Monomial qm(rlt.first.exps);
            bool divisible = true;
            for (std::size_t i = 0; i < qm.exps.size(); ++i) {
                if (qm.exps[i] < glt.first.exps[i]) { divisible = false; break; }
                qm.exps[i] -= glt.first.exps[i];
            }
            if (!divisible || rlt.second % glt.second != 0)
                throw InternalError("exact polynomial division failed: (" +
                                    to_string() + ") / (" + g.to_string() + ")");
            Int qc = rlt.second / glt.second;
            Polynomial qt = from_term(vars_, qm, qc);
            quot += qt;
            rem -= qt * g;
        }
        return quot;
    }

    // ---- text ------------------------------------------------------------

    std::string to_string(TextStyle style = TextStyle::Spaced) const {
        if (terms_.empty()) return "0";
        std::ostringstream out;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            Int a = c;
            if (first) {
                if (a < 0) { out << '-'; a = -a; }
            } else {
                if (style == TextStyle::Compact)
                    out << (a < 0 ? "-" : "+");
                else
                    out << (a < 0 ? " - " : " + ");
                if (a < 0) a = -a;
            }
            first = false;
            bool has_vars = m.total_degree() > 0;
            bool coeff_shown = !has_vars || a != 1;
            if (coeff_shown) out << a.str();
            bool need_sep = coeff_shown && style == TextStyle::ExplicitOps;
            for (std::size_t i = 0; i < m.exps.size(); ++i) {
                if (m.exps[i] == 0) continue;
                if (need_sep) out << '*';
                out << vars_->name(i);
                if (m.exps[i] > 1) out << '^' << m.exps[i];
                need_sep = true; // '*' between distinct variables is mandatory
            }
        }
        return out.str();
    }

    // Parse polynomial text: a signed sum of terms, each term a product of
    // an optional integer coefficient and variable powers.  '*' is optional
    // everywhere, '^1' may be omitted.  Examples: "1 + 3q + q^2", "-2p*q^2",
    // "q^4+4q^6".
    static Polynomial parse(std::string_view text, const VarSetPtr& vars) {
        Polynomial result(vars);
        std::size_t pos = 0;
        auto skip_ws = [&] {
            while (pos < text.size() &&
                   std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        };
        auto parse_nat = [&]() -> Int {
            std::size_t start = pos;
            while (pos < text.size() &&
                   std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (start == pos)
                throw ParseError("expected a number in polynomial text", 1, pos + 1);
            return Int(std::string(text.substr(start, pos - start)));
        };
        skip_ws();
        if (pos == text.size())
            throw ParseError("empty polynomial text", 1, 1);
        bool done = false;
        int sign = 1;
        if (text[pos] == '-') { sign = -1; ++pos; }
        else if (text[pos] == '+') { ++pos; }
        while (!done) {
            // one term
            Int coeff = sign;
            Monomial mono(vars->arity());
            bool any_factor = false;
            for (;;) {
                skip_ws();
                if (pos >= text.size()) break;
                char c = text[pos];
                if (c == '+' || c == '-') break;
                if (c == '*') {
                    if (!any_factor)
                        throw ParseError("unexpected '*'", 1, pos + 1);
                    ++pos;
                    skip_ws();
                    if (pos >= text.size())
                        throw ParseError("dangling '*'", 1, pos + 1);
                    c = text[pos];
                }
                if (std::isdigit(static_cast<unsigned char>(c))) {
                    Int base = parse_nat();
                    skip_ws();
                    if (pos < text.size() && text[pos] == '^') {
                        ++pos;
                        skip_ws();
                        Int e = parse_nat();
                        Int powed = 1;
                        for (Int i = 0; i < e; ++i) powed *= base;
                        base = powed;
                    }
                    coeff *= base;
                    any_factor = true;
                } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                    std::size_t start = pos;
                    while (pos < text.size() &&
                           (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                            text[pos] == '_')) ++pos;
                    std::string name(text.substr(start, pos - start));
                    auto idx = vars->index_of(name);
                    if (!idx)
                        throw ParseError("unknown variable '" + name + "'", 1,
                                         start + 1);
                    std::uint32_t e = 1;
                    skip_ws();
                    if (pos < text.size() && text[pos] == '^') {
                        ++pos;
                        skip_ws();
                        Int en = parse_nat();
                        if (en < 0 || en > 1000000)
                            throw ParseError("exponent out of range", 1, pos);
                        e = static_cast<std::uint32_t>(en);
                    }
                    mono.exps[*idx] += e;
                    any_factor = true;
                } else {
                    throw ParseError(std::string("unexpected character '") + c +
                                     "' in polynomial text", 1, pos + 1);
                }
            }
            if (!any_factor)
                throw ParseError("empty term in polynomial text", 1, pos + 1);
            result.add_term(mono, coeff);
            skip_ws();
            if (pos >= text.size()) {
                done = true;
            } else {
                sign = (text[pos] == '-') ? -1 : 1;
                ++pos;
                skip_ws();
            }
        }
        return result;
    }

private:
    void check_same_vars(const Polynomial& o) const {
        if (!same_vars(vars_, o.vars_))
            throw ValueError("polynomials are over different variable sets");
    }

    void add_term(const Monomial& m, Int c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    VarSetPtr vars_;
    TermMap terms_;
};

// Render a monomial against a variable set (diagnostics).
inline std::string monomial_to_string(const Monomial& m, const VarSet& vars) {
    if (m.total_degree() == 0) return "1";
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < m.exps.size(); ++i) {
        if (m.exps[i] == 0) continue;
        if (!first) out << '*';
        out << vars.name(i);
        if (m.exps[i] > 1) out << '^' << m.exps[i];
        first = false;
    }
    return out.str();
}

} // namespace xtp
