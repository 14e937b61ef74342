#pragma once

#include <cctype>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "xtp/polynomial.hpp"

namespace xtp {

// ---------------------------------------------------------------------------
// A small expression language for per-index weights.  A weight definition is
// a list of guarded clauses evaluated first-match-first:
//
//   weightdef := clause {";" clause}
//   clause    := [guard ":"] expr
//   guard     := "k" ("="|"<="|">="|"<"|">") nat | "else"
//   expr      := term {("+"|"-") term}
//   term      := factor {"*" factor}
//   factor    := atom ["^" nat]
//   atom      := nat | "k" | ident | "(" expr ")"
//
// "k" is the row/column index being queried; idents are ring variables.
// Exactly one catch-all clause ("else" or bare) is required, last.
// Examples:  "q"   "k=0: 1; else: 1+q"   "k*p + q"   "k<=2: x1; else: x2"
// ---------------------------------------------------------------------------

namespace dsl {

struct Sum;

struct Atom {
    enum class Kind { Number, Index, Variable, Paren };
    Kind kind = Kind::Number;
    Int number;                      // Kind::Number
    std::size_t var_index = 0;       // Kind::Variable
    std::string var_name;            // Kind::Variable
    std::shared_ptr<const Sum> sub;  // Kind::Paren

    bool operator==(const Atom& o) const;
};

struct Factor {
    Atom atom;
    unsigned exponent = 1;
    bool operator==(const Factor& o) const {
        return exponent == o.exponent && atom == o.atom;
    }
};

struct Term {
    std::vector<Factor> factors;
    bool operator==(const Term& o) const { return factors == o.factors; }
};

// Flattened left-to-right sum: sign is +1 or -1 per term.
struct Sum {
    std::vector<std::pair<int, Term>> terms;
    bool operator==(const Sum& o) const { return terms == o.terms; }
};

inline bool Atom::operator==(const Atom& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
        case Kind::Number: return number == o.number;
        case Kind::Index: return true;
        case Kind::Variable: return var_index == o.var_index;
        case Kind::Paren: return *sub == *o.sub;
    }
    return false;
}

struct Guard {
    enum class Kind { Eq, Le, Ge, Lt, Gt, Else };
    Kind kind = Kind::Else;
    unsigned long bound = 0;

    bool matches(unsigned long k) const {
        switch (kind) {
            case Kind::Eq: return k == bound;
            case Kind::Le: return k <= bound;
            case Kind::Ge: return k >= bound;
            case Kind::Lt: return k < bound;
            case Kind::Gt: return k > bound;
            case Kind::Else: return true;
        }
        return false;
    }

    bool is_catch_all() const { return kind == Kind::Else; }

    bool operator==(const Guard& o) const {
        return kind == o.kind && (kind == Kind::Else || bound == o.bound);
    }

    std::string to_string() const {
        switch (kind) {
            case Kind::Eq: return "k=" + std::to_string(bound);
            case Kind::Le: return "k<=" + std::to_string(bound);
            case Kind::Ge: return "k>=" + std::to_string(bound);
            case Kind::Lt: return "k<" + std::to_string(bound);
            case Kind::Gt: return "k>" + std::to_string(bound);
            case Kind::Else: return "else";
        }
        return "else";
    }
};

struct Clause {
    Guard guard;         // bare clauses are stored as Else guards
    bool guard_written = true;
    Sum expr;

    bool operator==(const Clause& o) const {
        // A bare catch-all and an explicit "else" are the same clause.
        return guard == o.guard && expr == o.expr;
    }
};

} // namespace dsl

class WeightFormula {
public:
    // Parse a weight definition against a variable set.  Unknown identifiers,
    // syntax errors (with line/column), a missing catch-all, several
    // catch-alls, and clauses after the catch-all are all rejected.
    static WeightFormula parse(std::string_view text, VarSetPtr vars) {
        Parser p(text, vars);
        WeightFormula f;
        f.vars_ = std::move(vars);
        f.clauses_ = p.parse_weightdef();
        return f;
    }

    // Evaluate the first matching clause at index k.  Intermediate values may
    // be arbitrary; the caller decides whether the result is acceptable.
    Polynomial eval_raw(unsigned long k) const {
        for (const auto& clause : clauses_)
            if (clause.guard.matches(k)) return eval_sum(clause.expr, k);
        throw InternalError("weight definition has no matching clause"); // unreachable
    }

    // Canonical text.  parse(to_string()) reproduces the same formula.
    std::string to_string() const {
        std::ostringstream out;
        for (std::size_t i = 0; i < clauses_.size(); ++i) {
            if (i) out << "; ";
            const auto& cl = clauses_[i];
            bool bare_catch_all =
                cl.guard.is_catch_all() && clauses_.size() == 1;
            if (!bare_catch_all) out << cl.guard.to_string() << ": ";
            print_sum(out, cl.expr);
        }
        return out.str();
    }

    bool operator==(const WeightFormula& o) const {
        return same_vars(vars_, o.vars_) && clauses_ == o.clauses_;
    }
    bool operator!=(const WeightFormula& o) const { return !(*this == o); }

    const VarSetPtr& vars() const { return vars_; }
    std::size_t num_clauses() const { return clauses_.size(); }

private:
    VarSetPtr vars_;
    std::vector<dsl::Clause> clauses_;

    // ---- evaluation --------------------------------------------------

    Polynomial eval_sum(const dsl::Sum& s, unsigned long k) const {
        Polynomial acc(vars_);
        for (const auto& [sign, term] : s.terms) {
            Polynomial t = eval_term(term, k);
            if (sign < 0) acc -= t; else acc += t;
        }
        return acc;
    }

    Polynomial eval_term(const dsl::Term& t, unsigned long k) const {
        Polynomial acc = Polynomial::constant(vars_, 1);
        for (const auto& f : t.factors) acc *= eval_atom(f.atom, k).pow(f.exponent);
        return acc;
    }

    Polynomial eval_atom(const dsl::Atom& a, unsigned long k) const {
        using K = dsl::Atom::Kind;
        switch (a.kind) {
            case K::Number: return Polynomial::constant(vars_, a.number);
            case K::Index: return Polynomial::constant(vars_, Int(k));
            case K::Variable: return Polynomial::variable(vars_, a.var_name);
            case K::Paren: return eval_sum(*a.sub, k);
        }
        throw InternalError("corrupt weight expression");
    }

    // ---- printing ------------------------------------------------------

    static void print_sum(std::ostringstream& out, const dsl::Sum& s) {
        for (std::size_t i = 0; i < s.terms.size(); ++i) {
            const auto& [sign, term] = s.terms[i];
            if (i == 0) {
                if (sign < 0) out << "0 - "; // the grammar has no unary minus
            } else {
                out << (sign < 0 ? " - " : " + ");
            }
            print_term(out, term);
        }
        if (s.terms.empty()) out << '0';
    }

    static void print_term(std::ostringstream& out, const dsl::Term& t) {
        for (std::size_t i = 0; i < t.factors.size(); ++i) {
            if (i) out << '*';
            print_factor(out, t.factors[i]);
        }
    }

    static void print_factor(std::ostringstream& out, const dsl::Factor& f) {
        using K = dsl::Atom::Kind;
        switch (f.atom.kind) {
            case K::Number: out << f.atom.number.str(); break;
            case K::Index: out << 'k'; break;
            case K::Variable: out << f.atom.var_name; break;
            case K::Paren: {
                out << '(';
                print_sum(out, *f.atom.sub);
                out << ')';
                break;
            }
        }
        if (f.exponent != 1) out << '^' << f.exponent;
    }

    // ---- parser ----------------------------------------------------------

    class Parser {
    public:
        Parser(std::string_view text, VarSetPtr vars)
            : text_(text), vars_(std::move(vars)) {}

        std::vector<dsl::Clause> parse_weightdef() {
            std::vector<dsl::Clause> clauses;
            bool have_catch_all = false;
            for (;;) {
                if (have_catch_all)
                    fail("clause after the catch-all clause");
                dsl::Clause cl = parse_clause();
                have_catch_all = cl.guard.is_catch_all();
                clauses.push_back(std::move(cl));
                skip_ws();
                if (eof()) break;
                expect(';');
            }
            if (!have_catch_all)
                fail("weight definition needs a final catch-all clause");
            return clauses;
        }

    private:
        std::string_view text_;
        VarSetPtr vars_;
        std::size_t pos_ = 0;

        bool eof() const { return pos_ >= text_.size(); }
        char peek() const { return eof() ? '\0' : text_[pos_]; }

        void skip_ws() {
            while (!eof() &&
                   std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        }

        [[noreturn]] void fail(const std::string& msg) const {
            std::size_t line = 1, col = 1;
            for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
                if (text_[i] == '\n') { ++line; col = 1; }
                else ++col;
            }
            throw ParseError("weight definition: " + msg, line, col);
        }

        void expect(char c) {
            skip_ws();
            if (peek() != c)
                fail(std::string("expected '") + c + "'");
            ++pos_;
        }

        std::optional<std::string> try_ident() {
            skip_ws();
            if (eof()) return std::nullopt;
            char c = peek();
            if (!std::isalpha(static_cast<unsigned char>(c)) && c != '_')
                return std::nullopt;
            std::size_t start = pos_;
            while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                              peek() == '_')) ++pos_;
            return std::string(text_.substr(start, pos_ - start));
        }

        unsigned long parse_nat() {
            skip_ws();
            if (!std::isdigit(static_cast<unsigned char>(peek())))
                fail("expected a number");
            unsigned long v = 0;
            while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
                v = v * 10 + static_cast<unsigned long>(peek() - '0');
                ++pos_;
            }
            return v;
        }

        Int parse_nat_big() {
            skip_ws();
            if (!std::isdigit(static_cast<unsigned char>(peek())))
                fail("expected a number");
            std::size_t start = pos_;
            while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
            return Int(std::string(text_.substr(start, pos_ - start)));
        }

        dsl::Clause parse_clause() {
            dsl::Clause cl;
            skip_ws();
            std::size_t save = pos_;
            auto ident = try_ident();
            bool have_guard = false;
            if (ident == "else") {
                skip_ws();
                if (peek() == ':') {
                    ++pos_;
                    cl.guard = dsl::Guard{dsl::Guard::Kind::Else, 0};
                    have_guard = true;
                } else {
                    fail("'else' must be followed by ':'");
                }
            } else if (ident == "k") {
                skip_ws();
                char c = peek();
                if (c == '=' || c == '<' || c == '>') {
                    dsl::Guard g;
                    if (c == '=') { g.kind = dsl::Guard::Kind::Eq; ++pos_; }
                    else if (c == '<') {
                        ++pos_;
                        if (peek() == '=') { g.kind = dsl::Guard::Kind::Le; ++pos_; }
                        else g.kind = dsl::Guard::Kind::Lt;
                    } else {
                        ++pos_;
                        if (peek() == '=') { g.kind = dsl::Guard::Kind::Ge; ++pos_; }
                        else g.kind = dsl::Guard::Kind::Gt;
                    }
                    g.bound = parse_nat();
                    expect(':');
                    cl.guard = g;
                    have_guard = true;
                } else {
                    pos_ = save; // bare expression starting with "k"
                }
            } else {
                pos_ = save; // bare expression clause
            }
            if (!have_guard) {
                cl.guard = dsl::Guard{dsl::Guard::Kind::Else, 0};
                cl.guard_written = false;
            }
            cl.expr = parse_sum();
            return cl;
        }

        dsl::Sum parse_sum() {
            dsl::Sum s;
            s.terms.emplace_back(1, parse_term());
            for (;;) {
                skip_ws();
                char c = peek();
                if (c == '+' || c == '-') {
                    ++pos_;
                    s.terms.emplace_back(c == '-' ? -1 : 1, parse_term());
                } else {
                    break;
                }
            }
            return s;
        }

        dsl::Term parse_term() {
            dsl::Term t;
            t.factors.push_back(parse_factor());
            for (;;) {
                skip_ws();
                if (peek() == '*') {
                    ++pos_;
                    t.factors.push_back(parse_factor());
                } else {
                    break;
                }
            }
            return t;
        }

        dsl::Factor parse_factor() {
            dsl::Factor f;
            f.atom = parse_atom();
            skip_ws();
            if (peek() == '^') {
                ++pos_;
                unsigned long e = parse_nat();
                if (e > 1000000) fail("exponent out of range");
                f.exponent = static_cast<unsigned>(e);
            }
            return f;
        }

        dsl::Atom parse_atom() {
            skip_ws();
            if (eof()) fail("unexpected end of input");
            char c = peek();
            dsl::Atom a;
            if (std::isdigit(static_cast<unsigned char>(c))) {
                a.kind = dsl::Atom::Kind::Number;
                a.number = parse_nat_big();
                return a;
            }
            if (c == '(') {
                ++pos_;
                auto sub = std::make_shared<dsl::Sum>(parse_sum());
                expect(')');
                a.kind = dsl::Atom::Kind::Paren;
                a.sub = std::move(sub);
                return a;
            }
            auto ident = try_ident();
            if (!ident) fail(std::string("unexpected character '") + c + "'");
            if (*ident == "k") {
                a.kind = dsl::Atom::Kind::Index;
                return a;
            }
            if (*ident == "else") fail("'else' is only valid as a guard");
            auto idx = vars_->index_of(*ident);
            if (!idx) fail("unknown identifier '" + *ident + "'");
            a.kind = dsl::Atom::Kind::Variable;
            a.var_index = *idx;
            a.var_name = *ident;
            return a;
        }
    };
};

inline WeightFormula parse_weight(std::string_view text, VarSetPtr vars) {
    return WeightFormula::parse(text, std::move(vars));
}

inline Polynomial eval_weight(const WeightFormula& formula, unsigned long k) {
    return formula.eval_raw(k);
}

// ---------------------------------------------------------------------------
// WeightSystem: a weight triple (r, s, t) over one variable set.
//   r_k: k >= 1   s_k: k >= 0   t_k: k >= 1
// Every evaluated weight must be coefficient-wise nonnegative; violations are
// reported with the role, the index, and the offending coefficient.
// ---------------------------------------------------------------------------
class WeightSystem {
public:
    WeightSystem(VarSetPtr vars, WeightFormula r, WeightFormula s, WeightFormula t)
        : vars_(std::move(vars)), r_(std::move(r)), s_(std::move(s)),
          t_(std::move(t)) {
        if (!same_vars(vars_, r_.vars()) || !same_vars(vars_, s_.vars()) ||
            !same_vars(vars_, t_.vars()))
            throw ValueError("weight formulas disagree about the variable set");
    }

    static WeightSystem from_texts(VarSetPtr vars, std::string_view r_text,
                                   std::string_view s_text,
                                   std::string_view t_text) {
        auto r = WeightFormula::parse(r_text, vars);
        auto s = WeightFormula::parse(s_text, vars);
        auto t = WeightFormula::parse(t_text, vars);
        return WeightSystem(std::move(vars), std::move(r), std::move(s),
                            std::move(t));
    }

    const VarSetPtr& vars() const { return vars_; }
    const WeightFormula& r_formula() const { return r_; }
    const WeightFormula& s_formula() const { return s_; }
    const WeightFormula& t_formula() const { return t_; }

    Polynomial r_at(unsigned long k) const {
        if (k < 1) throw ValueError("r is indexed from k = 1");
        return checked("r", k, r_.eval_raw(k));
    }
    Polynomial s_at(unsigned long k) const {
        return checked("s", k, s_.eval_raw(k));
    }
    Polynomial t_at(unsigned long k) const {
        if (k < 1) throw ValueError("t is indexed from k = 1");
        return checked("t", k, t_.eval_raw(k));
    }

    bool operator==(const WeightSystem& o) const {
        return same_vars(vars_, o.vars_) && r_ == o.r_ && s_ == o.s_ && t_ == o.t_;
    }

private:
    Polynomial checked(const char* role, unsigned long k, Polynomial value) const {
        if (auto bad = value.first_negative_coefficient()) {
            throw ValueError(std::string("weight ") + role + "(" +
                             std::to_string(k) +
                             ") is not coefficient-wise nonnegative: coefficient " +
                             bad->second.str() + " on " +
                             monomial_to_string(bad->first, *vars_) + " in " +
                             value.to_string());
        }
        return value;
    }

    VarSetPtr vars_;
    WeightFormula r_, s_, t_;
};

} // namespace xtp
