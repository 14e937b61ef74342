#pragma once

#include <string>
#include <vector>

#include "xtp/polynomial.hpp"

namespace xtp {

// Total degree of a nonzero polynomial.
inline unsigned degree(const Polynomial& f) { return f.degree(); }

inline bool is_homogeneous(const Polynomial& f) { return f.is_homogeneous(); }

// Homogenize f by a fresh variable (prepended to the variable list): every
// term is padded with the power of x0 that lifts it to deg(f).  Setting
// x0 = 1 in the result recovers f.
inline Polynomial homogenize(const Polynomial& f, const std::string& x0name = "x0") {
    if (f.is_zero())
        throw ValueError("cannot homogenize the zero polynomial");
    if (f.vars()->index_of(x0name))
        throw ValueError("homogenization variable '" + x0name +
                         "' already occurs in the polynomial");
    std::vector<std::string> names{x0name};
    for (const auto& n : f.vars()->names()) names.push_back(n);
    auto vars = make_varset(std::move(names));
    unsigned d = f.degree();
    Polynomial out(vars);
    for (const auto& [m, c] : f.terms()) {
        Monomial nm(vars->arity());
        nm.exps[0] = d - m.total_degree();
        for (std::size_t i = 0; i < m.exps.size(); ++i) nm.exps[i + 1] = m.exps[i];
        out += Polynomial::from_term(vars, std::move(nm), c);
    }
    return out;
}

// Homogenize a sequence (a_n) with deg(a_n) = n into a single ring with the
// fresh variable prepended; the degree requirement is checked per entry.
inline std::vector<Polynomial> homogenize_sequence(
    const std::vector<Polynomial>& seq, const std::string& x0name = "x0") {
    if (seq.empty()) return {};
    for (const auto& f : seq)
        if (!same_vars(f.vars(), seq[0].vars()))
            throw ValueError("homogenize_sequence: entries must share one variable set");
    if (seq[0].vars()->index_of(x0name))
        throw ValueError("homogenization variable '" + x0name +
                         "' already occurs in the sequence");
    std::vector<std::string> names{x0name};
    for (const auto& n : seq[0].vars()->names()) names.push_back(n);
    auto vars = make_varset(std::move(names));
    std::vector<Polynomial> out;
    out.reserve(seq.size());
    for (std::size_t n = 0; n < seq.size(); ++n) {
        if (seq[n].is_zero() || seq[n].degree() != n)
            throw ValueError(
                "homogenize_sequence: entry " + std::to_string(n) +
                " must have total degree " + std::to_string(n) +
                (seq[n].is_zero() ? " but is zero"
                                  : " but has degree " +
                                        std::to_string(seq[n].degree())));
        Polynomial lifted(vars);
        for (const auto& [m, c] : seq[n].terms()) {
            Monomial nm(vars->arity());
            nm.exps[0] = static_cast<std::uint32_t>(n) - m.total_degree();
            for (std::size_t i = 0; i < m.exps.size(); ++i)
                nm.exps[i + 1] = m.exps[i];
            lifted += Polynomial::from_term(vars, std::move(nm), c);
        }
        out.push_back(std::move(lifted));
    }
    return out;
}

} // namespace xtp
