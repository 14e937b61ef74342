#pragma once

#include <string>

#include "xtp/weight_dsl.hpp"

#include "random_poly.hpp"

namespace test_support {

// Random piecewise weight definition text: distinct values for k = 0, k = 1,
// and k >= 2, each a random coefficient-wise-nonnegative polynomial.
inline std::string random_weight_text(Rng& rng, const xtp::VarSetPtr& vars,
                                      unsigned max_degree, unsigned max_terms) {
    auto piece = [&] {
        return random_nonneg_nonzero(rng, vars, max_degree, max_terms)
            .to_string(xtp::TextStyle::ExplicitOps);
    };
    switch (rng.uniform(0, 2)) {
        case 0: return piece();
        case 1: return "k=0: " + piece() + "; else: " + piece();
        default:
            return "k=0: " + piece() + "; k=1: " + piece() +
                   "; else: " + piece();
    }
}

// Random weight system with entries of degree <= max_degree.  When
// general_r is false, r is identically 1.
inline xtp::WeightSystem random_weight_system(Rng& rng,
                                              const xtp::VarSetPtr& vars,
                                              bool general_r,
                                              unsigned max_degree = 2,
                                              unsigned max_terms = 3) {
    std::string r = general_r && rng.uniform(0, 1)
                        ? random_weight_text(rng, vars, 1, 2)
                        : std::string("1");
    return xtp::WeightSystem::from_texts(
        vars, r, random_weight_text(rng, vars, max_degree, max_terms),
        random_weight_text(rng, vars, max_degree, max_terms));
}

} // namespace test_support
