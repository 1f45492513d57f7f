#pragma once

#include <initializer_list>
#include <utility>

#include "framelet/examples.hpp"
#include "framelet/filterbank.hpp"

namespace testfix {

using namespace framelet;

constexpr unsigned kOrd = 8;

// One-dimensional Laurent polynomial from (exponent, rational) pairs.
inline LaurentPoly poly1(std::initializer_list<std::pair<int, Rational>> terms) {
    LaurentPoly p(1, kOrd);
    for (const auto& [e, q] : terms) p.set_coeff({e}, CycNum::from_rational(kOrd, q));
    return p;
}

inline FrameletSystem haar_system() { return haar_uep_system(); }

inline FrameletSystem toy_system() { return stacked_haar_system(); }

}  // namespace testfix
