#pragma once

#include <string>

#include "framelet/filterbank.hpp"
#include "framelet/signal.hpp"

namespace framelet {

// JSON serialization of framelet systems and signals.  Printing is
// canonical: object keys sorted, term lists ascending in the exponent,
// rationals reduced.  parse then print reproduces the input byte for byte
// when the input is already canonical.
//
// System schema (keys in sorted order):
//   cyclotomic_order  unsigned
//   dilation          integer matrix, row-major nested arrays
//   dimension         d
//   filters           object: a, a_tilde required; theta, theta_tilde, b,
//                     b_tilde, Theta optional; each {rows, cols, terms},
//                     terms = [{k: [d ints], value: [rows*cols strings]}]
//   jets              optional object: upsilon, upsilon_tilde; each
//                     {base, rows, cols, order, derivs}, derivs =
//                     [{mu: [d ints], value: [rows*cols strings]}]
//   multiplicity      r
//   vectorizer        integer matrix
//
// Scalar values use the field grammar "rational" or "rational*z^e" joined
// by " + ", with z the primitive root of unity of the stated order.
std::string print_system(const FrameletSystem& sys);

// Throws ParseError; syntax errors carry line and column, semantic errors
// name the offending field path.
FrameletSystem parse_system(const std::string& text);

// Signal schema: {scale_pow, shape: [rows, cols], terms} with the same
// term layout as filters.  The field order and dimension come from the
// caller since an empty signal does not determine them.
std::string print_signal(const Signal& sig);
Signal parse_signal(const std::string& text, unsigned cyc_order, int dim);

}  // namespace framelet
