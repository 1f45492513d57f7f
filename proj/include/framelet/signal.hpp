#pragma once

#include "framelet/lattice.hpp"

namespace framelet {

// Finitely supported sequence Z^d -> C^{rows x cols}, stored as a Laurent
// polynomial matrix, together with a power of sqrt(|det M|) that is tracked
// symbolically: the represented values are (sqrt(dm))^scale_pow * data(k).
// Subdivision and transition each carry one such factor, so their raw sums
// stay in the field and the scale tag absorbs the normalization.
struct Signal {
    LaurentMatrix data;
    long scale_pow = 0;

    Signal() = default;
    explicit Signal(LaurentMatrix m, long scale = 0) : data(std::move(m)), scale_pow(scale) {}

    int dim() const { return data.dim(); }
    long rows() const { return data.rows(); }
    long cols() const { return data.cols(); }
    bool is_zero() const { return data.is_zero(); }
};

// out(n) = sum_k v(k) u(n - M k), scale_pow + 1.
Signal subdivide(const Signal& v, const LaurentMatrix& u, const Dilation& dil);

// out(n) = sum_k v(k) conj(u(k - M n))^T, scale_pow + 1.
Signal transition(const Signal& v, const LaurentMatrix& u, const Dilation& dil);

// Plain convolution with a filter, no scale change.
Signal convolve(const Signal& v, const LaurentMatrix& u);

// Equality of represented values: the stored data are aligned by folding
// (sqrt(dm))^(scale gap) into the lower-scale side.  An odd gap requires
// sqrt(dm) in the field; otherwise IrrationalScale is thrown.
bool signals_equal(const Signal& a, const Signal& b, long dm);

// Folds the scale tag into the stored values entirely (throws
// IrrationalScale when scale_pow is odd and sqrt(dm) is irrational).
Signal materialize_scale(const Signal& v, long dm);

// Scalar 1x1 signal folded into the |det N| channels of the vectorizer:
// out(k) has channel j equal to v(gamma_j + N k).
Signal vectorize(const Signal& v, const Vectorizer& vec);

}  // namespace framelet
