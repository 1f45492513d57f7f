#pragma once

#include <string>
#include <vector>

#include "framelet/laurent.hpp"
#include "framelet/linalg.hpp"

namespace framelet {

// Matrix-valued jet: all partial derivatives d^mu f(2*pi*tau) for |mu| <
// order, stored densely in graded lexicographic order.  All operations are
// exact; truncation order propagates as the minimum of the operands.
class Jet {
  public:
    Jet() : Jet(1, 0, 0, 0, 8, {Rational(0)}) {}
    Jet(int dim, long rows, long cols, int order, unsigned cyc_order,
        std::vector<Rational> base);

    int dim() const { return dim_; }
    long rows() const { return rows_; }
    long cols() const { return cols_; }
    int order() const { return order_; }
    unsigned cyc_order() const { return cyc_order_; }
    const std::vector<Rational>& base() const { return base_; }
    const std::vector<MIdx>& index_set() const { return mu_list_; }

    const CycNum& deriv(const MIdx& mu, long i, long j) const;
    CycNum& deriv(const MIdx& mu, long i, long j);
    // Level slice as a matrix, one multi-index at a time.
    CycMat level(const MIdx& mu) const;
    void set_level(const MIdx& mu, const CycMat& m);

    bool is_zero() const;
    bool operator==(const Jet& o) const;
    bool operator!=(const Jet& o) const { return !(*this == o); }

    Jet operator-() const;
    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    // Leibniz product; operand shapes follow matrix multiplication.
    friend Jet operator*(const Jet& a, const Jet& b);
    Jet& operator*=(const CycNum& c);
    friend Jet operator*(Jet a, const CycNum& c) { return a *= c; }
    friend Jet operator*(const CycNum& c, Jet a) { return a *= c; }

    // Jet of xi -> conj(f(xi)) at the same base point.
    Jet conjugated() const;
    Jet transposed() const;
    // conj(f)^T, the jet analogue of LaurentMatrix::star.
    Jet adjoint() const { return conjugated().transposed(); }

    Jet truncated(int order) const;
    Jet block(long i0, long j0, long r, long c) const;
    void set_block(long i0, long j0, const Jet& b);

    // Jet of f(L xi) at 0; requires base 0 and a square integer L.
    Jet compose_linear(const IntMat& l) const;

    // Reciprocal jet of a 1x1 jet with f(0) != 0.
    Jet reciprocal() const;

    // Smallest |mu| with a nonzero derivative; returns order() when the jet
    // vanishes identically (meaning "at least order()").
    int vanishing_order() const;

    std::string to_string() const;

  private:
    void require_same_frame(const Jet& o) const;
    long mu_pos(const MIdx& mu) const;

    int dim_;
    long rows_, cols_;
    int order_;
    unsigned cyc_order_;
    std::vector<Rational> base_;
    std::vector<MIdx> mu_list_;
    // One block of rows*cols values per multi-index, row-major.
    std::vector<std::vector<CycNum>> data_;
};

// Jet of a Laurent polynomial matrix at 2*pi*tau:
// d^mu u_hat(2*pi*tau) = sum_k u(k) (-i)^{|mu|} k^mu e^{-2*pi*i k.tau}.
Jet jet_at(const LaurentMatrix& u, const std::vector<Rational>& tau, int order);
Jet jet_at(const LaurentPoly& u, const std::vector<Rational>& tau, int order);

// Jet at 0 of a row of scaled fractional exponentials:
// d^mu (c e^{i tau.xi})(0) = c i^{|mu|} tau^mu.
Jet jet_of(const FracExpRow& v, int order);

// Coefficient matrix T with (f o L)-jet = T * f-jet at 0 (both jets read as
// column stacks over indices_below(dim, order)).
std::vector<std::vector<Rational>> compose_linear_map(const IntMat& l, int order);

// Trigonometric polynomial with support in {0..order-1}^dim whose jet at 0
// matches the input (missing tensor-grid derivatives are taken as zero).
LaurentMatrix jet_to_trigpoly(const Jet& jet);

}  // namespace framelet
