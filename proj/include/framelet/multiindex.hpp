#pragma once

#include <cstdint>
#include <vector>

#include "framelet/rational.hpp"

namespace framelet {

// Multi-index in Z^d (nonnegative in derivative contexts, signed when used
// as a lattice point).
using MIdx = std::vector<int>;

long abs_sum(const MIdx& m);
bool dominates(const MIdx& hi, const MIdx& lo);  // hi >= lo componentwise
MIdx sub(const MIdx& a, const MIdx& b);
MIdx add(const MIdx& a, const MIdx& b);

// All mu >= 0 with |mu| = total, lexicographically ascending.
std::vector<MIdx> indices_exact(int dim, int total);
// All mu >= 0 with |mu| < order, graded then lexicographically ascending.
// This is the canonical layout for jet storage.
std::vector<MIdx> indices_below(int dim, int order);

// Position of mu inside indices_below(dim, order); -1 when out of range.
long index_position(const MIdx& mu, int order);

Integer factorial(long n);
Integer binomial(long n, long k);
Integer mi_factorial(const MIdx& mu);                  // mu!
Integer mi_binomial(const MIdx& mu, const MIdx& nu);   // prod binom(mu_j, nu_j)

// Small dense integer matrix (row-major), used for dilation matrices and
// vectorizer matrices.  Dimensions stay at most 4.
using IntMat = std::vector<std::vector<long>>;

IntMat identity_mat(int d);
IntMat transpose(const IntMat& m);
IntMat mat_mul(const IntMat& a, const IntMat& b);
MIdx mat_vec(const IntMat& m, const MIdx& v);
Integer int_det(const IntMat& m);
// adj(m) with int_det(m) = det: m * adj = det * I.
IntMat adjugate(const IntMat& m);
std::vector<Rational> rat_mat_vec(const std::vector<std::vector<Rational>>& m,
                                  const std::vector<Rational>& v);
// Inverse as a rational matrix; throws on singular input.
std::vector<std::vector<Rational>> rational_inverse(const IntMat& m);

}  // namespace framelet
