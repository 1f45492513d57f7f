#pragma once

#include <vector>

#include "framelet/laurent.hpp"
#include "framelet/multiindex.hpp"

namespace framelet {

// Integer dilation matrix together with its coset data:
//   gamma: representatives of Z^d / (M Z^d), i.e. (M [0,1)^d) cap Z^d,
//   omega: representatives of (M^{-T} Z^d) / Z^d inside [0,1)^d.
// Both lists start with 0 and are lexicographically ascending afterwards.
struct Dilation {
    IntMat m;
    int dim = 0;
    long abs_det = 0;
    bool expansive = false;
    std::vector<MIdx> gamma;
    std::vector<std::vector<Rational>> omega;

    std::vector<std::vector<Rational>> m_inv;  // M^{-1} as rationals
};

// Validates |det M| >= 2, enumerates both coset lists, and runs an exact
// spectral-radius test (powers of the adjugate against powers of |det|) to
// decide expansiveness.
Dilation make_dilation(const IntMat& m);

// u^{[gamma]}(k) = u(gamma + M k), entrywise on matrices.
LaurentMatrix coset_part(const LaurentMatrix& u, const MIdx& gamma, const Dilation& dil);
// All coset parts in gamma order.
std::vector<LaurentMatrix> coset_split(const LaurentMatrix& u, const Dilation& dil);
// Inverse of coset_split: u(gamma + M k) = parts[gamma](k).
LaurentMatrix coset_join(const std::vector<LaurentMatrix>& parts, const Dilation& dil);

// Invertible integer matrix N defining the vectorization lattice: a scalar
// sequence is folded into |det N| channels indexed by the cosets of N Z^d,
// and the channel offsets enter frequency computations through tau_j =
// N^{-1} gamma_j.
struct Vectorizer {
    IntMat n;
    int dim = 0;
    long channels = 0;
    std::vector<MIdx> gamma;
    std::vector<std::vector<Rational>> tau;

    std::vector<std::vector<Rational>> n_inv;  // N^{-1} as rationals

    // Row V_hat(xi) = (e^{i tau_1 . xi}, ..., e^{i tau_r . xi}).
    FracExpRow moment_row(unsigned cyc_order) const;
    // Writes point = gamma_j + N k and returns (j, k).
    std::pair<long, MIdx> decompose(const MIdx& point) const;
};

Vectorizer make_vectorizer(const IntMat& n);

}  // namespace framelet
