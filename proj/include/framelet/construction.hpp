#pragma once

#include <map>
#include <utility>
#include <vector>

#include "framelet/analysis.hpp"
#include "framelet/filterbank.hpp"

namespace framelet {

// Difference basis element: prod_j (1 - e^{-i(xi_j + 2 pi omega_j)})^{alpha_j},
// or its complex conjugate when conj_basis is set.
LaurentPoly nabla_basis(int dim, unsigned cyc_order, const MIdx& alpha,
                        const std::vector<Rational>& omega, bool conj_basis);

// Writes c = sum_{|alpha| = order} h_alpha * nabla_basis(alpha), exact.
// Requires c to vanish to the given order at the base point (2 pi omega for
// the plain basis, -2 pi omega for the conjugate one); throws
// InsufficientVanishing otherwise.  The cofactors come from an exact
// Taylor-shift regrouping, so resummation reproduces c identically.
std::map<MIdx, LaurentPoly> factor_vanishing(const LaurentPoly& c, int order,
                                             const std::vector<Rational>& omega,
                                             bool conj_basis);

// Writes c = sum conj(nabla^alpha)(xi) h_{alpha,beta}(xi) nabla^beta(xi + 2
// pi omega) over |alpha| = m, |beta| = m_tilde.  Requires c to vanish to
// order m at 0 and to order m_tilde at -2 pi omega; when omega is integral
// the two points coincide and the requirement is order m + m_tilde at 0.
std::map<std::pair<MIdx, MIdx>, LaurentPoly> factor_two_point(
    const LaurentPoly& c, int m, int m_tilde, const std::vector<Rational>& omega);

// Strongly invertible transform built from unit shears.
struct ShearProduct {
    LaurentMatrix u;
    LaurentMatrix u_inv;
};

// Shear product U with (v U)-jet == target to the given order.  v is a 1 x r
// jet with v(0) != 0; the target's first entry must not vanish at 0.  Throws
// DegenerateInput when r = 1 or a nonvanishing condition fails, and
// ConstructionFailed when the self-check after assembly does not hold.
ShearProduct normalize_row(const Jet& v, const Jet& target, int order);

// Column version: U with (U v)-jet == target.
ShearProduct normalize_col(const Jet& v, const Jet& target, int order);

// Joint normalization: U with (upsilon U^{-1})-jet == row_target to order
// row_order and (U phi)-jet == col_target to order col_order.  Requires the
// pairings (upsilon phi)-jet and (row_target col_target)-jet to equal 1 to
// order row_order (HypothesisViolated otherwise).
ShearProduct normal_form_pair(const Jet& upsilon, const Jet& phi, const Jet& row_target,
                              const Jet& col_target, int row_order, int col_order);

struct IdealNormalForm {
    ShearProduct transform;
    LaurentMatrix mask;  // U(M^T .) a U^{-1}
};

// Conjugates the mask so its first row matches e_1 to order m at every coset
// frequency and its first column matches e_1 to order n at the origin.
IdealNormalForm ideal_normal_form(const LaurentMatrix& a, const Dilation& dil,
                                  const Jet& upsilon, int m, int n);

struct HighpassCompletion {
    LaurentMatrix b, b_tilde;  // highpass pair for the original masks
    LaurentMatrix mrb, mrtb;   // the same pair before the theta chains
    ShearProduct transform;    // normal-form transform used inside
    int m = 0;                 // sum rule order of a_tilde
    int m_tilde = 0;           // sum rule order of a
};

// Builds a highpass pair completing (a, a_tilde) with the given strongly
// invertible theta/theta_tilde into a dual filter bank with Theta = theta*
// theta_tilde, carrying the full balancing and vanishing-moment orders.  The
// dual bank identity is asserted exactly before returning.
HighpassCompletion complete_highpass(const FrameletSystem& sys);

struct SynthesizedMcf {
    LaurentMatrix theta, theta_tilde;
    McfReport report;
};

// Constructs balanced moment correction filters for (a, a_tilde): strongly
// invertible theta, theta_tilde whose corrected masks match the vectorizer
// moment row on both sides.  Needs 1/sqrt(r) in the working field.
SynthesizedMcf synthesize_mcf(const FrameletSystem& sys);

}  // namespace framelet
