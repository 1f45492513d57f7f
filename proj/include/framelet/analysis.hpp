#pragma once

#include <optional>
#include <string>
#include <vector>

#include "framelet/filterbank.hpp"
#include "framelet/jet.hpp"
#include "framelet/lattice.hpp"

namespace framelet {

// Exact determinant by cofactor expansion (matrices here stay small).
LaurentPoly laurent_det(const LaurentMatrix& u);

// Exact adjugate, so that u * adjugate = det * I.
LaurentMatrix laurent_adjugate(const LaurentMatrix& u);

struct StrongInvertibility {
    bool verdict = false;
    LaurentPoly det;
    // Present iff verdict: adjugate divided by the determinant monomial.
    std::optional<LaurentMatrix> inverse;
};

// A square filter is strongly invertible iff det(u_hat) is a single nonzero
// monomial c e^{-i k.xi}; its inverse is then again a finite filter.
StrongInvertibility strong_invertibility(const LaurentMatrix& u);

// Default cap for "largest order" searches: twice the support diameter of
// the filter plus four.
int default_order_cap(const LaurentMatrix& u);

// Certificate that a has order-m sum rules: a matching jet upsilon with
// upsilon_hat(M^T xi) a_hat(xi + 2 pi omega) = delta(omega) upsilon_hat(xi)
// + O(|xi|^m) for every omega in Omega_M, upsilon_hat(0) != 0, and the
// first nonzero entry of upsilon_hat(0) equal to 1.
struct SumRuleCertificate {
    int order = 0;
    bool at_cap = false;
    Jet matching;  // 1 x r jet at 0, order max(order, 1)
};

SumRuleCertificate sum_rule_order(const LaurentMatrix& a, const Dilation& dil, int cap = 0);

// Re-verifies the sum rule identity for a given matching jet to the given
// order (the jet must carry at least that order).
bool check_sum_rules(const LaurentMatrix& a, const Dilation& dil, const Jet& upsilon,
                     int order);

// Derivatives of the refinable vector phi_hat at 0, solved level by level
// from phi_hat(M^T xi) = a_hat(xi) phi_hat(xi) and normalized so that
// upsilon_hat(0) phi_hat(0) = 1.
struct RefinableJet {
    Jet jet;  // r x 1 at 0
};

RefinableJet refinable_jet(const LaurentMatrix& a, const Dilation& dil, const Jet& upsilon,
                           int order);

// Vanishing moment order of psi_hat = b_hat(M^{-T}.) phi_hat(M^{-T}.): the
// vanishing order of jet(b_hat) * phi at 0 (the invertible substitution
// M^{-T} preserves vanishing orders and is skipped).  Throws
// InconclusiveOrder when every stored derivative vanishes; re-run with a
// higher-order refinable jet.
int vmo_highpass(const LaurentMatrix& b, const RefinableJet& phi);

struct OrderResult {
    int order = 0;
    bool at_cap = false;
};

// Largest m <= cap with V_hat(xi) conj(b_hat(xi))^T = O(|xi|^m), where
// V_hat is the vectorizer moment row (e^{i N^{-1}gamma_j . xi})_j.
OrderResult bvmo(const LaurentMatrix& b, const Vectorizer& vec, int cap = 0);

// Balancing order of the analysis bank {a; b}: the bvmo bound intersected
// with the largest m admitting a scalar jet c_hat, c_hat(0) != 0, with
// V_hat(xi) conj(a_hat(xi))^T = c_hat(xi) V_hat(M^T xi) + O(|xi|^m).
OrderResult bpo(const LaurentMatrix& a, const LaurentMatrix& b, const Vectorizer& vec,
                const Dilation& dil, int cap = 0);

struct McfCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Verification of the moment correction conditions for (theta, theta_tilde):
// with mrv = upsilon theta^{-1}, mrphi = theta phi, mrvt = upsilon_tilde
// theta_tilde^{-1}, mrphit = theta_tilde phi_tilde (all as jets at 0),
// checks the existence of constants C, C_tilde != 0 and scalar jets c_hat,
// d_hat with nonzero constant term such that
//   mrv    = C conj(mrphit)^T + O(|xi|^m_tilde) = c_hat V_hat + O(|xi|^m_tilde),
//   mrvt   = C_tilde conj(mrphi)^T + O(|xi|^m)   = d_hat V_hat + O(|xi|^m),
//   conj(mrphi)^T mrphit = 1 + O(|xi|^(m+m_tilde)),
// each by an exact linear solve.
struct McfReport {
    bool pass = false;
    int m = 0;        // sum rule order of a_tilde
    int m_tilde = 0;  // sum rule order of a
    Jet c_jet, d_jet;
    CycNum big_c, big_c_tilde;
    std::vector<McfCheck> checks;
};

McfReport verify_mcf(const FrameletSystem& sys);

struct EigenCheck {
    std::string name;
    bool simple = false;        // 1 is a simple eigenvalue (char poly test)
    bool family = true;         // the lambda^alpha determinant family is nonzero
};

// The converse-side nondegeneracy conditions: per-matrix simple-eigenvalue
// and Kronecker determinant checks (item ii), and the two intertwining
// relations for mrta = theta_tilde(M^T.) a_tilde theta_tilde^{-1} solved as
// scalar jets p_hat, q_hat normalized to 1 at 0 (items iii and iv).
struct McfConverseReport {
    bool pass = false;
    std::vector<EigenCheck> item_ii;
    McfCheck item_iii, item_iv;
    Jet p_jet, q_jet;
};

McfConverseReport verify_mcf_converse(const FrameletSystem& sys);

}  // namespace framelet
