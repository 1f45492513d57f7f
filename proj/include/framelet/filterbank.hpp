#pragma once

#include <optional>
#include <string>

#include "framelet/jet.hpp"
#include "framelet/lattice.hpp"

namespace framelet {

// A multiframelet filter bank: matrix lowpass pair (a, a_tilde), optional
// strongly invertible twists (theta, theta_tilde), optional highpass pair
// (b, b_tilde), an optional explicit moment correction Theta, and optional
// moment jets for the underlying refinable vectors.
struct FrameletSystem {
    unsigned cyc_order = 8;
    Dilation dil;
    Vectorizer vec;
    LaurentMatrix a, a_tilde;
    std::optional<LaurentMatrix> theta, theta_tilde;
    std::optional<LaurentMatrix> b, b_tilde;
    std::optional<LaurentMatrix> big_theta;
    std::optional<Jet> upsilon, upsilon_tilde;

    int dim() const { return dil.dim; }
    long multiplicity() const { return a.rows(); }

    LaurentMatrix theta_or_identity() const;
    LaurentMatrix theta_tilde_or_identity() const;
    // Explicit Theta when present, otherwise theta* theta_tilde, otherwise
    // the identity.
    LaurentMatrix Theta() const;

    void validate_shapes() const;
};

// Polyphase row Q_u = [u^{[gamma_1]} | ... | u^{[gamma_L]}], an r x (c*L)
// matrix of functions of the downsampled variable.
LaurentMatrix polyphase_row(const LaurentMatrix& u, const Dilation& dil);

// Mixing matrix F with r x r blocks F_{l,k} = e^{-i gamma_l.(xi + 2 pi
// omega_k)} I_r; it satisfies F F* = d_M I.
LaurentMatrix modulation_mixer(long r, const Dilation& dil, unsigned cyc_order);

// E_{u,omega} with blocks (l,k) = u^{[gamma_k - gamma_l]}(xi) e^{2 pi i
// gamma_l.omega}.
LaurentMatrix coset_difference_matrix(const LaurentMatrix& u,
                                      const std::vector<Rational>& omega,
                                      const Dilation& dil);

// P_u(xi) = Q_u(M^T xi) F(xi).
LaurentMatrix polyphase_full(const LaurentMatrix& u, const Dilation& dil);

// D_{u,omega} with blocks (p,q) = u_hat(xi + 2 pi omega_p + 2 pi omega) when
// omega_p + omega - omega_q is integral, zero otherwise.
LaurentMatrix modulation_matrix(const LaurentMatrix& u,
                                const std::vector<Rational>& omega,
                                const Dilation& dil);

// N = d_M^{-1} E_{Theta,0} - Q_a* Theta Q_{a_tilde}, all in the downsampled
// variable.  The filter bank is a dual pair iff N equals Q_b* Q_{b_tilde}.
LaurentMatrix mixed_moment_block(const LaurentMatrix& a, const LaurentMatrix& a_tilde,
                                 const LaurentMatrix& big_theta, const Dilation& dil);

struct DffbReport {
    bool pass = false;
    std::string witness;  // first failing block, entry, and exponent on failure
};

// Checks N == Q_b* Q_{b_tilde} exactly and reports the first discrepancy.
DffbReport verify_dffb(const FrameletSystem& sys);

}  // namespace framelet
