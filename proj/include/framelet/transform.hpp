#pragma once

#include <string>
#include <vector>

#include "framelet/filterbank.hpp"
#include "framelet/signal.hpp"

namespace framelet {

struct DmftCoeffs {
    Signal approx;               // coarsest lowpass band v_J
    std::vector<Signal> detail;  // w_1 ... w_J, finest first
};

// Analysis side: v_j = T_a v_{j-1}, w_j = T_b v_{j-1} for j = 1..levels.
DmftCoeffs dmft_forward(const FrameletSystem& sys, const Signal& v0, int levels);

// Synthesis side with the moment correction sandwich: the coarsest band is
// convolved with Theta, each level runs S_{a_tilde} + S_{b_tilde}, and the
// result is deconvolved by Theta (which must be strongly invertible).
Signal dmft_inverse(const FrameletSystem& sys, const DmftCoeffs& coeffs);

struct BalancingProbe {
    bool zero = false;        // all interior detail coefficients vanish
    long interior = 0;        // number of interior positions checked
    std::string witness;      // first nonzero interior coefficient if any
};

// Samples the monomial x^mu on [-radius, radius]^d, folds it through the
// vectorizer (complete fibers only), applies the highpass transition, and
// checks that every coefficient unaffected by the window boundary vanishes.
BalancingProbe probe_balancing(const FrameletSystem& sys, const MIdx& mu, long radius);

}  // namespace framelet
