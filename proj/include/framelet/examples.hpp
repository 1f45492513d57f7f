#pragma once

#include "framelet/filterbank.hpp"

namespace framelet {

// Scalar Haar pair with its UEP highpass: a = a~ = (1+z)/2, b = b~ = (1-z)/2.
FrameletSystem haar_uep_system();

// Two-channel stacked Haar pair a = a~ = (1/2) [[1, 1], [z, z]] over N = [2]
// with theta = 2I, theta_tilde = I; sum rules of order 1 on both sides.
FrameletSystem stacked_haar_system();

// Two-channel quincunx system: refinement masks with sum rules of order 2 on
// both sides and a strongly invertible balanced moment correction pair
// (theta, theta_tilde), everything over Q(zeta_8).  The matching jets are
// set explicitly to (1, 1 +- (i/2)(xi_1 + xi_2)).
FrameletSystem quincunx_r2_system();

}  // namespace framelet
