#pragma once

#include "eacomm/protocol.hpp"

namespace eacomm {

// Qubit prepare-and-measure data: pure states as unit Bloch vectors and, per
// measurement setting, elements (weight_b, v_b) with M_b = (weight*1 + v.sigma)/2.
// Valid data satisfies sum_b weight_b = 2 and sum_b v_b = 0 per setting.
struct QubitPmData {
  std::vector<BlochVector> states;
  std::vector<std::vector<std::pair<double, BlochVector>>> povms;  // [y][b]

  int X() const { return static_cast<int>(states.size()); }
  int Y() const { return static_cast<int>(povms.size()); }
  int B() const;  // max outcome count over y
  void validate() const;
};

// Born-rule behavior p(b|x,y) = (w_by + n_x . v_by)/2, padded with zeros up
// to the maximal outcome count.
Behavior born_behavior(const QubitPmData& pm);

// One-ebit simulation of a qubit prepare-and-measure experiment: the sender
// measures phi+ along (nX,-nY,nZ) and the receiver applies
// M_{b|y,m} = (w_by*1 + m v_by.sigma)/2 for message m = +/-1. Exact.
AdaptiveStrategy simulate_qubit_pm(const QubitPmData& pm);

// Message conventions for all constructors: index 0 is the "+1" outcome
// branch and, for trit protocols, indices 1 and 2 are the "(-1,0)" and
// "(-1,1)" branches. Outputs are bit values stored as indices {0,1}.

// Optimal one-ebit RAC protocol (non-adaptive): sender measures
// ((-1)^{x1} Z + (-1)^{x2} X)/sqrt(2), receiver measures Z or X and flips on
// a mismatch with the message. Value (1 + 1/sqrt(2))/2.
NonAdaptiveStrategy chsh_ea_bit_rac();

// Non-adaptive trit extension: tilted sender observables
// (-1)^{x1} cos(theta) Z + (-1)^{x2} sin(theta) X, message (-1, x1) on the
// -1 branch. Value (5 + cos(theta) + 2 sin(theta))/8; theta in (0, pi/2).
NonAdaptiveStrategy na_ea_trit_rac(double theta);

// Adaptive trit protocol: message (-1, x1 xor x2) on the -1 branch lets the
// receiver discriminate perfectly with Z + (-1)^c X. Value (3 + 1/sqrt(2))/4.
AdaptiveStrategy adaptive_ea_trit_rac();

// Three-preparation strategy with a non-projective 3-outcome measurement
// reaching F = 9/4 on facet_functional.
QubitPmData facet_qubit_povm_strategy();

// Projective variant saturating F = sqrt(5).
QubitPmData facet_qubit_projective_strategy();

// Four states at +/-pi/4 between Z and X, measured in Z or X; RAC value
// (1 + 1/sqrt(2))/2 without entanglement.
QubitPmData unassisted_qubit_rac();

// Dense coding: X = D^2 inputs encoded by Z^{x1}X^{x2} on one half of phi+,
// decoded by a joint Bell measurement. Only D=2 is constructed.
QuantumMessageStrategy dense_coding_strategy(int message_dim);

// Same encoding, but the receiver measures Z (x) Z through a product
// measurement with a parity output map; identifies one bit only.
QuantumMessageStrategy dense_coding_product_zz();

// RAC with an entangled qubit message: measure X (x) X (bit 1) or Z (x) Z
// (bit 2) as product measurements; wins with certainty.
QuantumMessageStrategy stochastic_dense_coding_rac();

}  // namespace eacomm
