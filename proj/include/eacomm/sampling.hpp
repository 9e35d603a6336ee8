#pragma once

#include <random>

#include "eacomm/strategies.hpp"

namespace eacomm {

using Rng = std::mt19937_64;

// Haar-ish random objects built from Gaussian ensembles; good enough for
// property tests, not calibrated for uniformity claims.
Cvec random_ket(int dim, Rng& rng);
Cmat random_unitary(int dim, Rng& rng);
DensityState random_pure_state(std::vector<int> dims, Rng& rng);

// Random POVM with `outcomes` elements on dimension `dim` via the
// T^dagger T / S^{-1/2} normalization.
Povm random_povm(int dim, int outcomes, Rng& rng);

// Random rank-1 projective measurement (von Neumann), outcomes = dim,
// optionally zero-padded to `outcomes`.
Povm random_projective_povm(int dim, int outcomes, Rng& rng);

// Random isometric channel dim_in -> dim_out (requires dim_out >= dim_in is
// not needed; uses a Haar unitary on the larger space compressed to an
// isometry, single Kraus term when dims match).
KrausChannel random_unitary_channel(int dim, Rng& rng);

// Random valid qubit prepare-and-measure data: X unit states, per setting a
// POVM with outcome counts drawn from {2,3,4}; projective=true draws binary
// unit-vector measurements instead.
QubitPmData random_qubit_pm(int X, int Y, Rng& rng, bool projective);

// Random non-adaptive EA strategy on qubits with a commuting lift: the base
// measurements are binary POVMs or random projective measurements.
NonAdaptiveStrategy random_nonadaptive(int X, int Y, int D, int num_outputs, Rng& rng,
                                       bool commuting_base = true);

// Random quantum-message strategy in the product or sequential classes for
// the discrimination scenario (Y measurements, B outputs).
QuantumMessageStrategy random_separable_quantum_strategy(int X, int Y, int B, int message_dim,
                                                         MeasurementClass cls, Rng& rng);

}  // namespace eacomm
