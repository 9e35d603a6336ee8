#pragma once

#include <optional>
#include <vector>

#include "eacomm/protocol.hpp"

namespace eacomm {

// Linear functional on behaviors: sum_{x,y,b} c[x][y][b] p(b|x,y) + offset.
struct LinearFunctional {
  int X = 0, Y = 0, B = 0;
  std::vector<double> coeffs;  // same layout as Behavior::p
  double offset = 0.0;
  // Optional weights over (x,y) for score-type functionals (informational;
  // the weights are already folded into coeffs).
  std::vector<double> input_distribution;
  // Outcomes actually available per y (defaults to B for every y); used by
  // the classical oracle and the NPA scenario builders.
  std::vector<int> outcomes_per_y;

  double& at(int x, int y, int b) { return coeffs[(x * Y + y) * B + b]; }
  double at(int x, int y, int b) const { return coeffs[(x * Y + y) * B + b]; }
  int outcomes_for(int y) const {
    return outcomes_per_y.empty() ? B : outcomes_per_y[y];
  }
};

// Two-bit random access code: X=4 (inputs x=(x1,x2) in row-major bit order),
// Y=2, B=2, uniform input distribution folded into the coefficients.
LinearFunctional rac_functional();

// Correlation functional for the 3-preparation scenario with a 2-outcome and
// a 3-outcome measurement:
//   F = -p(1|11) + p(1|21) + p(1|31) - p(1|12) - p(1|22) + p(1|32)
//       - p(2|12) + p(2|22) - p(2|32)
// (outcome labels 1-based here; stored 0-based).
LinearFunctional facet_functional();

// Discrimination score as a functional: (1/X) sum_x p(b=x|x), Y=1, B=X.
LinearFunctional mesd_functional(int X);

double evaluate(const LinearFunctional& f, const Behavior& p);

// Average diagonal guessing probability (1/X) sum_x p(b=x|x) for a
// discrimination behavior with Y=1 and B=X.
double mesd_rate(const Behavior& p);

struct ClassicalBound {
  double value = 0.0;
  std::vector<int> encoding;                 // e[x] in [0,D)
  std::vector<std::vector<int>> decoding;    // d[y][m] in [0,B_y)
};

// Exact maximum of f over deterministic strategies with a D-valued message
// (shared randomness cannot improve a linear functional over a polytope).
// Guard: D^X * prod_y B_y^D must stay below 1e8.
ClassicalBound classical_bound(const LinearFunctional& f, int message_size);

// All deterministic behaviors for message size D (deduplicated), used for
// polytope rank checks.
std::vector<Behavior> deterministic_behaviors(const LinearFunctional& f, int message_size);

// Affine rank of a family of behaviors (rank of differences to the first).
int affine_rank(const std::vector<Behavior>& behaviors, double tol = 1e-7);

}  // namespace eacomm
