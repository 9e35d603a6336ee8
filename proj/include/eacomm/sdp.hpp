#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace eacomm {

// One entry of a sparse symmetric matrix; i <= j, value mirrored below the
// diagonal.
struct SparseEntry {
  int i = 0, j = 0;
  double v = 0;
  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

// Affine semidefinite problem over one dense block:
//   maximize  objective . y + offset
//   s.t.      constant + sum_k y_k constraints[k]  >= 0  (PSD).
struct SdpProblem {
  int block_size = 0;
  std::vector<SparseEntry> constant;
  std::vector<std::vector<SparseEntry>> constraints;
  std::vector<double> objective;
  double offset = 0.0;
  std::string description;

  int num_vars() const { return static_cast<int>(constraints.size()); }
  friend bool operator==(const SdpProblem&, const SdpProblem&) = default;
};

enum class SdpStatus { kConverged, kIterationLimit, kStagnated, kTimeout };

struct SdpResult {
  SdpStatus status = SdpStatus::kIterationLimit;
  double value = 0.0;          // objective . y + offset at the last iterate
  double primal_value = 0.0;   // <constant, X> + offset (upper end of the bracket)
  double duality_gap = 0.0;    // <X, S>
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double min_eig_slack = 0.0;  // min eigenvalue of constant + A(y)
  int iterations = 0;
  std::vector<double> y;
};

struct SdpOptions {
  double tol = 1e-7;          // duality-gap target (relative)
  double feas_tol = 1e-7;     // residual target (relative)
  int max_iters = 200;
  double time_limit_s = 0.0;  // 0 disables the deadline
  bool verbose = false;
};

// Dense primal-dual path-following solver (predictor-corrector, HKM
// direction, infeasible start). Deterministic. Non-convergence is reported
// in the status, never silently.
SdpResult solve_sdp(const SdpProblem& p, const SdpOptions& opts = {});

// SDPA-style sparse text format. The file stores the problem exactly as
// written above (max sense, PSD expansion constant + sum y_k F_k with the
// constant matrix on k=0 lines); structured comments carry sense and offset.
// Values print with 17 significant digits so a round trip is bit exact.
void export_sdpa(const SdpProblem& p, const std::string& path);
SdpProblem import_sdpa(const std::string& path);

}  // namespace eacomm
