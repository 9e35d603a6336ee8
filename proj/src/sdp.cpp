#include "eacomm/sdp.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace eacomm {

namespace {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

double frob_norm(const std::vector<SparseEntry>& entries) {
  double acc = 0;
  for (const auto& e : entries) acc += (e.i == e.j ? 1.0 : 2.0) * e.v * e.v;
  return std::sqrt(acc);
}

// tr(A * M) for sparse symmetric A and a general dense M.
double sparse_dot(const std::vector<SparseEntry>& a, const Mat& m) {
  double acc = 0;
  for (const auto& e : a) acc += e.i == e.j ? e.v * m(e.i, e.i) : e.v * (m(e.i, e.j) + m(e.j, e.i));
  return acc;
}

void add_sparse(Mat& m, const std::vector<SparseEntry>& a, double scale) {
  for (const auto& e : a) {
    m(e.i, e.j) += scale * e.v;
    if (e.i != e.j) m(e.j, e.i) += scale * e.v;
  }
}

// Largest step alpha in (0, 1] keeping M + alpha*D positive definite.
double max_step(const Mat& m, const Mat& d) {
  Eigen::LLT<Mat> llt(m);
  if (llt.info() != Eigen::Success) return 0.0;
  Mat l = llt.matrixL();
  Mat w = l.triangularView<Eigen::Lower>().solve(d);
  w = l.triangularView<Eigen::Lower>().solve(w.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (w + w.transpose()), Eigen::EigenvaluesOnly);
  double lam = es.eigenvalues().minCoeff();
  if (lam >= -1e-13) return 1.0;
  return std::min(1.0, -1.0 / lam);
}

}  // namespace

SdpResult solve_sdp(const SdpProblem& p, const SdpOptions& opts) {
  const int n = p.block_size;
  const int m = p.num_vars();
  if (n <= 0) throw std::invalid_argument("solve_sdp: empty block");
  if (static_cast<int>(p.objective.size()) != m)
    throw std::invalid_argument("solve_sdp: objective size mismatch");

  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  Mat C = Mat::Zero(n, n);
  add_sparse(C, p.constant, 1.0);
  Vec b = Eigen::Map<const Vec>(p.objective.data(), m);

  // Initial point: scaled identities, CSDP-style magnitudes.
  double amax = 1.0, bscale = 1.0;
  for (int k = 0; k < m; ++k) {
    double af = frob_norm(p.constraints[k]);
    amax = std::max(amax, af);
    bscale = std::max(bscale, (1.0 + std::abs(b(k))) / (1.0 + af));
  }
  double xi_p = std::sqrt(static_cast<double>(n)) * bscale * 10.0;
  double xi_d = std::sqrt(static_cast<double>(n)) * std::max({1.0, frob_norm(p.constant), amax});

  Mat X = xi_p * Mat::Identity(n, n);
  Mat S = xi_d * Mat::Identity(n, n);
  Vec y = Vec::Zero(m);

  SdpResult res;
  res.y.assign(m, 0.0);

  const double bnorm = 1.0 + b.cwiseAbs().maxCoeff();
  const double cnorm = 1.0 + (C.cwiseAbs().maxCoeff());

  Vec rp(m);            // primal residuals  -b_k - tr(A_k X)
  Mat Rd(n, n);         // dual residual     C + A(y) - S
  Mat B(m, m);          // Schur complement
  Vec diag_tr(m);       // tr(A_k Sinv)
  double prev_mu = std::numeric_limits<double>::infinity();
  int stall = 0;

  for (int iter = 0; iter < opts.max_iters; ++iter) {
    // Residuals and objective values.
    for (int k = 0; k < m; ++k) rp(k) = -b(k) - sparse_dot(p.constraints[k], X);
    Rd = C - S;
    for (int k = 0; k < m; ++k) add_sparse(Rd, p.constraints[k], y(k));

    double gap = (X.cwiseProduct(S)).sum();
    double dobj = b.dot(y);
    double pobj = (C.cwiseProduct(X)).sum();
    double rp_norm = m ? rp.cwiseAbs().maxCoeff() : 0.0;
    double rd_norm = Rd.cwiseAbs().maxCoeff();

    res.value = dobj + p.offset;
    res.primal_value = pobj + p.offset;
    res.duality_gap = gap;
    res.primal_residual = rp_norm;
    res.dual_residual = rd_norm;
    res.iterations = iter;
    Eigen::Map<Vec>(res.y.data(), m) = y;

    if (opts.verbose)
      std::fprintf(stderr, "sdp iter %3d gap %.3e pobj %.9f dobj %.9f rp %.2e rd %.2e\n", iter,
                   gap, pobj, dobj, rp_norm, rd_norm);

    double denom = 1.0 + std::abs(pobj) + std::abs(dobj);
    if (gap / denom <= opts.tol && rp_norm <= opts.feas_tol * bnorm &&
        rd_norm <= opts.feas_tol * cnorm) {
      res.status = SdpStatus::kConverged;
      break;
    }
    if (opts.time_limit_s > 0 && elapsed() > opts.time_limit_s) {
      res.status = SdpStatus::kTimeout;
      break;
    }
    double mu = gap / n;
    if (mu > prev_mu * 0.9999) {
      if (++stall >= 8) {
        res.status = SdpStatus::kStagnated;
        break;
      }
    } else {
      stall = 0;
    }
    prev_mu = mu;

    // Factor S and form Sinv.
    Eigen::LLT<Mat> llt_s(S);
    if (llt_s.info() != Eigen::Success) {
      S += 1e-12 * S.trace() * Mat::Identity(n, n);
      llt_s.compute(S);
      if (llt_s.info() != Eigen::Success) {
        res.status = SdpStatus::kStagnated;
        break;
      }
    }
    Mat Sinv = llt_s.solve(Mat::Identity(n, n));
    Sinv = 0.5 * (Sinv + Sinv.transpose()).eval();

    // Schur complement B_jk = tr(A_j X A_k Sinv), built from one dense
    // G_k = X A_k Sinv per variable (rank-wise outer products).
    Mat G(n, n);
    for (int k = 0; k < m; ++k) {
      G.setZero();
      for (const auto& e : p.constraints[k]) {
        G.noalias() += e.v * (X.col(e.i) * Sinv.row(e.j));
        if (e.i != e.j) G.noalias() += e.v * (X.col(e.j) * Sinv.row(e.i));
      }
      for (int j = 0; j < m; ++j) B(j, k) = sparse_dot(p.constraints[j], G);
      diag_tr(k) = sparse_dot(p.constraints[k], Sinv);
    }
    B = 0.5 * (B + B.transpose()).eval();
    Eigen::LLT<Mat> llt_b(B);
    if (llt_b.info() != Eigen::Success) {
      B += (1e-13 * (1.0 + B.trace() / std::max(1, m))) * Mat::Identity(m, m);
      llt_b.compute(B);
      if (llt_b.info() != Eigen::Success) {
        res.status = SdpStatus::kStagnated;
        break;
      }
    }

    Mat H = X * Rd * Sinv;  // tr(A_j X Rd Sinv) terms
    Vec rhs(m);
    for (int j = 0; j < m; ++j) rhs(j) = b(j) - sparse_dot(p.constraints[j], H);

    // Predictor (affine direction, nu = 0).
    Vec dy_a = llt_b.solve(rhs);
    Mat dS_a = Rd;
    for (int k = 0; k < m; ++k) add_sparse(dS_a, p.constraints[k], dy_a(k));
    Mat dX_a = -X - X * dS_a * Sinv;
    dX_a = 0.5 * (dX_a + dX_a.transpose()).eval();

    double ap_a = max_step(X, dX_a);
    double ad_a = max_step(S, dS_a);
    double gap_aff =
        ((X + ap_a * dX_a).cwiseProduct(S + ad_a * dS_a)).sum();
    double sigma = std::pow(std::max(gap_aff, 0.0) / gap, 3);
    sigma = std::min(1.0, std::max(1e-10, sigma));
    double nu = sigma * mu;

    // Corrector with the second-order term dX_a dS_a.
    Mat H2 = dX_a * dS_a * Sinv;
    for (int j = 0; j < m; ++j)
      rhs(j) = b(j) + nu * diag_tr(j) - sparse_dot(p.constraints[j], H) -
               sparse_dot(p.constraints[j], H2);
    Vec dy = llt_b.solve(rhs);
    Mat dS = Rd;
    for (int k = 0; k < m; ++k) add_sparse(dS, p.constraints[k], dy(k));
    Mat dX = nu * Sinv - X - X * dS * Sinv - H2;
    dX = 0.5 * (dX + dX.transpose()).eval();

    double ap = 0.98 * max_step(X, dX);
    double ad = 0.98 * max_step(S, dS);
    if (ap < 1e-10 && ad < 1e-10) {
      if (++stall >= 3) {
        res.status = SdpStatus::kStagnated;
        break;
      }
    }

    X += ap * dX;
    y += ad * dy;
    S += ad * dS;
    X = 0.5 * (X + X.transpose()).eval();
    S = 0.5 * (S + S.transpose()).eval();
    res.iterations = iter + 1;
  }

  // Feasibility certificate for the reported dual value.
  Mat slack = C;
  for (int k = 0; k < m; ++k) add_sparse(slack, p.constraints[k], res.y[k]);
  Eigen::SelfAdjointEigenSolver<Mat> es(slack, Eigen::EigenvaluesOnly);
  res.min_eig_slack = es.eigenvalues().minCoeff();
  return res;
}

void export_sdpa(const SdpProblem& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("export_sdpa: cannot open " + path);
  char buf[64];
  auto fmt = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  out << "\"eacomm sdpa sparse export: maximize c.y with X = F0 + sum_k y_k Fk >= 0\n";
  if (!p.description.empty()) out << "\"" << p.description << "\n";
  out << "*sense max\n";
  out << "*offset " << fmt(p.offset) << "\n";
  out << p.num_vars() << "\n";
  out << 1 << "\n";
  out << p.block_size << "\n";
  for (int k = 0; k < p.num_vars(); ++k) out << (k ? " " : "") << fmt(p.objective[k]);
  out << "\n";
  for (const auto& e : p.constant)
    out << "0 1 " << e.i + 1 << " " << e.j + 1 << " " << fmt(e.v) << "\n";
  for (int k = 0; k < p.num_vars(); ++k)
    for (const auto& e : p.constraints[k])
      out << k + 1 << " 1 " << e.i + 1 << " " << e.j + 1 << " " << fmt(e.v) << "\n";
  if (!out) throw std::runtime_error("export_sdpa: write failure on " + path);
}

SdpProblem import_sdpa(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("import_sdpa: cannot open " + path);
  SdpProblem p;
  std::string line;
  std::vector<std::string> header;
  bool saw_offset = false;
  int nblocks = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '"') continue;
    if (line[0] == '*') {
      std::istringstream ls(line.substr(1));
      std::string key;
      ls >> key;
      if (key == "offset") {
        ls >> p.offset;
        saw_offset = true;
      }
      continue;
    }
    std::istringstream ls(line);
    if (header.size() < 3) {
      std::string tok;
      ls >> tok;
      header.push_back(tok);
      if (header.size() == 1) p.constraints.resize(std::stoi(tok));
      if (header.size() == 2) nblocks = std::stoi(tok);
      if (header.size() == 3) p.block_size = std::stoi(tok);
      continue;
    }
    if (p.objective.empty() && p.num_vars() > 0) {
      double v;
      while (ls >> v) p.objective.push_back(v);
      if (static_cast<int>(p.objective.size()) != p.num_vars())
        throw std::runtime_error("import_sdpa: objective length mismatch");
      continue;
    }
    int k, blk, i, j;
    double v;
    if (!(ls >> k >> blk >> i >> j >> v)) throw std::runtime_error("import_sdpa: bad entry line");
    if (blk != 1 || k < 0 || k > p.num_vars()) throw std::runtime_error("import_sdpa: bad indices");
    SparseEntry e{i - 1, j - 1, v};
    if (k == 0) p.constant.push_back(e);
    else p.constraints[k - 1].push_back(e);
  }
  if (nblocks != 1) throw std::runtime_error("import_sdpa: expected a single block");
  (void)saw_offset;
  return p;
}

}  // namespace eacomm
