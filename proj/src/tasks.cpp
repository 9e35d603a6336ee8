#include "eacomm/tasks.hpp"

#include <cmath>
#include <stdexcept>

namespace eacomm {

LinearFunctional rac_functional() {
  LinearFunctional f;
  f.X = 4;
  f.Y = 2;
  f.B = 2;
  f.coeffs.assign(f.X * f.Y * f.B, 0.0);
  f.input_distribution.assign(f.X * f.Y, 1.0 / 8.0);
  for (int x = 0; x < 4; ++x) {
    int bits[2] = {(x >> 1) & 1, x & 1};  // x = (x1, x2), row-major
    for (int y = 0; y < 2; ++y) f.at(x, y, bits[y]) = 1.0 / 8.0;
  }
  return f;
}

LinearFunctional facet_functional() {
  LinearFunctional f;
  f.X = 3;
  f.Y = 2;
  f.B = 3;
  f.coeffs.assign(f.X * f.Y * f.B, 0.0);
  f.outcomes_per_y = {2, 3};
  // y=0 (two outcomes): -p(1|11) + p(1|21) + p(1|31)
  f.at(0, 0, 0) = -1;
  f.at(1, 0, 0) = 1;
  f.at(2, 0, 0) = 1;
  // y=1 (three outcomes): -p(1|12) - p(1|22) + p(1|32) - p(2|12) + p(2|22) - p(2|32)
  f.at(0, 1, 0) = -1;
  f.at(1, 1, 0) = -1;
  f.at(2, 1, 0) = 1;
  f.at(0, 1, 1) = -1;
  f.at(1, 1, 1) = 1;
  f.at(2, 1, 1) = -1;
  return f;
}

LinearFunctional mesd_functional(int X) {
  LinearFunctional f;
  f.X = X;
  f.Y = 1;
  f.B = X;
  f.coeffs.assign(X * X, 0.0);
  for (int x = 0; x < X; ++x) f.at(x, 0, x) = 1.0 / X;
  return f;
}

double evaluate(const LinearFunctional& f, const Behavior& p) {
  if (f.X != p.X || f.Y != p.Y || f.B != p.B)
    throw std::invalid_argument("functional/behavior dimension mismatch");
  double acc = f.offset;
  for (size_t i = 0; i < f.coeffs.size(); ++i) acc += f.coeffs[i] * p.p[i];
  return acc;
}

double mesd_rate(const Behavior& p) {
  if (p.Y != 1 || p.B != p.X)
    throw std::invalid_argument("mesd_rate requires Y=1 and B=X");
  double acc = 0;
  for (int x = 0; x < p.X; ++x) acc += p.at(x, 0, x);
  return acc / p.X;
}

namespace {

// Iterates d[i] over mixed radices; returns false when wrapped around.
bool next_mixed(std::vector<int>& idx, const std::vector<int>& radix) {
  for (int i = static_cast<int>(idx.size()) - 1; i >= 0; --i) {
    if (++idx[i] < radix[i]) return true;
    idx[i] = 0;
  }
  return false;
}

}  // namespace

ClassicalBound classical_bound(const LinearFunctional& f, int message_size) {
  const int D = message_size;
  double total = std::pow(static_cast<double>(D), f.X);
  for (int y = 0; y < f.Y; ++y)
    total *= std::pow(static_cast<double>(f.outcomes_for(y)), D);
  if (total > 1e8) throw std::invalid_argument("classical_bound: enumeration guard exceeded");

  std::vector<int> enc_radix(f.X, D);
  std::vector<int> dec_radix;
  for (int y = 0; y < f.Y; ++y)
    for (int m = 0; m < D; ++m) dec_radix.push_back(f.outcomes_for(y));

  ClassicalBound best;
  best.value = -std::numeric_limits<double>::infinity();

  std::vector<int> enc(f.X, 0);
  do {
    std::vector<int> dec(dec_radix.size(), 0);
    do {
      double v = f.offset;
      for (int x = 0; x < f.X; ++x)
        for (int y = 0; y < f.Y; ++y) v += f.at(x, y, dec[y * D + enc[x]]);
      if (v > best.value) {
        best.value = v;
        best.encoding = enc;
        best.decoding.assign(f.Y, std::vector<int>(D));
        for (int y = 0; y < f.Y; ++y)
          for (int m = 0; m < D; ++m) best.decoding[y][m] = dec[y * D + m];
      }
    } while (next_mixed(dec, dec_radix));
  } while (next_mixed(enc, enc_radix));

  return best;
}

std::vector<Behavior> deterministic_behaviors(const LinearFunctional& f, int message_size) {
  const int D = message_size;
  std::vector<int> enc_radix(f.X, D);
  std::vector<int> dec_radix;
  for (int y = 0; y < f.Y; ++y)
    for (int m = 0; m < D; ++m) dec_radix.push_back(f.outcomes_for(y));

  std::vector<Behavior> out;
  std::vector<int> enc(f.X, 0);
  do {
    std::vector<int> dec(dec_radix.size(), 0);
    do {
      Behavior p(f.X, f.Y, f.B);
      for (int x = 0; x < f.X; ++x)
        for (int y = 0; y < f.Y; ++y) p.at(x, y, dec[y * D + enc[x]]) = 1.0;
      bool dup = false;
      for (const auto& q : out)
        if (q.p == p.p) {
          dup = true;
          break;
        }
      if (!dup) out.push_back(std::move(p));
    } while (next_mixed(dec, dec_radix));
  } while (next_mixed(enc, enc_radix));
  return out;
}

int affine_rank(const std::vector<Behavior>& behaviors, double tol) {
  if (behaviors.size() < 2) return 0;
  const size_t n = behaviors[0].p.size();
  Eigen::MatrixXd diff(behaviors.size() - 1, n);
  for (size_t i = 1; i < behaviors.size(); ++i)
    for (size_t j = 0; j < n; ++j) diff(i - 1, j) = behaviors[i].p[j] - behaviors[0].p[j];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(diff);
  int rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > tol) ++rank;
  return rank;
}

}  // namespace eacomm
