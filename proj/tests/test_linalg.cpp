#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "eacomm/quantum.hpp"
#include "eacomm/sampling.hpp"

using namespace eacomm;

namespace {

double max_abs(const Cmat& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("kron basics") {
  CHECK(max_abs(kron(identity(2), identity(2)) - identity(4)) == 0.0);

  // Z (x) Z leaves |phi+><phi+| invariant.
  DensityState phi = bell_phi_plus();
  Cmat zz = kron(pauli_z(), pauli_z());
  CHECK(max_abs(zz * phi.matrix * zz.adjoint() - phi.matrix) < 1e-12);

  // (X (x) 1)|phi+> is the Bell state with flipped parity.
  Cvec phi_plus = Cvec::Zero(4);
  phi_plus(0) = phi_plus(3) = 1.0 / std::sqrt(2.0);
  Cvec moved = kron(pauli_x(), identity(2)) * phi_plus;
  CHECK((moved - bell_ket(0, 1)).norm() < 1e-12);
}

TEST_CASE("partial trace") {
  DensityState phi = bell_phi_plus();
  DensityState redB = partial_trace(phi, {1});
  CHECK(max_abs(redB.matrix - 0.5 * identity(2)) < 1e-12);

  Rng rng(7);
  DensityState a = random_pure_state({2}, rng);
  DensityState b = random_pure_state({3}, rng);
  DensityState prod{kron(a.matrix, b.matrix), {2, 3}};
  CHECK(max_abs(partial_trace(prod, {0}).matrix - a.matrix) < 1e-12);
  CHECK(max_abs(partial_trace(prod, {1}).matrix - b.matrix) < 1e-12);

  // kron then partial_trace recovers both factors.
  DensityState c = random_pure_state({2}, rng);
  DensityState pc{kron(b.matrix, c.matrix), {3, 2}};
  CHECK(max_abs(partial_trace(pc, {0}).matrix - b.matrix) < 1e-12);

  CHECK_THROWS_AS(partial_trace(phi, {2}), std::invalid_argument);
}

TEST_CASE("dense-coding marginals are input independent") {
  DensityState phi = bell_phi_plus();
  Cmat first;
  for (int x = 0; x < 4; ++x) {
    Cmat u = identity(2);
    if (x & 1) u = pauli_x() * u;
    if ((x >> 1) & 1) u = pauli_z() * u;
    Cmat ub = kron(u, identity(2));
    DensityState moved{ub * phi.matrix * ub.adjoint(), {2, 2}};
    Cmat marg = partial_trace(moved, {1}).matrix;
    if (x == 0) first = marg;
    else CHECK(max_abs(marg - first) < 1e-12);
  }
}

TEST_CASE("bloch constructors") {
  DensityState up = qubit_from_bloch({0, 0, 1});
  Cmat zero_proj = (Cmat(2, 2) << 1, 0, 0, 0).finished();
  CHECK(max_abs(up.matrix - zero_proj) < 1e-15);

  Cmat plus_proj = povm_element_from_bloch(1.0, {1, 0, 0});
  Cvec plus(2);
  plus << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
  CHECK(max_abs(plus_proj - plus * plus.adjoint()) < 1e-15);

  // Element of the 3-outcome facet measurement: weight 7/8, |v| = 7/8.
  BlochVector v{-1.0 / 8, 0, -std::sqrt(3.0) / 2};
  CHECK(v.norm() == doctest::Approx(7.0 / 8).epsilon(1e-14));
  Cmat m = povm_element_from_bloch(7.0 / 8, v);
  CHECK(min_eigenvalue(m) > -1e-12);
  CHECK(m(0, 0).real() == doctest::Approx((7.0 / 8 - std::sqrt(3.0) / 2) / 2).epsilon(1e-12));
  CHECK(m(0, 1).real() == doctest::Approx(-1.0 / 16).epsilon(1e-12));

  CHECK_THROWS_AS(povm_element_from_bloch(0.5, {1, 0, 0}), invariant_error);
  CHECK_THROWS_AS(qubit_from_bloch({1.5, 0, 0}), invariant_error);
}

TEST_CASE("observable povm") {
  Povm z = observable_povm({0, 0, 1});
  CHECK(max_abs(z.elements[0] - (Cmat(2, 2) << 1, 0, 0, 0).finished()) < 1e-15);
  CHECK(max_abs(z.elements[1] - (Cmat(2, 2) << 0, 0, 0, 1).finished()) < 1e-15);

  // Diagonal direction: compare against an eigendecomposition of the observable.
  BlochVector d{1 / std::sqrt(2.0), 0, 1 / std::sqrt(2.0)};
  Povm p = observable_povm(d);
  Cmat obs = d.x * pauli_x() + d.z * pauli_z();
  Eigen::SelfAdjointEigenSolver<Cmat> es(obs);
  Cmat pp = es.eigenvectors().col(1) * es.eigenvectors().col(1).adjoint();
  Cmat pm = es.eigenvectors().col(0) * es.eigenvectors().col(0).adjoint();
  CHECK(max_abs(p.elements[0] - pp) < 1e-12);
  CHECK(max_abs(p.elements[1] - pm) < 1e-12);

  // Probabilities on the maximally mixed state are (1/2, 1/2) for any direction.
  Rng rng(3);
  std::normal_distribution<double> g;
  for (int i = 0; i < 20; ++i) {
    BlochVector r{g(rng), g(rng), g(rng)};
    r = (1.0 / r.norm()) * r;
    Povm q = observable_povm(r);
    q.validate();
    for (const auto& e : q.elements) {
      CHECK((0.5 * identity(2) * e).trace().real() == doctest::Approx(0.5).epsilon(1e-12));
      // Projectivity: M^2 = M.
      CHECK(max_abs(e * e - e) < 1e-10);
    }
  }
  CHECK_THROWS_AS(observable_povm({0.5, 0, 0}), invariant_error);
}

TEST_CASE("predicates and random objects") {
  Rng rng(11);
  CHECK(is_unitary(random_unitary(4, rng)));
  Povm p = random_povm(3, 4, rng);
  p.validate();
  CHECK(p.max_violation() < 1e-12);
  Povm proj = random_projective_povm(2, 3, rng);
  proj.validate();
  KrausChannel ch = random_unitary_channel(2, rng);
  ch.validate();
  DensityState st = random_pure_state({2, 2}, rng);
  st.validate();
  CHECK(is_psd(st.matrix));
  CHECK(is_hermitian(st.matrix));
  CHECK(!is_psd(-st.matrix));
  CHECK(operator_norm(pauli_x()) == doctest::Approx(1.0));
}
