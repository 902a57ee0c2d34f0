#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hdnt/errors.hpp"
#include "hdnt/linalg.hpp"
#include "test_helpers.hpp"

using namespace hdnt;

TEST_CASE("SymMatrix symmetrizes on construction") {
  Eigen::MatrixXd a(2, 2);
  a << 1.0, 3.0, 1.0, 2.0;
  const SymMatrix s(a);
  CHECK(s(0, 1) == s(1, 0));
  CHECK(s(0, 1) == doctest::Approx(2.0));
  CHECK_THROWS_AS(SymMatrix(Eigen::MatrixXd::Zero(2, 3)), ShapeError);
}

TEST_CASE("sym_eigen identity and diagonal cases") {
  const SymEigen eye = sym_eigen(SymMatrix::identity(3));
  for (int i = 0; i < 3; ++i) CHECK(eye.values(i) == doctest::Approx(1.0));
  CHECK((eye.vectors.transpose() * eye.vectors - Eigen::MatrixXd::Identity(3, 3))
            .norm() <= 1e-10 * 3);

  Eigen::VectorXd diag(2);
  diag << 4.0, 9.0;
  const SymEigen de = sym_eigen(SymMatrix::from_diagonal(diag));
  CHECK(de.values(0) == doctest::Approx(4.0));
  CHECK(de.values(1) == doctest::Approx(9.0));
}

TEST_CASE("sym_eigen 2x2 hand case and reconstruction") {
  Eigen::MatrixXd a(2, 2);
  a << 2.0, 1.0, 1.0, 2.0;
  const SymMatrix s(a);
  const SymEigen eig = sym_eigen(s);
  CHECK(eig.values(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(eig.values(1) == doctest::Approx(3.0).epsilon(1e-12));
  const Eigen::MatrixXd recon =
      eig.vectors * eig.values.asDiagonal() * eig.vectors.transpose();
  CHECK((recon - s.mat()).norm() <= 1e-9);
}

TEST_CASE("sym_eigen reconstruction on random symmetric matrices up to d=300") {
  RngStream rng(1001);
  for (const int d : {2, 7, 40, 120, 300}) {
    const SymMatrix a = test_helpers::random_symmetric(d, rng);
    const SymEigen eig = sym_eigen(a);
    for (int i = 1; i < d; ++i) CHECK(eig.values(i - 1) <= eig.values(i));
    const double ortho =
        (eig.vectors.transpose() * eig.vectors - Eigen::MatrixXd::Identity(d, d))
            .norm();
    CHECK(ortho <= 1e-10 * d);
    const Eigen::MatrixXd recon =
        eig.vectors * eig.values.asDiagonal() * eig.vectors.transpose();
    CHECK((recon - a.mat()).norm() <= 1e-9 * std::max(1.0, a.frobenius_norm()));
  }
}

TEST_CASE("sym_eigen rejects non-finite input") {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 2);
  a(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(sym_eigen(SymMatrix(a)), InvalidMatrix);
}

TEST_CASE("psd_sqrt identity, diagonal, and hand case") {
  const SymMatrix eye = psd_sqrt(SymMatrix::identity(5));
  CHECK((eye.mat() - Eigen::MatrixXd::Identity(5, 5)).norm() <= 1e-12);

  Eigen::VectorXd diag(2);
  diag << 4.0, 9.0;
  const SymMatrix root = psd_sqrt(SymMatrix::from_diagonal(diag));
  CHECK(root(0, 0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(root(1, 1) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(std::abs(root(0, 1)) <= 1e-12);

  Eigen::MatrixXd a(2, 2);
  a << 2.0, 1.0, 1.0, 2.0;
  const SymMatrix r = psd_sqrt(SymMatrix(a));
  const double s3 = std::sqrt(3.0);
  CHECK(r(0, 0) == doctest::Approx((s3 + 1) / 2).epsilon(1e-12));
  CHECK(r(0, 1) == doctest::Approx((s3 - 1) / 2).epsilon(1e-12));
  CHECK((r.mat() * r.mat() - a).norm() <= 1e-8);
}

TEST_CASE("psd_sqrt square-back property on random PSD matrices") {
  RngStream rng(2002);
  for (const int d : {1, 3, 17, 80, 300}) {
    const SymMatrix a = test_helpers::random_psd(d, std::max(1, d / 2), rng);
    const SymMatrix r = psd_sqrt(a);
    const double tol = 1e-8 * std::max(1.0, a.frobenius_norm());
    CHECK((r.mat() * r.mat() - a.mat()).norm() <= tol);
    CHECK(sym_eigen(r).values(0) >= -1e-10);
  }
}

TEST_CASE("psd_sqrt rejects indefinite matrices") {
  Eigen::MatrixXd a(2, 2);
  a << 1.0, 2.0, 2.0, 1.0;  // eigenvalues 3, -1
  CHECK_THROWS_AS(psd_sqrt(SymMatrix(a)), NotPositiveSemidefinite);
}

TEST_CASE("psd_repair leaves PD input alone and shifts indefinite input") {
  const auto [same, repaired] = psd_repair(SymMatrix::identity(4));
  CHECK_FALSE(repaired);
  CHECK((same.mat() - Eigen::MatrixXd::Identity(4, 4)).norm() == 0.0);

  Eigen::MatrixXd a(2, 2);
  a << 1.0, 2.0, 2.0, 1.0;  // lmin = -1, delta = 1.05
  const auto [fixed, flag] = psd_repair(SymMatrix(a));
  CHECK(flag);
  const Eigen::MatrixXd expected =
      (a + 1.05 * Eigen::MatrixXd::Identity(2, 2)) / 2.05;
  CHECK((fixed.mat() - expected).norm() <= 1e-14);
  CHECK(sym_eigen(fixed).values(0) > 0.0);

  const auto [again, second] = psd_repair(fixed);
  CHECK_FALSE(second);
  CHECK((again.mat() - fixed.mat()).norm() == 0.0);
}

TEST_CASE("psd_repair output is positive definite for random symmetric input") {
  RngStream rng(3003);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 1 + static_cast<int>(rng.uniform_index(40));
    const auto [fixed, flag] = psd_repair(test_helpers::random_symmetric(d, rng));
    (void)flag;
    CHECK(sym_eigen(fixed).values(0) > 0.0);
  }
}

TEST_CASE("mvn_sample basic contracts") {
  RngStream rng(7);
  const SampleMatrix empty =
      mvn_sample(rng, Eigen::VectorXd::Zero(3), SymMatrix::identity(3), 0);
  CHECK(empty.n() == 0);
  CHECK(empty.dim() == 3);

  CHECK_THROWS_AS(
      mvn_sample(rng, Eigen::VectorXd::Zero(2), SymMatrix::identity(3), 1),
      DimensionMismatch);
}

TEST_CASE("mvn_sample moments converge") {
  RngStream rng(4004);
  const int n = 10000;
  const SampleMatrix draws =
      mvn_sample(rng, Eigen::VectorXd::Zero(2), SymMatrix::identity(2), n);
  const Eigen::VectorXd mean = draws.data().colwise().mean();
  CHECK(std::abs(mean(0)) <= 0.05);
  CHECK(std::abs(mean(1)) <= 0.05);

  RngStream rng2(4005);
  Eigen::VectorXd two(1);
  two << 2.0;
  const SampleMatrix wide =
      mvn_sample(rng2, Eigen::VectorXd::Zero(1), SymMatrix::from_diagonal(two), n);
  const double m = wide.data().col(0).mean();
  const double var =
      (wide.data().col(0).array() - m).square().sum() / n;
  CHECK(var >= 3.6);
  CHECK(var <= 4.4);
}

TEST_CASE("mvn_sample is reproducible from the seed") {
  Eigen::MatrixXd a(3, 3);
  a << 2.0, 0.3, 0.1, 0.3, 1.5, 0.2, 0.1, 0.2, 1.0;
  const SymMatrix root = psd_sqrt(SymMatrix(a));
  RngStream r1(99), r2(99);
  const SampleMatrix s1 = mvn_sample(r1, Eigen::VectorXd::Ones(3), root, 20);
  const SampleMatrix s2 = mvn_sample(r2, Eigen::VectorXd::Ones(3), root, 20);
  CHECK((s1.data() - s2.data()).norm() == 0.0);
}

TEST_CASE("rng substreams decorrelate and derive deterministically") {
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  CHECK(derive_seed(5, 3) == derive_seed(5, 3));

  RngStream a(123);
  RngStream sub0 = a.substream(0);
  RngStream sub0b = RngStream(123).substream(0);
  CHECK(sub0.normal() == sub0b.normal());
}

TEST_CASE("sample_without_replacement draws distinct indices") {
  RngStream rng(55);
  const std::vector<int> pick = sample_without_replacement(5, 12, rng);
  CHECK(pick.size() == 5);
  std::vector<bool> seen(12, false);
  for (const int v : pick) {
    CHECK(v >= 0);
    CHECK(v < 12);
    CHECK_FALSE(seen[v]);
    seen[v] = true;
  }
  const std::vector<int> all = sample_without_replacement(4, 4, rng);
  std::vector<int> sorted = all;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<int>{0, 1, 2, 3});
}
