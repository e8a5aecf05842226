#include <doctest.h>

#include <cmath>

#include "test_support.hpp"
#include "zapmmv/dense_matrix.hpp"
#include "zapmmv/errors.hpp"
#include "zapmmv/linalg.hpp"

using zapmmv::DenseMatrix;

TEST_CASE("orthonormal rows give pseudoinverse equal to the transpose") {
  SUBCASE("identity block") {
    DenseMatrix a(3, 6);
    for (std::size_t i = 0; i < 3; ++i) a(i, i) = 1.0;
    zapmmv::Projector p = zapmmv::build_projector(a);
    CHECK(testsup::max_abs_diff(p.pseudoinverse(), a.transposed()) <= 1e-12);
  }
  SUBCASE("hadamard rows") {
    DenseMatrix a{{0.5, 0.5, 0.5, 0.5}, {0.5, -0.5, 0.5, -0.5}};
    zapmmv::Projector p = zapmmv::build_projector(a);
    CHECK(testsup::max_abs_diff(p.pseudoinverse(), a.transposed()) <= 1e-12);
  }
}

TEST_CASE("pseudoinverse identities on a random fat matrix") {
  DenseMatrix a = testsup::random_matrix(4, 10, 55);
  zapmmv::Projector p = zapmmv::build_projector(a);
  DenseMatrix aa_dag = matmul(a, p.pseudoinverse());
  CHECK(testsup::max_abs_diff(aa_dag, DenseMatrix::identity(4)) <= 1e-10);
  DenseMatrix a_back = matmul(aa_dag, a);
  CHECK(testsup::rel_frob_diff(a_back, a) <= 1e-12);
}

TEST_CASE("rank deficient rows are refused") {
  DenseMatrix a{{1.0, 2.0, 3.0, 4.0}, {1.0, 2.0, 3.0, 4.0}};
  CHECK_THROWS_AS(zapmmv::build_projector(a), zapmmv::SingularGramError);
  DenseMatrix scaled{{1.0, 0.0, 0.0}, {0.0, 1e-13, 0.0}};
  CHECK_THROWS_AS(zapmmv::build_projector(scaled), zapmmv::SingularGramError);
}

TEST_CASE("only fat matrices are accepted") {
  CHECK_THROWS_AS(zapmmv::build_projector(testsup::random_matrix(5, 5, 7)),
                  zapmmv::DimensionError);
  CHECK_THROWS_AS(zapmmv::build_projector(testsup::random_matrix(6, 3, 7)),
                  zapmmv::DimensionError);
}

TEST_CASE("projection lands on the data plane and stays there") {
  DenseMatrix a = testsup::random_matrix(5, 12, 66);
  zapmmv::Projector p = zapmmv::build_projector(a);
  DenseMatrix x_true = testsup::random_matrix(12, 3, 67);
  DenseMatrix y = matmul(a, x_true);
  double y_norm = y.frobenius_norm();

  SUBCASE("feasible points are fixed points") {
    DenseMatrix ls = matmul(p.pseudoinverse(), y);
    DenseMatrix again = zapmmv::project(p, ls, y);
    CHECK(testsup::rel_frob_diff(again, ls) <= 1e-12);
  }

  SUBCASE("zero start recovers the least squares solution") {
    DenseMatrix from_zero = zapmmv::project(p, DenseMatrix::zero(12, 3), y);
    CHECK(testsup::rel_frob_diff(from_zero, matmul(p.pseudoinverse(), y)) <= 1e-12);
  }

  SUBCASE("feasibility and idempotence from an arbitrary start") {
    DenseMatrix x0 = testsup::random_matrix(12, 3, 68);
    DenseMatrix proj = zapmmv::project(p, x0, y);
    CHECK(subtract(matmul(a, proj), y).frobenius_norm() <= 1e-10 * y_norm);
    DenseMatrix twice = zapmmv::project(p, proj, y);
    CHECK(testsup::rel_frob_diff(twice, proj) <= 1e-10);

    // the correction is orthogonal to the null space of A, so projecting it
    // onto {AX = 0} leaves nothing behind
    DenseMatrix diff = subtract(proj, x0);
    DenseMatrix null_part = zapmmv::project(p, diff, DenseMatrix::zero(5, 3));
    CHECK(null_part.frobenius_norm() <= 1e-8 * (diff.frobenius_norm() + 1.0));
  }
}

TEST_CASE("projection rejects mismatched shapes") {
  DenseMatrix a = testsup::random_matrix(3, 8, 77);
  zapmmv::Projector p = zapmmv::build_projector(a);
  DenseMatrix y(3, 2);
  CHECK_THROWS_AS(zapmmv::project(p, DenseMatrix::zero(7, 2), y), zapmmv::DimensionError);
  CHECK_THROWS_AS(zapmmv::project(p, DenseMatrix::zero(8, 3), y), zapmmv::DimensionError);
  CHECK_THROWS_AS(zapmmv::project(p, DenseMatrix::zero(8, 2), DenseMatrix::zero(4, 2)),
                  zapmmv::DimensionError);
}
