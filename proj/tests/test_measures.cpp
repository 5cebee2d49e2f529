#include <doctest.h>

#include <random>

#include "gleason/measures.hpp"

using namespace gleason;

namespace {

HermitianOp diag_op(std::vector<double> d) {
  Matrix m = Matrix::Zero(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (int i = 0; i < static_cast<int>(d.size()); ++i) m(i, i) = d[i];
  return HermitianOp(std::move(m));
}

std::pair<Subspace, Subspace> random_orthogonal_pair(std::mt19937_64& rng, int d) {
  const int k = 1 + static_cast<int>(rng() % (d - 1));
  const Subspace m = random_subspace(rng, d, k);
  const Subspace comp = ortho_complement(m);
  const int j = 1 + static_cast<int>(rng() % comp.dim());
  std::vector<Vector> cols;
  for (int i = 0; i < j; ++i) cols.push_back(comp.basis().col(i));
  return {m, orthonormalize(cols, d)};
}

}  // namespace

TEST_CASE("evaluation of generated measures") {
  const GleasonMeasure m(diag_op({0.5, 1.0 / 3.0, 1.0 / 6.0}));
  CHECK(eval(m, Subspace::coordinate(3, {0, 1})) == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
  CHECK(eval(m, Subspace::zero(3)) == 0.0);

  const GleasonMeasure counting(HermitianOp(Matrix::Identity(5, 5)));
  CHECK(eval(counting, Subspace::full(5)) == doctest::Approx(5.0));

  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 3 + static_cast<int>(rng() % 4);
    const GleasonMeasure mm(random_hermitian(rng, d));
    const auto [a, b] = random_orthogonal_pair(rng, d);
    CHECK(std::abs(eval(mm, join(a, b)) - eval(mm, a) - eval(mm, b)) < 1e-9);
  }
}

TEST_CASE("symmetrized product measures") {
  std::mt19937_64 rng(59);
  const HermitianOp t = random_hermitian(rng, 4);
  const GleasonMeasure base = jordan_measure(t, HermitianOp(Matrix::Identity(4, 4)));
  CHECK(max_abs(base.generator().matrix() - t.matrix()) < 1e-12);

  const int d = 4;
  const GleasonMeasure m =
      jordan_measure(HermitianOp(Matrix::Identity(d, d) / d), diag_op({1, -1, 0, 0}));
  CHECK(eval(m, Subspace::coordinate(d, {0})) == doctest::Approx(1.0 / d));
  CHECK(eval(m, Subspace::coordinate(d, {1})) == doctest::Approx(-1.0 / d));

  for (int trial = 0; trial < 20; ++trial) {
    const HermitianOp tt = random_hermitian(rng, 4);
    const HermitianOp aa = random_hermitian(rng, 4);
    const GleasonMeasure g = jordan_measure(tt, aa);
    const Subspace mm = random_subspace(rng, 4, 2);
    const Matrix p = projector(mm).matrix();
    // both sides of the defining identity, evaluated independently
    const double lhs = (g.generator().matrix() * p).trace().real();
    const double rhs =
        (tt.matrix() * (aa.matrix() * p + p * aa.matrix()) / 2.0).trace().real();
    CHECK(std::abs(lhs - rhs) < 1e-9);
  }
}

TEST_CASE("state recognition") {
  CHECK(is_state(GleasonMeasure(HermitianOp(Matrix::Identity(4, 4) / 4.0))));
  CHECK(!is_state(GleasonMeasure(diag_op({1.0 / 0.9, -0.1 / 0.9}))));
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix g = random_hermitian(rng, 3).matrix();
    Matrix density = g * g.adjoint();
    density /= density.trace().real();
    CHECK(is_state(GleasonMeasure(HermitianOp(std::move(density)))));
  }
}

TEST_CASE("frame-function bridge") {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 5; ++trial) {
    const HermitianOp t = random_hermitian(rng, 4);
    const GleasonMeasure m(t);
    const GleasonMeasure back = measure_from_frame(frame_from_measure(m));
    CHECK(max_abs(back.generator().matrix() - t.matrix()) < 1e-9);
  }

  // the constant-one frame function measures dimension
  const GleasonMeasure dim_measure =
      measure_from_frame(FrameFunctionView(MatrixForm(HermitianOp(Matrix::Identity(4, 4)))));
  CHECK(eval(dim_measure, Subspace::coordinate(4, {0, 2, 3})) == doctest::Approx(3.0));

  // the zero measure induces the zero frame function
  const FrameFunctionView zero = frame_from_measure(GleasonMeasure(HermitianOp(Matrix::Zero(3, 3))));
  for (int trial = 0; trial < 5; ++trial) CHECK(zero(random_unit(rng, 3)) == 0.0);
}

TEST_CASE("additivity checks") {
  std::mt19937_64 rng(71);
  const GleasonMeasure m(random_hermitian(rng, 5));
  std::vector<Subspace> coords;
  for (int i = 0; i < 5; ++i) coords.push_back(Subspace::coordinate(5, {i}));
  CHECK(check_additivity(m, coords).pass);

  const auto [a, b] = random_orthogonal_pair(rng, 5);
  CHECK(check_additivity(m, {a, b}).pass);

  const Subspace overlapping = Subspace::coordinate(5, {0, 1});
  CHECK_THROWS_AS(check_additivity(m, {overlapping, Subspace::coordinate(5, {1})}),
                  std::invalid_argument);
}

TEST_CASE("regularity chains climb the eigenvalues") {
  const RegularityReport r1 =
      check_regularity(GleasonMeasure(HermitianOp(Matrix::Identity(4, 4))), Subspace::full(4));
  REQUIRE(r1.chain.size() == 4);
  CHECK(r1.chain[0] == doctest::Approx(1.0));
  CHECK(r1.chain[1] == doctest::Approx(2.0));
  CHECK(r1.chain[2] == doctest::Approx(3.0));
  CHECK(r1.chain[3] == doctest::Approx(4.0));
  CHECK(r1.pass);

  const RegularityReport r2 =
      check_regularity(GleasonMeasure(diag_op({3, 2, 1, 0})), Subspace::full(4));
  REQUIRE(r2.chain.size() == 4);
  CHECK(r2.chain[0] == doctest::Approx(3.0));
  CHECK(r2.chain[1] == doctest::Approx(5.0));
  CHECK(r2.chain[2] == doctest::Approx(6.0));
  CHECK(r2.chain[3] == doctest::Approx(6.0));
  CHECK(r2.pass);

  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix g = random_hermitian(rng, 5).matrix();
    const GleasonMeasure m(HermitianOp(Matrix(g * g.adjoint())));
    const Subspace sub = random_subspace(rng, 5, 3);
    const RegularityReport r = check_regularity(m, sub);
    CHECK(r.pass);
    CHECK(std::abs(r.chain.back() - eval(m, sub)) < 1e-8);
  }

  CHECK_THROWS_AS(check_regularity(GleasonMeasure(diag_op({1, -1})), Subspace::full(2)),
                  std::invalid_argument);
}

TEST_CASE("sums of regular measures stay regular") {
  std::mt19937_64 rng(79);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix g1 = random_hermitian(rng, 4).matrix();
    Matrix g2 = random_hermitian(rng, 4).matrix();
    const GleasonMeasure sum(HermitianOp(Matrix(g1 * g1.adjoint() + g2 * g2.adjoint())));
    const Subspace m = random_subspace(rng, 4, 3);
    const RegularityReport r = check_regularity(sum, m);
    CHECK(r.pass);
  }
}

TEST_CASE("positive-generator cone behaves like a cancellative partial monoid") {
  std::mt19937_64 rng(83);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix g1 = random_hermitian(rng, 3).matrix();
    Matrix g2 = random_hermitian(rng, 3).matrix();
    Matrix g3 = random_hermitian(rng, 3).matrix();
    const Matrix a = g1 * g1.adjoint();
    const Matrix b = g2 * g2.adjoint();
    const Matrix c = g3 * g3.adjoint();
    CHECK(max_abs((a + b) - (b + a)) == 0.0);
    CHECK(max_abs(((a + b) + c) - (a + (b + c))) < 1e-12);
    // cancellation: a + b = a + c forces b = c
    const Matrix lhs = a + b;
    const Matrix rhs = a + c;
    if (max_abs(lhs - rhs) < 1e-12) CHECK(max_abs(b - c) < 1e-12);
    // positivity: a + b = 0 forces both zero
    if (max_abs(a + b) < 1e-12) {
      CHECK(max_abs(a) < 1e-12);
      CHECK(max_abs(b) < 1e-12);
    }
  }
  // constructed positivity instance
  const Matrix zero = Matrix::Zero(3, 3);
  CHECK(max_abs(zero + zero) == 0.0);
}

TEST_CASE("positive measures are monotone") {
  std::mt19937_64 rng(89);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix g = random_hermitian(rng, 5).matrix();
    const GleasonMeasure m(HermitianOp(Matrix(g * g.adjoint())));
    const Subspace small = random_subspace(rng, 5, 2);
    const Subspace comp = ortho_complement(small);
    const Subspace large = join(small, orthonormalize({comp.basis().col(0)}, 5));
    CHECK(eval(m, small) <= eval(m, large) + 1e-9);
  }
}
