#include <doctest.h>

#include <random>

#include "gleason/hilbert.hpp"

using namespace gleason;

namespace {

Vector vec2(Cplx a, Cplx b) {
  Vector v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("orthonormalize spans and drops dependent vectors") {
  const Subspace full = orthonormalize({vec2(1, 0), vec2(1, 1)});
  CHECK(full.dim() == 2);

  const Subspace line = orthonormalize({vec2(1, 0), vec2(2, 0)});
  CHECK(line.dim() == 1);
  Matrix expect(2, 2);
  expect << Cplx(1, 0), Cplx(0, 0), Cplx(0, 0), Cplx(0, 0);
  CHECK(max_abs(projector(line).matrix() - expect) < 1e-12);

  std::mt19937_64 rng(11);
  std::vector<Vector> vs;
  for (int i = 0; i < 3; ++i) vs.push_back(random_vector(rng, 5));
  const Subspace s = orthonormalize(vs);
  CHECK(s.dim() == 3);
  const Matrix gram = s.basis().adjoint() * s.basis();
  CHECK(max_abs(gram - Matrix::Identity(3, 3)) < 1e-10);

  CHECK_THROWS_AS(orthonormalize({}), std::invalid_argument);
  CHECK_THROWS_AS(orthonormalize({vec2(1, 0), random_vector(rng, 3)}), std::invalid_argument);
}

TEST_CASE("projectors are idempotent Hermitian of the right rank") {
  const Subspace zero = Subspace::zero(3);
  CHECK(max_abs(projector(zero).matrix()) == 0.0);

  std::mt19937_64 rng(13);
  const Subspace m = random_subspace(rng, 6, 3);
  const Matrix p = projector(m).matrix();
  CHECK(max_abs(p * p - p) < 1e-9);
  CHECK(std::abs(p.trace().real() - 3.0) < 1e-9);
}

TEST_CASE("join, meet, complement, orthogonality") {
  const Subspace e1 = Subspace::coordinate(3, {0});
  const Subspace e2 = Subspace::coordinate(3, {1});
  CHECK(join(e1, e2).dim() == 2);

  const Subspace m12 = Subspace::coordinate(3, {0, 1});
  const Subspace m23 = Subspace::coordinate(3, {1, 2});
  CHECK(same_subspace(meet(m12, m23), e2));

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 3 + static_cast<int>(rng() % 5);
    const int k = static_cast<int>(rng() % (d + 1));
    const Subspace m = random_subspace(rng, d, k);
    const Subspace mp = ortho_complement(m);
    CHECK(m.dim() + mp.dim() == d);
    CHECK(is_orthogonal(m, mp));
    CHECK(same_subspace(ortho_complement(mp), m));
    // orthogonal join splits the projector
    if (!is_orthogonal(m, m)) continue;
    const Matrix sum = projector(m).matrix() + projector(mp).matrix();
    CHECK(max_abs(sum - Matrix::Identity(d, d)) < 1e-9);
  }
}

TEST_CASE("meet agrees with a direct intersection oracle") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = 5;
    const Subspace m = random_subspace(rng, d, 3);
    const Subspace n = random_subspace(rng, d, 4);
    const Subspace met = meet(m, n);
    // oracle: null space of [(I - P_M); (I - P_N)] via eigen-decomposition of
    // (I - P_M) + (I - P_N)
    const Matrix a = (Matrix::Identity(d, d) - projector(m).matrix()) +
                     (Matrix::Identity(d, d) - projector(n).matrix());
    Eigen::SelfAdjointEigenSolver<Matrix> es(a);
    std::vector<Vector> kernel;
    for (int i = 0; i < d; ++i)
      if (es.eigenvalues()(i) < 1e-9) kernel.push_back(es.eigenvectors().col(i));
    const Subspace oracle =
        kernel.empty() ? Subspace::zero(d) : orthonormalize(kernel, d);
    CHECK(met.dim() == oracle.dim());
    CHECK(same_subspace(met, oracle));
    // generic position: dim(m meet n) = 3 + 4 - 5
    CHECK(met.dim() == 2);
  }
}

TEST_CASE("traces and compressed traces") {
  Matrix t = Matrix::Zero(3, 3);
  t(0, 0) = 0.5;
  t(1, 1) = 1.0 / 3.0;
  t(2, 2) = 1.0 / 6.0;
  const HermitianOp op(t);
  CHECK(std::abs(compressed_trace(op, Subspace::coordinate(3, {0, 1})) - 5.0 / 6.0) < 1e-12);

  const HermitianOp eye(Matrix::Identity(4, 4));
  std::mt19937_64 rng(23);
  const Subspace m = random_subspace(rng, 4, 2);
  CHECK(std::abs(compressed_trace(eye, m) - 2.0) < 1e-9);

  // basis invariance of the trace
  const HermitianOp h = random_hermitian(rng, 5);
  const Subspace full = Subspace::full(5);
  const Matrix onb1 = random_onb_of(rng, full);
  const Matrix onb2 = random_onb_of(rng, full);
  double s1 = 0, s2 = 0;
  for (int i = 0; i < 5; ++i) {
    s1 += onb1.col(i).dot(h.matrix() * onb1.col(i)).real();
    s2 += onb2.col(i).dot(h.matrix() * onb2.col(i)).real();
  }
  CHECK(std::abs(s1 - s2) < 1e-9);
  CHECK(std::abs(s1 - trace_real(h)) < 1e-9);

  CHECK(std::abs(compressed_trace(h, full) - trace_real(h)) < 1e-9);
  const Vector x = random_unit(rng, 5);
  const Subspace line = orthonormalize({x});
  CHECK(std::abs(compressed_trace(h, line) - x.dot(h.matrix() * x).real()) < 1e-10);
}

TEST_CASE("Hermitian construction rejects asymmetry") {
  Matrix bad(2, 2);
  bad << Cplx(1, 0), Cplx(1, 0), Cplx(0, 0), Cplx(1, 0);
  CHECK_THROWS_AS((void)HermitianOp(bad), std::invalid_argument);
}

TEST_CASE("matrix json round trip") {
  std::mt19937_64 rng(29);
  const HermitianOp h = random_hermitian(rng, 3);
  const Matrix back = matrix_from_json(matrix_to_json(h.matrix()));
  CHECK(max_abs(back - h.matrix()) == 0.0);
  CHECK_THROWS_AS(matrix_from_json(nlohmann::json::array()), std::invalid_argument);
}
