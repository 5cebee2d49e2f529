#include <doctest.h>

#include <cmath>
#include <random>

#include "gleason/sobolev.hpp"

using namespace gleason;
using namespace gleason::sob;

namespace {

Vector grid_function(const Grid& g, double (*f)(double)) {
  Vector u(g.n_points);
  for (int i = 0; i < g.n_points; ++i) u(i) = f(i * g.h());
  return u;
}

}  // namespace

TEST_CASE("form values on simple grid functions") {
  const Grid g(11);
  const SobolevForms forms = build_forms(3, g);

  const Vector ones = Vector::Constant(g.n_points, Cplx(1, 0));
  CHECK(quad(forms.gradient, ones) == doctest::Approx(0.0));
  CHECK(quad(forms.boundary, ones) == doctest::Approx(2.0));
  CHECK(quad(forms.full, ones) == doctest::Approx(2.0));

  const Vector linear = grid_function(g, [](double x) { return x; });
  CHECK(quad(forms.gradient, linear) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(quad(forms.full, linear) == doctest::Approx(2.0).epsilon(1e-12));

  CHECK_THROWS_AS(Grid(2), std::invalid_argument);
  CHECK_THROWS_AS(build_forms(0, g), std::invalid_argument);
}

TEST_CASE("the inflation identity holds at the matrix level") {
  std::mt19937_64 rng(103);
  for (const int n : {1, 2, 7, 50}) {
    const Grid g(41);
    const SobolevForms forms = build_forms(n, g);
    const Matrix composed = (1.0 + 1.0 / n) * forms.gradient.generator().matrix() +
                            forms.boundary.generator().matrix();
    CHECK(max_abs(forms.inflated.generator().matrix() - composed) <= 1e-12);

    // pointwise version on a random grid function
    const Vector u = random_vector(rng, g.n_points);
    const double gap = quad(forms.inflated, u) - quad(forms.full, u);
    CHECK(std::abs(gap - quad(forms.gradient, u) / n) < 1e-10 * (1.0 + std::abs(gap)));
  }
}

TEST_CASE("the form chain decreases towards the limit form") {
  const ChainReport report = chain_report(Grid(21), 20);
  CHECK(report.pass);
  CHECK(report.min_step_eigenvalue >= -1e-10);
  CHECK(report.min_vs_full_eigenvalue >= -1e-10);

  // explicit first step: inflated(2) - inflated(3) is positive semidefinite
  const Grid g(21);
  const HermitianOp step(build_forms(2, g).inflated.generator().matrix() -
                         build_forms(3, g).inflated.generator().matrix());
  CHECK(step.min_eigenvalue() >= -1e-10);

  // order direction via the form order
  const SobolevForms forms = build_forms(4, g);
  CHECK(form_leq(forms.gradient, forms.full));
  CHECK(!form_leq(forms.full, forms.gradient));
}

TEST_CASE("the gap to the gradient form is the rank-two boundary form") {
  const Grid g(31);
  const SobolevForms forms = build_forms(2, g);
  const Matrix gap = forms.full.generator().matrix() - forms.gradient.generator().matrix();
  CHECK(max_abs(gap - forms.boundary.generator().matrix()) == 0.0);

  // weighted-geometry eigenvalues: 1/h twice, zero elsewhere
  Eigen::SelfAdjointEigenSolver<Matrix> es(gap / g.h());
  const Eigen::VectorXd ev = es.eigenvalues();
  const double inv_h = 1.0 / g.h();
  for (int i = 0; i < ev.size() - 2; ++i) CHECK(std::abs(ev(i)) < 1e-9 * inv_h);
  CHECK(ev(ev.size() - 1) == doctest::Approx(inv_h).epsilon(1e-9));
  CHECK(ev(ev.size() - 2) == doctest::Approx(inv_h).epsilon(1e-9));
}

TEST_CASE("boundary norms blow up like 1/h") {
  const BlowupReport report =
      boundary_blowup({Grid(11), Grid(21), Grid(41), Grid(81), Grid(161), Grid(321)});
  CHECK(report.pass);
  CHECK(report.slope == doctest::Approx(-1.0).epsilon(0.01));
  for (const auto& row : report.rows) {
    CHECK(row.per_term_norm == doctest::Approx(1.0 / row.h).epsilon(1e-9));
    CHECK(row.combined_norm == doctest::Approx(1.0 / row.h).epsilon(1e-9));
  }
  // h = 1/10 and h = 1/100 per-term values
  const BlowupReport small = boundary_blowup({Grid(11), Grid(101)});
  CHECK(small.rows[0].per_term_norm == doctest::Approx(10.0));
  CHECK(small.rows[1].per_term_norm == doctest::Approx(100.0));

  CHECK_THROWS_AS(boundary_blowup({Grid(11)}), std::invalid_argument);
  CHECK_THROWS_AS(boundary_blowup({Grid(11), Grid(11)}), std::invalid_argument);

  const std::string csv = report.to_csv();
  CHECK(csv.rfind("h,norm,slope\n", 0) == 0);
}

TEST_CASE("grids report their mesh as an exact rational") {
  CHECK(Grid(11).h_label() == "1/10");
  CHECK(Grid(321).h_label() == "1/320");
}

TEST_CASE("perturbed measures converge with the 1/n rate") {
  std::mt19937_64 rng(107);
  const int d = 5;

  // zero perturbation: no deviation at all
  const HermitianOp t = random_hermitian(rng, d);
  std::vector<Subspace> sample;
  for (int i = 0; i < 10; ++i) sample.push_back(random_subspace(rng, d, 1 + (i % (d - 1))));
  const NikodymReport frozen = nikodym_demo(t, HermitianOp(Matrix::Zero(d, d)), 20, sample);
  CHECK(frozen.pass);
  for (double dev : frozen.max_deviation) CHECK(dev == 0.0);

  // rank-one perturbation of the identity on the first coordinate line
  Matrix s = Matrix::Zero(d, d);
  s(0, 0) = 1.0;
  const std::vector<Subspace> line = {Subspace::coordinate(d, {0})};
  const NikodymReport rank_one =
      nikodym_demo(HermitianOp(Matrix::Identity(d, d)), HermitianOp(s), 10, line);
  CHECK(rank_one.pass);
  for (int n = 1; n <= 10; ++n)
    CHECK(rank_one.max_deviation[n - 1] == doctest::Approx(1.0 / n).epsilon(1e-12));

  // random pairs stay within the bound
  for (int trial = 0; trial < 5; ++trial) {
    const HermitianOp tt = random_hermitian(rng, d);
    const HermitianOp ss = random_hermitian(rng, d);
    std::vector<Subspace> ms;
    for (int i = 0; i < 20; ++i) ms.push_back(random_subspace(rng, d, 1 + (i % d)));
    const NikodymReport r = nikodym_demo(tt, ss, 30, ms);
    CHECK(r.pass);
  }
}
