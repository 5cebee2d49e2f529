#include "gleason/forms.hpp"

#include <cmath>
#include <stdexcept>

namespace gleason {

double quad(const MatrixForm& t, const Vector& x) {
  if (x.size() != t.dim()) throw std::invalid_argument("quad: dimension mismatch");
  const Cplx value = x.dot(t.generator().matrix() * x);  // x^H A x
  return value.real();
}

Cplx bilinear(const MatrixForm& t, const Vector& x, const Vector& y) {
  if (x.size() != t.dim() || y.size() != t.dim())
    throw std::invalid_argument("bilinear: dimension mismatch");
  return y.dot(t.generator().matrix() * x);  // (A x, y) = y^H A x
}

MatrixForm form_sum(const MatrixForm& t, const MatrixForm& s) {
  if (t.dim() != s.dim()) throw std::invalid_argument("form_sum: dimension mismatch");
  return MatrixForm(HermitianOp(t.generator().matrix() + s.generator().matrix()));
}

MatrixForm scalar_mul(double alpha, const MatrixForm& t) {
  return MatrixForm(HermitianOp(alpha * t.generator().matrix()));
}

bool form_leq(const MatrixForm& t, const MatrixForm& s) {
  if (t.dim() != s.dim()) throw std::invalid_argument("form_leq: dimension mismatch");
  const HermitianOp diff(s.generator().matrix() - t.generator().matrix());
  return diff.min_eigenvalue() >= -tolerances().comparison;
}

double frame_weight(const FrameFunctionView& f, const Subspace& m,
                    const std::optional<Matrix>& onb) {
  Matrix basis;
  if (onb.has_value()) {
    basis = *onb;
    if (basis.rows() != m.ambient_dim())
      throw std::invalid_argument("frame_weight: basis rows do not match ambient dimension");
    if (basis.cols() != m.dim())
      throw std::invalid_argument("frame_weight: basis does not span the subspace");
    if (basis.cols() > 0) {
      const Matrix gram = basis.adjoint() * basis;
      if (max_abs(gram - Matrix::Identity(basis.cols(), basis.cols())) > 1e-8)
        throw std::invalid_argument("frame_weight: basis is not orthonormal");
      for (int j = 0; j < basis.cols(); ++j)
        if (!m.contains(basis.col(j), 1e-7))
          throw std::invalid_argument("frame_weight: basis vector lies outside the subspace");
    }
  } else {
    basis = m.basis();
  }
  double w = 0.0;
  for (int j = 0; j < basis.cols(); ++j) w += f(basis.col(j));
  return w;
}

FormRecovery polarize_recover(const std::function<double(const Vector&)>& f, int dim,
                              double defect_tol) {
  if (dim <= 0) throw std::invalid_argument("polarize_recover: dimension must be positive");

  const auto q = [&f](const Vector& z) -> double {
    const double n = z.norm();
    if (n == 0.0) return 0.0;
    return n * n * f(z / n);
  };

  // t(x, y) = 1/4 sum_k i^k q(x + i^k y); the generator entry A(j, l) is
  // t(e_l, e_j).
  const Cplx iu(0.0, 1.0);
  const Cplx phases[4] = {Cplx(1, 0), iu, Cplx(-1, 0), -iu};
  Matrix raw(dim, dim);
  for (int l = 0; l < dim; ++l) {
    Vector x = Vector::Zero(dim);
    x(l) = Cplx(1, 0);
    for (int j = 0; j < dim; ++j) {
      Vector y = Vector::Zero(dim);
      y(j) = Cplx(1, 0);
      Cplx acc(0, 0);
      for (int k = 0; k < 4; ++k) acc += phases[k] * q(x + phases[k] * y);
      raw(j, l) = acc / 4.0;
    }
  }

  double defect = max_abs(raw - Matrix(raw.adjoint()));
  Matrix herm = (raw + Matrix(raw.adjoint())) / 2.0;

  // the four-point sums can cancel a non-quadratic input into a clean
  // generator, so the reconstruction is also probed pointwise
  std::vector<Vector> probes;
  for (int l = 0; l < dim; ++l)
    for (int j = l + 1; j < dim; ++j) {
      Vector z = Vector::Zero(dim);
      z(l) = Cplx(1, 0);
      z(j) = Cplx(0, 1);
      probes.push_back(std::move(z));
    }
  std::mt19937_64 rng(0xC0FFEE);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 4; ++trial) {
    Vector z(dim);
    for (int i = 0; i < dim; ++i) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      z(i) = Cplx(re, im);
    }
    probes.push_back(std::move(z));
  }
  const double scale = 1.0 + max_abs(herm);
  for (const Vector& z : probes) {
    const double residual = std::abs(q(z) - z.dot(herm * z).real()) / (scale * z.squaredNorm());
    defect = std::max(defect, residual);
  }

  if (defect > defect_tol)
    throw std::invalid_argument(
        "polarize_recover: the input is not the quadratic form of any operator "
        "(reconstruction defect " +
        std::to_string(defect) + ")");
  return FormRecovery{MatrixForm(HermitianOp(std::move(herm))), defect, dim != 2};
}

}  // namespace gleason
