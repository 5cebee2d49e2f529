#pragma once

#include <functional>
#include <optional>

#include "gleason/hilbert.hpp"

namespace gleason {

// Bounded symmetric bilinear form t(x, y) = (A x, y) with Hermitian
// generator A; the inner product is linear in the left argument.
class MatrixForm {
 public:
  explicit MatrixForm(HermitianOp generator) : generator_(std::move(generator)) {}
  static MatrixForm zero(int dim) { return MatrixForm(HermitianOp(Matrix::Zero(dim, dim))); }
  int dim() const { return generator_.dim(); }
  const HermitianOp& generator() const { return generator_; }

 private:
  HermitianOp generator_;
};

double quad(const MatrixForm& t, const Vector& x);
Cplx bilinear(const MatrixForm& t, const Vector& x, const Vector& y);
MatrixForm form_sum(const MatrixForm& t, const MatrixForm& s);
MatrixForm scalar_mul(double alpha, const MatrixForm& t);

// t precedes s iff s - t is positive semidefinite (domains coincide at
// finite dimension, so the order reduces to the quadratic inequality).
bool form_leq(const MatrixForm& t, const MatrixForm& s);

// The restriction of a quadratic form to the unit sphere.
class FrameFunctionView {
 public:
  explicit FrameFunctionView(MatrixForm source) : source_(std::move(source)) {}
  int dim() const { return source_.dim(); }
  const MatrixForm& source() const { return source_; }
  double operator()(const Vector& unit_x) const { return quad(source_, unit_x); }

 private:
  MatrixForm source_;
};

// W_M: sum of f over an orthonormal basis of M. When an explicit basis is
// given it must be orthonormal and lie inside M.
double frame_weight(const FrameFunctionView& f, const Subspace& m,
                    const std::optional<Matrix>& onb = std::nullopt);

struct FormRecovery {
  MatrixForm form;
  double hermitian_defect;      // max-entry asymmetry of the raw reconstruction
  bool uniqueness_hypothesis;   // false in dimension 2, where recovery is not unique-backed
};

// Reconstructs the generating form of a unit-sphere function via four-point
// polarization of the homogeneous extension q(z) = |z|^2 f(z/|z|). Inputs
// that are not quadratic leave a Hermitian defect and are rejected.
FormRecovery polarize_recover(const std::function<double(const Vector&)>& f, int dim,
                              double defect_tol = 1e-7);

}  // namespace gleason
