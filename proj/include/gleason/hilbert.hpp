#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <vector>

#include <json.hpp>

#include "gleason/tolerances.hpp"

namespace gleason {

using Cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

double max_abs(const Matrix& a);

// Closed subspace of C^d, stored as an orthonormal column basis. A zero
// column count encodes the zero subspace sp(0).
class Subspace {
 public:
  Subspace(int ambient_dim, Matrix basis);
  static Subspace zero(int ambient_dim);
  static Subspace full(int ambient_dim);
  static Subspace coordinate(int ambient_dim, const std::vector<int>& axes);

  int ambient_dim() const { return ambient_dim_; }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const Matrix& basis() const { return basis_; }
  bool contains(const Vector& x, double tol) const;

 private:
  int ambient_dim_;
  Matrix basis_;
};

// Square complex matrix with ||A - A^H||_max within the construction
// tolerance; rejected otherwise.
class HermitianOp {
 public:
  explicit HermitianOp(Matrix m);
  int dim() const { return static_cast<int>(matrix_.rows()); }
  const Matrix& matrix() const { return matrix_; }

  Eigen::VectorXd eigenvalues() const;  // ascending
  double min_eigenvalue() const;
  double operator_norm() const;  // spectral norm

 private:
  Matrix matrix_;
};

// Gram-Schmidt span of the inputs; linearly dependent vectors are dropped at
// the construction pivot tolerance.
Subspace orthonormalize(const std::vector<Vector>& vectors);
Subspace orthonormalize(const std::vector<Vector>& vectors, int ambient_dim);

HermitianOp projector(const Subspace& m);
Subspace join(const Subspace& m, const Subspace& n);
Subspace meet(const Subspace& m, const Subspace& n);
Subspace ortho_complement(const Subspace& m);
bool is_orthogonal(const Subspace& m, const Subspace& n);

// Subspace equality is projector proximity, not basis equality.
bool same_subspace(const Subspace& m, const Subspace& n);

double trace_real(const HermitianOp& t);
// tr(T P_M), evaluated as tr(B^H T B) over the basis of M.
double compressed_trace(const HermitianOp& t, const Subspace& m);

// Deterministic random instances for the property suites.
Vector random_vector(std::mt19937_64& rng, int dim);
Vector random_unit(std::mt19937_64& rng, int dim);
HermitianOp random_hermitian(std::mt19937_64& rng, int dim);
Subspace random_subspace(std::mt19937_64& rng, int ambient_dim, int dim);
// Random orthonormal basis of m (columns), drawn inside the subspace.
Matrix random_onb_of(std::mt19937_64& rng, const Subspace& m);

// JSON encoding: complex scalar as [re, im]; matrices row-major.
nlohmann::json complex_to_json(const Cplx& z);
Cplx complex_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);
nlohmann::json vector_to_json(const Vector& v);
Vector vector_from_json(const nlohmann::json& j);

}  // namespace gleason
