#include "gleason/hilbert.hpp"

#include <cmath>
#include <stdexcept>

namespace gleason {

Tolerances& tolerances() {
  static Tolerances t;
  return t;
}

double max_abs(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().maxCoeff();
}

Subspace::Subspace(int ambient_dim, Matrix basis)
    : ambient_dim_(ambient_dim), basis_(std::move(basis)) {
  if (ambient_dim_ <= 0) throw std::invalid_argument("Subspace: ambient dimension must be positive");
  if (basis_.size() == 0 && basis_.cols() == 0) basis_.resize(ambient_dim_, 0);
  if (basis_.rows() != ambient_dim_)
    throw std::invalid_argument("Subspace: basis rows do not match ambient dimension");
  if (basis_.cols() > ambient_dim_)
    throw std::invalid_argument("Subspace: more basis vectors than ambient dimension");
  if (basis_.cols() > 0) {
    const Matrix gram = basis_.adjoint() * basis_;
    const Matrix eye = Matrix::Identity(basis_.cols(), basis_.cols());
    if (max_abs(gram - eye) > tolerances().construction)
      throw std::invalid_argument("Subspace: basis is not orthonormal within tolerance");
  }
}

Subspace Subspace::zero(int ambient_dim) {
  return Subspace(ambient_dim, Matrix(ambient_dim, 0));
}

Subspace Subspace::full(int ambient_dim) {
  return Subspace(ambient_dim, Matrix::Identity(ambient_dim, ambient_dim));
}

Subspace Subspace::coordinate(int ambient_dim, const std::vector<int>& axes) {
  Matrix b = Matrix::Zero(ambient_dim, static_cast<int>(axes.size()));
  for (int j = 0; j < static_cast<int>(axes.size()); ++j) {
    const int ax = axes[j];
    if (ax < 0 || ax >= ambient_dim)
      throw std::invalid_argument("Subspace::coordinate: axis out of range");
    b(ax, j) = Cplx(1.0, 0.0);
  }
  return Subspace(ambient_dim, std::move(b));
}

bool Subspace::contains(const Vector& x, double tol) const {
  if (x.size() != ambient_dim_) throw std::invalid_argument("Subspace::contains: dimension mismatch");
  if (dim() == 0) return x.norm() <= tol;
  const Vector projected = basis_ * (basis_.adjoint() * x);
  return (x - projected).norm() <= tol;
}

HermitianOp::HermitianOp(Matrix m) : matrix_(std::move(m)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0)
    throw std::invalid_argument("HermitianOp: matrix must be square and nonempty");
  if (max_abs(matrix_ - matrix_.adjoint()) > tolerances().construction)
    throw std::invalid_argument("HermitianOp: matrix is not Hermitian within tolerance");
}

Eigen::VectorXd HermitianOp::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix_, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("HermitianOp: eigenvalue computation failed");
  return solver.eigenvalues();
}

double HermitianOp::min_eigenvalue() const { return eigenvalues().minCoeff(); }

double HermitianOp::operator_norm() const {
  return eigenvalues().cwiseAbs().maxCoeff();
}

namespace {

// Modified Gram-Schmidt with one re-orthogonalization pass.
Matrix gram_schmidt(const std::vector<Vector>& vectors, int ambient_dim, double pivot_tol) {
  Matrix basis(ambient_dim, 0);
  for (const Vector& v : vectors) {
    if (v.size() != ambient_dim)
      throw std::invalid_argument("orthonormalize: ambient dimension mismatch");
    Vector w = v;
    for (int pass = 0; pass < 2; ++pass)
      for (int j = 0; j < basis.cols(); ++j) w -= basis.col(j).dot(w) * basis.col(j);
    const double norm = w.norm();
    if (norm > pivot_tol) {
      basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
      basis.col(basis.cols() - 1) = w / norm;
    }
  }
  return basis;
}

}  // namespace

Subspace orthonormalize(const std::vector<Vector>& vectors) {
  if (vectors.empty())
    throw std::invalid_argument("orthonormalize: empty input needs an explicit ambient dimension");
  return orthonormalize(vectors, static_cast<int>(vectors.front().size()));
}

Subspace orthonormalize(const std::vector<Vector>& vectors, int ambient_dim) {
  return Subspace(ambient_dim, gram_schmidt(vectors, ambient_dim, tolerances().construction));
}

HermitianOp projector(const Subspace& m) {
  if (m.dim() == 0) return HermitianOp(Matrix::Zero(m.ambient_dim(), m.ambient_dim()));
  Matrix p = m.basis() * m.basis().adjoint();
  // symmetrize away the last-bit asymmetry of the product
  p = (p + Matrix(p.adjoint())) / 2.0;
  return HermitianOp(std::move(p));
}

Subspace join(const Subspace& m, const Subspace& n) {
  if (m.ambient_dim() != n.ambient_dim()) throw std::invalid_argument("join: ambient dimension mismatch");
  std::vector<Vector> cols;
  for (int j = 0; j < m.dim(); ++j) cols.push_back(m.basis().col(j));
  for (int j = 0; j < n.dim(); ++j) cols.push_back(n.basis().col(j));
  return orthonormalize(cols, m.ambient_dim());
}

Subspace ortho_complement(const Subspace& m) {
  const int d = m.ambient_dim();
  if (m.dim() == 0) return Subspace::full(d);
  if (m.dim() == d) return Subspace::zero(d);
  Eigen::HouseholderQR<Matrix> qr(m.basis());
  const Matrix q = qr.householderQ();
  return Subspace(d, q.rightCols(d - m.dim()));
}

Subspace meet(const Subspace& m, const Subspace& n) {
  // double complement: meet = (M-perp v N-perp)-perp
  return ortho_complement(join(ortho_complement(m), ortho_complement(n)));
}

bool is_orthogonal(const Subspace& m, const Subspace& n) {
  if (m.ambient_dim() != n.ambient_dim())
    throw std::invalid_argument("is_orthogonal: ambient dimension mismatch");
  if (m.dim() == 0 || n.dim() == 0) return true;
  const Matrix overlap = projector(m).matrix() * projector(n).matrix();
  return max_abs(overlap) <= tolerances().comparison;
}

bool same_subspace(const Subspace& m, const Subspace& n) {
  if (m.ambient_dim() != n.ambient_dim()) return false;
  return max_abs(projector(m).matrix() - projector(n).matrix()) <= tolerances().comparison;
}

double trace_real(const HermitianOp& t) {
  return t.matrix().trace().real();
}

double compressed_trace(const HermitianOp& t, const Subspace& m) {
  if (t.dim() != m.ambient_dim())
    throw std::invalid_argument("compressed_trace: dimension mismatch");
  if (m.dim() == 0) return 0.0;
  return (m.basis().adjoint() * t.matrix() * m.basis()).trace().real();
}

Vector random_vector(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(dim);
  for (int i = 0; i < dim; ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    v(i) = Cplx(re, im);
  }
  return v;
}

Vector random_unit(std::mt19937_64& rng, int dim) {
  Vector v = random_vector(rng, dim);
  while (v.norm() < 1e-6) v = random_vector(rng, dim);
  return v / v.norm();
}

HermitianOp random_hermitian(std::mt19937_64& rng, int dim) {
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      std::normal_distribution<double> gauss(0.0, 1.0);
      const double re = gauss(rng);
      const double im = gauss(rng);
      g(i, j) = Cplx(re, im);
    }
  Matrix h = (g + Matrix(g.adjoint())) / 2.0;
  return HermitianOp(std::move(h));
}

Subspace random_subspace(std::mt19937_64& rng, int ambient_dim, int dim) {
  if (dim < 0 || dim > ambient_dim) throw std::invalid_argument("random_subspace: bad dimension");
  std::vector<Vector> cols;
  Subspace s = Subspace::zero(ambient_dim);
  // redraw until full requested rank survives the pivot tolerance
  while (true) {
    cols.clear();
    for (int j = 0; j < dim; ++j) cols.push_back(random_vector(rng, ambient_dim));
    s = orthonormalize(cols, ambient_dim);
    if (s.dim() == dim) return s;
  }
}

Matrix random_onb_of(std::mt19937_64& rng, const Subspace& m) {
  const int r = m.dim();
  if (r == 0) return Matrix(m.ambient_dim(), 0);
  // random unitary inside the subspace via QR of a random square matrix
  Matrix g(r, r);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      g(i, j) = Cplx(re, im);
    }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  return m.basis() * q;
}

nlohmann::json complex_to_json(const Cplx& z) {
  return nlohmann::json::array({z.real(), z.imag()});
}

Cplx complex_from_json(const nlohmann::json& j) {
  if (j.is_number()) return Cplx(j.get<double>(), 0.0);
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw std::invalid_argument("complex scalar must be [re, im]");
  return Cplx(j[0].get<double>(), j[1].get<double>());
}

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix: expected nonempty array of rows");
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j[0].size());
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(j[i].size()) != cols)
      throw std::invalid_argument("matrix: ragged rows");
    for (int c = 0; c < cols; ++c) m(i, c) = complex_from_json(j[i][c]);
  }
  return m;
}

nlohmann::json vector_to_json(const Vector& v) {
  nlohmann::json out = nlohmann::json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

Vector vector_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("vector: expected nonempty array");
  Vector v(static_cast<int>(j.size()));
  for (int i = 0; i < v.size(); ++i) v(i) = complex_from_json(j[i]);
  return v;
}

}  // namespace gleason
