#include "gleason/measures.hpp"

#include <cmath>
#include <stdexcept>

namespace gleason {

double eval(const GleasonMeasure& m, const Subspace& M) {
  return compressed_trace(m.generator(), M);
}

GleasonMeasure jordan_measure(const HermitianOp& t, const HermitianOp& a) {
  if (t.dim() != a.dim()) throw std::invalid_argument("jordan_measure: dimension mismatch");
  Matrix g = (t.matrix() * a.matrix() + a.matrix() * t.matrix()) / 2.0;
  g = (g + Matrix(g.adjoint())) / 2.0;
  return GleasonMeasure(HermitianOp(std::move(g)));
}

bool is_state(const GleasonMeasure& m) {
  const double tol = tolerances().comparison;
  if (m.generator().min_eigenvalue() < -tol) return false;
  return std::abs(trace_real(m.generator()) - 1.0) <= tol;
}

GleasonMeasure measure_from_frame(const FrameFunctionView& f) {
  const auto callable = [&f](const Vector& x) { return f(x); };
  FormRecovery rec = polarize_recover(callable, f.dim());
  return GleasonMeasure(rec.form.generator());
}

FrameFunctionView frame_from_measure(const GleasonMeasure& m) {
  return FrameFunctionView(MatrixForm(m.generator()));
}

CheckRecord check_additivity(const GleasonMeasure& m, const std::vector<Subspace>& parts) {
  if (parts.empty()) throw std::invalid_argument("check_additivity: no parts given");
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t j = i + 1; j < parts.size(); ++j)
      if (!is_orthogonal(parts[i], parts[j]))
        throw std::invalid_argument("check_additivity: parts are not pairwise orthogonal");

  Subspace whole = parts.front();
  double sum = eval(m, parts.front());
  for (std::size_t i = 1; i < parts.size(); ++i) {
    whole = join(whole, parts[i]);
    sum += eval(m, parts[i]);
  }
  const double joined = eval(m, whole);
  const double tol = tolerances().check;
  return CheckRecord{"measure of the join equals the sum over orthogonal parts",
                     "measure.additivity", joined, sum, tol,
                     std::abs(joined - sum) <= tol};
}

Json RegularityReport::to_json() const {
  Json j = Json::object();
  j["chain"] = chain;
  j["target"] = target;
  j["tolerance"] = tolerance;
  j["pass"] = pass;
  return j;
}

RegularityReport check_regularity(const GleasonMeasure& m, const Subspace& M) {
  if (m.dim() != M.ambient_dim()) throw std::invalid_argument("check_regularity: dimension mismatch");
  if (m.generator().min_eigenvalue() < -tolerances().comparison)
    throw std::invalid_argument("check_regularity: measure must be positive");

  RegularityReport report;
  report.tolerance = tolerances().check;
  report.target = eval(m, M);
  if (M.dim() == 0) {
    report.pass = std::abs(report.target) <= report.tolerance;
    return report;
  }

  // compress the generator to M and walk its eigenvectors by decreasing
  // eigenvalue: every prefix is the maximal finite-dimensional value
  const Matrix compressed = M.basis().adjoint() * m.generator().matrix() * M.basis();
  Eigen::SelfAdjointEigenSolver<Matrix> solver((compressed + Matrix(compressed.adjoint())) / 2.0);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("check_regularity: eigen decomposition failed");

  const Eigen::VectorXd values = solver.eigenvalues();  // ascending
  double acc = 0.0;
  for (int k = M.dim() - 1; k >= 0; --k) {
    acc += values(k);
    report.chain.push_back(acc);
  }
  report.pass = std::abs(report.chain.back() - report.target) <= report.tolerance;
  return report;
}

}  // namespace gleason
