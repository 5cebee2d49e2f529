#include "gleason/sobolev.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace gleason::sob {

SobolevForms build_forms(int n, const Grid& grid) {
  if (n < 1) throw std::invalid_argument("build_forms: n must be at least 1");
  const int d = grid.n_points;
  const double inv_h = 1.0 / grid.h();
  const double coef = 1.0 + 1.0 / n;

  Matrix gradient = Matrix::Zero(d, d);
  Matrix inflated = Matrix::Zero(d, d);
  for (int i = 0; i + 1 < d; ++i) {
    // h |(u_{i+1} - u_i) / h|^2 contributes (1/h) per interval
    gradient(i, i) += inv_h;
    gradient(i + 1, i + 1) += inv_h;
    gradient(i, i + 1) -= inv_h;
    gradient(i + 1, i) -= inv_h;
    inflated(i, i) += coef * inv_h;
    inflated(i + 1, i + 1) += coef * inv_h;
    inflated(i, i + 1) -= coef * inv_h;
    inflated(i + 1, i) -= coef * inv_h;
  }
  Matrix boundary = Matrix::Zero(d, d);
  boundary(0, 0) = 1.0;
  boundary(d - 1, d - 1) = 1.0;

  Matrix full = gradient + boundary;
  inflated += boundary;

  return SobolevForms{MatrixForm(HermitianOp(std::move(inflated))),
                      MatrixForm(HermitianOp(std::move(full))),
                      MatrixForm(HermitianOp(std::move(gradient))),
                      MatrixForm(HermitianOp(std::move(boundary))), n, grid};
}

Json ChainReport::to_json() const {
  Json j;
  Json checks = Json::array();
  for (const auto& r : records) checks.push_back(r.to_json());
  j["checks"] = std::move(checks);
  j["min_step_eigenvalue"] = min_step_eigenvalue;
  j["min_vs_full_eigenvalue"] = min_vs_full_eigenvalue;
  j["pass"] = pass;
  return j;
}

ChainReport chain_report(const Grid& grid, int n_max) {
  if (n_max < 2) throw std::invalid_argument("chain_report: n_max must be at least 2");
  ChainReport report;
  const double tol = 1e-10;
  double min_step = std::numeric_limits<double>::infinity();
  double min_vs_full = std::numeric_limits<double>::infinity();

  SobolevForms prev = build_forms(1, grid);
  for (int n = 2; n <= n_max; ++n) {
    const SobolevForms cur = build_forms(n, grid);
    const HermitianOp step(prev.inflated.generator().matrix() -
                           cur.inflated.generator().matrix());
    min_step = std::min(min_step, step.min_eigenvalue());
    const HermitianOp vs_full(cur.inflated.generator().matrix() -
                              cur.full.generator().matrix());
    min_vs_full = std::min(min_vs_full, vs_full.min_eigenvalue());
    prev = cur;
  }
  report.min_step_eigenvalue = min_step;
  report.min_vs_full_eigenvalue = min_vs_full;

  const SobolevForms base = build_forms(1, grid);
  report.records.push_back(CheckRecord{
      "each inflated form dominates its successor", "sobolev.chain.step", min_step, 0.0, tol,
      min_step >= -tol});
  report.records.push_back(CheckRecord{
      "each inflated form dominates the limit form", "sobolev.chain.vs_full", min_vs_full, 0.0,
      tol, min_vs_full >= -tol});
  report.records.push_back(CheckRecord{
      "the gradient form precedes the full form", "sobolev.chain.gradient_leq_full", 0.0, 0.0,
      tolerances().comparison, form_leq(base.gradient, base.full)});
  report.records.push_back(CheckRecord{
      "the full form does not precede the gradient form", "sobolev.chain.full_not_leq_gradient",
      0.0, 0.0, tolerances().comparison, !form_leq(base.full, base.gradient)});
  report.pass = std::all_of(report.records.begin(), report.records.end(),
                            [](const CheckRecord& r) { return r.pass; });
  return report;
}

Json BlowupReport::to_json() const {
  Json j;
  Json rows_json = Json::array();
  for (const auto& r : rows) {
    Json row;
    row["n_points"] = r.n_points;
    row["h"] = r.h;
    row["per_term_norm"] = r.per_term_norm;
    row["combined_norm"] = r.combined_norm;
    rows_json.push_back(std::move(row));
  }
  j["rows"] = std::move(rows_json);
  j["slope"] = slope;
  Json checks = Json::array();
  for (const auto& r : records) checks.push_back(r.to_json());
  j["checks"] = std::move(checks);
  j["pass"] = pass;
  return j;
}

std::string BlowupReport::to_csv() const {
  std::string out = "h,norm,slope\n";
  for (const auto& r : rows) {
    out += std::to_string(r.h);
    out += ',';
    out += std::to_string(r.per_term_norm);
    out += ',';
    out += std::to_string(slope);
    out += '\n';
  }
  return out;
}

BlowupReport boundary_blowup(const std::vector<Grid>& grids) {
  if (grids.size() < 2) throw std::invalid_argument("boundary_blowup: needs at least 2 grids");
  std::set<int> seen;
  for (const Grid& g : grids)
    if (!seen.insert(g.n_points).second)
      throw std::invalid_argument("boundary_blowup: duplicate grids");

  BlowupReport report;
  double worst_rel = 0.0;
  for (const Grid& g : grids) {
    const int d = g.n_points;
    const double h = g.h();
    // one boundary node term, as an operator relative to the h-weighted inner
    // product: divide the plain form matrix by h
    Matrix term = Matrix::Zero(d, d);
    term(0, 0) = 1.0;
    const double per_term = HermitianOp(term / h).operator_norm();
    const SobolevForms forms = build_forms(1, g);
    const double combined =
        HermitianOp(forms.boundary.generator().matrix() / h).operator_norm();
    report.rows.push_back(BlowupRow{d, h, per_term, combined});
    worst_rel = std::max(worst_rel, std::abs(per_term * h - 1.0));
  }

  std::sort(report.rows.begin(), report.rows.end(),
            [](const BlowupRow& a, const BlowupRow& b) { return a.h > b.h; });
  bool strict_growth = true;
  for (std::size_t i = 0; i + 1 < report.rows.size(); ++i)
    if (!(report.rows[i + 1].per_term_norm > report.rows[i].per_term_norm)) strict_growth = false;

  // least-squares slope of log(norm) against log(h)
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : report.rows) {
    const double x = std::log(r.h);
    const double y = std::log(r.per_term_norm);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(report.rows.size());
  report.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);

  report.records.push_back(CheckRecord{"per-term boundary norm equals 1/h",
                                       "sobolev.blowup.per_term", worst_rel, 0.0, 1e-9,
                                       worst_rel <= 1e-9});
  report.records.push_back(CheckRecord{"boundary norm grows strictly as h shrinks",
                                       "sobolev.blowup.growth", strict_growth ? 1.0 : 0.0, 1.0,
                                       0.0, strict_growth});
  report.records.push_back(CheckRecord{"log-log slope of the blow-up is -1",
                                       "sobolev.blowup.slope", report.slope, -1.0, 0.01,
                                       std::abs(report.slope + 1.0) <= 0.01});
  report.pass = std::all_of(report.records.begin(), report.records.end(),
                            [](const CheckRecord& r) { return r.pass; });
  return report;
}

Json NikodymReport::to_json() const {
  Json j;
  Json checks = Json::array();
  for (const auto& r : records) checks.push_back(r.to_json());
  j["checks"] = std::move(checks);
  j["max_deviation"] = max_deviation;
  j["pass"] = pass;
  return j;
}

NikodymReport nikodym_demo(const HermitianOp& t, const HermitianOp& s, int n_max,
                           const std::vector<Subspace>& sample) {
  if (t.dim() != s.dim()) throw std::invalid_argument("nikodym_demo: dimension mismatch");
  if (n_max < 1) throw std::invalid_argument("nikodym_demo: n_max must be at least 1");
  for (const Subspace& m : sample)
    if (m.ambient_dim() != t.dim())
      throw std::invalid_argument("nikodym_demo: sampled subspace dimension mismatch");

  NikodymReport report;
  const GleasonMeasure limit(t);
  const double s_norm = s.operator_norm();

  bool bound_holds = true;
  double worst_ratio = 0.0;
  report.max_deviation.assign(n_max, 0.0);
  for (int n = 1; n <= n_max; ++n) {
    const GleasonMeasure m_n(HermitianOp(t.matrix() + s.matrix() / static_cast<double>(n)));
    double max_dev = 0.0;
    for (const Subspace& m : sample) {
      const double dev = std::abs(eval(m_n, m) - eval(limit, m));
      max_dev = std::max(max_dev, dev);
      const double bound = s_norm * m.dim() / static_cast<double>(n);
      if (m.dim() > 0) {
        // rounding slack of a few ulps on the tight rank-one cases
        if (dev > bound * (1.0 + 1e-12) + 1e-15) bound_holds = false;
        if (bound > 0) worst_ratio = std::max(worst_ratio, dev / bound);
      } else if (dev > tolerances().check) {
        bound_holds = false;
      }
    }
    report.max_deviation[n - 1] = max_dev;
  }

  bool nonincreasing = true;
  for (int n = 1; n < n_max; ++n)
    if (report.max_deviation[n] > report.max_deviation[n - 1] + 1e-12) nonincreasing = false;

  report.records.push_back(CheckRecord{"deviation of the perturbed measures is within the rate bound",
                                       "nikodym.rate_bound", worst_ratio, 1.0, 0.0, bound_holds});
  report.records.push_back(CheckRecord{"maximal sampled deviation is nonincreasing in n",
                                       "nikodym.monotone", nonincreasing ? 1.0 : 0.0, 1.0, 1e-12,
                                       nonincreasing});

  // additivity of the limit measure over the coordinate split
  std::vector<Subspace> parts;
  for (int i = 0; i < t.dim(); ++i) parts.push_back(Subspace::coordinate(t.dim(), {i}));
  report.records.push_back(check_additivity(limit, parts));

  report.pass = std::all_of(report.records.begin(), report.records.end(),
                            [](const CheckRecord& r) { return r.pass; });
  return report;
}

}  // namespace gleason::sob
