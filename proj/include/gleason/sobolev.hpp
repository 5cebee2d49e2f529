#pragma once

#include "gleason/forms.hpp"
#include "gleason/measures.hpp"
#include "gleason/report.hpp"

namespace gleason::sob {

// Uniform grid on [0, 1]; the mesh width is reported as the exact rational
// 1/(n_points - 1).
struct Grid {
  int n_points;
  explicit Grid(int n) : n_points(n) {
    if (n < 3) throw std::invalid_argument("grid: needs at least 3 points");
  }
  double h() const { return 1.0 / (n_points - 1); }
  std::string h_label() const { return "1/" + std::to_string(n_points - 1); }
  bool operator==(const Grid& other) const { return n_points == other.n_points; }
};

// Quadratic forms on grid functions, relative to the h-weighted inner
// product <u, v> = h sum_i u_i conj(v_i):
//   gradient  - forward-difference energy, the h-weighted sum of |u'|^2
//   boundary  - |u(0)|^2 + |u(1)|^2 as two rank-one node terms
//   full      - gradient + boundary
//   inflated  - (1 + 1/n) gradient + boundary
struct SobolevForms {
  MatrixForm inflated;
  MatrixForm full;
  MatrixForm gradient;
  MatrixForm boundary;
  int n;
  Grid grid;
};

SobolevForms build_forms(int n, const Grid& grid);

struct ChainReport {
  std::vector<CheckRecord> records;
  double min_step_eigenvalue = 0.0;     // over inflated(n) - inflated(n+1)
  double min_vs_full_eigenvalue = 0.0;  // over inflated(n) - full
  bool pass = false;
  Json to_json() const;
};

// Monotonicity of the decreasing form family: inflated(n+1) precedes
// inflated(n), full precedes every inflated(n), gradient precedes full.
ChainReport chain_report(const Grid& grid, int n_max);

struct BlowupRow {
  int n_points;
  double h;
  double per_term_norm;   // weighted operator norm of one boundary node term
  double combined_norm;   // weighted operator norm of the boundary form
};

struct BlowupReport {
  std::vector<BlowupRow> rows;
  double slope = 0.0;  // log-log fit of per-term norm against h
  std::vector<CheckRecord> records;
  bool pass = false;
  Json to_json() const;
  std::string to_csv() const;  // columns: h, norm, slope
};

// The numerically observable singularity signature: the boundary form blows
// up like 1/h under mesh refinement.
BlowupReport boundary_blowup(const std::vector<Grid>& grids);

struct NikodymReport {
  std::vector<CheckRecord> records;
  std::vector<double> max_deviation;  // per n, over the sampled subspaces
  bool pass = false;
  Json to_json() const;
};

// Pointwise limit of the measures induced by T + S/n: deviations bounded by
// |S| dim(M) / n on every sampled subspace, the limit additive.
NikodymReport nikodym_demo(const HermitianOp& t, const HermitianOp& s, int n_max,
                           const std::vector<Subspace>& sample);

}  // namespace gleason::sob
