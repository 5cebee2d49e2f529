#pragma once

#include "gleason/forms.hpp"
#include "gleason/report.hpp"

namespace gleason {

// Measure on the subspace lattice induced by a Hermitian generator T via
// M -> tr(T P_M). Signed measures arise from indefinite generators.
class GleasonMeasure {
 public:
  explicit GleasonMeasure(HermitianOp generator) : generator_(std::move(generator)) {}
  int dim() const { return generator_.dim(); }
  const HermitianOp& generator() const { return generator_; }

 private:
  HermitianOp generator_;
};

double eval(const GleasonMeasure& m, const Subspace& M);

// Signed measure M -> tr(T (A P_M + P_M A) / 2), realized by the Hermitian
// generator (T A + A T) / 2.
GleasonMeasure jordan_measure(const HermitianOp& t, const HermitianOp& a);

// Positive generator of unit trace.
bool is_state(const GleasonMeasure& m);

GleasonMeasure measure_from_frame(const FrameFunctionView& f);
FrameFunctionView frame_from_measure(const GleasonMeasure& m);

// |m(join parts) - sum m(part_i)| at the report tolerance. Parts must be
// pairwise orthogonal.
CheckRecord check_additivity(const GleasonMeasure& m, const std::vector<Subspace>& parts);

struct RegularityReport {
  std::vector<double> chain;  // measures of the ascending eigen-ordered chain
  double target = 0.0;        // eval(m, M)
  double tolerance = 0.0;
  bool pass = false;
  Json to_json() const;
};

// Ascending chain of finite-dimensional subspaces of M built from the
// eigenvectors of the compressed generator, largest eigenvalues first; the
// chain must attain eval(m, M) at dim M steps.
RegularityReport check_regularity(const GleasonMeasure& m, const Subspace& M);

}  // namespace gleason
