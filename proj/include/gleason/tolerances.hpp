#pragma once

namespace gleason {

// Single knob shared by the numeric modules: `construction` guards type
// invariants (orthonormality, Hermitian symmetry), `comparison` guards
// derived equalities (projector proximity, eigenvalue sign tests), and
// `check` is the default tolerance of report-level claims.
struct Tolerances {
  double construction = 1e-10;
  double comparison = 1e-9;
  double check = 1e-8;
};

Tolerances& tolerances();

}  // namespace gleason
