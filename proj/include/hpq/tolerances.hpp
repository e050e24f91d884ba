#pragma once

namespace hpq {

// Numeric knobs shared across the library. Every field can be overridden per
// run (see the CLI's --tol KEY=VAL). Values assume doubles and dimension <= 16.
struct Tolerances {
  double tol_null = 1e-9;          // |<x,x>| band classifying a unit lift as isotropic
  double tol_sign = 1e-10;         // pairing-is-zero band for sign verdicts
  double tol_degenerate = 1e-10;   // eigenvalue cutoff relative to spectral radius
  double dedupe_radius = 1e-6;     // angular merge radius for projective points
  double tol_proximal = 1e-6;      // required excess of the eigenvalue gap ratio over 1
  double tol_membership = 1e-9;    // halfspace / cone membership band
  double form_residual_rel = 1e-9; // generator form-preservation bound (relative to max|gram|)
};

}  // namespace hpq
