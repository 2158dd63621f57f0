#pragma once

namespace skylink {

enum class GeodesicMethod { ClosedForm, RungeKutta4 };

// All tolerances and discretization constants in one place. Scenario files
// may override any field.
struct NumericPolicy {
  int n_samples = 1024;            // rays per front / per preimage search
  int t_grid = 2048;               // t-grid subdivisions for preimage bracketing
  double rk4_step = 1e-3;
  GeodesicMethod geodesic = GeodesicMethod::ClosedForm;

  double tol_unit = 1e-12;         // sphere points must be unit vectors
  double tol_geodesic = 1e-8;
  double tol_null_rel = 1e-9;      // tol_null = tol_null_rel * (1 + |dt|)
  double tol_hit = 0.0;            // 0: two times the max adjacent sample spacing
  double tol_refocus = 1e-3;
  double tol_align = 1e-2;         // conormal angle (rad) for a tangency
  double tol_frame = 1e-9;
  double tol_hess = 1e-8;
  double tol_root = 1e-10;
  double tol_merge = 1e-6;
  double fd_step = 1e-4;           // curvature finite differences
  double perturb_delta = 1e-3;     // auxiliary-event offset for degenerate targets
  int lattice_margin = 1;          // extra lattice cells in torus enumeration
  bool flip_counting_sign = false; // mutation hook for verify; never set in real runs

  double tol_null(double dt) const { return tol_null_rel * (1.0 + (dt < 0 ? -dt : dt)); }
};

}  // namespace skylink
