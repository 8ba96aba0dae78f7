//! Bracketing scans, real and complex root refinement, adaptive quadrature.

mod quad;
mod roots;

pub use quad::{adaptive_quad, adaptive_quad_panels, quad_inverse_sqrt, QuadratureSpec};
pub use roots::{
    bracket_scan, bracket_scan_par, complex_secant, first_extremum, refine_root, uniform_grid, Bracket, Refined,
};
