//! Special functions of real argument.

pub mod airy;
pub mod bessel;
pub mod dawson;
pub mod fresnel;
pub mod hankel;
pub mod scorer;
pub mod sph_bessel;
pub mod tail;

pub use airy::{airy, airy_scale_exponent, airy_scaled, zeta, AiryPair};
pub use bessel::{bessel_ik_scaled, bessel_j_real_order, bessel_jy, bessel_jy_any};
pub use dawson::{dawson, dawson_erf};
pub use fresnel::{fresnel_aux, fresnel_cs, FresnelAux};
pub use hankel::{h_combo, HankelCombo, HankelKind};
pub use scorer::{gi, hi, hi_scaled, scorer};
pub use sph_bessel::{sph_bessel, sph_bessel_with_derivatives};
pub use tail::{half_power_tail, half_power_tail_complex};
