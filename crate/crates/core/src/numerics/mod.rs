//! Numerical workhorses: half-line quadrature, expectations under a model,
//! bracketed root finding, and the special functions the statistical layers
//! consume (normal CDF and quantile, chi-square tail, Kolmogorov distribution).

mod quadrature;
mod roots;
mod special;

pub use quadrature::{expect, integrate_halfline, integrate_halfline_with_error, QuadratureSpec};
pub use roots::{expand_bracket, find_root};
pub use special::{
    chi_square_sf, kolmogorov_cdf_exact, kolmogorov_sf, kolmogorov_sf_asymptotic, ln_gamma,
    reg_lower_gamma, std_normal_cdf, std_normal_quantile,
};
