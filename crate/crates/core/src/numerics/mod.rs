//! Numerical kernels shared by the bound computations: the Gamma function,
//! double-exponential quadrature on the half line and bracketed 1-D
//! minimization.

mod gamma;
mod minimize;
mod quadrature;

pub use gamma::gamma_fn;
pub(crate) use gamma::gamma_unchecked;
pub use minimize::{minimize_1d, minimize_with_prescan, MinimizeSpec, Minimum, ScanMinimum};
pub use quadrature::{
    integrate_semi_infinite, integrate_semi_infinite_n, integrate_singular_inner,
    integrate_singular_inner_n, QuadratureSpec,
};
