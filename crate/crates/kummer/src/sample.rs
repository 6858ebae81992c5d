//! Random period matrices and arguments for identity testing.
//!
//! The samplers stay in a diagonally dominant region of the Siegel space
//! (imaginary parts well away from zero, small off-diagonal) so that theta
//! series converge within modest truncation radii and none of the theta
//! constants degenerate.  That is exactly the regime the identity suites
//! want: generic, but numerically comfortable.

use num_complex::Complex64;
use rand::Rng;

use crate::theta::PeriodMatrix2;

/// A generic genus-two period matrix with `Im` eigenvalues in roughly
/// `[0.6, 2.2]`.
pub fn random_omega<R: Rng + ?Sized>(rng: &mut R) -> PeriodMatrix2 {
    let y11: f64 = rng.random_range(0.8..2.0);
    let y22: f64 = rng.random_range(0.8..2.0);
    let y12 = rng.random_range(-0.25..0.25) * y11.min(y22);
    let x11 = rng.random_range(-0.45..0.45);
    let x22 = rng.random_range(-0.45..0.45);
    let x12 = rng.random_range(-0.45..0.45);
    PeriodMatrix2::new(
        Complex64::new(x11, y11),
        Complex64::new(x12, y12),
        Complex64::new(x22, y22),
    )
    .expect("dominant diagonal keeps Im positive definite")
}

/// A generic argument with moderate imaginary part.
pub fn random_z<R: Rng + ?Sized>(rng: &mut R) -> [Complex64; 2] {
    [
        Complex64::new(rng.random_range(-0.5..0.5), rng.random_range(-0.3..0.3)),
        Complex64::new(rng.random_range(-0.5..0.5), rng.random_range(-0.3..0.3)),
    ]
}

/// A generic genus-one period in the upper half plane.
pub fn random_tau<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.random_range(-0.45..0.45), rng.random_range(0.7..1.8))
}

/// A generic genus-one argument.
pub fn random_z1<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.random_range(-0.5..0.5), rng.random_range(-0.3..0.3))
}
