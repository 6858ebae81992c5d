//! Theta functions with characteristics, evaluated by truncated lattice sums.
//!
//! For a row vector `m = n + a` the genus-two series is
//!
//! ```text
//! theta[a; b](z, Omega) = sum_{n in Z^2} exp(pi i m Omega m^T + 2 pi i m (z + b)^T)
//! ```
//!
//! and its terms decay like `exp(-pi lambda |m|^2)` where `lambda` is the
//! smallest eigenvalue of `Im Omega`.  The truncation radius is chosen from
//! that bound so the discarded tail is below the policy tolerance, then two
//! extra shells are added for safety; if the required radius exceeds the
//! policy cap the evaluation fails rather than returning a degraded value.
//!
//! Characteristics are arbitrary real vectors here.  Half-integer ones come
//! from [`crate::chars`]; the symplectic transformation law needs the general
//! case because image characteristics land outside `[0, 1)`.

use num_complex::Complex64;

use crate::chars::{Char1, Char2, LABELS};
use crate::{Error, Result};

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

/// Symmetric 2x2 period matrix with positive definite imaginary part.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PeriodMatrix2 {
    pub o11: Complex64,
    pub o12: Complex64,
    pub o22: Complex64,
}

impl PeriodMatrix2 {
    pub fn new(o11: Complex64, o12: Complex64, o22: Complex64) -> Result<Self> {
        let m = PeriodMatrix2 { o11, o12, o22 };
        if m.lambda_min() <= 0.0 {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(m)
    }

    /// Purely imaginary diagonal matrix `diag(i t1, i t2)`, the split locus.
    pub fn diagonal(t1: f64, t2: f64) -> Result<Self> {
        Self::new(
            Complex64::new(0.0, t1),
            Complex64::ZERO,
            Complex64::new(0.0, t2),
        )
    }

    /// Smallest eigenvalue of `Im Omega`.
    pub fn lambda_min(&self) -> f64 {
        let (y11, y12, y22) = (self.o11.im, self.o12.im, self.o22.im);
        let tr = y11 + y22;
        let det = y11 * y22 - y12 * y12;
        let disc = (tr * tr - 4.0 * det).max(0.0).sqrt();
        0.5 * (tr - disc)
    }

    /// The quadratic form `m Omega m^T` for a row vector `m`.
    pub fn quad(&self, m: [Complex64; 2]) -> Complex64 {
        m[0] * m[0] * self.o11 + 2.0 * m[0] * m[1] * self.o12 + m[1] * m[1] * self.o22
    }

    /// Matrix doubled entrywise, `2 Omega`.
    pub fn double(&self) -> PeriodMatrix2 {
        PeriodMatrix2 {
            o11: 2.0 * self.o11,
            o12: 2.0 * self.o12,
            o22: 2.0 * self.o22,
        }
    }

    /// The two-torsion point `(1/2) Omega (i, j)^T + (1/2) (k, l)^T` for the
    /// characteristic with bits `(i, j, k, l)`.
    pub fn two_torsion(&self, c: Char2) -> [Complex64; 2] {
        let [i, j, k, l] = c.bits;
        let (i, j, k, l) = (i as f64, j as f64, k as f64, l as f64);
        [
            0.5 * (self.o11 * i + self.o12 * j) + Complex64::new(0.5 * k, 0.0),
            0.5 * (self.o12 * i + self.o22 * j) + Complex64::new(0.5 * l, 0.0),
        ]
    }
}

/// Controls how far lattice sums extend and when they refuse to.
#[derive(Clone, Copy, Debug)]
pub struct TruncationPolicy {
    /// Absolute bound on the discarded tail.
    pub tol: f64,
    /// Hard cap on the truncation radius.
    pub max_radius: i64,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy {
            tol: 1e-12,
            max_radius: 40,
        }
    }
}

impl TruncationPolicy {
    /// Smallest radius whose tail bound is below `tol`, plus two safety
    /// shells.  `lambda` is the smallest eigenvalue of the imaginary part,
    /// `v` the Euclidean norm of `Im z`, `a_inf` the sup norm of the `a`
    /// characteristic (the lattice is offset by `a`).
    fn radius(&self, lambda: f64, v: f64, a_inf: f64) -> Result<i64> {
        debug_assert!(lambda > 0.0);
        // Terms at shell |m|_inf = k are bounded by
        //   exp(-pi lambda k^2 + 2 pi sqrt(2) (k + 1) v)
        // and there are at most 8 (k + 2) of them.  Past the crossover k0
        // consecutive shell bounds shrink by at least a factor two, so the
        // tail is at most twice the first shell bound.
        let k0 = ((2.0f64.ln() + 1.5f64.ln() + TWO_PI * std::f64::consts::SQRT_2 * v)
            / (TWO_PI * lambda))
            .ceil() as i64;
        let mut r = k0.max(1);
        loop {
            let k = r as f64;
            let shells = 16.0 * (k + 2.0);
            let log_term = -std::f64::consts::PI * lambda * k * k
                + TWO_PI * std::f64::consts::SQRT_2 * (k + 1.0) * v;
            if shells * log_term.exp() <= self.tol {
                break;
            }
            r += 1;
            if r + 2 > self.max_radius {
                return Err(Error::RadiusExceeded {
                    required: r + 2,
                    cap: self.max_radius,
                });
            }
        }
        Ok(r + 2 + a_inf.abs().ceil() as i64)
    }
}

/// Genus-two theta with real characteristic `[a; b]` at `(z, Omega)`.
pub fn theta2(
    a: [f64; 2],
    b: [f64; 2],
    z: [Complex64; 2],
    omega: &PeriodMatrix2,
    policy: &TruncationPolicy,
) -> Result<Complex64> {
    Ok(theta2_core(a, b, z, omega, policy, false)?.0)
}

/// Genus-two theta together with its gradient in `z`.
pub fn theta2_grad(
    a: [f64; 2],
    b: [f64; 2],
    z: [Complex64; 2],
    omega: &PeriodMatrix2,
    policy: &TruncationPolicy,
) -> Result<(Complex64, [Complex64; 2])> {
    let (v, g) = theta2_core(a, b, z, omega, policy, true)?;
    Ok((v, g))
}

fn theta2_core(
    a: [f64; 2],
    b: [f64; 2],
    z: [Complex64; 2],
    omega: &PeriodMatrix2,
    policy: &TruncationPolicy,
    grad: bool,
) -> Result<(Complex64, [Complex64; 2])> {
    let lambda = omega.lambda_min();
    if lambda <= 0.0 {
        return Err(Error::NotPositiveDefinite);
    }
    let v = (z[0].im * z[0].im + z[1].im * z[1].im).sqrt() / lambda;
    let a_inf = a[0].abs().max(a[1].abs());
    let r = policy.radius(lambda, v, a_inf)?;
    let i2pi = Complex64::new(0.0, TWO_PI);
    let w = [z[0] + b[0], z[1] + b[1]];
    let mut sum = Complex64::ZERO;
    let mut gsum = [Complex64::ZERO; 2];
    let rf = r as f64;
    let lo1 = (-rf - a[0]).ceil() as i64;
    let hi1 = (rf - a[0]).floor() as i64;
    for n1 in lo1..=hi1 {
        let m1 = n1 as f64 + a[0];
        let lo2 = (-rf - a[1]).ceil() as i64;
        let hi2 = (rf - a[1]).floor() as i64;
        for n2 in lo2..=hi2 {
            let m2 = n2 as f64 + a[1];
            let m = [Complex64::new(m1, 0.0), Complex64::new(m2, 0.0)];
            let expo = Complex64::new(0.0, std::f64::consts::PI) * omega.quad(m)
                + i2pi * (m[0] * w[0] + m[1] * w[1]);
            let term = expo.exp();
            sum += term;
            if grad {
                gsum[0] += term * i2pi * m1;
                gsum[1] += term * i2pi * m2;
            }
        }
    }
    Ok((sum, gsum))
}

/// Genus-two theta at a half-integer characteristic.
pub fn theta2_char(
    c: Char2,
    z: [Complex64; 2],
    omega: &PeriodMatrix2,
    policy: &TruncationPolicy,
) -> Result<Complex64> {
    theta2(c.a(), c.b(), z, omega, policy)
}

/// Genus-one theta with real characteristic `[a; b]` at `(z, tau)`.
///
/// Written as its own sum rather than a degenerate case of [`theta2`], so
/// that the two implementations can be played against each other on diagonal
/// period matrices.
pub fn theta1(
    a: f64,
    b: f64,
    z: Complex64,
    tau: Complex64,
    policy: &TruncationPolicy,
) -> Result<Complex64> {
    let lambda = tau.im;
    if lambda <= 0.0 {
        return Err(Error::NotPositiveDefinite);
    }
    let r = policy.radius(lambda, z.im.abs() / lambda, a.abs())?;
    let i_pi = Complex64::new(0.0, std::f64::consts::PI);
    let i2pi = Complex64::new(0.0, TWO_PI);
    let mut sum = Complex64::ZERO;
    let rf = r as f64;
    let lo = (-rf - a).ceil() as i64;
    let hi = (rf - a).floor() as i64;
    for n in lo..=hi {
        let m = n as f64 + a;
        sum += (i_pi * m * m * tau + i2pi * m * (z + b)).exp();
    }
    Ok(sum)
}

/// Genus-one theta at one of the four classical characteristics.
pub fn theta1_char(
    c: Char1,
    z: Complex64,
    tau: Complex64,
    policy: &TruncationPolicy,
) -> Result<Complex64> {
    theta1(c.a(), c.b(), z, tau, policy)
}

/// The ten even theta constants `A_1..A_10` at `Omega`.
pub fn even_constants(omega: &PeriodMatrix2, policy: &TruncationPolicy) -> Result<[Complex64; 10]> {
    let z0 = [Complex64::ZERO; 2];
    let mut out = [Complex64::ZERO; 10];
    for (i, c) in LABELS[..10].iter().enumerate() {
        out[i] = theta2_char(*c, z0, omega, policy)?;
    }
    Ok(out)
}

/// The four level-(2,4) constants `B_0..B_3`, thetas at `(0, 2 Omega)` whose
/// `a` characteristic runs over `(1/2){00, 01, 10, 11}` with `b = 0`.
pub fn level24_constants(
    omega: &PeriodMatrix2,
    policy: &TruncationPolicy,
) -> Result<[Complex64; 4]> {
    let two = omega.double();
    let z0 = [Complex64::ZERO; 2];
    let mut out = [Complex64::ZERO; 4];
    for (k, bits) in [(0u8, 0u8), (0, 1), (1, 0), (1, 1)].iter().enumerate() {
        out[k] = theta2(
            [bits.0 as f64 / 2.0, bits.1 as f64 / 2.0],
            [0.0, 0.0],
            z0,
            &two,
            policy,
        )?;
    }
    Ok(out)
}

/// The six odd coordinates `X_1..X_6` of the point `z`, fourth-order thetas
/// evaluated at `(2z, Omega)`.
pub fn odd_coords(
    z: [Complex64; 2],
    omega: &PeriodMatrix2,
    policy: &TruncationPolicy,
) -> Result<[Complex64; 6]> {
    let zz = [2.0 * z[0], 2.0 * z[1]];
    let mut out = [Complex64::ZERO; 6];
    for (i, c) in LABELS[10..].iter().enumerate() {
        out[i] = theta2_char(*c, zz, omega, policy)?;
    }
    Ok(out)
}

fn rel(lhs: Complex64, rhs: Complex64) -> f64 {
    (lhs - rhs).norm() / lhs.norm().max(rhs.norm()).max(f64::MIN_POSITIVE)
}

/// Norms of the six odd theta constants, scaled by the largest even one.
/// All six vanish identically, so these are pure truncation noise.
pub fn odd_constant_residuals(
    omega: &PeriodMatrix2,
    policy: &TruncationPolicy,
) -> Result<[f64; 6]> {
    let even = even_constants(omega, policy)?;
    let scale = even
        .iter()
        .map(|v| v.norm())
        .fold(f64::MIN_POSITIVE, f64::max);
    let z0 = [Complex64::ZERO; 2];
    let mut out = [0.0; 6];
    for (i, c) in LABELS[10..].iter().enumerate() {
        out[i] = theta2_char(*c, z0, omega, policy)?.norm() / scale;
    }
    Ok(out)
}

/// Relative residuals of the three genus-one duplication formulas linking
/// the constants at `tau` to those at `2 tau`:
///
/// ```text
/// theta_00(tau)^2 = theta_00(2 tau)^2 + theta_10(2 tau)^2
/// theta_10(tau)^2 = 2 theta_00(2 tau) theta_10(2 tau)
/// theta_01(tau)^2 = theta_00(2 tau)^2 - theta_10(2 tau)^2
/// ```
pub fn duplication_residuals(tau: Complex64, policy: &TruncationPolicy) -> Result<[f64; 3]> {
    let z = Complex64::ZERO;
    let t2 = 2.0 * tau;
    let c00 = theta1(0.0, 0.0, z, tau, policy)?;
    let c01 = theta1(0.0, 0.5, z, tau, policy)?;
    let c10 = theta1(0.5, 0.0, z, tau, policy)?;
    let d00 = theta1(0.0, 0.0, z, t2, policy)?;
    let d10 = theta1(0.5, 0.0, z, t2, policy)?;
    Ok([
        rel(c00 * c00, d00 * d00 + d10 * d10),
        rel(c10 * c10, 2.0 * d00 * d10),
        rel(c01 * c01, d00 * d00 - d10 * d10),
    ])
}

/// Relative residual of the factorization over a diagonal period matrix:
/// `theta[c]((z_1, z_2), diag(tau_1, tau_2))` against the product
/// `theta[a_1; b_1](z_1, tau_1) theta[a_2; b_2](z_2, tau_2)`.  This is the
/// independent genus-one oracle for every genus-two value.
pub fn diagonal_factorization_residual(
    c: Char2,
    z: [Complex64; 2],
    tau: [Complex64; 2],
    policy: &TruncationPolicy,
) -> Result<f64> {
    let om = PeriodMatrix2::new(tau[0], Complex64::ZERO, tau[1])?;
    let lhs = theta2_char(c, z, &om, policy)?;
    let rhs = theta1(c.a()[0], c.b()[0], z[0], tau[0], policy)?
        * theta1(c.a()[1], c.b()[1], z[1], tau[1], policy)?;
    Ok(rel(lhs, rhs))
}

/// Relative residual of quasi-periodicity under `z -> z + Omega m + n`:
/// the shifted value against
/// `exp(-pi i m Omega m^T - 2 pi i m z^T + 2 pi i (a n^T - b m^T)) theta(z)`.
pub fn quasi_periodicity_residual(
    c: Char2,
    z: [Complex64; 2],
    m: [i64; 2],
    n: [i64; 2],
    omega: &PeriodMatrix2,
    policy: &TruncationPolicy,
) -> Result<f64> {
    let (a, b) = (c.a(), c.b());
    let mf = [m[0] as f64, m[1] as f64];
    let nf = [n[0] as f64, n[1] as f64];
    let shift = [
        omega.o11 * mf[0] + omega.o12 * mf[1] + nf[0],
        omega.o12 * mf[0] + omega.o22 * mf[1] + nf[1],
    ];
    let zs = [z[0] + shift[0], z[1] + shift[1]];
    let lhs = theta2_char(c, zs, omega, policy)?;
    let quad = omega.quad([Complex64::new(mf[0], 0.0), Complex64::new(mf[1], 0.0)]);
    let factor = (Complex64::new(0.0, -std::f64::consts::PI) * quad
        + Complex64::new(0.0, -TWO_PI) * (z[0] * mf[0] + z[1] * mf[1])
        + Complex64::new(0.0, TWO_PI)
            * ((a[0] * nf[0] + a[1] * nf[1]) - (b[0] * mf[0] + b[1] * mf[1])))
        .exp();
    let rhs = factor * theta2_char(c, z, omega, policy)?;
    Ok(rel(lhs, rhs))
}
