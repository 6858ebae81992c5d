//! The quadric model of the desingularized Kummer surface.
//!
//! Four level-(2,4) constants `B_0..B_3` determine the ten squared theta
//! constants through the Veronese-type quadrics of [`veronese`]; those ten
//! squares are the coefficients of fifteen diagonal quadrics `E_1..E_15` in
//! the odd coordinates `X_1..X_6` ([`build_equations`]).  The common zero
//! locus in `P^5` is the surface; the quadrics span a net, three of them
//! already cut the surface out, and the remaining twelve are recovered by
//! [`net_coefficients`].  Everything in this module is polynomial algebra in
//! a [`Scalar`] field, shared verbatim between the complex and finite-field
//! backends.

use num_complex::Complex64;

use crate::field::Scalar;
use crate::chars::Char2;
use crate::linalg::Mat;
use crate::theta::{odd_coords, PeriodMatrix2, TruncationPolicy};
use crate::{Error, Result};

/// Symmetric 4x4 integer forms `M_i` with `A_i^2 = B M_i B^T`.
///
/// Rows follow the theta constant order `A_1..A_10`: four diagonal sign
/// patterns, then six off-diagonal pair forms `2(B_a B_b +- B_c B_d)`.
pub const VERONESE_FORMS: [[[i64; 4]; 4]; 10] = [
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
    [[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]],
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]],
    [[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, 1]],
    [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],
    [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]],
    [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]],
    [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, -1, 0]],
    [[0, 0, 1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, -1, 0, 0]],
    [[0, 0, 0, 1], [0, 0, -1, 0], [0, -1, 0, 0], [1, 0, 0, 0]],
];

/// The squared theta constants `A_1^2..A_10^2` of a point `B` in `P^3`.
pub fn veronese<T: Scalar>(b: &[T; 4]) -> [T; 10] {
    let zero = b[0].zero_like();
    let mut out = [zero; 10];
    for (i, form) in VERONESE_FORMS.iter().enumerate() {
        let mut s = zero;
        for (r, row) in form.iter().enumerate() {
            for (c, &m) in row.iter().enumerate() {
                if m != 0 {
                    s = s + b[r].of_i64(m) * b[r] * b[c];
                }
            }
        }
        out[i] = s;
    }
    out
}

/// Gradient of `A_i^2` with respect to `B`, namely `2 M_i B`.
pub fn veronese_gradient<T: Scalar>(i: usize, b: &[T; 4]) -> [T; 4] {
    let zero = b[0].zero_like();
    let mut out = [zero; 4];
    for (r, row) in VERONESE_FORMS[i].iter().enumerate() {
        for (c, &m) in row.iter().enumerate() {
            if m != 0 {
                out[r] = out[r] + b[0].of_i64(2 * m) * b[c];
            }
        }
    }
    out
}

/// The fifteen equations as terms `(coordinate slot, constant index, sign)`:
/// equation `k` is `sum sign * A_{index+1}^2 * X_{slot+1}^2`.
pub const EQUATIONS: [[(usize, usize, i8); 4]; 15] = [
    [(0, 9, 1), (3, 0, 1), (4, 1, -1), (5, 4, -1)],
    [(1, 9, 1), (3, 2, 1), (4, 3, -1), (5, 7, -1)],
    [(2, 9, 1), (3, 5, 1), (4, 8, -1), (5, 6, -1)],
    [(0, 0, 1), (1, 2, -1), (2, 5, -1), (3, 9, 1)],
    [(0, 1, 1), (1, 3, -1), (2, 8, -1), (4, 9, 1)],
    [(0, 4, 1), (1, 7, -1), (2, 6, -1), (5, 9, 1)],
    [(0, 7, 1), (1, 4, -1), (3, 8, -1), (4, 5, 1)],
    [(0, 2, 1), (1, 0, -1), (4, 6, 1), (5, 8, -1)],
    [(0, 3, 1), (1, 1, -1), (3, 6, 1), (5, 5, -1)],
    [(0, 6, 1), (2, 4, -1), (3, 3, 1), (4, 2, -1)],
    [(0, 8, 1), (2, 1, -1), (3, 7, -1), (5, 2, 1)],
    [(0, 5, 1), (2, 0, -1), (4, 7, -1), (5, 3, 1)],
    [(1, 6, 1), (2, 7, -1), (3, 1, 1), (4, 0, -1)],
    [(1, 8, 1), (2, 3, -1), (3, 4, -1), (5, 0, 1)],
    [(1, 5, 1), (2, 2, -1), (4, 4, -1), (5, 1, 1)],
];

/// A quadric `sum c_i X_i^2` in the six projective coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiagonalQuadric<T> {
    pub coeffs: [T; 6],
}

impl<T: Scalar> DiagonalQuadric<T> {
    pub fn eval(&self, x: &[T; 6]) -> T {
        let mut s = x[0].zero_like();
        for i in 0..6 {
            s = s + self.coeffs[i] * x[i] * x[i];
        }
        s
    }

    /// The associated bilinear form `sum c_i u_i v_i` (half the polarization
    /// of the quadric, which is all that is needed for zero tests).
    pub fn bilinear(&self, u: &[T; 6], v: &[T; 6]) -> T {
        let mut s = u[0].zero_like();
        for i in 0..6 {
            s = s + self.coeffs[i] * u[i] * v[i];
        }
        s
    }

    /// Rank of the diagonal form: the number of coefficients that are
    /// nonzero relative to the largest one.
    pub fn rank(&self, zero_tol: f64) -> usize {
        let scale = self
            .coeffs
            .iter()
            .map(|c| c.pivot_size())
            .fold(0.0f64, f64::max);
        if scale == 0.0 {
            return 0;
        }
        self.coeffs
            .iter()
            .filter(|c| c.pivot_size() > zero_tol * scale)
            .count()
    }

    /// Magnitude of `eval(x)` relative to the sizes of its summands, the
    /// right scale-free residual for "does `x` lie on the quadric".
    pub fn relative_residual(&self, x: &[T; 6]) -> f64 {
        let scale = (0..6)
            .map(|i| (self.coeffs[i] * x[i] * x[i]).pivot_size())
            .fold(0.0f64, f64::max);
        if scale == 0.0 {
            return 0.0;
        }
        self.eval(x).pivot_size() / scale
    }
}

/// The fifteen quadrics with coefficients taken from squared constants.
pub fn build_equations<T: Scalar>(asq: &[T; 10]) -> [DiagonalQuadric<T>; 15] {
    let zero = asq[0].zero_like();
    let mut out = [DiagonalQuadric { coeffs: [zero; 6] }; 15];
    for (k, eq) in EQUATIONS.iter().enumerate() {
        for &(slot, idx, sign) in eq {
            out[k].coeffs[slot] = asq[idx].of_i64(sign as i64) * asq[idx];
        }
    }
    out
}

/// Derivative of equation `k` with respect to `B`, at `(B, X)`.
pub fn equation_grad_b<T: Scalar>(k: usize, b: &[T; 4], x: &[T; 6]) -> [T; 4] {
    let zero = b[0].zero_like();
    let mut out = [zero; 4];
    for &(slot, idx, sign) in &EQUATIONS[k] {
        let g = veronese_gradient(idx, b);
        let xs = x[slot] * x[slot];
        for r in 0..4 {
            out[r] = out[r] + b[0].of_i64(sign as i64) * g[r] * xs;
        }
    }
    out
}

/// Derivative of equation `k` with respect to `X`, at `(B, X)`.
pub fn equation_grad_x<T: Scalar>(k: usize, asq: &[T; 10], x: &[T; 6]) -> [T; 6] {
    let zero = x[0].zero_like();
    let mut out = [zero; 6];
    for &(slot, idx, sign) in &EQUATIONS[k] {
        out[slot] = asq[idx].of_i64(2 * sign as i64) * asq[idx] * x[slot];
    }
    out
}

/// Coordinates of the point `z` on the surface: `[X_1 : ... : X_6]`.
pub fn phi(
    z: [Complex64; 2],
    omega: &PeriodMatrix2,
    policy: &TruncationPolicy,
) -> Result<[Complex64; 6]> {
    let x = odd_coords(z, omega, policy)?;
    if x.iter().all(|v| v.is_zero()) {
        return Err(Error::BasePoint);
    }
    Ok(x)
}

/// Relative residuals of the ten quadratic relations between the squared
/// even constants and the level-(2,4) coordinates at the same period matrix:
/// `A_i(Omega)^2` against `veronese(B(Omega))_i`.  The relations hold on the
/// nose, with no projective factor, so the residuals are scaled by the
/// largest square.
pub fn veronese_constant_residuals(
    omega: &PeriodMatrix2,
    policy: &TruncationPolicy,
) -> Result<[f64; 10]> {
    let a = crate::theta::even_constants(omega, policy)?;
    let b = crate::theta::level24_constants(omega, policy)?;
    let ver = veronese(&b);
    let scale = a
        .iter()
        .map(|v| (v * v).norm())
        .fold(f64::MIN_POSITIVE, f64::max);
    let mut out = [0.0; 10];
    for i in 0..10 {
        out[i] = (a[i] * a[i] - ver[i]).norm() / scale;
    }
    Ok(out)
}

/// Signs picked up by `(X_1, ..., X_6)` under translation by the four
/// generating two-torsion points, in characteristic bit order `(i, j, k, l)`:
/// rows for `(1/2) Omega (1,0)`, `(1/2) Omega (0,1)`, `(1/2)(1,0)`,
/// `(1/2)(0,1)`.
pub const TRANSLATION_SIGNS: [[i8; 6]; 4] = [
    [1, -1, 1, -1, -1, -1],
    [-1, -1, -1, 1, -1, 1],
    [1, 1, -1, -1, -1, -1],
    [-1, -1, -1, 1, 1, -1],
];

/// Projective sign pattern of translation by the two-torsion point with
/// characteristic `c`: the product of generator rows over the set bits.
pub fn translation_signs(c: Char2) -> [i8; 6] {
    let mut out = [1i8; 6];
    for (bit, row) in TRANSLATION_SIGNS.iter().enumerate() {
        if c.bits[bit] == 1 {
            for i in 0..6 {
                out[i] *= row[i];
            }
        }
    }
    out
}

/// Coordinates of `x` translated by the two-torsion point `c`, up to the
/// common projective factor.
pub fn two_torsion_translate<T: Scalar>(x: &[T; 6], c: Char2) -> [T; 6] {
    let signs = translation_signs(c);
    let mut out = *x;
    for i in 0..6 {
        out[i] = out[i].of_i64(signs[i] as i64) * out[i];
    }
    out
}

/// Expansion of a diagonal quadric in the net basis `E_1, E_2, E_3`:
/// coefficients `(c_1, c_2, c_3)` and the relative residual of the fit.
pub fn net_coefficients<T: Scalar>(
    q: &DiagonalQuadric<T>,
    asq: &[T; 10],
    zero_tol: f64,
) -> Result<([T; 3], f64)> {
    let eqs = build_equations(asq);
    let rows: Vec<Vec<T>> = (0..6)
        .map(|i| vec![eqs[0].coeffs[i], eqs[1].coeffs[i], eqs[2].coeffs[i]])
        .collect();
    let m = Mat::from_rows(&rows);
    let (x, res) = m.solve(&q.coeffs.to_vec(), zero_tol);
    let scale = q
        .coeffs
        .iter()
        .map(|c| c.pivot_size())
        .fold(0.0f64, f64::max)
        .max(1e-300);
    let rel = res / scale;
    if rel > zero_tol.max(1e-300) && res > 0.0 {
        return Err(Error::NotInNet { residual: rel });
    }
    Ok(([x[0], x[1], x[2]], rel))
}

/// The determinant identity behind the net structure: with rows built from
/// the coefficient matrix of `(E_1, E_2, E_3)` at slots `(X_4, X_5, X_6)`,
/// `det M = A_10^6`.  Returns `det M - A_10^6`, which must vanish.
pub fn det_m_residual<T: Scalar>(asq: &[T; 10]) -> T {
    let m = [
        [asq[0], -asq[1], -asq[4]],
        [asq[2], -asq[3], -asq[7]],
        [asq[5], -asq[8], -asq[6]],
    ];
    det3(&m) - asq[9] * asq[9] * asq[9]
}

/// Companion identity: expressing `(E_5, E_7, E_8)` through `(E_1, E_2, E_3)`
/// uses the matrix `M'` below, whose determinant is `-A_10^2 A_9^4` on the
/// Veronese image.  Returns `det M' + A_10^2 A_9^4`.
///
/// The scalar is pinned by exact arithmetic: expanding along the third
/// column, `det M' = A_9^2 (A_8^2 A_1^2 - A_5^2 A_3^2)`, and the parenthesis
/// is `-A_10^2 A_9^2` on the image (it is the `X_4^2` slot of the relation
/// `A_10^2 E_7 = A_8^2 E_1 - A_5^2 E_2`).  At `B = (1, 3, 3, 3)` over `Z`
/// both sides are 1728.
pub fn det_m_prime_residual<T: Scalar>(asq: &[T; 10]) -> T {
    let zero = asq[0].zero_like();
    let m = [
        [asq[1], -asq[3], -asq[8]],
        [asq[7], -asq[4], zero],
        [asq[2], -asq[0], zero],
    ];
    det3(&m) + asq[9] * asq[8] * asq[8]
}

pub(crate) fn det3<T: Scalar>(m: &[[T; 3]; 3]) -> T {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Rosenhain invariants of the genus-two curve under the surface:
/// `y^2 = x (x - 1) (x - l1) (x - l2) (x - l3)` with
/// `l1 = A_7^2 A_6^2 / (A_5^2 A_1^2)`, `l2 = A_9^2 A_7^2 / (A_2^2 A_5^2)`,
/// `l3 = A_9^2 A_6^2 / (A_2^2 A_1^2)`.
pub fn rosenhain_invariants<T: Scalar>(asq: &[T; 10]) -> Result<[T; 3]> {
    let inv = |t: T| t.inv().ok_or(Error::DivisionByNearZero("rosenhain invariants"));
    let l1 = asq[6] * asq[5] * inv(asq[4] * asq[0])?;
    let l2 = asq[8] * asq[6] * inv(asq[1] * asq[4])?;
    let l3 = asq[8] * asq[5] * inv(asq[1] * asq[0])?;
    Ok([l1, l2, l3])
}
