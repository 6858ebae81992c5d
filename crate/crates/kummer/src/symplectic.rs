//! The symplectic group `Sp_4(Z)`, its action on characteristics, and the
//! theta transformation formula.
//!
//! An element `gamma = [[A, B], [C, D]]` acts on the Siegel space by
//! `gamma . (z, Omega) = (t(C Omega + D)^-1 z, (A Omega + B)(C Omega + D)^-1)`
//! and on characteristics by
//!
//! ```text
//! gamma . [a; b] = [D a - C b + (1/2) diag(C tD);  -B a + A b + (1/2) diag(A tB)]
//! ```
//!
//! Theta functions are automorphic up to an eighth root of unity `kappa`:
//!
//! ```text
//! theta[gamma.c](gamma.(z, Omega)) = kappa det(C Omega + D)^(1/2) F theta[c](z, Omega)
//! F = exp(pi i (t(Da - Cb) (-Ba + Ab + diag(A tB)) - ta b + tz (C Omega + D)^-1 C z))
//! ```
//!
//! [`transform_residual`] checks this with the unknowns eliminated: the
//! eighth power of the ratio must be one.  The module also carries the
//! quadruple product relation of Riemann ([`riemann_relation_residual`]),
//! the engine behind every hyperplane identity downstream.

use num_complex::Complex64;

use crate::chars::Char2;
use crate::theta::{theta2, PeriodMatrix2, TruncationPolicy};
use crate::{Error, Result};

/// Integer 2x2 matrix.
pub type M2 = [[i64; 2]; 2];

/// Named generator of `Sp_4(Z)` in block form `[[A, B], [C, D]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymplecticGenerator {
    pub name: &'static str,
    pub a: M2,
    pub b: M2,
    pub c: M2,
    pub d: M2,
}

const I2: M2 = [[1, 0], [0, 1]];
const Z2: M2 = [[0, 0], [0, 0]];

/// `[[alpha, 0], [0, t(alpha^-1)]]` for `alpha` in `GL_2(Z)`.
const fn diag_gen(name: &'static str, alpha: M2, alpha_inv_t: M2) -> SymplecticGenerator {
    SymplecticGenerator {
        name,
        a: alpha,
        b: Z2,
        c: Z2,
        d: alpha_inv_t,
    }
}

/// `[[I, beta], [0, I]]` for symmetric `beta`.
const fn shear_gen(name: &'static str, beta: M2) -> SymplecticGenerator {
    SymplecticGenerator {
        name,
        a: I2,
        b: beta,
        c: Z2,
        d: I2,
    }
}

/// The nine generators used by the action tables: five coordinate shuffles
/// `g_1..g_5`, three shears `h_1..h_3`, and the inversion `J`.
pub const GENERATORS: [SymplecticGenerator; 9] = [
    diag_gen("g1", [[0, 1], [1, 0]], [[0, 1], [1, 0]]),
    diag_gen("g2", [[1, 0], [1, 1]], [[1, -1], [0, 1]]),
    diag_gen("g3", [[1, 1], [0, 1]], [[1, 0], [-1, 1]]),
    diag_gen("g4", [[1, 1], [1, 0]], [[0, 1], [1, -1]]),
    diag_gen("g5", [[0, 1], [1, 1]], [[-1, 1], [1, 0]]),
    shear_gen("h1", [[1, 0], [0, 0]]),
    shear_gen("h2", [[0, 1], [1, 0]]),
    shear_gen("h3", [[0, 0], [0, 1]]),
    SymplecticGenerator {
        name: "J",
        a: Z2,
        b: [[-1, 0], [0, -1]],
        c: I2,
        d: Z2,
    },
];

/// Generator by name, for command-line use.
pub fn generator_by_name(name: &str) -> Option<SymplecticGenerator> {
    GENERATORS.iter().copied().find(|g| g.name == name)
}

fn mul_i(m: M2, n: M2) -> M2 {
    let mut out = Z2;
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = m[i][0] * n[0][j] + m[i][1] * n[1][j];
        }
    }
    out
}

fn transpose_i(m: M2) -> M2 {
    [[m[0][0], m[1][0]], [m[0][1], m[1][1]]]
}

/// Apply an integer matrix to an integer vector.
fn apply_i(m: M2, v: [i64; 2]) -> [i64; 2] {
    [
        m[0][0] * v[0] + m[0][1] * v[1],
        m[1][0] * v[0] + m[1][1] * v[1],
    ]
}

fn apply_f(m: M2, v: [f64; 2]) -> [f64; 2] {
    [
        m[0][0] as f64 * v[0] + m[0][1] as f64 * v[1],
        m[1][0] as f64 * v[0] + m[1][1] as f64 * v[1],
    ]
}

impl SymplecticGenerator {
    /// Check `t(gamma) J gamma = J`, the defining symplectic condition.
    pub fn is_symplectic(&self) -> bool {
        // Blockwise: tA C = tC A, tB D = tD B, tA D - tC B = I.
        let tac = mul_i(transpose_i(self.a), self.c);
        let tbd = mul_i(transpose_i(self.b), self.d);
        let tad = mul_i(transpose_i(self.a), self.d);
        let tcb = mul_i(transpose_i(self.c), self.b);
        let sym = |m: M2| m[0][1] == m[1][0];
        let diff = [
            [tad[0][0] - tcb[0][0], tad[0][1] - tcb[0][1]],
            [tad[1][0] - tcb[1][0], tad[1][1] - tcb[1][1]],
        ];
        sym(tac) && sym(tbd) && diff == I2
    }

    /// Image of a half-integer characteristic, reduced mod 1.
    pub fn char_action(&self, ch: Char2) -> Char2 {
        let a = [ch.bits[0] as i64, ch.bits[1] as i64];
        let b = [ch.bits[2] as i64, ch.bits[3] as i64];
        // Work in half-units: entries of 2a, 2b.  The affine correction
        // (1/2) diag(C tD) contributes diag entries directly in half-units.
        let ctd = mul_i(self.c, transpose_i(self.d));
        let atb = mul_i(self.a, transpose_i(self.b));
        let da = apply_i(self.d, a);
        let cb = apply_i(self.c, b);
        let ba = apply_i(self.b, a);
        let ab = apply_i(self.a, b);
        let na = [da[0] - cb[0] + ctd[0][0], da[1] - cb[1] + ctd[1][1]];
        let nb = [-ba[0] + ab[0] + atb[0][0], -ba[1] + ab[1] + atb[1][1]];
        Char2::new(
            na[0].rem_euclid(2) as u8,
            na[1].rem_euclid(2) as u8,
            nb[0].rem_euclid(2) as u8,
            nb[1].rem_euclid(2) as u8,
        )
    }

    /// Image of a real characteristic under the affine action, not reduced.
    pub fn char_action_affine(&self, a: [f64; 2], b: [f64; 2]) -> ([f64; 2], [f64; 2]) {
        let ctd = mul_i(self.c, transpose_i(self.d));
        let atb = mul_i(self.a, transpose_i(self.b));
        let da = apply_f(self.d, a);
        let cb = apply_f(self.c, b);
        let ba = apply_f(self.b, a);
        let ab = apply_f(self.a, b);
        (
            [
                da[0] - cb[0] + 0.5 * ctd[0][0] as f64,
                da[1] - cb[1] + 0.5 * ctd[1][1] as f64,
            ],
            [
                -ba[0] + ab[0] + 0.5 * atb[0][0] as f64,
                -ba[1] + ab[1] + 0.5 * atb[1][1] as f64,
            ],
        )
    }

    /// `C Omega + D` as a complex 2x2 matrix.
    fn c_omega_d(&self, om: &PeriodMatrix2) -> [[Complex64; 2]; 2] {
        let o = [[om.o11, om.o12], [om.o12, om.o22]];
        let mut out = [[Complex64::ZERO; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = self.c[i][0] as f64 * o[0][j] + self.c[i][1] as f64 * o[1][j]
                    + Complex64::new(self.d[i][j] as f64, 0.0);
            }
        }
        out
    }

    /// Image period matrix `(A Omega + B)(C Omega + D)^-1`.
    pub fn omega_action(&self, om: &PeriodMatrix2) -> Result<PeriodMatrix2> {
        let o = [[om.o11, om.o12], [om.o12, om.o22]];
        let mut num = [[Complex64::ZERO; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                num[i][j] = self.a[i][0] as f64 * o[0][j] + self.a[i][1] as f64 * o[1][j]
                    + Complex64::new(self.b[i][j] as f64, 0.0);
            }
        }
        let den = inv2(self.c_omega_d(om))?;
        let prod = mul2(num, den);
        // The result is symmetric in exact arithmetic; keep the average of
        // the two off-diagonal entries against roundoff.
        PeriodMatrix2::new(prod[0][0], 0.5 * (prod[0][1] + prod[1][0]), prod[1][1])
    }

    /// Image argument `t(C Omega + D)^-1 z`.
    pub fn z_action(&self, z: [Complex64; 2], om: &PeriodMatrix2) -> Result<[Complex64; 2]> {
        let inv = inv2(self.c_omega_d(om))?;
        // Transpose of the inverse applied to z.
        Ok([
            inv[0][0] * z[0] + inv[1][0] * z[1],
            inv[0][1] * z[0] + inv[1][1] * z[1],
        ])
    }

    /// The automorphy factor `F(a, b, gamma, Omega, z)`.
    fn f_factor(
        &self,
        a: [f64; 2],
        b: [f64; 2],
        z: [Complex64; 2],
        om: &PeriodMatrix2,
    ) -> Result<Complex64> {
        let atb = mul_i(self.a, transpose_i(self.b));
        let da = apply_f(self.d, a);
        let cb = apply_f(self.c, b);
        let ba = apply_f(self.b, a);
        let ab = apply_f(self.a, b);
        let u = [da[0] - cb[0], da[1] - cb[1]];
        let v = [
            -ba[0] + ab[0] + atb[0][0] as f64,
            -ba[1] + ab[1] + atb[1][1] as f64,
        ];
        let inv = inv2(self.c_omega_d(om))?;
        // (C Omega + D)^-1 C, then the quadratic form tz M z.
        let mut m = [[Complex64::ZERO; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] = inv[i][0] * self.c[0][j] as f64 + inv[i][1] * self.c[1][j] as f64;
            }
        }
        let zq = z[0] * (m[0][0] * z[0] + m[0][1] * z[1]) + z[1] * (m[1][0] * z[0] + m[1][1] * z[1]);
        let scalar = u[0] * v[0] + u[1] * v[1] - (a[0] * b[0] + a[1] * b[1]);
        Ok((Complex64::new(0.0, std::f64::consts::PI) * (scalar + zq)).exp())
    }

    /// `det(C Omega + D)`.
    pub fn det_c_omega_d(&self, om: &PeriodMatrix2) -> Complex64 {
        let m = self.c_omega_d(om);
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }
}

fn mul2(m: [[Complex64; 2]; 2], n: [[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
    let mut out = [[Complex64::ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = m[i][0] * n[0][j] + m[i][1] * n[1][j];
        }
    }
    out
}

fn inv2(m: [[Complex64; 2]; 2]) -> Result<[[Complex64; 2]; 2]> {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if det.norm() < 1e-14 {
        return Err(Error::DivisionByNearZero("2x2 inverse"));
    }
    let d = det.finv();
    Ok([
        [m[1][1] * d, -m[0][1] * d],
        [-m[1][0] * d, m[0][0] * d],
    ])
}

/// Residual of the transformation formula, maximized over the sixteen
/// half-integer characteristics: `max |r^8 - 1|` where
/// `r = theta[c#](z#, Omega#) / (det(C Omega + D)^(1/2) F theta[c](z, Omega))`.
/// The eighth power removes both the root-of-unity `kappa(gamma)` and the
/// square-root branch.
pub fn transform_residual(
    gen: &SymplecticGenerator,
    z: [Complex64; 2],
    om: &PeriodMatrix2,
    policy: &TruncationPolicy,
) -> Result<f64> {
    let om_im = gen.omega_action(om)?;
    let z_im = gen.z_action(z, om)?;
    let half_det = gen.det_c_omega_d(om).sqrt();
    let mut worst = 0.0f64;
    for ch in crate::chars::LABELS {
        let (a, b) = (ch.a(), ch.b());
        let base = theta2(a, b, z, om, policy)?;
        if base.norm() < 1e-8 {
            return Err(Error::DivisionByNearZero("transformation base theta"));
        }
        let (a_im, b_im) = gen.char_action_affine(a, b);
        let lhs = theta2(a_im, b_im, z_im, &om_im, policy)?;
        let f = gen.f_factor(a, b, z, om)?;
        let r = lhs / (half_det * f * base);
        worst = worst.max((r.powu(8) - Complex64::ONE).norm());
    }
    Ok(worst)
}

/// Characteristic quadruple for the Riemann relation: four `(a_i, b_i)`
/// pairs of real row vectors.
pub type CharQuad = [([f64; 2], [f64; 2]); 4];

/// Argument quadruple `(x, y, u, v)`.
pub type ArgQuad = [[Complex64; 2]; 4];

/// Sign patterns applied to the last three members in the quadruple product:
/// the four factors carry `(a + b + c + d)/2`, `(a + b - c - d)/2`,
/// `(a - b + c - d)/2`, `(a - b - c + d)/2` in characteristics and arguments.
const HALF_SUM_SIGNS: [[f64; 4]; 4] = [
    [1.0, 1.0, 1.0, 1.0],
    [1.0, 1.0, -1.0, -1.0],
    [1.0, -1.0, 1.0, -1.0],
    [1.0, -1.0, -1.0, 1.0],
];

/// Residual `|LHS - RHS|` of the Riemann quadruple relation
///
/// ```text
/// prod_k theta[s_k.a; s_k.b](s_k.args)
///   = (1/4) sum_{alpha, beta in (1/2)Z^2 / Z^2} exp(-2 pi i tbeta (a1+a2+a3+a4))
///     prod_k theta[a_k + alpha; b_k + beta](arg_k)
/// ```
///
/// where `s_k` are the half-sum combinations above.
pub fn riemann_relation_residual(
    chars: &CharQuad,
    args: &ArgQuad,
    om: &PeriodMatrix2,
    policy: &TruncationPolicy,
) -> Result<f64> {
    let mut lhs = Complex64::ONE;
    for signs in HALF_SUM_SIGNS {
        let mut a = [0.0f64; 2];
        let mut b = [0.0f64; 2];
        let mut arg = [Complex64::ZERO; 2];
        for k in 0..4 {
            for t in 0..2 {
                a[t] += 0.5 * signs[k] * chars[k].0[t];
                b[t] += 0.5 * signs[k] * chars[k].1[t];
                arg[t] += 0.5 * signs[k] * args[k][t];
            }
        }
        lhs *= theta2(a, b, arg, om, policy)?;
    }
    let asum = [
        chars.iter().map(|c| c.0[0]).sum::<f64>(),
        chars.iter().map(|c| c.0[1]).sum::<f64>(),
    ];
    let mut rhs = Complex64::ZERO;
    for alpha in [[0.0, 0.0], [0.0, 0.5], [0.5, 0.0], [0.5, 0.5]] {
        for beta in [[0.0, 0.0], [0.0, 0.5], [0.5, 0.0], [0.5, 0.5]] {
            let phase = (Complex64::new(0.0, -2.0 * std::f64::consts::PI)
                * (beta[0] * asum[0] + beta[1] * asum[1]))
                .exp();
            let mut prod = phase;
            for k in 0..4 {
                let a = [chars[k].0[0] + alpha[0], chars[k].0[1] + alpha[1]];
                let b = [chars[k].1[0] + beta[0], chars[k].1[1] + beta[1]];
                prod *= theta2(a, b, args[k], om, policy)?;
            }
            rhs += prod;
        }
    }
    rhs *= 0.25;
    Ok((lhs - rhs).norm())
}
