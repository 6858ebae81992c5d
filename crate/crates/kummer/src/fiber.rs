//! Degenerate fibers of the family of quadric models over the base `P^3`.
//!
//! The base point `B` determines the surface through its Veronese image,
//! and the surface degenerates exactly where some of the ten squares
//! vanish.  This module classifies base points by their vanishing pattern
//! ([`classify`]), builds explicit models of the three degenerate fibers
//! (the nodal fiber over a generic point of the Segre quadric with its
//! eight nodes and sixteen lines, the pair of quadric cones over the
//! boundary curves, and the eight-plane fiber over the corner points with
//! its cube-shaped incidence graph), and evaluates the mixed Jacobian
//! minors whose closed forms certify that the total space stays smooth
//! along the degenerations.  A genus-one version of the coordinate model
//! ([`genus1_model_check`]) exercises the same circle of identities one
//! dimension down.

use std::sync::OnceLock;

use num_complex::Complex64;

use crate::field::Scalar;
use crate::surface::{
    build_equations, det3, equation_grad_b, equation_grad_x, veronese, DiagonalQuadric,
};
use crate::theta::{theta1, TruncationPolicy};
use crate::{Error, Result};

/// Fiber type of a base point, by how far the surface degenerates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stratum {
    /// No square vanishes: the smooth model of an irreducible surface.
    SmoothJacobian,
    /// One square vanishes (the base point lies on the Segre quadric): the
    /// fiber picks up eight nodes joined by sixteen lines.
    ProductAbelian,
    /// Four squares vanish: the fiber breaks into two quadric cones glued
    /// along a common base curve.
    ConePair,
    /// Six squares vanish: the fiber is eight planes meeting like the
    /// faces, edges and vertices of a cube.
    EightPlanes,
}

/// A classified base point: its stratum and the vanishing pattern
/// (indices into the ten squares) that put it there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumClass {
    pub stratum: Stratum,
    pub vanishing: Vec<usize>,
}

const PRODUCT_SEED: u16 = 1 << 9;
const CONE_SEED: u16 = (1 << 5) | (1 << 6) | (1 << 8) | (1 << 9);
const CORNER_SEED: u16 = 0b11_1111_0000;

/// Orbit of a vanishing pattern (as a ten-bit mask) under the group
/// generated by the nine modular substitutions, acting through their
/// permutations of the squares.  Repeated application closes the orbit
/// because every generator has finite order.
fn pattern_orbit(seed: u16) -> Vec<u16> {
    let actions = &crate::action::ACTIONS;
    let mut seen = vec![seed];
    let mut queue = vec![seed];
    while let Some(mask) = queue.pop() {
        for action in actions {
            let mut image = 0u16;
            for i in 0..10 {
                if mask & (1 << i) != 0 {
                    image |= 1 << action.on_a.perm[i];
                }
            }
            if !seen.contains(&image) {
                seen.push(image);
                queue.push(image);
            }
        }
    }
    seen.sort_unstable();
    seen
}

fn orbits() -> &'static [(Stratum, Vec<u16>); 3] {
    static ORBITS: OnceLock<[(Stratum, Vec<u16>); 3]> = OnceLock::new();
    ORBITS.get_or_init(|| {
        [
            (Stratum::ProductAbelian, pattern_orbit(PRODUCT_SEED)),
            (Stratum::ConePair, pattern_orbit(CONE_SEED)),
            (Stratum::EightPlanes, pattern_orbit(CORNER_SEED)),
        ]
    })
}

/// How many distinct vanishing patterns each degenerate stratum admits.
pub fn stratum_pattern_counts() -> [(Stratum, usize); 3] {
    let orbits = orbits();
    [
        (orbits[0].0, orbits[0].1.len()),
        (orbits[1].0, orbits[1].1.len()),
        (orbits[2].0, orbits[2].1.len()),
    ]
}

/// The stratum whose orbit contains the given vanishing pattern, if any.
/// The empty pattern is the generic stratum; patterns outside the three
/// orbits are not fibers of this family.
pub fn stratum_of_pattern(vanishing: &[usize]) -> Option<Stratum> {
    let mut mask = 0u16;
    for &i in vanishing {
        if i >= 10 {
            return None;
        }
        mask |= 1 << i;
    }
    if mask == 0 {
        return Some(Stratum::SmoothJacobian);
    }
    orbits()
        .iter()
        .find(|(_, orbit)| orbit.binary_search(&mask).is_ok())
        .map(|(stratum, _)| *stratum)
}

/// Classify the fiber over `b` by which of the ten squares vanish,
/// relative to the largest one.  Exact fields report exact zeros for any
/// `zero_tol` below one.
pub fn classify<T: Scalar>(b: &[T; 4], zero_tol: f64) -> Result<StratumClass> {
    let asq = veronese(b);
    let scale = asq.iter().map(|v| v.pivot_size()).fold(0.0f64, f64::max);
    let vanishing: Vec<usize> = (0..10)
        .filter(|&i| asq[i].pivot_size() <= zero_tol * scale)
        .collect();
    match stratum_of_pattern(&vanishing) {
        Some(stratum) => Ok(StratumClass { stratum, vanishing }),
        None => Err(Error::UnknownPattern(vanishing)),
    }
}

/// The Segre image `[s_0 t_0 : s_0 t_1 : s_1 t_0 : s_1 t_1]` of a pair of
/// binary points, a base point on the quadric `B_0 B_3 = B_1 B_2`.
pub fn segre<T: Scalar>(s: &[T; 2], t: &[T; 2]) -> [T; 4] {
    [s[0] * t[0], s[0] * t[1], s[1] * t[0], s[1] * t[1]]
}

/// The degree-two image `[U_00, U_10, U_01]` of a binary point:
/// `[u_0^2 + u_1^2, 2 u_0 u_1, u_0^2 - u_1^2]`.  The three entries satisfy
/// `U_00^2 = U_10^2 + U_01^2` identically.
pub fn level_two<T: Scalar>(u: &[T; 2]) -> [T; 3] {
    let two = u[0].of_i64(2);
    [
        u[0] * u[0] + u[1] * u[1],
        two * u[0] * u[1],
        u[0] * u[0] - u[1] * u[1],
    ]
}

/// Degree-two data of both halves of a product base point.
#[derive(Clone, Copy, Debug)]
pub struct ProductFiberData<T> {
    pub s00: T,
    pub s10: T,
    pub s01: T,
    pub t00: T,
    pub t10: T,
    pub t01: T,
}

impl<T: Scalar> ProductFiberData<T> {
    pub fn new(s: &[T; 2], t: &[T; 2]) -> Self {
        let [s00, s10, s01] = level_two(s);
        let [t00, t10, t01] = level_two(t);
        ProductFiberData { s00, s10, s01, t00, t10, t01 }
    }

    /// Largest relative residual of the two Pythagorean relations.
    pub fn pythagorean_residual(&self) -> f64 {
        let rel = |a: T, b: T, c: T| {
            let scale = (a * a)
                .pivot_size()
                .max((b * b).pivot_size())
                .max((c * c).pivot_size());
            if scale == 0.0 {
                return 0.0;
            }
            (a * a - b * b - c * c).pivot_size() / scale
        };
        rel(self.s00, self.s01, self.s10).max(rel(self.t00, self.t01, self.t10))
    }

    /// Whether `(s, t)` sits on the boundary curve, where one of the six
    /// degree-two coordinates vanishes and the nodal model breaks down.
    pub fn on_boundary(&self) -> bool {
        self.s00.is_zero()
            || self.s10.is_zero()
            || self.s01.is_zero()
            || self.t00.is_zero()
            || self.t10.is_zero()
            || self.t01.is_zero()
    }
}

/// The two binary points whose Segre image matches the fourth-order
/// constants of the split period matrix `diag(tau_1, tau_2)`: each half is
/// `[theta_00 : theta_10]` at the doubled genus-one modulus.
pub fn product_period_to_segre(
    tau1: Complex64,
    tau2: Complex64,
    policy: &TruncationPolicy,
) -> Result<([Complex64; 2], [Complex64; 2])> {
    let half = |tau: Complex64| -> Result<[Complex64; 2]> {
        let doubled = tau * 2.0;
        Ok([
            theta1(0.0, 0.0, Complex64::ZERO, doubled, policy)?,
            theta1(0.5, 0.0, Complex64::ZERO, doubled, policy)?,
        ])
    };
    Ok((half(tau1)?, half(tau2)?))
}

/// Residual of `x` on `q` relative to the product of the largest
/// coefficient and the squared largest coordinate.  Unlike the termwise
/// [`DiagonalQuadric::relative_residual`], this stays meaningful at points
/// supported entirely on coefficients that are structural zeros carrying
/// rounding noise, as happens for instantiated equations at degenerate
/// base points.
pub fn fiber_residual<T: Scalar>(q: &DiagonalQuadric<T>, x: &[T; 6]) -> f64 {
    let cs = q.coeffs.iter().map(|c| c.pivot_size()).fold(0.0f64, f64::max);
    let xs = x.iter().map(|v| v.pivot_size()).fold(0.0f64, f64::max);
    let scale = cs * xs * xs;
    if scale == 0.0 {
        return 0.0;
    }
    q.eval(x).pivot_size() / scale
}

/// Worst [`fiber_residual`] of the quadrics over the line spanned by two
/// points: a diagonal quadric vanishes on the line exactly when it
/// vanishes at both points and at their sum.
pub fn line_residual<T: Scalar>(basis: &[[T; 6]; 2], eqs: &[DiagonalQuadric<T>]) -> f64 {
    let mut sum = basis[0];
    for k in 0..6 {
        sum[k] = sum[k] + basis[1][k];
    }
    let mut worst = 0.0f64;
    for q in eqs {
        worst = worst.max(fiber_residual(q, &basis[0]));
        worst = worst.max(fiber_residual(q, &basis[1]));
        worst = worst.max(fiber_residual(q, &sum));
    }
    worst
}

/// Worst [`fiber_residual`] of the quadrics over the plane spanned by
/// three points, checked at the basis and its pairwise sums (which for a
/// diagonal quadric settles the whole span).
pub fn plane_residual<T: Scalar>(basis: &[[T; 6]; 3], eqs: &[DiagonalQuadric<T>]) -> f64 {
    let mut points: Vec<[T; 6]> = basis.to_vec();
    for i in 0..3 {
        for j in (i + 1)..3 {
            let mut s = basis[i];
            for k in 0..6 {
                s[k] = s[k] + basis[j][k];
            }
            points.push(s);
        }
    }
    let mut worst = 0.0f64;
    for q in eqs {
        for x in &points {
            worst = worst.max(fiber_residual(q, x));
        }
    }
    worst
}

/// The nodal fiber over a product base point away from the boundary
/// curve: three independent diagonal quadrics cut it out, it carries eight
/// nodes in two groups of four, and the sixteen lines joining the groups
/// lie on it.
#[derive(Clone, Debug)]
pub struct ProductFiber<T> {
    pub data: ProductFiberData<T>,
    /// The Segre image of `(s, t)`.
    pub base: [T; 4],
    /// All fifteen equations specialized at the base point.
    pub quadrics: [DiagonalQuadric<T>; 15],
    /// Canonical defining triple: the specializations of the first, fourth
    /// and seventh equation with their common factors removed.
    pub equations: [DiagonalQuadric<T>; 3],
    /// Nodes 0..4 supported on `X_1, X_2, X_3`, nodes 4..8 on
    /// `X_4, X_5, X_6`, each group in sign order `++, +-, -+, --`.
    pub nodes: [[T; 6]; 8],
    /// `lines[4 i + j]` joins node `i` of the first group to node `j` of
    /// the second; the disjoint supports make every cross term of a
    /// diagonal quadric vanish, so these segments lie on the fiber.
    pub lines: [[[T; 6]; 2]; 16],
}

/// Build the nodal fiber model over the Segre image of `(s, t)`.
///
/// Fails with [`Error::OnBoundary`] on the boundary curve and with
/// [`Error::RootUnavailable`] when the field lacks the square roots the
/// node coordinates need (possible over a finite field, never over the
/// complex numbers).
pub fn product_fiber<T: Scalar>(s: &[T; 2], t: &[T; 2]) -> Result<ProductFiber<T>> {
    let data = ProductFiberData::new(s, t);
    if data.on_boundary() {
        return Err(Error::OnBoundary("product base point lies on the boundary curve"));
    }
    let zero = s[0].zero_like();
    let one = s[0].one_like();
    let root = |num: T, den: T, what: &'static str| -> Result<T> {
        let ratio = num * den.inv().ok_or(Error::DivisionByNearZero("node denominator"))?;
        ratio.sqrt().ok_or(Error::RootUnavailable(what))
    };
    let x1 = root(data.s00, data.s10, "first node coordinate")?;
    let x2 = root(data.s01, data.s10, "second node coordinate")?;
    let y1 = root(data.t00, data.t10, "fourth node coordinate")?;
    let y2 = root(data.t01, data.t10, "fifth node coordinate")?;

    let signs = [(one, one), (one, -one), (-one, one), (-one, -one)];
    let mut nodes = [[zero; 6]; 8];
    for (k, &(e1, e2)) in signs.iter().enumerate() {
        nodes[k] = [e1 * x1, e2 * x2, one, zero, zero, zero];
        nodes[4 + k] = [zero, zero, zero, e1 * y1, e2 * y2, one];
    }
    let mut lines = [[[zero; 6]; 2]; 16];
    for i in 0..4 {
        for j in 0..4 {
            lines[4 * i + j] = [nodes[i], nodes[4 + j]];
        }
    }

    let base = segre(s, t);
    let quadrics = build_equations(&veronese(&base));
    let equations = [
        DiagonalQuadric {
            coeffs: [zero, zero, zero, data.t00, -data.t01, -data.t10],
        },
        DiagonalQuadric {
            coeffs: [data.s00, -data.s01, -data.s10, zero, zero, zero],
        },
        DiagonalQuadric {
            coeffs: [
                data.t10 * data.s01,
                -(data.t10 * data.s00),
                zero,
                -(data.s10 * data.t01),
                data.s10 * data.t00,
                zero,
            ],
        },
    ];
    Ok(ProductFiber { data, base, quadrics, equations, nodes, lines })
}

/// One of the two cone components over a boundary base point: a
/// hyperplane carrying two diagonal quadrics in the remaining
/// coordinates, singular at the cone vertex.
#[derive(Clone, Debug)]
pub struct ConeSystem<T> {
    pub linear: [T; 6],
    pub quadrics: [DiagonalQuadric<T>; 2],
}

impl<T: Scalar> ConeSystem<T> {
    /// Worst residual of `x` against the linear form and both quadrics.
    pub fn residual(&self, x: &[T; 6]) -> f64 {
        let ls = self
            .linear
            .iter()
            .map(|c| c.pivot_size())
            .fold(0.0f64, f64::max);
        let xs = x.iter().map(|v| v.pivot_size()).fold(0.0f64, f64::max);
        let mut dot = x[0].zero_like();
        for k in 0..6 {
            dot = dot + self.linear[k] * x[k];
        }
        let linear = if ls * xs == 0.0 { 0.0 } else { dot.pivot_size() / (ls * xs) };
        self.quadrics
            .iter()
            .map(|q| fiber_residual(q, x))
            .fold(linear, f64::max)
    }
}

/// Which specialized equations collapse to which canonical form over a
/// cone-pair base point `[t_0 : t_1 : 0 : 0]`: the entries are parallel to
/// [`ConePairFiber::forms`], and the last group vanishes identically.
pub const CONE_GROUPS: [&[usize]; 6] = [
    &[3, 4, 5, 6, 7, 8],
    &[0, 1],
    &[9, 12],
    &[10, 13],
    &[11, 14],
    &[2],
];

/// The pair of quadric cones over a boundary base point
/// `[t_0 : t_1 : 0 : 0]`, glued along their common base curve.
#[derive(Clone, Debug)]
pub struct ConePairFiber<T> {
    pub t: [T; 2],
    /// Degree-two data `[T_00, T_10, T_01]` of `t`.
    pub level: [T; 3],
    /// All fifteen equations specialized at the base point.
    pub quadrics: [DiagonalQuadric<T>; 15],
    /// Canonical representatives of the five surviving proportionality
    /// classes, parallel to the first five entries of [`CONE_GROUPS`]:
    /// the hyperplane pair `X_1^2 - X_2^2` and four quadrics in
    /// `X_3..X_6`, of which only two are independent.
    pub forms: [DiagonalQuadric<T>; 5],
    /// Cone with vertex `[1 : 1 : 0 : 0 : 0 : 0]` inside `X_1 = X_2`.
    pub y_plus: ConeSystem<T>,
    /// Cone with vertex `[1 : -1 : 0 : 0 : 0 : 0]` inside `X_1 = -X_2`.
    pub y_minus: ConeSystem<T>,
    /// The two cone vertices, where the fiber is singular.
    pub singular_points: [[T; 6]; 2],
}

impl<T: Scalar> ConePairFiber<T> {
    /// Residuals of the two linear dependences among the canonical forms,
    /// with denominators cleared:
    /// `T_00 F_2 + T_01 F_1 - T_10 F_4` and `T_00 F_3 - T_10 F_1 - T_01 F_4`
    /// (indices into `forms`).  The fourth slot of each combination cancels
    /// through the Pythagorean relation, the rest termwise.
    pub fn relation_residuals(&self) -> [f64; 2] {
        let combo = |c: [T; 3], idx: [usize; 3]| -> f64 {
            let mut scale = 0.0f64;
            let mut worst = 0.0f64;
            for slot in 0..6 {
                let mut sum = self.level[0].zero_like();
                for k in 0..3 {
                    let term = c[k] * self.forms[idx[k]].coeffs[slot];
                    scale = scale.max(term.pivot_size());
                    sum = sum + term;
                }
                worst = worst.max(sum.pivot_size());
            }
            if scale == 0.0 {
                0.0
            } else {
                worst / scale
            }
        };
        let [t00, t10, t01] = self.level;
        [
            combo([t00, t01, -t10], [2, 1, 4]),
            combo([t00, -t10, -t01], [3, 1, 4]),
        ]
    }
}

/// Build the cone-pair fiber model over `[t_0 : t_1 : 0 : 0]`.  Fails with
/// [`Error::OnBoundary`] at the six values of `t` where the degree-two
/// data degenerates and the fiber breaks further.
pub fn cone_pair_fiber<T: Scalar>(t: &[T; 2]) -> Result<ConePairFiber<T>> {
    let [t00, t10, t01] = level_two(t);
    if t00.is_zero() || t10.is_zero() || t01.is_zero() {
        return Err(Error::OnBoundary("cone-pair base point lies over a degenerate value"));
    }
    let zero = t[0].zero_like();
    let one = t[0].one_like();
    let base = [t[0], t[1], zero, zero];
    let quadrics = build_equations(&veronese(&base));
    let difference = DiagonalQuadric { coeffs: [one, -one, zero, zero, zero, zero] };
    let e1 = DiagonalQuadric { coeffs: [zero, zero, zero, t00, -t01, -t10] };
    let e10 = DiagonalQuadric { coeffs: [zero, zero, t10, -t01, t00, zero] };
    let e11 = DiagonalQuadric { coeffs: [zero, zero, t01, t10, zero, -t00] };
    let e12 = DiagonalQuadric { coeffs: [zero, zero, t00, zero, t10, -t01] };
    let cone = |sign: T| ConeSystem {
        linear: [one, -sign, zero, zero, zero, zero],
        quadrics: [e1, e12],
    };
    Ok(ConePairFiber {
        t: [t[0], t[1]],
        level: [t00, t10, t01],
        quadrics,
        forms: [difference, e1, e10, e11, e12],
        y_plus: cone(one),
        y_minus: cone(-one),
        singular_points: [
            [one, one, zero, zero, zero, zero],
            [one, -one, zero, zero, zero, zero],
        ],
    })
}

/// A point of the cone-pair fiber with `X_5 = 1`, free last coordinate and
/// `X_1 = X_2 = c`, solving the two defining quadrics for `X_3^2` and
/// `X_4^2`.  With `c = 0` the point lies on the common base curve of the
/// two cones.
pub fn cone_point<T: Scalar>(t: &[T; 2], x6: T, c: T) -> Result<[T; 6]> {
    let [t00, t10, t01] = level_two(t);
    let inv = t00.inv().ok_or(Error::DivisionByNearZero("cone point"))?;
    let x4 = ((t01 + t10 * x6 * x6) * inv)
        .sqrt()
        .ok_or(Error::RootUnavailable("fourth cone coordinate"))?;
    let x3 = ((t01 * x6 * x6 - t10) * inv)
        .sqrt()
        .ok_or(Error::RootUnavailable("third cone coordinate"))?;
    Ok([c, c, x3, x4, t[0].one_like(), x6])
}

/// One of the eight planes of the corner fiber, labelled by the signs
/// `(e, h, m)` of its defining relations `X_1 = e X_2`, `X_3 = h X_6`,
/// `X_4 = m X_5`.
#[derive(Clone, Debug)]
pub struct CornerPlane<T> {
    pub signs: [i8; 3],
    pub basis: [[T; 6]; 3],
}

/// A face of the incidence cube: the four planes sharing one sign, which
/// meet in a single point of multiplicity four.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CornerFace {
    /// Which of the three sign slots is fixed.
    pub coordinate: usize,
    pub sign: i8,
    /// Indices of the four planes on this face.
    pub members: [usize; 4],
}

/// Which specialized equations collapse to which quadric over the corner
/// base point `[1 : 0 : 0 : 0]`, parallel to [`CornerFiber::forms`]; the
/// last group vanishes identically.
pub const CORNER_GROUPS: [&[usize]; 4] = [
    &[3, 4, 7, 8],
    &[10, 11, 13, 14],
    &[0, 1, 9, 12],
    &[2, 5, 6],
];

/// The fiber over the corner base point `[1 : 0 : 0 : 0]`: eight planes
/// whose incidence graph is the cube, with the twelve edges realized as
/// double lines and the six faces as points of multiplicity four.
#[derive(Clone, Debug)]
pub struct CornerFiber<T> {
    /// All fifteen equations specialized at the corner.
    pub quadrics: [DiagonalQuadric<T>; 15],
    /// Canonical representatives `X_1^2 - X_2^2`, `X_3^2 - X_6^2`,
    /// `X_4^2 - X_5^2` of the three surviving classes.
    pub forms: [DiagonalQuadric<T>; 3],
    /// Plane `k` carries the signs of the three bits of `k`, most
    /// significant first, with `0` as `+`.
    pub planes: [CornerPlane<T>; 8],
    /// Pairs of planes whose sign vectors differ in exactly one slot.
    pub edges: [(usize, usize); 12],
    pub faces: [CornerFace; 6],
}

/// Build the corner fiber model over a prototype scalar of the target
/// field (only used to manufacture constants).
pub fn corner_fiber<T: Scalar>(unit: T) -> CornerFiber<T> {
    let zero = unit.zero_like();
    let one = unit.one_like();
    let quadrics = build_equations(&veronese(&[one, zero, zero, zero]));
    let diff = |a: usize, b: usize| {
        let mut coeffs = [zero; 6];
        coeffs[a] = one;
        coeffs[b] = -one;
        DiagonalQuadric { coeffs }
    };
    let forms = [diff(0, 1), diff(2, 5), diff(3, 4)];
    let planes: [CornerPlane<T>; 8] = std::array::from_fn(|k| {
        let signs = [
            if k & 4 == 0 { 1i8 } else { -1 },
            if k & 2 == 0 { 1 } else { -1 },
            if k & 1 == 0 { 1 } else { -1 },
        ];
        let s = |i: usize| one.of_i64(signs[i] as i64);
        CornerPlane {
            signs,
            basis: [
                [one, s(0), zero, zero, zero, zero],
                [zero, zero, one, zero, zero, s(1)],
                [zero, zero, zero, one, s(2), zero],
            ],
        }
    });
    let mut edges = Vec::with_capacity(12);
    for i in 0..8 {
        for j in (i + 1)..8 {
            if (i ^ j as usize).count_ones() == 1 {
                edges.push((i, j));
            }
        }
    }
    let faces: [CornerFace; 6] = std::array::from_fn(|f| {
        let coordinate = f / 2;
        let sign = if f % 2 == 0 { 1i8 } else { -1 };
        let mut members = [0usize; 4];
        let mut n = 0;
        for (i, plane) in planes.iter().enumerate() {
            if plane.signs[coordinate] == sign {
                members[n] = i;
                n += 1;
            }
        }
        CornerFace { coordinate, sign, members }
    });
    CornerFiber {
        quadrics,
        forms,
        planes,
        edges: edges.try_into().expect("the three-cube has twelve edges"),
        faces,
    }
}

/// The double line shared by two cube-adjacent planes: drop the basis row
/// of the sign in which they differ.  `None` when the planes are not
/// adjacent.
pub fn edge_line<T: Scalar>(p: &CornerPlane<T>, q: &CornerPlane<T>) -> Option<[[T; 6]; 2]> {
    let differing: Vec<usize> = (0..3).filter(|&k| p.signs[k] != q.signs[k]).collect();
    let [drop] = differing[..] else {
        return None;
    };
    let keep: Vec<usize> = (0..3).filter(|&k| k != drop).collect();
    Some([p.basis[keep[0]], p.basis[keep[1]]])
}

/// Equation rows used by all the smoothness minors: the first, fourth and
/// eleventh quadric, which cut the fiber out near the degenerations.
pub const MINOR_ROWS: [usize; 3] = [0, 3, 10];

/// A three-by-three Jacobian minor of the chosen equations at `(B, X)`,
/// in the mixed columns `(B_{c_0}, B_{c_1}, X_c)`.
pub fn jacobian_minor<T: Scalar>(
    rows: [usize; 3],
    b_cols: [usize; 2],
    x_col: usize,
    b: &[T; 4],
    x: &[T; 6],
) -> T {
    let asq = veronese(b);
    let zero = b[0].zero_like();
    let mut m = [[zero; 3]; 3];
    for (r, &k) in rows.iter().enumerate() {
        let gb = equation_grad_b(k, b, x);
        let gx = equation_grad_x(k, &asq, x);
        m[r] = [gb[b_cols[0]], gb[b_cols[1]], gx[x_col]];
    }
    det3(&m)
}

/// A computed Jacobian minor next to its closed form.
#[derive(Clone, Copy, Debug)]
pub struct MinorCheck<T> {
    pub name: &'static str,
    pub computed: T,
    pub closed_form: T,
}

impl<T: Scalar> MinorCheck<T> {
    /// Scale-free deviation between the computed minor and its closed form.
    pub fn residual(&self) -> f64 {
        let scale = self.computed.pivot_size().max(self.closed_form.pivot_size());
        if scale == 0.0 {
            return 0.0;
        }
        (self.computed - self.closed_form).pivot_size() / scale
    }
}

/// The transversality minor along the cone-pair stratum away from
/// `X_1 = 0`: columns `(B_2, B_3, X_1)` of the three minor rows, with
/// closed form `8 T_00 T_01 X_1^5` at any point with `X_1 = X_2`.
pub fn cone_stratum_minor<T: Scalar>(t: &[T; 2], x: &[T; 6]) -> MinorCheck<T> {
    let [t00, _, t01] = level_two(t);
    let zero = t[0].zero_like();
    let b = [t[0], t[1], zero, zero];
    let x1 = x[0];
    MinorCheck {
        name: "d(E1,E4,E11)/d(B2,B3,X1)",
        computed: jacobian_minor(MINOR_ROWS, [2, 3], 0, &b, x),
        closed_form: t[0].of_i64(8) * t00 * t01 * x1 * x1 * x1 * x1 * x1,
    }
}

/// The two minors that take over on the locus `X_1 = X_2 = 0` of a
/// cone-pair fiber, where [`cone_stratum_minor`] vanishes.  The closed
/// forms hold for points on the fiber (they use the on-fiber relations to
/// eliminate `X_5`), and the fiber keeps them from vanishing together.
pub fn cone_base_minors<T: Scalar>(t: &[T; 2], x: &[T; 6]) -> [MinorCheck<T>; 2] {
    let [_, _, t01] = level_two(t);
    let zero = t[0].zero_like();
    let b = [t[0], t[1], zero, zero];
    let eight = t[0].of_i64(8);
    let (x3, x4, x6) = (x[2], x[3], x[5]);
    [
        MinorCheck {
            name: "d(E1,E4,E11)/d(B0,B2,X4)",
            computed: jacobian_minor(MINOR_ROWS, [0, 2], 3, &b, x),
            closed_form: eight * t[1] * t01 * x4 * x4 * x4 * (t[0] * x3 * x3 + t[1] * x4 * x4),
        },
        MinorCheck {
            name: "d(E1,E4,E11)/d(B1,B3,X6)",
            computed: jacobian_minor(MINOR_ROWS, [1, 3], 5, &b, x),
            closed_form: -(eight * t[0] * t01 * x6 * x6 * x6 * (t[0] * x4 * x4 - t[1] * x3 * x3)),
        },
    ]
}

/// The three minors at the corner fiber, evaluated at `B = [1:0:0:0]` and
/// a point of one of the eight planes (the second closed form uses the
/// plane relation `X_6^2 = X_3^2`).
pub fn corner_minors<T: Scalar>(x: &[T; 6]) -> [MinorCheck<T>; 3] {
    let zero = x[0].zero_like();
    let one = x[0].one_like();
    let b = [one, zero, zero, zero];
    let eight = x[0].of_i64(8);
    let pow5 = |v: T| v * v * v * v * v;
    [
        MinorCheck {
            name: "d(E1,E4,E11)/d(B2,B3,X1)",
            computed: jacobian_minor(MINOR_ROWS, [2, 3], 0, &b, x),
            closed_form: eight * pow5(x[0]),
        },
        MinorCheck {
            name: "d(E1,E4,E11)/d(B1,B2,X3)",
            computed: jacobian_minor(MINOR_ROWS, [1, 2], 2, &b, x),
            closed_form: -(eight * pow5(x[2])),
        },
        MinorCheck {
            name: "d(E1,E4,E11)/d(B1,B3,X4)",
            computed: jacobian_minor(MINOR_ROWS, [1, 3], 3, &b, x),
            closed_form: eight * pow5(x[3]),
        },
    ]
}

/// Genus-one counterpart of the coordinate model: residuals of the four
/// quadric relations between the squared constants `a_i^2` at `(0, tau)`
/// and the squared coordinates `theta_ij(2z, tau)^2` of the degree-two
/// map, each relative to its largest term.  The first two cut out the
/// image curve; the last two express the constants back from the
/// coordinates.
pub fn genus1_model_check(
    z: Complex64,
    tau: Complex64,
    policy: &TruncationPolicy,
) -> Result<[f64; 4]> {
    let z0 = Complex64::ZERO;
    let a0 = theta1(0.0, 0.0, z0, tau, policy)?;
    let a1 = theta1(0.0, 0.5, z0, tau, policy)?;
    let a2 = theta1(0.5, 0.0, z0, tau, policy)?;
    let zz = z * 2.0;
    let x00 = theta1(0.0, 0.0, zz, tau, policy)?;
    let x01 = theta1(0.0, 0.5, zz, tau, policy)?;
    let x10 = theta1(0.5, 0.0, zz, tau, policy)?;
    let x11 = theta1(0.5, 0.5, zz, tau, policy)?;
    let (a0, a1, a2) = (a0 * a0, a1 * a1, a2 * a2);
    let (y00, y01, y10, y11) = (x00 * x00, x01 * x01, x10 * x10, x11 * x11);
    let rel = |terms: [Complex64; 3]| -> f64 {
        let scale = terms.iter().map(|v| v.norm()).fold(0.0f64, f64::max);
        let sum: Complex64 = terms.iter().sum();
        if scale == 0.0 {
            0.0
        } else {
            sum.norm() / scale
        }
    };
    Ok([
        rel([a0 * y00, -(a1 * y01), -(a2 * y10)]),
        rel([a0 * y11, -(a2 * y01), a1 * y10]),
        rel([a1 * y00, a2 * y11, -(a0 * y01)]),
        rel([a2 * y00, -(a1 * y11), -(a0 * y10)]),
    ])
}

/// Relative residual of the degree-four relation
/// `theta_00^4 = theta_01^4 + theta_10^4` among the genus-one constants.
pub fn jacobi_quartic_residual(tau: Complex64, policy: &TruncationPolicy) -> Result<f64> {
    let z0 = Complex64::ZERO;
    let a0 = theta1(0.0, 0.0, z0, tau, policy)?;
    let a1 = theta1(0.0, 0.5, z0, tau, policy)?;
    let a2 = theta1(0.5, 0.0, z0, tau, policy)?;
    let (q0, q1, q2) = (a0.powu(4), a1.powu(4), a2.powu(4));
    let scale = q0.norm().max(q1.norm()).max(q2.norm());
    Ok((q0 - q1 - q2).norm() / scale)
}

#[cfg(test)]
mod tests {
    use num_complex::Complex64;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::field::Fp;
    use crate::linalg::{projective_distance, proportionality};
    use crate::rosenhain::line_on_surface;
    use crate::sample;
    use crate::theta::{level24_constants, PeriodMatrix2};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cone_groups_match<T: Scalar>(fiber: &ConePairFiber<T>, zero_tol: f64) {
        for (group, form) in CONE_GROUPS.iter().zip(fiber.forms.iter()) {
            for &k in *group {
                let s = proportionality(&fiber.quadrics[k].coeffs, &form.coeffs, zero_tol)
                    .unwrap_or_else(|| panic!("equation {k} not proportional to its class"));
                assert!(s.pivot_size() > 1e-6, "equation {k} degenerates");
            }
        }
        for &k in CONE_GROUPS[5] {
            assert!(
                fiber.quadrics[k].coeffs.iter().all(|v| v.is_zero()),
                "equation {k} should vanish identically"
            );
        }
    }

    #[test]
    fn pattern_orbits_have_the_expected_sizes() {
        let product = pattern_orbit(PRODUCT_SEED);
        assert_eq!(product.len(), 10);
        assert!(product.iter().all(|m| m.count_ones() == 1));

        let cone = pattern_orbit(CONE_SEED);
        assert_eq!(cone.len(), 15);
        assert!(cone.iter().all(|m| m.count_ones() == 4));

        let corner = pattern_orbit(CORNER_SEED);
        assert_eq!(corner.len(), 15);
        assert!(corner.iter().all(|m| m.count_ones() == 6));

        // The two orbits of four-element sets are unrelated: complements of
        // the corner patterns never classify as cone patterns.
        assert!(corner
            .iter()
            .all(|m| cone.binary_search(&(!m & 0x3ff)).is_err()));

        let counts = stratum_pattern_counts();
        assert_eq!(counts[0], (Stratum::ProductAbelian, 10));
        assert_eq!(counts[1], (Stratum::ConePair, 15));
        assert_eq!(counts[2], (Stratum::EightPlanes, 15));
    }

    /// Each cone pattern marks a pair of disjoint boundary lines and each
    /// corner pattern four boundary points, so the fifteen-element orbits
    /// account for thirty lines and sixty points.  The seed patterns have
    /// loci defined over any odd prime field, where the counts are exact.
    #[test]
    fn seed_pattern_loci_decompose_as_expected() {
        let p = 19u64;
        let mut cone_locus = 0usize;
        let mut corner_locus = 0usize;
        // Leading-one representatives enumerate P^3(F_19) once each.
        for lead in (0..4usize).rev() {
            let mut digits = [0u64; 4];
            loop {
                let mut b = [Fp::new(0, p); 4];
                b[lead] = Fp::new(1, p);
                for (k, &d) in digits.iter().enumerate().take(lead) {
                    b[k] = Fp::new(d, p);
                }
                let asq = veronese(&b);
                if [5usize, 6, 8, 9].iter().all(|&i| asq[i].is_zero()) {
                    cone_locus += 1;
                    let on_first = b[0].is_zero() && b[1].is_zero();
                    let on_second = b[2].is_zero() && b[3].is_zero();
                    assert!(on_first || on_second, "cone locus must be the two lines");
                }
                if (4usize..10).all(|i| asq[i].is_zero()) {
                    corner_locus += 1;
                    assert_eq!(
                        b.iter().filter(|v| !v.is_zero()).count(),
                        1,
                        "corner locus must be the coordinate points"
                    );
                }
                let mut k = 0;
                loop {
                    if k == lead {
                        break;
                    }
                    digits[k] += 1;
                    if digits[k] < p {
                        break;
                    }
                    digits[k] = 0;
                    k += 1;
                }
                if k == lead {
                    break;
                }
            }
        }
        assert_eq!(cone_locus, 2 * (p as usize + 1));
        assert_eq!(corner_locus, 4);
    }

    #[test]
    fn classification_spots_each_stratum() {
        let p = 19;
        let smooth = [1u64, 3, 3, 3].map(|v| Fp::new(v, p));
        let class = classify(&smooth, 0.5).unwrap();
        assert_eq!(class.stratum, Stratum::SmoothJacobian);
        assert!(class.vanishing.is_empty());

        let product = [1u64, 2, 2, 4].map(|v| Fp::new(v, p));
        let class = classify(&product, 0.5).unwrap();
        assert_eq!(class.stratum, Stratum::ProductAbelian);
        assert_eq!(class.vanishing, vec![9]);

        let s = [c(1.0, 0.0), c(0.31, 0.47)];
        let t = [c(1.0, 0.0), c(-0.53, 0.29)];
        let class = classify(&segre(&s, &t), 1e-9).unwrap();
        assert_eq!(class.stratum, Stratum::ProductAbelian);
        assert_eq!(class.vanishing, vec![9]);

        let cone = [t[0], t[1], c(0.0, 0.0), c(0.0, 0.0)];
        let class = classify(&cone, 1e-9).unwrap();
        assert_eq!(class.stratum, Stratum::ConePair);
        assert_eq!(class.vanishing, vec![5, 6, 8, 9]);

        let corner = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        let class = classify(&corner, 1e-9).unwrap();
        assert_eq!(class.stratum, Stratum::EightPlanes);
        assert_eq!(class.vanishing, vec![4, 5, 6, 7, 8, 9]);

        assert_eq!(stratum_of_pattern(&[]), Some(Stratum::SmoothJacobian));
        assert_eq!(stratum_of_pattern(&[0, 1]), None);
        assert_eq!(stratum_of_pattern(&[10]), None);

        let zero = [Fp::new(0, p); 4];
        match classify(&zero, 0.5) {
            Err(Error::UnknownPattern(v)) => assert_eq!(v.len(), 10),
            other => panic!("expected an unknown pattern, got {other:?}"),
        }
    }

    #[test]
    fn boundary_families_classify_as_cone_pairs() {
        let one = c(1.0, 0.0);
        let zero = c(0.0, 0.0);
        let i = c(0.0, 1.0);
        let boundary = [
            [one, zero],
            [zero, one],
            [one, one],
            [one, -one],
            [one, i],
            [one, -i],
        ];
        let s = [one, c(0.31, 0.47)];
        let t = [one, c(-0.53, 0.29)];
        for v in &boundary {
            let class = classify(&segre(v, &t), 1e-9).unwrap();
            assert_eq!(class.stratum, Stratum::ConePair, "s = {v:?}");
            let class = classify(&segre(&s, v), 1e-9).unwrap();
            assert_eq!(class.stratum, Stratum::ConePair, "t = {v:?}");
        }
    }

    #[test]
    fn classification_over_f3_is_total_and_scale_invariant() {
        let p = 3;
        let two = Fp::new(2, p);
        for code in 1..81u64 {
            let b = [
                Fp::new(code % 3, p),
                Fp::new(code / 3 % 3, p),
                Fp::new(code / 9 % 3, p),
                Fp::new(code / 27 % 3, p),
            ];
            let scaled = b.map(|v| v * two);
            match (classify(&b, 0.5), classify(&scaled, 0.5)) {
                (Ok(x), Ok(y)) => assert_eq!(x, y),
                (Err(Error::UnknownPattern(u)), Err(Error::UnknownPattern(v))) => {
                    assert_eq!(u, v)
                }
                other => panic!("scaling changed the classification: {other:?}"),
            }
        }
    }

    #[test]
    fn segre_and_level_two_basics() {
        let p = 19;
        let one = Fp::new(1, p);
        let zero = Fp::new(0, p);
        assert_eq!(segre(&[one, zero], &[one, zero]), [one, zero, zero, zero]);

        let two = Fp::new(2, p);
        assert_eq!(segre(&[two, one], &[one, one]), [two, two, one, one]);

        assert_eq!(
            level_two(&[two, one]),
            [Fp::new(5, p), Fp::new(4, p), Fp::new(3, p)]
        );

        let data = ProductFiberData::new(&[two, one], &[one, Fp::new(7, p)]);
        assert_eq!(data.pythagorean_residual(), 0.0);
        assert!(!data.on_boundary());

        let data = ProductFiberData::new(&[c(2.0, 0.0), c(1.0, 0.0)], &[c(2.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(data.pythagorean_residual(), 0.0);
        assert_eq!(data.s00, c(5.0, 0.0));
        assert_eq!(data.s10, c(4.0, 0.0));
        assert_eq!(data.s01, c(3.0, 0.0));

        let data = ProductFiberData::new(&[c(0.4, 0.7), c(-0.9, 0.2)], &[c(1.0, 0.0), c(0.3, 0.8)]);
        assert!(data.pythagorean_residual() < 1e-12);
    }

    #[test]
    fn product_periods_land_on_the_segre_image() {
        let policy = TruncationPolicy::default();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..3 {
            let tau1 = sample::random_tau(&mut rng);
            let tau2 = sample::random_tau(&mut rng);
            let (s, t) = product_period_to_segre(tau1, tau2, &policy).unwrap();
            let omega = PeriodMatrix2::new(tau1, Complex64::ZERO, tau2).unwrap();
            let level = level24_constants(&omega, &policy).unwrap();
            let image = segre(&s, &t);
            assert!(
                projective_distance(&image, &level) < 1e-7,
                "split constants do not factor at tau1 = {tau1}, tau2 = {tau2}"
            );
        }

        let tau = c(0.0, 1.0);
        let (s, t) = product_period_to_segre(tau, tau, &policy).unwrap();
        assert!(projective_distance(&s, &t) < 1e-12);

        let (s, _) = product_period_to_segre(c(0.3, 6.0), tau, &policy).unwrap();
        assert!(s[1].norm() < 1e-2 * s[0].norm(), "tall modulus should pinch to [1 : 0]");
    }

    #[test]
    fn product_fiber_carries_its_nodes_and_lines() {
        let s = [c(1.0, 0.0), c(0.31, 0.47)];
        let t = [c(1.0, 0.0), c(-0.53, 0.29)];
        let fiber = product_fiber(&s, &t).unwrap();

        for (k, &idx) in [0usize, 3, 6].iter().enumerate() {
            let scalar = proportionality(
                &fiber.quadrics[idx].coeffs,
                &fiber.equations[k].coeffs,
                1e-9,
            )
            .unwrap_or_else(|| panic!("specialized equation {idx} is not the canonical form"));
            assert!(scalar.pivot_size() > 1e-8);
        }

        for node in &fiber.nodes {
            for q in &fiber.quadrics {
                assert!(fiber_residual(q, node) < 1e-12);
            }
        }
        for line in &fiber.lines {
            assert!(line_residual(line, &fiber.quadrics) < 1e-12);
        }
    }

    #[test]
    fn product_fiber_matches_the_rational_example() {
        let s = [c(2.0, 0.0), c(1.0, 0.0)];
        let fiber = product_fiber(&s, &s).unwrap();
        let node = fiber.nodes[0];
        assert!((node[0] * node[0] - c(1.25, 0.0)).norm() < 1e-14);
        assert!((node[1] * node[1] - c(0.75, 0.0)).norm() < 1e-14);
        let e4 = &fiber.equations[1];
        assert!(e4.eval(&node).norm() < 1e-12);
        for q in &fiber.quadrics {
            assert!(fiber_residual(q, &node) < 1e-12);
        }

        assert!(matches!(
            product_fiber(&[c(1.0, 0.0), c(1.0, 0.0)], &s),
            Err(Error::OnBoundary(_))
        ));
    }

    #[test]
    fn product_fiber_is_exact_over_f19_when_the_roots_exist() {
        let p = 19;
        let s = [Fp::new(1, p), Fp::new(2, p)];
        let fiber = product_fiber(&s, &s).unwrap();
        assert_eq!(fiber.nodes[0][0], Fp::new(5, p));
        assert_eq!(fiber.nodes[0][1], Fp::new(2, p));
        for node in &fiber.nodes {
            for q in &fiber.quadrics {
                assert!(q.eval(node).is_zero());
            }
        }
        for line in &fiber.lines {
            assert_eq!(line_on_surface(line, &fiber.quadrics), 0.0);
        }

        let bad = [Fp::new(2, p), Fp::new(1, p)];
        assert!(matches!(
            product_fiber(&bad, &bad),
            Err(Error::RootUnavailable(_))
        ));
    }

    #[test]
    fn cone_pair_components_close_up() {
        let t = [c(1.0, 0.0), c(0.3, 0.7)];
        let fiber = cone_pair_fiber(&t).unwrap();
        cone_groups_match(&fiber, 1e-9);

        let [r1, r2] = fiber.relation_residuals();
        assert!(r1 < 1e-12 && r2 < 1e-12);

        for vertex in &fiber.singular_points {
            for q in &fiber.quadrics {
                assert!(fiber_residual(q, vertex) < 1e-14);
            }
        }
        assert!(fiber.y_plus.residual(&fiber.singular_points[0]) < 1e-14);
        assert!(fiber.y_minus.residual(&fiber.singular_points[1]) < 1e-14);

        let on_plus = cone_point(&t, c(1.2, -0.5), c(0.9, 0.1)).unwrap();
        let on_base = cone_point(&t, c(1.2, -0.5), c(0.0, 0.0)).unwrap();
        for q in &fiber.quadrics {
            assert!(fiber_residual(q, &on_plus) < 1e-12);
            assert!(fiber_residual(q, &on_base) < 1e-12);
        }
        assert!(fiber.y_plus.residual(&on_plus) < 1e-12);
        assert!(fiber.y_plus.residual(&on_base) < 1e-12);
        assert!(fiber.y_minus.residual(&on_base) < 1e-12);

        for bad in [[c(1.0, 0.0), c(0.0, 0.0)], [c(1.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 1.0)]] {
            assert!(matches!(cone_pair_fiber(&bad), Err(Error::OnBoundary(_))));
        }
    }

    #[test]
    fn cone_pair_is_exact_over_f19() {
        let p = 19;
        let t = [Fp::new(2, p), Fp::new(1, p)];
        let fiber = cone_pair_fiber(&t).unwrap();
        assert_eq!(fiber.level, [Fp::new(5, p), Fp::new(4, p), Fp::new(3, p)]);
        cone_groups_match(&fiber, 0.5);
        assert_eq!(fiber.relation_residuals(), [0.0, 0.0]);

        let x = cone_point(&t, Fp::new(3, p), Fp::new(1, p)).unwrap();
        assert_eq!(
            x,
            [1u64, 1, 4, 2, 1, 3].map(|v| Fp::new(v, p)),
            "cone point should solve to the hand-checked coordinates"
        );
        for q in &fiber.quadrics {
            assert!(q.eval(&x).is_zero());
        }
        for vertex in &fiber.singular_points {
            for q in &fiber.quadrics {
                assert!(q.eval(vertex).is_zero());
            }
        }
    }

    #[test]
    fn corner_fiber_is_a_cube_of_planes() {
        let fiber = corner_fiber(c(1.0, 0.0));
        assert_eq!(fiber.planes.len(), 8);
        assert_eq!(fiber.edges.len(), 12);
        assert_eq!(fiber.faces.len(), 6);

        for (group, form) in CORNER_GROUPS.iter().take(3).zip(fiber.forms.iter()) {
            for &k in *group {
                let s = proportionality(&fiber.quadrics[k].coeffs, &form.coeffs, 1e-12)
                    .unwrap_or_else(|| panic!("equation {k} not proportional to its class"));
                assert!(s.pivot_size() > 1e-6);
            }
        }
        for &k in CORNER_GROUPS[3] {
            assert!(fiber.quadrics[k].coeffs.iter().all(|v| v.is_zero()));
        }

        for plane in &fiber.planes {
            assert_eq!(plane_residual(&plane.basis, &fiber.quadrics), 0.0);
            let neighbors = fiber
                .edges
                .iter()
                .filter(|(i, j)| {
                    std::ptr::eq(&fiber.planes[*i], plane) || std::ptr::eq(&fiber.planes[*j], plane)
                })
                .count();
            assert_eq!(neighbors, 3);
        }

        for &(i, j) in &fiber.edges {
            let line = edge_line(&fiber.planes[i], &fiber.planes[j])
                .expect("cube-adjacent planes share a line");
            assert_eq!(line_residual(&line, &fiber.quadrics), 0.0);
        }
        assert!(edge_line(&fiber.planes[0], &fiber.planes[3]).is_none());
        assert!(edge_line(&fiber.planes[0], &fiber.planes[7]).is_none());

        let line = edge_line(&fiber.planes[0], &fiber.planes[1]).unwrap();
        let one = c(1.0, 0.0);
        let zero = c(0.0, 0.0);
        assert_eq!(line[0], [one, one, zero, zero, zero, zero]);
        assert_eq!(line[1], [zero, zero, one, zero, zero, one]);

        for face in &fiber.faces {
            let point = fiber.planes[face.members[0]].basis[face.coordinate];
            for &m in &face.members {
                assert_eq!(
                    fiber.planes[m].basis[face.coordinate], point,
                    "face members must share the order-four point"
                );
            }
            for q in &fiber.quadrics {
                assert!(fiber_residual(q, &point) == 0.0);
            }
        }

        let exact = corner_fiber(Fp::new(1, 19));
        for plane in &exact.planes {
            assert_eq!(plane_residual(&plane.basis, &exact.quadrics), 0.0);
        }
    }

    #[test]
    fn minors_match_their_closed_forms() {
        let t = [c(1.0, 0.0), c(0.4, 0.3)];
        let x6 = c(1.2, -0.5);
        let generic = cone_point(&t, x6, c(0.9, 0.1)).unwrap();
        let check = cone_stratum_minor(&t, &generic);
        assert!(check.residual() < 1e-10, "{}: {:?}", check.name, check);
        assert!(check.computed.norm() > 1e-8);

        let on_base = cone_point(&t, x6, c(0.0, 0.0)).unwrap();
        let vanishing = cone_stratum_minor(&t, &on_base);
        assert!(vanishing.computed.norm() < 1e-12);
        let base_checks = cone_base_minors(&t, &on_base);
        for check in &base_checks {
            assert!(check.residual() < 1e-10, "{}: {:?}", check.name, check);
        }
        assert!(
            base_checks.iter().any(|c| c.computed.norm() > 1e-8),
            "the two base minors must not vanish together on the fiber"
        );

        for plane in corner_fiber(c(1.0, 0.0)).planes.iter() {
            let (x1, x3, x4) = (c(0.7, 0.2), c(-0.4, 0.9), c(1.1, -0.3));
            let s = |k: usize| c(plane.signs[k] as f64, 0.0);
            let x = [x1, s(0) * x1, x3, x4, s(2) * x4, s(1) * x3];
            for check in corner_minors(&x) {
                assert!(check.residual() < 1e-10, "{}: {:?}", check.name, check);
                assert!(check.computed.norm() > 1e-8);
            }
        }
    }

    #[test]
    fn minors_are_exact_over_f19() {
        let p = 19;
        let t = [Fp::new(2, p), Fp::new(1, p)];
        let x = cone_point(&t, Fp::new(3, p), Fp::new(1, p)).unwrap();
        let check = cone_stratum_minor(&t, &x);
        assert_eq!(check.computed, Fp::new(6, p), "8 * 5 * 3 mod 19");
        assert_eq!(check.residual(), 0.0);

        let on_base = cone_point(&t, Fp::new(3, p), Fp::new(0, p)).unwrap();
        for check in cone_base_minors(&t, &on_base) {
            assert_eq!(check.residual(), 0.0, "{}: {:?}", check.name, check);
            assert!(!check.computed.is_zero());
        }

        let ones = [Fp::new(1, p); 6];
        let checks = corner_minors(&ones);
        assert_eq!(checks[0].computed, Fp::new(8, p));
        assert_eq!(checks[1].computed, -Fp::new(8, p));
        assert_eq!(checks[2].computed, Fp::new(8, p));
        for check in &checks {
            assert_eq!(check.residual(), 0.0);
        }
    }

    #[test]
    fn genus_one_relations_hold() {
        let policy = TruncationPolicy::default();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..5 {
            let tau = sample::random_tau(&mut rng);
            let z = sample::random_z1(&mut rng);
            for r in genus1_model_check(z, tau, &policy).unwrap() {
                assert!(r < 1e-8, "relation fails at z = {z}, tau = {tau}");
            }
            assert!(jacobi_quartic_residual(tau, &policy).unwrap() < 1e-10);
        }
        for r in genus1_model_check(Complex64::ZERO, c(0.1, 0.9), &policy).unwrap() {
            assert!(r < 1e-8);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn classification_ignores_the_global_scale(
            coords in proptest::array::uniform4(0u64..19),
            lambda in 1u64..19,
        ) {
            let p = 19;
            let b = coords.map(|v| Fp::new(v, p));
            prop_assume!(b.iter().any(|v| !v.is_zero()));
            let scaled = b.map(|v| v * Fp::new(lambda, p));
            match (classify(&b, 0.5), classify(&scaled, 0.5)) {
                (Ok(x), Ok(y)) => prop_assert_eq!(x, y),
                (Err(Error::UnknownPattern(u)), Err(Error::UnknownPattern(v))) => {
                    prop_assert_eq!(u, v)
                }
                other => prop_assert!(false, "divergent classification: {:?}", other),
            }
        }

        #[test]
        fn level_two_data_is_pythagorean_over_fp(
            pi in 0usize..3,
            s in proptest::array::uniform2(0u64..23),
            t in proptest::array::uniform2(0u64..23),
        ) {
            let p = [11u64, 19, 23][pi];
            let s = s.map(|v| Fp::new(v % p, p));
            let t = t.map(|v| Fp::new(v % p, p));
            let data = ProductFiberData::new(&s, &t);
            prop_assert_eq!(data.pythagorean_residual(), 0.0);
        }
    }
}
