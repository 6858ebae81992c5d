//! The eighty trope hyperplanes and the lines they cut on the surface.
//!
//! A quadruple of two-torsion labels with trivial characteristic sum and an
//! odd number of odd members determines a hyperplane in the odd coordinates
//! whose coefficients are signed triple products of even constants.  The
//! quadruple product relation expands
//!
//! ```text
//! prod_{t in D} theta[c_t](z) = (1/4) sum_{r=1..3} s_r A_i A_j A_k X_l(2z)
//! ```
//!
//! for every one-odd quadruple `D` ([`derive_trope`]), and translation by
//! two-torsion carries these across all eighty quadruples
//! ([`eighty_tropes`]).  Stacking the twenty hyperplanes through a common
//! label and taking the kernel produces the thirty-two lines of the surface
//! ([`line_through_label`]), sixteen from divisor images and sixteen from
//! exceptional curves.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::chars::{Char2, LABELS};
use crate::field::Scalar;
use crate::linalg::Mat;
use crate::surface::{translation_signs, DiagonalQuadric};
use crate::theta::{
    even_constants, odd_coords, theta2_char, theta2_grad, PeriodMatrix2, TruncationPolicy,
};
use crate::{Error, Result};

/// Four two-torsion labels (ascending, `1..=16`) with trivial XOR.
pub type Quadruple = [usize; 4];

/// All quadruples of distinct labels whose characteristics sum to zero and
/// that contain an odd number of odd characteristics, in lexicographic
/// order.  There are eighty.
pub fn enumerate_quadruples() -> Vec<Quadruple> {
    let mut out = Vec::new();
    for a in 1..=16usize {
        for b in a + 1..=16 {
            for c in b + 1..=16 {
                for d in c + 1..=16 {
                    let quad = [a, b, c, d];
                    let chars = quad.map(Char2::from_label);
                    let total = chars[1..].iter().fold(chars[0], |s, c| s.xor(*c));
                    if total.bits != [0, 0, 0, 0] {
                        continue;
                    }
                    let odd = chars.iter().filter(|c| !c.is_even()).count();
                    if odd % 2 == 1 {
                        out.push(quad);
                    }
                }
            }
        }
    }
    out
}

/// Translate every member of a quadruple by the two-torsion label `t`.
pub fn translate_quadruple(quad: &Quadruple, t: usize) -> Quadruple {
    let tc = Char2::from_label(t);
    let mut out = quad.map(|l| Char2::from_label(l).xor(tc).label());
    out.sort_unstable();
    out
}

/// The four distinct translates of a quadruple, ordered by the smallest
/// label whose translation produces each of them.  Translating by all
/// sixteen labels yields only four sets because the quadruple is a coset of
/// a two-dimensional subspace.
pub fn orbit(quad: &Quadruple) -> [Quadruple; 4] {
    let mut members: Vec<Quadruple> = Vec::with_capacity(4);
    for t in 1..=16 {
        let image = translate_quadruple(quad, t);
        if !members.contains(&image) {
            members.push(image);
        }
    }
    assert_eq!(members.len(), 4, "quadruple orbit must have four members");
    [members[0], members[1], members[2], members[3]]
}

/// The twenty translation orbits, each listed from its lexicographically
/// smallest member, ordered by that member.
pub fn orbits() -> Vec<[Quadruple; 4]> {
    let mut seen: Vec<Quadruple> = Vec::new();
    let mut out = Vec::new();
    for quad in enumerate_quadruples() {
        if seen.contains(&quad) {
            continue;
        }
        let mut members = orbit(&quad).to_vec();
        members.sort_unstable();
        let base = members[0];
        seen.extend(members);
        out.push(orbit(&base));
    }
    out.sort_unstable_by_key(|o| o[0]);
    out
}

/// Exceptional labels of the quadruple `d`: the labels `t` for which exactly
/// three members of `d + t` are odd.
pub fn e_labels(d: &Quadruple) -> [usize; 4] {
    let mut out = Vec::with_capacity(4);
    for t in 1..=16 {
        let translated = translate_quadruple(d, t);
        let odd = translated
            .iter()
            .filter(|l| !Char2::from_label(**l).is_even())
            .count();
        if odd == 3 {
            out.push(t);
        }
    }
    assert_eq!(out.len(), 4, "every quadruple meets four exceptional labels");
    [out[0], out[1], out[2], out[3]]
}

/// A trope hyperplane `sum_r signs[r] A_i A_j A_k X_(support[r]+1)` with
/// `triples[r]` holding the zero-based indices of the three even constants
/// in each coefficient.  `d_labels` is the quadruple of divisor labels it
/// contains.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Trope {
    pub support: [usize; 3],
    pub triples: [[usize; 3]; 3],
    pub signs: [i8; 3],
    pub d_labels: Quadruple,
}

impl Trope {
    /// Flip the overall sign so that the first term is positive.
    pub fn normalized(&self) -> Trope {
        let mut t = *self;
        if t.signs[0] < 0 {
            for s in &mut t.signs {
                *s = -*s;
            }
        }
        t
    }

    /// True when the two tropes agree up to one overall sign.
    pub fn proportional(&self, other: &Trope) -> bool {
        self.support == other.support
            && self.triples == other.triples
            && self.normalized().signs == other.normalized().signs
    }
}

const HADAMARD: [[i64; 4]; 4] = [
    [1, 1, 1, 1],
    [1, 1, -1, -1],
    [1, -1, 1, -1],
    [1, -1, -1, 1],
];

/// Expand the quadruple product of a one-odd quadruple into its trope form.
///
/// The underlying characteristics are the half-sum duals of the quadruple;
/// the sixteen half-characteristic shifts of the relation then reduce to
/// exactly three monomials `+-1 * A_i A_j A_k X_l`, because a shifted term
/// survives only when all three of its constant slots stay even.  The signs
/// returned are absolute: the identity holds with the `1/4` prefactor and no
/// further scaling.
pub fn derive_trope(quad: &Quadruple) -> Result<Trope> {
    let cs = quad.map(Char2::from_label);
    let odd = cs.iter().filter(|c| !c.is_even()).count();
    if odd != 1 {
        return Err(Error::Mismatch(format!(
            "quadruple {quad:?} has {odd} odd members; the expansion needs exactly one"
        )));
    }
    let total = cs[1..].iter().fold(cs[0], |s, c| s.xor(*c));
    if total.bits != [0, 0, 0, 0] {
        return Err(Error::Mismatch(format!(
            "quadruple {quad:?} does not sum to the trivial characteristic"
        )));
    }

    // Half-sum duals, in doubled units so that everything stays integral.
    let mut ua = [[0i64; 2]; 4];
    let mut ub = [[0i64; 2]; 4];
    for k in 0..4 {
        for t in 0..2 {
            let sa: i64 = (0..4).map(|j| HADAMARD[k][j] * cs[j].bits[t] as i64).sum();
            let sb: i64 = (0..4)
                .map(|j| HADAMARD[k][j] * cs[j].bits[2 + t] as i64)
                .sum();
            debug_assert!(sa % 2 == 0 && sb % 2 == 0, "trivial sum keeps duals integral");
            ua[k][t] = sa / 2;
            ub[k][t] = sb / 2;
        }
    }

    let shifts = [[0i64, 0], [0, 1], [1, 0], [1, 1]];
    let mut acc: BTreeMap<(usize, [usize; 3]), i64> = BTreeMap::new();
    for alpha in shifts {
        for beta in shifts {
            // exp(-2 pi i beta . (a_1+..+a_4)) with the sum equal to twice
            // the a-part of the first quadruple member.
            let mut sign = 1i64;
            for t in 0..2 {
                if (beta[t] * cs[0].bits[t] as i64) % 2 != 0 {
                    sign = -sign;
                }
            }
            let mut labels = [0usize; 4];
            let mut dead = false;
            for k in 0..4 {
                let mut bits = [0u8; 4];
                for t in 0..2 {
                    let sa = ua[k][t] + alpha[t];
                    bits[t] = sa.rem_euclid(2) as u8;
                    let sb = ub[k][t] + beta[t];
                    bits[2 + t] = sb.rem_euclid(2) as u8;
                    // the a-shift is free; the b-shift contributes
                    // exp(2 pi i a . n) on the reduced characteristic
                    let n = (sb - sb.rem_euclid(2)) / 2;
                    if (bits[t] as i64 * n).rem_euclid(2) == 1 {
                        sign = -sign;
                    }
                }
                let c = Char2::new(bits[0], bits[1], bits[2], bits[3]);
                if k > 0 && !c.is_even() {
                    dead = true;
                    break;
                }
                labels[k] = c.label();
            }
            if dead {
                continue;
            }
            let mut triple = [labels[1] - 1, labels[2] - 1, labels[3] - 1];
            triple.sort_unstable();
            *acc.entry((labels[0], triple)).or_insert(0) += sign;
        }
    }

    let mut terms: Vec<(usize, [usize; 3], i64)> = Vec::new();
    for ((l0, triple), coef) in acc {
        if coef == 0 {
            continue;
        }
        if l0 <= 10 {
            return Err(Error::Mismatch(format!(
                "quadruple {quad:?}: even residue A_{l0} survives the expansion"
            )));
        }
        terms.push((l0 - 11, triple, coef));
    }
    if terms.len() != 3 || terms.iter().any(|t| t.2.abs() != 1) {
        return Err(Error::Mismatch(format!(
            "quadruple {quad:?}: expansion has terms {terms:?} instead of three units"
        )));
    }
    terms.sort_unstable();
    Ok(Trope {
        support: [terms[0].0, terms[1].0, terms[2].0],
        triples: [terms[0].1, terms[1].1, terms[2].1],
        signs: [terms[0].2 as i8, terms[1].2 as i8, terms[2].2 as i8],
        d_labels: *quad,
    })
}

/// The trope of the translated divisor set: the same supports and triples,
/// with each term's sign multiplied by the translation sign of its odd
/// coordinate.
pub fn translate_trope(tr: &Trope, t: usize) -> Trope {
    let eps = translation_signs(Char2::from_label(t));
    let mut out = *tr;
    for r in 0..3 {
        out.signs[r] *= eps[tr.support[r]];
    }
    out.d_labels = translate_quadruple(&tr.d_labels, t);
    out
}

/// Reference row of the hyperplane table: the trope data together with the
/// labels of the four exceptional curves on it.
#[derive(Clone, Copy, Debug)]
pub struct TropeRow {
    pub trope: Trope,
    pub e_labels: [usize; 4],
}

const fn row(
    support: [usize; 3],
    triples: [[usize; 3]; 3],
    signs: [i8; 3],
    d_labels: [usize; 4],
    e_labels: [usize; 4],
) -> TropeRow {
    TropeRow {
        trope: Trope {
            support,
            triples,
            signs,
            d_labels,
        },
        e_labels,
    }
}

/// The twenty reference hyperplanes.  Every other trope is a two-torsion
/// translate of one of these.
pub const TROPE_ROWS: [TropeRow; 20] = [
    row([3, 4, 5], [[0, 2, 5], [1, 3, 8], [4, 6, 7]], [1, 1, 1], [1, 3, 6, 14], [10, 11, 12, 13]),
    row([2, 4, 5], [[0, 2, 9], [4, 7, 8], [1, 3, 6]], [1, 1, -1], [1, 3, 10, 13], [6, 11, 12, 14]),
    row([2, 3, 5], [[1, 3, 9], [4, 5, 7], [0, 2, 6]], [1, -1, -1], [1, 3, 7, 16], [9, 11, 12, 15]),
    row([2, 3, 4], [[4, 7, 9], [1, 3, 5], [0, 2, 8]], [1, 1, 1], [1, 3, 9, 15], [7, 11, 12, 16]),
    row([1, 4, 5], [[0, 5, 9], [3, 4, 6], [1, 7, 8]], [1, 1, -1], [1, 6, 10, 12], [3, 11, 13, 14]),
    row([1, 3, 5], [[1, 8, 9], [2, 4, 6], [0, 5, 7]], [1, -1, -1], [1, 6, 8, 16], [4, 11, 13, 15]),
    row([1, 3, 4], [[4, 6, 9], [1, 2, 8], [0, 3, 5]], [1, 1, 1], [1, 4, 6, 15], [8, 11, 13, 16]),
    row([1, 2, 5], [[5, 7, 8], [2, 3, 6], [0, 1, 9]], [1, -1, 1], [1, 2, 10, 16], [5, 11, 14, 15]),
    row([1, 2, 4], [[3, 5, 6], [2, 7, 8], [0, 4, 9]], [1, -1, 1], [1, 5, 10, 15], [2, 11, 14, 16]),
    row([1, 2, 3], [[2, 6, 8], [3, 5, 7], [1, 4, 9]], [1, -1, 1], [2, 5, 10, 14], [2, 5, 10, 14]),
    row([0, 4, 5], [[2, 5, 9], [1, 6, 7], [3, 4, 8]], [1, 1, -1], [3, 6, 10, 11], [3, 6, 10, 11]),
    row([0, 3, 5], [[3, 8, 9], [0, 6, 7], [2, 4, 5]], [1, -1, -1], [3, 5, 6, 16], [4, 9, 10, 11]),
    row([0, 3, 4], [[6, 7, 9], [0, 3, 8], [1, 2, 5]], [1, 1, 1], [2, 3, 6, 15], [7, 8, 10, 11]),
    row([0, 2, 5], [[4, 5, 8], [0, 1, 6], [2, 3, 9]], [1, 1, -1], [1, 2, 7, 13], [8, 12, 14, 15]),
    row([0, 2, 4], [[1, 5, 6], [0, 4, 8], [2, 7, 9]], [1, 1, -1], [1, 5, 9, 13], [4, 12, 14, 16]),
    row([0, 2, 3], [[0, 6, 8], [1, 4, 5], [3, 7, 9]], [1, 1, -1], [2, 5, 6, 13], [4, 8, 10, 14]),
    row([0, 1, 5], [[2, 3, 4], [0, 1, 7], [5, 8, 9]], [1, 1, 1], [1, 2, 8, 12], [7, 13, 14, 15]),
    row([0, 1, 4], [[1, 2, 7], [0, 3, 4], [5, 6, 9]], [1, 1, 1], [1, 4, 5, 12], [9, 13, 14, 16]),
    row([0, 1, 3], [[0, 3, 7], [1, 2, 4], [6, 8, 9]], [1, 1, 1], [2, 3, 5, 12], [7, 9, 10, 14]),
    row([0, 1, 2], [[0, 1, 4], [2, 3, 7], [5, 6, 8]], [1, 1, 1], [1, 2, 5, 11], [10, 14, 15, 16]),
];

/// All eighty tropes, generated from the reference rows by translation,
/// keyed and ordered by their divisor quadruples.
pub fn eighty_tropes() -> Vec<Trope> {
    let mut by_quad: BTreeMap<Quadruple, Trope> = BTreeMap::new();
    for r in &TROPE_ROWS {
        for t in 1..=16 {
            let image = translate_trope(&r.trope, t).normalized();
            if let Some(prev) = by_quad.get(&image.d_labels) {
                assert_eq!(
                    *prev, image,
                    "translates disagree on quadruple {:?}",
                    image.d_labels
                );
            } else {
                by_quad.insert(image.d_labels, image);
            }
        }
    }
    assert_eq!(by_quad.len(), 80, "translation must reach all quadruples");
    by_quad.into_values().collect()
}

/// Numeric coefficient vector of a trope against unsquared even constants.
pub fn trope_coefficients<T: Scalar>(tr: &Trope, a: &[T; 10]) -> [T; 6] {
    let zero = a[0].zero_like();
    let mut out = [zero; 6];
    for r in 0..3 {
        let t = tr.triples[r];
        let prod = a[t[0]] * a[t[1]] * a[t[2]];
        out[tr.support[r]] = prod.of_i64(tr.signs[r] as i64) * prod;
    }
    out
}

/// Relative residual of the quadruple product identity for a derived trope:
/// `prod theta[c](z)` against `(1/4) sum_r s_r A A A X(2z)`.  The stored
/// signs are taken as absolute, so this is meaningful for the output of
/// [`derive_trope`], not for sign-normalized table rows.
pub fn trope_identity_residual(
    tr: &Trope,
    z: [Complex64; 2],
    om: &PeriodMatrix2,
    policy: &TruncationPolicy,
) -> Result<f64> {
    let a = even_constants(om, policy)?;
    let x = odd_coords(z, om, policy)?;
    let mut lhs = Complex64::ONE;
    for &d in &tr.d_labels {
        lhs *= theta2_char(LABELS[d - 1], z, om, policy)?;
    }
    let coeffs = trope_coefficients(tr, &a);
    let mut rhs = Complex64::ZERO;
    for (c, xv) in coeffs.iter().zip(x.iter()) {
        rhs += c * xv;
    }
    rhs *= 0.25;
    let scale = lhs.norm().max(rhs.norm()).max(f64::MIN_POSITIVE);
    Ok((lhs - rhs).norm() / scale)
}

/// The four factors of the reference product identity, each with the six
/// two-torsion labels at which it vanishes.
pub const VANISHING_TABLE: [(usize, [usize; 6]); 4] = [
    (1, [11, 12, 13, 14, 15, 16]),
    (2, [5, 7, 8, 10, 14, 15]),
    (5, [2, 4, 9, 10, 14, 16]),
    (11, [1, 3, 6, 10, 15, 16]),
];

/// The boolean form of [`VANISHING_TABLE`]: row `r`, column `t - 1` is true
/// when the factor of row `r` vanishes at the two-torsion point of label `t`.
pub fn expected_vanishing() -> [[bool; 16]; 4] {
    let mut out = [[false; 16]; 4];
    for (r, (_, zeros)) in VANISHING_TABLE.iter().enumerate() {
        for &t in zeros {
            out[r][t - 1] = true;
        }
    }
    out
}

/// Numeric vanishing pattern of the four reference factors at the sixteen
/// two-torsion points of `om`: an entry is true when the theta value falls
/// below `zero_tol` times its row maximum.
pub fn observed_vanishing(
    om: &PeriodMatrix2,
    policy: &TruncationPolicy,
    zero_tol: f64,
) -> Result<[[bool; 16]; 4]> {
    let mut out = [[false; 16]; 4];
    for (r, (label, _)) in VANISHING_TABLE.iter().enumerate() {
        let c = Char2::from_label(*label);
        let mut values = [0.0f64; 16];
        for t in 1..=16 {
            let point = om.two_torsion(Char2::from_label(t));
            values[t - 1] = theta2_char(c, point, om, policy)?.norm();
        }
        let scale = values.iter().cloned().fold(0.0, f64::max);
        for t in 0..16 {
            out[r][t] = values[t] < zero_tol * scale;
        }
    }
    Ok(out)
}

/// Which of the two line families a label's stack should cut out.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LineFamily {
    /// Lines that are images of translated theta divisors.
    Divisor,
    /// Lines that resolve the two-torsion points.
    Exceptional,
}

/// The tropes whose hyperplanes contain the line of `label` in the given
/// family: twenty of the eighty.
pub fn tropes_through(tropes: &[Trope], label: usize, family: LineFamily) -> Vec<Trope> {
    tropes
        .iter()
        .filter(|t| match family {
            LineFamily::Divisor => t.d_labels.contains(&label),
            LineFamily::Exceptional => e_labels(&t.d_labels).contains(&label),
        })
        .copied()
        .collect()
}

/// Intersect the twenty hyperplanes through a label: their stacked
/// coefficient matrix must have rank four, and the two kernel vectors span
/// the line.
pub fn line_through_label<T: Scalar>(
    tropes: &[Trope],
    a: &[T; 10],
    label: usize,
    family: LineFamily,
    zero_tol: f64,
) -> Result<[[T; 6]; 2]> {
    let through = tropes_through(tropes, label, family);
    if through.len() != 20 {
        return Err(Error::Mismatch(format!(
            "label {label} lies on {} hyperplanes instead of twenty",
            through.len()
        )));
    }
    let rows: Vec<Vec<T>> = through
        .iter()
        .map(|t| trope_coefficients(t, a).to_vec())
        .collect();
    let kernel = Mat::from_rows(&rows).kernel_basis(zero_tol);
    if kernel.len() != 2 {
        return Err(Error::RankDeficient {
            expected: 4,
            got: 6 - kernel.len(),
            context: "stacked trope hyperplanes",
        });
    }
    let mut out = [[a[0].zero_like(); 6]; 2];
    for (o, k) in out.iter_mut().zip(kernel.iter()) {
        o.copy_from_slice(k);
    }
    Ok(out)
}

/// Worst relative residual of the given quadrics over the line spanned by
/// the basis: each quadric must vanish at both basis points and their sum
/// (for diagonal quadrics that settles the whole line).
pub fn line_on_surface<T: Scalar>(basis: &[[T; 6]; 2], eqs: &[DiagonalQuadric<T>]) -> f64 {
    let mut sum = basis[0];
    for i in 0..6 {
        sum[i] = sum[i] + basis[1][i];
    }
    let mut worst = 0.0f64;
    for q in eqs {
        for p in [&basis[0], &basis[1], &sum] {
            worst = worst.max(q.relative_residual(p));
        }
    }
    worst
}

/// Whether two lines given by spanning pairs intersect in projective space:
/// the four stacked vectors drop to rank three or lower.
pub fn lines_meet<T: Scalar>(l1: &[[T; 6]; 2], l2: &[[T; 6]; 2], zero_tol: f64) -> bool {
    let rows = vec![
        l1[0].to_vec(),
        l1[1].to_vec(),
        l2[0].to_vec(),
        l2[1].to_vec(),
    ];
    Mat::from_rows(&rows).rank(zero_tol) <= 3
}

/// Find a zero of `theta[c](., Omega)` on the complex line `z0 + s dir` by a
/// damped Newton iteration in the scalar `s`.
pub fn divisor_point(
    c: Char2,
    z0: [Complex64; 2],
    dir: [Complex64; 2],
    om: &PeriodMatrix2,
    policy: &TruncationPolicy,
    max_iter: u32,
) -> Result<[Complex64; 2]> {
    let at = |s: Complex64| [z0[0] + s * dir[0], z0[1] + s * dir[1]];
    let mut s = Complex64::ZERO;
    let mut f = theta2_char(c, at(s), om, policy)?;
    for _ in 0..max_iter {
        if f.norm() < 1e-12 {
            return Ok(at(s));
        }
        let (_, g) = theta2_grad(c.a(), c.b(), at(s), om, policy)?;
        let df = g[0] * dir[0] + g[1] * dir[1];
        if df.norm() < 1e-14 {
            return Err(Error::DivisionByNearZero("theta gradient along the line"));
        }
        let mut step = -f / df;
        let mut improved = false;
        for _ in 0..8 {
            let cand = theta2_char(c, at(s + step), om, policy)?;
            if cand.norm() < f.norm() {
                s += step;
                f = cand;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if !improved {
            return Err(Error::NewtonDiverged {
                iterations: max_iter,
                last: f.norm(),
            });
        }
    }
    if f.norm() < 1e-12 {
        Ok(at(s))
    } else {
        Err(Error::NewtonDiverged {
            iterations: max_iter,
            last: f.norm(),
        })
    }
}
