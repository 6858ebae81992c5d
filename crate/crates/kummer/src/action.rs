//! Monomial action of the symplectic generators on theta coordinates.
//!
//! Each generator sends every coordinate to an eighth root of unity times a
//! single coordinate: `A_i -> zeta^e A_sigma(i)` on the ten even constants
//! and `X_j -> zeta^e X_sigma(j)` on the six odd coordinates, with
//! `zeta = exp(2 pi i / 8)`.  A [`MonomialAction`] stores the permutation and
//! the phase exponents, and is read two ways:
//!
//! * as a substitution on symbols, which transforms equations and hyperplanes
//!   ([`transform_equation`]) and derives fourteen of the fifteen quadrics
//!   from the first ([`DERIVATION_CHAIN`]);
//! * as a transformation of value vectors, where the coordinates of the
//!   image point `gamma . Omega` appear at permuted indices with inverted
//!   phases: `w[sigma(i)] = zeta^(-e_i) v[i]` up to one global projective
//!   scalar ([`MonomialAction::apply_complex`]).
//!
//! The permutation part is forced by the action on characteristics (tested
//! against [`crate::symplectic::SymplecticGenerator::char_action`]); the
//! phases carry the extra automorphy information.

use num_complex::Complex64;

use crate::field::Fp;
use crate::surface::EQUATIONS;
use crate::{Error, Result};

/// Action `symbol_i -> zeta^(phase_i) symbol_(perm_i)` on `N` coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MonomialAction<const N: usize> {
    pub perm: [usize; N],
    /// Exponents of `zeta = exp(2 pi i / 8)`, so values live in `0..8`.
    pub phase: [u8; N],
}

/// Paired actions of one generator on the `A` and `X` coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratorAction {
    pub name: &'static str,
    pub on_a: MonomialAction<10>,
    pub on_x: MonomialAction<6>,
}

/// The table of all nine generator actions, in the generator order of
/// [`crate::symplectic::GENERATORS`].
pub const ACTIONS: [GeneratorAction; 9] = [
    GeneratorAction {
        name: "g1",
        on_a: MonomialAction {
            perm: [0, 2, 1, 3, 5, 4, 6, 8, 7, 9],
            phase: [0; 10],
        },
        on_x: MonomialAction {
            perm: [3, 4, 5, 0, 1, 2],
            phase: [0; 6],
        },
    },
    GeneratorAction {
        name: "g2",
        on_a: MonomialAction {
            perm: [0, 1, 3, 2, 6, 5, 4, 9, 8, 7],
            phase: [0, 0, 0, 0, 0, 0, 0, 0, 0, 4],
        },
        on_x: MonomialAction {
            perm: [2, 5, 0, 4, 3, 1],
            phase: [0, 4, 0, 0, 0, 0],
        },
    },
    GeneratorAction {
        name: "g3",
        on_a: MonomialAction {
            perm: [0, 3, 2, 1, 4, 6, 5, 7, 9, 8],
            phase: [0, 0, 0, 0, 0, 0, 0, 0, 0, 4],
        },
        on_x: MonomialAction {
            perm: [1, 0, 4, 5, 2, 3],
            phase: [0, 0, 0, 0, 4, 0],
        },
    },
    GeneratorAction {
        name: "g4",
        on_a: MonomialAction {
            perm: [0, 2, 3, 1, 6, 4, 5, 9, 7, 8],
            phase: [0, 0, 0, 0, 0, 0, 0, 0, 0, 4],
        },
        on_x: MonomialAction {
            perm: [5, 2, 3, 1, 0, 4],
            phase: [0, 4, 0, 0, 0, 0],
        },
    },
    GeneratorAction {
        name: "g5",
        on_a: MonomialAction {
            perm: [0, 3, 1, 2, 5, 6, 4, 8, 9, 7],
            phase: [0, 0, 0, 0, 0, 0, 0, 0, 0, 4],
        },
        on_x: MonomialAction {
            perm: [4, 3, 1, 2, 5, 0],
            phase: [0, 0, 0, 0, 4, 0],
        },
    },
    GeneratorAction {
        name: "h1",
        on_a: MonomialAction {
            perm: [2, 3, 0, 1, 7, 5, 6, 4, 8, 9],
            phase: [0, 0, 0, 0, 0, 7, 7, 0, 7, 7],
        },
        on_x: MonomialAction {
            perm: [1, 0, 2, 3, 4, 5],
            phase: [0, 0, 7, 7, 7, 7],
        },
    },
    GeneratorAction {
        name: "h2",
        on_a: MonomialAction {
            perm: [0, 1, 2, 3, 7, 8, 9, 4, 5, 6],
            phase: [0, 0, 0, 0, 0, 0, 2, 0, 0, 2],
        },
        on_x: MonomialAction {
            perm: [1, 0, 5, 4, 3, 2],
            phase: [0, 0, 6, 0, 0, 6],
        },
    },
    GeneratorAction {
        name: "h3",
        on_a: MonomialAction {
            perm: [1, 0, 3, 2, 4, 8, 6, 7, 5, 9],
            phase: [0, 0, 0, 0, 7, 0, 7, 7, 0, 7],
        },
        on_x: MonomialAction {
            perm: [0, 1, 2, 4, 3, 5],
            phase: [7, 7, 7, 0, 0, 7],
        },
    },
    GeneratorAction {
        name: "J",
        on_a: MonomialAction {
            perm: [0, 4, 5, 6, 1, 2, 3, 8, 7, 9],
            phase: [0, 0, 0, 0, 0, 0, 0, 0, 0, 4],
        },
        on_x: MonomialAction {
            perm: [0, 2, 1, 3, 5, 4],
            phase: [2, 2, 2, 2, 2, 2],
        },
    },
];

/// Generator action by name.
pub fn action_by_name(name: &str) -> Option<GeneratorAction> {
    ACTIONS.iter().copied().find(|a| a.name == name)
}

/// `zeta^e` over the complex numbers.
pub fn zeta8(e: u8) -> Complex64 {
    Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4 * (e % 8) as f64)
}

impl<const N: usize> MonomialAction<N> {
    /// Transform a coordinate value vector: if `v` holds the coordinates for
    /// `Omega`, the result holds the coordinates for `gamma . Omega` up to
    /// one global projective scalar, via `w[perm[i]] = zeta^(-phase_i) v[i]`.
    ///
    /// The stored phases belong to the substitution reading, which is the
    /// pullback along `gamma^(-1)`: `A_i(gamma^(-1) Omega)` is proportional
    /// to `zeta^(phase_i) A_(perm_i)(Omega)`.  Replacing `Omega` by
    /// `gamma . Omega` and solving for the image coordinates keeps the
    /// permutation but inverts every phase.
    pub fn apply_complex(&self, v: &[Complex64; N]) -> [Complex64; N] {
        let mut out = [Complex64::ZERO; N];
        for i in 0..N {
            out[self.perm[i]] = zeta8((8 - self.phase[i] % 8) % 8) * v[i];
        }
        out
    }

    /// The same transformation over `F_p`, which requires the used roots of
    /// unity to exist: `p = 1 (mod 8)` for odd phases, `p = 1 (mod 4)` when
    /// phases `2` or `6` occur; signs alone always work.
    pub fn apply_fp(&self, v: &[Fp; N]) -> Result<[Fp; N]> {
        let p = v[0].modulus();
        let mut order = 1u32;
        for &e in &self.phase {
            let o = 8 / gcd(e as u32, 8).max(1);
            order = order.max(o);
        }
        let zeta = match order {
            1 => Fp::new(1, p),
            2 => -Fp::new(1, p),
            _ => Fp::root_of_unity(p, order)?,
        };
        let mut out = [v[0]; N];
        for i in 0..N {
            let e = ((8 - self.phase[i] % 8) % 8) as u32 * order / 8;
            out[self.perm[i]] = zeta.pow(e as u64) * v[i];
        }
        Ok(out)
    }

    /// Composition `self . other` as substitutions: first replace symbols by
    /// `other`, then by `self`.
    pub fn compose(&self, other: &MonomialAction<N>) -> MonomialAction<N> {
        let mut perm = [0usize; N];
        let mut phase = [0u8; N];
        for i in 0..N {
            perm[i] = self.perm[other.perm[i]];
            phase[i] = (other.phase[i] + self.phase[other.perm[i]]) % 8;
        }
        MonomialAction { perm, phase }
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if a == 0 {
        b
    } else {
        gcd(b % a, a)
    }
}

/// A quadric `sum zeta^(e) A_(k+1)^2 X_(slot+1)^2` with symbolic coefficients:
/// slot `j` holds `Some((phase, k))` or `None`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymbolicQuadric {
    pub coeffs: [Option<(u8, usize)>; 6],
}

impl SymbolicQuadric {
    /// True if the two quadrics agree up to one global `zeta` power, in
    /// which case the exponent of `other / self` is returned.
    pub fn proportional(&self, other: &SymbolicQuadric) -> Option<u8> {
        let mut diff: Option<u8> = None;
        for j in 0..6 {
            match (self.coeffs[j], other.coeffs[j]) {
                (None, None) => {}
                (Some((e1, k1)), Some((e2, k2))) => {
                    if k1 != k2 {
                        return None;
                    }
                    let d = (e2 + 8 - e1) % 8;
                    match diff {
                        None => diff = Some(d),
                        Some(prev) if prev != d => return None,
                        _ => {}
                    }
                }
                _ => return None,
            }
        }
        diff
    }
}

/// The fifteen equations in symbolic form; signs become phases 0 and 4.
pub fn symbolic_equations() -> [SymbolicQuadric; 15] {
    let mut out = [SymbolicQuadric { coeffs: [None; 6] }; 15];
    for (k, eq) in EQUATIONS.iter().enumerate() {
        for &(slot, idx, sign) in eq {
            out[k].coeffs[slot] = Some((if sign > 0 { 0 } else { 4 }, idx));
        }
    }
    out
}

/// Transform a quadric by substituting the action into its symbols: each
/// `A_k^2 X_j^2` picks up the squared phases of both coordinates and moves to
/// the permuted slots.
pub fn transform_equation(gen: &GeneratorAction, q: &SymbolicQuadric) -> SymbolicQuadric {
    let mut out = SymbolicQuadric { coeffs: [None; 6] };
    for j in 0..6 {
        if let Some((e, k)) = q.coeffs[j] {
            let phase = (e + 2 * gen.on_a.phase[k] + 2 * gen.on_x.phase[j]) % 8;
            let slot = gen.on_x.perm[j];
            debug_assert!(out.coeffs[slot].is_none(), "slots collide");
            out.coeffs[slot] = Some((phase, gen.on_a.perm[k]));
        }
    }
    out
}

/// How the printed equations arise from the first one: entries
/// `(target, generator name, source)` meaning `E_target = gen(E_source)` up
/// to a global phase, with equations numbered from one.
pub const DERIVATION_CHAIN: [(usize, &str, usize); 14] = [
    (2, "h1", 1),
    (3, "J", 2),
    (4, "g1", 1),
    (5, "g1", 2),
    (6, "g1", 3),
    (7, "g4", 3),
    (8, "g4", 1),
    (9, "h3", 8),
    (10, "J", 9),
    (11, "g5", 2),
    (12, "g5", 1),
    (13, "g2", 1),
    (14, "g3", 1),
    (15, "h3", 14),
];

/// Verify the whole derivation chain symbolically.  Returns the fourteen
/// global phase exponents, or the first failing link.
pub fn verify_derivation_chain() -> Result<Vec<(usize, u8)>> {
    let eqs = symbolic_equations();
    let mut scalars = Vec::new();
    for &(target, gen, source) in &DERIVATION_CHAIN {
        let action = action_by_name(gen).expect("chain uses known generators");
        let image = transform_equation(&action, &eqs[source - 1]);
        match eqs[target - 1].proportional(&image) {
            Some(e) => scalars.push((target, e)),
            None => {
                return Err(Error::Mismatch(format!(
                    "E{target} is not proportional to {gen}(E{source})"
                )))
            }
        }
    }
    Ok(scalars)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chars::LABELS;
    use crate::field::Scalar;
    use crate::sample;
    use crate::symplectic::GENERATORS;
    use crate::theta::{even_constants, odd_coords, TruncationPolicy};
    use crate::linalg::projective_distance;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const POL: TruncationPolicy = TruncationPolicy {
        tol: 1e-13,
        max_radius: 60,
    };

    #[test]
    fn permutations_match_the_characteristic_action() {
        // The symbol permutation of each table row is exactly the action on
        // characteristics: column i holds the symbol whose characteristic is
        // gamma . c_i.
        for (gen, act) in GENERATORS.iter().zip(ACTIONS.iter()) {
            assert_eq!(gen.name, act.name);
            for i in 0..10 {
                let image = gen.char_action(LABELS[i]);
                assert_eq!(
                    act.on_a.perm[i],
                    image.label() - 1,
                    "{}: A_{} image",
                    gen.name,
                    i + 1
                );
            }
            for j in 0..6 {
                let image = gen.char_action(LABELS[10 + j]);
                assert_eq!(
                    act.on_x.perm[j],
                    image.label() - 11,
                    "{}: X_{} image",
                    gen.name,
                    j + 1
                );
            }
        }
    }

    #[test]
    fn derivation_chain_reproduces_all_equations() {
        let scalars = verify_derivation_chain().expect("all fourteen links hold");
        assert_eq!(scalars.len(), 14);
        // Phases are honest eighth roots: h1 twists E2 by zeta^6.
        let h1_link = scalars.iter().find(|(t, _)| *t == 2).unwrap();
        assert_eq!(h1_link.1 % 2, 0, "squared coordinates give even phases");
    }

    #[test]
    fn even_constants_transform_along_the_table() {
        let mut rng = ChaCha8Rng::seed_from_u64(59);
        for _ in 0..2 {
            let om = sample::random_omega(&mut rng);
            let a = even_constants(&om, &POL).unwrap();
            for (gen, act) in GENERATORS.iter().zip(ACTIONS.iter()) {
                let om_im = gen.omega_action(&om).unwrap();
                let a_im = even_constants(&om_im, &POL).unwrap();
                let predicted = act.on_a.apply_complex(&a);
                let d = projective_distance(&a_im, &predicted);
                assert!(
                    d < 1e-7,
                    "{}: A-vector deviates by {d:e} from the table",
                    gen.name
                );
            }
        }
    }

    #[test]
    fn odd_coords_transform_along_the_table() {
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        let om = sample::random_omega(&mut rng);
        let z = sample::random_z(&mut rng);
        let x = odd_coords(z, &om, &POL).unwrap();
        for (gen, act) in GENERATORS.iter().zip(ACTIONS.iter()) {
            let om_im = gen.omega_action(&om).unwrap();
            let z_im = gen.z_action(z, &om).unwrap();
            let x_im = odd_coords(z_im, &om_im, &POL).unwrap();
            let predicted = act.on_x.apply_complex(&x);
            let d = projective_distance(&x_im, &predicted);
            assert!(
                d < 1e-7,
                "{}: X-vector deviates by {d:e} from the table",
                gen.name
            );
        }
    }

    #[test]
    fn fp_application_needs_the_right_roots() {
        let act = action_by_name("h1").unwrap();
        // Odd phases require p = 1 mod 8; 19 is not.
        let v19: [Fp; 10] = std::array::from_fn(|i| Fp::new(i as u64 + 1, 19));
        assert!(matches!(
            act.on_a.apply_fp(&v19),
            Err(Error::MissingRootOfUnity { .. })
        ));
        // 17 = 1 mod 8 works, and the result is a genuine permutation with
        // unit twists.
        let v17: [Fp; 10] = std::array::from_fn(|i| Fp::new(i as u64 + 1, 17));
        let w = act.on_a.apply_fp(&v17).unwrap();
        for i in 0..10 {
            let z = w[act.on_a.perm[i]];
            let r = z * v17[i].inv().unwrap();
            assert_eq!(r.pow(8).value(), 1, "twist is an eighth root of unity");
        }
        // Sign-only actions work over any odd prime.
        let g2 = action_by_name("g2").unwrap();
        assert!(g2.on_a.apply_fp(&v19).is_ok());
    }

    #[test]
    fn composition_matches_sequential_substitution() {
        let g1 = action_by_name("g1").unwrap().on_x;
        let h2 = action_by_name("h2").unwrap().on_x;
        let both = g1.compose(&h2);
        let mut v = [Complex64::ZERO; 6];
        for (i, slot) in v.iter_mut().enumerate() {
            *slot = Complex64::new(1.0 + i as f64, 0.5 - i as f64);
        }
        let seq = g1.apply_complex(&h2.apply_complex(&v));
        let direct = both.apply_complex(&v);
        for i in 0..6 {
            assert!((seq[i] - direct[i]).norm() < 1e-12);
        }
    }
}
