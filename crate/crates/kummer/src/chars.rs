//! Half-integer theta characteristics in genus one and two.
//!
//! A genus-two characteristic is a pair of row vectors `a, b` in `(1/2)Z^2`,
//! stored here as four bits `(i, j, k, l)` with `a = (i/2, j/2)` and
//! `b = (k/2, l/2)`.  Its parity is `(ik + jl) mod 2`: even characteristics
//! give the ten theta constants `A_1..A_10`, odd ones the six fourth-order
//! coordinates `X_1..X_6`.  The sixteen characteristics are numbered 1..16,
//! evens first in the `A` order, odds after in the `X` order, and the same
//! numbers label the sixteen two-torsion points `(1/2)Omega (i, j) + (1/2)(k, l)`
//! of the abelian surface.  Under that identification the group law on
//! two-torsion is bitwise XOR.

/// Genus-two half-integer characteristic, four bits `(i, j, k, l)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Char2 {
    /// Doubled entries of `(a, b)`: `bits = (2a_1, 2a_2, 2b_1, 2b_2)`.
    pub bits: [u8; 4],
}

impl Char2 {
    pub fn new(i: u8, j: u8, k: u8, l: u8) -> Self {
        debug_assert!(i < 2 && j < 2 && k < 2 && l < 2);
        Char2 { bits: [i, j, k, l] }
    }

    /// The `a` part as real numbers `(i/2, j/2)`.
    pub fn a(self) -> [f64; 2] {
        [self.bits[0] as f64 / 2.0, self.bits[1] as f64 / 2.0]
    }

    /// The `b` part as real numbers `(k/2, l/2)`.
    pub fn b(self) -> [f64; 2] {
        [self.bits[2] as f64 / 2.0, self.bits[3] as f64 / 2.0]
    }

    /// Parity bit `(ik + jl) mod 2`; 0 is even, 1 is odd.
    pub fn parity(self) -> u8 {
        (self.bits[0] * self.bits[2] + self.bits[1] * self.bits[3]) % 2
    }

    pub fn is_even(self) -> bool {
        self.parity() == 0
    }

    /// Group law on characteristics mod 1, i.e. on two-torsion points.
    pub fn xor(self, other: Char2) -> Char2 {
        Char2 {
            bits: [
                self.bits[0] ^ other.bits[0],
                self.bits[1] ^ other.bits[1],
                self.bits[2] ^ other.bits[2],
                self.bits[3] ^ other.bits[3],
            ],
        }
    }

    /// Label in 1..=16 (see [`LABELS`]).
    pub fn label(self) -> usize {
        LABELS
            .iter()
            .position(|&c| c == self)
            .expect("all sixteen characteristics are labeled")
            + 1
    }

    /// Characteristic with the given label in 1..=16.
    pub fn from_label(label: usize) -> Char2 {
        assert!((1..=16).contains(&label), "labels run from 1 to 16");
        LABELS[label - 1]
    }
}

/// The sixteen characteristics in label order.
///
/// Labels 1..=10 are the even characteristics in the order of the theta
/// constants `A_1..A_10`; labels 11..=16 are the odd ones in the order of the
/// coordinates `X_1..X_6`.
pub const LABELS: [Char2; 16] = [
    Char2 { bits: [0, 0, 0, 0] }, // 1  = A1
    Char2 { bits: [0, 0, 0, 1] }, // 2  = A2
    Char2 { bits: [0, 0, 1, 0] }, // 3  = A3
    Char2 { bits: [0, 0, 1, 1] }, // 4  = A4
    Char2 { bits: [0, 1, 0, 0] }, // 5  = A5
    Char2 { bits: [1, 0, 0, 0] }, // 6  = A6
    Char2 { bits: [1, 1, 0, 0] }, // 7  = A7
    Char2 { bits: [0, 1, 1, 0] }, // 8  = A8
    Char2 { bits: [1, 0, 0, 1] }, // 9  = A9
    Char2 { bits: [1, 1, 1, 1] }, // 10 = A10
    Char2 { bits: [0, 1, 0, 1] }, // 11 = X1
    Char2 { bits: [0, 1, 1, 1] }, // 12 = X2
    Char2 { bits: [1, 1, 0, 1] }, // 13 = X3
    Char2 { bits: [1, 0, 1, 0] }, // 14 = X4
    Char2 { bits: [1, 0, 1, 1] }, // 15 = X5
    Char2 { bits: [1, 1, 1, 0] }, // 16 = X6
];

/// Even characteristics in `A_1..A_10` order.
pub fn even_chars() -> [Char2; 10] {
    let mut out = [LABELS[0]; 10];
    out.copy_from_slice(&LABELS[..10]);
    out
}

/// Odd characteristics in `X_1..X_6` order.
pub fn odd_chars() -> [Char2; 6] {
    let mut out = [LABELS[10]; 6];
    out.copy_from_slice(&LABELS[10..]);
    out
}

/// Genus-one half-integer characteristic, two bits.
///
/// The classical names are `theta_00 = [0; 0]`, `theta_01 = [0; 1/2]`,
/// `theta_10 = [1/2; 0]`, `theta_11 = [1/2; 1/2]`; only `theta_11` is odd.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Char1 {
    /// Doubled entries `(2a, 2b)`.
    pub bits: [u8; 2],
}

impl Char1 {
    pub fn new(i: u8, k: u8) -> Self {
        debug_assert!(i < 2 && k < 2);
        Char1 { bits: [i, k] }
    }

    pub fn a(self) -> f64 {
        self.bits[0] as f64 / 2.0
    }

    pub fn b(self) -> f64 {
        self.bits[1] as f64 / 2.0
    }

    pub fn parity(self) -> u8 {
        (self.bits[0] * self.bits[1]) % 2
    }
}

/// The four genus-one characteristics as `(theta_00, theta_01, theta_10, theta_11)`.
pub const CHARS1: [Char1; 4] = [
    Char1 { bits: [0, 0] },
    Char1 { bits: [0, 1] },
    Char1 { bits: [1, 0] },
    Char1 { bits: [1, 1] },
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ten_even_six_odd() {
        let evens: Vec<_> = LABELS.iter().filter(|c| c.is_even()).collect();
        let odds: Vec<_> = LABELS.iter().filter(|c| !c.is_even()).collect();
        assert_eq!(evens.len(), 10, "ten even characteristics");
        assert_eq!(odds.len(), 6, "six odd characteristics");
        // Labels list evens first, odds after.
        for (i, c) in LABELS.iter().enumerate() {
            assert_eq!(c.is_even(), i < 10, "label {} parity block", i + 1);
        }
    }

    #[test]
    fn labels_are_a_bijection() {
        for l in 1..=16 {
            assert_eq!(Char2::from_label(l).label(), l);
        }
        // All sixteen bit patterns appear.
        let mut seen = [false; 16];
        for c in LABELS {
            let idx = (c.bits[0] * 8 + c.bits[1] * 4 + c.bits[2] * 2 + c.bits[3]) as usize;
            assert!(!seen[idx], "duplicate characteristic {:?}", c);
            seen[idx] = true;
        }
    }

    #[test]
    fn xor_is_the_group_law() {
        let a = Char2::new(0, 1, 1, 0);
        let b = Char2::new(1, 1, 0, 1);
        assert_eq!(a.xor(b), Char2::new(1, 0, 1, 1));
        assert_eq!(a.xor(a), Char2::new(0, 0, 0, 0), "every element is 2-torsion");
        for c in LABELS {
            assert_eq!(c.xor(Char2::new(0, 0, 0, 0)), c, "identity acts trivially");
        }
    }

    #[test]
    fn genus_one_parities() {
        assert_eq!(CHARS1[0].parity(), 0);
        assert_eq!(CHARS1[1].parity(), 0);
        assert_eq!(CHARS1[2].parity(), 0);
        assert_eq!(CHARS1[3].parity(), 1, "theta_11 is the odd one");
    }
}
