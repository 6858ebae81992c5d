//! Field abstraction shared by the complex and finite-field backends.
//!
//! Everything downstream of the theta constants (Veronese forms, quadric
//! equations, hyperplanes, lines) is polynomial algebra that makes sense over
//! any field.  [`Scalar`] is the minimal interface those routines need:
//! arithmetic, optional inverse and square root, a zero test, and a pivot
//! magnitude for echelon-form pivoting.  `Complex64` implements it with
//! floating point semantics, [`Fp`] with exact arithmetic.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::{Error, Result};

/// Element of a field, copyable and with enough structure for linear algebra.
///
/// Constants are built through an existing element (`self.of_i64(3)`) so that
/// runtime-modulus fields know which modulus to use.
pub trait Scalar:
    Copy
    + PartialEq
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// The integer `n` as an element of the same field as `self`.
    fn of_i64(self, n: i64) -> Self;

    /// Multiplicative inverse, `None` for zero.
    fn inv(self) -> Option<Self>;

    /// A square root if one exists in the field.  For `Complex64` this is the
    /// principal branch; for `Fp` the smaller of the two roots, or `None` on
    /// a non-residue.
    fn sqrt(self) -> Option<Self>;

    /// Exact zero test.  Floating point comparisons against tolerances are
    /// made explicitly by callers; this is `== 0`.
    fn is_zero(self) -> bool;

    /// Magnitude used for pivot selection and rank decisions.  Exact fields
    /// return 0.0 or 1.0, so any relative threshold below one reproduces
    /// exact rank computation.
    fn pivot_size(self) -> f64;

    fn zero_like(self) -> Self {
        self.of_i64(0)
    }

    fn one_like(self) -> Self {
        self.of_i64(1)
    }
}

impl Scalar for Complex64 {
    fn of_i64(self, n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }

    fn inv(self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.finv())
        }
    }

    fn sqrt(self) -> Option<Self> {
        Some(Complex64::sqrt(self))
    }

    fn is_zero(self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    fn pivot_size(self) -> f64 {
        self.norm()
    }
}

/// Element of the prime field `F_p`, carrying its modulus.
///
/// The modulus rides along with each value so that code generic over
/// [`Scalar`] can construct constants without a separate context object.
/// Arithmetic between elements of different fields is a bug and panics in
/// debug builds.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    v: u64,
    p: u64,
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.v, self.p)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Fp {
    /// The residue of `v` modulo the odd prime `p`.
    pub fn new(v: u64, p: u64) -> Self {
        debug_assert!(p >= 3, "modulus must be an odd prime");
        Fp { v: v % p, p }
    }

    /// The residue of a signed integer.
    pub fn from_i64(n: i64, p: u64) -> Self {
        let r = n.rem_euclid(p as i64) as u64;
        Fp { v: r, p }
    }

    pub fn value(self) -> u64 {
        self.v
    }

    pub fn modulus(self) -> u64 {
        self.p
    }

    /// Representative in `(-p/2, p/2]`, convenient for printing small
    /// coefficients as negative numbers.
    pub fn centered(self) -> i64 {
        if self.v > self.p / 2 {
            self.v as i64 - self.p as i64
        } else {
            self.v as i64
        }
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp { v: 1, p: self.p };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Legendre symbol: 1 for nonzero squares, -1 for non-squares, 0 for 0.
    pub fn legendre(self) -> i32 {
        if self.v == 0 {
            return 0;
        }
        let e = self.pow((self.p - 1) / 2);
        if e.v == 1 {
            1
        } else {
            -1
        }
    }

    /// Smallest quadratic non-residue modulo `p`, found by scanning upward
    /// from 2.  Deterministic for a fixed prime.
    pub fn smallest_non_residue(p: u64) -> Self {
        for n in 2..p {
            let c = Fp::new(n, p);
            if c.legendre() == -1 {
                return c;
            }
        }
        unreachable!("every odd prime has a non-residue below p")
    }

    /// Square root by Tonelli-Shanks, returning the smaller of the two roots.
    /// Deterministic for a fixed prime because the auxiliary non-residue is
    /// the smallest one.
    pub fn sqrt_exact(self) -> Result<Self> {
        match Scalar::sqrt(self) {
            Some(r) => Ok(r),
            None => Err(Error::NoSquareRoot {
                value: self.v,
                p: self.p,
            }),
        }
    }

    /// A primitive `order`-th root of unity, when the multiplicative group
    /// has one (`order` dividing `p - 1`).
    pub fn root_of_unity(p: u64, order: u32) -> Result<Self> {
        let n = order as u64;
        if (p - 1) % n != 0 {
            return Err(Error::MissingRootOfUnity { p, order });
        }
        // Any generator works; scan for the first element whose
        // ((p-1)/n)-th power has exact order n.
        for g in 2..p {
            let z = Fp::new(g, p).pow((p - 1) / n);
            let mut ok = z.v != 1;
            let mut w = z;
            for _ in 1..order {
                if w.v == 1 {
                    ok = false;
                    break;
                }
                w = w * z;
            }
            if ok && w.v == 1 {
                return Ok(z);
            }
        }
        Err(Error::MissingRootOfUnity { p, order })
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.p, rhs.p, "mixed moduli");
        let s = self.v + rhs.v;
        Fp {
            v: if s >= self.p { s - self.p } else { s },
            p: self.p,
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.p, rhs.p, "mixed moduli");
        let s = self.v + self.p - rhs.v;
        Fp {
            v: if s >= self.p { s - self.p } else { s },
            p: self.p,
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.p, rhs.p, "mixed moduli");
        Fp {
            v: ((self.v as u128 * rhs.v as u128) % self.p as u128) as u64,
            p: self.p,
        }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp {
            v: if self.v == 0 { 0 } else { self.p - self.v },
            p: self.p,
        }
    }
}

impl Scalar for Fp {
    fn of_i64(self, n: i64) -> Self {
        Fp::from_i64(n, self.p)
    }

    fn inv(self) -> Option<Self> {
        if self.v == 0 {
            None
        } else {
            // p is prime, so a^(p-2) inverts.
            Some(self.pow(self.p - 2))
        }
    }

    fn sqrt(self) -> Option<Self> {
        let p = self.p;
        if self.v == 0 {
            return Some(self);
        }
        if self.legendre() != 1 {
            return None;
        }
        let r = if p % 4 == 3 {
            self.pow((p + 1) / 4)
        } else {
            tonelli_shanks(self)
        };
        debug_assert_eq!((r * r).v, self.v, "square root postcondition");
        Some(Fp {
            v: r.v.min(p - r.v),
            p,
        })
    }

    fn is_zero(self) -> bool {
        self.v == 0
    }

    fn pivot_size(self) -> f64 {
        if self.v == 0 {
            0.0
        } else {
            1.0
        }
    }
}

/// Tonelli-Shanks for `p = 1 (mod 4)`; the caller has already checked that
/// `a` is a nonzero residue.
fn tonelli_shanks(a: Fp) -> Fp {
    let p = a.p;
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = Fp::smallest_non_residue(p);
    let mut m = s;
    let mut c = z.pow(q);
    let mut t = a.pow(q);
    let mut r = a.pow((q + 1) / 2);
    while t.v != 1 {
        // Order of t is 2^i with 0 < i < m.
        let mut i = 0u32;
        let mut t2 = t;
        while t2.v != 1 {
            t2 = t2 * t2;
            i += 1;
        }
        let mut b = c;
        for _ in 0..(m - i - 1) {
            b = b * b;
        }
        m = i;
        c = b * b;
        t = t * c;
        r = r * b;
    }
    r
}
