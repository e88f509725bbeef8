//! Exact arithmetic in `F_p` (p an odd prime below 2^20) and in the quadratic
//! extension `F_p² = F_p(τ)` with `τ² = ν` for the smallest non-residue ν.
//!
//! Elements carry their modulus, so values from different fields cannot be
//! mixed silently: the binary operators panic on a modulus mismatch. All
//! products are routed through `u64` intermediates; with p < 2^20 nothing
//! can overflow.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Upper bound (exclusive) for the field characteristic.
///
/// Keeps point enumeration O(p), the Jacobian order around p² factorable by
/// trial division, and every product inside `u64`.
pub const MAX_PRIME: u64 = 1 << 20;

/// A validated odd prime modulus, `3 <= p < 2^20`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Prime(u32);

impl Prime {
    /// Validates primality by trial division (deterministic at this size).
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 {
            return Err(Error::InvalidPrime(p, "must be at least 3"));
        }
        if p >= MAX_PRIME {
            return Err(Error::InvalidPrime(p, "must be below 2^20"));
        }
        if p.is_multiple_of(2) {
            return Err(Error::InvalidPrime(p, "must be odd"));
        }
        let mut d = 3u64;
        while d * d <= p {
            if p.is_multiple_of(d) {
                return Err(Error::InvalidPrime(p, "not prime"));
            }
            d += 2;
        }
        Ok(Prime(p as u32))
    }

    pub fn get(self) -> u64 {
        self.0 as u64
    }

    /// The canonical element constructor for this modulus.
    pub fn elem(self, v: u64) -> Fp {
        Fp::new(self, v)
    }

    /// Smallest quadratic non-residue >= 2; the extension generator satisfies
    /// `τ² = ν`. Deterministic, so extension arithmetic is reproducible.
    pub fn nonresidue(self) -> Fp {
        for a in 2..self.get() {
            let x = self.elem(a);
            if x.legendre() == -1 {
                return x;
            }
        }
        unreachable!("every odd prime field has a non-residue");
    }
}

impl TryFrom<u64> for Prime {
    type Error = Error;
    fn try_from(p: u64) -> Result<Self> {
        Prime::new(p)
    }
}

impl From<Prime> for u64 {
    fn from(p: Prime) -> u64 {
        p.get()
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Common interface of `F_p` and `F_p²`, enough for generic polynomial
/// arithmetic and Tonelli–Shanks.
pub trait Field:
    Copy
    + Eq
    + fmt::Debug
    + fmt::Display
    + std::hash::Hash
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Zero of the same field as `self`.
    fn zero_like(&self) -> Self;
    /// One of the same field as `self`.
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// Multiplicative inverse; `None` for zero.
    fn try_inv(&self) -> Option<Self>;
    /// Number of elements of the field this value lives in.
    fn field_order(&self) -> u64;

    fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }
}

/// A residue in `F_p`, stored as the canonical representative in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    v: u32,
    p: u32,
}

impl Fp {
    pub fn new(p: Prime, v: u64) -> Self {
        Fp {
            v: (v % p.get()) as u32,
            p: p.0,
        }
    }

    /// Reduces a possibly negative integer.
    pub fn from_i64(p: Prime, v: i64) -> Self {
        let m = p.get() as i64;
        Fp {
            v: (v.rem_euclid(m)) as u32,
            p: p.0,
        }
    }

    pub fn zero(p: Prime) -> Self {
        Fp { v: 0, p: p.0 }
    }

    pub fn one(p: Prime) -> Self {
        Fp { v: 1, p: p.0 }
    }

    pub fn value(self) -> u64 {
        self.v as u64
    }

    pub fn modulus(self) -> u64 {
        self.p as u64
    }

    pub fn prime(self) -> Prime {
        Prime(self.p)
    }

    /// Doubles as the structural-mismatch check for every binary operation.
    #[inline]
    fn check(self, rhs: Fp) -> u64 {
        assert_eq!(self.p, rhs.p, "field elements from different moduli");
        self.p as u64
    }

    pub fn inv(self) -> Result<Fp> {
        self.try_inv().ok_or(Error::DivisionByZero)
    }

    /// Legendre symbol: 0 for zero, 1 for squares, -1 for non-squares.
    pub fn legendre(self) -> i32 {
        if self.v == 0 {
            return 0;
        }
        let e = (self.modulus() - 1) / 2;
        if Field::pow(&self, e).is_one() {
            1
        } else {
            -1
        }
    }

    /// Both square roots `(r, -r)` when they exist; `(0, 0)` for zero; `None`
    /// for non-residues. Tonelli–Shanks.
    pub fn sqrt(self) -> Option<(Fp, Fp)> {
        let r = tonelli_shanks(self, self.prime().nonresidue())?;
        Some((r, -r))
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        let p = self.check(rhs);
        let s = self.value() + rhs.value();
        Fp {
            v: (if s >= p { s - p } else { s }) as u32,
            p: self.p,
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        let p = self.check(rhs);
        let s = self.value() + p - rhs.value();
        Fp {
            v: (if s >= p { s - p } else { s }) as u32,
            p: self.p,
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        let p = self.check(rhs);
        Fp {
            v: (self.value() * rhs.value() % p) as u32,
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

impl Field for Fp {
    fn zero_like(&self) -> Self {
        Fp { v: 0, p: self.p }
    }

    fn one_like(&self) -> Self {
        Fp { v: 1, p: self.p }
    }

    fn is_zero(&self) -> bool {
        self.v == 0
    }

    fn try_inv(&self) -> Option<Self> {
        if self.v == 0 {
            return None;
        }
        // Fermat: p is prime, so x^(p-2) inverts x.
        Some(Field::pow(self, self.modulus() - 2))
    }

    fn field_order(&self) -> u64 {
        self.modulus()
    }
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

/// An element `a0 + a1·τ` of `F_p²` with `τ² = ν`.
///
/// The Frobenius map `x -> x^p` fixes `F_p` and sends `τ` to `-τ` (because ν
/// is a non-residue), so it coincides with conjugation.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp2 {
    c0: Fp,
    c1: Fp,
    nu: Fp,
}

impl Fp2 {
    /// Builds `c0 + c1·τ`. The non-residue is re-derived from the prime, so
    /// every `Fp2` over the same p shares the same ν.
    pub fn new(c0: Fp, c1: Fp) -> Self {
        assert_eq!(c0.modulus(), c1.modulus(), "mixed moduli in Fp2");
        Fp2 {
            c0,
            c1,
            nu: c0.prime().nonresidue(),
        }
    }

    pub fn from_base(x: Fp) -> Self {
        Fp2::new(x, x.zero_like())
    }

    pub fn zero(p: Prime) -> Self {
        Fp2::new(Fp::zero(p), Fp::zero(p))
    }

    pub fn one(p: Prime) -> Self {
        Fp2::new(Fp::one(p), Fp::zero(p))
    }

    /// The extension generator τ.
    pub fn tau(p: Prime) -> Self {
        Fp2::new(Fp::zero(p), Fp::one(p))
    }

    pub fn c0(self) -> Fp {
        self.c0
    }

    pub fn c1(self) -> Fp {
        self.c1
    }

    pub fn prime(self) -> Prime {
        self.c0.prime()
    }

    pub fn nu(self) -> Fp {
        self.nu
    }

    /// `Some(c0)` when the element lies in the base field.
    pub fn in_base(self) -> Option<Fp> {
        self.c1.is_zero().then_some(self.c0)
    }

    /// Frobenius `x -> x^p`, i.e. conjugation `a0 + a1τ -> a0 - a1τ`.
    pub fn frobenius(self) -> Self {
        Fp2 {
            c0: self.c0,
            c1: -self.c1,
            nu: self.nu,
        }
    }

    /// Norm to the base field: `x · σ(x) = a0² - ν·a1²`.
    pub fn norm(self) -> Fp {
        self.c0 * self.c0 - self.nu * self.c1 * self.c1
    }

    pub fn inv(self) -> Result<Self> {
        self.try_inv().ok_or(Error::DivisionByZero)
    }

    /// True for zero and for elements with square norm (Euler on the norm).
    pub fn is_square(self) -> bool {
        self.norm().legendre() >= 0
    }

    /// Both square roots when they exist, via generic Tonelli–Shanks over the
    /// order-p² multiplicative structure.
    pub fn sqrt(self) -> Option<(Fp2, Fp2)> {
        let r = tonelli_shanks(self, ext_nonresidue(self.prime()))?;
        Some((r, -r))
    }

    #[inline]
    fn check(self, rhs: Fp2) {
        assert_eq!(
            self.c0.modulus(),
            rhs.c0.modulus(),
            "Fp2 elements from different moduli"
        );
    }
}

/// Deterministic non-residue in `F_p²`: the first of τ, 1+τ, 2+τ, … that
/// fails Euler's criterion.
fn ext_nonresidue(p: Prime) -> Fp2 {
    let e = (p.get() * p.get() - 1) / 2;
    for k in 0..p.get() {
        let cand = Fp2::new(p.elem(k), Fp::one(p));
        if !cand.is_zero() && !Field::pow(&cand, e).is_one() {
            return cand;
        }
    }
    unreachable!("F_p^2 has non-residues");
}

impl Add for Fp2 {
    type Output = Fp2;
    fn add(self, rhs: Fp2) -> Fp2 {
        self.check(rhs);
        Fp2 {
            c0: self.c0 + rhs.c0,
            c1: self.c1 + rhs.c1,
            nu: self.nu,
        }
    }
}

impl Sub for Fp2 {
    type Output = Fp2;
    fn sub(self, rhs: Fp2) -> Fp2 {
        self.check(rhs);
        Fp2 {
            c0: self.c0 - rhs.c0,
            c1: self.c1 - rhs.c1,
            nu: self.nu,
        }
    }
}

impl Mul for Fp2 {
    type Output = Fp2;
    fn mul(self, rhs: Fp2) -> Fp2 {
        self.check(rhs);
        // (a0 + a1τ)(b0 + b1τ) = a0b0 + ν a1b1 + (a0b1 + a1b0)τ
        Fp2 {
            c0: self.c0 * rhs.c0 + self.nu * self.c1 * rhs.c1,
            c1: self.c0 * rhs.c1 + self.c1 * rhs.c0,
            nu: self.nu,
        }
    }
}

impl Neg for Fp2 {
    type Output = Fp2;
    fn neg(self) -> Fp2 {
        Fp2 {
            c0: -self.c0,
            c1: -self.c1,
            nu: self.nu,
        }
    }
}

impl Field for Fp2 {
    fn zero_like(&self) -> Self {
        Fp2 {
            c0: self.c0.zero_like(),
            c1: self.c0.zero_like(),
            nu: self.nu,
        }
    }

    fn one_like(&self) -> Self {
        Fp2 {
            c0: self.c0.one_like(),
            c1: self.c0.zero_like(),
            nu: self.nu,
        }
    }

    fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }

    fn try_inv(&self) -> Option<Self> {
        let n = self.norm().try_inv()?;
        Some(Fp2 {
            c0: self.c0 * n,
            c1: -self.c1 * n,
            nu: self.nu,
        })
    }

    fn field_order(&self) -> u64 {
        self.c0.modulus() * self.c0.modulus()
    }
}

impl fmt::Debug for Fp2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}t (mod {})", self.c0, self.c1, self.c0.modulus())
    }
}

impl fmt::Display for Fp2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c1.is_zero() {
            write!(f, "{}", self.c0)
        } else {
            write!(f, "{} + {}t", self.c0, self.c1)
        }
    }
}

/// Tonelli–Shanks square root in any odd-order finite field, given a fixed
/// non-residue of that field.
fn tonelli_shanks<F: Field>(a: F, nonresidue: F) -> Option<F> {
    if a.is_zero() {
        return Some(a);
    }
    let m = a.field_order();
    if !a.pow((m - 1) / 2).is_one() {
        return None;
    }
    let mut d = m - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mut c = nonresidue.pow(d);
    let mut r = a.pow(d.div_ceil(2));
    let mut t = a.pow(d);
    let mut level = s;
    while !t.is_one() {
        // least i with t^(2^i) = 1
        let mut i = 0u32;
        let mut probe = t;
        while !probe.is_one() {
            probe = probe * probe;
            i += 1;
        }
        let mut b = c;
        for _ in 0..level - i - 1 {
            b = b * b;
        }
        r = r * b;
        c = b * b;
        t = t * c;
        level = i;
    }
    debug_assert!(r * r == a);
    Some(r)
}
