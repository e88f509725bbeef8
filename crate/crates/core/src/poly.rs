//! Dense univariate polynomials over a [`Field`], coefficients in ascending
//! order with no trailing zeros. The zero polynomial is the empty vector.
//!
//! Only what Cantor's algorithm and divisor bookkeeping need: ring ops,
//! euclidean division, (extended) gcd, evaluation, derivative.

use std::fmt;

use crate::field::Field;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<F: Field> {
    cs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn zero() -> Self {
        Poly { cs: Vec::new() }
    }

    /// Builds from ascending coefficients, trimming trailing zeros.
    pub fn new(mut cs: Vec<F>) -> Self {
        while cs.last().is_some_and(|c| c.is_zero()) {
            cs.pop();
        }
        Poly { cs }
    }

    pub fn constant(c: F) -> Self {
        Poly::new(vec![c])
    }

    /// The monic linear polynomial `X - a`.
    pub fn x_minus(a: F) -> Self {
        Poly { cs: vec![-a, a.one_like()] }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.cs
    }

    /// Coefficient of X^i, with an explicit zero for indices past the degree
    /// (the context argument supplies the field).
    pub fn coeff(&self, i: usize, zero: F) -> F {
        debug_assert!(zero.is_zero());
        self.cs.get(i).copied().unwrap_or(zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.cs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.cs.is_empty()
    }

    pub fn leading(&self) -> Option<F> {
        self.cs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.cs.len().max(rhs.cs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let c = match (self.cs.get(i), rhs.cs.get(i)) {
                (Some(a), Some(b)) => *a + *b,
                (Some(a), None) => *a,
                (None, Some(b)) => *b,
                (None, None) => unreachable!(),
            };
            out.push(c);
        }
        Poly::new(out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Poly {
            cs: self.cs.iter().map(|c| -*c).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let zero = self.cs[0].zero_like();
        let mut out = vec![zero; self.cs.len() + rhs.cs.len() - 1];
        for (i, a) in self.cs.iter().enumerate() {
            for (j, b) in rhs.cs.iter().enumerate() {
                out[i + j] = out[i + j] + *a * *b;
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, k: F) -> Self {
        Poly::new(self.cs.iter().map(|c| *c * k).collect())
    }

    /// Divides by the leading coefficient. Panics on the zero polynomial.
    pub fn monic(&self) -> Self {
        let lead = self.leading().expect("monic() of zero polynomial");
        self.scale(lead.try_inv().expect("unit leading coefficient"))
    }

    /// Euclidean division: `self = q·d + r` with `deg r < deg d`.
    /// Panics when dividing by zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dl = d.leading().expect("polynomial division by zero");
        let dinv = dl.try_inv().expect("division by zero leading coefficient");
        if self.cs.len() < d.cs.len() {
            return (Poly::zero(), self.clone());
        }
        let zero = dl.zero_like();
        let mut rem = self.cs.clone();
        let mut q = vec![zero; self.cs.len() - d.cs.len() + 1];
        while rem.len() >= d.cs.len() {
            let k = rem.len() - d.cs.len();
            let c = *rem.last().unwrap() * dinv;
            q[k] = c;
            for (i, dc) in d.cs.iter().enumerate() {
                rem[k + i] = rem[k + i] - c * *dc;
            }
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
            if rem.is_empty() {
                break;
            }
        }
        (Poly::new(q), Poly::new(rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, rhs: &Self) -> Self {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Extended gcd: returns monic `(g, s, t)` with `g = s·self + t·rhs`.
    pub fn xgcd(&self, rhs: &Self) -> (Self, Self, Self) {
        let one = match self.cs.first().or(rhs.cs.first()) {
            Some(c) => c.one_like(),
            None => return (Poly::zero(), Poly::zero(), Poly::zero()),
        };
        let (mut r0, mut r1) = (self.clone(), rhs.clone());
        let (mut s0, mut s1) = (Poly::constant(one), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::constant(one));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            (r0, r1) = (r1, r);
            (s0, s1) = (s1.clone(), s0.sub(&q.mul(&s1)));
            (t0, t1) = (t1.clone(), t0.sub(&q.mul(&t1)));
        }
        if let Some(lead) = r0.leading() {
            let li = lead.try_inv().unwrap();
            r0 = r0.scale(li);
            s0 = s0.scale(li);
            t0 = t0.scale(li);
        }
        (r0, s0, t0)
    }

    pub fn eval(&self, x: F) -> F {
        let mut acc = x.zero_like();
        for c in self.cs.iter().rev() {
            acc = acc * x + *c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.cs.len() <= 1 {
            return Poly::zero();
        }
        let one = self.cs[0].one_like();
        let mut out = Vec::with_capacity(self.cs.len() - 1);
        let mut k = one.zero_like();
        for c in self.cs.iter().skip(1) {
            k = k + one;
            out.push(*c * k);
        }
        Poly::new(out)
    }

    /// Maps coefficients into another field (e.g. `F_p -> F_p²`).
    pub fn map<G: Field>(&self, f: impl Fn(F) -> G) -> Poly<G> {
        Poly::new(self.cs.iter().map(|c| f(*c)).collect())
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.cs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "X")?,
                1 => write!(f, "{c}*X")?,
                _ if c.is_one() => write!(f, "X^{i}")?,
                _ => write!(f, "{c}*X^{i}")?,
            }
        }
        Ok(())
    }
}
