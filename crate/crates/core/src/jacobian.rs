//! The group `J_C(F_p)` in Mumford representation.
//!
//! A divisor class is a pair `[u, v]` with `u` monic, `u | f - v²`, and
//! `deg v < deg u <= 2`; the identity is `[1, 0]`. Addition is Cantor's
//! algorithm in full generality (gcd composition followed by reduction).
//! The group order comes from the point counts through the genus-2 zeta
//! relation, and an exhaustive enumeration over tiny fields serves as the
//! oracle for both the order and the group axioms.

use serde::{Deserialize, Serialize};

use crate::curve::{Curve, Point};
use crate::field::{Field, Fp, Fp2};
use crate::poly::Poly;
use crate::{Error, Result};

/// Exhaustive Jacobian enumeration scans p⁴ candidate pairs; refuse beyond this.
pub const MAX_ENUM_PRIME: u64 = 13;

/// A reduced divisor class in Mumford form, tied to its curve.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MumfordDivisor {
    curve: Curve,
    u: Poly<Fp>,
    v: Poly<Fp>,
}

/// Support of a reduced divisor: the points `ψ(D) = Σ P_i - r·∞`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DivisorSupport {
    /// The identity class, `ψ(D) = 0`.
    Identity,
    /// `P - ∞` with `P` rational.
    Single(Point<Fp>),
    /// `P1 + P2 - 2∞` with distinct x-coordinates, both rational.
    SplitPair(Point<Fp>, Point<Fp>),
    /// `2P - 2∞` (necessarily `y ≠ 0`).
    Doubled(Point<Fp>),
    /// `P + σP - 2∞` with `P` quadratic; stores the representative with
    /// canonical τ-component.
    ConjugatePair(Point<Fp2>),
}

/// Group order and its factorization (trial division; fine below 2^40).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupInfo {
    pub order: u64,
    /// `(prime, exponent)` pairs, ascending.
    pub factorization: Vec<(u64, u32)>,
}

impl MumfordDivisor {
    /// Validates the Mumford conditions: u monic, `u | f - v²`,
    /// `deg v < deg u <= 2` (with `v = 0` when `u = 1`).
    pub fn new(curve: Curve, u: Poly<Fp>, v: Poly<Fp>) -> Result<Self> {
        if u.is_zero() {
            return Err(Error::InvalidDivisor("u must be nonzero".into()));
        }
        if !u.is_monic() {
            return Err(Error::InvalidDivisor(format!("u = {u} is not monic")));
        }
        let du = u.degree().unwrap();
        if du > 2 {
            return Err(Error::InvalidDivisor(format!(
                "deg u = {du} exceeds genus 2"
            )));
        }
        if let Some(dv) = v.degree() {
            if dv >= du {
                return Err(Error::InvalidDivisor(format!(
                    "deg v = {dv} not below deg u = {du}"
                )));
            }
        }
        let fv = curve.f().sub(&v.mul(&v));
        if !fv.rem(&u).is_zero() {
            return Err(Error::InvalidDivisor(format!(
                "u = {u} does not divide f - v² for v = {v}"
            )));
        }
        Ok(MumfordDivisor { curve, u, v })
    }

    /// The identity class `[1, 0]`.
    pub fn identity(curve: Curve) -> Self {
        MumfordDivisor {
            u: Poly::constant(Fp::one(curve.prime())),
            v: Poly::zero(),
            curve,
        }
    }

    /// Builds the class of `P1 (+ P2) - (1|2)·∞` from rational points.
    ///
    /// Rejects the non-reduced configurations: a pair `P, -P` with `P ≠ -P`,
    /// and a doubled point with `y = 0` (2-torsion can only appear once).
    pub fn from_points(curve: Curve, p1: Point<Fp>, p2: Option<Point<Fp>>) -> Result<Self> {
        if !curve.contains(&p1) {
            return Err(Error::InvalidDivisor("P1 is not on the curve".into()));
        }
        let Some(p2) = p2 else {
            return Self::new(curve, Poly::x_minus(p1.x), Poly::constant(p1.y));
        };
        if !curve.contains(&p2) {
            return Err(Error::InvalidDivisor("P2 is not on the curve".into()));
        }
        if p1.x == p2.x {
            if p1.y != p2.y {
                return Err(Error::NotReduced("P + (-P) is principal".into()));
            }
            if p1.y.is_zero() {
                return Err(Error::NotReduced(
                    "doubled 2-torsion point 2P with y = 0".into(),
                ));
            }
            // 2P - 2∞: u = (X - x)², v = y + f'(x)/(2y)·(X - x) reduced mod u
            let two = p1.y + p1.y;
            let lambda = curve.f_derivative_at(p1.x) * two.inv()?;
            let u = Poly::x_minus(p1.x).mul(&Poly::x_minus(p1.x));
            let v = Poly::new(vec![p1.y - lambda * p1.x, lambda]);
            return Self::new(curve, u, v);
        }
        // distinct x: u = (X - x1)(X - x2), v the chord through the points
        let u = Poly::x_minus(p1.x).mul(&Poly::x_minus(p2.x));
        let slope = (p1.y - p2.y) * (p1.x - p2.x).inv()?;
        let v = Poly::new(vec![p1.y - slope * p1.x, slope]);
        Self::new(curve, u, v)
    }

    /// Builds the class of `P + σP - 2∞` for a quadratic point; the second
    /// point is the Frobenius image, which makes the class `F_p`-rational.
    pub fn from_conjugate_pair(curve: Curve, p: Point<Fp2>) -> Result<Self> {
        if !curve.contains_ext(&p) {
            return Err(Error::InvalidDivisor("P is not on the curve".into()));
        }
        if p.x.in_base().is_some() {
            return Err(Error::InvalidDivisor(
                "conjugate pair requires x outside F_p".into(),
            ));
        }
        let q = Point::new(p.x.frobenius(), p.y.frobenius());
        // u = (X - x)(X - σx) and the interpolating v have F_p coefficients.
        let u1 = -(p.x + q.x);
        let u0 = p.x * q.x;
        let slope = (p.y - q.y) * (p.x - q.x).inv()?;
        let v1 = slope;
        let v0 = p.y - slope * p.x;
        let to_base = |c: Fp2, what: &str| {
            c.in_base()
                .ok_or_else(|| Error::InvalidDivisor(format!("{what} not Frobenius-stable")))
        };
        let u = Poly::new(vec![
            to_base(u0, "u0")?,
            to_base(u1, "u1")?,
            Fp::one(curve.prime()),
        ]);
        let v = Poly::new(vec![to_base(v0, "v0")?, to_base(v1, "v1")?]);
        Self::new(curve, u, v)
    }

    pub fn curve(&self) -> Curve {
        self.curve
    }

    pub fn u(&self) -> &Poly<Fp> {
        &self.u
    }

    pub fn v(&self) -> &Poly<Fp> {
        &self.v
    }

    pub fn deg_u(&self) -> usize {
        self.u.degree().unwrap_or(0)
    }

    pub fn is_identity(&self) -> bool {
        self.deg_u() == 0
    }

    /// Θ-locus membership: classes supported on at most one point, identity
    /// included, i.e. `deg u <= 1`. The complement `U = J \ Θ` is exactly the
    /// locus where the affine chart of the projective model applies.
    pub fn is_in_theta(&self) -> bool {
        self.deg_u() <= 1
    }

    /// `[u, -v mod u]`.
    pub fn negate(&self) -> Self {
        MumfordDivisor {
            curve: self.curve,
            u: self.u.clone(),
            v: self.v.neg().rem(&self.u),
        }
    }

    /// Cantor's algorithm: composition via the three-way Bézout identity
    /// `d = s1·u1 + s2·u2 + s3·(v1 + v2)`, then reduction
    /// `u' = (f - v²)/u` made monic, `v' = -v mod u'`, until `deg u <= 2`.
    ///
    /// Panics if the operands belong to different curves.
    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(
            self.curve, rhs.curve,
            "Cantor addition across different curves"
        );
        let f = self.curve.f();
        let (u1, v1) = (&self.u, &self.v);
        let (u2, v2) = (&rhs.u, &rhs.v);

        let (d1, e1, e2) = u1.xgcd(u2);
        let (d, c1, c2) = d1.xgcd(&v1.add(v2));
        let s1 = c1.mul(&e1);
        let s2 = c1.mul(&e2);
        let s3 = c2;

        let (mut u, r) = u1.mul(u2).div_rem(&d.mul(&d));
        debug_assert!(r.is_zero());
        let num = s1
            .mul(u1)
            .mul(v2)
            .add(&s2.mul(u2).mul(v1))
            .add(&s3.mul(&v1.mul(v2).add(&f)));
        let (vq, vr) = num.div_rem(&d);
        debug_assert!(vr.is_zero());
        let mut v = vq.rem(&u);

        while u.degree().unwrap_or(0) > 2 {
            let (unew, r) = f.sub(&v.mul(&v)).div_rem(&u);
            debug_assert!(r.is_zero());
            u = unew.monic();
            v = v.neg().rem(&u);
        }
        let u = u.monic();
        let v = v.rem(&u);
        MumfordDivisor {
            curve: self.curve,
            u,
            v,
        }
    }

    /// `n·D` by double-and-add; `0·D` is the identity.
    pub fn mul_scalar(&self, n: u64) -> Self {
        let mut acc = MumfordDivisor::identity(self.curve);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.add(&base);
            }
            base = base.add(&base);
            n >>= 1;
        }
        acc
    }

    /// Decomposes the support by factoring `u` over `F_p` / `F_p²`.
    pub fn support(&self) -> DivisorSupport {
        let p = self.curve.prime();
        match self.deg_u() {
            0 => DivisorSupport::Identity,
            1 => {
                let x = -self.u.coeff(0, Fp::zero(p));
                let y = self.v.eval(x);
                DivisorSupport::Single(Point::new(x, y))
            }
            _ => {
                let u1 = self.u.coeff(1, Fp::zero(p));
                let u0 = self.u.coeff(0, Fp::zero(p));
                let four = p.elem(4);
                let disc = u1 * u1 - four * u0;
                let half = p.elem(2).try_inv().unwrap();
                match disc.legendre() {
                    0 => {
                        let x = -u1 * half;
                        DivisorSupport::Doubled(Point::new(x, self.v.eval(x)))
                    }
                    1 => {
                        let (r, _) = disc.sqrt().unwrap();
                        let x1 = (-u1 + r) * half;
                        let x2 = (-u1 - r) * half;
                        DivisorSupport::SplitPair(
                            Point::new(x1, self.v.eval(x1)),
                            Point::new(x2, self.v.eval(x2)),
                        )
                    }
                    _ => {
                        // roots (-u1 ± √disc)/2 with √disc = w·τ, w = √(disc/ν)
                        let nu = p.nonresidue();
                        let (w, _) = (disc * nu.try_inv().unwrap()).sqrt().unwrap();
                        let x = Fp2::new(-u1 * half, w * half);
                        let y = self.v.map(Fp2::from_base).eval(x);
                        DivisorSupport::ConjugatePair(Point::new(x, y))
                    }
                }
            }
        }
    }

    /// JSON form `{"u": [...], "v": [...]}`, coefficients ascending with the
    /// monic leading coefficient included.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&DivisorJson::from(self)).expect("divisor serialization")
    }

    /// Deserializes against a curve (the JSON form does not embed one).
    pub fn from_json(curve: Curve, s: &str) -> Result<Self> {
        let dto: DivisorJson =
            serde_json::from_str(s).map_err(|e| Error::InvalidDivisor(format!("json: {e}")))?;
        let p = curve.prime();
        let u = Poly::new(dto.u.into_iter().map(|c| p.elem(c)).collect());
        let v = Poly::new(dto.v.into_iter().map(|c| p.elem(c)).collect());
        Self::new(curve, u, v)
    }
}

impl DivisorSupport {
    /// Rebuilds the divisor class; inverse of [`MumfordDivisor::support`].
    pub fn to_divisor(&self, curve: Curve) -> Result<MumfordDivisor> {
        match self {
            DivisorSupport::Identity => Ok(MumfordDivisor::identity(curve)),
            DivisorSupport::Single(p) => MumfordDivisor::from_points(curve, *p, None),
            DivisorSupport::SplitPair(p1, p2) => MumfordDivisor::from_points(curve, *p1, Some(*p2)),
            DivisorSupport::Doubled(p) => MumfordDivisor::from_points(curve, *p, Some(*p)),
            DivisorSupport::ConjugatePair(p) => MumfordDivisor::from_conjugate_pair(curve, *p),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct DivisorJson {
    u: Vec<u64>,
    v: Vec<u64>,
}

impl From<&MumfordDivisor> for DivisorJson {
    fn from(d: &MumfordDivisor) -> Self {
        DivisorJson {
            u: d.u.coeffs().iter().map(|c| c.value()).collect(),
            v: d.v.coeffs().iter().map(|c| c.value()).collect(),
        }
    }
}

impl std::fmt::Debug for MumfordDivisor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}]", self.u, self.v)
    }
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `|J_C(F_p)|` from the point counts through the genus-2 zeta relation:
/// with `a1 = n1 - p - 1` and `a2 = ((p+1-n1)² - (p²+1-n2))/2`, the order is
/// `1 + a1(1+p) + a2 + p²`. Validated against `(√p-1)⁴ <= |J| <= (√p+1)⁴`.
pub fn group_order(curve: &Curve) -> Result<GroupInfo> {
    let counts = curve.count_points()?;
    let p = curve.prime().get() as i64;
    let a1 = counts.n1 as i64 - p - 1;
    let s1 = p + 1 - counts.n1 as i64;
    let s2 = p * p + 1 - counts.n2 as i64;
    debug_assert_eq!((s1 * s1 - s2) % 2, 0);
    let a2 = (s1 * s1 - s2) / 2;
    let order = 1 + a1 * (1 + p) + a2 + p * p;
    if order <= 0 {
        return Err(Error::InvariantViolation(format!(
            "nonpositive group order {order}"
        )));
    }
    let order = order as u64;
    if !order_in_hasse_window(order, p as u64) {
        return Err(Error::InvariantViolation(format!(
            "group order {order} outside the (√p∓1)⁴ window for p = {p}"
        )));
    }
    Ok(GroupInfo {
        order,
        factorization: factorize(order),
    })
}

/// Exact integer test of `(√p - 1)⁴ <= n <= (√p + 1)⁴`.
///
/// Both bounds follow from `|√n - (p+1)| <= 2√p` after taking the square
/// root once, so we compare with integer square roots and re-square.
fn order_in_hasse_window(n: u64, p: u64) -> bool {
    let (n, p) = (n as u128, p as u128);
    let isqrt = |m: u128| {
        let mut r = (m as f64).sqrt() as u128;
        while r * r > m {
            r -= 1;
        }
        while (r + 1) * (r + 1) <= m {
            r += 1;
        }
        r
    };
    let lo = isqrt(n); // floor(√n)
    let hi = if lo * lo == n { lo } else { lo + 1 }; // ceil(√n)
    // n <= (√p+1)⁴ ⇔ √n <= p + 1 + 2√p ⇔ (√n - p - 1)² <= 4p when positive
    let upper_ok = hi <= p + 1 || (hi - p - 1) * (hi - p - 1) <= 4 * p;
    // (√p-1)⁴ <= n ⇔ p + 1 - 2√p <= √n ⇔ (p + 1 - √n)² <= 4p when positive
    let lower_ok = p < lo || (p + 1 - lo) * (p + 1 - lo) <= 4 * p;
    upper_ok && lower_ok
}

/// Least `t >= 1` with `t·D = 0`, by dividing prime factors out of the group
/// order (Lagrange gives `t | order`).
pub fn element_order(d: &MumfordDivisor, info: &GroupInfo) -> u64 {
    let identity = MumfordDivisor::identity(d.curve());
    let mut t = info.order;
    for &(q, _) in &info.factorization {
        while t.is_multiple_of(q) && d.mul_scalar(t / q) == identity {
            t /= q;
        }
    }
    debug_assert!(d.mul_scalar(t) == identity);
    t
}

/// Every element of `J_C(F_p)` by brute force over all Mumford pairs:
/// the identity, all `[X - x, y]`, and all valid quadratics (split, ramified
/// and inert alike). Guarded to `p <= 13`.
pub fn enumerate_jacobian(curve: &Curve) -> Result<Vec<MumfordDivisor>> {
    let p = curve.prime().get();
    if p > MAX_ENUM_PRIME {
        return Err(Error::Guard(format!(
            "exhaustive enumeration needs p <= {MAX_ENUM_PRIME}, got {p}"
        )));
    }
    let prime = curve.prime();
    let f = curve.f();
    let mut out = vec![MumfordDivisor::identity(*curve)];
    for pt in curve.points() {
        out.push(MumfordDivisor::from_points(*curve, pt, None).expect("on-curve point"));
    }
    for u1 in 0..p {
        for u0 in 0..p {
            let u = Poly::new(vec![prime.elem(u0), prime.elem(u1), Fp::one(prime)]);
            for v1 in 0..p {
                for v0 in 0..p {
                    let v = Poly::new(vec![prime.elem(v0), prime.elem(v1)]);
                    if f.sub(&v.mul(&v)).rem(&u).is_zero() {
                        out.push(MumfordDivisor {
                            curve: *curve,
                            u: u.clone(),
                            v,
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Random Jacobian element with broad support coverage: mostly generic
/// two-point classes, with occasional single-point, conjugate-pair, doubled
/// and identity classes mixed in. Deterministic given the generator.
pub fn random_divisor<R: rand::Rng>(curve: &Curve, rng: &mut R) -> MumfordDivisor {
    loop {
        match rng.gen_range(0..16u32) {
            0 => return MumfordDivisor::identity(*curve),
            1 | 2 => {
                let pt = crate::curve::random_point(curve, rng);
                return MumfordDivisor::from_points(*curve, pt, None).expect("on-curve");
            }
            3..=5 => {
                let pt = crate::curve::random_ext_point(curve, rng);
                if let Ok(d) = MumfordDivisor::from_conjugate_pair(*curve, pt) {
                    return d;
                }
            }
            6 => {
                let pt = crate::curve::random_point(curve, rng);
                if let Ok(d) = MumfordDivisor::from_points(*curve, pt, Some(pt)) {
                    return d;
                }
            }
            _ => {
                let p1 = crate::curve::random_point(curve, rng);
                let p2 = crate::curve::random_point(curve, rng);
                if p1.x != p2.x {
                    if let Ok(d) = MumfordDivisor::from_points(*curve, p1, Some(p2)) {
                        return d;
                    }
                }
            }
        }
    }
}
