//! The genus-2 curve `C: Y² = f(X)` with `f = X⁵ + b1X⁴ + b2X³ + b3X² + b4X + b5`
//! over `F_p`, p odd. Construction rejects singular models (`gcd(f, f') ≠ 1`),
//! and point counting over `F_p` and `F_p²` is by exhaustive character sums,
//! checked against the Hasse–Weil window.

use serde::{Deserialize, Serialize};

use crate::field::{Field, Fp, Fp2, Prime};
use crate::poly::Poly;
use crate::{Error, Result};

/// Degree-2 enumeration iterates p² values of x; refuse beyond this.
pub const MAX_EXT_ENUM_PRIME: u64 = 1 << 13;

/// A validated nonsingular curve. Cheap to copy; divisors embed one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Curve {
    p: Prime,
    b: [Fp; 5],
}

/// An affine point over whichever field `F` is (degree 1: `F_p`, degree 2: `F_p²`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Point<F: Field> {
    pub x: F,
    pub y: F,
}

impl<F: Field> Point<F> {
    pub fn new(x: F, y: F) -> Self {
        Point { x, y }
    }

    /// The hyperelliptic involution `(x, y) -> (x, -y)`.
    pub fn negate(self) -> Self {
        Point {
            x: self.x,
            y: -self.y,
        }
    }
}

/// `|C(F_p)|` and `|C(F_p²)|`, both including the single point at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointCounts {
    pub n1: u64,
    pub n2: u64,
}

impl Curve {
    /// Validates and builds the curve from integer coefficients `b1..b5`.
    pub fn new(p: Prime, b: [u64; 5]) -> Result<Self> {
        Self::from_elements(p, b.map(|c| p.elem(c)))
    }

    pub fn from_elements(p: Prime, b: [Fp; 5]) -> Result<Self> {
        for c in &b {
            assert_eq!(c.modulus(), p.get(), "coefficient from a different field");
        }
        let curve = Curve { p, b };
        let f = curve.f();
        if f.gcd(&f.derivative()).degree() != Some(0) {
            return Err(Error::SingularCurve);
        }
        Ok(curve)
    }

    pub fn prime(self) -> Prime {
        self.p
    }

    /// Coefficients `[b1, b2, b3, b4, b5]`.
    pub fn coefficients(self) -> [Fp; 5] {
        self.b
    }

    pub fn b1(self) -> Fp {
        self.b[0]
    }
    pub fn b2(self) -> Fp {
        self.b[1]
    }
    pub fn b3(self) -> Fp {
        self.b[2]
    }
    pub fn b4(self) -> Fp {
        self.b[3]
    }
    pub fn b5(self) -> Fp {
        self.b[4]
    }

    /// The defining quintic `f(X)`.
    pub fn f(self) -> Poly<Fp> {
        let one = Fp::one(self.p);
        Poly::new(vec![self.b[4], self.b[3], self.b[2], self.b[1], self.b[0], one])
    }

    pub fn f_at(self, x: Fp) -> Fp {
        let mut acc = Fp::one(self.p);
        for c in self.b {
            acc = acc * x + c;
        }
        acc
    }

    pub fn f_at_ext(self, x: Fp2) -> Fp2 {
        let mut acc = Fp2::one(self.p);
        for c in self.b {
            acc = acc * x + Fp2::from_base(c);
        }
        acc
    }

    pub fn f_derivative_at(self, x: Fp) -> Fp {
        self.f().derivative().eval(x)
    }

    pub fn contains(self, pt: &Point<Fp>) -> bool {
        pt.y * pt.y == self.f_at(pt.x)
    }

    pub fn contains_ext(self, pt: &Point<Fp2>) -> bool {
        pt.y * pt.y == self.f_at_ext(pt.x)
    }

    /// All affine `F_p`-points, ordered by ascending x then ascending y.
    pub fn points(self) -> Vec<Point<Fp>> {
        let mut out = Vec::new();
        for xv in 0..self.p.get() {
            let x = self.p.elem(xv);
            if let Some((r, s)) = self.f_at(x).sqrt() {
                if r == s {
                    out.push(Point::new(x, r));
                } else {
                    let (lo, hi) = if r.value() < s.value() { (r, s) } else { (s, r) };
                    out.push(Point::new(x, lo));
                    out.push(Point::new(x, hi));
                }
            }
        }
        out
    }

    /// All affine `F_p²`-points; refuses p beyond [`MAX_EXT_ENUM_PRIME`].
    /// Ordered by (x.c1, x.c0) ascending, then y canonical.
    pub fn points_ext(self) -> Result<Vec<Point<Fp2>>> {
        let p = self.p.get();
        if p > MAX_EXT_ENUM_PRIME {
            return Err(Error::Guard(format!(
                "degree-2 enumeration needs p <= {MAX_EXT_ENUM_PRIME}, got {p}"
            )));
        }
        let mut out = Vec::new();
        for a1 in 0..p {
            for a0 in 0..p {
                let x = Fp2::new(self.p.elem(a0), self.p.elem(a1));
                if let Some((r, s)) = self.f_at_ext(x).sqrt() {
                    if r == s {
                        out.push(Point::new(x, r));
                    } else {
                        let key = |v: Fp2| (v.c1().value(), v.c0().value());
                        let (lo, hi) = if key(r) < key(s) { (r, s) } else { (s, r) };
                        out.push(Point::new(x, lo));
                        out.push(Point::new(x, hi));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Point counts over `F_p` and `F_p²` by quadratic-character sums
    /// (`#affine = Σ_x (1 + χ(f(x)))`), plus 1 for infinity each, validated
    /// against the Hasse–Weil window `|n_k - (p^k + 1)| <= 4·p^{k/2}`.
    ///
    /// Over the extension the character is evaluated through the norm:
    /// `χ₂(α) = χ(N(α))`, so no square roots are needed.
    pub fn count_points(self) -> Result<PointCounts> {
        let p = self.p.get();
        if p > MAX_EXT_ENUM_PRIME {
            return Err(Error::Guard(format!(
                "degree-2 point count needs p <= {MAX_EXT_ENUM_PRIME}, got {p}"
            )));
        }
        // χ on F_p as a table of -1/0/+1, built by marking squares.
        let mut chi = vec![-1i8; p as usize];
        chi[0] = 0;
        for v in 1..p {
            chi[(v * v % p) as usize] = 1;
        }
        let mut n1 = 1u64;
        for xv in 0..p {
            n1 = (n1 as i64 + 1 + chi[self.f_at(self.p.elem(xv)).value() as usize] as i64) as u64;
        }
        let nu = self.p.nonresidue().value();
        let mut n2 = 1u64;
        for a1 in 0..p {
            for a0 in 0..p {
                let x = Fp2::new(self.p.elem(a0), self.p.elem(a1));
                let fx = self.f_at_ext(x);
                let c0 = fx.c0().value();
                let c1 = fx.c1().value();
                let norm = (c0 * c0 + (p - nu) * (c1 * c1 % p)) % p;
                n2 = (n2 as i64 + 1 + chi[norm as usize] as i64) as u64;
            }
        }
        let counts = PointCounts { n1, n2 };
        counts.check_hasse_weil(self.p)?;
        Ok(counts)
    }

    /// JSON form `{"p": ..., "b": [b1..b5]}`.
    pub fn to_json(self) -> String {
        serde_json::to_string(&CurveJson::from(self)).expect("curve serialization")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let dto: CurveJson = serde_json::from_str(s)
            .map_err(|e| Error::InvalidDivisor(format!("curve json: {e}")))?;
        Curve::new(Prime::new(dto.p)?, dto.b)
    }
}

impl PointCounts {
    /// Exact integer form of the genus-2 Hasse–Weil bounds.
    pub fn check_hasse_weil(self, p: Prime) -> Result<()> {
        let p = p.get() as i64;
        let d1 = self.n1 as i64 - (p + 1);
        let d2 = self.n2 as i64 - (p * p + 1);
        if d1 * d1 > 16 * p {
            return Err(Error::InvariantViolation(format!(
                "n1 = {} outside Hasse–Weil window for p = {p}",
                self.n1
            )));
        }
        if d2 * d2 > 16 * p * p {
            return Err(Error::InvariantViolation(format!(
                "n2 = {} outside Hasse–Weil window for p = {p}",
                self.n2
            )));
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CurveJson {
    p: u64,
    b: [u64; 5],
}

impl From<Curve> for CurveJson {
    fn from(c: Curve) -> Self {
        CurveJson {
            p: c.p.get(),
            b: c.b.map(|x| x.value()),
        }
    }
}

/// Uniform random affine `F_p`-point by rejection sampling on x.
pub fn random_point<R: rand::Rng>(curve: &Curve, rng: &mut R) -> Point<Fp> {
    let p = curve.prime();
    loop {
        let x = p.elem(rng.gen_range(0..p.get()));
        if let Some((r, s)) = curve.f_at(x).sqrt() {
            let y = if rng.gen::<bool>() { r } else { s };
            return Point::new(x, y);
        }
    }
}

/// Random `F_p²`-point with x outside the base field (the conjugate-pair case).
pub fn random_ext_point<R: rand::Rng>(curve: &Curve, rng: &mut R) -> Point<Fp2> {
    let p = curve.prime();
    loop {
        let x = Fp2::new(
            p.elem(rng.gen_range(0..p.get())),
            p.elem(rng.gen_range(1..p.get())),
        );
        if let Some((r, s)) = curve.f_at_ext(x).sqrt() {
            let y = if rng.gen::<bool>() { r } else { s };
            return Point::new(x, y);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p7() -> Prime {
        Prime::new(7).unwrap()
    }

    fn x5_plus_1() -> Curve {
        Curve::new(p7(), [0, 0, 0, 0, 1]).unwrap()
    }

    #[test]
    fn construction_examples() {
        // f = X^5 + 1: f' = 5X^4 has only the root 0, f(0) = 1, so nonsingular.
        assert!(Curve::new(p7(), [0, 0, 0, 0, 1]).is_ok());
        // f = X^5: X divides both f and f'.
        assert!(matches!(
            Curve::new(p7(), [0, 0, 0, 0, 0]),
            Err(Error::SingularCurve)
        ));
        // f = X^5 + X over F_5: f' = 5X^4 + 1 = 1, so gcd is 1.
        let p5 = Prime::new(5).unwrap();
        assert!(Curve::new(p5, [0, 0, 0, 1, 0]).is_ok());
        // characteristic 2 is rejected at the Prime level
        assert!(Prime::new(2).is_err());
    }

    #[test]
    fn point_negation() {
        let c = x5_plus_1();
        for pt in c.points() {
            let n = pt.negate();
            assert!(c.contains(&n));
            assert_eq!(n.negate(), pt);
            if pt.y.is_zero() {
                assert_eq!(n, pt);
            }
        }
        // f(3) = 244 ≡ 6 (mod 7) is a non-residue: no points above x = 3.
        assert_eq!(c.f_at(p7().elem(3)), p7().elem(6));
        assert!(c.points().iter().all(|pt| pt.x.value() != 3));
    }

    #[test]
    fn counts_x5_plus_1() {
        let c = x5_plus_1();
        let counts = c.count_points().unwrap();
        // frozen from independent enumeration: 7 affine + infinity, 49 affine + infinity
        assert_eq!(counts, PointCounts { n1: 8, n2: 50 });
        // enumeration agrees with the character sums
        assert_eq!(c.points().len() as u64 + 1, counts.n1);
        assert_eq!(c.points_ext().unwrap().len() as u64 + 1, counts.n2);
    }

    #[test]
    fn every_fp_point_is_fp2_point() {
        let c = x5_plus_1();
        let ext = c.points_ext().unwrap();
        for pt in c.points() {
            let lifted = Point::new(Fp2::from_base(pt.x), Fp2::from_base(pt.y));
            assert!(ext.contains(&lifted));
        }
    }

    #[test]
    fn hasse_weil_random_curves() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for p in [7u64, 11, 13, 101] {
            let prime = Prime::new(p).unwrap();
            let mut found = 0;
            while found < 3 {
                let b: [u64; 5] = std::array::from_fn(|_| rng.gen_range(0..p));
                if let Ok(c) = Curve::new(prime, b) {
                    found += 1;
                    let counts = c.count_points().unwrap();
                    counts.check_hasse_weil(prime).unwrap();
                    let affine = c.points().len() as u64;
                    assert_eq!(affine + 1, counts.n1);
                    for pt in c.points() {
                        assert!(c.contains(&pt));
                    }
                }
            }
        }
    }

    #[test]
    fn ext_enum_guard() {
        let p = Prime::new((1 << 13) + 17).unwrap(); // 8209 is prime
        let c = Curve::new(p, [0, 0, 0, 0, 1]).unwrap();
        assert!(matches!(c.points_ext(), Err(Error::Guard(_))));
        assert!(matches!(c.count_points(), Err(Error::Guard(_))));
    }

    #[test]
    fn json_round_trip() {
        let c = x5_plus_1();
        let s = c.to_json();
        assert_eq!(s, r#"{"p":7,"b":[0,0,0,0,1]}"#);
        assert_eq!(Curve::from_json(&s).unwrap(), c);
    }
}
