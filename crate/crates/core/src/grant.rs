//! The projective model of the Jacobian in `P^8`.
//!
//! A divisor class maps to the 9-tuple
//! `(z0 : z11 : z12 : z22 : z111 : z112 : z122 : z222 : z)`. Classes outside
//! the theta locus land in the affine chart `z0 = 1`; theta classes land on
//! the hyperplane `z0 = 0`:
//!
//! - identity: `(0:0:0:0:1:0:0:0:0)`,
//! - `P - ∞` with `P = (x, y)`: `(0:0:0:0:-x³:-x²:-x:1:-y)`.
//!
//! The image is cut out by thirteen quadrics/cubics `f2..f14` (plus `f1`,
//! which lies in the ideal generated by `f5, f6, f7`); the affine forms are
//! kept as exact term tables below. On the affine chart the group law has
//! closed-form rational expressions in ten helper functions
//! `q, q1, q2, q11, q12, q22, q111, q112, q122, q222`; [`grant_add`]
//! evaluates them wherever `Q, R, Q+R, Q-R` all avoid the theta locus and
//! `q(Q,R) ≠ 0`.
//!
//! Mumford dictionary on the affine chart:
//! `z12 = -u0`, `z22 = -u1`, `z122 = v0`, `z222 = v1`.

use serde::{Deserialize, Serialize};

use crate::curve::Curve;
use crate::field::{Field, Fp, Fp2, Prime};
use crate::jacobian::{DivisorSupport, MumfordDivisor};
use crate::poly::Poly;
use crate::{Error, Result};

/// Degree bound for the translated even coordinates `z_ij(· + R)` as
/// polynomials in the affine coordinates.
pub const ADD_DEG_ZIJ: u32 = 3;
/// Degree bound for the translated odd coordinates `z_ijk(· + R)`.
pub const ADD_DEG_ZIJK: u32 = 4;
/// Degree bound for the translated `z(· + R)`.
pub const ADD_DEG_Z: u32 = 6;

/// Which chart of `P^8` a point lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chart {
    /// `z0 = 1`: the complement `U = J \ Θ`.
    Affine,
    /// `z0 = 0`: the theta locus (single-point classes and the identity).
    Theta,
}

/// A point of the embedded Jacobian, normalized so that `z0 ∈ {0, 1}` and,
/// on the theta chart, `z222 = 1` for curve-point classes / `z111 = 1` for
/// the identity.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct GrantPoint {
    pub z0: Fp,
    pub z11: Fp,
    pub z12: Fp,
    pub z22: Fp,
    pub z111: Fp,
    pub z112: Fp,
    pub z122: Fp,
    pub z222: Fp,
    pub z: Fp,
}

impl GrantPoint {
    pub fn chart(&self) -> Chart {
        if self.z0.is_zero() {
            Chart::Theta
        } else {
            Chart::Affine
        }
    }

    /// The nine coordinates in display order.
    pub fn coords(&self) -> [Fp; 9] {
        [
            self.z0, self.z11, self.z12, self.z22, self.z111, self.z112, self.z122, self.z222,
            self.z,
        ]
    }

    /// The eight affine-chart coordinates (everything but `z0`).
    fn azs(&self) -> [Fp; 8] {
        [
            self.z11, self.z12, self.z22, self.z111, self.z112, self.z122, self.z222, self.z,
        ]
    }

    fn from_azs(p: Prime, a: [Fp; 8]) -> Self {
        GrantPoint {
            z0: Fp::one(p),
            z11: a[0],
            z12: a[1],
            z22: a[2],
            z111: a[3],
            z112: a[4],
            z122: a[5],
            z222: a[6],
            z: a[7],
        }
    }

    /// JSON form `{"coords": [z0, z11, ..., z], "chart": "affine"|"theta"}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&GrantJson::from(self)).expect("grant serialization")
    }

    pub fn from_json(p: Prime, s: &str) -> Result<Self> {
        let dto: GrantJson = serde_json::from_str(s)
            .map_err(|e| Error::InvalidGrantPoint(format!("json: {e}")))?;
        let c = dto.coords.map(|v| p.elem(v));
        let pt = GrantPoint {
            z0: c[0],
            z11: c[1],
            z12: c[2],
            z22: c[3],
            z111: c[4],
            z112: c[5],
            z122: c[6],
            z222: c[7],
            z: c[8],
        };
        let chart_ok = match dto.chart.as_str() {
            "affine" => pt.chart() == Chart::Affine,
            "theta" => pt.chart() == Chart::Theta,
            _ => false,
        };
        if !chart_ok {
            return Err(Error::InvalidGrantPoint(format!(
                "chart tag `{}` does not match z0 = {}",
                dto.chart, pt.z0
            )));
        }
        if pt.coords().iter().all(|c| c.is_zero()) {
            return Err(Error::InvalidGrantPoint("all coordinates zero".into()));
        }
        Ok(pt)
    }
}

impl std::fmt::Debug for GrantPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let c = self.coords();
        write!(
            f,
            "({}:{}:{}:{}:{}:{}:{}:{}:{})",
            c[0], c[1], c[2], c[3], c[4], c[5], c[6], c[7], c[8]
        )
    }
}

#[derive(Serialize, Deserialize)]
struct GrantJson {
    coords: [u64; 9],
    chart: String,
}

impl From<&GrantPoint> for GrantJson {
    fn from(g: &GrantPoint) -> Self {
        GrantJson {
            coords: g.coords().map(|c| c.value()),
            chart: match g.chart() {
                Chart::Affine => "affine".into(),
                Chart::Theta => "theta".into(),
            },
        }
    }
}

/// The eight affine coordinates from a two-point support `(x1,y1) + (x2,y2)`
/// with `x1 ≠ x2`, over any field containing the support. The last
/// coordinate is pinned by the relation `2z = z11·z22 - z12² + b2·z12 - b4`.
fn coords_from_pair<F: Field>(b: [F; 5], x1: F, y1: F, x2: F, y2: F) -> [F; 8] {
    let [b1, b2, b3, b4, b5] = b;
    let one = x1.one_like();
    let two = one + one;
    let three = two + one;
    let four = two + two;
    let half = two.try_inv().expect("odd characteristic");
    let d = x1 - x2;
    let dinv = d.try_inv().expect("distinct support x-coordinates");
    let d2inv = dinv * dinv;
    let d3inv = d2inv * dinv;
    let s = x1 + x2;
    let m = x1 * x2;

    let z11 = (s * m * m + two * b1 * m * m + b2 * s * m + two * b3 * m + b4 * s + two * b5
        - two * y1 * y2)
        * d2inv;
    let z12 = -m;
    let z22 = s;
    let psi = |xa: F, xb: F| {
        four * b5
            + b4 * (three * xa + xb)
            + two * b3 * xa * (xa + xb)
            + b2 * xa * xa * (xa + three * xb)
            + four * b1 * xa * xa * xa * xb
            + xa * xa * xa * xb * (three * xa + xb)
    };
    let z111 = (y2 * psi(x1, x2) - y1 * psi(x2, x1)) * d3inv;
    let z112 = (y1 * x2 * x2 - y2 * x1 * x1) * dinv;
    let z122 = -(y1 * x2 - y2 * x1) * dinv;
    let z222 = (y1 - y2) * dinv;
    let z = (z11 * z22 - z12 * z12 + b2 * z12 - b4) * half;
    [z11, z12, z22, z111, z112, z122, z222, z]
}

/// Embeds a divisor class into `P^8`.
///
/// Case split: identity and single-point classes go to the theta chart;
/// a class in `U` goes to the affine chart with coordinates computed from
/// its support — rational formulas for distinct x-coordinates (over `F_p²`
/// for conjugate pairs, where the result provably descends to `F_p`), and
/// the tangent-line identifications for a doubled point, completed through
/// the defining relations `f4 = f3 = f2 = 0` which are linear in the
/// missing coordinates.
pub fn grant_embed(d: &MumfordDivisor) -> GrantPoint {
    let curve = d.curve();
    let p = curve.prime();
    let zero = Fp::zero(p);
    let one = Fp::one(p);
    match d.support() {
        DivisorSupport::Identity => GrantPoint {
            z0: zero,
            z11: zero,
            z12: zero,
            z22: zero,
            z111: one,
            z112: zero,
            z122: zero,
            z222: zero,
            z: zero,
        },
        DivisorSupport::Single(pt) => {
            let (x, y) = (pt.x, pt.y);
            GrantPoint {
                z0: zero,
                z11: zero,
                z12: zero,
                z22: zero,
                z111: -(x * x * x),
                z112: -(x * x),
                z122: -x,
                z222: one,
                z: -y,
            }
        }
        DivisorSupport::SplitPair(p1, p2) => {
            let b = curve.coefficients();
            GrantPoint::from_azs(p, coords_from_pair(b, p1.x, p1.y, p2.x, p2.y))
        }
        DivisorSupport::ConjugatePair(pt) => {
            let b = curve.coefficients().map(Fp2::from_base);
            let q = crate::curve::Point::new(pt.x.frobenius(), pt.y.frobenius());
            let ext = coords_from_pair(b, pt.x, pt.y, q.x, q.y);
            let a = ext.map(|c| {
                c.in_base()
                    .expect("conjugate-pair coordinates are Frobenius-stable")
            });
            GrantPoint::from_azs(p, a)
        }
        DivisorSupport::Doubled(pt) => {
            let [b1, b2, b3, _, _] = curve.coefficients();
            let (x, y) = (pt.x, pt.y);
            debug_assert!(!y.is_zero(), "doubled 2-torsion is not reduced");
            let two = one + one;
            let half = two.try_inv().unwrap();
            let six = p.elem(6);
            let four = p.elem(4);
            let lambda = curve.f_derivative_at(x) * (two * y).try_inv().unwrap();
            let z12 = -(x * x);
            let z22 = x + x;
            let z122 = -lambda * x + y;
            let z222 = lambda;
            let z11 = lambda * lambda - six * x * x * x - four * b1 * x * x - two * b2 * x - b3;
            // f3 = 0 and f4 = 0 are linear in the two missing coordinates
            let z112 = z222 * z12 - z122 * z22;
            let z111 = -(z222 * z11) - z122 * z12 + two * z112 * z22 + two * b1 * z112 - b2 * z122;
            let z = (z11 * z22 - z12 * z12 + b2 * z12 - curve.b4()) * half;
            GrantPoint::from_azs(p, [z11, z12, z22, z111, z112, z122, z222, z])
        }
    }
}

/// Division-free affine embedding straight from the Mumford coefficients,
/// using only the defining relations (`f6` for `z11`, then `f3`, `f4`, `f2`).
/// Agrees with [`grant_embed`] on all of `U`; usable when extension-field
/// arithmetic is unavailable.
pub fn grant_embed_from_coefficients(d: &MumfordDivisor) -> Result<GrantPoint> {
    if d.deg_u() != 2 {
        return Err(Error::FormulaDomain(
            "coefficient embedding applies on U only".into(),
        ));
    }
    let curve = d.curve();
    let p = curve.prime();
    let zero = Fp::zero(p);
    let [b1, b2, b3, b4, _] = curve.coefficients();
    let two = p.elem(2);
    let half = two.try_inv().unwrap();
    let u1 = d.u().coeff(1, zero);
    let u0 = d.u().coeff(0, zero);
    let v1 = d.v().coeff(1, zero);
    let v0 = d.v().coeff(0, zero);
    let z12 = -u0;
    let z22 = -u1;
    let z122 = v0;
    let z222 = v1;
    let z11 = z222 * z222 - z22 * z22 * z22 - z12 * z22 - b1 * z22 * z22 - b2 * z22 - b3;
    let z112 = z222 * z12 - z122 * z22;
    let z111 = -(z222 * z11) - z122 * z12 + two * z112 * z22 + two * b1 * z112 - b2 * z122;
    let z = (z11 * z22 - z12 * z12 + b2 * z12 - b4) * half;
    Ok(GrantPoint::from_azs(
        p,
        [z11, z12, z22, z111, z112, z122, z222, z],
    ))
}

/// Recovers the Mumford pair from a projective point.
///
/// Affine chart: `u = X² - z22·X - z12`, `v = z222·X + z122`, validated
/// against the Mumford conditions. Theta chart: matches the identity tuple
/// or reconstructs `[X - x, y]` from `(-x³:-x²:-x:1:-y)`.
pub fn mumford_from_grant(pt: &GrantPoint, curve: &Curve) -> Result<MumfordDivisor> {
    let p = curve.prime();
    let map_err = |e: Error| Error::InvalidGrantPoint(format!("not on the Jacobian: {e}"));
    match pt.chart() {
        Chart::Affine => {
            if pt.z0 != Fp::one(p) {
                return Err(Error::InvalidGrantPoint("affine chart needs z0 = 1".into()));
            }
            let u = Poly::new(vec![-pt.z12, -pt.z22, Fp::one(p)]);
            let v = Poly::new(vec![pt.z122, pt.z222]);
            MumfordDivisor::new(*curve, u, v).map_err(map_err)
        }
        Chart::Theta => {
            if !(pt.z11.is_zero() && pt.z12.is_zero() && pt.z22.is_zero()) {
                return Err(Error::InvalidGrantPoint(
                    "theta chart requires z11 = z12 = z22 = 0".into(),
                ));
            }
            if pt.z222.is_zero() {
                // identity pattern (0:0:0:0:1:0:0:0:0) up to scale
                if !pt.z111.is_zero()
                    && pt.z112.is_zero()
                    && pt.z122.is_zero()
                    && pt.z.is_zero()
                {
                    return Ok(MumfordDivisor::identity(*curve));
                }
                return Err(Error::InvalidGrantPoint(
                    "theta tuple is neither the identity nor a curve point".into(),
                ));
            }
            let scale = pt.z222.inv().expect("nonzero");
            let x = -(pt.z122 * scale);
            let y = -(pt.z * scale);
            if pt.z112 * scale != -(x * x) || pt.z111 * scale != -(x * x * x) {
                return Err(Error::InvalidGrantPoint(
                    "theta tuple is not of the form (-x³:-x²:-x:1:-y)".into(),
                ));
            }
            MumfordDivisor::from_points(*curve, crate::curve::Point::new(x, y), None)
                .map_err(map_err)
        }
    }
}

// ---------------------------------------------------------------------------
// Defining equations.
//
// Each equation is a table of exact integer terms
//   c · b1^e1 … b5^e5 · Z11^g1 Z12^g2 Z22^g3 Z111^g4 Z112^g5 Z122^g6 Z222^g7 Z^g8.
//
// On the theta chart (z0 = 0) the homogenized form keeps only the terms of
// maximal total degree in the nine projective coordinates; for f9, f11 and
// f12 the homogenization carries an extra power of Z0, so their restriction
// to the chart vanishes identically.
// ---------------------------------------------------------------------------

/// One monomial of a defining equation.
#[derive(Debug, Clone, Copy)]
struct Term {
    c: i64,
    b: [u8; 5],
    z: [u8; 8],
}

macro_rules! term {
    ($c:expr, [$($b:expr),*], [$($z:expr),*]) => {
        Term { c: $c, b: [$($b),*], z: [$($z),*] }
    };
}

// z-exponent order: [Z11, Z12, Z22, Z111, Z112, Z122, Z222, Z]

const F1: &[Term] = &[
    term!(1, [0, 0, 0, 0, 0], [0, 0, 0, 0, 0, 0, 0, 2]), // Z²
    term!(1, [0, 0, 0, 0, 0], [2, 1, 0, 0, 0, 0, 0, 0]), // Z11²Z12
    term!(-1, [1, 0, 0, 0, 0], [2, 0, 1, 0, 0, 0, 0, 0]), // -b1 Z11²Z22
    term!(1, [0, 1, 0, 0, 0], [1, 1, 1, 0, 0, 0, 0, 0]), // b2 Z11Z12Z22
    term!(-1, [0, 0, 1, 0, 0], [1, 0, 2, 0, 0, 0, 0, 0]), // -b3 Z11Z22²
    term!(1, [0, 0, 0, 1, 0], [0, 1, 2, 0, 0, 0, 0, 0]), // b4 Z12Z22²
    term!(-1, [0, 0, 0, 0, 1], [0, 0, 3, 0, 0, 0, 0, 0]), // -b5 Z22³
    term!(2, [1, 0, 0, 0, 0], [1, 0, 0, 0, 0, 0, 0, 1]), // 2b1 Z Z11
    term!(-2, [0, 1, 0, 0, 0], [0, 1, 0, 0, 0, 0, 0, 1]), // -2b2 Z Z12
    term!(2, [0, 0, 1, 0, 0], [0, 0, 1, 0, 0, 0, 0, 1]), // 2b3 Z Z22
    term!(1, [0, 0, 1, 0, 0], [1, 1, 0, 0, 0, 0, 0, 0]), // b3 Z11Z12
    term!(-1, [1, 1, 0, 0, 0], [1, 1, 0, 0, 0, 0, 0, 0]), // -b1b2 Z11Z12
    term!(1, [0, 2, 0, 0, 0], [1, 0, 1, 0, 0, 0, 0, 0]), // b2² Z11Z22
    term!(-1, [1, 0, 1, 0, 0], [1, 0, 1, 0, 0, 0, 0, 0]), // -b1b3 Z11Z22
    term!(1, [1, 0, 0, 1, 0], [0, 1, 1, 0, 0, 0, 0, 0]), // b1b4 Z12Z22
    term!(-1, [0, 1, 1, 0, 0], [0, 1, 1, 0, 0, 0, 0, 0]), // -b2b3 Z12Z22
    term!(-1, [0, 0, 0, 0, 1], [0, 1, 1, 0, 0, 0, 0, 0]), // -b5 Z12Z22
    term!(-1, [1, 0, 0, 0, 1], [0, 0, 2, 0, 0, 0, 0, 0]), // -b1b5 Z22²
    term!(2, [1, 0, 1, 0, 0], [0, 0, 0, 0, 0, 0, 0, 1]), // 2b1b3 Z
    term!(-2, [0, 2, 0, 0, 0], [0, 0, 0, 0, 0, 0, 0, 1]), // -2b2² Z
    term!(1, [1, 0, 0, 1, 0], [1, 0, 0, 0, 0, 0, 0, 0]), // b1b4 Z11
    term!(-1, [0, 0, 0, 0, 1], [1, 0, 0, 0, 0, 0, 0, 0]), // -b5 Z11
    term!(1, [0, 3, 0, 0, 0], [0, 1, 0, 0, 0, 0, 0, 0]), // b2³ Z12
    term!(-1, [1, 1, 1, 0, 0], [0, 1, 0, 0, 0, 0, 0, 0]), // -b1b2b3 Z12
    term!(1, [0, 0, 1, 1, 0], [0, 0, 1, 0, 0, 0, 0, 0]), // b3b4 Z22
    term!(-1, [0, 1, 0, 0, 1], [0, 0, 1, 0, 0, 0, 0, 0]), // -b2b5 Z22
    term!(1, [1, 0, 1, 1, 0], [0, 0, 0, 0, 0, 0, 0, 0]), // b1b3b4
    term!(-1, [0, 2, 0, 1, 0], [0, 0, 0, 0, 0, 0, 0, 0]), // -b2²b4
    term!(-1, [0, 0, 1, 0, 1], [0, 0, 0, 0, 0, 0, 0, 0]), // -b3b5
];

const F2: &[Term] = &[
    term!(2, [0, 0, 0, 0, 0], [0, 0, 0, 0, 0, 0, 0, 1]),
    term!(-1, [0, 0, 0, 0, 0], [1, 0, 1, 0, 0, 0, 0, 0]),
    term!(1, [0, 0, 0, 0, 0], [0, 2, 0, 0, 0, 0, 0, 0]),
    term!(-1, [0, 1, 0, 0, 0], [0, 1, 0, 0, 0, 0, 0, 0]),
    term!(1, [0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 0, 0, 0]),
];

const F3: &[Term] = &[
    term!(1, [0, 0, 0, 0, 0], [0, 0, 0, 0, 1, 0, 0, 0]),
    term!(-1, [0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0, 1, 0]),
    term!(1, [0, 0, 0, 0, 0], [0, 0, 1, 0, 0, 1, 0, 0]),
];

const F4: &[Term] = &[
    term!(1, [0, 0, 0, 0, 0], [0, 0, 0, 1, 0, 0, 0, 0]),
    term!(1, [0, 0, 0, 0, 0], [1, 0, 0, 0, 0, 0, 1, 0]),
    term!(1, [0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 1, 0, 0]),
    term!(-2, [0, 0, 0, 0, 0], [0, 0, 1, 0, 1, 0, 0, 0]),
    term!(-2, [1, 0, 0, 0, 0], [0, 0, 0, 0, 1, 0, 0, 0]),
    term!(1, [0, 1, 0, 0, 0], [0, 0, 0, 0, 0, 1, 0, 0]),
];

const F5: &[Term] = &[
    term!(1, [0, 0, 0, 0, 0], [0, 0, 0, 0, 0, 2, 0, 0]), // Z122²
    term!(-1, [0, 0, 0, 0, 0], [1, 0, 2, 0, 0, 0, 0, 0]), // -Z11Z22²
    term!(2, [0, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0, 0, 1]), // 2 Z Z22
    term!(1, [0, 0, 0, 0, 0], [1, 1, 0, 0, 0, 0, 0, 0]), // Z11Z12
    term!(-1, [1, 0, 0, 0, 0], [1, 0, 1, 0, 0, 0, 0, 0]), // -b1 Z11Z22
    term!(-1, [0, 1, 0, 0, 0], [0, 1, 1, 0, 0, 0, 0, 0]), // -b2 Z12Z22
    term!(2, [1, 0, 0, 0, 0], [0, 0, 0, 0, 0, 0, 0, 1]), // 2b1 Z
    term!(-1, [1, 1, 0, 0, 0], [0, 1, 0, 0, 0, 0, 0, 0]), // -b1b2 Z12
    term!(1, [0, 0, 0, 1, 0], [0, 0, 1, 0, 0, 0, 0, 0]), // b4 Z22
    term!(1, [1, 0, 0, 1, 0], [0, 0, 0, 0, 0, 0, 0, 0]), // b1b4
    term!(-1, [0, 0, 0, 0, 1], [0, 0, 0, 0, 0, 0, 0, 0]), // -b5
];

const F6: &[Term] = &[
    term!(1, [0, 0, 0, 0, 0], [0, 0, 0, 0, 0, 0, 2, 0]), // Z222²
    term!(-1, [0, 0, 0, 0, 0], [0, 0, 3, 0, 0, 0, 0, 0]), // -Z22³
    term!(-1, [0, 0, 0, 0, 0], [0, 1, 1, 0, 0, 0, 0, 0]), // -Z12Z22
    term!(-1, [1, 0, 0, 0, 0], [0, 0, 2, 0, 0, 0, 0, 0]), // -b1 Z22²
    term!(-1, [0, 0, 0, 0, 0], [1, 0, 0, 0, 0, 0, 0, 0]), // -Z11
    term!(-1, [0, 1, 0, 0, 0], [0, 0, 1, 0, 0, 0, 0, 0]), // -b2 Z22
    term!(-1, [0, 0, 1, 0, 0], [0, 0, 0, 0, 0, 0, 0, 0]), // -b3
];

const F7: &[Term] = &[
    term!(1, [0, 0, 0, 0, 0], [0, 0, 0, 0, 0, 1, 1, 0]), // Z122Z222
    term!(-1, [0, 0, 0, 0, 0], [0, 1, 2, 0, 0, 0, 0, 0]), // -Z12Z22²
    term!(1, [0, 0, 0, 0, 0], [0, 0, 0, 0, 0, 0, 0, 1]), // Z
    term!(-1, [0, 1, 0, 0, 0], [0, 1, 0, 0, 0, 0, 0, 0]), // -b2 Z12
    term!(-1, [1, 0, 0, 0, 0], [0, 1, 1, 0, 0, 0, 0, 0]), // -b1 Z12Z22
];

const F8: &[Term] = &[
    term!(1, [0, 0, 0, 0, 0], [0, 0, 0, 2, 0, 0, 0, 0]), // Z111²
    term!(-1, [0, 0, 0, 0, 0], [3, 0, 0, 0, 0, 0, 0, 0]), // -Z11³
    term!(-1, [0, 0, 1, 0, 0], [2, 0, 0, 0, 0, 0, 0, 0]), // -b3 Z11²
    term!(-1, [0, 0, 0, 1, 0], [1, 1, 0, 0, 0, 0, 0, 0]), // -b4 Z11Z12
    term!(3, [0, 0, 0, 0, 1], [1, 0, 1, 0, 0, 0, 0, 0]), // 3b5 Z11Z22
    term!(2, [0, 0, 0, 0, 1], [0, 0, 0, 0, 0, 0, 0, 1]), // 2b5 Z
    term!(4, [1, 0, 0, 0, 1], [1, 0, 0, 0, 0, 0, 0, 0]), // 4b1b5 Z11
    term!(-1, [0, 1, 0, 1, 0], [1, 0, 0, 0, 0, 0, 0, 0]), // -b2b4 Z11
    term!(-3, [0, 1, 0, 0, 1], [0, 1, 0, 0, 0, 0, 0, 0]), // -3b2b5 Z12
    term!(4, [0, 0, 1, 0, 1], [0, 0, 1, 0, 0, 0, 0, 0]), // 4b3b5 Z22
    term!(-1, [0, 0, 0, 2, 0], [0, 0, 1, 0, 0, 0, 0, 0]), // -b4² Z22
    term!(4, [1, 0, 1, 0, 1], [0, 0, 0, 0, 0, 0, 0, 0]), // 4b1b3b5
    term!(1, [0, 0, 0, 1, 1], [0, 0, 0, 0, 0, 0, 0, 0]), // b4b5
    term!(-1, [1, 0, 0, 2, 0], [0, 0, 0, 0, 0, 0, 0, 0]), // -b1b4²
    term!(-1, [0, 2, 0, 0, 1], [0, 0, 0, 0, 0, 0, 0, 0]), // -b2²b5
];

const F9: &[Term] = &[
    term!(-1, [0, 0, 0, 0, 0], [0, 0, 0, 1, 1, 0, 0, 0]), // -Z111Z112
    term!(1, [1, 0, 0, 0, 0], [0, 0, 0, 1, 0, 1, 0, 0]), // b1 Z111Z122
    term!(-1, [0, 1, 0, 0, 0], [0, 0, 0, 0, 1, 1, 0, 0]), // -b2 Z112Z122
    term!(1, [0, 0, 1, 0, 0], [0, 0, 0, 0, 1, 0, 1, 0]), // b3 Z112Z222
    term!(-1, [0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1, 1, 0]), // -b4 Z122Z222
    term!(1, [0, 0, 0, 0, 1], [0, 0, 0, 0, 0, 0, 2, 0]), // b5 Z222²
    term!(-1, [0, 0, 0, 0, 0], [0, 0, 0, 0, 0, 0, 0, 2]), // -Z²
    term!(-1, [1, 0, 0, 0, 0], [1, 0, 0, 0, 0, 0, 0, 1]), // -b1 Z Z11
    term!(1, [0, 1, 0, 0, 0], [0, 1, 0, 0, 0, 0, 0, 1]), // b2 Z Z12
    term!(-1, [0, 0, 1, 0, 0], [0, 0, 1, 0, 0, 0, 0, 1]), // -b3 Z Z22
    term!(-1, [0, 0, 1, 0, 0], [1, 1, 0, 0, 0, 0, 0, 0]), // -b3 Z11Z12
    term!(1, [1, 0, 1, 0, 0], [1, 0, 1, 0, 0, 0, 0, 0]), // b1b3 Z11Z22
    term!(-1, [0, 0, 0, 0, 1], [0, 1, 1, 0, 0, 0, 0, 0]), // -b5 Z12Z22
    term!(-1, [1, 0, 0, 1, 0], [0, 1, 1, 0, 0, 0, 0, 0]), // -b1b4 Z12Z22
    term!(2, [1, 0, 0, 0, 1], [0, 0, 2, 0, 0, 0, 0, 0]), // 2b1b5 Z22²
    term!(-2, [1, 0, 1, 0, 0], [0, 0, 0, 0, 0, 0, 0, 1]), // -2b1b3 Z
    term!(-2, [0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 0, 0, 1]), // -2b4 Z
    term!(2, [0, 1, 0, 1, 0], [0, 1, 0, 0, 0, 0, 0, 0]), // 2b2b4 Z12
    term!(1, [1, 1, 1, 0, 0], [0, 1, 0, 0, 0, 0, 0, 0]), // b1b2b3 Z12
    term!(1, [1, 0, 0, 0, 1], [0, 1, 0, 0, 0, 0, 0, 0]), // b1b5 Z12
    term!(-1, [0, 0, 2, 0, 0], [0, 1, 0, 0, 0, 0, 0, 0]), // -b3² Z12
    term!(-1, [2, 0, 0, 1, 0], [0, 1, 0, 0, 0, 0, 0, 0]), // -b1²b4 Z12
    term!(-2, [0, 0, 0, 0, 1], [1, 0, 0, 0, 0, 0, 0, 0]), // -2b5 Z11
    term!(2, [2, 0, 0, 0, 1], [0, 0, 1, 0, 0, 0, 0, 0]), // 2b1²b5 Z22
    term!(-2, [0, 1, 0, 0, 1], [0, 0, 1, 0, 0, 0, 0, 0]), // -2b2b5 Z22
    term!(1, [1, 1, 0, 0, 1], [0, 0, 0, 0, 0, 0, 0, 0]), // b1b2b5
    term!(-1, [1, 0, 1, 1, 0], [0, 0, 0, 0, 0, 0, 0, 0]), // -b1b3b4
    term!(-2, [0, 0, 1, 0, 1], [0, 0, 0, 0, 0, 0, 0, 0]), // -2b3b5
];

const F10: &[Term] = &[
    term!(1, [0, 0, 0, 0, 0], [0, 0, 0, 0, 2, 0, 0, 0]), // Z112²
    term!(-1, [0, 0, 0, 0, 0], [0, 0, 0, 1, 0, 1, 0, 0]), // -Z111Z122
    term!(1, [0, 0, 0, 0, 0], [1, 0, 0, 0, 0, 0, 0, 1]), // Z11 Z
    term!(-1, [0, 0, 1, 0, 0], [1, 0, 1, 0, 0, 0, 0, 0]), // -b3 Z11Z22
    term!(2, [0, 0, 0, 1, 0], [0, 1, 1, 0, 0, 0, 0, 0]), // 2b4 Z12Z22
    term!(-3, [0, 0, 0, 0, 1], [0, 0, 2, 0, 0, 0, 0, 0]), // -3b5 Z22²
    term!(2, [0, 0, 1, 0, 0], [0, 0, 0, 0, 0, 0, 0, 1]), // 2b3 Z
    term!(1, [1, 0, 0, 1, 0], [0, 1, 0, 0, 0, 0, 0, 0]), // b1b4 Z12
    term!(-1, [0, 1, 1, 0, 0], [0, 1, 0, 0, 0, 0, 0, 0]), // -b2b3 Z12
    term!(-1, [0, 0, 0, 0, 1], [0, 1, 0, 0, 0, 0, 0, 0]), // -b5 Z12
    term!(-2, [1, 0, 0, 0, 1], [0, 0, 1, 0, 0, 0, 0, 0]), // -2b1b5 Z22
    term!(1, [0, 0, 1, 1, 0], [0, 0, 0, 0, 0, 0, 0, 0]), // b3b4
    term!(-1, [0, 1, 0, 0, 1], [0, 0, 0, 0, 0, 0, 0, 0]), // -b2b5
];

const F11: &[Term] = &[
    term!(1, [0, 0, 0, 0, 0], [0, 0, 0, 1, 0, 0, 1, 0]), // Z111Z222
    term!(-1, [0, 0, 0, 0, 0], [0, 0, 0, 0, 1, 1, 0, 0]), // -Z112Z122
    term!(-2, [0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0, 0, 1]), // -2 Z Z12
    term!(1, [0, 0, 0, 0, 0], [2, 0, 0, 0, 0, 0, 0, 0]), // Z11²
    term!(-2, [1, 0, 0, 0, 0], [1, 1, 0, 0, 0, 0, 0, 0]), // -2b1 Z11Z12
    term!(3, [0, 1, 0, 0, 0], [1, 0, 1, 0, 0, 0, 0, 0]), // 3b2 Z11Z22
    term!(-2, [0, 0, 1, 0, 0], [0, 1, 1, 0, 0, 0, 0, 0]), // -2b3 Z12Z22
    term!(1, [0, 0, 0, 1, 0], [0, 0, 2, 0, 0, 0, 0, 0]), // b4 Z22²
    term!(-5, [0, 1, 0, 0, 0], [0, 0, 0, 0, 0, 0, 0, 1]), // -5b2 Z
    term!(1, [0, 0, 1, 0, 0], [1, 0, 0, 0, 0, 0, 0, 0]), // b3 Z11
    term!(3, [0, 2, 0, 0, 0], [0, 1, 0, 0, 0, 0, 0, 0]), // 3b2² Z12
    term!(-2, [1, 0, 1, 0, 0], [0, 1, 0, 0, 0, 0, 0, 0]), // -2b1b3 Z12
    term!(1, [1, 0, 0, 1, 0], [0, 0, 1, 0, 0, 0, 0, 0]), // b1b4 Z22
    term!(-1, [0, 0, 0, 0, 1], [0, 0, 1, 0, 0, 0, 0, 0]), // -b5 Z22
    term!(-2, [0, 1, 0, 1, 0], [0, 0, 0, 0, 0, 0, 0, 0]), // -2b2b4
];

const F12: &[Term] = &[
    term!(1, [0, 0, 0, 0, 0], [0, 0, 0, 0, 0, 2, 0, 0]), // Z122²
    term!(-1, [0, 0, 0, 0, 0], [0, 0, 0, 0, 1, 0, 1, 0]), // -Z112Z222
    term!(1, [0, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0, 0, 1]), // Z22 Z
    term!(2, [0, 0, 0, 0, 0], [1, 1, 0, 0, 0, 0, 0, 0]), // 2 Z11Z12
    term!(-1, [1, 0, 0, 0, 0], [1, 0, 1, 0, 0, 0, 0, 0]), // -b1 Z11Z22
    term!(2, [1, 0, 0, 0, 0], [0, 0, 0, 0, 0, 0, 0, 1]), // 2b1 Z
    term!(1, [0, 0, 1, 0, 0], [0, 1, 0, 0, 0, 0, 0, 0]), // b3 Z12
    term!(-1, [1, 1, 0, 0, 0], [0, 1, 0, 0, 0, 0, 0, 0]), // -b1b2 Z12
    term!(1, [1, 0, 0, 1, 0], [0, 0, 0, 0, 0, 0, 0, 0]), // b1b4
    term!(-1, [0, 0, 0, 0, 1], [0, 0, 0, 0, 0, 0, 0, 0]), // -b5
];

const F13: &[Term] = &[
    term!(1, [0, 0, 0, 0, 0], [0, 1, 0, 1, 0, 0, 0, 0]), // Z111Z12
    term!(-1, [0, 0, 0, 0, 0], [1, 0, 0, 0, 1, 0, 0, 0]), // -Z112Z11
    term!(-1, [0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1, 0, 0]), // -b4 Z122
    term!(2, [0, 0, 0, 0, 1], [0, 0, 0, 0, 0, 0, 1, 0]), // 2b5 Z222
];

const F14: &[Term] = &[
    term!(2, [0, 0, 0, 0, 0], [1, 0, 0, 0, 0, 1, 0, 0]), // 2 Z122Z11
    term!(-1, [0, 0, 0, 0, 0], [0, 1, 0, 0, 1, 0, 0, 0]), // -Z112Z12
    term!(-1, [0, 0, 0, 0, 0], [0, 0, 1, 1, 0, 0, 0, 0]), // -Z111Z22
    term!(-1, [0, 1, 0, 0, 0], [0, 0, 0, 0, 1, 0, 0, 0]), // -b2 Z112
    term!(2, [0, 0, 1, 0, 0], [0, 0, 0, 0, 0, 1, 0, 0]), // 2b3 Z122
    term!(-1, [0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 0, 1, 0]), // -b4 Z222
];

const EQUATIONS: [&[Term]; 14] = [
    F1, F2, F3, F4, F5, F6, F7, F8, F9, F10, F11, F12, F13, F14,
];

/// Equations whose homogenization carries an extra factor of `Z0`, making
/// their restriction to the theta chart identically zero (f9, f11, f12).
const THETA_TRIVIAL: [bool; 14] = [
    false, false, false, false, false, false, false, false, true, false, true, true, false, false,
];

fn eval_terms(terms: &[Term], b: &[Fp; 5], zs: &[Fp; 8], max_degree_only: bool) -> Fp {
    let p = b[0].prime();
    let max_deg = terms
        .iter()
        .map(|t| t.z.iter().map(|&e| e as u32).sum::<u32>())
        .max()
        .unwrap_or(0);
    let mut acc = Fp::zero(p);
    for t in terms {
        if max_degree_only && t.z.iter().map(|&e| e as u32).sum::<u32>() != max_deg {
            continue;
        }
        let mut m = Fp::from_i64(p, t.c);
        for (i, &e) in t.b.iter().enumerate() {
            for _ in 0..e {
                m = m * b[i];
            }
        }
        for (i, &e) in t.z.iter().enumerate() {
            for _ in 0..e {
                m = m * zs[i];
            }
        }
        acc = acc + m;
    }
    acc
}

/// Evaluates the fourteen defining equations at a point: the affine forms on
/// the `z0 = 1` chart, their homogenizations on the theta chart. All values
/// are zero exactly when the point lies on the embedded Jacobian (on the
/// theta chart the equations constrain up to the hyperplane sections that
/// survive homogenization).
pub fn defining_residuals(pt: &GrantPoint, curve: &Curve) -> [Fp; 14] {
    let b = curve.coefficients();
    let zs = pt.azs();
    let p = curve.prime();
    let theta = pt.chart() == Chart::Theta;
    std::array::from_fn(|i| {
        if theta && THETA_TRIVIAL[i] {
            Fp::zero(p)
        } else {
            eval_terms(EQUATIONS[i], &b, &zs, theta)
        }
    })
}

// ---------------------------------------------------------------------------
// Addition law on the affine chart.
// ---------------------------------------------------------------------------

/// Values of the ten helper functions at a pair `(Q, R)` of affine points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdditionScratch {
    pub q: Fp,
    pub q1: Fp,
    pub q2: Fp,
    pub q11: Fp,
    pub q12: Fp,
    pub q22: Fp,
    pub q111: Fp,
    pub q112: Fp,
    pub q122: Fp,
    pub q222: Fp,
}

/// Evaluates the helper functions of the addition law. Both points must be
/// on the affine chart.
pub fn addition_scratch(qp: &GrantPoint, rp: &GrantPoint, curve: &Curve) -> AdditionScratch {
    assert_eq!(qp.chart(), Chart::Affine, "Q must be on the affine chart");
    assert_eq!(rp.chart(), Chart::Affine, "R must be on the affine chart");
    let p = curve.prime();
    let [b1, b2, b3, b4, b5] = curve.coefficients();
    let c = |n: i64| Fp::from_i64(p, n);

    let (z11q, z12q, z22q) = (qp.z11, qp.z12, qp.z22);
    let (z111q, z112q, z122q, z222q, zq) = (qp.z111, qp.z112, qp.z122, qp.z222, qp.z);
    let (z11r, z12r, z22r) = (rp.z11, rp.z12, rp.z22);
    let (z111r, z112r, z122r, z222r, zr) = (rp.z111, rp.z112, rp.z122, rp.z222, rp.z);

    // the (2z - b2 z12 + b4) abbreviation
    let eq = c(2) * zq - b2 * z12q + b4;
    let er = c(2) * zr - b2 * z12r + b4;

    let q = z11q - z11r + z12q * z22r - z12r * z22q;

    let q1 = c(2) * z111q - c(2) * z111r + c(2) * z112q * z22r - c(2) * z112r * z22q
        + c(2) * z122r * z12q
        - c(2) * z122q * z12r;

    let q2 = c(2) * z112q - c(2) * z112r + c(2) * z122q * z22r - c(2) * z122r * z22q
        + c(2) * z222r * z12q
        - c(2) * z222q * z12r;

    let q11 = c(4) * b3 * q + c(4) * b4 * (z12q - z12r) + c(4) * (eq * z12r) - c(4) * (er * z12q)
        - c(8) * b5 * (z22q - z22r)
        + c(2) * (c(2) * z112q * c(2) * z122r - c(2) * z112r * c(2) * z122q);

    let q12 = c(4) * b3 * (z12q - z12r) + c(2) * b2 * (z12q * z22r) - c(2) * b2 * (z12r * z22q)
        - c(4) * (z11q * z12r - z11r * z12q)
        + c(2) * (eq * z22r - er * z22q)
        - c(2) * b4 * (z22q - z22r)
        + c(2) * z222r * c(2) * z112q
        - c(2) * z222q * c(2) * z112r;

    let q22 = c(8) * b1 * (z12q * z22r - z12r * z22q) + c(4) * b2 * z12q - c(4) * b2 * z12r
        - c(8) * (z11q * z22r - z11r * z22q)
        - c(4) * (eq - er)
        + c(2) * (c(2) * z122q * c(2) * z222r - c(2) * z122r * c(2) * z222q);

    let q111 = c(4) * b3 * q1
        + c(4) * (c(2) * z111q * z22q * z12r - c(2) * z111r * z22r * z12q)
        + c(2) * z122r * (c(2) * z12q * (c(6) * z11q - c(2) * z11r + c(4) * b3) - c(4) * b4 * z22q)
        - c(2) * z122q * (c(2) * z12r * (c(6) * z11r - c(2) * z11q + c(4) * b3) - c(4) * b4 * z22r)
        + c(2) * z112q * (z12r * (c(12) * z12r - c(8) * z12q + c(4) * b2) + c(4) * b4)
        - c(2) * z112r * (z12q * (c(12) * z12q - c(8) * z12r + c(4) * b2) + c(4) * b4);

    let q112 = c(2) * z222q * (c(4) * z11q * z12r - c(4) * z12r * b3 - c(8) * b5)
        + c(2) * z112q * (-(c(4) * z11r) + c(4) * z12r * z22q + z12r * (c(12) * z22r + c(8) * b1) + c(4) * b3)
        + c(2) * z112r * (c(4) * z11q + z12q * (-(c(12) * z22q) - c(4) * z22r - c(8) * b1) - c(4) * b3)
        + c(2) * z122q
            * (-(c(8) * z11r * z22r) - c(8) * z12q * z12r - c(4) * z12r * z12r - c(4) * z12r * b2
                + c(4) * z22r * b3
                + c(4) * b4)
        + c(2) * z122r
            * (c(8) * z11q * z22q + c(4) * z12q * z12q + z12q * (c(8) * z12r + c(4) * b2)
                - c(4) * z22q * b3
                - c(4) * b4)
        + c(2) * z222r * (z12q * (-(c(4) * z11r) + c(4) * b3) + c(8) * b5);

    let q122 = c(2) * z112r * (-(c(6) * z22q * z22q) + z22q * (-(c(2) * z22r) - c(4) * b1) - c(2) * b2)
        + c(2) * z122r * (-(c(4) * z11q) + z22q * (c(4) * z12r - c(2) * b2) - c(4) * b3)
        + c(2) * z222q
            * (c(2) * z11q * z22r - c(4) * z11r * z22r - c(2) * z12r * z12r - c(4) * z12r * b2
                - c(2) * b4)
        + c(2) * z112q * (c(2) * z22q * z22r + c(6) * z22r * z22r + c(4) * z22r * b1 + c(2) * b2)
        + c(2) * z222r
            * (c(4) * z11q * z22q - c(2) * z11r * z22q + c(2) * z12q * z12q + c(4) * z12q * b2
                + c(2) * b4)
        + c(2) * z122q * (c(4) * z11r - c(4) * z12q * z22r + c(2) * z22r * b2 + c(4) * b3);

    let q222 = c(2) * z222r * (-(c(12) * z11q) + c(4) * z11r + z12q * (c(12) * z22q + c(16) * b1))
        + c(2) * z122r
            * (-(c(8) * z12q) - c(8) * z12r - c(12) * z22q * z22q - c(16) * z22q * b1 - c(8) * b2)
        + c(2) * z112q * (-(c(4) * z22q) - c(8) * z22r)
        + c(2) * z222q * (-(c(4) * z11q) + c(12) * z11r + z12r * (-(c(12) * z22r) - c(16) * b1))
        + c(2) * z112r * (c(8) * z22q + c(4) * z22r)
        + c(2) * z122q
            * (c(8) * z12q + c(8) * z12r + c(12) * z22r * z22r + c(16) * z22r * b1 + c(8) * b2);

    AdditionScratch {
        q,
        q1,
        q2,
        q11,
        q12,
        q22,
        q111,
        q112,
        q122,
        q222,
    }
}

/// Explicit group law on the affine chart.
///
/// Preconditions (checked): `Q, R, Q+R, Q-R` all avoid the theta locus —
/// verified through the Mumford dictionary — and `q(Q, R) ≠ 0`. Outside
/// that domain the caller falls back to Cantor addition.
pub fn grant_add(qp: &GrantPoint, rp: &GrantPoint, curve: &Curve) -> Result<GrantPoint> {
    if qp.chart() != Chart::Affine || rp.chart() != Chart::Affine {
        return Err(Error::FormulaDomain(
            "both inputs must lie on the affine chart".into(),
        ));
    }
    let dq = mumford_from_grant(qp, curve)?;
    let dr = mumford_from_grant(rp, curve)?;
    let sum = dq.add(&dr);
    let diff = dq.add(&dr.negate());
    if sum.is_in_theta() {
        return Err(Error::FormulaDomain("Q + R lies in the theta locus".into()));
    }
    if diff.is_in_theta() {
        return Err(Error::FormulaDomain("Q - R lies in the theta locus".into()));
    }
    let s = addition_scratch(qp, rp, curve);
    if s.q.is_zero() {
        return Err(Error::FormulaDomain("q(Q, R) = 0".into()));
    }

    let p = curve.prime();
    let c = |n: u64| p.elem(n);
    let b2 = curve.b2();
    let b4 = curve.b4();
    let half = c(2).try_inv().unwrap();
    let quarter = c(4).try_inv().unwrap();
    let i8 = c(8).try_inv().unwrap();
    let i16 = c(16).try_inv().unwrap();
    let qi = s.q.try_inv().unwrap();
    let r1 = s.q1 * qi;
    let r2 = s.q2 * qi;

    let z11 = -qp.z11 - rp.z11 + quarter * r1 * r1 - quarter * s.q11 * qi;
    let z12 = -qp.z12 - rp.z12 + quarter * r1 * r2 - quarter * s.q12 * qi;
    let z22 = -qp.z22 - rp.z22 + quarter * r2 * r2 - quarter * s.q22 * qi;

    let z111 = -(qp.z111 + rp.z111) * half + c(3) * i16 * r1 * (s.q11 * qi)
        - i16 * s.q111 * qi
        - i8 * r1 * r1 * r1
        + c(3) * quarter * (qp.z11 + rp.z11) * r1;

    let z112 = -(qp.z112 + rp.z112) * half + i16 * r2 * (s.q11 * qi) + i8 * r1 * (s.q12 * qi)
        - i16 * s.q112 * qi
        - i8 * r2 * r1 * r1
        + c(3) * quarter * (qp.z12 + rp.z12) * r1;

    let z122 = -(qp.z122 + rp.z122) * half + i16 * r1 * (s.q22 * qi) + i8 * r2 * (s.q12 * qi)
        - i16 * s.q122 * qi
        - i8 * r1 * r2 * r2
        + c(3) * i8 * (qp.z12 + rp.z12) * r2
        + c(3) * i8 * (qp.z22 + rp.z22) * r1;

    let z222 = -(qp.z222 + rp.z222) * half + c(3) * i16 * r2 * (s.q22 * qi)
        - i16 * s.q222 * qi
        - i8 * r2 * r2 * r2
        + c(3) * quarter * (qp.z22 + rp.z22) * r2;

    let z = (z11 * z22 - z12 * z12 + b2 * z12 - b4) * half;

    let out = GrantPoint::from_azs(p, [z11, z12, z22, z111, z112, z122, z222, z]);
    debug_assert!(
        defining_residuals(&out, curve).iter().all(Fp::is_zero),
        "grant_add output off the variety"
    );
    Ok(out)
}

// ---------------------------------------------------------------------------
// Zero locus of q_R.
// ---------------------------------------------------------------------------

/// Desk-scale census of `{Q ∈ U(F_p) : q(Q, R) = 0}` for a fixed `R`.
#[derive(Debug, Clone)]
pub struct QrZeroLocusReport {
    /// Size of the zero set of `q_R` inside `U(F_p)`.
    pub zero_set_size: usize,
    /// How many of the translates `Θ(F_p) ± R` land in `U(F_p)`.
    pub theta_translates_in_u: usize,
    /// Common-zero counts `|{q_R = 0} ∩ {q_R' = 0} ∩ U(F_p)|` for the
    /// sampled `R' ≠ ±R`.
    pub pair_common_zero_counts: Vec<usize>,
    /// Maximum of the pair counts (0 when no pair was sampled).
    pub max_pair_common_zeros: usize,
}

/// For fixed `R` on the affine chart: enumerates the zero set of `q_R` over
/// `U(F_p)`, verifies that the translates `(Θ(F_p) ± R) ∩ U` are contained
/// in it, and checks `|{q_R = 0} ∩ {q_R'} = 0} ∩ U| <= 20` for sampled
/// `R' ≠ ±R`. Any violated bound is an error carrying the counterexample.
pub fn q_r_zero_locus_check<R: rand::Rng>(
    rp: &GrantPoint,
    curve: &Curve,
    pair_samples: usize,
    rng: &mut R,
) -> Result<QrZeroLocusReport> {
    let dr = mumford_from_grant(rp, curve)?;
    if dr.is_in_theta() {
        return Err(Error::FormulaDomain("R must lie in U".into()));
    }
    let all = crate::jacobian::enumerate_jacobian(curve)?;
    let u_elems: Vec<&MumfordDivisor> = all.iter().filter(|d| !d.is_in_theta()).collect();
    let theta: Vec<&MumfordDivisor> = all.iter().filter(|d| d.is_in_theta()).collect();

    let q_of = |a: &GrantPoint, b: &GrantPoint| a.z11 - b.z11 + a.z12 * b.z22 - b.z12 * a.z22;

    let zero_set = |target: &GrantPoint| -> std::collections::HashSet<MumfordDivisor> {
        u_elems
            .iter()
            .filter(|d| q_of(&grant_embed(d), target).is_zero())
            .map(|d| (*d).clone())
            .collect()
    };
    let zr = zero_set(rp);

    // Θ ± R containment
    let mut translates = 0usize;
    for t in &theta {
        for s in [t.add(&dr), t.add(&dr.negate())] {
            if !s.is_in_theta() {
                translates += 1;
                if !zr.contains(&s) {
                    return Err(Error::InvariantViolation(format!(
                        "theta translate {} escapes the zero set of q_R for R = {}",
                        s.to_json(),
                        dr.to_json()
                    )));
                }
            }
        }
    }

    // pair bound for sampled R' ≠ ±R
    let mut pair_counts = Vec::new();
    let mut attempts = 0;
    while pair_counts.len() < pair_samples && attempts < pair_samples * 20 {
        attempts += 1;
        let cand = u_elems[rng.gen_range(0..u_elems.len())];
        if *cand == dr || *cand == dr.negate() {
            continue;
        }
        let zr2 = zero_set(&grant_embed(cand));
        let common = zr.intersection(&zr2).count();
        if common > 20 {
            return Err(Error::InvariantViolation(format!(
                "common zero set of q_R, q_R' has {common} > 20 points for R = {}, R' = {}",
                dr.to_json(),
                cand.to_json()
            )));
        }
        pair_counts.push(common);
    }

    let max_pair = pair_counts.iter().copied().max().unwrap_or(0);
    Ok(QrZeroLocusReport {
        zero_set_size: zr.len(),
        theta_translates_in_u: translates,
        pair_common_zero_counts: pair_counts,
        max_pair_common_zeros: max_pair,
    })
}
