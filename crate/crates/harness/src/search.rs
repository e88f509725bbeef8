//! Seeded curve search: sample nonsingular curves, compute the group data,
//! and pick a step element of maximal available order per curve.
//!
//! The interesting walks are the ones where `t = ord(D)` approaches the
//! group exponent, so for every sampled curve the search combines random
//! elements into one whose order is the lcm of everything seen (in an
//! abelian group, elements of orders m and n combine into one of order
//! lcm(m, n) by splitting along prime powers).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use jacwalk_core::curve::Curve;
use jacwalk_core::field::Prime;
use jacwalk_core::jacobian::{
    element_order, group_order, random_divisor, GroupInfo, MumfordDivisor,
};

use crate::{mix_seed, HarnessError, Result};

/// Orders sampled per curve before settling for the best combination.
const ELEMENT_SAMPLES: usize = 12;
/// Nonsingular curves sampled per requested curve.
const OVERSAMPLE: u32 = 2;

/// A curve plus the chosen maximal-order step element.
#[derive(Debug, Clone)]
pub struct CurveSelection {
    pub curve: Curve,
    pub d: MumfordDivisor,
    pub t: u64,
    pub group: GroupInfo,
}

/// JSON shape for `curve-search` output.
#[derive(Serialize)]
pub struct CurveSelectionJson {
    pub p: u64,
    pub b: [u64; 5],
    pub d_u: Vec<u64>,
    pub d_v: Vec<u64>,
    pub t: u64,
    pub order: u64,
}

impl From<&CurveSelection> for CurveSelectionJson {
    fn from(s: &CurveSelection) -> Self {
        CurveSelectionJson {
            p: s.curve.prime().get(),
            b: s.curve.coefficients().map(|c| c.value()),
            d_u: s.d.u().coeffs().iter().map(|c| c.value()).collect(),
            d_v: s.d.v().coeffs().iter().map(|c| c.value()).collect(),
            t: s.t,
            order: s.group.order,
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Combines elements of orders `ma`, `mb` into one of order `lcm(ma, mb)`:
/// for each prime power `q^e` dividing the lcm, take the `q`-primary part of
/// whichever element carries it.
fn combine_to_lcm(
    a: &MumfordDivisor,
    ma: u64,
    b: &MumfordDivisor,
    mb: u64,
    info: &GroupInfo,
) -> (MumfordDivisor, u64) {
    let l = lcm(ma, mb);
    let mut out = MumfordDivisor::identity(a.curve());
    for &(q, _) in &info.factorization {
        let mut qe = 1u64;
        while l.is_multiple_of(qe * q) {
            qe *= q;
        }
        if qe == 1 {
            continue;
        }
        let part = if ma.is_multiple_of(qe) {
            a.mul_scalar(ma / qe)
        } else {
            b.mul_scalar(mb / qe)
        };
        out = out.add(&part);
    }
    debug_assert_eq!(element_order(&out, info), l);
    (out, l)
}

/// Deterministically samples nonsingular curves over `F_p`, selects a
/// maximal-order element on each, and returns the `count` curves with the
/// largest `t` (ties broken by sampling order).
pub fn find_curves(p: Prime, count: u32, seed: u64) -> Result<Vec<CurveSelection>> {
    let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, p.get()));
    let budget = count * OVERSAMPLE;
    let mut picks: Vec<(usize, CurveSelection)> = Vec::new();
    let mut attempts = 0u64;
    let max_attempts = 1000 * budget as u64;
    use rand::Rng;
    for idx in 0..budget {
        let curve = loop {
            attempts += 1;
            if attempts > max_attempts {
                return Err(HarnessError::SearchExhausted);
            }
            let b: [u64; 5] = std::array::from_fn(|_| rng.gen_range(0..p.get()));
            if let Ok(c) = Curve::new(p, b) {
                break c;
            }
        };
        let group = group_order(&curve)?;
        let mut best = MumfordDivisor::identity(curve);
        let mut best_ord = 1u64;
        for _ in 0..ELEMENT_SAMPLES {
            if best_ord == group.order {
                break;
            }
            let cand = random_divisor(&curve, &mut rng);
            let cand_ord = element_order(&cand, &group);
            if lcm(best_ord, cand_ord) > best_ord {
                (best, best_ord) = combine_to_lcm(&best, best_ord, &cand, cand_ord, &group);
            }
        }
        picks.push((
            idx as usize,
            CurveSelection {
                curve,
                d: best,
                t: best_ord,
                group,
            },
        ));
    }
    picks.sort_by(|(ia, a), (ib, b)| b.t.cmp(&a.t).then(ia.cmp(ib)));
    Ok(picks
        .into_iter()
        .take(count as usize)
        .map(|(_, s)| s)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_given_seed() {
        let p = Prime::new(11).unwrap();
        let a = find_curves(p, 3, 99).unwrap();
        let b = find_curves(p, 3, 99).unwrap();
        assert_eq!(a.len(), 3);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.curve, y.curve);
            assert_eq!(x.d, y.d);
            assert_eq!(x.t, y.t);
        }
        let c = find_curves(p, 3, 100).unwrap();
        assert!(a.iter().zip(&c).any(|(x, y)| x.curve != y.curve || x.d != y.d));
    }

    #[test]
    fn orders_divide_group_order() {
        for pv in [7u64, 11, 13] {
            let p = Prime::new(pv).unwrap();
            for sel in find_curves(p, 3, 5).unwrap() {
                assert_eq!(sel.group.order % sel.t, 0);
                assert_eq!(element_order(&sel.d, &sel.group), sel.t);
                assert!(sel.d.mul_scalar(sel.t).is_identity());
            }
        }
    }

    #[test]
    fn finds_nontrivial_order_regime() {
        // the walk is only interesting for t > p; with orders near p² a
        // maximal-order element essentially always clears that bar
        let p = Prime::new(11).unwrap();
        let sels = find_curves(p, 3, 1).unwrap();
        assert!(sels.iter().any(|s| s.t > 11));
    }

    #[test]
    fn combine_reaches_lcm() {
        let curve = Curve::new(Prime::new(7).unwrap(), [0, 0, 0, 0, 1]).unwrap();
        let info = group_order(&curve).unwrap(); // order 50
        let a = MumfordDivisor::from_json(curve, r#"{"u":[6,1],"v":[3]}"#).unwrap(); // order 25
        let ord_a = element_order(&a, &info);
        // find a 2-torsion element: x-coordinate 6 has y = 0
        let b = MumfordDivisor::from_json(curve, r#"{"u":[1,1],"v":[]}"#).unwrap();
        let ord_b = element_order(&b, &info);
        assert_eq!((ord_a, ord_b), (25, 2));
        let (c, ord_c) = combine_to_lcm(&a, ord_a, &b, ord_b, &info);
        assert_eq!(ord_c, 50);
        assert_eq!(element_order(&c, &info), 50);
    }
}
