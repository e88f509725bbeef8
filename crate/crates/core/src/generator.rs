//! The additive walk `W_n = nD + W_0` on `J_C(F_p)` and its coordinate
//! output streams `w_n = h(W_n)`.
//!
//! `h` ranges over the Mumford coefficients (`u0, u1, v0, v1`, reading
//! `u = X² + u1·X + u0`, `v = v1·X + v0`) and the affine projective
//! coordinates. Whenever `W_n` hits the theta locus the coordinate functions
//! have a pole there and the stream emits `0`, recording the index. The
//! stream is purely periodic with period dividing `t = ord(D)`.

use std::io::Write;

use crate::curve::Curve;
use crate::field::Fp;
use crate::grant::grant_embed;
use crate::jacobian::{element_order, GroupInfo, MumfordDivisor};
use crate::{Error, Result};

/// Cap for the full-period theta census.
pub const MAX_CENSUS_PERIOD: u64 = 1 << 24;

/// Coordinate function read off each walk state. `u2` is excluded: it is
/// constant (1) on `U`, so it carries no randomness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoordinateTag {
    U0,
    U1,
    V0,
    V1,
    Z11,
    Z12,
    Z22,
    Z111,
    Z112,
    Z122,
    Z222,
    Z,
}

impl CoordinateTag {
    pub const ALL: [CoordinateTag; 12] = [
        CoordinateTag::U0,
        CoordinateTag::U1,
        CoordinateTag::V0,
        CoordinateTag::V1,
        CoordinateTag::Z11,
        CoordinateTag::Z12,
        CoordinateTag::Z22,
        CoordinateTag::Z111,
        CoordinateTag::Z112,
        CoordinateTag::Z122,
        CoordinateTag::Z222,
        CoordinateTag::Z,
    ];

    /// The Mumford tags, the ones the lower-bound experiments use.
    pub const MUMFORD: [CoordinateTag; 4] = [
        CoordinateTag::U0,
        CoordinateTag::U1,
        CoordinateTag::V0,
        CoordinateTag::V1,
    ];

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "u0" => CoordinateTag::U0,
            "u1" => CoordinateTag::U1,
            "v0" => CoordinateTag::V0,
            "v1" => CoordinateTag::V1,
            "z11" => CoordinateTag::Z11,
            "z12" => CoordinateTag::Z12,
            "z22" => CoordinateTag::Z22,
            "z111" => CoordinateTag::Z111,
            "z112" => CoordinateTag::Z112,
            "z122" => CoordinateTag::Z122,
            "z222" => CoordinateTag::Z222,
            "z" => CoordinateTag::Z,
            other => return Err(Error::UnknownTag(other.into())),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            CoordinateTag::U0 => "u0",
            CoordinateTag::U1 => "u1",
            CoordinateTag::V0 => "v0",
            CoordinateTag::V1 => "v1",
            CoordinateTag::Z11 => "z11",
            CoordinateTag::Z12 => "z12",
            CoordinateTag::Z22 => "z22",
            CoordinateTag::Z111 => "z111",
            CoordinateTag::Z112 => "z112",
            CoordinateTag::Z122 => "z122",
            CoordinateTag::Z222 => "z222",
            CoordinateTag::Z => "z",
        }
    }

    /// Degree of the coordinate function as a rational function on `U` under
    /// the minimal-representative convention: every coordinate is a degree-1
    /// polynomial in the affine coordinates, and the Mumford tags coincide
    /// with `-z12, -z22, z122, z222` through the dictionary.
    pub fn degree(self) -> u64 {
        1
    }

    /// Reads the coordinate off a walk state in `U` (`deg u = 2`).
    fn read(self, d: &MumfordDivisor) -> Fp {
        let p = d.curve().prime();
        let zero = Fp::zero(p);
        match self {
            CoordinateTag::U0 => d.u().coeff(0, zero),
            CoordinateTag::U1 => d.u().coeff(1, zero),
            CoordinateTag::V0 => d.v().coeff(0, zero),
            CoordinateTag::V1 => d.v().coeff(1, zero),
            _ => {
                let g = grant_embed(d);
                match self {
                    CoordinateTag::Z11 => g.z11,
                    CoordinateTag::Z12 => g.z12,
                    CoordinateTag::Z22 => g.z22,
                    CoordinateTag::Z111 => g.z111,
                    CoordinateTag::Z112 => g.z112,
                    CoordinateTag::Z122 => g.z122,
                    CoordinateTag::Z222 => g.z222,
                    CoordinateTag::Z => g.z,
                    _ => unreachable!("Mumford tags handled above"),
                }
            }
        }
    }
}

/// The walk parameters: step `D`, initial value `W0`, and `t = ord(D)`.
#[derive(Debug, Clone)]
pub struct WalkConfig {
    curve: Curve,
    d: MumfordDivisor,
    w0: MumfordDivisor,
    t: u64,
}

impl WalkConfig {
    /// Computes `t = ord(D)` from the group data. Panics if the divisors
    /// come from different curves.
    pub fn new(d: MumfordDivisor, w0: MumfordDivisor, info: &GroupInfo) -> Self {
        assert_eq!(
            d.curve(),
            w0.curve(),
            "walk step and seed on different curves"
        );
        let t = element_order(&d, info);
        WalkConfig {
            curve: d.curve(),
            d,
            w0,
            t,
        }
    }

    pub fn curve(&self) -> Curve {
        self.curve
    }

    pub fn step(&self) -> &MumfordDivisor {
        &self.d
    }

    pub fn initial(&self) -> &MumfordDivisor {
        &self.w0
    }

    /// The order of `D`, which is the period of `(W_n)`.
    pub fn period(&self) -> u64 {
        self.t
    }

    /// `W_n = n·D + W_0` by direct scalar multiplication.
    pub fn walk_nth(&self, n: u64) -> MumfordDivisor {
        self.d.mul_scalar(n).add(&self.w0)
    }

    /// Iterator stepping `W_{n+1} = W_n + D` with one Cantor addition each.
    pub fn iter(&self) -> WalkIter<'_> {
        WalkIter {
            cfg: self,
            state: self.w0.clone(),
        }
    }
}

/// Infinite iterator over walk states, starting at `W_0`.
pub struct WalkIter<'a> {
    cfg: &'a WalkConfig,
    state: MumfordDivisor,
}

impl Iterator for WalkIter<'_> {
    type Item = MumfordDivisor;

    fn next(&mut self) -> Option<MumfordDivisor> {
        let out = self.state.clone();
        self.state = self.state.add(self.cfg.step());
        Some(out)
    }
}

/// A coordinate stream with its pole bookkeeping: `values[n] = 0` exactly at
/// the recorded pole positions (walk states inside Θ).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputStream {
    pub values: Vec<Fp>,
    pub pole_positions: Vec<u64>,
}

impl OutputStream {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_pole(&self, n: u64) -> bool {
        self.pole_positions.binary_search(&n).is_ok()
    }

    /// CSV dump with header `n,w_n,is_pole`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "n,w_n,is_pole")?;
        for (n, v) in self.values.iter().enumerate() {
            writeln!(w, "{},{},{}", n, v.value(), self.is_pole(n as u64))?;
        }
        Ok(())
    }
}

/// Materializes `w_n = h(W_n)` for `n = 0..len`, emitting `0` and recording
/// the index whenever `W_n ∈ Θ`.
pub fn emit_stream(cfg: &WalkConfig, tag: CoordinateTag, len: u64) -> OutputStream {
    let p = cfg.curve().prime();
    let zero = Fp::zero(p);
    let mut values = Vec::with_capacity(len as usize);
    let mut poles = Vec::new();
    for (n, state) in cfg.iter().take(len as usize).enumerate() {
        if state.is_in_theta() {
            values.push(zero);
            poles.push(n as u64);
        } else {
            values.push(tag.read(&state));
        }
    }
    OutputStream {
        values,
        pole_positions: poles,
    }
}

/// Full-period theta-hit census.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThetaCensus {
    /// Number of `n ∈ [0, t)` with `W_n ∈ Θ`.
    pub hits: u64,
    /// `|Θ(F_p)| = |C(F_p)|`.
    pub theta_size: u64,
    /// The period `t` that was scanned.
    pub period: u64,
}

/// Counts theta hits over one full period and checks `hits <= |Θ(F_p)|`
/// (each theta element is visited at most once per period).
pub fn theta_hit_census(cfg: &WalkConfig) -> Result<ThetaCensus> {
    if cfg.period() > MAX_CENSUS_PERIOD {
        return Err(Error::Guard(format!(
            "census needs t <= {MAX_CENSUS_PERIOD}, got {}",
            cfg.period()
        )));
    }
    // |Θ(F_p)| = n1: one class per affine curve point plus the identity.
    let theta_size = cfg.curve().points().len() as u64 + 1;
    let hits = cfg
        .iter()
        .take(cfg.period() as usize)
        .filter(|d| d.is_in_theta())
        .count() as u64;
    if hits > theta_size {
        return Err(Error::InvariantViolation(format!(
            "{hits} theta hits exceed |Θ(F_p)| = {theta_size}"
        )));
    }
    Ok(ThetaCensus {
        hits,
        theta_size,
        period: cfg.period(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Field, Prime};
    use crate::jacobian::{enumerate_jacobian, group_order, random_divisor};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn x5_plus_1() -> Curve {
        Curve::new(Prime::new(7).unwrap(), [0, 0, 0, 0, 1]).unwrap()
    }

    fn sample_cfg(seed: u64) -> WalkConfig {
        let c = x5_plus_1();
        let info = group_order(&c).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = loop {
            let d = random_divisor(&c, &mut rng);
            if !d.is_identity() {
                break d;
            }
        };
        let w0 = random_divisor(&c, &mut rng);
        WalkConfig::new(d, w0, &info)
    }

    #[test]
    fn walk_nth_matches_stepping() {
        let cfg = sample_cfg(1);
        assert_eq!(cfg.walk_nth(0), *cfg.initial());
        assert_eq!(cfg.walk_nth(cfg.period()), *cfg.initial());
        let by_steps: Vec<_> = cfg.iter().take(8).collect();
        for (n, d) in by_steps.iter().enumerate() {
            assert_eq!(cfg.walk_nth(n as u64), *d);
        }
        // five successive additions equal the direct n = 5 computation
        let mut w = cfg.initial().clone();
        for _ in 0..5 {
            w = w.add(cfg.step());
        }
        assert_eq!(cfg.walk_nth(5), w);
    }

    #[test]
    fn step_direct_agreement_random_indices() {
        use rand::Rng;
        let cfg = sample_cfg(9);
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..1_000 {
            let n = rng.gen_range(0..4 * cfg.period());
            assert_eq!(cfg.walk_nth(n + 1), cfg.walk_nth(n).add(cfg.step()));
        }
    }

    #[test]
    fn pole_convention_identity_start() {
        let c = x5_plus_1();
        let info = group_order(&c).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let d = loop {
            let d = random_divisor(&c, &mut rng);
            if !d.is_identity() {
                break d;
            }
        };
        let cfg = WalkConfig::new(d, MumfordDivisor::identity(c), &info);
        let s = emit_stream(&cfg, CoordinateTag::U0, 4);
        // W_0 = identity ∈ Θ: pole, emits 0
        assert!(s.is_pole(0));
        assert!(s.values[0].is_zero());
    }

    #[test]
    fn mumford_grant_dictionary_on_streams() {
        let cfg = sample_cfg(3);
        let n = 2 * cfg.period();
        let pairs = [
            (CoordinateTag::U0, CoordinateTag::Z12),
            (CoordinateTag::U1, CoordinateTag::Z22),
        ];
        for (mumford, grant) in pairs {
            let a = emit_stream(&cfg, mumford, n);
            let b = emit_stream(&cfg, grant, n);
            for i in 0..n as usize {
                if !a.is_pole(i as u64) {
                    // u0 = -z12 and u1 = -z22
                    assert_eq!(a.values[i], -b.values[i]);
                }
            }
        }
        let v0 = emit_stream(&cfg, CoordinateTag::V0, n);
        let z122 = emit_stream(&cfg, CoordinateTag::Z122, n);
        let v1 = emit_stream(&cfg, CoordinateTag::V1, n);
        let z222 = emit_stream(&cfg, CoordinateTag::Z222, n);
        for i in 0..n as usize {
            if !v0.is_pole(i as u64) {
                assert_eq!(v0.values[i], z122.values[i]);
                assert_eq!(v1.values[i], z222.values[i]);
            }
        }
    }

    #[test]
    fn periodicity_and_pole_count() {
        let cfg = sample_cfg(4);
        let t = cfg.period();
        let s = emit_stream(&cfg, CoordinateTag::U0, 2 * t);
        for n in 0..t as usize {
            assert_eq!(s.values[n], s.values[n + t as usize]);
        }
        // pole count over one period equals a direct theta scan
        let direct = cfg
            .iter()
            .take(t as usize)
            .filter(|d| d.is_in_theta())
            .count();
        let in_period = s.pole_positions.iter().filter(|&&n| n < t).count();
        assert_eq!(direct, in_period);
    }

    #[test]
    fn shift_covariance() {
        let cfg = sample_cfg(5);
        let t = cfg.period();
        let info = group_order(&cfg.curve()).unwrap();
        let shifted = WalkConfig::new(cfg.step().clone(), cfg.initial().add(cfg.step()), &info);
        let a = emit_stream(&cfg, CoordinateTag::V1, t + 1);
        let b = emit_stream(&shifted, CoordinateTag::V1, t);
        for n in 0..t as usize {
            assert_eq!(b.values[n], a.values[n + 1]);
        }
    }

    #[test]
    fn census_cyclic_generator_visits_all_of_theta() {
        // J(F_7) of y² = x⁵ + 1 is cyclic of order 50 with generator [X+2, 2]
        let c = x5_plus_1();
        let info = group_order(&c).unwrap();
        let gen = MumfordDivisor::from_json(c, r#"{"u":[2,1],"v":[2]}"#).unwrap();
        assert_eq!(element_order(&gen, &info), info.order);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let w0 = random_divisor(&c, &mut rng);
        let cfg = WalkConfig::new(gen, w0, &info);
        let census = theta_hit_census(&cfg).unwrap();
        // the walk visits every group element once per period
        assert_eq!(census.hits, census.theta_size);
        assert_eq!(census.theta_size, c.count_points().unwrap().n1);
    }

    #[test]
    fn census_degenerate_identity() {
        let c = x5_plus_1();
        let info = group_order(&c).unwrap();
        let id = MumfordDivisor::identity(c);
        let cfg = WalkConfig::new(id.clone(), id, &info);
        assert_eq!(cfg.period(), 1);
        let census = theta_hit_census(&cfg).unwrap();
        assert_eq!(census.hits, 1);
    }

    #[test]
    fn census_bounded_p11() {
        let c = Curve::new(Prime::new(11).unwrap(), [1, 2, 0, 3, 5]).unwrap();
        let info = group_order(&c).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let d = random_divisor(&c, &mut rng);
            let w0 = random_divisor(&c, &mut rng);
            let cfg = WalkConfig::new(d, w0, &info);
            let census = theta_hit_census(&cfg).unwrap();
            assert!(census.hits <= census.theta_size);
        }
    }

    #[test]
    fn all_tags_emit_on_full_group() {
        // every tag yields a well-defined periodic stream
        let c = x5_plus_1();
        let info = group_order(&c).unwrap();
        for d in enumerate_jacobian(&c).unwrap().into_iter().take(6) {
            let cfg = WalkConfig::new(d, MumfordDivisor::identity(c), &info);
            for tag in CoordinateTag::ALL {
                let s = emit_stream(&cfg, tag, cfg.period());
                assert_eq!(s.len() as u64, cfg.period());
                assert_eq!(tag.degree(), 1);
            }
        }
    }

    #[test]
    fn tag_parsing() {
        assert_eq!(CoordinateTag::parse("u0").unwrap(), CoordinateTag::U0);
        assert_eq!(CoordinateTag::parse("z122").unwrap(), CoordinateTag::Z122);
        for tag in CoordinateTag::ALL {
            assert_eq!(CoordinateTag::parse(tag.name()).unwrap(), tag);
        }
        assert!(matches!(
            CoordinateTag::parse("u2"),
            Err(Error::UnknownTag(_))
        ));
    }

    #[test]
    fn csv_dump_format() {
        let cfg = sample_cfg(8);
        let s = emit_stream(&cfg, CoordinateTag::U0, 3);
        let mut buf = Vec::new();
        s.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "n,w_n,is_pole");
        assert_eq!(text.lines().count(), 4);
    }
}
