//! Exhaustive small-field verification of the two intersection lemmas the
//! lower-bound argument rests on:
//!
//! - translate bound: `|{Θ(F_p) + D} ∩ Θ(F_p)| <= 2` for every `D ∈ U(F_p)`,
//! - common-zero bound: `|{q_R = 0} ∩ {q_R' = 0} ∩ U(F_p)| <= 20` for
//!   `R ≠ ±R'`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use jacwalk_core::curve::Curve;
use jacwalk_core::grant::{grant_embed, q_r_zero_locus_check};
use jacwalk_core::jacobian::enumerate_jacobian;
use jacwalk_core::Error;

use crate::{mix_seed, HarnessError, Result};

/// Maxima observed during one curve sweep; all checks passed if this exists.
#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub p: u64,
    pub b: [u64; 5],
    pub u_size: usize,
    pub theta_size: usize,
    /// Max of `|{Θ + D} ∩ Θ|` over all `D ∈ U(F_p)` (bound: 2).
    pub max_theta_translate_intersection: usize,
    /// How many `D` hit intersection 0 / 1 / 2.
    pub translate_histogram: [usize; 3],
    /// Sampled base points for the `q_R` checks.
    pub qr_samples: usize,
    /// Largest zero set `|{q_R = 0} ∩ U(F_p)|` seen.
    pub max_qr_zero_set: usize,
    /// Max common-zero count over sampled pairs (bound: 20).
    pub max_pair_common_zeros: usize,
}

/// Sweeps one curve exhaustively (`p <= 13`). Any violated bound surfaces as
/// an error carrying the counterexample divisor.
pub fn verify_lemmas(curve: &Curve, seed: u64, qr_samples: usize) -> Result<LemmaReport> {
    let all = enumerate_jacobian(curve)?;
    let theta: Vec<_> = all.iter().filter(|d| d.is_in_theta()).collect();
    let u_elems: Vec<_> = all.iter().filter(|d| !d.is_in_theta()).collect();
    let theta_set: std::collections::HashSet<_> = theta.iter().map(|d| (*d).clone()).collect();

    let mut histogram = [0usize; 3];
    let mut max_translate = 0usize;
    for d in &u_elems {
        let count = theta.iter().filter(|t| theta_set.contains(&t.add(d))).count();
        if count > 2 {
            return Err(HarnessError::Core(Error::InvariantViolation(format!(
                "theta translate bound violated: |{{Θ + D}} ∩ Θ| = {count} for D = {}",
                d.to_json()
            ))));
        }
        histogram[count] += 1;
        max_translate = max_translate.max(count);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, curve.prime().get() ^ 0x6c65_6d6d));
    use rand::Rng;
    let mut max_zero_set = 0usize;
    let mut max_pair = 0usize;
    for _ in 0..qr_samples {
        let r = u_elems[rng.gen_range(0..u_elems.len())];
        let report = q_r_zero_locus_check(&grant_embed(r), curve, 5, &mut rng)?;
        max_zero_set = max_zero_set.max(report.zero_set_size);
        max_pair = max_pair.max(report.max_pair_common_zeros);
    }

    Ok(LemmaReport {
        p: curve.prime().get(),
        b: curve.coefficients().map(|c| c.value()),
        u_size: u_elems.len(),
        theta_size: theta.len(),
        max_theta_translate_intersection: max_translate,
        translate_histogram: histogram,
        qr_samples,
        max_qr_zero_set: max_zero_set,
        max_pair_common_zeros: max_pair,
    })
}
