//! Conjugation invariance as root shifting: the law of the ball at the root against the law
//! of the ball at the endpoint of `g` read from the root.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::canon::{canonical_key, CanonicalKey};
use crate::word::Word;

use super::stats::{bonferroni_z, within};
use super::{CylinderSampler, MeasureError};

#[derive(Debug, Clone, PartialEq)]
pub struct ShiftRow {
    pub key: CanonicalKey,
    pub at_root: u64,
    pub shifted: u64,
    /// Pooled standard error of the frequency difference.
    pub standard_error: f64,
    pub pass: bool,
}

impl ShiftRow {
    pub fn difference(&self, samples: u64) -> f64 {
        (self.at_root as f64 - self.shifted as f64) / samples as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShiftReport {
    pub word: Word,
    pub radius: usize,
    /// Samples on each side.
    pub samples: u64,
    pub critical_z: f64,
    pub pass: bool,
    pub rows: Vec<ShiftRow>,
    /// Index of the failing row with the largest frequency gap.
    pub worst: Option<usize>,
}

fn tally(keys: Vec<CanonicalKey>) -> BTreeMap<CanonicalKey, u64> {
    let mut out = BTreeMap::new();
    for k in keys {
        *out.entry(k).or_default() += 1;
    }
    out
}

/// Two independent sample sets: indices `0..n` keyed at the root, indices `n..2n` keyed
/// at `read_word(root, g)`. Needs sampler balls of radius at least `r + |g|`.
pub fn check_shift_invariance<S: CylinderSampler + ?Sized>(
    sampler: &S,
    g: &Word,
    r: usize,
    n: u64,
    seed: u64,
) -> Result<ShiftReport, MeasureError> {
    if n == 0 {
        return Err(MeasureError::NoSamples);
    }
    let g = g.reduce();
    let need = r + g.len();
    if sampler.radius() < need {
        return Err(MeasureError::RadiusTooSmall { have: sampler.radius(), need });
    }
    let at_root: Vec<CanonicalKey> = (0..n)
        .into_par_iter()
        .map(|k| Ok(canonical_key(&sampler.sample(seed, k)?.restrict(r))))
        .collect::<Result<_, MeasureError>>()?;
    let shifted: Vec<CanonicalKey> = (n..2 * n)
        .into_par_iter()
        .map(|k| {
            let nb = sampler.sample(seed, k)?;
            let rank = nb.rank().unwrap_or(0);
            if g.max_index() as usize > rank {
                return Err(MeasureError::BadGenerator { index: g.max_index(), rank });
            }
            let end = nb.read_word(nb.root(), &g).expect("ball covers the shift");
            Ok(canonical_key(&nb.sub_ball(end, r).0))
        })
        .collect::<Result<_, MeasureError>>()?;
    let (a, b) = (tally(at_root), tally(shifted));
    let keys: BTreeSet<&CanonicalKey> = a.keys().chain(b.keys()).collect();
    let critical_z = bonferroni_z(keys.len());
    let nf = n as f64;
    let rows: Vec<ShiftRow> = keys
        .into_iter()
        .map(|k| {
            let (ca, cb) = (a.get(k).copied().unwrap_or(0), b.get(k).copied().unwrap_or(0));
            let pooled = (ca + cb) as f64 / (2.0 * nf);
            let se = (pooled * (1.0 - pooled) * 2.0 / nf).sqrt();
            let pass = ca == cb || within((ca as f64 - cb as f64) / nf, se, critical_z);
            ShiftRow { key: k.clone(), at_root: ca, shifted: cb, standard_error: se, pass }
        })
        .collect();
    let worst = rows
        .iter()
        .enumerate()
        .filter(|(_, row)| !row.pass)
        .max_by(|(_, x), (_, y)| x.difference(n).abs().total_cmp(&y.difference(n).abs()))
        .map(|(k, _)| k);
    Ok(ShiftReport { word: g, radius: r, samples: n, critical_z, pass: worst.is_none(), rows, worst })
}
