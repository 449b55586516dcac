//! Cylinder measures on rooted graph spaces and the checks and samplers built on them.

mod reversal;
mod shift;
mod sofic;
pub mod stats;
mod unimodular;
mod witness;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::canon::{canonical_key, CanonError, CanonicalKey};
use crate::factorize::FactorizeError;
use crate::graph::RootedMultigraph;
use crate::lazy::LazyError;
use crate::neighborhood::{ball, Neighborhood};
use crate::schreier::{SchreierError, SchreierGraph};

pub use reversal::{
    estimate_cylinder, exact_reversal_measure, reversal_family_count, reversal_family_count_lazy, CylinderSampler,
    DiracSampler, Probability, ReversalFamilyReport, ReversalModel, ReversalSampler, ReversalSource,
    DEFAULT_CYCLE_BUDGET,
};
pub use shift::{check_shift_invariance, ShiftReport};
pub use sofic::{sofic_lift, SoficReport};
pub use unimodular::{check_unimodular, ClassComparison, UnimodularityReport};
pub use witness::distinctness_witness;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeasureError {
    #[error(transparent)]
    Canon(#[from] CanonError),
    #[error(transparent)]
    Lazy(#[from] LazyError),
    #[error(transparent)]
    Schreier(#[from] SchreierError),
    #[error(transparent)]
    Factorize(#[from] FactorizeError),
    #[error("measure has radius {have}, need at least {need}")]
    RadiusTooSmall { have: usize, need: usize },
    #[error("measures live on different spaces or radii")]
    Incompatible,
    #[error("exact measure has total mass {0}, not 1")]
    NotProbability(String),
    #[error("empty measure")]
    Empty,
    #[error("probability must lie in [0, 1], got {0}")]
    BadProbability(String),
    #[error("generator index {index} outside 1..={rank}")]
    BadGenerator { index: u32, rank: usize },
    #[error("{cycles} cycles exceed the budget of {budget}")]
    CycleBudget { cycles: usize, budget: usize },
    #[error("the two graphs do not share an underlying graph")]
    DifferentBase,
    #[error("at least one sample is required")]
    NoSamples,
}

/// Labeled (`Lambda`, Schreier graphs) or unlabeled (`Omega`) rooted graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Space {
    Lambda,
    Omega,
}

impl Space {
    pub fn name(self) -> &'static str {
        match self {
            Space::Lambda => "lambda",
            Space::Omega => "omega",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Masses {
    Exact(BTreeMap<CanonicalKey, BigRational>),
    Empirical { counts: BTreeMap<CanonicalKey, u64>, samples: u64 },
}

/// A measure on the isomorphism classes of radius-`radius` neighbourhoods.
/// `truncated` marks measures read off finite pieces of infinite graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CylinderMeasure {
    pub space: Space,
    pub radius: usize,
    pub masses: Masses,
    pub truncated: bool,
}

impl CylinderMeasure {
    pub fn exact(space: Space, radius: usize, masses: BTreeMap<CanonicalKey, BigRational>) -> Self {
        CylinderMeasure { space, radius, masses: Masses::Exact(masses), truncated: false }
    }

    pub fn empirical(space: Space, radius: usize, counts: BTreeMap<CanonicalKey, u64>, samples: u64) -> Self {
        CylinderMeasure { space, radius, masses: Masses::Empirical { counts, samples }, truncated: false }
    }

    pub fn with_truncated(mut self, truncated: bool) -> Self {
        self.truncated = truncated;
        self
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.masses, Masses::Exact(_))
    }

    pub fn keys(&self) -> Vec<CanonicalKey> {
        match &self.masses {
            Masses::Exact(m) => m.keys().cloned().collect(),
            Masses::Empirical { counts, .. } => counts.keys().cloned().collect(),
        }
    }

    pub fn len(&self) -> usize {
        match &self.masses {
            Masses::Exact(m) => m.len(),
            Masses::Empirical { counts, .. } => counts.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Sample count for empirical measures.
    pub fn samples(&self) -> Option<u64> {
        match &self.masses {
            Masses::Exact(_) => None,
            Masses::Empirical { samples, .. } => Some(*samples),
        }
    }

    pub fn count(&self, key: &CanonicalKey) -> Option<u64> {
        match &self.masses {
            Masses::Exact(_) => None,
            Masses::Empirical { counts, .. } => Some(counts.get(key).copied().unwrap_or(0)),
        }
    }

    pub fn exact_mass(&self, key: &CanonicalKey) -> Option<BigRational> {
        match &self.masses {
            Masses::Exact(m) => Some(m.get(key).cloned().unwrap_or_else(BigRational::zero)),
            Masses::Empirical { .. } => None,
        }
    }

    /// Mass (exact) or relative frequency (empirical) of `key`.
    pub fn probability(&self, key: &CanonicalKey) -> f64 {
        match &self.masses {
            Masses::Exact(m) => m.get(key).map_or(0.0, |q| q.to_f64().unwrap_or(f64::NAN)),
            Masses::Empirical { counts, samples } => counts.get(key).copied().unwrap_or(0) as f64 / *samples as f64,
        }
    }

    /// `sqrt(p(1-p)/N)` for empirical measures, 0 for exact ones.
    pub fn standard_error(&self, key: &CanonicalKey) -> f64 {
        match &self.masses {
            Masses::Exact(_) => 0.0,
            Masses::Empirical { samples, .. } => {
                let p = self.probability(key);
                (p * (1.0 - p) / *samples as f64).sqrt()
            }
        }
    }

    pub fn total_exact(&self) -> Option<BigRational> {
        match &self.masses {
            Masses::Exact(m) => Some(m.values().fold(BigRational::zero(), |a, b| a + b)),
            Masses::Empirical { .. } => None,
        }
    }

    /// Image under a map on keys; masses or counts of keys with the same image add up.
    pub fn map_keys<F>(&self, space: Space, radius: usize, mut f: F) -> Result<CylinderMeasure, MeasureError>
    where
        F: FnMut(&CanonicalKey) -> Result<CanonicalKey, MeasureError>,
    {
        let masses = match &self.masses {
            Masses::Exact(m) => {
                let mut out: BTreeMap<CanonicalKey, BigRational> = BTreeMap::new();
                for (k, q) in m {
                    *out.entry(f(k)?).or_insert_with(BigRational::zero) += q;
                }
                Masses::Exact(out)
            }
            Masses::Empirical { counts, samples } => {
                let mut out: BTreeMap<CanonicalKey, u64> = BTreeMap::new();
                for (k, c) in counts {
                    *out.entry(f(k)?).or_default() += c;
                }
                Masses::Empirical { counts: out, samples: *samples }
            }
        };
        Ok(CylinderMeasure { space, radius, masses, truncated: self.truncated })
    }

    /// Push-forward along the restriction map to radius `r`.
    pub fn restrict(&self, r: usize) -> Result<CylinderMeasure, MeasureError> {
        if r > self.radius {
            return Err(MeasureError::RadiusTooSmall { have: self.radius, need: r });
        }
        if r == self.radius {
            return Ok(self.clone());
        }
        let radius = self.radius;
        self.map_keys(self.space, r, |k| Ok(canonical_key(&k.decode(radius)?.restrict(r))))
    }

    /// Whether restricting this measure to `coarser.radius` gives exactly `coarser`.
    pub fn is_consistent_with(&self, coarser: &CylinderMeasure) -> Result<bool, MeasureError> {
        let mut r = self.restrict(coarser.radius)?;
        r.truncated = coarser.truncated;
        Ok(r == *coarser)
    }
}

/// The image of a labeled measure under forgetting labels.
pub fn pushforward_forget(m: &CylinderMeasure) -> Result<CylinderMeasure, MeasureError> {
    let radius = m.radius;
    m.map_keys(Space::Omega, radius, |k| Ok(canonical_key(&k.decode(radius)?.forget())))
}

/// Total variation distance `sup |mu(A) - nu(A)|`, exact when both measures are.
pub fn tv_distance(a: &CylinderMeasure, b: &CylinderMeasure) -> f64 {
    let mut keys = a.keys();
    keys.extend(b.keys());
    keys.sort();
    keys.dedup();
    keys.iter().map(|k| (a.probability(k) - b.probability(k)).abs()).sum::<f64>() / 2.0
}

pub fn exact_tv_distance(a: &CylinderMeasure, b: &CylinderMeasure) -> Option<BigRational> {
    let mut keys = a.keys();
    keys.extend(b.keys());
    keys.sort();
    keys.dedup();
    let mut sum = BigRational::zero();
    for k in &keys {
        sum += (a.exact_mass(k)? - b.exact_mass(k)?).abs();
    }
    Some(sum / BigRational::from_integer(BigInt::from(2)))
}

/// A finite graph whose balls can be taken at any vertex.
pub trait FiniteRooted {
    fn vertex_count(&self) -> usize;
    fn ball_at(&self, v: usize, r: usize) -> Neighborhood;
    fn space(&self) -> Space;
}

impl FiniteRooted for RootedMultigraph {
    fn vertex_count(&self) -> usize {
        self.graph().vertex_count()
    }
    fn ball_at(&self, v: usize, r: usize) -> Neighborhood {
        ball(self.graph(), None, None, v, r).expect("vertex in range").0
    }
    fn space(&self) -> Space {
        Space::Omega
    }
}

impl FiniteRooted for SchreierGraph {
    fn vertex_count(&self) -> usize {
        SchreierGraph::vertex_count(self)
    }
    fn ball_at(&self, v: usize, r: usize) -> Neighborhood {
        self.ball(v, r)
    }
    fn space(&self) -> Space {
        Space::Lambda
    }
}

/// Law of the `r`-ball at a uniformly random root.
pub fn uniform_root_measure<G: FiniteRooted + ?Sized>(g: &G, r: usize) -> CylinderMeasure {
    let n = g.vertex_count();
    let mut counts: BTreeMap<CanonicalKey, u64> = BTreeMap::new();
    for v in 0..n {
        *counts.entry(canonical_key(&g.ball_at(v, r))).or_default() += 1;
    }
    let denom = BigInt::from(n);
    let masses = counts.into_iter().map(|(k, c)| (k, BigRational::new(BigInt::from(c), denom.clone()))).collect();
    CylinderMeasure::exact(g.space(), r, masses)
}

/// Unit mass on the class of `nb`.
pub fn dirac(nb: &Neighborhood, truncated: bool) -> CylinderMeasure {
    let space = if nb.is_labeled() { Space::Lambda } else { Space::Omega };
    let masses = BTreeMap::from([(canonical_key(nb), BigRational::one())]);
    CylinderMeasure::exact(space, nb.radius(), masses).with_truncated(truncated)
}
