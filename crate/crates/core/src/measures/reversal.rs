//! Bernoulli reversal of `a_i`-cycles: every `a_i`-cycle meeting the ball is reversed
//! independently with probability `p`. Coins are drawn per sample from a ChaCha8 stream
//! selected by the sample index, in increasing cycle-id order, so results do not depend on
//! how the samples are spread over threads.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::canon::{canonical_key, graph_automorphisms, CanonError, CanonicalKey, DEFAULT_GROUP_CAP};
use crate::graph::{EdgeId, Multigraph};
use crate::lazy::{lazy_ball, LazyError, LazyGraph};
use crate::neighborhood::{ball, Neighborhood};
use crate::schreier::SchreierGraph;

use super::{CylinderMeasure, MeasureError, Space};

/// Largest number of cycles whose patterns are enumerated exhaustively.
pub const DEFAULT_CYCLE_BUDGET: usize = 20;

/// A probability kept as an exact rational; parsed from `0.25` or `1/4`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Probability(BigRational);

impl Probability {
    pub fn new(p: BigRational) -> Result<Self, MeasureError> {
        if p.is_negative() || p > BigRational::one() {
            return Err(MeasureError::BadProbability(p.to_string()));
        }
        Ok(Probability(p))
    }

    pub fn ratio(num: i64, den: i64) -> Result<Self, MeasureError> {
        if den == 0 {
            return Err(MeasureError::BadProbability(format!("{num}/{den}")));
        }
        Self::new(BigRational::new(num.into(), den.into()))
    }

    pub fn rational(&self) -> &BigRational {
        &self.0
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn is_degenerate(&self) -> bool {
        self.0.is_zero() || self.0.is_one()
    }
}

impl FromStr for Probability {
    type Err = MeasureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || MeasureError::BadProbability(s.to_string());
        let s = s.trim();
        if s.contains('/') {
            return Self::new(s.parse::<BigRational>().map_err(|_| bad())?);
        }
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{int}{frac}");
        let num: BigInt = digits.parse().map_err(|_| bad())?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        Self::new(BigRational::new(num, den))
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub enum ReversalSource {
    Finite(SchreierGraph),
    Lazy(Box<dyn LazyGraph>),
}

impl fmt::Debug for ReversalSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReversalSource::Finite(sg) => write!(f, "Finite({} vertices)", sg.vertex_count()),
            ReversalSource::Lazy(g) => write!(f, "Lazy({})", g.name()),
        }
    }
}

impl ReversalSource {
    fn rank(&self) -> Option<usize> {
        match self {
            ReversalSource::Finite(sg) => Some(sg.rank()),
            ReversalSource::Lazy(g) => g.rank(),
        }
    }
}

/// `ν_p` on a lazy source, or `ν_{Γ,p}` on a finite one.
#[derive(Debug)]
pub struct ReversalModel {
    pub source: ReversalSource,
    pub label: u32,
    pub p: Probability,
    pub seed: u64,
}

impl ReversalModel {
    /// Checks `0 < p < 1` and that `label` is a generator of the source.
    pub fn new(source: ReversalSource, label: u32, p: Probability, seed: u64) -> Result<Self, MeasureError> {
        if p.is_degenerate() {
            return Err(MeasureError::BadProbability(p.to_string()));
        }
        let rank = source.rank().ok_or(LazyError::Unlabeled)?;
        if label == 0 || label as usize > rank {
            return Err(MeasureError::BadGenerator { index: label, rank });
        }
        Ok(ReversalModel { source, label, p, seed })
    }
}

/// Labeled ball of the source with each `a_i`-edge tagged by its cycle (numbered in
/// increasing cycle-id order).
#[derive(Debug, Clone)]
struct ReversalBase {
    ball: Neighborhood,
    flips: Vec<(EdgeId, usize)>,
    cycles: usize,
}

impl ReversalBase {
    fn new(source: &ReversalSource, label: u32, r: usize) -> Result<Self, MeasureError> {
        let (nb, tagged): (Neighborhood, Vec<(EdgeId, i64)>) = match source {
            ReversalSource::Finite(sg) => {
                let partition = sg.a_cycles(label)?;
                let (nb, origin) =
                    ball(sg.graph(), Some(&sg.labeling()), None, sg.root(), r).expect("root is a vertex");
                let tagged = (0..nb.edge_count())
                    .filter(|&e| nb.label(e) == label)
                    .map(|e| {
                        let tail = origin[nb.graph().endpoints(e).0];
                        (e, partition.cycle_of(tail).expect("cycles cover every vertex") as i64)
                    })
                    .collect();
                (nb, tagged)
            }
            ReversalSource::Lazy(g) => {
                let lb = lazy_ball(g, &g.root(), r)?;
                if !lb.neighborhood.is_labeled() {
                    return Err(LazyError::Unlabeled.into());
                }
                let mut tagged = Vec::new();
                for (e, (tail, slot)) in lb.edge_ids.iter().enumerate() {
                    if *slot == label {
                        let id = g
                            .cycle_id(tail, label)
                            .ok_or_else(|| LazyError::UndecidableCycle { vertex: tail.clone(), label })?;
                        tagged.push((e, id));
                    }
                }
                (lb.neighborhood, tagged)
            }
        };
        let ids: BTreeSet<i64> = tagged.iter().map(|t| t.1).collect();
        let rank: BTreeMap<i64, usize> = ids.iter().enumerate().map(|(k, &id)| (id, k)).collect();
        let flips = tagged.into_iter().map(|(e, id)| (e, rank[&id])).collect();
        Ok(ReversalBase { ball: nb, flips, cycles: ids.len() })
    }

    fn apply(&self, reversed: impl Fn(usize) -> bool) -> Neighborhood {
        let g = self.ball.graph();
        let mut edges = g.edges().to_vec();
        for &(e, k) in &self.flips {
            if reversed(k) {
                edges[e] = (edges[e].1, edges[e].0);
            }
        }
        let graph = Multigraph::new(g.vertex_count(), edges).expect("same vertex set");
        Neighborhood::new(graph, self.ball.root(), self.ball.radius(), self.ball.labeling().cloned())
            .expect("same distances")
            .with_deficits(self.ball.deficits().to_vec())
    }
}

/// A source of random rooted balls, re-runnable from `(seed, index)`.
pub trait CylinderSampler: Sync {
    fn space(&self) -> Space;

    /// Radius of the balls returned by `sample`.
    fn radius(&self) -> usize;

    /// Whether the balls are finite views of an infinite graph.
    fn truncated(&self) -> bool;

    fn sample(&self, seed: u64, index: u64) -> Result<Neighborhood, MeasureError>;
}

/// Balls of radius `radius` drawn from a reversal model.
#[derive(Debug)]
pub struct ReversalSampler<'a> {
    model: &'a ReversalModel,
    base: ReversalBase,
    p: f64,
}

impl<'a> ReversalSampler<'a> {
    pub fn new(model: &'a ReversalModel, radius: usize) -> Result<Self, MeasureError> {
        let base = ReversalBase::new(&model.source, model.label, radius)?;
        Ok(ReversalSampler { model, base, p: model.p.to_f64() })
    }

    /// Number of `a_i`-cycles meeting the ball.
    pub fn cycles(&self) -> usize {
        self.base.cycles
    }

    /// The ball with no cycle reversed.
    pub fn source_ball(&self) -> &Neighborhood {
        &self.base.ball
    }

    /// Samples under the model's own seed.
    pub fn iter(&self) -> impl Iterator<Item = Neighborhood> + '_ {
        (0..).map(move |k| self.draw(self.model.seed, k))
    }

    fn draw(&self, seed: u64, index: u64) -> Neighborhood {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        let coins: Vec<bool> = (0..self.base.cycles).map(|_| rng.gen_bool(self.p)).collect();
        self.base.apply(|k| coins[k])
    }
}

impl CylinderSampler for ReversalSampler<'_> {
    fn space(&self) -> Space {
        Space::Lambda
    }

    fn radius(&self) -> usize {
        self.base.ball.radius()
    }

    fn truncated(&self) -> bool {
        matches!(self.model.source, ReversalSource::Lazy(_))
    }

    fn sample(&self, seed: u64, index: u64) -> Result<Neighborhood, MeasureError> {
        Ok(self.draw(seed, index))
    }
}

/// Always the same ball.
#[derive(Debug, Clone)]
pub struct DiracSampler {
    pub ball: Neighborhood,
    pub truncated: bool,
}

impl CylinderSampler for DiracSampler {
    fn space(&self) -> Space {
        if self.ball.is_labeled() {
            Space::Lambda
        } else {
            Space::Omega
        }
    }

    fn radius(&self) -> usize {
        self.ball.radius()
    }

    fn truncated(&self) -> bool {
        self.truncated
    }

    fn sample(&self, _seed: u64, _index: u64) -> Result<Neighborhood, MeasureError> {
        Ok(self.ball.clone())
    }
}

/// Empirical law of the radius-`r` ball over samples `0..n` of stream `seed`.
pub fn estimate_cylinder<S: CylinderSampler + ?Sized>(
    sampler: &S,
    r: usize,
    n: u64,
    seed: u64,
) -> Result<CylinderMeasure, MeasureError> {
    if n == 0 {
        return Err(MeasureError::NoSamples);
    }
    if r > sampler.radius() {
        return Err(MeasureError::RadiusTooSmall { have: sampler.radius(), need: r });
    }
    let counts = (0..n)
        .into_par_iter()
        .map(|k| {
            let nb = sampler.sample(seed, k)?;
            Ok(canonical_key(&if r == nb.radius() { nb } else { nb.restrict(r) }))
        })
        .try_fold(BTreeMap::new, |mut acc: BTreeMap<CanonicalKey, u64>, key: Result<_, MeasureError>| {
            *acc.entry(key?).or_default() += 1;
            Ok::<_, MeasureError>(acc)
        })
        .try_reduce(BTreeMap::new, |mut a, b| {
            for (k, c) in b {
                *a.entry(k).or_default() += c;
            }
            Ok(a)
        })?;
    Ok(CylinderMeasure::empirical(sampler.space(), r, counts, n).with_truncated(sampler.truncated()))
}

/// The exact law of the radius-`r` ball: every reversal pattern of the cycles meeting the
/// ball, weighted `p^k (1-p)^(J-k)`. Degenerate `p` is accepted here.
pub fn exact_reversal_measure(
    source: &ReversalSource,
    label: u32,
    p: &Probability,
    r: usize,
) -> Result<CylinderMeasure, MeasureError> {
    let base = ReversalBase::new(source, label, r)?;
    if base.cycles > DEFAULT_CYCLE_BUDGET {
        return Err(MeasureError::CycleBudget { cycles: base.cycles, budget: DEFAULT_CYCLE_BUDGET });
    }
    let p = p.rational();
    let q = BigRational::one() - p;
    let mut masses: BTreeMap<CanonicalKey, BigRational> = BTreeMap::new();
    for pattern in 0..1u64 << base.cycles {
        let ones = pattern.count_ones() as usize;
        let weight = num_traits::pow(p.clone(), ones) * num_traits::pow(q.clone(), base.cycles - ones);
        if weight.is_zero() {
            continue;
        }
        let key = canonical_key(&base.apply(|k| pattern >> k & 1 == 1));
        *masses.entry(key).or_insert_with(BigRational::zero) += weight;
    }
    let truncated = matches!(source, ReversalSource::Lazy(_));
    Ok(CylinderMeasure::exact(Space::Lambda, r, masses).with_truncated(truncated))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReversalFamilyReport {
    pub label: u32,
    /// `J`, the number of `a_i`-cycles.
    pub cycles: usize,
    /// Distinct rooted keys among the `2^J` patterns.
    pub count: usize,
    /// Vertex automorphisms of the unlabeled base; `None` if more than the group cap.
    pub automorphisms: Option<usize>,
    pub loops: usize,
    pub parallel_edges: usize,
    /// Trivial automorphism group, no loops and no parallel edges: nothing can act on the
    /// base besides the identity.
    pub rigid: bool,
    /// `(pattern, earlier pattern with the same key)`; bit `k` reverses cycle `k`.
    pub collisions: Vec<(u64, u64)>,
}

impl ReversalFamilyReport {
    pub fn patterns(&self) -> u64 {
        1 << self.cycles
    }
}

fn family(base: &ReversalBase, label: u32) -> Result<ReversalFamilyReport, MeasureError> {
    if base.cycles > DEFAULT_CYCLE_BUDGET {
        return Err(MeasureError::CycleBudget { cycles: base.cycles, budget: DEFAULT_CYCLE_BUDGET });
    }
    let mut first: BTreeMap<CanonicalKey, u64> = BTreeMap::new();
    let mut collisions = Vec::new();
    for pattern in 0..1u64 << base.cycles {
        let key = canonical_key(&base.apply(|k| pattern >> k & 1 == 1));
        match first.get(&key) {
            Some(&earlier) => collisions.push((pattern, earlier)),
            None => {
                first.insert(key, pattern);
            }
        }
    }
    let g = base.ball.graph();
    let automorphisms = match graph_automorphisms(g, DEFAULT_GROUP_CAP) {
        Ok(perms) => Some(perms.len()),
        Err(CanonError::GroupTooLarge { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let (loops, parallel_edges) = (g.loop_count(), g.parallel_count());
    Ok(ReversalFamilyReport {
        label,
        cycles: base.cycles,
        count: first.len(),
        automorphisms,
        loops,
        parallel_edges,
        rigid: automorphisms == Some(1) && loops == 0 && parallel_edges == 0,
        collisions,
    })
}

/// Keys every reversal pattern of the `a_i`-cycles of a finite Schreier graph.
pub fn reversal_family_count(sg: &SchreierGraph, label: u32) -> Result<ReversalFamilyReport, MeasureError> {
    let whole = sg.vertex_count();
    let base = ReversalBase::new(&ReversalSource::Finite(sg.clone()), label, whole)?;
    family(&base, label)
}

/// The same on the radius-`r` window of a lazy graph around its root.
pub fn reversal_family_count_lazy<G: LazyGraph + 'static>(
    g: G,
    label: u32,
    r: usize,
) -> Result<ReversalFamilyReport, MeasureError> {
    let base = ReversalBase::new(&ReversalSource::Lazy(Box::new(g)), label, r)?;
    family(&base, label)
}
