//! Unimodularity in cylinder form. The lift of `μ` to edge neighbourhoods puts mass
//! `w_U(y) μ(U, x)` on `(U, x, y)`, where `w_U(y)` is the size of the orbit of `y` under the
//! root-fixing automorphisms of `U`; `μ` is unimodular iff the lift is symmetric under
//! exchanging the two roots.
//!
//! Edge neighbourhoods of radius `r` are cut out of vertex balls of radius `r + 1`, so the
//! check at radius `r` consumes a measure of radius at least `r + 1`.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::canon::{canonical_key, root_stabilizer_orbits, CanonicalKey};

use super::stats::{bonferroni_z, within};
use super::{CylinderMeasure, Masses, MeasureError};

/// One unordered pair `{(U, x, y), (U, y, x)}` of edge-neighbourhood classes.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassComparison {
    pub class: CanonicalKey,
    pub swapped: CanonicalKey,
    /// Lifted mass of `class` and of `swapped`, as probabilities.
    pub forward: f64,
    pub backward: f64,
    /// The same masses as exact rationals, for exact measures.
    pub exact: Option<(BigRational, BigRational)>,
    /// Standard error of `forward - backward` (0 for exact measures).
    pub standard_error: f64,
    /// `(w_U(y), rooted class of U)` for every orbit of root neighbours contributing to
    /// `class`, and likewise for `swapped`.
    pub forward_terms: Vec<(usize, CanonicalKey)>,
    pub backward_terms: Vec<(usize, CanonicalKey)>,
    pub pass: bool,
}

impl ClassComparison {
    pub fn discrepancy(&self) -> f64 {
        (self.forward - self.backward).abs()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnimodularityReport {
    /// Radius of the compared edge neighbourhoods.
    pub radius: usize,
    pub pass: bool,
    pub exact: bool,
    /// Set when the measure was read off a finite piece of an infinite graph.
    pub truncated: bool,
    pub critical_z: f64,
    /// Pairs with `class != swapped`; self-paired classes always balance.
    pub comparisons: Vec<ClassComparison>,
    /// Index of the failing comparison with the largest discrepancy.
    pub worst: Option<usize>,
}

impl UnimodularityReport {
    pub fn worst(&self) -> Option<&ClassComparison> {
        self.worst.map(|k| &self.comparisons[k])
    }

    /// What a verdict on this measure establishes.
    pub fn scope(&self) -> String {
        if self.truncated {
            format!("witness at radius {}", self.radius)
        } else if self.exact {
            "exact".into()
        } else {
            "3σ, Bonferroni-corrected".into()
        }
    }
}

/// Edge classes seen from the root of one rooted class: `(class, swapped class, weight)`
/// per orbit of root neighbours.
fn transports(
    key: &CanonicalKey,
    radius: usize,
    r: usize,
) -> Result<Vec<(CanonicalKey, CanonicalKey, usize)>, MeasureError> {
    let b = key.decode(radius)?;
    let x = b.root();
    let orbits = root_stabilizer_orbits(&b)?;
    let neighbours: BTreeSet<usize> = b.graph().incidences(x).iter().map(|i| i.other).filter(|&y| y != x).collect();
    let mut weight: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for &y in &neighbours {
        let entry = weight.entry(orbits[y]).or_insert((y, 0));
        entry.1 += 1;
    }
    let mut out = Vec::with_capacity(weight.len());
    for &(rep, w) in weight.values() {
        let (edge, _) = b.edge_neighborhood(x, rep, r);
        let swapped = edge.swap_roots().expect("edge neighbourhoods are doubly rooted");
        out.push((canonical_key(&edge), canonical_key(&swapped), w));
    }
    Ok(out)
}

/// Compares the lifted masses of every edge-neighbourhood class of radius `r` with those of
/// its root swap. `m` must have radius at least `r + 1`; exact measures must have total
/// mass 1.
pub fn check_unimodular(m: &CylinderMeasure, r: usize) -> Result<UnimodularityReport, MeasureError> {
    if m.radius < r + 1 {
        return Err(MeasureError::RadiusTooSmall { have: m.radius, need: r + 1 });
    }
    if m.is_empty() {
        return Err(MeasureError::Empty);
    }
    if let Some(total) = m.total_exact() {
        if !total.is_one() {
            return Err(MeasureError::NotProbability(total.to_string()));
        }
    }
    let m = m.restrict(r + 1)?;
    let keys = m.keys();
    let per_key: Vec<Vec<(CanonicalKey, CanonicalKey, usize)>> =
        keys.par_iter().map(|k| transports(k, r + 1, r)).collect::<Result<_, _>>()?;

    let mut swap_of: BTreeMap<CanonicalKey, CanonicalKey> = BTreeMap::new();
    // class -> rooted key index -> summed weight
    let mut by_class: BTreeMap<CanonicalKey, BTreeMap<usize, usize>> = BTreeMap::new();
    for (i, ts) in per_key.iter().enumerate() {
        for (class, swapped, w) in ts {
            swap_of.insert(class.clone(), swapped.clone());
            swap_of.insert(swapped.clone(), class.clone());
            *by_class.entry(class.clone()).or_default().entry(i).or_default() += w;
        }
    }
    let mut pairs: BTreeSet<(CanonicalKey, CanonicalKey)> = BTreeSet::new();
    for (a, b) in &swap_of {
        if a < b {
            pairs.insert((a.clone(), b.clone()));
        }
    }

    let empty = BTreeMap::new();
    let terms = |class: &CanonicalKey| -> Vec<(usize, CanonicalKey)> {
        by_class.get(class).unwrap_or(&empty).iter().map(|(&i, &w)| (w, keys[i].clone())).collect()
    };
    let critical_z = if m.is_exact() { 0.0 } else { bonferroni_z(pairs.len()) };
    let mut comparisons = Vec::with_capacity(pairs.len());
    for (class, swapped) in pairs {
        let fw = by_class.get(&class).unwrap_or(&empty);
        let bw = by_class.get(&swapped).unwrap_or(&empty);
        let comparison = match &m.masses {
            Masses::Exact(masses) => {
                let lift = |side: &BTreeMap<usize, usize>| {
                    side.iter().fold(BigRational::zero(), |acc, (&i, &w)| {
                        acc + &masses[&keys[i]] * BigRational::from_integer(w.into())
                    })
                };
                let (f, b) = (lift(fw), lift(bw));
                ClassComparison {
                    forward: f.to_f64().unwrap_or(f64::NAN),
                    backward: b.to_f64().unwrap_or(f64::NAN),
                    pass: f == b,
                    exact: Some((f, b)),
                    standard_error: 0.0,
                    forward_terms: terms(&class),
                    backward_terms: terms(&swapped),
                    class,
                    swapped,
                }
            }
            Masses::Empirical { counts, samples } => {
                // Per-sample transport difference Z = k(class) - k(swapped).
                let n = *samples as f64;
                let (mut sum, mut sum_sq, mut f, mut b) = (0i128, 0i128, 0u128, 0u128);
                for (i, key) in keys.iter().enumerate() {
                    let c = counts[key] as i128;
                    let kf = fw.get(&i).copied().unwrap_or(0) as i128;
                    let kb = bw.get(&i).copied().unwrap_or(0) as i128;
                    sum += c * (kf - kb);
                    sum_sq += c * (kf - kb) * (kf - kb);
                    f += (c * kf) as u128;
                    b += (c * kb) as u128;
                }
                let mean = sum as f64 / n;
                let var = (sum_sq as f64 / n - mean * mean).max(0.0);
                let se = (var / n).sqrt();
                ClassComparison {
                    forward: f as f64 / n,
                    backward: b as f64 / n,
                    pass: if sum == 0 { true } else { within(mean, se, critical_z) },
                    exact: None,
                    standard_error: se,
                    forward_terms: terms(&class),
                    backward_terms: terms(&swapped),
                    class,
                    swapped,
                }
            }
        };
        comparisons.push(comparison);
    }
    let worst = comparisons
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.pass)
        .max_by(|(_, a), (_, b)| a.discrepancy().total_cmp(&b.discrepancy()))
        .map(|(k, _)| k);
    Ok(UnimodularityReport {
        radius: r,
        pass: worst.is_none(),
        exact: m.is_exact(),
        truncated: m.truncated,
        critical_z,
        comparisons,
        worst,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Multigraph, RootedMultigraph};
    use crate::lazy::{grandfather, lazy_ball, LazyGraph};
    use crate::measures::{dirac, uniform_root_measure, FiniteRooted};
    use num_bigint::BigInt;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    fn p3() -> RootedMultigraph {
        RootedMultigraph::new(Multigraph::new(3, vec![(0, 1), (1, 2)]).unwrap(), 1, 2).unwrap()
    }

    #[test]
    fn path_uniform_passes() {
        let report = check_unimodular(&uniform_root_measure(&p3(), 2), 1).unwrap();
        assert!(report.pass);
        assert_eq!(report.comparisons.len(), 1);
        let c = &report.comparisons[0];
        assert_eq!(c.exact, Some((q(2, 3), q(2, 3))));
        assert_eq!(report.scope(), "exact");
    }

    #[test]
    fn path_dirac_at_center_fails() {
        let m = dirac(&p3().ball_at(1, 2), false);
        let report = check_unimodular(&m, 1).unwrap();
        assert!(!report.pass);
        let w = report.worst().unwrap();
        let (f, b) = w.exact.clone().unwrap();
        let mut values = [f, b];
        values.sort();
        assert_eq!(values, [q(0, 1), q(2, 1)]);
        let center_side = if w.forward > w.backward { &w.forward_terms } else { &w.backward_terms };
        assert_eq!(center_side.iter().map(|t| t.0).collect::<Vec<_>>(), vec![2]);
    }

    #[test]
    fn radius_requirement() {
        let m = uniform_root_measure(&p3(), 1);
        assert!(matches!(check_unimodular(&m, 1), Err(MeasureError::RadiusTooSmall { .. })));
    }

    #[test]
    fn grandfather_dirac_fails_at_radius_two() {
        let g = grandfather(3);
        let b = lazy_ball(&g, &g.root(), 3).unwrap().neighborhood;
        let report = check_unimodular(&dirac(&b, true), 2).unwrap();
        assert!(!report.pass);
        assert_eq!(report.scope(), "witness at radius 2");
        let mut pairs: Vec<(BigRational, BigRational)> = report
            .comparisons
            .iter()
            .map(|c| {
                let (f, b) = c.exact.clone().unwrap();
                if f < b {
                    (f, b)
                } else {
                    (b, f)
                }
            })
            .collect();
        pairs.sort();
        assert_eq!(pairs, vec![(q(1, 1), q(2, 1)), (q(1, 1), q(4, 1))]);
    }
}
