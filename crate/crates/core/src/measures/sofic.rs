//! Labeling a sequence of finite even-regular graphs and watching their uniform-root
//! measures stabilize.

use num_rational::BigRational;

use crate::factorize::schreier_structure;
use crate::graph::RootedMultigraph;
use crate::schreier::SchreierGraph;

use super::{exact_tv_distance, uniform_root_measure, CylinderMeasure, MeasureError};

#[derive(Debug, Clone)]
pub struct SoficReport {
    pub radius: usize,
    pub structures: Vec<SchreierGraph>,
    pub labeled: Vec<CylinderMeasure>,
    pub unlabeled: Vec<CylinderMeasure>,
    /// Distances between consecutive terms; entry `k` compares terms `k` and `k + 1`.
    pub tv_labeled: Vec<BigRational>,
    pub tv_unlabeled: Vec<BigRational>,
}

/// Every graph is labeled with `schreier_structure` under the same `seed`.
pub fn sofic_lift(graphs: &[RootedMultigraph], r: usize, seed: u64) -> Result<SoficReport, MeasureError> {
    let structures: Vec<SchreierGraph> =
        graphs.iter().map(|g| schreier_structure(g, seed)).collect::<Result<_, _>>()?;
    let labeled: Vec<CylinderMeasure> = structures.iter().map(|s| uniform_root_measure(s, r)).collect();
    let unlabeled: Vec<CylinderMeasure> = graphs.iter().map(|g| uniform_root_measure(g, r)).collect();
    let tv = |ms: &[CylinderMeasure]| -> Vec<BigRational> {
        ms.windows(2).map(|w| exact_tv_distance(&w[0], &w[1]).expect("uniform measures are exact")).collect()
    };
    Ok(SoficReport {
        radius: r,
        tv_labeled: tv(&labeled),
        tv_unlabeled: tv(&unlabeled),
        structures,
        labeled,
        unlabeled,
    })
}
