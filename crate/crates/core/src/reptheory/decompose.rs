use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;

use super::weights::{character_estimate, freudenthal, is_dominant, shape_character};
use super::{IrrepLabel, Partition, RepError};
use crate::tensor::{Shape, Weight};
use crate::DEFAULT_TERM_CAP;

/// Multiset of irreducibles making up a shape at a fixed genus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionReport {
    genus: usize,
    shape: Shape,
    entries: BTreeMap<Partition, u64>,
}

impl DecompositionReport {
    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn entries(&self) -> &BTreeMap<Partition, u64> {
        &self.entries
    }

    pub fn multiplicity(&self, lambda: &Partition) -> u64 {
        self.entries.get(lambda).copied().unwrap_or(0)
    }

    /// Entries in decreasing order: heavier weights first, then
    /// lexicographically larger partitions.
    pub fn sorted_entries(&self) -> Vec<(&Partition, u64)> {
        let mut v: Vec<(&Partition, u64)> = self.entries.iter().map(|(p, m)| (p, *m)).collect();
        v.sort_by(|(p, _), (q, _)| q.weight().cmp(&p.weight()).then(q.cmp(p)));
        v
    }

    /// Entries whose partition has weight `w`.
    pub fn band(&self, w: u32) -> DecompositionReport {
        DecompositionReport {
            genus: self.genus,
            shape: self.shape.clone(),
            entries: self
                .entries
                .iter()
                .filter(|(p, _)| p.weight() == w)
                .map(|(p, m)| (p.clone(), *m))
                .collect(),
        }
    }

    /// Per weight band: number of irreducibles and total dimension.
    pub fn band_summary(&self) -> BTreeMap<u32, (u64, BigUint)> {
        let mut out: BTreeMap<u32, (u64, BigUint)> = BTreeMap::new();
        for (p, m) in &self.entries {
            let d = IrrepLabel::new(p.clone(), self.genus)
                .expect("entries fit the genus")
                .dimension();
            let e = out.entry(p.weight()).or_default();
            e.0 += m;
            e.1 += d * BigUint::from(*m);
        }
        out
    }

    /// `Σ multiplicity · dim V_λ`.
    pub fn total_dimension(&self) -> BigUint {
        self.band_summary().into_values().map(|(_, d)| d).sum()
    }

    /// The defining invariant: the irreducibles fill the ambient dimension.
    pub fn dimension_matches(&self) -> bool {
        self.total_dimension() == self.shape.dim(self.genus)
    }
}

pub fn decompose(shape: &Shape, g: usize) -> Result<DecompositionReport, RepError> {
    decompose_with_cap(shape, g, DEFAULT_TERM_CAP)
}

/// Highest-weight greedy subtraction, taking the lexicographically largest
/// remaining dominant weight first.
pub fn decompose_with_cap(
    shape: &Shape,
    g: usize,
    cap: u64,
) -> Result<DecompositionReport, RepError> {
    if g == 0 {
        return Err(RepError::Domain("genus must be at least 1".into()));
    }
    let estimated = character_estimate(shape, g);
    if estimated > cap as u128 {
        return Err(RepError::TermCap { estimated, cap });
    }
    let mut remaining: BTreeMap<Weight, i128> = shape_character(shape, g)?
        .into_iter()
        .filter(|(w, _)| is_dominant(w))
        .map(|(w, m)| (w, m as i128))
        .collect();
    let mut tables: HashMap<Weight, BTreeMap<Weight, u64>> = HashMap::new();
    let mut entries = BTreeMap::new();
    while let Some((top, &c)) = remaining.iter().next_back() {
        let top = top.clone();
        if c < 0 {
            return Err(RepError::Internal(format!(
                "negative multiplicity {c} at {top:?}"
            )));
        }
        let lambda = Partition::from_dominant(&top);
        let table = tables.entry(top.clone()).or_insert_with(|| {
            freudenthal(&IrrepLabel::new(lambda.clone(), g).expect("dominant weight fits"))
        });
        for (mu, m) in table.iter() {
            let e = remaining.entry(mu.clone()).or_insert(0);
            *e -= c * *m as i128;
            if *e == 0 {
                remaining.remove(mu);
            }
        }
        entries.insert(lambda, c as u64);
    }
    Ok(DecompositionReport {
        genus: g,
        shape: shape.clone(),
        entries,
    })
}
