use std::fmt;

use super::RepError;
use crate::symplectic::{Label, SymplecticSpace};
use crate::tensor::{Shape, Tensor};

/// One group-ring step of a reduction witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionStep {
    /// Act by `S_{p,q} − 1`.
    ShearMinusOne { p: usize, q: usize },
    /// Act by the handle permutation `i ↦ perm[i−1]`.
    Relabel(Vec<usize>),
}

impl fmt::Display for ReductionStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionStep::ShearMinusOne { p, q } => write!(f, "(S{p},{q} - 1)"),
            ReductionStep::Relabel(perm) => write!(f, "relabel{perm:?}"),
        }
    }
}

/// Steps taking `a₁⊗⋯⊗a_k` to `a_{i₁}⊗⋯⊗a_{i_k}` in the `ℚ[Sp(H)]`-module
/// `H^{⊗k}`.
///
/// Each position repeating an earlier target is folded onto the first
/// position with that target by `S_{j,l} − 1`; a single relabeling then
/// moves the surviving indices into place.
pub fn lemma21_reduce(targets: &[usize], g: usize) -> Result<Vec<ReductionStep>, RepError> {
    let k = targets.len();
    if g < k {
        return Err(RepError::Domain(format!(
            "{k} tensor factors need genus at least {k}, got {g}"
        )));
    }
    if let Some(&bad) = targets.iter().find(|&&i| i == 0 || i > g) {
        return Err(RepError::Domain(format!("index {bad} outside 1..={g}")));
    }
    let mut steps = Vec::new();
    // leader[j] = first position (1-based) with the same target as j
    let mut leader = vec![0; k];
    for j in 0..k {
        leader[j] = (0..=j).find(|&l| targets[l] == targets[j]).unwrap() + 1;
        if leader[j] != j + 1 {
            steps.push(ReductionStep::ShearMinusOne {
                p: j + 1,
                q: leader[j],
            });
        }
    }
    let mut perm = vec![0; g];
    let mut used = vec![false; g + 1];
    for j in 0..k {
        if leader[j] == j + 1 {
            perm[j] = targets[j];
            used[targets[j]] = true;
        }
    }
    let mut free = (1..=g).filter(|&i| !used[i]);
    for (i, slot) in perm.iter_mut().enumerate() {
        if *slot == 0 && !(i < k && leader[i] == i + 1) {
            *slot = free.next().expect("counts match");
        }
    }
    if perm.iter().enumerate().any(|(i, &p)| p != i + 1) {
        steps.push(ReductionStep::Relabel(perm));
    }
    Ok(steps)
}

/// Apply the steps in order to `t`.
pub fn replay(steps: &[ReductionStep], t: &Tensor) -> Result<Tensor, RepError> {
    let space = SymplecticSpace::new(t.genus())?;
    let mut x = t.clone();
    for step in steps {
        x = match step {
            ReductionStep::ShearMinusOne { p, q } => {
                x.apply_minus_identity(&space.transvection_s(*p, *q)?)?
            }
            ReductionStep::Relabel(perm) => x.apply_map(&space.handle_permutation(perm)?)?,
        };
    }
    Ok(x)
}

/// `a_{i₁}⊗⋯⊗a_{i_k}`.
pub fn a_word(indices: &[usize], g: usize) -> Result<Tensor, RepError> {
    let legs: Vec<Label> = indices.iter().map(|&i| Label::a(i)).collect();
    Ok(Tensor::word(g, Shape::flat(legs.len()), &legs)?)
}
