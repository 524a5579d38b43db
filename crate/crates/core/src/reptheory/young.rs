use smallvec::SmallVec;

use super::{Partition, RepError};
use crate::symplectic::Label;
use crate::tensor::Tensor;
use crate::Scalar;

/// A filling of a Young diagram by `1..=n`, stored row by row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YoungTableau {
    partition: Partition,
    rows: Vec<Vec<usize>>,
}

impl YoungTableau {
    pub fn new(partition: Partition, rows: Vec<Vec<usize>>) -> Result<YoungTableau, RepError> {
        let n = partition.weight() as usize;
        let shape_ok = rows.len() == partition.length()
            && rows
                .iter()
                .zip(partition.parts())
                .all(|(r, &p)| r.len() == p as usize);
        let mut seen = vec![false; n + 1];
        let bijective = rows
            .iter()
            .flatten()
            .all(|&x| (1..=n).contains(&x) && !std::mem::replace(&mut seen[x], true));
        if !shape_ok || !bijective {
            return Err(RepError::Domain(format!(
                "{rows:?} is not a numbering of the diagram of {partition}"
            )));
        }
        Ok(YoungTableau { partition, rows })
    }

    /// Boxes numbered `1..=n` left to right, top to bottom.
    pub fn row_major(partition: Partition) -> YoungTableau {
        let mut next = 1;
        let rows = partition
            .parts()
            .iter()
            .map(|&p| {
                let r: Vec<usize> = (next..next + p as usize).collect();
                next += p as usize;
                r
            })
            .collect();
        YoungTableau { partition, rows }
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn columns(&self) -> Vec<Vec<usize>> {
        let width = self.rows.first().map_or(0, Vec::len);
        (0..width)
            .map(|c| self.rows.iter().filter_map(|r| r.get(c).copied()).collect())
            .collect()
    }
}

type Perm = SmallVec<[usize; 12]>;

/// Every permutation of `0..n` preserving each block setwise, with its sign.
fn block_group(blocks: &[Vec<usize>], n: usize) -> Vec<(Perm, i8)> {
    let mut group: Vec<(Perm, i8)> = vec![((0..n).collect(), 1)];
    for block in blocks {
        let positions: Vec<usize> = block.iter().map(|x| x - 1).collect();
        let local = crate::tensor::signed_permutations_of(positions.len());
        let mut next = Vec::with_capacity(group.len() * local.len());
        for (p, s) in &group {
            for (q, t) in &local {
                let mut r = p.clone();
                for (i, &qi) in q.iter().enumerate() {
                    r[positions[i]] = positions[qi];
                }
                next.push((r, s * t));
            }
        }
        group = next;
    }
    group
}

/// `c_λ t = a_λ (b_λ t)`: signed column sum first, then row sum, acting on
/// tensor positions (numbers in the tableau are 1-based positions).
pub fn young_symmetrizer_apply(tableau: &YoungTableau, t: &Tensor) -> Result<Tensor, RepError> {
    let n = tableau.partition.weight() as usize;
    if !t.shape().is_flat() || t.shape().degree() != n {
        return Err(RepError::Domain(format!(
            "symmetrizer of a size-{n} tableau needs H^{n}, got {}",
            t.shape()
        )));
    }
    let cols = block_group(&tableau.columns(), n);
    let rows = block_group(&tableau.rows, n);
    let mut b = Tensor::zero(t.genus(), t.shape().clone());
    for (p, s) in &cols {
        let moved = t.permute_legs(p)?;
        b = if *s > 0 { &b + &moved } else { &b - &moved };
    }
    let mut out = Tensor::zero(t.genus(), t.shape().clone());
    for (p, _) in &rows {
        out = &out + &b.permute_legs(p)?;
    }
    Ok(out)
}

/// `(a₁∧⋯∧a_{μ₁}) ⊗ ⋯ ⊗ (a₁∧⋯∧a_{μ_l})` with `μ = λᵀ`.
pub fn generator_tensor(lambda: &Partition, g: usize) -> Result<Tensor, RepError> {
    let mu = lambda.transpose();
    if let Some(&m) = mu.parts().first() {
        if m as usize > g {
            return Err(RepError::Domain(format!(
                "column of height {m} in {lambda} exceeds genus {g}"
            )));
        }
    }
    let mut out = Tensor::scalar(g, Scalar::from_integer(1.into()));
    for &m in mu.parts() {
        let legs: Vec<Label> = (1..=m as usize).map(Label::a).collect();
        out = out.tensor(&Tensor::exterior_word(g, &legs)?)?;
    }
    Ok(out)
}
