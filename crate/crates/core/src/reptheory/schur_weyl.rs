use std::collections::BTreeMap;

use num_bigint::BigUint;

use super::{symmetric_group_dimension, IrrepLabel, Partition, RepError};
use crate::linalg::rank_sparse;
use crate::symplectic::{pairing, Label};
use crate::tensor::Word;
use crate::{int, Scalar};

/// `Σ_{|λ|=k, ℓ(λ)≤g} dim V_λ · dim σ_λ`.
pub fn schur_weyl_sum(k: u32, g: usize) -> BigUint {
    Partition::all_of(k)
        .into_iter()
        .filter(|p| p.length() <= g)
        .map(|p| {
            let d = IrrepLabel::new(p.clone(), g)
                .expect("length checked")
                .dimension();
            d * symmetric_group_dimension(&p)
        })
        .sum()
}

fn all_words(g: usize, k: usize) -> Vec<Word> {
    let mut out = vec![Word::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..2 * g).map(move |c| {
                    let mut v = w.clone();
                    v.push(Label::from_code(c));
                    v
                })
            })
            .collect();
    }
    out
}

/// `dim H^{⊗k} − rank` of the span of `ω` inserted at every pair of
/// positions into every basis word of `H^{⊗(k−2)}`.
pub fn traceless_dimension_by_insertion(k: usize, g: usize) -> Result<BigUint, RepError> {
    guard(k, g)?;
    let total = BigUint::from(2 * g).pow(k as u32);
    if k < 2 {
        return Ok(total);
    }
    let mut vectors = Vec::new();
    for base in all_words(g, k - 2) {
        for i in 0..k {
            for j in i + 1..k {
                let mut v: BTreeMap<Word, Scalar> = BTreeMap::new();
                for h in 1..=g {
                    for (x, y, s) in [
                        (Label::a(h), Label::b(h), 1),
                        (Label::b(h), Label::a(h), -1),
                    ] {
                        let mut w = Word::with_capacity(k);
                        let mut rest = base.iter();
                        for p in 0..k {
                            w.push(if p == i {
                                x
                            } else if p == j {
                                y
                            } else {
                                *rest.next().unwrap()
                            });
                        }
                        v.insert(w, int(s));
                    }
                }
                vectors.push(v);
            }
        }
    }
    Ok(total - BigUint::from(rank_sparse(vectors)))
}

/// `dim H^{⊗k} − rank` of the stacked contractions `C_{i,j}`, computed from
/// the rows of the contraction matrix.
pub fn traceless_dimension_by_kernel(k: usize, g: usize) -> Result<BigUint, RepError> {
    guard(k, g)?;
    let total = BigUint::from(2 * g).pow(k as u32);
    if k < 2 {
        return Ok(total);
    }
    // Row (i, j, target word) of the stacked map; its entries are indexed
    // by source words. The rank of the row set is the rank of the map.
    let mut rows: BTreeMap<(usize, usize, Word), BTreeMap<Word, Scalar>> = BTreeMap::new();
    for w in all_words(g, k) {
        for i in 0..k {
            for j in i + 1..k {
                let p = pairing(w[i], w[j]);
                if p != 0 {
                    let rest: Word = w
                        .iter()
                        .enumerate()
                        .filter(|(q, _)| *q != i && *q != j)
                        .map(|(_, l)| *l)
                        .collect();
                    rows.entry((i, j, rest))
                        .or_default()
                        .insert(w.clone(), int(p as i64));
                }
            }
        }
    }
    Ok(total - BigUint::from(rank_sparse(rows.into_values())))
}

fn guard(k: usize, g: usize) -> Result<(), RepError> {
    if g == 0 {
        return Err(RepError::Domain("genus must be at least 1".into()));
    }
    let size = (2 * g as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if size > 1_000_000 {
        return Err(RepError::TermCap {
            estimated: size,
            cap: 1_000_000,
        });
    }
    Ok(())
}

/// The identity `Σ dim V_λ · dim σ_λ = dim (H^{⊗k})_traceless`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchurWeylCheck {
    pub k: usize,
    pub genus: usize,
    pub representation_sum: BigUint,
    pub by_insertion: BigUint,
    pub by_kernel: BigUint,
}

impl SchurWeylCheck {
    pub fn holds(&self) -> bool {
        self.representation_sum == self.by_insertion && self.by_insertion == self.by_kernel
    }
}

pub fn schur_weyl_check(k: usize, g: usize) -> Result<SchurWeylCheck, RepError> {
    Ok(SchurWeylCheck {
        k,
        genus: g,
        representation_sum: schur_weyl_sum(k as u32, g),
        by_insertion: traceless_dimension_by_insertion(k, g)?,
        by_kernel: traceless_dimension_by_kernel(k, g)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn small_cases() {
        // H⊗H = S²H ⊕ ∧²₀H ⊕ ℚ: traceless part has dimension (2g)² − 1
        assert_eq!(
            traceless_dimension_by_insertion(2, 3).unwrap(),
            BigUint::from(35u32)
        );
        assert_eq!(
            traceless_dimension_by_kernel(2, 3).unwrap(),
            BigUint::from(35u32)
        );
        assert_eq!(schur_weyl_sum(2, 3), BigUint::from(35u32));
        assert_eq!(schur_weyl_sum(0, 3), BigUint::one());
    }

    #[test]
    fn identity_holds_for_small_k() {
        for g in [3, 4] {
            for k in 0..=3 {
                let c = schur_weyl_check(k, g).unwrap();
                assert!(c.holds(), "{c:?}");
            }
        }
    }

    #[test]
    fn guard_rejects_large_spaces() {
        assert!(matches!(
            traceless_dimension_by_kernel(8, 6),
            Err(RepError::TermCap { .. })
        ));
    }
}
