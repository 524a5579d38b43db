//! Exact rank computations over the rationals.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::Scalar;

/// Rank of a family of sparse vectors, by forward elimination on the
/// smallest key.
pub fn rank_sparse<K, I>(vectors: I) -> usize
where
    K: Ord + Clone,
    I: IntoIterator<Item = BTreeMap<K, Scalar>>,
{
    let mut pivots: BTreeMap<K, BTreeMap<K, Scalar>> = BTreeMap::new();
    for mut v in vectors {
        v.retain(|_, x| !x.is_zero());
        loop {
            let Some((lead, lead_coef)) = v.iter().next().map(|(k, x)| (k.clone(), x.clone()))
            else {
                break;
            };
            match pivots.get(&lead) {
                None => {
                    pivots.insert(lead, v);
                    break;
                }
                Some(p) => {
                    let f = &lead_coef / &p[&lead];
                    for (k, x) in p {
                        let e = v.entry(k.clone()).or_insert_with(Scalar::zero);
                        *e -= &f * x;
                        if e.is_zero() {
                            v.remove(k);
                        }
                    }
                }
            }
        }
    }
    pivots.len()
}

/// Rank of a dense matrix given by rows.
pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    rank_sparse(rows.iter().map(|r| {
        r.iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (i, x.clone()))
            .collect::<BTreeMap<_, _>>()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, ratio};

    #[test]
    fn rank_of_small_matrices() {
        let m = vec![
            vec![int(1), int(2), int(3)],
            vec![int(2), int(4), int(6)],
            vec![int(0), int(1), ratio(1, 2)],
        ];
        assert_eq!(rank(&m), 2);
        assert_eq!(rank(&[]), 0);
        assert_eq!(rank(&[vec![int(0), int(0)]]), 0);
        let id: Vec<Vec<Scalar>> = (0..5)
            .map(|i| (0..5).map(|j| int((i == j) as i64)).collect())
            .collect();
        assert_eq!(rank(&id), 5);
    }
}
