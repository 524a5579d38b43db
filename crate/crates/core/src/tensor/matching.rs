use std::collections::HashMap;
use std::ops::{AddAssign, Neg};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{add_canonical, Shape, Tensor, TensorError, Word};
use crate::par::Execution;
use crate::symplectic::pairing;
use crate::DEFAULT_TERM_CAP;

/// A partial matching whose iterated contraction survives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionWitness {
    /// 0-based leg pairs `(i, j)`, `i < j`.
    pub pairs: Vec<(usize, usize)>,
    /// Number of monomials in the surviving contraction.
    pub surviving_terms: usize,
}

/// All sets of `r` disjoint pairs among positions `0..k`, each pair
/// increasing and pairs ordered by first element.
pub fn matchings(k: usize, r: usize) -> Vec<Vec<(usize, usize)>> {
    fn rec(
        start: usize,
        k: usize,
        r: usize,
        used: &mut [bool],
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..k {
            if used[i] {
                continue;
            }
            used[i] = true;
            for j in i + 1..k {
                if used[j] {
                    continue;
                }
                used[j] = true;
                cur.push((i, j));
                rec(i + 1, k, r, used, cur, out);
                cur.pop();
                used[j] = false;
            }
            used[i] = false;
        }
    }
    let mut out = Vec::new();
    if 2 * r <= k {
        rec(0, k, r, &mut vec![false; k], &mut Vec::new(), &mut out);
    }
    out
}

/// Contract all of `pairs` at once; the result map has no zero entries.
fn contract_all<C>(terms: &[(Word, C)], k: usize, pairs: &[(usize, usize)]) -> HashMap<Word, C>
where
    C: Clone + Zero + AddAssign + Neg<Output = C>,
{
    let mut keep = vec![true; k];
    for &(i, j) in pairs {
        keep[i] = false;
        keep[j] = false;
    }
    let mut acc: HashMap<Word, C> = HashMap::new();
    'terms: for (w, c) in terms {
        let mut sign = 1i8;
        for &(i, j) in pairs {
            let p = pairing(w[i], w[j]);
            if p == 0 {
                continue 'terms;
            }
            sign *= p;
        }
        let rest: Word = w
            .iter()
            .zip(&keep)
            .filter(|(_, &k)| k)
            .map(|(l, _)| *l)
            .collect();
        let x = if sign > 0 { c.clone() } else { -c.clone() };
        *acc.entry(rest).or_insert_with(C::zero) += x;
    }
    acc.retain(|_, c| !c.is_zero());
    acc
}

fn first_survivor<C>(
    terms: &[(Word, C)],
    k: usize,
    all: &[Vec<(usize, usize)>],
    exec: Execution,
) -> Option<ContractionWitness>
where
    C: Clone + Zero + AddAssign + Neg<Output = C> + Send + Sync,
{
    exec.find_map_first(all, |pairs| {
        let r = contract_all(terms, k, pairs);
        (!r.is_empty()).then(|| ContractionWitness {
            pairs: pairs.clone(),
            surviving_terms: r.len(),
        })
    })
}

impl Tensor {
    /// Contract several disjoint 0-based leg pairs of a flat tensor at once.
    pub fn contract_matching(&self, pairs: &[(usize, usize)]) -> Result<Tensor, TensorError> {
        if !self.shape().is_flat() {
            return Err(TensorError::NotFlat(self.shape().to_string()));
        }
        let k = self.shape().degree();
        let mut used = vec![false; k];
        for &(i, j) in pairs {
            if i >= j
                || j >= k
                || std::mem::replace(&mut used[i], true)
                || std::mem::replace(&mut used[j], true)
            {
                return Err(TensorError::BadPositions { i, j, legs: k });
            }
        }
        let terms: Vec<(Word, crate::Scalar)> =
            self.iter().map(|(w, c)| (w.clone(), c.clone())).collect();
        let mut out = Tensor::zero(self.genus(), Shape::flat(k - 2 * pairs.len()));
        for (w, c) in contract_all(&terms, k, pairs) {
            add_canonical(&mut out.terms, w, c);
        }
        Ok(out)
    }

    /// Whether every size-`r` partial matching of the expanded legs
    /// contracts `self` to zero.
    pub fn annihilated_by_r_contractions(&self, r: usize) -> Result<bool, TensorError> {
        Ok(self
            .surviving_contraction(r, DEFAULT_TERM_CAP, Execution::default())?
            .is_none())
    }

    /// The first matching (in enumeration order) whose contraction survives.
    pub fn surviving_contraction(
        &self,
        r: usize,
        cap: u64,
        exec: Execution,
    ) -> Result<Option<ContractionWitness>, TensorError> {
        let k = self.shape().degree();
        if r == 0 || 2 * r > k {
            return Err(TensorError::TooManyContractions {
                r,
                needed: 2 * r,
                legs: k,
            });
        }
        let flat = if self.shape().is_flat() {
            self.clone()
        } else {
            self.expand_with(cap, exec)?
        };
        let all = matchings(k, r);
        // Vanishing is scale invariant, so clear denominators and use
        // machine integers whenever they fit.
        let den = flat
            .iter()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let ints: Vec<(Word, BigInt)> = flat
            .iter()
            .map(|(w, c)| (w.clone(), c.numer() * (&den / c.denom())))
            .collect();
        let small: Option<Vec<(Word, I128)>> = ints
            .iter()
            .map(|(w, c)| c.to_i64().map(|x| (w.clone(), I128(x as i128))))
            .collect();
        Ok(match small {
            Some(terms) => first_survivor(&terms, k, &all, exec),
            None => first_survivor(&ints, k, &all, exec),
        })
    }
}

/// `i128` accumulator over `i64` inputs; unit pairings keep sums of fewer
/// than `2^63` terms in range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct I128(i128);

impl Zero for I128 {
    fn zero() -> Self {
        I128(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl std::ops::Add for I128 {
    type Output = I128;
    fn add(self, o: I128) -> I128 {
        I128(self.0 + o.0)
    }
}

impl AddAssign for I128 {
    fn add_assign(&mut self, o: I128) {
        self.0 += o.0;
    }
}

impl Neg for I128 {
    type Output = I128;
    fn neg(self) -> I128 {
        I128(-self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::{Label, SymplecticSpace};
    use crate::tensor::omega;

    fn a(i: usize) -> Label {
        Label::a(i)
    }
    fn b(i: usize) -> Label {
        Label::b(i)
    }

    #[test]
    fn matching_counts() {
        assert_eq!(matchings(4, 2).len(), 3);
        assert_eq!(matchings(6, 3).len(), 15);
        assert_eq!(matchings(9, 4).len(), 945);
        assert_eq!(matchings(6, 1).len(), 15);
        assert!(matchings(3, 2).is_empty());
    }

    #[test]
    fn simultaneous_equals_iterated() {
        let x = Tensor::exterior_word(3, &[a(1), b(1), a(2), b(2)])
            .unwrap()
            .expand()
            .unwrap();
        let sim = x.contract_matching(&[(0, 2), (1, 3)]).unwrap();
        let it = x.contract(2, 4).unwrap().contract(1, 2).unwrap();
        assert_eq!(sim, it);
        assert!(x.contract_matching(&[(0, 1), (1, 2)]).is_err());
    }

    #[test]
    fn pure_a_words_are_traceless() {
        let x = Tensor::exterior_word(3, &[a(1), a(2), a(3)]).unwrap();
        assert!(x.annihilated_by_r_contractions(1).unwrap());
        assert!(matches!(
            x.annihilated_by_r_contractions(2),
            Err(TensorError::TooManyContractions { .. })
        ));
    }

    #[test]
    fn omega_square_survives_three_contractions() {
        let s = omega(&SymplecticSpace::new(3).unwrap())
            .insert_omega_sq()
            .unwrap();
        let w = s
            .surviving_contraction(3, DEFAULT_TERM_CAP, Execution::Sequential)
            .unwrap()
            .expect("weight-0 content survives");
        assert_eq!(w.pairs.len(), 3);
        let flat = s.expand().unwrap();
        assert!(!flat.contract_matching(&w.pairs).unwrap().is_zero());
    }

    #[test]
    fn rational_coefficients_are_handled() {
        let x = Tensor::exterior_word(2, &[a(1), b(1)])
            .unwrap()
            .scale(&crate::ratio(1, 3));
        assert!(!x.annihilated_by_r_contractions(1).unwrap());
    }
}
