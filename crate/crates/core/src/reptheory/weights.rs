use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::{IrrepLabel, Partition, RepError};
use crate::tensor::{Shape, Weight};

/// Weyl-chamber representative: absolute values sorted decreasingly.
pub fn dominant(w: &[i32]) -> Weight {
    let mut d: Weight = w.iter().map(|x| x.abs()).collect();
    d.sort_unstable_by(|a, b| b.cmp(a));
    d
}

pub fn is_dominant(w: &[i32]) -> bool {
    w.iter().all(|&x| x >= 0) && w.windows(2).all(|p| p[0] >= p[1])
}

/// `μ ≤ λ` in dominance order: every partial sum of `λ − μ` is nonnegative
/// and the total is even.
pub fn dominates(lambda: &[i32], mu: &[i32]) -> bool {
    let mut s = 0i64;
    for (l, m) in lambda.iter().zip(mu) {
        s += (*l - *m) as i64;
        if s < 0 {
            return false;
        }
    }
    s % 2 == 0
}

/// Height of `λ − μ` over the simple roots `e_i − e_{i+1}`, `2e_g`.
fn height(lambda: &[i32], mu: &[i32]) -> i64 {
    let g = lambda.len();
    let mut s = 0i64;
    let mut h = 0i64;
    for i in 0..g {
        s += (lambda[i] - mu[i]) as i64;
        h += if i + 1 < g { s } else { s / 2 };
    }
    h
}

/// Dominant weights `μ ≤ λ`, in increasing height of `λ − μ`.
pub fn dominant_weights_below(lambda: &[i32]) -> Vec<Weight> {
    let g = lambda.len();
    let n: i32 = lambda.iter().sum();
    let mut out = Vec::new();
    let mut m = n;
    while m >= 0 {
        for p in Partition::all_of(m as u32) {
            if p.length() <= g {
                let mu = p.to_weight(g).expect("length checked");
                if dominates(lambda, &mu) {
                    out.push(mu);
                }
            }
        }
        m -= 2;
    }
    out.sort_by_key(|mu| height(lambda, mu));
    out
}

/// Positive roots of `C_g`: `e_i ± e_j` (`i < j`) and `2e_i`.
fn positive_roots(g: usize) -> Vec<Vec<i32>> {
    let mut out = Vec::new();
    for i in 0..g {
        for j in i + 1..g {
            let mut a = vec![0; g];
            a[i] = 1;
            a[j] = -1;
            out.push(a.clone());
            a[j] = 1;
            out.push(a);
        }
        let mut a = vec![0; g];
        a[i] = 2;
        out.push(a);
    }
    out
}

fn dot(x: &[i32], y: &[i32]) -> i64 {
    x.iter()
        .zip(y)
        .map(|(a, b)| (*a as i64) * (*b as i64))
        .sum()
}

/// Dominant weight multiplicities of `V_λ` by Freudenthal's recursion
/// `(|λ+ρ|² − |μ+ρ|²) m(μ) = 2 Σ_{α>0} Σ_{k≥1} m(μ+kα) (μ+kα, α)`.
pub fn freudenthal(label: &IrrepLabel) -> BTreeMap<Weight, u64> {
    let lambda = label.highest_weight();
    let g = lambda.len();
    let rho: Vec<i32> = (0..g).map(|i| (g - i) as i32).collect();
    let shifted = |w: &[i32]| -> Vec<i32> { w.iter().zip(&rho).map(|(a, r)| a + r).collect() };
    let top = dot(&shifted(&lambda), &shifted(&lambda));
    let bound = dot(&lambda, &lambda);
    let roots = positive_roots(g);
    let mut mult: HashMap<Weight, u64> = HashMap::new();
    mult.insert(lambda.clone(), 1);
    for mu in dominant_weights_below(&lambda).into_iter().skip(1) {
        let mut sum: i128 = 0;
        for alpha in &roots {
            let mut nu = mu.clone();
            loop {
                for (x, a) in nu.iter_mut().zip(alpha) {
                    *x += a;
                }
                if dot(&nu, &nu) > bound {
                    break;
                }
                if let Some(&m) = mult.get(&dominant(&nu)) {
                    sum += m as i128 * dot(&nu, alpha) as i128;
                }
            }
        }
        let den = (top - dot(&shifted(&mu), &shifted(&mu))) as i128;
        debug_assert!(
            den > 0 && (2 * sum) % den == 0,
            "Freudenthal division at {mu:?}"
        );
        let m = 2 * sum / den;
        if m > 0 {
            mult.insert(mu, m as u64);
        }
    }
    mult.into_iter().collect()
}

/// Points of `ℤ^g` with `Σ|x_i| ≤ d`, an upper bound on the weights of
/// a degree-`d` shape.
pub fn weight_table_bound(g: usize, d: usize) -> u128 {
    let binom = |n: usize, k: usize| -> u128 {
        (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
    };
    (0..=g.min(d))
        .map(|k| {
            binom(g, k)
                .saturating_mul(1u128 << k)
                .saturating_mul(binom(d, k))
        })
        .fold(0u128, u128::saturating_add)
}

/// Estimated size of the weight table of `shape` at genus `g`.
pub fn character_estimate(shape: &Shape, g: usize) -> u128 {
    let dim = shape.dim(g).to_u128().unwrap_or(u128::MAX);
    dim.min(weight_table_bound(g, shape.degree()))
}

fn overflow() -> RepError {
    RepError::Overflow
}

fn add_into(map: &mut HashMap<Weight, u64>, w: Weight, m: u64) -> Result<(), RepError> {
    let e = map.entry(w).or_insert(0);
    *e = e.checked_add(m).ok_or_else(overflow)?;
    Ok(())
}

/// Full torus character of `shape` at genus `g`.
pub fn shape_character(shape: &Shape, g: usize) -> Result<HashMap<Weight, u64>, RepError> {
    match shape {
        Shape::H => {
            let mut out = HashMap::new();
            for i in 0..g {
                let mut w = vec![0; g];
                w[i] = 1;
                out.insert(w.clone(), 1);
                w[i] = -1;
                out.insert(w, 1);
            }
            Ok(out)
        }
        Shape::Tensor(fs) => {
            let mut acc: HashMap<Weight, u64> = HashMap::from([(vec![0; g], 1)]);
            for f in fs {
                let ch = shape_character(f, g)?;
                let mut next = HashMap::new();
                for (w, m) in &acc {
                    for (v, n) in &ch {
                        let s: Weight = w.iter().zip(v).map(|(a, b)| a + b).collect();
                        add_into(&mut next, s, m.checked_mul(*n).ok_or_else(overflow)?)?;
                    }
                }
                acc = next;
            }
            Ok(acc)
        }
        Shape::Wedge(k, inner) => {
            let k = *k;
            let ch = shape_character(inner, g)?;
            let mut items: Vec<(Weight, u64)> = ch.into_iter().collect();
            items.sort();
            // layers[j] is the character of ∧ʲ of the weights seen so far
            let mut layers: Vec<HashMap<Weight, u64>> = vec![HashMap::new(); k + 1];
            layers[0].insert(vec![0; g], 1);
            for (w, m) in items {
                let mut next: Vec<HashMap<Weight, u64>> = vec![HashMap::new(); k + 1];
                for (j, layer) in layers.iter().enumerate() {
                    let mut binom: u64 = 1;
                    for i in 0..=(m as usize).min(k - j) {
                        if i > 0 {
                            binom = binom.checked_mul(m - i as u64 + 1).ok_or_else(overflow)?
                                / i as u64;
                        }
                        for (v, c) in layer {
                            let s: Weight =
                                v.iter().zip(&w).map(|(a, b)| a + b * i as i32).collect();
                            add_into(
                                &mut next[j + i],
                                s,
                                c.checked_mul(binom).ok_or_else(overflow)?,
                            )?;
                        }
                    }
                }
                layers = next;
            }
            Ok(layers.pop().unwrap_or_default())
        }
    }
}

/// Dominant part of the character of `shape`.
pub fn weight_multiplicities(shape: &Shape, g: usize) -> Result<BTreeMap<Weight, u64>, RepError> {
    Ok(shape_character(shape, g)?
        .into_iter()
        .filter(|(w, _)| is_dominant(w))
        .collect())
}

/// `|W·μ|` for the hyperoctahedral group acting on a dominant weight.
pub fn orbit_size(mu: &[i32]) -> BigUint {
    let g = mu.len();
    let nonzero = mu.iter().filter(|&&x| x != 0).count();
    let mut size: BigUint = (1..=g as u32).map(BigUint::from).product();
    size <<= nonzero;
    let mut i = 0;
    while i < g {
        let mut j = i;
        while j < g && mu[j] == mu[i] {
            j += 1;
        }
        let run: BigUint = (1..=(j - i) as u32).map(BigUint::from).product();
        size /= run;
        i = j;
    }
    size
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::Label;
    use crate::tensor::word_weight;

    fn irrep(p: &str, g: usize) -> IrrepLabel {
        IrrepLabel::new(p.parse().unwrap(), g).unwrap()
    }

    /// Dimension from dominant multiplicities and orbit sizes.
    fn orbit_dimension(table: &BTreeMap<Weight, u64>) -> BigUint {
        table
            .iter()
            .map(|(w, m)| orbit_size(w) * BigUint::from(*m))
            .sum()
    }

    #[test]
    fn dominance_order() {
        assert!(dominates(&[1, 1], &[0, 0]));
        assert!(!dominates(&[1, 1], &[1, 0]));
        assert!(dominates(&[2, 0], &[1, 1]));
        assert!(!dominates(&[1, 1], &[2, 0]));
        assert_eq!(dominant(&[-1, 3, 0]), vec![3, 1, 0]);
    }

    #[test]
    fn character_of_h_and_wedge2() {
        let h = weight_multiplicities(&Shape::H, 2).unwrap();
        assert_eq!(h, BTreeMap::from([(vec![1, 0], 1)]));
        let w2 = weight_multiplicities(&Shape::exterior(2), 2).unwrap();
        assert_eq!(w2, BTreeMap::from([(vec![1, 1], 1), (vec![0, 0], 2)]));
    }

    #[test]
    fn character_matches_basis_enumeration() {
        for g in 1..=3 {
            let labels: Vec<Label> = (0..2 * g).map(Label::from_code).collect();
            let mut brute: HashMap<Weight, u64> = HashMap::new();
            for i in 0..labels.len() {
                for j in i + 1..labels.len() {
                    for k in j + 1..labels.len() {
                        *brute
                            .entry(word_weight(&[labels[i], labels[j], labels[k]], g))
                            .or_insert(0) += 1;
                    }
                }
            }
            assert_eq!(shape_character(&Shape::w3(), g).unwrap(), brute, "g={g}");
        }
    }

    #[test]
    fn nested_wedge_dimension() {
        let s: Shape = "wedge(2,w3)".parse().unwrap();
        let ch = shape_character(&s, 3).unwrap();
        let total: u64 = ch.values().sum();
        assert_eq!(BigUint::from(total), s.dim(3));
    }

    #[test]
    fn freudenthal_tables_sum_to_weyl_dimension() {
        for g in 1..=4 {
            for n in 0..=4 {
                for p in Partition::all_of(n) {
                    if p.length() > g {
                        continue;
                    }
                    let l = IrrepLabel::new(p, g).unwrap();
                    assert_eq!(orbit_dimension(&freudenthal(&l)), l.dimension(), "{l:?}");
                }
            }
        }
    }

    #[test]
    fn freudenthal_known_tables() {
        // V_{1,1} at g = 2 is the 5-dimensional rep: weights ±e₁±e₂ and 0.
        let t = freudenthal(&irrep("1,1", 2));
        assert_eq!(t, BTreeMap::from([(vec![1, 1], 1), (vec![0, 0], 1)]));
        // Adjoint of Sp(6): zero weight has multiplicity equal to the rank.
        let adj = freudenthal(&irrep("2", 3));
        assert_eq!(adj[&vec![0, 0, 0]], 3);
    }

    #[test]
    fn orbit_sizes() {
        assert_eq!(orbit_size(&[1, 0, 0]), BigUint::from(6u32));
        assert_eq!(orbit_size(&[1, 1, 1]), BigUint::from(8u32));
        assert_eq!(orbit_size(&[0, 0]), BigUint::from(1u32));
    }

    #[test]
    fn table_bounds() {
        assert_eq!(weight_table_bound(1, 1), 3);
        assert_eq!(weight_table_bound(2, 1), 5);
        assert!(character_estimate(&"wedge(2,w3)".parse().unwrap(), 6) < 10_000_000);
    }
}
