use std::collections::{BTreeMap, HashMap};

use torelli_core::reptheory::{
    decompose, schur_weyl_check, shape_character, weyl_dimension, IrrepLabel, Partition,
};
use torelli_core::symplectic::Label;
use torelli_core::tensor::{word_weight, Shape, Weight};
use torelli_core::BigUint;

fn binom(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let mut r = BigUint::from(1u32);
    for i in 0..k {
        r = r * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    r
}

fn dim(p: &str, g: usize) -> BigUint {
    weyl_dimension(&IrrepLabel::new(p.parse::<Partition>().unwrap(), g).unwrap())
}

#[test]
fn column_and_row_dimensions() {
    for g in 1..=7usize {
        let n = 2 * g as u64;
        for k in 1..=g as u64 {
            // V_{1^k} is the primitive part of ∧^k H
            let col = Partition::column(k as usize);
            let want = binom(n, k)
                - if k >= 2 {
                    binom(n, k - 2)
                } else {
                    BigUint::from(0u32)
                };
            assert_eq!(weyl_dimension(&IrrepLabel::new(col, g).unwrap()), want);
        }
        for k in 1..=4u64 {
            // V_{(k)} = S^k H
            assert_eq!(dim(&k.to_string(), g), binom(n + k - 1, k));
        }
    }
}

#[test]
fn top_weight_table() {
    assert_eq!(dim("1,1,1", 3), BigUint::from(14u32));
    assert_eq!(dim("2,2,1,1", 6) + dim("1^6", 6), BigUint::from(19383u32));
    let n3: BigUint = ["3,2^3", "3^2,1^3", "2^3,1^3", "2^2,1^5", "1^9"]
        .iter()
        .map(|p| dim(p, 9))
        .sum();
    let x: f64 = n3.to_string().parse().unwrap();
    assert_eq!(format!("{:.1e}", x), "7.5e7");
}

/// Torus character of `∧²(∧³H)` by listing pairs of distinct basis triples.
fn brute_character(g: usize) -> HashMap<Weight, u64> {
    let b: Vec<Label> = (0..2 * g).map(Label::from_code).collect();
    let mut triples = Vec::new();
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            for k in j + 1..b.len() {
                triples.push(vec![b[i], b[j], b[k]]);
            }
        }
    }
    let mut out = HashMap::new();
    for x in 0..triples.len() {
        for y in x + 1..triples.len() {
            let mut legs = triples[x].clone();
            legs.extend(&triples[y]);
            *out.entry(word_weight(&legs, g)).or_insert(0) += 1;
        }
    }
    out
}

#[test]
fn wedge2_of_wedge3_character_matches_enumeration() {
    let shape: Shape = "wedge(2,w3)".parse().unwrap();
    for g in 1..=3 {
        assert_eq!(
            shape_character(&shape, g).unwrap(),
            brute_character(g),
            "g = {g}"
        );
    }
}

#[test]
fn wedge2_of_wedge3_low_genus() {
    let shape: Shape = "wedge(2,w3)".parse().unwrap();
    // as a GL-module ∧²(∧³) = S_{2,2,1,1} ⊕ S_{1^6}; both are too long at g = 3
    let r = decompose(&shape, 3).unwrap();
    assert!(r.dimension_matches());
    assert!(r.band(6).entries().is_empty());
    let r = decompose(&shape, 4).unwrap();
    assert!(r.dimension_matches());
    let top: BTreeMap<Partition, u64> = r.band(6).entries().clone();
    assert_eq!(top, BTreeMap::from([("2,2,1,1".parse().unwrap(), 1)]));
}

#[test]
fn schur_weyl_identity() {
    for g in [3, 4] {
        for k in 0..=3 {
            let c = schur_weyl_check(k, g).unwrap();
            assert!(c.holds(), "{c:?}");
        }
    }
}
