use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{
    glue_product, phi_pipeline, psi2_tensor, psi_image, psi_pipeline, rho, sigma, BPConfiguration,
    JohnsonError,
};
use crate::par::Execution;
use crate::reptheory::Partition;
use crate::symplectic::{Label, SymplecticSpace};
use crate::tensor::{weight_band, Shape, Tensor};
use crate::{Scalar, DEFAULT_TERM_CAP};

/// Outcome of acting by `∏(T_{3i−2,3i−1} − 1)` on the side-by-side
/// configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct Theorem1Certificate {
    pub n: usize,
    pub genus: usize,
    pub image: Tensor,
    pub target: Tensor,
    pub image_matches: bool,
    /// The target is killed by every single contraction.
    pub top_weight: bool,
}

impl Theorem1Certificate {
    pub fn passes(&self) -> bool {
        self.image_matches && self.top_weight
    }
}

pub fn theorem1_witness(n: usize, g: usize) -> Result<Theorem1Certificate, JohnsonError> {
    theorem1_witness_with_cap(n, g, DEFAULT_TERM_CAP)
}

pub fn theorem1_witness_with_cap(
    n: usize,
    g: usize,
    cap: u64,
) -> Result<Theorem1Certificate, JohnsonError> {
    if n == 0 || g < 3 * n {
        return Err(JohnsonError::Precondition(format!(
            "the witness needs n ≥ 1 and g ≥ 3n, got n = {n}, g = {g}"
        )));
    }
    let config = BPConfiguration::figure4(n).padded(g)?;
    let space = SymplecticSpace::new(g)?;
    let mut image = psi_image(&config)?;
    for i in 1..=n {
        image = image.apply_minus_identity(&space.transvection_t(3 * i - 2, 3 * i - 1)?)?;
    }
    let mut target: Option<Tensor> = None;
    for i in 1..=n {
        let block = Tensor::exterior_word(
            g,
            &[Label::a(3 * i - 2), Label::a(3 * i - 1), Label::a(3 * i)],
        )?;
        target = Some(match target {
            None => block.lift()?,
            Some(t) => t.wedge(&block.lift()?)?,
        });
    }
    let mut target = target.expect("n ≥ 1");
    if n == 1 {
        target = target.with_shape(Shape::w3())?;
    }
    let top_weight = target
        .surviving_contraction(1, cap, Execution::default())?
        .is_none();
    Ok(Theorem1Certificate {
        n,
        genus: g,
        image_matches: image == target,
        image,
        target,
        top_weight,
    })
}

/// One factor of the product cycle used for a pair of partitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Block {
    /// `σ_λ`, sent through `Φ_λ` and then `T_{1,2} − 1`.
    Sigma(usize),
    /// `ρ_μ`, sent through `Ψ_μ`.
    Rho(usize),
}

impl Block {
    fn genus(self) -> usize {
        match self {
            Block::Sigma(l) => l + 2,
            Block::Rho(m) => m + 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Theorem2Certificate {
    pub blocks: Vec<Block>,
    pub genus: usize,
    /// `n + 2k`.
    pub target_weight: u32,
    pub tensor: Tensor,
    /// Monomial count per weight band.
    pub histogram: BTreeMap<u32, usize>,
    pub component_nonzero: bool,
}

/// The factor list `σ_{λ₁}^{k₁} ρ_{μ₁}^{l₁} ⋯ ρ_{μ_{m+2}}^{l_{m+2}}` after
/// checking the row constraints between `λ` and `μ`.
fn theorem2_blocks(lambda: &Partition, mu: &Partition) -> Result<Vec<Block>, JohnsonError> {
    let distinct = |p: &Partition| {
        let mut v: Vec<usize> = p.parts().iter().map(|&x| x as usize).collect();
        v.dedup();
        v
    };
    let lam = distinct(lambda);
    let count = |p: &Partition, v: usize| p.parts().iter().filter(|&&x| x as usize == v).count();
    let extras: Vec<usize> = distinct(mu)
        .into_iter()
        .filter(|v| !lam.iter().any(|l| l + 2 == *v))
        .collect();
    if extras.len() > 2 {
        return Err(JohnsonError::Precondition(format!(
            "μ = {mu} has {} rows not of the form λ_i + 2; at most two are allowed",
            extras.len()
        )));
    }
    if let (Some(&low), Some(&top)) = (lam.last(), extras.first()) {
        if top >= low + 2 {
            return Err(JohnsonError::Precondition(format!(
                "row {top} of μ must be smaller than λ_m + 2 = {}",
                low + 2
            )));
        }
    }
    let mut blocks = Vec::new();
    for &l in &lam {
        blocks.extend(std::iter::repeat_n(Block::Sigma(l), count(lambda, l)));
        blocks.extend(std::iter::repeat_n(Block::Rho(l + 2), count(mu, l + 2)));
    }
    for &v in &extras {
        blocks.extend(std::iter::repeat_n(Block::Rho(v), count(mu, v)));
    }
    Ok(blocks)
}

/// Glue the factor cycles, push each through its pipeline, and certify a
/// nonzero component in weight `n + 2k`.
pub fn theorem2_pipeline(
    lambda: &Partition,
    mu: &Partition,
    g: usize,
) -> Result<Theorem2Certificate, JohnsonError> {
    let blocks = theorem2_blocks(lambda, mu)?;
    if blocks.is_empty() {
        return Err(JohnsonError::Precondition("λ and μ are both empty".into()));
    }
    let n = (lambda.weight() + mu.weight()) as usize;
    let k = lambda.length();
    let l = mu.length();
    if g < n + 2 * k + l {
        return Err(JohnsonError::Precondition(format!(
            "genus {g} is below n + 2k + l = {}",
            n + 2 * k + l
        )));
    }
    let mut config = BPConfiguration::empty(0);
    let mut tensor = Tensor::scalar(g, Scalar::one());
    let mut offset = 0;
    for &b in &blocks {
        let (family, out) = match b {
            Block::Sigma(s) => {
                let fam = sigma(s)?;
                let local = fam.config().genus();
                let out = phi_pipeline(s, &psi_image(fam.config())?)?;
                let t12 = SymplecticSpace::new(local)?.transvection_t(1, 2)?;
                (fam, out.apply_minus_identity(&t12)?)
            }
            Block::Rho(r) => {
                let fam = rho(r)?;
                let out = psi_pipeline(r, &psi_image(fam.config())?)?;
                (fam, out)
            }
        };
        config = glue_product(&config, family.config());
        tensor = tensor.tensor(&out.shift_handles(offset, g)?)?;
        offset += b.genus();
    }
    debug_assert_eq!(offset, config.genus());
    let target_weight = (n + 2 * k) as u32;
    let component_nonzero = tensor
        .torus_weight_components()
        .iter()
        .any(|(w, part)| weight_band(w) == target_weight && !part.is_zero());
    Ok(Theorem2Certificate {
        blocks,
        genus: g,
        target_weight,
        histogram: tensor.band_histogram(),
        tensor,
        component_nonzero,
    })
}

/// Whether `ψₙ` of the configuration is killed by every choice of `n + 1`
/// disjoint contractions.
pub fn claim51_check(config: &BPConfiguration) -> Result<bool, JohnsonError> {
    let n = config.len();
    if n < 2 {
        return Err(JohnsonError::Precondition(format!(
            "the contraction test needs at least two pairs, got {n}"
        )));
    }
    Ok(psi_image(config)?.annihilated_by_r_contractions(n + 1)?)
}

/// Global sign relating [`claim52_coefficient`] to [`claim52_closed_form`],
/// shared by every `(m, g)`.
pub const CLAIM52_SIGN: i64 = 1;

/// `(2m−2)^m / (g−1)^m`.
pub fn claim52_closed_form(m: usize, g: usize) -> Scalar {
    let num = BigInt::from(2 * m as i64 - 2).pow(m as u32);
    let den = BigInt::from(g as i64 - 1).pow(m as u32);
    Scalar::new(num, den)
}

pub fn claim52_coefficient(m: usize, g: usize) -> Result<Scalar, JohnsonError> {
    claim52_coefficient_with_cap(m, g, DEFAULT_TERM_CAP)
}

/// Coefficient of `a_{m+1}∧⋯∧a_{2m}` after `p^{∧m}`, multiplication into
/// `∧^{3m}H` and `m` contractions applied to `ψ_m(ρ₁^m)`.
///
/// The `m` contractions are summed over unordered sets of disjoint leg
/// pairs, i.e. `C^m / m!` for the single self-contraction `C`.
pub fn claim52_coefficient_with_cap(m: usize, g: usize, cap: u64) -> Result<Scalar, JohnsonError> {
    if m < 2 || g < 2 * m {
        return Err(JohnsonError::Precondition(format!(
            "needs m ≥ 2 and g ≥ 2m, got m = {m}, g = {g}"
        )));
    }
    let r1 = rho(1)?;
    let mut config = BPConfiguration::empty(0);
    for _ in 0..m {
        config = glue_product(&config, r1.config());
    }
    let config = glue_product(&config, &BPConfiguration::empty(g - 2 * m));
    // handles 2i−1 ↦ i and 2i ↦ m+i, so pair i reads a_i∧b_i∧a_{m+i}
    let perm: Vec<usize> = (1..=g)
        .map(|h| match h {
            h if h > 2 * m => h,
            h if h % 2 == 1 => h.div_ceil(2),
            h => m + h / 2,
        })
        .collect();
    let space = SymplecticSpace::new(g)?;
    let psi = psi_image(&config)?.apply_map(&space.handle_permutation(&perm)?)?;
    let projected = psi.traceless_project_blocks()?;
    // the first contraction is the widest step: one output per leg pair
    let legs = 3 * m as u128;
    let estimate = (projected.len() as u128) * legs * (legs - 1) / 2;
    if estimate > cap as u128 {
        return Err(JohnsonError::Tensor(crate::tensor::TensorError::TermCap {
            estimated: estimate,
            cap,
        }));
    }
    let mut x = projected.with_shape(Shape::exterior(3 * m))?;
    let mut factorial = BigInt::one();
    for i in 1..=m {
        x = x.contract_exterior(0)?;
        factorial *= BigInt::from(i);
    }
    let legs: Vec<Label> = (m + 1..=2 * m).map(Label::a).collect();
    let c = x.coefficient(&legs);
    Ok(if c.is_zero() {
        c
    } else {
        c / Scalar::from_integer(factorial)
    })
}

/// `ψ₂` of the fundamental class and its invariance under the generators.
#[derive(Debug, Clone, PartialEq)]
pub struct Psi2Certificate {
    pub genus: usize,
    pub tensor: Tensor,
    pub generators_checked: usize,
    /// Names of generators that move the tensor.
    pub moved_by: Vec<String>,
}

impl Psi2Certificate {
    pub fn invariant(&self) -> bool {
        self.moved_by.is_empty()
    }
}

pub fn psi2_fundamental(g: usize) -> Result<Psi2Certificate, JohnsonError> {
    if g < 2 {
        return Err(JohnsonError::Degenerate(format!(
            "ψ₂ of the fundamental class vanishes at genus {g}"
        )));
    }
    let tensor = psi2_tensor(g)?;
    let space = SymplecticSpace::new(g)?;
    let gens = space.generators();
    let exec = Execution::default();
    let moved = exec.map_collect(&gens, |(name, m)| match tensor.apply_map(m) {
        Ok(t) if t == tensor => None,
        _ => Some(name.clone()),
    });
    Ok(Psi2Certificate {
        genus: g,
        generators_checked: gens.len(),
        moved_by: moved.into_iter().flatten().collect(),
        tensor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    #[test]
    fn theorem1_small_cases() {
        assert!(theorem1_witness(1, 3).unwrap().passes());
        assert!(theorem1_witness(2, 6).unwrap().passes());
        assert!(theorem1_witness(1, 4).unwrap().passes());
        assert!(theorem1_witness(2, 5).is_err());
    }

    #[test]
    fn theorem1_cap_guard() {
        assert!(matches!(
            theorem1_witness_with_cap(2, 6, 10),
            Err(JohnsonError::Tensor(
                crate::tensor::TensorError::TermCap { .. }
            ))
        ));
    }

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn theorem2_examples() {
        let c = theorem2_pipeline(&Partition::empty(), &p("2"), 3).unwrap();
        assert_eq!(c.blocks, vec![Block::Rho(2)]);
        assert_eq!(c.target_weight, 2);
        assert!(c.component_nonzero);

        let c = theorem2_pipeline(&p("1"), &p("3"), 7).unwrap();
        assert_eq!(c.blocks, vec![Block::Sigma(1), Block::Rho(3)]);
        assert_eq!(c.target_weight, 6);
        assert!(c.component_nonzero);

        let c = theorem2_pipeline(&p("1,1"), &Partition::empty(), 6).unwrap();
        assert_eq!(c.target_weight, 6);
        assert!(c.component_nonzero);
    }

    #[test]
    fn theorem2_constraints() {
        assert!(theorem2_pipeline(&p("1"), &p("3"), 6).is_err());
        // three extra rows
        assert!(theorem2_pipeline(&Partition::empty(), &p("3,2,1"), 9).is_err());
        // extra row not below λ_m + 2
        assert!(theorem2_pipeline(&p("1"), &p("4"), 9).is_err());
    }

    #[test]
    fn claim51_examples() {
        assert!(claim51_check(&BPConfiguration::figure4(2)).unwrap());
        assert!(claim51_check(sigma(2).unwrap().config()).unwrap());
        assert!(claim51_check(&BPConfiguration::figure4(1)).is_err());
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(claim52_closed_form(2, 5), ratio(1, 4));
        assert_eq!(claim52_closed_form(3, 7), ratio(8, 27));
        assert_eq!(claim52_closed_form(2, 4), ratio(4, 9));
    }

    #[test]
    fn claim52_preconditions() {
        assert!(claim52_coefficient(1, 4).is_err());
        assert!(claim52_coefficient(2, 3).is_err());
    }

    #[test]
    fn psi2_invariance() {
        for g in 2..=3 {
            let c = psi2_fundamental(g).unwrap();
            assert!(!c.tensor.is_zero());
            assert!(c.invariant(), "{:?}", c.moved_by);
            assert_eq!(c.generators_checked, 2 * g * (g - 1));
        }
        assert!(matches!(
            psi2_fundamental(1),
            Err(JohnsonError::Degenerate(_))
        ));
    }
}
