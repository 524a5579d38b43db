use std::collections::BTreeMap;

use num_traits::One;

use super::{add_canonical, Shape, Tensor, TensorError};
use crate::symplectic::{Kind, Label, SymplecticSpace};
use crate::Scalar;

/// A torus weight in `ℤ^g`: `wt(a_i) = e_i`, `wt(b_i) = −e_i`.
pub type Weight = Vec<i32>;

/// `ω = Σ a_i ∧ b_i ∈ ∧²H`.
pub fn omega(space: &SymplecticSpace) -> Tensor {
    let g = space.genus();
    let terms = (1..=g).map(|i| ([Label::a(i), Label::b(i)], Scalar::one()));
    Tensor::from_terms(g, Shape::exterior(2), terms).expect("omega is well formed")
}

pub fn word_weight(legs: &[Label], genus: usize) -> Weight {
    let mut w = vec![0; genus];
    for l in legs {
        match l.kind() {
            Kind::A => w[l.index() - 1] += 1,
            Kind::B => w[l.index() - 1] -= 1,
        }
    }
    w
}

/// `Σ |w_i|`, the band a weight lives in.
pub fn weight_band(w: &[i32]) -> u32 {
    w.iter().map(|x| x.unsigned_abs()).sum()
}

impl Tensor {
    /// Split into torus-weight homogeneous parts; the parts sum to `self`.
    pub fn torus_weight_components(&self) -> BTreeMap<Weight, Tensor> {
        let mut out: BTreeMap<Weight, Tensor> = BTreeMap::new();
        for (w, c) in self.iter() {
            let part = out
                .entry(word_weight(w, self.genus()))
                .or_insert_with(|| Tensor::zero(self.genus(), self.shape().clone()));
            add_canonical(&mut part.terms, w.clone(), c.clone());
        }
        out
    }

    /// Number of monomials in each weight band.
    pub fn band_histogram(&self) -> BTreeMap<u32, usize> {
        let mut h = BTreeMap::new();
        for w in self.terms().keys() {
            *h.entry(weight_band(&word_weight(w, self.genus())))
                .or_insert(0) += 1;
        }
        h
    }

    /// Smallest number of `a`-legs over all monomials (`None` when zero).
    pub fn min_lagrangian_legs(&self) -> Option<usize> {
        self.terms()
            .keys()
            .map(|w| w.iter().filter(|l| l.kind() == Kind::A).count())
            .min()
    }

    /// Whether every monomial has at least `k` legs in `L = span(a₁,…,a_g)`.
    pub fn every_monomial_meets_lagrangian(&self, k: usize) -> bool {
        self.min_lagrangian_legs().is_none_or(|m| m >= k)
    }

    /// `c ↦ ω ∧ c` on `∧ᵏH`.
    pub fn insert_omega(&self) -> Result<Tensor, TensorError> {
        let w = omega(&self.space()?);
        w.wedge(self)
    }

    /// The traceless projection `p(t) = t − (1/(g−1)) ω ∧ C₃(t)` on `∧³H`.
    pub fn traceless_project_p(&self) -> Result<Tensor, TensorError> {
        if self.shape() != &Shape::w3() {
            return Err(TensorError::ShapeMismatch {
                expected: Shape::w3().to_string(),
                found: self.shape().to_string(),
            });
        }
        let g = self.genus();
        if g < 2 {
            return Err(TensorError::Domain(
                "traceless projection is undefined at genus 1".into(),
            ));
        }
        let trace = self.contract_exterior(0)?.insert_omega()?;
        self.checked_sub(&trace.scale(&Scalar::new(1.into(), (g as i64 - 1).into())))
    }

    /// `∧²` of `c ↦ ω ∧ c`: `x ∧ y ↦ (ω∧x) ∧ (ω∧y)`, from `∧²H` to `∧²(∧³H)`.
    pub fn insert_omega_sq(&self) -> Result<Tensor, TensorError> {
        if self.shape() != &Shape::exterior(2) {
            return Err(TensorError::ShapeMismatch {
                expected: Shape::exterior(2).to_string(),
                found: self.shape().to_string(),
            });
        }
        let g = self.genus();
        let w = omega(&self.space()?);
        let mut out = Tensor::zero(g, Shape::wedge(2, Shape::w3())?);
        for (word, c) in self.iter() {
            let x = w.wedge(&Tensor::exterior_word(g, &word[..1])?)?.lift()?;
            let y = w.wedge(&Tensor::exterior_word(g, &word[1..])?)?.lift()?;
            for (v, e) in x.wedge(&y)?.iter() {
                add_canonical(&mut out.terms, v.clone(), c * e);
            }
        }
        Ok(out)
    }

    /// `p^{∧m}` on `∧ᵐ(∧³H)`.
    pub fn traceless_project_blocks(&self) -> Result<Tensor, TensorError> {
        let g = self.genus();
        self.map_wedge_blocks(&Shape::w3(), |block| {
            Tensor::exterior_word(g, block)?.traceless_project_p()
        })
    }
}
