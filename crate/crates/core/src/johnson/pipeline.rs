use super::{psi_image, JohnsonError, TrulyNestedFamily};
use crate::symplectic::Label;
use crate::tensor::{Shape, Tensor};
use crate::Scalar;

fn expect_input(n: usize, t: &Tensor) -> Result<Tensor, JohnsonError> {
    if n == 0 {
        return Err(JohnsonError::Precondition("pipelines need n ≥ 1".into()));
    }
    let want = if n == 1 {
        Shape::w3()
    } else {
        Shape::wedge(n, Shape::w3())?
    };
    let found = t.shape();
    if found == &want {
        return Ok(t.clone());
    }
    if n == 1 && found == &Shape::wedge(1, Shape::w3())? {
        return Ok(t.clone().with_shape(want)?);
    }
    Err(JohnsonError::Tensor(
        crate::tensor::TensorError::ShapeMismatch {
            expected: want.to_string(),
            found: found.to_string(),
        },
    ))
}

/// `Φₙ = φ_{n−1} ∘ ⋯ ∘ φ₁ : ∧ⁿ(∧³H) → ∧^{n+2}H`, with `Φ₁ = id`.
///
/// `φ₁` takes two `∧³H` blocks off through the coproduct, contracts them
/// diagonally and multiplies into `∧⁴H`; each later `φ_k` takes one more
/// block off, contracts it once against the accumulated `∧^{k+2}H` and
/// multiplies into `∧^{k+3}H`.
pub fn phi_pipeline(n: usize, t: &Tensor) -> Result<Tensor, JohnsonError> {
    let mut x = expect_input(n, t)?;
    if n == 1 {
        return Ok(x);
    }
    if n > 2 {
        x = x.split_wedge(0, 2)?;
    }
    x = x
        .unpack_pair(0)?
        .contract_pair_exterior(0)?
        .multiply_exterior(0)?;
    for k in 2..n {
        if n - k > 1 {
            x = x.split_wedge(1, 1)?;
        }
        x = x.contract_pair_exterior(0)?.multiply_exterior(0)?;
    }
    debug_assert_eq!(x.shape(), &Shape::exterior(n + 2));
    Ok(x)
}

/// `Ψₙ`: `Φₙ` followed by the self-contraction `∧^{n+2}H → ∧ⁿH`.
pub fn psi_pipeline(n: usize, t: &Tensor) -> Result<Tensor, JohnsonError> {
    Ok(phi_pipeline(n, t)?.contract_exterior(0)?)
}

/// `(Φₙ∘ψₙ)(A) = λₙ · ω₀∧c₁∧⋯∧cₙ`, with the proportionality checked exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct Lemma42Certificate {
    pub n: usize,
    pub scalar: Scalar,
    pub output: Tensor,
    pub direction: Tensor,
}

pub fn lemma42_scalar(family: &TrulyNestedFamily) -> Result<Lemma42Certificate, JohnsonError> {
    let n = family.len();
    let output = phi_pipeline(n, &psi_image(family.config())?)?;
    let direction = family.expected_direction()?;
    proportional(n, output, direction)
}

/// `(Ψₙ∘ψₙ)(A) = λ · c₁∧⋯∧cₙ`, the `Ψ` analogue for `ρ`-type families.
pub fn psi_scalar(family: &TrulyNestedFamily) -> Result<Lemma42Certificate, JohnsonError> {
    let n = family.len();
    let g = family.config().genus();
    let output = psi_pipeline(n, &psi_image(family.config())?)?;
    let cs: Vec<Label> = family
        .config()
        .pairs()
        .iter()
        .map(|p| Label::a(p.class_index()))
        .collect();
    let direction = Tensor::exterior_word(g, &cs)?;
    proportional(n, output, direction)
}

fn proportional(
    n: usize,
    output: Tensor,
    direction: Tensor,
) -> Result<Lemma42Certificate, JohnsonError> {
    match output.ratio_to(&direction) {
        Some(scalar) if !num_traits::Zero::is_zero(&scalar) => Ok(Lemma42Certificate {
            n,
            scalar,
            output,
            direction,
        }),
        Some(_) => Err(JohnsonError::NotProportional(format!(
            "n = {n}: the pipeline output vanishes"
        ))),
        None => Err(JohnsonError::NotProportional(format!(
            "n = {n}: {} terms, expected a multiple of {direction}",
            output.len()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::super::{rho, sigma, BPConfiguration, StandardBoundingPair};
    use super::*;
    use crate::{int, ratio};

    fn a(i: usize) -> Label {
        Label::a(i)
    }
    fn b(i: usize) -> Label {
        Label::b(i)
    }

    #[test]
    fn anchors() {
        assert_eq!(lemma42_scalar(&sigma(1).unwrap()).unwrap().scalar, int(1));
        assert_eq!(lemma42_scalar(&sigma(2).unwrap()).unwrap().scalar, int(-3));
        assert_eq!(lemma42_scalar(&rho(1).unwrap()).unwrap().scalar, int(1));
        assert_eq!(lemma42_scalar(&rho(2).unwrap()).unwrap().scalar, int(-3));
    }

    #[test]
    fn higher_scalars_are_nonzero_and_agree_across_families() {
        for n in 3..=4 {
            let s = lemma42_scalar(&sigma(n).unwrap()).unwrap().scalar;
            let r = lemma42_scalar(&rho(n).unwrap()).unwrap().scalar;
            assert_ne!(s, int(0));
            assert_eq!(s, r, "n = {n}");
        }
    }

    #[test]
    fn phi2_on_a_general_nested_pair() {
        // S₁ = {1,2}, j₁ = 3 inside S₂ = {1,2,3}, j₂ = 4
        let c = BPConfiguration::new(
            4,
            vec![
                StandardBoundingPair::new([1, 2], 3),
                StandardBoundingPair::new([1, 2, 3], 4),
            ],
        )
        .unwrap();
        let fam = TrulyNestedFamily::new(c).unwrap();
        assert_eq!(lemma42_scalar(&fam).unwrap().scalar, int(-3));
    }

    #[test]
    fn phi2_on_disjoint_pairs_vanishes() {
        let c = BPConfiguration::figure4(2);
        assert!(phi_pipeline(2, &psi_image(&c).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn phi_is_identity_for_one_block() {
        let t = Tensor::exterior_word(3, &[a(1), b(1), a(3)]).unwrap();
        assert_eq!(phi_pipeline(1, &t).unwrap(), t);
        assert_eq!(phi_pipeline(1, &t.lift().unwrap()).unwrap(), t);
        assert!(phi_pipeline(2, &t).is_err());
        assert!(phi_pipeline(0, &t).is_err());
    }

    #[test]
    fn psi_on_small_inputs() {
        let r1 = rho(1).unwrap();
        let out = psi_pipeline(1, &psi_image(r1.config()).unwrap()).unwrap();
        assert_eq!(out, Tensor::vector(2, [(a(2), int(1))]).unwrap());
        let pure = Tensor::exterior_word(3, &[a(1), a(2), a(3)]).unwrap();
        assert!(psi_pipeline(1, &pure).unwrap().is_zero());
        // ω₀∧x∧y contracts to a multiple of x∧y
        let t = Tensor::exterior_word(3, &[a(1), b(1), a(2), a(3)]).unwrap();
        let c = t.contract_exterior(0).unwrap();
        assert_eq!(
            c.ratio_to(&Tensor::exterior_word(3, &[a(2), a(3)]).unwrap()),
            Some(int(1))
        );
        for n in 1..=4 {
            let cert = psi_scalar(&rho(n).unwrap()).unwrap();
            assert_ne!(cert.scalar, int(0));
        }
        assert_eq!(psi_scalar(&rho(2).unwrap()).unwrap().scalar, ratio(-3, 1));
    }
}
