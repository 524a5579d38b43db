use num_bigint::BigUint;
use num_traits::One;

use super::{Partition, PartitionError};

/// The irreducible `V_λ` of `Sp(2g)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IrrepLabel {
    partition: Partition,
    genus: usize,
}

impl IrrepLabel {
    pub fn new(partition: Partition, genus: usize) -> Result<IrrepLabel, PartitionError> {
        if partition.length() > genus {
            return Err(PartitionError::TooLong {
                partition: partition.to_string(),
                length: partition.length(),
                genus,
            });
        }
        Ok(IrrepLabel { partition, genus })
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Highest weight as a vector of length `g`.
    pub fn highest_weight(&self) -> Vec<i32> {
        self.partition
            .to_weight(self.genus)
            .expect("length checked")
    }

    /// Weyl dimension formula for type `C_g`, `ρ = (g, g−1, …, 1)`:
    /// `∏_{i<j} (l_i−l_j)(l_i+l_j)/((ρ_i−ρ_j)(ρ_i+ρ_j)) · ∏_i l_i/ρ_i`
    /// with `l = λ + ρ`.
    pub fn dimension(&self) -> BigUint {
        let g = self.genus;
        let rho: Vec<u64> = (0..g).map(|i| (g - i) as u64).collect();
        let l: Vec<u64> = self
            .highest_weight()
            .iter()
            .zip(&rho)
            .map(|(&x, r)| x as u64 + r)
            .collect();
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        for i in 0..g {
            num *= l[i];
            den *= rho[i];
            for j in i + 1..g {
                num *= (l[i] - l[j]) * (l[i] + l[j]);
                den *= (rho[i] - rho[j]) * (rho[i] + rho[j]);
            }
        }
        debug_assert!((&num % &den) == BigUint::default());
        num / den
    }
}

pub fn weyl_dimension(label: &IrrepLabel) -> BigUint {
    label.dimension()
}

/// `dim σ_λ = |λ|! / ∏ hooks`.
pub fn symmetric_group_dimension(lambda: &Partition) -> BigUint {
    let n = lambda.weight();
    let fact: BigUint = (1..=n).map(BigUint::from).product();
    let hooks: BigUint = lambda.hooks().into_iter().map(BigUint::from).product();
    fact / hooks
}
