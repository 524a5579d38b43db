use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::JohnsonError;
use crate::symplectic::Label;
use crate::symplectic::SymplecticSpace;
use crate::tensor::{omega, Shape, Tensor};
use crate::Scalar;

/// A bounding pair in standard position: `τ = (Σ_{i∈S} a_i∧b_i) ∧ a_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StandardBoundingPair {
    support: BTreeSet<usize>,
    class_index: usize,
}

impl StandardBoundingPair {
    pub fn new<I: IntoIterator<Item = usize>>(
        support: I,
        class_index: usize,
    ) -> StandardBoundingPair {
        StandardBoundingPair {
            support: support.into_iter().collect(),
            class_index,
        }
    }

    pub fn support(&self) -> &BTreeSet<usize> {
        &self.support
    }

    pub fn class_index(&self) -> usize {
        self.class_index
    }

    /// `S ∪ {j}`: every handle the pair touches.
    pub fn footprint(&self) -> BTreeSet<usize> {
        let mut f = self.support.clone();
        f.insert(self.class_index);
        f
    }

    pub fn check(&self, g: usize) -> Result<(), JohnsonError> {
        if let Some(&i) = self.footprint().iter().find(|&&i| i == 0 || i > g) {
            return Err(JohnsonError::IndexOutOfRange { index: i, genus: g });
        }
        if self.support.contains(&self.class_index) {
            return Err(JohnsonError::ClassInSupport(self.class_index));
        }
        Ok(())
    }

    fn shifted(&self, offset: usize) -> StandardBoundingPair {
        StandardBoundingPair {
            support: self.support.iter().map(|i| i + offset).collect(),
            class_index: self.class_index + offset,
        }
    }
}

impl fmt::Display for StandardBoundingPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.support.iter().map(usize::to_string).collect();
        write!(f, "S={{{}}}, j={}", s.join(","), self.class_index)
    }
}

/// `(Σ_{i∈S} a_i∧b_i) ∧ a_j ∈ ∧³H`.
pub fn tau_bp(bp: &StandardBoundingPair, g: usize) -> Result<Tensor, JohnsonError> {
    bp.check(g)?;
    let j = Label::a(bp.class_index);
    let terms = bp.support.iter().map(|&i| {
        (
            [Label::a(i), Label::b(i), j],
            Scalar::from_integer(1.into()),
        )
    });
    Ok(Tensor::from_terms(g, Shape::w3(), terms)?)
}

/// An ordered family of pairwise disjoint bounding pairs at genus `g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BPConfiguration {
    genus: usize,
    pairs: Vec<StandardBoundingPair>,
}

impl BPConfiguration {
    /// Validates every configuration invariant.
    pub fn new(
        genus: usize,
        pairs: Vec<StandardBoundingPair>,
    ) -> Result<BPConfiguration, JohnsonError> {
        let c = BPConfiguration { genus, pairs };
        c.validate()?;
        Ok(c)
    }

    /// The configuration with no pairs; the unit of [`glue_product`].
    pub fn empty(genus: usize) -> BPConfiguration {
        BPConfiguration {
            genus,
            pairs: Vec::new(),
        }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn pairs(&self) -> &[StandardBoundingPair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    fn validate(&self) -> Result<(), JohnsonError> {
        for p in &self.pairs {
            p.check(self.genus)?;
        }
        for (x, p) in self.pairs.iter().enumerate() {
            for (y, q) in self.pairs.iter().enumerate().skip(x + 1) {
                if p.class_index == q.class_index {
                    return Err(JohnsonError::RepeatedClass(p.class_index));
                }
                let (fp, fq) = (p.footprint(), q.footprint());
                let ok =
                    fp.is_disjoint(&fq) || fp.is_subset(&q.support) || fq.is_subset(&p.support);
                if !ok {
                    return Err(JohnsonError::Incompatible {
                        first: x,
                        second: y,
                    });
                }
            }
        }
        if let Some(k) = (0..self.pairs.len()).find(|&k| {
            !tau_bp(&self.pairs[k], self.genus)
                .map(|t| t.every_monomial_meets_lagrangian(2))
                .unwrap_or(false)
        }) {
            return Err(JohnsonError::NotLagrangian(k));
        }
        Ok(())
    }

    /// The same pairs listed in a different order: `new[i] = old[order[i]]`.
    pub fn reordered(&self, order: &[usize]) -> Result<BPConfiguration, JohnsonError> {
        let mut seen = vec![false; self.pairs.len()];
        if order.len() != self.pairs.len()
            || order
                .iter()
                .any(|&i| i >= seen.len() || std::mem::replace(&mut seen[i], true))
        {
            return Err(JohnsonError::Precondition(format!(
                "{order:?} is not a reordering of {} pairs",
                self.pairs.len()
            )));
        }
        Ok(BPConfiguration {
            genus: self.genus,
            pairs: order.iter().map(|&i| self.pairs[i].clone()).collect(),
        })
    }

    /// The same pairs viewed at a larger genus.
    pub fn padded(&self, genus: usize) -> Result<BPConfiguration, JohnsonError> {
        if genus < self.genus {
            return Err(JohnsonError::Precondition(format!(
                "cannot shrink genus {} to {genus}",
                self.genus
            )));
        }
        Ok(BPConfiguration {
            genus,
            pairs: self.pairs.clone(),
        })
    }

    /// The configuration of `n` side-by-side pairs `S = {3i−2}`, `j = 3i`.
    pub fn figure4(n: usize) -> BPConfiguration {
        let pairs = (1..=n)
            .map(|i| StandardBoundingPair::new([3 * i - 2], 3 * i))
            .collect();
        BPConfiguration {
            genus: 3 * n,
            pairs,
        }
    }
}

impl fmt::Display for BPConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g={}:", self.genus)?;
        for p in &self.pairs {
            write!(f, " [{p}]")?;
        }
        Ok(())
    }
}

/// `τ(f₁) ∧ ⋯ ∧ τ(f_n)` in `∧ⁿ(∧³H)`; `∧³H` itself when `n = 1` and the
/// scalar `1` when `n = 0`.
pub fn psi_image(config: &BPConfiguration) -> Result<Tensor, JohnsonError> {
    let g = config.genus;
    let mut acc: Option<Tensor> = None;
    for p in &config.pairs {
        let t = tau_bp(p, g)?.lift()?;
        acc = Some(match acc {
            None => t,
            Some(a) => a.wedge(&t)?,
        });
    }
    Ok(match acc {
        None => Tensor::scalar(g, Scalar::from_integer(1.into())),
        Some(t) if config.pairs.len() == 1 => t.with_shape(Shape::w3())?,
        Some(t) => t,
    })
}

/// Juxtapose two configurations, moving the second onto handles
/// `g₁+1..=g₁+g₂`.
pub fn glue_product(c1: &BPConfiguration, c2: &BPConfiguration) -> BPConfiguration {
    let mut pairs = c1.pairs.clone();
    pairs.extend(c2.pairs.iter().map(|p| p.shifted(c1.genus)));
    BPConfiguration {
        genus: c1.genus + c2.genus,
        pairs,
    }
}

/// Whether every monomial of every `τ(f_k)` has at least two legs in
/// `L = span(a₁,…,a_g)`.
pub fn lagrangian_certificate(config: &BPConfiguration) -> bool {
    config.pairs.iter().all(|p| {
        tau_bp(p, config.genus)
            .map(|t| t.every_monomial_meets_lagrangian(2))
            .unwrap_or(false)
    })
}

/// A configuration whose footprints form a chain
/// `S_k ∪ {j_k} ⊆ S_{k+1}` with nonempty innermost support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrulyNestedFamily {
    config: BPConfiguration,
}

impl TrulyNestedFamily {
    pub fn new(config: BPConfiguration) -> Result<TrulyNestedFamily, JohnsonError> {
        let ps = config.pairs();
        if ps.is_empty() || ps[0].support.is_empty() {
            return Err(JohnsonError::Precondition(
                "a nested family needs at least one pair with nonempty support".into(),
            ));
        }
        if let Some(k) = (1..ps.len()).find(|&k| !ps[k - 1].footprint().is_subset(&ps[k].support)) {
            return Err(JohnsonError::NotNested(k));
        }
        Ok(TrulyNestedFamily { config })
    }

    pub fn config(&self) -> &BPConfiguration {
        &self.config
    }

    pub fn len(&self) -> usize {
        self.config.len()
    }

    pub fn is_empty(&self) -> bool {
        self.config.is_empty()
    }

    /// `ω₀ = Σ_{i∈S₁} a_i∧b_i`.
    pub fn omega0(&self) -> Tensor {
        let g = self.config.genus;
        let terms = self.config.pairs[0]
            .support
            .iter()
            .map(|&i| ([Label::a(i), Label::b(i)], Scalar::from_integer(1.into())));
        Tensor::from_terms(g, Shape::exterior(2), terms).expect("support is in range")
    }

    /// `ω₀ ∧ c₁ ∧ ⋯ ∧ c_n` with `c_k = a_{j_k}`.
    pub fn expected_direction(&self) -> Result<Tensor, JohnsonError> {
        let g = self.config.genus;
        let cs: Vec<Label> = self
            .config
            .pairs
            .iter()
            .map(|p| Label::a(p.class_index))
            .collect();
        Ok(self.omega0().wedge(&Tensor::exterior_word(g, &cs)?)?)
    }
}

/// The chain `S_k = {1} ∪ {3,…,k+1}`, `j_k = k+2` at genus `n+2`.
pub fn sigma(n: usize) -> Result<TrulyNestedFamily, JohnsonError> {
    if n == 0 {
        return Err(JohnsonError::Precondition("sigma(n) needs n ≥ 1".into()));
    }
    let pairs = (1..=n)
        .map(|k| StandardBoundingPair::new(std::iter::once(1).chain(3..=k + 1), k + 2))
        .collect();
    TrulyNestedFamily::new(BPConfiguration::new(n + 2, pairs)?)
}

/// The chain `S_k = {1,…,k}`, `j_k = k+1` at genus `n+1`.
pub fn rho(n: usize) -> Result<TrulyNestedFamily, JohnsonError> {
    if n == 0 {
        return Err(JohnsonError::Precondition("rho(n) needs n ≥ 1".into()));
    }
    let pairs = (1..=n)
        .map(|k| StandardBoundingPair::new(1..=k, k + 1))
        .collect();
    TrulyNestedFamily::new(BPConfiguration::new(n + 1, pairs)?)
}

/// A random valid configuration with `n` pairs on at most `max_genus`
/// handles, mixing side-by-side and nested pairs.
///
/// Each new pair either sits on fresh handles or encloses a random set of
/// existing clusters; handles are then relabelled and pairs shuffled. The
/// genus is the number of handles used.
pub fn random_configuration<R: Rng>(
    rng: &mut R,
    n: usize,
    max_genus: usize,
) -> Result<BPConfiguration, JohnsonError> {
    if max_genus < 2 * n {
        return Err(JohnsonError::Precondition(format!(
            "{n} pairs need at least {} handles, got {max_genus}",
            2 * n
        )));
    }
    // clusters: footprints of the outermost pairs so far
    let mut clusters: Vec<BTreeSet<usize>> = Vec::new();
    let mut pairs = Vec::new();
    let mut next = 1;
    for made in 0..n {
        // keep two handles per remaining pair in reserve
        let spare = max_genus + 1 - next - 2 * (n - made - 1);
        let mut support = BTreeSet::new();
        if !clusters.is_empty() && rng.gen_bool(0.6) {
            clusters.shuffle(rng);
            let take = rng.gen_range(1..=clusters.len());
            for c in clusters.drain(..take) {
                support.extend(c);
            }
        }
        let min_fresh = if support.is_empty() { 2 } else { 1 };
        let fresh = rng.gen_range(min_fresh..=spare.min(min_fresh + 1));
        for _ in 0..fresh - 1 {
            support.insert(next);
            next += 1;
        }
        let class = next;
        next += 1;
        pairs.push(StandardBoundingPair {
            support: support.clone(),
            class_index: class,
        });
        support.insert(class);
        clusters.push(support);
    }
    let genus = next - 1;
    let mut relabel: Vec<usize> = (1..=genus).collect();
    relabel.shuffle(rng);
    let mut pairs: Vec<StandardBoundingPair> = pairs
        .into_iter()
        .map(|p| StandardBoundingPair {
            support: p.support.iter().map(|&i| relabel[i - 1]).collect(),
            class_index: relabel[p.class_index - 1],
        })
        .collect();
    pairs.shuffle(rng);
    BPConfiguration::new(genus, pairs)
}

/// `count` configurations drawn in sequence from a ChaCha8 stream seeded
/// with `seed`; identical arguments give identical samples.
pub fn sample_configurations(
    seed: u64,
    n: usize,
    max_genus: usize,
    count: usize,
) -> Result<Vec<BPConfiguration>, JohnsonError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_configuration(&mut rng, n, max_genus))
        .collect()
}

/// `ω` inserted into each factor of `ω ∈ ∧²H`: the image of the
/// fundamental class in `∧²(∧³H)`.
pub fn psi2_tensor(g: usize) -> Result<Tensor, JohnsonError> {
    let space = SymplecticSpace::new(g)?;
    Ok(omega(&space).insert_omega_sq()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int;

    fn a(i: usize) -> Label {
        Label::a(i)
    }
    fn b(i: usize) -> Label {
        Label::b(i)
    }

    #[test]
    fn tau_examples() {
        let t = tau_bp(&StandardBoundingPair::new([1], 3), 3).unwrap();
        assert_eq!(t, Tensor::exterior_word(3, &[a(1), b(1), a(3)]).unwrap());
        assert!(tau_bp(&StandardBoundingPair::new([], 2), 3)
            .unwrap()
            .is_zero());
        let t = tau_bp(&StandardBoundingPair::new([1, 2], 4), 4).unwrap();
        let want = &Tensor::exterior_word(4, &[a(1), b(1), a(4)]).unwrap()
            + &Tensor::exterior_word(4, &[a(2), b(2), a(4)]).unwrap();
        assert_eq!(t, want);
        assert!(matches!(
            tau_bp(&StandardBoundingPair::new([1, 2], 2), 3),
            Err(JohnsonError::ClassInSupport(2))
        ));
        assert!(matches!(
            tau_bp(&StandardBoundingPair::new([1], 5), 3),
            Err(JohnsonError::IndexOutOfRange { index: 5, .. })
        ));
    }

    #[test]
    fn configuration_invariants() {
        let p = |s: &[usize], j| StandardBoundingPair::new(s.iter().copied(), j);
        assert!(matches!(
            BPConfiguration::new(4, vec![p(&[1], 3), p(&[2], 3)]),
            Err(JohnsonError::RepeatedClass(3))
        ));
        // overlapping but not nested
        assert!(matches!(
            BPConfiguration::new(5, vec![p(&[1, 2], 3), p(&[2, 4], 5)]),
            Err(JohnsonError::Incompatible {
                first: 0,
                second: 1
            })
        ));
        // class of the outer pair inside the inner footprint
        assert!(BPConfiguration::new(4, vec![p(&[1], 2), p(&[1, 3], 2)]).is_err());
        assert!(BPConfiguration::new(5, vec![p(&[1], 2), p(&[1, 2], 3), p(&[4], 5)]).is_ok());
    }

    #[test]
    fn figure4_psi_image() {
        let c = BPConfiguration::figure4(2);
        let t = psi_image(&c).unwrap();
        assert_eq!(t.shape(), &Shape::wedge(2, Shape::w3()).unwrap());
        assert_eq!(t.len(), 1);
        assert_eq!(t.coefficient(&[a(1), b(1), a(3), a(4), b(4), a(6)]), int(1));
        let c1 = BPConfiguration::figure4(1);
        assert_eq!(
            psi_image(&c1).unwrap(),
            Tensor::exterior_word(3, &[a(1), b(1), a(3)]).unwrap()
        );
    }

    #[test]
    fn glue_examples() {
        let s1 = sigma(1).unwrap();
        let glued = glue_product(s1.config(), s1.config());
        assert_eq!(glued, BPConfiguration::figure4(2));
        let e = BPConfiguration::empty(0);
        assert_eq!(glue_product(s1.config(), &e), *s1.config());
        assert_eq!(glue_product(&e, s1.config()), *s1.config());

        let r1 = rho(1).unwrap();
        let rr = glue_product(r1.config(), r1.config());
        let left = psi_image(r1.config()).unwrap();
        let right = left.shift_handles(2, 4).unwrap();
        let left = left.shift_handles(0, 4).unwrap();
        assert_eq!(
            psi_image(&rr).unwrap(),
            left.lift().unwrap().wedge(&right.lift().unwrap()).unwrap()
        );
    }

    #[test]
    fn index_schemes() {
        let s = sigma(3).unwrap();
        assert_eq!(s.config().genus(), 5);
        let sup: Vec<Vec<usize>> = s
            .config()
            .pairs()
            .iter()
            .map(|p| p.support().iter().copied().collect())
            .collect();
        assert_eq!(sup, vec![vec![1], vec![1, 3], vec![1, 3, 4]]);
        let cls: Vec<usize> = s.config().pairs().iter().map(|p| p.class_index()).collect();
        assert_eq!(cls, vec![3, 4, 5]);
        let r = rho(3).unwrap();
        assert_eq!(r.config().genus(), 4);
        assert_eq!(
            psi_image(rho(1).unwrap().config()).unwrap(),
            Tensor::exterior_word(2, &[a(1), b(1), a(2)]).unwrap()
        );
        assert_eq!(
            r.expected_direction().unwrap(),
            Tensor::exterior_word(4, &[a(1), b(1), a(2), a(3), a(4)]).unwrap()
        );
    }

    #[test]
    fn lagrangian() {
        assert!(lagrangian_certificate(sigma(3).unwrap().config()));
        let bad = Tensor::exterior_word(3, &[b(1), b(2), b(3)]).unwrap();
        assert!(!bad.every_monomial_meets_lagrangian(2));
    }

    #[test]
    fn random_configurations_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=3 {
            for _ in 0..50 {
                let c = random_configuration(&mut rng, n, 3 * n).unwrap();
                assert_eq!(c.len(), n);
                assert!(c.genus() <= 3 * n);
            }
        }
        assert!(random_configuration(&mut rng, 3, 5).is_err());
    }

    #[test]
    fn psi2_vanishes_at_genus_one() {
        assert!(psi2_tensor(1).unwrap().is_zero());
        assert!(!psi2_tensor(2).unwrap().is_zero());
    }
}
