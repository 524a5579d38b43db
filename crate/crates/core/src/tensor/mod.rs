//! Sparse exact tensors over composite shapes of `H`.
//!
//! A [`Tensor`] stores a map from canonical flattened words to nonzero
//! rationals. Every constructor and operation returns canonical data, so
//! structural equality is mathematical equality.

mod matching;
mod ops;
mod shape;
mod special;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};
use smallvec::SmallVec;
use thiserror::Error;

use crate::symplectic::{Label, SymplecticError, SymplecticSpace};
use crate::Scalar;

pub use matching::{matchings, ContractionWitness};
pub use ops::antisymmetrize;
pub(crate) use shape::signed_permutations as signed_permutations_of;
pub use shape::Shape;
pub use special::{omega, weight_band, word_weight, Weight};

/// A flattened basis word; inline up to four `∧³H` blocks.
pub type Word = SmallVec<[Label; 12]>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TensorError {
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("cannot parse shape at byte {position}: {message}")]
    ShapeParse { position: usize, message: String },
    #[error("shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: String, found: String },
    #[error("genus mismatch: {left} vs {right}")]
    GenusMismatch { left: usize, right: usize },
    #[error("word of length {found} does not fit shape {shape} of degree {expected}")]
    WordLength {
        shape: String,
        expected: usize,
        found: usize,
    },
    #[error("label {label} does not exist at genus {genus}")]
    LabelOutOfRange { label: Label, genus: usize },
    #[error("contraction positions ({i}, {j}) invalid for {legs} legs")]
    BadPositions { i: usize, j: usize, legs: usize },
    #[error("operation needs a flat shape H^k, found {0}")]
    NotFlat(String),
    #[error("factor {index} of {shape} is not an exterior power of H")]
    NotExterior { index: usize, shape: String },
    #[error("factor {index} of {shape} is not an alternating power")]
    NotWedge { index: usize, shape: String },
    #[error("factor index {index} out of range for {shape}")]
    FactorOutOfRange { index: usize, shape: String },
    #[error("{r} disjoint contractions need {needed} legs, shape has {legs}")]
    TooManyContractions {
        r: usize,
        needed: usize,
        legs: usize,
    },
    #[error("estimated {estimated} terms exceeds the cap of {cap}")]
    TermCap { estimated: u128, cap: u64 },
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Symplectic(#[from] SymplecticError),
}

/// An element of a shape at a fixed genus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tensor {
    genus: usize,
    shape: Shape,
    terms: BTreeMap<Word, Scalar>,
}

impl Tensor {
    pub fn zero(genus: usize, shape: Shape) -> Tensor {
        Tensor {
            genus,
            shape,
            terms: BTreeMap::new(),
        }
    }

    /// The scalar `c` as an element of the degree-0 shape.
    pub fn scalar(genus: usize, c: Scalar) -> Tensor {
        let mut t = Tensor::zero(genus, Shape::scalar());
        if !c.is_zero() {
            t.terms.insert(Word::new(), c);
        }
        t
    }

    /// Build from arbitrary (not necessarily canonical) words.
    pub fn from_terms<I, W>(genus: usize, shape: Shape, terms: I) -> Result<Tensor, TensorError>
    where
        I: IntoIterator<Item = (W, Scalar)>,
        W: AsRef<[Label]>,
    {
        let d = shape.degree();
        let mut out = Tensor::zero(genus, shape);
        for (w, c) in terms {
            let w = w.as_ref();
            if w.len() != d {
                return Err(TensorError::WordLength {
                    shape: out.shape.to_string(),
                    expected: d,
                    found: w.len(),
                });
            }
            for &l in w {
                if l.index() > genus {
                    return Err(TensorError::LabelOutOfRange { label: l, genus });
                }
            }
            out.add_term(Word::from_slice(w), c);
        }
        Ok(out)
    }

    /// A single word with coefficient 1.
    pub fn word(genus: usize, shape: Shape, legs: &[Label]) -> Result<Tensor, TensorError> {
        Tensor::from_terms(genus, shape, [(legs, Scalar::one())])
    }

    /// The exterior word `l₁∧…∧l_k` in `∧ᵏH`.
    pub fn exterior_word(genus: usize, legs: &[Label]) -> Result<Tensor, TensorError> {
        Tensor::word(genus, Shape::exterior(legs.len()), legs)
    }

    /// A vector of `H` from `(label, coefficient)` pairs.
    pub fn vector<I>(genus: usize, coords: I) -> Result<Tensor, TensorError>
    where
        I: IntoIterator<Item = (Label, Scalar)>,
    {
        Tensor::from_terms(genus, Shape::H, coords.into_iter().map(|(l, c)| ([l], c)))
    }

    /// Internal constructor for maps already in canonical form.
    pub(crate) fn from_canonical(
        genus: usize,
        shape: Shape,
        terms: BTreeMap<Word, Scalar>,
    ) -> Tensor {
        debug_assert!(terms
            .iter()
            .all(|(w, c)| !c.is_zero() && shape.is_canonical(w)));
        Tensor {
            genus,
            shape,
            terms,
        }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn space(&self) -> Result<SymplecticSpace, TensorError> {
        Ok(SymplecticSpace::new(self.genus)?)
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn terms(&self) -> &BTreeMap<Word, Scalar> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    /// Number of stored monomials; [`Tensor::is_zero`] is the emptiness test.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of an arbitrary (not necessarily canonical) word.
    pub fn coefficient(&self, legs: &[Label]) -> Scalar {
        let mut w = Word::from_slice(legs);
        if w.len() != self.shape.degree() {
            return Scalar::zero();
        }
        match self.shape.canonicalize(&mut w) {
            0 => Scalar::zero(),
            s => self.terms.get(&w).map_or_else(Scalar::zero, |c| {
                c * Scalar::from_integer((s as i64).into())
            }),
        }
    }

    /// Value of the degree-0 tensor.
    pub fn scalar_value(&self) -> Option<Scalar> {
        if self.shape.degree() != 0 {
            return None;
        }
        Some(
            self.terms
                .get(&Word::new())
                .cloned()
                .unwrap_or_else(Scalar::zero),
        )
    }

    /// Reinterpret under an equal-degree shape whose canonical forms agree.
    pub fn with_shape(mut self, shape: Shape) -> Result<Tensor, TensorError> {
        if shape.degree() != self.shape.degree() {
            return Err(self.mismatch(&shape));
        }
        let terms = std::mem::take(&mut self.terms);
        let mut out = Tensor::zero(self.genus, shape);
        for (w, c) in terms {
            out.add_term(w, c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Tensor {
        if c.is_zero() {
            return Tensor::zero(self.genus, self.shape.clone());
        }
        Tensor {
            genus: self.genus,
            shape: self.shape.clone(),
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    pub fn checked_add(&self, other: &Tensor) -> Result<Tensor, TensorError> {
        self.check_same_space(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            add_canonical(&mut out.terms, w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Tensor) -> Result<Tensor, TensorError> {
        self.check_same_space(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            add_canonical(&mut out.terms, w.clone(), -c);
        }
        Ok(out)
    }

    /// `Some(c)` with `self = c · other`, if such a scalar exists.
    ///
    /// Returns `Some(0)` when `self` is zero; `None` when `other` is zero
    /// and `self` is not, or the supports or ratios differ.
    pub fn ratio_to(&self, other: &Tensor) -> Option<Scalar> {
        if self.genus != other.genus || self.shape != other.shape {
            return None;
        }
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        if self.terms.len() != other.terms.len() {
            return None;
        }
        let mut ratio: Option<Scalar> = None;
        for ((w, x), (v, y)) in self.terms.iter().zip(&other.terms) {
            if w != v {
                return None;
            }
            let r = x / y;
            match &ratio {
                None => ratio = Some(r),
                Some(q) if *q == r => {}
                Some(_) => return None,
            }
        }
        ratio
    }

    pub(crate) fn check_same_space(&self, other: &Tensor) -> Result<(), TensorError> {
        if self.genus != other.genus {
            return Err(TensorError::GenusMismatch {
                left: self.genus,
                right: other.genus,
            });
        }
        if self.shape != other.shape {
            return Err(self.mismatch(&other.shape));
        }
        Ok(())
    }

    fn mismatch(&self, found: &Shape) -> TensorError {
        TensorError::ShapeMismatch {
            expected: self.shape.to_string(),
            found: found.to_string(),
        }
    }

    /// Canonicalize `w` for this tensor's shape and accumulate `c` there.
    pub(crate) fn add_term(&mut self, mut w: Word, c: Scalar) {
        match self.shape.canonicalize(&mut w) {
            0 => {}
            1 => add_canonical(&mut self.terms, w, c),
            _ => add_canonical(&mut self.terms, w, -c),
        }
    }

    /// Render one canonical word in the structure of this tensor's shape.
    pub fn format_word(&self, legs: &[Label]) -> String {
        let mut s = String::new();
        write_word(&mut s, &self.shape, legs, true);
        s
    }
}

/// Accumulate into a map of canonical words, dropping zeros.
pub(crate) fn add_canonical(map: &mut BTreeMap<Word, Scalar>, w: Word, c: Scalar) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(w) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// Merge two partial sums; used as the reduction of parallel folds.
pub(crate) fn merge_terms(
    mut a: BTreeMap<Word, Scalar>,
    mut b: BTreeMap<Word, Scalar>,
) -> BTreeMap<Word, Scalar> {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    for (w, c) in b {
        add_canonical(&mut a, w, c);
    }
    a
}

fn write_word(out: &mut String, shape: &Shape, legs: &[Label], top: bool) {
    match shape {
        Shape::H => out.push_str(&legs[0].to_string()),
        Shape::Tensor(fs) if fs.is_empty() => out.push('1'),
        Shape::Tensor(fs) => {
            if !top {
                out.push('(');
            }
            let mut off = 0;
            for (i, f) in fs.iter().enumerate() {
                if i > 0 {
                    out.push('⊗');
                }
                let d = f.degree();
                write_word(out, f, &legs[off..off + d], false);
                off += d;
            }
            if !top {
                out.push(')');
            }
        }
        Shape::Wedge(k, inner) => {
            let m = inner.degree();
            let wrap = !top && *k > 1;
            if wrap {
                out.push('(');
            }
            for c in 0..*k {
                if c > 0 {
                    out.push('∧');
                }
                write_word(out, inner, &legs[c * m..(c + 1) * m], false);
            }
            if wrap {
                out.push(')');
            }
        }
    }
}

impl fmt::Display for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c < &Scalar::zero();
            let abs = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let word = self.format_word(w);
            if self.shape.degree() == 0 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{word}")?;
            } else {
                write!(f, "{abs}·{word}")?;
            }
        }
        Ok(())
    }
}

/// Panics if the operands live in different spaces; use
/// [`Tensor::checked_add`] for a fallible sum.
impl Add for &Tensor {
    type Output = Tensor;
    fn add(self, rhs: &Tensor) -> Tensor {
        self.checked_add(rhs)
            .expect("tensor sum across different spaces")
    }
}

/// Panics if the operands live in different spaces; use
/// [`Tensor::checked_sub`] for a fallible difference.
impl Sub for &Tensor {
    type Output = Tensor;
    fn sub(self, rhs: &Tensor) -> Tensor {
        self.checked_sub(rhs)
            .expect("tensor difference across different spaces")
    }
}

impl Neg for &Tensor {
    type Output = Tensor;
    fn neg(self) -> Tensor {
        Tensor {
            genus: self.genus,
            shape: self.shape.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}
