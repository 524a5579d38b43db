//! The genus-`g` symplectic space `H = span(a₁,b₁,…,a_g,b_g)`.
//!
//! Basis labels are totally ordered `a₁ < b₁ < a₂ < b₂ < …`; every canonical
//! form in [`crate::tensor`] relies on that order.

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::{int, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymplecticError {
    #[error("genus must be at least 1")]
    ZeroGenus,
    #[error("genus {0} exceeds the supported maximum of {MAX_GENUS}")]
    GenusTooLarge(usize),
    #[error("handle index {index} out of range 1..={genus}")]
    IndexOutOfRange { index: usize, genus: usize },
    #[error("generator needs two distinct handle indices, got {0} twice")]
    RepeatedIndex(usize),
    #[error("matrix is {rows}x{cols}, expected {expected}x{expected}")]
    DimensionMismatch {
        rows: usize,
        cols: usize,
        expected: usize,
    },
    #[error("genus mismatch: {left} vs {right}")]
    GenusMismatch { left: usize, right: usize },
    #[error("torus parameter for handle {0} is zero")]
    SingularTorus(usize),
}

/// Labels are packed into a byte.
pub const MAX_GENUS: usize = 127;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    A,
    B,
}

/// A symplectic basis vector `a_i` or `b_i` (1-based handle index).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(u8);

impl Label {
    pub fn a(index: usize) -> Label {
        debug_assert!((1..=MAX_GENUS).contains(&index));
        Label((2 * (index - 1)) as u8)
    }

    pub fn b(index: usize) -> Label {
        debug_assert!((1..=MAX_GENUS).contains(&index));
        Label((2 * (index - 1) + 1) as u8)
    }

    pub fn new(index: usize, kind: Kind) -> Label {
        match kind {
            Kind::A => Label::a(index),
            Kind::B => Label::b(index),
        }
    }

    /// Position of the label in the global basis order, starting at 0.
    pub fn code(self) -> usize {
        self.0 as usize
    }

    pub fn from_code(code: usize) -> Label {
        Label(code as u8)
    }

    pub fn index(self) -> usize {
        (self.0 as usize) / 2 + 1
    }

    pub fn kind(self) -> Kind {
        if self.0.is_multiple_of(2) {
            Kind::A
        } else {
            Kind::B
        }
    }

    /// The symplectic partner: `a_i ↔ b_i`.
    pub fn dual(self) -> Label {
        Label(self.0 ^ 1)
    }

    /// Same kind, handle index moved by `offset`.
    pub fn shifted(self, offset: usize) -> Label {
        Label(self.0 + 2 * offset as u8)
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind() {
            Kind::A => 'a',
            Kind::B => 'b',
        };
        write!(f, "{}{}", k, self.index())
    }
}

/// `⟨u, v⟩` with `⟨a_i, b_j⟩ = δ_ij = −⟨b_j, a_i⟩` and all other pairings 0.
#[inline]
pub fn pairing(u: Label, v: Label) -> i8 {
    if u.0 ^ 1 != v.0 {
        0
    } else if u.0 & 1 == 0 {
        1
    } else {
        -1
    }
}

/// The symplectic space of genus `g` with its canonical basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SymplecticSpace {
    genus: usize,
}

impl SymplecticSpace {
    pub fn new(genus: usize) -> Result<Self, SymplecticError> {
        if genus == 0 {
            return Err(SymplecticError::ZeroGenus);
        }
        if genus > MAX_GENUS {
            return Err(SymplecticError::GenusTooLarge(genus));
        }
        Ok(SymplecticSpace { genus })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn dim(&self) -> usize {
        2 * self.genus
    }

    /// Labels in the global order `a₁, b₁, a₂, b₂, …`.
    pub fn basis(&self) -> impl Iterator<Item = Label> {
        (0..self.dim()).map(Label::from_code)
    }

    pub fn check_index(&self, index: usize) -> Result<(), SymplecticError> {
        if index == 0 || index > self.genus {
            Err(SymplecticError::IndexOutOfRange {
                index,
                genus: self.genus,
            })
        } else {
            Ok(())
        }
    }

    /// Gram matrix of the pairing in basis order.
    pub fn pairing_matrix(&self) -> Vec<Vec<Scalar>> {
        let basis: Vec<Label> = self.basis().collect();
        basis
            .iter()
            .map(|&u| basis.iter().map(|&v| int(pairing(u, v) as i64)).collect())
            .collect()
    }

    pub fn identity(&self) -> SymplecticMap {
        SymplecticMap::identity(self.genus)
    }

    /// `T_{i,j}`: `b_i ↦ b_i + a_j`, `b_j ↦ b_j + a_i`, all else fixed.
    pub fn transvection_t(&self, i: usize, j: usize) -> Result<SymplecticMap, SymplecticError> {
        self.check_index(i)?;
        self.check_index(j)?;
        if i == j {
            return Err(SymplecticError::RepeatedIndex(i));
        }
        let mut m = self.identity();
        m.set(Label::a(j), Label::b(i), Scalar::one());
        m.set(Label::a(i), Label::b(j), Scalar::one());
        Ok(m)
    }

    /// `S_{p,q}`: `a_p ↦ a_p + a_q`, `b_q ↦ b_q − b_p`, all else fixed.
    pub fn transvection_s(&self, p: usize, q: usize) -> Result<SymplecticMap, SymplecticError> {
        self.check_index(p)?;
        self.check_index(q)?;
        if p == q {
            return Err(SymplecticError::RepeatedIndex(p));
        }
        let mut m = self.identity();
        m.set(Label::a(q), Label::a(p), Scalar::one());
        m.set(Label::b(p), Label::b(q), -Scalar::one());
        Ok(m)
    }

    /// Every `T_{i,j}` and `S_{p,q}` over ordered pairs of distinct handles.
    pub fn generators(&self) -> Vec<(String, SymplecticMap)> {
        let g = self.genus;
        let mut out = Vec::new();
        for i in 1..=g {
            for j in 1..=g {
                if i != j {
                    out.push((format!("T{i},{j}"), self.transvection_t(i, j).unwrap()));
                }
            }
        }
        for p in 1..=g {
            for q in 1..=g {
                if p != q {
                    out.push((format!("S{p},{q}"), self.transvection_s(p, q).unwrap()));
                }
            }
        }
        out
    }

    /// Relabel handles: `a_i ↦ a_{π(i)}`, `b_i ↦ b_{π(i)}` for a permutation
    /// `π` of `1..=g` given as `perm[i-1] = π(i)`.
    pub fn handle_permutation(&self, perm: &[usize]) -> Result<SymplecticMap, SymplecticError> {
        let g = self.genus;
        if perm.len() != g {
            return Err(SymplecticError::DimensionMismatch {
                rows: perm.len(),
                cols: 1,
                expected: g,
            });
        }
        let mut seen = vec![false; g];
        for &p in perm {
            self.check_index(p)?;
            if std::mem::replace(&mut seen[p - 1], true) {
                return Err(SymplecticError::RepeatedIndex(p));
            }
        }
        let mut m = SymplecticMap::zero(g);
        for (i, &p) in perm.iter().enumerate() {
            m.set(Label::a(p), Label::a(i + 1), Scalar::one());
            m.set(Label::b(p), Label::b(i + 1), Scalar::one());
        }
        Ok(m)
    }

    /// The torus element `a_i ↦ t_i a_i`, `b_i ↦ t_i⁻¹ b_i`.
    pub fn torus(&self, params: &[Scalar]) -> Result<SymplecticMap, SymplecticError> {
        if params.len() != self.genus {
            return Err(SymplecticError::DimensionMismatch {
                rows: params.len(),
                cols: 1,
                expected: self.genus,
            });
        }
        let mut m = SymplecticMap::zero(self.genus);
        for (i, t) in params.iter().enumerate() {
            if t.is_zero() {
                return Err(SymplecticError::SingularTorus(i + 1));
            }
            m.set(Label::a(i + 1), Label::a(i + 1), t.clone());
            m.set(Label::b(i + 1), Label::b(i + 1), t.recip());
        }
        Ok(m)
    }
}

/// A linear map `H → H` stored as a dense `2g × 2g` rational matrix.
///
/// Column `c` holds the image of the basis label with code `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticMap {
    genus: usize,
    entries: Vec<Scalar>,
}

impl SymplecticMap {
    pub fn identity(genus: usize) -> Self {
        let mut m = Self::zero(genus);
        for c in 0..2 * genus {
            m.entries[c * 2 * genus + c] = Scalar::one();
        }
        m
    }

    fn zero(genus: usize) -> Self {
        let n = 2 * genus;
        SymplecticMap {
            genus,
            entries: vec![Scalar::zero(); n * n],
        }
    }

    /// Build from rows (`rows[r][c]` is the coefficient of basis `r` in the
    /// image of basis `c`). Whether the result preserves the pairing is for
    /// [`SymplecticMap::is_symplectic`] to decide.
    pub fn from_rows(genus: usize, rows: Vec<Vec<Scalar>>) -> Result<Self, SymplecticError> {
        let n = 2 * genus;
        let cols = rows.first().map_or(0, Vec::len);
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(SymplecticError::DimensionMismatch {
                rows: rows.len(),
                cols,
                expected: n,
            });
        }
        let mut m = Self::zero(genus);
        for (r, row) in rows.into_iter().enumerate() {
            for (c, x) in row.into_iter().enumerate() {
                m.entries[c * n + r] = x;
            }
        }
        Ok(m)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    fn n(&self) -> usize {
        2 * self.genus
    }

    pub fn entry(&self, row: Label, col: Label) -> &Scalar {
        &self.entries[col.code() * self.n() + row.code()]
    }

    fn set(&mut self, row: Label, col: Label, x: Scalar) {
        let n = self.n();
        self.entries[col.code() * n + row.code()] = x;
    }

    /// Nonzero entries of the image of `v`, in basis order.
    pub fn image(&self, v: Label) -> Vec<(Label, Scalar)> {
        let n = self.n();
        self.entries[v.code() * n..(v.code() + 1) * n]
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(r, x)| (Label::from_code(r), x.clone()))
            .collect()
    }

    /// All columns as sparse images, indexed by label code.
    pub fn columns(&self) -> Vec<Vec<(Label, Scalar)>> {
        (0..self.n())
            .map(|c| self.image(Label::from_code(c)))
            .collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SymplecticMap) -> Result<SymplecticMap, SymplecticError> {
        if self.genus != other.genus {
            return Err(SymplecticError::GenusMismatch {
                left: self.genus,
                right: other.genus,
            });
        }
        let n = self.n();
        let mut out = Self::zero(self.genus);
        for c in 0..n {
            for k in 0..n {
                let y = &other.entries[c * n + k];
                if y.is_zero() {
                    continue;
                }
                for r in 0..n {
                    let x = &self.entries[k * n + r];
                    if !x.is_zero() {
                        out.entries[c * n + r] += x * y;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `⟨Mu, Mv⟩ = ⟨u, v⟩` for every pair of basis labels of `space`.
    pub fn is_symplectic(&self, space: &SymplecticSpace) -> Result<bool, SymplecticError> {
        if self.genus != space.genus() {
            let n = space.dim();
            return Err(SymplecticError::DimensionMismatch {
                rows: self.n(),
                cols: self.n(),
                expected: n,
            });
        }
        let cols = self.columns();
        for u in space.basis() {
            for v in space.basis() {
                let mut acc = Scalar::zero();
                for (x, cx) in &cols[u.code()] {
                    for (y, cy) in &cols[v.code()] {
                        let p = pairing(*x, *y);
                        if p != 0 {
                            acc += cx * cy * int(p as i64);
                        }
                    }
                }
                if acc != int(pairing(u, v) as i64) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}
