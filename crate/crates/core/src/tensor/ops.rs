use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use super::shape::signed_permutations;
use super::{add_canonical, merge_terms, Shape, Tensor, TensorError, Word};
use crate::par::Execution;
use crate::symplectic::{pairing, Label, SymplecticMap};
use crate::{int, Scalar, DEFAULT_TERM_CAP};

/// `∧ᵏS`, spelled `∧ᵏH` when `S = H` so that `∧¹H = H`.
fn wedge_shape(k: usize, inner: Shape) -> Result<Shape, TensorError> {
    if inner == Shape::H {
        Ok(Shape::exterior(k))
    } else {
        Shape::wedge(k, inner)
    }
}

/// Remove positions `i < j` from a word.
fn without(w: &[Label], i: usize, j: usize) -> Word {
    let mut out = Word::with_capacity(w.len() - 2);
    for (p, &l) in w.iter().enumerate() {
        if p != i && p != j {
            out.push(l);
        }
    }
    out
}

fn without_one(w: &[Label], i: usize) -> Word {
    let mut out = Word::from_slice(&w[..i]);
    out.extend_from_slice(&w[i + 1..]);
    out
}

fn parity(n: usize) -> i64 {
    if n.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl Tensor {
    fn factor_layout(&self) -> (Vec<Shape>, Vec<usize>) {
        let fs = self.shape.factors();
        let mut offs = Vec::with_capacity(fs.len() + 1);
        let mut off = 0;
        for f in &fs {
            offs.push(off);
            off += f.degree();
        }
        offs.push(off);
        (fs, offs)
    }

    fn factor_exterior_degree(&self, fs: &[Shape], index: usize) -> Result<usize, TensorError> {
        let f = fs.get(index).ok_or_else(|| TensorError::FactorOutOfRange {
            index,
            shape: self.shape.to_string(),
        })?;
        f.exterior_degree().ok_or_else(|| TensorError::NotExterior {
            index,
            shape: self.shape.to_string(),
        })
    }

    /// Replace factors `first..first+count` by `replacement`, mapping the
    /// corresponding sub-word of every term through `f`.
    fn rewrite_factors<F>(
        &self,
        first: usize,
        count: usize,
        replacement: Vec<Shape>,
        f: F,
    ) -> Tensor
    where
        F: Fn(&[Label]) -> Vec<(i64, Word)>,
    {
        let (fs, offs) = self.factor_layout();
        let mut new_fs: Vec<Shape> = fs[..first].to_vec();
        new_fs.extend(replacement);
        new_fs.extend_from_slice(&fs[first + count..]);
        let mut out = Tensor::zero(self.genus, Shape::product(new_fs));
        let (lo, hi) = (offs[first], offs[first + count]);
        for (w, c) in &self.terms {
            for (s, mid) in f(&w[lo..hi]) {
                if s == 0 {
                    continue;
                }
                let mut nw = Word::from_slice(&w[..lo]);
                nw.extend_from_slice(&mid);
                nw.extend_from_slice(&w[hi..]);
                out.add_term(nw, c * int(s));
            }
        }
        out
    }

    /// Wedge product in `∧^{p+q}S` of `t₁ ∈ ∧ᵖS` and `t₂ ∈ ∧^qS`.
    pub fn wedge(&self, other: &Tensor) -> Result<Tensor, TensorError> {
        self.wedge_with(other, Execution::default())
    }

    pub fn wedge_with(&self, other: &Tensor, exec: Execution) -> Result<Tensor, TensorError> {
        if self.genus != other.genus {
            return Err(TensorError::GenusMismatch {
                left: self.genus,
                right: other.genus,
            });
        }
        let not_wedge = |t: &Tensor| TensorError::NotWedge {
            index: 0,
            shape: t.shape.to_string(),
        };
        let (p, s1) = self.shape.wedge_parts().ok_or_else(|| not_wedge(self))?;
        let (q, s2) = other.shape.wedge_parts().ok_or_else(|| not_wedge(other))?;
        if s1 != s2 {
            return Err(TensorError::ShapeMismatch {
                expected: s1.to_string(),
                found: s2.to_string(),
            });
        }
        let shape = wedge_shape(p + q, s1)?;
        let left: Vec<(&Word, &Scalar)> = self.terms.iter().collect();
        let terms = exec.fold_reduce(
            &left,
            BTreeMap::new,
            |mut acc, (w, x)| {
                for (v, y) in &other.terms {
                    let mut nw = (*w).clone();
                    nw.extend_from_slice(v);
                    match shape.canonicalize(&mut nw) {
                        0 => {}
                        1 => add_canonical(&mut acc, nw, *x * y),
                        _ => add_canonical(&mut acc, nw, -(*x * y)),
                    }
                }
                acc
            },
            merge_terms,
        );
        Ok(Tensor::from_canonical(self.genus, shape, terms))
    }

    /// Tensor product; the factor lists are concatenated.
    pub fn tensor(&self, other: &Tensor) -> Result<Tensor, TensorError> {
        if self.genus != other.genus {
            return Err(TensorError::GenusMismatch {
                left: self.genus,
                right: other.genus,
            });
        }
        let mut fs = self.shape.factors();
        fs.extend(other.shape.factors());
        let shape = Shape::product(fs);
        let mut terms = BTreeMap::new();
        for (w, x) in &self.terms {
            for (v, y) in &other.terms {
                let mut nw = w.clone();
                nw.extend_from_slice(v);
                terms.insert(nw, x * y);
            }
        }
        Ok(Tensor::from_canonical(self.genus, shape, terms))
    }

    /// View an element of `S` as an element of `∧¹S`.
    pub fn lift(&self) -> Result<Tensor, TensorError> {
        let shape = Shape::wedge(1, self.shape.clone())?;
        Ok(Tensor::from_canonical(
            self.genus,
            shape,
            self.terms.clone(),
        ))
    }

    /// Image in `H^{⊗k}` under the standard inclusion, with the default term cap.
    pub fn expand(&self) -> Result<Tensor, TensorError> {
        self.expand_with(DEFAULT_TERM_CAP, Execution::default())
    }

    /// Upper bound on the number of flat terms `expand` can produce.
    pub fn expansion_estimate(&self) -> u128 {
        (self.terms.len() as u128).saturating_mul(self.shape.expansion_factor())
    }

    pub fn expand_with(&self, cap: u64, exec: Execution) -> Result<Tensor, TensorError> {
        let estimated = self.expansion_estimate();
        if estimated > cap as u128 {
            return Err(TensorError::TermCap { estimated, cap });
        }
        let shape = Shape::flat(self.shape.degree());
        let items: Vec<(&Word, &Scalar)> = self.terms.iter().collect();
        let terms = exec.fold_reduce(
            &items,
            BTreeMap::new,
            |mut acc, (w, c)| {
                for (s, flat) in self.shape.expand_word(w) {
                    add_canonical(&mut acc, flat, if s > 0 { (*c).clone() } else { -*c });
                }
                acc
            },
            merge_terms,
        );
        Ok(Tensor::from_canonical(self.genus, shape, terms))
    }

    /// The flat contraction `C_{i,j}` (1-based, `i < j`), without positional sign.
    pub fn contract(&self, i: usize, j: usize) -> Result<Tensor, TensorError> {
        if !self.shape.is_flat() {
            return Err(TensorError::NotFlat(self.shape.to_string()));
        }
        let k = self.shape.degree();
        if i == 0 || i >= j || j > k {
            return Err(TensorError::BadPositions { i, j, legs: k });
        }
        let mut out = Tensor::zero(self.genus, Shape::flat(k - 2));
        for (w, c) in &self.terms {
            let p = pairing(w[i - 1], w[j - 1]);
            if p != 0 {
                add_canonical(&mut out.terms, without(w, i - 1, j - 1), c * int(p as i64));
            }
        }
        Ok(out)
    }

    /// Diagonal contraction of adjacent exterior factors `index`, `index+1`:
    /// `∧ᵖH ⊗ ∧^qH → ∧^{p−1}H ⊗ ∧^{q−1}H`.
    ///
    /// Each leg pair `(s, t)` contributes `(−1)^{s+t}⟨x_s, y_t⟩`, the sign of
    /// moving both legs to the front of their factors.
    pub fn contract_pair_exterior(&self, index: usize) -> Result<Tensor, TensorError> {
        let (fs, _) = self.factor_layout();
        let p = self.factor_exterior_degree(&fs, index)?;
        let q = self.factor_exterior_degree(&fs, index + 1)?;
        let repl = vec![Shape::exterior(p - 1), Shape::exterior(q - 1)];
        Ok(self.rewrite_factors(index, 2, repl, |w| {
            let (x, y) = w.split_at(p);
            let mut out = Vec::new();
            for (s, &u) in x.iter().enumerate() {
                for (t, &v) in y.iter().enumerate() {
                    let pr = pairing(u, v) as i64;
                    if pr != 0 {
                        let mut nw = without_one(x, s);
                        nw.extend_from_slice(&without_one(y, t));
                        out.push((pr * parity(s + t), nw));
                    }
                }
            }
            out
        }))
    }

    /// `∧ᵖH ⊗ ∧^qH → ∧^{p+q}H` on factors `index`, `index+1`.
    pub fn multiply_exterior(&self, index: usize) -> Result<Tensor, TensorError> {
        let (fs, _) = self.factor_layout();
        let p = self.factor_exterior_degree(&fs, index)?;
        let q = self.factor_exterior_degree(&fs, index + 1)?;
        Ok(
            self.rewrite_factors(index, 2, vec![Shape::exterior(p + q)], |w| {
                vec![(1, Word::from_slice(w))]
            }),
        )
    }

    /// Self-contraction `∧ᵏH → ∧^{k−2}H` of one factor: leg pair `s < t`
    /// contributes `(−1)^{s+t−1}⟨x_s, x_t⟩`.
    pub fn contract_exterior(&self, index: usize) -> Result<Tensor, TensorError> {
        let (fs, _) = self.factor_layout();
        let k = self.factor_exterior_degree(&fs, index)?;
        if k < 2 {
            return Err(TensorError::Domain(format!(
                "self-contraction needs at least two legs, factor {index} of {} has {k}",
                self.shape
            )));
        }
        Ok(
            self.rewrite_factors(index, 1, vec![Shape::exterior(k - 2)], |w| {
                let mut out = Vec::new();
                for s in 0..k {
                    for t in s + 1..k {
                        let pr = pairing(w[s], w[t]) as i64;
                        if pr != 0 {
                            out.push((pr * parity(s + t + 1), without(w, s, t)));
                        }
                    }
                }
                out
            }),
        )
    }

    /// Coproduct component `∧ᵐS → ∧ᵏS ⊗ ∧^{m−k}S` on factor `index`
    /// (unshuffles with the sign of the block permutation).
    pub fn split_wedge(&self, index: usize, k: usize) -> Result<Tensor, TensorError> {
        let (fs, _) = self.factor_layout();
        let f = fs.get(index).ok_or_else(|| TensorError::FactorOutOfRange {
            index,
            shape: self.shape.to_string(),
        })?;
        let (m, inner) = f.wedge_parts().ok_or_else(|| TensorError::NotWedge {
            index,
            shape: self.shape.to_string(),
        })?;
        if k == 0 || k > m {
            return Err(TensorError::Domain(format!(
                "cannot split {k} blocks off a power of {m}"
            )));
        }
        let piece = |j: usize| -> Result<Shape, TensorError> {
            match j {
                0 => Ok(Shape::scalar()),
                1 => Ok(inner.clone()),
                _ => wedge_shape(j, inner.clone()),
            }
        };
        let repl = vec![piece(k)?, piece(m - k)?];
        let d = inner.degree();
        let odd = d % 2 == 1;
        let subsets = k_subsets(m, k);
        Ok(self.rewrite_factors(index, 1, repl, |w| {
            subsets
                .iter()
                .map(|chosen| {
                    let mut nw = Word::with_capacity(w.len());
                    let mut rest = Word::new();
                    let mut inversions = 0;
                    let mut taken = 0;
                    for b in 0..m {
                        let block = &w[b * d..(b + 1) * d];
                        if chosen.contains(&b) {
                            inversions += b - taken;
                            taken += 1;
                            nw.extend_from_slice(block);
                        } else {
                            rest.extend_from_slice(block);
                        }
                    }
                    nw.extend_from_slice(&rest);
                    let s = if odd { parity(inversions) } else { 1 };
                    (s, nw)
                })
                .collect()
        }))
    }

    /// Read `∧²S` as `S ⊗ S` through the representative `v ⊗ w` of `v ∧ w`.
    ///
    /// Only meaningful when followed by a map that is alternating in the two
    /// factors.
    pub fn unpack_pair(&self, index: usize) -> Result<Tensor, TensorError> {
        let (fs, _) = self.factor_layout();
        match fs.get(index) {
            Some(Shape::Wedge(2, inner)) => {
                let inner = (**inner).clone();
                Ok(
                    self.rewrite_factors(index, 1, vec![inner.clone(), inner], |w| {
                        vec![(1, Word::from_slice(w))]
                    }),
                )
            }
            Some(_) => Err(TensorError::NotWedge {
                index,
                shape: self.shape.to_string(),
            }),
            None => Err(TensorError::FactorOutOfRange {
                index,
                shape: self.shape.to_string(),
            }),
        }
    }

    /// Act by `m` on every leg.
    pub fn apply_map(&self, m: &SymplecticMap) -> Result<Tensor, TensorError> {
        self.apply_map_with(m, Execution::default())
    }

    pub fn apply_map_with(
        &self,
        m: &SymplecticMap,
        exec: Execution,
    ) -> Result<Tensor, TensorError> {
        if m.genus() != self.genus {
            return Err(TensorError::GenusMismatch {
                left: self.genus,
                right: m.genus(),
            });
        }
        let cols = m.columns();
        let items: Vec<(&Word, &Scalar)> = self.terms.iter().collect();
        let shape = &self.shape;
        let terms = exec.fold_reduce(
            &items,
            BTreeMap::new,
            |mut acc, (w, c)| {
                let mut partial: Vec<(Scalar, Word)> = vec![((*c).clone(), Word::new())];
                for l in w.iter() {
                    let col = &cols[l.code()];
                    let mut next = Vec::with_capacity(partial.len() * col.len());
                    for (x, pw) in &partial {
                        for (img, y) in col {
                            let mut nw = pw.clone();
                            nw.push(*img);
                            next.push((x * y, nw));
                        }
                    }
                    partial = next;
                }
                for (x, mut nw) in partial {
                    match shape.canonicalize(&mut nw) {
                        0 => {}
                        1 => add_canonical(&mut acc, nw, x),
                        _ => add_canonical(&mut acc, nw, -x),
                    }
                }
                acc
            },
            merge_terms,
        );
        Ok(Tensor::from_canonical(
            self.genus,
            self.shape.clone(),
            terms,
        ))
    }

    /// Move every leg from handle `i` to handle `i + offset`, landing in genus `genus`.
    pub fn shift_handles(&self, offset: usize, genus: usize) -> Result<Tensor, TensorError> {
        let top = self
            .terms
            .keys()
            .flat_map(|w| w.iter())
            .map(|l| l.index())
            .max()
            .unwrap_or(0);
        if top + offset > genus {
            return Err(TensorError::LabelOutOfRange {
                label: Label::a(top + offset),
                genus,
            });
        }
        let terms = self
            .terms
            .iter()
            .map(|(w, c)| (w.iter().map(|l| l.shifted(offset)).collect(), c.clone()))
            .collect();
        Ok(Tensor::from_canonical(genus, self.shape.clone(), terms))
    }

    /// Permute the legs of a flat tensor: leg `i` moves to position `perm[i]`.
    pub fn permute_legs(&self, perm: &[usize]) -> Result<Tensor, TensorError> {
        if !self.shape.is_flat() {
            return Err(TensorError::NotFlat(self.shape.to_string()));
        }
        let k = self.shape.degree();
        let mut seen = vec![false; k];
        if perm.len() != k
            || perm
                .iter()
                .any(|&p| p >= k || std::mem::replace(&mut seen[p], true))
        {
            return Err(TensorError::Domain(format!(
                "{perm:?} is not a permutation of {k} positions"
            )));
        }
        let terms = self
            .terms
            .iter()
            .map(|(w, c)| {
                let mut nw: Word = w.clone();
                for (i, &p) in perm.iter().enumerate() {
                    nw[p] = w[i];
                }
                (nw, c.clone())
            })
            .collect();
        Ok(Tensor::from_canonical(
            self.genus,
            self.shape.clone(),
            terms,
        ))
    }

    /// Apply a linear map `S → S'` block by block on `∧ᵏS`, landing in `∧ᵏS'`.
    ///
    /// `f` receives each canonical block word and returns its image in `target`.
    pub fn map_wedge_blocks<F>(&self, target: &Shape, f: F) -> Result<Tensor, TensorError>
    where
        F: Fn(&[Label]) -> Result<Tensor, TensorError>,
    {
        let (k, inner) = self
            .shape
            .wedge_parts()
            .ok_or_else(|| TensorError::NotWedge {
                index: 0,
                shape: self.shape.to_string(),
            })?;
        let shape = match &self.shape {
            Shape::Wedge(..) => Shape::wedge(k, target.clone())?,
            _ => target.clone(),
        };
        let m = inner.degree();
        let mut cache: HashMap<Word, Tensor> = HashMap::new();
        let mut out = Tensor::zero(self.genus, shape);
        for (w, c) in &self.terms {
            let mut partial: Vec<(Scalar, Word)> = vec![(c.clone(), Word::new())];
            for b in 0..k {
                let block = Word::from_slice(&w[b * m..(b + 1) * m]);
                if !cache.contains_key(&block) {
                    let img = f(&block)?;
                    if img.shape() != target || img.genus != self.genus {
                        return Err(TensorError::ShapeMismatch {
                            expected: target.to_string(),
                            found: img.shape().to_string(),
                        });
                    }
                    cache.insert(block.clone(), img);
                }
                let img = &cache[&block];
                let mut next = Vec::with_capacity(partial.len() * img.len());
                for (x, pw) in &partial {
                    for (v, y) in img.iter() {
                        let mut nw = pw.clone();
                        nw.extend_from_slice(v);
                        next.push((x * y, nw));
                    }
                }
                partial = next;
            }
            for (x, nw) in partial {
                out.add_term(nw, x);
            }
        }
        Ok(out)
    }

    /// Sum of `c_i · t_i` over tensors in a common space.
    pub fn linear_combination<'a, I>(
        genus: usize,
        shape: Shape,
        items: I,
    ) -> Result<Tensor, TensorError>
    where
        I: IntoIterator<Item = (Scalar, &'a Tensor)>,
    {
        let mut out = Tensor::zero(genus, shape);
        for (c, t) in items {
            out.check_same_space(t)?;
            if c.is_zero() {
                continue;
            }
            for (w, x) in t.iter() {
                add_canonical(&mut out.terms, w.clone(), &c * x);
            }
        }
        Ok(out)
    }

    /// `(m − 1)·t`, the group-ring element used throughout the witnesses.
    pub fn apply_minus_identity(&self, m: &SymplecticMap) -> Result<Tensor, TensorError> {
        let moved = self.apply_map(m)?;
        moved.checked_sub(self)
    }
}

/// All `k`-element subsets of `0..m` in lexicographic order.
pub(crate) fn k_subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            if m - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, k, &mut Vec::new(), &mut out);
    out
}

/// Signed antisymmetrization of a flat tensor over all leg positions,
/// `Σ_π sgn(π) π·t`.
pub fn antisymmetrize(t: &Tensor) -> Result<Tensor, TensorError> {
    let k = t.shape().degree();
    let mut out = Tensor::zero(t.genus(), t.shape().clone());
    for (perm, s) in signed_permutations(k) {
        let moved = t.permute_legs(&perm)?;
        for (w, c) in moved.iter() {
            add_canonical(&mut out.terms, w.clone(), c * int(s as i64));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::SymplecticSpace;
    use crate::tensor::omega;
    use num_traits::One;

    fn a(i: usize) -> Label {
        Label::a(i)
    }
    fn b(i: usize) -> Label {
        Label::b(i)
    }
    fn ext(g: usize, legs: &[Label]) -> Tensor {
        Tensor::exterior_word(g, legs).unwrap()
    }

    #[test]
    fn wedge_of_two_johnson_words() {
        let x = ext(6, &[a(1), b(1), a(3)]).lift().unwrap();
        let y = ext(6, &[a(4), b(4), a(6)]).lift().unwrap();
        let xy = x.wedge(&y).unwrap();
        assert_eq!(xy.shape().to_string(), "wedge(2,w3)");
        assert_eq!(xy.len(), 1);
        assert_eq!(
            xy.coefficient(&[a(1), b(1), a(3), a(4), b(4), a(6)]),
            Scalar::one()
        );
        assert_eq!(y.wedge(&x).unwrap(), -&xy);
        assert!(x.wedge(&x).unwrap().is_zero());
    }

    #[test]
    fn wedge_is_bilinear_and_alternating() {
        let x = ext(3, &[a(1), b(1), a(3)]);
        let y = &x + &ext(3, &[a(2), b(2), a(3)]);
        let got = x.lift().unwrap().wedge(&y.lift().unwrap()).unwrap();
        let want = ext(3, &[a(1), b(1), a(3)])
            .lift()
            .unwrap()
            .wedge(&ext(3, &[a(2), b(2), a(3)]).lift().unwrap())
            .unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn wedge_rejects_mismatched_inner_shapes() {
        let x = ext(3, &[a(1), b(1), a(3)]).lift().unwrap();
        let v = ext(3, &[a(1)]);
        assert!(matches!(
            x.wedge(&v),
            Err(TensorError::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn tensor_products() {
        let x = ext(4, &[a(1), a(2)]);
        let y = ext(4, &[a(3), a(4)]);
        let xy = x.tensor(&y).unwrap();
        assert_eq!(xy.shape().to_string(), "tensor(w2,w2)");
        assert_eq!(xy.len(), 1);
        assert!(x
            .tensor(&Tensor::zero(4, Shape::exterior(2)))
            .unwrap()
            .is_zero());
        let s = &x + &y;
        assert_eq!(s.tensor(&s).unwrap().len(), 4);
    }

    #[test]
    fn expand_small_words() {
        let x = ext(2, &[a(1), a(2)]).expand().unwrap();
        assert_eq!(x.shape(), &Shape::flat(2));
        assert_eq!(x.coefficient(&[a(1), a(2)]), int(1));
        assert_eq!(x.coefficient(&[a(2), a(1)]), int(-1));
        assert_eq!(x.len(), 2);
        let y = ext(3, &[a(1), a(2), a(3)]).expand().unwrap();
        assert_eq!(y.len(), 6);
        assert_eq!(y.coefficient(&[a(2), a(3), a(1)]), int(1));
        assert_eq!(y.coefficient(&[a(3), a(2), a(1)]), int(-1));
    }

    #[test]
    fn expand_of_nested_word_has_72_terms() {
        let x = ext(3, &[a(1), b(1), a(3)]).lift().unwrap();
        let y = ext(3, &[a(2), b(2), a(3)]).lift().unwrap();
        let e = x.wedge(&y).unwrap().expand().unwrap();
        assert_eq!(e.len(), 72);
        assert!(e.iter().all(|(_, c)| c == &int(1) || c == &int(-1)));
    }

    #[test]
    fn expand_respects_term_cap() {
        let x = ext(3, &[a(1), b(1), a(3)]).lift().unwrap();
        let y = ext(3, &[a(2), b(2), a(3)]).lift().unwrap();
        let xy = x.wedge(&y).unwrap();
        assert!(matches!(
            xy.expand_with(71, Execution::Sequential),
            Err(TensorError::TermCap {
                estimated: 72,
                cap: 71
            })
        ));
    }

    #[test]
    fn flat_contractions() {
        let t = Tensor::word(1, Shape::flat(2), &[a(1), b(1)]).unwrap();
        assert_eq!(t.contract(1, 2).unwrap().scalar_value(), Some(int(1)));
        let u = Tensor::word(2, Shape::flat(3), &[a(1), a(2), b(1)]).unwrap();
        assert_eq!(u.contract(1, 3).unwrap(), ext(2, &[a(2)]));
        assert!(u.contract(2, 2).is_err());
        assert!(u.contract(0, 2).is_err());
        assert!(u.contract(1, 4).is_err());
        assert!(matches!(
            ext(2, &[a(1), a(2)]).contract(1, 2),
            Err(TensorError::NotFlat(_))
        ));
    }

    #[test]
    fn contracting_expanded_word() {
        let e = ext(3, &[a(1), b(1), a(3)]).expand().unwrap();
        let c = e.contract(1, 2).unwrap();
        // a1⊗b1⊗a3 and −b1⊗a1⊗a3 each give a3; the other orderings put
        // a3 in front and contribute nothing.
        assert_eq!(c, ext(3, &[a(3)]).scale(&int(2)));
    }

    #[test]
    fn omega_contracts_to_genus() {
        for g in 1..=4 {
            let w = omega(&SymplecticSpace::new(g).unwrap());
            let c = w.contract_exterior(0).unwrap();
            assert_eq!(c.scalar_value(), Some(int(g as i64)));
            let e = w.expand().unwrap().contract(1, 2).unwrap();
            assert_eq!(e.scalar_value(), Some(int(2 * g as i64)));
        }
    }

    #[test]
    fn diagonal_contraction_of_two_omegas() {
        let x = ext(1, &[a(1), b(1)]);
        let xx = x.tensor(&x).unwrap();
        let c = xx.contract_pair_exterior(0).unwrap();
        // (s,t) = (0,1) gives −⟨a1,b1⟩ b1⊗a1, (1,0) gives −⟨b1,a1⟩ a1⊗b1.
        assert_eq!(c.shape(), &Shape::flat(2));
        assert_eq!(c.len(), 2);
        assert_eq!(c.coefficient(&[b(1), a(1)]), int(-1));
        assert_eq!(c.coefficient(&[a(1), b(1)]), int(1));
        let z = ext(4, &[a(1), a(2)])
            .tensor(&ext(4, &[a(3), a(4)]))
            .unwrap();
        assert!(z.contract_pair_exterior(0).unwrap().is_zero());
    }

    #[test]
    fn exterior_multiplication() {
        let x = ext(3, &[a(1), a(2)]);
        assert_eq!(
            x.tensor(&ext(3, &[a(3)]))
                .unwrap()
                .multiply_exterior(0)
                .unwrap(),
            ext(3, &[a(1), a(2), a(3)])
        );
        assert!(x
            .tensor(&ext(3, &[a(2)]))
            .unwrap()
            .multiply_exterior(0)
            .unwrap()
            .is_zero());
        assert_eq!(
            ext(3, &[a(2)])
                .tensor(&ext(3, &[a(1)]))
                .unwrap()
                .multiply_exterior(0)
                .unwrap(),
            -&ext(3, &[a(1), a(2)])
        );
        assert!(matches!(
            x.multiply_exterior(0),
            Err(TensorError::NotExterior { .. } | TensorError::FactorOutOfRange { .. })
        ));
    }

    #[test]
    fn self_contraction_of_omega_wedge_vector() {
        let space = SymplecticSpace::new(4).unwrap();
        let w = omega(&space);
        let v = ext(4, &[b(2)]);
        let wv = w.wedge(&v).unwrap();
        assert_eq!(wv.contract_exterior(0).unwrap(), v.scale(&int(3)));
    }

    #[test]
    fn coproduct_split() {
        let x = ext(4, &[a(1), b(1), a(2)]).lift().unwrap();
        let y = ext(4, &[a(3), b(3), a(4)]).lift().unwrap();
        let xy = x.wedge(&y).unwrap();
        let s = xy.split_wedge(0, 1).unwrap();
        assert_eq!(s.shape().to_string(), "tensor(w3,w3)");
        assert_eq!(s.coefficient(&[a(1), b(1), a(2), a(3), b(3), a(4)]), int(1));
        assert_eq!(
            s.coefficient(&[a(3), b(3), a(4), a(1), b(1), a(2)]),
            int(-1)
        );
        assert_eq!(xy.split_wedge(0, 2).unwrap().shape(), xy.shape());
        assert!(xy.split_wedge(0, 3).is_err());
    }

    #[test]
    fn apply_map_basics() {
        let space = SymplecticSpace::new(3).unwrap();
        let x = ext(3, &[a(1), b(1), a(3)]);
        assert_eq!(x.apply_map(&space.identity()).unwrap(), x);
        let t = space.transvection_t(1, 2).unwrap();
        assert_eq!(
            x.apply_minus_identity(&t).unwrap(),
            ext(3, &[a(1), a(2), a(3)])
        );
        let w = omega(&space);
        for (name, m) in space.generators() {
            assert_eq!(w.apply_map(&m).unwrap(), w, "{name}");
        }
        assert!(x.apply_map(&SymplecticMap::identity(2)).is_err());
    }

    #[test]
    fn s_generator_on_flat_words() {
        let space = SymplecticSpace::new(2).unwrap();
        let s = space.transvection_s(2, 1).unwrap();
        let x = Tensor::word(2, Shape::flat(2), &[a(1), a(2)]).unwrap();
        assert_eq!(
            x.apply_minus_identity(&s).unwrap(),
            Tensor::word(2, Shape::flat(2), &[a(1), a(1)]).unwrap()
        );
    }

    #[test]
    fn shifts_and_permutations() {
        let x = ext(3, &[a(1), b(1), a(3)]);
        let y = x.shift_handles(3, 6).unwrap();
        assert_eq!(y, ext(6, &[a(4), b(4), a(6)]));
        assert!(x.shift_handles(1, 3).is_err());
        let f = Tensor::word(3, Shape::flat(3), &[a(1), a(2), a(3)]).unwrap();
        let p = f.permute_legs(&[1, 2, 0]).unwrap();
        assert_eq!(p.coefficient(&[a(3), a(1), a(2)]), int(1));
        assert!(f.permute_legs(&[0, 0, 1]).is_err());
    }

    #[test]
    fn antisymmetrization_matches_expand() {
        let f = Tensor::word(3, Shape::flat(3), &[a(1), a(2), a(3)]).unwrap();
        assert_eq!(
            antisymmetrize(&f).unwrap(),
            ext(3, &[a(1), a(2), a(3)]).expand().unwrap()
        );
    }

    #[test]
    fn subsets() {
        assert_eq!(k_subsets(4, 2).len(), 6);
        assert_eq!(k_subsets(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(k_subsets(3, 3), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn both_execution_modes_agree() {
        let space = SymplecticSpace::new(4).unwrap();
        let w = omega(&space);
        let x = w.wedge(&ext(4, &[a(3)])).unwrap().lift().unwrap();
        let y = w.wedge(&ext(4, &[b(4)])).unwrap().lift().unwrap();
        let xy = x.wedge_with(&y, Execution::Sequential).unwrap();
        assert_eq!(xy, x.wedge_with(&y, Execution::Parallel).unwrap());
        assert_eq!(
            xy.expand_with(u64::MAX, Execution::Sequential).unwrap(),
            xy.expand_with(u64::MAX, Execution::Parallel).unwrap()
        );
        let t = space.transvection_t(1, 3).unwrap();
        assert_eq!(
            xy.apply_map_with(&t, Execution::Sequential).unwrap(),
            xy.apply_map_with(&t, Execution::Parallel).unwrap()
        );
    }
}
