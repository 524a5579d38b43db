use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use smallvec::SmallVec;

use super::{TensorError, Word};
use crate::symplectic::Label;

/// A formal composite of exterior powers and tensor products of `H`.
///
/// Words of a shape are stored flattened: a word of `Wedge(k, S)` is `k`
/// consecutive words of `S`, a word of `Tensor([S₁,…,S_m])` is the
/// concatenation of one word per factor. The scalar shape is the empty
/// tensor product.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    H,
    Wedge(usize, Box<Shape>),
    Tensor(Vec<Shape>),
}

impl Shape {
    /// `∧ᵏ S`. Alternating powers are only defined over odd-degree `S`.
    pub fn wedge(k: usize, inner: Shape) -> Result<Shape, TensorError> {
        if k == 0 {
            return Err(TensorError::InvalidShape(
                "wedge power must be at least 1".into(),
            ));
        }
        let d = inner.degree();
        if d == 0 {
            return Err(TensorError::InvalidShape("wedge of a scalar shape".into()));
        }
        if k >= 2 && d.is_multiple_of(2) {
            return Err(TensorError::InvalidShape(format!(
                "wedge({k}, {inner}) has even inner degree {d}; only alternating powers are supported"
            )));
        }
        Ok(Shape::Wedge(k, Box::new(inner)))
    }

    /// `∧ᵏ H`, with `∧¹H` written as `H` and `∧⁰H` as the scalar shape.
    pub fn exterior(k: usize) -> Shape {
        match k {
            0 => Shape::scalar(),
            1 => Shape::H,
            _ => Shape::Wedge(k, Box::new(Shape::H)),
        }
    }

    /// `∧³H`, the home of Johnson images.
    pub fn w3() -> Shape {
        Shape::exterior(3)
    }

    pub fn scalar() -> Shape {
        Shape::Tensor(Vec::new())
    }

    /// `H^{⊗k}`.
    pub fn flat(k: usize) -> Shape {
        Shape::product(vec![Shape::H; k])
    }

    /// Tensor product with degree-0 factors dropped and singletons unwrapped.
    pub fn product(factors: Vec<Shape>) -> Shape {
        let mut fs: Vec<Shape> = factors.into_iter().filter(|s| s.degree() > 0).collect();
        if fs.len() == 1 {
            fs.pop().unwrap()
        } else {
            Shape::Tensor(fs)
        }
    }

    /// Top-level tensor factors; a non-product shape is its own single factor.
    pub fn factors(&self) -> Vec<Shape> {
        match self {
            Shape::Tensor(fs) => fs.clone(),
            s => vec![s.clone()],
        }
    }

    /// Number of `H` legs.
    pub fn degree(&self) -> usize {
        match self {
            Shape::H => 1,
            Shape::Wedge(k, s) => k * s.degree(),
            Shape::Tensor(fs) => fs.iter().map(Shape::degree).sum(),
        }
    }

    /// Whether the shape is `H^{⊗k}` for some `k ≥ 0`.
    pub fn is_flat(&self) -> bool {
        match self {
            Shape::H => true,
            Shape::Tensor(fs) => fs.iter().all(|s| *s == Shape::H),
            Shape::Wedge(..) => false,
        }
    }

    /// `Some(k)` if the shape is `∧ᵏH` (with `H = ∧¹H`).
    pub fn exterior_degree(&self) -> Option<usize> {
        match self {
            Shape::H => Some(1),
            Shape::Wedge(k, s) if **s == Shape::H => Some(*k),
            _ => None,
        }
    }

    /// `(k, S)` for `∧ᵏS`; `H` counts as `∧¹H`.
    pub(crate) fn wedge_parts(&self) -> Option<(usize, Shape)> {
        match self {
            Shape::H => Some((1, Shape::H)),
            Shape::Wedge(k, s) => Some((*k, (**s).clone())),
            Shape::Tensor(_) => None,
        }
    }

    /// Dimension of the represented space at genus `g`.
    pub fn dim(&self, g: usize) -> BigUint {
        match self {
            Shape::H => BigUint::from(2 * g),
            Shape::Wedge(k, s) => binomial(&s.dim(g), *k),
            Shape::Tensor(fs) => fs.iter().map(|f| f.dim(g)).product(),
        }
    }

    /// Number of flat words one word of this shape expands into.
    pub fn expansion_factor(&self) -> u128 {
        match self {
            Shape::H => 1,
            Shape::Wedge(k, s) => {
                let inner = s.expansion_factor();
                (1..=*k as u128)
                    .product::<u128>()
                    .saturating_mul(inner.saturating_pow(*k as u32))
            }
            Shape::Tensor(fs) => fs
                .iter()
                .fold(1u128, |a, f| a.saturating_mul(f.expansion_factor())),
        }
    }

    /// Bring a flattened word into canonical form in place.
    ///
    /// Returns the sign of the reordering, or 0 if the word vanishes
    /// (a repeated entry inside an alternating layer).
    pub fn canonicalize(&self, legs: &mut [Label]) -> i8 {
        match self {
            Shape::H => 1,
            Shape::Tensor(fs) => {
                let mut sign = 1;
                let mut off = 0;
                for f in fs {
                    let d = f.degree();
                    sign *= f.canonicalize(&mut legs[off..off + d]);
                    if sign == 0 {
                        return 0;
                    }
                    off += d;
                }
                sign
            }
            Shape::Wedge(k, inner) => {
                let m = inner.degree();
                let mut sign = 1;
                if **inner != Shape::H {
                    for c in 0..*k {
                        sign *= inner.canonicalize(&mut legs[c * m..(c + 1) * m]);
                        if sign == 0 {
                            return 0;
                        }
                    }
                }
                sign * sort_blocks(legs, *k, m)
            }
        }
    }

    /// Whether the flattened word is already canonical and nonzero.
    pub fn is_canonical(&self, legs: &[Label]) -> bool {
        let mut w: Word = SmallVec::from_slice(legs);
        self.canonicalize(&mut w) == 1 && w.as_slice() == legs
    }

    /// Image of a canonical word under the standard inclusion into `H^{⊗k}`:
    /// every alternating layer is replaced by its signed sum over orderings.
    pub fn expand_word(&self, legs: &[Label]) -> Vec<(i8, Word)> {
        match self {
            Shape::H => vec![(1, SmallVec::from_slice(legs))],
            Shape::Tensor(fs) => {
                let mut parts = Vec::with_capacity(fs.len());
                let mut off = 0;
                for f in fs {
                    let d = f.degree();
                    parts.push(f.expand_word(&legs[off..off + d]));
                    off += d;
                }
                concat_products(parts.iter().map(|p| p.as_slice()))
            }
            Shape::Wedge(k, inner) => {
                let m = inner.degree();
                let blocks: Vec<Vec<(i8, Word)>> = (0..*k)
                    .map(|c| inner.expand_word(&legs[c * m..(c + 1) * m]))
                    .collect();
                let mut out = Vec::new();
                for (perm, psign) in signed_permutations(*k) {
                    let ordered = perm.iter().map(|&i| blocks[i].as_slice());
                    out.extend(
                        concat_products(ordered)
                            .into_iter()
                            .map(|(s, w)| (s * psign, w)),
                    );
                }
                out
            }
        }
    }
}

/// Sort `k` consecutive blocks of length `m`; sign of the block
/// permutation, or 0 on a repeated block.
fn sort_blocks(legs: &mut [Label], k: usize, m: usize) -> i8 {
    if k < 2 {
        return 1;
    }
    if m == 1 {
        let mut sign = 1;
        for i in 1..k {
            let mut j = i;
            while j > 0 && legs[j - 1] > legs[j] {
                legs.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if legs.windows(2).any(|w| w[0] == w[1]) {
            return 0;
        }
        return sign;
    }
    let mut order: SmallVec<[usize; 12]> = (0..k).collect();
    order.sort_by(|&x, &y| legs[x * m..(x + 1) * m].cmp(&legs[y * m..(y + 1) * m]));
    for w in order.windows(2) {
        if legs[w[0] * m..(w[0] + 1) * m] == legs[w[1] * m..(w[1] + 1) * m] {
            return 0;
        }
    }
    let sign = permutation_sign(&order);
    let src: Word = SmallVec::from_slice(legs);
    for (dst, &b) in order.iter().enumerate() {
        legs[dst * m..(dst + 1) * m].copy_from_slice(&src[b * m..(b + 1) * m]);
    }
    sign
}

pub(crate) fn permutation_sign(p: &[usize]) -> i8 {
    let mut inv = 0usize;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// All permutations of `0..k` with their signs, in lexicographic order.
pub(crate) fn signed_permutations(k: usize) -> Vec<(SmallVec<[usize; 12]>, i8)> {
    fn rec(
        prefix: &mut SmallVec<[usize; 12]>,
        used: &mut [bool],
        out: &mut Vec<(SmallVec<[usize; 12]>, i8)>,
    ) {
        if prefix.len() == used.len() {
            out.push((prefix.clone(), permutation_sign(prefix)));
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut SmallVec::new(), &mut vec![false; k], &mut out);
    out
}

/// Cartesian product of signed word lists, concatenating words.
fn concat_products<'a>(parts: impl Iterator<Item = &'a [(i8, Word)]>) -> Vec<(i8, Word)> {
    let mut acc: Vec<(i8, Word)> = vec![(1, SmallVec::new())];
    for part in parts {
        let mut next = Vec::with_capacity(acc.len() * part.len());
        for (s, w) in &acc {
            for (t, v) in part {
                let mut x = w.clone();
                x.extend_from_slice(v);
                next.push((s * t, x));
            }
        }
        acc = next;
    }
    acc
}

pub(crate) fn binomial(n: &BigUint, k: usize) -> BigUint {
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        let t = BigUint::from(i);
        if &t >= n {
            return BigUint::default();
        }
        num *= n - &t;
        den *= BigUint::from(i + 1);
    }
    num / den
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::H => write!(f, "H"),
            Shape::Wedge(k, s) if **s == Shape::H => write!(f, "w{k}"),
            Shape::Wedge(k, s) => write!(f, "wedge({k},{s})"),
            Shape::Tensor(fs) => {
                write!(f, "tensor(")?;
                for (i, s) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{s}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Grammar: `H | w<k> | wedge(<k>, S) | tensor(S, …)`.
impl FromStr for Shape {
    type Err = TensorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser {
            src: s.as_bytes(),
            pos: 0,
        };
        let shape = p.shape()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("trailing input"));
        }
        Ok(shape)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> TensorError {
        TensorError::ShapeParse {
            position: self.pos,
            message: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> Result<(), TensorError> {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn number(&mut self) -> Result<usize, TensorError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| {
                self.pos = start;
                self.error("expected a number")
            })
    }

    fn ident(&mut self) -> &str {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap()
    }

    fn shape(&mut self) -> Result<Shape, TensorError> {
        let start = self.pos;
        let id = self.ident().to_string();
        match id.as_str() {
            "H" => Ok(Shape::H),
            "w" => {
                let k = self.number()?;
                if k == 0 {
                    self.pos = start;
                    return Err(self.error("w0 is not a valid shape"));
                }
                Ok(Shape::exterior(k))
            }
            "wedge" => {
                self.eat(b'(')?;
                let k = self.number()?;
                self.eat(b',')?;
                let inner = self.shape()?;
                self.eat(b')')?;
                Shape::wedge(k, inner).map_err(|e| match e {
                    TensorError::InvalidShape(m) => TensorError::ShapeParse {
                        position: start,
                        message: m,
                    },
                    e => e,
                })
            }
            "tensor" => {
                self.eat(b'(')?;
                let mut fs = vec![self.shape()?];
                loop {
                    self.skip_ws();
                    if self.src.get(self.pos) == Some(&b',') {
                        self.pos += 1;
                        fs.push(self.shape()?);
                    } else {
                        break;
                    }
                }
                self.eat(b')')?;
                Ok(Shape::product(fs))
            }
            _ => {
                self.pos = start;
                Err(self.error("expected H, w<k>, wedge(...) or tensor(...)"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(legs: &[Label]) -> Word {
        SmallVec::from_slice(legs)
    }

    #[test]
    fn parse_and_print_round_trip() {
        for s in [
            "H",
            "w3",
            "wedge(2,w3)",
            "tensor(w2,w2)",
            "tensor(w3,wedge(2,w3))",
        ] {
            let shape: Shape = s.parse().unwrap();
            assert_eq!(shape.to_string(), s);
        }
        assert_eq!(
            " wedge( 1 , w3 ) ".parse::<Shape>().unwrap().to_string(),
            "wedge(1,w3)"
        );
        assert_eq!("w1".parse::<Shape>().unwrap(), Shape::H);
    }

    #[test]
    fn parse_errors_carry_position() {
        let e = "wedge(2,w3".parse::<Shape>().unwrap_err();
        assert!(
            matches!(e, TensorError::ShapeParse { position: 10, .. }),
            "{e:?}"
        );
        assert!("wedge(2,w2)".parse::<Shape>().is_err());
        assert!("w0".parse::<Shape>().is_err());
        assert!("Q".parse::<Shape>().is_err());
        assert!("H H".parse::<Shape>().is_err());
    }

    #[test]
    fn degrees_and_dimensions() {
        let s: Shape = "wedge(2,w3)".parse().unwrap();
        assert_eq!(s.degree(), 6);
        assert_eq!(s.dim(6), BigUint::from(24_090u32));
        assert_eq!(Shape::w3().dim(3), BigUint::from(20u32));
        assert_eq!(Shape::exterior(7).dim(3), BigUint::default());
        assert_eq!(s.expansion_factor(), 72);
        assert!(Shape::flat(3).is_flat());
        assert!(Shape::H.is_flat());
        assert!(Shape::scalar().is_flat());
        assert!(!Shape::w3().is_flat());
    }

    #[test]
    fn wedge_requires_odd_inner_degree() {
        assert!(Shape::wedge(2, Shape::exterior(2)).is_err());
        assert!(Shape::wedge(1, Shape::exterior(2)).is_ok());
        assert!(Shape::wedge(0, Shape::H).is_err());
    }

    #[test]
    fn canonical_form_of_exterior_words() {
        let s = Shape::exterior(3);
        let mut x = w(&[Label::a(3), Label::a(1), Label::b(1)]);
        assert_eq!(s.canonicalize(&mut x), 1);
        assert_eq!(x.as_slice(), &[Label::a(1), Label::b(1), Label::a(3)]);
        let mut y = w(&[Label::b(1), Label::a(1), Label::a(3)]);
        assert_eq!(s.canonicalize(&mut y), -1);
        let mut z = w(&[Label::a(1), Label::b(2), Label::a(1)]);
        assert_eq!(s.canonicalize(&mut z), 0);
    }

    #[test]
    fn canonical_form_of_nested_words() {
        let s: Shape = "wedge(2,w3)".parse().unwrap();
        let mut x = w(&[
            Label::a(4),
            Label::b(4),
            Label::a(6),
            Label::a(3),
            Label::b(1),
            Label::a(1),
        ]);
        // reversing the second block is odd, swapping the blocks is odd
        assert_eq!(s.canonicalize(&mut x), 1);
        assert_eq!(
            x.as_slice(),
            &[
                Label::a(1),
                Label::b(1),
                Label::a(3),
                Label::a(4),
                Label::b(4),
                Label::a(6)
            ]
        );
        let mut rep = w(&[
            Label::a(1),
            Label::b(1),
            Label::a(3),
            Label::b(1),
            Label::a(1),
            Label::a(3),
        ]);
        assert_eq!(s.canonicalize(&mut rep), 0);
    }

    #[test]
    fn expansion_counts() {
        assert_eq!(
            Shape::exterior(2)
                .expand_word(&[Label::a(1), Label::a(2)])
                .len(),
            2
        );
        assert_eq!(
            Shape::w3()
                .expand_word(&[Label::a(1), Label::a(2), Label::a(3)])
                .len(),
            6
        );
    }

    #[test]
    fn signed_permutations_of_three() {
        let ps = signed_permutations(3);
        assert_eq!(ps.len(), 6);
        assert_eq!(ps.iter().map(|(_, s)| *s as i32).sum::<i32>(), 0);
    }

    #[test]
    fn binomials() {
        assert_eq!(
            binomial(&BigUint::from(220u32), 2),
            BigUint::from(24_090u32)
        );
        assert_eq!(binomial(&BigUint::from(3u32), 5), BigUint::default());
        assert_eq!(binomial(&BigUint::from(3u32), 0), BigUint::one());
    }
}
