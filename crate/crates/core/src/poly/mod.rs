//! The multilinear part of the free trace algebra.
//!
//! A monomial is a multiset of trace blocks (cyclic words of variable
//! indices) together with an ordered outside word. Blocks are stored in their
//! lexicographically least rotation, and the block list is sorted by
//! (length, word), so structural equality of monomials coincides with
//! equality in the free trace algebra. Polynomials are finite maps from
//! canonical monomials to nonzero rational coefficients.

mod catalog;
mod enumerate;
mod parse;

pub use catalog::{catalog, catalog_names, CatalogError};
pub use enumerate::{commutative_class_rep, enumerate_mt, MtMode};
pub use parse::{parse_poly, ParseError};

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::rational::{format_rat, Rat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("a trace block must contain at least one variable")]
    EmptyBlock,
    #[error("variable indices are 1-based; x0 is not allowed")]
    ZeroVariable,
    #[error("Tr of a monomial with empty outside word is not modeled")]
    TraceOfScalar,
    #[error("substitution does not cover variable x{0}")]
    MissingSubstitution(u32),
    #[error("substitution images must have degree at least 1")]
    UnitSubstitution,
    #[error("substitution images share variables but disjoint images were requested")]
    OverlappingImages,
    #[error("degree must be at least 1")]
    DegreeZero,
    #[error("polynomial is not multilinear in x1..xn")]
    NotMultilinear,
}

/// A single trace factor `Tr(x_{i_1} ... x_{i_a})`, stored as the
/// lexicographically least rotation of its cyclic word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TraceBlock {
    word: Vec<u32>,
}

fn least_rotation(word: &[u32]) -> Vec<u32> {
    let n = word.len();
    let mut best = 0usize;
    for start in 1..n {
        for k in 0..n {
            let a = word[(start + k) % n];
            let b = word[(best + k) % n];
            match a.cmp(&b) {
                Ordering::Less => {
                    best = start;
                    break;
                }
                Ordering::Greater => break,
                Ordering::Equal => {}
            }
        }
    }
    let mut w = Vec::with_capacity(n);
    w.extend_from_slice(&word[best..]);
    w.extend_from_slice(&word[..best]);
    w
}

impl TraceBlock {
    pub fn new(word: &[u32]) -> Result<Self, PolyError> {
        if word.is_empty() {
            return Err(PolyError::EmptyBlock);
        }
        if word.contains(&0) {
            return Err(PolyError::ZeroVariable);
        }
        Ok(Self {
            word: least_rotation(word),
        })
    }

    pub fn word(&self) -> &[u32] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Blocks are ordered by (length, word); this is the order in which they are
/// listed inside a canonical monomial.
impl Ord for TraceBlock {
    fn cmp(&self, other: &Self) -> Ordering {
        self.word
            .len()
            .cmp(&other.word.len())
            .then_with(|| self.word.cmp(&other.word))
    }
}

impl PartialOrd for TraceBlock {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A canonical trace monomial: sorted trace blocks and an ordered outside
/// word. The empty monomial (no blocks, empty word) is the unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TraceMonomial {
    blocks: Vec<TraceBlock>,
    outside: Vec<u32>,
}

impl TraceMonomial {
    /// Canonicalize raw block/word data: rotate each block to its least
    /// rotation and sort the block list. Idempotent.
    pub fn new(blocks: &[&[u32]], outside: &[u32]) -> Result<Self, PolyError> {
        if outside.contains(&0) {
            return Err(PolyError::ZeroVariable);
        }
        let mut bs = blocks
            .iter()
            .map(|w| TraceBlock::new(w))
            .collect::<Result<Vec<_>, _>>()?;
        bs.sort();
        Ok(Self {
            blocks: bs,
            outside: outside.to_vec(),
        })
    }

    fn from_parts(mut blocks: Vec<TraceBlock>, outside: Vec<u32>) -> Self {
        blocks.sort();
        Self { blocks, outside }
    }

    /// The multiplicative unit: no blocks, empty outside word.
    pub fn one() -> Self {
        Self {
            blocks: Vec::new(),
            outside: Vec::new(),
        }
    }

    /// A plain word `x_{i_1} ... x_{i_c}` with no trace factors.
    pub fn word(outside: &[u32]) -> Result<Self, PolyError> {
        Self::new(&[], outside)
    }

    pub fn blocks(&self) -> &[TraceBlock] {
        &self.blocks
    }

    pub fn outside(&self) -> &[u32] {
        &self.outside
    }

    pub fn degree(&self) -> usize {
        self.blocks.iter().map(|b| b.len()).sum::<usize>() + self.outside.len()
    }

    pub fn trace_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn variables(&self) -> BTreeSet<u32> {
        let mut vars = BTreeSet::new();
        for b in &self.blocks {
            vars.extend(b.word.iter().copied());
        }
        vars.extend(self.outside.iter().copied());
        vars
    }

    /// True when each of x1..xn occurs exactly once across blocks and the
    /// outside word, and no other variable occurs.
    pub fn is_multilinear_in(&self, n: u32) -> bool {
        let mut seen = vec![false; n as usize + 1];
        for v in self
            .blocks
            .iter()
            .flat_map(|b| b.word.iter())
            .chain(self.outside.iter())
        {
            let v = *v as usize;
            if v == 0 || v > n as usize || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        seen[1..].iter().all(|&s| s)
    }

    /// Free product: union of block multisets, concatenation of outside words.
    pub fn product(&self, other: &Self) -> Self {
        let mut blocks = self.blocks.clone();
        blocks.extend(other.blocks.iter().cloned());
        let mut outside = self.outside.clone();
        outside.extend_from_slice(&other.outside);
        Self::from_parts(blocks, outside)
    }

    /// Wrap the outside word into a new trace block.
    pub fn wrap_trace(&self) -> Result<Self, PolyError> {
        if self.outside.is_empty() {
            return Err(PolyError::TraceOfScalar);
        }
        let mut blocks = self.blocks.clone();
        blocks.push(TraceBlock::new(&self.outside)?);
        Ok(Self::from_parts(blocks, Vec::new()))
    }

    /// Apply a variable renaming and re-canonicalize.
    pub fn relabel(&self, map: impl Fn(u32) -> u32) -> Result<Self, PolyError> {
        let blocks: Vec<Vec<u32>> = self
            .blocks
            .iter()
            .map(|b| b.word.iter().map(|&v| map(v)).collect())
            .collect();
        let refs: Vec<&[u32]> = blocks.iter().map(|w| w.as_slice()).collect();
        let outside: Vec<u32> = self.outside.iter().map(|&v| map(v)).collect();
        Self::new(&refs, &outside)
    }
}

impl fmt::Display for TraceMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() && self.outside.is_empty() {
            return write!(f, "1");
        }
        let mut factors = Vec::new();
        for b in &self.blocks {
            let inner: Vec<String> = b.word.iter().map(|v| format!("x{v}")).collect();
            factors.push(format!("Tr({})", inner.join("*")));
        }
        for v in &self.outside {
            factors.push(format!("x{v}"));
        }
        write!(f, "{}", factors.join("*"))
    }
}

/// A trace polynomial: finite map from canonical monomials to nonzero exact
/// rational coefficients. Equality of polynomials is equality of maps.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TracePolynomial {
    terms: BTreeMap<TraceMonomial, Rat>,
}

impl TracePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(TraceMonomial::one())
    }

    pub fn monomial(m: TraceMonomial) -> Self {
        Self::term(m, Rat::one())
    }

    pub fn term(m: TraceMonomial, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TraceMonomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &TraceMonomial) -> Option<&Rat> {
        self.terms.get(m)
    }

    pub fn add_term(&mut self, m: TraceMonomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rat::one())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), x * c))
                .collect(),
        }
    }

    /// Bilinear free product. Trace factors are central, outside words
    /// concatenate in order.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in self.terms() {
            for (m2, c2) in other.terms() {
                out.add_term(m1.product(m2), c1 * c2);
            }
        }
        out
    }

    /// Multiply by a single variable on the given side.
    pub fn mul_var(&self, var: u32, on_right: bool) -> Self {
        let v = Self::monomial(TraceMonomial::word(&[var]).expect("nonzero variable"));
        if on_right {
            self.mul(&v)
        } else {
            v.mul(self)
        }
    }

    /// Linear extension of monomial trace wrapping. Fails when any monomial
    /// has an empty outside word.
    pub fn wrap_trace(&self) -> Result<Self, PolyError> {
        let mut out = Self::zero();
        for (m, c) in self.terms() {
            out.add_term(m.wrap_trace()?, c.clone());
        }
        Ok(out)
    }

    pub fn variables(&self) -> BTreeSet<u32> {
        let mut vars = BTreeSet::new();
        for (m, _) in self.terms() {
            vars.extend(m.variables());
        }
        vars
    }

    pub fn max_var(&self) -> u32 {
        self.variables().into_iter().next_back().unwrap_or(0)
    }

    /// Returns `n` if the polynomial is multilinear in exactly x1..xn.
    pub fn multilinear_degree(&self) -> Option<u32> {
        let n = self.max_var();
        if n == 0 {
            return None;
        }
        self.terms
            .keys()
            .all(|m| m.is_multilinear_in(n))
            .then_some(n)
    }

    /// The endomorphism image of the polynomial under `x_i -> sigma[i]`.
    ///
    /// Trace blocks of an image are pulled out of the enclosing context as
    /// central factors; the image's outside word is spliced in place. Images
    /// must have degree at least one.
    pub fn substitute(
        &self,
        sigma: &BTreeMap<u32, TraceMonomial>,
    ) -> Result<Self, PolyError> {
        for img in sigma.values() {
            if img.degree() == 0 {
                return Err(PolyError::UnitSubstitution);
            }
        }
        let mut out = Self::zero();
        for (m, c) in self.terms() {
            let mut central: Vec<TraceBlock> = Vec::new();
            let splice = |word: &[u32],
                              central: &mut Vec<TraceBlock>|
             -> Result<Vec<u32>, PolyError> {
                let mut new_word = Vec::new();
                for v in word {
                    let img = sigma
                        .get(v)
                        .ok_or(PolyError::MissingSubstitution(*v))?;
                    central.extend(img.blocks.iter().cloned());
                    new_word.extend_from_slice(&img.outside);
                }
                Ok(new_word)
            };
            for block in &m.blocks {
                let word = splice(&block.word, &mut central)?;
                if word.is_empty() {
                    return Err(PolyError::TraceOfScalar);
                }
                central.push(TraceBlock::new(&word)?);
            }
            let outside = splice(&m.outside, &mut central)?;
            out.add_term(TraceMonomial::from_parts(central, outside), c.clone());
        }
        Ok(out)
    }

    /// `substitute` with the additional requirement that image variable sets
    /// are pairwise disjoint, so multilinearity is preserved.
    pub fn substitute_disjoint(
        &self,
        sigma: &BTreeMap<u32, TraceMonomial>,
    ) -> Result<Self, PolyError> {
        let mut seen = BTreeSet::new();
        for img in sigma.values() {
            for v in img.variables() {
                if !seen.insert(v) {
                    return Err(PolyError::OverlappingImages);
                }
            }
        }
        self.substitute(sigma)
    }
}

impl fmt::Display for TracePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let mag = format_rat(&crate::rational::abs_rat(c));
            // the empty monomial prints as a bare constant
            let body = if m.degree() == 0 {
                mag
            } else {
                format!("{mag}*{m}")
            };
            if i == 0 {
                if c < &Rat::zero() {
                    write!(f, "-{body}")?;
                } else {
                    write!(f, "{body}")?;
                }
            } else if c < &Rat::zero() {
                write!(f, " - {body}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn m(blocks: &[&[u32]], outside: &[u32]) -> TraceMonomial {
        TraceMonomial::new(blocks, outside).unwrap()
    }

    #[test]
    fn canonical_rotation() {
        assert_eq!(m(&[&[2, 1]], &[]), m(&[&[1, 2]], &[]));
        assert_eq!(m(&[&[2, 3, 1]], &[]), m(&[&[1, 2, 3]], &[]));
        assert_eq!(m(&[&[3, 1, 2]], &[]).blocks()[0].word(), &[1, 2, 3]);
    }

    #[test]
    fn block_sorting() {
        let a = m(&[&[3], &[1, 2]], &[4]);
        let b = m(&[&[1, 2], &[3]], &[4]);
        assert_eq!(a, b);
        assert_eq!(a.blocks()[0].word(), &[3]);
        assert_eq!(a.blocks()[1].word(), &[1, 2]);
    }

    #[test]
    fn canonicalize_idempotent() {
        let mono = m(&[&[2, 3, 1], &[5]], &[4]);
        let blocks: Vec<&[u32]> = mono.blocks().iter().map(|b| b.word()).collect();
        let again = TraceMonomial::new(&blocks, mono.outside()).unwrap();
        assert_eq!(mono, again);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            TraceMonomial::new(&[&[]], &[]),
            Err(PolyError::EmptyBlock)
        );
        assert_eq!(
            TraceMonomial::new(&[&[0]], &[]),
            Err(PolyError::ZeroVariable)
        );
        assert_eq!(TraceMonomial::new(&[], &[0]), Err(PolyError::ZeroVariable));
    }

    #[test]
    fn free_product() {
        let x1 = TracePolynomial::monomial(m(&[], &[1]));
        let x2 = TracePolynomial::monomial(m(&[], &[2]));
        let x1x2 = x1.mul(&x2);
        let x2x1 = x2.mul(&x1);
        assert_eq!(x1x2, TracePolynomial::monomial(m(&[], &[1, 2])));
        assert_ne!(x1x2, x2x1);

        let t1x2 = TracePolynomial::monomial(m(&[&[1]], &[2]));
        let t3 = TracePolynomial::monomial(m(&[&[3]], &[]));
        assert_eq!(
            t1x2.mul(&t3),
            TracePolynomial::monomial(m(&[&[1], &[3]], &[2]))
        );
        // traces are central
        assert_eq!(t3.mul(&t1x2), t1x2.mul(&t3));
    }

    #[test]
    fn mul_unit_neutral() {
        let p = catalog("f2", &[rat(2)]).unwrap();
        assert_eq!(p.mul(&TracePolynomial::one()), p);
        assert_eq!(TracePolynomial::one().mul(&p), p);
    }

    #[test]
    fn wrap_trace_examples() {
        let p = TracePolynomial::monomial(m(&[&[1]], &[2, 3]));
        assert_eq!(
            p.wrap_trace().unwrap(),
            TracePolynomial::monomial(m(&[&[1], &[2, 3]], &[]))
        );
        let x1 = TracePolynomial::monomial(m(&[], &[1]));
        assert_eq!(
            x1.wrap_trace().unwrap(),
            TracePolynomial::monomial(m(&[&[1]], &[]))
        );
        let w = TracePolynomial::monomial(m(&[], &[3, 1, 2]));
        assert_eq!(
            w.wrap_trace().unwrap(),
            TracePolynomial::monomial(m(&[&[1, 2, 3]], &[]))
        );
        let pure = TracePolynomial::monomial(m(&[&[1]], &[]));
        assert_eq!(pure.wrap_trace(), Err(PolyError::TraceOfScalar));
    }

    #[test]
    fn substitute_examples() {
        // [x1,x2] with x1 -> x1*x2, x2 -> x3 gives x1x2x3 - x3x1x2
        let f1 = catalog("f1", &[]).unwrap();
        let mut sigma = BTreeMap::new();
        sigma.insert(1, m(&[], &[1, 2]));
        sigma.insert(2, m(&[], &[3]));
        let got = f1.substitute_disjoint(&sigma).unwrap();
        let want = TracePolynomial::monomial(m(&[], &[1, 2, 3]))
            .sub(&TracePolynomial::monomial(m(&[], &[3, 1, 2])));
        assert_eq!(got, want);

        // Tr(x1)Tr(x2) with x1 -> Tr(x3)*x1: central factor pulled out
        let p = TracePolynomial::monomial(m(&[&[1], &[2]], &[]));
        let mut sigma = BTreeMap::new();
        sigma.insert(1, m(&[&[3]], &[1]));
        sigma.insert(2, m(&[], &[2]));
        assert_eq!(
            p.substitute_disjoint(&sigma).unwrap(),
            TracePolynomial::monomial(m(&[&[1], &[2], &[3]], &[]))
        );

        // overlapping images rejected
        let mut sigma = BTreeMap::new();
        sigma.insert(1, m(&[], &[2]));
        sigma.insert(2, m(&[], &[2]));
        assert_eq!(
            p.substitute_disjoint(&sigma),
            Err(PolyError::OverlappingImages)
        );

        // substituting a pure trace monomial into a singleton block hits Tr(1)
        let t1 = TracePolynomial::monomial(m(&[&[1]], &[]));
        let mut sigma = BTreeMap::new();
        sigma.insert(1, m(&[&[3]], &[]));
        assert_eq!(t1.substitute(&sigma), Err(PolyError::TraceOfScalar));
    }

    #[test]
    fn substitute_composes() {
        let p = catalog("h3", &[]).unwrap();
        let mut sigma = BTreeMap::new();
        sigma.insert(1, m(&[], &[2, 1]));
        sigma.insert(2, m(&[&[4]], &[3]));
        sigma.insert(3, m(&[], &[5]));
        let mut tau = BTreeMap::new();
        for v in 1..=5 {
            tau.insert(v, m(&[], &[v + 1]));
        }
        let lhs = p
            .substitute_disjoint(&sigma)
            .unwrap()
            .substitute_disjoint(&tau)
            .unwrap();
        // tau . sigma computed on monomial images
        let composed: BTreeMap<u32, TraceMonomial> = sigma
            .iter()
            .map(|(v, img)| (*v, img.relabel(|x| x + 1).unwrap()))
            .collect();
        let rhs = p.substitute_disjoint(&composed).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn multilinear_detection() {
        let p = catalog("f2", &[rat(1)]).unwrap();
        assert_eq!(p.multilinear_degree(), Some(2));
        let q = p.mul(&TracePolynomial::monomial(m(&[], &[2])));
        assert_eq!(q.multilinear_degree(), None);
    }
}
