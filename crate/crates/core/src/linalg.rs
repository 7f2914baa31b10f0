//! Exact row spaces over the rationals.
//!
//! Vectors are scaled to primitive integer form and maintained in a fully
//! reduced echelon basis (every pivot column is zero in all other rows).
//! Elimination is fraction-free: rows combine by cross-multiplication and are
//! divided by their content, so no rounding and no modular arithmetic is ever
//! involved. Arithmetic runs in `i128` and escalates the whole basis to
//! `BigInt` on the first overflow.
//!
//! Determinism: pivots are chosen as the first nonzero column of the reduced
//! candidate, rows are normalized to positive pivots and content one, and the
//! exported basis is sorted by pivot column. The resulting basis depends only
//! on the spanned subspace, not on insertion order.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rat;

/// Integer arithmetic used inside the elimination. `i128` returns `None` on
/// overflow; `BigInt` never fails.
pub(crate) trait ExactInt: Clone + Eq + Ord + std::fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn neg(&self) -> Self;
    fn checked_mul(&self, other: &Self) -> Option<Self>;
    fn checked_sub(&self, other: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn exact_div(&self, other: &Self) -> Self;
    fn from_bigint(b: &BigInt) -> Option<Self>;
    fn to_bigint(&self) -> BigInt;
}

impl ExactInt for i128 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        i128::checked_mul(*self, *other)
    }
    fn checked_sub(&self, other: &Self) -> Option<Self> {
        i128::checked_sub(*self, *other)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn exact_div(&self, other: &Self) -> Self {
        self / other
    }
    fn from_bigint(b: &BigInt) -> Option<Self> {
        // headroom below i128::MIN magnitude so gcd/neg never overflow
        let v: i128 = b.try_into().ok()?;
        (v.checked_abs().is_some()).then_some(v)
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl ExactInt for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn checked_sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn exact_div(&self, other: &Self) -> Self {
        self / other
    }
    fn from_bigint(b: &BigInt) -> Option<Self> {
        Some(b.clone())
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

#[derive(Debug)]
struct Overflow;

type SparseVec<T> = Vec<(u32, T)>;

/// Divide by the content and make the leading entry positive.
fn normalize<T: ExactInt>(v: &mut SparseVec<T>) {
    if v.is_empty() {
        return;
    }
    let mut g = T::zero();
    for (_, x) in v.iter() {
        g = g.gcd(x);
    }
    let negate = v[0].1.is_negative();
    for (_, x) in v.iter_mut() {
        let mut q = x.exact_div(&g);
        if negate {
            q = q.neg();
        }
        *x = q;
    }
}

#[derive(Debug, Clone, Default)]
struct Echelon<T> {
    rows: Vec<SparseVec<T>>,
    col_to_row: HashMap<u32, usize>,
}

impl<T: ExactInt> Echelon<T> {
    fn new() -> Self {
        Self {
            rows: Vec::new(),
            col_to_row: HashMap::new(),
        }
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }

    /// working <- (a/g) * working - (b/g) * row, where a = row pivot value
    /// and b = working value at the pivot column.
    fn eliminate(
        &self,
        working: &mut BTreeMap<u32, T>,
        row_idx: usize,
        pivot_col: u32,
    ) -> Result<(), Overflow> {
        let row = &self.rows[row_idx];
        let a = row[0].1.clone();
        let b = working
            .get(&pivot_col)
            .expect("caller checked the pivot entry")
            .clone();
        let g = a.gcd(&b);
        let scale = a.exact_div(&g);
        let factor = b.exact_div(&g);
        if scale != one_of::<T>() {
            for (_, x) in working.iter_mut() {
                *x = x.checked_mul(&scale).ok_or(Overflow)?;
            }
        }
        for (col, val) in row.iter() {
            let delta = val.checked_mul(&factor).ok_or(Overflow)?;
            match working.entry(*col) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(T::zero().checked_sub(&delta).ok_or(Overflow)?);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let next = e.get().checked_sub(&delta).ok_or(Overflow)?;
                    if next.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = next;
                    }
                }
            }
        }
        Ok(())
    }

    /// Reduce a candidate against the basis; the result is supported on free
    /// columns only.
    fn reduce(&self, working: &mut BTreeMap<u32, T>) -> Result<(), Overflow> {
        let mut next = 0u32;
        while let Some((&c, _)) = working.range(next..).next() {
            if let Some(&ri) = self.col_to_row.get(&c) {
                self.eliminate(working, ri, c)?;
            }
            next = c + 1;
        }
        Ok(())
    }

    /// Insert a vector; returns true when the dimension grew.
    fn insert(&mut self, v: SparseVec<T>) -> Result<bool, Overflow> {
        let mut working: BTreeMap<u32, T> =
            v.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        self.reduce(&mut working)?;
        if working.is_empty() {
            return Ok(false);
        }
        let mut new_row: SparseVec<T> = working.into_iter().collect();
        normalize(&mut new_row);
        let pivot_col = new_row[0].0;
        let pivot_val = new_row[0].1.clone();

        // back-eliminate the new pivot from existing rows, transactionally
        let mut updates: Vec<(usize, SparseVec<T>)> = Vec::new();
        for (ri, row) in self.rows.iter().enumerate() {
            let Some(pos) = row.iter().position(|(c, _)| *c == pivot_col) else {
                continue;
            };
            let b = row[pos].1.clone();
            let g = pivot_val.gcd(&b);
            let scale = pivot_val.exact_div(&g);
            let factor = b.exact_div(&g);
            let mut merged: BTreeMap<u32, T> = BTreeMap::new();
            for (c, x) in row.iter() {
                merged.insert(*c, x.checked_mul(&scale).ok_or(Overflow)?);
            }
            for (c, x) in new_row.iter() {
                let delta = x.checked_mul(&factor).ok_or(Overflow)?;
                match merged.entry(*c) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(T::zero().checked_sub(&delta).ok_or(Overflow)?);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let next = e.get().checked_sub(&delta).ok_or(Overflow)?;
                        if next.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = next;
                        }
                    }
                }
            }
            let mut updated: SparseVec<T> = merged.into_iter().collect();
            normalize(&mut updated);
            debug_assert!(!updated.is_empty());
            updates.push((ri, updated));
        }
        for (ri, row) in updates {
            self.rows[ri] = row;
        }
        self.col_to_row.insert(pivot_col, self.rows.len());
        self.rows.push(new_row);
        Ok(true)
    }

    fn contains(&self, v: &[(u32, T)]) -> Result<bool, Overflow> {
        let mut working: BTreeMap<u32, T> = v
            .iter()
            .filter(|(_, x)| !x.is_zero())
            .map(|(c, x)| (*c, x.clone()))
            .collect();
        self.reduce(&mut working)?;
        Ok(working.is_empty())
    }

    fn to_big(&self) -> Echelon<BigInt> {
        Echelon {
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|(c, x)| (*c, x.to_bigint())).collect())
                .collect(),
            col_to_row: self.col_to_row.clone(),
        }
    }
}

fn one_of<T: ExactInt>() -> T {
    // gcd(0, 0) is 0; build 1 from a bigint to avoid adding a trait method
    T::from_bigint(&BigInt::one()).expect("1 fits every ExactInt")
}

/// An exact row space with fully reduced echelon basis.
#[derive(Debug, Clone)]
pub struct RowSpace {
    ncols: usize,
    kind: Kind,
}

#[derive(Debug, Clone)]
enum Kind {
    Small(Echelon<i128>),
    Big(Echelon<BigInt>),
}

impl RowSpace {
    pub fn new(ncols: usize) -> Self {
        Self {
            ncols,
            kind: Kind::Small(Echelon::new()),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn dim(&self) -> usize {
        match &self.kind {
            Kind::Small(e) => e.dim(),
            Kind::Big(e) => e.dim(),
        }
    }

    fn escalate(&mut self) {
        if let Kind::Small(e) = &self.kind {
            self.kind = Kind::Big(e.to_big());
        }
    }

    /// Insert a rational vector (cleared to primitive integer form).
    /// Returns true when the dimension grew.
    pub fn insert_rat(&mut self, dense: &[Rat]) -> bool {
        assert_eq!(dense.len(), self.ncols, "vector length mismatch");
        self.insert_sparse_int(clear_denominators(dense.iter().enumerate()))
    }

    pub fn insert_sparse_rat(&mut self, sparse: &[(u32, Rat)]) -> bool {
        self.insert_sparse_int(clear_denominators(
            sparse.iter().map(|(c, x)| (*c as usize, x)),
        ))
    }

    pub fn insert_sparse_int(&mut self, v: Vec<(u32, BigInt)>) -> bool {
        debug_assert!(v.iter().all(|(c, _)| (*c as usize) < self.ncols));
        loop {
            match &mut self.kind {
                Kind::Small(e) => {
                    let small: Option<Vec<(u32, i128)>> = v
                        .iter()
                        .map(|(c, x)| i128::from_bigint(x).map(|y| (*c, y)))
                        .collect();
                    match small.map(|sv| e.insert(sv)) {
                        Some(Ok(grew)) => return grew,
                        _ => self.escalate(),
                    }
                }
                Kind::Big(e) => {
                    return e
                        .insert(v)
                        .expect("BigInt elimination cannot overflow");
                }
            }
        }
    }

    pub fn contains_rat(&self, dense: &[Rat]) -> bool {
        assert_eq!(dense.len(), self.ncols, "vector length mismatch");
        self.contains_sparse_int(&clear_denominators(dense.iter().enumerate()))
    }

    pub fn contains_sparse_rat(&self, sparse: &[(u32, Rat)]) -> bool {
        self.contains_sparse_int(&clear_denominators(
            sparse.iter().map(|(c, x)| (*c as usize, x)),
        ))
    }

    pub fn contains_sparse_int(&self, v: &[(u32, BigInt)]) -> bool {
        match &self.kind {
            Kind::Small(e) => {
                let small: Option<Vec<(u32, i128)>> = v
                    .iter()
                    .map(|(c, x)| i128::from_bigint(x).map(|y| (*c, y)))
                    .collect();
                match small.map(|sv| e.contains(&sv)) {
                    Some(Ok(ans)) => ans,
                    // overflow while reducing: redo in BigInt without mutating self
                    _ => e
                        .to_big()
                        .contains(v)
                        .expect("BigInt elimination cannot overflow"),
                }
            }
            Kind::Big(e) => e.contains(v).expect("BigInt elimination cannot overflow"),
        }
    }

    /// Pivot columns in ascending order.
    pub fn pivots(&self) -> Vec<u32> {
        let mut p: Vec<u32> = match &self.kind {
            Kind::Small(e) => e.rows.iter().map(|r| r[0].0).collect(),
            Kind::Big(e) => e.rows.iter().map(|r| r[0].0).collect(),
        };
        p.sort_unstable();
        p
    }

    /// Basis rows as primitive integer vectors, sorted by pivot column.
    pub fn basis_rows_int(&self) -> Vec<Vec<(u32, BigInt)>> {
        let mut rows: Vec<Vec<(u32, BigInt)>> = match &self.kind {
            Kind::Small(e) => e
                .rows
                .iter()
                .map(|r| r.iter().map(|(c, x)| (*c, BigInt::from(*x))).collect())
                .collect(),
            Kind::Big(e) => e.rows.clone(),
        };
        rows.sort_by_key(|r| r[0].0);
        rows
    }

    /// Basis rows in reduced row echelon form over the rationals
    /// (pivot entries normalized to one), sorted by pivot column.
    pub fn basis_rows_rat(&self) -> Vec<Vec<(u32, Rat)>> {
        self.basis_rows_int()
            .into_iter()
            .map(|r| {
                let pivot = r[0].1.clone();
                r.into_iter()
                    .map(|(c, x)| (c, Rat::new(x, pivot.clone())))
                    .collect()
            })
            .collect()
    }

    /// Canonical basis of the nullspace { x : r . x = 0 for every basis row r },
    /// one primitive integer vector per free column, ascending.
    pub fn nullspace(&self) -> Vec<Vec<(u32, BigInt)>> {
        let rows = self.basis_rows_int();
        let pivot_of_row: Vec<u32> = rows.iter().map(|r| r[0].0).collect();
        let is_pivot: std::collections::HashSet<u32> = pivot_of_row.iter().copied().collect();
        let mut out = Vec::new();
        for f in 0..self.ncols as u32 {
            if is_pivot.contains(&f) {
                continue;
            }
            // x_f = 1, x_p = -row[f]/row[p] for each pivot p
            let mut entries: Vec<(u32, Rat)> = vec![(f, Rat::one())];
            for (row, &p) in rows.iter().zip(&pivot_of_row) {
                if let Some((_, v)) = row.iter().find(|(c, _)| *c == f) {
                    entries.push((p, -Rat::new(v.clone(), row[0].1.clone())));
                }
            }
            entries.sort_by_key(|(c, _)| *c);
            let mut vec = clear_denominators(
                entries.iter().map(|(c, x)| (*c as usize, x)),
            );
            // sign convention: the free coordinate is positive
            let fpos = vec.iter().position(|(c, _)| *c == f).expect("free entry");
            if num_traits::Signed::is_negative(&vec[fpos].1) {
                for (_, x) in vec.iter_mut() {
                    *x = -x.clone();
                }
            }
            out.push(vec);
        }
        out
    }

    pub fn is_escalated(&self) -> bool {
        matches!(self.kind, Kind::Big(_))
    }
}

impl PartialEq for RowSpace {
    fn eq(&self, other: &Self) -> bool {
        self.ncols == other.ncols && self.basis_rows_int() == other.basis_rows_int()
    }
}
impl Eq for RowSpace {}

/// Scale a rational vector to a primitive integer sparse vector.
pub fn clear_denominators<'a>(
    entries: impl Iterator<Item = (usize, &'a Rat)>,
) -> Vec<(u32, BigInt)> {
    let entries: Vec<(u32, Rat)> = entries
        .filter(|(_, x)| !x.is_zero())
        .map(|(c, x)| (c as u32, x.clone()))
        .collect();
    if entries.is_empty() {
        return Vec::new();
    }
    let mut lcm = BigInt::one();
    for (_, x) in &entries {
        lcm = lcm.lcm(x.denom());
    }
    let mut out: Vec<(u32, BigInt)> = entries
        .iter()
        .map(|(c, x)| (*c, x.numer() * (&lcm / x.denom())))
        .collect();
    let mut g: BigInt = num_traits::Zero::zero();
    for (_, x) in &out {
        g = Integer::gcd(&g, x);
    }
    if !g.is_one() {
        for (_, x) in out.iter_mut() {
            *x = &*x / &g;
        }
    }
    out
}

/// Rank of a matrix given by rational rows.
pub fn rank_rat_rows<I>(ncols: usize, rows: I) -> usize
where
    I: IntoIterator<Item = Vec<Rat>>,
{
    let mut space = RowSpace::new(ncols);
    for row in rows {
        space.insert_rat(&row);
    }
    space.dim()
}

/// Basis of { x : M x = 0 } for a matrix given by rational rows, as dense
/// rational vectors normalized to primitive integers.
pub fn nullspace_rat_rows<I>(ncols: usize, rows: I) -> Vec<Vec<Rat>>
where
    I: IntoIterator<Item = Vec<Rat>>,
{
    let mut space = RowSpace::new(ncols);
    for row in rows {
        space.insert_rat(&row);
    }
    space
        .nullspace()
        .into_iter()
        .map(|sv| {
            let mut dense = vec![Rat::zero(); ncols];
            for (c, x) in sv {
                dense[c as usize] = Rat::from_integer(x);
            }
            dense
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn dense(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn rank_and_membership() {
        let mut s = RowSpace::new(3);
        assert!(s.insert_rat(&dense(&[1, 2, 3])));
        assert!(s.insert_rat(&dense(&[0, 1, 1])));
        assert!(!s.insert_rat(&dense(&[1, 3, 4])));
        assert_eq!(s.dim(), 2);
        assert!(s.contains_rat(&dense(&[2, 5, 7])));
        assert!(!s.contains_rat(&dense(&[0, 0, 1])));
        assert_eq!(s.pivots(), vec![0, 1]);
    }

    #[test]
    fn basis_is_canonical_regardless_of_insertion_order() {
        let vecs = [
            dense(&[2, 4, 0, 6]),
            dense(&[1, 2, 1, 3]),
            dense(&[0, 0, 3, 1]),
        ];
        let mut a = RowSpace::new(4);
        let mut b = RowSpace::new(4);
        for v in &vecs {
            a.insert_rat(v);
        }
        for v in vecs.iter().rev() {
            b.insert_rat(v);
        }
        assert_eq!(a, b);
        assert_eq!(a.basis_rows_int(), b.basis_rows_int());
    }

    #[test]
    fn rational_input_cleared_exactly() {
        let mut s = RowSpace::new(2);
        let half = Rat::new(1.into(), 2.into());
        let third = Rat::new(1.into(), 3.into());
        s.insert_rat(&[half, third]);
        let rows = s.basis_rows_int();
        assert_eq!(rows, vec![vec![(0u32, BigInt::from(3)), (1u32, BigInt::from(2))]]);
    }

    #[test]
    fn nullspace_of_echelon() {
        // x + 2y + 3z = 0, y + z = 0  ->  nullspace spanned by (-1, -1, 1)
        let rows = vec![dense(&[1, 2, 3]), dense(&[0, 1, 1])];
        let ns = nullspace_rat_rows(3, rows.clone());
        assert_eq!(ns.len(), 1);
        for row in &rows {
            let dot: Rat = row
                .iter()
                .zip(&ns[0])
                .map(|(a, b)| a * b)
                .fold(Rat::zero(), |acc, x| acc + x);
            assert!(dot.is_zero());
        }
        // rank + nullity = ncols
        assert_eq!(rank_rat_rows(3, rows), 2);
    }

    #[test]
    fn overflow_escalates_to_bigint() {
        let mut s = RowSpace::new(2);
        let huge = BigInt::from(i128::MAX) * BigInt::from(i128::MAX);
        s.insert_sparse_int(vec![(0, huge.clone()), (1, BigInt::from(1))]);
        assert!(s.is_escalated());
        assert_eq!(s.dim(), 1);
        // still exact
        assert!(s.contains_sparse_int(&[(0, huge * 2), (1, BigInt::from(2))]));
    }

    #[test]
    fn zero_vector_never_grows_dimension() {
        let mut s = RowSpace::new(4);
        assert!(!s.insert_rat(&dense(&[0, 0, 0, 0])));
        assert_eq!(s.dim(), 0);
        assert!(s.contains_rat(&dense(&[0, 0, 0, 0])));
    }
}
