//! Trace codimension as an exact rank, identity subspaces, spanning-family
//! verification, and degree-bounded comparison of identity ideals.
//!
//! The evaluation matrix has one row per MT_n basis monomial and one column
//! per (basis tuple, output coordinate). Its rank over the rationals is the
//! n-th trace codimension; the left nullspace is the space of multilinear
//! identities in degree n. Columns are stored sparsely; all-zero columns are
//! dropped and duplicate columns merged before elimination, neither of which
//! changes the rank or the left nullspace.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::TraceAlgebra;
use crate::comb;
use crate::linalg::RowSpace;
use crate::poly::{enumerate_mt, MtMode, PolyError, TraceMonomial, TracePolynomial};
use crate::rational::Rat;

pub const DEFAULT_ROW_CAP: usize = 50_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodimError {
    #[error("degree must be at least 1")]
    DegreeZero,
    #[error("commutative mode requires a commutative algebra; `{0}` is not")]
    NotCommutative(String),
    #[error("row count {rows} exceeds the cap {cap}; raise the cap to proceed")]
    RowCapExceeded { rows: String, cap: usize },
    #[error("monomial `{0}` is not multilinear of degree {1}")]
    NotInAmbient(String, u32),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixMode {
    /// Commutative collapse when the structure constants are symmetric,
    /// general otherwise.
    Auto,
    General,
    Commutative,
}

#[derive(Debug, Clone)]
pub struct CodimOptions {
    pub mode: MatrixMode,
    pub row_cap: usize,
}

impl Default for CodimOptions {
    fn default() -> Self {
        Self {
            mode: MatrixMode::Auto,
            row_cap: DEFAULT_ROW_CAP,
        }
    }
}

/// The exact evaluation matrix of MT_n over an algebra, stored column-wise.
///
/// `columns` holds one representative for every distinct nonzero column; the
/// (tuple, coordinate) key of each representative's first occurrence is in
/// `col_keys`. Every logical column is either all zero or equal to exactly
/// one stored column.
#[derive(Debug, Clone)]
pub struct EvaluationMatrix {
    pub n: u32,
    pub mode: MtMode,
    pub rows: Vec<TraceMonomial>,
    pub col_keys: Vec<(usize, usize)>,
    pub columns: Vec<Vec<(u32, Rat)>>,
    pub logical_cols: usize,
}

fn expected_rows(n: u32, mode: MtMode) -> BigInt {
    match mode {
        MtMode::General => comb::factorial(n + 1),
        MtMode::Commutative => comb::bell(n + 1),
    }
}

fn check_row_cap(n: u32, mode: MtMode, cap: usize) -> Result<(), CodimError> {
    let rows = expected_rows(n, mode);
    if rows.to_usize().map(|r| r > cap).unwrap_or(true) {
        return Err(CodimError::RowCapExceeded {
            rows: rows.to_string(),
            cap,
        });
    }
    Ok(())
}

fn resolve_mode(alg: &TraceAlgebra, mode: MatrixMode) -> Result<MtMode, CodimError> {
    match mode {
        MatrixMode::General => Ok(MtMode::General),
        MatrixMode::Commutative => {
            if alg.is_commutative() {
                Ok(MtMode::Commutative)
            } else {
                Err(CodimError::NotCommutative(alg.label().to_string()))
            }
        }
        MatrixMode::Auto => Ok(if alg.is_commutative() {
            MtMode::Commutative
        } else {
            MtMode::General
        }),
    }
}

struct RowPlan {
    block_words: Vec<u32>,
    outside_word: Option<u32>,
}

struct AssemblyPlan {
    words: Vec<Vec<u32>>,
    plans: Vec<RowPlan>,
}

fn build_plan(rows: &[TraceMonomial]) -> AssemblyPlan {
    let mut words: Vec<Vec<u32>> = Vec::new();
    let mut index: HashMap<Vec<u32>, u32> = HashMap::new();
    let mut intern = |w: &[u32]| -> u32 {
        if let Some(&i) = index.get(w) {
            return i;
        }
        let i = words.len() as u32;
        words.push(w.to_vec());
        index.insert(w.to_vec(), i);
        i
    };
    let plans = rows
        .iter()
        .map(|m| RowPlan {
            block_words: m.blocks().iter().map(|b| intern(b.word())).collect(),
            outside_word: (!m.outside().is_empty()).then(|| intern(m.outside())),
        })
        .collect();
    AssemblyPlan { words, plans }
}

fn decode_tuple(mut index: usize, n: usize, dim: usize) -> Vec<usize> {
    let mut tuple = vec![0usize; n];
    for slot in (0..n).rev() {
        tuple[slot] = index % dim;
        index /= dim;
    }
    tuple
}

/// All nonzero columns contributed by one basis tuple, keyed by coordinate.
fn tuple_columns(
    alg: &TraceAlgebra,
    plan: &AssemblyPlan,
    tuple: &[usize],
) -> Vec<(usize, Vec<(u32, Rat)>)> {
    let d = alg.dim();
    let mut word_vals: Vec<Option<Vec<Rat>>> = vec![None; plan.words.len()];
    let mut word_traces: Vec<Option<Rat>> = vec![None; plan.words.len()];
    let value_of = |wid: u32, vals: &mut Vec<Option<Vec<Rat>>>| -> Vec<Rat> {
        let w = wid as usize;
        if vals[w].is_none() {
            let seq: Vec<usize> = plan.words[w].iter().map(|&v| tuple[v as usize - 1]).collect();
            vals[w] = Some(alg.basis_product(&seq));
        }
        vals[w].clone().unwrap()
    };
    let mut cols: Vec<Vec<(u32, Rat)>> = vec![Vec::new(); d];
    for (row_idx, rp) in plan.plans.iter().enumerate() {
        let mut scalar = Rat::from_integer(1.into());
        let mut zero = false;
        for &wid in &rp.block_words {
            if word_traces[wid as usize].is_none() {
                let v = value_of(wid, &mut word_vals);
                word_traces[wid as usize] = Some(alg.trace_of_vec(&v));
            }
            let t = word_traces[wid as usize].as_ref().unwrap();
            if t.is_zero() {
                zero = true;
                break;
            }
            scalar *= t;
        }
        if zero {
            continue;
        }
        let base = match rp.outside_word {
            None => alg.unit_coords().to_vec(),
            Some(wid) => value_of(wid, &mut word_vals),
        };
        for (k, x) in base.iter().enumerate() {
            if !x.is_zero() {
                cols[k].push((row_idx as u32, x * &scalar));
            }
        }
    }
    cols.into_iter()
        .enumerate()
        .filter(|(_, col)| !col.is_empty())
        .collect()
}

fn assemble(
    alg: &TraceAlgebra,
    n: u32,
    rows: Vec<TraceMonomial>,
    mode: MtMode,
) -> EvaluationMatrix {
    let d = alg.dim();
    let total_tuples = d.checked_pow(n).expect("tuple count fits in usize");
    let plan = build_plan(&rows);

    let mut columns: Vec<Vec<(u32, Rat)>> = Vec::new();
    let mut col_keys: Vec<(usize, usize)> = Vec::new();
    let mut seen: HashMap<Vec<(u32, Rat)>, ()> = HashMap::new();

    const CHUNK: usize = 1024;
    let mut start = 0usize;
    while start < total_tuples {
        let end = (start + CHUNK).min(total_tuples);
        let batch: Vec<(usize, Vec<(usize, Vec<(u32, Rat)>)>)> = (start..end)
            .into_par_iter()
            .map(|t| {
                let tuple = decode_tuple(t, n as usize, d);
                (t, tuple_columns(alg, &plan, &tuple))
            })
            .collect();
        for (t, cols) in batch {
            for (k, col) in cols {
                if seen.contains_key(&col) {
                    continue;
                }
                seen.insert(col.clone(), ());
                col_keys.push((t, k));
                columns.push(col);
            }
        }
        start = end;
    }

    EvaluationMatrix {
        n,
        mode,
        rows,
        col_keys,
        columns,
        logical_cols: total_tuples * d,
    }
}

/// Build the evaluation matrix of MT_n (or its commutative collapse) over an
/// algebra.
pub fn evaluation_matrix(
    alg: &TraceAlgebra,
    n: u32,
    opts: &CodimOptions,
) -> Result<EvaluationMatrix, CodimError> {
    if n == 0 {
        return Err(CodimError::DegreeZero);
    }
    let mode = resolve_mode(alg, opts.mode)?;
    check_row_cap(n, mode, opts.row_cap)?;
    let rows = enumerate_mt(n, mode)?;
    Ok(assemble(alg, n, rows, mode))
}

impl EvaluationMatrix {
    /// Row space of the stored columns, i.e. the column space of the matrix,
    /// expressed over row coordinates.
    pub fn column_space(&self) -> RowSpace {
        let mut space = RowSpace::new(self.rows.len());
        for col in &self.columns {
            space.insert_sparse_rat(col);
        }
        space
    }

    pub fn rank(&self) -> usize {
        self.column_space().dim()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodimResult {
    pub codim: usize,
    pub mode: MtMode,
    pub rows: usize,
    pub logical_cols: usize,
    pub stored_cols: usize,
}

/// The n-th trace codimension, computed with explicit options.
pub fn codimension_with(
    alg: &TraceAlgebra,
    n: u32,
    opts: &CodimOptions,
) -> Result<CodimResult, CodimError> {
    let matrix = evaluation_matrix(alg, n, opts)?;
    Ok(CodimResult {
        codim: matrix.rank(),
        mode: matrix.mode,
        rows: matrix.rows.len(),
        logical_cols: matrix.logical_cols,
        stored_cols: matrix.columns.len(),
    })
}

/// The n-th trace codimension with default options (automatic commutative
/// fast path, default row cap).
pub fn codimension(alg: &TraceAlgebra, n: u32) -> Result<usize, CodimError> {
    codimension_with(alg, n, &CodimOptions::default()).map(|r| r.codim)
}

/// A subspace of MT_n given by a reduced row-echelon basis over an explicit
/// monomial list.
#[derive(Debug, Clone)]
pub struct Subspace {
    ambient: Vec<TraceMonomial>,
    index: HashMap<TraceMonomial, u32>,
    space: RowSpace,
}

impl Subspace {
    pub fn new(ambient: Vec<TraceMonomial>) -> Self {
        let index = ambient
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i as u32))
            .collect();
        let space = RowSpace::new(ambient.len());
        Self {
            ambient,
            index,
            space,
        }
    }

    pub fn from_space(ambient: Vec<TraceMonomial>, space: RowSpace) -> Self {
        assert_eq!(space.ncols(), ambient.len());
        let index = ambient
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i as u32))
            .collect();
        Self {
            ambient,
            index,
            space,
        }
    }

    pub fn ambient(&self) -> &[TraceMonomial] {
        &self.ambient
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn space(&self) -> &RowSpace {
        &self.space
    }

    /// Sparse coefficient vector of a polynomial over the ambient monomials;
    /// None when the polynomial uses a monomial outside the ambient list.
    pub fn vector_of(&self, p: &TracePolynomial) -> Option<Vec<(u32, Rat)>> {
        let mut v: Vec<(u32, Rat)> = Vec::with_capacity(p.num_terms());
        for (m, c) in p.terms() {
            v.push((*self.index.get(m)?, c.clone()));
        }
        v.sort_by_key(|(i, _)| *i);
        Some(v)
    }

    pub fn insert_polynomial(&mut self, p: &TracePolynomial) -> Option<bool> {
        let v = self.vector_of(p)?;
        Some(self.space.insert_sparse_rat(&v))
    }

    /// Membership by reduction to zero.
    pub fn contains_polynomial(&self, p: &TracePolynomial) -> bool {
        match self.vector_of(p) {
            Some(v) => self.space.contains_sparse_rat(&v),
            None => false,
        }
    }

    /// Reconstruct the basis as polynomials, one per echelon row.
    pub fn basis_polynomials(&self) -> Vec<TracePolynomial> {
        self.space
            .basis_rows_rat()
            .into_iter()
            .map(|row| {
                let mut p = TracePolynomial::zero();
                for (c, x) in row {
                    p.add_term(self.ambient[c as usize].clone(), x);
                }
                p
            })
            .collect()
    }

    pub fn is_equal(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.space == other.space
    }

    /// Does this subspace contain every vector of `other`?
    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        if self.ambient != other.ambient {
            return false;
        }
        other
            .space
            .basis_rows_int()
            .iter()
            .all(|row| self.space.contains_sparse_int(row))
    }
}

/// Reduced basis of MT_n ∩ Id(A): the left nullspace of the general-mode
/// evaluation matrix. dim = (n+1)! - codimension.
pub fn identity_basis(alg: &TraceAlgebra, n: u32) -> Result<Subspace, CodimError> {
    identity_basis_with(alg, n, DEFAULT_ROW_CAP)
}

pub fn identity_basis_with(
    alg: &TraceAlgebra,
    n: u32,
    row_cap: usize,
) -> Result<Subspace, CodimError> {
    let opts = CodimOptions {
        mode: MatrixMode::General,
        row_cap,
    };
    let matrix = evaluation_matrix(alg, n, &opts)?;
    Ok(left_nullspace_subspace(matrix))
}

/// The commutative-collapse analogue: identities of A expressed over
/// commutative class representatives. Only valid for commutative algebras.
pub fn identity_basis_commutative(
    alg: &TraceAlgebra,
    n: u32,
    row_cap: usize,
) -> Result<Subspace, CodimError> {
    let opts = CodimOptions {
        mode: MatrixMode::Commutative,
        row_cap,
    };
    let matrix = evaluation_matrix(alg, n, &opts)?;
    Ok(left_nullspace_subspace(matrix))
}

fn left_nullspace_subspace(matrix: EvaluationMatrix) -> Subspace {
    let column_space = matrix.column_space();
    let mut space = RowSpace::new(matrix.rows.len());
    for v in column_space.nullspace() {
        space.insert_sparse_int(v);
    }
    Subspace::from_space(matrix.rows, space)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningReport {
    pub family_size: usize,
    pub codim: usize,
    pub rank: usize,
    pub pass: bool,
}

/// A family of monomials is a basis of MT_n modulo identities iff its size
/// equals the codimension and its evaluation rows have full rank.
pub fn verify_spanning_family(
    family: &[TraceMonomial],
    alg: &TraceAlgebra,
    n: u32,
    opts: &CodimOptions,
) -> Result<SpanningReport, CodimError> {
    if n == 0 {
        return Err(CodimError::DegreeZero);
    }
    for m in family {
        if !m.is_multilinear_in(n) {
            return Err(CodimError::NotInAmbient(m.to_string(), n));
        }
    }
    let codim = codimension_with(alg, n, opts)?.codim;
    let matrix = assemble(alg, n, family.to_vec(), MtMode::General);
    let rank = matrix.rank();
    Ok(SpanningReport {
        family_size: family.len(),
        codim,
        rank,
        pass: family.len() == codim && rank == family.len(),
    })
}

/// Equality of the degree-n multilinear identity spaces of two algebras.
pub fn ideals_equal_at_degree(
    a: &TraceAlgebra,
    b: &TraceAlgebra,
    n: u32,
) -> Result<bool, CodimError> {
    Ok(identity_basis(a, n)?.is_equal(&identity_basis(b, n)?))
}

/// identity_basis(B) ⊆ identity_basis(A): the degree-n necessary condition
/// for A to lie in the trace variety generated by B.
pub fn contains_at_degree(
    a: &TraceAlgebra,
    b: &TraceAlgebra,
    n: u32,
) -> Result<bool, CodimError> {
    Ok(identity_basis(a, n)?.contains_subspace(&identity_basis(b, n)?))
}

// ---------------------------------------------------------------------------
// Named monomial families used by the spanning-family checks.

fn subsets(n: u32) -> impl Iterator<Item = Vec<u32>> {
    (0u64..(1u64 << n)).map(move |mask| {
        (1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect()
    })
}

fn complement(n: u32, set: &[u32]) -> Vec<u32> {
    (1..=n).filter(|v| !set.contains(v)).collect()
}

/// `Tr(x_{i_1} ... x_{i_k}) x_{j_1} ... x_{j_{n-k}}` with ascending indices,
/// over all traced subsets. 2^n monomials.
pub fn family_one_trace(n: u32) -> Vec<TraceMonomial> {
    let mut out = Vec::new();
    for s in subsets(n) {
        let rest = complement(n, &s);
        let mono = if s.is_empty() {
            TraceMonomial::word(&rest).expect("valid")
        } else {
            TraceMonomial::new(&[&s], &rest).expect("valid")
        };
        out.push(mono);
    }
    out.sort();
    out
}

/// One-trace family plus all `Tr(P)Tr(Q) x_R` with ascending indices.
/// 2^n + S(n+1, 3) monomials.
pub fn family_two_trace(n: u32) -> Vec<TraceMonomial> {
    let mut out: std::collections::BTreeSet<TraceMonomial> =
        family_one_trace(n).into_iter().collect();
    for s in subsets(n) {
        if s.len() < 2 {
            continue;
        }
        // split s into two nonempty parts; the part containing the minimum is
        // canonical, so each unordered pair appears once
        let m = s.len();
        for mask in 0u64..(1 << (m - 1)) {
            let mut p = vec![s[0]];
            let mut q = Vec::new();
            for (idx, &v) in s.iter().enumerate().skip(1) {
                if mask & (1 << (idx - 1)) != 0 {
                    p.push(v);
                } else {
                    q.push(v);
                }
            }
            if q.is_empty() {
                continue;
            }
            let rest = complement(n, &s);
            out.insert(TraceMonomial::new(&[&p, &q], &rest).expect("valid"));
        }
    }
    out.into_iter().collect()
}

/// Singleton-trace monomials plus, for every traced subset of size >= 2, the
/// variant with the two smallest traced variables sharing one block.
/// 2^{n+1} - n - 1 monomials.
pub fn family_strange(n: u32) -> Vec<TraceMonomial> {
    let mut out = std::collections::BTreeSet::new();
    for s in subsets(n) {
        let rest = complement(n, &s);
        let singles: Vec<&[u32]> = s.iter().map(std::slice::from_ref).collect();
        out.insert(TraceMonomial::new(&singles, &rest).expect("valid"));
        if s.len() >= 2 {
            let pair = [s[0], s[1]];
            let mut blocks: Vec<&[u32]> = vec![&pair];
            for v in &s[2..] {
                blocks.push(std::slice::from_ref(v));
            }
            out.insert(TraceMonomial::new(&blocks, &rest).expect("valid"));
        }
    }
    out.into_iter().collect()
}

/// `Tr(x_{i_1} ... x_{i_a}) x_{j_1} ...` with a <= k-1, ascending.
/// sum_{i<k} C(n, i) monomials.
pub fn family_ck(n: u32, k: u32) -> Vec<TraceMonomial> {
    family_one_trace(n)
        .into_iter()
        .filter(|m| {
            m.blocks()
                .first()
                .map(|b| b.len() < k as usize)
                .unwrap_or(true)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_c2, build_ck_degenerate, build_dn, build_mn, build_ut2};
    use crate::poly::catalog;
    use crate::rational::rat;

    fn rats(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn matrix_shapes() {
        let d2 = build_dn(&rats(&[1, 0])).unwrap();
        let m = evaluation_matrix(
            &d2,
            1,
            &CodimOptions {
                mode: MatrixMode::General,
                row_cap: DEFAULT_ROW_CAP,
            },
        )
        .unwrap();
        assert_eq!(m.rows.len(), 2);
        assert_eq!(m.logical_cols, 4);
        assert_eq!(m.rank(), 2);

        let any = build_c2(&rat(1), &rat(1));
        let m = evaluation_matrix(
            &any,
            2,
            &CodimOptions {
                mode: MatrixMode::General,
                row_cap: DEFAULT_ROW_CAP,
            },
        )
        .unwrap();
        assert_eq!(m.rows.len(), 6);

        let d3 = build_dn(&rats(&[1, 1, 0])).unwrap();
        let m = evaluation_matrix(
            &d3,
            3,
            &CodimOptions {
                mode: MatrixMode::Commutative,
                row_cap: DEFAULT_ROW_CAP,
            },
        )
        .unwrap();
        assert_eq!(m.rows.len(), 15);
    }

    #[test]
    fn commutative_mode_gated() {
        let ut2 = build_ut2();
        let err = evaluation_matrix(
            &ut2,
            2,
            &CodimOptions {
                mode: MatrixMode::Commutative,
                row_cap: DEFAULT_ROW_CAP,
            },
        )
        .unwrap_err();
        assert!(matches!(err, CodimError::NotCommutative(_)));
    }

    #[test]
    fn row_cap_enforced() {
        let d2 = build_dn(&rats(&[1, 0])).unwrap();
        let err = codimension_with(
            &d2,
            9,
            &CodimOptions {
                mode: MatrixMode::General,
                row_cap: 1000,
            },
        )
        .unwrap_err();
        assert!(matches!(err, CodimError::RowCapExceeded { .. }));
    }

    #[test]
    fn codimension_spot_values() {
        let d2_10 = build_dn(&rats(&[1, 0])).unwrap();
        assert_eq!(codimension(&d2_10, 3).unwrap(), 8);
        let d2_00 = build_dn(&rats(&[0, 0])).unwrap();
        assert_eq!(codimension(&d2_00, 5).unwrap(), 1);
        let d3_110 = build_dn(&rats(&[1, 1, 0])).unwrap();
        assert_eq!(codimension(&d3_110, 3).unwrap(), 14);
        let c2_01 = build_c2(&rat(0), &rat(1));
        assert_eq!(codimension(&c2_01, 4).unwrap(), 27);
        let c3_10 = build_ck_degenerate(3, &rat(1)).unwrap();
        assert_eq!(codimension(&c3_10, 4).unwrap(), 11);
    }

    #[test]
    fn general_and_commutative_modes_agree() {
        let algebras = vec![
            build_dn(&rats(&[1, 0])).unwrap(),
            build_dn(&rats(&[1, 2])).unwrap(),
            build_dn(&rats(&[1, 1, 0])).unwrap(),
            build_dn(&rats(&[1, 2, 0])).unwrap(),
            build_c2(&rat(0), &rat(1)),
            build_ck_degenerate(3, &rat(1)).unwrap(),
        ];
        for alg in &algebras {
            for n in 1..=4 {
                let g = codimension_with(
                    alg,
                    n,
                    &CodimOptions {
                        mode: MatrixMode::General,
                        row_cap: DEFAULT_ROW_CAP,
                    },
                )
                .unwrap();
                let c = codimension_with(
                    alg,
                    n,
                    &CodimOptions {
                        mode: MatrixMode::Commutative,
                        row_cap: DEFAULT_ROW_CAP,
                    },
                )
                .unwrap();
                assert_eq!(g.codim, c.codim, "{} at n={n}", alg.label());
            }
        }
    }

    #[test]
    fn identity_basis_dimensions() {
        let d2_10 = build_dn(&rats(&[1, 0])).unwrap();
        let basis = identity_basis(&d2_10, 2).unwrap();
        assert_eq!(basis.dim(), 2);
        assert!(basis.contains_polynomial(&catalog("f1", &[]).unwrap()));
        assert!(basis.contains_polynomial(&catalog("f2", &[rat(1)]).unwrap()));
        assert!(!basis.contains_polynomial(&catalog("f2", &[rat(2)]).unwrap()));

        let d2_00 = build_dn(&rats(&[0, 0])).unwrap();
        assert_eq!(identity_basis(&d2_00, 2).unwrap().dim(), 5);

        // dim identity + codim = dim MT_n
        for n in 1..=4u32 {
            let b = identity_basis(&d2_10, n).unwrap();
            let c = codimension(&d2_10, n).unwrap();
            assert_eq!(b.dim() + c, b.ambient().len());
        }
    }

    #[test]
    fn zero_trace_identities_contain_commutativity() {
        let d2_00 = build_dn(&rats(&[0, 0])).unwrap();
        let basis = identity_basis(&d2_00, 3).unwrap();
        // every outside-word transposition is an identity
        let p = crate::poly::parse_poly("x1*x2*x3 - x2*x1*x3").unwrap();
        assert!(basis.contains_polynomial(&p));
        let q = crate::poly::parse_poly("Tr(x1)*x2*x3 - Tr(x1)*x3*x2").unwrap();
        assert!(basis.contains_polynomial(&q));
    }

    #[test]
    fn family_sizes() {
        for n in 1..=5u32 {
            assert_eq!(family_one_trace(n).len(), 1 << n);
            let expected = (1u64 << n) + comb::stirling2(n + 1, 3).to_u64().unwrap();
            assert_eq!(family_two_trace(n).len() as u64, expected);
            assert_eq!(
                family_strange(n).len() as u64,
                (1u64 << (n + 1)) - n as u64 - 1
            );
            for k in 2..=4u32 {
                let expected: u64 = (0..k)
                    .map(|i| comb::binomial(n, i).to_u64().unwrap())
                    .sum();
                assert_eq!(family_ck(n, k).len() as u64, expected);
            }
        }
    }

    #[test]
    fn spanning_families_pass_and_fail() {
        let d2_10 = build_dn(&rats(&[1, 0])).unwrap();
        let fam = family_one_trace(3);
        let report =
            verify_spanning_family(&fam, &d2_10, 3, &CodimOptions::default()).unwrap();
        assert!(report.pass, "{report:?}");
        assert_eq!(report.family_size, 8);

        let d3_110 = build_dn(&rats(&[1, 1, 0])).unwrap();
        let fam = family_two_trace(3);
        let report =
            verify_spanning_family(&fam, &d3_110, 3, &CodimOptions::default()).unwrap();
        assert!(report.pass, "{report:?}");
        assert_eq!(report.family_size, 14);

        // dropping a monomial fails on the size check
        let short = &fam[1..];
        let report =
            verify_spanning_family(short, &d3_110, 3, &CodimOptions::default()).unwrap();
        assert!(!report.pass);
    }

    #[test]
    fn ideal_comparison() {
        let d3_100 = build_dn(&rats(&[1, 0, 0])).unwrap();
        let d2_10 = build_dn(&rats(&[1, 0])).unwrap();
        for n in 1..=3 {
            assert!(ideals_equal_at_degree(&d3_100, &d2_10, n).unwrap());
        }
        let d2_11 = build_dn(&rats(&[1, 1])).unwrap();
        assert!(!ideals_equal_at_degree(&d2_11, &d2_10, 2).unwrap());
        // f2(1) separates: identity of D2^{1,0} but not of D2^{1,1}
        assert!(!contains_at_degree(&d2_11, &d2_10, 2).unwrap());
        assert!(contains_at_degree(&d2_10, &d2_10, 2).unwrap());
    }

    #[test]
    fn mn_codimension_small() {
        // M2 satisfies the multilinearized Cayley-Hamilton identity (f3 with
        // a = 1) already in degree 2, so the codimension drops to 5 there.
        let m2 = build_mn(2, &rat(1)).unwrap();
        assert_eq!(codimension(&m2, 1).unwrap(), 2);
        assert_eq!(codimension(&m2, 2).unwrap(), 5);
        let basis = identity_basis(&m2, 2).unwrap();
        assert_eq!(basis.dim(), 1);
        assert!(basis.contains_polynomial(&catalog("f3", &[rat(1)]).unwrap()));
    }
}
