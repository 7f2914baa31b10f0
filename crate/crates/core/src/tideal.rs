//! Degree-by-degree consequence spaces of finite generator sets, and
//! verification that stated generator sets produce exactly the multilinear
//! identities of an algebra in each degree.
//!
//! The degree-n consequence space of a generator set G is the span of the
//! following closure, run as a ladder over degrees d from the smallest
//! generator degree up to n:
//!
//!  (a) substitution instances f(m_1, ..., m_k), f in G of arity k, where the
//!      m_i are multilinear trace monomials on the blocks of an ordered set
//!      partition of {1..d} into k nonempty blocks;
//!  (b) left and right multiplication of span elements of degree d-1 by a
//!      fresh variable (inserted under every name, so the span stays closed
//!      under variable renaming);
//!  (c) trace wrapping: wrap(p * x_j) for degree-(d-1) span elements p, and
//!      wrap(p) for degree-d span elements p supported on monomials with
//!      nonempty outside word, iterated to a fixpoint.
//!
//! Substitution instances that would require a trace of the empty word (an
//! image that is a pure trace monomial filling an entire block) are skipped;
//! the empty-word trace is not modeled.
//!
//! Every step sends identities of any trace algebra to identities, so the
//! consequence space of a set of identities stays inside the identity space.
//! `verify_generators` exploits this: once the span inside the identity
//! space reaches the identity space's dimension, the two are equal and the
//! remaining candidates cannot add anything.

use std::collections::{BTreeMap, HashMap};
use std::ops::ControlFlow;

use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::TraceAlgebra;
use crate::codim::{
    self, CodimError, CodimOptions, MatrixMode, Subspace,
};
use crate::eval::{self, EvalError};
use crate::poly::{
    catalog, commutative_class_rep, enumerate_mt, MtMode, PolyError, TraceMonomial,
    TracePolynomial,
};
use crate::rational::Rat;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TidealError {
    #[error("generator set is empty")]
    EmptyGeneratorSet,
    #[error("generator `{0}` is not multilinear")]
    NotMultilinear(String),
    #[error("degree {n} is below the maximum generator degree {max}")]
    DegreeBelowGenerators { n: u32, max: u32 },
    #[error("transfer requires all trace values nonzero")]
    ZeroAlpha,
    #[error("transfer requires the commutator [x1,x2] among the generators")]
    MissingCommutator,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Codim(#[from] CodimError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

#[derive(Debug, Clone)]
pub struct Generator {
    pub label: String,
    pub poly: TracePolynomial,
    pub degree: u32,
}

/// A finite list of multilinear generators.
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    gens: Vec<Generator>,
}

impl GeneratorSet {
    pub fn new(gens: Vec<(String, TracePolynomial)>) -> Result<Self, TidealError> {
        if gens.is_empty() {
            return Err(TidealError::EmptyGeneratorSet);
        }
        let gens = gens
            .into_iter()
            .map(|(label, poly)| {
                let degree = poly
                    .multilinear_degree()
                    .ok_or_else(|| TidealError::NotMultilinear(label.clone()))?;
                Ok(Generator {
                    label,
                    poly,
                    degree,
                })
            })
            .collect::<Result<Vec<_>, TidealError>>()?;
        Ok(Self { gens })
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn labels(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.label.clone()).collect()
    }

    pub fn min_degree(&self) -> u32 {
        self.gens.iter().map(|g| g.degree).min().expect("nonempty")
    }

    pub fn max_degree(&self) -> u32 {
        self.gens.iter().map(|g| g.degree).max().expect("nonempty")
    }

    pub fn contains_commutator(&self) -> bool {
        let f1 = catalog("f1", &[]).expect("f1 exists");
        self.gens.iter().any(|g| g.poly == f1)
    }
}

/// Ambient basis for consequence spans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpanMode {
    /// Full MT_d, dimension (d+1)!.
    General,
    /// Commutative class representatives, dimension Bell(d+1). Sound for the
    /// completeness comparison only over commutative algebras with the
    /// commutator among the generators.
    Commutative,
}

fn ambient_mode(mode: SpanMode) -> MtMode {
    match mode {
        SpanMode::General => MtMode::General,
        SpanMode::Commutative => MtMode::Commutative,
    }
}

fn project(mode: SpanMode, p: &TracePolynomial) -> TracePolynomial {
    match mode {
        SpanMode::General => p.clone(),
        SpanMode::Commutative => {
            let mut out = TracePolynomial::zero();
            for (m, c) in p.terms() {
                out.add_term(commutative_class_rep(m), c.clone());
            }
            out
        }
    }
}

/// Emit the degree-d candidates of kinds (b), (c1), (a), in deterministic
/// order. Same-degree wraps (c2) are handled by the caller against the
/// evolving span.
fn degree_candidates(
    gens: &GeneratorSet,
    d: u32,
    prev_basis: Option<&[TracePolynomial]>,
    visit: &mut dyn FnMut(TracePolynomial) -> ControlFlow<()>,
) -> Result<ControlFlow<()>, TidealError> {
    // (b) + (c1): images of the previous degree under fresh-variable
    // multiplication and wrapping, with the fresh variable at every name.
    if let Some(basis) = prev_basis {
        for p in basis {
            for j in 1..=d {
                let rel = relabel_avoiding(p, d, j)?;
                let right = rel.mul_var(j, true);
                if visit(right.clone()).is_break() {
                    return Ok(ControlFlow::Break(()));
                }
                if visit(rel.mul_var(j, false)).is_break() {
                    return Ok(ControlFlow::Break(()));
                }
                if visit(right.wrap_trace()?).is_break() {
                    return Ok(ControlFlow::Break(()));
                }
            }
        }
    }
    // (a): substitution instances on ordered set partitions of {1..d}.
    let mut mono_cache: HashMap<usize, Vec<TraceMonomial>> = HashMap::new();
    for gen in gens.generators() {
        let k = gen.degree;
        if k > d {
            continue;
        }
        if substitution_instances(&gen.poly, k, d, &mut mono_cache, visit)?.is_break() {
            return Ok(ControlFlow::Break(()));
        }
    }
    Ok(ControlFlow::Continue(()))
}

/// Relabel a degree-(d-1) polynomial onto the variable set {1..d} \ {j},
/// preserving relative order.
fn relabel_avoiding(
    p: &TracePolynomial,
    d: u32,
    j: u32,
) -> Result<TracePolynomial, PolyError> {
    let targets: Vec<u32> = (1..=d).filter(|&v| v != j).collect();
    let mut out = TracePolynomial::zero();
    for (m, c) in p.terms() {
        out.add_term(m.relabel(|v| targets[v as usize - 1])?, c.clone());
    }
    Ok(out)
}

fn substitution_instances(
    f: &TracePolynomial,
    k: u32,
    d: u32,
    mono_cache: &mut HashMap<usize, Vec<TraceMonomial>>,
    visit: &mut dyn FnMut(TracePolynomial) -> ControlFlow<()>,
) -> Result<ControlFlow<()>, TidealError> {
    let total = (k as u64).checked_pow(d).expect("assignment count fits u64");
    'assignments: for code in 0..total {
        // decode the block assignment: variable v of {1..d} goes to block g[v]
        let mut g = vec![0u32; d as usize];
        let mut c = code;
        for slot in (0..d as usize).rev() {
            g[slot] = (c % k as u64) as u32;
            c /= k as u64;
        }
        let mut blocks: Vec<Vec<u32>> = vec![Vec::new(); k as usize];
        for (v, &b) in g.iter().enumerate() {
            blocks[b as usize].push(v as u32 + 1);
        }
        if blocks.iter().any(|b| b.is_empty()) {
            continue;
        }
        // per-block menus of multilinear monomials, relabeled onto the block
        let mut menus: Vec<Vec<TraceMonomial>> = Vec::with_capacity(k as usize);
        for b in &blocks {
            let plain = mono_cache.entry(b.len()).or_insert_with(|| {
                enumerate_mt(b.len() as u32, MtMode::General).expect("size >= 1")
            });
            let menu: Vec<TraceMonomial> = plain
                .iter()
                .map(|m| m.relabel(|v| b[v as usize - 1]).expect("relabel is valid"))
                .collect();
            menus.push(menu);
        }
        // odometer over image choices
        let mut choice = vec![0usize; k as usize];
        loop {
            let sigma: BTreeMap<u32, TraceMonomial> = choice
                .iter()
                .enumerate()
                .map(|(i, &ci)| (i as u32 + 1, menus[i][ci].clone()))
                .collect();
            match f.substitute_disjoint(&sigma) {
                Ok(instance) => {
                    if visit(instance).is_break() {
                        return Ok(ControlFlow::Break(()));
                    }
                }
                // a pure-trace image filled an entire block: Tr of the empty
                // word is not modeled, so this instance does not exist
                Err(PolyError::TraceOfScalar) => {}
                Err(e) => return Err(e.into()),
            }
            // advance
            let mut slot = k as usize;
            loop {
                if slot == 0 {
                    continue 'assignments;
                }
                slot -= 1;
                choice[slot] += 1;
                if choice[slot] < menus[slot].len() {
                    break;
                }
                choice[slot] = 0;
            }
        }
    }
    Ok(ControlFlow::Continue(()))
}

/// Members of the span supported entirely on monomials with nonempty outside
/// word (the domain of same-degree trace wrapping).
fn wrappable_members(space: &Subspace) -> Vec<TracePolynomial> {
    let pure_cols: Vec<usize> = space
        .ambient()
        .iter()
        .enumerate()
        .filter(|(_, m)| m.outside().is_empty())
        .map(|(i, _)| i)
        .collect();
    let basis = space.basis_polynomials();
    if basis.is_empty() {
        return Vec::new();
    }
    if pure_cols.is_empty() {
        return basis;
    }
    // combinations c with sum_i c_i * (basis_i | pure coords) = 0
    let rows = space.space().basis_rows_rat();
    let mut constraint = crate::linalg::RowSpace::new(rows.len());
    for &col in &pure_cols {
        let mut row = vec![Rat::from_integer(0.into()); rows.len()];
        let mut nonzero = false;
        for (i, r) in rows.iter().enumerate() {
            if let Some((_, x)) = r.iter().find(|(c, _)| *c as usize == col) {
                row[i] = x.clone();
                nonzero = true;
            }
        }
        if nonzero {
            constraint.insert_rat(&row);
        }
    }
    constraint
        .nullspace()
        .into_iter()
        .map(|combo| {
            let mut p = TracePolynomial::zero();
            for (i, coef) in combo {
                let c = Rat::from_integer(coef);
                for (m, x) in basis[i as usize].terms() {
                    p.add_term(m.clone(), x * &c);
                }
            }
            p
        })
        .collect()
}

struct DegreeOutcome {
    space: Subspace,
    /// All inserted vectors stayed inside the target identity span.
    inside_target: bool,
}

/// Insert one candidate. Returns true when the span just filled the target
/// (so remaining candidates cannot add anything).
fn insert_candidate(
    space: &mut Subspace,
    inside: &mut bool,
    target: Option<&Subspace>,
    mode: SpanMode,
    p: &TracePolynomial,
) -> bool {
    let projected = project(mode, p);
    if projected.is_zero() {
        return false;
    }
    let grew = space
        .insert_polynomial(&projected)
        .expect("candidates stay inside the ambient basis");
    if grew {
        if let Some(t) = target {
            if *inside && !t.contains_polynomial(&projected) {
                *inside = false;
            }
            if *inside && space.dim() == t.dim() {
                return true;
            }
        }
    }
    false
}

fn close_degree(
    gens: &GeneratorSet,
    d: u32,
    prev_basis: Option<&[TracePolynomial]>,
    mode: SpanMode,
    target: Option<&Subspace>,
) -> Result<DegreeOutcome, TidealError> {
    let ambient = enumerate_mt(d, ambient_mode(mode))?;
    let mut space = Subspace::new(ambient);
    let mut inside = true;

    let filled = {
        let space = &mut space;
        let inside = &mut inside;
        let mut visit = |p: TracePolynomial| -> ControlFlow<()> {
            if insert_candidate(space, inside, target, mode, &p) {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        };
        degree_candidates(gens, d, prev_basis, &mut visit)?.is_break()
    };

    if !filled {
        // (c2): same-degree wraps, iterated to a fixpoint
        'sweeps: loop {
            let before = space.dim();
            for p in wrappable_members(&space) {
                match p.wrap_trace() {
                    Ok(w) => {
                        if insert_candidate(&mut space, &mut inside, target, mode, &w) {
                            break 'sweeps;
                        }
                    }
                    Err(PolyError::TraceOfScalar) => {}
                    Err(e) => return Err(e.into()),
                }
            }
            if space.dim() == before {
                break;
            }
        }
    }
    Ok(DegreeOutcome {
        space,
        inside_target: inside,
    })
}

/// The ladder of consequence spans per degree.
pub struct ConsequenceLadder {
    pub mode: SpanMode,
    pub spans: BTreeMap<u32, Subspace>,
    inside_targets: bool,
}

fn run_ladder(
    gens: &GeneratorSet,
    max_n: u32,
    mode: SpanMode,
    targets: Option<&BTreeMap<u32, Subspace>>,
) -> Result<ConsequenceLadder, TidealError> {
    let min_deg = gens.min_degree();
    let mut spans = BTreeMap::new();
    let mut prev: Option<Vec<TracePolynomial>> = None;
    let mut inside_all = true;
    for d in min_deg..=max_n {
        let target = if inside_all {
            targets.and_then(|t| t.get(&d))
        } else {
            None
        };
        let outcome = close_degree(gens, d, prev.as_deref(), mode, target)?;
        inside_all &= outcome.inside_target;
        prev = Some(outcome.space.basis_polynomials());
        spans.insert(d, outcome.space);
    }
    Ok(ConsequenceLadder {
        mode,
        spans,
        inside_targets: inside_all,
    })
}

/// The span of all degree-n multilinear consequences of the generator set,
/// as a reduced subspace of MT_n (or of the commutative class basis).
pub fn consequence_space(
    gens: &GeneratorSet,
    n: u32,
    mode: SpanMode,
) -> Result<Subspace, TidealError> {
    if n < gens.max_degree() {
        return Err(TidealError::DegreeBelowGenerators {
            n,
            max: gens.max_degree(),
        });
    }
    let mut ladder = run_ladder(gens, n, mode, None)?;
    Ok(ladder.spans.remove(&n).expect("ladder reaches n"))
}

/// Full ladder without early exit, for stability checks and diagnostics.
pub fn consequence_ladder(
    gens: &GeneratorSet,
    n: u32,
    mode: SpanMode,
) -> Result<ConsequenceLadder, TidealError> {
    if n < gens.max_degree() {
        return Err(TidealError::DegreeBelowGenerators {
            n,
            max: gens.max_degree(),
        });
    }
    run_ladder(gens, n, mode, None)
}

impl ConsequenceLadder {
    /// One extra closure sweep over every degree; true when nothing grows.
    pub fn is_stable(&self, gens: &GeneratorSet) -> Result<bool, TidealError> {
        for (&d, span) in &self.spans {
            let prev_basis = self
                .spans
                .get(&(d.wrapping_sub(1)))
                .map(|s| s.basis_polynomials());
            let mut stable = true;
            let mut visit = |p: TracePolynomial| -> ControlFlow<()> {
                let projected = project(self.mode, &p);
                if !projected.is_zero() && !span.contains_polynomial(&projected) {
                    stable = false;
                    return ControlFlow::Break(());
                }
                ControlFlow::Continue(())
            };
            let _ = degree_candidates(gens, d, prev_basis.as_deref(), &mut visit)?;
            if !stable {
                return Ok(false);
            }
            for p in wrappable_members(span) {
                if let Ok(w) = p.wrap_trace() {
                    let projected = project(self.mode, &w);
                    if !projected.is_zero() && !span.contains_polynomial(&projected) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

/// `Tr(f(x1..xk) x_{k+1})`: the degree-raising transfer of a generator.
pub fn wrap_generator(f: &TracePolynomial) -> Result<TracePolynomial, TidealError> {
    let k = f
        .multilinear_degree()
        .ok_or_else(|| TidealError::NotMultilinear(f.to_string()))?;
    Ok(f.mul_var(k + 1, true).wrap_trace()?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyRow {
    pub n: u32,
    pub dim_consequences: usize,
    pub dim_identities: usize,
    pub sound: bool,
    pub complete: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyGeneratorsReport {
    pub algebra: String,
    pub generators: Vec<String>,
    pub max_n: u32,
    pub commutative_mode: bool,
    pub rows: Vec<VerifyRow>,
}

impl VerifyGeneratorsReport {
    pub fn pass(&self) -> bool {
        self.rows.iter().all(|r| r.sound && r.complete)
    }

    pub fn first_failure(&self) -> Option<u32> {
        self.rows.iter().find(|r| !(r.sound && r.complete)).map(|r| r.n)
    }
}

/// Check, for every degree up to max_n, that the consequence space of the
/// generators (i) consists of identities of the algebra and (ii) has the same
/// dimension as the identity space. Uses the commutative class collapse when
/// the algebra is commutative and the commutator is among the generators
/// (the verdict is unchanged: the commutator consequences span the kernel of
/// the class projection on both sides of the comparison).
pub fn verify_generators(
    gens: &GeneratorSet,
    alg: &TraceAlgebra,
    max_n: u32,
    row_cap: usize,
) -> Result<VerifyGeneratorsReport, TidealError> {
    let commutative = alg.is_commutative() && gens.contains_commutator();
    let mode = if commutative {
        SpanMode::Commutative
    } else {
        SpanMode::General
    };
    verify_generators_in_mode(gens, alg, max_n, row_cap, mode)
}

/// `verify_generators` with the ambient mode pinned. Commutative mode is
/// rejected unless the algebra is commutative and the generators include the
/// commutator.
pub fn verify_generators_in_mode(
    gens: &GeneratorSet,
    alg: &TraceAlgebra,
    max_n: u32,
    row_cap: usize,
    mode: SpanMode,
) -> Result<VerifyGeneratorsReport, TidealError> {
    if max_n < gens.max_degree() {
        return Err(TidealError::DegreeBelowGenerators {
            n: max_n,
            max: gens.max_degree(),
        });
    }
    let commutative = match mode {
        SpanMode::Commutative => {
            if !alg.is_commutative() {
                return Err(TidealError::Codim(CodimError::NotCommutative(
                    alg.label().to_string(),
                )));
            }
            if !gens.contains_commutator() {
                return Err(TidealError::MissingCommutator);
            }
            true
        }
        SpanMode::General => false,
    };
    let min_deg = gens.min_degree();

    let mut targets: BTreeMap<u32, Subspace> = BTreeMap::new();
    for d in min_deg..=max_n {
        let basis = if commutative {
            codim::identity_basis_commutative(alg, d, row_cap)?
        } else {
            codim::identity_basis_with(alg, d, row_cap)?
        };
        targets.insert(d, basis);
    }

    // Every closure step maps identities to identities, so when all the
    // generators are identities the span can never leave the identity space
    // and filling its dimension ends the search. Otherwise run the full
    // fixpoint without shortcuts.
    let mut gens_are_identities = true;
    for g in gens.generators() {
        if !eval::is_identity(&g.poly, alg)?.holds() {
            gens_are_identities = false;
            break;
        }
    }

    let ladder = run_ladder(
        gens,
        max_n,
        mode,
        gens_are_identities.then_some(&targets),
    )?;

    let opts = CodimOptions {
        mode: if commutative {
            MatrixMode::Commutative
        } else {
            MatrixMode::General
        },
        row_cap,
    };
    let mut rows = Vec::new();
    for d in 1..=max_n {
        if d < min_deg {
            let result = codim::codimension_with(alg, d, &opts)?;
            let dim_id = result.rows - result.codim;
            rows.push(VerifyRow {
                n: d,
                dim_consequences: 0,
                dim_identities: dim_id,
                sound: true,
                complete: dim_id == 0,
            });
            continue;
        }
        let span = &ladder.spans[&d];
        let dim_id = targets[&d].dim();
        let sound = if gens_are_identities && ladder.inside_targets {
            true
        } else {
            span.basis_polynomials()
                .par_iter()
                .all(|p| {
                    eval::is_identity(p, alg)
                        .map(|v| v.holds())
                        .unwrap_or(false)
                })
        };
        rows.push(VerifyRow {
            n: d,
            dim_consequences: span.dim(),
            dim_identities: dim_id,
            sound,
            complete: span.dim() == dim_id,
        });
    }
    Ok(VerifyGeneratorsReport {
        algebra: alg.label().to_string(),
        generators: gens.labels(),
        max_n,
        commutative_mode: commutative,
        rows,
    })
}

/// Double-check soundness by direct evaluation: every basis vector of every
/// degree span passes `is_identity`. Slower than the containment argument
/// used inside `verify_generators`; intended for tests.
pub fn soundness_by_evaluation(
    gens: &GeneratorSet,
    alg: &TraceAlgebra,
    max_n: u32,
    mode: SpanMode,
) -> Result<bool, TidealError> {
    let ladder = run_ladder(gens, max_n, mode, None)?;
    for span in ladder.spans.values() {
        let ok = span
            .basis_polynomials()
            .par_iter()
            .all(|p| {
                eval::is_identity(p, alg)
                    .map(|v| v.holds())
                    .unwrap_or(false)
            });
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferReport {
    pub wrapped: Vec<String>,
    pub report: VerifyGeneratorsReport,
}

/// Given generators of the identities of a diagonal algebra with all trace
/// values nonzero, wrap every non-commutator generator and verify the result
/// against the one-larger diagonal algebra whose extra trace value is zero.
pub fn verify_transfer(
    gens: &GeneratorSet,
    alphas: &[Rat],
    max_n: u32,
    row_cap: usize,
) -> Result<TransferReport, TidealError> {
    use num_traits::Zero;
    if alphas.iter().any(|a| a.is_zero()) {
        return Err(TidealError::ZeroAlpha);
    }
    if !gens.contains_commutator() {
        return Err(TidealError::MissingCommutator);
    }
    let f1 = catalog("f1", &[]).expect("f1 exists");
    let mut wrapped_gens: Vec<(String, TracePolynomial)> = Vec::new();
    let mut wrapped_labels = Vec::new();
    for g in gens.generators() {
        if g.poly == f1 {
            wrapped_gens.push((g.label.clone(), g.poly.clone()));
        } else {
            let w = wrap_generator(&g.poly)?;
            wrapped_labels.push(format!("Tr({} * x{})", g.label, g.degree + 1));
            wrapped_gens.push((format!("wrap({})", g.label), w));
        }
    }
    let mut trace = alphas.to_vec();
    trace.push(Rat::from_integer(0.into()));
    let algebra = crate::algebra::build_dn(&trace).expect("nonempty trace vector");
    let report = verify_generators(&GeneratorSet::new(wrapped_gens)?, &algebra, max_n, row_cap)?;
    Ok(TransferReport {
        wrapped: wrapped_labels,
        report,
    })
}
