//! Evaluation of multilinear trace polynomials on algebra elements, and
//! identity checking over basis tuples.

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{AlgebraElement, TraceAlgebra};
use crate::poly::{TraceMonomial, TracePolynomial};
use crate::rational::Rat;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("assignment does not cover variable x{0}")]
    MissingVariable(u32),
    #[error("assignment mixes elements of different algebras")]
    AlgebraMismatch,
    #[error("polynomial is not multilinear in x1..xn")]
    NotMultilinear,
}

/// A substitution of algebra elements for variables.
pub struct Assignment<'a> {
    algebra: &'a TraceAlgebra,
    values: BTreeMap<u32, Vec<Rat>>,
}

impl<'a> Assignment<'a> {
    pub fn new(algebra: &'a TraceAlgebra) -> Self {
        Self {
            algebra,
            values: BTreeMap::new(),
        }
    }

    pub fn set(mut self, var: u32, element: &AlgebraElement<'a>) -> Result<Self, EvalError> {
        if !std::ptr::eq(self.algebra, element.algebra()) {
            return Err(EvalError::AlgebraMismatch);
        }
        self.values.insert(var, element.coords().to_vec());
        Ok(self)
    }

    pub fn set_coords(mut self, var: u32, coords: Vec<Rat>) -> Self {
        self.values.insert(var, coords);
        self
    }

    pub fn algebra(&self) -> &'a TraceAlgebra {
        self.algebra
    }

    fn coords_of(&self, var: u32) -> Result<&[Rat], EvalError> {
        self.values
            .get(&var)
            .map(|v| v.as_slice())
            .ok_or(EvalError::MissingVariable(var))
    }
}

fn word_product(alg: &TraceAlgebra, asg: &Assignment<'_>, word: &[u32]) -> Result<Vec<Rat>, EvalError> {
    let mut out = asg.coords_of(word[0])?.to_vec();
    for v in &word[1..] {
        out = alg.mul_vec(&out, asg.coords_of(*v)?);
    }
    Ok(out)
}

fn eval_monomial(
    alg: &TraceAlgebra,
    asg: &Assignment<'_>,
    m: &TraceMonomial,
) -> Result<Vec<Rat>, EvalError> {
    let mut scalar = Rat::from_integer(1.into());
    for block in m.blocks() {
        let prod = word_product(alg, asg, block.word())?;
        scalar *= alg.trace_of_vec(&prod);
        if scalar.is_zero() {
            // still touch the remaining variables so missing ones error out
            for b in m.blocks() {
                for v in b.word() {
                    asg.coords_of(*v)?;
                }
            }
            for v in m.outside() {
                asg.coords_of(*v)?;
            }
            return Ok(vec![Rat::zero(); alg.dim()]);
        }
    }
    let base = if m.outside().is_empty() {
        alg.unit_coords().to_vec()
    } else {
        word_product(alg, asg, m.outside())?
    };
    Ok(base.into_iter().map(|x| x * &scalar).collect())
}

/// Evaluate a polynomial: each trace block contributes the scalar trace of
/// the product of its elements, scalars multiply the product of the outside
/// word (the unit when the outside word is empty), terms sum with their
/// coefficients.
pub fn evaluate<'a>(
    p: &TracePolynomial,
    asg: &Assignment<'a>,
) -> Result<AlgebraElement<'a>, EvalError> {
    let alg = asg.algebra;
    let mut out = vec![Rat::zero(); alg.dim()];
    for (m, c) in p.terms() {
        let v = eval_monomial(alg, asg, m)?;
        for (o, x) in out.iter_mut().zip(v) {
            if !x.is_zero() {
                *o += x * c;
            }
        }
    }
    Ok(alg
        .element(out)
        .expect("evaluation produces a coordinate vector of the right length"))
}

/// Outcome of an identity check; the witness is the lexicographically first
/// failing basis tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdentityCheck {
    Holds,
    Fails { witness: Vec<usize> },
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        matches!(self, IdentityCheck::Holds)
    }
}

fn decode_tuple(mut index: usize, n: usize, dim: usize) -> Vec<usize> {
    let mut tuple = vec![0usize; n];
    for slot in (0..n).rev() {
        tuple[slot] = index % dim;
        index /= dim;
    }
    tuple
}

/// Decide whether a multilinear polynomial vanishes on every basis tuple
/// (sufficient in characteristic zero by multilinearity). Tuples are searched
/// in parallel but the reported witness is always the lexicographically
/// first failure.
pub fn is_identity(p: &TracePolynomial, alg: &TraceAlgebra) -> Result<IdentityCheck, EvalError> {
    let n = p.multilinear_degree().ok_or(EvalError::NotMultilinear)? as usize;
    let total = alg.dim().checked_pow(n as u32).expect("tuple count fits usize");
    let failure = (0..total).into_par_iter().find_first(|&idx| {
        let tuple = decode_tuple(idx, n, alg.dim());
        let mut asg = Assignment::new(alg);
        for (slot, &b) in tuple.iter().enumerate() {
            asg = asg.set_coords(slot as u32 + 1, {
                let mut coords = vec![Rat::zero(); alg.dim()];
                coords[b] = Rat::from_integer(1.into());
                coords
            });
        }
        let value = evaluate(p, &asg).expect("basis assignment covers all variables");
        !value.is_zero()
    });
    Ok(match failure {
        None => IdentityCheck::Holds,
        Some(idx) => IdentityCheck::Fails {
            witness: decode_tuple(idx, n, alg.dim()),
        },
    })
}
