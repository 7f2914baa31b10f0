//! Catalog of the named generator polynomials.
//!
//! Parameters are always concrete rationals; `g7` additionally takes the
//! factor count `k` and expands its product into 2^k terms.

use num_traits::One;
use thiserror::Error;

use super::{TraceMonomial, TracePolynomial};
use crate::rational::Rat;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown catalog polynomial `{0}`")]
    UnknownName(String),
    #[error("`{name}` expects {expected} parameter(s), got {got}")]
    WrongArity {
        name: String,
        expected: usize,
        got: usize,
    },
    #[error("`{name}` parameter {index} must be a positive integer")]
    BadParameter { name: String, index: usize },
}

fn mono(blocks: &[&[u32]], outside: &[u32]) -> TraceMonomial {
    TraceMonomial::new(blocks, outside).expect("catalog monomial data is valid")
}

fn term(blocks: &[&[u32]], outside: &[u32], c: Rat) -> TracePolynomial {
    TracePolynomial::term(mono(blocks, outside), c)
}

/// `f1 = [x1, x2]`.
pub fn f1() -> TracePolynomial {
    term(&[], &[1, 2], Rat::one()).sub(&term(&[], &[2, 1], Rat::one()))
}

/// `f2 = Tr(x1)Tr(x2) - a Tr(x1 x2)`.
pub fn f2(a: &Rat) -> TracePolynomial {
    term(&[&[1], &[2]], &[], Rat::one()).sub(&term(&[&[1, 2]], &[], a.clone()))
}

/// `f3 = Tr(x1)Tr(x2) + a^2 x1x2 + a^2 x2x1 - a Tr(x1)x2 - a Tr(x2)x1 - a Tr(x1 x2)`.
pub fn f3(a: &Rat) -> TracePolynomial {
    let a2 = a * a;
    term(&[&[1], &[2]], &[], Rat::one())
        .add(&term(&[], &[1, 2], a2.clone()))
        .add(&term(&[], &[2, 1], a2))
        .sub(&term(&[&[1]], &[2], a.clone()))
        .sub(&term(&[&[2]], &[1], a.clone()))
        .sub(&term(&[&[1, 2]], &[], a.clone()))
}

/// Degree-3 generator for the two-distinct-values diagonal trace.
pub fn f4(a: &Rat, b: &Rat) -> TracePolynomial {
    let s = a + b;
    term(&[&[1], &[2]], &[3], Rat::one())
        .sub(&term(&[&[1], &[2, 3]], &[], Rat::one()))
        .sub(&term(&[&[2], &[3]], &[1], Rat::one()))
        .add(&term(&[&[3], &[1, 2]], &[], Rat::one()))
        .sub(&term(&[&[1, 2]], &[3], s.clone()))
        .add(&term(&[&[2, 3]], &[1], s))
}

/// Degree-3 pure/mixed generator companion to `f4`.
pub fn f5(a: &Rat, b: &Rat) -> TracePolynomial {
    let s = a + b;
    let p = a * b;
    let q = a * a + a * b + b * b;
    let r = a * b * b.clone() + a * a * b.clone();
    term(&[&[1], &[2], &[3]], &[], Rat::one())
        .sub(&term(&[&[1], &[2, 3]], &[], s.clone()))
        .sub(&term(&[&[2], &[3]], &[1], s))
        .add(&term(&[&[1]], &[2, 3], p.clone()))
        .add(&term(&[&[2]], &[1, 3], p.clone()))
        .add(&term(&[&[3]], &[1, 2], p.clone()))
        .add(&term(&[&[1, 2, 3]], &[], p.clone()))
        .sub(&term(&[&[1, 2]], &[3], p.clone()))
        .sub(&term(&[&[1, 3]], &[2], p))
        .add(&term(&[&[2, 3]], &[1], q))
        .sub(&term(&[], &[1, 2, 3], r))
}

/// `g3 = Tr(x1)Tr(x2)Tr(x3) + 2a^2 Tr(x1x2x3) - a Tr(x1)Tr(x2x3)
///        - a Tr(x2)Tr(x1x3) - a Tr(x1x2)Tr(x3)`.
pub fn g3(a: &Rat) -> TracePolynomial {
    let a2 = a * a;
    term(&[&[1], &[2], &[3]], &[], Rat::one())
        .add(&term(&[&[1, 2, 3]], &[], &a2 + &a2))
        .sub(&term(&[&[1], &[2, 3]], &[], a.clone()))
        .sub(&term(&[&[2], &[1, 3]], &[], a.clone()))
        .sub(&term(&[&[3], &[1, 2]], &[], a.clone()))
}

/// Degree-4 pure trace generator, two 2-blocks.
pub fn g4(a: &Rat, b: &Rat) -> TracePolynomial {
    let s = a + b;
    term(&[&[1], &[2], &[3, 4]], &[], Rat::one())
        .sub(&term(&[&[1], &[4], &[2, 3]], &[], Rat::one()))
        .sub(&term(&[&[2], &[3], &[1, 4]], &[], Rat::one()))
        .add(&term(&[&[3], &[4], &[1, 2]], &[], Rat::one()))
        .sub(&term(&[&[1, 2], &[3, 4]], &[], s.clone()))
        .add(&term(&[&[1, 4], &[2, 3]], &[], s))
}

/// Degree-4 pure trace generator, four singleton blocks.
pub fn g5(a: &Rat, b: &Rat) -> TracePolynomial {
    let s = a + b;
    let p = a * b;
    let q = b * b + a * b + a * a;
    let r = a * b * b.clone() + a * a * b.clone();
    term(&[&[1], &[2], &[3], &[4]], &[], Rat::one())
        .sub(&term(&[&[1], &[4], &[2, 3]], &[], s.clone()))
        .sub(&term(&[&[2], &[3], &[1, 4]], &[], s))
        .add(&term(&[&[1], &[2, 3, 4]], &[], p.clone()))
        .add(&term(&[&[2], &[1, 3, 4]], &[], p.clone()))
        .add(&term(&[&[3], &[1, 2, 4]], &[], p.clone()))
        .add(&term(&[&[4], &[1, 2, 3]], &[], p.clone()))
        .sub(&term(&[&[1, 2], &[3, 4]], &[], p.clone()))
        .sub(&term(&[&[1, 3], &[2, 4]], &[], p))
        .add(&term(&[&[1, 4], &[2, 3]], &[], q))
        .sub(&term(&[&[1, 2, 3, 4]], &[], r))
}

/// `g6 = Tr(x1)Tr(x2) - a Tr(x1 x2)`, same shape as `f2`.
pub fn g6(a: &Rat) -> TracePolynomial {
    f2(a)
}

/// `g7 = (Tr(x1) - a x1) ... (Tr(xk) - a xk)`, expanded.
pub fn g7(a: &Rat, k: u32) -> TracePolynomial {
    let mut out = TracePolynomial::one();
    for i in 1..=k {
        let factor = term(&[&[i]], &[], Rat::one()).sub(&term(&[], &[i], a.clone()));
        out = out.mul(&factor);
    }
    out
}

/// Degree-3 generator for the strange trace with zero unit value.
pub fn h2() -> TracePolynomial {
    term(&[&[1], &[2]], &[3], Rat::one())
        .sub(&term(&[&[2], &[3]], &[1], Rat::one()))
        .add(&term(&[&[3], &[1, 2]], &[], Rat::one()))
        .sub(&term(&[&[1], &[2, 3]], &[], Rat::one()))
}

/// Degree-3 generator eliminating long trace blocks for strange traces.
pub fn h3() -> TracePolynomial {
    term(&[&[1, 2]], &[3], Rat::one())
        .neg()
        .sub(&term(&[&[1, 3]], &[2], Rat::one()))
        .sub(&term(&[&[2, 3]], &[1], Rat::one()))
        .add(&term(&[&[1, 2, 3]], &[], Rat::one()))
        .add(&term(&[&[1]], &[2, 3], Rat::one()))
        .add(&term(&[&[2]], &[1, 3], Rat::one()))
        .add(&term(&[&[3]], &[1, 2], Rat::one()))
}

/// `h4 = h2 - a Tr(x1x2)x3 + a Tr(x2x3)x1`.
pub fn h4(a: &Rat) -> TracePolynomial {
    h2().sub(&term(&[&[1, 2]], &[3], a.clone()))
        .add(&term(&[&[2, 3]], &[1], a.clone()))
}

/// `h5 = h3 - a x1x2x3`.
pub fn h5(a: &Rat) -> TracePolynomial {
    h3().sub(&term(&[], &[1, 2, 3], a.clone()))
}

pub fn catalog_names() -> &'static [&'static str] {
    &[
        "f1", "f2", "f3", "f4", "f5", "g3", "g4", "g5", "g6", "g7", "h2", "h3", "h4",
        "h5",
    ]
}

/// Look up a catalog polynomial by name. Parameter conventions: `f1`, `h2`,
/// `h3` take none; `f2`, `f3`, `g3`, `g6`, `h4`, `h5` take `(a)`;
/// `f4`, `f5`, `g4`, `g5` take `(a, b)`; `g7` takes `(a, k)` with `k` a
/// positive integer.
pub fn catalog(name: &str, params: &[Rat]) -> Result<TracePolynomial, CatalogError> {
    let arity = |expected: usize| -> Result<(), CatalogError> {
        if params.len() == expected {
            Ok(())
        } else {
            Err(CatalogError::WrongArity {
                name: name.to_string(),
                expected,
                got: params.len(),
            })
        }
    };
    match name {
        "f1" => {
            arity(0)?;
            Ok(f1())
        }
        "f2" => {
            arity(1)?;
            Ok(f2(&params[0]))
        }
        "f3" => {
            arity(1)?;
            Ok(f3(&params[0]))
        }
        "f4" => {
            arity(2)?;
            Ok(f4(&params[0], &params[1]))
        }
        "f5" => {
            arity(2)?;
            Ok(f5(&params[0], &params[1]))
        }
        "g3" => {
            arity(1)?;
            Ok(g3(&params[0]))
        }
        "g4" => {
            arity(2)?;
            Ok(g4(&params[0], &params[1]))
        }
        "g5" => {
            arity(2)?;
            Ok(g5(&params[0], &params[1]))
        }
        "g6" => {
            arity(1)?;
            Ok(g6(&params[0]))
        }
        "g7" => {
            arity(2)?;
            let k = &params[1];
            if !k.is_integer() || k.numer().sign() != num_bigint::Sign::Plus {
                return Err(CatalogError::BadParameter {
                    name: name.to_string(),
                    index: 1,
                });
            }
            let k: u32 = k.numer().try_into().map_err(|_| CatalogError::BadParameter {
                name: name.to_string(),
                index: 1,
            })?;
            Ok(g7(&params[0], k))
        }
        "h2" => {
            arity(0)?;
            Ok(h2())
        }
        "h3" => {
            arity(0)?;
            Ok(h3())
        }
        "h4" => {
            arity(1)?;
            Ok(h4(&params[0]))
        }
        "h5" => {
            arity(1)?;
            Ok(h5(&params[0]))
        }
        other => Err(CatalogError::UnknownName(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn displayed_forms() {
        assert_eq!(f1().to_string(), "1*x1*x2 - 1*x2*x1");
        assert_eq!(
            f2(&rat(1)).to_string(),
            "1*Tr(x1)*Tr(x2) - 1*Tr(x1*x2)"
        );
        // monomials print in canonical order: fewer blocks first
        assert_eq!(
            g7(&rat(1), 2).to_string(),
            "1*x1*x2 - 1*Tr(x1)*x2 + 1*Tr(x1)*Tr(x2) - 1*Tr(x2)*x1"
        );
    }

    #[test]
    fn dispatch_and_arity() {
        assert!(catalog("f1", &[]).is_ok());
        assert!(matches!(
            catalog("f2", &[]),
            Err(CatalogError::WrongArity { .. })
        ));
        assert!(matches!(
            catalog("nope", &[]),
            Err(CatalogError::UnknownName(_))
        ));
        assert!(matches!(
            catalog("g7", &[rat(1), rat(0)]),
            Err(CatalogError::BadParameter { .. })
        ));
        assert_eq!(catalog("g6", &[rat(2)]).unwrap(), f2(&rat(2)));
    }

    #[test]
    fn all_catalog_polynomials_are_multilinear_and_canonical() {
        let two = rat(2);
        let one = rat(1);
        let polys: Vec<(TracePolynomial, u32)> = vec![
            (f1(), 2),
            (f2(&one), 2),
            (f3(&two), 2),
            (f4(&one, &two), 3),
            (f5(&one, &two), 3),
            (g3(&two), 3),
            (g4(&one, &two), 4),
            (g5(&one, &two), 4),
            (g7(&one, 3), 3),
            (h2(), 3),
            (h3(), 3),
            (h4(&two), 3),
            (h5(&two), 3),
        ];
        for (p, n) in polys {
            assert_eq!(p.multilinear_degree(), Some(n), "{p}");
        }
    }

    #[test]
    fn g7_expands_to_power_of_two_terms() {
        for k in 1..=4u32 {
            assert_eq!(g7(&rat(1), k).num_terms(), 1usize << k);
        }
        // alpha = 0 collapses to the pure product of singleton traces
        assert_eq!(g7(&rat(0), 3).num_terms(), 1);
    }

    #[test]
    fn term_counts_match_displayed_forms() {
        assert_eq!(f3(&rat(1)).num_terms(), 6);
        assert_eq!(f4(&rat(1), &rat(2)).num_terms(), 6);
        assert_eq!(f5(&rat(1), &rat(2)).num_terms(), 11);
        assert_eq!(g3(&rat(1)).num_terms(), 5);
        assert_eq!(g4(&rat(1), &rat(2)).num_terms(), 6);
        assert_eq!(g5(&rat(1), &rat(2)).num_terms(), 11);
        assert_eq!(h2().num_terms(), 4);
        assert_eq!(h3().num_terms(), 7);
        assert_eq!(h4(&rat(1)).num_terms(), 6);
        assert_eq!(h5(&rat(1)).num_terms(), 8);
    }
}
