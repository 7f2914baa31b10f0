//! Exact combinatorics: Stirling and Bell numbers, binomials, the closed-form
//! codimension expressions, and the trace-monomial counting identity.
//!
//! All integer arithmetic is arbitrary precision; formula values of size
//! 3^15 and beyond must stay exact.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::poly::{enumerate_mt, MtMode};
use crate::rational::Rat;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CombError {
    #[error("k = {k} exceeds n = {n}")]
    KExceedsN { n: u32, k: u32 },
    #[error("unknown closed-form tag `{0}`")]
    UnknownTag(String),
}

/// Stirling number of the second kind, by the standard recurrence
/// S(n, k) = k S(n-1, k) + S(n-1, k-1).
pub fn stirling2(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    if n == 0 {
        return BigInt::one(); // S(0, 0)
    }
    if k == 0 {
        return BigInt::zero();
    }
    let mut row: Vec<BigInt> = vec![BigInt::one()]; // S(0, 0..=0)
    for m in 1..=n {
        let mut next = vec![BigInt::zero(); m as usize + 1];
        for j in 1..=m as usize {
            let prev_j = row.get(j).cloned().unwrap_or_else(BigInt::zero);
            next[j] = BigInt::from(j) * prev_j + &row[j - 1];
        }
        row = next;
    }
    row[k as usize].clone()
}

/// The explicit alternating sum for S(n, k); exact rationals internally and
/// integrality asserted. Kept as an independent route for cross-checking the
/// recurrence.
pub fn stirling2_explicit(n: u32, k: u32) -> BigInt {
    let mut sum = BigInt::zero();
    for i in 0..=k {
        let term = binomial(k, i) * BigInt::from(i).pow(n);
        if (k - i) % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let value = Rat::new(sum, factorial(k));
    assert!(value.is_integer(), "explicit Stirling sum must be integral");
    value.to_integer()
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k.min(n - k) {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

pub fn bell(n: u32) -> BigInt {
    (0..=n).map(|k| stirling2(n, k)).sum()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StirlingIdentityReport {
    pub max_n: u32,
    pub failures: Vec<(u32, u32)>,
}

impl StirlingIdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Verify S(n+1, k+1) = sum_{t=k}^{n} C(n, t) S(t, k) exactly for all
/// 0 <= k <= n <= max_n.
pub fn stirling_identity_check(max_n: u32) -> StirlingIdentityReport {
    let mut failures = Vec::new();
    for n in 0..=max_n {
        for k in 0..=n {
            let lhs = stirling2(n + 1, k + 1);
            let rhs: BigInt = (k..=n).map(|t| binomial(n, t) * stirling2(t, k)).sum();
            if lhs != rhs {
                failures.push((n, k));
            }
        }
    }
    StirlingIdentityReport { max_n, failures }
}

/// Number of commutative-mode monomials in x1..xn with exactly k trace
/// blocks, counted by direct enumeration.
pub fn count_trace_monomials(n: u32, k: u32) -> Result<usize, CombError> {
    if k > n {
        return Err(CombError::KExceedsN { n, k });
    }
    let monos = enumerate_mt(n, MtMode::Commutative).expect("n >= 1");
    Ok(monos
        .iter()
        .filter(|m| m.trace_count() == k as usize)
        .count())
}

/// Symbolic tags for the closed-form codimension expressions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedFormTag {
    /// 2^n
    D2A0,
    /// 2^n
    D2AA,
    /// 2^{n+1} - n - 1
    D2AB,
    /// 2^n
    DnA00,
    /// (3^n + 1) / 2
    D3AA0,
    /// (3^n + 3^{n-1} n - 2^n n + n + 1) / 2
    D3AB0,
    /// 2^{n+1} - n - 1
    C201,
    /// 2^{n+1} - n - 1
    C2A1,
    /// sum_{i=0}^{k-1} C(n, i)
    CkA0 { k: u32 },
}

impl ClosedFormTag {
    pub fn parse(text: &str) -> Result<Self, CombError> {
        Ok(match text {
            "d2_a0" => Self::D2A0,
            "d2_aa" => Self::D2AA,
            "d2_ab" => Self::D2AB,
            "dn_a00" => Self::DnA00,
            "d3_aa0" => Self::D3AA0,
            "d3_ab0" => Self::D3AB0,
            "c2_01" => Self::C201,
            "c2_a1" => Self::C2A1,
            other => {
                if let Some(k) = other
                    .strip_prefix("ck_a0:")
                    .and_then(|s| s.parse::<u32>().ok())
                {
                    if k >= 1 {
                        return Ok(Self::CkA0 { k });
                    }
                }
                return Err(CombError::UnknownTag(other.to_string()));
            }
        })
    }

    pub fn name(&self) -> String {
        match self {
            Self::D2A0 => "d2_a0".into(),
            Self::D2AA => "d2_aa".into(),
            Self::D2AB => "d2_ab".into(),
            Self::DnA00 => "dn_a00".into(),
            Self::D3AA0 => "d3_aa0".into(),
            Self::D3AB0 => "d3_ab0".into(),
            Self::C201 => "c2_01".into(),
            Self::C2A1 => "c2_a1".into(),
            Self::CkA0 { k } => format!("ck_a0:{k}"),
        }
    }
}

/// Evaluate a closed-form codimension expression at degree n >= 1.
pub fn closed_form(tag: ClosedFormTag, n: u32) -> Rat {
    assert!(n >= 1, "closed forms are defined for n >= 1");
    let two_n = BigInt::from(2).pow(n);
    match tag {
        ClosedFormTag::D2A0 | ClosedFormTag::D2AA | ClosedFormTag::DnA00 => {
            Rat::from_integer(two_n)
        }
        ClosedFormTag::D2AB | ClosedFormTag::C201 | ClosedFormTag::C2A1 => {
            Rat::from_integer(BigInt::from(2).pow(n + 1) - BigInt::from(n) - 1)
        }
        ClosedFormTag::D3AA0 => Rat::new(BigInt::from(3).pow(n) + 1, BigInt::from(2)),
        ClosedFormTag::D3AB0 => {
            let three_n = BigInt::from(3).pow(n);
            let three_n1 = BigInt::from(3).pow(n - 1);
            let nn = BigInt::from(n);
            Rat::new(
                three_n + three_n1 * &nn - two_n * &nn + &nn + 1,
                BigInt::from(2),
            )
        }
        ClosedFormTag::CkA0 { k } => {
            Rat::from_integer((0..k).map(|i| binomial(n, i)).sum())
        }
    }
}
