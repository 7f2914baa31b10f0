//! Enumeration of the multilinear monomial bases.
//!
//! General mode lists all (n+1)! canonical monomials of MT_n. The bijection
//! behind the count: a permutation of {0, 1, ..., n} decomposes into cycles;
//! cycles avoiding 0 become trace blocks, and the cycle through 0, read from
//! the position after 0, becomes the outside word.
//!
//! Commutative mode lists one representative per class under full
//! commutativity (blocks as sets, outside as a set); representatives are in
//! bijection with set partitions of {1, ..., n, *}, so there are Bell(n+1).

use std::collections::BTreeSet;

use itertools::Itertools;

use super::{PolyError, TraceMonomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MtMode {
    General,
    Commutative,
}

/// All canonical multilinear monomials in x1..xn, in deterministic
/// lexicographic (structural) order.
pub fn enumerate_mt(n: u32, mode: MtMode) -> Result<Vec<TraceMonomial>, PolyError> {
    if n == 0 {
        return Err(PolyError::DegreeZero);
    }
    match mode {
        MtMode::General => Ok(enumerate_general(n)),
        MtMode::Commutative => Ok(enumerate_commutative(n)),
    }
}

fn enumerate_general(n: u32) -> Vec<TraceMonomial> {
    let mut out = BTreeSet::new();
    let elements: Vec<u32> = (0..=n).collect();
    for perm in elements.iter().copied().permutations(n as usize + 1) {
        // perm[i] is the image of i
        let mut seen = vec![false; n as usize + 1];
        let mut blocks: Vec<Vec<u32>> = Vec::new();
        let mut outside: Vec<u32> = Vec::new();
        for start in 0..=n {
            if seen[start as usize] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x as usize] {
                seen[x as usize] = true;
                cycle.push(x);
                x = perm[x as usize];
            }
            if let Some(pos) = cycle.iter().position(|&v| v == 0) {
                outside = cycle[pos + 1..]
                    .iter()
                    .chain(cycle[..pos].iter())
                    .copied()
                    .collect();
            } else {
                blocks.push(cycle);
            }
        }
        let refs: Vec<&[u32]> = blocks.iter().map(|w| w.as_slice()).collect();
        out.insert(TraceMonomial::new(&refs, &outside).expect("valid monomial"));
    }
    let res: Vec<TraceMonomial> = out.into_iter().collect();
    debug_assert_eq!(res.len(), (1..=n as usize + 1).product::<usize>());
    res
}

fn enumerate_commutative(n: u32) -> Vec<TraceMonomial> {
    // Set partitions of {0, 1, ..., n} via restricted growth strings;
    // element 0 marks the outside block.
    let mut out = BTreeSet::new();
    let size = n as usize + 1;
    let mut rgs = vec![0usize; size];
    loop {
        let nblocks = rgs.iter().copied().max().unwrap() + 1;
        let mut groups: Vec<Vec<u32>> = vec![Vec::new(); nblocks];
        for (elem, &g) in rgs.iter().enumerate() {
            groups[g].push(elem as u32);
        }
        // group containing 0 is always group 0 in a restricted growth string
        let outside: Vec<u32> = groups[0][1..].to_vec();
        let blocks: Vec<&[u32]> = groups[1..].iter().map(|g| g.as_slice()).collect();
        out.insert(TraceMonomial::new(&blocks, &outside).expect("valid monomial"));

        // next restricted growth string
        let mut i = size;
        loop {
            if i == 1 {
                let res: Vec<TraceMonomial> = out.into_iter().collect();
                return res;
            }
            i -= 1;
            let cap = rgs[..i].iter().copied().max().unwrap() + 1;
            if rgs[i] < cap {
                rgs[i] += 1;
                for v in rgs[i + 1..].iter_mut() {
                    *v = 0;
                }
                break;
            }
        }
    }
}

/// Representative of a monomial's class under full commutativity: sort every
/// block's word and the outside word.
pub fn commutative_class_rep(m: &TraceMonomial) -> TraceMonomial {
    let blocks: Vec<Vec<u32>> = m
        .blocks()
        .iter()
        .map(|b| {
            let mut w = b.word().to_vec();
            w.sort_unstable();
            w
        })
        .collect();
    let refs: Vec<&[u32]> = blocks.iter().map(|w| w.as_slice()).collect();
    let mut outside = m.outside().to_vec();
    outside.sort_unstable();
    TraceMonomial::new(&refs, &outside).expect("class representative is canonical")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::TracePolynomial;

    fn factorial(n: usize) -> usize {
        (1..=n).product()
    }

    /// Bell numbers by the triangle recurrence, as an independent oracle.
    fn bell_triangle(n: usize) -> u64 {
        let mut row = vec![1u64];
        for _ in 0..n {
            let mut next = vec![*row.last().unwrap()];
            for v in &row {
                let last = *next.last().unwrap();
                next.push(last + v);
            }
            row = next;
        }
        row[0]
    }

    #[test]
    fn degree_zero_rejected() {
        assert_eq!(enumerate_mt(0, MtMode::General), Err(PolyError::DegreeZero));
    }

    #[test]
    fn general_counts() {
        for n in 1..=7u32 {
            let ms = enumerate_mt(n, MtMode::General).unwrap();
            assert_eq!(ms.len(), factorial(n as usize + 1), "n = {n}");
        }
    }

    #[test]
    fn commutative_counts_match_bell() {
        for n in 1..=8u32 {
            let ms = enumerate_mt(n, MtMode::Commutative).unwrap();
            assert_eq!(ms.len() as u64, bell_triangle(n as usize + 1), "n = {n}");
        }
    }

    #[test]
    fn small_bases() {
        let m1 = enumerate_mt(1, MtMode::General).unwrap();
        let strs: Vec<String> = m1.iter().map(|m| m.to_string()).collect();
        assert_eq!(strs, ["x1", "Tr(x1)"]);

        let m2 = enumerate_mt(2, MtMode::General).unwrap();
        assert_eq!(m2.len(), 6);
        let strs: Vec<String> = m2.iter().map(|m| m.to_string()).collect();
        for want in [
            "x1*x2",
            "x2*x1",
            "Tr(x1)*x2",
            "Tr(x2)*x1",
            "Tr(x1*x2)",
            "Tr(x1)*Tr(x2)",
        ] {
            assert!(strs.iter().any(|s| s == want), "missing {want}");
        }

        assert_eq!(enumerate_mt(3, MtMode::Commutative).unwrap().len(), 15);
    }

    #[test]
    fn commutative_mode_is_subset_of_general() {
        for n in 1..=4u32 {
            let general: BTreeSet<_> =
                enumerate_mt(n, MtMode::General).unwrap().into_iter().collect();
            for m in enumerate_mt(n, MtMode::Commutative).unwrap() {
                assert!(general.contains(&m));
                assert_eq!(commutative_class_rep(&m), m);
            }
        }
    }

    #[test]
    fn class_rep_is_idempotent_and_class_constant() {
        for m in enumerate_mt(4, MtMode::General).unwrap() {
            let rep = commutative_class_rep(&m);
            assert_eq!(commutative_class_rep(&rep), rep);
            assert_eq!(rep.trace_count(), m.trace_count());
            assert_eq!(rep.degree(), m.degree());
        }
    }

    #[test]
    fn monomials_are_multilinear() {
        for n in 1..=5u32 {
            for m in enumerate_mt(n, MtMode::General).unwrap() {
                assert!(m.is_multilinear_in(n));
                let p = TracePolynomial::monomial(m);
                assert_eq!(p.multilinear_degree(), Some(n));
            }
        }
    }
}
