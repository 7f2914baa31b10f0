//! Finite-dimensional algebras with trace, given by structure constants.
//!
//! An algebra is a dense d x d x d array of exact rationals (mul[i][j][k] is
//! coordinate k of basis_i * basis_j), a unit vector, and a trace functional
//! given by its values on the basis. Every builder validates associativity,
//! the two-sided unit, and trace symmetry eagerly; algebras loaded from files
//! are validated and rejected on failure.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg;
use crate::rational::{format_rat, parse_rat, rat, Rat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("dimension must be at least 1")]
    EmptyDimension,
    #[error("coordinate vector has length {got}, algebra has dimension {dim}")]
    DimensionMismatch { dim: usize, got: usize },
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("algebra data is invalid: {0}")]
    Invalid(Violation),
    #[error("malformed algebra file: {0}")]
    Malformed(String),
}

/// First violated axiom found by `validate`, with its witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Violation {
    Associativity { i: usize, j: usize, k: usize },
    UnitLeft { i: usize },
    UnitRight { i: usize },
    TraceSymmetry { i: usize, j: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Associativity { i, j, k } => {
                write!(f, "associativity fails on basis triple ({i}, {j}, {k})")
            }
            Violation::UnitLeft { i } => write!(f, "unit * basis_{i} != basis_{i}"),
            Violation::UnitRight { i } => write!(f, "basis_{i} * unit != basis_{i}"),
            Violation::TraceSymmetry { i, j } => {
                write!(f, "trace(basis_{i} * basis_{j}) != trace(basis_{j} * basis_{i})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violation: Option<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violation.is_none()
    }
}

/// A finite-dimensional unital algebra with a trace functional.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceAlgebra {
    dim: usize,
    mul: Vec<Vec<Vec<Rat>>>,
    unit: Vec<Rat>,
    trace: Vec<Rat>,
    labels: Vec<String>,
    label: String,
}

impl TraceAlgebra {
    /// Assemble from raw data without validating. Used by builders (which
    /// validate immediately afterwards) and by tests that need broken data.
    pub fn from_raw(
        mul: Vec<Vec<Vec<Rat>>>,
        unit: Vec<Rat>,
        trace: Vec<Rat>,
        labels: Vec<String>,
        label: String,
    ) -> Result<Self, AlgebraError> {
        let dim = unit.len();
        if dim == 0 {
            return Err(AlgebraError::EmptyDimension);
        }
        let shape_ok = mul.len() == dim
            && mul.iter().all(|row| {
                row.len() == dim && row.iter().all(|v| v.len() == dim)
            })
            && trace.len() == dim
            && labels.len() == dim;
        if !shape_ok {
            return Err(AlgebraError::Malformed(
                "structure constant array shape does not match the dimension".into(),
            ));
        }
        Ok(Self {
            dim,
            mul,
            unit,
            trace,
            labels,
            label,
        })
    }

    /// Validated construction; rejects data violating the axioms.
    pub fn checked(
        mul: Vec<Vec<Vec<Rat>>>,
        unit: Vec<Rat>,
        trace: Vec<Rat>,
        labels: Vec<String>,
        label: String,
    ) -> Result<Self, AlgebraError> {
        let alg = Self::from_raw(mul, unit, trace, labels, label)?;
        match alg.validate().violation {
            None => Ok(alg),
            Some(v) => Err(AlgebraError::Invalid(v)),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn basis_label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn unit_coords(&self) -> &[Rat] {
        &self.unit
    }

    pub fn trace_coords(&self) -> &[Rat] {
        &self.trace
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Rat {
        &self.mul[i][j][k]
    }

    /// Checks associativity on all basis triples, the two-sided unit, and
    /// trace symmetry on all basis pairs; reports the first violation in
    /// deterministic order.
    pub fn validate(&self) -> ValidationReport {
        let d = self.dim;
        for i in 0..d {
            for j in 0..d {
                let ij = &self.mul[i][j];
                for k in 0..d {
                    // (b_i b_j) b_k vs b_i (b_j b_k)
                    let left = self.vec_times_basis(ij, k);
                    let right = self.basis_times_vec(i, &self.mul[j][k]);
                    if left != right {
                        return ValidationReport {
                            violation: Some(Violation::Associativity { i, j, k }),
                        };
                    }
                }
            }
        }
        for i in 0..d {
            let mut basis = vec![Rat::zero(); d];
            basis[i] = Rat::one();
            if self.mul_vec(&self.unit, &basis) != basis {
                return ValidationReport {
                    violation: Some(Violation::UnitLeft { i }),
                };
            }
            if self.mul_vec(&basis, &self.unit) != basis {
                return ValidationReport {
                    violation: Some(Violation::UnitRight { i }),
                };
            }
        }
        for i in 0..d {
            for j in 0..d {
                if self.trace_of_vec(&self.mul[i][j]) != self.trace_of_vec(&self.mul[j][i]) {
                    return ValidationReport {
                        violation: Some(Violation::TraceSymmetry { i, j }),
                    };
                }
            }
        }
        ValidationReport { violation: None }
    }

    /// c[i][j] == c[j][i] for all pairs; the gate for the commutative fast
    /// paths. Uses the given presentation only.
    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (i + 1..self.dim).all(|j| self.mul[i][j] == self.mul[j][i]))
    }

    pub fn vec_times_basis(&self, v: &[Rat], j: usize) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (k, c) in self.mul[i][j].iter().enumerate() {
                if !c.is_zero() {
                    out[k] += vi * c;
                }
            }
        }
        out
    }

    pub fn basis_times_vec(&self, i: usize, v: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim];
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            for (k, c) in self.mul[i][j].iter().enumerate() {
                if !c.is_zero() {
                    out[k] += vj * c;
                }
            }
        }
        out
    }

    /// Bilinear extension of the structure constants.
    pub fn mul_vec(&self, a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let scale = ai * bj;
                for (k, c) in self.mul[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &scale * c;
                    }
                }
            }
        }
        out
    }

    /// Product of basis elements in the given order.
    pub fn basis_product(&self, seq: &[usize]) -> Vec<Rat> {
        assert!(!seq.is_empty());
        let mut v = vec![Rat::zero(); self.dim];
        v[seq[0]] = Rat::one();
        for &j in &seq[1..] {
            v = self.vec_times_basis(&v, j);
        }
        v
    }

    pub fn trace_of_vec(&self, v: &[Rat]) -> Rat {
        self.trace
            .iter()
            .zip(v)
            .filter(|(t, x)| !t.is_zero() && !x.is_zero())
            .map(|(t, x)| t * x)
            .fold(Rat::zero(), |acc, x| acc + x)
    }

    pub fn element(&self, coords: Vec<Rat>) -> Result<AlgebraElement<'_>, AlgebraError> {
        if coords.len() != self.dim {
            return Err(AlgebraError::DimensionMismatch {
                dim: self.dim,
                got: coords.len(),
            });
        }
        Ok(AlgebraElement {
            algebra: self,
            coords,
        })
    }

    pub fn basis_element(&self, i: usize) -> AlgebraElement<'_> {
        let mut coords = vec![Rat::zero(); self.dim];
        coords[i] = Rat::one();
        AlgebraElement {
            algebra: self,
            coords,
        }
    }

    pub fn unit_element(&self) -> AlgebraElement<'_> {
        AlgebraElement {
            algebra: self,
            coords: self.unit.clone(),
        }
    }

    /// Gram matrix nullspace witness of trace degeneracy: the first basis
    /// vector of { a : trace(a b) = 0 for all b } under the deterministic
    /// elimination order, or None when the form is nondegenerate.
    pub fn degeneracy_witness(&self) -> Option<Vec<Rat>> {
        let gram: Vec<Vec<Rat>> = (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| self.trace_of_vec(&self.mul[i][j]))
                    .collect()
            })
            .collect();
        linalg::nullspace_rat_rows(self.dim, gram).into_iter().next()
    }

    pub fn is_degenerate(&self) -> bool {
        self.degeneracy_witness().is_some()
    }

    /// Basis of the space of all trace functionals on the algebra: solutions
    /// t of t(ab - ba) = 0 over all basis pairs. Ignores the stored trace.
    pub fn trace_space(&self) -> Vec<Vec<Rat>> {
        let mut rows = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let row: Vec<Rat> = (0..self.dim)
                    .map(|k| &self.mul[i][j][k] - &self.mul[j][i][k])
                    .collect();
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
        linalg::nullspace_rat_rows(self.dim, rows)
    }
}

/// An element in coordinates with respect to its algebra's basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement<'a> {
    algebra: &'a TraceAlgebra,
    coords: Vec<Rat>,
}

impl<'a> AlgebraElement<'a> {
    pub fn algebra(&self) -> &'a TraceAlgebra {
        self.algebra
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, other: &AlgebraElement<'a>) -> Result<AlgebraElement<'a>, AlgebraError> {
        if !std::ptr::eq(self.algebra, other.algebra) {
            return Err(AlgebraError::AlgebraMismatch);
        }
        Ok(AlgebraElement {
            algebra: self.algebra,
            coords: self.algebra.mul_vec(&self.coords, &other.coords),
        })
    }

    pub fn add(&self, other: &AlgebraElement<'a>) -> Result<AlgebraElement<'a>, AlgebraError> {
        if !std::ptr::eq(self.algebra, other.algebra) {
            return Err(AlgebraError::AlgebraMismatch);
        }
        Ok(AlgebraElement {
            algebra: self.algebra,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &Rat) -> AlgebraElement<'a> {
        AlgebraElement {
            algebra: self.algebra,
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    pub fn trace(&self) -> Rat {
        self.algebra.trace_of_vec(&self.coords)
    }
}

fn fresh_label(prefix: &str, trace: &[Rat]) -> String {
    let ts: Vec<String> = trace.iter().map(format_rat).collect();
    format!("{prefix}^t_{{{}}}", ts.join(","))
}

/// Diagonal n x n matrices with trace(e_ii) = alphas[i-1].
pub fn build_dn(alphas: &[Rat]) -> Result<TraceAlgebra, AlgebraError> {
    if alphas.is_empty() {
        return Err(AlgebraError::EmptyDimension);
    }
    let d = alphas.len();
    let mut mul = vec![vec![vec![Rat::zero(); d]; d]; d];
    for (i, row) in mul.iter_mut().enumerate() {
        row[i][i] = Rat::one();
    }
    let unit = vec![Rat::one(); d];
    let labels = (1..=d).map(|i| format!("e{i}{i}")).collect();
    let alg = TraceAlgebra::from_raw(
        mul,
        unit,
        alphas.to_vec(),
        labels,
        fresh_label(&format!("D{d}"), alphas),
    )?;
    debug_assert!(alg.validate().is_ok());
    Ok(alg)
}

/// The two-dimensional algebra F[j]/(j^2) with the strange trace
/// t(a + bj) = alpha a + beta b.
pub fn build_c2(alpha: &Rat, beta: &Rat) -> TraceAlgebra {
    let mut alg = build_ck_degenerate(2, alpha).expect("k = 2 is valid");
    alg.trace[1] = beta.clone();
    alg.label = fresh_label("C2", &[alpha.clone(), beta.clone()]);
    debug_assert!(alg.validate().is_ok());
    alg
}

/// Truncated polynomial algebra F[j]/(j^k) with trace alpha on the unit and
/// zero on the radical.
pub fn build_ck_degenerate(k: usize, alpha: &Rat) -> Result<TraceAlgebra, AlgebraError> {
    if k < 1 {
        return Err(AlgebraError::EmptyDimension);
    }
    let mut mul = vec![vec![vec![Rat::zero(); k]; k]; k];
    for i in 0..k {
        for j in 0..k {
            if i + j < k {
                mul[i][j][i + j] = Rat::one();
            }
        }
    }
    let mut unit = vec![Rat::zero(); k];
    unit[0] = Rat::one();
    let mut trace = vec![Rat::zero(); k];
    trace[0] = alpha.clone();
    let labels = (0..k)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "j".to_string(),
            _ => format!("j^{i}"),
        })
        .collect();
    let mut tlabel = vec![alpha.clone()];
    tlabel.extend(std::iter::repeat(Rat::zero()).take(k - 1));
    let alg = TraceAlgebra::from_raw(
        mul,
        unit,
        trace,
        labels,
        fresh_label(&format!("C{k}"), &tlabel),
    )?;
    debug_assert!(alg.validate().is_ok());
    Ok(alg)
}

/// 2 x 2 upper triangular matrices with the zero trace.
pub fn build_ut2() -> TraceAlgebra {
    // basis order: e11, e22, e12
    let pairs = [(0usize, 0usize), (1, 1), (0, 1)];
    let index = |a: usize, b: usize| pairs.iter().position(|&p| p == (a, b));
    let d = 3;
    let mut mul = vec![vec![vec![Rat::zero(); d]; d]; d];
    for (i, &(a, b)) in pairs.iter().enumerate() {
        for (j, &(c, e)) in pairs.iter().enumerate() {
            if b == c {
                if let Some(k) = index(a, e) {
                    mul[i][j][k] = Rat::one();
                }
            }
        }
    }
    let unit = vec![Rat::one(), Rat::one(), Rat::zero()];
    let trace = vec![Rat::zero(); d];
    let labels = vec!["e11".into(), "e22".into(), "e12".into()];
    let alg = TraceAlgebra::from_raw(mul, unit, trace, labels, "UT2^t_0".into())
        .expect("shape is valid");
    debug_assert!(alg.validate().is_ok());
    alg
}

/// Full n x n matrix algebra with trace = alpha times the usual trace.
pub fn build_mn(n: usize, alpha: &Rat) -> Result<TraceAlgebra, AlgebraError> {
    if n < 1 {
        return Err(AlgebraError::EmptyDimension);
    }
    let d = n * n;
    let index = |a: usize, b: usize| a * n + b;
    let mut mul = vec![vec![vec![Rat::zero(); d]; d]; d];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for e in 0..n {
                    if b == c {
                        mul[index(a, b)][index(c, e)][index(a, e)] = Rat::one();
                    }
                }
            }
        }
    }
    let mut unit = vec![Rat::zero(); d];
    let mut trace = vec![Rat::zero(); d];
    for a in 0..n {
        unit[index(a, a)] = Rat::one();
        trace[index(a, a)] = alpha.clone();
    }
    let labels = (0..n)
        .flat_map(|a| (0..n).map(move |b| format!("e{}{}", a + 1, b + 1)))
        .collect();
    let alg = TraceAlgebra::from_raw(
        mul,
        unit,
        trace,
        labels,
        format!("M{n}^t_{{{}tr}}", format_rat(alpha)),
    )?;
    debug_assert!(alg.validate().is_ok());
    Ok(alg)
}

// ---------------------------------------------------------------------------
// JSON file format

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RatRepr {
    Int(i64),
    Str(String),
}

impl RatRepr {
    fn to_rat(&self) -> Result<Rat, AlgebraError> {
        match self {
            RatRepr::Int(n) => Ok(rat(*n)),
            RatRepr::Str(s) => {
                parse_rat(s).map_err(|e| AlgebraError::Malformed(e.to_string()))
            }
        }
    }
    fn from_rat(r: &Rat) -> Self {
        RatRepr::Str(format_rat(r))
    }
}

#[derive(Serialize, Deserialize)]
struct AlgebraFile {
    dim: usize,
    unit: Vec<RatRepr>,
    trace: Vec<RatRepr>,
    mul: Vec<Vec<Vec<RatRepr>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

/// Parse and validate the JSON algebra format
/// `{ "dim": d, "unit": [...], "trace": [...], "mul": [[[...]]], "labels": [...] }`
/// with rationals encoded as `p/q` strings or integers.
pub fn algebra_from_json(text: &str) -> Result<TraceAlgebra, AlgebraError> {
    let file: AlgebraFile =
        serde_json::from_str(text).map_err(|e| AlgebraError::Malformed(e.to_string()))?;
    let d = file.dim;
    let conv = |v: &[RatRepr]| -> Result<Vec<Rat>, AlgebraError> {
        v.iter().map(|r| r.to_rat()).collect()
    };
    let unit = conv(&file.unit)?;
    let trace = conv(&file.trace)?;
    let mul = file
        .mul
        .iter()
        .map(|plane| plane.iter().map(|row| conv(row)).collect())
        .collect::<Result<Vec<Vec<Vec<Rat>>>, _>>()?;
    if unit.len() != d {
        return Err(AlgebraError::Malformed(format!(
            "unit has length {}, dim is {d}",
            unit.len()
        )));
    }
    let labels = file
        .labels
        .unwrap_or_else(|| (0..d).map(|i| format!("b{i}")).collect());
    if labels.len() != d {
        return Err(AlgebraError::Malformed(format!(
            "labels has length {}, dim is {d}",
            labels.len()
        )));
    }
    TraceAlgebra::checked(mul, unit, trace, labels, format!("file(dim={d})"))
}

pub fn algebra_to_json(alg: &TraceAlgebra) -> String {
    let file = AlgebraFile {
        dim: alg.dim,
        unit: alg.unit.iter().map(RatRepr::from_rat).collect(),
        trace: alg.trace.iter().map(RatRepr::from_rat).collect(),
        mul: alg
            .mul
            .iter()
            .map(|plane| {
                plane
                    .iter()
                    .map(|row| row.iter().map(RatRepr::from_rat).collect())
                    .collect()
            })
            .collect(),
        labels: Some(alg.labels.clone()),
    };
    serde_json::to_string_pretty(&file).expect("algebra serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rats(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn dn_basics() {
        let a = build_dn(&rats(&[1, 0])).unwrap();
        assert_eq!(a.trace_of_vec(a.basis_element(0).coords()), rat(1));
        assert_eq!(a.trace_of_vec(a.basis_element(1).coords()), rat(0));
        let prod = a
            .basis_element(0)
            .mul(&a.basis_element(1))
            .unwrap();
        assert!(prod.is_zero());

        let b = build_dn(&rats(&[1, 1])).unwrap();
        assert_eq!(b.unit_element().trace(), rat(2));
        assert!(build_dn(&rats(&[1, 2, 0])).unwrap().validate().is_ok());
        assert_eq!(build_dn(&[]), Err(AlgebraError::EmptyDimension));
    }

    #[test]
    fn c2_and_ck() {
        let c2 = build_c2(&rat(0), &rat(1));
        assert_eq!(c2.basis_element(1).trace(), rat(1));
        assert!(c2
            .basis_element(1)
            .mul(&c2.basis_element(1))
            .unwrap()
            .is_zero());

        let a = build_c2(&rat(1), &rat(0));
        let b = build_ck_degenerate(2, &rat(1)).unwrap();
        assert_eq!(a.mul, b.mul);
        assert_eq!(a.trace, b.trace);
        assert_eq!(a.unit, b.unit);

        assert_eq!(build_c2(&rat(2), &rat(0)).unit_element().trace(), rat(2));

        let c3 = build_ck_degenerate(3, &rat(1)).unwrap();
        // j * j^2 = 0, j * j = j^2
        assert!(c3
            .basis_element(1)
            .mul(&c3.basis_element(2))
            .unwrap()
            .is_zero());
        assert_eq!(
            c3.basis_element(1).mul(&c3.basis_element(1)).unwrap(),
            c3.basis_element(2)
        );
        assert_eq!(c3.basis_element(1).trace(), rat(0));

        let c1 = build_ck_degenerate(1, &rat(5)).unwrap();
        assert_eq!(c1.dim(), 1);
        assert_eq!(c1.unit_element().trace(), rat(5));
        assert!(build_ck_degenerate(0, &rat(1)).is_err());
    }

    #[test]
    fn ck_nilpotency_index_is_exact() {
        for k in 2..=5usize {
            let a = build_ck_degenerate(k, &rat(1)).unwrap();
            let j = a.basis_element(1);
            let mut p = j.clone();
            for _ in 1..k - 1 {
                p = p.mul(&j).unwrap();
            }
            assert!(!p.is_zero(), "j^{} should be nonzero", k - 1);
            assert!(p.mul(&j).unwrap().is_zero(), "j^{k} should vanish");
        }
    }

    #[test]
    fn ut2_basics() {
        let a = build_ut2();
        let e11 = a.basis_element(0);
        let e12 = a.basis_element(2);
        assert_eq!(e11.mul(&e12).unwrap(), e12);
        assert!(e12.mul(&e11).unwrap().is_zero());
        assert!(a.trace_coords().iter().all(|t| t.is_zero()));
        assert!(a.validate().is_ok());
        assert!(!a.is_commutative());
    }

    #[test]
    fn mn_basics() {
        let a = build_mn(2, &rat(1)).unwrap();
        assert_eq!(a.basis_element(0).trace(), rat(1)); // e11
        assert_eq!(a.basis_element(1).trace(), rat(0)); // e12
        let e12 = a.basis_element(1);
        let e21 = a.basis_element(2);
        assert_eq!(e12.mul(&e21).unwrap().trace(), rat(1));
        assert_eq!(e21.mul(&e12).unwrap().trace(), rat(1));

        let m1 = build_mn(1, &rat(3)).unwrap();
        let d1 = build_dn(&rats(&[3])).unwrap();
        assert_eq!(m1.mul, d1.mul);
        assert_eq!(m1.trace, d1.trace);
    }

    #[test]
    fn validate_catches_broken_associativity() {
        let mut alg = build_dn(&rats(&[1, 0])).unwrap();
        alg.mul[0][1][0] = rat(1); // e11 * e22 = e11 breaks associativity
        let report = alg.validate();
        assert!(matches!(
            report.violation,
            Some(Violation::Associativity { .. }) | Some(Violation::UnitLeft { .. })
        ));
    }

    #[test]
    fn element_arithmetic_and_mismatch() {
        let d2 = build_dn(&rats(&[1, 0])).unwrap();
        let unit = d2.unit_element();
        let e11 = d2.basis_element(0);
        assert_eq!(unit.mul(&e11).unwrap(), e11);

        // trace_of(e11 + 5 e22) = 1 in D2^{t_{1,0}}
        let x = e11.add(&d2.basis_element(1).scale(&rat(5))).unwrap();
        assert_eq!(x.trace(), rat(1));

        let other = build_dn(&rats(&[1, 0])).unwrap();
        assert_eq!(
            e11.mul(&other.basis_element(0)).unwrap_err(),
            AlgebraError::AlgebraMismatch
        );
        assert!(d2.element(vec![rat(1)]).is_err());
    }

    #[test]
    fn degeneracy_matches_zero_alpha() {
        let a = build_dn(&rats(&[1, 0])).unwrap();
        let witness = a.degeneracy_witness().unwrap();
        assert_eq!(witness, rats(&[0, 1])); // e22
        assert!(!build_dn(&rats(&[1, 2])).unwrap().is_degenerate());
        // Gram of C2^{t_{1,1}} is [[1,1],[1,0]], rank 2
        assert!(!build_c2(&rat(1), &rat(1)).is_degenerate());
    }

    #[test]
    fn trace_space_dimensions() {
        assert_eq!(build_mn(2, &rat(1)).unwrap().trace_space().len(), 1);
        assert_eq!(build_mn(3, &rat(1)).unwrap().trace_space().len(), 1);
        assert_eq!(build_dn(&rats(&[0, 0, 0])).unwrap().trace_space().len(), 3);
        assert_eq!(build_ut2().trace_space().len(), 2);
        // M2: the solution is proportional to the usual trace
        let basis = build_mn(2, &rat(1)).unwrap().trace_space();
        assert_eq!(basis[0], rats(&[1, 0, 0, 1]));
    }

    #[test]
    fn json_roundtrip_and_validation() {
        let a = build_c2(&rat(1), &rat(2));
        let text = algebra_to_json(&a);
        let b = algebra_from_json(&text).unwrap();
        assert_eq!(a.mul, b.mul);
        assert_eq!(a.trace, b.trace);

        // tampered structure constants are rejected on load
        let mut broken = a.clone();
        broken.trace = vec![rat(1), rat(2)];
        broken.mul[1][1][0] = rat(1); // j^2 = 1 with asymmetric trace
        broken.mul[1][0][1] = rat(0); // j * 1 = 0 breaks the unit
        let text = algebra_to_json(&broken);
        assert!(matches!(
            algebra_from_json(&text),
            Err(AlgebraError::Invalid(_))
        ));

        assert!(matches!(
            algebra_from_json("{ not json"),
            Err(AlgebraError::Malformed(_))
        ));
    }
}
