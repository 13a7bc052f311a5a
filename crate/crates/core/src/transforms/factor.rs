//! Seven-stage sparse factorization of the 8-point approximation.
//!
//! The approximate matrix factors as
//!
//! ```text
//! P · diag(I2, A1, A3) · D2 · diag(B2, I2, A4) · D1 · diag(B4, A2) · B8
//! ```
//!
//! with `Bn = [[1, 1], [1, -1]] ⊗ I(n/2)`. Stages are stored in application
//! order, so `stages()[0]` is `B8` and the last stage is `P`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{matmul, ComplexF, DyadicGaussian, FastScalar, Matrix};

use super::approx::{build_approx_matrix, ApproxTransform};

/// A nonzero entry of a stage matrix. Nothing else can appear in a stage,
/// which is what makes the fast algorithm multiplierless.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum StageEntry {
    One,
    MinusOne,
    J,
    MinusJ,
    Half,
}

impl StageEntry {
    pub fn value(self) -> DyadicGaussian {
        match self {
            StageEntry::One => DyadicGaussian::ONE,
            StageEntry::MinusOne => -DyadicGaussian::ONE,
            StageEntry::J => DyadicGaussian::J,
            StageEntry::MinusJ => -DyadicGaussian::J,
            StageEntry::Half => DyadicGaussian::HALF,
        }
    }

    pub fn from_value(v: DyadicGaussian) -> Option<Self> {
        [Self::One, Self::MinusOne, Self::J, Self::MinusJ, Self::Half].into_iter().find(|e| e.value() == v)
    }

    pub fn is_negative(self) -> bool {
        matches!(self, StageEntry::MinusOne | StageEntry::MinusJ)
    }

    /// Applies `|entry|`; the sign is folded into the row's add/subtract.
    #[inline]
    fn apply_magnitude<T: FastScalar>(self, x: T) -> T {
        match self {
            StageEntry::One | StageEntry::MinusOne => x,
            StageEntry::J | StageEntry::MinusJ => x.mul_j(),
            StageEntry::Half => x.halve(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Term {
    pub col: usize,
    pub entry: StageEntry,
}

/// One sparse stage: every row has one or two nonzero entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorStage {
    name: String,
    rows: Vec<Vec<Term>>,
}

impl FactorStage {
    /// Converts a dense square matrix, checking the stage constraints.
    pub fn from_matrix(name: impl Into<String>, m: &Matrix<DyadicGaussian>) -> Result<Self> {
        let name = name.into();
        let invalid = |reason: String| Error::InvalidStage { name: name.clone(), reason };
        if !m.is_square() {
            return Err(invalid(format!("{}x{} is not square", m.rows(), m.cols())));
        }
        let mut rows = Vec::with_capacity(m.rows());
        for i in 0..m.rows() {
            let mut terms = Vec::new();
            for (col, &v) in m.row(i).iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let entry = StageEntry::from_value(v)
                    .ok_or_else(|| invalid(format!("entry ({i}, {col}) = {v} is not in {{±1, ±j, 1/2}}")))?;
                terms.push(Term { col, entry });
            }
            if terms.is_empty() || terms.len() > 2 {
                return Err(invalid(format!("row {i} has {} nonzeros, expected 1 or 2", terms.len())));
            }
            rows.push(terms);
        }
        Ok(Self { name, rows })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Term>] {
        &self.rows
    }

    pub fn to_matrix(&self) -> Matrix<DyadicGaussian> {
        let n = self.rows.len();
        let mut out = vec![DyadicGaussian::ZERO; n * n];
        for (i, terms) in self.rows.iter().enumerate() {
            for t in terms {
                out[i * n + t.col] = t.entry.value();
            }
        }
        Matrix::new(n, n, out).expect("square")
    }

    pub fn is_diagonal(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, t)| t.len() == 1 && t[0].col == i)
    }

    pub fn is_permutation(&self) -> bool {
        let mut seen = vec![false; self.rows.len()];
        for t in &self.rows {
            if t.len() != 1 || t[0].entry != StageEntry::One || seen[t[0].col] {
                return false;
            }
            seen[t[0].col] = true;
        }
        true
    }

    /// `out = S · x`. Lengths must equal the stage size.
    pub fn apply_into<T: FastScalar>(&self, x: &[T], out: &mut [T]) {
        for (o, terms) in out.iter_mut().zip(&self.rows) {
            *o = match terms.as_slice() {
                [a] => {
                    let v = a.entry.apply_magnitude(x[a.col]);
                    if a.entry.is_negative() {
                        -v
                    } else {
                        v
                    }
                }
                [a, b] => {
                    let va = a.entry.apply_magnitude(x[a.col]);
                    let vb = b.entry.apply_magnitude(x[b.col]);
                    match (a.entry.is_negative(), b.entry.is_negative()) {
                        (false, false) => va + vb,
                        (false, true) => va - vb,
                        (true, false) => vb - va,
                        (true, true) => -(va + vb),
                    }
                }
                _ => unreachable!("validated at construction"),
            };
        }
    }

    /// Operation counts for this stage alone.
    pub fn op_count(&self) -> OpCount {
        let mut c = OpCount::default();
        for terms in &self.rows {
            if terms.len() == 2 {
                c.complex_additions += 1;
            }
            if terms.iter().all(|t| t.entry.is_negative()) {
                c.negations += 1;
            }
            for t in terms {
                match t.entry {
                    StageEntry::Half => c.halvings += 1,
                    StageEntry::J | StageEntry::MinusJ => c.j_rotations += 1,
                    _ => {}
                }
            }
        }
        c
    }
}

/// Data-independent operation counts of the fast algorithm.
///
/// There is no multiplication field: stages cannot hold general multipliers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OpCount {
    pub complex_additions: usize,
    pub halvings: usize,
    pub j_rotations: usize,
    pub negations: usize,
}

impl OpCount {
    /// One complex addition is two real additions.
    pub fn real_additions(&self) -> usize {
        2 * self.complex_additions
    }
}

impl std::ops::Add for OpCount {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self {
            complex_additions: self.complex_additions + o.complex_additions,
            halvings: self.halvings + o.halvings,
            j_rotations: self.j_rotations + o.j_rotations,
            negations: self.negations + o.negations,
        }
    }
}

/// Result of checking the stage product against the approximate matrix.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FactorizationReport {
    /// Dyadic product equals the matrix entrywise.
    pub exact_equal: bool,
    /// Largest entry deviation of the float product.
    pub max_abs_deviation: f64,
}

/// Ordered list of sparse stages, applied first to last.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factorization {
    stages: Vec<FactorStage>,
}

impl Factorization {
    pub fn from_stages(stages: Vec<FactorStage>) -> Result<Self> {
        let n = stages
            .first()
            .map(FactorStage::size)
            .ok_or_else(|| Error::InvalidStage { name: "factorization".into(), reason: "no stages".into() })?;
        if let Some(s) = stages.iter().find(|s| s.size() != n) {
            return Err(Error::dims(format!("{n}x{n} stage"), format!("{} with size {}", s.name, s.size())));
        }
        Ok(Self { stages })
    }

    pub fn stages(&self) -> &[FactorStage] {
        &self.stages
    }

    pub fn size(&self) -> usize {
        self.stages[0].size()
    }

    /// Exact product `S_last ··· S_1`.
    pub fn product(&self) -> Result<Matrix<DyadicGaussian>> {
        let mut acc = self.stages[0].to_matrix();
        for s in &self.stages[1..] {
            acc = matmul(&s.to_matrix(), &acc)?;
        }
        Ok(acc)
    }

    fn float_product(&self) -> Matrix<ComplexF> {
        let mut acc = self.stages[0].to_matrix().to_complex();
        for s in &self.stages[1..] {
            acc = matmul(&s.to_matrix().to_complex(), &acc).expect("stages share a size");
        }
        acc
    }

    /// Runs the stages over `v` using only additions, negations, j-rotations
    /// and halvings.
    pub fn apply<T: FastScalar>(&self, v: &[T]) -> Result<Vec<T>> {
        let n = self.size();
        if v.len() != n {
            return Err(Error::dims(format!("vector of length {n}"), v.len()));
        }
        let mut cur = v.to_vec();
        let mut next = v.to_vec();
        for s in &self.stages {
            s.apply_into(&cur, &mut next);
            std::mem::swap(&mut cur, &mut next);
        }
        Ok(cur)
    }

    pub fn verify_against(&self, target: &ApproxTransform) -> FactorizationReport {
        let exact_equal = self.product().map(|p| p == target.dyadic_matrix()).unwrap_or(false);
        let max_abs_deviation =
            self.float_product().max_abs_deviation(&target.dyadic_matrix()).unwrap_or(f64::INFINITY);
        FactorizationReport { exact_equal, max_abs_deviation }
    }

    pub fn op_count(&self) -> OpCount {
        self.stages.iter().map(FactorStage::op_count).fold(OpCount::default(), |a, b| a + b)
    }

    /// Stage entries outside `{0, ±1, ±j, 1/2}`, read back from the dense
    /// stage matrices.
    pub fn general_multiplications(&self) -> usize {
        self.stages
            .iter()
            .flat_map(|s| s.to_matrix().entries().to_vec())
            .filter(|&v| !v.is_zero() && StageEntry::from_value(v).is_none())
            .count()
    }
}

fn ints(rows: &[&[i64]]) -> Matrix<DyadicGaussian> {
    let rows: Vec<Vec<DyadicGaussian>> =
        rows.iter().map(|r| r.iter().map(|&x| DyadicGaussian::from_int(x)).collect()).collect();
    Matrix::from_rows(&rows).expect("rectangular literal")
}

/// `[[1, 1], [1, -1]] ⊗ I(n/2)`.
fn butterfly(n: usize) -> Matrix<DyadicGaussian> {
    ints(&[&[1, 1], &[1, -1]]).kron(&Matrix::identity(n / 2)).expect("small integers")
}

/// The printed seven-stage factorization.
pub fn build_factorization() -> Factorization {
    let a1 = ints(&[&[1, -1], &[1, 1]]);
    let a2 = ints(&[&[1, 0, 0, 0], &[0, 1, 0, 1], &[0, 0, 1, 0], &[0, 1, 0, -1]]);
    let a3 = ints(&[&[1, -1, 0, 0], &[0, 0, -1, 1], &[1, 1, 0, 0], &[0, 0, 1, 1]]);
    let a4 = ints(&[&[1, 0, 0, 1], &[0, 1, 1, 0], &[0, 1, -1, 0], &[1, 0, 0, -1]]);
    let i2 = Matrix::identity(2);
    let (one, half, j) = (DyadicGaussian::ONE, DyadicGaussian::HALF, DyadicGaussian::J);
    let d1 = Matrix::diag(&[one, one, one, one, one, half, one, half]);
    let d2 = Matrix::diag(&[one, one, one, j, one, j, j, one]);
    // rows of P are e1, e5, e3, e6, e2, e8, e4, e7
    let perm = [0, 4, 2, 5, 1, 7, 3, 6];
    let p = Matrix::from_fn(8, 8, |i, k| if perm[i] == k { one } else { DyadicGaussian::ZERO });

    let stages = [
        ("B8", butterfly(8)),
        ("diag(B4,A2)", Matrix::block_diag(&[&butterfly(4), &a2])),
        ("D1", d1),
        ("diag(B2,I2,A4)", Matrix::block_diag(&[&butterfly(2), &i2, &a4])),
        ("D2", d2),
        ("diag(I2,A1,A3)", Matrix::block_diag(&[&i2, &a1, &a3])),
        ("P", p),
    ];
    let stages =
        stages.iter().map(|(name, m)| FactorStage::from_matrix(*name, m).expect("printed stages are sparse")).collect();
    Factorization::from_stages(stages).expect("all stages are 8x8")
}

pub fn apply_fast<T: FastScalar>(f: &Factorization, v: &[T]) -> Result<Vec<T>> {
    f.apply(v)
}

pub fn verify_factorization() -> FactorizationReport {
    build_factorization().verify_against(&build_approx_matrix())
}

pub fn complexity_report(f: &Factorization) -> OpCount {
    f.op_count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stage_names_in_application_order() {
        let f = build_factorization();
        let names: Vec<&str> = f.stages().iter().map(FactorStage::name).collect();
        assert_eq!(names, ["B8", "diag(B4,A2)", "D1", "diag(B2,I2,A4)", "D2", "diag(I2,A1,A3)", "P"]);
    }

    #[test]
    fn d2_diagonal() {
        let f = build_factorization();
        let d2 = &f.stages()[4];
        assert!(d2.is_diagonal());
        let diag: Vec<String> = (0..8).map(|i| d2.to_matrix().get(i, i).to_string()).collect();
        assert_eq!(diag, ["1", "1", "1", "1j", "1", "1j", "1j", "1"]);
        assert!(f.stages()[2].is_diagonal());
    }

    #[test]
    fn permutation_stage() {
        let f = build_factorization();
        let p = &f.stages()[6];
        assert!(p.is_permutation());
        let x: Vec<DyadicGaussian> = (1..=8).map(DyadicGaussian::from_int).collect();
        let mut out = x.clone();
        p.apply_into(&x, &mut out);
        let got: Vec<i64> = out.iter().map(|v| v.re_num()).collect();
        assert_eq!(got, [1, 5, 3, 6, 2, 8, 4, 7]);
        let pm = p.to_matrix();
        assert_eq!(matmul(&pm, &pm.transpose()).unwrap(), Matrix::identity(8));
    }

    #[test]
    fn product_is_exact() {
        let r = verify_factorization();
        assert!(r.exact_equal);
        assert!(r.max_abs_deviation <= 1e-14);
    }

    #[test]
    fn sign_flip_breaks_identity() {
        let f = build_factorization();
        let target = build_approx_matrix();
        for (s_idx, stage) in f.stages().iter().enumerate() {
            let m = stage.to_matrix();
            let (i, k) = (0..8)
                .flat_map(|i| (0..8).map(move |k| (i, k)))
                .find(|&(i, k)| m.get(i, k) == DyadicGaussian::ONE)
                .unwrap();
            let flipped = Matrix::from_fn(8, 8, |a, b| if (a, b) == (i, k) { -m.get(a, b) } else { m.get(a, b) });
            let mut stages = f.stages().to_vec();
            stages[s_idx] = FactorStage::from_matrix(stage.name(), &flipped).unwrap();
            let mutated = Factorization::from_stages(stages).unwrap();
            assert!(!mutated.verify_against(&target).exact_equal, "stage {}", stage.name());
        }
    }

    #[test]
    fn rejects_dense_or_general_entries() {
        let dense = Matrix::from_fn(4, 4, |_, _| DyadicGaussian::ONE);
        assert!(FactorStage::from_matrix("dense", &dense).is_err());
        let general = Matrix::diag(&[DyadicGaussian::new(1, -1, 1), DyadicGaussian::ONE]);
        assert!(FactorStage::from_matrix("general", &general).is_err());
        let empty_row = Matrix::diag(&[DyadicGaussian::ZERO, DyadicGaussian::ONE]);
        assert!(FactorStage::from_matrix("empty", &empty_row).is_err());
    }

    #[test]
    fn counts() {
        let f = build_factorization();
        assert_eq!(f.stages()[0].op_count().complex_additions, 8);
        assert_eq!(f.stages()[2].op_count().halvings, 2);
        assert_eq!(f.stages()[4].op_count().j_rotations, 3);
        assert_eq!(f.general_multiplications(), 0);
    }

    #[test]
    fn length_mismatch() {
        let f = build_factorization();
        assert!(apply_fast(&f, &[ComplexF::new(0.0, 0.0); 7]).is_err());
    }
}
