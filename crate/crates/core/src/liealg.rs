//! Finite-dimensional Lie algebras given by structure constants.

use std::collections::{BTreeMap, HashSet};

use thiserror::Error;

use crate::matrix::{Matrix, MatrixError};
use crate::report::{Violation, ViolationReport};
use crate::scalar::Scalar;
use crate::sparse::Vector;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("duplicate basis label '{0}'")]
    DuplicateLabel(String),
    #[error("bracket of basis element {index} with itself must vanish")]
    SelfBracket { index: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("bilinear form is not symmetric at ({p}, {q})")]
    NotSymmetric { p: usize, q: usize },
    #[error("indices do not span a subalgebra: bracket of {p} and {q} leaves the span")]
    NotClosed { p: usize, q: usize },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Sparse structure constants: `[e_p, e_q] = sum_r c^r_{pq} e_r`.
///
/// Only pairs `p < q` are stored; `[e_q, e_p] = -[e_p, e_q]` is implied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureTensor {
    dim: usize,
    entries: BTreeMap<(usize, usize), Vector>,
}

impl StructureTensor {
    pub fn new(dim: usize) -> Self {
        StructureTensor { dim, entries: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn check_vector(&self, v: &Vector) -> Result<(), LieError> {
        match v.max_index() {
            Some(index) if index >= self.dim => Err(LieError::IndexOutOfRange { index, dim: self.dim }),
            _ => Ok(()),
        }
    }

    /// Sets `[e_p, e_q] = value`, replacing any previous entry. `p > q` is
    /// stored as `[e_q, e_p] = -value`.
    pub fn set(&mut self, p: usize, q: usize, value: Vector) -> Result<(), LieError> {
        for index in [p, q] {
            if index >= self.dim {
                return Err(LieError::IndexOutOfRange { index, dim: self.dim });
            }
        }
        self.check_vector(&value)?;
        if p == q {
            return if value.is_zero() { Ok(()) } else { Err(LieError::SelfBracket { index: p }) };
        }
        let (key, value) = if p < q { ((p, q), value) } else { ((q, p), value.negated()) };
        if value.is_zero() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, value);
        }
        Ok(())
    }

    /// `[e_p, e_q]` including the antisymmetric half. Panics if out of range.
    pub fn get(&self, p: usize, q: usize) -> Vector {
        assert!(p < self.dim && q < self.dim, "structure tensor index out of range");
        match p.cmp(&q) {
            std::cmp::Ordering::Less => self.entries.get(&(p, q)).cloned().unwrap_or_default(),
            std::cmp::Ordering::Greater => self.entries.get(&(q, p)).map(Vector::negated).unwrap_or_default(),
            std::cmp::Ordering::Equal => Vector::new(),
        }
    }

    /// Coefficient of `e_r` in `[e_p, e_q]`.
    pub fn coefficient(&self, p: usize, q: usize, r: usize) -> Scalar {
        match p.cmp(&q) {
            std::cmp::Ordering::Less => self.entries.get(&(p, q)).map(|v| v.coeff(&r)).unwrap_or_default(),
            std::cmp::Ordering::Greater => self.entries.get(&(q, p)).map(|v| -v.coeff(&r)).unwrap_or_default(),
            std::cmp::Ordering::Equal => Scalar::zero(),
        }
    }

    /// Stored entries `((p, q), [e_p, e_q])` with `p < q`.
    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Vector)> {
        self.entries.iter()
    }

    /// Every nonzero constant `(p, q, r, c^r_{pq})` over ordered pairs `p != q`.
    pub fn expanded(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let mut out = Vec::new();
        for (&(p, q), v) in &self.entries {
            for (&r, c) in v.iter() {
                out.push((p, q, r, c.clone()));
                out.push((q, p, r, -c));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of stored nonzero coefficients.
    pub fn nnz(&self) -> usize {
        self.entries.values().map(Vector::len).sum()
    }
}

/// Symmetric bilinear form given by its Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearForm {
    matrix: Matrix,
}

impl BilinearForm {
    pub fn new(matrix: Matrix) -> Result<Self, LieError> {
        if !matrix.is_square() {
            return Err(MatrixError::NotSquare { rows: matrix.rows(), cols: matrix.cols() }.into());
        }
        for p in 0..matrix.rows() {
            for q in p + 1..matrix.cols() {
                if matrix.get(p, q) != matrix.get(q, p) {
                    return Err(LieError::NotSymmetric { p, q });
                }
            }
        }
        Ok(BilinearForm { matrix })
    }

    pub fn zero(dim: usize) -> Self {
        BilinearForm { matrix: Matrix::zeros(dim, dim) }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn get(&self, p: usize, q: usize) -> &Scalar {
        self.matrix.get(p, q)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn eval(&self, x: &Vector, y: &Vector) -> Scalar {
        let mut acc = Scalar::zero();
        for (p, a) in x.iter() {
            for (q, b) in y.iter() {
                let g = self.get(*p, *q);
                if !g.is_zero() {
                    acc += &(&(a * b) * g);
                }
            }
        }
        acc
    }

    pub fn determinant(&self) -> Scalar {
        self.matrix.determinant().expect("form matrix is square")
    }

    /// Gram matrix in the basis given by the columns of `t`: `t^T G t`.
    pub fn transported(&self, t: &Matrix) -> Result<BilinearForm, LieError> {
        let m = t.transpose().checked_mul(&self.matrix)?.checked_mul(t)?;
        BilinearForm::new(m)
    }
}

/// One entry where two structure tensors disagree: the coefficient of `e_r`
/// in `[e_p, e_q]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorDifference {
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub left: Scalar,
    pub right: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    labels: Vec<String>,
    tensor: StructureTensor,
}

impl LieAlgebra {
    pub fn new(labels: Vec<String>, tensor: StructureTensor) -> Result<Self, LieError> {
        if labels.len() != tensor.dim() {
            return Err(LieError::DimensionMismatch { expected: tensor.dim(), found: labels.len() });
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(LieError::DuplicateLabel(l.clone()));
            }
        }
        Ok(LieAlgebra { labels, tensor })
    }

    pub fn abelian(labels: Vec<String>) -> Result<Self, LieError> {
        let dim = labels.len();
        Self::new(labels, StructureTensor::new(dim))
    }

    /// Builds an algebra from `[e_p, e_q] = v` declarations.
    pub fn from_brackets(
        labels: Vec<String>,
        brackets: impl IntoIterator<Item = (usize, usize, Vector)>,
    ) -> Result<Self, LieError> {
        let mut tensor = StructureTensor::new(labels.len());
        for (p, q, v) in brackets {
            tensor.set(p, q, v)?;
        }
        Self::new(labels, tensor)
    }

    /// Labels `e1, e2, ...`.
    pub fn generic_labels(dim: usize) -> Vec<String> {
        (1..=dim).map(|i| format!("e{}", i)).collect()
    }

    pub fn with_labels(self, labels: Vec<String>) -> Result<Self, LieError> {
        Self::new(labels, self.tensor)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn tensor(&self) -> &StructureTensor {
        &self.tensor
    }

    pub fn is_abelian(&self) -> bool {
        self.tensor.is_zero()
    }

    fn check_index(&self, index: usize) -> Result<(), LieError> {
        if index < self.dim() {
            Ok(())
        } else {
            Err(LieError::IndexOutOfRange { index, dim: self.dim() })
        }
    }

    fn check_vector(&self, v: &Vector) -> Result<(), LieError> {
        v.max_index().map_or(Ok(()), |i| self.check_index(i))
    }

    /// `[e_p, e_q]`. Panics if an index is out of range.
    pub fn bracket_basis(&self, p: usize, q: usize) -> Vector {
        self.tensor.get(p, q)
    }

    /// `[x, y]` by bilinear extension.
    pub fn bracket(&self, x: &Vector, y: &Vector) -> Result<Vector, LieError> {
        self.check_vector(x)?;
        self.check_vector(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::new();
        for (p, a) in x.iter() {
            for (q, b) in y.iter() {
                if p == q {
                    continue;
                }
                let (key, sign) = if p < q { ((*p, *q), 1) } else { ((*q, *p), -1) };
                if let Some(v) = self.tensor.entries.get(&key) {
                    out.add_scaled(&(&(a * b) * &Scalar::integer(sign)), v);
                }
            }
        }
        out
    }

    /// Exhaustive Jacobi check over all triples `p < q < r`. Each violation
    /// carries the triple and the residual `[[p,q],r] + [[q,r],p] + [[r,p],q]`.
    pub fn check_jacobi(&self) -> ViolationReport {
        let n = self.dim();
        let mut report = ViolationReport::new();
        for p in 0..n {
            for q in p + 1..n {
                let pq = self.tensor.get(p, q);
                for r in q + 1..n {
                    let qr = self.tensor.get(q, r);
                    let rp = self.tensor.get(r, p);
                    if pq.is_zero() && qr.is_zero() && rp.is_zero() {
                        continue;
                    }
                    let mut residual = self.bracket_unchecked(&pq, &Vector::basis(r));
                    residual = residual.plus(&self.bracket_unchecked(&qr, &Vector::basis(p)));
                    residual = residual.plus(&self.bracket_unchecked(&rp, &Vector::basis(q)));
                    if !residual.is_zero() {
                        report.push(Violation::vector(vec![p, q, r], &residual));
                    }
                }
            }
        }
        report
    }

    /// Matrix of `ad(e_p)`: column `q` holds `[e_p, e_q]`.
    pub fn adjoint_matrix(&self, p: usize) -> Result<Matrix, LieError> {
        self.check_index(p)?;
        let cols: Vec<Vector> = (0..self.dim()).map(|q| self.tensor.get(p, q)).collect();
        Ok(Matrix::from_columns(self.dim(), &cols))
    }

    /// `K(p, q) = tr(ad(e_p) ad(e_q))`.
    pub fn killing_form(&self) -> BilinearForm {
        let n = self.dim();
        let ads: Vec<Matrix> = (0..n).map(|p| self.adjoint_matrix(p).expect("in range")).collect();
        let mut m = Matrix::zeros(n, n);
        for p in 0..n {
            for q in p..n {
                let k = ads[p].trace_of_product(&ads[q]);
                m.set(q, p, k.clone());
                m.set(p, q, k);
            }
        }
        BilinearForm { matrix: m }
    }

    /// Structure constants in the basis whose vectors are the columns of `t`
    /// (expressed in the current basis). New labels are `v1, v2, ...`.
    pub fn change_of_basis(&self, t: &Matrix) -> Result<LieAlgebra, LieError> {
        let n = self.dim();
        if t.rows() != n || t.cols() != n {
            return Err(LieError::DimensionMismatch { expected: n, found: t.rows().max(t.cols()) });
        }
        let t_inv = t.inverse()?;
        let cols: Vec<Vector> = (0..n).map(|j| t.column(j)).collect();
        let mut tensor = StructureTensor::new(n);
        for a in 0..n {
            for b in a + 1..n {
                let br = self.bracket_unchecked(&cols[a], &cols[b]);
                if !br.is_zero() {
                    tensor.set(a, b, t_inv.apply(&br))?;
                }
            }
        }
        LieAlgebra::new((1..=n).map(|i| format!("v{}", i)).collect(), tensor)
    }

    /// `self (+) other` with commuting blocks. Labels of `other` that collide
    /// with existing ones are prefixed with `s2_`.
    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let shift = self.dim();
        let mut labels = self.labels.clone();
        let mut taken: HashSet<String> = labels.iter().cloned().collect();
        for l in &other.labels {
            let mut name = l.clone();
            while taken.contains(&name) {
                name = format!("s2_{}", name);
            }
            taken.insert(name.clone());
            labels.push(name);
        }
        let mut tensor = StructureTensor::new(shift + other.dim());
        tensor.entries = self.tensor.entries.clone();
        for (&(p, q), v) in &other.tensor.entries {
            tensor.entries.insert((p + shift, q + shift), v.map_keys(|r| r + shift));
        }
        LieAlgebra { labels, tensor }
    }

    /// Exact equality of dimensions and structure tensors; labels ignored.
    pub fn structure_equal(&self, other: &LieAlgebra) -> bool {
        self.tensor == other.tensor
    }

    /// All structure constants where the two algebras disagree, in
    /// lexicographic `(p, q, r)` order over `p < q`. Empty iff
    /// [`structure_equal`](Self::structure_equal), provided the dimensions agree.
    pub fn differences(&self, other: &LieAlgebra) -> Vec<TensorDifference> {
        let keys: std::collections::BTreeSet<(usize, usize)> =
            self.tensor.entries.keys().chain(other.tensor.entries.keys()).copied().collect();
        let mut out = Vec::new();
        for (p, q) in keys {
            let left = self.tensor.entries.get(&(p, q)).cloned().unwrap_or_default();
            let right = other.tensor.entries.get(&(p, q)).cloned().unwrap_or_default();
            let rs: std::collections::BTreeSet<usize> = left.keys().chain(right.keys()).copied().collect();
            for r in rs {
                let (l, rr) = (left.coeff(&r), right.coeff(&r));
                if l != rr {
                    out.push(TensorDifference { p, q, r, left: l, right: rr });
                }
            }
        }
        out
    }

    pub fn first_difference(&self, other: &LieAlgebra) -> Option<TensorDifference> {
        self.differences(other).into_iter().next()
    }

    /// The subalgebra spanned by the given basis indices, in the given order.
    pub fn restrict(&self, indices: &[usize]) -> Result<LieAlgebra, LieError> {
        let mut position = BTreeMap::new();
        for (new, &old) in indices.iter().enumerate() {
            self.check_index(old)?;
            position.insert(old, new);
        }
        let mut tensor = StructureTensor::new(indices.len());
        for (a, &p) in indices.iter().enumerate() {
            for (b, &q) in indices.iter().enumerate().skip(a + 1) {
                let br = self.tensor.get(p, q);
                let mut mapped = Vector::new();
                for (r, c) in br.iter() {
                    match position.get(r) {
                        Some(&nr) => mapped.add_term(nr, c),
                        None => return Err(LieError::NotClosed { p, q }),
                    }
                }
                tensor.set(a, b, mapped)?;
            }
        }
        LieAlgebra::new(indices.iter().map(|&i| self.labels[i].clone()).collect(), tensor)
    }
}

/// `B(p, q) = tr(rep[p] rep[q])` for a matrix representation given on a basis.
pub fn trace_form(rep: &[Matrix]) -> Result<BilinearForm, LieError> {
    let size = rep.first().map_or(0, Matrix::rows);
    for m in rep {
        if !m.is_square() || m.rows() != size {
            return Err(LieError::DimensionMismatch { expected: size, found: m.rows().max(m.cols()) });
        }
    }
    let n = rep.len();
    let mut g = Matrix::zeros(n, n);
    for p in 0..n {
        for q in p..n {
            let b = rep[p].trace_of_product(&rep[q]);
            g.set(q, p, b.clone());
            g.set(p, q, b);
        }
    }
    BilinearForm::new(g)
}

/// Checks that `e_p -> images[p]` is a Lie homomorphism from `source` into
/// `target`: `phi([e_p, e_q]) = [phi(e_p), phi(e_q)]` for all `p < q`.
pub fn check_homomorphism(source: &LieAlgebra, target: &LieAlgebra, images: &[Vector]) -> Result<ViolationReport, LieError> {
    if images.len() != source.dim() {
        return Err(LieError::DimensionMismatch { expected: source.dim(), found: images.len() });
    }
    for v in images {
        target.check_vector(v)?;
    }
    let push = |v: &Vector| {
        let mut out = Vector::new();
        for (r, c) in v.iter() {
            out.add_scaled(c, &images[*r]);
        }
        out
    };
    let mut report = ViolationReport::new();
    for p in 0..source.dim() {
        for q in p + 1..source.dim() {
            let lhs = push(&source.bracket_basis(p, q));
            let rhs = target.bracket_unchecked(&images[p], &images[q]);
            let residual = lhs.minus(&rhs);
            if !residual.is_zero() {
                report.push(Violation::vector(vec![p, q], &residual));
            }
        }
    }
    Ok(report)
}
