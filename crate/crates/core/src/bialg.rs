//! Lie bialgebra layer: cocommutators, r-matrices, coboundaries and the
//! Schouten bracket.
//!
//! Wedge convention everywhere: `a ^ b = a (x) b - b (x) a`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::gln::GlnIndex;
use crate::liealg::{LieAlgebra, LieError, StructureTensor};
use crate::manin::ManinTriple;
use crate::matrix::{Matrix, MatrixError};
use crate::report::{Violation, ViolationReport};
use crate::scalar::Scalar;
use crate::sparse::{ThreeTensor, TwoTensor, Vector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BialgError {
    #[error("value on basis element {index} is not antisymmetric")]
    NotAntisymmetric { index: usize },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("term ({p}, {q}) is neither an F-F nor an H-I pair")]
    MalformedTwist { p: usize, q: usize },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// Linear map `delta: g -> g ^ g`, stored by its value on each basis
/// element. Every stored value is antisymmetric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocommutator {
    dim: usize,
    values: BTreeMap<usize, TwoTensor>,
}

impl Cocommutator {
    pub fn zero(dim: usize) -> Self {
        Cocommutator { dim, values: BTreeMap::new() }
    }

    pub fn new(dim: usize, values: impl IntoIterator<Item = (usize, TwoTensor)>) -> Result<Self, BialgError> {
        let mut out = Self::zero(dim);
        for (p, v) in values {
            out.set(p, v)?;
        }
        Ok(out)
    }

    pub fn set(&mut self, p: usize, value: TwoTensor) -> Result<(), BialgError> {
        for index in std::iter::once(p).chain(value.max_index()) {
            if index >= self.dim {
                return Err(BialgError::IndexOutOfRange { index, dim: self.dim });
            }
        }
        if !value.is_antisymmetric() {
            return Err(BialgError::NotAntisymmetric { index: p });
        }
        if value.is_zero() {
            self.values.remove(&p);
        } else {
            self.values.insert(p, value);
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, p: usize) -> TwoTensor {
        self.values.get(&p).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Nonzero values, by basis index.
    pub fn iter(&self) -> impl Iterator<Item = (&usize, &TwoTensor)> {
        self.values.iter()
    }

    /// `delta` applied to an arbitrary vector.
    pub fn apply(&self, x: &Vector) -> TwoTensor {
        let mut out = TwoTensor::new();
        for (p, c) in x.iter() {
            if let Some(v) = self.values.get(p) {
                out.add_scaled(c, v);
            }
        }
        out
    }

    /// The dual Lie bracket `[e^q, e^r] = sum_p delta_p^{qr} e^p`.
    pub fn dual_algebra(&self) -> LieAlgebra {
        let mut per_pair: BTreeMap<(usize, usize), Vector> = BTreeMap::new();
        for (&p, v) in &self.values {
            for (&(q, r), c) in v.iter() {
                if q < r {
                    per_pair.entry((q, r)).or_default().add_term(p, c);
                }
            }
        }
        let mut tensor = StructureTensor::new(self.dim);
        for ((q, r), v) in per_pair {
            tensor.set(q, r, v).expect("indices in range");
        }
        LieAlgebra::new(LieAlgebra::generic_labels(self.dim), tensor).expect("generic labels are distinct")
    }

    /// Per-generator differences against another cocommutator.
    pub fn compare(&self, other: &Cocommutator) -> ViolationReport {
        let keys: std::collections::BTreeSet<usize> = self.values.keys().chain(other.values.keys()).copied().collect();
        keys.into_iter()
            .filter_map(|p| {
                let diff = self.get(p).minus(&other.get(p));
                (!diff.is_zero()).then(|| Violation::two_tensor(vec![p], &diff))
            })
            .collect()
    }
}

/// `(ad_x (x) 1 + 1 (x) ad_x) t`.
pub fn act_on_two(alg: &LieAlgebra, x: usize, t: &TwoTensor) -> TwoTensor {
    let mut out = TwoTensor::new();
    for (&(a, b), c) in t.iter() {
        for (r, k) in alg.bracket_basis(x, a).iter() {
            out.add_term((*r, b), &(c * k));
        }
        for (r, k) in alg.bracket_basis(x, b).iter() {
            out.add_term((a, *r), &(c * k));
        }
    }
    out
}

/// Diagonal adjoint action on `g (x) g (x) g`.
pub fn act_on_three(alg: &LieAlgebra, x: usize, t: &ThreeTensor) -> ThreeTensor {
    let mut out = ThreeTensor::new();
    for (&(a, b, c), k) in t.iter() {
        for (r, s) in alg.bracket_basis(x, a).iter() {
            out.add_term((*r, b, c), &(k * s));
        }
        for (r, s) in alg.bracket_basis(x, b).iter() {
            out.add_term((a, *r, c), &(k * s));
        }
        for (r, s) in alg.bracket_basis(x, c).iter() {
            out.add_term((a, b, *r), &(k * s));
        }
    }
    out
}

/// The double's cocommutator: `delta(Z_p) = -c_p^{qr} Z_q (x) Z_r` and
/// `delta(z^p) = f^p_{qr} z^q (x) z^r`, on the `2m`-dimensional basis.
pub fn cocommutator_from_triple(t: &ManinTriple) -> Cocommutator {
    let m = t.m();
    let mut values: BTreeMap<usize, TwoTensor> = BTreeMap::new();
    for (&(q, r), v) in t.s_minus().tensor().entries() {
        for (&p, c) in v.iter() {
            let entry = values.entry(p).or_default();
            entry.sub_term((q, r), c);
            entry.add_term((r, q), c);
        }
    }
    for (&(q, r), v) in t.s_plus().tensor().entries() {
        for (&p, c) in v.iter() {
            let entry = values.entry(m + p).or_default();
            entry.add_term((m + q, m + r), c);
            entry.sub_term((m + r, m + q), c);
        }
    }
    Cocommutator::new(2 * m, values).expect("built antisymmetric")
}

/// Transports `delta` to the basis whose vectors are the columns of `t`.
pub fn express_in_basis(delta: &Cocommutator, t: &Matrix) -> Result<Cocommutator, BialgError> {
    let n = delta.dim();
    if t.rows() != n || t.cols() != n {
        return Err(BialgError::DimensionMismatch { expected: n, found: t.rows().max(t.cols()) });
    }
    let t_inv = t.inverse()?;
    let inv_cols: Vec<Vector> = (0..n).map(|j| t_inv.column(j)).collect();
    let mut out = Cocommutator::zero(n);
    for j in 0..n {
        let image = delta.apply(&t.column(j));
        let mut value = TwoTensor::new();
        for (&(a, b), c) in image.iter() {
            for (l, x) in inv_cols[a].iter() {
                for (k, y) in inv_cols[b].iter() {
                    value.add_term((*l, *k), &(&(c * x) * y));
                }
            }
        }
        out.set(j, value)?;
    }
    Ok(out)
}

/// Co-Jacobi: the dual bracket read off `delta` satisfies Jacobi.
pub fn check_cojacobi(delta: &Cocommutator) -> ViolationReport {
    delta.dual_algebra().check_jacobi()
}

/// The 1-cocycle condition `delta([x,y]) = x.delta(y) - y.delta(x)` over all
/// basis pairs `x < y`.
pub fn check_cocycle(alg: &LieAlgebra, delta: &Cocommutator) -> Result<ViolationReport, BialgError> {
    if alg.dim() != delta.dim() {
        return Err(BialgError::DimensionMismatch { expected: alg.dim(), found: delta.dim() });
    }
    let n = alg.dim();
    let mut report = ViolationReport::new();
    for x in 0..n {
        for y in x + 1..n {
            let lhs = delta.apply(&alg.bracket_basis(x, y));
            let rhs = act_on_two(alg, x, &delta.get(y)).minus(&act_on_two(alg, y, &delta.get(x)));
            let residual = lhs.minus(&rhs);
            if !residual.is_zero() {
                report.push(Violation::two_tensor(vec![x, y], &residual));
            }
        }
    }
    Ok(report)
}

/// `r = sum_p z^p (x) Z_p` and `r_skew = (1/2) sum_p z^p ^ Z_p`, in the
/// double's basis.
pub fn build_rmatrix(t: &ManinTriple) -> (TwoTensor, TwoTensor) {
    let m = t.m();
    let half = Scalar::ratio(1, 2);
    let mut r = TwoTensor::new();
    let mut skew = TwoTensor::new();
    for p in 0..m {
        r.add_term((m + p, p), &Scalar::one());
        skew.add_term((m + p, p), &half);
        skew.sub_term((p, m + p), &half);
    }
    (r, skew)
}

/// Transports a two-tensor to the basis given by the columns of `t`.
pub fn two_tensor_in_basis(r: &TwoTensor, t: &Matrix) -> Result<TwoTensor, BialgError> {
    let t_inv = t.inverse()?;
    let inv_cols: Vec<Vector> = (0..t.cols()).map(|j| t_inv.column(j)).collect();
    let mut out = TwoTensor::new();
    for (&(a, b), c) in r.iter() {
        for (l, x) in inv_cols[a].iter() {
            for (k, y) in inv_cols[b].iter() {
                out.add_term((*l, *k), &(&(c * x) * y));
            }
        }
    }
    Ok(out)
}

/// `delta(x) = (ad_x (x) 1 + 1 (x) ad_x) r` for every basis element `x`.
///
/// Fails if some value is not antisymmetric, i.e. the symmetric part of `r`
/// is not ad-invariant.
pub fn coboundary(alg: &LieAlgebra, r: &TwoTensor) -> Result<Cocommutator, BialgError> {
    if let Some(index) = r.max_index().filter(|&i| i >= alg.dim()) {
        return Err(BialgError::IndexOutOfRange { index, dim: alg.dim() });
    }
    Cocommutator::new(alg.dim(), (0..alg.dim()).map(|x| (x, act_on_two(alg, x, r))))
}

/// `[[r, r]] = [r12, r13] + [r12, r23] + [r13, r23]`.
pub fn schouten_bracket(alg: &LieAlgebra, r: &TwoTensor) -> ThreeTensor {
    let terms: Vec<(usize, usize, Scalar)> = r.iter().map(|(&(p, q), c)| (p, q, c.clone())).collect();
    let mut out = ThreeTensor::new();
    for (p, q, a) in &terms {
        for (s, t, b) in &terms {
            let ab = a * b;
            for (k, c) in alg.bracket_basis(*p, *s).iter() {
                out.add_term((*k, *q, *t), &(&ab * c));
            }
            for (k, c) in alg.bracket_basis(*q, *s).iter() {
                out.add_term((*p, *k, *t), &(&ab * c));
            }
            for (k, c) in alg.bracket_basis(*q, *t).iter() {
                out.add_term((*p, *s, *k), &(&ab * c));
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// `[[r, r]] = 0`: classical Yang-Baxter equation holds.
    Triangular,
    /// `[[r, r]] != 0` but ad-invariant.
    Quasitriangular,
    /// `[[r, r]]` is not ad-invariant.
    NotInvariant,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Triangular => "triangular",
            Verdict::Quasitriangular => "quasitriangular",
            Verdict::NotInvariant => "not-invariant",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasitriangularReport {
    pub bracket: ThreeTensor,
    /// Basis elements `x` whose action on `[[r, r]]` is nonzero.
    pub non_invariant: ViolationReport,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

/// Computes `[[r, r]]` for the skew r-matrix and tests its ad-invariance.
pub fn schouten_check(alg: &LieAlgebra, r_skew: &TwoTensor) -> QuasitriangularReport {
    let bracket = schouten_bracket(alg, r_skew);
    let non_invariant: ViolationReport = (0..alg.dim())
        .filter_map(|x| {
            let moved = act_on_three(alg, x, &bracket);
            (!moved.is_zero()).then(|| Violation::three_tensor(vec![x], &moved))
        })
        .collect();
    let verdict = if !non_invariant.is_empty() {
        Verdict::NotInvariant
    } else if bracket.is_zero() {
        Verdict::Triangular
    } else {
        Verdict::Quasitriangular
    };
    let notes = vec![
        "bracket computed on the skew part; the symmetric part of r is the ad-invariant Casimir of the pairing".to_string(),
    ];
    QuasitriangularReport { bracket, non_invariant, verdict, notes }
}

/// Splits an r-matrix on the `{H, I, F}` basis of `gl(n) (+) t_n` into its
/// `F ^ F` part and its `H ^ I` part.
pub fn split_twist(n: usize, r_skew: &TwoTensor) -> Result<(TwoTensor, TwoTensor), BialgError> {
    let mut r_s = TwoTensor::new();
    let mut r_t = TwoTensor::new();
    let dim = n * n + n;
    for (&(p, q), c) in r_skew.iter() {
        if p >= dim || q >= dim {
            return Err(BialgError::IndexOutOfRange { index: p.max(q), dim });
        }
        match (GlnIndex::unflatten(n, p), GlnIndex::unflatten(n, q)) {
            (GlnIndex::F(..), GlnIndex::F(..)) => r_s.add_term((p, q), c),
            (GlnIndex::H(_), GlnIndex::I(_)) | (GlnIndex::I(_), GlnIndex::H(_)) => r_t.add_term((p, q), c),
            _ => return Err(BialgError::MalformedTwist { p, q }),
        }
    }
    Ok((r_s, r_t))
}
