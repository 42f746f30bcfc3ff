//! Manin triples and their Drinfeld doubles.
//!
//! A triple pairs `s_plus = span{Z_p}` with `s_minus = span{z^p}` through
//! `<Z_p, z^q> = delta_pq`. The double lives on `s_plus (+) s_minus` with the
//! basis ordered `Z_0..Z_{m-1}, z^0..z^{m-1}`.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::liealg::{BilinearForm, LieAlgebra, LieError, StructureTensor};
use crate::matrix::Matrix;
use crate::report::{Violation, ViolationReport};
use crate::scalar::Scalar;
use crate::sparse::Vector;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ManinError {
    #[error("paired algebras have dimensions {plus} and {minus}")]
    DimensionMismatch { plus: usize, minus: usize },
    #[error("compatibility relations fail at {} index tuples", .0.len())]
    Incompatible(ViolationReport),
    #[error(transparent)]
    Lie(#[from] LieError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManinTriple {
    s_plus: LieAlgebra,
    s_minus: LieAlgebra,
    validated: bool,
}

impl ManinTriple {
    /// Pairs index `p` of `s_minus` with index `p` of `s_plus` and checks the
    /// crossed Jacobi identities.
    pub fn new(s_plus: LieAlgebra, s_minus: LieAlgebra) -> Result<Self, ManinError> {
        let report = check_compatibility(s_plus.tensor(), s_minus.tensor())?;
        if !report.is_empty() {
            return Err(ManinError::Incompatible(report));
        }
        Ok(ManinTriple { s_plus, s_minus, validated: true })
    }

    /// Skips the compatibility check so that broken inputs can be diagnosed.
    /// [`build_double`] refuses such a triple unless it happens to be
    /// compatible; [`build_double_unchecked`] does not.
    pub fn new_unchecked(s_plus: LieAlgebra, s_minus: LieAlgebra) -> Result<Self, ManinError> {
        if s_plus.dim() != s_minus.dim() {
            return Err(ManinError::DimensionMismatch { plus: s_plus.dim(), minus: s_minus.dim() });
        }
        Ok(ManinTriple { s_plus, s_minus, validated: false })
    }

    pub fn s_plus(&self) -> &LieAlgebra {
        &self.s_plus
    }

    pub fn s_minus(&self) -> &LieAlgebra {
        &self.s_minus
    }

    /// Dimension of each half.
    pub fn m(&self) -> usize {
        self.s_plus.dim()
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleAlgebra {
    algebra: LieAlgebra,
    pairing: BilinearForm,
    origin: ManinTriple,
}

impl DoubleAlgebra {
    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn pairing(&self) -> &BilinearForm {
        &self.pairing
    }

    pub fn origin(&self) -> &ManinTriple {
        &self.origin
    }

    pub fn m(&self) -> usize {
        self.origin.m()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Same algebra with a different form, for probing the pairing checks.
    pub fn with_pairing(&self, pairing: BilinearForm) -> Result<DoubleAlgebra, LieError> {
        if pairing.dim() != self.dim() {
            return Err(LieError::DimensionMismatch { expected: self.dim(), found: pairing.dim() });
        }
        Ok(DoubleAlgebra { pairing, ..self.clone() })
    }

    /// Same pairing with different brackets, for probing invariance checks.
    pub fn with_algebra(&self, algebra: LieAlgebra) -> Result<DoubleAlgebra, LieError> {
        if algebra.dim() != self.dim() {
            return Err(LieError::DimensionMismatch { expected: self.dim(), found: algebra.dim() });
        }
        Ok(DoubleAlgebra { algebra, ..self.clone() })
    }
}

/// The block form `[[0, Id], [Id, 0]]` on `2m` dimensions.
pub fn dual_pairing(m: usize) -> BilinearForm {
    let mut g = Matrix::zeros(2 * m, 2 * m);
    for p in 0..m {
        g.set(p, m + p, Scalar::one());
        g.set(m + p, p, Scalar::one());
    }
    BilinearForm::new(g).expect("block form is symmetric")
}

/// Evaluates the crossed Jacobi identities
///
/// `c^{pq}_r f^r_{st} = c^{pr}_s f^q_{rt} + c^{rq}_s f^p_{rt} + c^{pr}_t f^q_{sr} + c^{rq}_t f^p_{sr}`
///
/// where `[Z_s, Z_t] = f^r_{st} Z_r` and `[z^p, z^q] = c^{pq}_r z^r`. Both
/// sides are antisymmetric in `(p, q)` and in `(s, t)`, so only `p < q`,
/// `s < t` are reported. The residual is `lhs - rhs`.
pub fn check_compatibility(f: &StructureTensor, c: &StructureTensor) -> Result<ViolationReport, ManinError> {
    if f.dim() != c.dim() {
        return Err(ManinError::DimensionMismatch { plus: f.dim(), minus: c.dim() });
    }
    let fe = f.expanded();
    let ce = c.expanded();

    // f entries (a, b, out) indexed by first and by second lower index.
    let mut f_by_first: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut f_by_second: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut f_by_out: HashMap<usize, Vec<usize>> = HashMap::new();
    for (k, (a, b, out, _)) in fe.iter().enumerate() {
        f_by_first.entry(*a).or_default().push(k);
        f_by_second.entry(*b).or_default().push(k);
        f_by_out.entry(*out).or_default().push(k);
    }

    let mut acc: BTreeMap<(usize, usize, usize, usize), Scalar> = BTreeMap::new();
    let mut add = |key: (usize, usize, usize, usize), value: Scalar| {
        if key.0 < key.1 && key.2 < key.3 {
            *acc.entry(key).or_default() += &value;
        }
    };

    for (cp, cq, cr, cv) in &ce {
        // lhs: c^{pq}_r f^r_{st}, joined on r = output of f
        if let Some(ks) = f_by_out.get(cr) {
            for &k in ks {
                let (s, t, _, fv) = &fe[k];
                add((*cp, *cq, *s, *t), cv * fv);
            }
        }
        // c^{p r}_s f^q_{r t}: c = (p, r; s), f = (r, t; q)
        if let Some(ks) = f_by_first.get(cq) {
            for &k in ks {
                let (_, t, q, fv) = &fe[k];
                add((*cp, *q, *cr, *t), -(cv * fv));
            }
        }
        // c^{r q}_s f^p_{r t}: c = (r, q; s), f = (r, t; p)
        if let Some(ks) = f_by_first.get(cp) {
            for &k in ks {
                let (_, t, p, fv) = &fe[k];
                add((*p, *cq, *cr, *t), -(cv * fv));
            }
        }
        // c^{p r}_t f^q_{s r}: c = (p, r; t), f = (s, r; q)
        if let Some(ks) = f_by_second.get(cq) {
            for &k in ks {
                let (s, _, q, fv) = &fe[k];
                add((*cp, *q, *s, *cr), -(cv * fv));
            }
        }
        // c^{r q}_t f^p_{s r}: c = (r, q; t), f = (s, r; p)
        if let Some(ks) = f_by_second.get(cp) {
            for &k in ks {
                let (s, _, p, fv) = &fe[k];
                add((*p, *cq, *s, *cr), -(cv * fv));
            }
        }
    }

    Ok(acc
        .into_iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|((p, q, s, t), v)| Violation::scalar(vec![p, q, s, t], v))
        .collect())
}

fn double_labels(plus: &LieAlgebra, minus: &LieAlgebra) -> Vec<String> {
    let joined = plus.direct_sum(minus);
    joined.labels().to_vec()
}

/// Builds the double without checking compatibility; the result is a Lie
/// algebra only if the triple is compatible.
///
/// Brackets: the `s_plus` block from `f`, the `s_minus` block from `c`, and
/// `[z^p, Z_q] = f^p_{qr} z^r - c^{pr}_q Z_r`.
pub fn build_double_unchecked(t: &ManinTriple) -> DoubleAlgebra {
    let m = t.m();
    let f = t.s_plus.tensor();
    let c = t.s_minus.tensor();
    let mut tensor = StructureTensor::new(2 * m);
    for (&(p, q), v) in f.entries() {
        tensor.set(p, q, v.clone()).expect("in range");
    }
    for (&(p, q), v) in c.entries() {
        tensor.set(m + p, m + q, v.map_keys(|r| m + r)).expect("in range");
    }
    for p in 0..m {
        for q in 0..m {
            let mut v = Vector::new();
            for r in 0..m {
                v.add_term(m + r, &f.coefficient(q, r, p));
                v.sub_term(r, &c.coefficient(p, r, q));
            }
            tensor.set(m + p, q, v).expect("in range");
        }
    }
    let algebra = LieAlgebra::new(double_labels(&t.s_plus, &t.s_minus), tensor).expect("labels disambiguated");
    DoubleAlgebra { algebra, pairing: dual_pairing(m), origin: t.clone() }
}

/// Builds the Drinfeld double of a validated triple.
pub fn build_double(t: &ManinTriple) -> Result<DoubleAlgebra, ManinError> {
    if !t.validated {
        let report = check_compatibility(t.s_plus.tensor(), t.s_minus.tensor())?;
        if !report.is_empty() {
            return Err(ManinError::Incompatible(report));
        }
    }
    Ok(build_double_unchecked(t))
}

/// Checks that the form is exactly `[[0, Id], [Id, 0]]`: both halves
/// isotropic, dual bases paired by `delta`, determinant `+-1`.
pub fn check_isotropic_pairing(d: &DoubleAlgebra) -> ViolationReport {
    let m = d.m();
    let g = d.pairing();
    let mut report = ViolationReport::new();
    for p in 0..2 * m {
        for q in p..2 * m {
            let value = g.get(p, q);
            let same_half = (p < m) == (q < m);
            if same_half {
                if !value.is_zero() {
                    report.push(Violation::scalar(vec![p, q], value.clone()).with_note("isotropy"));
                }
            } else {
                let expected = if q == p + m { Scalar::one() } else { Scalar::zero() };
                if *value != expected {
                    report.push(Violation::scalar(vec![p, q], value - &expected).with_note("duality"));
                }
            }
        }
    }
    let det = g.determinant();
    if det != Scalar::one() && det != Scalar::integer(-1) {
        report.push(Violation::scalar(Vec::new(), det).with_note("nondegeneracy (determinant)"));
    }
    report.sorted()
}

/// Sign convention for ad-invariance of the pairing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Convention {
    /// `<[a,b],c> = <a,[b,c]>`
    Standard,
    /// `<[a,b],c> = -<a,[b,c]>`
    Negated,
}

impl Convention {
    pub fn describe(self) -> &'static str {
        match self {
            Convention::Standard => "<[a,b],c> = <a,[b,c]>",
            Convention::Negated => "<[a,b],c> = -<a,[b,c]>",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvarianceReport {
    pub standard: ViolationReport,
    pub negated: ViolationReport,
}

impl InvarianceReport {
    pub fn violations(&self, convention: Convention) -> &ViolationReport {
        match convention {
            Convention::Standard => &self.standard,
            Convention::Negated => &self.negated,
        }
    }

    /// Conventions holding for every basis triple.
    pub fn holding(&self) -> Vec<Convention> {
        [Convention::Standard, Convention::Negated]
            .into_iter()
            .filter(|c| self.violations(*c).is_empty())
            .collect()
    }

    pub fn unique(&self) -> Option<Convention> {
        match self.holding().as_slice() {
            [only] => Some(*only),
            _ => None,
        }
    }
}

/// Tests both sign conventions over all basis triples `(a, b, c)`.
pub fn check_ad_invariance(d: &DoubleAlgebra) -> InvarianceReport {
    let alg = d.algebra();
    let g = d.pairing();
    let n = alg.dim();
    let mut standard = ViolationReport::new();
    let mut negated = ViolationReport::new();
    for a in 0..n {
        for b in 0..n {
            let ab = alg.bracket_basis(a, b);
            for c in 0..n {
                let lhs = g.eval(&ab, &Vector::basis(c));
                let rhs = g.eval(&Vector::basis(a), &alg.bracket_basis(b, c));
                let diff = &lhs - &rhs;
                if !diff.is_zero() {
                    standard.push(Violation::scalar(vec![a, b, c], diff));
                }
                let sum = &lhs + &rhs;
                if !sum.is_zero() {
                    negated.push(Violation::scalar(vec![a, b, c], sum));
                }
            }
        }
    }
    InvarianceReport { standard, negated }
}
