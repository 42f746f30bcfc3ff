//! The `gl(n) (+) t_n` Drinfeld double built from two solvable algebras
//! `s_plus(n)` and `s_minus(n)` of dimension `n(n+1)/2`.
//!
//! Index conventions (all 0-based):
//!
//! * `s_plus` / `s_minus`: `X_1..X_n` first, then `Y_ij` for `i < j` in
//!   lexicographic order.
//! * the double: `Z_0..Z_{m-1}` (the `s_plus` basis) followed by
//!   `z^0..z^{m-1}` (the `s_minus` basis), `m = n(n+1)/2`.
//! * `gl(n) (+) t_n`: `H_1..H_n`, then `I_1..I_n`, then `F_ij` for `i != j`
//!   in lexicographic order.

use thiserror::Error;

use crate::bialg::{self, BialgError, Cocommutator};
use crate::liealg::{self, BilinearForm, LieAlgebra, LieError, StructureTensor, TensorDifference};
use crate::manin::{self, DoubleAlgebra, ManinError, ManinTriple};
use crate::matrix::{Matrix, MatrixError};
use crate::report::{Violation, ViolationReport};
use crate::scalar::Scalar;
use crate::sparse::{TwoTensor, Vector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GlnError {
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error(transparent)]
    Manin(#[from] ManinError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Bialg(#[from] BialgError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Basis element of `s_plus(n)` or `s_minus(n)`; indices are 0-based and
/// `Y(i, j)` requires `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SolvableIndex {
    X(usize),
    Y(usize, usize),
}

impl SolvableIndex {
    pub fn dim(n: usize) -> usize {
        n * (n + 1) / 2
    }

    pub fn flatten(self, n: usize) -> usize {
        match self {
            SolvableIndex::X(i) => i,
            SolvableIndex::Y(i, j) => {
                debug_assert!(i < j && j < n);
                n + i * (2 * n - i - 1) / 2 + (j - i - 1)
            }
        }
    }

    pub fn unflatten(n: usize, index: usize) -> SolvableIndex {
        if index < n {
            return SolvableIndex::X(index);
        }
        let mut rest = index - n;
        for i in 0..n {
            let row = n - i - 1;
            if rest < row {
                return SolvableIndex::Y(i, i + 1 + rest);
            }
            rest -= row;
        }
        panic!("index {} out of range for s(n) with n = {}", index, n)
    }

    pub fn all(n: usize) -> Vec<SolvableIndex> {
        (0..Self::dim(n)).map(|k| Self::unflatten(n, k)).collect()
    }
}

/// Basis element of `gl(n) (+) t_n`; `F(i, j)` requires `i != j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GlnIndex {
    H(usize),
    I(usize),
    F(usize, usize),
}

impl GlnIndex {
    pub fn dim(n: usize) -> usize {
        n * n + n
    }

    pub fn flatten(self, n: usize) -> usize {
        match self {
            GlnIndex::H(i) => i,
            GlnIndex::I(i) => n + i,
            GlnIndex::F(i, j) => {
                debug_assert!(i != j && i < n && j < n);
                2 * n + i * (n - 1) + if j < i { j } else { j - 1 }
            }
        }
    }

    pub fn unflatten(n: usize, index: usize) -> GlnIndex {
        if index < n {
            GlnIndex::H(index)
        } else if index < 2 * n {
            GlnIndex::I(index - n)
        } else {
            let rest = index - 2 * n;
            let i = rest / (n - 1);
            let k = rest % (n - 1);
            GlnIndex::F(i, if k < i { k } else { k + 1 })
        }
    }

    pub fn all(n: usize) -> Vec<GlnIndex> {
        (0..Self::dim(n)).map(|k| Self::unflatten(n, k)).collect()
    }
}

fn pair_label(prefix: &str, n: usize, i: usize, j: usize) -> String {
    if n >= 10 {
        format!("{}{}_{}", prefix, i + 1, j + 1)
    } else {
        format!("{}{}{}", prefix, i + 1, j + 1)
    }
}

fn solvable_labels(n: usize, cartan: &str, root: &str) -> Vec<String> {
    SolvableIndex::all(n)
        .into_iter()
        .map(|s| match s {
            SolvableIndex::X(i) => format!("{}{}", cartan, i + 1),
            SolvableIndex::Y(i, j) => pair_label(root, n, i, j),
        })
        .collect()
}

pub fn gln_labels(n: usize) -> Vec<String> {
    GlnIndex::all(n)
        .into_iter()
        .map(|g| match g {
            GlnIndex::H(i) => format!("H{}", i + 1),
            GlnIndex::I(i) => format!("I{}", i + 1),
            GlnIndex::F(i, j) => pair_label("F", n, i, j),
        })
        .collect()
}

/// `[X_i, Y_jk] = a (d_ij - d_ik) Y_jk`, `[Y_ij, Y_kl] = d_jk Y_il - d_il Y_kj`,
/// everything multiplied by `sign`.
fn solvable_tensor(n: usize, a: &Scalar, sign: &Scalar) -> StructureTensor {
    let idx = |s: SolvableIndex| s.flatten(n);
    let bracket = |p: SolvableIndex, q: SolvableIndex| -> Vector {
        let mut v = Vector::new();
        match (p, q) {
            (SolvableIndex::X(_), SolvableIndex::X(_)) => {}
            (SolvableIndex::X(i), SolvableIndex::Y(j, k)) => {
                let weight = (i == j) as i64 - (i == k) as i64;
                if weight != 0 {
                    v.add_term(idx(q), &(a * &Scalar::integer(weight)));
                }
            }
            (SolvableIndex::Y(j, k), SolvableIndex::X(i)) => {
                let weight = (i == j) as i64 - (i == k) as i64;
                if weight != 0 {
                    v.add_term(idx(p), &-(a * &Scalar::integer(weight)));
                }
            }
            (SolvableIndex::Y(i, j), SolvableIndex::Y(k, l)) => {
                if j == k {
                    v.add_term(idx(SolvableIndex::Y(i, l)), &Scalar::one());
                }
                if i == l {
                    v.sub_term(idx(SolvableIndex::Y(k, j)), &Scalar::one());
                }
            }
        }
        v.scaled(sign)
    };
    let basis = SolvableIndex::all(n);
    let mut tensor = StructureTensor::new(basis.len());
    for (p, &sp) in basis.iter().enumerate() {
        for (q, &sq) in basis.iter().enumerate().skip(p + 1) {
            tensor.set(p, q, bracket(sp, sq)).expect("indices in range");
        }
    }
    tensor
}

/// `s_plus(n)` with the Cartan weight normalized by `a` (the standard
/// choice is `1/sqrt2`).
pub fn build_s_plus_normalized(n: usize, a: &Scalar) -> Result<LieAlgebra, GlnError> {
    if n == 0 {
        return Err(GlnError::ZeroRank);
    }
    Ok(LieAlgebra::new(solvable_labels(n, "X", "Y"), solvable_tensor(n, a, &Scalar::one()))?)
}

/// `s_minus(n)`: the brackets of `s_plus(n)` with every sign flipped.
pub fn build_s_minus_normalized(n: usize, a: &Scalar) -> Result<LieAlgebra, GlnError> {
    if n == 0 {
        return Err(GlnError::ZeroRank);
    }
    Ok(LieAlgebra::new(solvable_labels(n, "x", "y"), solvable_tensor(n, a, &Scalar::integer(-1)))?)
}

pub fn build_s_plus(n: usize) -> Result<LieAlgebra, GlnError> {
    build_s_plus_normalized(n, &Scalar::inv_sqrt2())
}

pub fn build_s_minus(n: usize) -> Result<LieAlgebra, GlnError> {
    build_s_minus_normalized(n, &Scalar::inv_sqrt2())
}

/// The index-aligned Manin triple; fails if compatibility does not hold.
pub fn build_gln_triple(n: usize) -> Result<ManinTriple, GlnError> {
    Ok(ManinTriple::new(build_s_plus(n)?, build_s_minus(n)?)?)
}

pub fn build_gln_double(n: usize) -> Result<DoubleAlgebra, GlnError> {
    Ok(manin::build_double(&build_gln_triple(n)?)?)
}

/// Columns are the `{H, I, F}` vectors written in the double's `{Z, z}`
/// basis:
/// `H_i = (X_i + x^i)/sqrt2`, `I_i = (X_i - x^i)/(i sqrt2)`,
/// `F_ij = Y_ij` for `i < j` and `F_ij = y^ji` for `i > j`.
pub fn gln_change_of_basis(n: usize) -> Result<Matrix, GlnError> {
    if n == 0 {
        return Err(GlnError::ZeroRank);
    }
    let m = SolvableIndex::dim(n);
    let h = Scalar::inv_sqrt2();
    // 1/(i sqrt2) = -i/sqrt2
    let k = -(&Scalar::i() * &h);
    let columns: Vec<Vector> = GlnIndex::all(n)
        .into_iter()
        .map(|g| match g {
            GlnIndex::H(i) => Vector::from_terms([(i, h.clone()), (m + i, h.clone())]),
            GlnIndex::I(i) => Vector::from_terms([(i, k.clone()), (m + i, -&k)]),
            GlnIndex::F(i, j) if i < j => Vector::basis(SolvableIndex::Y(i, j).flatten(n)),
            GlnIndex::F(i, j) => Vector::basis(m + SolvableIndex::Y(j, i).flatten(n)),
        })
        .collect();
    Ok(Matrix::from_columns(2 * m, &columns))
}

/// Fundamental `n x n` matrices on the `{H, I, F}` basis:
/// `H_i = E_ii`, `F_ij = E_ij`, and `I_i = 0`.
pub fn fundamental_matrices(n: usize) -> Vec<Matrix> {
    GlnIndex::all(n)
        .into_iter()
        .map(|g| {
            let mut e = Matrix::zeros(n, n);
            match g {
                GlnIndex::H(i) => e.set(i, i, Scalar::one()),
                GlnIndex::I(_) => {}
                GlnIndex::F(i, j) => e.set(i, j, Scalar::one()),
            }
            e
        })
        .collect()
}

/// Decomposes an `n x n` matrix into `H` and `F` coordinates.
fn decompose_gl(n: usize, a: &Matrix) -> Vector {
    let mut v = Vector::new();
    for k in 0..n {
        for l in 0..n {
            let c = a.get(k, l);
            if c.is_zero() {
                continue;
            }
            let g = if k == l { GlnIndex::H(k) } else { GlnIndex::F(k, l) };
            v.add_term(g.flatten(n), c);
        }
    }
    v
}

/// `gl(n) (+) t_n` with brackets read from matrix commutators of the
/// fundamental representation and `I_1..I_n` central.
pub fn build_gln_tn(n: usize) -> Result<LieAlgebra, GlnError> {
    if n == 0 {
        return Err(GlnError::ZeroRank);
    }
    let mats = fundamental_matrices(n);
    let dim = GlnIndex::dim(n);
    let mut tensor = StructureTensor::new(dim);
    for p in 0..dim {
        for q in p + 1..dim {
            let comm = {
                let ab = &mats[p] * &mats[q];
                let ba = &mats[q] * &mats[p];
                let mut c = Matrix::zeros(n, n);
                for i in 0..n {
                    for j in 0..n {
                        c.set(i, j, ab.get(i, j) - ba.get(i, j));
                    }
                }
                c
            };
            tensor.set(p, q, decompose_gl(n, &comm))?;
        }
    }
    Ok(LieAlgebra::new(gln_labels(n), tensor)?)
}

/// Trace form of the fundamental representation on the `gl(n)` block,
/// extended by `<I_i, I_j> = d_ij`.
pub fn oscillator_form(n: usize) -> Result<BilinearForm, GlnError> {
    let trace = liealg::trace_form(&fundamental_matrices(n))?;
    let mut g = trace.matrix().clone();
    for i in 0..n {
        let p = GlnIndex::I(i).flatten(n);
        g.set(p, p, Scalar::one());
    }
    Ok(BilinearForm::new(g)?)
}

/// Outcome of comparing a transported double with `gl(n) (+) t_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsomorphismReport {
    pub n: usize,
    pub differences: Vec<TensorDifference>,
}

impl IsomorphismReport {
    pub fn passed(&self) -> bool {
        self.differences.is_empty()
    }

    pub fn first_difference(&self) -> Option<&TensorDifference> {
        self.differences.first()
    }

    pub fn to_violations(&self) -> ViolationReport {
        self.differences
            .iter()
            .map(|d| Violation::scalar(vec![d.p, d.q, d.r], &d.left - &d.right))
            .collect()
    }
}

/// Transports `double` (on the `{Z, z}` basis of rank `n`) to `{H, I, F}`
/// and compares it with [`build_gln_tn`].
pub fn compare_with_gln(n: usize, double: &LieAlgebra) -> Result<IsomorphismReport, GlnError> {
    let moved = double.change_of_basis(&gln_change_of_basis(n)?)?;
    let target = build_gln_tn(n)?;
    Ok(IsomorphismReport { n, differences: moved.differences(&target) })
}

pub fn verify_double_is_gln(n: usize) -> Result<IsomorphismReport, GlnError> {
    compare_with_gln(n, build_gln_double(n)?.algebra())
}

/// `delta_D` of the rank-`n` double, on the `{H, I, F}` basis.
pub fn gln_cocommutator(n: usize) -> Result<Cocommutator, GlnError> {
    let triple = build_gln_triple(n)?;
    let delta = bialg::cocommutator_from_triple(&triple);
    Ok(bialg::express_in_basis(&delta, &gln_change_of_basis(n)?)?)
}

/// Closed form of `delta_D` on `{H, I, F}`:
///
/// * `delta(H_i) = delta(I_i) = 0`
/// * `i < j`: `-1/2 F_ij^(H_i-H_j) - i/2 F_ij^(I_i-I_j) + sum_{i<k<j} F_ik^F_kj`
/// * `i > j`: `1/2 F_ij^(H_i-H_j) - i/2 F_ij^(I_i-I_j) - sum_{j<k<i} F_ik^F_kj`
pub fn delta_closed_form(n: usize) -> Result<Cocommutator, GlnError> {
    if n == 0 {
        return Err(GlnError::ZeroRank);
    }
    let idx = |g: GlnIndex| g.flatten(n);
    let e = |g: GlnIndex| Vector::basis(g.flatten(n));
    let half = Scalar::ratio(1, 2);
    let twist = -(&Scalar::i() * &half);
    let mut delta = Cocommutator::zero(GlnIndex::dim(n));
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let f = e(GlnIndex::F(i, j));
            let cartan = e(GlnIndex::H(i)).minus(&e(GlnIndex::H(j)));
            let central = e(GlnIndex::I(i)).minus(&e(GlnIndex::I(j)));
            let (sign, range) = if i < j { (Scalar::integer(-1), i + 1..j) } else { (Scalar::one(), j + 1..i) };
            let mut v = TwoTensor::wedge(&f, &cartan).scaled(&(&sign * &half));
            v.add_scaled(&twist, &TwoTensor::wedge(&f, &central));
            for k in range {
                v.add_scaled(&-&sign, &TwoTensor::wedge(&e(GlnIndex::F(i, k)), &e(GlnIndex::F(k, j))));
            }
            delta.set(idx(GlnIndex::F(i, j)), v)?;
        }
    }
    Ok(delta)
}

/// `r_skew` of the rank-`n` triple, on the `{H, I, F}` basis.
pub fn gln_rmatrix(n: usize) -> Result<TwoTensor, GlnError> {
    let (_, skew) = bialg::build_rmatrix(&build_gln_triple(n)?);
    Ok(bialg::two_tensor_in_basis(&skew, &gln_change_of_basis(n)?)?)
}

/// The coefficient of `H_1 (x) I_1` in [`gln_rmatrix`], which is the
/// coefficient of each `H_i ^ I_i` in its Cartan part.
pub fn cartan_rmatrix_coefficient(n: usize) -> Result<Scalar, GlnError> {
    let r = gln_rmatrix(n)?;
    Ok(r.coeff(&(GlnIndex::H(0).flatten(n), GlnIndex::I(0).flatten(n))))
}

/// The `i/4` normalization of the `H_i ^ I_i` terms found in some
/// presentations of this r-matrix.
pub fn alternative_cartan_coefficient() -> Scalar {
    &Scalar::i() * &Scalar::ratio(1, 4)
}

/// Images of `X_i -> -x^i`, `Y_ij -> -y^ij`, an isomorphism
/// `s_plus(n) -> s_minus(n)`.
pub fn self_duality_images(n: usize) -> Vec<Vector> {
    (0..SolvableIndex::dim(n)).map(|k| Vector::term(k, Scalar::integer(-1))).collect()
}

/// Checks that [`self_duality_images`] is a Lie homomorphism (it is
/// bijective by construction).
pub fn check_self_duality(n: usize) -> Result<ViolationReport, GlnError> {
    let s_plus = build_s_plus(n)?;
    let s_minus = build_s_minus(n)?;
    Ok(liealg::check_homomorphism(&s_plus, &s_minus, &self_duality_images(n))?)
}

/// Bracket and cocommutator defects of an embedding of bialgebras.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingReport {
    pub brackets: ViolationReport,
    pub cocommutator: ViolationReport,
}

impl EmbeddingReport {
    pub fn passed(&self) -> bool {
        self.brackets.is_empty() && self.cocommutator.is_empty()
    }

    pub fn violations(&self) -> ViolationReport {
        let mut all = self.brackets.clone();
        for v in self.cocommutator.iter() {
            all.push(v.clone().with_note("cocommutator"));
        }
        all
    }
}

/// Checks that `e_p -> images[p]` intertwines brackets and cocommutators.
pub fn check_bialgebra_embedding(
    small: &LieAlgebra,
    small_delta: &Cocommutator,
    big: &LieAlgebra,
    big_delta: &Cocommutator,
    images: &[Vector],
) -> Result<EmbeddingReport, GlnError> {
    let brackets = liealg::check_homomorphism(small, big, images)?;
    let mut cocommutator = ViolationReport::new();
    for (p, image) in images.iter().enumerate() {
        let mut pushed = TwoTensor::new();
        for (&(a, b), c) in small_delta.get(p).iter() {
            pushed.add_scaled(c, &TwoTensor::tensor(&images[a], &images[b]));
        }
        let residual = big_delta.apply(image).minus(&pushed);
        if !residual.is_zero() {
            cocommutator.push(Violation::two_tensor(vec![p], &residual));
        }
    }
    Ok(EmbeddingReport { brackets, cocommutator })
}

/// Generator-wise images of `gl(m) (+) t_m` in `gl(m+1) (+) t_(m+1)`.
pub fn chain_images(m: usize) -> Vec<Vector> {
    GlnIndex::all(m)
        .into_iter()
        .map(|g| Vector::basis(g.flatten(m + 1)))
        .collect()
}

/// `gl(m) (+) t_m -> gl(m+1) (+) t_(m+1)` as an embedding of bialgebras.
pub fn check_chain_embedding(m: usize) -> Result<EmbeddingReport, GlnError> {
    let small = build_gln_tn(m)?;
    let big = build_gln_tn(m + 1)?;
    check_bialgebra_embedding(&small, &gln_cocommutator(m)?, &big, &gln_cocommutator(m + 1)?, &chain_images(m))
}

/// Index map of the quotient identifying `I_1 = ... = I_n`: the target has
/// basis `H_1..H_n, I, F_ij` (dimension `n^2 + 1`).
pub fn identify_central_index(n: usize, index: usize) -> usize {
    match GlnIndex::unflatten(n, index) {
        GlnIndex::H(i) => i,
        GlnIndex::I(_) => n,
        GlnIndex::F(..) => index - n + 1,
    }
}

pub fn identify_central(n: usize, t: &TwoTensor) -> TwoTensor {
    t.map_keys(|(a, b)| (identify_central_index(n, a), identify_central_index(n, b)))
}

/// Result of splitting `r_skew = r_s + r_t` and testing the twist `r_t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistReport {
    pub r_s: TwoTensor,
    pub r_t: TwoTensor,
    /// `(flattened F_ij, c)` with `coboundary(r_t)(F_ij) = c F_ij ^ (I_i - I_j)`.
    pub factors: Vec<(usize, Scalar)>,
    /// Generators where `coboundary(r_t)` is not of that form.
    pub not_proportional: ViolationReport,
    /// Generators where the image under [`identify_central`] is nonzero.
    pub quotient: ViolationReport,
    /// Mismatches of `coboundary(r_s)` / `coboundary(r_t)` against the
    /// non-central / central terms of [`delta_closed_form`].
    pub split: ViolationReport,
}

impl TwistReport {
    pub fn trivial_in_quotient(&self) -> bool {
        self.not_proportional.is_empty() && self.quotient.is_empty()
    }
}

fn touches_central(n: usize, (a, b): (usize, usize)) -> bool {
    matches!(GlnIndex::unflatten(n, a), GlnIndex::I(_)) || matches!(GlnIndex::unflatten(n, b), GlnIndex::I(_))
}

pub fn check_twist(n: usize) -> Result<TwistReport, GlnError> {
    let alg = build_gln_tn(n)?;
    let (r_s, r_t) = bialg::split_twist(n, &gln_rmatrix(n)?)?;
    let delta_s = bialg::coboundary(&alg, &r_s)?;
    let delta_t = bialg::coboundary(&alg, &r_t)?;
    let closed = delta_closed_form(n)?;
    let mut factors = Vec::new();
    let mut not_proportional = ViolationReport::new();
    let mut quotient = ViolationReport::new();
    let mut split = ViolationReport::new();
    for (p, g) in GlnIndex::all(n).into_iter().enumerate() {
        let value = delta_t.get(p);
        if let GlnIndex::F(i, j) = g {
            let central = Vector::basis(GlnIndex::I(i).flatten(n)).minus(&Vector::basis(GlnIndex::I(j).flatten(n)));
            let shape = TwoTensor::wedge(&Vector::basis(p), &central);
            let c = value.coeff(&(p, GlnIndex::I(i).flatten(n)));
            let residual = value.minus(&shape.scaled(&c));
            if residual.is_zero() {
                factors.push((p, c));
            } else {
                not_proportional.push(Violation::two_tensor(vec![p], &residual));
            }
        } else if !value.is_zero() {
            not_proportional.push(Violation::two_tensor(vec![p], &value));
        }
        let image = identify_central(n, &value);
        if !image.is_zero() {
            quotient.push(Violation::two_tensor(vec![p], &image));
        }
        let expected = closed.get(p);
        let expected_s = expected.filter(|&k| !touches_central(n, k));
        let expected_t = expected.filter(|&k| touches_central(n, k));
        let rs = delta_s.get(p).minus(&expected_s);
        if !rs.is_zero() {
            split.push(Violation::two_tensor(vec![p], &rs).with_note("r_s"));
        }
        let rt = value.minus(&expected_t);
        if !rt.is_zero() {
            split.push(Violation::two_tensor(vec![p], &rt).with_note("r_t"));
        }
    }
    Ok(TwistReport { r_s, r_t, factors, not_proportional, quotient, split })
}
