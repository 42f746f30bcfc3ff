//! Counterexample lists produced by the exact checks.

use crate::scalar::Scalar;
use crate::sparse::{Sparse, ThreeTensor, TwoTensor, Vector};

/// A single failed instance of an identity: the basis indices it was
/// evaluated at and the nonzero residual, stored component-wise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub indices: Vec<usize>,
    /// `(component index, coefficient)`; the component index is empty for a
    /// scalar residual.
    pub residual: Vec<(Vec<usize>, Scalar)>,
    pub note: Option<String>,
}

impl Violation {
    pub fn scalar(indices: Vec<usize>, value: Scalar) -> Self {
        Violation { indices, residual: vec![(Vec::new(), value)], note: None }
    }

    pub fn vector(indices: Vec<usize>, value: &Vector) -> Self {
        Self::from_sparse(indices, value, |k| vec![*k])
    }

    pub fn two_tensor(indices: Vec<usize>, value: &TwoTensor) -> Self {
        Self::from_sparse(indices, value, |&(a, b)| vec![a, b])
    }

    pub fn three_tensor(indices: Vec<usize>, value: &ThreeTensor) -> Self {
        Self::from_sparse(indices, value, |&(a, b, c)| vec![a, b, c])
    }

    fn from_sparse<K: Ord + Copy>(indices: Vec<usize>, value: &Sparse<K>, key: impl Fn(&K) -> Vec<usize>) -> Self {
        Violation { indices, residual: value.iter().map(|(k, c)| (key(k), c.clone())).collect(), note: None }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Canonical text of the residual, e.g. `(1/2*sqrt2)[2] + (-1)[0]`.
    pub fn residual_string(&self) -> String {
        let body = if self.residual.is_empty() {
            "0".to_string()
        } else {
            self.residual
                .iter()
                .map(|(idx, c)| {
                    if idx.is_empty() {
                        c.to_string()
                    } else {
                        let idx: Vec<String> = idx.iter().map(usize::to_string).collect();
                        format!("({})[{}]", c, idx.join(","))
                    }
                })
                .collect::<Vec<_>>()
                .join(" + ")
        };
        match &self.note {
            Some(note) => format!("{}: {}", note, body),
            None => body,
        }
    }
}

/// Ordered list of violations; empty means the identity holds exactly.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ViolationReport {
    violations: Vec<Violation>,
}

impl ViolationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, v: Violation) {
        self.violations.push(v);
    }

    pub fn extend(&mut self, other: ViolationReport) {
        self.violations.extend(other.violations);
    }

    /// Sorts violations lexicographically by index tuple.
    pub fn sorted(mut self) -> Self {
        self.violations.sort_by(|a, b| a.indices.cmp(&b.indices));
        self
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.violations.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Violation> {
        self.violations.iter()
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }

    pub fn find(&self, indices: &[usize]) -> Option<&Violation> {
        self.violations.iter().find(|v| v.indices == indices)
    }
}

impl FromIterator<Violation> for ViolationReport {
    fn from_iter<I: IntoIterator<Item = Violation>>(iter: I) -> Self {
        ViolationReport { violations: iter.into_iter().collect() }
    }
}

impl IntoIterator for ViolationReport {
    type Item = Violation;
    type IntoIter = std::vec::IntoIter<Violation>;
    fn into_iter(self) -> Self::IntoIter {
        self.violations.into_iter()
    }
}
