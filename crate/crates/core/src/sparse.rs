//! Sparse coefficient containers keyed by basis indices.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::Scalar;

/// Sparse linear combination `sum coeff * e_key`. Zero coefficients are never
/// stored, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Sparse<K: Ord> {
    terms: BTreeMap<K, Scalar>,
}

/// Element of an algebra, indexed by basis position.
pub type Vector = Sparse<usize>;
/// Element of `g (x) g`.
pub type TwoTensor = Sparse<(usize, usize)>;
/// Element of `g (x) g (x) g`.
pub type ThreeTensor = Sparse<(usize, usize, usize)>;

impl<K: Ord> Default for Sparse<K> {
    fn default() -> Self {
        Sparse { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Copy> Sparse<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn term(key: K, coeff: Scalar) -> Self {
        let mut out = Self::new();
        out.add_term(key, &coeff);
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (K, Scalar)>) -> Self {
        let mut out = Self::new();
        for (k, c) in terms {
            out.add_term(k, &c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, key: &K) -> Option<&Scalar> {
        self.terms.get(key)
    }

    pub fn coeff(&self, key: &K) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Scalar)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, key: K, coeff: &Scalar) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_default();
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn sub_term(&mut self, key: K, coeff: &Scalar) {
        self.add_term(key, &-coeff);
    }

    pub fn set(&mut self, key: K, coeff: Scalar) {
        if coeff.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, coeff);
        }
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, factor: &Scalar, other: &Self) {
        if factor.is_zero() {
            return;
        }
        for (k, c) in &other.terms {
            self.add_term(*k, &(factor * c));
        }
    }

    pub fn scaled(&self, factor: &Scalar) -> Self {
        let mut out = Self::new();
        out.add_scaled(factor, self);
        out
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(&Scalar::one(), other);
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(&Scalar::integer(-1), other);
        out
    }

    pub fn negated(&self) -> Self {
        self.scaled(&Scalar::integer(-1))
    }

    /// Relabels keys, summing coefficients that land on the same key.
    pub fn map_keys<J: Ord + Copy>(&self, f: impl Fn(K) -> J) -> Sparse<J> {
        Sparse::from_terms(self.terms.iter().map(|(k, c)| (f(*k), c.clone())))
    }

    pub fn filter(&self, keep: impl Fn(&K) -> bool) -> Self {
        Sparse { terms: self.terms.iter().filter(|(k, _)| keep(k)).map(|(k, c)| (*k, c.clone())).collect() }
    }

    /// Renders `c1*name(k1) + c2*name(k2) + ...`, or `0`.
    pub fn render(&self, name: impl Fn(&K) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in &self.terms {
            let label = name(k);
            let text = c.to_string();
            let (negative, body) = if c.term_count() == 1 {
                match text.strip_prefix('-') {
                    Some(rest) => (true, rest.to_string()),
                    None => (false, text),
                }
            } else {
                (false, format!("({})", text))
            };
            let term = if body == "1" { label } else { format!("{}*{}", body, label) };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            out.push_str(&term);
        }
        out
    }
}

impl<K: Ord + Copy> FromIterator<(K, Scalar)> for Sparse<K> {
    fn from_iter<I: IntoIterator<Item = (K, Scalar)>>(iter: I) -> Self {
        Self::from_terms(iter)
    }
}

impl Vector {
    pub fn basis(index: usize) -> Self {
        Self::term(index, Scalar::one())
    }

    pub fn max_index(&self) -> Option<usize> {
        self.terms.keys().next_back().copied()
    }
}

impl TwoTensor {
    /// `a (x) b`.
    pub fn tensor(a: &Vector, b: &Vector) -> Self {
        let mut out = Self::new();
        for (p, x) in a.iter() {
            for (q, y) in b.iter() {
                out.add_term((*p, *q), &(x * y));
            }
        }
        out
    }

    /// `a ^ b = a (x) b - b (x) a` (no factor 1/2).
    pub fn wedge(a: &Vector, b: &Vector) -> Self {
        Self::tensor(a, b).minus(&Self::tensor(b, a))
    }

    pub fn transpose(&self) -> Self {
        self.map_keys(|(p, q)| (q, p))
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.plus(&self.transpose()).is_zero()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.keys().map(|&(p, q)| p.max(q)).max()
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(|k| format!("e{}", k)))
    }
}

impl fmt::Debug for TwoTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(|(p, q)| format!("e{}(x)e{}", p, q)))
    }
}

impl fmt::Debug for ThreeTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(|(p, q, r)| format!("e{}(x)e{}(x)e{}", p, q, r)))
    }
}
