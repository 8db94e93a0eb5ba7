use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use super::poly::WeightPoly;

/// Finite linear combination of normal-form words with polynomial coefficients.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalSum<W: Ord> {
    terms: BTreeMap<W, WeightPoly>,
}

impl<W: Ord> Default for FormalSum<W> {
    fn default() -> Self {
        FormalSum {
            terms: BTreeMap::new(),
        }
    }
}

impl<W: Ord + Clone> FormalSum<W> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(word: W) -> Self {
        Self::term(word, WeightPoly::one())
    }

    pub fn term(word: W, coeff: WeightPoly) -> Self {
        let mut s = Self::zero();
        s.add_term(word, coeff);
        s
    }

    pub fn add_term(&mut self, word: W, coeff: WeightPoly) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&word) {
            Some(c) => {
                *c = &*c + &coeff;
                if c.is_zero() {
                    self.terms.remove(&word);
                }
            }
            None => {
                self.terms.insert(word, coeff);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &FormalSum<W>, factor: &WeightPoly) {
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c * factor);
        }
    }

    pub fn scale(&self, factor: &WeightPoly) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, factor);
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

    pub fn coefficient(&self, word: &W) -> WeightPoly {
        self.terms.get(word).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&W, &WeightPoly)> {
        self.terms.iter()
    }

    pub fn words(&self) -> impl Iterator<Item = &W> {
        self.terms.keys()
    }

    /// Applies `f` to every coefficient.
    pub fn map_coefficients(&self, f: impl Fn(&WeightPoly) -> WeightPoly) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c));
        }
        out
    }

    /// Bilinear extension of a word-level product.
    pub fn product_with(&self, other: &FormalSum<W>, f: impl Fn(&W, &W) -> W) -> Self {
        let mut out = Self::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(f(w1, w2), c1 * c2);
            }
        }
        out
    }

    pub fn filter(&self, keep: impl Fn(&W) -> bool) -> Self {
        FormalSum {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| keep(w))
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }
}

impl<W: Ord + Clone> Add for &FormalSum<W> {
    type Output = FormalSum<W>;
    fn add(self, o: &FormalSum<W>) -> FormalSum<W> {
        let mut out = self.clone();
        out.add_scaled(o, &WeightPoly::one());
        out
    }
}

impl<W: Ord + Clone> Add for FormalSum<W> {
    type Output = FormalSum<W>;
    fn add(self, o: FormalSum<W>) -> FormalSum<W> {
        &self + &o
    }
}

impl<W: Ord + Clone> Sub for &FormalSum<W> {
    type Output = FormalSum<W>;
    fn sub(self, o: &FormalSum<W>) -> FormalSum<W> {
        let mut out = self.clone();
        out.add_scaled(o, &WeightPoly::int(-1));
        out
    }
}

impl<W: Ord + Clone> Sub for FormalSum<W> {
    type Output = FormalSum<W>;
    fn sub(self, o: FormalSum<W>) -> FormalSum<W> {
        &self - &o
    }
}

impl<W: Ord + Clone> Neg for &FormalSum<W> {
    type Output = FormalSum<W>;
    fn neg(self) -> FormalSum<W> {
        self.scale(&WeightPoly::int(-1))
    }
}

impl<W: Ord + Clone> Neg for FormalSum<W> {
    type Output = FormalSum<W>;
    fn neg(self) -> FormalSum<W> {
        -&self
    }
}
