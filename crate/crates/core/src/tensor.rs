//! Dense mixed tensors of type (p,q).
//!
//! Every index of a tensor ranges over the same `dim` values. Entries are
//! stored flat in lexicographic order of the full multi-index, with all upper
//! indices before all lower indices and the first index most significant.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numbers of upper (contravariant) and lower (covariant) indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorShape {
    pub upper: usize,
    pub lower: usize,
}

impl TensorShape {
    pub const SCALAR: TensorShape = TensorShape::new(0, 0);
    pub const MATRIX: TensorShape = TensorShape::new(1, 1);
    pub const LOW: TensorShape = TensorShape::new(1, 2);
    pub const HIGH: TensorShape = TensorShape::new(2, 1);

    pub const fn new(upper: usize, lower: usize) -> Self {
        TensorShape { upper, lower }
    }

    pub fn grading(&self) -> i64 {
        self.upper as i64 - self.lower as i64
    }

    pub fn rank(&self) -> usize {
        self.upper + self.lower
    }
}

/// Grading of a tensor type: upper count minus lower count, so `[V] = +1`.
pub fn grading(shape: TensorShape) -> i64 {
    shape.grading()
}

impl fmt::Display for TensorShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.upper, self.lower)
    }
}

impl FromStr for TensorShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected a shape like (2,1), got {s:?}"));
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (p, q) = inner.split_once(',').ok_or_else(bad)?;
        let upper = p.trim().parse().map_err(|_| bad())?;
        let lower = q.trim().parse().map_err(|_| bad())?;
        Ok(TensorShape::new(upper, lower))
    }
}

impl Serialize for TensorShape {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.upper, self.lower].serialize(s)
    }
}

impl<'de> Deserialize<'de> for TensorShape {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [upper, lower] = <[usize; 2]>::deserialize(d)?;
        Ok(TensorShape::new(upper, lower))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TensorJson", into = "TensorJson")]
pub struct DenseTensor {
    shape: TensorShape,
    dim: usize,
    entries: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct TensorJson {
    shape: TensorShape,
    dim: usize,
    entries: Vec<[f64; 2]>,
}

impl From<DenseTensor> for TensorJson {
    fn from(t: DenseTensor) -> Self {
        TensorJson {
            shape: t.shape,
            dim: t.dim,
            entries: t.entries.iter().map(|c| [c.re, c.im]).collect(),
        }
    }
}

impl TryFrom<TensorJson> for DenseTensor {
    type Error = Error;

    fn try_from(j: TensorJson) -> Result<Self> {
        let entries = j.entries.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
        DenseTensor::from_entries(j.shape, j.dim, entries)
    }
}

fn entry_count(shape: TensorShape, dim: usize) -> usize {
    dim.pow(shape.rank() as u32)
}

impl DenseTensor {
    pub fn zeros(shape: TensorShape, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(DenseTensor {
            shape,
            dim,
            entries: vec![Complex64::new(0.0, 0.0); entry_count(shape, dim)],
        })
    }

    pub fn from_entries(shape: TensorShape, dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let expected = entry_count(shape, dim);
        if entries.len() != expected {
            return Err(Error::EntryCount {
                expected,
                found: entries.len(),
            });
        }
        Ok(DenseTensor { shape, dim, entries })
    }

    /// A (0,0) tensor. Scalars carry `dim` so they combine with other tensors.
    pub fn scalar(value: Complex64, dim: usize) -> Result<Self> {
        Self::from_entries(TensorShape::SCALAR, dim, vec![value])
    }

    /// The Kronecker delta as a (1,1) tensor.
    pub fn identity(dim: usize) -> Result<Self> {
        let mut t = Self::zeros(TensorShape::MATRIX, dim)?;
        for i in 0..dim {
            t.entries[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        Ok(t)
    }

    /// A (1,1) tensor from row-major real rows; `rows[i][j]` is `A^i_j`.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let dim = rows.len();
        let entries = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)))
            .collect();
        Self::from_entries(TensorShape::MATRIX, dim, entries)
    }

    pub fn shape(&self) -> TensorShape {
        self.shape
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn grading(&self) -> i64 {
        self.shape.grading()
    }

    fn offset(&self, index: &[usize]) -> usize {
        assert_eq!(index.len(), self.shape.rank(), "multi-index length");
        index.iter().fold(0, |acc, &i| {
            assert!(i < self.dim, "index {i} out of range");
            acc * self.dim + i
        })
    }

    /// Entry at the full multi-index (uppers then lowers).
    pub fn get(&self, index: &[usize]) -> Complex64 {
        self.entries[self.offset(index)]
    }

    pub fn set(&mut self, index: &[usize], value: Complex64) {
        let off = self.offset(index);
        self.entries[off] = value;
    }

    /// Value of a (0,0) tensor.
    pub fn scalar_value(&self) -> Option<Complex64> {
        (self.shape == TensorShape::SCALAR).then(|| self.entries[0])
    }

    fn check_same(&self, other: &DenseTensor) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch {
                expected: self.shape,
                found: other.shape,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &DenseTensor) -> Result<DenseTensor> {
        self.check_same(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(DenseTensor { entries, ..self.clone() })
    }

    pub fn sub(&self, other: &DenseTensor) -> Result<DenseTensor> {
        self.check_same(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(DenseTensor { entries, ..self.clone() })
    }

    pub fn add_assign_scaled(&mut self, other: &DenseTensor, factor: Complex64) -> Result<()> {
        self.check_same(other)?;
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            *a += factor * b;
        }
        Ok(())
    }

    pub fn scale(&self, factor: Complex64) -> DenseTensor {
        DenseTensor {
            entries: self.entries.iter().map(|a| a * factor).collect(),
            ..self.clone()
        }
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.entries.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn tensor_product(&self, other: &DenseTensor) -> Result<DenseTensor> {
        tensor_product(self, other)
    }

    pub fn contract(&self, upper_slot: usize, lower_slot: usize) -> Result<DenseTensor> {
        contract(self, upper_slot, lower_slot)
    }

    /// Trace of a (1,1) tensor.
    pub fn trace(&self) -> Result<Complex64> {
        if self.shape != TensorShape::MATRIX {
            return Err(Error::ShapeMismatch {
                expected: TensorShape::MATRIX,
                found: self.shape,
            });
        }
        Ok((0..self.dim).map(|i| self.entries[i * self.dim + i]).sum())
    }
}

pub fn tensor_product(a: &DenseTensor, b: &DenseTensor) -> Result<DenseTensor> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch {
            left: a.dim,
            right: b.dim,
        });
    }
    let n = a.dim;
    let pow = |k: usize| n.pow(k as u32);
    let (au, al) = (pow(a.shape.upper), pow(a.shape.lower));
    let (bu, bl) = (pow(b.shape.upper), pow(b.shape.lower));
    let shape = TensorShape::new(a.shape.upper + b.shape.upper, a.shape.lower + b.shape.lower);
    let mut entries = Vec::with_capacity(au * al * bu * bl);
    for ua in 0..au {
        for ub in 0..bu {
            for la in 0..al {
                let x = a.entries[ua * al + la];
                for lb in 0..bl {
                    entries.push(x * b.entries[ub * bl + lb]);
                }
            }
        }
    }
    DenseTensor::from_entries(shape, n, entries)
}

/// Sums over the index shared by `upper_slot` and `lower_slot`; the remaining
/// slots keep their relative order.
pub fn contract(a: &DenseTensor, upper_slot: usize, lower_slot: usize) -> Result<DenseTensor> {
    let TensorShape { upper, lower } = a.shape;
    if upper_slot >= upper {
        return Err(Error::SlotOutOfRange {
            kind: "upper",
            slot: upper_slot,
            count: upper,
        });
    }
    if lower_slot >= lower {
        return Err(Error::SlotOutOfRange {
            kind: "lower",
            slot: lower_slot,
            count: lower,
        });
    }
    let n = a.dim;
    let rank = a.shape.rank();
    let (su, sl) = (upper_slot, upper + lower_slot);
    let mut out = DenseTensor::zeros(TensorShape::new(upper - 1, lower - 1), n)?;
    let mut idx = vec![0usize; rank];
    for &value in &a.entries {
        if idx[su] == idx[sl] {
            let off = idx
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != su && k != sl)
                .fold(0, |acc, (_, &i)| acc * n + i);
            out.entries[off] += value;
        }
        // odometer, last index fastest
        for k in (0..rank).rev() {
            idx[k] += 1;
            if idx[k] < n {
                break;
            }
            idx[k] = 0;
        }
    }
    Ok(out)
}

/// Deterministic source of random complex tensors; real and imaginary parts
/// are uniform in [-1, 1].
pub struct TensorSampler {
    rng: ChaCha8Rng,
}

impl TensorSampler {
    pub fn new(seed: u64) -> Self {
        TensorSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn complex(&mut self) -> Complex64 {
        Complex64::new(self.rng.gen_range(-1.0..=1.0), self.rng.gen_range(-1.0..=1.0))
    }

    pub fn tensor(&mut self, shape: TensorShape, dim: usize) -> Result<DenseTensor> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let entries = (0..entry_count(shape, dim)).map(|_| self.complex()).collect();
        DenseTensor::from_entries(shape, dim, entries)
    }
}

pub fn random_tensor(shape: TensorShape, dim: usize, seed: u64) -> Result<DenseTensor> {
    TensorSampler::new(seed).tensor(shape, dim)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn grading_examples() {
        assert_eq!(grading(TensorShape::new(1, 0)), 1);
        assert_eq!(grading(TensorShape::new(0, 1)), -1);
        assert_eq!(grading(TensorShape::new(1, 1)), 0);
        assert_eq!(grading(TensorShape::new(2, 1)), 1);
    }

    #[test]
    fn shape_parse_and_display() {
        let s: TensorShape = " (2, 1)".parse().unwrap();
        assert_eq!(s, TensorShape::HIGH);
        assert_eq!(s.to_string(), "(2,1)");
        assert!("2,1".parse::<TensorShape>().is_err());
        assert!("(a,1)".parse::<TensorShape>().is_err());
    }

    #[test]
    fn product_of_two_matrices_is_2_2() {
        let a = random_tensor(TensorShape::MATRIX, 3, 1).unwrap();
        let b = random_tensor(TensorShape::MATRIX, 3, 2).unwrap();
        let p = tensor_product(&a, &b).unwrap();
        assert_eq!(p.shape(), TensorShape::new(2, 2));
        assert_eq!(p.get(&[1, 2, 0, 1]), a.get(&[1, 0]) * b.get(&[2, 1]));
    }

    #[test]
    fn product_with_unit_scalar() {
        let a = random_tensor(TensorShape::HIGH, 2, 5).unwrap();
        let one = DenseTensor::scalar(c(1.0), 2).unwrap();
        assert_eq!(tensor_product(&a, &one).unwrap(), a);
        assert_eq!(tensor_product(&one, &a).unwrap(), a);
    }

    #[test]
    fn kronecker_of_identities() {
        let d = DenseTensor::identity(2).unwrap();
        let p = tensor_product(&d, &d).unwrap();
        assert_eq!(p.entries().len(), 16);
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        let want = if i == k && j == l { 1.0 } else { 0.0 };
                        assert_eq!(p.get(&[i, j, k, l]), c(want));
                    }
                }
            }
        }
    }

    #[test]
    fn product_dim_mismatch() {
        let a = DenseTensor::identity(2).unwrap();
        let b = DenseTensor::identity(3).unwrap();
        assert_eq!(
            tensor_product(&a, &b),
            Err(Error::DimensionMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn contract_identity_gives_dim() {
        let d = DenseTensor::identity(3).unwrap();
        assert_eq!(contract(&d, 0, 0).unwrap().scalar_value(), Some(c(3.0)));
    }

    #[test]
    fn contract_matrix_is_trace() {
        let a = DenseTensor::from_real_rows(&[&[1.0, 2.0], &[3.0, 4.0]]).unwrap();
        assert_eq!(contract(&a, 0, 0).unwrap().scalar_value(), Some(c(5.0)));
        let r = random_tensor(TensorShape::MATRIX, 4, 9).unwrap();
        let diff = contract(&r, 0, 0).unwrap().scalar_value().unwrap() - r.trace().unwrap();
        assert!(diff.norm() < 1e-14);
    }

    #[test]
    fn contract_keeps_relative_order() {
        // T^{ab}_c contracted on (upper 0, lower 0) gives v^b = sum_a T^{ab}_a
        let t = random_tensor(TensorShape::HIGH, 3, 4).unwrap();
        let v = contract(&t, 0, 0).unwrap();
        assert_eq!(v.shape(), TensorShape::new(1, 0));
        for b in 0..3 {
            let want: Complex64 = (0..3).map(|a| t.get(&[a, b, a])).sum();
            assert!((v.get(&[b]) - want).norm() < 1e-14);
        }
    }

    #[test]
    fn contract_slot_errors() {
        let t = random_tensor(TensorShape::LOW, 2, 1).unwrap();
        assert!(matches!(contract(&t, 1, 0), Err(Error::SlotOutOfRange { kind: "upper", .. })));
        assert!(matches!(contract(&t, 0, 2), Err(Error::SlotOutOfRange { kind: "lower", .. })));
        let s = DenseTensor::scalar(c(1.0), 2).unwrap();
        assert!(contract(&s, 0, 0).is_err());
    }

    #[test]
    fn random_is_deterministic() {
        let a = random_tensor(TensorShape::MATRIX, 3, 42).unwrap();
        let b = random_tensor(TensorShape::MATRIX, 3, 42).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.entries().len(), 9);
        assert!(a
            .entries()
            .iter()
            .all(|z| (-1.0..=1.0).contains(&z.re) && (-1.0..=1.0).contains(&z.im)));
    }

    #[test]
    fn random_seeds_differ() {
        let base = random_tensor(TensorShape::MATRIX, 3, 0).unwrap();
        let distinct = (1..=100)
            .filter(|&s| random_tensor(TensorShape::MATRIX, 3, s).unwrap() != base)
            .count();
        assert_eq!(distinct, 100);
    }

    #[test]
    fn zero_dim_rejected() {
        assert_eq!(random_tensor(TensorShape::MATRIX, 0, 1), Err(Error::ZeroDimension));
        assert_eq!(
            DenseTensor::from_entries(TensorShape::MATRIX, 2, vec![c(0.0); 3]),
            Err(Error::EntryCount { expected: 4, found: 3 })
        );
    }

    #[test]
    fn json_layout() {
        let a = DenseTensor::from_real_rows(&[&[1.0, 2.0], &[3.0, 4.0]]).unwrap();
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(
            s,
            r#"{"shape":[1,1],"dim":2,"entries":[[1.0,0.0],[2.0,0.0],[3.0,0.0],[4.0,0.0]]}"#
        );
        let back: DenseTensor = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
        let short = r#"{"shape":[1,1],"dim":2,"entries":[[1.0,0.0]]}"#;
        assert!(serde_json::from_str::<DenseTensor>(short).is_err());
    }
}
