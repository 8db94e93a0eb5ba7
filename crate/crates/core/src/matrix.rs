//! The deformed commutator on (1,1) tensors,
//! `A ∘ B = α·AB + β·BA + γ·A·TrB + δ·B·TrA`, and the operations built from it.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::diagram::ContractionDiagram;
use crate::error::{Error, Result};
use crate::tensor::{contract, DenseTensor, TensorShape};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Phi2Params {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub gamma: Complex64,
    pub delta: Complex64,
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

impl Phi2Params {
    pub fn new(alpha: Complex64, beta: Complex64, gamma: Complex64, delta: Complex64) -> Self {
        Phi2Params {
            alpha,
            beta,
            gamma,
            delta,
        }
    }

    /// `AB - BA`.
    pub fn commutator() -> Self {
        Self::new(re(1.0), re(-1.0), re(0.0), re(0.0))
    }

    /// `AB - BA + A·TrB - B·TrA`.
    pub fn trace_deformed() -> Self {
        Self::new(re(1.0), re(-1.0), re(1.0), re(-1.0))
    }

    /// `β = -α`, `δ = -γ`: the family on which the four-argument identity holds.
    pub fn antisymmetric(alpha: Complex64, gamma: Complex64) -> Self {
        Self::new(alpha, -alpha, gamma, -gamma)
    }

    pub fn is_antisymmetric(&self, tol: f64) -> bool {
        (self.alpha + self.beta).norm() <= tol && (self.gamma + self.delta).norm() <= tol
    }

    pub fn as_array(&self) -> [Complex64; 4] {
        [self.alpha, self.beta, self.gamma, self.delta]
    }
}

/// The twelve printed terms `((x∘y)∘z)∘w` of the four-argument identity, as
/// operand indices into `(A, B, C, D)`.
pub const IDENTITY6_TERMS: [[usize; 4]; 12] = [
    [0, 1, 2, 3], // ((A∘B)∘C)∘D
    [2, 1, 3, 0], // ((C∘B)∘D)∘A
    [2, 3, 0, 1], // ((C∘D)∘A)∘B
    [0, 3, 1, 2], // ((A∘D)∘B)∘C
    [2, 0, 1, 3], // ((C∘A)∘B)∘D
    [3, 2, 1, 0], // ((D∘C)∘B)∘A
    [0, 2, 3, 1], // ((A∘C)∘D)∘B
    [1, 0, 3, 2], // ((B∘A)∘D)∘C
    [1, 2, 0, 3], // ((B∘C)∘A)∘D
    [1, 3, 2, 0], // ((B∘D)∘C)∘A
    [3, 0, 2, 1], // ((D∘A)∘C)∘B
    [3, 1, 0, 2], // ((D∘B)∘A)∘C
];

fn check_matrix(t: &DenseTensor) -> Result<()> {
    if t.shape() != TensorShape::MATRIX {
        return Err(Error::ShapeMismatch {
            expected: TensorShape::MATRIX,
            found: t.shape(),
        });
    }
    Ok(())
}

fn check_dims(ts: &[&DenseTensor]) -> Result<()> {
    for t in ts {
        check_matrix(t)?;
        if t.dim() != ts[0].dim() {
            return Err(Error::DimensionMismatch {
                left: ts[0].dim(),
                right: t.dim(),
            });
        }
    }
    Ok(())
}

fn trace(t: &DenseTensor) -> Result<Complex64> {
    Ok(contract(t, 0, 0)?.scalar_value().expect("(0,0) after contraction"))
}

pub fn phi2(a: &DenseTensor, b: &DenseTensor, p: &Phi2Params) -> Result<DenseTensor> {
    check_dims(&[a, b])?;
    let mm = ContractionDiagram::matmul();
    let ab = mm.apply(&[a, b])?;
    let ba = mm.apply(&[b, a])?;
    let mut out = ab.scale(p.alpha);
    out.add_assign_scaled(&ba, p.beta)?;
    out.add_assign_scaled(a, p.gamma * trace(b)?)?;
    out.add_assign_scaled(b, p.delta * trace(a)?)?;
    Ok(out)
}

/// `{{A₂,A₃},A₁} - {{A₁,A₃},A₂} + {{A₁,A₂},A₃}`.
pub fn phi3(a1: &DenseTensor, a2: &DenseTensor, a3: &DenseTensor, p: &Phi2Params) -> Result<DenseTensor> {
    check_dims(&[a1, a2, a3])?;
    let t1 = phi2(&phi2(a2, a3, p)?, a1, p)?;
    let t2 = phi2(&phi2(a1, a3, p)?, a2, p)?;
    let t3 = phi2(&phi2(a1, a2, p)?, a3, p)?;
    t1.sub(&t2)?.add(&t3)
}

/// `Σᵢ (-1)^{i-1} φ₂(φ₃(complement of Aᵢ), Aᵢ)`, complements in ascending order.
pub fn phi4(args: [&DenseTensor; 4], p: &Phi2Params) -> Result<DenseTensor> {
    check_dims(&args)?;
    let mut out = DenseTensor::zeros(TensorShape::MATRIX, args[0].dim())?;
    for i in 0..4 {
        let rest: Vec<&DenseTensor> = (0..4).filter(|&j| j != i).map(|j| args[j]).collect();
        let inner = phi3(rest[0], rest[1], rest[2], p)?;
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        out.add_assign_scaled(&phi2(&inner, args[i], p)?, re(sign))?;
    }
    Ok(out)
}

/// `(A∘B)∘C + (B∘C)∘A + (C∘A)∘B`.
pub fn jacobi_cyclic_residual(a: &DenseTensor, b: &DenseTensor, c: &DenseTensor, p: &Phi2Params) -> Result<DenseTensor> {
    check_dims(&[a, b, c])?;
    let t1 = phi2(&phi2(a, b, p)?, c, p)?;
    let t2 = phi2(&phi2(b, c, p)?, a, p)?;
    let t3 = phi2(&phi2(c, a, p)?, b, p)?;
    t1.add(&t2)?.add(&t3)
}

/// `TrA·(CB - BC) + TrB·(AC - CA) + TrC·(BA - AB)`: what the cyclic sum leaves
/// for `(α,β,γ,δ) = (1,-1,1,-1)`.
pub fn trace_commutator_remainder(a: &DenseTensor, b: &DenseTensor, c: &DenseTensor) -> Result<DenseTensor> {
    check_dims(&[a, b, c])?;
    let comm = Phi2Params::commutator();
    let mut out = phi2(c, b, &comm)?.scale(trace(a)?);
    out.add_assign_scaled(&phi2(a, c, &comm)?, trace(b)?)?;
    out.add_assign_scaled(&phi2(b, a, &comm)?, trace(c)?)?;
    Ok(out)
}

/// Sum of the twelve terms of [`IDENTITY6_TERMS`], in printed order.
pub fn identity6_residual(args: [&DenseTensor; 4], p: &Phi2Params) -> Result<DenseTensor> {
    check_dims(&args)?;
    let mut out = DenseTensor::zeros(TensorShape::MATRIX, args[0].dim())?;
    for [x, y, z, w] in IDENTITY6_TERMS {
        let t = phi2(&phi2(&phi2(args[x], args[y], p)?, args[z], p)?, args[w], p)?;
        out.add_assign_scaled(&t, re(1.0))?;
    }
    Ok(out)
}

/// `‖residual‖ / Πᵢ ‖operandᵢ‖` (Frobenius norms).
pub fn relative_residual(residual: &DenseTensor, operands: &[&DenseTensor]) -> f64 {
    let scale: f64 = operands.iter().map(|t| t.norm()).product();
    if scale == 0.0 {
        residual.norm()
    } else {
        residual.norm() / scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::TensorSampler;

    fn real(rows: &[&[f64]]) -> DenseTensor {
        DenseTensor::from_real_rows(rows).unwrap()
    }

    fn sample(seed: u64, dim: usize, k: usize) -> Vec<DenseTensor> {
        let mut s = TensorSampler::new(seed);
        (0..k).map(|_| s.tensor(TensorShape::MATRIX, dim).unwrap()).collect()
    }

    #[test]
    fn commutator_by_hand() {
        let a = real(&[&[1.0, 2.0], &[3.0, 4.0]]);
        let b = real(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let r = phi2(&a, &b, &Phi2Params::commutator()).unwrap();
        assert_eq!(r, real(&[&[-1.0, -3.0], &[3.0, 1.0]]));
    }

    #[test]
    fn phi2_with_itself_vanishes() {
        let m = sample(3, 3, 1);
        let r = phi2(&m[0], &m[0], &Phi2Params::trace_deformed()).unwrap();
        assert!(relative_residual(&r, &[&m[0], &m[0]]) < 1e-14);
    }

    #[test]
    fn phi2_terms_separately() {
        let m = sample(11, 3, 2);
        let (a, b) = (&m[0], &m[1]);
        let tr_a = a.trace().unwrap();
        let unit = |i: usize| {
            let mut v = [re(0.0); 4];
            v[i] = re(1.0);
            Phi2Params::new(v[0], v[1], v[2], v[3])
        };
        let ab = ContractionDiagram::matmul().apply(&[a, b]).unwrap();
        assert_eq!(phi2(a, b, &unit(0)).unwrap(), ab);
        let r = phi2(a, b, &unit(3)).unwrap();
        assert!(r.sub(&b.scale(tr_a)).unwrap().norm() < 1e-14);
    }

    #[test]
    fn phi2_bilinear() {
        let m = sample(5, 4, 3);
        let p = Phi2Params::new(Complex64::new(0.3, 1.0), re(-2.0), Complex64::new(0.0, 0.5), re(0.7));
        let (l, mu) = (Complex64::new(1.5, -0.5), Complex64::new(-0.25, 2.0));
        let combo = m[0].scale(l).add(&m[1].scale(mu)).unwrap();
        let lhs = phi2(&combo, &m[2], &p).unwrap();
        let rhs = phi2(&m[0], &m[2], &p)
            .unwrap()
            .scale(l)
            .add(&phi2(&m[1], &m[2], &p).unwrap().scale(mu))
            .unwrap();
        assert!(lhs.sub(&rhs).unwrap().norm() <= 1e-12 * lhs.norm());
    }

    #[test]
    fn phi2_dim_mismatch() {
        let a = sample(1, 2, 1).remove(0);
        let b = sample(1, 3, 1).remove(0);
        assert!(matches!(phi2(&a, &b, &Phi2Params::commutator()), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn phi3_commutator_vanishes() {
        let m = sample(7, 3, 3);
        let r = phi3(&m[0], &m[1], &m[2], &Phi2Params::commutator()).unwrap();
        assert!(relative_residual(&r, &[&m[0], &m[1], &m[2]]) < 1e-13);
    }

    #[test]
    fn phi3_repeated_argument() {
        let m = sample(8, 3, 2);
        let p = Phi2Params::antisymmetric(Complex64::new(0.4, -1.0), Complex64::new(2.0, 0.1));
        let r = phi3(&m[0], &m[0], &m[1], &p).unwrap();
        assert!(relative_residual(&r, &[&m[0], &m[0], &m[1]]) < 1e-13);
    }

    #[test]
    fn phi4_identity_and_failure() {
        let m = sample(9, 3, 4);
        let args = [&m[0], &m[1], &m[2], &m[3]];
        let good = phi4(args, &Phi2Params::antisymmetric(Complex64::new(0.7, 0.2), Complex64::new(-1.3, 0.9))).unwrap();
        assert!(relative_residual(&good, &args) < 1e-12);
        let bad = Phi2Params::new(re(1.0), re(0.5), re(1.0), re(-1.0));
        assert!(relative_residual(&phi4(args, &bad).unwrap(), &args) > 1e-6);
        let same = phi4([&m[0]; 4], &bad).unwrap();
        assert!(relative_residual(&same, &[&m[0]; 4]) < 1e-13);
    }

    #[test]
    fn jacobi_cases() {
        let m = sample(4, 3, 3);
        let ops = [&m[0], &m[1], &m[2]];
        let pure = jacobi_cyclic_residual(ops[0], ops[1], ops[2], &Phi2Params::commutator()).unwrap();
        assert!(relative_residual(&pure, &ops) < 1e-13);
        let deformed = jacobi_cyclic_residual(ops[0], ops[1], ops[2], &Phi2Params::trace_deformed()).unwrap();
        let closed = trace_commutator_remainder(ops[0], ops[1], ops[2]).unwrap();
        assert!(relative_residual(&deformed.sub(&closed).unwrap(), &ops) < 1e-12);
        assert!(closed.norm() > 1e-3);
    }

    #[test]
    fn jacobi_traceless_vanishes() {
        let mut m = sample(12, 3, 3);
        for t in m.iter_mut() {
            let shift = t.trace().unwrap() / re(3.0);
            *t = t.sub(&DenseTensor::identity(3).unwrap().scale(shift)).unwrap();
        }
        let r = jacobi_cyclic_residual(&m[0], &m[1], &m[2], &Phi2Params::trace_deformed()).unwrap();
        assert!(relative_residual(&r, &[&m[0], &m[1], &m[2]]) < 1e-12);
    }

    #[test]
    fn identity6_cases() {
        for dim in 2..=4 {
            let m = sample(20 + dim as u64, dim, 4);
            let args = [&m[0], &m[1], &m[2], &m[3]];
            for p in [Phi2Params::trace_deformed(), Phi2Params::commutator()] {
                let r = identity6_residual(args, &p).unwrap();
                assert!(relative_residual(&r, &args) < 1e-12, "dim {dim}");
            }
        }
        let m = sample(2, 3, 1);
        let r = identity6_residual([&m[0]; 4], &Phi2Params::trace_deformed()).unwrap();
        assert!(r.norm() < 1e-12);
    }

    #[test]
    fn rejects_non_matrix() {
        let h = TensorSampler::new(1).tensor(TensorShape::HIGH, 2).unwrap();
        let m = sample(1, 2, 1).remove(0);
        assert!(matches!(phi2(&h, &m, &Phi2Params::commutator()), Err(Error::ShapeMismatch { .. })));
    }
}
