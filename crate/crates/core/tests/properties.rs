use num_complex::Complex64;
use proptest::prelude::*;

use tidlab_core::matrix::{phi2, Phi2Params};
use tidlab_core::symbolic::{CycloScalar, FormalSum, TraceWord, Var, WeightPoly};
use tidlab_core::{
    apply_diagram, enumerate_diagrams, tensor_product, ContractionDiagram, EnumOptions, TensorSampler, TensorShape,
};

fn shape() -> impl Strategy<Value = TensorShape> {
    (0usize..3, 0usize..3).prop_map(|(upper, lower)| TensorShape { upper, lower })
}

fn small_complex() -> impl Strategy<Value = Complex64> {
    (-3.0f64..3.0, -3.0f64..3.0).prop_map(|(a, b)| Complex64::new(a, b))
}

fn trace_word() -> impl Strategy<Value = TraceWord> {
    let letters = prop::sample::select(vec!['A', 'B', 'C']);
    (
        prop::collection::vec(letters.clone(), 0..3),
        prop::collection::vec(prop::collection::vec(letters, 1..3), 0..2),
    )
        .prop_map(|(m, ts)| {
            TraceWord::new(
                m.into_iter().map(tidlab_core::symbolic::Symbol).collect(),
                ts.into_iter()
                    .map(|t| t.into_iter().map(tidlab_core::symbolic::Symbol).collect())
                    .collect(),
            )
        })
}

fn weight() -> impl Strategy<Value = WeightPoly> {
    (-3i64..4, -2i64..3, 0usize..3).prop_map(|(c, k, v)| {
        let var = WeightPoly::var([Var::Alpha, Var::Beta, Var::Gamma][v]);
        &WeightPoly::int(c) + &(&WeightPoly::int(k) * &var)
    })
}

fn formal_sum() -> impl Strategy<Value = FormalSum<TraceWord>> {
    prop::collection::vec((trace_word(), weight()), 0..4).prop_map(|terms| {
        let mut s = FormalSum::zero();
        for (w, c) in terms {
            s.add_term(w, c);
        }
        s
    })
}

fn cyclo() -> impl Strategy<Value = CycloScalar> {
    (-20i64..20, -20i64..20).prop_map(|(a, b)| CycloScalar::from_ints(a, b))
}

fn concat(x: &FormalSum<TraceWord>, y: &FormalSum<TraceWord>) -> FormalSum<TraceWord> {
    x.product_with(y, |a, b| a.concat(b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn grading_adds_under_product(a in shape(), b in shape(), seed in 0u64..1000) {
        let mut s = TensorSampler::new(seed);
        let (x, y) = (s.tensor(a, 2).unwrap(), s.tensor(b, 2).unwrap());
        let p = tensor_product(&x, &y).unwrap();
        prop_assert_eq!(p.grading(), x.grading() + y.grading());
    }

    #[test]
    fn contraction_preserves_grading(seed in 0u64..1000, pick in 0usize..64) {
        let shapes = [TensorShape::HIGH, TensorShape::LOW];
        let ds = enumerate_diagrams(&shapes, &EnumOptions::default());
        let d = &ds[pick % ds.len()];
        let mut s = TensorSampler::new(seed);
        let ops: Vec<_> = shapes.iter().map(|&sh| s.tensor(sh, 2).unwrap()).collect();
        let out = apply_diagram(d, &[&ops[0], &ops[1]]).unwrap();
        prop_assert_eq!(out.grading(), 0);
    }

    #[test]
    fn diagrams_are_linear(seed in 0u64..1000, l in small_complex(), m in small_complex(), pick in 0usize..64) {
        let shapes = [TensorShape::MATRIX, TensorShape::HIGH];
        let ds = enumerate_diagrams(&shapes, &EnumOptions::default());
        let d = &ds[pick % ds.len()];
        let mut s = TensorSampler::new(seed);
        let (a, a2) = (s.tensor(TensorShape::MATRIX, 2).unwrap(), s.tensor(TensorShape::MATRIX, 2).unwrap());
        let b = s.tensor(TensorShape::HIGH, 2).unwrap();
        let combo = a.scale(l).add(&a2.scale(m)).unwrap();
        let lhs = apply_diagram(d, &[&combo, &b]).unwrap();
        let rhs = apply_diagram(d, &[&a, &b]).unwrap().scale(l)
            .add(&apply_diagram(d, &[&a2, &b]).unwrap().scale(m)).unwrap();
        prop_assert!(lhs.sub(&rhs).unwrap().norm() <= 1e-12 * (1.0 + lhs.norm()));
    }

    #[test]
    fn matmul_agrees_with_loops(dim in 2usize..6, seed in 0u64..1000) {
        let mut s = TensorSampler::new(seed);
        let (a, b) = (s.tensor(TensorShape::MATRIX, dim).unwrap(), s.tensor(TensorShape::MATRIX, dim).unwrap());
        let got = ContractionDiagram::matmul().apply(&[&a, &b]).unwrap();
        for i in 0..dim {
            for j in 0..dim {
                let want: Complex64 = (0..dim).map(|k| a.get(&[i, k]) * b.get(&[k, j])).sum();
                prop_assert!((got.get(&[i, j]) - want).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn product_associative_up_to_layout(seed in 0u64..1000) {
        let mut s = TensorSampler::new(seed);
        let (a, b, c) = (
            s.tensor(TensorShape::MATRIX, 2).unwrap(),
            s.tensor(TensorShape { upper: 1, lower: 0 }, 2).unwrap(),
            s.tensor(TensorShape { upper: 0, lower: 1 }, 2).unwrap(),
        );
        // (a⊗b)⊗c and a⊗(b⊗c) both carry slots (a^, b^ | a_, c_): identical layout
        let l = tensor_product(&tensor_product(&a, &b).unwrap(), &c).unwrap();
        let r = tensor_product(&a, &tensor_product(&b, &c).unwrap()).unwrap();
        prop_assert!(l.sub(&r).unwrap().norm() < 1e-14);
    }

    #[test]
    fn phi2_bilinear(seed in 0u64..1000, l in small_complex(), p in prop::array::uniform4(small_complex())) {
        let params = Phi2Params::new(p[0], p[1], p[2], p[3]);
        let mut s = TensorSampler::new(seed);
        let m: Vec<_> = (0..3).map(|_| s.tensor(TensorShape::MATRIX, 3).unwrap()).collect();
        let lhs = phi2(&m[0], &m[1].scale(l).add(&m[2]).unwrap(), &params).unwrap();
        let rhs = phi2(&m[0], &m[1], &params).unwrap().scale(l).add(&phi2(&m[0], &m[2], &params).unwrap()).unwrap();
        prop_assert!(lhs.sub(&rhs).unwrap().norm() <= 1e-12 * (1.0 + lhs.norm()));
    }

    #[test]
    fn trace_factors_rotate(w in prop::collection::vec(prop::sample::select(vec!['A', 'B', 'C', 'D']), 1..5), k in 0usize..5) {
        let base = TraceWord::new(vec![], vec![w.iter().copied().map(tidlab_core::symbolic::Symbol).collect()]);
        let k = k % w.len();
        let rotated: Vec<_> = w[k..].iter().chain(&w[..k]).copied().map(tidlab_core::symbolic::Symbol).collect();
        prop_assert_eq!(TraceWord::new(vec![], vec![rotated]), base);
    }

    #[test]
    fn formal_sum_laws(x in formal_sum(), y in formal_sum(), z in formal_sum()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert!((&x - &x).is_zero());
        prop_assert_eq!(concat(&x, &(&y + &z)), &concat(&x, &y) + &concat(&x, &z));
        prop_assert_eq!(concat(&concat(&x, &y), &z), concat(&x, &concat(&y, &z)));
    }

    #[test]
    fn cyclo_ring_laws(a in cyclo(), b in cyclo(), c in cyclo()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        let z = (&a * &b).to_complex() - a.to_complex() * b.to_complex();
        prop_assert!(z.norm() < 1e-9 * (1.0 + a.to_complex().norm() * b.to_complex().norm()));
    }
}
