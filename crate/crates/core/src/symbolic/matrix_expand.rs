//! Word-level expansion of the deformed commutator and its identities.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

use super::formal::FormalSum;
use super::poly::{Var, WeightPoly};
use super::words::{Symbol, TraceWord};
use crate::error::{Error, Result};
use crate::matrix::IDENTITY6_TERMS;
use crate::tensor::{DenseTensor, TensorShape};

pub type TraceSum = FormalSum<TraceWord>;

/// Weights of `x∘y` as polynomials, so that constraints like `β = -α` can be
/// imposed by substitution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicPhi2 {
    pub alpha: WeightPoly,
    pub beta: WeightPoly,
    pub gamma: WeightPoly,
    pub delta: WeightPoly,
}

impl SymbolicPhi2 {
    pub fn generic() -> Self {
        SymbolicPhi2 {
            alpha: WeightPoly::var(Var::Alpha),
            beta: WeightPoly::var(Var::Beta),
            gamma: WeightPoly::var(Var::Gamma),
            delta: WeightPoly::var(Var::Delta),
        }
    }

    /// `(α, -α, γ, -γ)`.
    pub fn antisymmetric() -> Self {
        let a = WeightPoly::var(Var::Alpha);
        let g = WeightPoly::var(Var::Gamma);
        SymbolicPhi2 {
            beta: -&a,
            delta: -&g,
            alpha: a,
            gamma: g,
        }
    }

    pub fn integers(alpha: i64, beta: i64, gamma: i64, delta: i64) -> Self {
        SymbolicPhi2 {
            alpha: WeightPoly::int(alpha),
            beta: WeightPoly::int(beta),
            gamma: WeightPoly::int(gamma),
            delta: WeightPoly::int(delta),
        }
    }

    /// `(1, -1, 1, -1)`.
    pub fn trace_deformed() -> Self {
        Self::integers(1, -1, 1, -1)
    }
}

pub fn sym(s: char) -> TraceSum {
    TraceSum::single(TraceWord::symbol(s))
}

fn trace_of(x: &TraceSum) -> TraceSum {
    let mut out = TraceSum::zero();
    for (w, c) in x.iter() {
        out.add_term(w.trace(), c.clone());
    }
    out
}

fn concat(x: &TraceSum, y: &TraceSum) -> TraceSum {
    x.product_with(y, |a, b| a.concat(b))
}

/// `α·xy + β·yx + γ·x·Tr(y) + δ·y·Tr(x)`.
pub fn expand_phi2_symbolic(x: &TraceSum, y: &TraceSum, p: &SymbolicPhi2) -> TraceSum {
    let mut out = concat(x, y).scale(&p.alpha);
    out.add_scaled(&concat(y, x), &p.beta);
    out.add_scaled(&concat(x, &trace_of(y)), &p.gamma);
    out.add_scaled(&concat(y, &trace_of(x)), &p.delta);
    out
}

fn phi(x: &TraceSum, y: &TraceSum, p: &SymbolicPhi2) -> TraceSum {
    expand_phi2_symbolic(x, y, p)
}

pub fn phi3_symbolic(a1: &TraceSum, a2: &TraceSum, a3: &TraceSum, p: &SymbolicPhi2) -> TraceSum {
    phi(&phi(a2, a3, p), a1, p) - phi(&phi(a1, a3, p), a2, p) + phi(&phi(a1, a2, p), a3, p)
}

pub fn phi4_symbolic(args: [&TraceSum; 4], p: &SymbolicPhi2) -> TraceSum {
    let mut out = TraceSum::zero();
    for i in 0..4 {
        let rest: Vec<&TraceSum> = (0..4).filter(|&j| j != i).map(|j| args[j]).collect();
        let term = phi(&phi3_symbolic(rest[0], rest[1], rest[2], p), args[i], p);
        out = if i % 2 == 0 { out + term } else { out - term };
    }
    out
}

pub fn jacobi_cyclic_symbolic(a: &TraceSum, b: &TraceSum, c: &TraceSum, p: &SymbolicPhi2) -> TraceSum {
    phi(&phi(a, b, p), c, p) + phi(&phi(b, c, p), a, p) + phi(&phi(c, a, p), b, p)
}

/// `TrA·(CB - BC) + TrB·(AC - CA) + TrC·(BA - AB)`.
pub fn trace_commutator_remainder_symbolic(a: &TraceSum, b: &TraceSum, c: &TraceSum) -> TraceSum {
    let comm = SymbolicPhi2::integers(1, -1, 0, 0);
    concat(&trace_of(a), &phi(c, b, &comm))
        + concat(&trace_of(b), &phi(a, c, &comm))
        + concat(&trace_of(c), &phi(b, a, &comm))
}

/// `((x∘y)∘z)∘w`.
pub fn identity6_term_symbolic(args: [&TraceSum; 4], term: [usize; 4], p: &SymbolicPhi2) -> TraceSum {
    let [x, y, z, w] = term;
    phi(&phi(&phi(args[x], args[y], p), args[z], p), args[w], p)
}

pub fn identity6_symbolic(args: [&TraceSum; 4], p: &SymbolicPhi2) -> TraceSum {
    let mut out = TraceSum::zero();
    for term in IDENTITY6_TERMS {
        out = out + identity6_term_symbolic(args, term, p);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WordCoefficient {
    pub word: String,
    pub coefficient: String,
}

fn table(sum: &TraceSum) -> Vec<WordCoefficient> {
    sum.iter()
        .map(|(w, c)| WordCoefficient {
            word: w.to_string(),
            coefficient: c.to_string(),
        })
        .collect()
}

/// Three terms of the identity sharing the outer argument.
#[derive(Debug, Clone, Serialize)]
pub struct CyclicGroup {
    pub outer: char,
    /// 1-based positions in printed order.
    pub terms: Vec<usize>,
    /// The inner cyclic triple, as `(x, y, z)`.
    pub triple: String,
    /// The inner cyclic sum equals `αγ` times the trace-commutator remainder.
    pub inner_is_remainder: bool,
    /// The group equals `αγ·(α·(G·D - D·G) + γ·TrD·G)` with `G` the remainder.
    pub composed_form_holds: bool,
    pub words: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Identity6Report {
    pub zero: bool,
    /// Words with nonzero coefficient under `β = -α, δ = -γ` (empty on success).
    pub offending: Vec<WordCoefficient>,
    pub expanded_words: usize,
    pub groups: Vec<CyclicGroup>,
    /// Every word of the grouped expansion occurs in exactly two groups, with opposite coefficients.
    pub groups_cancel_pairwise: bool,
    pub phi4_zero: bool,
    /// Relation between the two expressions with all four weights free:
    /// `"equal"`, `"negated"` or `"independent"`.
    pub relation_to_phi4: String,
    pub identity6_words_free: usize,
    pub phi4_words_free: usize,
}

pub fn verify_identity6_symbolic() -> Identity6Report {
    let names = ['A', 'B', 'C', 'D'];
    let s: Vec<TraceSum> = names.iter().map(|&c| sym(c)).collect();
    let args = [&s[0], &s[1], &s[2], &s[3]];
    let p = SymbolicPhi2::antisymmetric();

    let total = identity6_symbolic(args, &p);
    let expanded_words = IDENTITY6_TERMS
        .iter()
        .map(|&t| identity6_term_symbolic(args, t, &p).len())
        .sum();

    let alpha = WeightPoly::var(Var::Alpha);
    let gamma = WeightPoly::var(Var::Gamma);
    let ag = &alpha * &gamma;
    let mut groups = Vec::new();
    let mut composed = Vec::new();
    for (outer_idx, &outer) in names.iter().enumerate() {
        let members: Vec<usize> = (0..IDENTITY6_TERMS.len())
            .filter(|&i| IDENTITY6_TERMS[i][3] == outer_idx)
            .collect();
        let [x, y, z, _] = IDENTITY6_TERMS[members[0]];
        let inner = jacobi_cyclic_symbolic(args[x], args[y], args[z], &p);
        let g = trace_commutator_remainder_symbolic(args[x], args[y], args[z]);
        let d = args[outer_idx];
        let group: TraceSum = members
            .iter()
            .fold(TraceSum::zero(), |acc, &i| acc + identity6_term_symbolic(args, IDENTITY6_TERMS[i], &p));
        let expected = (concat(&g, d) - concat(d, &g)).scale(&(&ag * &alpha))
            + concat(&g, &trace_of(d)).scale(&(&ag * &gamma));
        groups.push(CyclicGroup {
            outer,
            terms: members.iter().map(|i| i + 1).collect(),
            triple: format!("({}, {}, {})", names[x], names[y], names[z]),
            inner_is_remainder: inner == g.scale(&ag),
            composed_form_holds: group == expected,
            words: group.len(),
        });
        composed.push(group);
    }
    let mut contributions: BTreeMap<&TraceWord, Vec<&WeightPoly>> = BTreeMap::new();
    for g in &composed {
        for (w, c) in g.iter() {
            contributions.entry(w).or_default().push(c);
        }
    }
    let groups_cancel_pairwise = contributions
        .values()
        .all(|cs| cs.len() == 2 && (cs[0] + cs[1]).is_zero());

    let free = SymbolicPhi2::generic();
    let i6 = identity6_symbolic(args, &free);
    let p4 = phi4_symbolic(args, &free);
    let relation = if i6 == p4 {
        "equal"
    } else if i6 == -&p4 {
        "negated"
    } else {
        "independent"
    };

    Identity6Report {
        zero: total.is_zero(),
        offending: table(&total),
        expanded_words,
        groups,
        groups_cancel_pairwise,
        phi4_zero: phi4_symbolic(args, &p).is_zero(),
        relation_to_phi4: relation.to_string(),
        identity6_words_free: i6.len(),
        phi4_words_free: p4.len(),
    }
}

/// The twelve words of `(A∘B)∘C` at `(1, -1, 1, -1)`, as a word-coefficient table.
pub fn phi2_nested_table() -> Vec<WordCoefficient> {
    let p = SymbolicPhi2::trace_deformed();
    table(&phi(&phi(&sym('A'), &sym('B'), &p), &sym('C'), &p))
}

fn matmul(a: &[Complex64], b: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

fn word_product(word: &[Symbol], values: &BTreeMap<Symbol, &DenseTensor>, n: usize) -> Result<Vec<Complex64>> {
    let mut acc: Vec<Complex64> = (0..n * n)
        .map(|k| Complex64::new(if k / n == k % n { 1.0 } else { 0.0 }, 0.0))
        .collect();
    for s in word {
        let m = values
            .get(s)
            .ok_or_else(|| Error::MalformedWord(format!("no value bound to symbol {s}")))?;
        acc = matmul(&acc, m.entries(), n);
    }
    Ok(acc)
}

/// Evaluation homomorphism: symbols become (1,1) tensors, trace factors become
/// traces and weights become numbers. Uses its own matrix product.
pub fn evaluate_trace_sum(
    sum: &TraceSum,
    values: &BTreeMap<Symbol, &DenseTensor>,
    weights: &[Complex64; 4],
) -> Result<DenseTensor> {
    let n = values
        .values()
        .next()
        .map(|t| t.dim())
        .ok_or_else(|| Error::MalformedWord("no symbol values".into()))?;
    for t in values.values() {
        if t.shape() != TensorShape::MATRIX {
            return Err(Error::ShapeMismatch {
                expected: TensorShape::MATRIX,
                found: t.shape(),
            });
        }
        if t.dim() != n {
            return Err(Error::DimensionMismatch { left: n, right: t.dim() });
        }
    }
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    for (w, c) in sum.iter() {
        let mut scalar = c.eval_complex(weights);
        for t in w.traces() {
            let m = word_product(t, values, n)?;
            scalar *= (0..n).map(|i| m[i * n + i]).sum::<Complex64>();
        }
        let m = word_product(w.main(), values, n)?;
        for (o, v) in out.iter_mut().zip(m) {
            *o += scalar * v;
        }
    }
    DenseTensor::from_entries(TensorShape::MATRIX, n, out)
}
