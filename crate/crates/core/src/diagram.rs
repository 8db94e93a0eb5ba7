//! Contraction diagrams: matchings of upper slots to lower slots across an
//! ordered list of operands, their evaluation on dense tensors, and
//! enumeration of every elementary operation between given tensor types.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::{DenseTensor, TensorShape};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SlotKind {
    Upper,
    Lower,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SlotRef {
    pub operand: usize,
    pub kind: SlotKind,
    pub position: usize,
}

impl SlotRef {
    pub fn upper(operand: usize, position: usize) -> Self {
        SlotRef {
            operand,
            kind: SlotKind::Upper,
            position,
        }
    }

    pub fn lower(operand: usize, position: usize) -> Self {
        SlotRef {
            operand,
            kind: SlotKind::Lower,
            position,
        }
    }
}

/// An elementary operation. Each pair joins an upper slot (the arrow tip) to
/// a lower slot; pairs are kept sorted so equal diagrams compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "DiagramJson", into = "DiagramJson")]
pub struct ContractionDiagram {
    operand_shapes: Vec<TensorShape>,
    pairs: Vec<(SlotRef, SlotRef)>,
}

/// `{"shapes":[[2,1],...],"pairs":[[[upper_op,pos],[lower_op,pos]],...]}`
#[derive(Serialize, Deserialize)]
struct DiagramJson {
    shapes: Vec<TensorShape>,
    pairs: Vec<[[usize; 2]; 2]>,
}

impl From<ContractionDiagram> for DiagramJson {
    fn from(d: ContractionDiagram) -> Self {
        DiagramJson {
            pairs: d
                .pairs
                .iter()
                .map(|(u, l)| [[u.operand, u.position], [l.operand, l.position]])
                .collect(),
            shapes: d.operand_shapes,
        }
    }
}

impl TryFrom<DiagramJson> for ContractionDiagram {
    type Error = Error;

    fn try_from(j: DiagramJson) -> Result<Self> {
        let pairs = j
            .pairs
            .iter()
            .map(|[[uo, up], [lo, lp]]| ((*uo, *up), (*lo, *lp)))
            .collect();
        ContractionDiagram::new(j.shapes, pairs)
    }
}

impl ContractionDiagram {
    /// Builds a diagram from `((upper operand, upper position), (lower operand, lower position))` pairs.
    pub fn new(shapes: Vec<TensorShape>, pairs: Vec<((usize, usize), (usize, usize))>) -> Result<Self> {
        let pairs = pairs
            .into_iter()
            .map(|((uo, up), (lo, lp))| (SlotRef::upper(uo, up), SlotRef::lower(lo, lp)))
            .collect();
        Self::from_slot_pairs(shapes, pairs)
    }

    pub fn from_slot_pairs(shapes: Vec<TensorShape>, mut pairs: Vec<(SlotRef, SlotRef)>) -> Result<Self> {
        pairs.sort();
        let d = ContractionDiagram {
            operand_shapes: shapes,
            pairs,
        };
        d.validate()?;
        Ok(d)
    }

    /// The diagram with no contractions: the tensor product of the operands.
    pub fn empty(shapes: Vec<TensorShape>) -> Self {
        ContractionDiagram {
            operand_shapes: shapes,
            pairs: Vec::new(),
        }
    }

    /// `A^i_j B^j_k`: the upper slot of the second operand meets the lower slot of the first.
    pub fn matmul() -> Self {
        Self::new(vec![TensorShape::MATRIX; 2], vec![((1, 0), (0, 0))]).expect("valid")
    }

    pub fn operand_shapes(&self) -> &[TensorShape] {
        &self.operand_shapes
    }

    pub fn pairs(&self) -> &[(SlotRef, SlotRef)] {
        &self.pairs
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for &(u, l) in &self.pairs {
            for (slot, want) in [(u, SlotKind::Upper), (l, SlotKind::Lower)] {
                if slot.kind != want {
                    return Err(Error::InvalidDiagram(format!("{slot:?} in the {want:?} position")));
                }
                let shape = self.operand_shapes.get(slot.operand).ok_or_else(|| {
                    Error::InvalidDiagram(format!("operand {} does not exist", slot.operand))
                })?;
                let count = match slot.kind {
                    SlotKind::Upper => shape.upper,
                    SlotKind::Lower => shape.lower,
                };
                if slot.position >= count {
                    return Err(Error::InvalidDiagram(format!(
                        "slot {slot:?} out of range for shape {shape}"
                    )));
                }
                if !seen.insert(slot) {
                    return Err(Error::InvalidDiagram(format!("slot {slot:?} used twice")));
                }
            }
        }
        Ok(())
    }

    pub fn output_shape(&self) -> TensorShape {
        let k = self.pairs.len();
        let upper: usize = self.operand_shapes.iter().map(|s| s.upper).sum();
        let lower: usize = self.operand_shapes.iter().map(|s| s.lower).sum();
        TensorShape::new(upper - k, lower - k)
    }

    pub fn has_self_contraction(&self) -> bool {
        self.pairs.iter().any(|(u, l)| u.operand == l.operand)
    }

    /// Distinct operand pairs joined by at least one contraction, self loops excluded.
    fn links(&self) -> BTreeSet<(usize, usize)> {
        self.pairs
            .iter()
            .filter(|(u, l)| u.operand != l.operand)
            .map(|(u, l)| (u.operand.min(l.operand), u.operand.max(l.operand)))
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        let k = self.operand_shapes.len();
        if k <= 1 {
            return true;
        }
        let mut parent: Vec<usize> = (0..k).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for (a, b) in self.links() {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        let root = find(&mut parent, 0);
        (1..k).all(|i| find(&mut parent, i) == root)
    }

    /// True when the graph of linked operand pairs is a simple path:
    /// connected, no self contractions, every operand linked to at most two others.
    pub fn is_path(&self) -> bool {
        self.path_order().is_some()
    }

    /// Operands in path order, starting from the lower-numbered end.
    fn path_order(&self) -> Option<Vec<usize>> {
        let k = self.operand_shapes.len();
        if k < 2 || self.has_self_contraction() || !self.is_connected() {
            return None;
        }
        let links = self.links();
        if links.len() != k - 1 {
            return None;
        }
        let mut adj = vec![Vec::new(); k];
        for &(a, b) in &links {
            adj[a].push(b);
            adj[b].push(a);
        }
        if adj.iter().any(|n| n.len() > 2) {
            return None;
        }
        let start = (0..k).find(|&o| adj[o].len() == 1)?;
        let mut order = vec![start];
        while order.len() < k {
            let last = *order.last().unwrap();
            let prev = order.len().checked_sub(2).map(|i| order[i]);
            let next = *adj[last].iter().find(|&&o| Some(o) != prev)?;
            order.push(next);
        }
        Some(order)
    }

    /// A chain of operands placed one after another: a path along which
    /// neighbouring operands have different types (any path, when all
    /// operands share one type).
    pub fn is_linear(&self) -> bool {
        let Some(order) = self.path_order() else {
            return false;
        };
        let first = self.operand_shapes[0];
        if self.operand_shapes.iter().all(|&s| s == first) {
            return true;
        }
        order
            .windows(2)
            .all(|w| self.operand_shapes[w[0]] != self.operand_shapes[w[1]])
    }

    pub fn apply(&self, operands: &[&DenseTensor]) -> Result<DenseTensor> {
        let dim = operands.first().map(|t| t.dim()).ok_or(Error::OperandCount {
            expected: self.operand_shapes.len(),
            found: 0,
        })?;
        ContractionPlan::new(self, dim)?.execute(operands)
    }

    /// Relabels operands and slots: operand `o` becomes `operand_map[o]`, and
    /// its upper (lower) slot `p` becomes `upper_maps[o][p]` (`lower_maps[o][p]`).
    fn relabel(&self, operand_map: &[usize], upper_maps: &[Vec<usize>], lower_maps: &[Vec<usize>]) -> Vec<(SlotRef, SlotRef)> {
        let mut pairs: Vec<_> = self
            .pairs
            .iter()
            .map(|(u, l)| {
                (
                    SlotRef::upper(operand_map[u.operand], upper_maps[u.operand][u.position]),
                    SlotRef::lower(operand_map[l.operand], lower_maps[l.operand][l.position]),
                )
            })
            .collect();
        pairs.sort();
        pairs
    }
}

impl fmt::Display for ContractionDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shapes: Vec<String> = self.operand_shapes.iter().map(|s| s.to_string()).collect();
        write!(f, "{} [", shapes.join("x"))?;
        for (i, (u, l)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}^{} -> {}_{}", u.operand, u.position, l.operand, l.position)?;
        }
        write!(f, "] -> {}", self.output_shape())
    }
}

/// A diagram compiled for a fixed dimension: each index of the summation is a
/// loop variable with a stride into every operand and into the output.
#[derive(Debug, Clone)]
pub struct ContractionPlan {
    shapes: Vec<TensorShape>,
    dim: usize,
    output: TensorShape,
    operand_strides: Vec<Vec<usize>>,
    output_strides: Vec<usize>,
}

impl ContractionPlan {
    pub fn new(diagram: &ContractionDiagram, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let shapes = diagram.operand_shapes.clone();
        let output = diagram.output_shape();
        let mut partner: BTreeMap<SlotRef, usize> = BTreeMap::new();
        let free_count = output.rank();
        for (k, (u, l)) in diagram.pairs.iter().enumerate() {
            partner.insert(*u, free_count + k);
            partner.insert(*l, free_count + k);
        }
        let vars = free_count + diagram.pairs.len();
        // free uppers in operand order, then free lowers in operand order
        let mut next_free = 0;
        let mut slot_var: BTreeMap<SlotRef, usize> = BTreeMap::new();
        for kind in [SlotKind::Upper, SlotKind::Lower] {
            for (o, s) in shapes.iter().enumerate() {
                let count = if kind == SlotKind::Upper { s.upper } else { s.lower };
                for p in 0..count {
                    let slot = SlotRef { operand: o, kind, position: p };
                    let var = match partner.get(&slot) {
                        Some(&v) => v,
                        None => {
                            next_free += 1;
                            next_free - 1
                        }
                    };
                    slot_var.insert(slot, var);
                }
            }
        }
        let mut operand_strides = Vec::with_capacity(shapes.len());
        for (o, s) in shapes.iter().enumerate() {
            let mut strides = vec![0usize; vars];
            let rank = s.rank();
            for k in 0..rank {
                let slot = if k < s.upper {
                    SlotRef::upper(o, k)
                } else {
                    SlotRef::lower(o, k - s.upper)
                };
                strides[slot_var[&slot]] += dim.pow((rank - 1 - k) as u32);
            }
            operand_strides.push(strides);
        }
        let mut output_strides = vec![0usize; vars];
        for (v, stride) in output_strides.iter_mut().enumerate().take(free_count) {
            *stride = dim.pow((free_count - 1 - v) as u32);
        }
        Ok(ContractionPlan {
            shapes,
            dim,
            output,
            operand_strides,
            output_strides,
        })
    }

    pub fn output_shape(&self) -> TensorShape {
        self.output
    }

    pub fn execute(&self, operands: &[&DenseTensor]) -> Result<DenseTensor> {
        if operands.len() != self.shapes.len() {
            return Err(Error::OperandCount {
                expected: self.shapes.len(),
                found: operands.len(),
            });
        }
        for (t, s) in operands.iter().zip(&self.shapes) {
            if t.dim() != self.dim {
                return Err(Error::DimensionMismatch {
                    left: self.dim,
                    right: t.dim(),
                });
            }
            if t.shape() != *s {
                return Err(Error::ShapeMismatch {
                    expected: *s,
                    found: t.shape(),
                });
            }
        }
        let n = self.dim;
        let vars = self.output_strides.len();
        let mut out = vec![Complex64::new(0.0, 0.0); n.pow(self.output.rank() as u32)];
        let data: Vec<&[Complex64]> = operands.iter().map(|t| t.entries()).collect();
        let mut idx = vec![0usize; vars];
        let mut offsets = vec![0usize; data.len()];
        let mut out_off = 0usize;
        'outer: loop {
            let mut prod = Complex64::new(1.0, 0.0);
            for (d, &off) in data.iter().zip(&offsets) {
                prod *= d[off];
            }
            out[out_off] += prod;
            let mut v = vars;
            loop {
                if v == 0 {
                    break 'outer;
                }
                v -= 1;
                idx[v] += 1;
                for (off, st) in offsets.iter_mut().zip(&self.operand_strides) {
                    *off += st[v];
                }
                out_off += self.output_strides[v];
                if idx[v] < n {
                    break;
                }
                idx[v] = 0;
                for (off, st) in offsets.iter_mut().zip(&self.operand_strides) {
                    *off -= n * st[v];
                }
                out_off -= n * self.output_strides[v];
            }
        }
        DenseTensor::from_entries(self.output, n, out)
    }
}

pub fn apply_diagram(diagram: &ContractionDiagram, operands: &[&DenseTensor]) -> Result<DenseTensor> {
    diagram.apply(operands)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumOptions {
    pub forbid_self_contraction: bool,
    /// Same-kind slots of one operand are interchangeable.
    pub quotient_by_slot_symmetry: bool,
    /// Operands of identical shape are interchangeable.
    pub quotient_by_operand_symmetry: bool,
    pub require_connected: bool,
    pub required_output_shape: Option<TensorShape>,
}

impl EnumOptions {
    /// Labeled operands, self contractions and disconnected diagrams allowed:
    /// two (1,1) tensors give the seven compositions AB, BA, A·TrB, ... , A⊗B.
    pub fn binary() -> Self {
        EnumOptions {
            quotient_by_slot_symmetry: true,
            ..Default::default()
        }
    }

    /// One connected diagram per shape of picture, no self contractions,
    /// identical operands and same-kind legs interchangeable.
    pub fn graded() -> Self {
        EnumOptions {
            forbid_self_contraction: true,
            quotient_by_slot_symmetry: true,
            quotient_by_operand_symmetry: true,
            require_connected: true,
            required_output_shape: None,
        }
    }

    pub fn with_output(mut self, shape: TensorShape) -> Self {
        self.required_output_shape = Some(shape);
        self
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

/// Per-operand permutations of upper and lower slots.
type SlotMaps = (Vec<Vec<usize>>, Vec<Vec<usize>>);
/// Operand map with per-operand upper and lower maps.
type Relabeling = (Vec<usize>, Vec<Vec<usize>>, Vec<Vec<usize>>);

/// Relabelings allowed by the quotient options, as (operand map, upper maps, lower maps).
fn symmetry_group(shapes: &[TensorShape], options: &EnumOptions) -> Vec<Relabeling> {
    let k = shapes.len();
    let operand_maps: Vec<Vec<usize>> = if options.quotient_by_operand_symmetry {
        permutations(k)
            .into_iter()
            .filter(|p| (0..k).all(|o| shapes[p[o]] == shapes[o]))
            .collect()
    } else {
        vec![(0..k).collect()]
    };
    // per-operand slot maps, as a cartesian product over operands
    let mut slot_maps: Vec<SlotMaps> = vec![(Vec::new(), Vec::new())];
    for s in shapes {
        let (ups, lows) = if options.quotient_by_slot_symmetry {
            (permutations(s.upper), permutations(s.lower))
        } else {
            (vec![(0..s.upper).collect()], vec![(0..s.lower).collect()])
        };
        let mut next = Vec::new();
        for (u_acc, l_acc) in &slot_maps {
            for u in &ups {
                for l in &lows {
                    let mut u2 = u_acc.clone();
                    u2.push(u.clone());
                    let mut l2 = l_acc.clone();
                    l2.push(l.clone());
                    next.push((u2, l2));
                }
            }
        }
        slot_maps = next;
    }
    let mut group = Vec::new();
    for om in &operand_maps {
        for (um, lm) in &slot_maps {
            group.push((om.clone(), um.clone(), lm.clone()));
        }
    }
    group
}

/// Every matching satisfying `options`, one canonical representative (the
/// smallest relabeling) per class when quotienting, sorted by pair encoding.
pub fn enumerate_diagrams(shapes: &[TensorShape], options: &EnumOptions) -> Vec<ContractionDiagram> {
    let uppers: Vec<SlotRef> = shapes
        .iter()
        .enumerate()
        .flat_map(|(o, s)| (0..s.upper).map(move |p| SlotRef::upper(o, p)))
        .collect();
    let lowers: Vec<SlotRef> = shapes
        .iter()
        .enumerate()
        .flat_map(|(o, s)| (0..s.lower).map(move |p| SlotRef::lower(o, p)))
        .collect();
    let wanted_pairs = options.required_output_shape.and_then(|out| {
        let k = uppers.len().checked_sub(out.upper)?;
        (lowers.len().checked_sub(out.lower) == Some(k)).then_some(k)
    });
    if options.required_output_shape.is_some() && wanted_pairs.is_none() {
        return Vec::new();
    }

    let mut raw = Vec::new();
    let mut used = vec![false; lowers.len()];
    let mut current = Vec::new();
    collect_matchings(&uppers, &lowers, 0, &mut used, &mut current, options, wanted_pairs, &mut raw);

    let group = symmetry_group(shapes, options);
    let mut classes = BTreeSet::new();
    for pairs in raw {
        let d = ContractionDiagram {
            operand_shapes: shapes.to_vec(),
            pairs,
        };
        if options.require_connected && !d.is_connected() {
            continue;
        }
        let canonical = group
            .iter()
            .map(|(om, um, lm)| d.relabel(om, um, lm))
            .min()
            .unwrap_or_else(|| d.pairs.clone());
        classes.insert(ContractionDiagram {
            operand_shapes: shapes.to_vec(),
            pairs: canonical,
        });
    }
    classes.into_iter().collect()
}

#[allow(clippy::too_many_arguments)]
fn collect_matchings(
    uppers: &[SlotRef],
    lowers: &[SlotRef],
    next: usize,
    used: &mut [bool],
    current: &mut Vec<(SlotRef, SlotRef)>,
    options: &EnumOptions,
    wanted_pairs: Option<usize>,
    out: &mut Vec<Vec<(SlotRef, SlotRef)>>,
) {
    if let Some(k) = wanted_pairs {
        if current.len() > k || current.len() + (uppers.len() - next) < k {
            return;
        }
    }
    if next == uppers.len() {
        let mut pairs = current.clone();
        pairs.sort();
        out.push(pairs);
        return;
    }
    let u = uppers[next];
    collect_matchings(uppers, lowers, next + 1, used, current, options, wanted_pairs, out);
    for (j, l) in lowers.iter().enumerate() {
        if used[j] || (options.forbid_self_contraction && l.operand == u.operand) {
            continue;
        }
        used[j] = true;
        current.push((u, *l));
        collect_matchings(uppers, lowers, next + 1, used, current, options, wanted_pairs, out);
        current.pop();
        used[j] = false;
    }
}

pub fn classify_by_output(diagrams: &[ContractionDiagram]) -> BTreeMap<TensorShape, usize> {
    let mut hist = BTreeMap::new();
    for d in diagrams {
        *hist.entry(d.output_shape()).or_insert(0) += 1;
    }
    hist
}

/// Number of `arity`-symbol subsets of a `word_length`-symbol word.
pub fn count_primary_operations(word_length: usize, arity: usize) -> Result<u64> {
    if arity > word_length {
        return Err(Error::ArityTooLarge {
            arity,
            length: word_length,
        });
    }
    let m = arity.min(word_length - arity) as u128;
    let k = word_length as u128;
    let mut acc: u128 = 1;
    for i in 0..m {
        acc = acc * (k - i) / (i + 1);
    }
    Ok(acc as u64)
}

/// Operator shapes `(n,1), (1,2), (2,3), ..., (n-1,n)` acting on `V ⊕ V⊗2 ⊕ ... ⊕ V⊗n`,
/// with their linear elementary operation of arity `n+1`.
pub fn linear_family(n: usize) -> Result<(Vec<TensorShape>, usize)> {
    if n == 0 {
        return Err(Error::EmptyFamily);
    }
    let mut shapes = vec![TensorShape::new(n, 1)];
    shapes.extend((1..n).map(|k| TensorShape::new(k, k + 1)));
    Ok((shapes, n + 1))
}

/// One row of the convention survey: which quotient/filter combination was
/// used and how many diagrams it produced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConventionCount {
    pub quotient_by_slot_symmetry: bool,
    pub quotient_by_operand_symmetry: bool,
    pub require_connected: bool,
    pub count: usize,
}

/// Counts under every combination of the quotient and connectedness options,
/// keeping the self-contraction rule and output shape of `base`.
pub fn survey_conventions(shapes: &[TensorShape], base: &EnumOptions) -> Vec<ConventionCount> {
    let mut rows = Vec::new();
    for slot in [false, true] {
        for operand in [false, true] {
            for connected in [false, true] {
                let opts = EnumOptions {
                    quotient_by_slot_symmetry: slot,
                    quotient_by_operand_symmetry: operand,
                    require_connected: connected,
                    ..base.clone()
                };
                rows.push(ConventionCount {
                    quotient_by_slot_symmetry: slot,
                    quotient_by_operand_symmetry: operand,
                    require_connected: connected,
                    count: enumerate_diagrams(shapes, &opts).len(),
                });
            }
        }
    }
    rows
}

/// Parses `"(1,1)x(2,1)x..."`.
pub fn parse_shape_list(s: &str) -> Result<Vec<TensorShape>> {
    let shapes = s
        .split(['x', '*', '×'])
        .filter(|p| !p.trim().is_empty())
        .map(str::parse)
        .collect::<Result<Vec<TensorShape>>>()?;
    if shapes.is_empty() {
        return Err(Error::Parse(format!("no shapes in {s:?}")));
    }
    Ok(shapes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::random_tensor;

    const M: TensorShape = TensorShape::MATRIX;
    const H: TensorShape = TensorShape::HIGH;
    const L: TensorShape = TensorShape::LOW;

    fn real(rows: &[&[f64]]) -> DenseTensor {
        DenseTensor::from_real_rows(rows).unwrap()
    }

    #[test]
    fn matmul_diagram_by_hand() {
        let a = real(&[&[1.0, 2.0], &[3.0, 4.0]]);
        let b = real(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let p = ContractionDiagram::matmul().apply(&[&a, &b]).unwrap();
        assert_eq!(p, real(&[&[2.0, 1.0], &[4.0, 3.0]]));
    }

    #[test]
    fn empty_diagram_is_tensor_product() {
        let a = random_tensor(M, 3, 1).unwrap();
        let b = random_tensor(H, 3, 2).unwrap();
        let d = ContractionDiagram::empty(vec![M, H]);
        assert_eq!(d.apply(&[&a, &b]).unwrap(), a.tensor_product(&b).unwrap());
    }

    #[test]
    fn full_cross_contraction_is_trace_of_product() {
        let a = real(&[&[1.0, 2.0], &[3.0, 4.0]]);
        let b = real(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let d = ContractionDiagram::new(vec![M, M], vec![((0, 0), (1, 0)), ((1, 0), (0, 0))]).unwrap();
        let s = d.apply(&[&a, &b]).unwrap();
        assert_eq!(s.scalar_value(), Some(Complex64::new(5.0, 0.0)));
    }

    #[test]
    fn apply_rejects_bad_operands() {
        let a = random_tensor(M, 2, 1).unwrap();
        let b = random_tensor(M, 3, 1).unwrap();
        let h = random_tensor(H, 2, 1).unwrap();
        let d = ContractionDiagram::matmul();
        assert!(matches!(d.apply(&[&a, &b]), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(d.apply(&[&a, &h]), Err(Error::ShapeMismatch { .. })));
        assert!(matches!(d.apply(&[&a]), Err(Error::OperandCount { .. })));
    }

    #[test]
    fn invalid_diagrams_rejected() {
        assert!(ContractionDiagram::new(vec![M, M], vec![((0, 0), (1, 0)), ((0, 0), (0, 0))]).is_err());
        assert!(ContractionDiagram::new(vec![M, M], vec![((2, 0), (1, 0))]).is_err());
        assert!(ContractionDiagram::new(vec![M, M], vec![((0, 1), (1, 0))]).is_err());
    }

    #[test]
    fn binary_matrix_count() {
        let ds = enumerate_diagrams(&[M, M], &EnumOptions::binary());
        assert_eq!(ds.len(), 7);
        let hist = classify_by_output(&ds);
        assert_eq!(hist[&M], 4);
        assert_eq!(hist[&TensorShape::SCALAR], 2);
        assert_eq!(hist[&TensorShape::new(2, 2)], 1);
    }

    #[test]
    fn single_matrix_identity_and_trace() {
        let ds = enumerate_diagrams(&[M], &EnumOptions::binary());
        assert_eq!(ds.len(), 2);
        assert_eq!(ds[0].pairs().len(), 0);
        assert_eq!(ds[1].output_shape(), TensorShape::SCALAR);
    }

    #[test]
    fn matrix_paths_are_linear() {
        assert!(ContractionDiagram::matmul().is_linear());
        let trace_ab = ContractionDiagram::new(vec![M, M], vec![((0, 0), (1, 0)), ((1, 0), (0, 0))]).unwrap();
        assert!(trace_ab.is_linear());
        assert!(!ContractionDiagram::empty(vec![M, M]).is_linear());
        let self_loop = ContractionDiagram::new(vec![M, M], vec![((0, 0), (0, 0))]).unwrap();
        assert!(!self_loop.is_path());
    }

    #[test]
    fn classify_empty() {
        assert!(classify_by_output(&[]).is_empty());
    }

    #[test]
    fn ternary_counts_and_linear_tags() {
        let high = enumerate_diagrams(&[H, H, L], &EnumOptions::graded().with_output(H));
        let low = enumerate_diagrams(&[L, L, H], &EnumOptions::graded().with_output(L));
        assert_eq!(high.len(), 7);
        assert_eq!(low.len(), 7);
        assert_eq!(high.iter().filter(|d| d.is_path()).count(), 5);
        assert_eq!(high.iter().filter(|d| d.is_linear()).count(), 2);
        assert_eq!(low.iter().filter(|d| d.is_linear()).count(), 2);
        let both: Vec<_> = high.into_iter().chain(low).collect();
        let hist = classify_by_output(&both);
        assert_eq!(hist.len(), 2);
        assert_eq!((hist[&H], hist[&L]), (7, 7));
    }

    #[test]
    fn ternary_convention_survey() {
        let base = EnumOptions {
            forbid_self_contraction: true,
            required_output_shape: Some(H),
            ..Default::default()
        };
        let rows = survey_conventions(&[H, H, L], &base);
        let hits: Vec<_> = rows.iter().filter(|r| r.count == 7).collect();
        assert_eq!(hits.len(), 1);
        assert!(hits[0].quotient_by_slot_symmetry);
        assert!(hits[0].quotient_by_operand_symmetry);
        assert!(hits[0].require_connected);
        let get = |s, o, c| {
            rows.iter()
                .find(|r| r.quotient_by_slot_symmetry == s && r.quotient_by_operand_symmetry == o && r.require_connected == c)
                .unwrap()
                .count
        };
        assert_eq!(get(true, false, false), 16);
        assert_eq!(get(true, false, true), 14);
        assert_eq!(get(true, true, false), 8);
    }

    #[test]
    fn primary_operation_counts() {
        assert_eq!(count_primary_operations(5, 3), Ok(10));
        assert_eq!(count_primary_operations(7, 4), Ok(35));
        assert_eq!(count_primary_operations(6, 6), Ok(1));
        assert_eq!(count_primary_operations(4, 0), Ok(1));
        assert!(matches!(count_primary_operations(3, 4), Err(Error::ArityTooLarge { .. })));
    }

    #[test]
    fn linear_family_rows() {
        assert_eq!(linear_family(1).unwrap(), (vec![M], 2));
        assert_eq!(linear_family(2).unwrap(), (vec![H, L], 3));
        assert_eq!(
            linear_family(3).unwrap(),
            (vec![TensorShape::new(3, 1), L, TensorShape::new(2, 3)], 4)
        );
        assert_eq!(linear_family(0), Err(Error::EmptyFamily));
    }

    #[test]
    fn shape_list_parse() {
        assert_eq!(parse_shape_list("(2,1)x(2,1)x(1,2)").unwrap(), vec![H, H, L]);
        assert!(parse_shape_list("").is_err());
        assert!(parse_shape_list("(1,1)x(q,1)").is_err());
    }

    #[test]
    fn diagram_json_round_trip() {
        let d = ContractionDiagram::new(vec![H, L, H], vec![((1, 0), (0, 0)), ((2, 0), (1, 0)), ((2, 1), (1, 1))]).unwrap();
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(s, r#"{"shapes":[[2,1],[1,2],[2,1]],"pairs":[[[1,0],[0,0]],[[2,0],[1,0]],[[2,1],[1,1]]]}"#);
        assert_eq!(serde_json::from_str::<ContractionDiagram>(&s).unwrap(), d);
        let bad = r#"{"shapes":[[1,1]],"pairs":[[[0,0],[0,1]]]}"#;
        assert!(serde_json::from_str::<ContractionDiagram>(bad).is_err());
    }
}
