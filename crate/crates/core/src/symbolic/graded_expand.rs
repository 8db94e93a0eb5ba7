//! Word-level expansion of the 3-commutator and the five-argument identity.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::Serialize;

use super::cyclo::CycloScalar;
use super::formal::FormalSum;
use super::poly::{Var, WeightPoly};
use super::words::{Symbol, GradedWord, WordType};
use crate::error::{Error, Result};
use crate::graded::{BRACKET_WORDS, IDENTITY18_TERMS};

pub type GradedSum = FormalSum<GradedWord>;

const NAMES: [char; 5] = ['A', 'B', 'C', 'D', 'E'];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicTernary {
    pub alpha: WeightPoly,
    pub beta: WeightPoly,
    pub gamma: WeightPoly,
}

impl SymbolicTernary {
    pub fn generic() -> Self {
        SymbolicTernary {
            alpha: WeightPoly::var(Var::Alpha),
            beta: WeightPoly::var(Var::Beta),
            gamma: WeightPoly::var(Var::Gamma),
        }
    }

    /// `(1, ω, ω²)`.
    pub fn canonical() -> Self {
        SymbolicTernary {
            alpha: WeightPoly::one(),
            beta: WeightPoly::constant(CycloScalar::omega()),
            gamma: WeightPoly::constant(CycloScalar::omega_squared()),
        }
    }

    /// All weights 1: coefficients then count word instances.
    pub fn unit() -> Self {
        SymbolicTernary {
            alpha: WeightPoly::one(),
            beta: WeightPoly::one(),
            gamma: WeightPoly::one(),
        }
    }

    fn weight(&self, i: usize) -> &WeightPoly {
        [&self.alpha, &self.beta, &self.gamma][i]
    }
}

/// A generic element `X = X¹₂ + X²₁` named by one symbol.
pub fn graded_symbol(s: char) -> GradedSum {
    GradedSum::single(GradedWord::letter(WordType::High, s)) + GradedSum::single(GradedWord::letter(WordType::Low, s))
}

fn component(x: &GradedSum, t: WordType) -> Vec<(&GradedWord, &WeightPoly)> {
    x.iter().filter(|(w, _)| w.word_type() == t).collect()
}

pub fn three_commutator_symbolic(args: [&GradedSum; 3], w: &SymbolicTernary) -> GradedSum {
    let mut out = GradedSum::zero();
    for t in [WordType::High, WordType::Low] {
        let parts = [t, t.flip(), t];
        for ([i, j, k], wi) in BRACKET_WORDS {
            let [first, middle, last] = [(i, parts[0]), (j, parts[1]), (k, parts[2])].map(|(a, ty)| component(args[a], ty));
            for (x, cx) in &first {
                for (y, cy) in &middle {
                    for (z, cz) in &last {
                        let c = &(&(*cx * *cy) * *cz) * w.weight(wi);
                        out.add_term(GradedWord::concat3(x, y, z), c);
                    }
                }
            }
        }
    }
    out
}

/// `(x, y, z)` on distinct generic symbols.
pub fn expand_three_commutator_symbolic(x: char, y: char, z: char, w: &SymbolicTernary) -> Result<GradedSum> {
    if x == y || y == z || x == z {
        return Err(Error::MalformedWord(format!("symbols must be distinct: {x}{y}{z}")));
    }
    let s = [graded_symbol(x), graded_symbol(y), graded_symbol(z)];
    Ok(three_commutator_symbolic([&s[0], &s[1], &s[2]], w))
}

/// `(X,Y,Z) + (Z,X,Y) + (Y,Z,X)`.
pub fn cyclic16_symbolic(w: &SymbolicTernary) -> GradedSum {
    let s: Vec<GradedSum> = ['X', 'Y', 'Z'].iter().map(|&c| graded_symbol(c)).collect();
    three_commutator_symbolic([&s[0], &s[1], &s[2]], w)
        + three_commutator_symbolic([&s[2], &s[0], &s[1]], w)
        + three_commutator_symbolic([&s[1], &s[2], &s[0]], w)
}

fn identity18_term(term: [usize; 5], s: &[GradedSum], w: &SymbolicTernary) -> GradedSum {
    let inner = three_commutator_symbolic([&s[term[0]], &s[term[1]], &s[term[2]]], w);
    three_commutator_symbolic([&inner, &s[term[3]], &s[term[4]]], w)
}

fn identity18(s: &[GradedSum], w: &SymbolicTernary) -> GradedSum {
    IDENTITY18_TERMS
        .iter()
        .fold(GradedSum::zero(), |acc, &t| acc + identity18_term(t, s, w))
}

fn symbol_sums() -> Vec<GradedSum> {
    NAMES.iter().map(|&c| graded_symbol(c)).collect()
}

/// Contiguous 3-windows of an alternating word of distinct symbols.
pub fn word_generators(word: &GradedWord) -> Result<Vec<[Symbol; 3]>> {
    let s = word.symbols();
    if s.len() < 3 {
        return Err(Error::MalformedWord(format!("{word} is shorter than three symbols")));
    }
    if s.iter().collect::<BTreeSet<_>>().len() != s.len() {
        return Err(Error::MalformedWord(format!("{word} repeats a symbol")));
    }
    Ok(s.windows(3).map(|w| [w[0], w[1], w[2]]).collect())
}

fn triple_text(t: [usize; 3]) -> String {
    t.iter().map(|&i| NAMES[i]).collect()
}

/// The ten columns: pairs of mirrored inner triples, in order of first appearance.
pub fn primary_columns() -> Vec<(String, String)> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for t in IDENTITY18_TERMS {
        let mut key = [t[0], t[1], t[2]];
        key.sort();
        if seen.insert(key) {
            out.push((triple_text([t[0], t[1], t[2]]), triple_text([t[2], t[1], t[0]])));
        }
    }
    out
}

fn column_of(letters: [Symbol; 3]) -> Option<String> {
    let mut key: Vec<char> = letters.iter().map(|s| s.0).collect();
    key.sort();
    primary_columns().into_iter().find_map(|(a, b)| {
        let mut k: Vec<char> = a.chars().collect();
        k.sort();
        (k == key).then(|| format!("{a}/{b}"))
    })
}

/// Columns of the table in which `word` appears.
pub fn word_columns(word: &GradedWord) -> Result<Vec<String>> {
    word_generators(word)?
        .into_iter()
        .map(|t| column_of(t).ok_or_else(|| Error::MalformedWord(format!("{word} uses symbols outside A..E"))))
        .collect()
}

fn var(v: Var) -> WeightPoly {
    WeightPoly::var(v)
}

fn sum(terms: &[WeightPoly]) -> WeightPoly {
    terms.iter().fold(WeightPoly::zero(), |acc, t| &acc + t)
}

/// The four per-word totals, labelled as in the printed appendix.
pub fn weight_forms() -> [(&'static str, WeightPoly); 4] {
    let (a, b, g) = (var(Var::Alpha), var(Var::Beta), var(Var::Gamma));
    let two = WeightPoly::int(2);
    let (ab, ag, bg) = (&a * &b, &a * &g, &b * &g);
    let (aa, bb, gg) = (&a * &a, &b * &b, &g * &g);
    [
        ("Eq1", &two * &sum(&[ab.clone(), ag.clone(), bg.clone()])),
        ("Eq2", sum(&[ab.clone(), ag.clone(), bb.clone(), &two * &bg, gg.clone()])),
        ("Eq3", sum(&[aa.clone(), ab.clone(), ag.clone(), bb, bg, gg])),
        ("Eq4", &two * &sum(&[aa, ab, ag])),
    ]
}

/// Normal form modulo `(α+β+γ, αβ+βγ+γα)`: eliminate `γ = -α-β`, then divide
/// by the monic `α² + αβ + β²`. Zero iff the polynomial lies in the ideal.
pub fn reduce_mod_cube_root_ideal(p: &WeightPoly) -> WeightPoly {
    let mut cur = reduce_mod_sum(p);
    loop {
        let mut out = WeightPoly::zero();
        let mut changed = false;
        for (m, c) in cur.terms() {
            if m[0] >= 2 {
                changed = true;
                let base = [m[0] - 2, m[1], m[2], m[3]];
                out.add_term([base[0] + 1, base[1] + 1, base[2], base[3]], -c);
                out.add_term([base[0], base[1] + 2, base[2], base[3]], -c);
            } else {
                out.add_term(*m, c.clone());
            }
        }
        cur = out;
        if !changed {
            return cur;
        }
    }
}

/// Normal form modulo `α+β+γ`.
pub fn reduce_mod_sum(p: &WeightPoly) -> WeightPoly {
    p.substitute(Var::Gamma, &-&(&var(Var::Alpha) + &var(Var::Beta)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeightSpec {
    /// Free α, β, γ: per-word totals are reported and reduced modulo the ideal.
    Symbolic,
    /// `(1, ω, ω²)` in `Q(ω)`.
    CubeRoots,
}

#[derive(Debug, Clone, Serialize)]
pub struct WeightForm {
    pub label: String,
    pub polynomial: String,
    pub words_high: usize,
    pub words_low: usize,
    pub zero_at_cube_roots: bool,
    /// Vanishes once `α+β+γ = 0` is imposed.
    pub in_sum_ideal: bool,
    /// Remainder modulo `(α+β+γ, αβ+βγ+γα)`.
    pub normal_form: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct WordClass {
    /// The unordered pair of symbols at positions 2 and 4.
    pub pair: String,
    pub words_high: usize,
    pub words_low: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Identity18Report {
    pub weights: WeightSpec,
    pub passed: bool,
    pub failures: Vec<String>,
    pub instances: u64,
    pub distinct_high: usize,
    pub distinct_low: usize,
    /// `Some(k)` when every word occurs exactly `k` times.
    pub occurrences_per_word: Option<u64>,
    pub classes: Vec<WordClass>,
    pub forms: Vec<WeightForm>,
    /// Words whose total matches none of the four forms.
    pub unclassified: Vec<String>,
    /// The full expansion at `(1, ω, ω²)` is the zero sum.
    pub zero_at_cube_roots: bool,
}

fn class_key(w: &GradedWord) -> String {
    let s = w.symbols();
    let mut k = [s[1].0, s[3].0];
    k.sort();
    k.iter().collect()
}

fn occurrences(unit: &GradedSum) -> BTreeMap<GradedWord, u64> {
    unit.iter()
        .map(|(w, c)| {
            let n = c.as_constant().and_then(|c| c.as_integer()).unwrap_or(-1);
            (w.clone(), u64::try_from(n).unwrap_or(0))
        })
        .collect()
}

pub fn verify_identity18_symbolic(spec: WeightSpec) -> Identity18Report {
    let s = symbol_sums();
    let mut failures = Vec::new();

    let count = occurrences(&identity18(&s, &SymbolicTernary::unit()));
    let instances: u64 = count.values().sum();
    let distinct = |t: WordType| count.keys().filter(|w| w.word_type() == t).count();
    let (distinct_high, distinct_low) = (distinct(WordType::High), distinct(WordType::Low));
    let occ: BTreeSet<u64> = count.values().copied().collect();
    let occurrences_per_word = (occ.len() == 1).then(|| *occ.iter().next().unwrap());
    if instances != 1440 {
        failures.push(format!("expected 1440 word instances, found {instances}"));
    }
    if distinct_high != 120 || distinct_low != 120 {
        failures.push(format!("expected 120 distinct words per type, found {distinct_high}/{distinct_low}"));
    }
    if occurrences_per_word != Some(6) {
        failures.push(format!("expected every word to occur 6 times, found multiplicities {occ:?}"));
    }

    let mut by_class: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    for w in count.keys() {
        let e = by_class.entry(class_key(w)).or_default();
        match w.word_type() {
            WordType::High => e.0 += 1,
            WordType::Low => e.1 += 1,
        }
    }
    let classes: Vec<WordClass> = by_class
        .into_iter()
        .map(|(pair, (h, l))| WordClass {
            pair,
            words_high: h,
            words_low: l,
        })
        .collect();
    if classes.len() != 10 || classes.iter().any(|c| c.words_high != 12 || c.words_low != 12) {
        failures.push("words do not split into 10 classes of 12 per type".into());
    }

    let totals = identity18(&s, &SymbolicTernary::generic());
    let cube = [
        CycloScalar::from_i64(1),
        CycloScalar::omega(),
        CycloScalar::omega_squared(),
        CycloScalar::from_i64(0),
    ];
    let forms_def = weight_forms();
    let mut tally = vec![(0usize, 0usize); 4];
    let mut unclassified = Vec::new();
    for (w, c) in totals.iter() {
        match forms_def.iter().position(|(_, f)| f == c) {
            Some(i) => match w.word_type() {
                WordType::High => tally[i].0 += 1,
                WordType::Low => tally[i].1 += 1,
            },
            None => unclassified.push(format!("{w}: {c}")),
        }
    }
    if !unclassified.is_empty() {
        failures.push(format!("{} words have a total outside Eq1..Eq4", unclassified.len()));
    }
    let forms: Vec<WeightForm> = forms_def
        .iter()
        .zip(&tally)
        .map(|((label, f), &(h, l))| WeightForm {
            label: label.to_string(),
            polynomial: f.to_string(),
            words_high: h,
            words_low: l,
            zero_at_cube_roots: f.eval(&cube).is_zero(),
            in_sum_ideal: reduce_mod_sum(f).is_zero(),
            normal_form: reduce_mod_cube_root_ideal(f).to_string(),
        })
        .collect();
    let expected_tally = [(20, 20), (40, 40), (40, 40), (20, 20)];
    if tally != expected_tally {
        failures.push(format!("form multiplicities {tally:?}, expected {expected_tally:?}"));
    }

    let zero_at_cube_roots = identity18(&s, &SymbolicTernary::canonical()).is_zero();
    match spec {
        WeightSpec::CubeRoots => {
            if !zero_at_cube_roots {
                failures.push("expansion at (1, w, w^2) is not zero".into());
            }
            if forms.iter().any(|f| !f.zero_at_cube_roots) {
                failures.push("a per-word total does not vanish at (1, w, w^2)".into());
            }
        }
        WeightSpec::Symbolic => {
            let residue: Vec<&str> = totals
                .iter()
                .filter(|(_, c)| !reduce_mod_cube_root_ideal(c).is_zero())
                .map(|_| "word")
                .collect();
            if !residue.is_empty() {
                failures.push(format!("{} per-word totals lie outside the ideal", residue.len()));
            }
        }
    }

    Identity18Report {
        weights: spec,
        passed: failures.is_empty(),
        failures,
        instances,
        distinct_high,
        distinct_low,
        occurrences_per_word,
        classes,
        forms,
        unclassified,
        zero_at_cube_roots,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TableCell {
    pub participates: bool,
    /// Sum of the products of inner and outer weights contributed by this column.
    pub weight: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub word: String,
    pub cells: Vec<TableCell>,
    pub total: String,
    pub form: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Appendix2Table {
    pub class: String,
    pub word_type: String,
    pub columns: Vec<String>,
    /// Columns no word of the class reaches.
    pub empty_columns: Vec<String>,
    pub rows: Vec<TableRow>,
}

/// Rows are the twelve words whose symbols at positions 2 and 4 are `{x, y}`;
/// columns are the ten pairs of mirrored inner triples.
pub fn appendix2_table(x: char, y: char, word_type: WordType) -> Result<Appendix2Table> {
    if !NAMES.contains(&x) || !NAMES.contains(&y) || x == y {
        return Err(Error::MalformedWord(format!("class needs two distinct symbols from A..E, got {x}{y}")));
    }
    let s = symbol_sums();
    let w = SymbolicTernary::generic();
    let columns = primary_columns();
    let column_totals: Vec<GradedSum> = columns
        .iter()
        .map(|(a, _)| {
            IDENTITY18_TERMS
                .iter()
                .filter(|t| {
                    let mut k: Vec<char> = t[..3].iter().map(|&i| NAMES[i]).collect();
                    let mut ka: Vec<char> = a.chars().collect();
                    k.sort();
                    ka.sort();
                    k == ka
                })
                .fold(GradedSum::zero(), |acc, &t| acc + identity18_term(t, &s, &w))
        })
        .collect();
    let mut key = [x, y];
    key.sort();
    let key: String = key.iter().collect();
    let totals = identity18(&s, &w);
    let forms = weight_forms();
    let rows: Vec<TableRow> = totals
        .words()
        .chain(column_totals.iter().flat_map(|c| c.words()))
        .filter(|g| g.word_type() == word_type && class_key(g) == key)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .map(|g| {
            let cells = column_totals
                .iter()
                .map(|c| {
                    let v = c.coefficient(g);
                    TableCell {
                        participates: !v.is_zero(),
                        weight: v.to_string(),
                    }
                })
                .collect();
            let total = totals.coefficient(g);
            TableRow {
                word: g.text(),
                cells,
                form: forms.iter().find(|(_, f)| *f == total).map(|(l, _)| l.to_string()),
                total: total.to_string(),
            }
        })
        .collect();
    let names: Vec<String> = columns.iter().map(|(a, b)| format!("{a}/{b}")).collect();
    let empty_columns = names
        .iter()
        .enumerate()
        .filter(|(i, _)| rows.iter().all(|r: &TableRow| !r.cells[*i].participates))
        .map(|(_, n)| n.clone())
        .collect();
    Ok(Appendix2Table {
        class: key,
        word_type: word_type.tag().to_string(),
        columns: names,
        empty_columns,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(t: WordType, s: &str) -> GradedWord {
        GradedWord::from_str_typed(t, s).unwrap()
    }

    #[test]
    fn bracket_on_symbols() {
        let r = expand_three_commutator_symbolic('X', 'Y', 'Z', &SymbolicTernary::generic()).unwrap();
        assert_eq!(r.len(), 12);
        for t in [WordType::High, WordType::Low] {
            let a = var(Var::Alpha);
            assert_eq!(r.coefficient(&word(t, "XYZ")), a);
            assert_eq!(r.coefficient(&word(t, "ZYX")), a);
            assert_eq!(r.coefficient(&word(t, "ZXY")), var(Var::Beta));
            assert_eq!(r.coefficient(&word(t, "YXZ")), var(Var::Beta));
            assert_eq!(r.coefficient(&word(t, "XZY")), var(Var::Gamma));
            assert_eq!(r.coefficient(&word(t, "YZX")), var(Var::Gamma));
        }
        assert!(expand_three_commutator_symbolic('X', 'X', 'Z', &SymbolicTernary::generic()).is_err());
    }

    #[test]
    fn cyclic_sum_weights() {
        let e1 = &(&var(Var::Alpha) + &var(Var::Beta)) + &var(Var::Gamma);
        let r = cyclic16_symbolic(&SymbolicTernary::generic());
        assert_eq!(r.len(), 12);
        assert!(r.iter().all(|(_, c)| *c == e1));
        assert!(cyclic16_symbolic(&SymbolicTernary::canonical()).is_zero());
    }

    #[test]
    fn repeated_symbol() {
        let x = graded_symbol('X');
        let r = three_commutator_symbolic([&x, &x, &x], &SymbolicTernary::generic());
        let e1 = &(&var(Var::Alpha) + &var(Var::Beta)) + &var(Var::Gamma);
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|(_, c)| *c == &e1 + &e1));
    }

    #[test]
    fn identity18_counts_and_forms() {
        for spec in [WeightSpec::CubeRoots, WeightSpec::Symbolic] {
            let r = verify_identity18_symbolic(spec);
            assert!(r.passed, "{:?}", r.failures);
            assert_eq!(r.instances, 1440);
            assert!(r.zero_at_cube_roots);
        }
    }

    #[test]
    fn ideal_membership() {
        let r = verify_identity18_symbolic(WeightSpec::Symbolic);
        let in_sum: Vec<bool> = r.forms.iter().map(|f| f.in_sum_ideal).collect();
        assert_eq!(in_sum, vec![false, true, false, true]);
        assert!(r.forms.iter().all(|f| f.normal_form == "0"));
        let a = var(Var::Alpha);
        assert!(!reduce_mod_cube_root_ideal(&a).is_zero());
    }

    #[test]
    fn generators() {
        let w = word(WordType::High, "ABCDE");
        let g = word_generators(&w).unwrap();
        let text: Vec<String> = g.iter().map(|t| t.iter().map(|s| s.0).collect()).collect();
        assert_eq!(text, ["ABC", "BCD", "CDE"]);
        assert_eq!(word_generators(&word(WordType::Low, "XYZ")).unwrap().len(), 1);
        assert_eq!(word_columns(&word(WordType::High, "BACED")).unwrap(), ["ABC/CBA", "ACE/ECA", "CDE/EDC"]);
        assert!(word_generators(&word(WordType::High, "ABA")).is_err());
        assert!(word_generators(&word(WordType::High, "A")).is_err());
    }

    #[test]
    fn table_for_class_ae() {
        let t = appendix2_table('A', 'E', WordType::High).unwrap();
        assert_eq!(t.columns.len(), 10);
        assert_eq!(t.empty_columns, ["BCD/DCB"]);
        let got: Vec<(String, String)> = t.rows.iter().map(|r| (r.word.clone(), r.form.clone().unwrap())).collect();
        let want = [
            ("BACED", "Eq1"),
            ("BADEC", "Eq2"),
            ("BEDAC", "Eq3"),
            ("BECAD", "Eq4"),
            ("CABED", "Eq2"),
            ("CADEB", "Eq3"),
            ("CEBAD", "Eq3"),
            ("CEDAB", "Eq2"),
            ("DABEC", "Eq3"),
            ("DACEB", "Eq4"),
            ("DECAB", "Eq1"),
            ("DEBAC", "Eq2"),
        ];
        let mut want = want.map(|(a, b)| (a.to_string(), b.to_string())).to_vec();
        want.sort();
        assert_eq!(got, want);
        for r in &t.rows {
            assert_eq!(r.cells.iter().filter(|c| c.participates).count(), 3);
        }
    }
}
