//! `verify` suites.

use std::time::Instant;

use clap::ValueEnum;
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use tidlab_core::graded::{
    cyclic_residual, identity18_residual, relative_residual as graded_relative, search_conventions, ChainConvention,
    GradedPair, SearchSettings, TernaryWeights,
};
use tidlab_core::matrix::{
    identity6_residual, jacobi_cyclic_residual, phi4, relative_residual, trace_commutator_remainder, Phi2Params,
};
use tidlab_core::symbolic::graded_expand::{appendix2_table, cyclic16_symbolic, GradedSum};
use tidlab_core::symbolic::matrix_expand::{
    jacobi_cyclic_symbolic, phi2_nested_table, sym, trace_commutator_remainder_symbolic, TraceSum,
};
use tidlab_core::symbolic::{
    verify_identity18_symbolic, verify_identity6_symbolic, SymbolicPhi2, SymbolicTernary, Var, WeightPoly,
    WeightSpec, WordType,
};
use tidlab_core::{DenseTensor, TensorSampler, TensorShape};

use crate::config::{ConventionSource, RunConfig, UsageError, WeightChoice};
use crate::report::{CheckReport, SCHEMA};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Jacobi,
    Identity6,
    Phi4,
    Cyclic16,
    Identity18,
    Appendix1,
    Appendix2,
    All,
}

impl Suite {
    const EACH: [Suite; 7] = [
        Suite::Appendix1,
        Suite::Appendix2,
        Suite::Cyclic16,
        Suite::Identity18,
        Suite::Identity6,
        Suite::Jacobi,
        Suite::Phi4,
    ];

    fn name(self) -> &'static str {
        match self {
            Suite::Jacobi => "jacobi",
            Suite::Identity6 => "identity6",
            Suite::Phi4 => "phi4",
            Suite::Cyclic16 => "cyclic16",
            Suite::Identity18 => "identity18",
            Suite::Appendix1 => "appendix1",
            Suite::Appendix2 => "appendix2",
            Suite::All => "all",
        }
    }

    fn graded(self) -> bool {
        matches!(self, Suite::Cyclic16 | Suite::Identity18 | Suite::All)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub suite: Suite,
    pub config: RunConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convention: Option<ChainConvention>,
    pub checks: Vec<CheckReport>,
    pub passed: bool,
}

pub fn load_convention(src: &ConventionSource) -> Result<ChainConvention, UsageError> {
    match src {
        ConventionSource::Canonical => Ok(ChainConvention::canonical()),
        ConventionSource::AutoSearch => search_conventions(&SearchSettings::default())
            .map_err(|e| UsageError(format!("convention search failed: {e}")))?
            .selected
            .ok_or_else(|| UsageError("convention search found no surviving convention".into())),
        ConventionSource::File(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| UsageError(format!("cannot read {path}: {e}")))?;
            ChainConvention::from_json(&text).map_err(|e| UsageError(format!("bad convention descriptor {path}: {e}")))
        }
    }
}

pub fn run_verify(suite: Suite, cfg: &RunConfig) -> Result<VerifyReport, UsageError> {
    cfg.validate()?;
    let convention = if suite.graded() {
        Some(load_convention(&cfg.convention)?)
    } else {
        None
    };
    let suites: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    let mut checks = Vec::new();
    for s in suites {
        let numeric = cfg.mode.numeric() && s != Suite::Appendix2;
        let symbolic = cfg.mode.symbolic() || s == Suite::Appendix2;
        if numeric {
            checks.push(timed(cfg, || numeric_check(s, cfg, convention.as_ref())));
        }
        if symbolic {
            checks.push(timed(cfg, || symbolic_check(s)));
        }
    }
    checks.sort_by(|a, b| (&a.check, a.backend).cmp(&(&b.check, b.backend)));
    Ok(VerifyReport {
        schema: SCHEMA,
        command: "verify",
        suite,
        config: cfg.clone(),
        passed: checks.iter().all(|c| c.passed),
        convention,
        checks,
    })
}

fn timed(cfg: &RunConfig, f: impl FnOnce() -> CheckReport) -> CheckReport {
    let t = Instant::now();
    let mut r = f();
    if cfg.timings {
        r.elapsed_ms = Some(t.elapsed().as_secs_f64() * 1e3);
    }
    r
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn weights_json(w: &[Complex64]) -> Value {
    json!(w.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>())
}

/// Weight stream kept apart from the operand stream of the same seed.
fn weight_sampler(seed: u64) -> TensorSampler {
    TensorSampler::new(seed ^ 0x9e37_79b9_7f4a_7c15)
}

fn phi2_params(suite: Suite, cfg: &RunConfig, seed: u64) -> Phi2Params {
    let base = match suite {
        Suite::Jacobi => Phi2Params::commutator(),
        _ => Phi2Params::trace_deformed(),
    };
    match cfg.weights {
        WeightChoice::Canonical => base,
        WeightChoice::Explicit => {
            let [a, b, g, d] = cfg.explicit.over(base.as_array());
            Phi2Params::new(a, b, g, d)
        }
        WeightChoice::RandomConstrained => {
            let mut s = weight_sampler(seed);
            let (a, g) = (s.complex(), s.complex());
            if suite == Suite::Jacobi {
                Phi2Params::new(a, -a, c(0.0), c(0.0))
            } else {
                Phi2Params::antisymmetric(a, g)
            }
        }
    }
}

fn ternary_weights(cfg: &RunConfig, seed: u64) -> TernaryWeights {
    let base = TernaryWeights::canonical();
    match cfg.weights {
        WeightChoice::Canonical => base,
        WeightChoice::Explicit => {
            let [a, b, g, _] = cfg.explicit.over([base.alpha, base.beta, base.gamma, c(0.0)]);
            TernaryWeights::new(a, b, g)
        }
        WeightChoice::RandomConstrained => {
            let mut s = weight_sampler(seed);
            let (a, b) = (s.complex(), s.complex());
            TernaryWeights::new(a, b, -a - b)
        }
    }
}

fn weight_family(suite: Suite, cfg: &RunConfig) -> Value {
    let rule = match (suite, cfg.weights) {
        (Suite::Appendix1, _) => "fixed (1, -1, 1, -1)",
        (_, WeightChoice::Canonical) => "canonical",
        (_, WeightChoice::Explicit) => "explicit",
        (Suite::Jacobi, WeightChoice::RandomConstrained) => "random per seed, beta = -alpha, gamma = delta = 0",
        (Suite::Cyclic16 | Suite::Identity18, WeightChoice::RandomConstrained) => {
            "random per seed, alpha + beta + gamma = 0"
        }
        (_, WeightChoice::RandomConstrained) => "random per seed, beta = -alpha, delta = -gamma",
    };
    json!(rule)
}

struct Worst {
    residual: f64,
    seed: u64,
    weights: Vec<Complex64>,
}

impl Worst {
    fn new() -> Self {
        Worst {
            residual: 0.0,
            seed: 0,
            weights: Vec::new(),
        }
    }

    /// A NaN residual sticks, so the check fails.
    fn update(&mut self, r: f64, seed: u64, w: Vec<Complex64>) {
        if self.residual.is_nan() {
            return;
        }
        if self.weights.is_empty() || r.is_nan() || r > self.residual {
            *self = Worst {
                residual: r,
                seed,
                weights: w,
            };
        }
    }
}

fn matrices(seed: u64, dim: usize, k: usize) -> Vec<DenseTensor> {
    let mut s = TensorSampler::new(seed);
    (0..k).map(|_| s.tensor(TensorShape::MATRIX, dim).expect("dim >= 1")).collect()
}

fn pairs(seed: u64, dim: usize, k: usize) -> Vec<GradedPair> {
    let mut s = TensorSampler::new(seed);
    (0..k).map(|_| GradedPair::random(&mut s, dim).expect("dim >= 1")).collect()
}

fn numeric_check(suite: Suite, cfg: &RunConfig, conv: Option<&ChainConvention>) -> CheckReport {
    let mut worst = Worst::new();
    let dim = cfg.dim;
    for &seed in &cfg.seeds {
        match suite {
            Suite::Jacobi | Suite::Phi4 | Suite::Identity6 | Suite::Appendix1 => {
                let p = phi2_params(suite, cfg, seed);
                let m = matrices(seed, dim, 4);
                let (r, ops): (DenseTensor, Vec<&DenseTensor>) = match suite {
                    Suite::Jacobi => (jacobi_cyclic_residual(&m[0], &m[1], &m[2], &p).unwrap(), vec![&m[0], &m[1], &m[2]]),
                    Suite::Appendix1 => {
                        let p = Phi2Params::trace_deformed();
                        let lhs = jacobi_cyclic_residual(&m[0], &m[1], &m[2], &p).unwrap();
                        let rhs = trace_commutator_remainder(&m[0], &m[1], &m[2]).unwrap();
                        (lhs.sub(&rhs).unwrap(), vec![&m[0], &m[1], &m[2]])
                    }
                    Suite::Phi4 => (phi4([&m[0], &m[1], &m[2], &m[3]], &p).unwrap(), m.iter().collect()),
                    _ => (identity6_residual([&m[0], &m[1], &m[2], &m[3]], &p).unwrap(), m.iter().collect()),
                };
                let w = if suite == Suite::Appendix1 { Phi2Params::trace_deformed() } else { p };
                worst.update(relative_residual(&r, &ops), seed, w.as_array().to_vec());
            }
            Suite::Cyclic16 | Suite::Identity18 => {
                let conv = conv.expect("graded suites load a convention");
                let w = ternary_weights(cfg, seed);
                let a = pairs(seed, dim, 5);
                let r = if suite == Suite::Cyclic16 {
                    let r = cyclic_residual(&a[0], &a[1], &a[2], &w, conv).unwrap();
                    graded_relative(&r, &[&a[0], &a[1], &a[2]])
                } else {
                    let args = [&a[0], &a[1], &a[2], &a[3], &a[4]];
                    graded_relative(&identity18_residual(args, &w, conv).unwrap(), &args)
                };
                worst.update(r, seed, vec![w.alpha, w.beta, w.gamma]);
            }
            Suite::Appendix2 | Suite::All => unreachable!("not a numeric check"),
        }
    }
    let summary = format!(
        "max relative residual {:.3e} (tol {:.0e}, dim {}, {} seeds)",
        worst.residual,
        cfg.tolerance_rel,
        dim,
        cfg.seeds.len()
    );
    CheckReport::numeric(
        suite.name(),
        json!({ "dim": dim, "seeds": cfg.seeds.len(), "weights": weight_family(suite, cfg) }),
        worst.residual,
        cfg.tolerance_rel,
        summary,
        json!({ "worst_seed": worst.seed, "worst_weights": weights_json(&worst.weights) }),
    )
}

fn trace_table(s: &TraceSum) -> Vec<(String, String)> {
    s.iter().map(|(w, c)| (w.to_string(), c.to_string())).collect()
}

fn graded_table(s: &GradedSum) -> Vec<(String, String)> {
    s.iter().map(|(w, c)| (w.to_string(), c.to_string())).collect()
}

fn table_json(t: &[(String, String)]) -> Value {
    json!(t.iter().map(|(w, c)| json!({ "word": w, "coefficient": c })).collect::<Vec<_>>())
}

fn symbolic_check(suite: Suite) -> CheckReport {
    let name = suite.name();
    match suite {
        Suite::Jacobi => {
            let a = WeightPoly::var(Var::Alpha);
            let p = SymbolicPhi2 {
                beta: -&a,
                alpha: a,
                gamma: WeightPoly::zero(),
                delta: WeightPoly::zero(),
            };
            let r = jacobi_cyclic_symbolic(&sym('A'), &sym('B'), &sym('C'), &p);
            let t = trace_table(&r);
            CheckReport::symbolic(
                name,
                json!({ "weights": "alpha*(AB - BA)" }),
                &t,
                r.is_zero(),
                format!("cyclic sum expands to {} nonzero words", r.len()),
                json!({ "residual_words": table_json(&t) }),
            )
        }
        Suite::Identity6 | Suite::Phi4 => {
            let rep = verify_identity6_symbolic();
            let t: Vec<(String, String)> = rep.offending.iter().map(|w| (w.word.clone(), w.coefficient.clone())).collect();
            let passed = if suite == Suite::Phi4 { rep.phi4_zero } else { rep.zero };
            let summary = if suite == Suite::Phi4 {
                format!("alternating sum is {} under beta = -alpha, delta = -gamma", if rep.phi4_zero { "zero" } else { "nonzero" })
            } else {
                format!(
                    "{} expanded words cancel to {} terms; groups cancel pairwise: {}; relation to phi4 with free weights: {}",
                    rep.expanded_words,
                    rep.offending.len(),
                    rep.groups_cancel_pairwise,
                    rep.relation_to_phi4
                )
            };
            CheckReport::symbolic(
                name,
                json!({ "weights": "beta = -alpha, delta = -gamma" }),
                &t,
                passed,
                summary,
                serde_json::to_value(&rep).expect("serializable"),
            )
        }
        Suite::Appendix1 => {
            let (a, b, cc) = (sym('A'), sym('B'), sym('C'));
            let lhs = jacobi_cyclic_symbolic(&a, &b, &cc, &SymbolicPhi2::trace_deformed());
            let rhs = trace_commutator_remainder_symbolic(&a, &b, &cc);
            let rep = verify_identity6_symbolic();
            let structure = rep.groups.iter().all(|g| g.inner_is_remainder && g.composed_form_holds);
            let nested: Vec<(String, String)> = phi2_nested_table().into_iter().map(|w| (w.word, w.coefficient)).collect();
            let t = trace_table(&lhs);
            CheckReport::symbolic(
                name,
                json!({ "weights": [1, -1, 1, -1] }),
                &t,
                lhs == rhs && structure,
                format!(
                    "cyclic sum equals the trace remainder: {}; outer compositions match G*D - D*G + TrD*G: {structure}",
                    lhs == rhs
                ),
                json!({ "cyclic_sum": table_json(&t), "nested_product": table_json(&nested), "groups": rep.groups }),
            )
        }
        Suite::Cyclic16 => {
            let e1 = &(&WeightPoly::var(Var::Alpha) + &WeightPoly::var(Var::Beta)) + &WeightPoly::var(Var::Gamma);
            let r = cyclic16_symbolic(&SymbolicTernary::generic());
            let uniform = !r.is_empty() && r.iter().all(|(_, c)| *c == e1);
            let at_roots = cyclic16_symbolic(&SymbolicTernary::canonical()).is_zero();
            let t = graded_table(&r);
            CheckReport::symbolic(
                name,
                json!({ "weights": "symbolic, then (1, w, w^2)" }),
                &t,
                uniform && at_roots,
                format!("{} words, each with coefficient {e1}: {uniform}; zero at (1, w, w^2): {at_roots}", r.len()),
                json!({ "words": table_json(&t) }),
            )
        }
        Suite::Identity18 => {
            let rep = verify_identity18_symbolic(WeightSpec::CubeRoots);
            let ideal = verify_identity18_symbolic(WeightSpec::Symbolic);
            let forms: Vec<String> = rep
                .forms
                .iter()
                .map(|f| format!("{}={}", f.label, if f.zero_at_cube_roots { "0" } else { "nonzero" }))
                .collect();
            let t: Vec<(String, String)> = rep.forms.iter().map(|f| (f.label.clone(), f.polynomial.clone())).collect();
            CheckReport::symbolic(
                name,
                json!({ "weights": "(1, w, w^2)" }),
                &t,
                rep.passed && ideal.passed,
                format!(
                    "{} instances, {} + {} distinct words, each {} times, {} classes; {}",
                    rep.instances,
                    rep.distinct_high,
                    rep.distinct_low,
                    rep.occurrences_per_word.map_or("unevenly".to_string(), |k| k.to_string()),
                    rep.classes.len(),
                    forms.join(" ")
                ),
                json!({ "cube_roots": rep, "symbolic": ideal }),
            )
        }
        Suite::Appendix2 => {
            let table = appendix2_table('A', 'E', WordType::High).expect("valid class");
            let rep = verify_identity18_symbolic(WeightSpec::CubeRoots);
            let t: Vec<(String, String)> = table
                .rows
                .iter()
                .map(|r| (r.word.clone(), r.form.clone().unwrap_or_else(|| r.total.clone())))
                .collect();
            let labelled = table.rows.len() == 12 && table.rows.iter().all(|r| r.form.is_some());
            CheckReport::symbolic(
                name,
                json!({ "class": table.class, "word_type": table.word_type }),
                &t,
                labelled && rep.passed,
                format!(
                    "class {{A,E}}: {} rows, {} columns ({} empty), all rows Eq1..Eq4: {labelled}; word counts and cube-root zeros: {}",
                    table.rows.len(),
                    table.columns.len(),
                    table.empty_columns.len(),
                    rep.passed
                ),
                json!({ "table": table, "forms": rep.forms, "classes": rep.classes }),
            )
        }
        Suite::All => unreachable!("expanded by run_verify"),
    }
}
