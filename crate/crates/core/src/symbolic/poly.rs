//! Polynomials in the commuting weights α, β, γ, δ with coefficients in `Q(ω)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::cyclo::CycloScalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Alpha,
    Beta,
    Gamma,
    Delta,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::Alpha, Var::Beta, Var::Gamma, Var::Delta];

    fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::Alpha => "alpha",
            Var::Beta => "beta",
            Var::Gamma => "gamma",
            Var::Delta => "delta",
        }
    }
}

/// Exponents of (α, β, γ, δ).
pub type Monomial = [u16; 4];

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct WeightPoly {
    terms: BTreeMap<Monomial, CycloScalar>,
}

impl WeightPoly {
    pub fn zero() -> Self {
        WeightPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(CycloScalar::one())
    }

    pub fn constant(c: CycloScalar) -> Self {
        let mut p = WeightPoly::zero();
        p.add_term([0; 4], c);
        p
    }

    pub fn int(v: i64) -> Self {
        Self::constant(CycloScalar::from_i64(v))
    }

    pub fn var(v: Var) -> Self {
        let mut m = [0; 4];
        m[v.index()] = 1;
        let mut p = WeightPoly::zero();
        p.add_term(m, CycloScalar::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &CycloScalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: CycloScalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(CycloScalar::zero);
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, c: &CycloScalar) -> Self {
        let mut out = WeightPoly::zero();
        for (m, k) in &self.terms {
            out.add_term(*m, k * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(WeightPoly::one(), |acc, _| &acc * self)
    }

    pub fn degree_in(&self, v: Var) -> u16 {
        self.terms.keys().map(|m| m[v.index()]).max().unwrap_or(0)
    }

    /// Replaces every occurrence of `v` with `value`.
    pub fn substitute(&self, v: Var, value: &WeightPoly) -> Self {
        let mut out = WeightPoly::zero();
        for (m, c) in &self.terms {
            let mut rest = *m;
            let e = rest[v.index()];
            rest[v.index()] = 0;
            let mut base = WeightPoly::zero();
            base.add_term(rest, c.clone());
            out = &out + &(&base * &value.pow(e as u32));
        }
        out
    }

    /// Exact value at a point of `Q(ω)⁴` (order α, β, γ, δ).
    pub fn eval(&self, point: &[CycloScalar; 4]) -> CycloScalar {
        let mut acc = CycloScalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.iter().enumerate() {
                if e > 0 {
                    t = &t * &point[v].pow(e as u32);
                }
            }
            acc += &t;
        }
        acc
    }

    pub fn eval_complex(&self, point: &[Complex64; 4]) -> Complex64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.iter()
                    .zip(point)
                    .fold(c.to_complex(), |acc, (&e, x)| acc * x.powu(e as u32))
            })
            .sum()
    }

    /// The constant, when the polynomial has no variables.
    pub fn as_constant(&self) -> Option<CycloScalar> {
        match self.terms.len() {
            0 => Some(CycloScalar::zero()),
            1 => self.terms.get(&[0; 4]).cloned(),
            _ => None,
        }
    }
}

impl Add for &WeightPoly {
    type Output = WeightPoly;
    fn add(self, o: &WeightPoly) -> WeightPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Add for WeightPoly {
    type Output = WeightPoly;
    fn add(self, o: WeightPoly) -> WeightPoly {
        &self + &o
    }
}

impl Sub for &WeightPoly {
    type Output = WeightPoly;
    fn sub(self, o: &WeightPoly) -> WeightPoly {
        self + &(-o)
    }
}

impl Sub for WeightPoly {
    type Output = WeightPoly;
    fn sub(self, o: WeightPoly) -> WeightPoly {
        &self - &o
    }
}

impl Neg for &WeightPoly {
    type Output = WeightPoly;
    fn neg(self) -> WeightPoly {
        WeightPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for WeightPoly {
    type Output = WeightPoly;
    fn neg(self) -> WeightPoly {
        -&self
    }
}

impl Mul for &WeightPoly {
    type Output = WeightPoly;
    fn mul(self, o: &WeightPoly) -> WeightPoly {
        let mut out = WeightPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m = [m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2], m1[3] + m2[3]];
                out.add_term(m, c1 * c2);
            }
        }
        out
    }
}

impl Mul for WeightPoly {
    type Output = WeightPoly;
    fn mul(self, o: WeightPoly) -> WeightPoly {
        &self * &o
    }
}

impl fmt::Display for WeightPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest monomials first
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let vars: Vec<String> = Var::ALL
                .iter()
                .zip(m)
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| {
                    if e == 1 {
                        v.name().to_string()
                    } else {
                        format!("{}^{}", v.name(), e)
                    }
                })
                .collect();
            let coeff = c.to_string();
            let (neg, mag) = match (c.as_integer(), coeff.strip_prefix('-')) {
                (Some(_), Some(rest)) => (true, rest.to_string()),
                _ => (false, coeff.clone()),
            };
            let compound = c.as_integer().is_none();
            if i > 0 {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            let body = match (vars.is_empty(), mag.as_str()) {
                (true, _) => mag.clone(),
                (false, "1") => vars.join("*"),
                (false, _) if compound => format!("({})*{}", mag, vars.join("*")),
                (false, _) => format!("{}*{}", mag, vars.join("*")),
            };
            write!(f, "{body}")?;
        }
        Ok(())
    }
}
