//! Exact arithmetic in `Q(ω)`, `ω² = -1 - ω`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `a + b·ω` with rational `a`, `b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycloScalar {
    a: BigRational,
    b: BigRational,
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl CycloScalar {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        CycloScalar { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        CycloScalar::new(int(a), int(b))
    }

    pub fn from_i64(v: i64) -> Self {
        Self::from_ints(v, 0)
    }

    pub fn omega() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn omega_squared() -> Self {
        Self::from_ints(-1, -1)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn omega_part(&self) -> &BigRational {
        &self.b
    }

    /// The integer value, when the element is a rational integer.
    pub fn as_integer(&self) -> Option<i64> {
        (self.b.is_zero() && self.a.is_integer()).then(|| self.a.to_integer().to_i64()).flatten()
    }

    /// Complex conjugate; conjugation swaps ω and ω² = -1 - ω.
    pub fn conj(&self) -> Self {
        CycloScalar::new(&self.a - &self.b, -self.b.clone())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = CycloScalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Embedding with ω = e^{2πi/3}.
    pub fn to_complex(&self) -> Complex64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        Complex64::new(a - 0.5 * b, b * 3f64.sqrt() / 2.0)
    }
}

impl Zero for CycloScalar {
    fn zero() -> Self {
        CycloScalar::new(BigRational::zero(), BigRational::zero())
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for CycloScalar {
    fn one() -> Self {
        Self::from_i64(1)
    }
}

impl Add for &CycloScalar {
    type Output = CycloScalar;
    fn add(self, o: &CycloScalar) -> CycloScalar {
        CycloScalar::new(&self.a + &o.a, &self.b + &o.b)
    }
}

impl Add for CycloScalar {
    type Output = CycloScalar;
    fn add(self, o: CycloScalar) -> CycloScalar {
        &self + &o
    }
}

impl AddAssign<&CycloScalar> for CycloScalar {
    fn add_assign(&mut self, o: &CycloScalar) {
        self.a += &o.a;
        self.b += &o.b;
    }
}

impl Sub for &CycloScalar {
    type Output = CycloScalar;
    fn sub(self, o: &CycloScalar) -> CycloScalar {
        CycloScalar::new(&self.a - &o.a, &self.b - &o.b)
    }
}

impl Sub for CycloScalar {
    type Output = CycloScalar;
    fn sub(self, o: CycloScalar) -> CycloScalar {
        &self - &o
    }
}

impl Neg for &CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        CycloScalar::new(-self.a.clone(), -self.b.clone())
    }
}

impl Neg for CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        -&self
    }
}

impl Mul for &CycloScalar {
    type Output = CycloScalar;
    // (a + bω)(c + dω) = ac + (ad + bc)ω + bdω² = (ac - bd) + (ad + bc - bd)ω
    fn mul(self, o: &CycloScalar) -> CycloScalar {
        let bd = &self.b * &o.b;
        CycloScalar::new(&self.a * &o.a - &bd, &self.a * &o.b + &self.b * &o.a - bd)
    }
}

impl Mul for CycloScalar {
    type Output = CycloScalar;
    fn mul(self, o: CycloScalar) -> CycloScalar {
        &self * &o
    }
}

impl fmt::Display for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) if self.b.is_one() => write!(f, "w"),
            (true, false) if (-self.b.clone()).is_one() => write!(f, "-w"),
            (true, false) => write!(f, "{}w", self.b),
            (false, false) => {
                let sign = if self.b.is_negative() { '-' } else { '+' };
                let mag = self.b.abs();
                if mag.is_one() {
                    write!(f, "{} {} w", self.a, sign)
                } else {
                    write!(f, "{} {} {}w", self.a, sign, mag)
                }
            }
        }
    }
}
