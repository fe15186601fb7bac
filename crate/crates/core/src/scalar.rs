//! Exact rational functions in `x_1..x_n`.
//!
//! A [`Scalar`] plays both the role of a smooth function on the base and of a
//! section of the (trivialized) line bundle. It is always stored in canonical
//! form: numerator and denominator coprime, denominator monic under grlex.
//! Structural equality is therefore mathematical equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Scalar {
    pub fn zero(nvars: usize) -> Self {
        Scalar {
            num: Poly::zero(nvars),
            den: Poly::one(nvars),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Scalar::from_poly(Poly::one(nvars))
    }

    pub fn from_int(nvars: usize, k: i64) -> Self {
        Scalar::from_poly(Poly::from_int(nvars, k))
    }

    pub fn from_rational(nvars: usize, q: Rational) -> Self {
        Scalar::from_poly(Poly::constant(nvars, q))
    }

    /// `num / den` as a fraction of integers.
    pub fn ratio(nvars: usize, num: i64, den: i64) -> Self {
        Scalar::from_rational(nvars, Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The coordinate function `x_i` (one-based, as in the notation `x_1..x_n`).
    pub fn var(nvars: usize, i: usize) -> Result<Self> {
        if i == 0 || i > nvars {
            return Err(Error::IndexOutOfRange { index: i, nvars });
        }
        Ok(Scalar::from_poly(Poly::var(nvars, i - 1)))
    }

    pub fn from_poly(num: Poly) -> Self {
        let n = num.nvars();
        Scalar {
            num,
            den: Poly::one(n),
        }
    }

    /// Builds `num / den` and brings it to canonical form.
    pub fn from_fraction(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::normalize(num, den))
    }

    fn normalize(num: Poly, den: Poly) -> Self {
        let n = num.nvars();
        if num.is_zero() {
            return Scalar::zero(n);
        }
        if let Some(c) = den.constant_value() {
            return Scalar {
                num: if c.is_one() { num } else { num.scale(&c.recip()) },
                den: Poly::one(n),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading_coeff().expect("nonzero denominator").clone();
        if lc.is_one() {
            Scalar { num, den }
        } else {
            let inv = lc.recip();
            Scalar {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let num = self.num.add(&other.num);
            if self.den.is_one() {
                return Scalar::from_poly(num);
            }
            return Scalar::normalize(num, self.den.clone());
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Scalar::normalize(num, self.den.mul(&other.den))
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        if self.is_zero() || other.is_zero() {
            return Scalar::zero(self.nvars());
        }
        match (self.den.is_one(), other.den.is_one()) {
            (true, true) => Scalar::from_poly(self.num.mul(&other.num)),
            _ => {
                // Cross-cancel before multiplying to keep the gcd small.
                let g1 = self.num.gcd(&other.den);
                let g2 = other.num.gcd(&self.den);
                let a = self.num.div_exact(&g1).expect("gcd divides");
                let d = other.den.div_exact(&g1).expect("gcd divides");
                let c = other.num.div_exact(&g2).expect("gcd divides");
                let b = self.den.div_exact(&g2).expect("gcd divides");
                Scalar::normalize(a.mul(&c), b.mul(&d))
            }
        }
    }

    pub fn scale(&self, q: &Rational) -> Scalar {
        if q.is_zero() {
            return Scalar::zero(self.nvars());
        }
        Scalar {
            num: self.num.scale(q),
            den: self.den.clone(),
        }
    }

    pub fn scale_int(&self, k: i64) -> Scalar {
        self.scale(&Rational::from_integer(BigInt::from(k)))
    }

    pub fn half(&self) -> Scalar {
        self.scale(&Rational::new(BigInt::one(), BigInt::from(2)))
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self.mul(&other.inv()?))
    }

    /// Partial derivative `∂/∂x_i`, one-based index.
    pub fn derive(&self, i: usize) -> Result<Scalar> {
        let n = self.nvars();
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, nvars: n });
        }
        Ok(self.partial(i - 1))
    }

    /// Partial derivative with a zero-based index; panics when out of range.
    pub(crate) fn partial(&self, i: usize) -> Scalar {
        if self.num.is_zero() {
            return self.clone();
        }
        if self.den.is_one() {
            return Scalar::from_poly(self.num.derive(i));
        }
        let num = self
            .num
            .derive(i)
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derive(i)));
        Scalar::normalize(num, self.den.mul(&self.den))
    }

    /// Substitutes the constant `value` for `x_i` (one-based).
    pub fn eval_var(&self, i: usize, value: &Rational) -> Result<Scalar> {
        let n = self.nvars();
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, nvars: n });
        }
        Scalar::from_fraction(self.num.eval_var(i - 1, value), self.den.eval_var(i - 1, value))
    }

    /// A random polynomial of total degree at most `max_degree` with integer
    /// coefficients in `[-coeff_bound, coeff_bound]`. Each monomial is present
    /// with probability one half.
    pub fn random<R: Rng + ?Sized>(
        rng: &mut R,
        nvars: usize,
        max_degree: u32,
        coeff_bound: i64,
    ) -> Scalar {
        let mut terms = Vec::new();
        for exps in monomials_up_to(nvars, max_degree) {
            if !rng.random_bool(0.5) {
                continue;
            }
            let c = rng.random_range(-coeff_bound..=coeff_bound);
            if c != 0 {
                terms.push((
                    Monomial::from_exps(&exps),
                    Rational::from_integer(BigInt::from(c)),
                ));
            }
        }
        Scalar::from_poly(Poly::from_terms(nvars, terms))
    }
}

/// All exponent vectors in `nvars` variables with total degree `<= max_degree`,
/// in a fixed order.
pub fn monomials_up_to(nvars: usize, max_degree: u32) -> Vec<Vec<u32>> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    let mut cur = vec![0; nvars];
    rec(0, max_degree, &mut cur, &mut out);
    out
}

/// Deterministic random polynomial: same seed, same scalar.
pub fn random_scalar(seed: u64, nvars: usize, max_degree: u32, coeff_bound: i64) -> Scalar {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    Scalar::random(&mut rng, nvars, max_degree, coeff_bound)
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return self.num.fmt_with(f);
        }
        let wrap = |p: &Poly| {
            if p.terms().len() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar::$method(self, rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar::$method(&self, &rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar::$method(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(&self)
    }
}
