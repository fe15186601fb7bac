//! Sparse multivariate polynomials over the rationals.
//!
//! Terms are kept sorted in descending graded-lexicographic order with no zero
//! coefficients, so two polynomials are equal exactly when their term lists
//! are equal. The gcd is computed recursively: a polynomial in `x_1..x_v` is
//! viewed as univariate in its highest variable `x_v` with coefficients in
//! `Q[x_1..x_{v-1}]`, and a primitive pseudo-remainder sequence is run there.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

/// Exact rational coefficient.
pub type Rational = BigRational;

type Exps = SmallVec<[u32; 4]>;

/// Exponent vector of a monomial in a fixed number of variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Exps);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn from_exps(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller guarantees divisibility.
    fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    /// Componentwise minimum of exponents (greatest common divisor).
    fn gcd_with(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }
}

impl Ord for Monomial {
    /// Graded lexicographic order with `x_1 > x_2 > ... > x_n`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `nvars` variables with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: Vec<(Monomial, Rational)>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Poly {
            nvars,
            terms: vec![(Monomial::one(nvars), c)],
        }
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, Rational::from_integer(BigInt::from(c)))
    }

    /// The variable `x_{i+1}` (zero-based index `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        Poly {
            nvars,
            terms: vec![(Monomial::var(nvars, i), Rational::one())],
        }
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let nvars = m.nvars();
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Poly {
            nvars,
            terms: vec![(m, c)],
        }
    }

    /// Builds a polynomial from arbitrary (unsorted, possibly repeated) terms.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut v: Vec<(Monomial, Rational)> = terms.into_iter().collect();
        for (m, _) in &v {
            assert_eq!(m.nvars(), nvars, "monomial arity mismatch");
        }
        v.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly {
            nvars,
            terms: combine_sorted(v),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map_or(0, |(m, _)| m.degree())
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    fn mul_term(&self, m: &Monomial, c: &Rational) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (t.mul(m), a * c))
                .collect(),
        }
    }

    pub fn neg(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.merge(other, true)
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        assert_eq!(self.nvars, other.nvars, "polynomial arity mismatch");
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for (m, c) in &b[j..] {
            out.push((m.clone(), if negate { -c } else { c.clone() }));
        }
        Poly {
            nvars: self.nvars,
            terms: out,
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars, "polynomial arity mismatch");
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.nvars);
        }
        if let Some(c) = other.constant_value() {
            return self.scale(&c);
        }
        if let Some(c) = self.constant_value() {
            return other.scale(&c);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        let mut v = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                v.push((ma.mul(mb), ca * cb));
            }
        }
        v.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly {
            nvars: self.nvars,
            terms: combine_sorted(v),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Partial derivative with respect to the zero-based variable `i`.
    pub fn derive(&self, i: usize) -> Poly {
        assert!(i < self.nvars);
        let mut v = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] = e - 1;
            v.push((m2, c * Rational::from_integer(BigInt::from(e))));
        }
        // Differentiation can reorder terms under grlex.
        v.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly {
            nvars: self.nvars,
            terms: combine_sorted(v),
        }
    }

    /// Exact division. Returns `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if let Some(c) = divisor.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let (lm, lc) = &divisor.terms[0];
        let lc_inv = lc.recip();
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.terms.first() {
            if !lm.divides(m) {
                return None;
            }
            let qm = lm.quotient_of(m);
            let qc = c * &lc_inv;
            rem = rem.sub(&divisor.mul_term(&qm, &qc));
            quot.push((qm, qc));
        }
        // Quotient terms come out in strictly descending order.
        Some(Poly {
            nvars: self.nvars,
            terms: quot,
        })
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scale(&c.recip()),
        }
    }

    /// `gcd(numerators) / lcm(denominators)`, signed like the leading coefficient.
    pub fn rational_content(&self) -> Rational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return Rational::one();
        }
        let r = Rational::new(num, den);
        match self.leading_coeff() {
            Some(c) if c.is_negative() => -r,
            _ => r,
        }
    }

    fn primitive_rational(&self) -> Poly {
        let c = self.rational_content();
        if c.is_one() {
            self.clone()
        } else {
            self.scale(&c.recip())
        }
    }

    /// Largest zero-based variable index that occurs with positive exponent.
    pub fn max_var(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (m, _) in &self.terms {
            if let Some(i) = m.0.iter().rposition(|&e| e > 0) {
                best = Some(best.map_or(i, |b| b.max(i)));
            }
        }
        best
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.0[v]).max().unwrap_or(0)
    }

    /// Coefficients of `self` as a polynomial in `x_v`, lowest power first.
    fn to_univariate(&self, v: usize) -> Vec<Poly> {
        let deg = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.0[v] as usize;
            let mut m2 = m.clone();
            m2.0[v] = 0;
            buckets[e].push((m2, c.clone()));
        }
        buckets
            .into_iter()
            .map(|t| Poly::from_terms(self.nvars, t))
            .collect()
    }

    fn from_univariate(nvars: usize, v: usize, coeffs: &[Poly]) -> Poly {
        let mut terms = Vec::new();
        for (e, p) in coeffs.iter().enumerate() {
            for (m, c) in &p.terms {
                let mut m2 = m.clone();
                m2.0[v] += e as u32;
                terms.push((m2, c.clone()));
            }
        }
        Poly::from_terms(nvars, terms)
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars, "polynomial arity mismatch");
        gcd_rec(self, other).monic()
    }

    /// Substitutes the rational value `value` for the variable `v`.
    pub fn eval_var(&self, v: usize, value: &Rational) -> Poly {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut m2 = m.clone();
            let e = m2.0[v];
            m2.0[v] = 0;
            (m2, c * num_traits::pow(value.clone(), e as usize))
        });
        Poly::from_terms(self.nvars, terms)
    }

    pub(crate) fn fmt_with(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mono = format_monomial(m);
            match (abs.is_one(), mono.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{mono}")?,
                (false, true) => write!(f, "{abs}")?,
                (false, false) => write!(f, "{abs}*{mono}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f)
    }
}

/// Variable name used in printed output: `x` in one variable, `x1..xn` otherwise.
pub fn var_name(nvars: usize, i: usize) -> String {
    if nvars == 1 {
        "x".to_string()
    } else {
        format!("x{}", i + 1)
    }
}

fn format_monomial(m: &Monomial) -> String {
    let n = m.nvars();
    let parts: Vec<String> = m
        .0
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                var_name(n, i)
            } else {
                format!("{}^{}", var_name(n, i), e)
            }
        })
        .collect();
    parts.join("*")
}

fn combine_sorted(v: Vec<(Monomial, Rational)>) -> Vec<(Monomial, Rational)> {
    let mut out: Vec<(Monomial, Rational)> = Vec::with_capacity(v.len());
    for (m, c) in v {
        match out.last_mut() {
            Some((lm, lc)) if *lm == m => *lc += c,
            _ => {
                if let Some((_, lc)) = out.last() {
                    if lc.is_zero() {
                        out.pop();
                    }
                }
                out.push((m, c));
            }
        }
    }
    if let Some((_, lc)) = out.last() {
        if lc.is_zero() {
            out.pop();
        }
    }
    out
}

/// gcd up to a unit; the result is primitive over the integers.
fn gcd_rec(a: &Poly, b: &Poly) -> Poly {
    let n = a.nvars;
    if a.is_zero() {
        return b.primitive_rational();
    }
    if b.is_zero() {
        return a.primitive_rational();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(n);
    }
    if a.terms.len() == 1 || b.terms.len() == 1 {
        return monomial_gcd(a, b);
    }
    if a == b {
        return a.primitive_rational();
    }
    // A variable missing from one side cannot divide the gcd, so the other
    // side can be replaced by its content in that variable. Otherwise run the
    // PRS in the variable of least degree.
    let mut best: Option<(u32, usize)> = None;
    for v in 0..n {
        let (da, db) = (a.degree_in(v), b.degree_in(v));
        match (da, db) {
            (0, 0) => {}
            (0, _) => return gcd_rec(a, &content_in(b, v)),
            (_, 0) => return gcd_rec(&content_in(a, v), b),
            _ => {
                let d = da.max(db);
                if best.is_none_or(|(bd, _)| d < bd) {
                    best = Some((d, v));
                }
            }
        }
    }
    let Some((_, v)) = best else {
        return Poly::one(n);
    };
    if coprime_by_evaluation(a, b) {
        return Poly::one(n);
    }
    if let Some(g) = heuristic_gcd(&a.primitive_rational(), &b.primitive_rational()) {
        return g;
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let g = gcd_rec(&ca, &cb);
    let mut pa = a.div_exact(&ca).expect("content divides").primitive_rational();
    let mut pb = b.div_exact(&cb).expect("content divides").primitive_rational();
    if pa.degree_in(v) < pb.degree_in(v) {
        std::mem::swap(&mut pa, &mut pb);
    }
    loop {
        let r = pseudo_remainder(&pa, &pb, v);
        if r.is_zero() {
            break;
        }
        if r.degree_in(v) == 0 {
            return g;
        }
        pa = pb;
        pb = primitive_in(&r, v);
    }
    g.mul(&primitive_in(&pb, v)).primitive_rational()
}

/// Largest absolute value of a coefficient.
fn max_norm(p: &Poly) -> BigInt {
    p.terms.iter().map(|(_, c)| c.numer().abs()).max().unwrap_or_default()
}

/// gcd of the integer coefficients; `a` and `b` have integer coefficients.
fn integer_content(p: &Poly) -> BigInt {
    p.terms.iter().fold(BigInt::zero(), |g, (_, c)| g.gcd(c.numer()))
}

/// Heuristic gcd for polynomials with integer coefficients: evaluate one
/// variable at a large integer `ξ`, recurse, and read the candidate back from
/// its balanced `ξ`-adic digits. A candidate is accepted only if it divides
/// both inputs, so a `Some` result is always exact; `None` means the
/// heuristic gave up.
fn heuristic_gcd(a: &Poly, b: &Poly) -> Option<Poly> {
    let n = a.nvars;
    let cont = integer_content(a).gcd(&integer_content(b));
    let Some(v) = (0..n).rev().find(|&v| a.degree_in(v) > 0 || b.degree_in(v) > 0) else {
        return Some(Poly::constant(n, Rational::from_integer(cont)));
    };
    let mut xi = BigInt::from(2) * max_norm(a).min(max_norm(b)) + BigInt::from(29);
    for _ in 0..6 {
        if xi.bits() > 4000 {
            return None;
        }
        let at = Rational::from_integer(xi.clone());
        let (ea, eb) = (a.eval_var(v, &at), b.eval_var(v, &at));
        if ea.is_zero() || eb.is_zero() {
            xi = &xi * BigInt::from(73794) / BigInt::from(27011);
            continue;
        }
        if let Some(gamma) = heuristic_gcd(&ea, &eb) {
            let g = from_adic_digits(&gamma, &xi, v);
            if !g.is_zero() {
                let g = g.scale(&Rational::from_integer(integer_content(&g)).recip());
                if a.div_exact(&g).is_some() && b.div_exact(&g).is_some() {
                    return Some(g.scale(&Rational::from_integer(cont)));
                }
            }
        }
        xi = &xi * BigInt::from(73794) / BigInt::from(27011);
    }
    None
}

/// `Σ_i g_i x_v^i` where the `g_i` are the balanced base-`ξ` digits of the
/// coefficients of `gamma`.
fn from_adic_digits(gamma: &Poly, xi: &BigInt, v: usize) -> Poly {
    let n = gamma.nvars;
    let half = xi / BigInt::from(2);
    let mut rest = gamma.clone();
    let mut terms = Vec::new();
    let mut i = 0u32;
    while !rest.is_zero() {
        let mut digit = Vec::new();
        for (m, c) in &rest.terms {
            let mut r = c.numer().mod_floor(xi);
            if r > half {
                r -= xi;
            }
            if !r.is_zero() {
                digit.push((m.clone(), Rational::from_integer(r)));
            }
        }
        let digit = Poly::from_terms(n, digit);
        for (m, c) in &digit.terms {
            let mut m2 = m.clone();
            m2.0[v] += i;
            terms.push((m2, c.clone()));
        }
        rest = rest.sub(&digit).scale(&Rational::from_integer(xi.clone()).recip());
        i += 1;
        if i > 10_000 {
            return Poly::zero(n);
        }
    }
    Poly::from_terms(n, terms)
}

/// Sufficient test for `gcd(a, b) = 1`. For each variable `v` shared by both,
/// the other variables are fixed at integer points where the leading
/// coefficients in `v` survive; the degree in `v` of the univariate gcd then
/// bounds the degree in `v` of the true gcd from above.
fn coprime_by_evaluation(a: &Poly, b: &Poly) -> bool {
    const POINTS: [[i64; 3]; 3] = [[2, -3, 5], [7, 4, -2], [-5, 11, 3]];
    (0..a.nvars).all(|v| {
        if a.degree_in(v) == 0 || b.degree_in(v) == 0 {
            return true;
        }
        POINTS.iter().any(|pt| {
            let at = |p: &Poly| {
                (0..p.nvars).filter(|&w| w != v).fold(p.clone(), |q, w| {
                    q.eval_var(w, &Rational::from_integer(pt[(w + v) % 3].into()))
                })
            };
            let (ua, ub) = (at(a), at(b));
            ua.degree_in(v) == a.degree_in(v)
                && ub.degree_in(v) == b.degree_in(v)
                && univariate_gcd_degree(&ua.to_univariate(v), &ub.to_univariate(v)) == 0
        })
    })
}

/// Degree of the gcd of two univariate polynomials with constant
/// coefficients, given lowest degree first.
fn univariate_gcd_degree(a: &[Poly], b: &[Poly]) -> usize {
    let coeffs = |p: &[Poly]| -> Vec<Rational> {
        p.iter().map(|c| c.constant_value().unwrap_or_else(Rational::zero)).collect()
    };
    let trim = |mut p: Vec<Rational>| {
        while matches!(p.last(), Some(c) if c.is_zero()) {
            p.pop();
        }
        p
    };
    let (mut x, mut y) = (trim(coeffs(a)), trim(coeffs(b)));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let lead = y.last().expect("nonempty").clone();
        while x.len() >= y.len() {
            let q = x.last().expect("nonempty") / &lead;
            let shift = x.len() - y.len();
            for (k, c) in y.iter().enumerate() {
                x[k + shift] -= &q * c;
            }
            x.pop();
            x = trim(x);
        }
        std::mem::swap(&mut x, &mut y);
    }
    x.len().saturating_sub(1)
}

fn monomial_gcd(a: &Poly, b: &Poly) -> Poly {
    let mut m = a.terms[0].0.clone();
    for (t, _) in a.terms.iter().chain(&b.terms) {
        m = m.gcd_with(t);
    }
    Poly::monomial(m, Rational::one())
}

/// gcd of the coefficients of `p` viewed as a polynomial in `x_v`.
fn content_in(p: &Poly, v: usize) -> Poly {
    let coeffs = p.to_univariate(v);
    let mut g = Poly::zero(p.nvars);
    for c in coeffs.iter().rev() {
        if c.is_zero() {
            continue;
        }
        g = gcd_rec(&g, c);
        if g.is_constant() {
            return Poly::one(p.nvars);
        }
    }
    g
}

fn primitive_in(p: &Poly, v: usize) -> Poly {
    let c = content_in(p, v);
    p.div_exact(&c)
        .expect("content divides")
        .primitive_rational()
}

/// Pseudo-remainder of `a` by `b` as polynomials in `x_v`.
fn pseudo_remainder(a: &Poly, b: &Poly, v: usize) -> Poly {
    let n = a.nvars;
    let bc = b.to_univariate(v);
    let db = bc.len() - 1;
    let lb = bc[db].clone();
    let mut r = a.to_univariate(v);
    let mut e = r.len() as i64 - db as i64 + 1;
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = c.mul(&lb);
        }
        for (k, bk) in bc.iter().enumerate() {
            let t = bk.mul(&lr);
            r[k + shift] = r[k + shift].sub(&t);
        }
        while matches!(r.last(), Some(c) if c.is_zero()) {
            r.pop();
        }
        e -= 1;
    }
    let mut out = Poly::from_univariate(n, v, &r);
    if e > 0 && !out.is_zero() {
        out = out.mul(&lb.pow(e as u32));
    }
    out
}
