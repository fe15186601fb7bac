//! Derivations of the trivial line bundle: the gauge algebroid `DL`.
//!
//! A derivation `Δ = (X, f)` acts on sections by `Δ(s) = X(s) + f·s`. Since the
//! line bundle is trivialized, `Γ(DL)` is the free module with basis
//! `∂_1, …, ∂_n, 𝟙`; the basis element with index `n` (zero-based) is the unit
//! derivation `𝟙`.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Derivation {
    symbol: Vec<Scalar>,
    endo: Scalar,
}

impl Derivation {
    pub fn new(symbol: Vec<Scalar>, endo: Scalar) -> Result<Self> {
        if symbol.len() != endo.nvars() {
            return Err(Error::DimensionMismatch {
                left: symbol.len(),
                right: endo.nvars(),
            });
        }
        if let Some(bad) = symbol.iter().find(|c| c.nvars() != endo.nvars()) {
            return Err(Error::DimensionMismatch {
                left: bad.nvars(),
                right: endo.nvars(),
            });
        }
        Ok(Derivation { symbol, endo })
    }

    pub fn zero(nvars: usize) -> Self {
        Derivation {
            symbol: vec![Scalar::zero(nvars); nvars],
            endo: Scalar::zero(nvars),
        }
    }

    /// The unit derivation `𝟙`, acting as the identity on sections.
    pub fn unit(nvars: usize) -> Self {
        Derivation {
            symbol: vec![Scalar::zero(nvars); nvars],
            endo: Scalar::one(nvars),
        }
    }

    /// The coordinate derivation `∂_i` (one-based).
    pub fn partial(nvars: usize, i: usize) -> Result<Self> {
        if i == 0 || i > nvars {
            return Err(Error::IndexOutOfRange { index: i, nvars });
        }
        Ok(Derivation::basis(nvars, i - 1))
    }

    /// Basis element with zero-based index `k`: `∂_{k+1}` for `k < n`, `𝟙` for `k = n`.
    pub fn basis(nvars: usize, k: usize) -> Self {
        let mut d = Derivation::zero(nvars);
        d.set_component(k, Scalar::one(nvars));
        d
    }

    /// Builds a derivation from its `n + 1` components in the basis `∂_1..∂_n, 𝟙`.
    pub fn from_components(mut comps: Vec<Scalar>) -> Self {
        let endo = comps.pop().expect("at least the unit component");
        Derivation { symbol: comps, endo }
    }

    pub fn nvars(&self) -> usize {
        self.symbol.len()
    }

    pub fn symbol(&self) -> &[Scalar] {
        &self.symbol
    }

    pub fn endo(&self) -> &Scalar {
        &self.endo
    }

    /// Component along the zero-based basis index `k` (`k = n` is the unit).
    pub fn component(&self, k: usize) -> &Scalar {
        if k == self.symbol.len() {
            &self.endo
        } else {
            &self.symbol[k]
        }
    }

    pub fn components(&self) -> impl Iterator<Item = &Scalar> {
        self.symbol.iter().chain(std::iter::once(&self.endo))
    }

    fn set_component(&mut self, k: usize, value: Scalar) {
        if k == self.symbol.len() {
            self.endo = value;
        } else {
            self.symbol[k] = value;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components().all(Scalar::is_zero)
    }

    /// The symbol vector field applied to a function: `X(f) = Σ a_i ∂_i f`.
    pub fn symbol_apply(&self, f: &Scalar) -> Scalar {
        self.symbol
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .fold(Scalar::zero(self.nvars()), |acc, (i, a)| {
                acc.add(&a.mul(&f.partial(i)))
            })
    }

    /// The action on sections: `Δ(s) = X(s) + f·s`.
    pub fn apply(&self, s: &Scalar) -> Scalar {
        self.symbol_apply(s).add(&self.endo.mul(s))
    }

    /// The commutator `[Δ, ∇] = ([X, Y], X(g) − Y(f))`.
    pub fn commutator(&self, other: &Derivation) -> Derivation {
        let symbol = other
            .symbol
            .iter()
            .zip(&self.symbol)
            .map(|(b, a)| self.symbol_apply(b).sub(&other.symbol_apply(a)))
            .collect();
        let endo = self
            .symbol_apply(&other.endo)
            .sub(&other.symbol_apply(&self.endo));
        Derivation { symbol, endo }
    }

    pub fn add(&self, other: &Derivation) -> Derivation {
        self.zip_with(other, Scalar::add)
    }

    pub fn sub(&self, other: &Derivation) -> Derivation {
        self.zip_with(other, Scalar::sub)
    }

    pub fn neg(&self) -> Derivation {
        self.map(Scalar::neg)
    }

    /// Module multiplication by a function.
    pub fn scale(&self, f: &Scalar) -> Derivation {
        self.map(|c| c.mul(f))
    }

    fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Derivation {
        Derivation {
            symbol: self.symbol.iter().map(&f).collect(),
            endo: f(&self.endo),
        }
    }

    fn zip_with(&self, other: &Derivation, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Derivation {
        Derivation {
            symbol: self
                .symbol
                .iter()
                .zip(&other.symbol)
                .map(|(a, b)| f(a, b))
                .collect(),
            endo: f(&self.endo, &other.endo),
        }
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.nvars();
        let mut first = true;
        for (k, c) in self.components().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let name = if k == n {
                "𝟙".to_string()
            } else {
                format!("∂{}", k + 1)
            };
            if c.is_one() {
                write!(f, "{name}")?;
            } else {
                write!(f, "({c})·{name}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
