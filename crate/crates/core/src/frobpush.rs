//! Chern characters of Frobenius pushforwards and the Euler characteristic of
//! their endomorphism bundles.
//!
//! For a line bundle `L` on a smooth `n`-dimensional `X`,
//!
//! ```text
//! ch(F^e_* L) = q^n · ψ_q^{-1}(td(X) · ch(L)) / td(X),    q = p^e,
//! ```
//!
//! and `χ(End F^e_* O_X) = ∫ ch(F^e_* O) · ch(F^e_* O)^* · td(X)`. Every
//! quantity is a polynomial in `q`, so the functions here accept any nonzero
//! rational `q`; [`FrobParams`] is the geometric entry point with `p` prime.

use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::catalog::VarietySpec;
use crate::chow::integrate;
use crate::classes::{adams_inverse, ChernCharacter, ToddClass};
use crate::error::{Error, Result};
use crate::rational::{from_wire, pow, pretty, rat, to_wire};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Characteristic `p` and Frobenius iterate `e`, with `q = p^e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FrobParams {
    p: u64,
    e: u32,
    q: u64,
}

impl FrobParams {
    pub fn new(p: u64, e: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidParameter(format!("p = {p} is not prime")));
        }
        if e == 0 {
            return Err(Error::InvalidParameter("e must be at least 1".into()));
        }
        let q = p
            .checked_pow(e)
            .ok_or_else(|| Error::InvalidParameter(format!("{p}^{e} overflows")))?;
        Ok(FrobParams { p, e, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn q_rational(&self) -> BigRational {
        rat(self.q as i64)
    }
}

/// `q^n · ψ_q^{-1}(td · ch_E) · td^{-1}`, with `n` the truncation bound.
///
/// Exact for line bundles; for other characters this is the additive
/// extension of the same operator.
pub fn pushforward_ch(ch: &ChernCharacter, td: &ToddClass, q: &BigRational) -> Result<ChernCharacter> {
    let n = td.element().bound();
    let twisted = td.element().mul(ch.element())?;
    let pulled = adams_inverse(q, &twisted)?;
    let out = pulled
        .mul(&td.element().invert()?)?
        .scale(&pow(q, n as i32));
    Ok(ChernCharacter::from_element(out))
}

/// `ch(End F^e_* O_X)` as a function of `q`.
pub fn frob_end_ch(td: &ToddClass, q: &BigRational) -> Result<ChernCharacter> {
    let el = td.element();
    let one = ChernCharacter::trivial(el.generators(), el.bound(), 1);
    Ok(pushforward_ch(&one, td, q)?.end_character())
}

/// The GRR integral `∫ ch(End F_* O) · td` at an arbitrary rational `q`.
pub fn chi_at(v: &VarietySpec, q: &BigRational) -> Result<BigRational> {
    let td = v.todd();
    let integrand = frob_end_ch(td, q)?.element().mul(td.element())?;
    integrate(&integrand, v.table())
}

/// `χ(End F^e_* O_X)`; a non-integral GRR value is an error.
pub fn chi_frob_end(v: &VarietySpec, fp: FrobParams) -> Result<BigInt> {
    let chi = chi_at(v, &fp.q_rational())?;
    if !chi.is_integer() {
        return Err(Error::NonIntegral(pretty(&chi)));
    }
    Ok(chi.to_integer())
}

/// Polynomial in `q` with rational coefficients, lowest power first.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QPolynomial {
    coeffs: Vec<BigRational>,
}

impl QPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    /// Powers of `q` carrying a nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, _)| k)
            .collect()
    }

    pub fn eval(&self, q: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * q + c)
    }

    /// Exact interpolation through `(x, y)` pairs with distinct `x`, via
    /// Newton divided differences.
    pub fn interpolate(points: &[(BigRational, BigRational)]) -> Result<Self> {
        let xs: Vec<_> = points.iter().map(|(x, _)| x.clone()).collect();
        for i in 0..xs.len() {
            for j in 0..i {
                if xs[i] == xs[j] {
                    return Err(Error::InvalidParameter("interpolation nodes must be distinct".into()));
                }
            }
        }
        let mut dd: Vec<BigRational> = points.iter().map(|(_, y)| y.clone()).collect();
        let m = dd.len();
        for level in 1..m {
            for i in (level..m).rev() {
                dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
            }
        }
        // Horner in the Newton basis: p = dd0 + (x-x0)(dd1 + (x-x1)(dd2 + ...)).
        let mut poly: Vec<BigRational> = Vec::new();
        for i in (0..m).rev() {
            let mut next = vec![BigRational::zero(); poly.len() + 1];
            for (k, c) in poly.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * &xs[i];
            }
            next[0] += &dd[i];
            poly = next;
        }
        Ok(QPolynomial::new(poly))
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({})", pretty(c))?,
                1 => write!(f, "({})q", pretty(c))?,
                _ => write!(f, "({})q^{k}", pretty(c))?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Serialize for QPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coeffs.iter().map(to_wire).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        let coeffs = v
            .iter()
            .map(|s| from_wire(s))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Ok(QPolynomial::new(coeffs))
    }
}

/// `χ(End F^e_* O_X)` as a polynomial in `q`, reconstructed from the values at
/// `q = 2..=2n+2` and checked at `q = 2n+3, 2n+4`.
pub fn chi_symbolic(v: &VarietySpec) -> Result<QPolynomial> {
    let n = v.dim() as i64;
    let points = (2..=2 * n + 2)
        .map(|q| Ok((rat(q), chi_at(v, &rat(q))?)))
        .collect::<Result<Vec<_>>>()?;
    let poly = QPolynomial::interpolate(&points)?;
    for q in [2 * n + 3, 2 * n + 4] {
        let q = rat(q);
        let direct = chi_at(v, &q)?;
        if poly.eval(&q) != direct {
            return Err(Error::Inconsistent(format!(
                "interpolated chi disagrees with direct evaluation at q = {}",
                pretty(&q)
            )));
        }
    }
    Ok(poly)
}

/// `q^n`, the expected rank of `F^e_* O_X`.
pub fn expected_rank(q: &BigRational, n: usize) -> BigRational {
    (0..n).fold(BigRational::one(), |acc, _| acc * q)
}
