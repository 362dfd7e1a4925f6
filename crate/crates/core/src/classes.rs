//! Characteristic classes: Bernoulli numbers, the universal Todd polynomials,
//! Chern characters, duals, endomorphism characters and Adams operations.

use std::sync::Arc;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

use crate::chow::{GradedElement, Generators};
use crate::error::{Error, Result};
use crate::rational::{pow, rat};

/// Bernoulli numbers with `B_1 = -1/2`, from `Σ_{j=0}^{m} C(m+1, j) B_j = 0`.
pub fn bernoulli_numbers(up_to: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(up_to + 1);
    b.push(BigRational::one());
    for m in 1..=up_to {
        let mut binom = BigInt::one(); // C(m+1, j), starting at j = 0
        let mut acc = BigRational::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += BigRational::from_integer(binom.clone()) * bj;
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-acc / rat(m as i64 + 1));
    }
    b
}

pub fn bernoulli(k: usize) -> BigRational {
    bernoulli_numbers(k).pop().expect("nonempty")
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Power sums `s_1..s_n` of the Chern roots, by Newton's identities:
/// `s_k = Σ_{i=1}^{k-1} (-1)^{i-1} c_i s_{k-i} + (-1)^{k-1} k c_k`.
///
/// `chern[i]` holds `c_{i+1}`; classes beyond the slice are zero.
pub fn power_sums(chern: &[GradedElement], n: usize) -> Result<Vec<GradedElement>> {
    let (gens, bound) = ring_of(chern)?;
    let c = |i: usize| -> GradedElement {
        chern
            .get(i - 1)
            .cloned()
            .unwrap_or_else(|| GradedElement::zero(&gens, bound))
    };
    let mut s: Vec<GradedElement> = Vec::with_capacity(n);
    for k in 1..=n {
        let mut acc = c(k).scale(&rat(k as i64));
        if k % 2 == 0 {
            acc = acc.neg();
        }
        for i in 1..k {
            let term = c(i).mul(&s[k - i - 1])?;
            acc = if i % 2 == 1 { acc.add(&term)? } else { acc.sub(&term)? };
        }
        s.push(acc);
    }
    Ok(s)
}

fn ring_of(chern: &[GradedElement]) -> Result<(Arc<Generators>, usize)> {
    let first = chern
        .first()
        .ok_or_else(|| Error::Structure("need at least one Chern class".into()))?;
    Ok((Arc::clone(first.generators()), first.bound()))
}

/// Total Todd class, `td = 1 + td_1 + … + td_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToddClass(GradedElement);

impl ToddClass {
    /// Wraps an element whose constant term is 1.
    pub fn new(el: GradedElement) -> Result<Self> {
        if !el.constant_term().is_one() {
            return Err(Error::Structure("Todd class must have constant term 1".into()));
        }
        Ok(ToddClass(el))
    }

    /// Todd class of a bundle with the given Chern classes, computed as
    /// `exp(c_1/2 - Σ_{k≥1} B_{2k}/(2k·(2k)!) · s_{2k})`.
    pub fn from_chern_classes(chern: &[GradedElement]) -> Result<Self> {
        let (gens, n) = ring_of(chern)?;
        let s = power_sums(chern, n)?;
        let bern = bernoulli_numbers(n);
        let mut log = GradedElement::zero(&gens, n);
        if n >= 1 {
            log = log.add(&s[0].scale(&BigRational::new(1.into(), 2.into())))?;
        }
        for k in 1..=n / 2 {
            let m = 2 * k;
            let coeff = &bern[m] / BigRational::from_integer(BigInt::from(m) * factorial(m));
            log = log.sub(&s[m - 1].scale(&coeff))?;
        }
        ToddClass::new(log.exp()?)
    }

    /// Universal Todd class in generators `c1..cn`.
    pub fn universal(n: u32) -> Self {
        let gens = Generators::chern(n);
        let chern: Vec<_> = (1..=n)
            .map(|i| GradedElement::generator(&gens, n as usize, &format!("c{i}")).expect("exists"))
            .collect();
        Self::from_chern_classes(&chern).expect("universal Todd class is well defined")
    }

    /// `1 + d1 + … + dn` in free generators `d_i` of degree `i`.
    pub fn generic(n: u32) -> Self {
        let gens = Generators::indexed("d", n);
        let mut td = GradedElement::one(&gens, n as usize);
        for i in 1..=n {
            td = td
                .add(&GradedElement::generator(&gens, n as usize, &format!("d{i}")).expect("exists"))
                .expect("same ring");
        }
        ToddClass(td)
    }

    pub fn element(&self) -> &GradedElement {
        &self.0
    }

    pub fn into_element(self) -> GradedElement {
        self.0
    }

    /// The degree-`k` Todd polynomial `td_k`.
    pub fn part(&self, k: usize) -> GradedElement {
        self.0.homogeneous_part(k)
    }
}

/// `[td_1, …, td_n]` in generators `c1..cn`.
pub fn todd_universal(n: u32) -> Vec<GradedElement> {
    let td = ToddClass::universal(n);
    (1..=n as usize).map(|k| td.part(k)).collect()
}

/// A Chern character; its constant term is the rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernCharacter(GradedElement);

impl ChernCharacter {
    pub fn from_element(el: GradedElement) -> Self {
        ChernCharacter(el)
    }

    pub fn trivial(gens: &Arc<Generators>, bound: usize, rank: i64) -> Self {
        ChernCharacter(GradedElement::constant(gens, bound, rat(rank)))
    }

    /// `ch(L) = exp(c_1(L))`.
    pub fn line(c1: &GradedElement) -> Result<Self> {
        if !c1.is_homogeneous(1) {
            return Err(Error::Structure(
                "first Chern class of a line bundle must be homogeneous of degree 1".into(),
            ));
        }
        Ok(ChernCharacter(c1.exp()?))
    }

    /// `ch = rank + Σ_k s_k / k!` from Chern classes.
    pub fn from_chern_classes(rank: i64, chern: &[GradedElement]) -> Result<Self> {
        let (gens, n) = ring_of(chern)?;
        let s = power_sums(chern, n)?;
        let mut ch = GradedElement::constant(&gens, n, rat(rank));
        for (k, sk) in s.iter().enumerate() {
            ch = ch.add(&sk.scale(&BigRational::new(1.into(), factorial(k + 1))))?;
        }
        Ok(ChernCharacter(ch))
    }

    pub fn rank(&self) -> BigRational {
        self.0.constant_term()
    }

    pub fn element(&self) -> &GradedElement {
        &self.0
    }

    pub fn into_element(self) -> GradedElement {
        self.0
    }

    /// `ch_i(E*) = (-1)^i ch_i(E)`.
    pub fn dual(&self) -> Self {
        ChernCharacter(self.0.map_components(|deg, c| if deg % 2 == 1 { -c } else { c.clone() }))
    }

    /// `ch(E ⊗ E*) = ch(E) · ch(E*)`.
    pub fn end_character(&self) -> Self {
        ChernCharacter(self.0.mul(&self.dual().0).expect("same ring"))
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        Ok(ChernCharacter(self.0.mul(&other.0)?))
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        Ok(ChernCharacter(self.0.add(&other.0)?))
    }
}

/// Adams operation: scales the degree-`i` component by `q^i`.
pub fn adams(q: &BigRational, x: &GradedElement) -> Result<GradedElement> {
    if q.is_zero() {
        return Err(Error::InvalidParameter("Adams operation needs q != 0".into()));
    }
    Ok(x.map_components(|deg, c| c * pow(q, deg as i32)))
}

/// Inverse Adams operation: scales the degree-`i` component by `q^{-i}`.
pub fn adams_inverse(q: &BigRational, x: &GradedElement) -> Result<GradedElement> {
    if q.is_zero() {
        return Err(Error::InvalidParameter("Adams operation needs q != 0".into()));
    }
    adams(&q.recip(), x)
}
