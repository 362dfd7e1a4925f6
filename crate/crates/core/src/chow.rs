//! Truncated graded commutative algebra over the rationals.
//!
//! A [`GradedElement`] is a polynomial in a fixed set of graded generators,
//! stored one homogeneous component per degree `0..=n`. Products silently drop
//! everything above degree `n`. No relations are imposed below the top degree:
//! the only geometric input is an [`IntersectionTable`] assigning a rational
//! number to each top-degree monomial, consumed by [`integrate`].

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::rational::BigRational;
use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{from_wire, pretty, to_wire};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        Generator {
            name: name.into(),
            degree,
        }
    }
}

/// An ordered set of generators. The order is canonical: by degree, then name.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generators(Vec<Generator>);

impl Generators {
    pub fn new(mut gens: Vec<Generator>) -> Result<Arc<Self>> {
        gens.sort_by(|a, b| (a.degree, &a.name).cmp(&(b.degree, &b.name)));
        for g in &gens {
            if g.degree == 0 {
                return Err(Error::Structure(format!(
                    "generator {} must have positive degree",
                    g.name
                )));
            }
            if g.name.is_empty() || !g.name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(Error::Structure(format!("invalid generator name {:?}", g.name)));
            }
        }
        for w in gens.windows(2) {
            if w[0].name == w[1].name {
                return Err(Error::Structure(format!("duplicate generator {}", w[0].name)));
            }
        }
        Ok(Arc::new(Generators(gens)))
    }

    /// `prefix1, …, prefixn` with `prefixi` in degree `i`.
    pub fn indexed(prefix: &str, n: u32) -> Arc<Self> {
        Self::new((1..=n).map(|i| Generator::new(format!("{prefix}{i}"), i)).collect())
            .expect("indexed generators are well formed")
    }

    /// The Chern generators `c1..cn`.
    pub fn chern(n: u32) -> Arc<Self> {
        Self::indexed("c", n)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Generator> {
        self.0.iter()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|g| g.name == name)
    }

    pub fn get(&self, i: usize) -> &Generator {
        &self.0[i]
    }
}

/// Exponent vector over a [`Generators`] set. Ordered lexicographically in
/// canonical generator order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(gens: &Generators) -> Self {
        Monomial(vec![0; gens.len()])
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self, gens: &Generators) -> u32 {
        self.0.iter().zip(gens.iter()).map(|(e, g)| e * g.degree).sum()
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Parses `"c1^2*c2"`; `"1"` is the empty monomial.
    pub fn parse(s: &str, gens: &Generators) -> Result<Self> {
        let mut exps = vec![0u32; gens.len()];
        let s = s.trim();
        if s == "1" {
            return Ok(Monomial(exps));
        }
        for factor in s.split('*') {
            let factor = factor.trim();
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => {
                    let e = e
                        .trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?;
                    (n.trim(), e)
                }
                None => (factor, 1),
            };
            let i = gens
                .index_of(name)
                .ok_or_else(|| Error::Parse(format!("unknown generator {name:?} in {s:?}")))?;
            exps[i] += exp;
        }
        Ok(Monomial(exps))
    }

    pub fn display<'a>(&'a self, gens: &'a Generators) -> impl fmt::Display + 'a {
        MonomialDisplay { mono: self, gens }
    }

    pub fn to_exponent_map(&self, gens: &Generators) -> BTreeMap<String, u32> {
        self.0
            .iter()
            .zip(gens.iter())
            .filter(|(e, _)| **e > 0)
            .map(|(e, g)| (g.name.clone(), *e))
            .collect()
    }

    pub fn from_exponent_map(map: &BTreeMap<String, u32>, gens: &Generators) -> Result<Self> {
        let mut exps = vec![0u32; gens.len()];
        for (name, e) in map {
            let i = gens
                .index_of(name)
                .ok_or_else(|| Error::Parse(format!("unknown generator {name:?}")))?;
            exps[i] = *e;
        }
        Ok(Monomial(exps))
    }
}

struct MonomialDisplay<'a> {
    mono: &'a Monomial,
    gens: &'a Generators,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, g) in self.mono.0.iter().zip(self.gens.iter()) {
            if *e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(&g.name)?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

type Component = BTreeMap<Monomial, BigRational>;

/// Element of `Q[generators] / (degree > n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedElement {
    gens: Arc<Generators>,
    components: Vec<Component>,
}

impl GradedElement {
    pub fn zero(gens: &Arc<Generators>, bound: usize) -> Self {
        GradedElement {
            gens: Arc::clone(gens),
            components: vec![Component::new(); bound + 1],
        }
    }

    pub fn constant(gens: &Arc<Generators>, bound: usize, c: BigRational) -> Self {
        let mut out = Self::zero(gens, bound);
        out.add_term(Monomial::one(gens), c);
        out
    }

    pub fn one(gens: &Arc<Generators>, bound: usize) -> Self {
        Self::constant(gens, bound, BigRational::one())
    }

    /// The class of a single generator (zero if its degree exceeds the bound).
    pub fn generator(gens: &Arc<Generators>, bound: usize, name: &str) -> Result<Self> {
        let i = gens
            .index_of(name)
            .ok_or_else(|| Error::Structure(format!("unknown generator {name:?}")))?;
        let mut exps = vec![0; gens.len()];
        exps[i] = 1;
        Ok(Self::monomial(gens, bound, Monomial(exps), BigRational::one()))
    }

    pub fn monomial(gens: &Arc<Generators>, bound: usize, m: Monomial, c: BigRational) -> Self {
        let mut out = Self::zero(gens, bound);
        out.add_term(m, c);
        out
    }

    /// Builds an element from `(monomial string, coefficient)` pairs.
    pub fn from_terms<'a>(
        gens: &Arc<Generators>,
        bound: usize,
        terms: impl IntoIterator<Item = (&'a str, BigRational)>,
    ) -> Result<Self> {
        let mut out = Self::zero(gens, bound);
        for (m, c) in terms {
            let m = Monomial::parse(m, gens)?;
            out.add_term(m, c);
        }
        Ok(out)
    }

    /// Adds `c·m`, dropping it if `m` is above the truncation bound.
    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        let deg = m.degree(&self.gens) as usize;
        if deg > self.bound() || c.is_zero() {
            return;
        }
        match self.components[deg].entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn bound(&self) -> usize {
        self.components.len() - 1
    }

    pub fn generators(&self) -> &Arc<Generators> {
        &self.gens
    }

    pub fn component(&self, k: usize) -> &BTreeMap<Monomial, BigRational> {
        &self.components[k]
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        let deg = m.degree(&self.gens) as usize;
        self.components
            .get(deg)
            .and_then(|c| c.get(m))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(&Monomial::one(&self.gens))
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_empty())
    }

    /// The degree-`k` part as an element of the same ring.
    pub fn homogeneous_part(&self, k: usize) -> Self {
        let mut out = Self::zero(&self.gens, self.bound());
        if k <= self.bound() {
            out.components[k] = self.components[k].clone();
        }
        out
    }

    /// True if every component other than degree `k` vanishes.
    pub fn is_homogeneous(&self, k: usize) -> bool {
        self.components
            .iter()
            .enumerate()
            .all(|(d, c)| d == k || c.is_empty())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.bound() != other.bound() {
            return Err(Error::Structure(format!(
                "truncation bounds differ ({} vs {})",
                self.bound(),
                other.bound()
            )));
        }
        if self.gens != other.gens {
            return Err(Error::Structure("generator sets differ".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for comp in &other.components {
            for (m, c) in comp {
                out.add_term(m.clone(), c.clone());
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigRational::one())
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        self.map_components(|_, c| c * s)
    }

    /// Applies `f(degree, coefficient)` to every term.
    pub fn map_components(&self, f: impl Fn(usize, &BigRational) -> BigRational) -> Self {
        let mut out = Self::zero(&self.gens, self.bound());
        for (deg, comp) in self.components.iter().enumerate() {
            for (m, c) in comp {
                out.add_term(m.clone(), f(deg, c));
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let n = self.bound();
        let mut out = Self::zero(&self.gens, n);
        for (i, a) in self.components.iter().enumerate() {
            if a.is_empty() {
                continue;
            }
            for (j, b) in other.components.iter().enumerate().take(n + 1 - i) {
                for (ma, ca) in a {
                    for (mb, cb) in b {
                        debug_assert!(i + j <= n);
                        out.add_term(ma.times(mb), ca * cb);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.gens, self.bound());
        for _ in 0..k {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// Multiplicative inverse by graded recursion:
    /// `b_0 = 1/a_0`, `b_k = -(1/a_0) Σ_{j=1..k} a_j b_{k-j}`.
    pub fn invert(&self) -> Result<Self> {
        let a0 = self.constant_term();
        if a0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let inv0 = a0.recip();
        let n = self.bound();
        let parts: Vec<Self> = (0..=n).map(|k| self.homogeneous_part(k)).collect();
        let mut b: Vec<Self> = vec![Self::constant(&self.gens, n, inv0.clone())];
        for k in 1..=n {
            let mut acc = Self::zero(&self.gens, n);
            for j in 1..=k {
                acc = acc.add(&parts[j].mul(&b[k - j])?)?;
            }
            b.push(acc.scale(&-inv0.clone()));
        }
        b.iter()
            .try_fold(Self::zero(&self.gens, n), |acc, part| acc.add(part))
    }

    /// Re-truncates to a smaller bound.
    pub fn truncate(&self, bound: usize) -> Result<Self> {
        if bound > self.bound() {
            return Err(Error::Structure(format!(
                "cannot raise truncation bound from {} to {bound}",
                self.bound()
            )));
        }
        Ok(GradedElement {
            gens: Arc::clone(&self.gens),
            components: self.components[..=bound].to_vec(),
        })
    }

    /// Truncated exponential of an element with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::Structure("exp needs a zero constant term".into()));
        }
        let n = self.bound();
        let mut term = Self::one(&self.gens, n);
        let mut acc = term.clone();
        for k in 1..=n {
            term = term
                .mul(self)?
                .scale(&BigRational::new(1.into(), (k as i64).into()));
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for comp in &self.components {
            for (m, c) in comp.iter().rev() {
                if !first {
                    f.write_str(" + ")?;
                }
                first = false;
                let mono = m.display(&self.gens).to_string();
                if mono == "1" {
                    write!(f, "{}", pretty(c))?;
                } else if c.is_one() {
                    f.write_str(&mono)?;
                } else {
                    write!(f, "({})*{mono}", pretty(c))?;
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Rational intersection numbers of top-degree monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionTable {
    gens: Arc<Generators>,
    dim: usize,
    entries: BTreeMap<Monomial, BigRational>,
}

impl IntersectionTable {
    pub fn new(gens: &Arc<Generators>, dim: usize) -> Self {
        IntersectionTable {
            gens: Arc::clone(gens),
            dim,
            entries: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, m: Monomial, value: BigRational) -> Result<()> {
        let deg = m.degree(&self.gens) as usize;
        if deg != self.dim {
            return Err(Error::Structure(format!(
                "intersection number for {} has degree {deg}, expected {}",
                m.display(&self.gens),
                self.dim
            )));
        }
        self.entries.insert(m, value);
        Ok(())
    }

    /// Convenience: `table.set("c1^2", 3)`.
    pub fn set(&mut self, monomial: &str, value: BigRational) -> Result<()> {
        let m = Monomial::parse(monomial, &self.gens)?;
        self.insert(m, value)
    }

    pub fn get(&self, m: &Monomial) -> Option<&BigRational> {
        self.entries.get(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &Arc<Generators> {
        &self.gens
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.entries.iter()
    }
}

/// Evaluates the top-degree component against the table. Lower degrees are
/// ignored; a missing entry is an error only if its coefficient is nonzero.
pub fn integrate(a: &GradedElement, t: &IntersectionTable) -> Result<BigRational> {
    if a.bound() != t.dim {
        return Err(Error::Structure(format!(
            "element truncated at degree {} but table has dimension {}",
            a.bound(),
            t.dim
        )));
    }
    if a.gens != t.gens {
        return Err(Error::Structure("generator sets differ".into()));
    }
    let mut acc = BigRational::zero();
    for (m, c) in a.component(t.dim) {
        let v = t
            .get(m)
            .ok_or_else(|| Error::MissingIntersection(m.display(&a.gens).to_string()))?;
        acc += c * v;
    }
    Ok(acc)
}

// ---- serialization ----

#[derive(Serialize, Deserialize)]
struct TermRepr {
    monomial: BTreeMap<String, u32>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    generators: Vec<Generator>,
    bound: usize,
    components: Vec<Vec<TermRepr>>,
}

#[derive(Serialize, Deserialize)]
struct EntryRepr {
    monomial: BTreeMap<String, u32>,
    value: String,
}

#[derive(Serialize, Deserialize)]
struct TableRepr {
    generators: Vec<Generator>,
    dim: usize,
    entries: Vec<EntryRepr>,
}

impl Serialize for GradedElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ElementRepr {
            generators: self.gens.iter().cloned().collect(),
            bound: self.bound(),
            components: self
                .components
                .iter()
                .map(|comp| {
                    comp.iter()
                        .map(|(m, c)| TermRepr {
                            monomial: m.to_exponent_map(&self.gens),
                            coeff: to_wire(c),
                        })
                        .collect()
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GradedElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = ElementRepr::deserialize(d)?;
        let gens = Generators::new(repr.generators).map_err(D::Error::custom)?;
        if repr.components.len() != repr.bound + 1 {
            return Err(D::Error::custom("component count must equal bound + 1"));
        }
        let mut out = GradedElement::zero(&gens, repr.bound);
        for (deg, comp) in repr.components.iter().enumerate() {
            for term in comp {
                let m = Monomial::from_exponent_map(&term.monomial, &gens).map_err(D::Error::custom)?;
                if m.degree(&gens) as usize != deg {
                    return Err(D::Error::custom(format!(
                        "monomial {} listed in component {deg}",
                        m.display(&gens)
                    )));
                }
                out.add_term(m, from_wire(&term.coeff).map_err(D::Error::custom)?);
            }
        }
        Ok(out)
    }
}

impl Serialize for IntersectionTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TableRepr {
            generators: self.gens.iter().cloned().collect(),
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .map(|(m, v)| EntryRepr {
                    monomial: m.to_exponent_map(&self.gens),
                    value: to_wire(v),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntersectionTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = TableRepr::deserialize(d)?;
        let gens = Generators::new(repr.generators).map_err(D::Error::custom)?;
        let mut t = IntersectionTable::new(&gens, repr.dim);
        for e in &repr.entries {
            let m = Monomial::from_exponent_map(&e.monomial, &gens).map_err(D::Error::custom)?;
            t.insert(m, from_wire(&e.value).map_err(D::Error::custom)?)
                .map_err(D::Error::custom)?;
        }
        Ok(t)
    }
}
