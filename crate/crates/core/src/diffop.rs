//! Differential operators on `F_p[t]` through the Frobenius.
//!
//! `D^(e)` is the algebra of additive maps `F_p[t] → F_p[t]` that are linear
//! over the subring `F_p[t^q]`, `q = p^e`. Such a map is a `q × q` matrix over
//! `F_p[u]`, `u = t^q`, in the basis `1, t, …, t^{q-1}`: column `j` holds the
//! image of `t^j` written as `Σ_i t^i · entry(i, j)(t^q)`.
//!
//! Two embeddings `D^(e) → D^(e')` are compared: the natural inclusion `i`
//! (same map, bigger matrix) and `j(ψ) = F^{e'-e} ∘ ψ ∘ τ`, built from the
//! standard Frobenius splitting `τ`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::frobpush::is_prime;

/// Polynomial over the prime field `F_p`, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut out = FpPoly {
            p,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        };
        out.trim();
        out
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: vec![] }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    /// `c · t^k`.
    pub fn monomial(p: u64, k: usize, c: u64) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Self::new(p, coeffs)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            self.p,
            (0..len).map(|k| self.coeff(k) + other.coeff(k)).collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|c| self.p - c).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u64) -> Self {
        let c = c % self.p;
        Self::new(
            self.p,
            self.coeffs.iter().map(|x| mul_mod(*x, c, self.p)).collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(*a, *b, self.p)) % self.p;
            }
        }
        Self::new(self.p, out)
    }

    /// `f(t^k)`. Over `F_p` this is also `f^{p^e}` when `k = p^e`.
    pub fn substitute_power(&self, k: usize) -> Self {
        let mut out = vec![0u64; self.degree().map_or(0, |d| d * k + 1)];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * k] = *c;
        }
        Self::new(self.p, out)
    }

    /// Splits `f = Σ_{j<q} t^j g_j(t^q)` and returns `[g_0, …, g_{q-1}]`.
    pub fn decompose(&self, q: usize) -> Vec<FpPoly> {
        (0..q)
            .map(|j| {
                Self::new(
                    self.p,
                    self.coeffs.iter().skip(j).step_by(q).copied().collect(),
                )
            })
            .collect()
    }

    pub fn display_in<'a>(&'a self, var: &'a str) -> impl fmt::Display + 'a {
        PolyDisplay { poly: self, var }
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_in("t").fmt(f)
    }
}

struct PolyDisplay<'a> {
    poly: &'a FpPoly,
    var: &'a str,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.poly.coeffs.iter().enumerate().rev() {
            if *c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let var = match k {
                0 => String::new(),
                1 => self.var.to_string(),
                _ => format!("{}^{k}", self.var),
            };
            match (*c, k) {
                (1, 0) => f.write_str("1")?,
                (1, _) => f.write_str(&var)?,
                (c, 0) => write!(f, "{c}")?,
                (c, _) => write!(f, "{c}{var}")?,
            }
        }
        Ok(())
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while k > 0 {
        if k & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        k >>= 1;
    }
    acc
}

/// `C(m, k) mod p` by Lucas' theorem.
pub fn binomial_mod(mut m: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while k > 0 {
        let (mi, ki) = (m % p, k % p);
        if ki > mi {
            return 0;
        }
        // C(mi, ki) for digits below p: numerator / denominator via Fermat inverse.
        let mut num = 1u64;
        let mut den = 1u64;
        for i in 0..ki {
            num = mul_mod(num, mi - i, p);
            den = mul_mod(den, i + 1, p);
        }
        acc = mul_mod(acc, mul_mod(num, pow_mod(den, p - 2, p), p), p);
        m /= p;
        k /= p;
    }
    acc % p
}

/// Something that acts additively on `F_p[t]`.
pub trait Action {
    fn act(&self, f: &FpPoly) -> FpPoly;
}

impl<F: Fn(&FpPoly) -> FpPoly> Action for F {
    fn act(&self, f: &FpPoly) -> FpPoly {
        self(f)
    }
}

/// Extends an action on monomials `t^m` additively.
fn on_monomials(f: &FpPoly, image: impl Fn(usize) -> FpPoly) -> FpPoly {
    f.coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0)
        .fold(FpPoly::zero(f.p), |acc, (m, c)| acc.add(&image(m).scale(*c)))
}

/// Divided power `∂^[k]`: `t^m ↦ C(m, k) t^{m-k}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DividedPower(pub u64);

impl Action for DividedPower {
    fn act(&self, f: &FpPoly) -> FpPoly {
        let k = self.0 as usize;
        on_monomials(f, |m| {
            if m < k {
                FpPoly::zero(f.p)
            } else {
                FpPoly::monomial(f.p, m - k, binomial_mod(m as u64, k as u64, f.p))
            }
        })
    }
}

/// Multiplication by a fixed polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplyBy(pub FpPoly);

impl Action for MultiplyBy {
    fn act(&self, f: &FpPoly) -> FpPoly {
        self.0.mul(f)
    }
}

/// The Frobenius splitting `τ_k`: `t^m ↦ t^{m/p^k}` if `p^k | m`, else 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Splitting {
    pub p: u64,
    pub levels: u32,
}

impl Action for Splitting {
    fn act(&self, f: &FpPoly) -> FpPoly {
        let q = self.p.pow(self.levels) as usize;
        on_monomials(f, |m| {
            if m % q == 0 {
                FpPoly::monomial(f.p, m / q, 1)
            } else {
                FpPoly::zero(f.p)
            }
        })
    }
}

pub fn splitting_tau(p: u64, levels: u32) -> Splitting {
    Splitting { p, levels }
}

/// `r ↦ r^{p^k}`, the inclusion of `R` onto its `p^k`-th powers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrobeniusPower {
    pub p: u64,
    pub levels: u32,
}

impl Action for FrobeniusPower {
    fn act(&self, f: &FpPoly) -> FpPoly {
        f.substitute_power(self.p.pow(self.levels) as usize)
    }
}

/// Checks that `action` is linear over `F_p[t^stride]` on the probes
/// `t^j`, `t^{stride}·t^j`, `t^{2·stride}·t^j` and sums of basis elements.
pub fn check_linearity(action: &impl Action, p: u64, stride: usize) -> Result<()> {
    let fail = || Error::NotInOperatorAlgebra(format!("subring F_{p}[t^{stride}]"));
    let basis: Vec<FpPoly> = (0..=stride).map(|j| FpPoly::monomial(p, j, 1)).collect();
    let images: Vec<FpPoly> = basis.iter().map(|b| action.act(b)).collect();
    let multipliers = [
        FpPoly::monomial(p, stride, 1),
        FpPoly::monomial(p, 2 * stride, 1),
        FpPoly::one(p).add(&FpPoly::monomial(p, stride, p - 1)),
    ];
    for (b, img) in basis.iter().zip(&images) {
        for s in &multipliers {
            if action.act(&s.mul(b)) != s.mul(img) {
                return Err(fail());
            }
        }
        if action.act(&b.scale(2 % p)) != img.scale(2 % p) {
            return Err(fail());
        }
    }
    for w in basis.windows(2).zip(images.windows(2)) {
        let (b, img) = w;
        if action.act(&b[0].add(&b[1])) != img[0].add(&img[1]) {
            return Err(fail());
        }
    }
    Ok(())
}

/// Element of `D^(e)` over `F_p[t]` as a `p^e × p^e` matrix over `F_p[u]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorMatrix {
    p: u64,
    e: u32,
    size: usize,
    entries: Vec<FpPoly>,
}

impl OperatorMatrix {
    fn check_level(p: u64, e: u32) -> Result<usize> {
        if !is_prime(p) {
            return Err(Error::InvalidParameter(format!("p = {p} is not prime")));
        }
        p.checked_pow(e)
            .filter(|q| *q <= 1 << 16)
            .map(|q| q as usize)
            .ok_or_else(|| Error::InvalidParameter(format!("{p}^{e} is too large")))
    }

    /// Matrix of a map linear over `p^e`-th powers; fails if the probes in
    /// [`check_linearity`] find a violation.
    pub fn from_action(action: &impl Action, p: u64, e: u32) -> Result<Self> {
        let q = Self::check_level(p, e)?;
        check_linearity(action, p, q)?;
        let mut entries = vec![FpPoly::zero(p); q * q];
        for j in 0..q {
            let image = action.act(&FpPoly::monomial(p, j, 1));
            for (i, h) in image.decompose(q).into_iter().enumerate() {
                entries[i * q + j] = h;
            }
        }
        Ok(OperatorMatrix { p, e, size: q, entries })
    }

    pub fn identity(p: u64, e: u32) -> Result<Self> {
        Self::from_action(&|f: &FpPoly| f.clone(), p, e)
    }

    pub fn divided_power(p: u64, e: u32, k: u64) -> Result<Self> {
        Self::from_action(&DividedPower(k), p, e)
    }

    pub fn multiplication(r: &FpPoly, e: u32) -> Result<Self> {
        Self::from_action(&MultiplyBy(r.clone()), r.p, e)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.e
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Coefficient (in `u = t^q`) of `t^i` in the image of `t^j`.
    pub fn entry(&self, i: usize, j: usize) -> &FpPoly {
        &self.entries[i * self.size + j]
    }

    pub fn apply(&self, f: &FpPoly) -> FpPoly {
        let q = self.size;
        let parts = f.decompose(q);
        let mut out = FpPoly::zero(self.p);
        for i in 0..q {
            let h = parts
                .iter()
                .enumerate()
                .fold(FpPoly::zero(self.p), |acc, (j, g)| acc.add(&self.entry(i, j).mul(g)));
            out = out.add(&h.substitute_power(q).mul(&FpPoly::monomial(self.p, i, 1)));
        }
        out
    }

    /// Images of the basis `1, t, …, t^{q-1}`.
    pub fn basis_images(&self) -> Vec<FpPoly> {
        (0..self.size)
            .map(|j| self.apply(&FpPoly::monomial(self.p, j, 1)))
            .collect()
    }

    fn check_same_level(&self, other: &Self) -> Result<()> {
        if self.p != other.p || self.e != other.e {
            return Err(Error::Structure("operators live at different levels".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_level(other)?;
        Ok(OperatorMatrix {
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect(),
            ..self.clone()
        })
    }

    pub fn scale(&self, c: u64) -> Self {
        OperatorMatrix {
            entries: self.entries.iter().map(|a| a.scale(c)).collect(),
            ..self.clone()
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_same_level(other)?;
        let q = self.size;
        let mut entries = vec![FpPoly::zero(self.p); q * q];
        for i in 0..q {
            for j in 0..q {
                entries[i * q + j] = (0..q).fold(FpPoly::zero(self.p), |acc, l| {
                    acc.add(&self.entry(i, l).mul(other.entry(l, j)))
                });
            }
        }
        Ok(OperatorMatrix { entries, ..self.clone() })
    }

    /// Text grid with entries as polynomials in `u`.
    pub fn render(&self) -> String {
        let cells: Vec<String> = self.entries.iter().map(|e| e.display_in("u").to_string()).collect();
        let width = cells.iter().map(|c| c.len()).max().unwrap_or(1);
        let mut out = String::new();
        for i in 0..self.size {
            out.push('[');
            for j in 0..self.size {
                if j > 0 {
                    out.push_str(", ");
                }
                out.push_str(&format!("{:>width$}", cells[i * self.size + j]));
            }
            out.push_str("]\n");
        }
        out
    }
}

impl Action for OperatorMatrix {
    fn act(&self, f: &FpPoly) -> FpPoly {
        self.apply(f)
    }
}

impl Serialize for OperatorMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            p: u64,
            e: u32,
            size: usize,
            /// rows of entries, each entry a coefficient list in u, lowest first
            entries: Vec<Vec<&'a [u64]>>,
        }
        Repr {
            p: self.p,
            e: self.e,
            size: self.size,
            entries: (0..self.size)
                .map(|i| (0..self.size).map(|j| self.entry(i, j).coeffs()).collect())
                .collect(),
        }
        .serialize(s)
    }
}

fn check_levels(op: &OperatorMatrix, target: u32) -> Result<()> {
    if target <= op.e {
        return Err(Error::InvalidParameter(format!(
            "target level {target} must exceed source level {}",
            op.e
        )));
    }
    Ok(())
}

/// The natural inclusion `i: D^(e) → D^(e')`: the same map, re-based.
pub fn natural_inclusion(op: &OperatorMatrix, target: u32) -> Result<OperatorMatrix> {
    check_levels(op, target)?;
    OperatorMatrix::from_action(op, op.p, target)
}

/// `j(ψ) = F^{e'-e} ∘ ψ ∘ τ_{e'-e}`, the embedding induced by the splitting.
pub fn split_embedding(op: &OperatorMatrix, target: u32) -> Result<OperatorMatrix> {
    check_levels(op, target)?;
    let gap = target - op.e;
    let tau = splitting_tau(op.p, gap);
    let frob = FrobeniusPower { p: op.p, levels: gap };
    let composite = |f: &FpPoly| frob.act(&op.apply(&tau.act(f)));
    OperatorMatrix::from_action(&composite, op.p, target)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InclusionReport {
    pub p: u64,
    pub source_level: u32,
    pub target_level: u32,
    pub inclusion: OperatorMatrix,
    pub embedding: OperatorMatrix,
    pub checks: Vec<Check>,
}

impl InclusionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn show_images(op: &OperatorMatrix) -> String {
    op.basis_images()
        .iter()
        .enumerate()
        .map(|(j, img)| format!("{} -> {}", FpPoly::monomial(op.p, j, 1), img))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Builds `i(∂)` and `j(∂)` for `∂ = d/dt` at levels `1 → 2` over `F_p[t]`
/// and checks that they differ. For `p = 2` it also checks the images
/// `1, t, t², t³ ↦ 0, 0, 1, 0` and `j(∂) = ∂^[2] + t·∂^[3]`.
pub fn compare_derivative_embeddings(p: u64) -> Result<InclusionReport> {
    let d = OperatorMatrix::divided_power(p, 1, 1)?;
    let i_d = natural_inclusion(&d, 2)?;
    let j_d = split_embedding(&d, 2)?;
    let mut checks = vec![Check::new(
        "i(d/dt) != j(d/dt)",
        i_d != j_d,
        format!("i: {}; j: {}", show_images(&i_d), show_images(&j_d)),
    )];
    if p == 2 {
        let want: Vec<FpPoly> = [0, 0, 1, 0].iter().map(|c| FpPoly::new(2, vec![*c])).collect();
        checks.push(Check::new(
            "j(d/dt) sends 1, t, t^2, t^3 to 0, 0, 1, 0",
            j_d.basis_images() == want,
            show_images(&j_d),
        ));
        let t = OperatorMatrix::multiplication(&FpPoly::monomial(2, 1, 1), 2)?;
        let expr = OperatorMatrix::divided_power(2, 2, 2)?
            .add(&t.compose(&OperatorMatrix::divided_power(2, 2, 3)?)?)?;
        checks.push(Check::new(
            "j(d/dt) = D^[2] + t*D^[3]",
            j_d == expr,
            format!("D^[2] + t*D^[3]: {}", show_images(&expr)),
        ));
        let i_images: Vec<FpPoly> = [0, 1, 0].iter().map(|c| FpPoly::new(2, vec![*c])).chain([FpPoly::monomial(2, 2, 1)]).collect();
        checks.push(Check::new(
            "i(d/dt) sends 1, t, t^2, t^3 to 0, 1, 0, t^2",
            i_d.basis_images() == i_images,
            show_images(&i_d),
        ));
    }
    Ok(InclusionReport {
        p,
        source_level: 1,
        target_level: 2,
        inclusion: i_d,
        embedding: j_d,
        checks,
    })
}

/// The characteristic-2 comparison of `i` and `j` on `d/dt`.
pub fn verify_paper_example() -> InclusionReport {
    compare_derivative_embeddings(2).expect("p = 2 at levels 1 and 2 is always valid")
}

/// Outcome of comparing `i(op)` with `j(op)` on a non-headline operator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExploratoryCase {
    pub description: String,
    pub i_equals_j: bool,
}

/// Compares `i` and `j` on a few further operators and records the answer.
pub fn exploratory_cases() -> Result<Vec<ExploratoryCase>> {
    let mut out = Vec::new();
    for p in [2u64, 3, 5] {
        let d = OperatorMatrix::divided_power(p, 1, 1)?;
        out.push(ExploratoryCase {
            description: format!("p = {p}: d/dt, levels 1 -> 2"),
            i_equals_j: natural_inclusion(&d, 2)? == split_embedding(&d, 2)?,
        });
        let r = FpPoly::monomial(p, p as usize, 1);
        let m = OperatorMatrix::multiplication(&r, 1)?;
        out.push(ExploratoryCase {
            description: format!("p = {p}: multiplication by t^{p}, levels 1 -> 2"),
            i_equals_j: natural_inclusion(&m, 2)? == split_embedding(&m, 2)?,
        });
        let id = OperatorMatrix::identity(p, 1)?;
        out.push(ExploratoryCase {
            description: format!("p = {p}: identity, levels 1 -> 2"),
            i_equals_j: natural_inclusion(&id, 2)? == split_embedding(&id, 2)?,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(p: u64, k: usize) -> FpPoly {
        FpPoly::monomial(p, k, 1)
    }

    #[test]
    fn poly_basics() {
        let f = FpPoly::new(3, vec![4, 0, 5, 3]);
        assert_eq!(f.coeffs(), &[1, 0, 2]);
        assert_eq!(f.to_string(), "2t^2 + 1");
        assert_eq!(f.add(&f.neg()), FpPoly::zero(3));
        assert_eq!(t(2, 1).add(&FpPoly::one(2)).mul(&t(2, 1).add(&FpPoly::one(2))), FpPoly::new(2, vec![1, 0, 1]));
        assert_eq!(FpPoly::new(2, vec![1, 1]).substitute_power(2), FpPoly::new(2, vec![1, 0, 1]));
        let parts = FpPoly::new(5, vec![1, 2, 3, 4]).decompose(2);
        assert_eq!(parts, vec![FpPoly::new(5, vec![1, 3]), FpPoly::new(5, vec![2, 4])]);
    }

    #[test]
    fn lucas() {
        assert_eq!(binomial_mod(3, 2, 2), 1);
        assert_eq!(binomial_mod(4, 2, 2), 0);
        assert_eq!(binomial_mod(10, 3, 7), 120 % 7);
        assert_eq!(binomial_mod(2, 5, 3), 0);
        for m in 0..40u64 {
            for k in 0..=m {
                let exact = num::integer::binomial(m as u128, k as u128);
                for p in [2u64, 3, 5, 7] {
                    assert_eq!(binomial_mod(m, k, p) as u128, exact % p as u128);
                }
            }
        }
    }

    #[test]
    fn apply_examples() {
        assert_eq!(DividedPower(1).act(&t(2, 1)), FpPoly::one(2));
        assert_eq!(DividedPower(2).act(&t(2, 3)), t(2, 1));
        let id = OperatorMatrix::identity(3, 1).unwrap();
        let f = FpPoly::new(3, vec![1, 2, 0, 1, 1, 2, 2]);
        assert_eq!(id.apply(&f), f);
    }

    #[test]
    fn matrices_in_characteristic_two() {
        let d = OperatorMatrix::divided_power(2, 1, 1).unwrap();
        assert_eq!(d.entry(0, 0), &FpPoly::zero(2));
        assert_eq!(d.entry(0, 1), &FpPoly::one(2));
        assert_eq!(d.entry(1, 0), &FpPoly::zero(2));
        assert_eq!(d.entry(1, 1), &FpPoly::zero(2));

        let m = OperatorMatrix::multiplication(&t(2, 1), 1).unwrap();
        assert_eq!(m.entry(0, 0), &FpPoly::zero(2));
        assert_eq!(m.entry(0, 1), &t(2, 1)); // u
        assert_eq!(m.entry(1, 0), &FpPoly::one(2));
        assert_eq!(m.entry(1, 1), &FpPoly::zero(2));
        assert_eq!(m.render(), "[0, u]\n[1, 0]\n");
    }

    #[test]
    fn derivative_not_linear_over_cubes() {
        let err = check_linearity(&DividedPower(1), 2, 3).unwrap_err();
        assert!(matches!(err, Error::NotInOperatorAlgebra(_)));
        assert!(check_linearity(&DividedPower(1), 2, 2).is_ok());
        // ∂^[q] is not in D^(e) for q = p^e.
        assert!(OperatorMatrix::divided_power(2, 1, 2).is_err());
        assert!(OperatorMatrix::divided_power(3, 1, 2).is_ok());
    }

    #[test]
    fn inclusion_examples() {
        let id = OperatorMatrix::identity(2, 1).unwrap();
        assert_eq!(natural_inclusion(&id, 2).unwrap(), OperatorMatrix::identity(2, 2).unwrap());
        let d = OperatorMatrix::divided_power(2, 1, 1).unwrap();
        let i_d = natural_inclusion(&d, 2).unwrap();
        assert_eq!(
            i_d.basis_images(),
            vec![FpPoly::zero(2), FpPoly::one(2), FpPoly::zero(2), t(2, 2)]
        );
        assert!(natural_inclusion(&d, 1).is_err());
        assert!(split_embedding(&d, 0).is_err());
    }

    #[test]
    fn tau_examples() {
        let tau = splitting_tau(2, 1);
        assert_eq!(tau.act(&t(2, 2)), t(2, 1));
        assert_eq!(tau.act(&t(2, 1)), FpPoly::zero(2));
        assert_eq!(tau.act(&FpPoly::one(2)), FpPoly::one(2));
        // τ(t^q g^q) = t g on monomials g.
        for p in [2u64, 3] {
            for levels in 1..=2u32 {
                let q = p.pow(levels) as usize;
                let tau = splitting_tau(p, levels);
                for k in 0..5 {
                    let g = t(p, k);
                    let lhs = tau.act(&t(p, q).mul(&g.substitute_power(q)));
                    assert_eq!(lhs, t(p, 1).mul(&g));
                }
            }
        }
    }

    #[test]
    fn split_embedding_examples() {
        let d = OperatorMatrix::divided_power(2, 1, 1).unwrap();
        let j = split_embedding(&d, 2).unwrap();
        assert_eq!(
            j.basis_images(),
            vec![FpPoly::zero(2), FpPoly::zero(2), FpPoly::one(2), FpPoly::zero(2)]
        );
        let id = OperatorMatrix::identity(2, 1).unwrap();
        let proj = split_embedding(&id, 2).unwrap();
        assert_ne!(proj, OperatorMatrix::identity(2, 2).unwrap());
        assert_eq!(proj.compose(&proj).unwrap(), proj);
        assert_eq!(
            proj.basis_images(),
            vec![FpPoly::one(2), FpPoly::zero(2), t(2, 2), FpPoly::zero(2)]
        );
    }

    #[test]
    fn characteristic_two_example_passes() {
        let report = verify_paper_example();
        assert!(report.passed(), "{:#?}", report.checks);
        assert_eq!(report.checks.len(), 4);
    }

    #[test]
    fn characteristic_three_also_differs() {
        let report = compare_derivative_embeddings(3).unwrap();
        assert!(report.passed());
        assert_eq!(report.inclusion.size(), 9);
    }

    #[test]
    fn exploratory_answers() {
        let cases = exploratory_cases().unwrap();
        for c in &cases {
            // Both embeddings agree nowhere among these: j is not unital, and
            // j(mult by t^p) kills t^m for p ∤ m.
            assert!(!c.i_equals_j, "{}", c.description);
        }
    }

    #[test]
    fn serialized_matrix_shape() {
        let m = OperatorMatrix::multiplication(&t(2, 1), 1).unwrap();
        let v = serde_json::to_value(&m).unwrap();
        assert_eq!(v["size"], 2);
        assert_eq!(v["entries"][0][1], serde_json::json!([0, 1]));
        assert_eq!(v["entries"][1][0], serde_json::json!([1]));
    }
}
