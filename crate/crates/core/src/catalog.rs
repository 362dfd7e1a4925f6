//! Variety presets, closed-form Euler characteristics, tilting verdicts and
//! the projective-space checks.

use std::fmt;

use num::bigint::{BigInt, BigUint};
use num::integer::binomial;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::chow::{GradedElement, Generators, IntersectionTable, Monomial};
use crate::classes::{ChernCharacter, ToddClass};
use crate::error::{Error, Result};
use crate::frobpush::{pushforward_ch, FrobParams, QPolynomial};
use crate::rational::{into_integer, pow, rat, ratio};

/// The family a spec was built from, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "snake_case")]
pub enum Family {
    /// Del Pezzo surface with `K² = d`.
    DelPezzo { d: u32 },
    /// Fano threefold with `(-K)³ = vol` and `χ(O) = 1`.
    Fano3 { vol: u32 },
    /// Projective space of dimension `n`.
    Pn { n: u32 },
}

/// A smooth projective variety as far as intersection theory sees it: the
/// Chern generators `c1..cn` and the top intersection numbers among them.
#[derive(Debug, Clone)]
pub struct VarietySpec {
    name: String,
    table: IntersectionTable,
    family: Option<Family>,
    todd: ToddClass,
}

impl VarietySpec {
    pub fn new(name: impl Into<String>, table: IntersectionTable, family: Option<Family>) -> Result<Self> {
        let n = table.dim();
        if n == 0 {
            return Err(Error::InvalidParameter("dimension must be at least 1".into()));
        }
        let gens = table.generators().clone();
        let chern = (1..=n)
            .map(|i| {
                let name = format!("c{i}");
                let idx = gens.index_of(&name).ok_or_else(|| {
                    Error::Structure(format!("missing Chern generator {name}"))
                })?;
                if gens.get(idx).degree as usize != i {
                    return Err(Error::Structure(format!("generator {name} must have degree {i}")));
                }
                GradedElement::generator(&gens, n, &name)
            })
            .collect::<Result<Vec<_>>>()?;
        let todd = ToddClass::from_chern_classes(&chern)?;
        let spec = VarietySpec {
            name: name.into(),
            table,
            family,
            todd,
        };
        spec.check_family()?;
        Ok(spec)
    }

    fn check_family(&self) -> Result<()> {
        let (param, monomial, n) = match self.family {
            None => return Ok(()),
            Some(Family::DelPezzo { d }) => (rat(d as i64), "c1^2", 2),
            Some(Family::Fano3 { vol }) => (rat(vol as i64), "c1^3", 3),
            Some(Family::Pn { n }) => (pow(&rat(n as i64 + 1), n as i32), "", n as usize),
        };
        if self.dim() != n {
            return Err(Error::InvalidParameter(format!(
                "family expects dimension {n}, spec has {}",
                self.dim()
            )));
        }
        let monomial = if monomial.is_empty() {
            format!("c1^{n}")
        } else {
            monomial.to_string()
        };
        let m = Monomial::parse(&monomial, self.table.generators())?;
        match self.table.get(&m) {
            Some(v) if *v != param => Err(Error::InvalidParameter(format!(
                "family parameter disagrees with {monomial} in the intersection table"
            ))),
            _ => Ok(()),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    pub fn table(&self) -> &IntersectionTable {
        &self.table
    }

    pub fn family(&self) -> Option<Family> {
        self.family
    }

    /// `td(T_X)` in the Chern generators.
    pub fn todd(&self) -> &ToddClass {
        &self.todd
    }
}

/// Del Pezzo surface of degree `d`: `c1² = d`, `c2 = 12 - d` (Noether with `χ(O) = 1`).
pub fn del_pezzo_spec(d: u32) -> Result<VarietySpec> {
    if !(1..=9).contains(&d) {
        return Err(Error::InvalidParameter(format!("del Pezzo degree {d} outside 1..=9")));
    }
    let gens = Generators::chern(2);
    let mut t = IntersectionTable::new(&gens, 2);
    t.set("c1^2", rat(d as i64))?;
    t.set("c2", rat(12 - d as i64))?;
    VarietySpec::new(format!("del Pezzo surface of degree {d}"), t, Some(Family::DelPezzo { d }))
}

/// Fano threefold with anticanonical volume `vol`: `c1³ = vol`, `c1c2 = 24`.
/// `c3` is left out; the endomorphism Euler characteristic never needs it.
pub fn fano3_spec(vol: u32) -> Result<VarietySpec> {
    if vol == 0 || vol % 2 == 1 {
        return Err(Error::InvalidParameter(format!(
            "anticanonical volume {vol} must be a positive even integer"
        )));
    }
    let gens = Generators::chern(3);
    let mut t = IntersectionTable::new(&gens, 3);
    t.set("c1^3", rat(vol as i64))?;
    t.set("c1*c2", rat(24))?;
    VarietySpec::new(format!("Fano threefold of volume {vol}"), t, Some(Family::Fano3 { vol }))
}

/// `P^n` with `c(T) = (1 + H)^{n+1}`, so `c_i = C(n+1, i) H^i` and `H^n = 1`.
pub fn pn_spec(n: u32) -> Result<VarietySpec> {
    if n == 0 {
        return Err(Error::InvalidParameter("projective space needs n >= 1".into()));
    }
    let gens = Generators::chern(n);
    let mut t = IntersectionTable::new(&gens, n as usize);
    let binom = |i: u32| -> BigInt { binomial(BigInt::from(n + 1), BigInt::from(i)) };
    for exps in partitions_by_degree(n) {
        let value = exps
            .iter()
            .enumerate()
            .fold(BigInt::one(), |acc, (i, e)| acc * binom(i as u32 + 1).pow(*e));
        t.insert(Monomial::from_exponents(exps), BigRational::from_integer(value))?;
    }
    VarietySpec::new(format!("projective space of dimension {n}"), t, Some(Family::Pn { n }))
}

/// Exponent vectors `(e_1..e_n)` with `Σ i·e_i = n`.
fn partitions_by_degree(n: u32) -> Vec<Vec<u32>> {
    fn go(i: u32, remaining: u32, n: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i > n {
            if remaining == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for e in 0..=remaining / i {
            cur.push(e);
            go(i + 1, remaining - e * i, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, n, &mut Vec::new(), &mut out);
    out
}

/// `(d-4)/4 · q⁴ + (8-d)/4 · q²`.
pub fn del_pezzo_closed_poly(d: u32) -> QPolynomial {
    let d = d as i64;
    QPolynomial::new(vec![rat(0), rat(0), ratio(8 - d, 4), rat(0), ratio(d - 4, 4)])
}

/// `(vol-24)/24 · q⁶ + (48-vol)/24 · q⁴`.
pub fn fano3_closed_poly(vol: u32) -> QPolynomial {
    let v = vol as i64;
    let mut c = vec![rat(0); 7];
    c[4] = ratio(48 - v, 24);
    c[6] = ratio(v - 24, 24);
    QPolynomial::new(c)
}

pub fn chi_del_pezzo_closed(d: u32, fp: FrobParams) -> Result<BigInt> {
    if !(1..=9).contains(&d) {
        return Err(Error::InvalidParameter(format!("del Pezzo degree {d} outside 1..=9")));
    }
    into_integer(del_pezzo_closed_poly(d).eval(&fp.q_rational()))
}

pub fn chi_fano3_closed(vol: u32, fp: FrobParams) -> Result<BigInt> {
    if vol == 0 {
        return Err(Error::InvalidParameter("anticanonical volume must be positive".into()));
    }
    into_integer(fano3_closed_poly(vol).eval(&fp.q_rational()))
}

/// Closed form for a spec's family, when one is known.
pub fn chi_closed(family: Family, fp: FrobParams) -> Option<Result<BigInt>> {
    match family {
        Family::DelPezzo { d } => Some(chi_del_pezzo_closed(d, fp)),
        Family::Fano3 { vol } => Some(chi_fano3_closed(vol, fp)),
        Family::Pn { .. } => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// `χ ≤ 0` while the identity gives `h⁰ ≥ 1`.
    HigherCohomologyNonzero,
    /// `χ` is below a supplied lower bound for `h⁰`.
    HigherCohomologyNonzeroGivenH0Bound,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::HigherCohomologyNonzero => "higher cohomology nonzero (not tilting)",
            Verdict::HigherCohomologyNonzeroGivenH0Bound => {
                "higher cohomology nonzero given the h0 bound (not tilting)"
            }
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TiltingVerdict {
    #[serde(with = "bigint_string")]
    pub chi: BigInt,
    pub h0_lower_bound: i64,
    pub verdict: Verdict,
    pub rationale: String,
}

fn display_string<T: fmt::Display, S: serde::Serializer>(x: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

mod bigint_string {
    use num::bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// Reads off what `χ = Σ (-1)^i h^i` forces: if `χ < h⁰` then some odd-degree
/// `H^i` with `i > 0` is nonzero.
pub fn tilting_verdict(chi: &BigInt, h0_lower_bound: i64) -> Result<TiltingVerdict> {
    if h0_lower_bound < 1 {
        return Err(Error::InvalidParameter("h0 lower bound must be at least 1".into()));
    }
    let bound = BigInt::from(h0_lower_bound);
    let (verdict, rationale) = if !chi.is_positive() {
        (
            Verdict::HigherCohomologyNonzero,
            format!("chi = {chi} <= 0 but h0 >= 1 (the identity endomorphism), so H^i != 0 for some i > 0"),
        )
    } else if *chi < bound {
        (
            Verdict::HigherCohomologyNonzeroGivenH0Bound,
            format!("chi = {chi} < {bound} <= h0, so H^i != 0 for some i > 0"),
        )
    } else {
        (
            Verdict::Inconclusive,
            format!("chi = {chi} >= {bound}; the Euler characteristic forces nothing"),
        )
    };
    Ok(TiltingVerdict {
        chi: chi.clone(),
        h0_lower_bound,
        verdict,
        rationale,
    })
}

/// Known lower bound for `h⁰(End F^e_* O_X)` with its justification.
///
/// Always at least 1 from the identity. For smooth cubic surfaces with
/// `q = 2` the bound is 2: F-split cubics have a nontrivial idempotent in
/// `End F_* O_X`, and semicontinuity carries `h⁰ ≥ 2` to the non-F-split
/// special fiber.
pub fn h0_lower_bound(v: &VarietySpec, fp: FrobParams) -> (i64, &'static str) {
    match (v.family(), fp.q()) {
        (Some(Family::DelPezzo { d: 3 }), 2) => (
            2,
            "cubic surface, q = 2: idempotents from F-splitting plus upper semicontinuity give h0 >= 2",
        ),
        _ => (1, "identity endomorphism gives h0 >= 1"),
    }
}

/// Multiplicities `(a, b)` in `F^e_* O_{P²} = O ⊕ O(-1)^a ⊕ O(-2)^b`, read
/// off from rank and first Chern class of the pushforward and cross-checked
/// against [`hilbert_multiplicities`].
pub fn pn_multiplicities(fp: FrobParams) -> Result<(BigInt, BigInt)> {
    let plane = pn_spec(2)?;
    let gens = plane.table().generators().clone();
    let q = fp.q_rational();
    let one = ChernCharacter::trivial(&gens, 2, 1);
    let ch = pushforward_ch(&one, plane.todd(), &q)?;
    let rank = ch.rank();
    // ch_1 = x·c1 = 3x·H; a line-bundle sum O(-j)^{m_j} has ch_1 = -(Σ j m_j) H.
    let c1 = Monomial::parse("c1", &gens)?;
    let weighted = -(ch.element().coeff(&c1) * rat(3));
    // 1 + a + b = rank, a + 2b = weighted
    let b = &weighted - (&rank - BigRational::one());
    let a = &rank - BigRational::one() - &b;
    let (a, b) = (
        into_integer(a).map_err(|_| Error::Inconsistent("non-integral multiplicity a".into()))?,
        into_integer(b).map_err(|_| Error::Inconsistent("non-integral multiplicity b".into()))?,
    );
    if a.is_negative() || b.is_negative() {
        return Err(Error::Inconsistent(format!("negative multiplicities ({a}, {b})")));
    }
    let oracle = hilbert_multiplicities(fp.q())?;
    if oracle != (a.clone(), b.clone()) {
        return Err(Error::Inconsistent(format!(
            "Chern-character multiplicities ({a}, {b}) disagree with Hilbert-function multiplicities ({}, {})",
            oracle.0, oracle.1
        )));
    }
    Ok((a, b))
}

fn h0_plane(m: i64) -> BigInt {
    if m < 0 {
        BigInt::zero()
    } else {
        binomial(BigInt::from(m + 2), BigInt::from(2))
    }
}

/// Multiplicities from `h⁰(O(tq)) = Σ_j m_j h⁰(O(t - j))` on `P²`, solved
/// for `t = 0, 1, 2` and checked at `t = 3`. Works for any `q ≥ 1`.
pub fn hilbert_multiplicities(q: u64) -> Result<(BigInt, BigInt)> {
    let q = q as i64;
    let mut mult: Vec<BigInt> = Vec::new();
    for t in 0..3i64 {
        // h0(O(t - t)) = 1 isolates m_t.
        let known: BigInt = mult
            .iter()
            .enumerate()
            .map(|(j, m)| m * h0_plane(t - j as i64))
            .sum();
        mult.push(h0_plane(t * q) - known);
    }
    let t = 3i64;
    let lhs: BigInt = mult
        .iter()
        .enumerate()
        .map(|(j, m)| m * h0_plane(t - j as i64))
        .sum();
    if lhs != h0_plane(t * q) || !mult[0].is_one() {
        return Err(Error::Inconsistent(
            "Hilbert function is not that of O + O(-1)^a + O(-2)^b".into(),
        ));
    }
    Ok((mult[1].clone(), mult[2].clone()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RestrictionDefect {
    #[serde(serialize_with = "display_string")]
    pub source_dim: BigUint,
    #[serde(serialize_with = "display_string")]
    pub target_dim: BigUint,
    pub surjective_possible: bool,
}

/// Dimension count for `H⁰(P^n, O(m)) → O_{x}/m_x^k`: the source has
/// dimension `C(m+n, n)` (0 for `m < 0`), the jet space `C(k-1+n, n)`.
pub fn restriction_defect(n: u32, m: i64, k: u32) -> Result<RestrictionDefect> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidParameter("need n >= 1 and k >= 1".into()));
    }
    let source_dim = if m < 0 {
        BigUint::zero()
    } else {
        binomial(BigUint::from(m as u64 + n as u64), BigUint::from(n))
    };
    let target_dim = binomial(BigUint::from(k as u64 - 1 + n as u64), BigUint::from(n));
    let surjective_possible = source_dim >= target_dim;
    Ok(RestrictionDefect {
        source_dim,
        target_dim,
        surjective_possible,
    })
}

/// `(q-1)(q-2)/2`.
pub fn expected_b(q: u64) -> BigInt {
    let q = BigInt::from(q);
    (&q - 1) * (&q - 2) / 2
}

/// Sign of a spec's symbolic χ leading coefficient (−1, 0, 1).
pub fn leading_sign(poly: &QPolynomial) -> i8 {
    crate::rational::sign(&poly.leading_coeff())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chow::integrate;
    use crate::frobpush::{chi_frob_end, chi_symbolic};

    fn fp(p: u64, e: u32) -> FrobParams {
        FrobParams::new(p, e).unwrap()
    }

    #[test]
    fn del_pezzo_tables() {
        let s = del_pezzo_spec(3).unwrap();
        let g = s.table().generators().clone();
        assert_eq!(s.table().get(&Monomial::parse("c1^2", &g).unwrap()), Some(&rat(3)));
        assert_eq!(s.table().get(&Monomial::parse("c2", &g).unwrap()), Some(&rat(9)));
        let p2 = del_pezzo_spec(9).unwrap();
        assert_eq!(p2.table().get(&Monomial::parse("c2", &g).unwrap()), Some(&rat(3)));
        assert!(del_pezzo_spec(0).is_err());
        assert!(del_pezzo_spec(10).is_err());
    }

    #[test]
    fn del_pezzo_degree_four_todd_numbers() {
        let s = del_pezzo_spec(4).unwrap();
        let td = s.todd();
        let d1 = td.part(1);
        let d2 = td.part(2);
        let d1sq = d1.mul(&d1).unwrap();
        assert_eq!(integrate(&d1sq, s.table()).unwrap(), rat(1));
        assert_eq!(integrate(&d2, s.table()).unwrap(), rat(1));
        let combo = d2.scale(&rat(2)).sub(&d1sq).unwrap();
        assert_eq!(integrate(&combo, s.table()).unwrap(), rat(1));
    }

    #[test]
    fn fano3_tables_and_missing_c3() {
        let s = fano3_spec(22).unwrap();
        let td = s.todd();
        let d1 = td.part(1);
        let d2 = td.part(2);
        assert_eq!(integrate(&d1.pow(3), s.table()).unwrap(), ratio(22, 8));
        assert_eq!(
            integrate(&d2.mul(&d1).unwrap(), s.table()).unwrap(),
            ratio(22, 24) + rat(1)
        );
        assert_eq!(integrate(&td.part(3), s.table()).unwrap(), rat(1));
        let g = s.table().generators().clone();
        let c3 = GradedElement::generator(&g, 3, "c3").unwrap();
        assert_eq!(
            integrate(&c3, s.table()),
            Err(Error::MissingIntersection("c3".into()))
        );
        assert!(fano3_spec(0).is_err());
        assert!(fano3_spec(23).is_err());
    }

    #[test]
    fn p3_matches_fano3_volume_64() {
        let p3 = pn_spec(3).unwrap();
        let f = fano3_spec(64).unwrap();
        for (p, e) in [(2, 1), (3, 1), (2, 2)] {
            assert_eq!(
                chi_frob_end(&p3, fp(p, e)).unwrap(),
                chi_frob_end(&f, fp(p, e)).unwrap()
            );
        }
        let lead = chi_symbolic(&f).unwrap().leading_coeff();
        assert_eq!(lead, ratio(5, 3));
    }

    #[test]
    fn pn_table_values() {
        let p2 = pn_spec(2).unwrap();
        let g = p2.table().generators().clone();
        assert_eq!(p2.table().get(&Monomial::parse("c1^2", &g).unwrap()), Some(&rat(9)));
        assert_eq!(p2.table().get(&Monomial::parse("c2", &g).unwrap()), Some(&rat(3)));
        let p4 = pn_spec(4).unwrap();
        let g = p4.table().generators().clone();
        assert_eq!(p4.table().get(&Monomial::parse("c4", &g).unwrap()), Some(&rat(5)));
        assert_eq!(p4.table().get(&Monomial::parse("c1^2*c2", &g).unwrap()), Some(&rat(250)));
        assert_eq!(partitions_by_degree(4).len(), 5);
    }

    #[test]
    fn family_mismatch_rejected() {
        let gens = Generators::chern(2);
        let mut t = IntersectionTable::new(&gens, 2);
        t.set("c1^2", rat(5)).unwrap();
        t.set("c2", rat(7)).unwrap();
        assert!(VarietySpec::new("x", t.clone(), Some(Family::DelPezzo { d: 4 })).is_err());
        assert!(VarietySpec::new("x", t.clone(), Some(Family::Fano3 { vol: 4 })).is_err());
        assert!(VarietySpec::new("x", t, Some(Family::DelPezzo { d: 5 })).is_ok());
    }

    #[test]
    fn spec_requires_chern_generators() {
        let gens = Generators::indexed("x", 2);
        let t = IntersectionTable::new(&gens, 2);
        assert!(matches!(VarietySpec::new("x", t, None), Err(Error::Structure(_))));
    }

    #[test]
    fn closed_form_points() {
        assert_eq!(chi_del_pezzo_closed(3, fp(2, 1)).unwrap(), BigInt::from(1));
        assert_eq!(chi_del_pezzo_closed(1, fp(2, 1)).unwrap(), BigInt::from(-5));
        assert_eq!(chi_del_pezzo_closed(1, fp(3, 1)).unwrap(), BigInt::from(-45));
        assert_eq!(chi_fano3_closed(24, fp(5, 2)).unwrap(), BigInt::from(5u64.pow(8)));
        assert!(chi_del_pezzo_closed(0, fp(2, 1)).is_err());
    }

    #[test]
    fn verdicts() {
        let v = tilting_verdict(&BigInt::from(-5), 1).unwrap();
        assert_eq!(v.verdict, Verdict::HigherCohomologyNonzero);
        let v = tilting_verdict(&BigInt::from(0), 1).unwrap();
        assert_eq!(v.verdict, Verdict::HigherCohomologyNonzero);
        let v = tilting_verdict(&BigInt::from(1), 2).unwrap();
        assert_eq!(v.verdict, Verdict::HigherCohomologyNonzeroGivenH0Bound);
        let v = tilting_verdict(&BigInt::from(1), 1).unwrap();
        assert_eq!(v.verdict, Verdict::Inconclusive);
        assert!(tilting_verdict(&BigInt::from(1), 0).is_err());
        let json = serde_json::to_string(&tilting_verdict(&BigInt::from(-5), 1).unwrap()).unwrap();
        let back: TiltingVerdict = serde_json::from_str(&json).unwrap();
        assert_eq!(back.chi, BigInt::from(-5));
    }

    #[test]
    fn cubic_h0_bound() {
        let cubic = del_pezzo_spec(3).unwrap();
        assert_eq!(h0_lower_bound(&cubic, fp(2, 1)).0, 2);
        assert_eq!(h0_lower_bound(&cubic, fp(3, 1)).0, 1);
        assert_eq!(h0_lower_bound(&del_pezzo_spec(2).unwrap(), fp(2, 1)).0, 1);
    }

    #[test]
    fn plane_multiplicities() {
        assert_eq!(
            pn_multiplicities(fp(2, 1)).unwrap(),
            (BigInt::from(3), BigInt::from(0))
        );
        assert_eq!(
            pn_multiplicities(fp(3, 1)).unwrap(),
            (BigInt::from(7), BigInt::from(1))
        );
        assert_eq!(hilbert_multiplicities(1).unwrap(), (BigInt::from(0), BigInt::from(0)));
    }

    #[test]
    fn restriction_examples() {
        let r = restriction_defect(2, 1, 3).unwrap();
        assert_eq!((r.source_dim, r.target_dim, r.surjective_possible), (3u32.into(), 6u32.into(), false));
        let r = restriction_defect(2, 0, 2).unwrap();
        assert_eq!((r.source_dim, r.target_dim, r.surjective_possible), (1u32.into(), 3u32.into(), false));
        let r = restriction_defect(1, 5, 3).unwrap();
        assert_eq!((r.source_dim, r.target_dim, r.surjective_possible), (6u32.into(), 3u32.into(), true));
        let r = restriction_defect(2, -3, 1).unwrap();
        assert_eq!(r.source_dim, BigUint::zero());
        assert!(restriction_defect(0, 1, 1).is_err());
    }
}
