//! Golden checks for every published formula and value the engine
//! reproduces. Backs the `verify` CLI subcommand.

use num::bigint::BigInt;
use num::rational::BigRational;
use serde::Serialize;

use crate::catalog::{
    del_pezzo_closed_poly, del_pezzo_spec, fano3_closed_poly, fano3_spec, leading_sign, restriction_defect,
    tilting_verdict, Verdict,
};
use crate::chow::{integrate, GradedElement, Generators};
use crate::classes::{adams_inverse, ChernCharacter, ToddClass};
use crate::diffop::verify_paper_example;
use crate::error::Result;
use crate::frobpush::{chi_frob_end, chi_symbolic, frob_end_ch, pushforward_ch, FrobParams};
use crate::rational::{pow, rat, ratio};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReproItem {
    pub id: String,
    pub citation: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReproReport {
    pub items: Vec<ReproItem>,
}

impl ReproReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }
}

struct Collector(Vec<ReproItem>);

impl Collector {
    fn record(&mut self, id: &str, citation: &str, outcome: Result<(bool, String)>) {
        let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
        self.0.push(ReproItem {
            id: id.into(),
            citation: citation.into(),
            passed,
            detail,
        });
    }
}

const GRID_P: [u64; 4] = [2, 3, 5, 7];
const GRID_E: [u32; 3] = [1, 2, 3];

fn grid() -> impl Iterator<Item = FrobParams> {
    GRID_P
        .into_iter()
        .flat_map(|p| GRID_E.into_iter().map(move |e| FrobParams::new(p, e).expect("grid is valid")))
}

/// Runs every check with the engine's own Todd class.
pub fn run_all() -> ReproReport {
    run_with_todd(&ToddClass::universal)
}

/// Runs every check, taking the universal Todd class from `todd`. Swapping
/// in a wrong Todd class must make the Todd-dependent checks fail.
pub fn run_with_todd(todd: &dyn Fn(u32) -> ToddClass) -> ReproReport {
    let mut c = Collector(Vec::new());

    c.record(
        "todd-low-degrees",
        "td = 1 + c1/2 + (c1^2 + c2)/12 + c1 c2/24",
        (|| {
            let td = todd(3);
            let want = reference_todd_parts(3)?;
            Ok((
                (1..=3).all(|k| td.part(k) == want[k - 1]),
                format!("engine: {}", td.element()),
            ))
        })(),
    );

    c.record(
        "inverse-todd",
        "1/td = 1 - d1 + (d1^2 - d2) + (2 d2 d1 - d1^3 - d3) + ...",
        (|| {
            // Generic presentation.
            let generic = ToddClass::generic(3);
            let g = generic.element().generators().clone();
            let want = GradedElement::from_terms(
                &g,
                3,
                [
                    ("1", rat(1)),
                    ("d1", rat(-1)),
                    ("d1^2", rat(1)),
                    ("d2", rat(-1)),
                    ("d1*d2", rat(2)),
                    ("d1^3", rat(-1)),
                    ("d3", rat(-1)),
                ],
            )?;
            let generic_ok = generic.element().invert()? == want;
            // Same expansion in Chern generators, with d_i the displayed Todd polynomials.
            let d = reference_todd_parts(3)?;
            let cg = d[0].generators().clone();
            let one = GradedElement::one(&cg, 3);
            let d1sq = d[0].mul(&d[0])?;
            let expr = one
                .sub(&d[0])?
                .add(&d1sq.sub(&d[1])?)?
                .add(&d[1].mul(&d[0])?.scale(&rat(2)).sub(&d1sq.mul(&d[0])?)?.sub(&d[2])?)?;
            let chern_ok = todd(3).element().invert()? == expr;
            Ok((generic_ok && chern_ok, format!("generic: {generic_ok}, Chern: {chern_ok}")))
        })(),
    );

    c.record(
        "expansion-product",
        "psi^{-1}(td) / td = 1 + (q^-1 - 1) d1 + (q^-2 - 1) d2 - (q^-1 - 1) d1^2 + ...",
        (|| {
            let td = ToddClass::generic(3);
            let g = td.element().generators().clone();
            let mut ok = true;
            for q in [rat(2), rat(3), rat(5), ratio(7, 2)] {
                let prod = adams_inverse(&q, td.element())?.mul(&td.element().invert()?)?;
                let a = pow(&q, -1) - rat(1);
                let b = pow(&q, -2) - rat(1);
                let want = GradedElement::from_terms(&g, 3, [("1", rat(1)), ("d1", a.clone()), ("d2", b), ("d1^2", -a)])?;
                ok &= (0..=2).all(|k| prod.homogeneous_part(k) == want.homogeneous_part(k));
            }
            Ok((ok, "checked at q = 2, 3, 5, 7/2 through degree 2".into()))
        })(),
    );

    c.record(
        "adams-inverse",
        "psi^{-1}_q(td) = 1 + q^-1 d1 + q^-2 d2 + q^-3 d3",
        (|| {
            let td = ToddClass::generic(3);
            let g = td.element().generators().clone();
            let q = rat(4);
            let want = GradedElement::from_terms(
                &g,
                3,
                [("1", rat(1)), ("d1", ratio(1, 4)), ("d2", ratio(1, 16)), ("d3", ratio(1, 64))],
            )?;
            Ok((adams_inverse(&q, td.element())? == want, "q = 4".into()))
        })(),
    );

    c.record(
        "line-bundle-character",
        "ch(L) = exp(c1(L)) and ch_i(E*) = (-1)^i ch_i(E)",
        (|| {
            let g = Generators::indexed("H", 1);
            let h = GradedElement::generator(&g, 2, "H1")?;
            let ch = ChernCharacter::line(&h)?;
            let want = GradedElement::from_terms(&g, 2, [("1", rat(1)), ("H1", rat(1)), ("H1^2", ratio(1, 2))])?;
            let dual = GradedElement::from_terms(&g, 2, [("1", rat(1)), ("H1", rat(-1)), ("H1^2", ratio(1, 2))])?;
            Ok((ch.element() == &want && ch.dual().element() == &dual, format!("ch = {}", ch.element())))
        })(),
    );

    c.record(
        "end-character",
        "ch(End E) = ch_0^2 + (2 ch_2 ch_0 - ch_1^2) + ..., odd degrees vanish",
        (|| {
            let g = Generators::indexed("e", 3);
            let e1 = GradedElement::generator(&g, 3, "e1")?;
            let e2 = GradedElement::generator(&g, 3, "e2")?;
            let e3 = GradedElement::generator(&g, 3, "e3")?;
            let ch = GradedElement::constant(&g, 3, rat(5)).add(&e1)?.add(&e2)?.add(&e3)?;
            let end = ChernCharacter::from_element(ch).end_character();
            let want = GradedElement::constant(&g, 3, rat(25)).add(&e2.scale(&rat(10)).sub(&e1.mul(&e1)?)?)?;
            Ok((end.element() == &want, format!("{}", end.element())))
        })(),
    );

    c.record(
        "pushforward-structure-sheaf",
        "ch(F_* O) = q^n + (q^{n-1} - q^n) d1 + (q^{n-2} - q^n) d2 - (q^{n-1} - q^n) d1^2 + ...",
        (|| {
            let mut ok = true;
            for n in 2..=4u32 {
                let td = ToddClass::generic(n);
                let g = td.element().generators().clone();
                for qi in [2i64, 3, 9] {
                    let q = rat(qi);
                    let ni = n as i32;
                    let one = ChernCharacter::trivial(&g, n as usize, 1);
                    let ch = pushforward_ch(&one, &td, &q)?;
                    let a = pow(&q, ni - 1) - pow(&q, ni);
                    let b = pow(&q, ni - 2) - pow(&q, ni);
                    let want = GradedElement::from_terms(
                        &g,
                        n as usize,
                        [("1", pow(&q, ni)), ("d1", a.clone()), ("d2", b), ("d1^2", -a)],
                    )?;
                    ok &= (0..=2).all(|k| ch.element().homogeneous_part(k) == want.homogeneous_part(k));
                }
            }
            Ok((ok, "n = 2, 3, 4; q = 2, 3, 9".into()))
        })(),
    );

    c.record(
        "end-pushforward-degree-two",
        "ch(End F_* O) = q^{2n} + (q^{2(n-1)} - q^{2n})(2 d2 - d1^2) + ..., odd terms 0",
        (|| {
            let mut ok = true;
            for n in 2..=4u32 {
                let td = ToddClass::generic(n);
                let g = td.element().generators().clone();
                let q = rat(3);
                let ni = n as i32;
                let end = frob_end_ch(&td, &q)?;
                let c = pow(&q, 2 * (ni - 1)) - pow(&q, 2 * ni);
                let want = GradedElement::from_terms(
                    &g,
                    n as usize,
                    [("1", pow(&q, 2 * ni)), ("d2", c.clone() * rat(2)), ("d1^2", -c)],
                )?;
                ok &= (0..=2).all(|k| end.element().homogeneous_part(k) == want.homogeneous_part(k));
                ok &= (1..=n as usize).step_by(2).all(|k| end.element().component(k).is_empty());
            }
            Ok((ok, "n = 2, 3, 4 at q = 3".into()))
        })(),
    );

    c.record(
        "del-pezzo-todd-numbers",
        "degree-d del Pezzo: c1^2 = d, d1^2 = d/4, d2 = 1, 2 d2 - d1^2 = 2 - d/4",
        (|| {
            let mut ok = true;
            for d in 1..=9u32 {
                let s = del_pezzo_spec(d)?;
                let d1 = s.todd().part(1);
                let d2 = s.todd().part(2);
                let d1sq = integrate(&d1.mul(&d1)?, s.table())?;
                let d2v = integrate(&d2, s.table())?;
                ok &= d1sq == ratio(d as i64, 4) && d2v == rat(1);
                ok &= &d2v * rat(2) - &d1sq == rat(2) - ratio(d as i64, 4);
            }
            Ok((ok, "d = 1..9".into()))
        })(),
    );

    c.record(
        "fano3-todd-numbers",
        "Fano threefold: d1^3 = vol/8, c1 c2 = 24, d3 = 1, d2 d1 = vol/24 + 1, (2 d2 - d1^2) d1 = (48 - vol)/24",
        (|| {
            let mut ok = true;
            for vol in (2..=64u32).step_by(2) {
                let s = fano3_spec(vol)?;
                let td = s.todd();
                let (d1, d2, d3) = (td.part(1), td.part(2), td.part(3));
                let v = rat(vol as i64);
                ok &= integrate(&d1.pow(3), s.table())? == &v / rat(8);
                ok &= integrate(&d3, s.table())? == rat(1);
                ok &= integrate(&d2.mul(&d1)?, s.table())? == &v / rat(24) + rat(1);
                let combo = d2.scale(&rat(2)).sub(&d1.mul(&d1)?)?.mul(&d1)?;
                ok &= integrate(&combo, s.table())? == (rat(48) - &v) / rat(24);
            }
            Ok((ok, "vol = 2, 4, ..., 64".into()))
        })(),
    );

    c.record(
        "cubic-char-two",
        "cubic surface, p = 2, e = 1: chi(End F_* O) = 1",
        (|| {
            let chi = chi_frob_end(&del_pezzo_spec(3)?, FrobParams::new(2, 1)?)?;
            Ok((chi == BigInt::from(1), format!("chi = {chi}")))
        })(),
    );

    c.record(
        "degree-four-chi",
        "degree-4 del Pezzo: chi(End F^e_* O) = p^{2e}",
        (|| {
            let s = del_pezzo_spec(4)?;
            let mut ok = true;
            for fp in grid() {
                ok &= chi_frob_end(&s, fp)? == BigInt::from(fp.q()).pow(2);
            }
            Ok((ok, "p in {2,3,5,7}, e in {1,2,3}".into()))
        })(),
    );

    c.record(
        "del-pezzo-closed-form",
        "chi = p^{4e} (d - 4)/4 + p^{2e} (8 - d)/4",
        (|| {
            let mut ok = true;
            for d in 1..=9u32 {
                ok &= chi_symbolic(&del_pezzo_spec(d)?)? == del_pezzo_closed_poly(d);
            }
            Ok((ok, "interpolated polynomial equals the closed form for d = 1..9".into()))
        })(),
    );

    c.record(
        "fano3-closed-form",
        "chi = p^{6e} (vol - 24)/24 + p^{4e} (48 - vol)/24",
        (|| {
            let mut ok = true;
            for vol in (2..=64u32).step_by(2) {
                ok &= chi_symbolic(&fano3_spec(vol)?)? == fano3_closed_poly(vol);
            }
            Ok((ok, "interpolated polynomial equals the closed form for vol = 2..64".into()))
        })(),
    );

    c.record(
        "negativity",
        "d <= 3 and (p, e) != (2, 1): chi < 0; d <= 2 at (2, 1): chi <= 0",
        (|| {
            let mut ok = true;
            for d in 1..=3u32 {
                let s = del_pezzo_spec(d)?;
                for fp in grid() {
                    let chi = chi_frob_end(&s, fp)?;
                    if (fp.p(), fp.e()) == (2, 1) {
                        if d <= 2 {
                            ok &= chi <= BigInt::from(0);
                        }
                    } else {
                        ok &= chi < BigInt::from(0);
                    }
                }
            }
            Ok((ok, "p in {2,3,5,7}, e in {1,2,3}".into()))
        })(),
    );

    c.record(
        "leading-sign",
        "leading term negative exactly when d < 4 (surfaces) or vol < 24 (threefolds)",
        (|| {
            let mut ok = true;
            for d in 1..=9u32 {
                ok &= (leading_sign(&chi_symbolic(&del_pezzo_spec(d)?)?) < 0) == (d < 4);
            }
            for vol in (2..=64u32).step_by(2) {
                ok &= (leading_sign(&chi_symbolic(&fano3_spec(vol)?)?) < 0) == (vol < 24);
            }
            Ok((ok, "d = 1..9, vol = 2..64".into()))
        })(),
    );

    c.record(
        "h0-bound-argument",
        "chi = 1 with h0 > 1 forces higher cohomology; chi <= 0 with the identity section does too",
        (|| {
            let a = tilting_verdict(&BigInt::from(1), 2)?.verdict == Verdict::HigherCohomologyNonzeroGivenH0Bound;
            let b = tilting_verdict(&BigInt::from(0), 1)?.verdict == Verdict::HigherCohomologyNonzero;
            Ok((a && b, String::new()))
        })(),
    );

    c.record(
        "restriction-never-surjective",
        "H^0(O_{P^n}(m)) -> O/m_x^{m+2} is never surjective",
        (|| {
            let mut ok = true;
            for n in 1..=5u32 {
                for m in 0..=50i64 {
                    ok &= !restriction_defect(n, m, m as u32 + 2)?.surjective_possible;
                }
            }
            Ok((ok, "n = 1..5, m = 0..50".into()))
        })(),
    );

    let diff = verify_paper_example();
    c.record(
        "splitting-embedding",
        "i and j differ on d/dt over F_2[t]; j(d/dt) = D^[2] + t D^[3]",
        Ok((
            diff.passed(),
            diff.checks
                .iter()
                .map(|ch| format!("{}: {}", ch.name, if ch.passed { "ok" } else { "FAILED" }))
                .collect::<Vec<_>>()
                .join("; "),
        )),
    );

    ReproReport { items: c.0 }
}

/// `[c1/2, (c1^2 + c2)/12, c1 c2/24]` in generators `c1..cn`, written out by hand.
fn reference_todd_parts(n: u32) -> Result<Vec<GradedElement>> {
    let g = Generators::chern(n);
    let nb = n as usize;
    let terms: [&[(&str, BigRational)]; 3] = [
        &[("c1", ratio(1, 2))],
        &[("c1^2", ratio(1, 12)), ("c2", ratio(1, 12))],
        &[("c1*c2", ratio(1, 24))],
    ];
    terms
        .iter()
        .map(|t| GradedElement::from_terms(&g, nb, t.iter().map(|(m, c)| (*m, c.clone()))))
        .collect()
}
