#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use frobtilt::chow::{GradedElement, Generators, Monomial};
use frobtilt::diffop::{FpPoly, OperatorMatrix};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use rand::Rng;

pub fn r(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rq(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// All monomials of total degree `<= bound`.
pub fn monomials_up_to(gens: &Generators, bound: usize) -> Vec<Monomial> {
    fn go(gens: &Generators, i: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == gens.len() {
            out.push(Monomial::from_exponents(cur.clone()));
            return;
        }
        let deg = gens.get(i).degree as usize;
        for e in 0..=left / deg {
            cur.push(e as u32);
            go(gens, i + 1, left - e * deg, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(gens, 0, bound, &mut Vec::new(), &mut out);
    out
}

/// Random element with small integer (occasionally half-integer) coefficients.
pub fn random_element(rng: &mut impl Rng, gens: &Arc<Generators>, bound: usize, constant: Option<BigRational>) -> GradedElement {
    let mut x = GradedElement::zero(gens, bound);
    for m in monomials_up_to(gens, bound) {
        if m == Monomial::one(gens) {
            continue;
        }
        if rng.gen_bool(0.6) {
            x.add_term(m, rq(rng.gen_range(-5..=5), rng.gen_range(1..=2)));
        }
    }
    let c = constant.unwrap_or_else(|| r(rng.gen_range(-4..=4)));
    x.add_term(Monomial::one(gens), c);
    x
}

/// Random element of `D^(e)` over `F_p[t]`: a random polynomial-coefficient
/// combination of divided powers.
pub fn random_operator(rng: &mut impl Rng, p: u64, e: u32) -> OperatorMatrix {
    let q = p.pow(e);
    let mut acc = OperatorMatrix::from_action(&|f: &FpPoly| FpPoly::zero(f.characteristic()), p, e).unwrap();
    for k in 0..q {
        if rng.gen_bool(0.5) {
            let coeffs: Vec<u64> = (0..3).map(|_| rng.gen_range(0..p)).collect();
            let r = OperatorMatrix::multiplication(&FpPoly::new(p, coeffs), e).unwrap();
            let d = OperatorMatrix::divided_power(p, e, k).unwrap();
            acc = acc.add(&r.compose(&d).unwrap()).unwrap();
        }
    }
    acc
}

pub fn random_fp_poly(rng: &mut impl Rng, p: u64, max_deg: usize) -> FpPoly {
    let len = rng.gen_range(0..=max_deg + 1);
    FpPoly::new(p, (0..len).map(|_| rng.gen_range(0..p)).collect())
}

// ---- Todd oracle via four formal Chern roots ----

type RootPoly = BTreeMap<[u32; 4], BigRational>;

fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |a, i| a * BigInt::from(i))
}

/// Coefficients of `x / (1 - e^{-x})` through `x^deg`, by inverting the
/// power series `(1 - e^{-x}) / x = Σ (-1)^k x^k / (k+1)!`.
pub fn single_root_todd_series(deg: usize) -> Vec<BigRational> {
    let a: Vec<BigRational> = (0..=deg)
        .map(|k| {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            BigRational::new(BigInt::from(sign), factorial(k as u32 + 1))
        })
        .collect();
    let mut b = vec![BigRational::one() / &a[0]];
    for k in 1..=deg {
        let s: BigRational = (1..=k).map(|j| &a[j] * &b[k - j]).sum();
        b.push(-s / &a[0]);
    }
    b
}

fn root_mul(x: &RootPoly, y: &RootPoly, max_deg: u32) -> RootPoly {
    let mut out = RootPoly::new();
    for (mx, cx) in x {
        for (my, cy) in y {
            let m = [mx[0] + my[0], mx[1] + my[1], mx[2] + my[2], mx[3] + my[3]];
            if m.iter().sum::<u32>() > max_deg {
                continue;
            }
            *out.entry(m).or_insert_with(BigRational::zero) += cx * cy;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn elementary(k: usize) -> RootPoly {
    let mut out = RootPoly::new();
    for mask in 0u32..16 {
        if mask.count_ones() as usize == k {
            let mut m = [0u32; 4];
            for (i, slot) in m.iter_mut().enumerate() {
                *slot = (mask >> i) & 1;
            }
            out.insert(m, BigRational::one());
        }
    }
    out
}

fn homogeneous(x: &RootPoly, deg: u32) -> RootPoly {
    x.iter()
        .filter(|(m, _)| m.iter().sum::<u32>() == deg)
        .map(|(m, c)| (*m, c.clone()))
        .collect()
}

/// Solves `A x = b` exactly (A has full column rank); returns `None` if the
/// system is inconsistent.
fn solve(mut rows: Vec<Vec<BigRational>>, cols: usize) -> Option<Vec<BigRational>> {
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..cols {
        let Some(pr) = (pivot_row..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, pr);
        let inv = rows[pivot_row][col].recip();
        for v in rows[pivot_row].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows.len() {
            if i != pivot_row && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                let base = rows[pivot_row].clone();
                for (v, b) in rows[i].iter_mut().zip(base) {
                    *v -= &f * b;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    // consistency: zero rows must have zero rhs
    if rows[pivot_row..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (i, col) in pivots.iter().enumerate() {
        x[*col] = rows[i][cols].clone();
    }
    Some(x)
}

/// Partitions of `deg` into parts `<= 4`, as exponent vectors over `c1..c4`.
fn chern_monomials(deg: u32) -> Vec<[u32; 4]> {
    let mut out = Vec::new();
    for a in 0..=deg {
        for b in 0..=deg / 2 {
            for c in 0..=deg / 3 {
                for d in 0..=deg / 4 {
                    if a + 2 * b + 3 * c + 4 * d == deg {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

/// `td_deg` as a map from Chern exponent vectors `[e1, e2, e3, e4]` to
/// coefficients, obtained by expanding `Π x_i / (1 - e^{-x_i})` in four
/// roots and re-expressing in elementary symmetric polynomials.
pub fn todd_by_roots(deg: u32) -> BTreeMap<[u32; 4], BigRational> {
    let series = single_root_todd_series(deg as usize);
    let mut prod = RootPoly::new();
    prod.insert([0; 4], BigRational::one());
    for i in 0..4 {
        let mut f = RootPoly::new();
        for (k, c) in series.iter().enumerate() {
            let mut m = [0u32; 4];
            m[i] = k as u32;
            f.insert(m, c.clone());
        }
        prod = root_mul(&prod, &f, deg);
    }
    let target = homogeneous(&prod, deg);

    let basis = chern_monomials(deg);
    let e: Vec<RootPoly> = (1..=4).map(elementary).collect();
    let expanded: Vec<RootPoly> = basis
        .iter()
        .map(|exps| {
            let mut acc = RootPoly::new();
            acc.insert([0; 4], BigRational::one());
            for (i, k) in exps.iter().enumerate() {
                for _ in 0..*k {
                    acc = root_mul(&acc, &e[i], deg);
                }
            }
            acc
        })
        .collect();
    let mut keys: Vec<[u32; 4]> = target.keys().copied().collect();
    for ex in &expanded {
        keys.extend(ex.keys().copied());
    }
    keys.sort();
    keys.dedup();
    let rows: Vec<Vec<BigRational>> = keys
        .iter()
        .map(|k| {
            let mut row: Vec<BigRational> = expanded
                .iter()
                .map(|ex| ex.get(k).cloned().unwrap_or_else(BigRational::zero))
                .collect();
            row.push(target.get(k).cloned().unwrap_or_else(BigRational::zero));
            row
        })
        .collect();
    let x = solve(rows, basis.len()).expect("Todd polynomial is symmetric");
    basis
        .into_iter()
        .zip(x)
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

/// Converts an engine element in `c1..c4` into the oracle's exponent map.
pub fn as_chern_map(x: &GradedElement, deg: usize) -> BTreeMap<[u32; 4], BigRational> {
    x.component(deg)
        .iter()
        .map(|(m, c)| {
            let mut key = [0u32; 4];
            for (i, e) in m.exponents().iter().enumerate() {
                key[i] = *e;
            }
            (key, c.clone())
        })
        .collect()
}
