//! Multivariate polynomial GCD via content/primitive-part recursion with a
//! subresultant pseudo-remainder sequence, plus a certified coprimality fast
//! path based on degree-preserving univariate projections.

use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use super::poly::{Mono, Poly};
use super::vars::Var;

/// GCD of two polynomials over Q, normalized to be integer-primitive with a
/// positive leading coefficient. gcd(0, b) = normalized b.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return normalize(b);
    }
    if b.is_zero() {
        return normalize(a);
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let mut vars = a.vars();
    for v in b.vars() {
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    vars.sort();
    if likely_coprime(a, b, &vars) {
        return Poly::one();
    }
    normalize(&gcd_rec(a, b, &vars))
}

fn normalize(p: &Poly) -> Poly {
    if p.is_zero() {
        return Poly::zero();
    }
    let (_, mut prim) = p.primitive_decompose();
    if prim.leading().map(|(_, c)| c.is_negative()).unwrap_or(false) {
        prim = prim.neg();
    }
    prim
}

/// Certified test that gcd(a, b) is constant: for each variable, find a
/// substitution of the remaining variables preserving both leading degrees;
/// if the univariate gcd then has degree zero, the true gcd has degree zero
/// in that variable. Soundness does not depend on randomness.
fn likely_coprime(a: &Poly, b: &Poly, vars: &[Var]) -> bool {
    if vars.len() < 2 {
        return false; // univariate handled by the PRS directly
    }
    let mut seed: u64 = 0x9e3779b97f4a7c15;
    for &v in vars {
        let da = a.degree_in(v);
        let db = b.degree_in(v);
        if da == 0 || db == 0 {
            // The gcd divides both, so its degree in v is already 0.
            continue;
        }
        let mut ok = false;
        for _attempt in 0..8 {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let mut assign: Vec<(Var, BigInt)> = Vec::new();
            let mut s = seed;
            for &w in vars {
                if w == v {
                    continue;
                }
                s = s.wrapping_mul(2862933555777941757).wrapping_add(3037000493);
                let val = ((s >> 33) % 2048) as i64 - 1024;
                assign.push((w, BigInt::from(if val == 0 { 7 } else { val })));
            }
            let ua = project(a, v, &assign);
            let ub = project(b, v, &assign);
            if univ_degree(&ua) != da as i64 || univ_degree(&ub) != db as i64 {
                continue;
            }
            if univ_gcd_degree(&ua, &ub) == 0 {
                ok = true;
            }
            break;
        }
        if !ok {
            return false;
        }
    }
    true
}

/// Substitute integers for all variables except `v`; result as dense
/// univariate coefficient vector indexed by the exponent of `v`.
fn project(p: &Poly, v: Var, assign: &[(Var, BigInt)]) -> Vec<BigRational> {
    let deg = p.degree_in(v) as usize;
    let mut out = vec![BigRational::zero(); deg + 1];
    for (m, c) in &p.terms {
        let (e, rest) = m.split(v);
        let mut val = c.clone();
        for &(w, k) in &rest.0 {
            let x = assign
                .iter()
                .find(|&&(aw, _)| aw == w)
                .map(|(_, b)| b.clone())
                .expect("projection assignment must cover all other variables");
            let mut pw = BigInt::one();
            for _ in 0..k {
                pw *= &x;
            }
            val *= BigRational::from_integer(pw);
        }
        out[e as usize] += val;
    }
    out
}

fn univ_degree(c: &[BigRational]) -> i64 {
    for i in (0..c.len()).rev() {
        if !c[i].is_zero() {
            return i as i64;
        }
    }
    -1
}

fn univ_gcd_degree(a: &[BigRational], b: &[BigRational]) -> i64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    loop {
        let db = univ_degree(&b);
        if db < 0 {
            return univ_degree(&a);
        }
        let da = univ_degree(&a);
        if da < db {
            std::mem::swap(&mut a, &mut b);
            continue;
        }
        // a <- a mod b
        let lb = b[db as usize].clone();
        for shift in (0..=(da - db) as usize).rev() {
            let la = a[db as usize + shift].clone();
            if la.is_zero() {
                continue;
            }
            let q = la / &lb;
            for i in 0..=db as usize {
                let t = &b[i] * &q;
                a[i + shift] -= t;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
}

fn gcd_rec(a: &Poly, b: &Poly, vars: &[Var]) -> Poly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    // Main variable: the last one that actually occurs in either operand.
    let v = *vars
        .iter()
        .rev()
        .find(|&&v| a.degree_in(v) > 0 || b.degree_in(v) > 0)
        .expect("nonconstant polynomials must have a variable");
    let rest: Vec<Var> = vars.iter().copied().filter(|&w| w != v).collect();

    let ca = a.coeffs_in(v);
    let cb = b.coeffs_in(v);
    let cont_a = content(&ca, &rest);
    let cont_b = content(&cb, &rest);
    let prim_a = divide_coeffs(&ca, &cont_a);
    let prim_b = divide_coeffs(&cb, &cont_b);
    let cont_gcd = gcd_rec(&cont_a, &cont_b, &rest);

    let prim_gcd = subresultant_prs(prim_a, prim_b, v, &rest);
    cont_gcd.mul(&prim_gcd)
}

fn content(coeffs: &BTreeMap<u32, Poly>, rest: &[Var]) -> Poly {
    let mut g = Poly::zero();
    for p in coeffs.values() {
        g = gcd_rec(&g, p, rest);
        if g.is_constant() && !g.is_zero() {
            return Poly::one();
        }
    }
    normalize(&g)
}

fn divide_coeffs(coeffs: &BTreeMap<u32, Poly>, divisor: &Poly) -> BTreeMap<u32, Poly> {
    coeffs
        .iter()
        .map(|(e, p)| {
            (*e, p.div_exact(divisor).expect("content must divide every coefficient"))
        })
        .collect()
}

/// Subresultant PRS on primitive inputs, univariate in `v` over Q[rest].
fn subresultant_prs(
    fa: BTreeMap<u32, Poly>,
    fb: BTreeMap<u32, Poly>,
    v: Var,
    rest: &[Var],
) -> Poly {
    let (mut r0, mut r1) = if deg(&fa) >= deg(&fb) { (fa, fb) } else { (fb, fa) };
    let mut g = Poly::one();
    let mut h = Poly::one();
    loop {
        let d0 = deg(&r0);
        let d1 = deg(&r1);
        if d1 < 0 {
            // r0 is the gcd of the primitive parts (up to content in rest).
            let p = Poly::from_coeffs_in(v, &r0);
            let cont = content(&r0, rest);
            return normalize(&p.div_exact(&cont).expect("content divides"));
        }
        let delta = (d0 - d1) as u32;
        let rem = pseudo_rem(&r0, &r1, v);
        if deg(&rem) < 0 && d1 == 0 {
            return Poly::one();
        }
        // divisor = g * h^delta
        let mut divisor = g.clone();
        for _ in 0..delta {
            divisor = divisor.mul(&h);
        }
        let next: BTreeMap<u32, Poly> = rem
            .iter()
            .map(|(e, p)| (*e, p.div_exact(&divisor).expect("subresultant divisor divides")))
            .filter(|(_, p)| !p.is_zero())
            .collect();
        g = lead(&r1);
        // h = g^delta * h^(1-delta)  (computed exactly)
        h = if delta == 0 {
            h
        } else {
            let mut num = g.pow(delta);
            for _ in 1..delta {
                num = num.div_exact(&h).expect("subresultant h update divides");
            }
            num
        };
        r0 = r1;
        r1 = next;
    }
}

fn deg(f: &BTreeMap<u32, Poly>) -> i64 {
    f.keys().next_back().map_or(-1, |&e| e as i64)
}

fn lead(f: &BTreeMap<u32, Poly>) -> Poly {
    f.values().next_back().cloned().unwrap_or_else(Poly::zero)
}

/// Pseudo-remainder of f by g in the main variable `v`:
/// prem = (lc_g^(deg f - deg g + 1) * f) mod g.
fn pseudo_rem(
    f: &BTreeMap<u32, Poly>,
    g: &BTreeMap<u32, Poly>,
    _v: Var,
) -> BTreeMap<u32, Poly> {
    let dg = deg(g);
    let lg = lead(g);
    let mut r: BTreeMap<u32, Poly> = f.clone();
    let mut remaining = deg(f) - dg + 1;
    loop {
        let dr = deg(&r);
        if dr < dg {
            // pad with the unused powers of lc_g so the total factor is
            // exactly lc_g^(deg f - deg g + 1), as subresultant theory needs
            while remaining > 0 {
                r = r.iter().map(|(&e, p)| (e, p.mul(&lg))).collect();
                remaining -= 1;
            }
            return r;
        }
        remaining -= 1;
        let lr = lead(&r);
        // r <- lg * r - lr * x^(dr-dg) * g
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (&e, p) in &r {
            if e as i64 == dr {
                continue;
            }
            let q = p.mul(&lg);
            if !q.is_zero() {
                out.insert(e, q);
            }
        }
        let shift = (dr - dg) as u32;
        for (&e, p) in g {
            if e as i64 == dg {
                continue;
            }
            let q = p.mul(&lr).neg();
            let key = e + shift;
            let entry = out.entry(key).or_insert_with(Poly::zero);
            *entry = entry.add(&q);
            if entry.is_zero() {
                out.remove(&key);
            }
        }
        r = out;
    }
}

/// Helper monomial constructor used by tests.
#[allow(dead_code)]
pub(crate) fn mono(v: Var, e: u32) -> Mono {
    Mono::var(v, e)
}

#[cfg(test)]
mod tests {
    use super::super::vars::{VAR_X, VAR_Y};
    use super::*;

    fn x() -> Poly {
        Poly::var(VAR_X)
    }
    fn y() -> Poly {
        Poly::var(VAR_Y)
    }

    #[test]
    fn gcd_of_difference_of_squares() {
        let p = x().mul(&x()).sub(&y().mul(&y())); // x^2 - y^2
        let q = x().sub(&y()); // x - y
        let g = poly_gcd(&p, &q);
        assert_eq!(g, q);
    }

    #[test]
    fn gcd_coprime_is_one() {
        let p = x().add(&y());
        let q = x().sub(&y());
        assert_eq!(poly_gcd(&p, &q), Poly::one());
    }

    #[test]
    fn gcd_with_content() {
        // 2x^2y + 2xy^2 = 2xy(x+y);  4xy + 4y^2 = 4y(x+y)
        let p = x().pow(2).mul(&y()).add(&x().mul(&y().pow(2))).scale(&BigRational::from_integer(2.into()));
        let q = x().mul(&y()).add(&y().pow(2)).scale(&BigRational::from_integer(4.into()));
        let g = poly_gcd(&p, &q);
        // gcd is normalized integer-primitive: y*(x+y)
        let expect = y().mul(&x().add(&y()));
        assert_eq!(g, expect);
    }
}
