use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use super::gcd::poly_gcd;
use super::poly::Poly;
use super::vars::Var;
use crate::error::{Error, Result};

/// Exact rational function in canonical form: numerator and denominator are
/// coprime integer polynomials, jointly content-free, and the denominator's
/// leading coefficient is positive. Equal functions compare equal structurally.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: Poly, den: Poly) -> RatFunc {
        if num.is_zero() {
            return RatFunc { num: Poly::zero(), den: Poly::one() };
        }
        let (mut num, mut den) = (num, den);
        let g = poly_gcd(&num, &den);
        if !g.is_constant() {
            num = num.div_exact(&g).expect("gcd divides numerator");
            den = den.div_exact(&g).expect("gcd divides denominator");
        }
        // joint content normalization: num = u*N, den = v*D with gcd(u,v)=1
        let (rn, pn) = num.primitive_decompose();
        let (rd, pd) = den.primitive_decompose();
        let ratio = rn / rd; // > 0
        let u = ratio.numer().clone();
        let v = ratio.denom().clone();
        let mut num = pn.scale(&BigRational::from_integer(u));
        let mut den = pd.scale(&BigRational::from_integer(v));
        if den.leading().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            num = num.neg();
            den = den.neg();
        }
        // constant denominators fold into the numerator coefficients
        if let Some(c) = den.as_constant() {
            if !c.is_one() {
                num = num.scale(&(BigRational::one() / c));
                den = Poly::one();
            }
        }
        RatFunc { num, den }
    }

    pub fn from_poly(p: Poly) -> RatFunc {
        Self::reduced(p, Poly::one())
    }

    pub fn from_int(n: i64) -> RatFunc {
        RatFunc::from_poly(Poly::from_int(n))
    }

    pub fn from_rational(q: BigRational) -> RatFunc {
        RatFunc::from_poly(Poly::constant(q))
    }

    pub fn var(v: Var) -> RatFunc {
        RatFunc::from_poly(Poly::var(v))
    }

    pub fn zero() -> RatFunc {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> RatFunc {
        RatFunc::from_int(1)
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match (self.num.as_constant(), self.den.as_constant()) {
            (Some(n), Some(d)) => Some(n / d),
            _ => None,
        }
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut vs = self.num.vars();
        for v in self.den.vars() {
            if !vs.contains(&v) {
                vs.push(v);
            }
        }
        vs.sort();
        vs
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::reduced(self.num.add(&other.num), self.den.clone());
        }
        // reduce via the denominator gcd to keep intermediates small
        let g = poly_gcd(&self.den, &other.den);
        let (da, db) = if g.is_constant() {
            (self.den.clone(), other.den.clone())
        } else {
            (
                self.den.div_exact(&g).expect("gcd divides"),
                other.den.div_exact(&g).expect("gcd divides"),
            )
        };
        let num = self.num.mul(&db).add(&other.num.mul(&da));
        let den = self.den.mul(&db);
        Self::reduced(num, den)
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero();
        }
        // cross-cancel before multiplying
        let g1 = poly_gcd(&self.num, &other.den);
        let g2 = poly_gcd(&other.num, &self.den);
        let n1 = if g1.is_constant() { self.num.clone() } else { self.num.div_exact(&g1).unwrap() };
        let d2 = if g1.is_constant() { other.den.clone() } else { other.den.div_exact(&g1).unwrap() };
        let n2 = if g2.is_constant() { other.num.clone() } else { other.num.div_exact(&g2).unwrap() };
        let d1 = if g2.is_constant() { self.den.clone() } else { self.den.div_exact(&g2).unwrap() };
        Self::reduced(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.mul(&other.recip().expect("nonzero")))
    }

    pub fn recip(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn scale_int(&self, k: i64) -> RatFunc {
        RatFunc::reduced(self.num.scale(&BigRational::from_integer(BigInt::from(k))), self.den.clone())
    }

    pub fn pow(&self, n: i32) -> Result<RatFunc> {
        if n < 0 {
            return self.recip()?.pow(-n);
        }
        Ok(RatFunc::reduced(self.num.pow(n as u32), self.den.pow(n as u32)))
    }

    /// Exact quotient-rule derivative.
    pub fn derivative(&self, v: Var) -> RatFunc {
        let dn = self.num.derivative(v);
        let dd = self.den.derivative(v);
        if dd.is_zero() {
            return Self::reduced(dn, self.den.clone());
        }
        let num = dn.mul(&self.den).sub(&self.num.mul(&dd));
        let den = self.den.mul(&self.den);
        Self::reduced(num, den)
    }

    /// Exact composition: substitute rational functions for variables.
    /// Unbound variables stay themselves.
    pub fn substitute(&self, bindings: &BTreeMap<Var, RatFunc>) -> Result<RatFunc> {
        let nv = eval_poly_at_ratfuncs(&self.num, bindings);
        let dv = eval_poly_at_ratfuncs(&self.den, bindings);
        if dv.is_zero() {
            return Err(Error::DivisionByZero);
        }
        nv.div(&dv)
    }

    /// Exact rational evaluation at a point binding every variable.
    pub fn eval_at(&self, point: &BTreeMap<Var, BigRational>) -> Result<BigRational> {
        let lookup = |v: Var| point.get(&v).cloned();
        let den = self.den.eval(&lookup).ok_or_else(|| Error::UnknownVariable {
            name: unbound_name(&self.den, point),
        })?;
        if den.is_zero() {
            return Err(Error::PoleAtPoint);
        }
        let num = self.num.eval(&lookup).ok_or_else(|| Error::UnknownVariable {
            name: unbound_name(&self.num, point),
        })?;
        Ok(num / den)
    }

    /// Probabilistic zero test (documented fast path): evaluates at `n` random
    /// rational points, skipping poles. Classification decisions use the exact
    /// `is_zero` instead.
    pub fn probably_zero(&self, n: usize, seed: u64) -> bool {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let vars = self.vars();
        let mut checked = 0;
        let mut tries = 0;
        while checked < n && tries < 20 * n + 100 {
            tries += 1;
            let mut point = BTreeMap::new();
            for &v in &vars {
                let p: i64 = rng.gen_range(-1_000_000..=1_000_000);
                let q: i64 = rng.gen_range(1..=1000);
                point.insert(v, BigRational::new(BigInt::from(p), BigInt::from(q)));
            }
            match self.eval_at(&point) {
                Ok(val) => {
                    if !val.is_zero() {
                        return false;
                    }
                    checked += 1;
                }
                Err(_) => continue,
            }
        }
        true
    }
}

fn unbound_name(p: &Poly, point: &BTreeMap<Var, BigRational>) -> String {
    p.vars()
        .into_iter()
        .find(|v| !point.contains_key(v))
        .map(|v| v.name())
        .unwrap_or_default()
}

fn eval_poly_at_ratfuncs(p: &Poly, bindings: &BTreeMap<Var, RatFunc>) -> RatFunc {
    // Horner-free evaluation with cached powers per variable.
    let mut powers: BTreeMap<(Var, u32), RatFunc> = BTreeMap::new();
    let mut power = |v: Var, e: u32, val: &RatFunc| -> RatFunc {
        if e == 1 {
            return val.clone();
        }
        if let Some(p) = powers.get(&(v, e)) {
            return p.clone();
        }
        let r = val.pow(e as i32).expect("positive power");
        powers.insert((v, e), r.clone());
        r
    };
    let mut parts: Vec<RatFunc> = Vec::with_capacity(p.terms.len());
    for (m, c) in &p.terms {
        let mut term = RatFunc::from_rational(c.clone());
        for &(v, e) in &m.0 {
            let base = bindings.get(&v).cloned().unwrap_or_else(|| RatFunc::var(v));
            term = term.mul(&power(v, e, &base));
        }
        parts.push(term);
    }
    balanced_sum(parts)
}

/// Sum many rational functions pairwise to keep intermediate gcds small.
pub fn balanced_sum(mut parts: Vec<RatFunc>) -> RatFunc {
    if parts.is_empty() {
        return RatFunc::zero();
    }
    while parts.len() > 1 {
        let mut next = Vec::with_capacity(parts.len() / 2 + 1);
        let mut it = parts.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(a.add(&b)),
                None => next.push(a),
            }
        }
        parts = next;
    }
    parts.pop().unwrap()
}

impl fmt::Display for RatFunc {
    /// Canonical rendering `(num)/(den)`; parses back to the same function.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.as_constant().map(|c| c.is_one()).unwrap_or(false) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
