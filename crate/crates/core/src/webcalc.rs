//! Web frames and first-layer invariants: the normalized co-frame, the
//! connection coefficient H, curvature K, basic invariants, weighted
//! covariant derivatives, subweb curvatures, the web curvature L, the
//! second-order invariants M, P, Q, and the jet table of symmetrized
//! covariant derivatives.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::ratfield::{RatFunc, VAR_X, VAR_Y};

/// A rational-function value carrying its relative-invariant weight.
#[derive(Clone, Debug, PartialEq)]
pub struct Weighted {
    pub value: RatFunc,
    pub weight: i64,
}

impl Weighted {
    pub fn new(value: RatFunc, weight: i64) -> Weighted {
        Weighted { value, weight }
    }
}

/// A planar d-web given by first integrals; foliations 1 and 2 are x and y.
#[derive(Clone, Debug)]
pub struct WebDef {
    pub foliations: Vec<RatFunc>,
}

impl WebDef {
    /// Validate the general-position and basic-invariant requirements.
    pub fn new(foliations: Vec<RatFunc>) -> Result<WebDef> {
        let d = foliations.len();
        if d < 3 {
            return Err(Error::UnsupportedD { d });
        }
        if foliations[0] != RatFunc::var(VAR_X) || foliations[1] != RatFunc::var(VAR_Y) {
            return Err(Error::DegenerateWeb {
                detail: "foliations 1 and 2 must be exactly x and y".into(),
            });
        }
        for i in 0..d {
            for j in (i + 1)..d {
                let jac = jacobian(&foliations[i], &foliations[j]);
                if jac.is_zero() {
                    return Err(Error::DegenerateWeb {
                        detail: format!(
                            "foliations {} and {} have identically vanishing Jacobian",
                            i + 1,
                            j + 1
                        ),
                    });
                }
            }
        }
        Ok(WebDef { foliations })
    }

    pub fn d(&self) -> usize {
        self.foliations.len()
    }
}

fn jacobian(f: &RatFunc, g: &RatFunc) -> RatFunc {
    f.derivative(VAR_X)
        .mul(&g.derivative(VAR_Y))
        .sub(&f.derivative(VAR_Y).mul(&g.derivative(VAR_X)))
}

/// The normalized frame of a web: gauge function f (third integral, with
/// the third normalized form equal to df), H = f_xy/(f_x f_y), curvature K,
/// and the basic invariants a_i (a_1 = 1).
#[derive(Clone, Debug)]
pub struct WebFrame {
    pub web: WebDef,
    pub f: RatFunc,
    pub fx: RatFunc,
    pub fy: RatFunc,
    pub h: RatFunc,
    /// basic invariants a_1 = 1, a_2, ..., a_{d-2}
    pub invariants: Vec<RatFunc>,
    pub curvature: Weighted,
}

impl WebFrame {
    pub fn d(&self) -> usize {
        self.web.d()
    }

    /// a = a_2 (defined for d >= 4)
    pub fn inv_a(&self) -> &RatFunc {
        &self.invariants[1]
    }

    /// b = a_3 (defined for d = 5)
    pub fn inv_b(&self) -> &RatFunc {
        &self.invariants[2]
    }

    /// Directional derivative along the frame direction i (1 or 2).
    pub fn pd(&self, i: u8, u: &RatFunc) -> RatFunc {
        match i {
            1 => u.derivative(VAR_X).div(&self.fx).expect("f_x nonzero").neg(),
            2 => u.derivative(VAR_Y).div(&self.fy).expect("f_y nonzero").neg(),
            _ => panic!("direction must be 1 or 2"),
        }
    }

    /// Covariant derivative along direction i on a weighted value.
    pub fn cov(&self, i: u8, u: &Weighted) -> Weighted {
        let value = self
            .pd(i, &u.value)
            .sub(&self.h.mul(&u.value).scale_int(u.weight));
        Weighted::new(value, u.weight + 1)
    }

    /// Covariant derivative of a plain function of known weight.
    pub fn cov_fn(&self, i: u8, u: &RatFunc, weight: i64) -> RatFunc {
        self.pd(i, u).sub(&self.h.mul(u).scale_int(weight))
    }
}

/// Build the frame from a web definition.
pub fn frame(web: WebDef) -> Result<WebFrame> {
    let d = web.d();
    let f = web.foliations[2].clone();
    let fx = f.derivative(VAR_X);
    let fy = f.derivative(VAR_Y);
    if fx.is_zero() || fy.is_zero() {
        return Err(Error::DegenerateWeb { detail: "third integral must depend on x and y".into() });
    }
    let fxy = fx.derivative(VAR_Y);
    let h = fxy.div(&fx.mul(&fy))?;
    let curvature = Weighted::new(curvature_of_gauge(&fx, &fy)?, 2);

    let mut invariants = vec![RatFunc::one()];
    for g in web.foliations.iter().skip(3) {
        let gx = g.derivative(VAR_X);
        let gy = g.derivative(VAR_Y);
        if gy.is_zero() {
            return Err(Error::DegenerateWeb { detail: "foliation depends only on x".into() });
        }
        let ai = fy.mul(&gx).div(&fx.mul(&gy))?;
        if ai.is_zero() || ai.is_one() {
            return Err(Error::BasicInvariantDegenerate {
                detail: format!("basic invariant is identically {}", if ai.is_zero() { 0 } else { 1 }),
            });
        }
        invariants.push(ai);
    }
    if d == 5 && invariants[1] == invariants[2] {
        return Err(Error::BasicInvariantDegenerate {
            detail: "the two basic invariants coincide".into(),
        });
    }
    Ok(WebFrame { web, f, fx, fy, h, invariants, curvature })
}

/// Curvature function of the gauge 3-subweb: K = -(1/(f_x f_y)) (log(f_x/f_y))_xy,
/// with the log-derivative taken through (log g)_x = g_x/g so everything stays
/// rational.
pub fn curvature_of_gauge(fx: &RatFunc, fy: &RatFunc) -> Result<RatFunc> {
    let g = fx.div(fy)?;
    let logx = g.derivative(VAR_X).div(&g)?;
    let mixed = logx.derivative(VAR_Y);
    Ok(mixed.div(&fx.mul(fy))?.neg())
}

/// Convenience: curvature of the 3-web (x, y, f).
pub fn curvature3(f: &RatFunc) -> Result<Weighted> {
    let fx = f.derivative(VAR_X);
    let fy = f.derivative(VAR_Y);
    if fx.is_zero() || fy.is_zero() {
        return Err(Error::DegenerateWeb { detail: "gauge must depend on x and y".into() });
    }
    Ok(Weighted::new(curvature_of_gauge(&fx, &fy)?, 2))
}

/// A 1-form P dx + Q dy.
#[derive(Clone, Debug)]
pub struct Form1(pub RatFunc, pub RatFunc);

impl Form1 {
    fn scale(&self, c: &RatFunc) -> Form1 {
        Form1(c.mul(&self.0), c.mul(&self.1))
    }

    fn add(&self, other: &Form1) -> Form1 {
        Form1(self.0.add(&other.0), self.1.add(&other.1))
    }

    /// Wedge coefficient: (self ^ other) = w dx^dy.
    fn wedge(&self, other: &Form1) -> RatFunc {
        self.0.mul(&other.1).sub(&self.1.mul(&other.0))
    }

    /// Exterior-derivative coefficient: d(P dx + Q dy) = (Q_x - P_y) dx^dy.
    fn ext(&self) -> RatFunc {
        self.1.derivative(VAR_X).sub(&self.0.derivative(VAR_Y))
    }
}

/// Curvature function of a normalized 3-web co-frame (s1, s2, -s1-s2):
/// the Chern connection gamma with ds_i = s_i ^ gamma has
/// d(gamma) = K s1 ^ s2.
pub fn chern_curvature(s1: &Form1, s2: &Form1) -> Result<RatFunc> {
    let w = s1.wedge(s2);
    if w.is_zero() {
        return Err(Error::DegenerateWeb { detail: "subweb co-frame is degenerate".into() });
    }
    let g2 = s1.ext().div(&w)?;
    let g1 = s2.ext().div(&w)?.neg();
    // dgamma = d(g1 s1 + g2 s2)
    let dgamma = Form1(g1.mul(&s1.0), g1.mul(&s1.1))
        .ext()
        .add(&Form1(g2.mul(&s2.0), g2.mul(&s2.1)).ext());
    dgamma.div(&w)
}

impl WebFrame {
    /// Normalized 1-forms: w1 = -f_x dx, w2 = -f_y dy, w3 = df,
    /// w_{i+2} = -a_i w1 - w2 for i >= 2.
    pub fn omega(&self, idx: usize) -> Form1 {
        match idx {
            1 => Form1(self.fx.neg(), RatFunc::zero()),
            2 => Form1(RatFunc::zero(), self.fy.neg()),
            3 => Form1(self.fx.clone(), self.fy.clone()),
            i if i >= 4 && i <= self.d() => {
                let a = &self.invariants[i - 3];
                Form1(a.mul(&self.fx), self.fy.clone())
            }
            _ => panic!("foliation index out of range"),
        }
    }

    /// First two forms of the normalized co-frame of a 3-subweb, following
    /// the fixed normalizations for the enumerated triples.
    pub fn subweb_coframe(&self, triple: [usize; 3]) -> Result<(Form1, Form1)> {
        let d = self.d();
        let bad = || Error::UnsupportedTriple { triple };
        let one = RatFunc::one();
        let w = |i: usize| self.omega(i);
        let a = if d >= 4 { self.invariants[1].clone() } else { one.clone() };
        let b = if d >= 5 { self.invariants[2].clone() } else { one.clone() };
        let pair = match triple {
            [1, 2, 3] => (w(1), w(2)),
            [1, 2, 4] if d >= 4 => (w(1).scale(&a), w(2)),
            [1, 3, 4] if d >= 4 => (w(1).scale(&a.sub(&one)), w(3).scale(&one.neg())),
            [2, 3, 4] if d >= 4 => (w(2).scale(&a.sub(&one)), w(3).scale(&a)),
            [1, 2, 5] if d >= 5 => (w(1).scale(&b), w(2)),
            [1, 3, 5] if d >= 5 => (w(1).scale(&b.sub(&one)), w(3).scale(&one.neg())),
            [2, 3, 5] if d >= 5 => (w(2).scale(&b.sub(&one)), w(3).scale(&b)),
            [1, 4, 5] if d >= 5 => {
                (w(1).scale(&a.sub(&b)), w(1).scale(&a.neg()).add(&w(2).scale(&one.neg())))
            }
            [2, 4, 5] if d >= 5 => (
                w(2).scale(&b.sub(&a).div(&b)?),
                w(1).scale(&a.neg()).add(&w(2).scale(&one.neg())),
            ),
            [3, 4, 5] if d >= 5 => (
                w(3).scale(&a.sub(&b)),
                w(1).scale(&one.sub(&b).mul(&a)).add(&w(2).scale(&one.sub(&b))),
            ),
            _ => return Err(bad()),
        };
        Ok(pair)
    }

    /// Subweb curvature from the defining construction (Chern connection of
    /// the normalized 3-subweb co-frame).
    pub fn subweb_curvature(&self, triple: [usize; 3]) -> Result<Weighted> {
        let (s1, s2) = self.subweb_coframe(triple)?;
        Ok(Weighted::new(chern_curvature(&s1, &s2)?, 2))
    }

    /// Wedge normalization factor: s1 ^ s2 = factor * w1 ^ w2.
    pub fn subweb_wedge_factor(&self, triple: [usize; 3]) -> Result<RatFunc> {
        let (s1, s2) = self.subweb_coframe(triple)?;
        let w12 = self.omega(1).wedge(&self.omega(2));
        s1.wedge(&s2).div(&w12)
    }

    /// All enumerated subweb triples for this web size.
    pub fn subweb_triples(&self) -> Vec<[usize; 3]> {
        match self.d() {
            3 => vec![[1, 2, 3]],
            4 => vec![[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]],
            _ => vec![
                [1, 2, 3],
                [1, 2, 4],
                [1, 3, 4],
                [2, 3, 4],
                [1, 2, 5],
                [1, 3, 5],
                [2, 3, 5],
                [1, 4, 5],
                [2, 4, 5],
                [3, 4, 5],
            ],
        }
    }

    /// Web curvature L: the normalized mean of the subweb curvatures read
    /// off the wedge products, d*L*(d-1)*(d-2)/6 ... concretely
    /// (#subwebs) * L = sum K[l,m,n] * wedge factor.
    pub fn curvature_l(&self) -> Result<Weighted> {
        let d = self.d();
        if d != 4 && d != 5 {
            return Err(Error::UnsupportedD { d });
        }
        let triples = self.subweb_triples();
        let n = triples.len() as i64;
        let mut acc = RatFunc::zero();
        for t in triples {
            let k = self.subweb_curvature(t)?;
            let f = self.subweb_wedge_factor(t)?;
            acc = acc.add(&k.value.mul(&f));
        }
        let inv_n = RatFunc::one().div(&RatFunc::from_int(n))?;
        Ok(Weighted::new(acc.mul(&inv_n), 2))
    }

    /// The alternating-sum second-order invariants of a 4-web.
    pub fn mpq(&self) -> Result<(Weighted, Weighted, Weighted)> {
        if self.d() != 4 {
            return Err(Error::UnsupportedD { d: self.d() });
        }
        let a = self.inv_a().clone();
        let one = RatFunc::one();
        let k123 = self.subweb_curvature([1, 2, 3])?.value;
        let k124 = self.subweb_curvature([1, 2, 4])?.value;
        let k134 = self.subweb_curvature([1, 3, 4])?.value;
        let k234 = self.subweb_curvature([2, 3, 4])?.value;
        let t2 = a.mul(&k124);
        let t3 = a.sub(&one).mul(&k134);
        let t4 = a.mul(&a.sub(&one)).mul(&k234);
        let m = k123.sub(&t2).sub(&t3).add(&t4);
        let p = k123.add(&t2).sub(&t3).sub(&t4);
        let q = k123.sub(&t2).add(&t3).sub(&t4);
        Ok((Weighted::new(m, 2), Weighted::new(p, 2), Weighted::new(q, 2)))
    }
}

/// Base symbol of a jet table entry.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum JetBase {
    A,
    B,
    K,
}

impl JetBase {
    pub fn weight(self) -> i64 {
        match self {
            JetBase::A | JetBase::B => 0,
            JetBase::K => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            JetBase::A => "a",
            JetBase::B => "b",
            JetBase::K => "K",
        }
    }
}

/// Table of fully symmetrized covariant derivatives of the basic invariants
/// and the curvature, keyed by (base, sorted multi-index over {1,2}).
#[derive(Clone, Debug)]
pub struct JetTable {
    pub entries: BTreeMap<(JetBase, Vec<u8>), Weighted>,
    pub depth: usize,
}

impl JetTable {
    pub fn get(&self, base: JetBase, idx: &[u8]) -> Option<&Weighted> {
        self.entries.get(&(base, idx.to_vec()))
    }

    pub fn value(&self, base: JetBase, idx: &[u8]) -> Result<RatFunc> {
        self.get(base, idx)
            .map(|w| w.value.clone())
            .ok_or_else(|| Error::MissingSymbol {
                name: format!(
                    "{}_{}",
                    base.name(),
                    idx.iter().map(|d| d.to_string()).collect::<String>()
                ),
            })
    }
}

/// Build all symmetrized covariant derivatives of a, b, K up to `depth`
/// (K-jets are capped at order 2: nothing deeper is ever referenced).
pub fn jet_table(fr: &WebFrame, depth: usize) -> JetTable {
    let depth = depth.min(4);
    let mut entries = BTreeMap::new();
    let mut bases: Vec<(JetBase, Weighted, usize)> = Vec::new();
    if fr.d() >= 4 {
        bases.push((JetBase::A, Weighted::new(fr.inv_a().clone(), 0), depth));
    }
    if fr.d() >= 5 {
        bases.push((JetBase::B, Weighted::new(fr.inv_b().clone(), 0), depth));
    }
    bases.push((JetBase::K, fr.curvature.clone(), depth.min(2)));

    for (base, value, maxord) in bases {
        // all ordered words up to maxord, then average per sorted multiset
        let mut ordered: BTreeMap<Vec<u8>, Weighted> = BTreeMap::new();
        ordered.insert(Vec::new(), value);
        for n in 1..=maxord {
            let words: Vec<Vec<u8>> = ordered.keys().filter(|w| w.len() == n - 1).cloned().collect();
            for w in words {
                for dir in [1u8, 2u8] {
                    let prev = ordered.get(&w).unwrap().clone();
                    let mut key = vec![dir];
                    key.extend_from_slice(&w);
                    ordered.insert(key, fr.cov(dir, &prev));
                }
            }
        }
        for n in 0..=maxord {
            for ones in (0..=n).rev() {
                let mut idx = vec![1u8; ones];
                idx.extend(std::iter::repeat(2u8).take(n - ones));
                let perms = distinct_permutations(&idx);
                let cnt = perms.len() as i64;
                let mut acc = RatFunc::zero();
                let mut weight = 0;
                for p in &perms {
                    let w = ordered.get(p).unwrap();
                    acc = acc.add(&w.value);
                    weight = w.weight;
                }
                let avg = acc.div(&RatFunc::from_int(cnt)).expect("count nonzero");
                entries.insert((base, idx), Weighted::new(avg, weight));
            }
        }
    }
    JetTable { entries, depth }
}

fn distinct_permutations(idx: &[u8]) -> Vec<Vec<u8>> {
    let ones = idx.iter().filter(|&&d| d == 1).count();
    let n = idx.len();
    let mut out = Vec::new();
    // enumerate bitmasks with `ones` ones
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize == ones {
            let word: Vec<u8> =
                (0..n).map(|i| if mask & (1 << i) != 0 { 1u8 } else { 2u8 }).collect();
            out.push(word);
        }
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_ratfunc;

    const XY: &[&str] = &["x", "y"];

    fn web(fols: &[&str]) -> WebDef {
        WebDef::new(fols.iter().map(|s| parse_ratfunc(s, XY).unwrap()).collect()).unwrap()
    }

    #[test]
    fn frame_of_bol_web() {
        let fr = frame(web(&["x", "y", "x/y", "(1-y)/(1-x)", "(x-x*y)/(y-x*y)"])).unwrap();
        let a = parse_ratfunc("(x*(y-1))/(y*(x-1))", XY).unwrap();
        let b = parse_ratfunc("(y-1)/(x-1)", XY).unwrap();
        assert_eq!(fr.inv_a(), &a);
        assert_eq!(fr.inv_b(), &b);
        assert!(fr.curvature.value.is_zero());
    }

    #[test]
    fn frame_constant_invariant() {
        let fr = frame(web(&["x", "y", "x+y", "2*x+y"])).unwrap();
        assert_eq!(fr.inv_a(), &RatFunc::from_int(2));
    }

    #[test]
    fn repeated_foliation_is_degenerate() {
        let fols: Vec<RatFunc> = ["x", "y", "x+y", "x+y"]
            .iter()
            .map(|s| parse_ratfunc(s, XY).unwrap())
            .collect();
        assert!(matches!(WebDef::new(fols), Err(Error::DegenerateWeb { .. })));
    }

    #[test]
    fn directional_derivatives() {
        let fr = frame(web(&["x", "y", "x+y", "2*x+y"])).unwrap();
        let x = RatFunc::var(VAR_X);
        assert_eq!(fr.pd(1, &x), RatFunc::from_int(-1));
        assert_eq!(fr.pd(2, &x), RatFunc::zero());
        assert_eq!(fr.pd(1, &fr.f.clone()), RatFunc::from_int(-1));
    }

    #[test]
    fn curvature_examples() {
        assert!(curvature3(&parse_ratfunc("x+y", XY).unwrap()).unwrap().value.is_zero());
        assert!(curvature3(&parse_ratfunc("(2*x*y-x+y)/(x+y)", XY).unwrap())
            .unwrap()
            .value
            .is_zero());
        // K(x^2 y + y^2) = -2/(y (x^2+2y)^3), from an independent CAS oracle
        let k = curvature3(&parse_ratfunc("x^2*y+y^2", XY).unwrap()).unwrap();
        let expect = parse_ratfunc("-2/(y*(x^2+2*y)^3)", XY).unwrap();
        assert_eq!(k.value, expect);
        assert_eq!(k.weight, 2);
    }

    #[test]
    fn curvature_agrees_with_connection_route() {
        for fols in [
            vec!["x", "y", "x^2*y+y^2"],
            vec!["x", "y", "(2*x*y-x+y)/(x+y)"],
            vec!["x", "y", "x*y+x^2/2"],
        ] {
            let fr = frame(web(&fols)).unwrap();
            // K = pd_1(H) - pd_2(H)
            let alt = fr.pd(1, &fr.h).sub(&fr.pd(2, &fr.h));
            assert_eq!(fr.curvature.value, alt);
            // and the general Chern-connection computation on (w1, w2)
            let k = fr.subweb_curvature([1, 2, 3]).unwrap();
            assert_eq!(k.value, fr.curvature.value);
        }
    }

    #[test]
    fn commutator_identity_on_weighted_values() {
        let fr = frame(web(&["x", "y", "x^2*y+y^2"])).unwrap();
        let u = Weighted::new(fr.f.clone(), 1);
        let lhs = fr.cov(2, &fr.cov(1, &u)).value.sub(&fr.cov(1, &fr.cov(2, &u)).value);
        let rhs = fr.curvature.value.mul(&u.value).scale_int(u.weight);
        assert_eq!(lhs, rhs);

        let zero = Weighted::new(RatFunc::zero(), 3);
        let c = fr.cov(1, &zero);
        assert!(c.value.is_zero());
        assert_eq!(c.weight, 4);
    }

    #[test]
    fn weight_zero_covariant_is_directional() {
        let fr = frame(web(&["x", "y", "x/y", "(1-y)/(1-x)"])).unwrap();
        let a = Weighted::new(fr.inv_a().clone(), 0);
        assert_eq!(fr.cov(1, &a).value, fr.pd(1, fr.inv_a()));
        // weight-0 second derivatives commute
        let a1 = fr.cov(1, &a);
        let a2 = fr.cov(2, &a);
        assert_eq!(fr.cov(2, &a1).value, fr.cov(1, &a2).value);
    }

    #[test]
    fn four_pencils_is_mayrhofer() {
        let fr = frame(web(&["x", "y", "x/y", "(1-y)/(1-x)"])).unwrap();
        for t in fr.subweb_triples() {
            assert!(fr.subweb_curvature(t).unwrap().value.is_zero(), "K{t:?} should vanish");
        }
        assert!(fr.curvature_l().unwrap().value.is_zero());
        let (m, p, q) = fr.mpq().unwrap();
        assert!(m.value.is_zero() && p.value.is_zero() && q.value.is_zero());
    }

    #[test]
    fn parallelizable_web_has_zero_l() {
        let fr = frame(web(&["x", "y", "x+y", "2*x+y"])).unwrap();
        assert!(fr.curvature_l().unwrap().value.is_zero());
        let (m, p, q) = fr.mpq().unwrap();
        assert!(m.value.is_zero() && p.value.is_zero() && q.value.is_zero());
    }

    #[test]
    fn rank2_web_mpq_not_all_zero() {
        let fr = frame(web(&["x", "y", "x+y", "x^2+y^2"])).unwrap();
        let (m, p, q) = fr.mpq().unwrap();
        assert!(!m.value.is_zero() || !p.value.is_zero() || !q.value.is_zero());
        // L = (x^2-y^2)/(4 x^2 y^2), hand-derived from the subweb curvatures
        let l = fr.curvature_l().unwrap().value;
        assert_eq!(l, parse_ratfunc("(x^2-y^2)/(4*x^2*y^2)", XY).unwrap());
    }

    #[test]
    fn jet_table_symmetrization() {
        let fr = frame(web(&["x", "y", "x*y+x^2/2", "x^2*y+2*x^3/3"])).unwrap();
        let jt = jet_table(&fr, 3);
        // constant invariant: all a-jets vanish
        for ((base, idx), w) in &jt.entries {
            if *base == JetBase::A && !idx.is_empty() {
                assert!(w.value.is_zero(), "a_{idx:?} should vanish");
            }
        }
        // K != 0 here
        assert!(!jt.value(JetBase::K, &[]).unwrap().is_zero());
        // weights: |alpha| + base weight
        assert_eq!(jt.get(JetBase::K, &[1, 2]).unwrap().weight, 4);
        assert_eq!(jt.get(JetBase::A, &[1, 1, 2]).unwrap().weight, 3);
    }
}
