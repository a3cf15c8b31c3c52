//! Exact arithmetic in the field of rational functions over Q in a finite
//! set of interned variables, with canonical forms, derivatives, substitution
//! and exact zero testing.

mod gcd;
mod poly;
mod ratfunc;
mod vars;

pub use gcd::poly_gcd;
pub use poly::{Mono, Poly};
pub use ratfunc::{balanced_sum, RatFunc};
pub use vars::{Var, VAR_T, VAR_X, VAR_Y};

#[cfg(test)]
mod tests {
    use super::*;
    use num::rational::BigRational;
    use num::BigInt;
    use std::collections::BTreeMap;

    fn x() -> RatFunc {
        RatFunc::var(VAR_X)
    }
    fn y() -> RatFunc {
        RatFunc::var(VAR_Y)
    }
    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn add_cancels_to_zero() {
        let a = x().div(&y()).unwrap();
        assert!(a.add(&a.neg()).is_zero());
    }

    #[test]
    fn difference_of_squares_reduces() {
        let n = x().pow(2).unwrap().sub(&y().pow(2).unwrap());
        let d = x().sub(&y());
        let r = n.div(&d).unwrap();
        assert_eq!(r, x().add(&y()));
    }

    #[test]
    fn product_of_conjugates() {
        let p = x().sub(&y()).mul(&x().add(&y()));
        assert_eq!(p, x().pow(2).unwrap().sub(&y().pow(2).unwrap()));
    }

    #[test]
    fn derivative_quotient_rule() {
        let f = x().div(&y()).unwrap();
        assert_eq!(f.derivative(VAR_X), y().recip().unwrap());
        assert_eq!(f.derivative(VAR_Y), x().div(&y().pow(2).unwrap()).unwrap().neg());
    }

    #[test]
    fn derivative_of_web_function() {
        // d/dx (2xy - x + y)/(x + y) = (2y^2 - 2y)/(x + y)^2, checked against
        // an independent CAS differentiation
        let two_xy = x().mul(&y()).scale_int(2);
        let f = two_xy.sub(&x()).add(&y()).div(&x().add(&y())).unwrap();
        let expect = y()
            .pow(2)
            .unwrap()
            .scale_int(2)
            .sub(&y().scale_int(2))
            .div(&x().add(&y()).pow(2).unwrap())
            .unwrap();
        assert_eq!(f.derivative(VAR_X), expect);
    }

    #[test]
    fn substitution_composes() {
        // (t^2 - 1) with t -> x/y  gives (x^2 - y^2)/y^2
        let t = RatFunc::var(VAR_T);
        let f = t.pow(2).unwrap().sub(&RatFunc::one());
        let mut b = BTreeMap::new();
        b.insert(VAR_T, x().div(&y()).unwrap());
        let r = f.substitute(&b).unwrap();
        let expect = x()
            .pow(2)
            .unwrap()
            .sub(&y().pow(2).unwrap())
            .div(&y().pow(2).unwrap())
            .unwrap();
        assert_eq!(r, expect);

        // identity binding leaves the function unchanged
        let id = f.substitute(&BTreeMap::new()).unwrap();
        assert_eq!(id, f);

        // 1/t with t -> x+y
        let g = t.recip().unwrap();
        let r = g.substitute(&b_map(VAR_T, x().add(&y()))).unwrap();
        assert_eq!(r, x().add(&y()).recip().unwrap());
    }

    fn b_map(v: Var, f: RatFunc) -> BTreeMap<Var, RatFunc> {
        let mut b = BTreeMap::new();
        b.insert(v, f);
        b
    }

    #[test]
    fn eval_at_points() {
        let f = x().div(&y()).unwrap();
        let mut p = BTreeMap::new();
        p.insert(VAR_X, q(1, 1));
        p.insert(VAR_Y, q(2, 1));
        assert_eq!(f.eval_at(&p).unwrap(), q(1, 2));

        // removable singularity is gone after canonicalization
        let g = x()
            .pow(2)
            .unwrap()
            .sub(&y().pow(2).unwrap())
            .div(&x().sub(&y()))
            .unwrap();
        let mut p = BTreeMap::new();
        p.insert(VAR_X, q(3, 1));
        p.insert(VAR_Y, q(3, 1));
        assert_eq!(g.eval_at(&p).unwrap(), q(6, 1));

        let h = x().sub(&y()).recip().unwrap();
        let mut p = BTreeMap::new();
        p.insert(VAR_X, q(2, 1));
        p.insert(VAR_Y, q(2, 1));
        assert!(matches!(h.eval_at(&p), Err(crate::error::Error::PoleAtPoint)));
    }

    #[test]
    fn canonical_form_unique() {
        // same function built two ways renders identically
        let r1 = x()
            .pow(2)
            .unwrap()
            .sub(&y().pow(2).unwrap())
            .div(&x().sub(&y()))
            .unwrap();
        let r2 = x().add(&y());
        assert_eq!(r1.to_string(), r2.to_string());

        // denominator leading coefficient is positive
        let r = RatFunc::one().div(&RatFunc::zero().sub(&x())).unwrap();
        assert_eq!(r.to_string(), "(-1)/(x)");
    }
}
