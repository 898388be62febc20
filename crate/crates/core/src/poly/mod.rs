//! Exact sparse multivariate polynomials over the rationals.
//!
//! Every polynomial carries its ordered variable list ([`Vars`]); arithmetic
//! between polynomials of different variable lists is a context error. The
//! only monomial order is graded reverse lexicographic, with the first
//! variable largest.

mod monomial;
mod polynomial;

pub use monomial::Monomial;
pub use polynomial::{Polynomial, Vars};

use crate::error::Result;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Checked ring operation; fails when the operands live in different rings.
pub fn poly_arith(a: &Polynomial, b: &Polynomial, op: ArithOp) -> Result<Polynomial> {
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Sub => a.try_sub(b),
        ArithOp::Mul => a.try_mul(b),
    }
}

#[cfg(test)]
pub(crate) mod testutil {
    use super::*;
    use proptest::prelude::*;

    /// Random polynomial strategy over a fixed variable list, small degrees.
    pub fn arb_poly(vars: Vars, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
        let n = vars.len();
        prop::collection::vec(
            (
                prop::collection::vec(0..=max_deg, n),
                -6i64..=6,
                1i64..=3,
            ),
            0..=max_terms,
        )
        .prop_map(move |terms| {
            Polynomial::from_terms(
                &vars,
                terms
                    .into_iter()
                    .map(|(e, a, b)| (Monomial::from_exponents(e), frac(a, b))),
            )
        })
    }
}

#[cfg(test)]
mod tests {
    use super::testutil::arb_poly;
    use super::*;
    use crate::error::Error;
    use proptest::prelude::*;

    fn uv() -> Vars {
        Vars::new(&["u", "v"]).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let vs = uv();
        let u = Polynomial::var(&vs, 0);
        let v = Polynomial::var(&vs, 1);
        let lhs = poly_arith(&(&u + &v), &(&u - &v), ArithOp::Mul).unwrap();
        assert_eq!(lhs, &u.pow(2) - &v.pow(2));
        assert_eq!(lhs.to_string(), "u^2 - v^2");
        assert!(poly_arith(&u, &u, ArithOp::Sub).unwrap().is_zero());
    }

    #[test]
    fn appendix_monomial_product() {
        let vs = Vars::new(&["a1", "a2", "a3", "a4"]).unwrap();
        let a = |i| Polynomial::var(&vs, i);
        let x0 = &a(1).pow(2) * &a(2);
        let prod = poly_arith(&x0, &a(3), ArithOp::Mul).unwrap();
        assert_eq!(
            prod,
            Polynomial::term(&vs, rat(1), Monomial::from_exponents(vec![0, 2, 1, 1]))
        );
    }

    #[test]
    fn context_mismatch() {
        let a = Polynomial::var(&uv(), 0);
        let b = Polynomial::var(&Vars::new(&["x"]).unwrap(), 0);
        assert!(matches!(
            poly_arith(&a, &b, ArithOp::Add),
            Err(Error::PolyContext(_))
        ));
        assert!(matches!(a.partial_named("w"), Err(Error::PolyContext(_))));
        assert!(matches!(a.eval(&[rat(1)]), Err(Error::PolyContext(_))));
    }

    #[test]
    fn partial_derivatives() {
        let vs = uv();
        let u = Polynomial::var(&vs, 0);
        assert_eq!(u.pow(3).partial_named("u").unwrap(), u.pow(2).scale(&rat(3)));
        assert!(u.partial_named("v").unwrap().is_zero());

        let avs = Vars::new(&["a1", "a2", "a3", "a4"]).unwrap();
        let a = |i| Polynomial::var(&avs, i);
        // b = 2, k = 0: a2^2 a3
        let x0 = &a(1).pow(2) * &a(2);
        assert_eq!(x0.partial_named("a2").unwrap(), (&a(1) * &a(2)).scale(&rat(2)));
    }

    #[test]
    fn evaluation() {
        let vs = Vars::new(&["x", "y", "z"]).unwrap();
        let x = Polynomial::var(&vs, 0);
        let y = Polynomial::var(&vs, 1);
        let z = Polynomial::var(&vs, 2);
        let rel = &(&(&x * &y) - &z.pow(3)) + &Polynomial::one(&vs);
        assert_eq!(rel.eval(&[rat(1), rat(7), rat(2)]).unwrap(), rat(0));
        assert_eq!(Polynomial::zero(&vs).eval(&[rat(5), rat(1), frac(1, 3)]).unwrap(), rat(0));
        let u = Polynomial::var(&Vars::new(&["u"]).unwrap(), 0);
        assert_eq!(u.pow(2).eval(&[frac(3, 2)]).unwrap(), frac(9, 4));
    }

    #[test]
    fn display_forms() {
        let vs = uv();
        let u = Polynomial::var(&vs, 0);
        let v = Polynomial::var(&vs, 1);
        let p = &(&u.scale(&frac(3, 2)) - &v) + &Polynomial::constant(&vs, rat(-1));
        assert_eq!(p.to_string(), "3/2*u - v - 1");
        assert_eq!((-&u).to_string(), "-u");
        assert_eq!(Polynomial::zero(&vs).to_string(), "0");
    }

    #[test]
    fn substitution() {
        let vs = uv();
        let u = Polynomial::var(&vs, 0);
        let v = Polynomial::var(&vs, 1);
        let f = &u * &v;
        let g = f.substitute(&[u.clone(), &v + &u.pow(2)]);
        assert_eq!(g, &(&u * &v) + &u.pow(3));
    }

    fn vars3() -> Vars {
        Vars::new(&["x", "y", "z"]).unwrap()
    }

    proptest! {
        #[test]
        fn ring_axioms(
            a in arb_poly(vars3(), 2, 4),
            b in arb_poly(vars3(), 2, 4),
            c in arb_poly(vars3(), 2, 4),
        ) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn derivative_is_linear_and_leibniz(
            f in arb_poly(vars3(), 3, 4),
            g in arb_poly(vars3(), 3, 4),
            i in 0usize..3,
        ) {
            prop_assert_eq!((&f + &g).partial(i), &f.partial(i) + &g.partial(i));
            prop_assert_eq!(
                (&f * &g).partial(i),
                &(&f.partial(i) * &g) + &(&f * &g.partial(i))
            );
        }

        #[test]
        fn eval_is_ring_homomorphism(
            f in arb_poly(vars3(), 3, 4),
            g in arb_poly(vars3(), 3, 4),
            pt in prop::collection::vec((-5i64..=5, 1i64..=4), 3),
        ) {
            let p: Vec<Rational> = pt.iter().map(|&(a, b)| frac(a, b)).collect();
            let fg = (&f * &g).eval(&p).unwrap();
            prop_assert_eq!(fg, f.eval(&p).unwrap() * g.eval(&p).unwrap());
            let s = (&f + &g).eval(&p).unwrap();
            prop_assert_eq!(s, f.eval(&p).unwrap() + g.eval(&p).unwrap());
        }
    }
}
