//! Finitely presented commutative algebras `Q[x_1..x_n]/I`.
//!
//! An [`FPAlgebra`] fixes a reduced Gröbner basis of `I` at construction, so
//! every [`AlgebraElement`] is stored as its unique normal form and equality
//! of elements is equality of representatives. Elements hold an `Arc` to
//! their algebra; mixing elements of different algebras is a context error.

pub mod groebner;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, Rational, Vars};

/// Variables plus generators of the defining ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    vars: Vars,
    relations: Vec<Polynomial>,
}

impl Presentation {
    pub fn new(vars: Vars, relations: Vec<Polynomial>) -> Result<Self> {
        for r in &relations {
            if !r.vars().same(&vars) {
                return Err(Error::PolyContext(format!(
                    "relation {r} is not over {vars:?}"
                )));
            }
        }
        let relations = relations.into_iter().filter(|r| !r.is_zero()).collect();
        Ok(Presentation { vars, relations })
    }

    pub fn affine<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        Ok(Presentation {
            vars: Vars::new(names)?,
            relations: Vec::new(),
        })
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }
}

/// A presentation together with the reduced Gröbner basis of its ideal.
#[derive(Debug, PartialEq, Eq)]
pub struct FPAlgebra {
    presentation: Presentation,
    groebner: Vec<Polynomial>,
}

/// Shared handle; algebras are immutable once built.
pub type Algebra = Arc<FPAlgebra>;

/// Builds the algebra, computing the reduced Gröbner basis of the relations.
pub fn groebner_basis(p: Presentation) -> Result<Algebra> {
    FPAlgebra::new(p)
}

impl FPAlgebra {
    pub fn new(presentation: Presentation) -> Result<Algebra> {
        let groebner = groebner::buchberger(&presentation.relations);
        if groebner.iter().any(Polynomial::is_constant) {
            return Err(Error::InconsistentPresentation);
        }
        Ok(Arc::new(FPAlgebra {
            presentation,
            groebner,
        }))
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn vars(&self) -> &Vars {
        &self.presentation.vars
    }

    pub fn nvars(&self) -> usize {
        self.presentation.vars.len()
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.presentation.relations
    }

    pub fn groebner(&self) -> &[Polynomial] {
        &self.groebner
    }

    pub fn same(self: &Algebra, other: &Algebra) -> bool {
        Arc::ptr_eq(self, other) || **self == **other
    }

    fn check(&self, f: &Polynomial) -> Result<()> {
        if f.vars().same(self.vars()) {
            Ok(())
        } else {
            Err(Error::PolyContext(format!(
                "{f} is not over {:?}",
                self.vars()
            )))
        }
    }

    /// Canonical remainder of `f` modulo the ideal.
    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial> {
        self.check(f)?;
        Ok(groebner::reduce(f, &self.groebner))
    }

    pub fn normal_form(self: &Algebra, f: &Polynomial) -> Result<AlgebraElement> {
        Ok(AlgebraElement {
            rep: self.reduce(f)?,
            algebra: self.clone(),
        })
    }

    pub fn var(self: &Algebra, index: usize) -> AlgebraElement {
        self.normal_form(&Polynomial::var(self.vars(), index))
            .expect("own context")
    }

    pub fn var_named(self: &Algebra, name: &str) -> Result<AlgebraElement> {
        Ok(self.var(self.vars().require(name)?))
    }

    pub fn gens(self: &Algebra) -> Vec<AlgebraElement> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    pub fn zero(self: &Algebra) -> AlgebraElement {
        AlgebraElement {
            rep: Polynomial::zero(self.vars()),
            algebra: self.clone(),
        }
    }

    pub fn constant(self: &Algebra, c: Rational) -> AlgebraElement {
        self.normal_form(&Polynomial::constant(self.vars(), c))
            .expect("own context")
    }

    pub fn one(self: &Algebra) -> AlgebraElement {
        self.constant(Rational::from_integer(1.into()))
    }

    /// Is `f` in `I + (extra)`?
    pub fn ideal_membership(&self, f: &Polynomial, extra: &[AlgebraElement]) -> Result<bool> {
        self.check(f)?;
        if extra.is_empty() {
            return Ok(groebner::reduce(f, &self.groebner).is_zero());
        }
        let mut gens = self.groebner.clone();
        for e in extra {
            self.check(&e.rep)?;
            gens.push(e.rep.clone());
        }
        let g = groebner::buchberger(&gens);
        Ok(groebner::reduce(f, &g).is_zero())
    }

    /// Does `f` vanish on the zero set of `I + (extra)`? Decided by adjoining
    /// a fresh variable `w` and testing `1 in I + (extra) + (1 - w f)`.
    pub fn radical_membership(&self, f: &Polynomial, extra: &[AlgebraElement]) -> Result<bool> {
        self.check(f)?;
        let (big, _) = self.vars().with_fresh("w");
        let w = Polynomial::var(&big, big.len() - 1);
        let mut gens: Vec<Polynomial> = self.groebner.iter().map(|g| g.embed(&big)).collect();
        for e in extra {
            self.check(&e.rep)?;
            gens.push(e.rep.embed(&big));
        }
        gens.push(&Polynomial::one(&big) - &(&w * &f.embed(&big)));
        let g = groebner::buchberger(&gens);
        Ok(g.len() == 1 && g[0].is_constant())
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self
            .groebner
            .iter()
            .any(|g| g.leading_monomial().is_some_and(|lm| lm.divides(m)))
    }

    /// Standard monomials of total degree at most `d`, increasing order.
    /// They form a basis of the degree-`d` slice of the algebra.
    pub fn standard_monomials(&self, d: u32) -> Vec<Monomial> {
        (0..=d)
            .flat_map(|k| Monomial::all_of_degree(self.nvars(), k))
            .filter(|m| self.is_standard(m))
            .collect()
    }

    pub fn monomial_basis(self: &Algebra, d: u32) -> Vec<AlgebraElement> {
        self.standard_monomials(d)
            .into_iter()
            .map(|m| AlgebraElement {
                rep: Polynomial::term(self.vars(), Rational::from_integer(1.into()), m),
                algebra: self.clone(),
            })
            .collect()
    }
}

/// An element of an [`FPAlgebra`], stored in normal form.
#[derive(Clone)]
pub struct AlgebraElement {
    algebra: Algebra,
    rep: Polynomial,
}

impl AlgebraElement {
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn rep(&self) -> &Polynomial {
        &self.rep
    }

    pub fn into_rep(self) -> Polynomial {
        self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    /// Total degree of the normal-form representative.
    pub fn degree(&self) -> Option<u32> {
        self.rep.degree()
    }

    pub fn scale(&self, c: &Rational) -> AlgebraElement {
        AlgebraElement {
            algebra: self.algebra.clone(),
            rep: self.rep.scale(c),
        }
    }

    pub fn pow(&self, e: u32) -> AlgebraElement {
        let mut acc = self.algebra.one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        self.rep.eval(point)
    }

    fn check(&self, other: &AlgebraElement) -> Result<()> {
        if self.algebra.same(&other.algebra) {
            Ok(())
        } else {
            Err(Error::PolyContext("elements of different algebras".into()))
        }
    }

    pub fn try_add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(other)?;
        Ok(self + other)
    }

    pub fn try_mul(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(other)?;
        Ok(self * other)
    }
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.same(&other.algebra) && self.rep == other.rep
    }
}

impl Eq for AlgebraElement {}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.rep.fmt(f)
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.rep)
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        // normal forms are closed under addition
        AlgebraElement {
            algebra: self.algebra.clone(),
            rep: &self.rep + &rhs.rep,
        }
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            algebra: self.algebra.clone(),
            rep: &self.rep - &rhs.rep,
        }
    }
}

impl Mul for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.algebra
            .normal_form(&(&self.rep * &rhs.rep))
            .expect("same algebra")
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        AlgebraElement {
            algebra: self.algebra.clone(),
            rep: -&self.rep,
        }
    }
}

impl std::iter::Sum for AlgebraElement {
    fn sum<I: Iterator<Item = AlgebraElement>>(mut iter: I) -> AlgebraElement {
        let first = iter.next().expect("sum of at least one element");
        iter.fold(first, |a, b| &a + &b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::testutil::arb_poly;
    use crate::poly::{frac, rat};
    use proptest::prelude::*;

    fn poly(vs: &Vars, f: impl Fn(&[Polynomial]) -> Polynomial) -> Polynomial {
        let xs: Vec<Polynomial> = (0..vs.len()).map(|i| Polynomial::var(vs, i)).collect();
        f(&xs)
    }

    fn algebra(names: &[&str], rels: impl Fn(&[Polynomial]) -> Vec<Polynomial>) -> Algebra {
        let vs = Vars::new(names).unwrap();
        let xs: Vec<Polynomial> = (0..vs.len()).map(|i| Polynomial::var(&vs, i)).collect();
        FPAlgebra::new(Presentation::new(vs, rels(&xs)).unwrap()).unwrap()
    }

    fn one(x: &[Polynomial]) -> Polynomial {
        Polynomial::one(x[0].vars())
    }

    fn cstar() -> Algebra {
        algebra(&["s", "t"], |x| vec![&(&x[0] * &x[1]) - &one(x)])
    }

    fn y3() -> Algebra {
        algebra(&["x", "y", "z"], |x| {
            vec![&(&(&x[0] * &x[1]) - &x[2].pow(3)) + &one(x)]
        })
    }

    fn v3_ambient() -> Algebra {
        algebra(&["a1", "a2", "a3", "a4"], |a| {
            vec![&(&(&a[0] * &a[3]) - &(&a[1].pow(2) * &a[2])) - &one(a)]
        })
    }

    #[test]
    fn groebner_examples() {
        let a = cstar();
        assert_eq!(a.groebner(), a.relations());
        let plane = FPAlgebra::new(Presentation::affine(&["u", "v"]).unwrap()).unwrap();
        assert!(plane.groebner().is_empty());
        let vs = Vars::new(&["u"]).unwrap();
        let u = Polynomial::var(&vs, 0);
        let bad = Presentation::new(vs.clone(), vec![u.clone(), &u - &Polynomial::one(&vs)]).unwrap();
        assert_eq!(FPAlgebra::new(bad), Err(Error::InconsistentPresentation));
    }

    #[test]
    fn normal_form_examples() {
        let a = algebra(&["s", "t", "u"], |x| vec![&(&x[0] * &x[1]) - &one(x)]);
        let f = poly(a.vars(), |x| &(&x[0] * &x[1]) * &x[2]);
        assert_eq!(a.normal_form(&f).unwrap().rep(), &Polynomial::var(a.vars(), 2));

        let y = y3();
        assert!(y.normal_form(&y.relations()[0]).unwrap().is_zero());

        // a1 a4 and 1 + a2^2 a3 are the same element of the V_3 ambient algebra
        let v = v3_ambient();
        let lhs = v.normal_form(&poly(v.vars(), |a| &a[0] * &a[3])).unwrap();
        let rhs = v
            .normal_form(&poly(v.vars(), |a| &one(a) + &(&a[1].pow(2) * &a[2])))
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn membership_examples() {
        let plane = FPAlgebra::new(Presentation::affine(&["u", "v"]).unwrap()).unwrap();
        let u = plane.var(0);
        let uu = u.rep().pow(2);
        assert!(plane.ideal_membership(&uu, std::slice::from_ref(&u)).unwrap());
        assert!(!plane.ideal_membership(&Polynomial::one(plane.vars()), std::slice::from_ref(&u)).unwrap());

        let y = y3();
        let x = y.var(0);
        let f = poly(y.vars(), |v| &v[0] * &v[2].pow(2).scale(&rat(3)));
        assert!(y.ideal_membership(&f, &[x]).unwrap());

        let u2 = plane.normal_form(&uu).unwrap();
        assert!(plane.radical_membership(u.rep(), std::slice::from_ref(&u2)).unwrap());
        assert!(!plane.radical_membership(plane.var(1).rep(), &[u2]).unwrap());
    }

    #[test]
    fn monomial_basis_examples() {
        let plane = FPAlgebra::new(Presentation::affine(&["u", "v"]).unwrap()).unwrap();
        let names: Vec<String> = plane.monomial_basis(2).iter().map(|e| e.to_string()).collect();
        assert_eq!(names, ["1", "v", "u", "v^2", "u*v", "u^2"]);

        let c = cstar();
        let names: Vec<String> = c.monomial_basis(2).iter().map(|e| e.to_string()).collect();
        assert_eq!(names, ["1", "t", "s", "t^2", "s^2"]);

        let names: Vec<String> = y3().monomial_basis(1).iter().map(|e| e.to_string()).collect();
        assert_eq!(names, ["1", "z", "y", "x"]);
    }

    #[test]
    fn basis_counts_are_monotone() {
        for a in [cstar(), y3(), v3_ambient()] {
            let counts: Vec<usize> = (0..6).map(|d| a.standard_monomials(d).len()).collect();
            assert!(counts.windows(2).all(|w| w[0] <= w[1]), "{counts:?}");
        }
    }

    fn y3_vars() -> Vars {
        y3().vars().clone()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn normal_form_laws(f in arb_poly(y3_vars(), 4, 4), g in arb_poly(y3_vars(), 4, 4), c in -5i64..5) {
            let y = y3();
            let f = f.embed(y.vars());
            let g = g.embed(y.vars());
            let nf = |p: &Polynomial| y.reduce(p).unwrap();
            prop_assert_eq!(nf(&nf(&f)), nf(&f));
            prop_assert_eq!(nf(&(&f + &g.scale(&frac(c, 2)))), &nf(&f) + &nf(&g).scale(&frac(c, 2)));
            prop_assert_eq!(nf(&(&f * &g)), nf(&(&nf(&f) * &nf(&g))));
        }

        #[test]
        fn ideal_membership_implies_radical(f in arb_poly(y3_vars(), 2, 3), g in arb_poly(y3_vars(), 2, 2)) {
            let y = y3();
            let f = f.embed(y.vars());
            let gen = y.normal_form(&g.embed(y.vars())).unwrap();
            let h = &f * gen.rep();
            prop_assert!(y.ideal_membership(&h, std::slice::from_ref(&gen)).unwrap());
            prop_assert!(y.radical_membership(&h, &[gen]).unwrap());
        }
    }
}
