//! Derivations of finitely presented algebras.
//!
//! A [`Derivation`] is fixed by its values on the generators and extended by
//! the Leibniz rule. It is only meaningful on the quotient when it maps the
//! ideal into itself, which [`Derivation::check_well_defined`] decides. Local
//! nilpotency is certified on generators only; the Leibniz rule then bounds
//! the nilpotency index of every element (see [`Derivation::element_bound`]).

mod automorphism;
mod flow;
mod grading;

pub use automorphism::{pushforward, Automorphism};
pub use flow::{exp_flow, flow_automorphism, FlowPolynomial};
pub use grading::{weight_check, Equivariance, WeightGrading};

use std::fmt;

use num_traits::Zero;

use crate::algebra::{Algebra, AlgebraElement};
use crate::error::{Error, Result};
use crate::poly::{Polynomial, Rational};

pub const DEFAULT_NILPOTENCY_CAP: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Nilpotency {
    /// `delta^bound` kills every generator, and `bound` is minimal with this property.
    NilpotentWithBound(u32),
    /// Some iterate is a nonzero multiple of an earlier one, so iteration never ends.
    NotNilpotent {
        variable: String,
        step: u32,
        witness: String,
    },
    UnknownUpToCap(u32),
}

impl Nilpotency {
    pub fn bound(&self) -> Option<u32> {
        match self {
            Nilpotency::NilpotentWithBound(n) => Some(*n),
            _ => None,
        }
    }
}

impl fmt::Display for Nilpotency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Nilpotency::NilpotentWithBound(n) => write!(f, "nilpotent, bound {n} on generators"),
            Nilpotency::NotNilpotent {
                variable,
                step,
                witness,
            } => write!(
                f,
                "not nilpotent: iterate {step} on {variable} repeats a multiple of {witness}"
            ),
            Nilpotency::UnknownUpToCap(cap) => write!(f, "undecided up to cap {cap}"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Certificates {
    pub well_defined: Option<bool>,
    pub nilpotency: Option<Nilpotency>,
}

/// A derivation given by the images of the generators.
#[derive(Clone)]
pub struct Derivation {
    name: String,
    algebra: Algebra,
    images: Vec<AlgebraElement>,
    certificates: Certificates,
}

impl Derivation {
    pub fn new(algebra: &Algebra, name: impl Into<String>, images: Vec<Polynomial>) -> Result<Self> {
        if images.len() != algebra.nvars() {
            return Err(Error::Argument(format!(
                "derivation needs {} images, got {}",
                algebra.nvars(),
                images.len()
            )));
        }
        let images = images
            .iter()
            .map(|p| algebra.normal_form(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(Derivation {
            name: name.into(),
            algebra: algebra.clone(),
            images,
            certificates: Certificates::default(),
        })
    }

    /// Builds from `(variable, image)` pairs; unnamed variables map to zero.
    pub fn from_pairs(algebra: &Algebra, name: impl Into<String>, pairs: &[(&str, Polynomial)]) -> Result<Self> {
        let mut images = vec![Polynomial::zero(algebra.vars()); algebra.nvars()];
        for (v, p) in pairs {
            images[algebra.vars().require(v)?] = p.clone();
        }
        Self::new(algebra, name, images)
    }

    /// `d/dx_i`.
    pub fn partial(algebra: &Algebra, index: usize) -> Self {
        let mut images = vec![Polynomial::zero(algebra.vars()); algebra.nvars()];
        images[index] = Polynomial::one(algebra.vars());
        let name = format!("d/d{}", algebra.vars().name(index));
        Self::new(algebra, name, images).expect("own context")
    }

    pub(crate) fn from_elements(algebra: &Algebra, name: String, images: Vec<AlgebraElement>) -> Self {
        Derivation {
            name,
            algebra: algebra.clone(),
            images,
            certificates: Certificates::default(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn images(&self) -> &[AlgebraElement] {
        &self.images
    }

    pub fn image(&self, index: usize) -> &AlgebraElement {
        &self.images[index]
    }

    pub fn certificates(&self) -> &Certificates {
        &self.certificates
    }

    pub fn scaled(&self, c: &Rational) -> Derivation {
        Derivation {
            name: format!("{}*{}", c, self.name),
            algebra: self.algebra.clone(),
            images: self.images.iter().map(|e| e.scale(c)).collect(),
            certificates: if c.is_zero() {
                Certificates::default()
            } else {
                self.certificates.clone()
            },
        }
    }

    /// Leibniz extension on a representative: `sum_i df/dx_i * delta(x_i)`, unreduced.
    fn apply_poly(&self, f: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero(self.algebra.vars());
        for (i, img) in self.images.iter().enumerate() {
            if img.is_zero() || f.degree_in(i) == 0 {
                continue;
            }
            acc = &acc + &(&f.partial(i) * img.rep());
        }
        acc
    }

    pub fn apply(&self, f: &AlgebraElement) -> Result<AlgebraElement> {
        if !self.algebra.same(f.algebra()) {
            return Err(Error::PolyContext("derivation and element live in different algebras".into()));
        }
        self.algebra.normal_form(&self.apply_poly(f.rep()))
    }

    /// `delta(r)` reduces to zero for every defining relation.
    pub fn check_well_defined(&self) -> bool {
        self.algebra.relations().iter().all(|r| {
            self.algebra
                .reduce(&self.apply_poly(r))
                .expect("own context")
                .is_zero()
        })
    }

    pub fn nilpotency_certificate(&self, cap: u32) -> Nilpotency {
        let mut bound = 0;
        for i in 0..self.algebra.nvars() {
            let mut seen: Vec<AlgebraElement> = vec![self.algebra.var(i)];
            let mut g = seen[0].clone();
            let mut killed = None;
            for k in 1..=cap {
                g = self.apply(&g).expect("own algebra");
                if g.is_zero() {
                    killed = Some(k);
                    break;
                }
                if let Some(prev) = seen.iter().find(|p| scalar_multiple(g.rep(), p.rep()).is_some()) {
                    return Nilpotency::NotNilpotent {
                        variable: self.algebra.vars().name(i).to_string(),
                        step: k,
                        witness: prev.to_string(),
                    };
                }
                seen.push(g.clone());
            }
            match killed {
                Some(k) => bound = bound.max(k),
                None => return Nilpotency::UnknownUpToCap(cap),
            }
        }
        Nilpotency::NilpotentWithBound(bound)
    }

    /// Computes and stores both certificates.
    pub fn certify(mut self, cap: u32) -> Self {
        let wd = self.check_well_defined();
        self.certificates.well_defined = Some(wd);
        self.certificates.nilpotency = Some(self.nilpotency_certificate(cap));
        self
    }

    pub fn is_certified_lnd(&self) -> bool {
        self.certificates.well_defined == Some(true)
            && matches!(self.certificates.nilpotency, Some(Nilpotency::NilpotentWithBound(_)))
    }

    pub(crate) fn require_lnd(&self) -> Result<u32> {
        match (&self.certificates.well_defined, &self.certificates.nilpotency) {
            (Some(true), Some(Nilpotency::NilpotentWithBound(n))) => Ok(*n),
            _ => Err(Error::CertificateRequired),
        }
    }

    /// Upper bound on the nilpotency index of `f`: a product of `D` generators
    /// dies after `D (N - 1) + 1` applications when `N` kills every generator.
    pub fn element_bound(&self, f: &AlgebraElement) -> Result<u32> {
        let n = self.require_lnd()?;
        let d = f.degree().unwrap_or(0);
        Ok(d * n.saturating_sub(1) + 1)
    }

    /// `delta^k(f)` for `k = 0, 1, ...` up to the last nonzero iterate.
    pub fn iterates(&self, f: &AlgebraElement) -> Result<Vec<AlgebraElement>> {
        let limit = self.element_bound(f)?;
        let mut out = Vec::new();
        let mut g = f.clone();
        for _ in 0..=limit {
            if g.is_zero() {
                return Ok(out);
            }
            let next = self.apply(&g)?;
            out.push(g);
            g = next;
        }
        unreachable!("certified bound exceeded");
    }

    /// Nilpotency index of `f`: least `k` with `delta^k(f) = 0`.
    pub fn nilpotency_index(&self, f: &AlgebraElement) -> Result<usize> {
        Ok(self.iterates(f)?.len())
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, img) in self.images.iter().enumerate() {
            if img.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({img}) d/d{}", self.algebra.vars().name(i))?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Derivation({}: {self})", self.name)
    }
}

/// `Some(c)` with `p = c q` when both are nonzero and proportional.
pub(crate) fn scalar_multiple(p: &Polynomial, q: &Polynomial) -> Option<Rational> {
    if p.is_zero() || q.is_zero() || p.nterms() != q.nterms() {
        return None;
    }
    let (pm, pc) = p.leading_term()?;
    let (qm, qc) = q.leading_term()?;
    if pm != qm {
        return None;
    }
    let c = pc / qc;
    (p == &q.scale(&c)).then_some(c)
}
