use super::{Derivation, Nilpotency};
use crate::algebra::{Algebra, AlgebraElement};
use crate::error::{Error, Result};
use crate::poly::{Polynomial, Rational};

/// An algebra automorphism given by generator images and explicit inverse images.
///
/// Construction verifies that both maps respect the relations and that they
/// are mutually inverse on generators.
#[derive(Clone, Debug)]
pub struct Automorphism {
    algebra: Algebra,
    forward: Vec<AlgebraElement>,
    backward: Vec<AlgebraElement>,
}

fn substitute(algebra: &Algebra, f: &Polynomial, images: &[AlgebraElement]) -> AlgebraElement {
    if images.is_empty() {
        return algebra.normal_form(f).expect("own context");
    }
    let reps: Vec<Polynomial> = images.iter().map(|e| e.rep().clone()).collect();
    algebra
        .normal_form(&f.substitute(&reps))
        .expect("own context")
}

impl Automorphism {
    pub fn new(algebra: &Algebra, forward: Vec<AlgebraElement>, backward: Vec<AlgebraElement>) -> Result<Self> {
        let n = algebra.nvars();
        if forward.len() != n || backward.len() != n {
            return Err(Error::InvalidAutomorphism(format!("need {n} images each way")));
        }
        if forward
            .iter()
            .chain(backward.iter())
            .any(|e| !e.algebra().same(algebra))
        {
            return Err(Error::PolyContext("images in a different algebra".into()));
        }
        let psi = Automorphism {
            algebra: algebra.clone(),
            forward,
            backward,
        };
        for r in algebra.relations() {
            if !substitute(algebra, r, &psi.forward).is_zero() {
                return Err(Error::InvalidAutomorphism(format!("forward map does not preserve {r}")));
            }
            if !substitute(algebra, r, &psi.backward).is_zero() {
                return Err(Error::InvalidAutomorphism(format!("backward map does not preserve {r}")));
            }
        }
        for (i, x) in algebra.gens().iter().enumerate() {
            let name = algebra.vars().name(i);
            if &psi.apply_backward(&psi.forward[i]) != x {
                return Err(Error::InvalidAutomorphism(format!("backward(forward({name})) != {name}")));
            }
            if &psi.apply(&psi.backward[i]) != x {
                return Err(Error::InvalidAutomorphism(format!("forward(backward({name})) != {name}")));
            }
        }
        Ok(psi)
    }

    pub fn from_polys(algebra: &Algebra, forward: Vec<Polynomial>, backward: Vec<Polynomial>) -> Result<Self> {
        let nf = |v: Vec<Polynomial>| -> Result<Vec<AlgebraElement>> {
            v.iter().map(|p| algebra.normal_form(p)).collect()
        };
        Self::new(algebra, nf(forward)?, nf(backward)?)
    }

    pub fn identity(algebra: &Algebra) -> Self {
        Automorphism {
            algebra: algebra.clone(),
            forward: algebra.gens(),
            backward: algebra.gens(),
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn forward(&self) -> &[AlgebraElement] {
        &self.forward
    }

    pub fn backward(&self) -> &[AlgebraElement] {
        &self.backward
    }

    /// `psi(f)`: substitute the forward images into `f`.
    pub fn apply(&self, f: &AlgebraElement) -> AlgebraElement {
        substitute(&self.algebra, f.rep(), &self.forward)
    }

    pub fn apply_backward(&self, f: &AlgebraElement) -> AlgebraElement {
        substitute(&self.algebra, f.rep(), &self.backward)
    }

    pub fn inverse(&self) -> Automorphism {
        Automorphism {
            algebra: self.algebra.clone(),
            forward: self.backward.clone(),
            backward: self.forward.clone(),
        }
    }

    /// `self o other` as algebra maps: `x -> self(other(x))`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            algebra: self.algebra.clone(),
            forward: other.forward.iter().map(|e| self.apply(e)).collect(),
            backward: self.backward.iter().map(|e| other.apply_backward(e)).collect(),
        }
    }

    /// The point map dual to this algebra map: coordinate `i` of the image is
    /// `forward[i]` evaluated at `p`.
    pub fn map_point(&self, p: &[Rational]) -> Result<Vec<Rational>> {
        self.forward.iter().map(|e| e.eval(p)).collect()
    }
}

impl PartialEq for Automorphism {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.same(&other.algebra) && self.forward == other.forward
    }
}

/// `(psi_* delta)(x_i) = psi(delta(psi^{-1}(x_i)))`.
///
/// Certificates carry over by conjugation: `(psi_* delta)^k(x_i) = psi(delta^k(psi^{-1}(x_i)))`,
/// so the bound on generators is the largest nilpotency index of `delta` on
/// the inverse images.
pub fn pushforward(psi: &Automorphism, delta: &Derivation) -> Result<Derivation> {
    if !psi.algebra.same(delta.algebra()) {
        return Err(Error::PolyContext("automorphism and derivation live in different algebras".into()));
    }
    let images = psi
        .backward
        .iter()
        .map(|b| Ok(psi.apply(&delta.apply(b)?)))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Derivation::from_elements(&psi.algebra, format!("psi_*{}", delta.name()), images);
    out.certificates.well_defined = delta.certificates.well_defined;
    if delta.is_certified_lnd() {
        let mut bound = 0;
        for b in &psi.backward {
            bound = bound.max(delta.nilpotency_index(b)? as u32);
        }
        out.certificates.nilpotency = Some(Nilpotency::NilpotentWithBound(bound));
    }
    Ok(out)
}
