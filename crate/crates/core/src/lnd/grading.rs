use super::Derivation;
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial};

/// Weights mod `m` on the variables, encoding a diagonal `Z_m` action.
///
/// Monomials are eigenvectors of the action, so a derivation commutes with it
/// exactly when it is homogeneous of weight zero. This keeps all arithmetic
/// over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightGrading {
    modulus: u32,
    weights: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Equivariance {
    Equivariant,
    NotEquivariant {
        variable: String,
        term: String,
        term_weight: u32,
        expected: u32,
    },
}

impl WeightGrading {
    pub fn new(modulus: u32, weights: &[i64]) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::Argument("grading modulus must be positive".into()));
        }
        let m = modulus as i64;
        Ok(WeightGrading {
            modulus,
            weights: weights.iter().map(|w| w.rem_euclid(m) as u32).collect(),
        })
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn weight(&self, m: &Monomial) -> u32 {
        let total: u64 = m
            .exponents()
            .iter()
            .zip(&self.weights)
            .map(|(&e, &w)| e as u64 * w as u64)
            .sum();
        (total % self.modulus as u64) as u32
    }

    /// The common weight of all terms, if there is one. Zero is homogeneous of weight 0.
    pub fn homogeneous_weight(&self, p: &Polynomial) -> Option<u32> {
        let mut ws = p.terms().map(|(m, _)| self.weight(m));
        let first = ws.next().unwrap_or(0);
        ws.all(|w| w == first).then_some(first)
    }
}

/// Is `delta` of weight zero, i.e. does every term of `delta(x_i)` carry the
/// weight of `x_i`?
pub fn weight_check(delta: &Derivation, grading: &WeightGrading) -> Result<Equivariance> {
    let algebra = delta.algebra();
    if grading.weights.len() != algebra.nvars() {
        return Err(Error::GradingMismatch(format!(
            "{} weights for {} variables",
            grading.weights.len(),
            algebra.nvars()
        )));
    }
    for r in algebra.relations() {
        if grading.homogeneous_weight(r).is_none() {
            return Err(Error::GradingMismatch(format!("relation {r} is not homogeneous")));
        }
    }
    for (i, img) in delta.images().iter().enumerate() {
        let expected = grading.weights[i];
        for (m, c) in img.rep().terms() {
            let w = grading.weight(m);
            if w != expected {
                let term = Polynomial::term(algebra.vars(), c.clone(), m.clone());
                return Ok(Equivariance::NotEquivariant {
                    variable: algebra.vars().name(i).to_string(),
                    term: term.to_string(),
                    term_weight: w,
                    expected,
                });
            }
        }
    }
    Ok(Equivariance::Equivariant)
}
