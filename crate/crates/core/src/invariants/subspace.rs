use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::algebra::{Algebra, AlgebraElement};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::poly::{Monomial, Polynomial, Rational};

/// A linear subspace of the degree-`d` slice of an algebra.
///
/// Coordinates are taken over the standard monomials of degree at most `d`,
/// listed in decreasing monomial order, and the basis is kept in reduced row
/// echelon form. Two subspaces of the same slice are equal exactly when their
/// basis matrices are equal.
#[derive(Clone)]
pub struct SubspaceBasis {
    algebra: Algebra,
    degree: u32,
    ambient: Vec<Monomial>,
    basis: Matrix,
}

impl SubspaceBasis {
    fn ambient_for(algebra: &Algebra, degree: u32) -> Vec<Monomial> {
        let mut ms = algebra.standard_monomials(degree);
        ms.reverse();
        ms
    }

    pub(crate) fn from_vectors(algebra: &Algebra, degree: u32, vectors: Matrix) -> Self {
        let ambient = Self::ambient_for(algebra, degree);
        let (basis, _) = linalg::rref(&vectors, ambient.len());
        SubspaceBasis {
            algebra: algebra.clone(),
            degree,
            ambient,
            basis,
        }
    }

    pub fn zero(algebra: &Algebra, degree: u32) -> Self {
        Self::from_vectors(algebra, degree, Vec::new())
    }

    /// The whole degree-`d` slice.
    pub fn full(algebra: &Algebra, degree: u32) -> Self {
        let n = Self::ambient_for(algebra, degree).len();
        let rows = (0..n)
            .map(|i| {
                let mut r = vec![Rational::zero(); n];
                r[i] = Rational::from_integer(1.into());
                r
            })
            .collect();
        Self::from_vectors(algebra, degree, rows)
    }

    pub fn span(algebra: &Algebra, degree: u32, elements: &[AlgebraElement]) -> Result<Self> {
        let probe = Self::zero(algebra, degree);
        let rows = elements
            .iter()
            .map(|e| {
                probe.coordinates(e).ok_or_else(|| {
                    Error::Argument(format!("{e} does not lie in the degree-{degree} slice"))
                })
            })
            .collect::<Result<Matrix>>()?;
        Ok(Self::from_vectors(algebra, degree, rows))
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient.len()
    }

    pub fn ambient(&self) -> &[Monomial] {
        &self.ambient
    }

    pub fn rows(&self) -> &Matrix {
        &self.basis
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim()
    }

    /// Coordinates of `e` over the ambient monomials, or `None` outside the slice.
    pub fn coordinates(&self, e: &AlgebraElement) -> Option<Vec<Rational>> {
        if !e.algebra().same(&self.algebra) {
            return None;
        }
        let mut v = vec![Rational::zero(); self.ambient.len()];
        for (m, c) in e.rep().terms() {
            let i = self.ambient.iter().position(|a| a == m)?;
            v[i] = c.clone();
        }
        Some(v)
    }

    pub fn element(&self, v: &[Rational]) -> AlgebraElement {
        let p = Polynomial::from_terms(
            self.algebra.vars(),
            self.ambient.iter().cloned().zip(v.iter().cloned()),
        );
        self.algebra.normal_form(&p).expect("own context")
    }

    pub fn elements(&self) -> Vec<AlgebraElement> {
        self.basis.iter().map(|r| self.element(r)).collect()
    }

    pub fn contains(&self, e: &AlgebraElement) -> bool {
        let Some(v) = self.coordinates(e) else {
            return false;
        };
        let mut rows = self.basis.clone();
        rows.push(v);
        linalg::rank(&rows, self.ambient.len()) == self.dim()
    }

    fn same_slice(&self, other: &SubspaceBasis) -> Result<()> {
        if self.degree == other.degree && self.algebra.same(&other.algebra) {
            Ok(())
        } else {
            Err(Error::Argument("subspaces of different slices".into()))
        }
    }

    pub fn is_subspace_of(&self, other: &SubspaceBasis) -> Result<bool> {
        self.same_slice(other)?;
        let mut rows = other.basis.clone();
        rows.extend(self.basis.iter().cloned());
        Ok(linalg::rank(&rows, self.ambient.len()) == other.dim())
    }

    pub fn sum(&self, other: &SubspaceBasis) -> Result<SubspaceBasis> {
        self.same_slice(other)?;
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Ok(Self::from_vectors(&self.algebra, self.degree, rows))
    }

    /// Intersection through annihilators: `U n W = (U^perp + W^perp)^perp`.
    pub fn intersect(&self, other: &SubspaceBasis) -> Result<SubspaceBasis> {
        self.same_slice(other)?;
        let n = self.ambient.len();
        let mut perp = linalg::nullspace(&self.basis, n);
        perp.extend(linalg::nullspace(&other.basis, n));
        Ok(Self::from_vectors(
            &self.algebra,
            self.degree,
            linalg::nullspace(&perp, n),
        ))
    }

    /// Highest total degree occurring in a basis vector.
    pub(crate) fn row_degree(&self, row: &[Rational]) -> u32 {
        row.iter()
            .zip(&self.ambient)
            .filter(|(c, _)| !c.is_zero())
            .map(|(_, m)| m.degree())
            .max()
            .unwrap_or(0)
    }
}

impl PartialEq for SubspaceBasis {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.algebra.same(&other.algebra) && self.basis == other.basis
    }
}

impl fmt::Display for SubspaceBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements().iter().map(|e| e.to_string()).collect();
        write!(f, "span{{{}}}", parts.join(", "))
    }
}

impl fmt::Debug for SubspaceBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubspaceBasis(d={}, dim={}/{}, {self})", self.degree, self.dim(), self.ambient_dim())
    }
}

/// Linear map `f -> delta(f)` on the degree-`d` slice, as a matrix whose
/// columns follow the slice's ambient monomials.
pub(crate) fn derivation_matrix(
    slice: &SubspaceBasis,
    apply: impl Fn(&AlgebraElement) -> Result<AlgebraElement>,
) -> Result<Matrix> {
    let cols: Vec<AlgebraElement> = slice
        .ambient
        .iter()
        .map(|m| {
            slice
                .algebra
                .normal_form(&Polynomial::term(
                    slice.algebra.vars(),
                    Rational::from_integer(1.into()),
                    m.clone(),
                ))
                .expect("own context")
        })
        .collect();
    let images = cols.iter().map(apply).collect::<Result<Vec<_>>>()?;
    let mut row_of: BTreeMap<Monomial, usize> = BTreeMap::new();
    for img in &images {
        for (m, _) in img.rep().terms() {
            let next = row_of.len();
            row_of.entry(m.clone()).or_insert(next);
        }
    }
    let mut mat = vec![vec![Rational::zero(); cols.len()]; row_of.len()];
    for (j, img) in images.iter().enumerate() {
        for (m, c) in img.rep().terms() {
            mat[row_of[m]][j] = c.clone();
        }
    }
    Ok(mat)
}
