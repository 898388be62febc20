//! Degree-truncated invariant computations.
//!
//! Everything here works inside the degree-`d` slice of an algebra (the span
//! of standard monomials of total degree at most `d`) and uses a finite list
//! of derivations. The results are therefore containments: the true
//! Makar-Limanov invariant, intersected with the slice, lies inside
//! [`ml_truncated`]; [`derksen_truncated`] lies inside the slice of the true
//! Derksen invariant.

mod appendix;
mod subspace;

pub use appendix::{appendix_span, determinant_by_factorization, flow_column_scalings, AppendixSpan};
pub use subspace::SubspaceBasis;

use std::collections::BTreeMap;

use crate::algebra::{Algebra, AlgebraElement};
use crate::error::{Error, Result};
use crate::flexgeo::Point;
use crate::linalg;
use crate::lnd::Derivation;

/// Named elements, optionally with derivations that kill them.
#[derive(Clone, Debug)]
pub struct GeneratorFamily {
    algebra: Algebra,
    elements: Vec<(String, AlgebraElement)>,
    witnesses: BTreeMap<String, Derivation>,
}

impl GeneratorFamily {
    pub fn new(algebra: &Algebra) -> Self {
        GeneratorFamily {
            algebra: algebra.clone(),
            elements: Vec::new(),
            witnesses: BTreeMap::new(),
        }
    }

    pub fn with(mut self, name: impl Into<String>, element: AlgebraElement) -> Self {
        self.elements.push((name.into(), element));
        self
    }

    pub fn with_witness(mut self, name: &str, delta: Derivation) -> Self {
        self.witnesses.insert(name.to_string(), delta);
        self
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn elements(&self) -> &[(String, AlgebraElement)] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&AlgebraElement> {
        self.elements.iter().find(|(n, _)| n == name).map(|(_, e)| e)
    }

    pub fn witnesses(&self) -> &BTreeMap<String, Derivation> {
        &self.witnesses
    }

    /// Every witnessed element is killed by its witness.
    pub fn check_witnesses(&self) -> Result<bool> {
        for (name, delta) in &self.witnesses {
            let e = self
                .get(name)
                .ok_or_else(|| Error::Argument(format!("witness for unknown generator {name}")))?;
            if !delta.apply(e)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn require_well_defined(delta: &Derivation) -> Result<()> {
    let ok = delta
        .certificates()
        .well_defined
        .unwrap_or_else(|| delta.check_well_defined());
    if ok {
        Ok(())
    } else {
        Err(Error::Argument(format!(
            "derivation {} is not well defined on the quotient",
            delta.name()
        )))
    }
}

/// `{f in slice_d : delta(f) = 0}`, the null space of the matrix of `delta`
/// from the degree-`d` slice into the algebra.
pub fn kernel_basis(delta: &Derivation, d: u32) -> Result<SubspaceBasis> {
    require_well_defined(delta)?;
    let algebra = delta.algebra();
    let slice = SubspaceBasis::zero(algebra, d);
    let mat = subspace::derivation_matrix(&slice, |f| delta.apply(f))?;
    let null = linalg::nullspace(&mat, slice.ambient_dim());
    Ok(SubspaceBasis::from_vectors(algebra, d, null))
}

fn nonempty(ds: &[Derivation]) -> Result<&Derivation> {
    ds.first()
        .ok_or_else(|| Error::Argument("at least one derivation is required".into()))
}

/// Intersection of the truncated kernels.
pub fn ml_truncated(ds: &[Derivation], d: u32) -> Result<SubspaceBasis> {
    let first = nonempty(ds)?;
    let mut acc = kernel_basis(first, d)?;
    for delta in &ds[1..] {
        acc = acc.intersect(&kernel_basis(delta, d)?)?;
    }
    Ok(acc)
}

/// Closes `seed` under products that stay within degree `d`.
fn multiplicative_closure(mut current: SubspaceBasis) -> SubspaceBasis {
    let algebra = current.algebra().clone();
    let d = current.degree();
    current = current
        .sum(&SubspaceBasis::span(&algebra, d, &[algebra.one()]).expect("constants"))
        .expect("same slice");
    loop {
        let elems = current.elements();
        let degs: Vec<u32> = current.rows().iter().map(|r| current.row_degree(r)).collect();
        let mut products = Vec::new();
        for i in 0..elems.len() {
            for j in i..elems.len() {
                if degs[i] == 0 || degs[j] == 0 {
                    continue;
                }
                let p = &elems[i] * &elems[j];
                if p.degree().unwrap_or(0) <= d {
                    products.push(p);
                }
            }
        }
        let grown = current
            .sum(&SubspaceBasis::span(&algebra, d, &products).expect("degree checked"))
            .expect("same slice");
        if grown.dim() == current.dim() {
            return current;
        }
        current = grown;
    }
}

/// Degree-`d` slice of the subalgebra generated by the truncated kernels.
pub fn derksen_truncated(ds: &[Derivation], d: u32) -> Result<SubspaceBasis> {
    let first = nonempty(ds)?;
    let mut seed = kernel_basis(first, d)?;
    for delta in &ds[1..] {
        seed = seed.sum(&kernel_basis(delta, d)?)?;
    }
    Ok(multiplicative_closure(seed))
}

/// Degree-`d` slice of the subalgebra generated by the family.
pub fn generated_subalgebra(gens: &GeneratorFamily, d: u32) -> Result<SubspaceBasis> {
    let algebra = gens.algebra();
    let low: Vec<AlgebraElement> = gens
        .elements()
        .iter()
        .map(|(_, e)| e.clone())
        .filter(|e| e.degree().unwrap_or(0) <= d)
        .collect();
    Ok(multiplicative_closure(SubspaceBasis::span(algebra, d, &low)?))
}

/// Is `f` a linear combination of products of generators, within degree `d`?
pub fn subalgebra_membership(f: &AlgebraElement, gens: &GeneratorFamily, d: u32) -> Result<bool> {
    if f.degree().unwrap_or(0) > d {
        return Err(Error::Argument(format!("{f} has degree above {d}")));
    }
    Ok(generated_subalgebra(gens, d)?.contains(f))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separation {
    /// Name of the first generator taking different values, if any.
    pub separated_by: Option<String>,
}

/// For each pair, the first family member that tells the points apart.
pub fn separates_points(family: &GeneratorFamily, pairs: &[(Point, Point)]) -> Result<Vec<Separation>> {
    pairs
        .iter()
        .map(|(p, q)| {
            for pt in [p, q] {
                if !pt.algebra().same(family.algebra()) {
                    return Err(Error::PolyContext("point on a different variety".into()));
                }
            }
            for (name, f) in family.elements() {
                if f.eval(p.coords())? != f.eval(q.coords())? {
                    return Ok(Separation {
                        separated_by: Some(name.clone()),
                    });
                }
            }
            Ok(Separation { separated_by: None })
        })
        .collect()
}
