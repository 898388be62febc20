//! Pointwise geometry of affine varieties at rational points.
//!
//! Flexibility is only ever certified positively: a finite sample of
//! derivations whose orbit tangents span `T_p X` proves `p` flexible, while a
//! smaller span proves nothing, hence [`Verdict::NotDeterminedFlexible`].

mod plane;
mod sample;

pub use plane::{interpolate, plane_transitivity, FlowProgram, FlowStep};
pub use sample::{random_rational, sample_point, PointSampler};

use std::fmt;

use crate::algebra::{Algebra, AlgebraElement};
use crate::error::{Error, Result};
use crate::invariants::GeneratorFamily;
use crate::linalg::{self, Matrix};
use crate::lnd::{pushforward, Automorphism, Derivation};
use crate::poly::Rational;

/// A rational point on the variety of an algebra.
#[derive(Clone, PartialEq)]
pub struct Point {
    algebra: Algebra,
    coords: Vec<Rational>,
}

impl Point {
    pub fn new(algebra: &Algebra, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != algebra.nvars() {
            return Err(Error::PolyContext(format!(
                "point has {} coordinates, ring has {} variables",
                coords.len(),
                algebra.nvars()
            )));
        }
        for r in algebra.relations() {
            let v = r.eval(&coords)?;
            if v != Rational::from_integer(0.into()) {
                return Err(Error::PointNotOnVariety {
                    relation: r.to_string(),
                    value: v.to_string(),
                });
            }
        }
        Ok(Point {
            algebra: algebra.clone(),
            coords,
        })
    }

    pub fn from_ints(algebra: &Algebra, coords: &[i64]) -> Result<Self> {
        Self::new(algebra, coords.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    /// Image under the point map of `psi`.
    pub fn mapped(&self, psi: &Automorphism) -> Result<Point> {
        Point::new(&self.algebra, psi.map_point(&self.coords)?)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Point{self}")
    }
}

fn check_point(algebra: &Algebra, p: &Point) -> Result<()> {
    if algebra.same(&p.algebra) {
        Ok(())
    } else {
        Err(Error::PolyContext("point on a different variety".into()))
    }
}

fn jacobian(algebra: &Algebra, p: &Point) -> Result<Matrix> {
    algebra
        .relations()
        .iter()
        .map(|r| (0..algebra.nvars()).map(|j| r.partial(j).eval(&p.coords)).collect())
        .collect()
}

/// Basis of the Zariski tangent space: the null space of the Jacobian of
/// the relations at `p`.
pub fn tangent_space(algebra: &Algebra, p: &Point) -> Result<Matrix> {
    check_point(algebra, p)?;
    Ok(linalg::nullspace(&jacobian(algebra, p)?, algebra.nvars()))
}

/// `(delta(x_1)(p), ..., delta(x_n)(p))`.
pub fn orbit_tangent(delta: &Derivation, p: &Point) -> Result<Vec<Rational>> {
    check_point(delta.algebra(), p)?;
    delta.images().iter().map(|e| e.eval(&p.coords)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Flexible,
    NotDeterminedFlexible,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Flexible => "Flexible",
            Verdict::NotDeterminedFlexible => "NotDeterminedFlexible",
        })
    }
}

#[derive(Debug, Clone)]
pub struct TangentReport {
    pub point: Point,
    pub tangent_dim: usize,
    pub orbit_span_dim: usize,
    pub orbit_vectors: Vec<(String, Vec<Rational>)>,
    pub verdict: Verdict,
}

/// Rank of the orbit tangents of `ds` and of their pushforwards by `enrich`,
/// compared with the tangent dimension.
pub fn flexibility_check(ds: &[Derivation], p: &Point, enrich: &[Automorphism]) -> Result<TangentReport> {
    let algebra = p.algebra().clone();
    let tangent_dim = tangent_space(&algebra, p)?.len();
    let mut orbit_vectors = Vec::new();
    for delta in ds {
        delta.require_lnd()?;
        orbit_vectors.push((delta.name().to_string(), orbit_tangent(delta, p)?));
    }
    for (k, psi) in enrich.iter().enumerate() {
        for delta in ds {
            let pushed = pushforward(psi, delta)?;
            orbit_vectors.push((format!("psi{}_*{}", k + 1, delta.name()), orbit_tangent(&pushed, p)?));
        }
    }
    let rows: Matrix = orbit_vectors.iter().map(|(_, v)| v.clone()).collect();
    let orbit_span_dim = linalg::rank(&rows, algebra.nvars());
    let verdict = if orbit_span_dim == tangent_dim {
        Verdict::Flexible
    } else {
        Verdict::NotDeterminedFlexible
    };
    Ok(TangentReport {
        point: p.clone(),
        tangent_dim,
        orbit_span_dim,
        orbit_vectors,
        verdict,
    })
}

#[derive(Debug, Clone)]
pub struct TransversalityReport {
    /// The 2x2 minors of the matrix `[delta_i(x_j)]`, columns `(0,1), (0,2), (1,2)`.
    pub minors: Vec<AlgebraElement>,
    /// The degeneracy locus is empty: `1` lies in the radical.
    pub locus_empty: bool,
    /// For each claimed function, whether it vanishes on the degeneracy locus.
    pub claims: Vec<(String, bool)>,
}

impl TransversalityReport {
    pub fn all_claims_hold(&self) -> bool {
        self.claims.iter().all(|(_, ok)| *ok)
    }
}

/// Degeneracy locus of a pair of derivations on a surface in 3-space: the
/// zero set of the 2x2 minors of their orbit-tangent matrix. Each claimed
/// function is tested for membership in `rad((minors) + I)`.
pub fn transversality_locus(
    ds: (&Derivation, &Derivation),
    claims: &[(String, AlgebraElement)],
) -> Result<TransversalityReport> {
    let (d1, d2) = ds;
    let algebra = d1.algebra().clone();
    if !algebra.same(d2.algebra()) {
        return Err(Error::Argument("derivations on different algebras".into()));
    }
    if algebra.nvars() != 3 || algebra.relations().len() > 1 {
        return Err(Error::Argument(format!(
            "transversality needs a surface in 3-space (3 variables, at most one relation); got {} variables, {} relations",
            algebra.nvars(),
            algebra.relations().len()
        )));
    }
    let mut minors = Vec::new();
    for (a, b) in [(0, 1), (0, 2), (1, 2)] {
        let m = &(d1.image(a) * d2.image(b)) - &(d1.image(b) * d2.image(a));
        minors.push(m);
    }
    let locus_empty = algebra.radical_membership(algebra.one().rep(), &minors)?;
    let claims = claims
        .iter()
        .map(|(name, f)| Ok((name.clone(), algebra.radical_membership(f.rep(), &minors)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(TransversalityReport {
        minors,
        locus_empty,
        claims,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tangency {
    /// `delta(g) = 0`.
    TangentAndInvariant,
    /// `delta(g)` vanishes on `{g = 0}` but is nonzero.
    TangentOnly(AlgebraElement),
    NotTangent(AlgebraElement),
}

/// Tangency of `delta` to the divisor `{g = 0}`, read as
/// `delta(g) in rad((g) + I)`.
pub fn divisor_tangency(delta: &Derivation, g: &AlgebraElement) -> Result<Tangency> {
    if g.is_zero() {
        return Err(Error::Argument("the divisor function must be nonzero".into()));
    }
    let dg = delta.apply(g)?;
    if dg.is_zero() {
        return Ok(Tangency::TangentAndInvariant);
    }
    if delta
        .algebra()
        .radical_membership(dg.rep(), std::slice::from_ref(g))?
    {
        Ok(Tangency::TangentOnly(dg))
    } else {
        Ok(Tangency::NotTangent(dg))
    }
}

/// Rank of the differentials of the family restricted to `T_p X`.
pub fn jacobian_rank(family: &GeneratorFamily, p: &Point) -> Result<usize> {
    let algebra = family.algebra();
    let tangent = tangent_space(algebra, p)?;
    let grads: Matrix = family
        .elements()
        .iter()
        .map(|(_, f)| {
            (0..algebra.nvars())
                .map(|j| f.rep().partial(j).eval(p.coords()))
                .collect()
        })
        .collect::<Result<_>>()?;
    // entry (k, t) = df_k applied to tangent vector t
    let restricted: Matrix = grads.iter().map(|g| linalg::mat_vec(&tangent, g)).collect();
    Ok(linalg::rank(&restricted, tangent.len()))
}
