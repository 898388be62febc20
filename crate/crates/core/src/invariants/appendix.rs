//! Spanning argument for the Derksen invariant of the `dg:<n>` surfaces.
//!
//! For the derivation `delta` of the catalog entry, `exp(t delta)(y) - y - t`
//! is a combination `sum_k c_k t^k x_{k-1}` of the monomial generators. Taking
//! `b + 1` distinct nonzero values of `t` gives a square coefficient matrix
//! whose determinant factors as `prod c_k * prod t_i * Vandermonde(t)`.

use num_traits::Zero;

use crate::algebra::AlgebraElement;
use crate::catalog;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::lnd::exp_flow;
use crate::poly::Rational;

use super::SubspaceBasis;

#[derive(Debug, Clone)]
pub struct AppendixSpan {
    pub ts: Vec<Rational>,
    /// `p_t` for each `t`, as algebra elements.
    pub p: Vec<AlgebraElement>,
    /// Row `i` holds the coefficients of `p_{t_i}` over `x_0, ..., x_b`.
    pub matrix: Matrix,
    pub determinant: Rational,
}

impl AppendixSpan {
    pub fn spans(&self) -> bool {
        !self.determinant.is_zero()
    }
}

struct Setup {
    xs: Vec<AlgebraElement>,
    y: AlgebraElement,
    flow: crate::lnd::FlowPolynomial,
    slice: SubspaceBasis,
}

fn setup(n: u32) -> Result<Setup> {
    let entry = catalog::make_dg_surface(n)?;
    let delta = entry.derivation("delta").expect("catalog entry").clone();
    let gens = entry.generators.as_ref().expect("catalog entry");
    let b = n - 1;
    let xs: Vec<AlgebraElement> = (0..=b)
        .map(|k| gens.get(&format!("x{k}")).expect("catalog entry").clone())
        .collect();
    let y = gens.get("y").expect("catalog entry").clone();
    let flow = exp_flow(&delta, &y)?;
    let slice = SubspaceBasis::zero(&entry.algebra, b + 1);
    Ok(Setup { xs, y, flow, slice })
}

/// Coefficients of `e` over the `x_k`, if `e` lies in their span.
fn x_coordinates(s: &Setup, e: &AlgebraElement) -> Result<Vec<Rational>> {
    let cols: Vec<Vec<Rational>> = s
        .xs
        .iter()
        .map(|x| s.slice.coordinates(x).expect("x_k in slice"))
        .collect();
    let target = s
        .slice
        .coordinates(e)
        .ok_or_else(|| Error::Argument(format!("{e} lies outside the expected slice")))?;
    // columns are the x_k; transpose into a row system
    let rows: Matrix = (0..target.len())
        .map(|i| cols.iter().map(|c| c[i].clone()).collect())
        .collect();
    linalg::solve(&rows, &target, s.xs.len())
        .ok_or_else(|| Error::Argument(format!("{e} is not a combination of the x_k")))
}

fn check_ts(n: u32, ts: &[Rational]) -> Result<()> {
    if n < 3 {
        return Err(Error::Argument(format!("n must be at least 3, got {n}")));
    }
    if ts.len() != n as usize {
        return Err(Error::Argument(format!(
            "need b + 1 = {n} flow times, got {}",
            ts.len()
        )));
    }
    for (i, t) in ts.iter().enumerate() {
        if t.is_zero() {
            return Err(Error::Argument("flow times must be nonzero".into()));
        }
        if ts[..i].contains(t) {
            return Err(Error::Argument(format!("flow time {t} is repeated")));
        }
    }
    Ok(())
}

/// Builds `p_t = exp(t delta)(y) - y - t` for each `t` and the coefficient
/// matrix over `x_0..x_b`.
pub fn appendix_span(n: u32, ts: &[Rational]) -> Result<AppendixSpan> {
    check_ts(n, ts)?;
    let s = setup(n)?;
    let algebra = s.y.algebra().clone();
    let mut p = Vec::with_capacity(ts.len());
    let mut matrix = Vec::with_capacity(ts.len());
    for t in ts {
        let flowed = s.flow.at(t);
        let pt = &(&flowed - &s.y) - &algebra.constant(t.clone());
        matrix.push(x_coordinates(&s, &pt)?);
        p.push(pt);
    }
    let determinant = linalg::determinant(&matrix);
    Ok(AppendixSpan {
        ts: ts.to_vec(),
        p,
        matrix,
        determinant,
    })
}

/// The scalars `c_1..c_{b+1}` with `exp(t delta)(y) - y - t = sum_k c_k t^k x_{k-1}`,
/// read off the flow coefficients.
pub fn flow_column_scalings(n: u32) -> Result<Vec<Rational>> {
    if n < 3 {
        return Err(Error::Argument(format!("n must be at least 3, got {n}")));
    }
    let s = setup(n)?;
    let algebra = s.y.algebra().clone();
    let b = (n - 1) as usize;
    let mut out = Vec::with_capacity(b + 1);
    for k in 1..=b + 1 {
        let mut c = s.flow.coefficient(k).cloned().unwrap_or_else(|| algebra.zero());
        if k == 1 {
            c = &c - &algebra.one();
        }
        let coords = x_coordinates(&s, &c)?;
        for (i, v) in coords.iter().enumerate() {
            if i != k - 1 && !v.is_zero() {
                return Err(Error::Argument(format!(
                    "coefficient of t^{k} is not a multiple of x{}",
                    k - 1
                )));
            }
        }
        out.push(coords[k - 1].clone());
    }
    Ok(out)
}

/// `prod c_k * prod t_i * prod_{i<j} (t_j - t_i)`, the factored determinant.
pub fn determinant_by_factorization(n: u32, ts: &[Rational]) -> Result<Rational> {
    check_ts(n, ts)?;
    let mut det: Rational = flow_column_scalings(n)?.iter().product();
    det *= ts.iter().product::<Rational>();
    for j in 0..ts.len() {
        for i in 0..j {
            det *= &ts[j] - &ts[i];
        }
    }
    Ok(det)
}
