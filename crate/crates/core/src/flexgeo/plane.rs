//! Moving k distinct points of the plane onto k other distinct points by
//! composing flows of triangular derivations `h(v) d/du` and `g(u) d/dv`.
//!
//! With pairwise distinct u-coordinates, one shear `exp(g(u) d/dv)` can set
//! every v-coordinate at will (Lagrange interpolation in `u`). Symmetrically
//! for `h(v) d/du`. A preliminary shear `c v d/du` makes u-coordinates
//! distinct when they are not.

use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Point;
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::lnd::{flow_automorphism, Derivation, DEFAULT_NILPOTENCY_CAP};
use crate::poly::{Polynomial, Rational, Vars};

#[derive(Clone, Debug)]
pub struct FlowStep {
    pub derivation: Derivation,
    pub time: Rational,
}

impl fmt::Display for FlowStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "exp({} * ({}))", self.time, self.derivation)
    }
}

/// A sequence of flows, applied left to right to points.
#[derive(Clone, Debug, Default)]
pub struct FlowProgram {
    pub steps: Vec<FlowStep>,
}

impl FlowProgram {
    /// Applies every step to every point, returning all intermediate tuples
    /// (the first is the input).
    pub fn trace(&self, points: &[Point]) -> Result<Vec<Vec<Point>>> {
        let mut out = vec![points.to_vec()];
        for step in &self.steps {
            let psi = flow_automorphism(&step.derivation, &step.time)?;
            let next = out
                .last()
                .unwrap()
                .iter()
                .map(|p| p.mapped(&psi))
                .collect::<Result<Vec<_>>>()?;
            out.push(next);
        }
        Ok(out)
    }

    pub fn replay(&self, points: &[Point]) -> Result<Vec<Point>> {
        Ok(self.trace(points)?.pop().unwrap())
    }
}

/// The polynomial in variable `var` through `(xs[i], ys[i])`, of degree < k.
pub fn interpolate(vars: &Vars, var: usize, xs: &[Rational], ys: &[Rational]) -> Polynomial {
    assert_eq!(xs.len(), ys.len());
    let x = Polynomial::var(vars, var);
    let mut acc = Polynomial::zero(vars);
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = Polynomial::constant(vars, yi.clone());
        for (j, xj) in xs.iter().enumerate() {
            if i == j {
                continue;
            }
            let factor = (&x - &Polynomial::constant(vars, xj.clone())).scale(&(xi - xj).recip());
            basis = &basis * &factor;
        }
        acc = &acc + &basis;
    }
    acc
}

fn all_distinct(vals: &[Rational]) -> bool {
    vals.iter().enumerate().all(|(i, v)| !vals[..i].contains(v))
}

fn check_distinct(points: &[Point], what: &str) -> Result<()> {
    for (i, p) in points.iter().enumerate() {
        if points[..i].iter().any(|q| q.coords() == p.coords()) {
            return Err(Error::Argument(format!("{what} point {p} is repeated")));
        }
    }
    Ok(())
}

struct Builder {
    algebra: Algebra,
    steps: Vec<FlowStep>,
}

impl Builder {
    /// Adds `exp(poly d/dx_target)`; a constant poly becomes a translation
    /// with that time. Zero polys add nothing.
    fn push(&mut self, target: usize, poly: Polynomial) -> Result<()> {
        if poly.is_zero() {
            return Ok(());
        }
        let vars = self.algebra.vars().clone();
        let (image, time) = match poly.as_constant() {
            Some(c) => (Polynomial::one(&vars), c),
            None => (poly, Rational::one()),
        };
        let mut images = vec![Polynomial::zero(&vars); 2];
        images[target] = image;
        let name = format!("({}) d/d{}", images[target], vars.name(target));
        let delta = Derivation::new(&self.algebra, name, images)?.certify(DEFAULT_NILPOTENCY_CAP);
        self.steps.push(FlowStep {
            derivation: delta,
            time,
        });
        Ok(())
    }
}

fn coords(points: &[Point], i: usize) -> Vec<Rational> {
    points.iter().map(|p| p.coords()[i].clone()).collect()
}

/// A shear `c v d/du` making u-coordinates distinct, or `None` if they already are.
fn separating_shear(algebra: &Algebra, points: &[Point], rng: &mut ChaCha8Rng) -> Option<Polynomial> {
    let us = coords(points, 0);
    if all_distinct(&us) {
        return None;
    }
    let vs = coords(points, 1);
    loop {
        let c = Rational::from_integer(rng.gen_range(1i64..=20).into());
        let shifted: Vec<Rational> = us.iter().zip(&vs).map(|(u, v)| u + &c * v).collect();
        if all_distinct(&shifted) {
            return Some(Polynomial::var(algebra.vars(), 1).scale(&c));
        }
    }
}

/// A replay-verified flow program on the plane mapping `src[i]` to `dst[i]`.
///
/// `src` and `dst` must live on a two-variable algebra without relations;
/// the first variable plays `u` and the second `v`.
pub fn plane_transitivity(src: &[Point], dst: &[Point], seed: u64) -> Result<FlowProgram> {
    if src.len() != dst.len() {
        return Err(Error::Argument(format!(
            "{} source points but {} targets",
            src.len(),
            dst.len()
        )));
    }
    let Some(first) = src.first().or(dst.first()) else {
        return Ok(FlowProgram::default());
    };
    let algebra = first.algebra().clone();
    if algebra.nvars() != 2 || !algebra.relations().is_empty() {
        return Err(Error::Argument("plane transitivity works on the affine plane only".into()));
    }
    if src.iter().chain(dst).any(|p| !p.algebra().same(&algebra)) {
        return Err(Error::Argument("points on different varieties".into()));
    }
    check_distinct(src, "source")?;
    check_distinct(dst, "target")?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vars = algebra.vars().clone();
    let mut b = Builder {
        algebra: algebra.clone(),
        steps: Vec::new(),
    };

    if let Some(h) = separating_shear(&algebra, src, &mut rng) {
        b.push(0, h)?;
    }
    let dst_shear = separating_shear(&algebra, dst, &mut rng);
    let mut dst_prog = Builder {
        algebra: algebra.clone(),
        steps: Vec::new(),
    };
    if let Some(h) = &dst_shear {
        dst_prog.push(0, h.clone())?;
    }

    let cur = FlowProgram { steps: b.steps.clone() }.replay(src)?;
    let goal = FlowProgram { steps: dst_prog.steps.clone() }.replay(dst)?;
    let (cu, cv) = (coords(&cur, 0), coords(&cur, 1));
    let (gu, gv) = (coords(&goal, 0), coords(&goal, 1));
    let diff = |a: &[Rational], b: &[Rational]| -> Vec<Rational> {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    };

    if cu == gu {
        b.push(1, interpolate(&vars, 0, &cu, &diff(&gv, &cv)))?;
    } else {
        let mut v_now = cv.clone();
        if !all_distinct(&cv) {
            let spread: Vec<Rational> = (0..cv.len())
                .map(|i| Rational::from_integer((i as i64).into()))
                .collect();
            b.push(1, interpolate(&vars, 0, &cu, &diff(&spread, &cv)))?;
            v_now = spread;
        }
        b.push(0, interpolate(&vars, 1, &v_now, &diff(&gu, &cu)))?;
        b.push(1, interpolate(&vars, 0, &gu, &diff(&gv, &v_now)))?;
    }

    // undo the target's preliminary shear
    for step in dst_prog.steps.into_iter().rev() {
        b.steps.push(FlowStep {
            time: -step.time,
            derivation: step.derivation,
        });
    }

    let program = FlowProgram { steps: b.steps };
    let trace = program.trace(src)?;
    for tuple in &trace {
        check_distinct(tuple, "intermediate").map_err(|_| {
            Error::Argument("flow program collapsed two points".into())
        })?;
    }
    let end = trace.last().unwrap();
    if end.iter().zip(dst).any(|(p, q)| p.coords() != q.coords()) {
        return Err(Error::Argument("flow program failed replay verification".into()));
    }
    Ok(program)
}
