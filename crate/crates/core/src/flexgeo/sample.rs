//! Rational sample points, found by solving the single relation for a
//! variable in which it is linear.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Point;
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::poly::{Polynomial, Rational};

const MAX_TRIES: usize = 1000;

/// Small random rational `p/q` with `|p| <= 6`, `1 <= q <= 3`.
pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    let p: i64 = rng.gen_range(-6..=6);
    let q: i64 = rng.gen_range(1..=3);
    Rational::new(p.into(), q.into())
}

fn linear_variable(r: &Polynomial) -> Option<usize> {
    (0..r.vars().len()).find(|&i| r.degree_in(i) == 1)
}

/// Samples a point on the variety of `algebra` satisfying `accept`.
///
/// Relationless algebras get random coordinates. With one relation, all
/// coordinates but one are drawn at random and the remaining one is solved
/// for. Other presentations are rejected.
pub fn sample_point<R, F>(algebra: &Algebra, rng: &mut R, accept: F) -> Result<Point>
where
    R: Rng,
    F: Fn(&[Rational]) -> bool,
{
    let n = algebra.nvars();
    let solve = match algebra.relations() {
        [] => None,
        [r] => {
            let i = linear_variable(r).ok_or_else(|| {
                Error::Argument(format!("relation {r} is not linear in any variable"))
            })?;
            Some((i, r.partial(i), r))
        }
        _ => {
            return Err(Error::Argument(
                "point sampling supports at most one relation".into(),
            ))
        }
    };
    for _ in 0..MAX_TRIES {
        let mut coords: Vec<Rational> = (0..n).map(|_| random_rational(rng)).collect();
        if let Some((i, coeff, r)) = &solve {
            coords[*i] = Rational::zero();
            let c = coeff.eval(&coords)?;
            if c.is_zero() {
                continue;
            }
            let rest = r.eval(&coords)?;
            coords[*i] = -rest / c;
        }
        if accept(&coords) {
            return Point::new(algebra, coords);
        }
    }
    Err(Error::Argument(format!(
        "no acceptable point found in {MAX_TRIES} tries"
    )))
}

/// Seeded stream of sample points.
pub struct PointSampler {
    algebra: Algebra,
    rng: ChaCha8Rng,
}

impl PointSampler {
    pub fn new(algebra: &Algebra, seed: u64) -> Self {
        PointSampler {
            algebra: algebra.clone(),
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn next_point(&mut self) -> Result<Point> {
        sample_point(&self.algebra, &mut self.rng, |_| true)
    }

    pub fn next_point_where<F: Fn(&[Rational]) -> bool>(&mut self, accept: F) -> Result<Point> {
        sample_point(&self.algebra, &mut self.rng, accept)
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}
