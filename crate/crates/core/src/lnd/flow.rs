use std::fmt;

use num_traits::{One, Zero};

use super::{Automorphism, Derivation};
use crate::algebra::{Algebra, AlgebraElement};
use crate::error::Result;
use crate::poly::Rational;

/// `exp(t delta)(f)` as a polynomial in the flow parameter `t`.
///
/// `coefficients[k]` is `delta^k(f) / k!`. The last coefficient is nonzero;
/// the flow of zero has no coefficients.
#[derive(Clone)]
pub struct FlowPolynomial {
    algebra: Algebra,
    coefficients: Vec<AlgebraElement>,
}

impl PartialEq for FlowPolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.same(&other.algebra) && self.coefficients == other.coefficients
    }
}

impl FlowPolynomial {
    fn trimmed(algebra: &Algebra, mut coefficients: Vec<AlgebraElement>) -> Self {
        while coefficients.last().is_some_and(AlgebraElement::is_zero) {
            coefficients.pop();
        }
        FlowPolynomial {
            algebra: algebra.clone(),
            coefficients,
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn coefficients(&self) -> &[AlgebraElement] {
        &self.coefficients
    }

    pub fn coefficient(&self, k: usize) -> Option<&AlgebraElement> {
        self.coefficients.get(k)
    }

    /// Degree in `t`; `None` for the zero flow.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    /// Specializes `t` to a rational value.
    pub fn at(&self, t: &Rational) -> AlgebraElement {
        let mut acc = self.algebra.zero();
        for c in self.coefficients.iter().rev() {
            acc = &acc.scale(t) + c;
        }
        acc
    }

    /// Product as polynomials in `t` with algebra coefficients.
    pub fn mul(&self, other: &FlowPolynomial) -> FlowPolynomial {
        if self.coefficients.is_empty() || other.coefficients.is_empty() {
            return Self::trimmed(&self.algebra, Vec::new());
        }
        let mut out = vec![self.algebra.zero(); self.coefficients.len() + other.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in other.coefficients.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::trimmed(&self.algebra, out)
    }
}

impl fmt::Display for FlowPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficients.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "t*({c})")?,
                _ => write!(f, "t^{k}*({c})")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FlowPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FlowPolynomial({self})")
    }
}

/// `exp(t delta)(f) = sum_k t^k delta^k(f) / k!`, finite because `delta` is
/// certified locally nilpotent.
pub fn exp_flow(delta: &Derivation, f: &AlgebraElement) -> Result<FlowPolynomial> {
    let iterates = delta.iterates(f)?;
    let mut factorial = Rational::one();
    let mut coefficients = Vec::with_capacity(iterates.len());
    for (k, g) in iterates.into_iter().enumerate() {
        if k > 0 {
            factorial *= Rational::from_integer(k.into());
        }
        coefficients.push(g.scale(&factorial.recip()));
    }
    Ok(FlowPolynomial::trimmed(delta.algebra(), coefficients))
}

/// The automorphism `exp(t0 delta)`, with inverse `exp(-t0 delta)`.
pub fn flow_automorphism(delta: &Derivation, t0: &Rational) -> Result<Automorphism> {
    let algebra = delta.algebra();
    let at = |t: &Rational| -> Result<Vec<AlgebraElement>> {
        algebra
            .gens()
            .iter()
            .map(|x| {
                Ok(exp_flow(delta, x)?.at(t))
            })
            .collect()
    };
    let forward = at(t0)?;
    if t0.is_zero() {
        return Ok(Automorphism::identity(algebra));
    }
    let backward = at(&-t0.clone())?;
    Automorphism::new(algebra, forward, backward)
}
