//! Buchberger's algorithm with the product and chain criteria.

use std::collections::BTreeSet;

use crate::poly::{Monomial, Polynomial};

/// Full reduction of `f` by `basis`. Basis elements must be monic.
pub fn reduce(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let vars = f.vars().clone();
    let mut p = f.clone();
    let mut rem = Polynomial::zero(&vars);
    while let Some((m, c)) = p.leading_term() {
        let (m, c) = (m.clone(), c.clone());
        let divisor = basis.iter().find_map(|g| {
            let lm = g.leading_monomial()?;
            lm.quotient_of(&m).map(|q| (g, q))
        });
        match divisor {
            Some((g, q)) => p.add_scaled_shifted(&-c, &q, g),
            None => {
                p.add_term(m.clone(), -c.clone());
                rem.add_term(m, c);
            }
        }
    }
    rem
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (fm, fc) = f.leading_term().expect("nonzero");
    let (gm, gc) = g.leading_term().expect("nonzero");
    let l = fm.lcm(gm);
    let mut s = Polynomial::zero(f.vars());
    s.add_scaled_shifted(&fc.recip(), &fm.quotient_of(&l).unwrap(), f);
    s.add_scaled_shifted(&-gc.recip(), &gm.quotient_of(&l).unwrap(), g);
    s
}

fn lm(p: &Polynomial) -> &Monomial {
    p.leading_monomial().expect("basis elements are nonzero")
}

/// Reduced Gröbner basis of the ideal generated by `gens`, sorted by
/// increasing leading monomial. The unit ideal yields `[1]`.
pub fn buchberger(gens: &[Polynomial]) -> Vec<Polynomial> {
    let mut g: Vec<Polynomial> = Vec::new();
    for f in gens {
        let r = reduce(f, &g);
        if !r.is_zero() {
            g.push(r.monic());
        }
    }
    if let Some(one) = g.iter().find(|p| p.is_constant()) {
        return vec![one.monic()];
    }

    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..g.len() {
        for i in 0..j {
            pending.insert((i, j));
        }
    }

    while !pending.is_empty() {
        // normal selection strategy: smallest lcm first
        let &(i, j) = pending
            .iter()
            .min_by(|a, b| lm(&g[a.0]).lcm(lm(&g[a.1])).cmp(&lm(&g[b.0]).lcm(lm(&g[b.1]))))
            .unwrap();
        pending.remove(&(i, j));

        if lm(&g[i]).is_coprime(lm(&g[j])) {
            continue;
        }
        let l = lm(&g[i]).lcm(lm(&g[j]));
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        let chain = (0..g.len()).any(|k| {
            k != i
                && k != j
                && lm(&g[k]).divides(&l)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chain {
            continue;
        }

        let r = reduce(&s_polynomial(&g[i], &g[j]), &g);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return vec![Polynomial::one(r.vars())];
        }
        let n = g.len();
        g.push(r.monic());
        for k in 0..n {
            pending.insert((k, n));
        }
    }

    interreduce(g)
}

fn interreduce(g: Vec<Polynomial>) -> Vec<Polynomial> {
    // drop elements whose leading monomial is divisible by another's
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (i, p) in g.iter().enumerate() {
        let redundant = g.iter().enumerate().any(|(k, q)| {
            k != i && lm(q).divides(lm(p)) && (lm(q) != lm(p) || k < i)
        });
        if !redundant {
            minimal.push(p.clone());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, p)| p.clone())
            .collect();
        let (m, c) = minimal[i].leading_term().unwrap();
        let lead = Polynomial::term(minimal[i].vars(), c.clone(), m.clone());
        let tail = &minimal[i] - &lead;
        let p = &lead + &reduce(&tail, &others);
        out.push(p.monic());
    }
    out.sort_by(|a, b| lm(a).cmp(lm(b)));
    out
}

/// True iff `g` is a Gröbner basis: every S-polynomial reduces to zero.
pub fn is_groebner(g: &[Polynomial]) -> bool {
    for j in 0..g.len() {
        for i in 0..j {
            if !reduce(&s_polynomial(&g[i], &g[j]), g).is_zero() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
fn is_reduced(g: &[Polynomial]) -> bool {
    g.iter().enumerate().all(|(i, p)| {
        p.leading_coefficient().is_some_and(num_traits::One::is_one)
            && p.terms().all(|(m, _)| {
                g.iter()
                    .enumerate()
                    .all(|(k, q)| k == i || !lm(q).divides(m))
            })
    })
}
