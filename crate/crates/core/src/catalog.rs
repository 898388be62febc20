//! Named example varieties with their derivations and side data.
//!
//! Names are stable ASCII identifiers: `affine:<n>`, `russell`, `ym:<m>:<j>`,
//! `dg:<n>`, `cstar_c2`.
//!
//! The `dg:<n>` entry models the coordinate ring of `V_n` as the subalgebra
//! generated by `x_k = a2^(b-k) a3 a4^k` and `y = a1 a2` inside the ambient
//! hypersurface `a1 a4 - a2^b a3 = 1` (`b = n - 1`). That ambient relation is
//! the only one of the form `a1 a4 - a2^p a3^q = c` (`p <= b + 1`,
//! `q, c in {0, 1}`) for which both derivations are well defined and
//! `delta(y) = 1 + n x_0`; see [`dg_candidate_relation_passes`].

use num_integer::Integer;

use crate::algebra::{Algebra, AlgebraElement, FPAlgebra, Presentation};
use crate::error::{Error, Result};
use crate::invariants::GeneratorFamily;
use crate::lnd::{Derivation, WeightGrading, DEFAULT_NILPOTENCY_CAP};
use crate::poly::{rat, Polynomial, Vars};

/// A machine-checkable identity `delta(element) = expected`.
#[derive(Debug, Clone)]
pub struct ExpectedIdentity {
    pub label: String,
    pub derivation: String,
    pub element: AlgebraElement,
    pub expected: AlgebraElement,
}

impl ExpectedIdentity {
    pub fn holds(&self, entry: &CatalogEntry) -> Result<bool> {
        let delta = entry
            .derivation(&self.derivation)
            .ok_or_else(|| Error::Argument(format!("unknown derivation {}", self.derivation)))?;
        Ok(delta.apply(&self.element)? == self.expected)
    }
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub algebra: Algebra,
    pub derivations: Vec<Derivation>,
    pub grading: Option<WeightGrading>,
    pub generators: Option<GeneratorFamily>,
    pub expected: Vec<ExpectedIdentity>,
    /// Caveats to print alongside any result drawn from this entry.
    pub warnings: Vec<String>,
}

impl CatalogEntry {
    pub fn derivation(&self, name: &str) -> Option<&Derivation> {
        self.derivations.iter().find(|d| d.name() == name)
    }

    pub fn var(&self, name: &str) -> AlgebraElement {
        self.algebra.var_named(name).expect("catalog variable")
    }
}

pub const CATALOG_NAMES: &[&str] = &["affine:<n>", "russell", "ym:<m>:<j>", "dg:<n>", "cstar_c2"];

pub const DG_WARNING: &str = "dg:<n> results are conditional on the adopted ambient presentation a1*a4 - a2^b*a3 = 1 of V_n";

/// Resolves a catalog name such as `ym:3:2`.
pub fn lookup(name: &str) -> Result<CatalogEntry> {
    let parts: Vec<&str> = name.split(':').collect();
    let num = |s: &str| -> Result<u32> {
        s.parse()
            .map_err(|_| Error::Argument(format!("bad number {s:?} in catalog name {name:?}")))
    };
    match parts.as_slice() {
        ["affine", n] => make_affine_space(num(n)?),
        ["russell"] => make_russell(),
        ["ym", m, j] => make_ym_surface(num(m)?, num(j)?),
        ["dg", n] => make_dg_surface(num(n)?),
        ["cstar_c2"] => make_cstar_c2(),
        _ => Err(Error::Argument(format!(
            "unknown catalog entry {name:?}; known: {}",
            CATALOG_NAMES.join(", ")
        ))),
    }
}

fn ring(names: &[&str]) -> Result<(Vars, Vec<Polynomial>)> {
    let vs = Vars::new(names)?;
    let xs = (0..names.len()).map(|i| Polynomial::var(&vs, i)).collect();
    Ok((vs, xs))
}

fn certified(algebra: &Algebra, name: &str, images: Vec<Polynomial>) -> Result<Derivation> {
    Ok(Derivation::new(algebra, name, images)?.certify(DEFAULT_NILPOTENCY_CAP))
}

fn entry(name: impl Into<String>, algebra: Algebra, derivations: Vec<Derivation>) -> CatalogEntry {
    CatalogEntry {
        name: name.into(),
        algebra,
        derivations,
        grading: None,
        generators: None,
        expected: Vec::new(),
        warnings: Vec::new(),
    }
}

/// Affine `n`-space with its partial derivatives. Variables are `u, v` for
/// `n = 2`, `u, v, w` for `n = 3`, and `x1..xn` otherwise.
pub fn make_affine_space(n: u32) -> Result<CatalogEntry> {
    if n < 1 {
        return Err(Error::Argument("affine space needs n >= 1".into()));
    }
    let names: Vec<String> = match n {
        1 => vec!["u".into()],
        2 => vec!["u".into(), "v".into()],
        3 => vec!["u".into(), "v".into(), "w".into()],
        _ => (1..=n).map(|i| format!("x{i}")).collect(),
    };
    let algebra = FPAlgebra::new(Presentation::affine(&names)?)?;
    let derivations = (0..n as usize)
        .map(|i| Derivation::partial(&algebra, i).certify(DEFAULT_NILPOTENCY_CAP))
        .collect();
    Ok(entry(format!("affine:{n}"), algebra, derivations))
}

/// The Russell cubic `x + x^2 y + z^2 + t^3 = 0` with two LNDs killing `x`:
/// `delta_a = x^2 d/dz - 2z d/dy` and `delta_b = x^2 d/dt - 3t^2 d/dy`.
pub fn make_russell() -> Result<CatalogEntry> {
    let (vs, v) = ring(&["x", "y", "z", "t"])?;
    let (x, y, z, t) = (&v[0], &v[1], &v[2], &v[3]);
    let rel = &(&(x + &(&x.pow(2) * y)) + &z.pow(2)) + &t.pow(3);
    let algebra = FPAlgebra::new(Presentation::new(vs.clone(), vec![rel])?)?;
    let zero = Polynomial::zero(&vs);
    let delta_a = certified(
        &algebra,
        "delta_a",
        vec![zero.clone(), z.scale(&rat(-2)), x.pow(2), zero.clone()],
    )?;
    let delta_b = certified(
        &algebra,
        "delta_b",
        vec![zero.clone(), t.pow(2).scale(&rat(-3)), zero, x.pow(2)],
    )?;
    let mut e = entry("russell", algebra.clone(), vec![delta_a, delta_b]);
    let xe = e.var("x");
    let zero_el = algebra.zero();
    for d in ["delta_a", "delta_b"] {
        e.expected.push(ExpectedIdentity {
            label: format!("{d}(x) = 0"),
            derivation: d.into(),
            element: xe.clone(),
            expected: zero_el.clone(),
        });
    }
    Ok(e)
}

/// `Y = {xy = z^m - 1}` with
/// `delta_1 = x^(j-1) (m z^(m-1) d/dy + x d/dz)`,
/// `delta_2 = y^(j-1) (m z^(m-1) d/dx + y d/dz)`
/// and the `Z_m` weights `(1, -1, j)`.
pub fn make_ym_surface(m: u32, j: u32) -> Result<CatalogEntry> {
    if m < 2 || j < 1 || j >= m || m.gcd(&j) != 1 {
        return Err(Error::Argument(format!(
            "ym:{m}:{j} needs m >= 2, 1 <= j < m and gcd(m, j) = 1"
        )));
    }
    let (vs, v) = ring(&["x", "y", "z"])?;
    let (x, y, z) = (&v[0], &v[1], &v[2]);
    let one = Polynomial::one(&vs);
    let rel = &(&(x * y) - &z.pow(m)) + &one;
    let algebra = FPAlgebra::new(Presentation::new(vs.clone(), vec![rel])?)?;
    let mz = z.pow(m - 1).scale(&rat(m as i64));
    let xj1 = x.pow(j - 1);
    let yj1 = y.pow(j - 1);
    let zero = Polynomial::zero(&vs);
    let d1 = certified(
        &algebra,
        "delta_1",
        vec![zero.clone(), &xj1 * &mz, x.pow(j)],
    )?;
    let d2 = certified(&algebra, "delta_2", vec![&yj1 * &mz, zero, y.pow(j)])?;
    let mut e = entry(format!("ym:{m}:{j}"), algebra, vec![d1, d2]);
    e.grading = Some(WeightGrading::new(m, &[1, -1, j as i64])?);
    Ok(e)
}

fn dg_ambient(b: u32, p: u32, q: u32, c: i64) -> Result<(Vars, Vec<Polynomial>, Algebra)> {
    let (vs, a) = ring(&["a1", "a2", "a3", "a4"])?;
    let rel = &(&(&a[0] * &a[3]) - &(&a[1].pow(p) * &a[2].pow(q))) - &Polynomial::constant(&vs, rat(c));
    let _ = b;
    let algebra = FPAlgebra::new(Presentation::new(vs.clone(), vec![rel])?)?;
    Ok((vs, a, algebra))
}

fn dg_derivations(b: u32, vs: &Vars, a: &[Polynomial], algebra: &Algebra) -> Result<(Derivation, Derivation)> {
    let zero = Polynomial::zero(vs);
    let delta = Derivation::new(
        algebra,
        "delta",
        vec![
            (&a[1].pow(b - 1) * &a[2]).scale(&rat(b as i64)),
            a[3].clone(),
            zero.clone(),
            zero.clone(),
        ],
    )?;
    let delta_p = Derivation::new(
        algebra,
        "delta_prime",
        vec![
            zero.clone(),
            zero,
            a[0].pow(b),
            &a[0].pow(b - 1) * &a[1].pow(b),
        ],
    )?;
    Ok((delta, delta_p))
}

/// Danilov-Gizatullin surface `V_n` (`n >= 3`), through the ambient algebra
/// `Q[a1..a4]/(a1 a4 - a2^b a3 - 1)`, `b = n - 1`, with
/// `delta = b a2^(b-1) a3 d/da1 + a4 d/da2` and
/// `delta' = a1^(b-1) a2^b d/da4 + a1^b d/da3`.
pub fn make_dg_surface(n: u32) -> Result<CatalogEntry> {
    if n < 3 {
        return Err(Error::Argument(format!("dg:{n} needs n >= 3")));
    }
    let b = n - 1;
    let (vs, a, algebra) = dg_ambient(b, b, 1, 1)?;
    let (delta, delta_p) = dg_derivations(b, &vs, &a, &algebra)?;
    let delta = delta.certify(DEFAULT_NILPOTENCY_CAP);
    let delta_p = delta_p.certify(DEFAULT_NILPOTENCY_CAP);

    let nf = |p: &Polynomial| algebra.normal_form(p).expect("own context");
    let xs: Vec<AlgebraElement> = (0..=b)
        .map(|k| nf(&(&(&a[1].pow(b - k) * &a[2]) * &a[3].pow(k))))
        .collect();
    let y = nf(&(&a[0] * &a[1]));
    let mut family = GeneratorFamily::new(&algebra);
    for (k, xk) in xs.iter().enumerate() {
        family = family.with(format!("x{k}"), xk.clone());
    }
    family = family.with("y", y.clone()).with_witness("y", delta_p.clone());

    let mut expected = vec![ExpectedIdentity {
        label: format!("delta(y) = 1 + {n}*x0"),
        derivation: "delta".into(),
        element: y.clone(),
        expected: &algebra.one() + &xs[0].scale(&rat(n as i64)),
    }];
    for k in 0..=b {
        let (rhs, label) = if k < b {
            (xs[k as usize + 1].scale(&rat((b - k) as i64)), format!("delta(x{k}) = {}*x{}", b - k, k + 1))
        } else {
            (algebra.zero(), format!("delta(x{k}) = 0"))
        };
        expected.push(ExpectedIdentity {
            label,
            derivation: "delta".into(),
            element: xs[k as usize].clone(),
            expected: rhs,
        });
    }
    expected.push(ExpectedIdentity {
        label: "delta_prime(y) = 0".into(),
        derivation: "delta_prime".into(),
        element: y,
        expected: algebra.zero(),
    });

    Ok(CatalogEntry {
        name: format!("dg:{n}"),
        algebra,
        derivations: vec![delta, delta_p],
        grading: None,
        generators: Some(family),
        expected,
        warnings: vec![DG_WARNING.to_string()],
    })
}

/// Whether the ambient relation `a1 a4 - a2^p a3^q = c` makes both `dg`
/// derivations well defined and gives `delta(y) = 1 + n x_0`.
pub fn dg_candidate_relation_passes(n: u32, p: u32, q: u32, c: i64) -> Result<bool> {
    let b = n - 1;
    let (vs, a, algebra) = match dg_ambient(b, p, q, c) {
        Ok(t) => t,
        Err(Error::InconsistentPresentation) => return Ok(false),
        Err(e) => return Err(e),
    };
    let (delta, delta_p) = dg_derivations(b, &vs, &a, &algebra)?;
    if !delta.check_well_defined() || !delta_p.check_well_defined() {
        return Ok(false);
    }
    let nf = |p: &Polynomial| algebra.normal_form(p).expect("own context");
    let y = nf(&(&a[0] * &a[1]));
    let x0 = nf(&(&a[1].pow(b) * &a[2]));
    let expected = &algebra.one() + &x0.scale(&rat(n as i64));
    Ok(delta.apply(&y)? == expected)
}

/// `C^* x C^2` as `Q[s, t, u, v]/(st - 1)` with `d/du`, `d/dv`.
pub fn make_cstar_c2() -> Result<CatalogEntry> {
    let (vs, v) = ring(&["s", "t", "u", "v"])?;
    let rel = &(&v[0] * &v[1]) - &Polynomial::one(&vs);
    let algebra = FPAlgebra::new(Presentation::new(vs, vec![rel])?)?;
    let derivations = vec![
        Derivation::partial(&algebra, 2).certify(DEFAULT_NILPOTENCY_CAP),
        Derivation::partial(&algebra, 3).certify(DEFAULT_NILPOTENCY_CAP),
    ];
    Ok(entry("cstar_c2", algebra, derivations))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::ml_truncated;
    use crate::lnd::{weight_check, Equivariance, Nilpotency};

    #[test]
    fn lookup_names() {
        for name in ["affine:2", "russell", "ym:3:2", "dg:3", "cstar_c2"] {
            assert_eq!(lookup(name).unwrap().name, name);
        }
        assert!(lookup("ym:4:2").is_err());
        assert!(lookup("affine:0").is_err());
        assert!(lookup("dg:2").is_err());
        assert!(lookup("nope").is_err());
    }

    #[test]
    fn affine_plane() {
        let e = make_affine_space(2).unwrap();
        assert_eq!(e.algebra.vars().names(), ["u", "v"]);
        assert_eq!(e.derivations.len(), 2);
        let ml = ml_truncated(&e.derivations, 4).unwrap();
        assert_eq!(ml.dim(), 1);
    }

    #[test]
    fn russell_derivations() {
        let e = make_russell().unwrap();
        for d in &e.derivations {
            assert_eq!(d.certificates().well_defined, Some(true));
        }
        let da = e.derivation("delta_a").unwrap();
        match da.nilpotency_certificate(10) {
            Nilpotency::NilpotentWithBound(n) => assert!(n <= 4, "{n}"),
            other => panic!("{other:?}"),
        }
        for id in &e.expected {
            assert!(id.holds(&e).unwrap(), "{}", id.label);
        }
    }

    #[test]
    fn ym_examples() {
        let e = make_ym_surface(3, 2).unwrap();
        let d1 = e.derivation("delta_1").unwrap();
        assert_eq!(
            weight_check(d1, e.grading.as_ref().unwrap()).unwrap(),
            Equivariance::Equivariant
        );
        let e = make_ym_surface(2, 1).unwrap();
        assert!(e.derivation("delta_2").unwrap().check_well_defined());
        assert!(matches!(make_ym_surface(4, 2), Err(Error::Argument(_))));
    }

    #[test]
    fn dg_examples() {
        let e3 = make_dg_surface(3).unwrap();
        let gens = e3.generators.as_ref().unwrap();
        let delta = e3.derivation("delta").unwrap();
        let x1 = gens.get("x1").unwrap();
        assert_eq!(&delta.apply(x1).unwrap(), gens.get("x2").unwrap());
        let dp = e3.derivation("delta_prime").unwrap();
        assert!(dp.apply(gens.get("y").unwrap()).unwrap().is_zero());
        assert!(gens.check_witnesses().unwrap());

        let e4 = make_dg_surface(4).unwrap();
        for d in &e4.derivations {
            assert!(d.check_well_defined());
        }
        assert!(matches!(make_dg_surface(2), Err(Error::Argument(_))));
    }

    #[test]
    fn every_entry_is_certified_within_cap() {
        let names = [
            "affine:1", "affine:2", "affine:3", "russell", "ym:2:1", "ym:3:1", "ym:3:2", "ym:5:2",
            "ym:5:3", "dg:3", "dg:4", "dg:5", "dg:6", "cstar_c2",
        ];
        for name in names {
            let e = lookup(name).unwrap();
            for d in &e.derivations {
                assert!(d.is_certified_lnd(), "{name} {}", d.name());
            }
        }
    }

    #[test]
    fn dg_identities_hold_for_small_n() {
        for n in 3..=6 {
            let e = make_dg_surface(n).unwrap();
            for id in &e.expected {
                assert!(id.holds(&e).unwrap(), "n={n}: {}", id.label);
            }
        }
    }

    #[test]
    fn dg_relation_is_forced_within_candidates() {
        for n in 3..=5 {
            let b = n - 1;
            let mut passing = Vec::new();
            for p in 0..=b + 1 {
                for q in 0..=1 {
                    for c in 0..=1 {
                        if dg_candidate_relation_passes(n, p, q, c).unwrap() {
                            passing.push((p, q, c));
                        }
                    }
                }
            }
            assert_eq!(passing, vec![(b, 1, 1)], "n={n}");
        }
    }

    #[test]
    fn cstar_entry() {
        let e = make_cstar_c2().unwrap();
        assert_eq!(e.derivations[0].name(), "d/du");
        let ml = ml_truncated(&e.derivations, 1).unwrap();
        assert!(ml.dim() > 1);
    }
}
