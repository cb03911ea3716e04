//! Seeded property suites behind `prymkit verify`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::Serialize;

use super::{rational_list, CliError, CliResult};
use crate::abelian::{dual_group, smith_normal_form, IntMatrix, TorsionAmbient, TorsionSubgroup};
use crate::cover::{
    galois_pushforward, phi_k, pullback_splits, squarefree_decompose, trace_translate,
};
use crate::norm::{
    norm_component_law, norm_element, norm_multiplicativity_check, norm_power_law,
    norm_scalar_check, AlgebraElement,
};
use crate::poly::{resultant, SpectralPoly};
use crate::random::{self, SuiteRng};
use crate::spectral::{
    endoscopic_dim, is_cn_cover, phi_surjection, pi0_prym, prym_component_group, variant_bound,
    SpectralCoverDescriptor,
};
use crate::Result;

pub const SUITES: &[&str] = &[
    "abelian",
    "spectral",
    "norm",
    "factor",
    "galois",
    "endoscopy",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyOutcome {
    pub property: String,
    pub cases: usize,
    /// First failing case, if any.
    pub counterexample: Option<String>,
}

/// One property: `cases` draws, each returning `Ok(None)` on success or a
/// description of the failure.
fn property(
    name: &str,
    cases: usize,
    rng: &mut SuiteRng,
    mut check: impl FnMut(&mut SuiteRng) -> Result<Option<String>>,
) -> PropertyOutcome {
    let mut counterexample = None;
    for i in 0..cases {
        let verdict = match check(rng) {
            Ok(v) => v,
            Err(e) => Some(format!("error: {e}")),
        };
        if let Some(why) = verdict {
            counterexample = Some(format!("case {i}: {why}"));
            break;
        }
    }
    PropertyOutcome {
        property: name.to_string(),
        cases,
        counterexample,
    }
}

fn fail_unless(ok: bool, why: impl FnOnce() -> String) -> Option<String> {
    (!ok).then(why)
}

pub fn run_suite(name: &str, seed: u64) -> CliResult<Vec<PropertyOutcome>> {
    let mut rng = random::rng(seed);
    let rng = &mut rng;
    Ok(match name {
        "abelian" => abelian(rng),
        "spectral" => spectral(rng),
        "norm" => norm(rng),
        "factor" => factor(rng),
        "galois" => galois(rng),
        "endoscopy" => endoscopy(),
        other => {
            return Err(CliError::Usage(format!(
                "unknown suite `{other}`; expected one of {}",
                SUITES.join(", ")
            )))
        }
    })
}

fn random_matrix(rng: &mut SuiteRng, max_dim: usize, bound: i64) -> IntMatrix {
    let (r, c) = (rng.gen_range(1..=max_dim), rng.gen_range(1..=max_dim));
    let rows: Vec<Vec<i64>> = (0..r)
        .map(|_| (0..c).map(|_| rng.gen_range(-bound..=bound)).collect())
        .collect();
    IntMatrix::from_rows(c, &rows).expect("rectangular")
}

fn small_subgroup(rng: &mut SuiteRng, ambient: &TorsionAmbient) -> TorsionSubgroup {
    let m: i64 = ambient.modulus().try_into().expect("small modulus");
    let rows: Vec<Vec<i64>> = (0..rng.gen_range(0..=2))
        .map(|_| (0..ambient.rank()).map(|_| rng.gen_range(0..m)).collect())
        .collect();
    let gens = IntMatrix::from_rows(ambient.rank(), &rows).expect("rectangular");
    TorsionSubgroup::from_generators(ambient.clone(), &gens).expect("valid generators")
}

fn elements(ambient: &TorsionAmbient) -> Vec<Vec<BigInt>> {
    let m: i64 = ambient.modulus().try_into().expect("small modulus");
    let mut out = vec![vec![]];
    for _ in 0..ambient.rank() {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..m).map(move |a| {
                    let mut w = v.clone();
                    w.push(BigInt::from(a));
                    w
                })
            })
            .collect();
    }
    out
}

fn abelian(rng: &mut SuiteRng) -> Vec<PropertyOutcome> {
    vec![
        property("smith_form", 200, rng, |rng| {
            let a = random_matrix(rng, 5, 30);
            let s = smith_normal_form(&a);
            let lhs = s.u.mul(&a)?.mul(&s.v)?;
            let diag = s.diagonal();
            let chain = diag.windows(2).all(|w| {
                w[0].is_zero() && w[1].is_zero() || !w[0].is_zero() && w[1].is_multiple_of(&w[0])
            });
            let unimodular = s.u.determinant()?.abs().is_one() && s.v.determinant()?.abs().is_one();
            Ok(fail_unless(lhs == s.d && chain && unimodular, || {
                format!("{a}")
            }))
        }),
        property("preimage_adjunction", 40, rng, |rng| {
            let amb = TorsionAmbient::new(1, rng.gen_range(2..=12))?;
            let h = small_subgroup(rng, &amb);
            let room = amb.modulus() / h.structure().exponent();
            let divisors: Vec<BigInt> = (1..=12)
                .map(BigInt::from)
                .filter(|d| room.is_multiple_of(d))
                .collect();
            let m = divisors[rng.gen_range(0..divisors.len())].clone();
            let pre = h.preimage_mul(&m)?;
            let bad = elements(&amb).into_iter().find(|x| {
                let mx: Vec<BigInt> = x.iter().map(|c| c * &m).collect();
                pre.contains(x) != h.contains(&mx)
            });
            Ok(bad.map(|x| format!("H = {h}, m = {m}, x = {x:?}")))
        }),
        property("intersection_by_enumeration", 40, rng, |rng| {
            let amb = TorsionAmbient::new(1, rng.gen_range(2..=12))?;
            let (a, b) = (small_subgroup(rng, &amb), small_subgroup(rng, &amb));
            let both = a.intersect(&b)?;
            let bad = elements(&amb)
                .into_iter()
                .find(|x| both.contains(x) != (a.contains(x) && b.contains(x)));
            Ok(bad.map(|x| format!("{a} and {b} at {x:?}")))
        }),
        property("dual_has_same_order", 40, rng, |rng| {
            let amb = TorsionAmbient::new(rng.gen_range(1..=2), rng.gen_range(2..=12))?;
            let h = small_subgroup(rng, &amb).structure();
            Ok(fail_unless(dual_group(&h).order() == h.order(), || {
                format!("{h}")
            }))
        }),
    ]
}

fn descriptor_summary(d: &SpectralCoverDescriptor) -> String {
    serde_json::to_string(&d.to_file().ok()).unwrap_or_default()
}

fn spectral(rng: &mut SuiteRng) -> Vec<PropertyOutcome> {
    vec![
        property("bound_and_surjectivity", 200, rng, |rng| {
            let d = random::descriptor(rng, 6, 2);
            let n = BigInt::from(d.n());
            let bound = num_traits::pow(n.clone(), d.ambient().rank());
            let k = prym_component_group(&d)?;
            let order = pi0_prym(&d)?.order();
            let phi = phi_surjection(&d)?;
            let ok = order <= bound
                && phi.is_surjective()
                && k.is_subgroup_of(&d.ambient().torsion(&n))
                && (order == bound) == is_cn_cover(&d)?;
            Ok(fail_unless(ok, || descriptor_summary(&d)))
        }),
        property("multiple_curve_attains_bound", 15, rng, {
            let mut cases = (2..=6u64).flat_map(|n| (1..=3u32).map(move |g| (n, g)));
            move |_| {
                let (n, g) = cases.next().expect("fifteen cases");
                let d = SpectralCoverDescriptor::multiple_curve(n, g)?;
                let pi0 = pi0_prym(&d)?;
                let ok = pi0
                    .invariant_factors()
                    .iter()
                    .all(|f| *f == BigInt::from(n))
                    && pi0.rank() == 2 * g as usize;
                Ok(fail_unless(ok, || format!("n = {n}, g = {g}: {pi0}")))
            }
        }),
    ]
}

fn norm(rng: &mut SuiteRng) -> Vec<PropertyOutcome> {
    let parent = |rng: &mut SuiteRng| {
        let n = rng.gen_range(1..=3);
        let dm = rng.gen_range(0..=1);
        random::spectral_poly(rng, n, dm, 3)
    };
    vec![
        property("multiplicativity", 30, rng, |rng| {
            let s = parent(rng);
            let (u, v) = (
                random::element(rng, &s, 2, 3),
                random::element(rng, &s, 2, 3),
            );
            Ok(fail_unless(
                norm_multiplicativity_check(&s, &u, &v)?,
                || format!("{s:?}"),
            ))
        }),
        property("scalar_law", 30, rng, |rng| {
            let s = parent(rng);
            let lambda = random::base_poly(rng, 2, 3);
            let u = random::element(rng, &s, 2, 3);
            Ok(fail_unless(norm_scalar_check(&s, &lambda, &u)?, || {
                format!("{s:?}")
            }))
        }),
        property("pullback_law", 30, rng, |rng| {
            let s = parent(rng);
            let r = random::base_poly(rng, 2, 3);
            let got = norm_element(&s, &AlgebraElement::base(&s, r.clone()))?;
            Ok(fail_unless(got == r.pow(s.n() as u32), || {
                format!("r = [{}] on {s:?}", rational_list(&r))
            }))
        }),
        property("power_law", 20, rng, |rng| {
            let n = rng.gen_range(1..=2);
            let p = random::spectral_poly(rng, n, 1, 2);
            let m = rng.gen_range(1..=2);
            let u = random::element(rng, &p.pow(m)?, 1, 2);
            Ok(fail_unless(norm_power_law(&p, m, &u)?, || {
                format!("{p:?}, m = {m}")
            }))
        }),
        property("component_law", 20, rng, |rng| {
            let (b, c) = (parent(rng), parent(rng));
            if b.deg_m() != c.deg_m() {
                return Ok(None);
            }
            let u = random::element(rng, &b.product(&c)?, 1, 2);
            match norm_component_law(&b, &c, &u) {
                Ok(ok) => Ok(fail_unless(ok, || format!("{b:?} * {c:?}"))),
                // common roots are excluded by the law's hypothesis
                Err(crate::Error::NotCoprime) => Ok(None),
                Err(e) => Err(e),
            }
        }),
        property("resultant_oracle", 30, rng, |rng| {
            let s = parent(rng);
            let u = random::element(rng, &s, 2, 3);
            let got = norm_element(&s, &u)?;
            Ok(fail_unless(
                got == resultant(&s.to_tpoly(), &u.to_tpoly()),
                || format!("{s:?}"),
            ))
        }),
    ]
}

fn factor(rng: &mut SuiteRng) -> Vec<PropertyOutcome> {
    vec![
        property("squarefree_reconstruction", 30, rng, |rng| {
            let nb = rng.gen_range(1..=2);
            let b = random::spectral_poly(rng, nb, 1, 3);
            let nc = rng.gen_range(1..=2);
            let c = random::spectral_poly(rng, nc, 1, 3);
            let s = b
                .pow(rng.gen_range(1..=3))?
                .product(&c.pow(rng.gen_range(1..=2))?)?;
            let f = squarefree_decompose(&s)?;
            let squarefree = f.factors.iter().all(|(q, _)| {
                let t = q.to_tpoly();
                crate::poly::TPoly::gcd_monic(&t, &t.derivative())
                    .is_some_and(|g| g.degree() == Some(0))
            });
            Ok(fail_unless(f.reconstruct()? == s && squarefree, || {
                format!("{s:?}")
            }))
        }),
        property("trace_translation", 30, rng, |rng| {
            let n = rng.gen_range(1..=4);
            let s = random::spectral_poly(rng, n, 1, 3);
            let t = trace_translate(&s)?;
            let shift = s
                .a(1)
                .scale(&BigRational::new(1.into(), (s.n() as i64).into()));
            let expected = SpectralPoly::from_tpoly(s.deg_m(), &s.to_tpoly().shift_t(&-&shift))?;
            Ok(fail_unless(t.is_trace_free() && t == expected, || {
                format!("{s:?}")
            }))
        }),
        property("power_map_trace", 30, rng, |rng| {
            let n = rng.gen_range(1..=3);
            let s = random::spectral_poly(rng, n, 1, 3);
            let k = rng.gen_range(1..=3u32);
            let p = phi_k(&s, k)?;
            let k_a1 = s.a(1).scale(&BigRational::from_integer(k.into()));
            Ok(fail_unless(
                p.a(1) == k_a1 && p.n() == k as usize * s.n(),
                || format!("{s:?}"),
            ))
        }),
        property("power_map_composition", 20, rng, |rng| {
            let s = random::spectral_poly(rng, 2, 1, 2);
            let (k1, k2) = (rng.gen_range(1..=2u32), rng.gen_range(1..=2u32));
            let ok = phi_k(&s, k1 * k2)? == phi_k(&phi_k(&s, k1)?, k2)?;
            Ok(fail_unless(ok, || format!("{s:?}, k = {k1} * {k2}")))
        }),
        property("translation_idempotent", 30, rng, |rng| {
            let b = random::spectral_poly(rng, 2, 1, 3);
            let c = random::spectral_poly(rng, 1, 1, 3);
            let s = b.pow(2)?.product(&c)?;
            let t = trace_translate(&s)?;
            let profile =
                |p: &SpectralPoly| squarefree_decompose(p).map(|f| f.multiplicity_profile());
            let ok = trace_translate(&t)? == t && profile(&t)? == profile(&s)?;
            Ok(fail_unless(ok, || format!("{s:?}")))
        }),
    ]
}

fn galois(rng: &mut SuiteRng) -> Vec<PropertyOutcome> {
    vec![
        property("round_trip", 12, rng, |rng| {
            let cover = random::double_cover(rng, 3);
            let m = rng.gen_range(1..=3);
            let deg_m = rng.gen_range(1..=2);
            let z = random::twisted(rng, &cover, m, deg_m);
            let s = galois_pushforward(&cover, &z)?;
            let two_u1 = z.u()[0].scale(&BigRational::from_integer(2.into()));
            let back = pullback_splits(&cover, &s)?;
            let ok = s.a(1) == two_u1
                && back.is_some_and(|b| galois_pushforward(&cover, &b).is_ok_and(|s2| s2 == s));
            Ok(fail_unless(ok, || {
                format!("{z:?} over f = [{}]", rational_list(cover.f()))
            }))
        }),
        property("non_images_rejected", 12, rng, |rng| {
            let cover = random::double_cover(rng, 3);
            let n = 2 * rng.gen_range(1..=3);
            let deg_m = rng.gen_range(1..=2);
            let s = random::spectral_poly(rng, n, deg_m, 5);
            Ok(fail_unless(pullback_splits(&cover, &s)?.is_none(), || {
                format!("{s:?}")
            }))
        }),
    ]
}

fn endoscopy() -> Vec<PropertyOutcome> {
    let grid = || (2..=12u64).flat_map(|n| (1..=6u64).map(move |g| (n, g)));
    let check = |name: &str, f: &dyn Fn(u64, u64) -> Result<bool>| {
        let mut counterexample = None;
        for (n, g) in grid() {
            match f(n, g) {
                Ok(true) => {}
                Ok(false) => counterexample = Some(format!("n = {n}, g = {g}")),
                Err(e) => counterexample = Some(format!("n = {n}, g = {g}: {e}")),
            }
            if counterexample.is_some() {
                break;
            }
        }
        PropertyOutcome {
            property: name.to_string(),
            cases: grid().count(),
            counterexample,
        }
    };
    vec![
        check("codimension_from_dimensions", &|n, g| {
            let vb = variant_bound(n, g)?;
            let p = vb.smallest_prime;
            Ok(
                endoscopic_dim(n, 1, g)? - endoscopic_dim(n, p, g)? == vb.codimension
                    && vb.bound == 2 * vb.codimension,
            )
        }),
        check("bound_exceeds_base_dimension", &|n, g| {
            let vb = variant_bound(n, g)?;
            Ok(g == 1 || vb.bound > (n * n - 1) * (g - 1))
        }),
        check("genus_one_is_degenerate", &|n, g| {
            Ok(g > 1
                || (1..=n)
                    .filter(|d| n % d == 0)
                    .all(|d| endoscopic_dim(n, d, 1) == Ok(0)))
        }),
    ]
}
