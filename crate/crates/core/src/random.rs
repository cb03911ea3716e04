//! Seeded random instances for the verification suites and tests.

use num_rational::BigRational;
use rand::Rng;

use crate::abelian::{IntMatrix, TorsionAmbient, TorsionSubgroup};
use crate::cover::{DoubleCoverData, TwistedSpectralPoly};
use crate::norm::AlgebraElement;
use crate::poly::{BasePolynomial, SpectralPoly};
use crate::spectral::{ComponentData, SpectralCoverDescriptor};

pub type SuiteRng = rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> SuiteRng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Integer polynomial of degree at most `max_deg`, coefficients in
/// `[-c, c]`.
pub fn base_poly(rng: &mut impl Rng, max_deg: usize, c: i64) -> BasePolynomial {
    let coeffs: Vec<i64> = (0..=max_deg).map(|_| rng.gen_range(-c..=c)).collect();
    BasePolynomial::from_ints(&coeffs)
}

/// Like [`base_poly`], with some coefficients replaced by small fractions.
pub fn rational_poly(rng: &mut impl Rng, max_deg: usize, c: i64) -> BasePolynomial {
    let coeffs = (0..=max_deg)
        .map(|_| {
            let den = if rng.gen_bool(0.3) {
                rng.gen_range(2..=5)
            } else {
                1
            };
            BigRational::new(rng.gen_range(-c..=c).into(), den.into())
        })
        .collect();
    BasePolynomial::new(coeffs)
}

/// Random spectral polynomial respecting `deg a_j <= j * deg_m`.
pub fn spectral_poly(rng: &mut impl Rng, n: usize, deg_m: usize, c: i64) -> SpectralPoly {
    let coeffs = (1..=n).map(|j| base_poly(rng, j * deg_m, c)).collect();
    SpectralPoly::new(deg_m, coeffs).expect("coefficients respect the degree bounds")
}

pub fn element(
    rng: &mut impl Rng,
    parent: &SpectralPoly,
    max_deg: usize,
    c: i64,
) -> AlgebraElement {
    let coords = (0..parent.n())
        .map(|_| base_poly(rng, max_deg, c))
        .collect();
    AlgebraElement::new(parent.clone(), coords).expect("one coordinate per basis vector")
}

/// Random subgroup of the `d`-torsion of `(Z/d)^{2g}` that is a valid
/// pullback kernel for a degree-`d` component.
pub fn component_kernel(rng: &mut impl Rng, g: u32, d: u64) -> TorsionSubgroup {
    let ambient = TorsionAmbient::new(g, d as i64).expect("positive modulus");
    loop {
        let k = rng.gen_range(0..=2);
        let rows: Vec<Vec<i64>> = (0..k)
            .map(|_| {
                (0..ambient.rank())
                    .map(|_| rng.gen_range(0..d as i64))
                    .collect()
            })
            .collect();
        let m = IntMatrix::from_rows(ambient.rank(), &rows).expect("rows have the ambient rank");
        let h = TorsionSubgroup::from_generators(ambient.clone(), &m).expect("valid generators");
        if d < 2 || h.order() < num_traits::pow(num_bigint::BigInt::from(d), ambient.rank()) {
            return h;
        }
    }
}

/// Random valid descriptor with `2 <= n <= max_n` and `1 <= g <= max_g`.
///
/// About one draw in six is the multiple curve `C_n`.
pub fn descriptor(rng: &mut impl Rng, max_n: u64, max_g: u32) -> SpectralCoverDescriptor {
    let n = rng.gen_range(2..=max_n);
    let g = rng.gen_range(1..=max_g);
    if rng.gen_range(0..6) == 0 {
        return SpectralCoverDescriptor::multiple_curve(n, g).expect("valid parameters");
    }
    let mut left = n;
    let mut comps = Vec::new();
    while left > 0 {
        let d = rng.gen_range(1..=left);
        let m = rng.gen_range(1..=left / d);
        let kernel = component_kernel(rng, g, d);
        comps.push(ComponentData::new(d, m, kernel).expect("kernel is d-torsion"));
        left -= d * m;
    }
    SpectralCoverDescriptor::new(n, g, comps).expect("degrees add up to n")
}

/// Squarefree `f` of degree `1..=max_deg` with small integer coefficients.
pub fn double_cover(rng: &mut impl Rng, max_deg: usize) -> DoubleCoverData {
    loop {
        let d = rng.gen_range(1..=max_deg);
        let mut coeffs: Vec<i64> = (0..d).map(|_| rng.gen_range(-3..=3)).collect();
        coeffs.push(rng.gen_range(1..=2));
        if let Ok(cover) = DoubleCoverData::new(BasePolynomial::from_ints(&coeffs)) {
            return cover;
        }
    }
}

/// Random `z = U + y V` of degree `m` respecting the graded bounds.
pub fn twisted(
    rng: &mut impl Rng,
    cover: &DoubleCoverData,
    m: usize,
    deg_m: usize,
) -> TwistedSpectralPoly {
    let (mut u, mut v) = (Vec::new(), Vec::new());
    for j in 1..=m {
        let (bu, bv) = cover.coefficient_bounds(deg_m, j);
        u.push(base_poly(rng, bu, 2));
        v.push(bv.map_or_else(BasePolynomial::zero, |b| base_poly(rng, b, 2)));
    }
    TwistedSpectralPoly::new(deg_m, u, v).expect("coefficients respect the bounds")
}
