use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::abelian::{IntMatrix, TorsionAmbient, TorsionSubgroup};
use crate::error::{Error, Result};

/// One irreducible component of a spectral cover: the degree `d` of its
/// reduced curve over the base, its multiplicity `m`, and the kernel `K_i`
/// of pulling back degree-zero line bundles to its normalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentData {
    degree: u64,
    multiplicity: u64,
    kernel: TorsionSubgroup,
}

impl ComponentData {
    /// Validates that `kernel` is killed by `degree`.
    ///
    /// A kernel equal to the whole `d`-torsion with `d >= 2` is rejected: the
    /// pullback kernel of a connected degree-`d` cover is dual to the Galois
    /// group of an abelian subcover, so it never fills `Pic^0(C)[d]`.
    pub fn new(degree: u64, multiplicity: u64, kernel: TorsionSubgroup) -> Result<Self> {
        if degree == 0 || multiplicity == 0 {
            return Err(Error::InvalidInput(
                "component degree and multiplicity must be positive".into(),
            ));
        }
        let d = BigInt::from(degree);
        if !kernel.scaled_by(&d).is_trivial() {
            return Err(Error::InvariantViolation(format!(
                "kernel of a degree-{degree} component must be killed by {degree}"
            )));
        }
        if degree >= 2 && kernel.order() == num_traits::pow(d, kernel.ambient().rank()) {
            return Err(Error::InvariantViolation(format!(
                "kernel of a degree-{degree} component cannot be the full {degree}-torsion"
            )));
        }
        Ok(Self {
            degree,
            multiplicity,
            kernel,
        })
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn multiplicity(&self) -> u64 {
        self.multiplicity
    }

    pub fn kernel(&self) -> &TorsionSubgroup {
        &self.kernel
    }
}

/// Combinatorial data of a spectral cover of degree `n` over a genus-`g` curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralCoverDescriptor {
    n: u64,
    g: u32,
    components: Vec<ComponentData>,
    ambient: TorsionAmbient,
}

impl SpectralCoverDescriptor {
    /// Checks degree additivity and re-embeds every kernel into the common
    /// ambient `(Z/M)^{2g}` with `M = lcm(n, m_i d_i)`.
    pub fn new(n: u64, g: u32, components: Vec<ComponentData>) -> Result<Self> {
        if n == 0 || g == 0 {
            return Err(Error::InvalidInput("n and g must be positive".into()));
        }
        if components.is_empty() {
            return Err(Error::InvalidInput(
                "a cover needs at least one component".into(),
            ));
        }
        if let Some(c) = components.iter().find(|c| c.kernel.ambient().genus() != g) {
            return Err(Error::InvariantViolation(format!(
                "kernel lives over genus {} but the base has genus {g}",
                c.kernel.ambient().genus()
            )));
        }
        let total: u64 = components.iter().map(|c| c.degree * c.multiplicity).sum();
        if total != n {
            return Err(Error::InvariantViolation(format!(
                "sum of multiplicity * degree is {total}, expected n = {n}"
            )));
        }
        let modulus = components
            .iter()
            .fold(n, |acc, c| acc.lcm(&(c.degree * c.multiplicity)));
        let ambient = TorsionAmbient::new(g, modulus)?;
        let components = components
            .into_iter()
            .map(|c| {
                // K_i is killed by gcd(d_i, M_i); read it there, then embed
                let local = BigInt::from(c.degree).gcd(c.kernel.ambient().modulus());
                let kernel = c.kernel.restrict_to_torsion(&local)?.embed_into(&ambient)?;
                Ok(ComponentData { kernel, ..c })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            n,
            g,
            components,
            ambient,
        })
    }

    /// The cover `C_n`: one component of degree 1 with multiplicity `n`.
    pub fn multiple_curve(n: u64, g: u32) -> Result<Self> {
        let kernel = TorsionAmbient::new(g, 1)?.trivial();
        Self::new(n, g, vec![ComponentData::new(1, n, kernel)?])
    }

    /// An integral cover with trivial pullback kernel.
    pub fn integral(n: u64, g: u32) -> Result<Self> {
        let kernel = TorsionAmbient::new(g, n)?.trivial();
        Self::new(n, g, vec![ComponentData::new(n, 1, kernel)?])
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn genus(&self) -> u32 {
        self.g
    }

    pub fn components(&self) -> &[ComponentData] {
        &self.components
    }

    /// The common ambient all kernels were embedded into.
    pub fn ambient(&self) -> &TorsionAmbient {
        &self.ambient
    }

    /// Fails only when the ambient modulus does not fit in an `i64`.
    pub fn to_file(&self) -> Result<DescriptorFile> {
        let small = |v: &BigInt| {
            v.to_i64()
                .ok_or_else(|| Error::InvalidInput(format!("{v} does not fit in a JSON integer")))
        };
        let modulus = small(self.ambient.modulus())?;
        let components = self
            .components
            .iter()
            .map(|c| {
                Ok(ComponentFile {
                    degree: c.degree,
                    multiplicity: c.multiplicity,
                    kernel_modulus: modulus,
                    kernel_generators: c
                        .kernel
                        .generators()
                        .row_vecs()
                        .iter()
                        .map(|r| r.iter().map(small).collect())
                        .collect::<Result<_>>()?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(DescriptorFile {
            n: self.n,
            g: self.g,
            components,
        })
    }
}

/// Smallest modulus whose torsion holds every preimage `[m_i]^{-1}(K_i)`
/// and the `n`-torsion: `lcm(n, lcm_i(m_i d_i))`.
///
/// `exp(K_i)` divides `d_i`, so the preimage is killed by `m_i d_i`.
pub fn ambient_modulus(desc: &SpectralCoverDescriptor) -> BigInt {
    desc.ambient.modulus().clone()
}

/// JSON shape of a descriptor file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DescriptorFile {
    pub n: u64,
    pub g: u32,
    pub components: Vec<ComponentFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentFile {
    pub degree: u64,
    pub multiplicity: u64,
    pub kernel_modulus: i64,
    #[serde(default)]
    pub kernel_generators: Vec<Vec<i64>>,
}

impl TryFrom<DescriptorFile> for SpectralCoverDescriptor {
    type Error = Error;

    fn try_from(file: DescriptorFile) -> Result<Self> {
        if file.g == 0 {
            return Err(Error::InvalidInput("g must be positive".into()));
        }
        let components = file
            .components
            .into_iter()
            .map(|c| {
                if c.kernel_modulus < 1 {
                    return Err(Error::InvalidInput(
                        "kernel_modulus must be positive".into(),
                    ));
                }
                let ambient = TorsionAmbient::new(file.g, c.kernel_modulus)?;
                let rows = IntMatrix::from_rows(ambient.rank(), &c.kernel_generators)?;
                let kernel = TorsionSubgroup::from_generators(ambient, &rows)?;
                ComponentData::new(c.degree, c.multiplicity, kernel)
            })
            .collect::<Result<Vec<_>>>()?;
        SpectralCoverDescriptor::new(file.n, file.g, components)
    }
}
