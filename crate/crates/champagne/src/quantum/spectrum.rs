use rayon::prelude::*;

use super::{sector_eigenvalues, QuantumConfig};
use crate::error::{Error, Result};

/// Joint eigenvalue `(E, j = m h)` of `(Ĥ, Ĵ)`; `n` counts levels within the sector from 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumPoint {
    pub m: i32,
    pub n: usize,
    pub energy: f64,
    pub j: f64,
}

impl SpectrumPoint {
    pub fn point(&self) -> [f64; 2] {
        [self.energy, self.j]
    }
}

/// Eigenvalue `re + i im` of `Ĥ + iεĴ`, labelled like its joint eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexSpectrumPoint {
    pub m: i32,
    pub n: usize,
    pub re: f64,
    pub im: f64,
}

/// Sectors solved per parallel batch while widening `m`.
const BATCH: i32 = 8;

/// All joint eigenvalues with `E <= cfg.e_max`, sorted by `(m, n)`.
///
/// Only `m >= 0` is solved; `-m` reuses the same levels, so the set is
/// exactly symmetric under `j -> -j`.
pub fn joint_spectrum(cfg: &QuantumConfig) -> Result<Vec<SpectrumPoint>> {
    cfg.validate()?;
    let mut sectors: Vec<Vec<f64>> = Vec::new();
    match cfg.m_max {
        Some(mm) => {
            let mm = i32::try_from(mm).map_err(|_| Error::InvalidConfig(format!("m_max {mm} too large")))?;
            sectors = (0..=mm)
                .into_par_iter()
                .map(|m| sector_eigenvalues(m, cfg))
                .collect::<Result<_>>()?;
        }
        None => {
            // Levels rise with |m|, so the first empty sector ends the scan.
            let mut start = 0;
            'widen: loop {
                let batch: Vec<Vec<f64>> = (start..start + BATCH)
                    .into_par_iter()
                    .map(|m| sector_eigenvalues(m, cfg))
                    .collect::<Result<_>>()?;
                for levels in batch {
                    if levels.is_empty() {
                        break 'widen;
                    }
                    sectors.push(levels);
                }
                start += BATCH;
            }
        }
    }

    let mut out = Vec::new();
    for m in -(sectors.len() as i32 - 1)..sectors.len() as i32 {
        for (n, &energy) in sectors[m.unsigned_abs() as usize].iter().enumerate() {
            out.push(SpectrumPoint {
                m,
                n,
                energy,
                j: m as f64 * cfg.h,
            });
        }
    }
    Ok(out)
}

/// Spectrum of `P_ε = Ĥ + iεĴ`: each `(E, j)` goes to `E + iεj`.
pub fn perturbed_spectrum(js: &[SpectrumPoint], epsilon: f64) -> Result<Vec<ComplexSpectrumPoint>> {
    if !(epsilon >= 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidArgument(format!("epsilon must be >= 0, got {epsilon}")));
    }
    Ok(js
        .iter()
        .map(|p| {
            let [re, im] = chi(p.point(), epsilon);
            ComplexSpectrumPoint { m: p.m, n: p.n, re, im }
        })
        .collect())
}

/// `χ(u1, u2) = (u1, ε u2)`.
pub fn chi(u: [f64; 2], epsilon: f64) -> [f64; 2] {
    [u[0], epsilon * u[1]]
}

pub fn chi_inverse(u: [f64; 2], epsilon: f64) -> Result<[f64; 2]> {
    if !(epsilon > 0.0) {
        return Err(Error::SingularChi);
    }
    Ok([u[0], u[1] / epsilon])
}

/// `χ⁻¹` of the perturbed spectrum as a point cloud in the `(E, j)` plane.
pub fn spectral_lattice(ps: &[ComplexSpectrumPoint], epsilon: f64) -> Result<Vec<[f64; 2]>> {
    ps.iter().map(|p| chi_inverse([p.re, p.im], epsilon)).collect()
}
