use super::cell::{col, det, from_cols, norm, reduce, Basis, IntBasis};
use super::{estimate_cell_with, LatticeCell, LatticeScale, Point2, SpatialHash, TransportOptions};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix2;

/// Outcome of carrying a cell around a loop.
#[derive(Debug, Clone, PartialEq)]
pub struct TransportResult {
    /// `(v1⁰ v2⁰)⁻¹ (v1ᶠ v2ᶠ)`, rounded.
    pub matrix: IntMatrix2,
    /// Unrounded holonomy.
    pub raw: [[f64; 2]; 2],
    /// Largest distance of a raw entry from its rounded value.
    pub rounding_residual: f64,
    /// Worst snap distance of each step (rescaled units).
    pub residuals: Vec<f64>,
    /// Snap limit in force at each step (rescaled units).
    pub limits: Vec<f64>,
    pub steps: usize,
    pub initial: LatticeCell,
    pub final_cell: LatticeCell,
    /// Anchor after each step, starting with the initial anchor.
    pub path: Vec<Point2>,
}

impl TransportResult {
    /// Largest snap distance as a fraction of its limit.
    pub fn worst_fraction(&self) -> f64 {
        self.residuals
            .iter()
            .zip(&self.limits)
            .map(|(r, l)| r / l)
            .fold(0.0, f64::max)
    }
}

fn add(a: Point2, b: Point2) -> Point2 {
    [a[0] + b[0], a[1] + b[1]]
}

fn sub(a: Point2, b: Point2) -> Point2 {
    [a[0] - b[0], a[1] - b[1]]
}

fn dist(a: Point2, b: Point2) -> f64 {
    norm(sub(a, b))
}

fn int_mul(a: &IntBasis, b: &IntBasis) -> IntBasis {
    let mut out = [[0i64; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn int_inverse(u: &IntBasis) -> IntBasis {
    // Reduction matrices are unimodular, so the adjugate times det is the inverse.
    let d = u[0][0] * u[1][1] - u[0][1] * u[1][0];
    [[d * u[1][1], -d * u[0][1]], [-d * u[1][0], d * u[0][0]]]
}

fn frame(b: &Basis, t: &IntBasis) -> Basis {
    let mut out = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = b[i][0] * t[0][j] as f64 + b[i][1] * t[1][j] as f64;
        }
    }
    out
}

/// Snaps the cell at `target` with edges `c1`, `c2` onto the cloud.
fn snap_cell(
    hash: &SpatialHash,
    target: Point2,
    c1: Point2,
    c2: Point2,
    limit: f64,
) -> std::result::Result<(usize, Point2, Basis, f64), String> {
    let (na, ra) = hash.nearest(target);
    let an = hash.point(na);
    let (n1, r1) = hash.nearest(add(an, c1));
    let (n2, r2) = hash.nearest(add(an, c2));
    let worst = ra.max(r1).max(r2);
    if worst >= limit {
        return Err(format!("snap distance {worst:.3} exceeds {limit:.3}"));
    }
    if n1 == na || n2 == na || n1 == n2 {
        return Err("cell corners merged".into());
    }
    let bn = from_cols(sub(hash.point(n1), an), sub(hash.point(n2), an));
    if det(&bn).abs() <= 1e-9 * norm(col(&bn, 0)) * norm(col(&bn, 1)) {
        return Err("cell collapsed".into());
    }
    Ok((na, an, bn, worst))
}

/// Carries `cell0` around the closed polyline `lp` and returns the holonomy.
///
/// The anchor moves by single lattice steps (an edge, or the sum or
/// difference of both edges) towards each vertex in turn, and finally back
/// to where it started. After each step the anchor and both edge endpoints
/// are snapped to the nearest cloud points; a snap further than
/// `snap_fraction` of the shorter edge aborts. The edges are kept
/// Gauss-reduced, with the integer bookkeeping that maps them back to the
/// carried frame.
pub fn transport_cell(
    cloud: &[Point2],
    cell0: &LatticeCell,
    lp: &[Point2],
    scale: LatticeScale,
    opts: &TransportOptions,
) -> Result<TransportResult> {
    if lp.is_empty() {
        return Err(Error::InvalidArgument("empty loop".into()));
    }
    let rescaled: Vec<Point2> = cloud.iter().map(|p| scale.apply(*p)).collect();
    let f0 = from_cols(scale.apply(cell0.v1), scale.apply(cell0.v2));
    if det(&f0).abs() <= 1e-12 * norm(col(&f0, 0)) * norm(col(&f0, 1)) {
        return Err(Error::InvalidArgument("initial cell is degenerate".into()));
    }
    let edge = norm(col(&f0, 0)).min(norm(col(&f0, 1)));
    let hash = SpatialHash::new(rescaled, edge)?;

    let (b0, u0) = reduce(&f0);
    let mut b = b0;
    let mut t = int_inverse(&u0);
    let (ia0, r0) = hash.nearest(scale.apply(cell0.anchor));
    let limit0 = opts.snap_fraction * edge;
    if r0 >= limit0 {
        return Err(Error::TransportBroke {
            step: 0,
            reason: "anchor is not a cloud point".into(),
        });
    }
    let mut ia = ia0;
    let mut a = hash.point(ia);

    let mut residuals = Vec::new();
    let mut limits = Vec::new();
    let mut path = vec![scale.unapply(a)];
    let targets = lp
        .iter()
        .map(|p| (scale.apply(*p), opts.hysteresis))
        .chain(std::iter::once((a, 0.0)));
    for (target, margin) in targets {
        for _ in 0..opts.max_steps_per_vertex {
            let (c1, c2) = (col(&b, 0), col(&b, 1));
            let moves = [
                c1,
                [-c1[0], -c1[1]],
                c2,
                [-c2[0], -c2[1]],
                add(c1, c2),
                [-c1[0] - c2[0], -c1[1] - c2[1]],
                sub(c1, c2),
                sub(c2, c1),
            ];
            let here = dist(target, a);
            let limit = opts.snap_fraction * norm(c1).min(norm(c2));
            let gain = margin * norm(c1).min(norm(c2));
            let mut ranked: Vec<(f64, Point2)> = moves
                .iter()
                .map(|mv| (dist(target, add(a, *mv)), *mv))
                .filter(|(d, _)| *d < here - gain - 1e-12)
                .collect();
            if ranked.is_empty() {
                break;
            }
            ranked.sort_by(|x, y| x.0.total_cmp(&y.0));
            let step = residuals.len() + 1;
            // Best move first; a move whose cell does not snap cleanly gives
            // way to the next one that still gets closer.
            let mut accepted = None;
            let mut first_failure = None;
            for (_, mv) in &ranked {
                match snap_cell(&hash, add(a, *mv), c1, c2, limit) {
                    Ok(found) => {
                        accepted = Some(found);
                        break;
                    }
                    Err(reason) => {
                        first_failure.get_or_insert(reason);
                    }
                }
            }
            let Some((na, an, bn, worst)) = accepted else {
                let reason = first_failure.unwrap_or_default();
                return Err(Error::TransportBroke { step, reason });
            };
            residuals.push(worst);
            limits.push(limit);
            // frame = bn t = r u⁻¹ t
            let (r, u) = reduce(&bn);
            t = int_mul(&int_inverse(&u), &t);
            b = r;
            ia = na;
            a = an;
            path.push(scale.unapply(a));
        }
    }
    if ia != ia0 {
        return Err(Error::TransportBroke {
            step: residuals.len(),
            reason: "walk did not return to the initial anchor".into(),
        });
    }

    let ff = frame(&b, &t);
    let d0 = det(&f0);
    let inv0 = [[f0[1][1] / d0, -f0[0][1] / d0], [-f0[1][0] / d0, f0[0][0] / d0]];
    let mut raw = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            raw[i][j] = inv0[i][0] * ff[0][j] + inv0[i][1] * ff[1][j];
        }
    }
    let rounded = raw.map(|row| row.map(f64::round));
    let rounding_residual = (0..4)
        .map(|k| (raw[k / 2][k % 2] - rounded[k / 2][k % 2]).abs())
        .fold(0.0, f64::max);
    if !(rounding_residual < opts.rounding_threshold) {
        return Err(Error::NonIntegralHolonomy {
            residual: rounding_residual,
        });
    }
    let matrix = IntMatrix2::new(
        rounded[0][0] as i64,
        rounded[0][1] as i64,
        rounded[1][0] as i64,
        rounded[1][1] as i64,
    );
    if matrix.det().abs() != 1 {
        return Err(Error::NotUnimodular { det: matrix.det() });
    }
    Ok(TransportResult {
        matrix,
        raw,
        rounding_residual,
        steps: residuals.len(),
        residuals,
        limits,
        initial: *cell0,
        final_cell: LatticeCell {
            anchor: cloud[ia],
            v1: scale.unapply(col(&ff, 0)),
            v2: scale.unapply(col(&ff, 1)),
        },
        path,
    })
}

/// Cell estimated at the loop's first vertex, then transported around it.
pub fn lattice_monodromy(
    cloud: &[Point2],
    lp: &[Point2],
    scale: LatticeScale,
    opts: &TransportOptions,
) -> Result<TransportResult> {
    let first = *lp.first().ok_or_else(|| Error::InvalidArgument("empty loop".into()))?;
    let cell = estimate_cell_with(cloud, first, scale, opts)?;
    transport_cell(cloud, &cell, lp, scale, opts)
}
