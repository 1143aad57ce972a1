use super::{LatticeCell, LatticeScale, Point2, SpatialHash, TransportOptions};
use crate::error::{Error, Result};

/// Basis as columns `[[x1, x2], [y1, y2]]`.
pub(crate) type Basis = [[f64; 2]; 2];
/// Integer change of basis, same layout.
pub(crate) type IntBasis = [[i64; 2]; 2];

pub(crate) fn col(b: &Basis, k: usize) -> Point2 {
    [b[0][k], b[1][k]]
}

pub(crate) fn from_cols(u: Point2, v: Point2) -> Basis {
    [[u[0], v[0]], [u[1], v[1]]]
}

pub(crate) fn det(b: &Basis) -> f64 {
    b[0][0] * b[1][1] - b[0][1] * b[1][0]
}

pub(crate) fn norm(p: Point2) -> f64 {
    p[0].hypot(p[1])
}

/// Lagrange–Gauss reduction. Returns `(R, U)` with `R = B U`, `U`
/// unimodular, `|r1| <= |r2|`, `|r1·r2| <= |r1|²/2` and `det R > 0`.
pub(crate) fn reduce(b: &Basis) -> (Basis, IntBasis) {
    let mut u = col(b, 0);
    let mut v = col(b, 1);
    let mut cu = [1i64, 0];
    let mut cv = [0i64, 1];
    for _ in 0..200 {
        if norm(u) > norm(v) {
            std::mem::swap(&mut u, &mut v);
            std::mem::swap(&mut cu, &mut cv);
        }
        let uu = u[0] * u[0] + u[1] * u[1];
        let mu = ((u[0] * v[0] + u[1] * v[1]) / uu).round();
        if mu == 0.0 || !mu.is_finite() {
            break;
        }
        v = [v[0] - mu * u[0], v[1] - mu * u[1]];
        let m = mu as i64;
        cv = [cv[0] - m * cu[0], cv[1] - m * cu[1]];
    }
    if u[0] * v[1] - u[1] * v[0] < 0.0 {
        v = [-v[0], -v[1]];
        cv = [-cv[0], -cv[1]];
    }
    (from_cols(u, v), [[cu[0], cv[0]], [cu[1], cv[1]]])
}

pub fn estimate_cell(cloud: &[Point2], anchor_hint: Point2, scale: LatticeScale) -> Result<LatticeCell> {
    estimate_cell_with(cloud, anchor_hint, scale, &TransportOptions::default())
}

/// Cell at the cloud point nearest `anchor_hint`.
///
/// Among pairs of near neighbours of the anchor that are far from
/// parallel and whose fourth corner is another cloud point, the pair with
/// the smallest total length wins; it is then Gauss-reduced.
pub fn estimate_cell_with(
    cloud: &[Point2],
    anchor_hint: Point2,
    scale: LatticeScale,
    opts: &TransportOptions,
) -> Result<LatticeCell> {
    let rescaled: Vec<Point2> = cloud.iter().map(|p| scale.apply(*p)).collect();
    let hash = SpatialHash::new(rescaled, 1.0)?;
    let fail = || Error::NotLocallyLattice {
        x: anchor_hint[0],
        y: anchor_hint[1],
    };
    let (ia, _) = hash.nearest(scale.apply(anchor_hint));
    let a = hash.point(ia);
    let near: Vec<(usize, f64)> = hash
        .k_nearest(a, opts.neighbours + 1)
        .into_iter()
        .filter(|(i, _)| *i != ia)
        .collect();

    let mut best: Option<(f64, Point2, Point2)> = None;
    for (x, &(i, ni)) in near.iter().enumerate() {
        for &(j, nj) in &near[x + 1..] {
            let p = hash.point(i);
            let q = hash.point(j);
            let u = [p[0] - a[0], p[1] - a[1]];
            let v = [q[0] - a[0], q[1] - a[1]];
            let d = u[0] * v[1] - u[1] * v[0];
            if d.abs() < 0.3 * ni * nj {
                continue;
            }
            let (k, r) = hash.nearest([a[0] + u[0] + v[0], a[1] + u[1] + v[1]]);
            if k == ia || k == i || k == j {
                continue;
            }
            if r > opts.snap_fraction * ni.min(nj) {
                continue;
            }
            let len = ni + nj;
            if best.map_or(true, |(l, _, _)| len < l) {
                best = Some((len, u, v));
            }
        }
    }
    let (_, u, v) = best.ok_or_else(fail)?;
    let (r, _) = reduce(&from_cols(u, v));
    Ok(LatticeCell {
        anchor: cloud[ia],
        v1: scale.unapply(col(&r, 0)),
        v2: scale.unapply(col(&r, 1)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(map: impl Fn(f64, f64) -> Point2) -> Vec<Point2> {
        let mut out = Vec::new();
        for i in -5..=5 {
            for j in -5..=5 {
                out.push(map(i as f64, j as f64));
            }
        }
        out
    }

    #[test]
    fn square_lattice() {
        let cloud = grid(|x, y| [x, y]);
        let c = estimate_cell(&cloud, [0.1, -0.1], LatticeScale::new(1.0, 1.0).unwrap()).unwrap();
        assert_eq!(c.anchor, [0.0, 0.0]);
        let mut v = [c.v1, c.v2];
        v.sort_by(|a, b| a[0].abs().total_cmp(&b[0].abs()));
        assert_eq!((v[0][0], v[0][1].abs()), (0.0, 1.0));
        assert_eq!((v[1][0].abs(), v[1][1]), (1.0, 0.0));
    }

    #[test]
    fn sheared_lattice() {
        let cloud = grid(|x, y| [x, x + y]);
        let c = estimate_cell(&cloud, [0.0, 0.0], LatticeScale::new(1.0, 1.0).unwrap()).unwrap();
        assert!((c.det().abs() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn scattered_points_rejected() {
        let cloud = vec![[0.0, 0.0], [1.0, 0.0], [5.0, 5.0]];
        assert!(matches!(
            estimate_cell(&cloud, [0.0, 0.0], LatticeScale::new(1.0, 1.0).unwrap()),
            Err(Error::NotLocallyLattice { .. })
        ));
    }

    #[test]
    fn reduction_tracks_integers() {
        let b = from_cols([1.0, 0.2], [7.3, 1.1]);
        let (r, u) = reduce(&b);
        for k in 0..2 {
            for row in 0..2 {
                let want = b[row][0] * u[0][k] as f64 + b[row][1] * u[1][k] as f64;
                assert!((r[row][k] - want).abs() < 1e-12);
            }
        }
        assert_eq!((u[0][0] * u[1][1] - u[0][1] * u[1][0]).abs(), 1);
        assert!(det(&r) > 0.0);
    }
}
