use std::collections::HashMap;

use super::Point2;
use crate::error::{Error, Result};

/// Uniform-grid bucket index for nearest-point queries.
#[derive(Debug, Clone)]
pub struct SpatialHash {
    bucket: f64,
    points: Vec<Point2>,
    cells: HashMap<(i64, i64), Vec<usize>>,
    lo: (i64, i64),
    hi: (i64, i64),
}

impl SpatialHash {
    pub fn new(points: Vec<Point2>, bucket: f64) -> Result<Self> {
        if !(bucket > 0.0 && bucket.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "bucket size must be positive, got {bucket}"
            )));
        }
        if points.is_empty() {
            return Err(Error::InvalidArgument("empty point cloud".into()));
        }
        if points.iter().any(|p| !(p[0].is_finite() && p[1].is_finite())) {
            return Err(Error::NonFinite("point cloud"));
        }
        let mut cells: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
        let mut lo = (i64::MAX, i64::MAX);
        let mut hi = (i64::MIN, i64::MIN);
        for (i, p) in points.iter().enumerate() {
            let k = key(*p, bucket);
            lo = (lo.0.min(k.0), lo.1.min(k.1));
            hi = (hi.0.max(k.0), hi.1.max(k.1));
            cells.entry(k).or_default().push(i);
        }
        Ok(Self {
            bucket,
            points,
            cells,
            lo,
            hi,
        })
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn point(&self, i: usize) -> Point2 {
        self.points[i]
    }

    /// Index of and distance to the closest point; ties go to the lower index.
    pub fn nearest(&self, q: Point2) -> (usize, f64) {
        let found = self.k_nearest(q, 1);
        found[0]
    }

    /// The `k` closest points, nearest first (fewer if the cloud is smaller).
    pub fn k_nearest(&self, q: Point2, k: usize) -> Vec<(usize, f64)> {
        let k = k.min(self.points.len());
        let c = key(q, self.bucket);
        // Rings needed to cover every occupied bucket from c.
        let reach = [c.0 - self.lo.0, self.hi.0 - c.0, c.1 - self.lo.1, self.hi.1 - c.1]
            .into_iter()
            .max()
            .unwrap_or(0)
            .max(0);
        let mut found: Vec<(usize, f64)> = Vec::new();
        for ring in 0..=reach {
            self.scan_ring(c, ring, q, &mut found);
            if found.len() >= k {
                found.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
                // Anything in a later ring is at least `ring * bucket` away.
                if found[k - 1].1 <= ring as f64 * self.bucket {
                    found.truncate(k);
                    return found;
                }
            }
        }
        found.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
        found.truncate(k);
        found
    }

    fn scan_ring(&self, c: (i64, i64), ring: i64, q: Point2, out: &mut Vec<(usize, f64)>) {
        let mut visit = |kx: i64, ky: i64| {
            if let Some(ids) = self.cells.get(&(kx, ky)) {
                for &i in ids {
                    let p = self.points[i];
                    out.push((i, (p[0] - q[0]).hypot(p[1] - q[1])));
                }
            }
        };
        if ring == 0 {
            visit(c.0, c.1);
            return;
        }
        for dx in -ring..=ring {
            visit(c.0 + dx, c.1 - ring);
            visit(c.0 + dx, c.1 + ring);
        }
        for dy in -ring + 1..ring {
            visit(c.0 - ring, c.1 + dy);
            visit(c.0 + ring, c.1 + dy);
        }
    }
}

fn key(p: Point2, bucket: f64) -> (i64, i64) {
    ((p[0] / bucket).floor() as i64, (p[1] / bucket).floor() as i64)
}
