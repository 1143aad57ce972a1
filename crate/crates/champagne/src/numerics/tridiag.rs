//! Symmetric tridiagonal eigenvalues by Sturm counts and bisection.

use crate::error::{Error, Result};

/// Symmetric tridiagonal matrix: diagonal `d`, off-diagonal `e` (`e.len() == d.len() - 1`).
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalSym {
    d: Vec<f64>,
    e: Vec<f64>,
}

impl TridiagonalSym {
    pub fn new(d: Vec<f64>, e: Vec<f64>) -> Result<Self> {
        if d.is_empty() || e.len() + 1 != d.len() {
            return Err(Error::InvalidArgument(format!(
                "tridiagonal shape: {} diagonal, {} off-diagonal",
                d.len(),
                e.len()
            )));
        }
        if d.iter().chain(&e).any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("tridiagonal entries"));
        }
        Ok(Self { d, e })
    }

    pub fn len(&self) -> usize {
        self.d.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d.is_empty()
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.d
    }

    pub fn off_diagonal(&self) -> &[f64] {
        &self.e
    }

    /// Same matrix with the index order flipped.
    pub fn reversed(&self) -> Self {
        Self {
            d: self.d.iter().rev().copied().collect(),
            e: self.e.iter().rev().copied().collect(),
        }
    }

    /// Gershgorin enclosure of the spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.d.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.e[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.e[i].abs() } else { 0.0 };
            lo = lo.min(self.d[i] - left - right);
            hi = hi.max(self.d[i] + left + right);
        }
        (lo, hi)
    }

    /// Number of eigenvalues strictly below `x`.
    ///
    /// Counts negative pivots of the LDLᵀ factorisation of `T - xI`. The
    /// ratio form never builds the growing determinant sequence, so it needs
    /// no periodic rescaling; tiny pivots are pushed to `-pivmin`.
    pub fn sturm_count(&self, x: f64) -> usize {
        let pivmin = self.pivmin();
        let mut count = 0;
        let mut q = self.d[0] - x;
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
        for i in 1..self.d.len() {
            let e = self.e[i - 1];
            q = self.d[i] - x - e * e / q;
            if q.abs() < pivmin {
                q = -pivmin;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn pivmin(&self) -> f64 {
        let emax = self.e.iter().fold(1.0f64, |m, v| m.max(v * v));
        f64::MIN_POSITIVE * emax
    }
}

/// Eigenvalues of `t` in `[lo, hi)`, ascending, each refined by bisection to
/// relative width `1e-12`. Repeated eigenvalues appear once per multiplicity.
pub fn tridiag_eigenvalues(t: &TridiagonalSym, window: (f64, f64)) -> Result<Vec<f64>> {
    tridiag_eigenvalues_tol(t, window, 1e-12)
}

/// [`tridiag_eigenvalues`] with an explicit relative bisection tolerance.
pub fn tridiag_eigenvalues_tol(t: &TridiagonalSym, window: (f64, f64), rel_tol: f64) -> Result<Vec<f64>> {
    let (lo, hi) = window;
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(Error::NonFinite("eigenvalue window"));
    }
    if lo >= hi {
        return Err(Error::EmptyInterval { a: lo, b: hi });
    }
    let k_lo = t.sturm_count(lo);
    let k_hi = t.sturm_count(hi);
    let mut out = Vec::with_capacity(k_hi.saturating_sub(k_lo));
    // Absolute floor: eigenvalues near zero are only determined to ~eps·|T|.
    let (g_lo, g_hi) = t.gershgorin();
    let abs_tol = f64::EPSILON * g_lo.abs().max(g_hi.abs());
    let mut left = lo;
    for k in k_lo..k_hi {
        // count(left) <= k holds for the bracket left over from index k - 1.
        let (lam, l) = bisect_index(t, k, left, hi, rel_tol, abs_tol);
        out.push(lam);
        left = l;
    }
    Ok(out)
}

// k-th eigenvalue (0-based, counted from -inf) given count(l) <= k < count(u).
// Returns the midpoint and the final lower bracket.
fn bisect_index(t: &TridiagonalSym, k: usize, mut l: f64, mut u: f64, rel_tol: f64, abs_tol: f64) -> (f64, f64) {
    loop {
        let mid = 0.5 * (l + u);
        if mid <= l || mid >= u || u - l <= rel_tol * l.abs().max(u.abs()) + abs_tol {
            return (mid, l);
        }
        if t.sturm_count(mid) > k {
            u = mid;
        } else {
            l = mid;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laplacian_stencil() {
        let t = TridiagonalSym::new(vec![2.0; 3], vec![-1.0; 2]).unwrap();
        let ev = tridiag_eigenvalues(&t, (0.0, 4.0)).unwrap();
        let want = [2.0 - 2f64.sqrt(), 2.0, 2.0 + 2f64.sqrt()];
        assert_eq!(ev.len(), 3);
        for (g, w) in ev.iter().zip(want) {
            assert!((g - w).abs() < 1e-11, "{ev:?}");
        }
    }

    #[test]
    fn one_by_one() {
        let t = TridiagonalSym::new(vec![5.0], vec![]).unwrap();
        let ev = tridiag_eigenvalues(&t, (0.0, 10.0)).unwrap();
        assert_eq!(ev.len(), 1);
        assert!((ev[0] - 5.0).abs() < 1e-11);
    }

    #[test]
    fn multiplicity_kept() {
        // Decoupled blocks with the same eigenvalue.
        let t = TridiagonalSym::new(vec![1.0, 1.0, 3.0], vec![0.0, 0.0]).unwrap();
        let ev = tridiag_eigenvalues(&t, (0.0, 2.0)).unwrap();
        assert_eq!(ev.len(), 2);
        assert!(ev.iter().all(|v| (v - 1.0).abs() < 1e-12));
    }

    #[test]
    fn window_excludes() {
        let t = TridiagonalSym::new(vec![2.0; 3], vec![-1.0; 2]).unwrap();
        let ev = tridiag_eigenvalues(&t, (1.0, 3.0)).unwrap();
        assert_eq!(ev.len(), 1);
    }

    #[test]
    fn bad_shape() {
        assert!(TridiagonalSym::new(vec![1.0, 2.0], vec![]).is_err());
        assert!(TridiagonalSym::new(vec![], vec![]).is_err());
    }
}
