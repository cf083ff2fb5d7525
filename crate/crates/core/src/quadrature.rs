//! Adaptive composite Simpson quadrature.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Maximum number of interval bisections along any branch.
pub const MAX_DEPTH: u32 = 60;

/// Integrates `f` over `[a, b]` to absolute tolerance `tol`.
///
/// Each panel is accepted once the two-half Simpson estimate agrees with the
/// whole-panel estimate to `15 * tol`; the accepted value carries the
/// Richardson correction. Fails with [`Error::QuadratureFailure`] if some
/// panel still disagrees after [`MAX_DEPTH`] bisections.
pub fn adaptive_simpson<T, F>(f: F, a: T, b: T, tol: T) -> Result<T>
where
    T: Scalar,
    F: Fn(T) -> T,
{
    if a == b {
        return Ok(T::zero());
    }
    let fa = f(a);
    let fb = f(b);
    let m = mid(a, b);
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    recurse(&f, a, b, fa, fm, fb, whole, tol, 0)
}

#[inline]
fn mid<T: Scalar>(a: T, b: T) -> T {
    (a + b) * T::of(0.5)
}

#[inline]
fn simpson<T: Scalar>(a: T, b: T, fa: T, fm: T, fb: T) -> T {
    (b - a) / T::of(6.0) * (fa + T::of(4.0) * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn recurse<T, F>(f: &F, a: T, b: T, fa: T, fm: T, fb: T, whole: T, tol: T, depth: u32) -> Result<T>
where
    T: Scalar,
    F: Fn(T) -> T,
{
    let m = mid(a, b);
    let lm = mid(a, m);
    let rm = mid(m, b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if !delta.is_finite() {
        return Err(Error::QuadratureFailure);
    }
    if delta.abs() <= T::of(15.0) * tol {
        return Ok(left + right + delta / T::of(15.0));
    }
    if depth >= MAX_DEPTH {
        return Err(Error::QuadratureFailure);
    }
    let half = tol * T::of(0.5);
    let l = recurse(f, a, m, fa, flm, fm, left, half, depth + 1)?;
    let r = recurse(f, m, b, fm, frm, fb, right, half, depth + 1)?;
    Ok(l + r)
}
