use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};

/// A sign change of a real function. `lo == hi` marks a grid point where
/// the function vanished exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl Bracket {
    pub fn new(lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Result<Self> {
        if !(lo < hi) || f_lo * f_hi >= 0.0 {
            return Err(Error::Contract(format!(
                "invalid bracket [{lo}, {hi}] with f = ({f_lo}, {f_hi})"
            )));
        }
        Ok(Self { lo, hi, f_lo, f_hi })
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

/// Uniform grid of `n` points on `[lo, hi]`, endpoints included.
pub fn uniform_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let step = (hi - lo) / (n - 1) as f64;
    (0..n)
        .map(|i| if i + 1 == n { hi } else { lo + step * i as f64 })
        .collect()
}

fn brackets_from_samples(xs: &[f64], fs: &[f64]) -> Vec<Bracket> {
    let mut out = Vec::new();
    for i in 0..xs.len() {
        if fs[i] == 0.0 {
            out.push(Bracket {
                lo: xs[i],
                hi: xs[i],
                f_lo: 0.0,
                f_hi: 0.0,
            });
            continue;
        }
        if i + 1 < xs.len() && fs[i + 1] != 0.0 && fs[i].signum() != fs[i + 1].signum() {
            out.push(Bracket {
                lo: xs[i],
                hi: xs[i + 1],
                f_lo: fs[i],
                f_hi: fs[i + 1],
            });
        }
    }
    out
}

fn checked(op: &'static str, x: f64, v: Result<f64>) -> Result<f64> {
    let v = v?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Evaluation { op, location: x })
    }
}

/// All sign changes of `f` on a uniform `n`-point grid, in increasing order.
pub fn bracket_scan<F>(f: F, lo: f64, hi: f64, n: usize) -> Result<Vec<Bracket>>
where
    F: Fn(f64) -> Result<f64>,
{
    if n < 2 || !(lo < hi) {
        return Err(Error::domain("bracket_scan", format!("need n >= 2 and lo < hi (n={n})")));
    }
    let xs = uniform_grid(lo, hi, n);
    let fs = xs
        .iter()
        .map(|&x| checked("bracket_scan", x, f(x)))
        .collect::<Result<Vec<_>>>()?;
    Ok(brackets_from_samples(&xs, &fs))
}

/// Same as [`bracket_scan`] on an explicit grid, evaluated in parallel.
/// Results are merged in grid order, so the output does not depend on
/// scheduling.
pub fn bracket_scan_par<F>(f: F, xs: &[f64]) -> Result<Vec<Bracket>>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    if xs.len() < 2 || xs.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::domain("bracket_scan", "grid must be strictly increasing with >= 2 points"));
    }
    let fs = xs
        .par_iter()
        .map(|&x| checked("bracket_scan", x, f(x)))
        .collect::<Result<Vec<_>>>()?;
    Ok(brackets_from_samples(xs, &fs))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Refined {
    pub x: f64,
    pub fx: f64,
    pub iterations: u32,
}

/// Brent's method: inverse-quadratic/secant steps guarded by bisection.
///
/// Terminates when the enclosing interval is narrower than `tol` (plus a
/// few ulps of the root), returning the iterate with the smallest |f|. The
/// result never leaves the bracket.
pub fn refine_root<F>(f: F, bracket: &Bracket, tol: f64) -> Result<Refined>
where
    F: Fn(f64) -> Result<f64>,
{
    if bracket.is_degenerate() {
        return Ok(Refined {
            x: bracket.lo,
            fx: 0.0,
            iterations: 0,
        });
    }
    let mut a = bracket.lo;
    let mut b = bracket.hi;
    let mut fa = bracket.f_lo;
    let mut fb = bracket.f_hi;
    if fa * fb > 0.0 {
        return Err(Error::Contract("refine_root: bracket has no sign change".into()));
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;

    // Bisection alone needs at most ~1100 halvings to exhaust f64.
    for iter in 1..=2000u32 {
        if fb.signum() == fc.signum() && fb != 0.0 {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(Refined {
                x: b,
                fx: fb,
                iterations: iter,
            });
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = checked("refine_root", b, f(b))?;
    }
    Err(Error::no_convergence("refine_root", "iteration cap reached"))
}

/// Secant iteration in the complex plane.
///
/// Succeeds once |f| ≤ `tol`; a few extra steps are then taken while they
/// still shrink the update, so the returned point is polished to working
/// precision rather than merely inside the tolerance.
pub fn complex_secant<F>(f: F, z0: Complex64, z1: Complex64, tol: f64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    const MAX_ITER: usize = 100;
    if z0 == z1 {
        return Err(Error::domain("complex_secant", "z0 must differ from z1"));
    }
    let mut trace: Vec<Complex64> = vec![z0, z1];
    let mut za = z0;
    let mut zb = z1;
    let mut fa = f(za)?;
    let mut fb = f(zb)?;
    let mut polish = 0;
    for _ in 0..MAX_ITER {
        if !(fb.re.is_finite() && fb.im.is_finite()) {
            break;
        }
        if fb.norm() <= tol {
            polish += 1;
        }
        let denom = fb - fa;
        if denom == Complex64::new(0.0, 0.0) {
            if fb.norm() <= tol {
                return Ok(zb);
            }
            break;
        }
        let step = fb * (zb - za) / denom;
        let zc = zb - step;
        trace.push(zc);
        let tiny = 4.0 * f64::EPSILON * zc.norm().max(f64::MIN_POSITIVE);
        if fb.norm() <= tol && (step.norm() <= tiny || polish > 4) {
            let fc = f(zc)?;
            return Ok(if fc.norm() <= fb.norm() { zc } else { zb });
        }
        za = zb;
        fa = fb;
        zb = zc;
        fb = f(zb)?;
        if fb == Complex64::new(0.0, 0.0) {
            return Ok(zb);
        }
    }
    if fb.norm() <= tol {
        return Ok(zb);
    }
    let tail: Vec<String> = trace
        .iter()
        .rev()
        .take(6)
        .rev()
        .map(|z| format!("{:.6e}{:+.6e}i", z.re, z.im))
        .collect();
    Err(Error::no_convergence(
        "complex_secant",
        format!("|f| = {:e} after {} iterates; last: [{}]", fb.norm(), trace.len(), tail.join(", ")),
    ))
}

/// Locates the first local extremum of `f` on `(lo, hi)` of the requested
/// kind by a grid scan followed by golden-section refinement.
pub fn first_extremum<F>(f: F, lo: f64, hi: f64, n: usize, maximum: bool, tol: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let sign = if maximum { -1.0 } else { 1.0 };
    let g = |x: f64| f(x).map(|v| sign * v);
    let xs = uniform_grid(lo, hi, n);
    let gs = xs.iter().map(|&x| g(x)).collect::<Result<Vec<_>>>()?;
    let i = (1..n - 1)
        .find(|&i| gs[i] < gs[i - 1] && gs[i] <= gs[i + 1])
        .ok_or_else(|| Error::no_convergence("first_extremum", "no interior extremum on the grid"))?;
    let (mut a, mut b) = (xs[i - 1], xs[i + 1]);
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = b - r * (b - a);
    let mut x2 = a + r * (b - a);
    let mut g1 = g(x1)?;
    let mut g2 = g(x2)?;
    while (b - a).abs() > tol {
        if g1 < g2 {
            b = x2;
            x2 = x1;
            g2 = g1;
            x1 = b - r * (b - a);
            g1 = g(x1)?;
        } else {
            a = x1;
            x1 = x2;
            g1 = g2;
            x2 = a + r * (b - a);
            g2 = g(x2)?;
        }
    }
    let x = 0.5 * (a + b);
    Ok((x, f(x)?))
}
