//! Polynomial roots by Aberth–Ehrlich simultaneous iteration.
//!
//! Independent of the QZ code on purpose: the eigenvalue oracle must not
//! share a solver with the implementation it checks.

use crate::error::{Error, Result};
use crate::scalar::{abs, cone, czero, eps, lit, Real, C};

const MAX_SWEEPS: usize = 2000;

/// Value and derivative of `Σ c_i z^i` by Horner.
fn horner<T: Real>(c: &[C<T>], z: C<T>) -> (C<T>, C<T>) {
    let mut p = czero::<T>();
    let mut dp = czero::<T>();
    for &ci in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + ci;
    }
    (p, dp)
}

/// Roots of `Σ c_i λ^i` (ascending coefficients, repeated by multiplicity).
/// Trailing zero coefficients are dropped; exact zero roots are split off
/// before iterating.
pub fn polynomial_roots<T: Real>(coeffs: &[C<T>]) -> Result<Vec<C<T>>> {
    let mut c: Vec<C<T>> = coeffs.to_vec();
    while c.last().is_some_and(|z| *z == czero()) {
        c.pop();
    }
    if c.is_empty() {
        return Err(Error::NonRegular);
    }
    let zeros_at_origin = c.iter().take_while(|z| **z == czero()).count();
    let mut roots = vec![czero::<T>(); zeros_at_origin];
    let c: Vec<C<T>> = c[zeros_at_origin..].to_vec();
    let n = c.len() - 1;
    if n == 0 {
        return Ok(roots);
    }
    // Substitute λ = s·μ with s the geometric mean of the root moduli.
    let s = (abs(c[0]) / abs(c[n])).powf(T::one() / lit(n as f64));
    let s = if s.is_finite() && s > T::zero() { s } else { T::one() };
    let mut scaled = Vec::with_capacity(n + 1);
    let mut pw = T::one();
    for &ci in &c {
        scaled.push(ci * C::new(pw, T::zero()));
        pw *= s;
    }
    let lead = scaled[n];
    let scaled: Vec<C<T>> = scaled.into_iter().map(|z| z / lead).collect();
    let mut z: Vec<C<T>> = (0..n)
        .map(|j| {
            let th = lit::<T>(2.0 * std::f64::consts::PI * j as f64 / n as f64 + 0.4);
            C::new(th.cos(), th.sin())
        })
        .collect();
    let tol = lit::<T>(4.0) * eps::<T>();
    let mut converged = vec![false; n];
    for _ in 0..MAX_SWEEPS {
        let mut all = true;
        for j in 0..n {
            if converged[j] {
                continue;
            }
            let (p, dp) = horner(&scaled, z[j]);
            if p == czero() {
                converged[j] = true;
                continue;
            }
            let ratio = p / dp;
            let mut sum = czero::<T>();
            for k in 0..n {
                if k != j {
                    sum += cone::<T>() / (z[j] - z[k]);
                }
            }
            let step = ratio / (cone::<T>() - ratio * sum);
            if !(step.re.is_finite() && step.im.is_finite()) {
                return Err(Error::BackendFailure("root iteration diverged".into()));
            }
            z[j] -= step;
            if abs(step) <= tol * T::one().max(abs(z[j])) {
                converged[j] = true;
            } else {
                all = false;
            }
        }
        if all {
            break;
        }
    }
    roots.extend(z.into_iter().map(|r| r * C::new(s, T::zero())));
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;
    use proptest::prelude::*;

    fn expand(roots: &[C<f64>]) -> Vec<C<f64>> {
        let mut c = vec![cx(1.0, 0.0)];
        for &r in roots {
            let mut next = vec![cx(0.0, 0.0); c.len() + 1];
            for (i, &ci) in c.iter().enumerate() {
                next[i + 1] += ci;
                next[i] -= ci * r;
            }
            c = next;
        }
        c
    }

    #[test]
    fn cubic_with_plastic_root() {
        let r: Vec<C<f64>> = polynomial_roots(&[cx(1.0, 0.0), cx(-1.0, 0.0), cx(0.0, 0.0), cx(1.0, 0.0)]).unwrap();
        assert_eq!(r.len(), 3);
        assert!(r.iter().any(|z| (z - cx::<f64>(-1.324_717_957_244_746, 0.0)).norm() < 1e-14));
    }

    #[test]
    fn zero_roots_and_trailing_zeros() {
        let r =
            polynomial_roots(&[cx(0.0, 0.0), cx(0.0, 0.0), cx(-4.0, 0.0), cx(0.0, 0.0), cx(1.0, 0.0), cx(0.0, 0.0)])
                .unwrap();
        let mut m: Vec<f64> = r.iter().map(|z| z.re).collect();
        m.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(m.len(), 4);
        assert!((m[0] + 2.0).abs() < 1e-14 && m[1] == 0.0 && m[2] == 0.0 && (m[3] - 2.0).abs() < 1e-14);
        assert!(matches!(polynomial_roots::<f64>(&[cx(0.0, 0.0)]), Err(Error::NonRegular)));
    }

    proptest! {
        #[test]
        fn recovers_separated_roots(parts in proptest::collection::vec((-3.0f64..3.0, -3.0f64..3.0), 1..12)) {
            let roots: Vec<C<f64>> = parts.iter().map(|&(a, b)| cx(a, b)).collect();
            let min_gap = roots.iter().enumerate().flat_map(|(i, a)| roots[i + 1..].iter().map(move |b| (a - b).norm())).fold(f64::INFINITY, f64::min);
            prop_assume!(min_gap > 0.05);
            let found = polynomial_roots(&expand(&roots)).unwrap();
            for r in &roots {
                let best = found.iter().map(|f| (f - r).norm()).fold(f64::INFINITY, f64::min);
                prop_assert!(best < 1e-8, "root {r} missed by {best}");
            }
        }
    }
}
