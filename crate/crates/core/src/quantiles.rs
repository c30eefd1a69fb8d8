//! Lower and upper quantiles of step CDFs.

use crate::cdf::StepCdf;
use crate::error::{Error, Result};

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::AlphaOutOfRange(alpha))
    }
}

/// `inf { x : F(x) >= alpha }` for `alpha` in `(0, 1)`.
pub fn lower_quantile(f: &StepCdf, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(lower_quantile_unchecked(f, alpha))
}

/// `sup { x : F(x) <= alpha }` for `alpha` in `(0, 1)`.
pub fn upper_quantile(f: &StepCdf, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(upper_quantile_unchecked(f, alpha))
}

/// First breakpoint whose level reaches `alpha`. Defined for any
/// `alpha <= 1`.
#[inline]
pub(crate) fn lower_quantile_unchecked(f: &StepCdf, alpha: f64) -> f64 {
    let j = f.levels().partition_point(|&v| v < alpha);
    f.breakpoints()[j.min(f.len() - 1)]
}

/// First breakpoint whose level exceeds `alpha`. Defined for any
/// `alpha < 1`.
#[inline]
pub(crate) fn upper_quantile_unchecked(f: &StepCdf, alpha: f64) -> f64 {
    let j = f.levels().partition_point(|&v| v <= alpha);
    f.breakpoints()[j.min(f.len() - 1)]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cdf(xs: &[f64], vs: &[f64]) -> StepCdf {
        StepCdf::new(xs.to_vec(), vs.to_vec()).unwrap()
    }

    #[test]
    fn lower_examples() {
        for &alpha in &[0.01, 0.5, 0.99] {
            assert_eq!(lower_quantile(&StepCdf::point_mass(3.5), alpha), Ok(3.5));
        }
        let f = cdf(&[1.0, 2.0, 3.0, 4.0], &[0.25, 0.5, 0.75, 1.0]);
        assert_eq!(lower_quantile(&f, 0.5), Ok(2.0));
        let g = cdf(&[0.0, 10.0], &[0.5, 1.0]);
        assert_eq!(lower_quantile(&g, 0.5), Ok(0.0));
        assert_eq!(lower_quantile(&g, 0.9), Ok(10.0));
    }

    #[test]
    fn upper_examples() {
        for &alpha in &[0.01, 0.5, 0.99] {
            assert_eq!(upper_quantile(&StepCdf::point_mass(-1.0), alpha), Ok(-1.0));
        }
        let f = cdf(&[1.0, 2.0], &[0.5, 1.0]);
        assert_eq!(upper_quantile(&f, 0.5), Ok(2.0));
        assert_eq!(upper_quantile(&f, 0.4), Ok(1.0));
    }

    #[test]
    fn alpha_range() {
        let f = StepCdf::point_mass(0.0);
        for &bad in &[0.0, 1.0, -0.5, 1.5, f64::NAN] {
            assert!(matches!(lower_quantile(&f, bad), Err(Error::AlphaOutOfRange(_))));
            assert!(matches!(upper_quantile(&f, bad), Err(Error::AlphaOutOfRange(_))));
        }
    }

    // Scan oracles straight from the set definitions, over a fine grid of x.
    fn scan_lower(f: &StepCdf, alpha: f64) -> f64 {
        let mut x = f.min_support() - 1.0;
        while f.eval(x).value() < alpha {
            x += 0.125;
        }
        x
    }

    fn scan_upper(f: &StepCdf, alpha: f64) -> f64 {
        let mut x = f.max_support() + 1.0;
        while f.eval(x).value() > alpha {
            x -= 0.125;
        }
        // x is now the largest grid point with F(x) <= alpha; the supremum
        // is the next breakpoint up.
        *f.breakpoints().iter().find(|&&b| b > x).unwrap()
    }

    #[test]
    fn scan_oracle_agreement() {
        let f = cdf(&[-1.0, 0.0, 0.5, 2.0], &[0.125, 0.5, 0.625, 1.0]);
        for k in 1..64 {
            let alpha = k as f64 / 64.0;
            assert_eq!(lower_quantile(&f, alpha).unwrap(), scan_lower(&f, alpha), "{alpha}");
            assert_eq!(upper_quantile(&f, alpha).unwrap(), scan_upper(&f, alpha), "{alpha}");
        }
    }

    #[test]
    fn lower_left_continuous_upper_right_continuous() {
        let f = cdf(&[0.0, 1.0], &[0.5, 1.0]);
        let below = 0.5 - f64::EPSILON;
        let above = 0.5 + f64::EPSILON;
        assert_eq!(lower_quantile(&f, below), Ok(0.0));
        assert_eq!(lower_quantile(&f, 0.5), Ok(0.0));
        assert_eq!(lower_quantile(&f, above), Ok(1.0));
        assert_eq!(upper_quantile(&f, below), Ok(0.0));
        assert_eq!(upper_quantile(&f, 0.5), Ok(1.0));
        assert_eq!(upper_quantile(&f, above), Ok(1.0));
    }
}
