use num_traits::ToPrimitive;

use crate::exact::{self, Rational};
use crate::systems::laakso_taagepera;
use crate::{Error, Result};

/// Hoeffding tail bound `exp(-2λ²/σ²)` for a deviation `λ` of a sum whose
/// ranges have squared widths summing to `σ²`.
pub fn hoeffding(lambda: f64, sigma_sq: f64) -> Result<f64> {
    if lambda.is_nan() || lambda < 0.0 {
        return Err(Error::domain("λ", lambda, "λ >= 0"));
    }
    if sigma_sq.is_nan() || sigma_sq <= 0.0 {
        return Err(Error::domain("σ²", sigma_sq, "σ² > 0"));
    }
    Ok((-2.0 * lambda * lambda / sigma_sq).exp())
}

/// Two-sided bound `2·exp(-2α² / LT_N)` on
/// `P_p(|Σ wᵢXᵢ - pΣwᵢ| ≥ αΣwᵢ)`.
pub fn pweight(alpha: f64, weights: &[Rational]) -> Result<f64> {
    if alpha.is_nan() || alpha < 0.0 {
        return Err(Error::domain("α", alpha, "α >= 0"));
    }
    let lt = exact::to_f64(&laakso_taagepera(weights)?);
    Ok(2.0 * (-2.0 * alpha * alpha / lt).exp())
}

fn excess_over_half(r: &Rational) -> Result<f64> {
    let excess = r - exact::rational(1, 2);
    if excess <= Rational::from_integer(0.into()) {
        return Err(Error::domain("r", r, "r > 1/2"));
    }
    Ok(excess.to_f64().unwrap_or(f64::NAN))
}

/// `exp(-2(r-½)²N)`, bounding the Penrose-Banzhaf efficiency for `r > ½`.
pub fn effb_bound(r: &Rational, voters: usize) -> Result<f64> {
    let d = excess_over_half(r)?;
    Ok((-2.0 * d * d * voters as f64).exp())
}

/// `½·exp(-2(r-½)²(N-1))`, bounding the Penrose-Banzhaf affirmative
/// success for `r > ½`.
pub fn sbp_bound(r: &Rational, voters: usize) -> Result<f64> {
    if voters == 0 {
        return Err(Error::domain("N", 0, "N >= 1"));
    }
    let d = excess_over_half(r)?;
    Ok(0.5 * (-2.0 * d * d * (voters - 1) as f64).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{integer, rational};

    #[test]
    fn effb_example() {
        let b = effb_bound(&rational(3, 5), 100).unwrap();
        assert!((b - (-2.0f64).exp()).abs() < 1e-12);
        assert!((b - 0.13534).abs() < 1e-5);
    }

    #[test]
    fn pweight_equal_weights() {
        for n in [1usize, 5, 40] {
            let ws = vec![integer(1); n];
            let alpha: f64 = 0.1;
            let expect = 2.0 * (-2.0 * alpha * alpha * n as f64).exp();
            assert!((pweight(alpha, &ws).unwrap() - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn hoeffding_at_zero_deviation() {
        assert_eq!(hoeffding(0.0, 7.0).unwrap(), 1.0);
        // λ = (r-½)N, σ² = N reproduces the efficiency bound.
        let (r, n) = (0.6, 50.0);
        let h = hoeffding((r - 0.5) * n, n).unwrap();
        assert!((h - effb_bound(&rational(3, 5), 50).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn domain_errors() {
        assert!(hoeffding(-1.0, 1.0).is_err());
        assert!(hoeffding(1.0, 0.0).is_err());
        assert!(hoeffding(f64::NAN, 1.0).is_err());
        assert!(pweight(-0.5, &[integer(1)]).is_err());
        assert!(pweight(0.5, &[integer(0)]).is_err());
        assert!(effb_bound(&rational(1, 2), 10).is_err());
        assert!(sbp_bound(&rational(2, 5), 10).is_err());
        assert!(sbp_bound(&rational(3, 5), 0).is_err());
    }
}
