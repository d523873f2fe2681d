use crate::error::{Error, Result};

fn check_range(name: &'static str, v: f64, lo: f64, hi: f64, range: &'static str) -> Result<()> {
    if v.is_nan() || v < lo || v > hi {
        return Err(Error::InvalidParameter { name, value: v, range });
    }
    Ok(())
}

/// `H_b(p) = -p log p - (1-p) log(1-p)` in bits, 0 at the endpoints.
pub fn binary_entropy(p: f64) -> Result<f64> {
    check_range("p", p, 0.0, 1.0, "[0, 1]")?;
    Ok(hb(p))
}

#[inline]
pub(crate) fn hb(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        0.0
    } else {
        -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
    }
}

/// Per-step `I(Y -> X)` rate when `X` is a symmetric binary Markov chain with
/// flip probability `p` and `Y` is `X` through a BSC(`eps`).
pub fn markov_bsc_rate(p: f64, eps: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidParameter { name: "p", value: p, range: "(0, 1)" });
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidParameter { name: "eps", value: eps, range: "(0, 1)" });
    }
    let (pb, eb) = (1.0 - p, 1.0 - eps);
    let a = p * eps + pb * eb;
    let b = pb * eps + p * eb;
    Ok(hb(p) - a * hb(p * eps / a) - b * hb(pb * eps / b))
}

/// Analytic rates for the coupled-BSC system (`Y_i = X_i + BSC(alpha)`,
/// `X_{i+1} = Y_i + BSC(beta)`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoupledRates {
    pub di: f64,
    pub reverse_di: f64,
    pub mi: f64,
}

pub fn coupled_bsc_rates(alpha: f64, beta: f64) -> Result<CoupledRates> {
    check_range("alpha", alpha, 0.0, 0.5, "[0, 1/2]")?;
    check_range("beta", beta, 0.0, 0.5, "[0, 1/2]")?;
    let through = hb(alpha * (1.0 - beta) + (1.0 - alpha) * beta);
    let di = through - hb(alpha);
    let reverse_di = through - hb(beta);
    Ok(CoupledRates { di, reverse_di, mi: di + reverse_di })
}

/// Pointwise redundancy bound `C5 log n + C6` of CTW on a Markov source with
/// `states` states over an alphabet of `gamma` symbols.
pub fn ctw_redundancy_bound(gamma: usize, states: usize, n: u64) -> Result<f64> {
    if gamma < 2 {
        return Err(Error::DegenerateAlphabet(gamma));
    }
    if states < 1 {
        return Err(Error::InvalidParameter { name: "states", value: states as f64, range: "[1, inf)" });
    }
    if n < 2 {
        return Err(Error::InvalidParameter { name: "n", value: n as f64, range: "[2, inf)" });
    }
    let (g, s) = (gamma as f64, states as f64);
    let c5 = (g - 1.0) * s / 2.0;
    let c6 = c5 * (1.0 / s).log2() + s * (g / (g - 1.0) + g.log2()) - 1.0 / (g - 1.0);
    Ok(c5 * (n as f64).log2() + c6)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_entropy_values() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        assert!((binary_entropy(0.2).unwrap() - 0.7219280948873623).abs() < 1e-15);
        assert!(binary_entropy(-0.1).is_err());
        assert!(binary_entropy(1.1).is_err());
    }

    #[test]
    fn markov_bsc_values() {
        // H_b(1/2) - H_b(0.2)
        assert!((markov_bsc_rate(0.5, 0.2).unwrap() - 0.2780719051126377).abs() < 1e-12);
        assert!(markov_bsc_rate(0.3, 0.5).unwrap().abs() < 1e-12);
        assert!((markov_bsc_rate(0.3, 0.2).unwrap() - 0.23611392733893738).abs() < 1e-12);
        assert!(markov_bsc_rate(0.0, 0.2).is_err());
        assert!(markov_bsc_rate(0.3, 1.0).is_err());
    }

    #[test]
    fn coupled_values() {
        let r = coupled_bsc_rates(0.1, 0.2).unwrap();
        assert!((r.di - 0.3577507789033366).abs() < 1e-12);
        assert!((r.reverse_di - 0.10481827760525553).abs() < 1e-12);
        assert!((r.mi - 0.46256905650859204).abs() < 1e-12);

        let s = coupled_bsc_rates(0.3, 0.3).unwrap();
        assert_eq!(s.di, s.reverse_di);
        let z = coupled_bsc_rates(0.5, 0.5).unwrap();
        assert_eq!((z.di, z.reverse_di, z.mi), (0.0, 0.0, 0.0));
        assert!(coupled_bsc_rates(0.6, 0.1).is_err());
    }

    #[test]
    fn coupled_ordering_follows_parameters() {
        for &(a, b) in &[(0.05, 0.3), (0.3, 0.05), (0.2, 0.2), (0.0, 0.5), (0.45, 0.1)] {
            let r = coupled_bsc_rates(a, b).unwrap();
            assert!(r.mi >= 0.0);
            assert_eq!(r.di >= r.reverse_di, a <= b, "alpha={a} beta={b}");
        }
    }

    #[test]
    fn redundancy_bound_values() {
        assert!((ctw_redundancy_bound(2, 1, 256).unwrap() - 6.0).abs() < 1e-12);
        // C5 = 1 at gamma = 2, S = 2: slope one bit per doubling of n
        let a = ctw_redundancy_bound(2, 2, 2).unwrap();
        let b = ctw_redundancy_bound(2, 2, 4).unwrap();
        assert!((b - a - 1.0).abs() < 1e-12);
        let mut prev = f64::NEG_INFINITY;
        for n in 2..200 {
            let v = ctw_redundancy_bound(3, 4, n).unwrap();
            assert!(v >= prev);
            prev = v;
        }
        assert!(ctw_redundancy_bound(1, 1, 10).is_err());
        assert!(ctw_redundancy_bound(2, 1, 1).is_err());
    }
}
