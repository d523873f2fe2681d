//! Information functionals applied to predicted pmfs.

use crate::alphabet::Symbol;
use crate::error::{Error, Result};
use crate::pmf::{JointPmf, Pmf};

/// Conditional entropy `H(Y|X)` of a joint pmf, in bits:
/// `-sum_{x,y} P(x,y) log P(y|x)`, skipping rows with `P(x) = 0`.
/// The result is clamped into `[0, log |Y|]` to absorb rounding.
pub fn conditional_entropy_functional(p: &JointPmf) -> f64 {
    conditional_entropy_raw(p.weights(), p.y_alphabet().size())
}

pub(crate) fn conditional_entropy_raw(weights: &[f64], ysize: usize) -> f64 {
    let mut h = 0.0;
    for row in weights.chunks_exact(ysize) {
        let rx: f64 = row.iter().sum();
        if rx <= 0.0 {
            continue;
        }
        for &p in row {
            if p > 0.0 {
                h += p * (rx / p).log2();
            }
        }
    }
    h.clamp(0.0, (ysize as f64).log2())
}

/// `Q(y | x, past) = Q(x, y | past) / sum_y' Q(x, y' | past)`.
pub fn condition_on_x(joint: &JointPmf, observed_x: Symbol) -> Result<Pmf> {
    joint.x_alphabet().check(observed_x)?;
    let weights = condition_raw(joint.row(observed_x)).ok_or(Error::ZeroMarginal(observed_x))?;
    Pmf::new(joint.y_alphabet(), weights)
}

pub(crate) fn condition_raw(row: &[f64]) -> Option<Vec<f64>> {
    let total: f64 = row.iter().sum();
    (total > 0.0).then(|| row.iter().map(|&p| p / total).collect())
}

/// Relative entropy in bits between raw pmfs; zero-mass entries of `p` are skipped.
pub(crate) fn relative_entropy_raw(p: &[f64], q: &[f64]) -> f64 {
    let mut d = 0.0;
    for (&a, &b) in p.iter().zip(q) {
        if a > 0.0 {
            assert!(b > 0.0, "reference pmf has a zero where the other does not");
            d += a * (a / b).log2();
        }
    }
    d.max(0.0)
}

pub(crate) fn entropy_raw(p: &[f64]) -> f64 {
    let h: f64 = p.iter().filter(|&&w| w > 0.0).map(|&w| -w * w.log2()).sum();
    h.clamp(0.0, (p.len() as f64).log2())
}

/// Entropy of a pmf in bits, clamped into `[0, log M]`.
pub fn entropy(p: &Pmf) -> f64 {
    entropy_raw(p.weights())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use proptest::prelude::*;

    #[test]
    fn conditional_entropy_examples() {
        let b = Alphabet::binary();
        assert!((conditional_entropy_functional(&JointPmf::uniform(b, b)) - 1.0).abs() < 1e-15);
        let copy = JointPmf::from_rows(&[vec![0.5, 0.0], vec![0.0, 0.5]]).unwrap();
        assert_eq!(conditional_entropy_functional(&copy), 0.0);
        let p = JointPmf::from_rows(&[vec![0.4, 0.1], vec![0.1, 0.4]]).unwrap();
        // H_b(0.2)
        assert!((conditional_entropy_functional(&p) - 0.7219280948873623).abs() < 1e-12);
    }

    #[test]
    fn degenerate_rows_contribute_nothing() {
        let p = JointPmf::from_rows(&[vec![0.0, 0.0, 0.0], vec![0.5, 0.25, 0.25]]).unwrap();
        // all mass on x = 1, so this is H(0.5, 0.25, 0.25)
        assert!((conditional_entropy_functional(&p) - 1.5).abs() < 1e-12);
    }

    #[test]
    fn conditioning_examples() {
        let b = Alphabet::binary();
        let u = condition_on_x(&JointPmf::uniform(b, b), 0).unwrap();
        assert_eq!(u.weights(), &[0.5, 0.5]);
        let j = JointPmf::from_rows(&[vec![0.4, 0.1], vec![0.25, 0.25]]).unwrap();
        let c = condition_on_x(&j, 0).unwrap();
        assert!((c.weight(0) - 0.8).abs() < 1e-15);
        assert!((c.weight(1) - 0.2).abs() < 1e-15);
    }

    #[test]
    fn conditioning_on_empty_row_fails() {
        let j = JointPmf::from_rows(&[vec![0.0, 0.0], vec![0.5, 0.5]]).unwrap();
        assert_eq!(condition_on_x(&j, 0), Err(Error::ZeroMarginal(0)));
        assert!(condition_on_x(&j, 2).is_err());
    }

    fn joint_strategy(mx: usize, my: usize) -> impl Strategy<Value = JointPmf> {
        proptest::collection::vec(0.0f64..1.0, mx * my).prop_filter_map("zero mass", move |raw| {
            let total: f64 = raw.iter().sum();
            if total < 1e-6 {
                return None;
            }
            let w = raw.iter().map(|v| v / total).collect();
            JointPmf::new(Alphabet::new(mx).unwrap(), Alphabet::new(my).unwrap(), w).ok()
        })
    }

    proptest! {
        #[test]
        fn chain_rule_identity(j in joint_strategy(3, 2)) {
            let mx = j.marginal_x();
            for x in 0..3 {
                if mx.weight(x) <= 0.0 { continue; }
                let c = condition_on_x(&j, x).unwrap();
                for y in 0..2 {
                    prop_assert!((mx.weight(x) * c.weight(y) - j.get(x, y)).abs() < 1e-12);
                }
            }
        }

        #[test]
        fn conditional_entropy_in_range(j in joint_strategy(2, 3)) {
            let h = conditional_entropy_functional(&j);
            prop_assert!((0.0..=3f64.log2()).contains(&h));
        }

        #[test]
        fn f_difference_bound(
            p in joint_strategy(2, 2),
            dir in proptest::collection::vec(-1.0f64..1.0, 4),
            scale in 0.0f64..0.49,
        ) {
            // move p by a mass-preserving perturbation, staying in the simplex
            let mean: f64 = dir.iter().sum::<f64>() / 4.0;
            let d: Vec<f64> = dir.iter().map(|v| v - mean).collect();
            let mut step = f64::INFINITY;
            for (&w, &dv) in p.weights().iter().zip(&d) {
                if dv < 0.0 { step = step.min(w / -dv); }
            }
            let l1: f64 = d.iter().map(|v| v.abs()).sum();
            prop_assume!(l1 > 1e-9);
            let t = step.min(scale / l1);
            let qw: Vec<f64> = p.weights().iter().zip(&d).map(|(w, dv)| (w + t * dv).max(0.0)).collect();
            let total: f64 = qw.iter().sum();
            let qw: Vec<f64> = qw.iter().map(|v| v / total).collect();
            let q = JointPmf::new(p.x_alphabet(), p.y_alphabet(), qw).unwrap();
            let theta = p.l1_distance(&q);
            prop_assume!(theta > 0.0 && theta < 0.5);
            let gap = (conditional_entropy_functional(&p) - conditional_entropy_functional(&q)).abs();
            prop_assert!(gap <= 2.0 * theta * (4.0 / theta).log2() + 1e-12);
        }
    }
}
