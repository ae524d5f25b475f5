use serde::{Deserialize, Serialize};

/// Mixed absolute/relative tolerance.
///
/// Two reals are considered equal when
/// `|x - y| <= max(abs_eps, rel_eps * max(|x|, |y|))`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub abs_eps: f64,
    pub rel_eps: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            abs_eps: 1e-9,
            rel_eps: 1e-9,
        }
    }
}

impl Tolerance {
    /// Panics if either epsilon is not strictly positive.
    pub fn new(abs_eps: f64, rel_eps: f64) -> Self {
        assert!(
            abs_eps > 0.0 && rel_eps > 0.0,
            "tolerances must be positive"
        );
        Self { abs_eps, rel_eps }
    }

    /// Same epsilon for both parts.
    pub fn uniform(eps: f64) -> Self {
        Self::new(eps, eps)
    }

    /// Allowed deviation at the scale of `x` and `y`.
    pub fn slack(&self, x: f64, y: f64) -> f64 {
        self.abs_eps.max(self.rel_eps * x.abs().max(y.abs()))
    }

    pub fn close(&self, x: f64, y: f64) -> bool {
        (x - y).abs() <= self.slack(x, y)
    }

    pub fn is_zero(&self, x: f64) -> bool {
        x.abs() <= self.abs_eps
    }

    /// `x < y` by more than the tolerance.
    pub fn definitely_less(&self, x: f64, y: f64) -> bool {
        y - x > self.slack(x, y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn relative_part_scales() {
        let tol = Tolerance::default();
        assert!(tol.close(1e12, 1e12 + 100.0));
        assert!(!tol.close(1.0, 1.0 + 1e-6));
        assert!(tol.close(0.0, 5e-10));
    }

    #[test]
    #[should_panic]
    fn rejects_nonpositive() {
        Tolerance::new(0.0, 1e-9);
    }

    proptest! {
        #[test]
        fn close_is_symmetric_and_reflexive(x in -1e6f64..1e6, y in -1e6f64..1e6) {
            let tol = Tolerance::default();
            prop_assert!(tol.close(x, x));
            prop_assert_eq!(tol.close(x, y), tol.close(y, x));
        }
    }
}
