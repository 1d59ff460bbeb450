//! Lebesgue exponents and their conjugates.

use crate::error::{Error, Result};

/// A Lebesgue exponent `p ∈ [1, ∞)`. Only `p` is stored; the conjugate `q`
/// with `1/p + 1/q = 1` is derived, and is `∞` when `p = 1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Exponent(f64);

impl Exponent {
    pub fn new(p: f64) -> Result<Self> {
        if !(p.is_finite() && p >= 1.0) {
            return Err(Error::invalid(format!("exponent p must lie in [1, ∞), got {p}")));
        }
        Ok(Exponent(p))
    }

    /// Builds the exponent whose conjugate is `q`, for `q ∈ (1, ∞]`.
    pub fn from_conjugate(q: f64) -> Result<Self> {
        if q.is_infinite() && q > 0.0 {
            return Ok(Exponent(1.0));
        }
        if !(q > 1.0) {
            return Err(Error::invalid(format!("conjugate exponent q must lie in (1, ∞], got {q}")));
        }
        Exponent::new(q / (q - 1.0))
    }

    pub fn p(self) -> f64 {
        self.0
    }

    pub fn q(self) -> f64 {
        if self.0 == 1.0 {
            f64::INFINITY
        } else {
            self.0 / (self.0 - 1.0)
        }
    }

    /// `1/p`, the Hölder exponent of `Ψ_f`.
    pub fn inv_p(self) -> f64 {
        1.0 / self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugates() {
        let e = Exponent::new(2.0).unwrap();
        assert_eq!(e.q(), 2.0);
        assert!(Exponent::new(1.0).unwrap().q().is_infinite());
        let e = Exponent::new(3.0).unwrap();
        assert!((e.inv_p() + 1.0 / e.q() - 1.0).abs() < 1e-15);
        assert_eq!(Exponent::from_conjugate(f64::INFINITY).unwrap().p(), 1.0);
        assert!((Exponent::from_conjugate(1.5).unwrap().p() - 3.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(Exponent::new(0.5).is_err());
        assert!(Exponent::new(f64::INFINITY).is_err());
        assert!(Exponent::from_conjugate(1.0).is_err());
    }
}
