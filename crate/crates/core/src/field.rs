//! Exact coefficient fields: arbitrary-precision rationals and prime fields.
//!
//! The evaluation engine is generic over [`Field`] so the same covariant
//! formulas run over `ℚ` (for solved constants and certificates) and over a
//! prime field (for large rank computations, cross-checked at two moduli).

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

/// Arbitrary-precision rational scalar, the default coefficient field.
pub type Rat = BigRational;

/// `2^31 - 1`, the default rank-check modulus.
pub const PRIME_A: u64 = 2_147_483_647;
/// Smallest prime above `2^31`, the confirmation modulus.
pub const PRIME_B: u64 = 2_147_483_659;

/// Minimal field interface used by the exact evaluation engine.
pub trait Field: Clone + PartialEq + std::fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(x: i64) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn is_zero(&self) -> bool;

    fn add_assign(&mut self, rhs: &Self) {
        *self = self.add(rhs);
    }

    fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv().expect("division by zero"))
    }
}

impl Field for BigRational {
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as One>::one()
    }
    fn from_i64(x: i64) -> Self {
        BigRational::from_integer(BigInt::from(x))
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

/// Ratio of two small integers.
pub fn ratio(num: i64, den: i64) -> Rat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Renders a rational as `p` or `p/q`.
pub fn rat_string(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else if x.denom().is_negative() {
        format!("{}/{}", -x.numer(), -x.denom())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Prime field with a compile-time modulus.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Fp<const P: u64>(pub u64);

impl<const P: u64> Fp<P> {
    pub fn new(v: u64) -> Self {
        Fp(v % P)
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp::<P>(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = Field::mul(&acc, &base);
            }
            base = Field::mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

impl<const P: u64> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn from_i64(x: i64) -> Self {
        Fp(x.rem_euclid(P as i64) as u64)
    }
    fn add(&self, rhs: &Self) -> Self {
        let s = self.0 + rhs.0;
        Fp(if s >= P { s - P } else { s })
    }
    fn sub(&self, rhs: &Self) -> Self {
        Fp(if self.0 >= rhs.0 {
            self.0 - rhs.0
        } else {
            self.0 + P - rhs.0
        })
    }
    fn mul(&self, rhs: &Self) -> Self {
        Fp(((self.0 as u128 * rhs.0 as u128) % P as u128) as u64)
    }
    fn neg(&self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_inverse_roundtrip() {
        type F = Fp<PRIME_A>;
        for v in [1u64, 2, 17, PRIME_A - 1, 123_456_789] {
            let x = F::new(v);
            let y = x.inv().unwrap();
            assert_eq!(Field::mul(&x, &y), F::new(1));
        }
        assert!(F::new(0).inv().is_none());
    }

    #[test]
    fn fp_from_negative() {
        type F = Fp<PRIME_A>;
        assert_eq!(F::from_i64(-1), F::new(PRIME_A - 1));
        assert_eq!(Field::add(&F::from_i64(-5), &F::from_i64(5)), F::new(0));
    }

    #[test]
    fn rat_display() {
        assert_eq!(rat_string(&ratio(-3, 4)), "-3/4");
        assert_eq!(rat_string(&ratio(6, 3)), "2");
    }
}
