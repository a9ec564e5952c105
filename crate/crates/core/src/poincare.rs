//! Integer polynomials in `t` recording graded dimensions and multiplicities,
//! with the exact divisibility test used by the (non-)freeness certificates.

use serde::Serialize;

/// Polynomial with integer coefficients, indexed by the power of `t`.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct PoincarePoly {
    coeffs: Vec<i64>,
}

impl PoincarePoly {
    pub fn zero() -> Self {
        PoincarePoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        PoincarePoly { coeffs: vec![1] }
    }

    pub fn from_coeffs(coeffs: Vec<i64>) -> Self {
        let mut p = PoincarePoly { coeffs };
        p.trim();
        p
    }

    /// The binomial `1 + t^d`.
    pub fn one_plus_tk(d: usize) -> Self {
        let mut coeffs = vec![0; d + 1];
        coeffs[0] = 1;
        coeffs[d] = 1;
        PoincarePoly { coeffs }
    }

    /// `∏ (1 + t^{d_i})`.
    pub fn product_of_one_plus(degrees: &[usize]) -> Self {
        degrees
            .iter()
            .fold(PoincarePoly::one(), |acc, &d| acc.mul(&PoincarePoly::one_plus_tk(d)))
    }

    /// Single term `c·t^d`.
    pub fn monomial(c: i64, d: usize) -> Self {
        let mut coeffs = vec![0; d + 1];
        coeffs[d] = c;
        PoincarePoly::from_coeffs(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff_sum(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn add(&self, rhs: &PoincarePoly) -> PoincarePoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        PoincarePoly::from_coeffs(coeffs)
    }

    pub fn sub(&self, rhs: &PoincarePoly) -> PoincarePoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        PoincarePoly::from_coeffs(coeffs)
    }

    pub fn mul(&self, rhs: &PoincarePoly) -> PoincarePoly {
        if self.is_zero() || rhs.is_zero() {
            return PoincarePoly::zero();
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        PoincarePoly::from_coeffs(coeffs)
    }

    /// Exact Euclidean division by a divisor with leading coefficient ±1.
    pub fn div_rem(&self, divisor: &PoincarePoly) -> (PoincarePoly, PoincarePoly) {
        let d = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.coeff(d);
        assert!(lead == 1 || lead == -1, "divisor must have leading coefficient ±1");
        let mut rem = self.clone();
        let mut quot = PoincarePoly::zero();
        while let Some(rd) = rem.degree() {
            if rd < d {
                break;
            }
            let c = rem.coeff(rd) * lead;
            let term = PoincarePoly::monomial(c, rd - d);
            quot = quot.add(&term);
            rem = rem.sub(&term.mul(divisor));
        }
        (quot, rem)
    }
}

impl std::fmt::Display for PoincarePoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            match (a, k) {
                (_, 0) => write!(f, "{a}")?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "t^{k}")?,
                (_, 1) => write!(f, "{a}t")?,
                (_, _) => write!(f, "{a}t^{k}")?,
            }
        }
        Ok(())
    }
}

impl std::fmt::Debug for PoincarePoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PoincarePoly({self})")
    }
}

/// Result of dividing by `∏ (1 + t^{d_i})`.
#[derive(Clone, Debug, Serialize)]
pub enum DivideOutcome {
    Exact { quotient: PoincarePoly },
    Remainder { quotient: PoincarePoly, remainder: PoincarePoly },
}

impl DivideOutcome {
    pub fn is_exact(&self) -> bool {
        matches!(self, DivideOutcome::Exact { .. })
    }
}

/// Divides `p` by `∏ (1 + t^d)` over the listed degrees, reporting either the
/// exact quotient or the nonzero remainder.
pub fn divide_check(p: &PoincarePoly, degrees: &[usize]) -> DivideOutcome {
    let divisor = PoincarePoly::product_of_one_plus(degrees);
    let (quotient, remainder) = p.div_rem(&divisor);
    if remainder.is_zero() {
        DivideOutcome::Exact { quotient }
    } else {
        DivideOutcome::Remainder { quotient, remainder }
    }
}

/// Nonnegative dimensions of a graded space, indexed by degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedCount {
    coeffs: Vec<usize>,
}

impl GradedCount {
    pub fn new(coeffs: Vec<usize>) -> Self {
        let mut g = GradedCount { coeffs };
        while g.coeffs.last() == Some(&0) {
            g.coeffs.pop();
        }
        g
    }

    pub fn coeff(&self, k: usize) -> usize {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[usize] {
        &self.coeffs
    }

    pub fn total(&self) -> usize {
        self.coeffs.iter().sum()
    }

    pub fn max_degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn to_poly(&self) -> PoincarePoly {
        PoincarePoly::from_coeffs(self.coeffs.iter().map(|&c| c as i64).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn divide_examples() {
        // (1+t)(1+t^3) / (1+t^3) = 1+t
        let p = PoincarePoly::product_of_one_plus(&[1, 3]);
        match divide_check(&p, &[3]) {
            DivideOutcome::Exact { quotient } => {
                assert_eq!(quotient, PoincarePoly::product_of_one_plus(&[1]));
            }
            DivideOutcome::Remainder { .. } => panic!("expected exact division"),
        }
        // 1 + t^2 is not divisible by 1 + t
        assert!(!divide_check(&PoincarePoly::one_plus_tk(2), &[1]).is_exact());
    }

    #[test]
    fn display_forms() {
        let p = PoincarePoly::from_coeffs(vec![0, 1, 0, 0, 0, 2]);
        assert_eq!(p.to_string(), "t + 2t^5");
        assert_eq!(PoincarePoly::zero().to_string(), "0");
    }

    proptest! {
        #[test]
        fn product_then_divide_round_trips(
            coeffs in proptest::collection::vec(-4i64..5, 0..8),
            degrees in proptest::collection::vec(1usize..6, 1..4),
        ) {
            let p = PoincarePoly::from_coeffs(coeffs);
            let q = p.mul(&PoincarePoly::product_of_one_plus(&degrees));
            match divide_check(&q, &degrees) {
                DivideOutcome::Exact { quotient } => prop_assert_eq!(quotient, p),
                DivideOutcome::Remainder { .. } => prop_assert!(false, "division must be exact"),
            }
        }

        #[test]
        fn div_rem_reconstructs(
            coeffs in proptest::collection::vec(-4i64..5, 0..10),
            degrees in proptest::collection::vec(1usize..5, 1..3),
        ) {
            let p = PoincarePoly::from_coeffs(coeffs);
            let d = PoincarePoly::product_of_one_plus(&degrees);
            let (q, r) = p.div_rem(&d);
            prop_assert_eq!(q.mul(&d).add(&r), p);
        }
    }
}
