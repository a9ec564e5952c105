//! Dimension counts of invariant spaces by diagram enumeration.
//!
//! The exterior algebra of `S²(C^{2n})` splits multiplicity-free into the
//! nested-hook constituents; counting those whose shape carries an
//! `SO(2n)`-invariant line gives the graded dimension of the invariant
//! algebra, and adding two boxes (one per row) before testing gives the
//! graded dimension of the skew-matrix-valued covariant module.

use crate::partitions::{enumerate_asequences, shape_from_hooks, two_box_additions, Partition};
use crate::poincare::{GradedCount, PoincarePoly};

/// Multiplicity (0 or 1) of the trivial `SO(m)`-representation in `S_λ(C^m)`:
/// 1 exactly when every part is even, or there are exactly `m` parts, all odd.
pub fn so_trivial_mult(lam: &Partition, m: usize) -> usize {
    if lam.len() > m {
        return 0;
    }
    if lam.parts().iter().all(|p| p % 2 == 0) {
        return 1;
    }
    if lam.len() == m && lam.parts().iter().all(|p| p % 2 == 1) {
        return 1;
    }
    0
}

/// Graded dimension of the invariants of the exterior algebra of symmetric
/// `2n x 2n` matrices, indexed by exterior degree. The total is `2^{n+1}`.
pub fn count_invariants_wedge_sym(n: usize) -> GradedCount {
    assert!(n >= 1);
    let top = n * (2 * n + 1);
    let mut coeffs = vec![0usize; top + 1];
    for a in enumerate_asequences(n) {
        let lam = shape_from_hooks(&a);
        debug_assert_eq!(lam.size() % 2, 0);
        if so_trivial_mult(&lam, 2 * n) == 1 {
            coeffs[lam.size() / 2] += 1;
        }
    }
    GradedCount::new(coeffs)
}

/// Predicted Poincaré polynomial of the invariant algebra: an exterior
/// algebra on generators of degrees `4i+1` for `i = 0..n-1` times the rank-one
/// algebra on a generator of degree `2n`.
pub fn poincare_a(n: usize) -> PoincarePoly {
    assert!(n >= 1);
    let mut degrees: Vec<usize> = (0..n).map(|i| 4 * i + 1).collect();
    degrees.push(2 * n);
    PoincarePoly::product_of_one_plus(&degrees)
}

/// Graded dimension of the skew-matrix-valued covariants of the exterior
/// algebra of symmetric matrices. An invariant arising from hook indices `a`
/// extended by two boxes sits in exterior degree `|λ(a)| / 2`; the two extra
/// boxes belong to the codomain, not the grading. The total is `(2n)·2^n`.
pub fn count_b_plus(n: usize) -> GradedCount {
    assert!(n >= 1);
    let top = n * (2 * n + 1);
    let mut coeffs = vec![0usize; top + 1];
    for a in enumerate_asequences(n) {
        let k = a.shape_size() / 2;
        for lam in two_box_additions(&a, n) {
            if so_trivial_mult(&lam, 2 * n) == 1 {
                coeffs[k] += 1;
            }
        }
    }
    GradedCount::new(coeffs)
}

/// Predicted Poincaré polynomial of the covariant module as a free module:
/// the subalgebra on the generators of degrees `4i+1` (`i <= n-2`) and `2n`,
/// times the basis `X^{4i+2}, X^{4i+3}` (`i <= n-2`) plus two generators of
/// degrees `2n-2` and `2n-1`.
pub fn poincare_b_plus_predicted(n: usize) -> crate::Result<PoincarePoly> {
    if n < 2 {
        return Err(crate::Error::Unsupported(
            "the module basis degenerates below n = 2".into(),
        ));
    }
    let mut sub_degrees: Vec<usize> = (0..n - 1).map(|i| 4 * i + 1).collect();
    sub_degrees.push(2 * n);
    let subalgebra = PoincarePoly::product_of_one_plus(&sub_degrees);
    let mut basis = PoincarePoly::zero();
    for i in 0..n - 1 {
        basis = basis.add(&PoincarePoly::monomial(1, 4 * i + 2));
        basis = basis.add(&PoincarePoly::monomial(1, 4 * i + 3));
    }
    basis = basis.add(&PoincarePoly::monomial(1, 2 * n - 2));
    basis = basis.add(&PoincarePoly::monomial(1, 2 * n - 1));
    Ok(subalgebra.mul(&basis))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn trivial_mult_examples() {
        assert_eq!(so_trivial_mult(&part(&[2, 2]), 4), 1);
        assert_eq!(so_trivial_mult(&part(&[3, 1]), 4), 0);
        assert_eq!(so_trivial_mult(&part(&[3, 3, 3, 3]), 4), 1);
        assert_eq!(so_trivial_mult(&Partition::empty(), 4), 1);
        assert_eq!(so_trivial_mult(&part(&[1, 1, 1]), 2), 0);
    }

    #[test]
    fn invariant_totals() {
        for n in 1..=5 {
            assert_eq!(count_invariants_wedge_sym(n).total(), 1 << (n + 1), "n={n}");
        }
    }

    #[test]
    fn covariant_totals() {
        for n in 1..=5 {
            assert_eq!(count_b_plus(n).total(), 2 * n * (1 << n), "n={n}");
        }
    }

    #[test]
    fn graded_invariants_match_predicted_product() {
        for n in 1..=4 {
            let counted = count_invariants_wedge_sym(n).to_poly();
            assert_eq!(counted, poincare_a(n), "n={n}");
        }
    }

    #[test]
    fn graded_covariants_match_predicted_product() {
        for n in 2..=3 {
            let counted = count_b_plus(n).to_poly();
            assert_eq!(counted, poincare_b_plus_predicted(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn predicted_coefficient_sums() {
        for n in 2..=5 {
            let p = poincare_b_plus_predicted(n).unwrap();
            assert_eq!(p.coeff_sum(), (2 * n as i64) * (1 << n));
        }
        assert!(poincare_b_plus_predicted(1).is_err());
    }

    #[test]
    fn top_degree_coefficient_is_one() {
        for n in 1..=4 {
            let g = count_invariants_wedge_sym(n);
            assert_eq!(g.max_degree(), Some(n * (2 * n + 1)));
            assert_eq!(g.coeff(n * (2 * n + 1)), 1);
        }
    }

    #[test]
    fn poincare_a_small() {
        // n=1: (1+t)(1+t^2)
        assert_eq!(
            poincare_a(1),
            PoincarePoly::product_of_one_plus(&[1, 2])
        );
        // n=2: (1+t)(1+t^5)(1+t^4), coefficient sum 8
        assert_eq!(poincare_a(2).coeff_sum(), 8);
    }

    #[test]
    fn predicted_b_plus_n2_shape() {
        // 2(1+t)(1+t^4)(t^2+t^3)
        let p = poincare_b_plus_predicted(2).unwrap();
        let q = PoincarePoly::product_of_one_plus(&[1, 4])
            .mul(&PoincarePoly::from_coeffs(vec![0, 0, 2, 2]));
        assert_eq!(p, q);
        assert_eq!(p.coeff_sum(), 16);
    }
}
