//! Dense exact matrices, Pfaffians and the polarized Pfaffian.
//!
//! Everything here is over a generic [`Field`]; the covariant engine uses
//! rationals for solved constants and prime fields for large rank passes.

use std::collections::HashMap;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, PartialEq, Eq)]
pub struct Mat<F> {
    side: usize,
    entries: Vec<F>,
}

impl<F: Field> Mat<F> {
    pub fn zero(side: usize) -> Self {
        Mat { side, entries: vec![F::zero(); side * side] }
    }

    pub fn identity(side: usize) -> Self {
        let mut m = Mat::zero(side);
        for i in 0..side {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_fn(side: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut entries = Vec::with_capacity(side * side);
        for i in 0..side {
            for j in 0..side {
                entries.push(f(i, j));
            }
        }
        Mat { side, entries }
    }

    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let side = rows.len();
        assert!(rows.iter().all(|r| r.len() == side));
        Mat::from_fn(side, |i, j| F::from_i64(rows[i][j]))
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn at(&self, i: usize, j: usize) -> &F {
        &self.entries[i * self.side + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.entries[i * self.side + j] = v;
    }

    pub fn add(&self, rhs: &Mat<F>) -> Mat<F> {
        assert_eq!(self.side, rhs.side);
        Mat {
            side: self.side,
            entries: self
                .entries
                .iter()
                .zip(rhs.entries.iter())
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Mat<F>) -> Mat<F> {
        assert_eq!(self.side, rhs.side);
        Mat {
            side: self.side,
            entries: self
                .entries
                .iter()
                .zip(rhs.entries.iter())
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Mat<F> {
        Mat { side: self.side, entries: self.entries.iter().map(|a| a.neg()).collect() }
    }

    pub fn scale(&self, c: &F) -> Mat<F> {
        Mat { side: self.side, entries: self.entries.iter().map(|a| a.mul(c)).collect() }
    }

    pub fn matmul(&self, rhs: &Mat<F>) -> Mat<F> {
        assert_eq!(self.side, rhs.side);
        let n = self.side;
        let mut out: Mat<F> = Mat::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let mut cur = out.at(i, j).clone();
                    cur.add_assign(&a.mul(b));
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Mat<F> {
        Mat::from_fn(self.side, |i, j| self.at(j, i).clone())
    }

    pub fn trace(&self) -> F {
        let mut t = F::zero();
        for i in 0..self.side {
            t.add_assign(self.at(i, i));
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.side).all(|i| (0..i).all(|j| self.at(i, j) == self.at(j, i)))
    }

    pub fn is_skew(&self) -> bool {
        (0..self.side).all(|i| {
            self.at(i, i).is_zero() && (0..i).all(|j| *self.at(i, j) == self.at(j, i).neg())
        })
    }

    /// `AB - BA`.
    pub fn commutator(&self, rhs: &Mat<F>) -> Mat<F> {
        self.matmul(rhs).sub(&rhs.matmul(self))
    }

    /// `(M - Mᵗ) / 2`.
    pub fn skew_part(&self) -> Mat<F> {
        let half = F::from_i64(2).inv().unwrap();
        self.sub(&self.transpose()).scale(&half)
    }

    /// `(M + Mᵗ) / 2`.
    pub fn sym_part(&self) -> Mat<F> {
        let half = F::from_i64(2).inv().unwrap();
        self.add(&self.transpose()).scale(&half)
    }

    /// Rank-one matrix `u vᵗ`.
    pub fn outer(u: &[F], v: &[F]) -> Mat<F> {
        assert_eq!(u.len(), v.len());
        Mat::from_fn(u.len(), |i, j| u[i].mul(&v[j]))
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> F {
        let n = self.side;
        let mut m = self.entries.clone();
        let mut det = F::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[r * n + c].is_zero()) else {
                return F::zero();
            };
            if p != c {
                for j in 0..n {
                    m.swap(c * n + j, p * n + j);
                }
                det = det.neg();
            }
            let pivot = m[c * n + c].clone();
            det = det.mul(&pivot);
            let inv = pivot.inv().unwrap();
            for r in (c + 1)..n {
                if m[r * n + c].is_zero() {
                    continue;
                }
                let factor = m[r * n + c].mul(&inv);
                for j in c..n {
                    let delta = factor.mul(&m[c * n + j]);
                    m[r * n + j] = m[r * n + j].sub(&delta);
                }
            }
        }
        det
    }
}

impl<F: Field> std::fmt::Debug for Mat<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Mat{}x{} [", self.side, self.side)?;
        for i in 0..self.side {
            write!(f, "  ")?;
            for j in 0..self.side {
                write!(f, "{:?} ", self.at(i, j))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Pfaffian of an exactly skew matrix of even side, by expansion along the
/// first remaining row with memoization over index subsets.
pub fn pfaffian<F: Field>(m: &Mat<F>) -> Result<F> {
    let n = m.side();
    if n % 2 != 0 {
        return Err(Error::OddSide(n));
    }
    if !m.is_skew() {
        return Err(Error::NotSkew);
    }
    assert!(n <= 32, "pfaffian subset memo uses a u32 mask");
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut memo: HashMap<u32, F> = HashMap::new();
    Ok(pf_rec(m, full, &mut memo))
}

fn pf_rec<F: Field>(m: &Mat<F>, mask: u32, memo: &mut HashMap<u32, F>) -> F {
    if mask == 0 {
        return F::one();
    }
    if let Some(v) = memo.get(&mask) {
        return v.clone();
    }
    let i = mask.trailing_zeros() as usize;
    let rest = mask & !(1 << i);
    let mut acc = F::zero();
    let mut sign_pos = true;
    let mut j = rest;
    while j != 0 {
        let k = j.trailing_zeros() as usize;
        j &= !(1 << k);
        let a = m.at(i, k);
        if !a.is_zero() {
            let sub = pf_rec(m, rest & !(1 << k), memo);
            let term = a.mul(&sub);
            acc = if sign_pos { acc.add(&term) } else { acc.sub(&term) };
        }
        sign_pos = !sign_pos;
    }
    memo.insert(mask, acc.clone());
    acc
}

/// Pfaffian of the skew part `(Y - Yᵗ)/2` of an arbitrary even-sided matrix.
pub fn pf_general<F: Field>(y: &Mat<F>) -> Result<F> {
    pfaffian(&y.skew_part())
}

/// Full polarization of the general Pfaffian in `n` matrix arguments of side
/// `2n`, by inclusion–exclusion over argument subsets. Normalized so that
/// equal arguments give `n!·pf_general(Y)`; symmetric and multilinear.
pub fn polarized_pfaffian<F: Field>(ys: &[Mat<F>]) -> Result<F> {
    let n = ys.len();
    if n == 0 {
        return Err(Error::Arity { expected: 1, got: 0 });
    }
    let side = ys[0].side();
    if side != 2 * n {
        return Err(Error::Arity { expected: side / 2, got: n });
    }
    if ys.iter().any(|y| y.side() != side) {
        return Err(Error::DimensionMismatch("polarized pfaffian arguments".into()));
    }
    let mut acc = F::zero();
    for mask in 1u32..(1 << n) {
        let mut sum = Mat::zero(side);
        for (i, y) in ys.iter().enumerate() {
            if mask & (1 << i) != 0 {
                sum = sum.add(y);
            }
        }
        let term = pf_general(&sum)?;
        if (n - mask.count_ones() as usize) % 2 == 0 {
            acc = acc.add(&term);
        } else {
            acc = acc.sub(&term);
        }
    }
    Ok(acc)
}

/// The symmetric unit `E_ij + E_ji` (or `E_ii` on the diagonal).
pub fn sym_unit<F: Field>(side: usize, i: usize, j: usize) -> Mat<F> {
    let mut m = Mat::zero(side);
    if i == j {
        m.set(i, i, F::one());
    } else {
        m.set(i, j, F::one());
        m.set(j, i, F::one());
    }
    m
}

/// The skew unit `E_ij - E_ji`, `i < j`.
pub fn skew_unit<F: Field>(side: usize, i: usize, j: usize) -> Mat<F> {
    assert!(i < j);
    let mut m = Mat::zero(side);
    m.set(i, j, F::one());
    m.set(j, i, F::from_i64(-1));
    m
}

/// Fixed ordered basis of symmetric matrices: first the diagonal units
/// `E_ii`, then `E_ij + E_ji` for `i < j` in lexicographic order. The order
/// is part of the external contract (evaluation tables are reproducible).
pub fn sym_basis<F: Field>(side: usize) -> Vec<Mat<F>> {
    let mut out: Vec<Mat<F>> = (0..side).map(|i| sym_unit(side, i, i)).collect();
    for i in 0..side {
        for j in (i + 1)..side {
            out.push(sym_unit(side, i, j));
        }
    }
    out
}

/// Labels matching [`sym_basis`].
pub fn sym_basis_labels(side: usize) -> Vec<String> {
    let mut out: Vec<String> = (0..side).map(|i| format!("E{}{}", i + 1, i + 1)).collect();
    for i in 0..side {
        for j in (i + 1)..side {
            out.push(format!("E{}{}+E{}{}", i + 1, j + 1, j + 1, i + 1));
        }
    }
    out
}

/// Fixed ordered basis of skew matrices: `E_ij - E_ji` for `i < j`
/// lexicographically.
pub fn skew_basis<F: Field>(side: usize) -> Vec<Mat<F>> {
    let mut out = Vec::new();
    for i in 0..side {
        for j in (i + 1)..side {
            out.push(skew_unit(side, i, j));
        }
    }
    out
}

/// Coordinates of a symmetric matrix in [`sym_basis`] order.
pub fn sym_coords<F: Field>(m: &Mat<F>) -> Vec<F> {
    debug_assert!(m.is_symmetric());
    let side = m.side();
    let mut out: Vec<F> = (0..side).map(|i| m.at(i, i).clone()).collect();
    for i in 0..side {
        for j in (i + 1)..side {
            out.push(m.at(i, j).clone());
        }
    }
    out
}

/// Coordinates of a skew matrix in [`skew_basis`] order.
pub fn skew_coords<F: Field>(m: &Mat<F>) -> Vec<F> {
    debug_assert!(m.is_skew());
    let side = m.side();
    let mut out = Vec::new();
    for i in 0..side {
        for j in (i + 1)..side {
            out.push(m.at(i, j).clone());
        }
    }
    out
}

/// Plane rotation with the rational point `(c, s) = ((1-t²)/(1+t²), 2t/(1+t²))`
/// in rows/columns `i < j`; determinant one, exactly orthogonal.
pub fn plane_rotation<F: Field>(side: usize, i: usize, j: usize, t: i64) -> Mat<F> {
    assert!(i < j && j < side);
    let denom = F::from_i64(1 + t * t);
    let c = F::from_i64(1 - t * t).div(&denom);
    let s = F::from_i64(2 * t).div(&denom);
    let mut m = Mat::identity(side);
    m.set(i, i, c.clone());
    m.set(j, j, c);
    m.set(i, j, s.clone());
    m.set(j, i, s.neg());
    m
}

/// Product of a few random plane rotations: a random rational point of
/// `SO(side)`.
pub fn random_rotation<F: Field, R: Rng>(side: usize, rng: &mut R) -> Mat<F> {
    let mut g = Mat::identity(side);
    for _ in 0..side {
        let i = rng.gen_range(0..side - 1);
        let j = rng.gen_range(i + 1..side);
        let t = rng.gen_range(-6i64..=6);
        g = g.matmul(&plane_rotation(side, i, j, t));
    }
    g
}

/// Random symmetric matrix with small integer entries.
pub fn random_symmetric<F: Field, R: Rng>(side: usize, rng: &mut R, bound: i64) -> Mat<F> {
    let mut m = Mat::zero(side);
    for i in 0..side {
        for j in i..side {
            let v = F::from_i64(rng.gen_range(-bound..=bound));
            m.set(i, j, v.clone());
            m.set(j, i, v);
        }
    }
    m
}

/// Random traceless symmetric matrix with small integer entries: the last
/// diagonal entry balances the others.
pub fn random_traceless_symmetric<F: Field, R: Rng>(
    side: usize,
    rng: &mut R,
    bound: i64,
) -> Mat<F> {
    let mut m: Mat<F> = Mat::zero(side);
    let mut diag_sum = 0i64;
    for i in 0..side {
        for j in i..side {
            if i == j && i == side - 1 {
                m.set(i, i, F::from_i64(-diag_sum));
            } else {
                let v = rng.gen_range(-bound..=bound);
                if i == j {
                    diag_sum += v;
                }
                m.set(i, j, F::from_i64(v));
                m.set(j, i, F::from_i64(v));
            }
        }
    }
    debug_assert!(m.trace().is_zero());
    m
}

/// Random matrix with small integer entries.
pub fn random_matrix<F: Field, R: Rng>(side: usize, rng: &mut R, bound: i64) -> Mat<F> {
    Mat::from_fn(side, |_, _| F::from_i64(rng.gen_range(-bound..=bound)))
}

/// Random vector with small integer entries.
pub fn random_vector<F: Field, R: Rng>(len: usize, rng: &mut R, bound: i64) -> Vec<F> {
    (0..len).map(|_| F::from_i64(rng.gen_range(-bound..=bound))).collect()
}

/// Dot product for the standard orthonormal form.
pub fn dot<F: Field>(u: &[F], v: &[F]) -> F {
    let mut acc = F::zero();
    for (a, b) in u.iter().zip(v.iter()) {
        acc.add_assign(&a.mul(b));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rat;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn pfaffian_two_by_two() {
        let m: Mat<Rat> = Mat::from_rows(&[&[0, 1], &[-1, 0]]);
        assert_eq!(pfaffian(&m).unwrap(), crate::field::ratio(1, 1));
    }

    #[test]
    fn pfaffian_block_diagonal_multiplies() {
        let mut m: Mat<Rat> = Mat::zero(4);
        m.set(0, 1, crate::field::ratio(3, 1));
        m.set(1, 0, crate::field::ratio(-3, 1));
        m.set(2, 3, crate::field::ratio(5, 1));
        m.set(3, 2, crate::field::ratio(-5, 1));
        assert_eq!(pfaffian(&m).unwrap(), crate::field::ratio(15, 1));
    }

    #[test]
    fn pfaffian_squares_to_determinant() {
        let mut rng = ChaCha20Rng::seed_from_u64(5);
        for side in [2usize, 4, 6] {
            for _ in 0..20 {
                let raw: Mat<Rat> = random_matrix(side, &mut rng, 3);
                let skew = raw.sub(&raw.transpose());
                let pf = pfaffian(&skew).unwrap();
                assert_eq!(pf.mul(&pf), skew.det());
            }
        }
    }

    #[test]
    fn pfaffian_rejects_bad_input() {
        let m: Mat<Rat> = Mat::identity(2);
        assert!(matches!(pfaffian(&m), Err(Error::NotSkew)));
        let m: Mat<Rat> = Mat::zero(3);
        assert!(matches!(pfaffian(&m), Err(Error::OddSide(3))));
    }

    #[test]
    fn pf_general_symmetric_vanishes() {
        let mut rng = ChaCha20Rng::seed_from_u64(6);
        let y: Mat<Rat> = random_symmetric(4, &mut rng, 4);
        assert!(pf_general(&y).unwrap().is_zero());
        let raw: Mat<Rat> = random_matrix(4, &mut rng, 4);
        assert_eq!(pf_general(&raw).unwrap(), pfaffian(&raw.skew_part()).unwrap());
    }

    #[test]
    fn polarization_normalization() {
        let mut rng = ChaCha20Rng::seed_from_u64(7);
        for n in [2usize, 3] {
            let y: Mat<Rat> = random_matrix(2 * n, &mut rng, 3);
            let args: Vec<Mat<Rat>> = vec![y.clone(); n];
            let lhs = polarized_pfaffian(&args).unwrap();
            let factorial: i64 = (1..=n as i64).product();
            let rhs = crate::field::Field::mul(
                &crate::field::Rat::from_integer(factorial.into()),
                &pf_general(&y).unwrap(),
            );
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn polarized_pfaffian_is_symmetric_and_multilinear() {
        let mut rng = ChaCha20Rng::seed_from_u64(8);
        let a: Mat<Rat> = random_matrix(4, &mut rng, 3);
        let b: Mat<Rat> = random_matrix(4, &mut rng, 3);
        let c: Mat<Rat> = random_matrix(4, &mut rng, 3);
        let q_ab = polarized_pfaffian(&[a.clone(), b.clone()]).unwrap();
        let q_ba = polarized_pfaffian(&[b.clone(), a.clone()]).unwrap();
        assert_eq!(q_ab, q_ba);
        // linearity in the first slot
        let sum = polarized_pfaffian(&[a.add(&c), b.clone()]).unwrap();
        let split = crate::field::Field::add(
            &q_ab,
            &polarized_pfaffian(&[c, b]).unwrap(),
        );
        assert_eq!(sum, split);
    }

    #[test]
    fn rotations_are_special_orthogonal() {
        let mut rng = ChaCha20Rng::seed_from_u64(9);
        for _ in 0..5 {
            let g: Mat<Rat> = random_rotation(4, &mut rng);
            assert_eq!(g.matmul(&g.transpose()), Mat::identity(4));
            assert_eq!(g.det(), crate::field::ratio(1, 1));
        }
    }

    #[test]
    fn basis_sizes_and_order() {
        let sb: Vec<Mat<Rat>> = sym_basis(4);
        assert_eq!(sb.len(), 10);
        assert!(sb.iter().all(|m| m.is_symmetric()));
        let kb: Vec<Mat<Rat>> = skew_basis(4);
        assert_eq!(kb.len(), 6);
        assert!(kb.iter().all(|m| m.is_skew()));
        assert_eq!(sym_basis_labels(4)[0], "E11");
        assert_eq!(sym_basis_labels(4)[4], "E12+E21");
        // coordinates invert the basis expansion
        let mut rng = ChaCha20Rng::seed_from_u64(10);
        let s: Mat<Rat> = random_symmetric(4, &mut rng, 5);
        let coords = sym_coords(&s);
        let mut rebuilt: Mat<Rat> = Mat::zero(4);
        for (c, b) in coords.iter().zip(sb.iter()) {
            rebuilt = rebuilt.add(&b.scale(c));
        }
        assert_eq!(rebuilt, s);
    }
}
