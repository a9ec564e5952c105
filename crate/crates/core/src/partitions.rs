//! Integer partitions, Frobenius coordinates and nested-hook shapes.
//!
//! The shapes relevant here are the constituents of the exterior algebra of
//! symmetric matrices: nesting hooks whose arm exceeds the leg by one. A
//! strictly decreasing index sequence `a_1 > a_2 > ... >= 0` labels the shape
//! whose i-th diagonal hook has arm `a_i + 1` and leg `a_i`; its first row
//! then has length `a_1 + 2` and its first column length `a_1 + 1`, so the
//! shape fits in `2n` rows exactly when `a_1 <= 2n - 1`.

use crate::error::{Error, Result};

/// A weakly decreasing list of positive integers (rows of a Young diagram).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition, panicking unless the parts are weakly decreasing
    /// and positive.
    pub fn new(parts: Vec<usize>) -> Self {
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]),
            "partition parts must be weakly decreasing: {parts:?}"
        );
        assert!(
            parts.iter().all(|&p| p > 0),
            "partition parts must be positive: {parts:?}"
        );
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of boxes.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Row length, 0 beyond the last row.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Transposes the diagram.
    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0);
        let parts = (1..=cols)
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count())
            .collect();
        Partition { parts }
    }

    /// Cellwise containment of diagrams.
    pub fn contains(&self, other: &Partition) -> bool {
        (0..other.len()).all(|i| self.part(i) >= other.part(i))
    }

    /// Length of the Frobenius diagonal.
    pub fn diagonal_len(&self) -> usize {
        (0..self.len()).take_while(|&i| self.part(i) > i).count()
    }

    /// Arm/leg coordinates of the diagonal hooks.
    pub fn frobenius_coords(&self) -> FrobeniusCoords {
        let conj = self.conjugate();
        let r = self.diagonal_len();
        let arms = (0..r).map(|i| self.part(i) - i - 1).collect();
        let legs = (0..r).map(|i| conj.part(i) - i - 1).collect();
        FrobeniusCoords::new(arms, legs)
    }

    /// Rebuilds the partition from diagonal hook coordinates.
    pub fn from_frobenius(fc: &FrobeniusCoords) -> Partition {
        let r = fc.arms.len();
        if r == 0 {
            return Partition::empty();
        }
        // row lengths above the diagonal, column lengths below it
        let mut rows: Vec<usize> = (0..r).map(|i| fc.arms[i] + i + 1).collect();
        let col_lens: Vec<usize> = (0..r).map(|j| fc.legs[j] + j + 1).collect();
        let depth = col_lens[0];
        for i in r..depth {
            rows.push(col_lens.iter().filter(|&&c| c > i).count());
        }
        Partition::new(rows)
    }

    /// Dimension of the Schur functor `S_λ(C^m)` by the hook content formula.
    pub fn weyl_dim(&self, m: usize) -> u128 {
        if self.len() > m {
            return 0;
        }
        let conj = self.conjugate();
        let mut num: u128 = 1;
        let mut den: u128 = 1;
        for i in 0..self.len() {
            for j in 0..self.part(i) {
                let content = m as i64 + j as i64 - i as i64;
                debug_assert!(content > 0);
                num *= content as u128;
                den *= (self.part(i) - j + conj.part(j) - i - 1) as u128;
                let g = gcd(num, den);
                num /= g;
                den /= g;
            }
        }
        debug_assert_eq!(den, 1);
        num
    }
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl std::fmt::Debug for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Partition{self}")
    }
}

/// Arm and leg lengths `(α | β)` of the diagonal hooks of a partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusCoords {
    pub arms: Vec<usize>,
    pub legs: Vec<usize>,
}

impl FrobeniusCoords {
    pub fn new(arms: Vec<usize>, legs: Vec<usize>) -> Self {
        assert_eq!(arms.len(), legs.len(), "arm/leg length mismatch");
        assert!(arms.windows(2).all(|w| w[0] > w[1]), "arms must strictly decrease");
        assert!(legs.windows(2).all(|w| w[0] > w[1]), "legs must strictly decrease");
        FrobeniusCoords { arms, legs }
    }

    pub fn size(&self) -> usize {
        self.arms.iter().sum::<usize>() + self.legs.iter().sum::<usize>() + self.arms.len()
    }
}

/// Strictly decreasing hook indices `a_1 > a_2 > ... >= 0`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ASequence {
    a: Vec<usize>,
}

impl ASequence {
    pub fn new(a: Vec<usize>) -> Self {
        assert!(a.windows(2).all(|w| w[0] > w[1]), "hook indices must strictly decrease: {a:?}");
        ASequence { a }
    }

    pub fn empty() -> Self {
        ASequence { a: Vec::new() }
    }

    pub fn indices(&self) -> &[usize] {
        &self.a
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// Boxes of the nested-hook shape: `Σ (2 a_i + 2)`.
    pub fn shape_size(&self) -> usize {
        self.a.iter().map(|&ai| 2 * ai + 2).sum()
    }

    /// Largest index usable when diagrams must fit in `2n` rows.
    pub fn max_index(n: usize) -> usize {
        2 * n - 1
    }
}

impl std::fmt::Display for ASequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.a.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl std::fmt::Debug for ASequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ASequence{self}")
    }
}

/// The nested-hook shape with arm `a_i + 1` and leg `a_i` on the i-th
/// diagonal; the constituents of the exterior algebra of `S²V` are exactly
/// these shapes.
pub fn shape_from_hooks(a: &ASequence) -> Partition {
    let arms: Vec<usize> = a.indices().iter().map(|&ai| ai + 1).collect();
    let legs: Vec<usize> = a.indices().to_vec();
    if arms.is_empty() {
        return Partition::empty();
    }
    let p = Partition::from_frobenius(&FrobeniusCoords::new(arms, legs));
    debug_assert_eq!(p.size(), a.shape_size());
    p
}

/// Recovers the hook indices of a nested-hook shape, if it is one.
pub fn hooks_from_shape(p: &Partition) -> Result<ASequence> {
    let fc = p.frobenius_coords();
    for i in 0..fc.arms.len() {
        if fc.arms[i] != fc.legs[i] + 1 {
            return Err(Error::Unsupported(format!(
                "{p} is not a nested-hook shape: hook {i} has arm {} and leg {}",
                fc.arms[i], fc.legs[i]
            )));
        }
    }
    Ok(ASequence::new(fc.legs))
}

/// All strictly decreasing sequences with values in `{0, ..., 2n-1}`,
/// including the empty one: `2^{2n}` sequences.
pub fn enumerate_asequences(n: usize) -> Vec<ASequence> {
    assert!(n >= 1);
    let top = ASequence::max_index(n);
    let mut out = Vec::with_capacity(1 << (top + 1));
    for mask in 0u32..(1 << (top + 1)) {
        let mut a: Vec<usize> = (0..=top).filter(|&v| mask & (1 << v) != 0).collect();
        a.reverse();
        out.push(ASequence::new(a));
    }
    out.sort();
    out
}

/// Partitions obtained from the nested-hook shape of `a` by adding two boxes
/// in distinct rows (the decomposition rule for tensoring with `∧²V`), kept
/// within `2n` rows.
pub fn two_box_additions(a: &ASequence, n: usize) -> Vec<Partition> {
    let mu = shape_from_hooks(a);
    let max_rows = 2 * n;
    let mut out = Vec::new();
    let len = mu.len();
    for r1 in 0..(len + 1).min(max_rows) {
        for r2 in (r1 + 1)..(len + 2).min(max_rows) {
            let rows = len.max(r2 + 1);
            let mut parts: Vec<usize> = (0..rows).map(|i| mu.part(i)).collect();
            parts[r1] += 1;
            parts[r2] += 1;
            while parts.last() == Some(&0) {
                parts.pop();
            }
            if parts.windows(2).all(|w| w[0] >= w[1]) && parts.len() <= max_rows {
                out.push(Partition::new(parts));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Alternate reading of the two-box rule that bounds only the growth of the
/// diagonal hook arms (each arm may grow by at most one, the diagonal rank
/// must not change). Kept for cross-examination against [`two_box_additions`];
/// see [`cross_examine_two_box`].
pub fn two_box_additions_hook_bounded(a: &ASequence, n: usize) -> Vec<Partition> {
    let mu = shape_from_hooks(a);
    let max_rows = 2 * n;
    let r = mu.diagonal_len();
    let mut out = Vec::new();
    for lam in all_two_box_supersets(&mu, max_rows) {
        if lam.diagonal_len() != r {
            continue;
        }
        let fc = lam.frobenius_coords();
        let ok = (0..r).all(|i| {
            let grow = fc.arms[i] as i64 - (a.indices()[i] + 1) as i64;
            (0..=1).contains(&grow)
        });
        if ok {
            out.push(lam);
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Every partition containing `mu` with exactly two more boxes and at most
/// `max_rows` rows, with no constraint on where the boxes go.
fn all_two_box_supersets(mu: &Partition, max_rows: usize) -> Vec<Partition> {
    let len = mu.len();
    let mut out = Vec::new();
    for r1 in 0..(len + 1).min(max_rows) {
        for r2 in r1..(len + 2).min(max_rows) {
            let rows = len.max(r2 + 1);
            let mut parts: Vec<usize> = (0..rows).map(|i| mu.part(i)).collect();
            parts[r1] += 1;
            parts[r2] += 1;
            while parts.last() == Some(&0) {
                parts.pop();
            }
            if parts.windows(2).all(|w| w[0] >= w[1]) && parts.len() <= max_rows {
                out.push(Partition::new(parts));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// A hook sequence on which the two readings of the two-box rule disagree,
/// with both result sets.
#[derive(Debug, Clone)]
pub struct TwoBoxDiscrepancy {
    pub a: ASequence,
    pub strip: Vec<Partition>,
    pub hook_bounded: Vec<Partition>,
}

/// Compares the distinct-row reading against the hook-arm-bounded reading on
/// every hook sequence for dimension `2n` and reports the disagreements.
pub fn cross_examine_two_box(n: usize) -> Vec<TwoBoxDiscrepancy> {
    enumerate_asequences(n)
        .into_iter()
        .filter_map(|a| {
            let strip = two_box_additions(&a, n);
            let hook_bounded = two_box_additions_hook_bounded(&a, n);
            if strip != hook_bounded {
                Some(TwoBoxDiscrepancy { a, strip, hook_bounded })
            } else {
                None
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(part(&[3, 1]).conjugate(), part(&[2, 1, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        // cell-by-cell transpose of (5,5,4,3,3,2)
        let p = part(&[5, 5, 4, 3, 3, 2]);
        let mut cols = vec![0usize; 5];
        for (i, &row) in p.parts().iter().enumerate() {
            for j in 0..row {
                cols[j] = cols[j].max(i + 1);
            }
        }
        assert_eq!(p.conjugate(), Partition::new(cols));
        assert_eq!(p.conjugate(), part(&[6, 6, 5, 3, 2]));
    }

    #[test]
    fn frobenius_roundtrip_examples() {
        let fc = part(&[1, 1]).frobenius_coords();
        assert_eq!(fc.arms, vec![0]);
        assert_eq!(fc.legs, vec![1]);
        let fc = part(&[2, 1]).frobenius_coords();
        assert_eq!(fc.arms, vec![1]);
        assert_eq!(fc.legs, vec![1]);
        for p in [part(&[5, 4, 2, 1]), part(&[3, 3, 3]), part(&[6, 1]), Partition::empty()] {
            assert_eq!(Partition::from_frobenius(&p.frobenius_coords()), p);
        }
    }

    #[test]
    fn shape_from_hooks_small() {
        // single hook: arm a+1 = 1, leg a = 0 gives the row (2)
        assert_eq!(shape_from_hooks(&ASequence::new(vec![0])), part(&[2]));
        assert_eq!(shape_from_hooks(&ASequence::empty()), Partition::empty());
        // size is always Σ(2a_i + 2)
        let a = ASequence::new(vec![4, 3, 1]);
        let p = shape_from_hooks(&a);
        assert_eq!(p.size(), 22);
        let fc = p.frobenius_coords();
        assert_eq!(fc.arms, vec![5, 4, 2]);
        assert_eq!(fc.legs, vec![4, 3, 1]);
    }

    #[test]
    fn hooks_from_shape_roundtrip() {
        for a in enumerate_asequences(2) {
            let p = shape_from_hooks(&a);
            assert_eq!(hooks_from_shape(&p).unwrap(), a);
        }
        assert!(hooks_from_shape(&part(&[1, 1])).is_err());
    }

    #[test]
    fn weyl_dim_examples() {
        assert_eq!(part(&[1]).weyl_dim(4), 4);
        assert_eq!(part(&[1, 1]).weyl_dim(4), 6);
        assert_eq!(part(&[2, 2]).weyl_dim(3), 6);
        assert_eq!(part(&[3, 1]).weyl_dim(4), 45);
        assert_eq!(part(&[1, 1, 1]).weyl_dim(2), 0);
        assert_eq!(Partition::empty().weyl_dim(3), 1);
    }

    #[test]
    fn weyl_dim_brute_force_ssyt() {
        // count semistandard tableaux of shape (2,2) with entries in 1..=3:
        // rows weakly increase, columns strictly increase
        let mut count = 0usize;
        for a in 1..=3u8 {
            for b in a..=3 {
                for c in (a + 1)..=3 {
                    for d in c.max(b + 1)..=3 {
                        let _ = d;
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(count, part(&[2, 2]).weyl_dim(3) as usize);
    }

    #[test]
    fn enumerate_counts() {
        assert_eq!(enumerate_asequences(1).len(), 4);
        assert_eq!(enumerate_asequences(2).len(), 16);
        assert_eq!(enumerate_asequences(3).len(), 64);
        let seqs = enumerate_asequences(1);
        assert!(seqs.contains(&ASequence::empty()));
        assert!(seqs.contains(&ASequence::new(vec![1, 0])));
    }

    #[test]
    fn two_box_additions_basics() {
        // from the empty shape only the vertical domino survives
        let got = two_box_additions(&ASequence::empty(), 1);
        assert_eq!(got, vec![part(&[1, 1])]);
        // outputs contain the base shape and have exactly two more boxes
        for a in enumerate_asequences(2) {
            let mu = shape_from_hooks(&a);
            let outs = two_box_additions(&a, 2);
            for lam in &outs {
                assert!(lam.contains(&mu));
                assert_eq!(lam.size(), mu.size() + 2);
                assert!(lam.len() <= 4);
            }
            // pairwise distinct by construction
            let mut dedup = outs.clone();
            dedup.dedup();
            assert_eq!(dedup.len(), outs.len());
        }
    }

    #[test]
    fn two_box_readings_disagree() {
        let diffs = cross_examine_two_box(2);
        assert!(
            !diffs.is_empty(),
            "the hook-bounded reading should differ from the distinct-row reading"
        );
        // the empty sequence is one of the disagreements: no hooks to extend
        let empty = diffs.iter().find(|d| d.a.is_empty()).unwrap();
        assert_eq!(empty.strip, vec![part(&[1, 1])]);
        assert!(empty.hook_bounded.is_empty());
    }

    proptest! {
        #[test]
        fn conjugation_is_an_involution(mut parts in proptest::collection::vec(1usize..12, 0..8)) {
            parts.sort_unstable_by(|a, b| b.cmp(a));
            let p = Partition::new(parts);
            prop_assert_eq!(p.conjugate().conjugate(), p.clone());
            prop_assert_eq!(p.conjugate().size(), p.size());
        }

        #[test]
        fn weyl_dim_single_row_and_column(k in 1usize..7, m in 1usize..7) {
            let row = Partition::new(vec![k]);
            prop_assert_eq!(row.weyl_dim(m), binom(m + k - 1, k));
            let col = Partition::new(vec![1; k]);
            prop_assert_eq!(col.weyl_dim(m), binom(m, k));
        }

        #[test]
        fn shape_from_hooks_structure(mut idx in proptest::collection::vec(0usize..10, 0..5)) {
            idx.sort_unstable_by(|a, b| b.cmp(a));
            idx.dedup();
            let a = ASequence::new(idx);
            let p = shape_from_hooks(&a);
            prop_assert_eq!(p.diagonal_len(), a.len());
            prop_assert_eq!(p.size(), a.shape_size());
            let fc = p.frobenius_coords();
            for i in 0..a.len() {
                prop_assert_eq!(fc.arms[i], a.indices()[i] + 1);
                prop_assert_eq!(fc.legs[i], a.indices()[i]);
            }
        }
    }

    fn binom(n: usize, k: usize) -> u128 {
        if k > n {
            return 0;
        }
        let mut r: u128 = 1;
        for i in 0..k {
            r = r * (n - i) as u128 / (i + 1) as u128;
        }
        r
    }
}
