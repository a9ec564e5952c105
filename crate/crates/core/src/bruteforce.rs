//! Brute-force invariant dimensions: the common kernel of the `so(2n)`
//! generators acting by derivation on `∧^k(M⁺) ⊗ M^±`.
//!
//! This is the independent oracle for the diagram counts and the freeness
//! ranks. It works over the two built-in prime moduli (results must agree;
//! a mismatch escalates to exact rationals), with a separate exact-rational
//! entry point for confirmation passes.

use std::collections::HashMap;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec;
use crate::field::{Field, Fp, Rat, PRIME_A, PRIME_B};
use crate::linalg;
use crate::mat::{skew_basis, skew_coords, sym_basis, sym_coords, Mat};

/// Codomain of the covariants whose invariant dimension is being counted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TargetKind {
    Sym,
    Skew,
}

impl TargetKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "sym" => Ok(TargetKind::Sym),
            "skew" => Ok(TargetKind::Skew),
            _ => Err(Error::Unsupported(format!("unknown target `{s}`"))),
        }
    }
}

const SIZE_LIMIT: usize = 5_000;

/// Dimension of the space of `so(2n)`-invariants in `∧^k(M⁺) ⊗ M^{target}`,
/// computed as the common kernel of all `n(2n-1)` generators over both
/// built-in prime fields. A disagreement between the two moduli triggers an
/// exact rational recomputation.
pub fn so_invariant_dim_bruteforce(k: usize, n: usize, target: TargetKind) -> Result<usize> {
    let a = kernel_dim::<Fp<PRIME_A>>(k, n, target)?;
    let b = kernel_dim::<Fp<PRIME_B>>(k, n, target)?;
    if a != b {
        return kernel_dim::<Rat>(k, n, target);
    }
    Ok(a)
}

/// The optional exact-rational confirmation pass.
pub fn so_invariant_dim_rational(k: usize, n: usize, target: TargetKind) -> Result<usize> {
    kernel_dim::<Rat>(k, n, target)
}

fn kernel_dim<F: Field>(k: usize, n: usize, target: TargetKind) -> Result<usize> {
    let side = 2 * n;
    let sym: Vec<Mat<F>> = sym_basis(side);
    let tgt: Vec<Mat<F>> = match target {
        TargetKind::Sym => sym.clone(),
        TargetKind::Skew => skew_basis(side),
    };
    let nsym = sym.len();
    let ntgt = tgt.len();
    if k > nsym {
        return Ok(0);
    }
    let tuples: Vec<Vec<u8>> = (0..nsym as u8).combinations(k).collect();
    let dim = tuples.len() * ntgt;
    if dim > SIZE_LIMIT {
        return Err(Error::Infeasible { evals: dim as u128, limit: SIZE_LIMIT as u128 });
    }
    let tuple_index: HashMap<Vec<u8>, usize> =
        tuples.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();

    let generators: Vec<Mat<F>> = skew_basis(side);
    let mut kernel: Vec<Vec<F>> = (0..dim)
        .map(|i| {
            let mut v = vec![F::zero(); dim];
            v[i] = F::one();
            v
        })
        .collect();

    for g in &generators {
        if kernel.is_empty() {
            break;
        }
        let sym_img: Vec<Vec<(usize, F)>> =
            sym.iter().map(|b| sparse(&sym_coords(&g.commutator(b)))).collect();
        let tgt_img: Vec<Vec<(usize, F)>> = tgt
            .iter()
            .map(|b| match target {
                TargetKind::Sym => sparse(&sym_coords(&g.commutator(b))),
                TargetKind::Skew => sparse(&skew_coords(&g.commutator(b))),
            })
            .collect();

        // sparse image of every basis element of the wedge ⊗ target space
        let indices: Vec<usize> = (0..dim).collect();
        let op: Vec<Vec<(usize, F)>> = exec::map_collect(&indices, |&e| {
            let (ti, c) = (e / ntgt, e % ntgt);
            let t = &tuples[ti];
            let mut img: HashMap<usize, F> = HashMap::new();
            for (slot, &b) in t.iter().enumerate() {
                for (nb, coef) in &sym_img[b as usize] {
                    add_wedge_term(&mut img, t, slot, *nb as u8, c, coef, &tuple_index, ntgt);
                }
            }
            for (nc, coef) in &tgt_img[c] {
                let idx = ti * ntgt + nc;
                let entry = img.entry(idx).or_insert_with(F::zero);
                *entry = entry.add(coef);
            }
            let mut out: Vec<(usize, F)> =
                img.into_iter().filter(|(_, v)| !v.is_zero()).collect();
            out.sort_by_key(|(i, _)| *i);
            out
        });

        // generator matrix restricted to the current kernel basis
        let applied: Vec<Vec<F>> = exec::map_collect(&kernel, |v| {
            let mut out = vec![F::zero(); dim];
            for (e, coef) in v.iter().enumerate() {
                if coef.is_zero() {
                    continue;
                }
                for (i, w) in &op[e] {
                    out[*i] = out[*i].add(&coef.mul(w));
                }
            }
            out
        });
        let mut rows: Vec<Vec<F>> = (0..dim)
            .map(|out| applied.iter().map(|col| col[out].clone()).collect())
            .collect();
        rows.retain(|r| r.iter().any(|x| !x.is_zero()));
        let null = linalg::kernel_basis(rows, kernel.len());
        kernel = null
            .iter()
            .map(|x| {
                let mut v = vec![F::zero(); dim];
                for (j, c) in x.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (vi, kv) in v.iter_mut().zip(kernel[j].iter()) {
                        *vi = vi.add(&c.mul(kv));
                    }
                }
                v
            })
            .collect();
    }
    Ok(kernel.len())
}

fn sparse<F: Field>(v: &[F]) -> Vec<(usize, F)> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// Adds the wedge term obtained by replacing `t[slot]` with basis index `nb`
/// (resorted, with sign; vanishes on repeats) at codomain coordinate `c`.
#[allow(clippy::too_many_arguments)]
fn add_wedge_term<F: Field>(
    img: &mut HashMap<usize, F>,
    t: &[u8],
    slot: usize,
    nb: u8,
    c: usize,
    coef: &F,
    tuple_index: &HashMap<Vec<u8>, usize>,
    ntgt: usize,
) {
    if t.contains(&nb) && t[slot] != nb {
        return;
    }
    let mut nt: Vec<u8> = t.to_vec();
    nt[slot] = nb;
    let mut sign = 1i64;
    let mut i = slot;
    while i > 0 && nt[i - 1] > nt[i] {
        nt.swap(i - 1, i);
        sign = -sign;
        i -= 1;
    }
    while i + 1 < nt.len() && nt[i] > nt[i + 1] {
        nt.swap(i, i + 1);
        sign = -sign;
        i += 1;
    }
    if nt.windows(2).any(|w| w[0] == w[1]) {
        return;
    }
    let idx = tuple_index[&nt] * ntgt + c;
    let delta = if sign > 0 { coef.clone() } else { coef.neg() };
    let entry = img.entry(idx).or_insert_with(F::zero);
    *entry = entry.add(&delta);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_zero_dimensions() {
        // invariants of M⁺ itself: the identity line
        assert_eq!(so_invariant_dim_bruteforce(0, 2, TargetKind::Sym).unwrap(), 1);
        // so(4) is semisimple, so the skew module has no invariants
        assert_eq!(so_invariant_dim_bruteforce(0, 2, TargetKind::Skew).unwrap(), 0);
    }

    #[test]
    fn low_degrees_match_the_diagram_count() {
        let counts = crate::counting::count_b_plus(2);
        for k in 0..=3usize {
            let dim = so_invariant_dim_bruteforce(k, 2, TargetKind::Skew).unwrap();
            assert_eq!(dim, counts.coeff(k), "degree {k}");
        }
    }

    #[test]
    fn rational_pass_agrees() {
        for k in 0..=2usize {
            assert_eq!(
                so_invariant_dim_rational(k, 2, TargetKind::Skew).unwrap(),
                so_invariant_dim_bruteforce(k, 2, TargetKind::Skew).unwrap()
            );
        }
    }

    #[test]
    fn size_guard_fires() {
        assert!(matches!(
            so_invariant_dim_bruteforce(10, 3, TargetKind::Skew),
            Err(Error::Infeasible { .. })
        ));
    }
}
