//! Character-theoretic multiplicity engine for the root system `D_n`.
//!
//! Weight multisets of the small `so(2n)`-modules are expanded into exterior
//! power characters by a truncated product, and irreducible multiplicities
//! are extracted with the ρ-shifted alternating sum over the Weyl group of
//! signed permutations with an even number of sign changes.

use std::collections::BTreeMap;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec;
use crate::poincare::PoincarePoly;

/// Sparse weight multiset in the `e_i` coordinates of the `D_n` lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightMultiset {
    pub n: usize,
    entries: BTreeMap<Vec<i64>, i64>,
}

impl WeightMultiset {
    pub fn new(n: usize) -> Self {
        WeightMultiset { n, entries: BTreeMap::new() }
    }

    pub fn insert(&mut self, w: Vec<i64>, mult: i64) {
        debug_assert_eq!(w.len(), self.n);
        match self.entries.entry(w) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += mult;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                if mult != 0 {
                    e.insert(mult);
                }
            }
        }
    }

    pub fn get(&self, w: &[i64]) -> i64 {
        self.entries.get(w).copied().unwrap_or(0)
    }

    pub fn total(&self) -> i64 {
        self.entries.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<i64>, &i64)> {
        self.entries.iter()
    }

    /// Image under a signed permutation; a genuine character is fixed by all
    /// of them.
    pub fn apply(&self, w: &WeylElement) -> WeightMultiset {
        let mut out = WeightMultiset::new(self.n);
        for (v, &m) in self.iter() {
            out.insert(w.apply(v), m);
        }
        out
    }
}

/// Kinds of `so(2n)`-modules with hand-written weight systems.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ModuleKind {
    /// The vector representation `C^{2n}`.
    Vector,
    /// Symmetric matrices `S²V`.
    Sym2,
    /// Traceless symmetric matrices.
    Sym2Traceless,
    /// Skew matrices `∧²V`.
    Wedge2,
}

impl ModuleKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "vector" => Ok(ModuleKind::Vector),
            "sym2" => Ok(ModuleKind::Sym2),
            "sym2-traceless" | "sym2_traceless" => Ok(ModuleKind::Sym2Traceless),
            "wedge2" => Ok(ModuleKind::Wedge2),
            _ => Err(Error::Unsupported(format!("unknown module kind `{s}`"))),
        }
    }

    pub fn dim(&self, n: usize) -> usize {
        match self {
            ModuleKind::Vector => 2 * n,
            ModuleKind::Sym2 => n * (2 * n + 1),
            ModuleKind::Sym2Traceless => n * (2 * n + 1) - 1,
            ModuleKind::Wedge2 => n * (2 * n - 1),
        }
    }
}

/// Weight multiset of the requested module: `±e_i` for the vector module;
/// `±e_i ± e_j (i<j)`, `±2e_i` and `0` (multiplicity `n`, or `n-1` traceless)
/// for symmetric matrices; `±e_i ± e_j (i<j)` and `0` (multiplicity `n`) for
/// skew matrices.
pub fn weights_of_module(kind: ModuleKind, n: usize) -> WeightMultiset {
    assert!(n >= 2);
    let mut w = WeightMultiset::new(n);
    let pair_weights = |w: &mut WeightMultiset| {
        for i in 0..n {
            for j in (i + 1)..n {
                for si in [1i64, -1] {
                    for sj in [1i64, -1] {
                        let mut v = vec![0i64; n];
                        v[i] = si;
                        v[j] = sj;
                        w.insert(v, 1);
                    }
                }
            }
        }
    };
    match kind {
        ModuleKind::Vector => {
            for i in 0..n {
                for s in [1i64, -1] {
                    let mut v = vec![0i64; n];
                    v[i] = s;
                    w.insert(v, 1);
                }
            }
        }
        ModuleKind::Sym2 | ModuleKind::Sym2Traceless => {
            pair_weights(&mut w);
            for i in 0..n {
                for s in [2i64, -2] {
                    let mut v = vec![0i64; n];
                    v[i] = s;
                    w.insert(v, 1);
                }
            }
            let zero_mult = if kind == ModuleKind::Sym2 { n } else { n - 1 };
            w.insert(vec![0; n], zero_mult as i64);
        }
        ModuleKind::Wedge2 => {
            pair_weights(&mut w);
            w.insert(vec![0; n], n as i64);
        }
    }
    debug_assert_eq!(w.total(), kind.dim(n) as i64);
    w
}

/// Weight multisets of the exterior powers `∧^k W` for `k = 0..=kmax`.
#[derive(Clone, Debug)]
pub struct CharacterSeries {
    pub per_degree: Vec<WeightMultiset>,
}

/// Expands `∏ (1 + q·x^μ)^{mult}` truncated at `q^kmax`.
pub fn exterior_character(w: &WeightMultiset, kmax: usize) -> CharacterSeries {
    let n = w.n;
    assert!(kmax as i64 <= w.total());
    let mut per: Vec<BTreeMap<Vec<i64>, i64>> = vec![BTreeMap::new(); kmax + 1];
    per[0].insert(vec![0; n], 1);
    for (mu, &mult) in w.iter() {
        let mut next: Vec<BTreeMap<Vec<i64>, i64>> = vec![BTreeMap::new(); kmax + 1];
        for (k, layer) in per.iter().enumerate() {
            for (nu, &c) in layer {
                let take_max = (mult as usize).min(kmax - k);
                let mut choose: i64 = 1;
                for j in 0..=take_max {
                    if j > 0 {
                        choose = choose * (mult - j as i64 + 1) / j as i64;
                    }
                    let shifted: Vec<i64> =
                        nu.iter().zip(mu.iter()).map(|(a, b)| a + j as i64 * b).collect();
                    *next[k + j].entry(shifted).or_insert(0) += c * choose;
                }
            }
        }
        per = next;
    }
    CharacterSeries {
        per_degree: per
            .into_iter()
            .map(|entries| WeightMultiset { n, entries })
            .collect(),
    }
}

/// One signed permutation: coordinate `i` of the output is `signs[i] *
/// input[perm[i]]`.
#[derive(Clone, Debug)]
pub struct WeylElement {
    pub perm: Vec<usize>,
    pub signs: Vec<i64>,
    pub det: i64,
}

impl WeylElement {
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        (0..v.len()).map(|i| self.signs[i] * v[self.perm[i]]).collect()
    }
}

/// Root datum of `D_n` (`n >= 3`): ρ and the Weyl group of signed
/// permutations with an even number of sign changes, of order `2^{n-1}·n!`.
pub struct RootDatumD {
    pub n: usize,
    pub rho: Vec<i64>,
    elements: Vec<WeylElement>,
}

impl RootDatumD {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Unsupported(format!(
                "rank {n} is below 3; the signed-permutation machinery needs n >= 3 \
                 (use the brute-force kernel for n = 2)"
            )));
        }
        let rho: Vec<i64> = (0..n).map(|i| (n - 1 - i) as i64).collect();
        let mut elements = Vec::new();
        let mut perm: Vec<usize> = (0..n).collect();
        permute_all(&mut perm, 0, &mut |p, parity| {
            for mask in 0u32..(1 << n) {
                if (mask.count_ones() & 1) != 0 {
                    continue;
                }
                let signs: Vec<i64> =
                    (0..n).map(|i| if mask & (1 << i) != 0 { -1 } else { 1 }).collect();
                elements.push(WeylElement { perm: p.to_vec(), signs, det: parity });
            }
        });
        Ok(RootDatumD { n, rho, elements })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R) -> &WeylElement {
        &self.elements[rng.gen_range(0..self.elements.len())]
    }

    /// Dominance for `D_n`: `λ_1 >= ... >= λ_{n-1} >= |λ_n|`.
    pub fn is_dominant(&self, lam: &[i64]) -> bool {
        lam.len() == self.n
            && lam.windows(2).take(self.n.saturating_sub(2)).all(|w| w[0] >= w[1])
            && lam[self.n - 2] >= lam[self.n - 1].abs()
    }

    /// Dimension of the irreducible with highest weight `lam` by the Weyl
    /// dimension formula over the positive roots `e_i ± e_j`.
    pub fn irrep_dim(&self, lam: &[i64]) -> Result<i128> {
        if !self.is_dominant(lam) {
            return Err(Error::NotDominant(lam.to_vec()));
        }
        let l: Vec<i64> = lam.iter().zip(self.rho.iter()).map(|(a, b)| a + b).collect();
        let mut num: i128 = 1;
        let mut den: i128 = 1;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                num *= (l[i] * l[i] - l[j] * l[j]) as i128;
                den *= (self.rho[i] * self.rho[i] - self.rho[j] * self.rho[j]) as i128;
                let g = igcd(num.abs(), den.abs());
                num /= g;
                den /= g;
            }
        }
        debug_assert_eq!(den.abs(), 1);
        Ok(num * den.signum())
    }
}

fn igcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.max(1)
    } else {
        igcd(b, a % b)
    }
}

fn permute_all<F: FnMut(&[usize], i64)>(perm: &mut Vec<usize>, k: usize, f: &mut F) {
    let n = perm.len();
    if k == n {
        let mut parity = 1i64;
        for i in 0..n {
            for j in (i + 1)..n {
                if perm[i] > perm[j] {
                    parity = -parity;
                }
            }
        }
        f(perm, parity);
        return;
    }
    for i in k..n {
        perm.swap(k, i);
        permute_all(perm, k + 1, f);
        perm.swap(k, i);
    }
}

/// Multiplicity of the irreducible with highest weight `lam` inside the
/// virtual character `m`: `Σ_w sign(w) · m(λ + ρ − w·ρ)`.
pub fn irrep_mult(m: &WeightMultiset, lam: &[i64], d: &RootDatumD) -> Result<i64> {
    if !d.is_dominant(lam) {
        return Err(Error::NotDominant(lam.to_vec()));
    }
    let target: Vec<i64> = lam.iter().zip(d.rho.iter()).map(|(a, b)| a + b).collect();
    let mut total = 0i64;
    for w in d.elements() {
        let wrho = w.apply(&d.rho);
        let key: Vec<i64> = target.iter().zip(wrho.iter()).map(|(a, b)| a - b).collect();
        total += w.det * m.get(&key);
    }
    Ok(total)
}

/// Multiplicity table of one irreducible inside the exterior powers of a
/// module, as a polynomial in `t`.
///
/// Degrees up to `kmax` are computed directly; when `duality_dim = D` is
/// given, the remaining degrees are filled in by the mirror rule
/// `c_k = c_{D-k}` (the top exterior power of an orthogonal module of a
/// connected group is trivial, so `∧^k ≅ ∧^{D-k}` as modules).
pub fn poincare_multiplicity(
    kind: ModuleKind,
    lam: &[i64],
    n: usize,
    kmax: usize,
    duality_dim: Option<usize>,
) -> Result<PoincarePoly> {
    let d = RootDatumD::new(n)?;
    let w = weights_of_module(kind, n);
    let dim = kind.dim(n);
    if kmax > dim {
        return Err(Error::Unsupported(format!(
            "kmax {kmax} exceeds the module dimension {dim}"
        )));
    }
    if let Some(dd) = duality_dim {
        if dd != dim {
            return Err(Error::Unsupported(format!(
                "duality dimension {dd} does not match the module dimension {dim}"
            )));
        }
        if 2 * kmax < dd {
            return Err(Error::Unsupported(format!(
                "kmax {kmax} is too small to determine all degrees of a dimension-{dd} module by duality"
            )));
        }
    }
    let series = exterior_character(&w, kmax);
    let degrees: Vec<usize> = (0..=kmax).collect();
    let mults: Vec<Result<i64>> =
        exec::map_collect(&degrees, |&k| irrep_mult(&series.per_degree[k], lam, &d));
    let mut coeffs = Vec::new();
    for m in mults {
        coeffs.push(m?);
    }
    if let Some(dd) = duality_dim {
        let mut full = vec![0i64; dd + 1];
        for (k, &c) in coeffs.iter().enumerate() {
            full[k] = c;
            full[dd - k] = c;
        }
        coeffs = full;
    }
    Ok(PoincarePoly::from_coeffs(coeffs))
}

/// One row of a rendered multiplicity table.
#[derive(Clone, Debug, Serialize)]
pub struct TableEntry {
    pub degree: usize,
    pub multiplicity: i64,
}

/// Renders `degree | multiplicity` rows in the two-line aligned layout.
pub fn render_table(entries: &[TableEntry]) -> String {
    let mut top = String::from("degree      ");
    let mut bottom = String::from("multiplicity");
    for e in entries {
        let cell = e.degree.to_string();
        let mult = e.multiplicity.to_string();
        let w = cell.len().max(mult.len());
        top.push_str(&format!("|{cell:>w$}"));
        bottom.push_str(&format!("|{mult:>w$}"));
    }
    format!("{top}|\n{bottom}|")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn module_weight_totals() {
        assert_eq!(weights_of_module(ModuleKind::Vector, 3).total(), 6);
        assert_eq!(weights_of_module(ModuleKind::Sym2Traceless, 3).total(), 20);
        assert_eq!(weights_of_module(ModuleKind::Wedge2, 4).total(), 28);
        assert_eq!(weights_of_module(ModuleKind::Sym2, 2).total(), 10);
    }

    #[test]
    fn weyl_group_order() {
        let d3 = RootDatumD::new(3).unwrap();
        assert_eq!(d3.order(), 24);
        let d4 = RootDatumD::new(4).unwrap();
        assert_eq!(d4.order(), 192);
        assert!(RootDatumD::new(2).is_err());
    }

    #[test]
    fn weights_are_weyl_invariant() {
        let mut rng = ChaCha20Rng::seed_from_u64(11);
        for n in [3usize, 4] {
            let d = RootDatumD::new(n).unwrap();
            for kind in [ModuleKind::Vector, ModuleKind::Sym2Traceless, ModuleKind::Wedge2] {
                let w = weights_of_module(kind, n);
                for _ in 0..20 {
                    let g = d.random_element(&mut rng);
                    assert_eq!(w.apply(g), w, "kind {kind:?} n {n}");
                }
            }
        }
    }

    #[test]
    fn exterior_character_binomial_totals() {
        let w = weights_of_module(ModuleKind::Sym2Traceless, 3);
        let series = exterior_character(&w, 6);
        let mut binom = 1i64;
        for k in 0..=6 {
            assert_eq!(series.per_degree[k].total(), binom);
            binom = binom * (20 - k as i64) / (k as i64 + 1);
        }
        assert_eq!(series.per_degree[0].get(&[0, 0, 0]), 1);
        assert_eq!(series.per_degree[1], w);
    }

    #[test]
    fn top_exterior_power_is_the_weight_sum() {
        let w = weights_of_module(ModuleKind::Vector, 3);
        let series = exterior_character(&w, 6);
        let top = &series.per_degree[6];
        assert_eq!(top.total(), 1);
        assert_eq!(top.get(&[0, 0, 0]), 1);
    }

    #[test]
    fn vector_module_is_irreducible() {
        let d = RootDatumD::new(3).unwrap();
        let w = weights_of_module(ModuleKind::Vector, 3);
        assert_eq!(irrep_mult(&w, &[1, 0, 0], &d).unwrap(), 1);
        assert_eq!(irrep_mult(&w, &[2, 0, 0], &d).unwrap(), 0);
        assert!(irrep_mult(&w, &[0, 1, 0], &d).is_err());
        assert!(irrep_mult(&w, &[0, 0, 2], &d).is_err());
    }

    #[test]
    fn irrep_dims() {
        let d = RootDatumD::new(3).unwrap();
        assert_eq!(d.irrep_dim(&[1, 0, 0]).unwrap(), 6);
        assert_eq!(d.irrep_dim(&[2, 0, 0]).unwrap(), 20);
        assert_eq!(d.irrep_dim(&[1, 1, 0]).unwrap(), 15);
        assert_eq!(d.irrep_dim(&[0, 0, 0]).unwrap(), 1);
    }

    #[test]
    fn multiplicities_resolve_dimensions() {
        // Σ_λ mult(λ)·dim(λ) must equal the total multiplicity, exterior
        // degrees <= 4 at n = 3.
        let n = 3;
        let d = RootDatumD::new(n).unwrap();
        let w = weights_of_module(ModuleKind::Sym2Traceless, n);
        let series = exterior_character(&w, 4);
        for k in 0..=4usize {
            let layer = &series.per_degree[k];
            let mut total: i128 = 0;
            let mut seen = std::collections::BTreeSet::new();
            for (v, _) in layer.iter() {
                // fold into the dominant chamber: sort |coords| descending,
                // keeping an odd number of sign flips on the last coordinate
                let mut lam: Vec<i64> = v.iter().map(|x| x.abs()).collect();
                lam.sort_unstable_by(|a, b| b.cmp(a));
                let neg = v.iter().filter(|&&x| x < 0).count();
                if neg % 2 == 1 {
                    let last = lam.len() - 1;
                    lam[last] = -lam[last];
                }
                if !seen.insert(lam.clone()) {
                    continue;
                }
                let m = irrep_mult(layer, &lam, &d).unwrap();
                assert!(m >= 0, "negative multiplicity {m} for {lam:?} at degree {k}");
                total += m as i128 * d.irrep_dim(&lam).unwrap();
            }
            assert_eq!(total, layer.total() as i128, "degree {k}");
        }
    }

    #[test]
    fn table_render_layout() {
        let entries = vec![
            TableEntry { degree: 0, multiplicity: 0 },
            TableEntry { degree: 1, multiplicity: 1 },
            TableEntry { degree: 10, multiplicity: 4 },
        ];
        let s = render_table(&entries);
        assert_eq!(s, "degree      |0|1|10|\nmultiplicity|0|1| 4|");
    }
}
