//! Exact evaluation engine for alternating multilinear matrix-valued maps.
//!
//! A map is a small expression tree: the tautological inclusion and its wedge
//! powers (standard polynomials), wedge products, traces, the relative
//! differential, and the two Pfaffian covariants. Evaluation is either direct
//! (arbitrary symmetric arguments) or memoized over tuples of the fixed
//! symmetric basis, which is enough to decide equality of alternating maps.

use std::collections::HashMap;
use std::sync::Arc;

use dashmap::DashMap;
use itertools::Itertools;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec;
use crate::field::Field;
use crate::mat::{
    polarized_pfaffian, random_symmetric, skew_unit, sym_basis, sym_basis_labels, sym_unit, Mat,
};

/// Codomain of an alternating map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Codomain {
    Scalar,
    Matrix,
}

/// Evaluation result.
#[derive(Clone, Debug, PartialEq)]
pub enum Value<F: Field> {
    Scalar(F),
    Matrix(Mat<F>),
}

impl<F: Field> Value<F> {
    pub fn zero(codomain: Codomain, side: usize) -> Self {
        match codomain {
            Codomain::Scalar => Value::Scalar(F::zero()),
            Codomain::Matrix => Value::Matrix(Mat::zero(side)),
        }
    }

    pub fn add(&self, rhs: &Value<F>) -> Value<F> {
        match (self, rhs) {
            (Value::Scalar(a), Value::Scalar(b)) => Value::Scalar(a.add(b)),
            (Value::Matrix(a), Value::Matrix(b)) => Value::Matrix(a.add(b)),
            _ => panic!("codomain mismatch in Value::add"),
        }
    }

    pub fn scale(&self, c: &F) -> Value<F> {
        match self {
            Value::Scalar(a) => Value::Scalar(a.mul(c)),
            Value::Matrix(a) => Value::Matrix(a.scale(c)),
        }
    }

    pub fn neg(&self) -> Value<F> {
        self.scale(&F::from_i64(-1))
    }

    /// Product in the target algebra, in the given order.
    pub fn compose(&self, rhs: &Value<F>) -> Value<F> {
        match (self, rhs) {
            (Value::Scalar(a), Value::Scalar(b)) => Value::Scalar(a.mul(b)),
            (Value::Scalar(a), Value::Matrix(b)) => Value::Matrix(b.scale(a)),
            (Value::Matrix(a), Value::Scalar(b)) => Value::Matrix(a.scale(b)),
            (Value::Matrix(a), Value::Matrix(b)) => Value::Matrix(a.matmul(b)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Value::Scalar(a) => a.is_zero(),
            Value::Matrix(a) => a.is_zero(),
        }
    }

    pub fn as_scalar(&self) -> &F {
        match self {
            Value::Scalar(a) => a,
            Value::Matrix(_) => panic!("expected scalar value"),
        }
    }

    pub fn as_matrix(&self) -> &Mat<F> {
        match self {
            Value::Matrix(a) => a,
            Value::Scalar(_) => panic!("expected matrix value"),
        }
    }

    /// Flattens into coefficients (one for scalars, all cells for matrices).
    pub fn flatten(&self) -> Vec<F> {
        match self {
            Value::Scalar(a) => vec![a.clone()],
            Value::Matrix(m) => {
                let n = m.side();
                let mut out = Vec::with_capacity(n * n);
                for i in 0..n {
                    for j in 0..n {
                        out.push(m.at(i, j).clone());
                    }
                }
                out
            }
        }
    }
}

enum Kind<F: Field> {
    /// `St_h`, the full antisymmetrization of the product of the arguments;
    /// the h-th wedge power of the inclusion.
    Power,
    Wedge(AltMap<F>, AltMap<F>),
    Trace(AltMap<F>),
    /// Relative differential `Σ_h (-1)^h X_h · F(..X̂_h..)` with the action
    /// `X · Y = XY + Y Xᵗ`. The acting argument is projected onto traceless
    /// matrices first: the differential lives on the traceless quotient, and
    /// this is its pullback for maps that kill the identity line in every
    /// slot (all the Pfaffian covariants do, since their slots enter through
    /// commutators).
    Differential(AltMap<F>),
    /// Antisymmetrized polarized Pfaffian of commutators, degree `2n`.
    PfaffianSum,
    /// Skew-matrix-valued Pfaffian covariant of degree `2n-2`.
    OmegaForm,
    Scaled(F, AltMap<F>),
    Sum(Vec<AltMap<F>>),
}

struct Node<F: Field> {
    kind: Kind<F>,
    degree: usize,
    side: usize,
    codomain: Codomain,
    memo: DashMap<Vec<u8>, Value<F>>,
}

/// An alternating multilinear map on tuples of symmetric `side x side`
/// matrices, with scalar or matrix values.
#[derive(Clone)]
pub struct AltMap<F: Field> {
    node: Arc<Node<F>>,
}

impl<F: Field> AltMap<F> {
    fn make(kind: Kind<F>, degree: usize, side: usize, codomain: Codomain) -> Self {
        AltMap {
            node: Arc::new(Node { kind, degree, side, codomain, memo: DashMap::new() }),
        }
    }

    pub fn degree(&self) -> usize {
        self.node.degree
    }

    pub fn side(&self) -> usize {
        self.node.side
    }

    pub fn codomain(&self) -> Codomain {
        self.node.codomain
    }

    /// The inclusion `X`: degree 1, matrix-valued.
    pub fn inclusion(side: usize) -> Self {
        Self::power(side, 1)
    }

    /// `X^h = St_h`.
    pub fn power(side: usize, h: usize) -> Self {
        assert!(h >= 1, "wedge powers start at degree 1");
        Self::make(Kind::Power, h, side, Codomain::Matrix)
    }

    pub fn wedge(&self, rhs: &AltMap<F>) -> Result<Self> {
        if self.side() != rhs.side() {
            return Err(Error::DimensionMismatch(format!(
                "wedge of maps on sides {} and {}",
                self.side(),
                rhs.side()
            )));
        }
        let codomain =
            if self.codomain() == Codomain::Scalar && rhs.codomain() == Codomain::Scalar {
                Codomain::Scalar
            } else {
                Codomain::Matrix
            };
        Ok(Self::make(
            Kind::Wedge(self.clone(), rhs.clone()),
            self.degree() + rhs.degree(),
            self.side(),
            codomain,
        ))
    }

    pub fn trace(&self) -> Result<Self> {
        if self.codomain() != Codomain::Matrix {
            return Err(Error::Unsupported("trace of a scalar-valued map".into()));
        }
        Ok(Self::make(Kind::Trace(self.clone()), self.degree(), self.side(), Codomain::Scalar))
    }

    pub fn differential(&self) -> Result<Self> {
        if self.codomain() != Codomain::Matrix {
            return Err(Error::Unsupported(
                "the relative differential needs a matrix-valued map".into(),
            ));
        }
        Ok(Self::make(
            Kind::Differential(self.clone()),
            self.degree() + 1,
            self.side(),
            Codomain::Matrix,
        ))
    }

    /// The scalar covariant `Q`: antisymmetrization of the polarized Pfaffian
    /// of commutators, degree `2n` on side `2n`.
    pub fn covariant_q(n: usize) -> Self {
        assert!(n >= 1);
        Self::make(Kind::PfaffianSum, 2 * n, 2 * n, Codomain::Scalar)
    }

    /// The skew-matrix-valued covariant `Ω` of degree `2n-2` on side `2n`.
    pub fn covariant_omega(n: usize) -> Self {
        assert!(n >= 2, "the matrix-valued Pfaffian covariant needs n >= 2");
        Self::make(Kind::OmegaForm, 2 * n - 2, 2 * n, Codomain::Matrix)
    }

    /// `T_i = Tr(St_{4i+1})`, degree `4i+1`, scalar.
    pub fn covariant_t(n: usize, i: usize) -> Self {
        Self::power(2 * n, 4 * i + 1).trace().expect("powers are matrix-valued")
    }

    pub fn scaled(&self, c: F) -> Self {
        Self::make(
            Kind::Scaled(c, self.clone()),
            self.degree(),
            self.side(),
            self.codomain(),
        )
    }

    /// `Σ c_i · F_i` for maps of identical shape.
    pub fn linear_combination(terms: &[(F, AltMap<F>)]) -> Result<Self> {
        assert!(!terms.is_empty());
        let (_, first) = &terms[0];
        let (deg, side, cod) = (first.degree(), first.side(), first.codomain());
        let mut parts = Vec::with_capacity(terms.len());
        for (c, t) in terms {
            if t.degree() != deg || t.side() != side || t.codomain() != cod {
                return Err(Error::DimensionMismatch("linear combination of maps".into()));
            }
            parts.push(t.scaled(c.clone()));
        }
        Ok(Self::make(Kind::Sum(parts), deg, side, cod))
    }

    /// Direct evaluation on arbitrary argument matrices.
    pub fn eval(&self, args: &[Mat<F>]) -> Result<Value<F>> {
        if args.len() != self.degree() {
            return Err(Error::Arity { expected: self.degree(), got: args.len() });
        }
        if args.iter().any(|m| m.side() != self.side()) {
            return Err(Error::DimensionMismatch("argument side".into()));
        }
        let pos: Vec<u8> = (0..args.len() as u8).collect();
        let mut cache: HashMap<(usize, Vec<u8>), Value<F>> = HashMap::new();
        Ok(self.eval_rec(args, &pos, &mut Some(&mut cache)))
    }

    /// Memoized evaluation on an increasing tuple of indices into the
    /// canonical symmetric basis of [`sym_basis`]. The memo is shared across
    /// calls, so `basis` must always be that canonical basis.
    pub fn eval_on_basis(&self, basis: &[Mat<F>], idx: &[u8]) -> Value<F> {
        debug_assert_eq!(idx.len(), self.degree());
        self.eval_rec(basis, idx, &mut None)
    }

    fn eval_rec(
        &self,
        args: &[Mat<F>],
        pos: &[u8],
        local: &mut Option<&mut HashMap<(usize, Vec<u8>), Value<F>>>,
    ) -> Value<F> {
        let key_node = Arc::as_ptr(&self.node) as usize;
        if let Some(cache) = local {
            if let Some(v) = cache.get(&(key_node, pos.to_vec())) {
                return v.clone();
            }
        } else if let Some(v) = self.node.memo.get(pos) {
            return v.clone();
        }
        let out = self.eval_kind(args, pos, local);
        if let Some(cache) = local {
            cache.insert((key_node, pos.to_vec()), out.clone());
        } else {
            self.node.memo.insert(pos.to_vec(), out.clone());
        }
        out
    }

    fn eval_kind(
        &self,
        args: &[Mat<F>],
        pos: &[u8],
        local: &mut Option<&mut HashMap<(usize, Vec<u8>), Value<F>>>,
    ) -> Value<F> {
        let side = self.side();
        match &self.node.kind {
            Kind::Power => {
                // St_k on the selected arguments, expanded by the first factor
                if pos.len() == 1 {
                    return Value::Matrix(args[pos[0] as usize].clone());
                }
                let mut acc = Mat::zero(side);
                for (j, &p) in pos.iter().enumerate() {
                    let rest: Vec<u8> =
                        pos.iter().copied().filter(|&q| q != p).collect();
                    let sub = self.eval_rec(args, &rest, local);
                    let term = args[p as usize].matmul(sub.as_matrix());
                    acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
                }
                Value::Matrix(acc)
            }
            Kind::Wedge(g, h) => {
                let mut acc = Value::zero(self.codomain(), side);
                let k = pos.len();
                for subset in (0..k).combinations(g.degree()) {
                    let mut inv = 0usize;
                    for (t, &s) in subset.iter().enumerate() {
                        inv += s - t;
                    }
                    let gpos: Vec<u8> = subset.iter().map(|&s| pos[s]).collect();
                    let hpos: Vec<u8> = (0..k)
                        .filter(|t| !subset.contains(t))
                        .map(|t| pos[t])
                        .collect();
                    let gv = g.eval_rec(args, &gpos, local);
                    let hv = h.eval_rec(args, &hpos, local);
                    let term = gv.compose(&hv);
                    acc = if inv % 2 == 0 { acc.add(&term) } else { acc.add(&term.neg()) };
                }
                acc
            }
            Kind::Trace(g) => {
                let gv = g.eval_rec(args, pos, local);
                Value::Scalar(gv.as_matrix().trace())
            }
            Kind::Differential(g) => {
                let inv_side = F::from_i64(side as i64).inv().expect("side is invertible");
                let mut acc = Mat::zero(side);
                for (h, &p) in pos.iter().enumerate() {
                    let rest: Vec<u8> = pos.iter().copied().filter(|&q| q != p).collect();
                    let sub = g.eval_rec(args, &rest, local);
                    let x = &args[p as usize];
                    let shift = Mat::identity(side).scale(&x.trace().mul(&inv_side));
                    let x0 = x.sub(&shift);
                    let y = sub.as_matrix();
                    let acted = x0.matmul(y).add(&y.matmul(&x0.transpose()));
                    acc = if h % 2 == 0 { acc.add(&acted) } else { acc.sub(&acted) };
                }
                Value::Matrix(acc)
            }
            Kind::PfaffianSum => {
                let n = side / 2;
                let mut acc = F::zero();
                for (pairs, sign) in perfect_matchings(pos.len()) {
                    let comms: Vec<Mat<F>> = pairs
                        .iter()
                        .map(|&(a, b)| {
                            args[pos[a] as usize].commutator(&args[pos[b] as usize])
                        })
                        .collect();
                    let q = polarized_pfaffian(&comms).expect("arity fixed by construction");
                    acc = if sign > 0 { acc.add(&q) } else { acc.sub(&q) };
                }
                // the full symmetric-group sum repeats each matching 2^n n! times
                let multiplier = F::from_i64((1i64 << n) * factorial(n));
                Value::Scalar(acc.mul(&multiplier))
            }
            Kind::OmegaForm => {
                let n = side / 2;
                let multiplier = F::from_i64((1i64 << (n - 1)) * factorial(n - 1));
                let mut acc = Mat::zero(side);
                let matchings = perfect_matchings(pos.len());
                for i in 0..side {
                    for j in (i + 1)..side {
                        let unit: Mat<F> = skew_unit(side, i, j);
                        let mut coeff = F::zero();
                        for (pairs, sign) in &matchings {
                            let mut qargs: Vec<Mat<F>> = pairs
                                .iter()
                                .map(|&(a, b)| {
                                    args[pos[a] as usize].commutator(&args[pos[b] as usize])
                                })
                                .collect();
                            qargs.push(unit.clone());
                            let q = polarized_pfaffian(&qargs)
                                .expect("arity fixed by construction");
                            coeff = if *sign > 0 { coeff.add(&q) } else { coeff.sub(&q) };
                        }
                        acc = acc.add(&unit.scale(&coeff.mul(&multiplier)));
                    }
                }
                Value::Matrix(acc)
            }
            Kind::Scaled(c, g) => g.eval_rec(args, pos, local).scale(c),
            Kind::Sum(parts) => {
                let mut acc = Value::zero(self.codomain(), side);
                for p in parts {
                    acc = acc.add(&p.eval_rec(args, pos, local));
                }
                acc
            }
        }
    }
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// Perfect matchings of `{0..m}` as canonically ordered pairs with the sign
/// of the permutation `(a_1, b_1, a_2, b_2, ...)`.
fn perfect_matchings(m: usize) -> Vec<(Vec<(usize, usize)>, i64)> {
    assert!(m % 2 == 0);
    let mut out = Vec::new();
    let mut free: Vec<usize> = (0..m).collect();
    let mut current = Vec::new();
    matchings_rec(&mut free, &mut current, &mut out);
    out
}

fn matchings_rec(
    free: &mut Vec<usize>,
    current: &mut Vec<(usize, usize)>,
    out: &mut Vec<(Vec<(usize, usize)>, i64)>,
) {
    if free.is_empty() {
        let flat: Vec<usize> = current.iter().flat_map(|&(a, b)| [a, b]).collect();
        out.push((current.clone(), permutation_sign(&flat)));
        return;
    }
    let a = free.remove(0);
    for t in 0..free.len() {
        let b = free.remove(t);
        current.push((a, b));
        matchings_rec(free, current, out);
        current.pop();
        free.insert(t, b);
    }
    free.insert(0, a);
}

fn permutation_sign(p: &[usize]) -> i64 {
    let mut sign = 1i64;
    for i in 0..p.len() {
        for j in (i + 1)..p.len() {
            if p[i] > p[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// The standard polynomial `Σ_σ sign(σ) x_{σ(1)} ⋯ x_{σ(h)}` on arbitrary
/// square matrices, by the first-factor expansion over subsets.
pub fn standard_poly<F: Field>(mats: &[Mat<F>]) -> Mat<F> {
    let side = mats[0].side();
    let h = mats.len();
    let mut table: HashMap<u32, Mat<F>> = HashMap::new();
    for i in 0..h {
        table.insert(1 << i, mats[i].clone());
    }
    for size in 2..=h {
        let masks: Vec<u32> = (0..(1u32 << h)).filter(|m| m.count_ones() as usize == size).collect();
        for mask in masks {
            let mut acc = Mat::zero(side);
            let mut j = 0usize;
            let mut bits = mask;
            while bits != 0 {
                let p = bits.trailing_zeros();
                bits &= !(1 << p);
                let sub = &table[&(mask & !(1 << p))];
                let term = mats[p as usize].matmul(sub);
                acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
                j += 1;
            }
            table.insert(mask, acc);
        }
    }
    table.remove(&((1u32 << h) - 1)).unwrap()
}

/// Equality decision mode.
#[derive(Clone, Copy, Debug)]
pub enum EqMode {
    /// Evaluate on every increasing tuple of symmetric basis indices.
    Exhaustive { force: bool },
    /// Seeded random symmetric-matrix probes.
    Randomized { seed: u64, trials: usize },
}

impl EqMode {
    pub fn describe(&self) -> String {
        match self {
            EqMode::Exhaustive { .. } => "exhaustive".to_string(),
            EqMode::Randomized { seed, trials } => format!("randomized(seed={seed},trials={trials})"),
        }
    }
}

/// Outcome of an equality or vanishing check.
#[derive(Clone, Debug, Serialize)]
pub enum EqOutcome {
    Equal,
    Counterexample { tuple: String },
}

impl EqOutcome {
    pub fn is_equal(&self) -> bool {
        matches!(self, EqOutcome::Equal)
    }
}

const EXHAUSTIVE_LIMIT: u128 = 1_000_000;

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

/// All increasing `k`-tuples over the symmetric basis of a side-`n2` space.
pub fn basis_tuples(n2: usize, k: usize) -> Vec<Vec<u8>> {
    let dim = n2 * (n2 + 1) / 2;
    (0..dim as u8).combinations(k).collect()
}

/// Number of increasing `k`-tuples over the symmetric basis.
pub fn basis_tuple_count(n2: usize, k: usize) -> u128 {
    binomial(n2 * (n2 + 1) / 2, k)
}

fn tuple_label(n2: usize, idx: &[u8]) -> String {
    let labels = sym_basis_labels(n2);
    idx.iter().map(|&i| labels[i as usize].clone()).join(", ")
}

/// Decides whether two alternating maps agree: exhaustively on basis tuples
/// (alternating multilinear maps are determined there) or on seeded random
/// symmetric probes. Exact in both modes.
pub fn alt_map_equal<F: Field>(
    f: &AltMap<F>,
    g: &AltMap<F>,
    mode: EqMode,
) -> Result<EqOutcome> {
    if f.degree() != g.degree() || f.side() != g.side() || f.codomain() != g.codomain() {
        return Err(Error::DimensionMismatch("comparing maps of different shapes".into()));
    }
    let n2 = f.side();
    match mode {
        EqMode::Exhaustive { force } => {
            let dim = n2 * (n2 + 1) / 2;
            let cells: u128 = match f.codomain() {
                Codomain::Scalar => 1,
                Codomain::Matrix => (n2 * n2) as u128,
            };
            let evals = binomial(dim, f.degree()) * cells;
            if evals > EXHAUSTIVE_LIMIT && !force {
                return Err(Error::Infeasible { evals, limit: EXHAUSTIVE_LIMIT });
            }
            let basis: Vec<Mat<F>> = sym_basis(n2);
            let tuples = basis_tuples(n2, f.degree());
            let bad = exec::find_first_map(&tuples, |idx| {
                let fv = f.eval_on_basis(&basis, idx);
                let gv = g.eval_on_basis(&basis, idx);
                if fv == gv {
                    None
                } else {
                    Some(idx.clone())
                }
            });
            Ok(match bad {
                None => EqOutcome::Equal,
                Some(idx) => EqOutcome::Counterexample { tuple: tuple_label(n2, &idx) },
            })
        }
        EqMode::Randomized { seed, trials } => {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            for t in 0..trials {
                let args: Vec<Mat<F>> =
                    (0..f.degree()).map(|_| random_symmetric(n2, &mut rng, 3)).collect();
                if f.eval(&args)? != g.eval(&args)? {
                    return Ok(EqOutcome::Counterexample {
                        tuple: format!("random symmetric tuple #{t} (seed {seed})"),
                    });
                }
            }
            Ok(EqOutcome::Equal)
        }
    }
}

/// Decides whether a map vanishes identically, in the same modes.
pub fn alt_map_is_zero<F: Field>(f: &AltMap<F>, mode: EqMode) -> Result<EqOutcome> {
    let zero = Value::zero(f.codomain(), f.side());
    let n2 = f.side();
    match mode {
        EqMode::Exhaustive { force } => {
            let dim = n2 * (n2 + 1) / 2;
            let cells: u128 = match f.codomain() {
                Codomain::Scalar => 1,
                Codomain::Matrix => (n2 * n2) as u128,
            };
            let evals = binomial(dim, f.degree()) * cells;
            if evals > EXHAUSTIVE_LIMIT && !force {
                return Err(Error::Infeasible { evals, limit: EXHAUSTIVE_LIMIT });
            }
            let basis: Vec<Mat<F>> = sym_basis(n2);
            let tuples = basis_tuples(n2, f.degree());
            let bad = exec::find_first_map(&tuples, |idx| {
                if f.eval_on_basis(&basis, idx) == zero {
                    None
                } else {
                    Some(idx.clone())
                }
            });
            Ok(match bad {
                None => EqOutcome::Equal,
                Some(idx) => EqOutcome::Counterexample { tuple: tuple_label(n2, &idx) },
            })
        }
        EqMode::Randomized { seed, trials } => {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            for t in 0..trials {
                let args: Vec<Mat<F>> =
                    (0..f.degree()).map(|_| random_symmetric(n2, &mut rng, 3)).collect();
                if f.eval(&args)? != zero {
                    return Ok(EqOutcome::Counterexample {
                        tuple: format!("random symmetric tuple #{t} (seed {seed})"),
                    });
                }
            }
            Ok(EqOutcome::Equal)
        }
    }
}

/// Basis of traceless symmetric matrices: consecutive diagonal differences
/// `E_ii - E_{i+1,i+1}` followed by the off-diagonal units.
pub fn traceless_sym_basis<F: Field>(side: usize) -> Vec<Mat<F>> {
    let mut out: Vec<Mat<F>> = Vec::new();
    for i in 0..side - 1 {
        let mut m = Mat::zero(side);
        m.set(i, i, F::one());
        m.set(i + 1, i + 1, F::from_i64(-1));
        out.push(m);
    }
    for i in 0..side {
        for j in (i + 1)..side {
            out.push(sym_unit(side, i, j));
        }
    }
    out
}

/// Decides `f = c·g` restricted to traceless symmetric arguments, evaluating
/// both maps on every increasing tuple over the traceless basis. The memo
/// contract does not apply off the canonical basis, so evaluation is direct.
pub fn equal_up_to_scalar_on_traceless<F: Field>(
    f: &AltMap<F>,
    g: &AltMap<F>,
    c: &F,
) -> Result<EqOutcome> {
    if f.degree() != g.degree() || f.side() != g.side() || f.codomain() != g.codomain() {
        return Err(Error::DimensionMismatch("comparing maps of different shapes".into()));
    }
    let n2 = f.side();
    let basis: Vec<Mat<F>> = traceless_sym_basis(n2);
    let dim = basis.len();
    let cells: u128 = match f.codomain() {
        Codomain::Scalar => 1,
        Codomain::Matrix => (n2 * n2) as u128,
    };
    let evals = binomial(dim, f.degree()) * cells;
    if evals > EXHAUSTIVE_LIMIT {
        return Err(Error::Infeasible { evals, limit: EXHAUSTIVE_LIMIT });
    }
    let tuples: Vec<Vec<u8>> = (0..dim as u8).combinations(f.degree()).collect();
    let bad = exec::find_first_map(&tuples, |idx| {
        let args: Vec<Mat<F>> = idx.iter().map(|&i| basis[i as usize].clone()).collect();
        let fv = f.eval(&args).expect("degree checked");
        let gv = g.eval(&args).expect("degree checked").scale(c);
        if fv == gv {
            None
        } else {
            Some(idx.clone())
        }
    });
    Ok(match bad {
        None => EqOutcome::Equal,
        Some(idx) => EqOutcome::Counterexample {
            tuple: idx.iter().map(|i| format!("N{i}")).join(", "),
        },
    })
}

/// First traceless tuple and coordinate where `g` does not vanish.
pub fn first_nonzero_on_traceless<F: Field>(g: &AltMap<F>) -> Option<(Vec<Mat<F>>, usize, F)> {
    let basis: Vec<Mat<F>> = traceless_sym_basis(g.side());
    for idx in (0..basis.len() as u8).combinations(g.degree()) {
        let args: Vec<Mat<F>> = idx.iter().map(|&i| basis[i as usize].clone()).collect();
        let flat = g.eval(&args).expect("degree checked").flatten();
        if let Some(pos) = flat.iter().position(|x| !x.is_zero()) {
            let v = flat[pos].clone();
            return Some((args, pos, v));
        }
    }
    None
}

/// Spot-checks antisymmetry: swapping two random slots negates the value.
pub fn check_antisymmetry<F: Field>(f: &AltMap<F>, seed: u64, trials: usize) -> bool {
    if f.degree() < 2 {
        return true;
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    use rand::Rng;
    for _ in 0..trials {
        let mut args: Vec<Mat<F>> =
            (0..f.degree()).map(|_| random_symmetric(f.side(), &mut rng, 3)).collect();
        let v = f.eval(&args).unwrap();
        let i = rng.gen_range(0..f.degree());
        let mut j = rng.gen_range(0..f.degree());
        while j == i {
            j = rng.gen_range(0..f.degree());
        }
        args.swap(i, j);
        let w = f.eval(&args).unwrap();
        if w != v.neg() {
            return false;
        }
    }
    true
}

/// Spot-checks linearity in one random slot.
pub fn check_multilinearity<F: Field>(f: &AltMap<F>, seed: u64, trials: usize) -> bool {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    use rand::Rng;
    for _ in 0..trials {
        let slot = rng.gen_range(0..f.degree());
        let mut args: Vec<Mat<F>> =
            (0..f.degree()).map(|_| random_symmetric(f.side(), &mut rng, 3)).collect();
        let x = random_symmetric(f.side(), &mut rng, 3);
        let y = random_symmetric(f.side(), &mut rng, 3);
        let a = F::from_i64(rng.gen_range(-3i64..=3));
        let b = F::from_i64(rng.gen_range(-3i64..=3));
        args[slot] = x.scale(&a).add(&y.scale(&b));
        let combined = f.eval(&args).unwrap();
        args[slot] = x;
        let vx = f.eval(&args).unwrap();
        args[slot] = y;
        let vy = f.eval(&args).unwrap();
        if combined != vx.scale(&a).add(&vy.scale(&b)) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{ratio, Rat};
    use crate::mat::random_matrix;

    #[test]
    fn x_wedge_x_is_the_commutator() {
        let x: AltMap<Rat> = AltMap::inclusion(4);
        let xx = x.wedge(&x).unwrap();
        assert_eq!(xx.degree(), 2);
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        let a = random_symmetric(4, &mut rng, 3);
        let b = random_symmetric(4, &mut rng, 3);
        let v = xx.eval(&[a.clone(), b.clone()]).unwrap();
        assert_eq!(v.as_matrix(), &a.commutator(&b));
    }

    #[test]
    fn powers_equal_standard_polynomials() {
        let mut rng = ChaCha20Rng::seed_from_u64(2);
        for h in 1..=4usize {
            let p: AltMap<Rat> = AltMap::power(4, h);
            let args: Vec<Mat<Rat>> = (0..h).map(|_| random_symmetric(4, &mut rng, 2)).collect();
            assert_eq!(p.eval(&args).unwrap().as_matrix(), &standard_poly(&args));
        }
    }

    #[test]
    fn wedge_of_powers_is_power_of_sum() {
        // St_a ∧ St_b = St_{a+b}, exhaustively for a+b <= 4 on side 4
        for (a, b) in [(1usize, 1usize), (1, 2), (2, 2), (1, 3)] {
            let sa: AltMap<Rat> = AltMap::power(4, a);
            let sb: AltMap<Rat> = AltMap::power(4, b);
            let w = sa.wedge(&sb).unwrap();
            let direct: AltMap<Rat> = AltMap::power(4, a + b);
            let out = alt_map_equal(&w, &direct, EqMode::Exhaustive { force: false }).unwrap();
            assert!(out.is_equal(), "St_{a} ∧ St_{b} != St_{}", a + b);
        }
    }

    #[test]
    fn trace_of_inclusion_is_t0() {
        let t0: AltMap<Rat> = AltMap::covariant_t(2, 0);
        assert_eq!(t0.degree(), 1);
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        let a = random_symmetric(4, &mut rng, 3);
        let v = t0.eval(&[a.clone()]).unwrap();
        assert_eq!(v.as_scalar(), &a.trace());
        // vanishes on traceless input
        let b: Mat<Rat> = crate::mat::sym_unit(4, 0, 1);
        assert!(b.trace().is_zero());
        assert!(t0.eval(&[b]).unwrap().as_scalar().is_zero());
    }

    #[test]
    fn omega_values_are_skew() {
        let omega: AltMap<Rat> = AltMap::covariant_omega(2);
        assert_eq!(omega.degree(), 2);
        let mut rng = ChaCha20Rng::seed_from_u64(4);
        for _ in 0..5 {
            let a = random_symmetric(4, &mut rng, 3);
            let b = random_symmetric(4, &mut rng, 3);
            let v = omega.eval(&[a, b]).unwrap();
            assert!(v.as_matrix().is_skew());
        }
    }

    #[test]
    fn differential_shifts_degree_and_stays_skew() {
        let omega: AltMap<Rat> = AltMap::covariant_omega(2);
        let domega = omega.differential().unwrap();
        assert_eq!(domega.degree(), 3);
        let mut rng = ChaCha20Rng::seed_from_u64(5);
        let args: Vec<Mat<Rat>> = (0..3).map(|_| random_symmetric(4, &mut rng, 3)).collect();
        let v = domega.eval(&args).unwrap();
        assert!(v.as_matrix().is_skew());
    }

    #[test]
    fn q_vanishes_on_identity_argument() {
        let q: AltMap<Rat> = AltMap::covariant_q(2);
        let mut rng = ChaCha20Rng::seed_from_u64(6);
        let mut args: Vec<Mat<Rat>> =
            (0..4).map(|_| random_symmetric(4, &mut rng, 3)).collect();
        args[2] = Mat::identity(4).scale(&ratio(3, 1));
        assert!(q.eval(&args).unwrap().as_scalar().is_zero());
    }

    #[test]
    fn q_matches_full_symmetric_group_sum() {
        // the matching-collapsed sum equals the naive S_{2n} antisymmetrization
        let q: AltMap<Rat> = AltMap::covariant_q(2);
        let mut rng = ChaCha20Rng::seed_from_u64(7);
        let args: Vec<Mat<Rat>> = (0..4).map(|_| random_symmetric(4, &mut rng, 2)).collect();
        let fast = q.eval(&args).unwrap();
        let mut naive = Rat::from_integer(0.into());
        let perms: Vec<Vec<usize>> = (0..4usize).permutations(4).collect();
        for p in perms {
            let c1 = args[p[0]].commutator(&args[p[1]]);
            let c2 = args[p[2]].commutator(&args[p[3]]);
            let term = polarized_pfaffian(&[c1, c2]).unwrap();
            let sign = permutation_sign(&p);
            naive = if sign > 0 {
                crate::field::Field::add(&naive, &term)
            } else {
                crate::field::Field::sub(&naive, &term)
            };
        }
        assert_eq!(fast.as_scalar(), &naive);
    }

    #[test]
    fn maps_are_antisymmetric_and_multilinear() {
        let q: AltMap<Rat> = AltMap::covariant_q(2);
        let omega: AltMap<Rat> = AltMap::covariant_omega(2);
        let domega = omega.differential().unwrap();
        let st3: AltMap<Rat> = AltMap::power(4, 3);
        for (name, m) in [("q", &q), ("omega", &omega), ("domega", &domega), ("st3", &st3)] {
            assert!(check_antisymmetry(m, 50, 12), "{name} not antisymmetric");
            assert!(check_multilinearity(m, 51, 12), "{name} not multilinear");
        }
    }

    #[test]
    fn wedge_graded_commutativity_for_scalars() {
        // G∧H = (-1)^{deg G · deg H} H∧G on scalar-valued maps
        let t0: AltMap<Rat> = AltMap::covariant_t(2, 0);
        let t1: AltMap<Rat> = AltMap::covariant_t(2, 1);
        let q: AltMap<Rat> = AltMap::covariant_q(2);
        let mut rng = ChaCha20Rng::seed_from_u64(8);
        for (g, h) in [(&t0, &t1), (&t0, &q), (&t1, &q)] {
            let gh = g.wedge(h).unwrap();
            let hg = h.wedge(g).unwrap();
            let sign = if (g.degree() * h.degree()) % 2 == 0 {
                ratio(1, 1)
            } else {
                ratio(-1, 1)
            };
            for _ in 0..3 {
                let args: Vec<Mat<Rat>> = (0..gh.degree())
                    .map(|_| random_symmetric(4, &mut rng, 2))
                    .collect();
                let lhs = gh.eval(&args).unwrap();
                let rhs = hg.eval(&args).unwrap().scale(&sign);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn wedge_is_associative_on_probes() {
        let t0: AltMap<Rat> = AltMap::covariant_t(2, 0);
        let x2: AltMap<Rat> = AltMap::power(4, 2);
        let q: AltMap<Rat> = AltMap::covariant_q(2);
        let left = t0.wedge(&x2).unwrap().wedge(&q).unwrap();
        let right = t0.wedge(&x2.wedge(&q).unwrap()).unwrap();
        let out = alt_map_equal(
            &left,
            &right,
            EqMode::Randomized { seed: 9, trials: 6 },
        )
        .unwrap();
        assert!(out.is_equal());
    }

    #[test]
    fn equality_finds_counterexamples() {
        let x2: AltMap<Rat> = AltMap::power(4, 2);
        let zero = x2.scaled(ratio(0, 1));
        match alt_map_equal(&x2, &zero, EqMode::Exhaustive { force: false }).unwrap() {
            EqOutcome::Counterexample { tuple } => {
                assert!(!tuple.is_empty());
            }
            EqOutcome::Equal => panic!("St_2 is not zero"),
        }
    }

    #[test]
    fn infeasible_exhaustive_is_refused() {
        let st: AltMap<Rat> = AltMap::power(8, 9);
        let err = alt_map_is_zero(&st, EqMode::Exhaustive { force: false });
        assert!(matches!(err, Err(Error::Infeasible { .. })));
    }

    #[test]
    fn standard_poly_on_general_matrices() {
        // St_2(A,B) = AB - BA on arbitrary matrices
        let mut rng = ChaCha20Rng::seed_from_u64(10);
        let a: Mat<Rat> = random_matrix(3, &mut rng, 4);
        let b: Mat<Rat> = random_matrix(3, &mut rng, 4);
        assert_eq!(standard_poly(&[a.clone(), b.clone()]), a.commutator(&b));
    }

    #[test]
    fn matching_signs() {
        let ms = perfect_matchings(4);
        assert_eq!(ms.len(), 3);
        // {(0,1),(2,3)} has sign +, {(0,2),(1,3)} sign -, {(0,3),(1,2)} sign +
        for (pairs, sign) in ms {
            let flat: Vec<usize> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
            assert_eq!(sign, permutation_sign(&flat));
        }
        assert_eq!(perfect_matchings(6).len(), 15);
    }
}
