//! Scratch diagnostics (not part of the deliverable test suite).

use socov::altmap::{alt_map_is_zero, AltMap, EqMode};
use socov::field::{rat_string, Rat};
use socov::identities::decompose_in_invariant_basis;

fn main() {
    let n = 2usize;
    let side = 2 * n;
    let omega: AltMap<Rat> = AltMap::covariant_omega(n);
    let domega = omega.differential().unwrap();
    let x2: AltMap<Rat> = AltMap::power(side, 2);

    let f = domega.wedge(&x2).unwrap().trace().unwrap();
    let dec = decompose_in_invariant_basis(&f, n).unwrap();
    println!("Tr(dΩ∧X²) decomposition: consistent={}, unique={}", dec.consistent, dec.unique);
    for (l, c) in dec.basis.iter().zip(dec.coefficients.iter()) {
        println!("  coeff[{l}] = {c}");
    }

    // full antisymmetry / equivariance sanity for domega
    println!(
        "dΩ antisym: {}",
        socov::altmap::check_antisymmetry(&domega, 1, 10)
    );

    // compare d(Ω) against the opposite action sign X·Y = XY - YXᵗ? Build manually.
    // Also check Tr(Ω∧X³):
    let x3: AltMap<Rat> = AltMap::power(side, 3);
    let g = omega.wedge(&x3).unwrap().trace().unwrap();
    let dec3 = decompose_in_invariant_basis(&g, n).unwrap();
    println!("Tr(Ω∧X³) decomposition: consistent={}", dec3.consistent);
    for (l, c) in dec3.basis.iter().zip(dec3.coefficients.iter()) {
        println!("  coeff[{l}] = {c}");
    }

    // decompose Tr(X^5) sanity
    let t1: AltMap<Rat> = AltMap::covariant_t(n, 1);
    let dec_t1 = decompose_in_invariant_basis(&t1, n).unwrap();
    for (l, c) in dec_t1.basis.iter().zip(dec_t1.coefficients.iter()) {
        println!("  T1: coeff[{l}] = {c}");
    }

    // Q∧Q truly zero?
    let q: AltMap<Rat> = AltMap::covariant_q(n);
    let qq = q.wedge(&q).unwrap();
    println!(
        "Q∧Q zero: {:?}",
        alt_map_is_zero(&qq, EqMode::Exhaustive { force: false }).unwrap()
    );

    // expand X^6 and X^7 over the module monomials of matching degree
    for deg in [6usize, 7] {
        let f: AltMap<Rat> = AltMap::power(side, deg);
        let cands = socov::identities::module_monomials(n, deg);
        let labels: Vec<String> = cands.iter().map(|(l, _)| l.clone()).collect();
        let tuples = socov::altmap::basis_tuples(side, deg);
        let basis = socov::mat::sym_basis::<Rat>(side);
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for idx in &tuples {
            let cvals: Vec<Vec<Rat>> =
                cands.iter().map(|(_, c)| c.eval_on_basis(&basis, idx).flatten()).collect();
            let fv = f.eval_on_basis(&basis, idx).flatten();
            for cell in 0..fv.len() {
                rows.push(cvals.iter().map(|cv| cv[cell].clone()).collect::<Vec<_>>());
                rhs.push(fv[cell].clone());
            }
        }
        match socov::linalg::solve(&rows, &rhs) {
            socov::linalg::SolveOutcome::Unique(x) => {
                println!("X^{deg} expansion (unique):");
                for (l, c) in labels.iter().zip(x.iter()) {
                    println!("  coeff[{l}] = {}", rat_string(c));
                }
            }
            other => println!("X^{deg} expansion: {other:?}"),
        }
    }
}
