//! The two q-supercongruences modulo Phi_n(q)^3, and the n = 1 exception.

use qcong::arith::rat;
use qcong::cyclotomic::congruent_mod_cyclotomic;
use qcong::qhyper::{thm_a_sides, thm_b_sides};

fn main() -> qcong::Result<()> {
    for n in [7, 13, 19] {
        let (l, r) = thm_a_sides(n, false)?;
        println!(
            "n = {n:2} (1 mod 6): {}",
            congruent_mod_cyclotomic(&l, &r, n, 3)?.detail
        );
    }
    for n in [5, 11, 17] {
        let (l, r) = thm_b_sides(n)?;
        println!(
            "n = {n:2} (5 mod 6): {}",
            congruent_mod_cyclotomic(&l, &r, n, 3)?.detail
        );
    }

    let (l, r) = thm_a_sides(1, true)?;
    println!(
        "n = 1: lhs(1) = {}, rhs(1) = {}",
        l.eval(&rat(1))?,
        r.eval(&rat(1))?
    );
    Ok(())
}
