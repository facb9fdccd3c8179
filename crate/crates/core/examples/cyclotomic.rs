//! Cyclotomic polynomials and a congruence modulo a power of one.

use qcong::cyclotomic::{congruent_mod_cyclotomic, cyclotomic, euler_phi};
use qcong::{LaurentPoly, RationalFunc};

fn main() -> qcong::Result<()> {
    for n in [1, 6, 12, 15] {
        println!("Phi_{n}(q) = {}  (degree {})", cyclotomic(n), euler_phi(n));
    }

    // [7]^3 = ((1 - q^7)/(1 - q))^3 vanishes to order 3 at primitive 7th roots of unity.
    let q7 = LaurentPoly::from_i64s(0, &[1, 1, 1, 1, 1, 1, 1]);
    let cube = RationalFunc::from_poly(q7.pow(3));
    for e in 1..=4 {
        let v = congruent_mod_cyclotomic(&cube, &RationalFunc::zero(), 7, e)?;
        println!("[7]^3 = 0 mod Phi_7^{e}: {:?}", v.status);
    }
    Ok(())
}
