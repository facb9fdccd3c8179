//! q-Pochhammer symbols and terminating basic hypergeometric sums.

use qcong::arith::ratio;
use qcong::qhyper::{q_integer, q_pochhammer, truncated_phi, QPochSpec, SeriesSpec};
use qcong::RationalFunc;

fn main() -> qcong::Result<()> {
    println!("[5] = {}", q_integer(5));

    let p = q_pochhammer(&QPochSpec {
        x: RationalFunc::q(),
        step: 3,
        count: 3,
    });
    println!("(q; q^3)_3 = {p}");

    // A terminating 3phi2 in base q^3: the upper parameter q^-6 stops it after two terms.
    let s = SeriesSpec {
        upper: vec![
            RationalFunc::q_pow(-6),
            RationalFunc::q_pow(-1),
            RationalFunc::constant(ratio(1, 2)),
        ],
        lower: vec![RationalFunc::q_pow(3), RationalFunc::q_pow(5)],
        step: 3,
        argument: RationalFunc::q_pow(9),
        truncation: 10,
    };
    let sum = truncated_phi(&s)?;
    println!("3phi2 = {sum}");
    println!("at q = 2: {}", sum.eval(&ratio(2, 1))?);
    Ok(())
}
