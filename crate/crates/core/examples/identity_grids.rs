//! Multi-parameter identities certified on grids larger than their degree bounds.

use qcong::arith::rat;
use qcong::qhyper::{
    identity_check, lemma21_check, lemma21_sides, thm_c_check, GridPlan, Identity,
};

fn main() -> qcong::Result<()> {
    let (l, r) = lemma21_sides(1, rat(2), rat(3))?;
    println!("lemma, m = 1, (a, b) = (2, 3): {l}  |  {r}");

    let plan = GridPlan::certified();
    for m in [2, 4] {
        let v = lemma21_check(m, plan)?;
        println!("lemma m = {m}: {}", v.detail);
    }
    for which in Identity::ALL {
        let v = identity_check(which, 3, plan)?;
        println!("{} m = 3: {}", which.name(), v.detail);
    }
    let v = thm_c_check(5, 1, plan, false)?;
    println!("two-parameter congruence, t = 1, n = 5: {}", v.detail);
    Ok(())
}
