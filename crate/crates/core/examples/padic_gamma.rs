//! Morita's p-adic Gamma function and supercongruences modulo p^3.

use qcong::arith::ratio;
use qcong::padic::{
    check_cor, check_liu, check_long, check_prop, morita_gamma, residue_of_rational, PadicContext,
    Which,
};

fn main() -> qcong::Result<()> {
    let ctx = PadicContext::new(5)?;
    let x = ratio(2, 3);
    println!("2/3 mod 125 = {}", residue_of_rational(&x, &ctx)?);
    println!("Gamma_5(2/3) = {}", morita_gamma(&x, &ctx)?);

    for p in [5, 7, 11, 13, 31, 37] {
        let ctx = PadicContext::new(p)?;
        let which = if p % 6 == 1 { Which::A } else { Which::B };
        println!("p = {p}");
        println!("  {}", check_long(&ctx)?.detail);
        println!("  {}", check_liu(&ctx)?.detail);
        println!("  {}", check_cor(which, &ctx)?.detail);
        println!("  {}", check_prop(which, &ctx)?.detail);
    }
    Ok(())
}
