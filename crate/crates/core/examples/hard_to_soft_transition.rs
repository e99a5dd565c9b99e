//! The hard-edge gap probability E₂^hard(φ_ν(t); ν) approaching F(t) at rate h_ν.

use hardsoft::fredholm::{e2_hard, phi, transition_study};

fn main() -> hardsoft::Result<()> {
    for s in [1.0, 4.0, 9.0] {
        println!("E2_hard({s}; 1) = {:.12}", e2_hard(s, 1.0)?.value);
    }
    for t in [-2.0, 0.0, 2.0] {
        let r = transition_study(t, &[25.0, 50.0, 100.0, 200.0, 400.0])?;
        println!("t = {t}: F(t) = {:.12}", r.f);
        for i in 0..r.nus.len() {
            println!("  nu {:>4}  s = {:>10.3}  E2 {:.12}  |diff| {:.3e}", r.nus[i], phi(t, r.nus[i]), r.e2[i], r.errors[i]);
        }
        println!("  slope in h: {:.3}", r.slope.unwrap());
    }
    Ok(())
}
