//! Exact truncated power series over Q: rational powers, composition and
//! Laurent principal parts.

use hardsoft::algebra::{q, Coeff, TruncSeries, Var};

fn main() -> hardsoft::Result<()> {
    // r(s) = 1 - 2/5 s + 43/175 s^2 + O(s^3)
    let r = TruncSeries::new(Var::S, 0, vec![q(1, 1), q(-2, 5), q(43, 175)], 3);
    println!("r          = {r}");
    println!("r^(1/4)    = {}", r.pow_rational(&q(1, 4))?);
    println!("r^(-1/4)   = {}", r.pow_rational(&q(-1, 4))?);

    let one_plus = TruncSeries::exact(Var::S, 0, vec![q(1, 1), q(1, 1)]);
    let inv = one_plus.truncate(6).pow_rational(&q(-1, 1))?;
    println!("1/(1+s)    = {inv}");

    let laurent = inv.shift(-2);
    println!("s^-2/(1+s) = {laurent}");
    println!("  principal part {}", laurent.principal_part());
    println!("  analytic part  {}", laurent.analytic_part());

    let sub = TruncSeries::new(Var::S, 1, vec![q(1, 1), q(1, 2)], 6);
    let composed = inv.compose(&sub, |c| c.clone(), None)?;
    println!("1/(1+s+s^2/2) = {composed}");
    assert!(composed.coeff(0).unwrap().is_one());
    Ok(())
}
