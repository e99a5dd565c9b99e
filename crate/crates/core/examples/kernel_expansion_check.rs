//! Compare the rescaled Bessel kernel with the Airy kernel plus the derived
//! corrections at a single point, for growing ν.

use hardsoft::engine::assemble_kernel_expansion;
use hardsoft::kernels::{airy_kernel, kernel_correction_eval, transformed_kernel, ScalingParams};
use hardsoft::specfun::EvalContext;
use rug::Float;

fn main() -> hardsoft::Result<()> {
    let ctx = EvalContext::new(256)?;
    let p = ctx.precision_bits;
    let k = assemble_kernel_expansion(3)?;
    let (x, y) = (Float::with_val(p, 0.5), Float::with_val(p, -1.3));
    let kai = airy_kernel(&x, &y, &ctx)?;
    println!("K^Ai(0.5, -1.3) = {:.20}", kai);
    println!("{:>6} {:>12} {:>12} {:>12} {:>12} {:>12}", "nu", "h", "m=0", "m=1", "m=2", "m=3");
    for nu in [50.0, 100.0, 200.0, 400.0, 800.0] {
        let params = ScalingParams::new(nu, &ctx)?;
        let mut r = Float::with_val(p, transformed_kernel(&x, &y, &params, &ctx)? - &kai);
        let mut row = vec![r.to_f64().abs()];
        let mut hj = params.h.clone();
        for j in 1..=3 {
            r -= kernel_correction_eval(&k, j, &x, &y, &ctx)? * &hj;
            hj *= &params.h;
            row.push(r.to_f64().abs());
        }
        println!("{nu:>6} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.4e}", params.h.to_f64(), row[0], row[1], row[2], row[3]);
    }
    Ok(())
}
