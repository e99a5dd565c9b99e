//! The Airy model Riemann–Hilbert solution: unimodularity, jumps on the four
//! rays and the large-z asymptotics.

use hardsoft::kernels::{airy_parametrix, asymptotic_residual, fit_slope, jump_residual, sector_of, RAYS};
use hardsoft::specfun::{cmat_det, BigComplex, EvalContext};

fn main() -> hardsoft::Result<()> {
    let ctx = EvalContext::new(192)?;
    let p = ctx.precision_bits;
    let z = BigComplex::from_f64(p, -1.0, 0.4);
    let phi = airy_parametrix(&z, None, &ctx)?;
    println!("sector of {z}: {:?}", sector_of(&z, None)?);
    println!("det Phi({z}) = {}", cmat_det(&phi));

    for (j, k) in RAYS.iter().enumerate() {
        let worst = [0.3, 1.0, 2.5, 6.0].iter().map(|&r| jump_residual(j + 1, r, &ctx)).collect::<hardsoft::Result<Vec<_>>>()?;
        println!("ray {} (arg {}π/4): max jump residual {:e}", j + 1, k, worst.into_iter().fold(0.0, f64::max));
    }

    let rs = [10.0f64, 20.0, 40.0];
    for arg in [0.5f64, 2.0, -2.5] {
        let res = rs
            .iter()
            .map(|r| asymptotic_residual(&BigComplex::from_f64(p, r * arg.cos(), r * arg.sin()), 2, &ctx))
            .collect::<hardsoft::Result<Vec<f64>>>()?;
        let slope = fit_slope(&rs.map(f64::ln), &res.iter().map(|v| v.ln()).collect::<Vec<_>>());
        let res: Vec<String> = res.iter().map(|v| format!("{v:.3e}")).collect();
        println!("arg {arg:>4}: residuals [{}], decay |z|^{slope:.2}", res.join(", "));
    }
    Ok(())
}
