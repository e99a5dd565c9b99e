//! Decay rates of the truncated kernel expansion over a grid, as CSV.

use hardsoft::engine::assemble_kernel_expansion;
use hardsoft::kernels::{residual_scan, Grid};
use hardsoft::specfun::EvalContext;

fn main() -> hardsoft::Result<()> {
    let ctx = EvalContext::new(256)?;
    let k = assemble_kernel_expansion(3)?;
    let grid = Grid::square(-2.0, 6.0, 9);
    let scan = residual_scan(&[50.0, 100.0, 200.0, 400.0], &grid, 3, &k, &ctx)?;
    println!("nu,h,m,max_residual");
    for r in &scan.rows {
        println!("{},{:e},{},{:e}", r.nu, r.h, r.m, r.max_residual);
    }
    for (m, s) in &scan.slopes {
        println!("# m = {m}: slope {s:.3} (expected {})", m + 1);
    }
    Ok(())
}
