//! The Tracy–Widom distribution F(t) as a Nyström Fredholm determinant.

use hardsoft::fredholm::{tracy_widom_F, tracy_widom_F_with};

fn main() -> hardsoft::Result<()> {
    println!("{:>5} {:>18} {:>10}", "t", "F(t)", "est.err");
    for i in -8..=4 {
        let t = i as f64;
        let r = tracy_widom_F(t)?;
        println!("{t:>5} {:>18.15} {:>10.1e}", r.value, r.est_error);
    }
    let base = tracy_widom_F(0.0)?;
    let wide = tracy_widom_F_with(0.0, 120, Some(60.0))?;
    println!("F(0) with 40 nodes on (0, 25): {:.15}", base.value);
    println!("F(0) with 120 nodes on (0, 60): {:.15}", wide.value);
    Ok(())
}
