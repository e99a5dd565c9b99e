//! Derive the correction kernels K_1..K_m exactly and print them as LaTeX and
//! JSON.
//!
//! ```text
//! cargo run --release --example derive_kernel_expansion -- 3
//! ```

use hardsoft::engine::{assemble_kernel_expansion, emit_expansion, Format};

fn main() -> hardsoft::Result<()> {
    let order: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(2);
    let start = std::time::Instant::now();
    let k = assemble_kernel_expansion(order)?;
    k.check_invariants()?;
    eprintln!("derived K_1..K_{order} in {:.2?}", start.elapsed());

    println!("{}", emit_expansion(&k, Format::Latex));
    for (j, degs) in k.degrees().iter().enumerate() {
        println!("K_{}: total degrees of p_00, p_01, p_10, p_11 = {degs:?}", j + 1);
    }
    let json = emit_expansion(&k, Format::Json);
    println!("JSON document: {} bytes", json.len());
    Ok(())
}
