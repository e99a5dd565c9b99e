//! The exact building blocks of the steepest-descent analysis near z = 1: the
//! local jump J_1, the first correction R_1, the E prefactor and the sandwich
//! coefficients e_1, e_2.

use hardsoft::algebra::{AlgNum, BivarPoly, Mat2Series};
use hardsoft::engine::{e_factor_series, j_matrix_series, r_outer_inner, sandwich_series};

fn show(name: &str, m: &Mat2Series<AlgNum>) {
    for (i, row) in m.e.iter().enumerate() {
        for (k, s) in row.iter().enumerate() {
            let terms: Vec<String> = s.terms().map(|(p, c)| format!("{} (z-1)^{p}", c.compact())).collect();
            if !terms.is_empty() {
                println!("  {name}[{}{}] = {}", i + 1, k + 1, terms.join(" + "));
            }
        }
    }
}

fn poly(p: &BivarPoly<AlgNum>) -> String {
    let terms: Vec<String> = p
        .iter()
        .map(|(&(dx, dy), c)| {
            let mono = match (dx, dy) {
                (0, 0) => String::new(),
                (1, 0) => "x".into(),
                (0, 1) => "y".into(),
                _ => format!("x^{dx} y^{dy}"),
            };
            if mono.is_empty() { c.compact() } else { format!("({}){mono}", c.compact()) }
        })
        .collect();
    if terms.is_empty() { "0".into() } else { terms.join(" + ") }
}

fn main() -> hardsoft::Result<()> {
    println!("J_1 (Laurent series in z-1):");
    show("J1", &j_matrix_series(1, 1)?);
    println!("J_2 (diagonal):");
    show("J2", &j_matrix_series(2, 0)?);

    let rs = r_outer_inner(2, 2)?;
    println!("R_1 outside the disc:");
    show("R1", &rs[0].outer);
    println!("R_2 outside the disc:");
    show("R2", &rs[1].outer);

    let e = e_factor_series(3)?;
    println!("E inner factor: diag({}, {})", e.inner.e[0][0], e.inner.e[1][1]);

    let s = sandwich_series(2)?;
    for (j, ej) in s.e.iter().enumerate() {
        println!("e_{} = [[{}, {}], [{}, {}]]", j + 1, poly(&ej[0][0]), poly(&ej[0][1]), poly(&ej[1][0]), poly(&ej[1][1]));
    }
    Ok(())
}
