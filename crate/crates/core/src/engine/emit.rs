use rug::Integer;
use serde::{Deserialize, Serialize};

use super::KernelExpansion;
use crate::algebra::{BigRational, BivarPoly};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Latex,
}

#[derive(Serialize, Deserialize)]
struct ExpansionDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    config: Option<serde_json::Value>,
    order: usize,
    terms: Vec<TermDoc>,
}

#[derive(Serialize, Deserialize)]
struct TermDoc {
    j: usize,
    kappa: u8,
    lambda: u8,
    poly: Vec<MonoDoc>,
}

/// Numerators and denominators are decimal strings so that sizes are unbounded.
#[derive(Serialize, Deserialize)]
struct MonoDoc {
    dx: u32,
    dy: u32,
    num: String,
    den: String,
}

impl KernelExpansion {
    pub fn to_json(&self, config: Option<&serde_json::Value>) -> String {
        let terms = self
            .terms
            .iter()
            .enumerate()
            .flat_map(|(i, four)| {
                four.iter().enumerate().map(move |(b, p)| TermDoc {
                    j: i + 1,
                    kappa: (b / 2) as u8,
                    lambda: (b % 2) as u8,
                    poly: p
                        .graded_terms()
                        .into_iter()
                        .map(|((dx, dy), c)| MonoDoc { dx, dy, num: c.numer().to_string(), den: c.denom().to_string() })
                        .collect(),
                })
            })
            .collect();
        let doc = ExpansionDoc { config: config.cloned(), order: self.order, terms };
        serde_json::to_string_pretty(&doc).expect("plain data serialises")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: ExpansionDoc = serde_json::from_str(s)?;
        let mut terms = vec![std::array::from_fn(|_| BivarPoly::from_terms([])); doc.order];
        for t in doc.terms {
            if t.j == 0 || t.j > doc.order || t.kappa > 1 || t.lambda > 1 {
                return Err(Error::Parse(format!("term index out of range: j={} {}{}", t.j, t.kappa, t.lambda)));
            }
            let mut monos = Vec::with_capacity(t.poly.len());
            for m in t.poly {
                let num: Integer = m.num.parse().map_err(|_| Error::Parse(format!("bad numerator {}", m.num)))?;
                let den: Integer = m.den.parse().map_err(|_| Error::Parse(format!("bad denominator {}", m.den)))?;
                if den == 0 {
                    return Err(Error::Parse("zero denominator".into()));
                }
                monos.push(((m.dx, m.dy), BigRational::from((num, den))));
            }
            let slot: &mut [BivarPoly<BigRational>; 4] = &mut terms[t.j - 1];
            slot[2 * t.kappa as usize + t.lambda as usize] = BivarPoly::from_terms(monos);
        }
        Ok(KernelExpansion { order: doc.order, terms })
    }

    pub fn to_latex(&self, config: Option<&serde_json::Value>) -> String {
        let mut out = String::new();
        if let Some(c) = config {
            out.push_str(&format!("% config: {c}\n"));
        }
        out.push_str("\\begin{align*}\n");
        out.push_str("K^{\\mathrm{Ai}}(x,y) &= \\frac{\\mathrm{Ai}(x)\\mathrm{Ai}'(y)-\\mathrm{Ai}'(x)\\mathrm{Ai}(y)}{x-y}");
        for (i, four) in self.terms.iter().enumerate() {
            out.push_str(",\\\\\n");
            out.push_str(&kernel_latex(i + 1, four));
        }
        out.push_str(".\n\\end{align*}\n");
        out
    }
}

const BASIS: [&str; 4] = [
    "\\mathrm{Ai}(x)\\mathrm{Ai}(y)",
    "\\mathrm{Ai}(x)\\mathrm{Ai}'(y)",
    "\\mathrm{Ai}'(x)\\mathrm{Ai}(y)",
    "\\mathrm{Ai}'(x)\\mathrm{Ai}'(y)",
];

fn kernel_latex(j: usize, four: &[BivarPoly<BigRational>; 4]) -> String {
    let mut den = Integer::from(1);
    for p in four {
        for (_, c) in p.iter() {
            den.lcm_mut(c.denom());
        }
    }
    let scale = BigRational::from(den.clone());
    let mut lines = Vec::new();
    for (b, p) in four.iter().enumerate() {
        if p.len() == 0 {
            continue;
        }
        let ints: Vec<((u32, u32), Integer)> = p
            .graded_terms()
            .into_iter()
            .map(|(k, c)| (k, BigRational::from(&c * &scale).numer().clone()))
            .collect();
        let body = if ints.len() == 1 {
            let ((dx, dy), c) = &ints[0];
            format!("{}{}", signed_coeff(c, *dx + *dy == 0), monomial(*dx, *dy))
        } else {
            let mut g = Integer::new();
            for (_, c) in &ints {
                g.gcd_mut(c);
            }
            if ints[0].1 < 0 {
                g = -g;
            }
            if g == 1 {
                format!("({})", poly_latex(&ints))
            } else {
                let reduced: Vec<_> = ints.iter().map(|(k, c)| (*k, Integer::from(c / &g))).collect();
                format!("{}({})", signed_coeff(&g, false), poly_latex(&reduced))
            }
        };
        let body = if lines.is_empty() { body.trim_start_matches('+').to_string() } else { with_sign(body) };
        lines.push(format!("{body}{}", BASIS[b]));
    }
    format!("K_{{{j}}}(x,y) &= \\frac{{1}}{{{den}}}\\left({}\\right)", lines.join("\\\\\n&\\qquad "))
}

fn with_sign(s: String) -> String {
    if s.starts_with('-') || s.starts_with('+') {
        s
    } else {
        format!("+{s}")
    }
}

fn signed_coeff(c: &Integer, constant: bool) -> String {
    if !constant && *c == 1 {
        "+".into()
    } else if !constant && *c == -1 {
        "-".into()
    } else if *c < 0 {
        c.to_string()
    } else {
        format!("+{c}")
    }
}

fn monomial(dx: u32, dy: u32) -> String {
    let part = |v: &str, d: u32| match d {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{d}"),
    };
    format!("{}{}", part("x", dx), part("y", dy))
}

fn poly_latex(terms: &[((u32, u32), Integer)]) -> String {
    let s: String = terms.iter().map(|((dx, dy), c)| format!("{}{}", signed_coeff(c, dx + dy == 0), monomial(*dx, *dy))).collect();
    s.trim_start_matches('+').to_string()
}

/// Render a derived table as JSON or LaTeX.
pub fn emit_expansion(k: &KernelExpansion, format: Format) -> String {
    match format {
        Format::Json => k.to_json(None),
        Format::Latex => k.to_latex(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;

    fn k1() -> KernelExpansion {
        let c = |v: BigRational| BivarPoly::from_terms([((0, 0), v)]);
        let p00 = BivarPoly::from_terms([((2, 0), q(-3, 10)), ((1, 1), q(-3, 10)), ((0, 2), q(-3, 10))]);
        let p11 = BivarPoly::from_terms([((1, 0), q(3, 10)), ((0, 1), q(3, 10))]);
        KernelExpansion { order: 1, terms: vec![[p00, c(q(1, 5)), c(q(1, 5)), p11]] }
    }

    #[test]
    fn json_round_trip() {
        let k = k1();
        assert_eq!(KernelExpansion::from_json(&emit_expansion(&k, Format::Json)).unwrap(), k);
    }

    #[test]
    fn latex_layout() {
        let s = emit_expansion(&k1(), Format::Latex);
        assert!(s.contains("x^2+xy+y^2"), "{s}");
        assert!(s.contains("\\frac{1}{10}"));
        assert!(s.contains("-3(x^2+xy+y^2)\\mathrm{Ai}(x)\\mathrm{Ai}(y)"));
        assert!(s.contains("+3(x+y)\\mathrm{Ai}'(x)\\mathrm{Ai}'(y)"));
    }

    #[test]
    fn empty_expansion_has_only_airy_header() {
        let s = emit_expansion(&KernelExpansion { order: 0, terms: vec![] }, Format::Latex);
        assert!(s.contains("K^{\\mathrm{Ai}}"));
        assert!(!s.contains("K_{1}"));
    }
}
