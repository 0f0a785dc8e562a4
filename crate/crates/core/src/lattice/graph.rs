//! Transfer matrices of the three invariant graphs carried by the real maps
//! with invariant cubics, and the closed-form check of their characteristic
//! polynomials.
//!
//! Edges are named by their endpoint blowup indices, with a disambiguating
//! crossing letter or intermediate index where needed ("2a3", "170",
//! "0(10)3"); indices of ten or more are parenthesized.  Each edge maps
//! forward to an integer combination of edges, and the transfer matrix
//! records m_{i,j} = 1 when the i-th basis edge maps across the j-th.

use crate::error::{Error, Result};
use crate::exactpoly::{chi, poly_gcd, salem_poly, IntPoly};
use crate::lattice::IntMatrix;
use crate::mp::MpReal;
use crate::numroots::{isolate_roots, salem_root};
use num_bigint::BigInt;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::collections::HashMap;

/// Ordered edge basis and rewrite rules of one invariant graph.
pub struct GraphSpec {
    labels: Vec<String>,
    /// rules[i] = indices of the basis edges covered by the image of edge i.
    rules: Vec<Vec<usize>>,
}

impl GraphSpec {
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn rule(&self, i: usize) -> &[usize] {
        &self.rules[i]
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn transfer_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zero(self.dim()).expect("nonempty basis");
        for (i, targets) in self.rules.iter().enumerate() {
            for &j in targets {
                m.set(i, j, BigInt::from(1));
            }
        }
        m
    }
}

struct Builder {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    rules: Vec<Option<Vec<String>>>,
}

impl Builder {
    fn new() -> Self {
        Builder { labels: Vec::new(), index: HashMap::new(), rules: Vec::new() }
    }

    fn label(&mut self, s: String) {
        let prev = self.index.insert(s.clone(), self.labels.len());
        assert!(prev.is_none(), "duplicate basis label {s}");
        self.labels.push(s);
        self.rules.push(None);
    }

    fn rule(&mut self, from: String, to: Vec<String>) {
        let i = *self.index.get(&from).unwrap_or_else(|| panic!("rule from unknown edge {from}"));
        assert!(self.rules[i].is_none(), "duplicate rule for edge {from}");
        self.rules[i] = Some(to);
    }

    fn finish(self) -> GraphSpec {
        let rules = self
            .rules
            .iter()
            .zip(&self.labels)
            .map(|(r, from)| {
                let targets = r.as_ref().unwrap_or_else(|| panic!("no rule for edge {from}"));
                targets
                    .iter()
                    .map(|t| {
                        *self
                            .index
                            .get(t)
                            .unwrap_or_else(|| panic!("rule {from} targets unknown edge {t}"))
                    })
                    .collect()
            })
            .collect();
        GraphSpec { labels: self.labels, rules }
    }
}

/// A blowup index as it appears inside an edge name.
fn ix(v: u32) -> String {
    if v < 10 {
        v.to_string()
    } else {
        format!("({v})")
    }
}

fn edge3(a: u32, mid: u32, b: u32) -> String {
    format!("{}{}{}", ix(a), ix(mid), ix(b))
}

/// First family, n >= 8: basis of n+9 edges
/// {12, 23, 34, 04, 15, 26, 03, 14, 25, 05, 16, 02, 13, 24, 06, 170, ..., 1n0}.
fn family1(n: u32) -> GraphSpec {
    let mut g = Builder::new();
    for name in
        ["12", "23", "34", "04", "15", "26", "03", "14", "25", "05", "16", "02", "13", "24", "06"]
    {
        g.label(name.into());
    }
    for k in 7..=n {
        g.label(edge3(1, k, 0));
    }
    let mut img02 = vec!["16".to_string()];
    img02.extend((7..n).map(|k| edge3(1, k, 0)));
    g.rule("02".into(), img02);
    g.rule("03".into(), vec!["24".into(), "25".into(), "26".into()]);
    g.rule("04".into(), vec!["34".into()]);
    g.rule("05".into(), vec!["24".into(), "34".into()]);
    g.rule("06".into(), vec!["25".into()]);
    g.rule("12".into(), vec![edge3(1, n, 0)]);
    g.rule("13".into(), vec!["02".into()]);
    g.rule("14".into(), vec!["03".into()]);
    g.rule("15".into(), vec!["04".into()]);
    g.rule("16".into(), vec!["05".into()]);
    g.rule(edge3(1, 7, 0), vec!["06".into()]);
    for k in 8..=n {
        g.rule(edge3(1, k, 0), vec![edge3(1, k - 1, 0)]);
    }
    g.rule("23".into(), vec!["12".into()]);
    g.rule("24".into(), vec!["13".into()]);
    g.rule("25".into(), vec!["14".into()]);
    g.rule("26".into(), vec!["15".into()]);
    g.rule("34".into(), vec!["23".into()]);
    g.finish()
}

/// Second family, n = 2k >= 8: basis of n+7 edges
/// {12, 2a3, 34, 45, 1g2, 2e3, 3c4, 04, 01, 03, 14, 25, 061, 072, ..., 0(2k)1}.
fn family2(n: u32) -> GraphSpec {
    let k = n / 2;
    let mut g = Builder::new();
    for name in ["12", "2a3", "34", "45", "1g2", "2e3", "3c4", "04", "01", "03", "14", "25"] {
        g.label(name.into());
    }
    for m in 6..=n {
        // arcs to even indices return to "1", to odd indices return to "2"
        g.label(edge3(0, m, if m % 2 == 0 { 1 } else { 2 }));
    }
    g.rule("12".into(), vec![edge3(0, 2 * k, 1)]);
    g.rule("2a3".into(), vec!["12".into()]);
    g.rule("34".into(), vec!["2a3".into()]);
    g.rule("45".into(), vec!["34".into()]);
    g.rule("1g2".into(), vec!["01".into()]);
    g.rule("2e3".into(), vec!["1g2".into()]);
    g.rule("3c4".into(), vec!["2e3".into()]);
    g.rule("04".into(), vec!["3c4".into()]);
    let mut img01 = vec!["04".to_string()];
    img01.extend((3..k).map(|j| edge3(0, 2 * j, 1)));
    g.rule("01".into(), img01);
    let mut img03 = vec!["25".to_string()];
    img03.extend((3..k).map(|j| edge3(0, 2 * j + 1, 2)));
    g.rule("03".into(), img03);
    g.rule("14".into(), vec!["03".into()]);
    g.rule("25".into(), vec!["14".into()]);
    g.rule(edge3(0, 6, 1), vec!["25".into(), "45".into()]);
    for j in 4..=k {
        g.rule(edge3(0, 2 * j, 1), vec![edge3(0, 2 * j - 1, 2)]);
    }
    for j in 3..k {
        g.rule(edge3(0, 2 * j + 1, 2), vec![edge3(0, 2 * j, 1)]);
    }
    g.finish()
}

/// Third family, n = 3k >= 9: basis of n+5 edges
/// {23, 3a4, 051, 13, 01, 12, 2d3, 3c4, 02, 0b4, 162, 073, 081, ..., 1(3k)2}.
fn family3(n: u32) -> GraphSpec {
    let k = n / 3;
    let mut g = Builder::new();
    for name in ["23", "3a4", "051", "13", "01", "12", "2d3", "3c4", "02", "0b4"] {
        g.label(name.into());
    }
    for j in 2..k {
        g.label(edge3(1, 3 * j, 2));
        g.label(edge3(0, 3 * j + 1, 3));
        g.label(edge3(0, 3 * j + 2, 1));
    }
    g.label(edge3(1, 3 * k, 2));
    g.rule("23".into(), vec![edge3(1, 3 * k, 2)]);
    g.rule("3a4".into(), vec!["23".into()]);
    g.rule("051".into(), vec!["0b4".into(), "3c4".into(), "3a4".into()]);
    g.rule("13".into(), vec!["02".into()]);
    g.rule("01".into(), vec!["0b4".into()]);
    g.rule("12".into(), vec!["01".into()]);
    g.rule("2d3".into(), vec!["12".into()]);
    g.rule("3c4".into(), vec!["2d3".into()]);
    let mut img02 = vec!["13".to_string()];
    img02.extend((2..k).map(|j| edge3(1, 3 * j, 2)));
    g.rule("02".into(), img02);
    let mut img0b4 = vec!["3c4".to_string()];
    img0b4.extend((2..k).map(|j| edge3(0, 3 * j + 1, 3)));
    g.rule("0b4".into(), img0b4);
    // 1(3j)2 -> 0(3j-1)1; the j = 2 target is the head edge 051
    g.rule(edge3(1, 6, 2), vec!["051".into()]);
    for j in 3..=k {
        g.rule(edge3(1, 3 * j, 2), vec![edge3(0, 3 * j - 1, 1)]);
    }
    for j in 2..k {
        g.rule(edge3(0, 3 * j + 1, 3), vec![edge3(1, 3 * j, 2)]);
    }
    for j in 3..=k {
        g.rule(edge3(0, 3 * j - 1, 1), vec![edge3(0, 3 * j - 2, 3)]);
    }
    g.finish()
}

pub fn graph_spec(family: u8, n: u32) -> Result<GraphSpec> {
    match family {
        1 if n >= 8 => Ok(family1(n)),
        2 if n >= 8 && n % 2 == 0 => Ok(family2(n)),
        3 if n >= 9 && n % 3 == 0 => Ok(family3(n)),
        1 => Err(Error::Domain(format!("family 1 needs n >= 8, got {n}"))),
        2 => Err(Error::Domain(format!("family 2 needs even n >= 8, got {n}"))),
        3 => Err(Error::Domain(format!("family 3 needs n >= 9 divisible by 3, got {n}"))),
        _ => Err(Error::Domain(format!("family must be 1, 2, or 3, got {family}"))),
    }
}

/// 0/1 transfer matrix of the rewrite rules in the fixed basis order.
pub fn graph_matrix(family: u8, n: u32) -> Result<IntMatrix> {
    Ok(graph_spec(family, n)?.transfer_matrix())
}

/// One closed-form candidate for a graph characteristic polynomial.
#[derive(Clone, Debug, Serialize)]
pub struct FormulaCheck {
    pub formula: String,
    pub matches: bool,
}

/// Comparison of a graph transfer matrix against the closed forms: per
/// formula an equality boolean (up to overall sign), divisibility of the
/// characteristic polynomial by the degree-n irreducible factor, and the
/// spectral radius against its root.
pub struct ThmC1Report {
    pub family: u8,
    pub n: u32,
    pub dim: usize,
    pub char_poly: IntPoly,
    pub formulas: Vec<FormulaCheck>,
    pub divisible_by_salem_factor: bool,
    pub spectral_radius: MpReal,
    pub salem_root_value: MpReal,
}

impl ThmC1Report {
    pub fn spectral_radius_error(&self) -> MpReal {
        self.spectral_radius.sub(&self.salem_root_value).abs()
    }

    /// The formulas that matched the computed polynomial, by display string.
    pub fn matching_formulas(&self) -> Vec<&str> {
        self.formulas.iter().filter(|f| f.matches).map(|f| f.formula.as_str()).collect()
    }
}

impl Serialize for ThmC1Report {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let digits = ((self.spectral_radius.prec() as f64) * 0.30103).ceil() as usize;
        let mut s = serializer.serialize_struct("ThmC1Report", 8)?;
        s.serialize_field("family", &self.family)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("dim", &self.dim)?;
        s.serialize_field("char_poly", &self.char_poly)?;
        s.serialize_field("formulas", &self.formulas)?;
        s.serialize_field("divisible_by_salem_factor", &self.divisible_by_salem_factor)?;
        s.serialize_field("spectral_radius", &self.spectral_radius.to_decimal(digits))?;
        s.serialize_field("salem_root", &self.salem_root_value.to_decimal(digits))?;
        s.end()
    }
}

fn monic_normalized(p: &IntPoly) -> IntPoly {
    match p.degree() {
        Some(_) if p.leading() < &BigInt::from(0) => p.neg(),
        _ => p.clone(),
    }
}

/// (x^e + s) * chi_n(x) / d, when the division is exact.
fn closed_form(e: usize, s: i64, n: u32, d: &IntPoly) -> Option<IntPoly> {
    let lead = IntPoly::monomial(e).add(&IntPoly::constant(BigInt::from(s)));
    lead.mul(&chi(n)).div_exact(d)
}

pub fn verify_thm_c1(family: u8, n: u32, bits: u32) -> Result<ThmC1Report> {
    let m = graph_matrix(family, n)?;
    let p = m.char_poly();
    let pm = monic_normalized(&p);
    let x2m1 = IntPoly::from_i64(&[-1, 0, 1]);
    let x3m1 = IntPoly::from_i64(&[-1, 0, 0, 1]);
    let candidates: Vec<(String, Option<IntPoly>)> = match family {
        1 => vec![
            (format!("(x^7+1)*chi_{n}(x)/(x^2-1)"), closed_form(7, 1, n, &x2m1)),
            (format!("(x^7-1)*chi_{n}(x)/(x^2-1)"), closed_form(7, -1, n, &x2m1)),
        ],
        2 => vec![(format!("(x^5-1)*chi_{n}(x)/(x^2-1)"), closed_form(5, -1, n, &x2m1))],
        _ => vec![(format!("(x^4-1)*chi_{n}(x)/(x^3-1)"), closed_form(4, -1, n, &x3m1))],
    };
    let formulas = candidates
        .into_iter()
        .map(|(formula, rhs)| FormulaCheck {
            matches: rhs.map(|q| monic_normalized(&q) == pm).unwrap_or(false),
            formula,
        })
        .collect();

    let psi = salem_poly(n)?;
    let divisible = psi.divides(&p);

    let squarefree = p
        .div_exact(&poly_gcd(&p, &p.derivative()))
        .expect("gcd with the derivative divides exactly");
    let roots = isolate_roots(&squarefree, bits)?;
    let spectral_radius = roots
        .iter()
        .map(|r| r.approx.abs())
        .max_by(|a, b| a.cmp(b))
        .expect("characteristic polynomial has roots");
    let salem_root_value = salem_root(n, bits)?.approx.re;

    Ok(ThmC1Report {
        family,
        n,
        dim: m.dim(),
        char_poly: p,
        formulas,
        divisible_by_salem_factor: divisible,
        spectral_radius,
        salem_root_value,
    })
}
