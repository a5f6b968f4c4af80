//! JSON, LaTeX and plain-text renderings of relation sets, `R`/`C`,
//! pairing tables, the formal `L` pattern and verification reports.
//!
//! JSON objects use sorted keys, so a document depends only on its
//! contents. The encoding is described in `docs/json-schema.md`.

use std::fmt::Write as _;

use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::coeffring::{DualElement, JSignature, Mask, Qi2, Rational, ScalarExpr, MAX_GENERATORS};
use crate::freealg::{GenSymbol, NCPoly};
use crate::matrix::Matrix;
use crate::qdual::{LPatternEntry, PairingTable};
use crate::qgroup::{GeneratingMatrix, RelationSet, Report, Source};
use crate::rmatrix::QTensor;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Latex,
    Text,
}

impl std::str::FromStr for Format {
    type Err = crate::Error;
    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "latex" | "tex" => Ok(Format::Latex),
            "text" | "txt" => Ok(Format::Text),
            other => Err(crate::Error::Parse(format!("unknown format '{other}'"))),
        }
    }
}

/// Always `p/q`, with the sign on `p`.
pub fn rational_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn iota_indices(mask: Mask) -> Vec<usize> {
    (0..MAX_GENERATORS).filter(|k| mask >> k & 1 == 1).map(|k| k + 1).collect()
}

pub fn qi2_json(c: &Qi2) -> Value {
    let mut m = Map::new();
    for (key, part) in [("re", c.re()), ("im", c.im()), ("re_sqrt2", c.re_sqrt2()), ("im_sqrt2", c.im_sqrt2())] {
        if !part.is_zero() {
            m.insert(key.into(), Value::String(rational_string(part)));
        }
    }
    Value::Object(m)
}

pub fn scalar_json(x: &ScalarExpr) -> Value {
    Value::Array(
        x.terms()
            .iter()
            .map(|(m, c)| json!({ "q2": m.s, "v": m.v, "c": qi2_json(c) }))
            .collect(),
    )
}

pub fn dual_json(x: &DualElement) -> Value {
    Value::Array(
        x.terms()
            .iter()
            .map(|(m, s)| json!({ "iota": iota_indices(*m), "scalar": scalar_json(s) }))
            .collect(),
    )
}

fn symbol_json(t: &GeneratingMatrix, s: &GenSymbol) -> Value {
    json!({
        "row": s.row(),
        "col": s.col(),
        "iota": iota_indices(s.tag),
        "name": t.symbol_name(s, false),
    })
}

pub fn poly_json(t: &GeneratingMatrix, p: &NCPoly) -> Value {
    Value::Array(
        p.terms()
            .iter()
            .map(|(w, c)| {
                let word: Vec<Value> = w.symbols().iter().map(|s| symbol_json(t, s)).collect();
                json!({ "word": word, "coeff": dual_json(c) })
            })
            .collect(),
    )
}

fn source_name(s: Source) -> &'static str {
    match s {
        Source::Rtt => "rtt",
        Source::Orth => "orth",
        Source::OrthInverse => "orth_inverse",
    }
}

fn header(kind: &str, j: &JSignature) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("kind".into(), json!(kind));
    m.insert("n".into(), json!(j.dim()));
    m.insert("signature".into(), json!(j.to_string()));
    let slots: Vec<String> = j.to_string().split(',').filter(|x| !x.is_empty()).map(str::to_owned).collect();
    m.insert("j".into(), json!(slots));
    m
}

fn pretty(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("JSON values always serialize");
    s.push('\n');
    s
}

pub fn relations(t: &GeneratingMatrix, rel: &RelationSet, j: &JSignature, fmt: Format) -> String {
    match fmt {
        Format::Json => {
            let mut m = header("relations", j);
            let list: Vec<Value> = rel
                .relations
                .iter()
                .map(|r| {
                    json!({
                        "source": source_name(r.source),
                        "label": r.label,
                        "text": t.render(&r.poly, false),
                        "terms": poly_json(t, &r.poly),
                    })
                })
                .collect();
            let symbols: Vec<Value> = t.symbols().iter().map(|s| symbol_json(t, s)).collect();
            m.insert("symbols".into(), Value::Array(symbols));
            m.insert("count".into(), json!(list.len()));
            m.insert("relations".into(), Value::Array(list));
            pretty(Value::Object(m))
        }
        Format::Latex => {
            let mut s = format!("% relations, N = {}, j = ({j})\n\\begin{{align*}}\n", j.dim());
            for r in &rel.relations {
                let _ = writeln!(s, "  &{} = 0 && \\text{{{}}} \\\\", t.render(&r.poly, true), latex_text(&r.label));
            }
            s.push_str("\\end{align*}\n");
            s
        }
        Format::Text => {
            let mut s = format!("# relations N={} j={j} count={}\n", j.dim(), rel.len());
            for r in &rel.relations {
                let _ = writeln!(s, "[{}] {}: {} = 0", source_name(r.source), r.label, t.render(&r.poly, false));
            }
            s
        }
    }
}

fn latex_text(s: &str) -> String {
    s.replace('^', "\\^{}")
}

fn tensor_entries(r: &QTensor) -> Vec<((usize, usize), (usize, usize), DualElement)> {
    let dim = r.dim;
    r.matrix
        .entries()
        .filter(|e| !e.2.is_zero())
        .map(|(a, b, x)| ((a / dim + 1, a % dim + 1), (b / dim + 1, b % dim + 1), x.clone()))
        .collect()
}

fn matrix_entries(c: &Matrix) -> Vec<(usize, usize, DualElement)> {
    c.entries().filter(|e| !e.2.is_zero()).map(|(i, j, x)| (i + 1, j + 1, x.clone())).collect()
}

/// `R(j)`, `R^{(+)}`, `R^{(-)}` and `C(j)`.
pub fn rmatrix(j: &JSignature, tensors: &[(&str, &QTensor)], c: &Matrix, fmt: Format) -> String {
    match fmt {
        Format::Json => {
            let mut m = header("rmatrix", j);
            for (name, r) in tensors {
                let list: Vec<Value> = tensor_entries(r)
                    .into_iter()
                    .map(|((i, k), (jj, l), x)| json!({ "row": [i, k], "col": [jj, l], "value": dual_json(&x) }))
                    .collect();
                m.insert((*name).into(), Value::Array(list));
            }
            let list: Vec<Value> = matrix_entries(c)
                .into_iter()
                .map(|(i, jj, x)| json!({ "row": i, "col": jj, "value": dual_json(&x) }))
                .collect();
            m.insert("C".into(), Value::Array(list));
            pretty(Value::Object(m))
        }
        Format::Latex => {
            let mut s = format!("% N = {}, j = ({j})\n", j.dim());
            for (name, r) in tensors {
                let _ = writeln!(s, "% {name}: nonzero entries R_{{(i,k),(j,l)}}\n\\begin{{align*}}");
                for ((i, k), (jj, l), x) in tensor_entries(r) {
                    let _ = writeln!(s, "  {}_{{({i},{k}),({jj},{l})}} &= {} \\\\", latex_name(name), x.to_latex());
                }
                s.push_str("\\end{align*}\n");
            }
            s.push_str("\\begin{align*}\n");
            for (i, jj, x) in matrix_entries(c) {
                let _ = writeln!(s, "  C_{{{i}{jj}}} &= {} \\\\", x.to_latex());
            }
            s.push_str("\\end{align*}\n");
            s
        }
        Format::Text => {
            let mut s = format!("# N={} j={j}\n", j.dim());
            for (name, r) in tensors {
                let _ = writeln!(s, "## {name}");
                for ((i, k), (jj, l), x) in tensor_entries(r) {
                    let _ = writeln!(s, "({i},{k}),({jj},{l}) = {x}");
                }
            }
            s.push_str("## C\n");
            for (i, jj, x) in matrix_entries(c) {
                let _ = writeln!(s, "({i},{jj}) = {x}");
            }
            s
        }
    }
}

fn latex_name(name: &str) -> String {
    match name {
        "R_plus" => "R^{(+)}".into(),
        "R_minus" => "R^{(-)}".into(),
        other => other.into(),
    }
}

pub fn report_json(rep: &Report) -> Value {
    json!({ "verdict": rep.verdict.label(), "checked": rep.checked, "details": rep.details })
}

/// Reports are given in the order they should be listed.
pub fn reports(kind: &str, j: &JSignature, items: &[(String, Report)], fmt: Format) -> String {
    match fmt {
        Format::Json => {
            let mut m = header(kind, j);
            let mut rm = Map::new();
            for (name, rep) in items {
                rm.insert(name.clone(), report_json(rep));
            }
            m.insert("reports".into(), Value::Object(rm));
            m.insert("verdict".into(), json!(overall(items).label()));
            pretty(Value::Object(m))
        }
        Format::Latex => {
            let mut s = format!(
                "% {kind}, N = {}, j = ({j})\n\\begin{{tabular}}{{lrl}}\nsuite & checks & verdict \\\\\n\\hline\n",
                j.dim()
            );
            for (name, rep) in items {
                let _ = writeln!(s, "{name} & {} & {} \\\\", rep.checked, rep.verdict.label());
            }
            s.push_str("\\end{tabular}\n");
            s
        }
        Format::Text => report_table(kind, j, items),
    }
}

fn report_table(kind: &str, j: &JSignature, items: &[(String, Report)]) -> String {
    let mut s = format!("# {kind} N={} j={j}\n", j.dim());
    let _ = writeln!(s, "{:<12} {:>8}  verdict", "suite", "checks");
    for (name, rep) in items {
        let _ = writeln!(s, "{name:<12} {:>8}  {}", rep.checked, rep.verdict.label());
        for d in rep.details.iter().take(20) {
            let _ = writeln!(s, "    {d}");
        }
        if rep.details.len() > 20 {
            let _ = writeln!(s, "    ... {} more", rep.details.len() - 20);
        }
    }
    let _ = writeln!(s, "overall: {}", overall(items).label());
    s
}

pub fn overall(items: &[(String, Report)]) -> crate::qgroup::Verdict {
    items.iter().fold(crate::qgroup::Verdict::Pass, |v, (_, r)| v.and(r.verdict))
}

fn monomial_text(m: &[(usize, usize)]) -> String {
    if m.is_empty() {
        return "1".into();
    }
    m.iter().map(|(k, l)| format!("T{k}{l}")).collect::<Vec<_>>().join("*")
}

fn monomial_latex(m: &[(usize, usize)]) -> String {
    if m.is_empty() {
        return "1".into();
    }
    m.iter().map(|(k, l)| format!("T_{{{k}{l}}}")).collect()
}

/// Pairing tables, the formal `L` pattern, and the reports of the duality
/// checks.
pub fn dual(
    j: &JSignature,
    tables: &[PairingTable],
    pattern: &[LPatternEntry],
    items: &[(String, Report)],
    fmt: Format,
) -> String {
    match fmt {
        Format::Json => {
            let mut m = header("dual", j);
            let tabs: Vec<Value> = tables
                .iter()
                .map(|t| {
                    let entries: Vec<Value> = t
                        .entries
                        .iter()
                        .map(|(mono, v)| {
                            let values: Vec<Value> = matrix_entries(v)
                                .into_iter()
                                .map(|(i, jj, x)| json!({ "row": i, "col": jj, "value": dual_json(&x) }))
                                .collect();
                            let mono: Vec<[usize; 2]> = mono.iter().map(|&(k, l)| [k, l]).collect();
                            json!({ "monomial": mono, "values": values })
                        })
                        .collect();
                    json!({ "sign": t.sign.symbol(), "degree": t.degree, "entries": entries })
                })
                .collect();
            m.insert("tables".into(), Value::Array(tabs));
            let pat: Vec<Value> = pattern
                .iter()
                .map(|e| {
                    json!({
                        "sign": e.sign.symbol(),
                        "row": e.row,
                        "col": e.col,
                        "t": e.t_latex,
                        "l": e.l_latex,
                        "pairing_defined": e.pairing_defined,
                    })
                })
                .collect();
            m.insert("l_pattern".into(), Value::Array(pat));
            let mut rm = Map::new();
            for (name, rep) in items {
                rm.insert(name.clone(), report_json(rep));
            }
            m.insert("reports".into(), Value::Object(rm));
            m.insert("verdict".into(), json!(overall(items).label()));
            pretty(Value::Object(m))
        }
        Format::Latex => {
            let mut s = format!("% pairing, N = {}, j = ({j})\n", j.dim());
            for t in tables {
                let _ = writeln!(s, "% L^{{({})}}, degree {}\n\\begin{{align*}}", t.sign.symbol(), t.degree);
                for (mono, v) in &t.entries {
                    for (i, jj, x) in matrix_entries(v) {
                        let _ = writeln!(
                            s,
                            "  \\langle l^{{({})}}_{{{i}{jj}}}, {} \\rangle &= {} \\\\",
                            t.sign.symbol(),
                            monomial_latex(mono),
                            x.to_latex()
                        );
                    }
                }
                s.push_str("\\end{align*}\n");
            }
            s.push_str("% formal pattern\n\\begin{align*}\n");
            for e in pattern {
                let mark = if e.pairing_defined { " && \\text{pairing-defined}" } else { "" };
                let _ = writeln!(
                    s,
                    "  (L^{{({})}}(j))_{{{}{}}} &= {}{mark} \\\\",
                    e.sign.symbol(),
                    e.row,
                    e.col,
                    e.l_latex
                );
            }
            s.push_str("\\end{align*}\n");
            s
        }
        Format::Text => {
            let mut s = String::new();
            for t in tables {
                let _ = writeln!(s, "## L{} degree {}", t.sign.symbol(), t.degree);
                for (mono, v) in &t.entries {
                    for (i, jj, x) in matrix_entries(v) {
                        let _ = writeln!(s, "<l{}{i}{jj}, {}> = {x}", t.sign.symbol(), monomial_text(mono));
                    }
                }
            }
            s.push_str("## formal pattern\n");
            for e in pattern {
                let mark = if e.pairing_defined { "  [pairing-defined]" } else { "" };
                let _ = writeln!(s, "L{}({},{}) = {}   (T: {}){mark}", e.sign.symbol(), e.row, e.col, e.l_latex, e.t_latex);
            }
            s.push_str(&report_table("dual", j, items));
            s
        }
    }
}
