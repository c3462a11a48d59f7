//! Line-oriented algebra and path files.
//!
//! ```text
//! # comment
//! dim 3
//! torus 1
//! weight 1 1
//! weight 2 1
//! weight 3 2
//! param t order 2 center 0
//! bracket 1 2 3 1
//! ```

use std::collections::BTreeSet;
use std::fmt::Write as _;

use lie_schemes::catalog::AnyLaw;
use lie_schemes::exactnum::{parse_rational, LocalRing, Rational, RingElement};
use lie_schemes::{LieLaw, WeightSystem};
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: parse error: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: consistency error: {message}")]
    Consistency { line: usize, message: String },
}

fn parse_err<T>(line: usize, message: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError::Parse { line, message: message.into() })
}

fn consistency<T>(line: usize, message: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError::Consistency { line, message: message.into() })
}

/// Optional parameter declaration: `param NAME [order S] [center p/q]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamDecl {
    pub name: String,
    pub order: Option<u32>,
    pub center: Rational,
}

impl ParamDecl {
    pub fn ring(&self) -> std::sync::Arc<LocalRing> {
        match self.order {
            Some(s) => LocalRing::truncated(&self.name, s, self.center.clone()),
            None => LocalRing::free(&self.name, self.center.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraFile {
    pub law: AnyLaw,
    pub weights: WeightSystem,
    pub param: Option<ParamDecl>,
}

/// Non-empty, comment-stripped lines with their 1-based numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("");
        let words: Vec<&str> = l.split_whitespace().collect();
        (!words.is_empty()).then_some((i + 1, words))
    })
}

fn nat(line: usize, w: &str, what: &str) -> Result<usize, FormatError> {
    w.parse().or_else(|_| parse_err(line, format!("expected {what}, found '{w}'")))
}

fn int(line: usize, w: &str) -> Result<i64, FormatError> {
    w.parse().or_else(|_| parse_err(line, format!("expected an integer, found '{w}'")))
}

fn set_once<T>(slot: &mut Option<(usize, T)>, line: usize, key: &str, v: T) -> Result<(), FormatError> {
    if slot.is_some() {
        return consistency(line, format!("duplicate '{key}' line"));
    }
    *slot = Some((line, v));
    Ok(())
}

struct RawBracket {
    line: usize,
    i: usize,
    j: usize,
    k: usize,
    coeff: String,
}

/// Parses an algebra file into a law, its weights and optional parameter.
pub fn parse_algebra(text: &str) -> Result<AlgebraFile, FormatError> {
    let mut dim: Option<(usize, usize)> = None;
    let mut torus: Option<(usize, usize)> = None;
    let mut param: Option<(usize, ParamDecl)> = None;
    let mut weights: Vec<(usize, usize, Vec<i64>)> = Vec::new();
    let mut brackets: Vec<RawBracket> = Vec::new();
    for (line, w) in lines(text) {
        match w[0] {
            "dim" => {
                if w.len() != 2 {
                    return parse_err(line, "usage: dim N");
                }
                set_once(&mut dim, line, "dim", nat(line, w[1], "a dimension")?)?;
            }
            "torus" => {
                if w.len() != 2 {
                    return parse_err(line, "usage: torus R");
                }
                set_once(&mut torus, line, "torus", nat(line, w[1], "a torus dimension")?)?;
            }
            "weight" => {
                if w.len() < 2 {
                    return parse_err(line, "usage: weight i c1 .. cR");
                }
                let i = nat(line, w[1], "an index")?;
                let cs = w[2..].iter().map(|x| int(line, x)).collect::<Result<Vec<_>, _>>()?;
                weights.push((line, i, cs));
            }
            "bracket" => {
                if w.len() < 5 {
                    return parse_err(line, "usage: bracket i j k p/q");
                }
                brackets.push(RawBracket {
                    line,
                    i: nat(line, w[1], "an index")?,
                    j: nat(line, w[2], "an index")?,
                    k: nat(line, w[3], "an index")?,
                    coeff: w[4..].join(" "),
                });
            }
            "param" => {
                if w.len() < 2 || w.len() % 2 != 0 {
                    return parse_err(line, "usage: param NAME [order S] [center p/q]");
                }
                let mut decl = ParamDecl { name: w[1].to_string(), order: None, center: Rational::zero() };
                for kv in w[2..].chunks(2) {
                    match kv[0] {
                        "order" => {
                            let s = nat(line, kv[1], "an order")?;
                            if s == 0 {
                                return consistency(line, "order must be positive");
                            }
                            decl.order = Some(s as u32);
                        }
                        "center" => {
                            decl.center =
                                parse_rational(kv[1]).or_else(|e| parse_err(line, e.to_string()))?;
                        }
                        other => return parse_err(line, format!("unknown param field '{other}'")),
                    }
                }
                set_once(&mut param, line, "param", decl)?;
            }
            other => return parse_err(line, format!("unknown key '{other}'")),
        }
    }
    let Some((_, n)) = dim else {
        return parse_err(0, "missing 'dim' line");
    };
    let (torus_line, r) = torus.unwrap_or((0, 0));
    let mut table: Vec<Option<Vec<i64>>> = vec![None; n];
    for (line, i, cs) in weights {
        if i == 0 || i > n {
            return consistency(line, format!("index {i} out of range 1..{n}"));
        }
        if cs.len() != r {
            return consistency(line, format!("expected {r} weight coordinates, found {}", cs.len()));
        }
        if table[i - 1].replace(cs).is_some() {
            return consistency(line, format!("duplicate weight for e{i}"));
        }
    }
    let rows: Vec<Vec<i64>> = if r == 0 {
        vec![Vec::new(); n]
    } else {
        let mut rows = Vec::with_capacity(n);
        for (i, w) in table.into_iter().enumerate() {
            match w {
                Some(w) => rows.push(w),
                None => return consistency(torus_line, format!("missing weight for e{}", i + 1)),
            }
        }
        rows
    };
    let ws = WeightSystem::new(r, rows);
    let decl = param.map(|(_, d)| d);
    let ring = decl.as_ref().map(ParamDecl::ring);
    let mut seen = BTreeSet::new();
    let mut entries: Vec<(usize, usize, usize, Option<RingElement>, Rational)> = Vec::new();
    for b in &brackets {
        for x in [b.i, b.j, b.k] {
            if x == 0 || x > n {
                return consistency(b.line, format!("index {x} out of range 1..{n}"));
            }
        }
        if b.i >= b.j {
            return consistency(b.line, format!("bracket needs i < j, found {} >= {}", b.i, b.j));
        }
        if !seen.insert((b.i, b.j, b.k)) {
            return consistency(b.line, format!("duplicate bracket {} {} {}", b.i, b.j, b.k));
        }
        if r > 0 && ws.sum(&[b.i, b.j]) != ws.weight(b.k) {
            return consistency(b.line, format!("[e{}, e{}] -> e{} violates the weights", b.i, b.j, b.k));
        }
        match &ring {
            Some(ring) => {
                let c = RingElement::parse(ring, &b.coeff).or_else(|e| parse_err(b.line, e.to_string()))?;
                entries.push((b.i, b.j, b.k, Some(c), Rational::zero()));
            }
            None => {
                let q = parse_rational(&b.coeff).or_else(|e| parse_err(b.line, e.to_string()))?;
                entries.push((b.i, b.j, b.k, None, q));
            }
        }
    }
    let law = match ring {
        Some(ring) => {
            let e = entries.into_iter().filter_map(|(i, j, k, c, _)| c.filter(|c| !c.numerator().is_zero()).map(|c| (i, j, k, c)));
            AnyLaw::Local(LieLaw::from_entries(n, ring, e).or_else(|e| consistency(0, e.to_string()))?)
        }
        None => {
            let e = entries.into_iter().filter(|e| !e.4.is_zero()).map(|(i, j, k, _, q)| (i, j, k, q));
            AnyLaw::Rational(LieLaw::from_entries(n, (), e).or_else(|e| consistency(0, e.to_string()))?)
        }
    };
    Ok(AlgebraFile { law, weights: ws, param: decl })
}

/// Renders a law in the algebra-file grammar.
pub fn render_algebra(law: &AnyLaw, ws: &WeightSystem) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "dim {}", law.dim());
    if ws.torus_dim() > 0 {
        let _ = writeln!(s, "torus {}", ws.torus_dim());
        for i in 1..=ws.dim() {
            let cs: Vec<String> = ws.weight(i).iter().map(|c| c.to_string()).collect();
            let _ = writeln!(s, "weight {i} {}", cs.join(" "));
        }
    }
    let ring = law.ring();
    if let Some(name) = ring.param() {
        match ring.relation() {
            Some(o) => {
                let _ = writeln!(s, "param {name} order {o} center {}", ring.center());
            }
            None => {
                let _ = writeln!(s, "param {name} center {}", ring.center());
            }
        }
    }
    match law {
        AnyLaw::Rational(l) => {
            for (&(i, j, k), c) in l.constants() {
                let _ = writeln!(s, "bracket {i} {j} {k} {c}");
            }
        }
        AnyLaw::Local(l) => {
            for (&(i, j, k), c) in l.constants() {
                let _ = writeln!(s, "bracket {i} {j} {k} {}", c.render());
            }
        }
    }
    s
}

/// A filiation path: `weight` lines for the whole path plus `init N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathFile {
    pub weights: WeightSystem,
    pub init: usize,
}

pub fn parse_path(text: &str) -> Result<PathFile, FormatError> {
    let mut init: Option<(usize, usize)> = None;
    let mut rows: Vec<(usize, usize, Vec<i64>)> = Vec::new();
    for (line, w) in lines(text) {
        match w[0] {
            "init" => {
                if w.len() != 2 {
                    return parse_err(line, "usage: init N");
                }
                set_once(&mut init, line, "init", nat(line, w[1], "a dimension")?)?;
            }
            "weight" => {
                if w.len() < 3 {
                    return parse_err(line, "usage: weight i c1 .. cR");
                }
                let i = nat(line, w[1], "an index")?;
                let cs = w[2..].iter().map(|x| int(line, x)).collect::<Result<Vec<_>, _>>()?;
                rows.push((line, i, cs));
            }
            other => return parse_err(line, format!("unknown key '{other}'")),
        }
    }
    let Some((init_line, n0)) = init else {
        return parse_err(0, "missing 'init' line");
    };
    let Some(r) = rows.first().map(|x| x.2.len()) else {
        return parse_err(0, "no 'weight' lines");
    };
    let mut out = Vec::new();
    for (line, i, cs) in rows {
        if i != out.len() + 1 {
            return consistency(line, format!("expected weight for e{}, found e{i}", out.len() + 1));
        }
        if cs.len() != r {
            return consistency(line, format!("expected {r} weight coordinates, found {}", cs.len()));
        }
        out.push(cs);
    }
    if n0 == 0 || n0 > out.len() {
        return consistency(init_line, format!("init {n0} outside 1..{}", out.len()));
    }
    Ok(PathFile { weights: WeightSystem::new(r, out), init: n0 })
}

/// Renders a path file.
pub fn render_path(ws: &WeightSystem, init: usize) -> String {
    let mut s = format!("init {init}\n");
    for i in 1..=ws.dim() {
        let cs: Vec<String> = ws.weight(i).iter().map(|c| c.to_string()).collect();
        let _ = writeln!(s, "weight {i} {}", cs.join(" "));
    }
    s
}
