//! Command-line parsing and dispatch.

use std::collections::BTreeMap;
use std::fs;

use clap::{Parser, Subcommand};
use lie_schemes::catalog::{self, AnyLaw};
use lie_schemes::cohomology::cohomology_dims;
use lie_schemes::exactnum::{parse_rational, Rational};
use lie_schemes::filiation::{
    check_invariants, local_ring_report, render_step, run_filiation, BranchChoices, SchemeState,
};
use lie_schemes::liecore::{derivation_check, jacobiator};
use lie_schemes::reduction::{check_reduction, SemidirectData};
use lie_schemes::torus_scheme::{
    admissible_set_diagonal, admissible_set_general, jacobi_scheme_polynomials, law_point,
};
use lie_schemes::LieLaw;
use num_traits::Zero;
use serde_json::json;
use thiserror::Error;

use crate::format::{parse_algebra, parse_path, render_algebra, AlgebraFile};
use crate::report::Report;
use crate::reproduce;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
}

fn input<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Input(msg.into()))
}

#[derive(Parser, Debug)]
#[command(name = "lieschemes", about = "Exact computations on schemes of Lie algebra laws")]
pub struct Cli {
    /// Emit a JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the Jacobi identity and the torus action.
    CheckJacobi {
        /// Algebra file, or `catalog:NAME`.
        file: String,
    },
    /// Dimensions of the adjoint cohomology in one degree.
    Cohomology {
        /// Algebra file, or `catalog:NAME`.
        file: String,
        /// Cochain degree.
        #[arg(long)]
        degree: usize,
        /// Restrict to cochains invariant under the declared torus.
        #[arg(long)]
        invariant: bool,
    },
    /// A maximal admissible set of structure constants.
    Admissible {
        /// Algebra file, or `catalog:NAME`.
        file: String,
        /// Use the differential of the full cochain complex.
        #[arg(long)]
        general: bool,
    },
    /// Coordinates and Jacobi polynomials of the torus-invariant scheme.
    SchemePolys {
        /// Algebra file, or `catalog:NAME`.
        file: String,
    },
    /// Run the filiation tower along a weight path.
    Filiation {
        /// Seed algebra file, or `catalog:NAME`.
        file: String,
        /// Path file with the weights of every step.
        #[arg(long)]
        path: String,
        /// Dimension to reach.
        #[arg(long)]
        target: usize,
        /// Extension pair `p,q`, optionally `p,q@N` for the step reaching N.
        #[arg(long)]
        pair: Vec<String>,
        /// Center `p/q`, optionally `p/q@N` for the step reaching N.
        #[arg(long, allow_hyphen_values = true)]
        center: Vec<String>,
    },
    /// Rebuild a worked example.
    Reproduce {
        #[arg(value_parser = ["6.1", "6.3-f", "6.3-w", "6.2"])]
        which: String,
        /// Largest dimension, or the dimension for `6.2`.
        #[arg(long)]
        max_dim: Option<usize>,
    },
    /// Check the reduction hypotheses for the torus acting on the law.
    ReductionCheck {
        /// Algebra file, or `catalog:NAME`.
        file: String,
    },
    /// Verify every catalog law.
    CatalogVerify,
    /// List catalog names, or print one law as an algebra file.
    Catalog {
        /// Catalog name such as `a4n(9)`.
        name: Option<String>,
    },
}

/// Loads `FILE`, or a catalog law written `catalog:NAME`.
pub fn load(spec: &str) -> Result<AlgebraFile, CliError> {
    if let Some(name) = spec.strip_prefix("catalog:") {
        let Some(e) = catalog::lookup(name) else {
            return input(format!("unknown catalog law '{name}'"));
        };
        return Ok(AlgebraFile { law: e.law, weights: e.weights, param: None });
    }
    let text = fs::read_to_string(spec).or_else(|e| input(format!("{spec}: {e}")))?;
    parse_algebra(&text).or_else(|e| input(format!("{spec}: {e}")))
}

fn rational_law(f: &AlgebraFile, report: &mut Report) -> LieLaw<Rational> {
    if let AnyLaw::Local(_) = f.law {
        report.line(format!("coefficient ring {}; using the closed point", f.law.ring()));
    }
    f.law.closed_point()
}

fn check_jacobi(file: &str) -> Result<Report, CliError> {
    let f = load(file)?;
    let mut r = Report::new("check-jacobi");
    r.input("file", file);
    let bad: Vec<String> = match &f.law {
        AnyLaw::Rational(l) => jacobiator(l).entries().iter().map(|((a, k), c)| format!("J{a:?} -> e{k}: {c}")).collect(),
        AnyLaw::Local(l) => jacobiator(l).entries().iter().map(|((a, k), c)| format!("J{a:?} -> e{k}: {c}")).collect(),
    };
    r.line(format!("dim {}, ring {}, {} nonzero constants", f.law.dim(), f.law.ring(), constants_len(&f.law)));
    for b in &bad {
        r.line(b.clone());
    }
    r.set("jacobiator_terms", bad.len());
    r.check("jacobiator = 0", bad.is_empty(), format!("{} nonzero terms", bad.len()));
    let ders = f.weights.derivations();
    let ok = ders.iter().all(|d| match &f.law {
        AnyLaw::Rational(l) => derivation_check(l, d).ok,
        AnyLaw::Local(l) => derivation_check(l, d).ok,
    });
    r.check("torus acts by derivations", ok, format!("torus dimension {}", f.weights.torus_dim()));
    Ok(r)
}

fn constants_len(law: &AnyLaw) -> usize {
    match law {
        AnyLaw::Rational(l) => l.constants().len(),
        AnyLaw::Local(l) => l.constants().len(),
    }
}

fn cohomology(file: &str, degree: usize, invariant: bool) -> Result<Report, CliError> {
    let f = load(file)?;
    let mut r = Report::new("cohomology");
    r.input("file", file);
    r.input("degree", degree);
    r.input("invariant", invariant);
    let law = rational_law(&f, &mut r);
    let ders = f.weights.derivations();
    let inv = invariant.then_some(ders.as_slice());
    match cohomology_dims(&law, degree, inv) {
        Ok(c) => {
            let sup = if invariant { "^T" } else { "" };
            r.line(format!("dim C^{degree}{sup} = {}", c.dim_c));
            r.line(format!("dim Z^{degree}{sup} = {}", c.dim_z));
            r.line(format!("dim B^{degree}{sup} = {}", c.dim_b));
            r.line(format!("dim H^{degree} = {}", c.dim_h));
            r.set("dim_c", c.dim_c);
            r.set("dim_z", c.dim_z);
            r.set("dim_b", c.dim_b);
            r.set("dim_h", c.dim_h);
            r.check("dim Z = dim B + dim H", c.dim_z == c.dim_b + c.dim_h, "");
            Ok(r)
        }
        Err(e) => {
            r.check("input is a law with derivations", false, e.to_string());
            Ok(r)
        }
    }
}

fn admissible(file: &str, general: bool) -> Result<Report, CliError> {
    let f = load(file)?;
    let mut r = Report::new("admissible");
    r.input("file", file);
    r.input("general", general);
    let law = rational_law(&f, &mut r);
    let set = if general {
        admissible_set_general(&law, (f.weights.torus_dim() > 0).then_some(&f.weights))
    } else {
        admissible_set_diagonal(&law, &f.weights)
    };
    let expected = law.dim() - f.weights.torus_dim();
    r.line(format!("admissible set: {}", set.render(true)));
    r.line(format!("size {} (n - dim T = {expected})", set.len()));
    r.set("set", set.render(true));
    r.set("size", set.len());
    r.set("n_minus_torus", expected);
    r.check("entries are nonzero constants", set.entries().iter().all(|&(i, j, k)| !law.coeff(i, j, k).is_zero()), "");
    Ok(r)
}

fn scheme_polys(file: &str) -> Result<Report, CliError> {
    let f = load(file)?;
    let mut r = Report::new("scheme-polys");
    r.input("file", file);
    let (coords, polys) = jacobi_scheme_polynomials(&f.weights);
    r.line(format!("{} coordinates: {}", coords.len(), coords.render(false)));
    let law = f.law.closed_point();
    let pt = law_point(&law, &coords);
    let mut nonzero = 0;
    for p in &polys {
        let (i, j, k) = p.triple;
        r.line(format!("J{i}_{j}_{k} -> e{}: {}", p.target, p.poly));
        if !p.poly.eval(&pt).is_zero() {
            nonzero += 1;
        }
    }
    r.set("coordinates", coords.len());
    r.set("polynomials", polys.len());
    r.check("polynomials vanish at the closed point", nonzero == 0, format!("{nonzero} nonzero"));
    Ok(r)
}

fn split_at_dim(s: &str, target: usize) -> Result<(String, usize), CliError> {
    match s.split_once('@') {
        Some((v, n)) => {
            let n = n.parse().or_else(|_| input(format!("bad step dimension in '{s}'")))?;
            Ok((v.to_string(), n))
        }
        None => Ok((s.to_string(), target)),
    }
}

fn filiation(file: &str, path: &str, target: usize, pairs: &[String], centers: &[String]) -> Result<Report, CliError> {
    let f = load(file)?;
    let text = fs::read_to_string(path).or_else(|e| input(format!("{path}: {e}")))?;
    let p = parse_path(&text).or_else(|e| input(format!("{path}: {e}")))?;
    if let AnyLaw::Local(_) = f.law {
        return input("the seed law must be rational");
    }
    if p.init != f.law.dim() {
        return input(format!("path starts at {} but the seed has dimension {}", p.init, f.law.dim()));
    }
    if target > p.weights.dim() || target < p.init {
        return input(format!("target {target} outside {}..{}", p.init, p.weights.dim()));
    }
    let mut choices = BranchChoices::default();
    for s in pairs {
        let (v, n) = split_at_dim(s, target)?;
        let parsed = v.split_once(',').and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)));
        let Some(pq) = parsed else { return input(format!("bad pair '{s}'")) };
        choices.pairs.insert(n, pq);
    }
    for s in centers {
        let (v, n) = split_at_dim(s, target)?;
        let c = parse_rational(&v).or_else(|e| input(format!("bad center '{s}': {e}")))?;
        choices.centers.insert(n, c);
    }
    let mut r = Report::new("filiation");
    r.input("file", file);
    r.input("path", path);
    r.input("target", target);
    r.input("pairs", pairs.join(" "));
    r.input("centers", centers.join(" "));
    let seed = f.law.closed_point();
    let ws = p.weights.truncate(target);
    let states = match run_filiation(&ws, &seed, target, &choices) {
        Ok(s) => s,
        Err(e) => {
            r.check("tower reaches the target", false, e.to_string());
            return Ok(r);
        }
    };
    filiation_body(&mut r, &states);
    Ok(r)
}

fn filiation_body(r: &mut Report, states: &[SchemeState]) {
    let mut rows = Vec::new();
    for s in states {
        if let Some(h) = s.history.last() {
            r.line(render_step(h));
        }
        let lr = local_ring_report(s);
        r.line(format!("n = {}: ring {}, formally rigid {}", s.n, lr.ring, lr.formally_rigid));
        rows.push(json!({"n": s.n, "ring": lr.ring, "formally_rigid": lr.formally_rigid, "law": s.render_law()}));
    }
    if let Some(last) = states.last() {
        r.line(format!("final law: {}", last.render_law()));
    }
    r.set("states", rows);
    let nu_ok = states.iter().flat_map(|s| s.history.last()).all(|h| h.nu_homology == h.nu_kernel);
    r.check("nu agreement", nu_ok, "");
    let bad: Vec<String> = states
        .iter()
        .flat_map(|s| check_invariants(s).into_iter().filter(|x| !x.1).map(move |(n, _)| format!("n = {}: {n}", s.n)))
        .collect();
    r.check("state invariants", bad.is_empty(), bad.join("; "));
}

fn reduction(file: &str) -> Result<Report, CliError> {
    let f = load(file)?;
    let mut r = Report::new("reduction-check");
    r.input("file", file);
    let law = rational_law(&f, &mut r);
    let d = match SemidirectData::torus(law, &f.weights) {
        Ok(d) => d,
        Err(e) => return input(e.to_string()),
    };
    let rep = match check_reduction(&d) {
        Ok(x) => x,
        Err(e) => return input(e.to_string()),
    };
    r.line(rep.render());
    r.set("i1_epi", rep.i1_epi);
    r.set("i2_iso", rep.i2_iso);
    r.set("i3_mono", rep.i3_mono);
    r.set("h1_rel", rep.h1_rel);
    r.set("h2_rel", rep.h2_rel);
    r.set("complete", rep.complete);
    r.set("case", rep.case.to_string());
    r.check("i1 epimorphism", rep.i1_epi, "");
    r.check("i2 isomorphism", rep.i2_iso, "");
    r.check("i3 monomorphism", rep.i3_mono, "");
    r.check("routes agree", rep.routes_agree(), format!("direct {}, criterion {}", rep.direct_verdict, rep.criterion_verdict));
    Ok(r)
}

fn catalog_verify() -> Report {
    let mut r = Report::new("catalog-verify");
    let mut summary = BTreeMap::new();
    for e in catalog::standard_entries() {
        let jac = e.law.jacobi_holds();
        let tor = e.law.torus_acts(&e.weights);
        let text = render_algebra(&e.law, &e.weights);
        let trip = parse_algebra(&text).map(|f| f.law == e.law && f.weights == e.weights).unwrap_or(false);
        r.line(format!("{}: dim {}, ring {}, jacobi {jac}, torus {tor}, round trip {trip}", e.name, e.law.dim(), e.law.ring()));
        r.check(e.name.to_string(), jac && tor && trip, "");
        summary.insert(e.name.clone(), jac && tor && trip);
    }
    r.set("entries", json!(summary));
    r
}

fn catalog_show(name: Option<&str>) -> Result<Report, CliError> {
    let mut r = Report::new("catalog");
    match name {
        None => {
            let names: Vec<String> = catalog::standard_entries().into_iter().map(|e| e.name).collect();
            for n in &names {
                r.line(n.clone());
            }
            r.set("names", names);
        }
        Some(n) => {
            let Some(e) = catalog::lookup(n) else { return input(format!("unknown catalog law '{n}'")) };
            r.input("name", n);
            let text = render_algebra(&e.law, &e.weights);
            r.line(text.trim_end().to_string());
            r.set("file", text);
        }
    }
    Ok(r)
}

fn bounded(v: Option<usize>, default: usize, lo: usize, hi: usize) -> Result<usize, CliError> {
    let n = v.unwrap_or(default);
    if n < lo || n > hi {
        return input(format!("--max-dim must lie in {lo}..={hi}"));
    }
    Ok(n)
}

pub fn dispatch(cmd: &Command) -> Result<Report, CliError> {
    let fil = |r: Result<Report, lie_schemes::filiation::FiliationError>| r.or_else(|e| input(e.to_string()));
    match cmd {
        Command::CheckJacobi { file } => check_jacobi(file),
        Command::Cohomology { file, degree, invariant } => cohomology(file, *degree, *invariant),
        Command::Admissible { file, general } => admissible(file, *general),
        Command::SchemePolys { file } => scheme_polys(file),
        Command::Filiation { file, path, target, pair, center } => filiation(file, path, *target, pair, center),
        Command::Reproduce { which, max_dim } => match which.as_str() {
            "6.1" => fil(reproduce::reproduce_two_torus(bounded(*max_dim, 12, 6, 14)?)),
            "6.3-f" => fil(reproduce::reproduce_filiform(bounded(*max_dim, 12, 5, 12)?)),
            "6.3-w" => fil(reproduce::reproduce_witt(bounded(*max_dim, 12, 12, 12)?)),
            _ => Ok(reproduce::reproduce_certificate(bounded(*max_dim, 9, 9, 14)?)),
        },
        Command::ReductionCheck { file } => reduction(file),
        Command::CatalogVerify => Ok(catalog_verify()),
        Command::Catalog { name } => catalog_show(name.as_deref()),
    }
}

/// Parses arguments, runs the command and returns `(exit code, output)`.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    match dispatch(&cli.command) {
        Ok(rep) => {
            let out = if cli.json { rep.render_json() } else { rep.render_text() };
            (rep.exit_code(), out)
        }
        Err(CliError::Input(m)) => (2, format!("error: {m}\n")),
    }
}

