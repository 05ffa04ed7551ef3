//! Command implementations behind the `bmtop` binary. Each command returns
//! its standard output and exit code so that it can be tested in process.

pub mod format;

use std::path::Path;
use std::sync::Arc;

use bmtop_core::algebra::{homology, HomologyGroup};
use bmtop_core::bm::{bm_homology_all, OpenSpaceModel};
use bmtop_core::bridge::{chain_complex_of, relative_chain_complex};
use bmtop_core::checks::run_suite_on;
use bmtop_core::complex::{barycentric_subdivide, SimplicialComplex, Subcomplex};
use bmtop_core::products::{cup, relative_supported_cap, supported_cap, SupportedCapResult};
use num_bigint::BigInt;
use thiserror::Error;

use format::{load_complex, read_json, CellValuesFile, ComplexFile};

#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable or malformed input files.
    #[error("input error: {0}")]
    Input(String),
    #[error("retract condition failed: {0}; increase --presubdivide")]
    Retract(String),
    #[error(transparent)]
    Core(bmtop_core::Error),
}

impl From<bmtop_core::Error> for CliError {
    fn from(e: bmtop_core::Error) -> Self {
        match e {
            bmtop_core::Error::RetractFailed(msg) => CliError::Retract(msg),
            other => CliError::Core(other),
        }
    }
}

impl CliError {
    /// 1 for input and precondition errors, 2 for failed mathematical
    /// assertions.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(bmtop_core::Error::Internal(_)) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub code: i32,
}

impl Output {
    fn ok(lines: Vec<String>) -> Self {
        let mut text = lines.join("\n");
        if !text.is_empty() {
            text.push('\n');
        }
        Self { text, code: 0 }
    }
}

pub fn validate(complex: &Path) -> Result<Output, CliError> {
    let x = load_complex(complex)?;
    let counts: Vec<String> = x
        .f_vector()
        .iter()
        .enumerate()
        .map(|(d, n)| format!("dim {d}: {n}"))
        .collect();
    if counts.is_empty() {
        return Ok(Output::ok(vec!["empty complex".into()]));
    }
    Ok(Output::ok(vec![counts.join(", ")]))
}

fn top_degree(x: &SimplicialComplex) -> i64 {
    x.dim().map_or(-1, |d| d as i64)
}

pub fn homology_cmd(complex: &Path, rel: Option<&Path>, bm: bool) -> Result<Output, CliError> {
    let x = load_complex(complex)?;
    let y = match rel {
        Some(p) => read_json::<ComplexFile>(p)?.to_subcomplex(&x)?,
        None => Subcomplex::empty(&x),
    };
    let (prefix, groups): (&str, Vec<HomologyGroup>) = if bm {
        ("H^BM", bm_homology_all(&OpenSpaceModel::new(&x, &y)?))
    } else {
        let chains = relative_chain_complex(&x, &y)?.complex;
        (
            "H",
            (0..=top_degree(&x)).map(|m| homology(&chains, m)).collect(),
        )
    };
    let lines = groups
        .iter()
        .map(|h| format!("{prefix}_{} = {}", h.degree, h.group.describe()))
        .collect();
    Ok(Output::ok(lines))
}

pub fn cup_cmd(complex: &Path, u: &Path, v: &Path) -> Result<Output, CliError> {
    let x = load_complex(complex)?;
    let u = read_json::<CellValuesFile>(u)?.to_cochain(&x)?;
    let v = read_json::<CellValuesFile>(v)?.to_cochain(&x)?;
    Ok(Output::ok(vec![cup(&u, &v)?.render()]))
}

pub struct CapArgs<'a> {
    pub complex: &'a Path,
    pub cochain: &'a Path,
    pub chain: &'a Path,
    pub support: Option<&'a Path>,
    pub rel: Option<&'a Path>,
    pub presubdivide: usize,
}

fn render_subcomplex(sub: &Subcomplex) -> String {
    if sub.is_empty() {
        return "∅".into();
    }
    let (c, _) = sub.to_complex();
    c.maximal_simplices()
        .iter()
        .map(|s| c.render(s))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn cap_cmd(args: &CapArgs) -> Result<Output, CliError> {
    let x = load_complex(args.complex)?;
    let u = read_json::<CellValuesFile>(args.cochain)?.to_cochain(&x)?;
    let alpha = read_json::<CellValuesFile>(args.chain)?.to_chain(&x)?;
    let z = match args.support {
        Some(p) => read_json::<ComplexFile>(p)?.to_subcomplex(&x)?,
        None => Subcomplex::full(&x),
    };
    let result: SupportedCapResult = match args.rel {
        Some(p) => {
            let y = read_json::<ComplexFile>(p)?.to_subcomplex(&x)?;
            relative_supported_cap(&x, &y, &z, &u, &alpha, args.presubdivide)?
        }
        None => supported_cap(&x, &z, &u, &alpha, args.presubdivide)?,
    };
    let mut lines = vec![
        format!("chain: {}", result.chain_image.render()),
        format!("star: {}", render_subcomplex(&result.star)),
    ];
    if args.rel.is_some() {
        lines.push(format!(
            "star boundary: {}",
            render_subcomplex(&result.star_boundary)
        ));
    }
    lines.push(format!("class: {}", result.class()?));
    Ok(Output::ok(lines))
}

pub fn subdivide_cmd(complex: &Path, times: usize) -> Result<Output, CliError> {
    let mut x = load_complex(complex)?;
    for _ in 0..times {
        x = barycentric_subdivide(&x)?.complex;
    }
    let json = serde_json::to_string_pretty(&ComplexFile::from_complex(&x))
        .map_err(|e| CliError::Input(e.to_string()))?;
    Ok(Output::ok(vec![json]))
}

pub struct VerifyArgs<'a> {
    pub complex: &'a Path,
    pub trials: usize,
    pub seed: u64,
    /// Test hook: perturb one boundary entry before running the suite.
    pub corrupt_boundary: bool,
}

pub fn verify_cmd(args: &VerifyArgs) -> Result<Output, CliError> {
    let x: Arc<SimplicialComplex> = load_complex(args.complex)?;
    let mut chains = chain_complex_of(&x);
    if args.corrupt_boundary {
        // ∂_1 sits at cohomological degree -1
        let d = chains.d_c(-1);
        if d.rows() > 0 && d.cols() > 0 {
            chains.corrupt_differential(-1, (0, 0), &d[(0, 0)] + BigInt::from(1));
        }
    }
    let results = run_suite_on(&x, &chains, args.trials, args.seed);
    let failed = results.iter().any(|r| !r.passed);
    let lines = results
        .iter()
        .map(|r| format!("{} {}", if r.passed { "PASS" } else { "FAIL" }, r.name))
        .collect();
    let mut out = Output::ok(lines);
    if failed {
        out.code = 2;
    }
    Ok(out)
}
