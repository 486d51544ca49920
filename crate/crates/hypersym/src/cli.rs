//! File formats and subcommands of the `hypersym` binary.
//!
//! Scalars are `"p/q"` strings. Exit codes: 0 pass, 1 check failure, 2 input error.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::bicrossproduct::{build_bicrossproduct, matched_pair_violations, Factor, MatchedPairSpec};
use crate::classify2d::{canonical_witness, classify, residuals, Coeff2d, Witness};
use crate::connection::geodesic::{geodesic_probe, ProbeConfig, Trajectory};
use crate::connection::{levi_civita, Connection};
use crate::core_tensor::{BilinearForm, Matrix, Vector};
use crate::error::{Error, Result};
use crate::hypersymplectic::verify_hypersymplectic;
use crate::liealg::LieAlgebra;
use crate::report::{Report, Status};
use crate::scalar::Scalar;

pub const SCHEMA_VERSION: u32 = 1;

/// `[e_i, e_j]` or `∇_{e_i} e_j` as sparse output coefficients `{k: c}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SparseEntry {
    pub i: usize,
    pub j: usize,
    pub out: BTreeMap<usize, Scalar>,
}

pub type MatrixRows = Vec<Vec<Scalar>>;

/// A Lie algebra with optional connection, metric and `{J, E}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    pub schema_version: u32,
    pub dim: usize,
    pub labels: Vec<String>,
    /// Only `i < j`; omitted brackets vanish.
    #[serde(default)]
    pub brackets: Vec<SparseEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub connection: Option<Vec<SparseEntry>>,
    /// Gram matrix `g(e_i, e_j)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<MatrixRows>,
    /// Antisymmetric form for 2-d connection files; `e¹∧e²` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<MatrixRows>,
    /// Row-major; column `j` is the image of `e_j`.
    #[serde(rename = "J", default, skip_serializing_if = "Option::is_none")]
    pub j: Option<MatrixRows>,
    #[serde(rename = "E", default, skip_serializing_if = "Option::is_none")]
    pub e: Option<MatrixRows>,
}

fn square(rows: &MatrixRows, n: usize, what: &str) -> Result<Matrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidArgument(format!("{what} must be {n}x{n}")));
    }
    Ok(Matrix::from_rows(rows.clone()))
}

fn sparse_vector(n: usize, out: &BTreeMap<usize, Scalar>, what: &str) -> Result<Vector> {
    let mut v = Vector::zeros(n);
    for (k, c) in out {
        if *k >= n {
            return Err(Error::InvalidArgument(format!("{what}: output index {k} out of range")));
        }
        v.0[*k] = c.clone();
    }
    Ok(v)
}

fn to_sparse(i: usize, j: usize, v: &Vector) -> Option<SparseEntry> {
    let out: BTreeMap<usize, Scalar> = v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect();
    (!out.is_empty()).then_some(SparseEntry { i, j, out })
}

fn rows_of(m: &Matrix) -> MatrixRows {
    m.row_vecs()
}

fn parse_algebra(labels: &[String], brackets: &[SparseEntry]) -> Result<LieAlgebra> {
    let n = labels.len();
    let mut seen = std::collections::BTreeSet::new();
    let mut table = Vec::new();
    for b in brackets {
        if b.i >= b.j || b.j >= n {
            return Err(Error::InvalidArgument(format!("bracket ({}, {}) needs i < j < {n}", b.i, b.j)));
        }
        if !seen.insert((b.i, b.j)) {
            return Err(Error::InvalidArgument(format!("bracket ({}, {}) listed twice", b.i, b.j)));
        }
        table.push((b.i, b.j, sparse_vector(n, &b.out, "bracket")?));
    }
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    LieAlgebra::from_brackets(&refs, &table)
}

fn parse_connection(l: &LieAlgebra, entries: &[SparseEntry]) -> Result<Connection> {
    let n = l.dim();
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for c in entries {
        if c.i >= n || c.j >= n {
            return Err(Error::InvalidArgument(format!("connection entry ({}, {}) out of range", c.i, c.j)));
        }
        if !seen.insert((c.i, c.j)) {
            return Err(Error::InvalidArgument(format!("connection entry ({}, {}) listed twice", c.i, c.j)));
        }
        out.push((c.i, c.j, sparse_vector(n, &c.out, "connection")?));
    }
    Connection::from_entries(l.clone(), &out)
}

fn sparse_connection(c: &Connection) -> Vec<SparseEntry> {
    let n = c.dim();
    (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter_map(|(i, j)| to_sparse(i, j, c.on_basis(i, j))).collect()
}

fn sparse_brackets(l: &LieAlgebra) -> Vec<SparseEntry> {
    l.sparse_brackets().iter().filter_map(|(i, j, v)| to_sparse(*i, *j, v)).collect()
}

impl StructureFile {
    pub fn parse(text: &str) -> Result<Self> {
        let f: StructureFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        f.validate()?;
        Ok(f)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| at_path(path, e))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::InvalidArgument(format!("unsupported schema_version {}", self.schema_version)));
        }
        if self.labels.len() != self.dim {
            return Err(Error::InvalidArgument(format!("dim {} but {} labels", self.dim, self.labels.len())));
        }
        let l = self.algebra()?;
        self.connection_of(&l)?;
        self.metric()?;
        self.omega()?;
        self.j()?;
        self.e()?;
        Ok(())
    }

    pub fn algebra(&self) -> Result<LieAlgebra> {
        parse_algebra(&self.labels, &self.brackets)
    }

    fn connection_of(&self, l: &LieAlgebra) -> Result<Option<Connection>> {
        self.connection.as_ref().map(|c| parse_connection(l, c)).transpose()
    }

    pub fn connection(&self) -> Result<Option<Connection>> {
        self.connection_of(&self.algebra()?)
    }

    pub fn metric(&self) -> Result<Option<BilinearForm>> {
        self.metric.as_ref().map(|m| BilinearForm::symmetric(square(m, self.dim, "metric")?)).transpose()
    }

    pub fn omega(&self) -> Result<Option<BilinearForm>> {
        self.omega.as_ref().map(|m| BilinearForm::antisymmetric(square(m, self.dim, "omega")?)).transpose()
    }

    pub fn j(&self) -> Result<Option<Matrix>> {
        self.j.as_ref().map(|m| square(m, self.dim, "J")).transpose()
    }

    pub fn e(&self) -> Result<Option<Matrix>> {
        self.e.as_ref().map(|m| square(m, self.dim, "E")).transpose()
    }

    pub fn from_algebra(l: &LieAlgebra) -> Self {
        StructureFile {
            schema_version: SCHEMA_VERSION,
            dim: l.dim(),
            labels: l.labels().to_vec(),
            brackets: sparse_brackets(l),
            connection: None,
            metric: None,
            omega: None,
            j: None,
            e: None,
        }
    }

    pub fn with_connection(mut self, c: &Connection) -> Self {
        self.connection = Some(sparse_connection(c));
        self
    }

    pub fn with_metric(mut self, g: &BilinearForm) -> Self {
        self.metric = Some(rows_of(g.matrix()));
        self
    }

    pub fn with_omega(mut self, w: &BilinearForm) -> Self {
        self.omega = Some(rows_of(w.matrix()));
        self
    }

    pub fn with_cps(mut self, j: &Matrix, e: &Matrix) -> Self {
        self.j = Some(rows_of(j));
        self.e = Some(rows_of(e));
        self
    }
}

/// One side of a matched pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorFile {
    pub labels: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<SparseEntry>,
    #[serde(default)]
    pub connection: Vec<SparseEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<MatrixRows>,
}

impl FactorFile {
    pub fn factor(&self) -> Result<Factor> {
        let l = parse_algebra(&self.labels, &self.brackets)?;
        let n = l.dim();
        let c = parse_connection(&l, &self.connection)?;
        let w = match &self.omega {
            Some(m) => BilinearForm::antisymmetric(square(m, n, "omega")?)?,
            None if n == 2 => BilinearForm::wedge(2, 0, 1),
            None => return Err(Error::InvalidArgument("omega is required outside dimension 2".into())),
        };
        Factor::new(c, w)
    }

    pub fn from_factor(f: &Factor) -> Self {
        FactorFile {
            labels: f.algebra().labels().to_vec(),
            brackets: sparse_brackets(f.algebra()),
            connection: sparse_connection(&f.connection),
            omega: Some(rows_of(f.omega.matrix())),
        }
    }
}

/// Two factors and `φ: u → v` (row-major; column `j` is `φ(e_j)`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatchedPairFile {
    pub schema_version: u32,
    pub u: FactorFile,
    pub v: FactorFile,
    pub phi: MatrixRows,
}

impl MatchedPairFile {
    pub fn parse(text: &str) -> Result<Self> {
        let f: MatchedPairFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if f.schema_version != SCHEMA_VERSION {
            return Err(Error::InvalidArgument(format!("unsupported schema_version {}", f.schema_version)));
        }
        f.spec()?;
        Ok(f)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| at_path(path, e))
    }

    pub fn spec(&self) -> Result<MatchedPairSpec> {
        let (u, v) = (self.u.factor()?, self.v.factor()?);
        let phi = square(&self.phi, u.dim(), "phi")?;
        MatchedPairSpec::new(u, v, phi)
    }

    pub fn from_spec(s: &MatchedPairSpec) -> Self {
        MatchedPairFile {
            schema_version: SCHEMA_VERSION,
            u: FactorFile::from_factor(&s.u),
            v: FactorFile::from_factor(&s.v),
            phi: rows_of(&s.phi),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }
}

fn at_path(path: &Path, e: Error) -> Error {
    match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => Error::InvalidArgument(format!("{}: {other}", path.display())),
    }
}

// ---------------------------------------------------------------------------
// Commands

fn require<T>(x: Option<T>, what: &str) -> Result<T> {
    x.ok_or_else(|| Error::InvalidArgument(format!("file has no {what}")))
}

/// `verify_hypersymplectic` on a file with `J`, `E` and a metric.
pub fn cmd_verify(path: &Path) -> Result<Report> {
    let f = StructureFile::read(path)?;
    let l = f.algebra()?;
    let (j, e, g) = (require(f.j()?, "J")?, require(f.e()?, "E")?, require(f.metric()?, "metric")?);
    Ok(verify_hypersymplectic(&l, &j, &e, &g))
}

pub enum BicrossOutcome {
    Built(Box<StructureFile>),
    /// Unmet hypotheses or failed matched-pair identities.
    Rejected(Report),
}

pub fn cmd_bicross(path: &Path) -> Result<BicrossOutcome> {
    let spec = MatchedPairFile::read(path)?.spec()?;
    let mut rep = Report::new();
    for d in spec.defects() {
        rep.push(format!("hypothesis: {d}"), Status::Fail, None);
    }
    if spec.phi.det().is_zero() {
        return Ok(BicrossOutcome::Rejected(rep));
    }
    for v in matched_pair_violations(&spec)? {
        let (a, b, c) = v.indices;
        rep.push(format!("matched pair identity {} at ({a},{b},{c})", v.identity), Status::Fail, Some(format!("residual {:?}", v.residual.0)));
    }
    if !rep.checks.is_empty() {
        return Ok(BicrossOutcome::Rejected(rep));
    }
    let r = build_bicrossproduct(&spec)?;
    let hs = &r.structure;
    let f = StructureFile::from_algebra(hs.algebra()).with_metric(hs.g()).with_cps(hs.cp().j(), hs.cp().e());
    Ok(BicrossOutcome::Built(Box::new(f)))
}

fn witness_text(w: &Witness) -> String {
    match w {
        Witness::Exact(m) => format!("exact {:?}", m.row_vecs().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>()),
        Witness::Approx(m) => format!("approx {m:?}"),
    }
}

/// Residuals, family, canonical witness and a completeness probe for a 2-d connection.
pub fn cmd_classify2d(path: &Path) -> Result<Report> {
    let f = StructureFile::read(path)?;
    let conn = require(f.connection()?, "connection")?;
    if conn.dim() != 2 {
        return Err(Error::InvalidArgument(format!("classify2d needs dimension 2, got {}", conn.dim())));
    }
    let omega = f.omega()?.unwrap_or_else(|| BilinearForm::wedge(2, 0, 1));
    if omega != BilinearForm::wedge(2, 0, 1) {
        return Err(Error::InvalidArgument("classify2d expects omega = e1^e2".into()));
    }
    let mut rep = Report::new();
    let (alg, co) = match Coeff2d::from_connection(&conn) {
        Ok(x) => x,
        Err(e) => {
            rep.push("torsion-free", Status::Fail, Some(e.to_string()));
            return Ok(rep);
        }
    };
    rep.push("algebra", Status::Pass, Some(alg.name().to_string()));
    rep.push("coefficients", Status::Pass, Some(co.to_string()));
    let res = residuals(alg, &co);
    for (i, r) in res.iter().enumerate() {
        rep.check(format!("residual {i}"), r.is_zero(), || r.to_string());
    }
    if !rep.passed() {
        return Ok(rep);
    }
    let tag = match classify(alg, &co) {
        Ok(t) => t,
        Err(e) => {
            rep.push("family", Status::Fail, Some(e.to_string()));
            return Ok(rep);
        }
    };
    rep.push("family", Status::Pass, Some(tag.to_string()));
    match canonical_witness(&tag) {
        Ok((w, target)) => {
            let st = if matches!(w, Witness::Exact(_)) { Status::Pass } else { Status::Heuristic };
            rep.push("canonical target", Status::Pass, Some(target.to_string()));
            rep.push("canonical witness", st, Some(witness_text(&w)));
        }
        Err(_) => rep.push("canonical target", Status::Pass, Some("zero connection (no target)".into())),
    }
    let starts: [[f64; 2]; 5] = [[1.0, 1.0], [1.0, 0.0], [0.0, 1.0], [-1.0, 0.5], [0.3, -2.0]];
    let cfg = ProbeConfig::with_horizon(100.0);
    let blow = starts.iter().find_map(|x| Some((x, geodesic_probe(&conn, x, &cfg).ok()?.verdict.blow_up_time()?)));
    let verdict = match blow {
        Some((x, t)) => format!("incomplete (blow-up at t={t:.6} from {x:?})"),
        None => "complete up to horizon 100".into(),
    };
    rep.push("completeness probe", Status::Heuristic, Some(verdict));
    Ok(rep)
}

fn connection_or_levi_civita(f: &StructureFile) -> Result<(Connection, &'static str)> {
    let l = f.algebra()?;
    if let Some(c) = f.connection()? {
        return Ok((c, "given connection"));
    }
    let g = require(f.metric()?, "connection or metric")?;
    Ok((levi_civita(&l, &g)?, "Levi-Civita connection of the metric"))
}

/// Torsion components, nonzero curvature operators and the flatness verdict.
pub fn cmd_curvature(path: &Path) -> Result<String> {
    let f = StructureFile::read(path)?;
    let (c, source) = connection_or_levi_civita(&f)?;
    let labels = c.algebra().labels().to_vec();
    let mut out = format!("connection: {source}\n");
    let torsion = c.torsion();
    if torsion.is_zero() {
        out.push_str("torsion: zero\n");
    } else {
        out.push_str("torsion:\n");
        for ((i, j, k), x) in torsion.nonzero() {
            if i < j {
                let _ = writeln!(out, "  T({}, {})[{}] = {x}", labels[i], labels[j], labels[k]);
            }
        }
    }
    let n = c.dim();
    let mut flat = true;
    for i in 0..n {
        for j in i + 1..n {
            let r = c.curvature(&c.algebra().basis(i), &c.algebra().basis(j));
            if r.is_zero() {
                continue;
            }
            flat = false;
            let _ = writeln!(out, "R({}, {}) =", labels[i], labels[j]);
            for row in r.row_vecs() {
                let cells: Vec<String> = row.iter().map(|x| format!("{:>6}", x.to_string())).collect();
                let _ = writeln!(out, "  [{}]", cells.join(" "));
            }
        }
    }
    let _ = writeln!(out, "flat: {flat}");
    Ok(out)
}

/// Geodesic trajectory from `x0` for the given (or Levi-Civita) connection.
pub fn cmd_geodesic(path: &Path, x0: &[f64], horizon: f64, tol: f64) -> Result<(Trajectory, Vec<String>)> {
    let f = StructureFile::read(path)?;
    let (c, _) = connection_or_levi_civita(&f)?;
    let tr = geodesic_probe(&c, x0, &ProbeConfig::with_horizon(horizon).with_tol(tol))?;
    Ok((tr, c.algebra().labels().to_vec()))
}

pub fn cmd_paper_suite() -> Report {
    crate::suite::paper_suite()
}

// ---------------------------------------------------------------------------
// Argument parsing

#[derive(Debug, Parser)]
#[command(name = "hypersym", version, about = "Exact construction and verification of hypersymplectic structures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that a structure file carries a hypersymplectic structure.
    Verify { path: PathBuf },
    /// Build the 4-d structure from a matched-pair file and print it as JSON.
    Bicross { path: PathBuf },
    /// Classify a flat torsion-free connection on a 2-d algebra.
    Classify2d { path: PathBuf },
    /// Print torsion and curvature of the file's connection (or Levi-Civita connection).
    Curvature { path: PathBuf },
    /// Integrate the geodesic equation and print a CSV trajectory.
    Geodesic {
        path: PathBuf,
        /// Initial velocity, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        x0: Vec<f64>,
        #[arg(long, default_value_t = 10.0)]
        horizon: f64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Run the whole reproduction battery.
    PaperSuite,
}

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

fn report_exit(rep: &Report, out: &mut String) -> i32 {
    out.push_str(&rep.to_string());
    if rep.passed() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

/// Runs a parsed command; returns `(exit code, stdout, stderr)`.
pub fn run(cmd: &Command) -> (i32, String, String) {
    let mut out = String::new();
    let mut err = String::new();
    let result: Result<i32> = (|| match cmd {
        Command::Verify { path } => Ok(report_exit(&cmd_verify(path)?, &mut out)),
        Command::Bicross { path } => match cmd_bicross(path)? {
            BicrossOutcome::Built(f) => {
                out.push_str(&f.to_json());
                Ok(EXIT_PASS)
            }
            BicrossOutcome::Rejected(rep) => Ok(report_exit(&rep, &mut out)),
        },
        Command::Classify2d { path } => Ok(report_exit(&cmd_classify2d(path)?, &mut out)),
        Command::Curvature { path } => {
            out.push_str(&cmd_curvature(path)?);
            Ok(EXIT_PASS)
        }
        Command::Geodesic { path, x0, horizon, tol } => {
            let (tr, labels) = cmd_geodesic(path, x0, *horizon, *tol)?;
            out.push_str(&tr.to_csv(&labels));
            err = format!("verdict: {:?}\n", tr.verdict);
            Ok(EXIT_PASS)
        }
        Command::PaperSuite => Ok(report_exit(&cmd_paper_suite(), &mut out)),
    })();
    match result {
        Ok(code) => (code, out, err),
        Err(e) => (EXIT_INPUT, out, format!("error: {e}\n")),
    }
}

/// Entry point used by the binary.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
        }
    };
    let (code, out, err) = run(&cli.command);
    print!("{out}");
    eprint!("{err}");
    code
}
