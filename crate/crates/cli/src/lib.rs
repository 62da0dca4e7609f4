//! Command-line front end. Every action calls one library routine and
//! formats its return value; nothing is computed here.
//!
//! Output formats:
//!
//! * `table` (default): an optional aligned table, then human-readable
//!   summary lines.
//! * `lines`: one `key=value` pair per line, in a fixed order per action.
//!
//! Exit codes: 0 computed, 1 boolean verdict false, 2 input or usage
//! error, 3 resource budget exceeded.

use std::fmt::Display;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use pgideal::brieskorn::{self, BrieskornDescriptor};
use pgideal::hilbert::{self, parse_datum_file, NumericalIdealDatum};
use pgideal::lattice::{self, parse_graph_file, Cycle, GraphFile};
use pgideal::polyalg::{self, Budget, PolyError, SparsePolynomial};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "pgideal",
    about = "Exact certification of p_g-ideals on surface singularities"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Lines,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Resolution dual graphs and cycles.
    Graph(GraphArgs),
    /// Numerical ideal data and normal Hilbert coefficients.
    Hilbert(HilbertArgs),
    /// Brieskorn-Pham and Fermat surfaces.
    Brieskorn {
        #[command(subcommand)]
        action: BrieskornAction,
    },
    /// Extended Rees algebras and double points.
    Rees {
        #[command(subcommand)]
        action: ReesAction,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GraphAction {
    Check,
    Fundamental,
    Canonical,
    Antinef,
    Zperp,
    Rational,
}

#[derive(Debug, Args)]
struct GraphArgs {
    #[arg(value_enum)]
    action: GraphAction,
    file: PathBuf,
    /// Named cycle from the file (default: the first one).
    #[arg(long)]
    cycle: Option<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum HilbertAction {
    Coeffs,
    Pgtest,
    Colength,
    N0,
    Epsilon,
    Additivity,
    Multirees,
}

#[derive(Debug, Args)]
struct HilbertArgs {
    #[arg(value_enum)]
    action: HilbertAction,
    file: PathBuf,
    /// Power for `colength` and `epsilon`.
    #[arg(long, default_value_t = 1)]
    n: u64,
    /// Named datum from the file (default: the first one).
    #[arg(long)]
    datum: Option<String>,
    /// Second datum for `multirees` (default: the one after the first).
    #[arg(long = "with")]
    with: Option<String>,
    /// Geometric genera of the `Z^perp` components, for `additivity`.
    #[arg(long, value_delimiter = ',')]
    components: Vec<u64>,
}

#[derive(Debug, Subcommand)]
enum BrieskornAction {
    /// Colength table of the Fermat surface of degree `e`.
    Fermat {
        e: u64,
        #[arg(long)]
        nmax: Option<u64>,
    },
    /// Geometric genus of `x^p + y^q + z^r`.
    Pg { p: u64, q: u64, r: u64 },
    /// Datum line of the maximal ideal of the Fermat surface.
    Datum { e: u64 },
}

#[derive(Debug, Subcommand)]
enum ReesAction {
    /// Extended Rees presentation `F` of `f(x, y, z)`.
    #[command(name = "presentF")]
    PresentF { poly: String },
    /// Jacobian-criterion `(R1)` test of a hypersurface.
    R1 {
        poly: String,
        /// Largest Groebner basis allowed.
        #[arg(long)]
        max_basis: Option<usize>,
        /// Most critical pairs processed.
        #[arg(long)]
        max_pairs: Option<usize>,
    },
    /// p_g-ideal test for `m` on `x^2 + g(y, z)`.
    Doublepoint { g: String },
    /// Stability `m^2 = (y, z) m` on `x^2 + g(y, z)`.
    Stability {
        g: String,
        #[arg(long = "D")]
        degree_bound: Option<u32>,
    },
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Budget(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Budget(_) => EXIT_BUDGET,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Budget(m) => m,
        }
    }
}

fn input(e: impl Display) -> CliError {
    CliError::Input(e.to_string())
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::Budget(_) => CliError::Budget(e.to_string()),
            other => input(other),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// What an action produced, before formatting.
#[derive(Debug, Default)]
struct Report {
    table: Option<(Vec<String>, Vec<Vec<String>>)>,
    summary: Vec<String>,
    fields: Vec<(String, String)>,
    verdict: Option<bool>,
}

impl Report {
    fn say(&mut self, line: impl Into<String>) -> &mut Self {
        self.summary.push(line.into());
        self
    }

    fn field(&mut self, key: impl Into<String>, value: impl Display) -> &mut Self {
        self.fields.push((key.into(), value.to_string()));
        self
    }

    fn render(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Lines => {
                for (k, v) in &self.fields {
                    writeln!(out, "{k}={v}")?;
                }
            }
            Format::Table => {
                if let Some((header, rows)) = &self.table {
                    write_table(out, header, rows)?;
                }
                for line in &self.summary {
                    writeln!(out, "{line}")?;
                }
            }
        }
        Ok(())
    }
}

fn write_table(
    out: &mut dyn Write,
    header: &[String],
    rows: &[Vec<String>],
) -> std::io::Result<()> {
    let width = |i: usize| {
        rows.iter()
            .map(|r| r[i].chars().count())
            .chain([header[i].chars().count()])
            .max()
            .unwrap_or(0)
    };
    let widths: Vec<usize> = (0..header.len()).map(width).collect();
    let line = |cells: &[String]| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{}{c}", " ".repeat(w - c.chars().count())))
            .collect::<Vec<_>>()
            .join("  ")
    };
    writeln!(out, "{}", line(header))?;
    for r in rows {
        writeln!(out, "{}", line(r))?;
    }
    Ok(())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> CliResult<GraphFile> {
    let file =
        parse_graph_file(&read(path)?).map_err(|e| input(format!("{}: {e}", path.display())))?;
    file.graph
        .validate()
        .map_err(|e| input(format!("{}: {e}", path.display())))?;
    Ok(file)
}

fn pick_cycle<'a>(file: &'a GraphFile, name: Option<&'a str>) -> CliResult<(&'a str, &'a Cycle)> {
    match name {
        Some(n) => file
            .cycle(n)
            .map(|c| (n, c))
            .ok_or_else(|| input(format!("no cycle named `{n}`"))),
        None => file
            .cycles
            .first()
            .map(|(n, c)| (n.as_str(), c))
            .ok_or_else(|| input("the graph file defines no cycle")),
    }
}

fn graph(args: &GraphArgs) -> CliResult<Report> {
    let file = load_graph(&args.file)?;
    let g = &file.graph;
    let mut r = Report::default();
    match args.action {
        GraphAction::Check => {
            let minors = lattice::leading_principal_minors(g);
            let minors: Vec<String> = minors.iter().map(ToString::to_string).collect();
            r.say(format!(
                "valid graph: {} vertices, {} edges",
                g.len(),
                g.edges().len()
            ))
            .say(format!("leading principal minors: {}", minors.join(", ")))
            .field("vertices", g.len())
            .field("edges", g.edges().len())
            .field("negative_definite", true)
            .field("minors", minors.join(","));
        }
        GraphAction::Fundamental => {
            let z = lattice::fundamental_cycle(g).map_err(input)?;
            let zz = lattice::pairing(g, &z, &z).map_err(input)?;
            let pa = lattice::arithmetic_genus(g, &z).map_err(input)?;
            let shown = z.display_with(g).to_string();
            r.say(format!("fundamental cycle: {shown}"))
                .say(format!("Z^2 = {zz}"))
                .say(format!("p_a = {pa}"))
                .field("cycle", shown)
                .field("zz", zz)
                .field("pa", pa);
        }
        GraphAction::Canonical => {
            let zk = lattice::canonical_cycle(g).map_err(input)?;
            let shown = zk.display_with(g).to_string();
            r.say(format!("canonical cycle: {shown}"))
                .field("canonical", shown)
                .field("integral", zk.is_integral());
        }
        GraphAction::Antinef => {
            let (name, z) = pick_cycle(&file, args.cycle.as_deref())?;
            let already = lattice::is_anti_nef(g, z).map_err(input)?;
            let closure = lattice::anti_nef_closure(g, z).map_err(input)?;
            let zz = lattice::pairing(g, &closure, &closure).map_err(input)?;
            let zk = lattice::canonical_pairing(g, &closure).map_err(input)?;
            let shown = closure.display_with(g).to_string();
            r.say(format!("cycle {name}: {}", z.display_with(g)))
                .say(format!("anti-nef: {}", yes_no(already)))
                .say(format!("anti-nef closure: {shown}"))
                .say(format!("Z^2 = {zz}, Z.K = {zk}"))
                .field("cycle", name)
                .field("anti_nef", already)
                .field("closure", shown)
                .field("zz", zz)
                .field("zk", zk);
        }
        GraphAction::Zperp => {
            let (name, z) = pick_cycle(&file, args.cycle.as_deref())?;
            let components = lattice::z_perp_positions(g, z).map_err(input)?;
            r.say(format!(
                "cycle {name}: {} components orthogonal to Z",
                components.len()
            ))
            .field("cycle", name)
            .field("components", components.len());
            for (i, comp) in components.iter().enumerate() {
                let ids: Vec<&str> = comp.iter().map(|&p| g.vertices()[p].id.as_str()).collect();
                r.say(format!("  {}", ids.join(" ")))
                    .field(format!("component.{i}"), ids.join(","));
            }
        }
        GraphAction::Rational => {
            let zf = lattice::fundamental_cycle(g).map_err(input)?;
            let pa = lattice::arithmetic_genus(g, &zf).map_err(input)?;
            let rational = lattice::artin_rational_test(g).map_err(input)?;
            r.say(format!("rational: {} (p_a(Z_f) = {pa})", yes_no(rational)))
                .field("rational", rational)
                .field("pa", pa);
            r.verdict = Some(rational);
        }
    }
    Ok(r)
}

fn pick_datum<'a>(
    data: &'a [NumericalIdealDatum],
    name: Option<&str>,
) -> CliResult<&'a NumericalIdealDatum> {
    match name {
        Some(n) => data
            .iter()
            .find(|d| d.label() == Some(n))
            .ok_or_else(|| input(format!("no datum named `{n}`"))),
        None => data.first().ok_or_else(|| input("the datum file is empty")),
    }
}

fn hilbert(args: &HilbertArgs) -> CliResult<Report> {
    let text = read(&args.file)?;
    let file =
        parse_datum_file(&text).map_err(|e| input(format!("{}: {e}", args.file.display())))?;
    let d = pick_datum(&file.data, args.datum.as_deref())?;
    let label = d.label().unwrap_or("d");
    let mut r = Report::default();
    match args.action {
        HilbertAction::Coeffs => {
            let c = d.coefficients().map_err(input)?;
            r.say(format!("{label}: normal Hilbert coefficients {c}"))
                .field("datum", label)
                .field("e0bar", c.e0bar)
                .field("e1bar", c.e1bar)
                .field("e2bar", c.e2bar);
        }
        HilbertAction::Pgtest => {
            let report = d.pg_ideal_test().map_err(input)?;
            let [a, b, c] = report.evidence();
            r.say(format!("{label}: p_g-ideal: {}", yes_no(report.verdict())))
                .say(format!(
                    "  h1[1] = p_g        {} ({} vs {})",
                    yes_no(a),
                    report.h1_1,
                    report.pg
                ))
                .say(format!(
                    "  e1bar = e0 - l(A/I) {} ({} vs {})",
                    yes_no(b),
                    report.e1bar,
                    report.e0_minus_colength
                ))
                .say(format!(
                    "  e2bar = 0          {} ({})",
                    yes_no(c),
                    report.e2bar
                ))
                .field("datum", label)
                .field("pg_ideal", report.verdict())
                .field("h1_1", report.h1_1)
                .field("pg", report.pg)
                .field("e1bar", report.e1bar)
                .field("e0_minus_colength", report.e0_minus_colength)
                .field("e2bar", report.e2bar);
            r.verdict = Some(report.verdict());
        }
        HilbertAction::Colength => {
            let value = d.kato_colength(args.n).map_err(input)?;
            r.say(format!("{label}: l(A / closure(I^{})) = {value}", args.n))
                .field("datum", label)
                .field("n", args.n)
                .field("colength", value);
        }
        HilbertAction::N0 => {
            let n0 = d.stabilization_index();
            r.say(format!("{label}: n0={n0}"))
                .field("datum", label)
                .field("n0", n0);
        }
        HilbertAction::Epsilon => {
            let n = usize::try_from(args.n).map_err(input)?;
            let eps = hilbert::epsilon(d.pg(), d.h1(1), d.h1(n), d.h1(n + 1)).map_err(input)?;
            r.say(format!("{label}: epsilon(Z, {n}Z) = {eps}"))
                .field("datum", label)
                .field("n", n)
                .field("epsilon", eps);
        }
        HilbertAction::Additivity => {
            let e2bar = d.coefficients().map_err(input)?.e2bar;
            let pg = u64::try_from(d.pg()).map_err(input)?;
            let e2 = u64::try_from(e2bar).map_err(input)?;
            let holds = hilbert::pg_additivity_check(pg, e2, &args.components);
            let sum: u64 = args.components.iter().sum();
            r.say(format!(
                "{label}: p_g = e2bar + sum of component p_g: {} ({pg} vs {e2} + {sum})",
                yes_no(holds)
            ))
            .field("datum", label)
            .field("additive", holds)
            .field("pg", pg)
            .field("e2bar", e2)
            .field("components_pg", sum);
            r.verdict = Some(holds);
        }
        HilbertAction::Multirees => {
            let other = match args.with.as_deref() {
                Some(name) => pick_datum(&file.data, Some(name))?,
                None => {
                    let at = file
                        .data
                        .iter()
                        .position(|x| std::ptr::eq(x, d))
                        .unwrap_or(0);
                    file.data.get(at + 1).unwrap_or(d)
                }
            };
            let other_label = other.label().unwrap_or("d");
            let verdict = hilbert::multi_rees_verdict(d, other).map_err(input)?;
            r.say(format!(
                "R({label}, {other_label}) Cohen-Macaulay and normal: {}",
                yes_no(verdict)
            ))
            .field("first", label)
            .field("second", other_label)
            .field("cohen_macaulay_normal", verdict);
            r.verdict = Some(verdict);
        }
    }
    Ok(r)
}

fn brieskorn(action: &BrieskornAction) -> CliResult<Report> {
    let mut r = Report::default();
    match *action {
        BrieskornAction::Fermat { e, nmax } => {
            let d = brieskorn::fermat_datum(e).map_err(input)?;
            let nmax = nmax.unwrap_or(2 * e);
            let mut rows = Vec::new();
            let mut all = true;
            for n in 0..=nmax {
                let count = brieskorn::fermat_colength(e, n);
                let closed = brieskorn::fermat_closed_form(e, n);
                let ok = i64::try_from(count).map(|c| c == closed).unwrap_or(false);
                all &= ok;
                rows.push(vec![
                    n.to_string(),
                    count.to_string(),
                    closed.to_string(),
                    if ok { "✓" } else { "✗" }.to_string(),
                ]);
                r.field(format!("colength.{n}"), count)
                    .field(format!("closed.{n}"), closed);
            }
            let c = d.coefficients().map_err(input)?;
            let n0 = d.stabilization_index();
            r.table = Some((
                ["n", "colength", "closed form", "match"]
                    .map(String::from)
                    .into(),
                rows,
            ));
            r.say(format!("coefficients {c}"))
                .say(format!("n0={n0}"))
                .field("e0bar", c.e0bar)
                .field("e1bar", c.e1bar)
                .field("e2bar", c.e2bar)
                .field("n0", n0)
                .field("match", all);
            r.verdict = Some(all);
        }
        BrieskornAction::Pg { p, q, r: s } => {
            let b = BrieskornDescriptor::new(p, q, s).map_err(input)?;
            let (wx, wy, wz) = b.weights();
            r.say(format!("x^{p} + y^{q} + z^{s}: p_g = {}", b.weighted_pg()))
                .say(format!(
                    "weights ({wx}, {wy}, {wz}), degree {}, a = {}",
                    b.degree(),
                    b.a_invariant()
                ))
                .field("pg", b.weighted_pg())
                .field("weights", format!("{wx},{wy},{wz}"))
                .field("degree", b.degree())
                .field("a", b.a_invariant());
        }
        BrieskornAction::Datum { e } => {
            let d = brieskorn::fermat_datum(e).map_err(input)?;
            r.say(d.to_string())
                .field("zz", d.zz())
                .field("zk", d.zk())
                .field("pg", d.pg())
                .field(
                    "h1",
                    d.h1_prefix()
                        .iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(","),
                );
        }
    }
    Ok(r)
}

fn parse_poly(s: &str) -> CliResult<SparsePolynomial> {
    SparsePolynomial::parse(s).map_err(|e| input(format!("`{s}`: {e}")))
}

fn rees(action: &ReesAction) -> CliResult<Report> {
    let mut r = Report::default();
    match action {
        ReesAction::PresentF { poly } => {
            let f = polyalg::extended_rees_f(&parse_poly(poly)?)?;
            r.say(format!("F = {f}")).field("F", f);
        }
        ReesAction::R1 {
            poly,
            max_basis,
            max_pairs,
        } => {
            let mut budget = Budget::default();
            budget.max_basis = max_basis.unwrap_or(budget.max_basis);
            budget.max_pairs = max_pairs.unwrap_or(budget.max_pairs);
            let report = polyalg::r1_report_with_budget(&parse_poly(poly)?, budget)?;
            let pass = report.passes();
            let gens: Vec<String> = report.generators.iter().map(ToString::to_string).collect();
            r.say(format!(
                "R1: {} (singular locus dimension {})",
                if pass { "PASS" } else { "FAIL" },
                report.singular_dimension
            ))
            .field("r1", pass)
            .field("singular_dimension", report.singular_dimension)
            .field("hypersurface_dimension", report.hypersurface_dimension)
            .field("jacobian", gens.join(","));
            r.verdict = Some(pass);
        }
        ReesAction::Doublepoint { g } => {
            let g = parse_poly(g)?;
            let verdict = polyalg::double_point_pg_test(&g)?;
            r.say(format!("x^2 + {g}: m is a p_g-ideal: {}", yes_no(verdict)))
                .field("pg_ideal", verdict);
            r.verdict = Some(verdict);
        }
        ReesAction::Stability { g, degree_bound } => {
            let g = parse_poly(g)?;
            let bound = match degree_bound {
                Some(d) => *d,
                None => polyalg::default_stability_bound(&g)?,
            };
            let stable = polyalg::double_point_stability(&g, bound)?;
            r.say(format!(
                "x^2 + {g}: m^2 = (y, z) m: {} (D = {bound})",
                yes_no(stable)
            ))
            .field("stable", stable)
            .field("D", bound);
            r.verdict = Some(stable);
        }
    }
    Ok(r)
}

/// Parses `args` (including the program name), runs the action and writes
/// its output to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let result = match &cli.command {
        Command::Graph(args) => graph(args),
        Command::Hilbert(args) => hilbert(args),
        Command::Brieskorn { action } => brieskorn(action),
        Command::Rees { action } => rees(action),
    };
    match result {
        Ok(report) => {
            if report.render(cli.format, out).is_err() {
                return EXIT_INPUT;
            }
            match report.verdict {
                Some(false) => EXIT_FALSE,
                _ => EXIT_OK,
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.exit_code()
        }
    }
}
