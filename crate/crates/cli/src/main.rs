use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use sympres::arrangement::format::{read_arrangement_file, serialize_arrangement};
use sympres::arrangement::{IntersectionLattice, LatticeOptions};
use sympres::catalog::catalog;
use sympres::counting::{count_resolutions_with, wreath_count_closed_form, NamikawaWeylData};
use sympres::group::{analyze, read_group_file, GroupAnalysis};
use sympres::matroid::MatroidOptions;
use sympres::oracle::{run_oracle, OracleKind, OracleRecord};
use sympres::report::{to_json, ArrangementReport};
use sympres::roots::{affine_catalan, catalan_arrangement, CatalanSpec, DynkinType, WeylTypeData};
use sympres::selftest::{run_selftest, SelftestOptions};
use sympres::{Arrangement, Error, Result};

#[derive(Parser)]
#[command(
    name = "sympres",
    version,
    about = "Count symplectic resolutions via hyperplane arrangements"
)]
struct Cli {
    #[command(flatten)]
    caps: Caps,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Debug, Serialize)]
#[command(next_help_heading = "Computation caps")]
struct Caps {
    /// Maximum number of flats in an intersection lattice
    #[arg(long, global = true, env = "SYMPRES_MAX_FLATS", default_value_t = LatticeOptions::DEFAULT_MAX_FLATS)]
    max_flats: usize,
    /// Maximum number of independent sets visited by the nbc oracle
    #[arg(long, global = true, env = "SYMPRES_MAX_SUBSETS", default_value_t = MatroidOptions::default().max_subsets)]
    max_subsets: u64,
    /// Maximum q^l for finite-field point counting
    #[arg(long, global = true, env = "SYMPRES_MAX_POINTS", default_value_t = MatroidOptions::default().max_points)]
    max_points: u64,
    /// Maximum number of minors examined when choosing good primes
    #[arg(long, global = true, env = "SYMPRES_MAX_MINORS", default_value_t = MatroidOptions::default().max_minors)]
    max_minors: u64,
    /// Maximum group order during enumeration
    #[arg(long, global = true, env = "SYMPRES_MAX_GROUP_ORDER", default_value_t = sympres::group::DEFAULT_MAX_ORDER)]
    max_group_order: usize,
}

impl Caps {
    fn lattice(&self) -> LatticeOptions {
        LatticeOptions {
            max_flats: self.max_flats,
        }
    }

    fn matroid(&self) -> MatroidOptions {
        MatroidOptions {
            max_subsets: self.max_subsets,
            max_points: self.max_points,
            max_minors: self.max_minors,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Intersection lattice invariants of an arrangement file
    Analyze {
        /// Arrangement file
        file: PathBuf,
        /// Cross-check the lattice with an independent method
        #[arg(long, value_enum, default_value_t = Oracle::None)]
        oracle: Oracle,
        /// Print a JSON report
        #[arg(long)]
        json: bool,
    },
    /// Cone over an arrangement file
    Cone {
        /// Arrangement file
        file: PathBuf,
        /// Write the coned arrangement here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print a JSON report
        #[arg(long)]
        json: bool,
    },
    /// Catalan-type arrangement of a root system
    Catalan {
        /// ADE label such as A2, D4 or E8
        #[arg(long = "type")]
        ty: DynkinType,
        /// Wreath parameter, at least 1
        #[arg(long)]
        n: u64,
        /// Emit the affine arrangement instead of its cone
        #[arg(long)]
        affine: bool,
        /// Write the arrangement here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print a JSON report
        #[arg(long)]
        json: bool,
    },
    /// Number of symplectic resolutions: dim H*(complement) / |W|
    Count {
        /// Built-in entry: q8d8, g4 or wreath:TYPE:N
        #[arg(long, conflicts_with_all = ["arrangement", "weyl_order"], required_unless_present = "arrangement")]
        catalog: Option<String>,
        /// Central arrangement file (needs --weyl-order)
        #[arg(long, requires = "weyl_order")]
        arrangement: Option<PathBuf>,
        /// Order of the Weyl group W to divide by
        #[arg(long)]
        weyl_order: Option<u64>,
        /// Cross-check the lattice with an independent method
        #[arg(long, value_enum, default_value_t = Oracle::None)]
        oracle: Oracle,
        /// Print a JSON report
        #[arg(long)]
        json: bool,
    },
    /// Closed-form count for the wreath product S_n ≀ G
    WreathFormula {
        /// ADE label such as A2, D4 or E8
        #[arg(long = "type")]
        ty: DynkinType,
        /// Wreath parameter, at least 1
        #[arg(long)]
        n: u64,
        /// Print a JSON report
        #[arg(long)]
        json: bool,
    },
    /// Finite symplectic group computations
    Group {
        #[command(subcommand)]
        command: GroupCommand,
    },
    /// Check every catalog entry against its expected values
    Selftest {
        /// Oracles to skip
        #[arg(long, value_enum)]
        skip: Vec<Skip>,
        /// Print a JSON report
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum GroupCommand {
    /// Reflections, minimal parabolics and the orbit/class matching
    Analyze {
        /// Group file
        file: PathBuf,
        /// Print a JSON report
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Oracle {
    Nbc,
    Ff,
    None,
}

impl From<Oracle> for OracleKind {
    fn from(o: Oracle) -> Self {
        match o {
            Oracle::Nbc => OracleKind::Nbc,
            Oracle::Ff => OracleKind::Ff,
            Oracle::None => OracleKind::None,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Skip {
    Ff,
    Nbc,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    command: &'a [String],
    caps: &'a Caps,
    result: T,
    elapsed_ms: u128,
}

/// What a command produced: text for humans, a JSON value, an exit code.
struct Output {
    text: String,
    json: serde_json::Value,
    code: u8,
}

impl Output {
    fn new<T: Serialize>(text: String, value: &T) -> Self {
        Output {
            text,
            json: serde_json::to_value(value).expect("serializable report"),
            code: 0,
        }
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    // usage errors exit with 1 (clap's default of 2 is the cap exit code here)
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    let json = match &cli.command {
        Command::Analyze { json, .. }
        | Command::Cone { json, .. }
        | Command::Catalan { json, .. }
        | Command::Count { json, .. }
        | Command::WreathFormula { json, .. }
        | Command::Selftest { json, .. } => *json,
        Command::Group {
            command: GroupCommand::Analyze { json, .. },
        } => *json,
    };
    match run(&cli) {
        Ok(out) => {
            if json {
                let env = Envelope {
                    command: &args[1..],
                    caps: &cli.caps,
                    result: out.json,
                    elapsed_ms: start.elapsed().as_millis(),
                };
                print!("{}", to_json(&env));
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: &Cli) -> Result<Output> {
    let caps = &cli.caps;
    match &cli.command {
        Command::Analyze { file, oracle, .. } => {
            let a = read_arrangement_file(file)?;
            analyze_arrangement(&a, (*oracle).into(), caps)
        }
        Command::Cone { file, out, .. } => {
            let a = read_arrangement_file(file)?;
            emit_arrangement(&a.cone(), out.as_deref())
        }
        Command::Catalan {
            ty, n, affine, out, ..
        } => {
            let spec = CatalanSpec::new(*ty, *n)?;
            let a = if *affine {
                affine_catalan(&spec)
            } else {
                catalan_arrangement(&spec)
            };
            emit_arrangement(&a, out.as_deref())
        }
        Command::Count {
            catalog: name,
            arrangement,
            weyl_order,
            oracle,
            ..
        } => {
            let (a, w) = match (name, arrangement, weyl_order) {
                (Some(name), _, _) => {
                    let e = catalog(name)?;
                    (e.arrangement, e.weyl)
                }
                (None, Some(path), Some(k)) => {
                    (read_arrangement_file(path)?, NamikawaWeylData::given(*k)?)
                }
                _ => {
                    return Err(Error::invalid(
                        "give --catalog or --arrangement with --weyl-order",
                    ))
                }
            };
            count(&a, &w, (*oracle).into(), caps)
        }
        Command::WreathFormula { ty, n, .. } => wreath_formula(*ty, *n),
        Command::Group {
            command: GroupCommand::Analyze { file, .. },
        } => group_analyze(file, caps),
        Command::Selftest { skip, .. } => {
            let opts = SelftestOptions {
                skip_ff: skip.contains(&Skip::Ff),
                skip_nbc: skip.contains(&Skip::Nbc),
                lattice: caps.lattice(),
                matroid: caps.matroid(),
                max_group_order: Some(caps.max_group_order),
            };
            let report = run_selftest(&opts)?;
            let mut out = Output::new(report.to_string(), &report);
            out.code = report.exit_code() as u8;
            Ok(out)
        }
    }
}

fn oracle_text(rec: &OracleRecord) -> String {
    let mut s = String::new();
    let verdict = if rec.agrees { "agrees" } else { "DISAGREES" };
    write!(s, "oracle {}        {verdict}", rec.oracle).unwrap();
    if let Some(b) = &rec.nbc_betti {
        write!(s, " (nbc counts {b:?})").unwrap();
    }
    for c in &rec.finite_field {
        write!(
            s,
            " (q={}: {} points, chi(q)={})",
            c.q, c.points, c.chi_at_q
        )
        .unwrap();
    }
    s.push('\n');
    s
}

#[derive(Serialize)]
struct AnalyzeResult {
    #[serde(flatten)]
    report: ArrangementReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<OracleRecord>,
}

fn check_oracle(out: &mut Output, rec: &Option<OracleRecord>) {
    if let Some(r) = rec {
        if !r.agrees {
            out.code = 3;
        }
    }
}

fn analyze_arrangement(a: &Arrangement, oracle: OracleKind, caps: &Caps) -> Result<Output> {
    let lattice = IntersectionLattice::build(a, &caps.lattice())?;
    let report = ArrangementReport::new(a, &lattice);
    let rec = run_oracle(a, &lattice, oracle, &caps.matroid())?;
    let mut text = format!("{report}\n");
    if let Some(r) = &rec {
        text.push_str(&oracle_text(r));
    }
    let mut out = Output::new(
        text,
        &AnalyzeResult {
            report,
            oracle: rec.clone(),
        },
    );
    check_oracle(&mut out, &rec);
    Ok(out)
}

#[derive(Serialize)]
struct ArrangementText {
    num_hyperplanes: usize,
    ambient_dim: usize,
    arrangement: String,
}

fn emit_arrangement(a: &Arrangement, out: Option<&Path>) -> Result<Output> {
    let text = serialize_arrangement(a);
    let value = ArrangementText {
        num_hyperplanes: a.len(),
        ambient_dim: a.ambient_dim(),
        arrangement: text.clone(),
    };
    let shown = match out {
        Some(path) => {
            std::fs::write(path, &text)?;
            format!("wrote {} hyperplanes to {}\n", a.len(), path.display())
        }
        None => text,
    };
    Ok(Output::new(shown, &value))
}

fn count(a: &Arrangement, w: &NamikawaWeylData, oracle: OracleKind, caps: &Caps) -> Result<Output> {
    let lattice = IntersectionLattice::build(a, &caps.lattice())?;
    let mut report = count_resolutions_with(a, &lattice, w)?;
    report.oracle = run_oracle(a, &lattice, oracle, &caps.matroid())?;
    let mut text = format!("{}\n", report.arrangement);
    writeln!(text, "|W|              {}", report.weyl_order).unwrap();
    writeln!(text, "resolutions      {}", report.resolution_count).unwrap();
    if let Some(r) = &report.oracle {
        text.push_str(&oracle_text(r));
    }
    let rec = report.oracle.clone();
    let mut out = Output::new(text, &report);
    check_oracle(&mut out, &rec);
    Ok(out)
}

#[derive(Serialize)]
struct WreathResult {
    #[serde(rename = "type")]
    ty: DynkinType,
    n: u64,
    coxeter_number: u64,
    exponents: Vec<u64>,
    #[serde(serialize_with = "sympres::report::bigint_as_number")]
    count: num_bigint::BigInt,
}

fn wreath_formula(ty: DynkinType, n: u64) -> Result<Output> {
    let data = WeylTypeData::new(ty)?;
    let c = wreath_count_closed_form(&data, n)?;
    let text = format!(
        "type {ty}, n = {n}, h = {}, exponents {:?}\nresolutions      {c}\n",
        data.coxeter_number, data.exponents
    );
    Ok(Output::new(
        text,
        &WreathResult {
            ty,
            n,
            coxeter_number: data.coxeter_number,
            exponents: data.exponents.clone(),
            count: c,
        },
    ))
}

fn group_text(a: &GroupAnalysis) -> String {
    let mut s = String::new();
    writeln!(s, "field            {}", a.field).unwrap();
    writeln!(s, "dim V            {}", a.dim).unwrap();
    writeln!(s, "order            {}", a.order).unwrap();
    writeln!(s, "reflections      {}", a.num_reflections).unwrap();
    writeln!(s, "dim c (classes)  {}", a.reflection_classes.len()).unwrap();
    for (i, c) in a.reflection_classes.iter().enumerate() {
        writeln!(
            s,
            "  S{i}: size {}, representative [{}]",
            c.size, c.representative
        )
        .unwrap();
    }
    writeln!(s, "minimal parabolic classes {}", a.parabolics.len()).unwrap();
    for (i, p) in a.parabolics.iter().enumerate() {
        writeln!(
            s,
            "  B{i}: {} (|H| = {}), {} conjugates, |N| = {}, |Xi| = {}, action {}, {} orbits",
            p.label,
            p.order,
            p.conjugates,
            p.normalizer_order,
            p.xi_order,
            if p.xi_acts_trivially {
                "trivial"
            } else {
                "nontrivial"
            },
            p.orbit_count
        )
        .unwrap();
    }
    writeln!(s, "orbit -> class matching").unwrap();
    for m in &a.zeta.matches {
        let target = m
            .reflection_class
            .map_or("none".to_string(), |c| format!("S{c}"));
        writeln!(
            s,
            "  B{} orbit of size {} [{}] -> {target}",
            m.parabolic, m.orbit_size, m.orbit_representative
        )
        .unwrap();
    }
    writeln!(
        s,
        "bijection        {}",
        if a.zeta.holds { "yes" } else { "NO" }
    )
    .unwrap();
    for p in &a.zeta.problems {
        writeln!(s, "  {p}").unwrap();
    }
    writeln!(
        s,
        "invariants       {}",
        if a.checks.all_pass() { "ok" } else { "FAILED" }
    )
    .unwrap();
    s
}

fn group_analyze(file: &Path, caps: &Caps) -> Result<Output> {
    let mut g = read_group_file(file)?;
    g.enumerate(caps.max_group_order)?;
    let a = analyze(&g)?;
    let mut out = Output::new(group_text(&a), &a);
    if !a.zeta.holds || !a.checks.all_pass() {
        out.code = 3;
    }
    Ok(out)
}
