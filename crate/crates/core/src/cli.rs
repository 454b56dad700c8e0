//! The `frobext` command line: file-based inputs, deterministic JSON reports
//! and stable exit codes.
//!
//! Exit codes: 0 success / positive verdict, 1 negative verdict, 2 input
//! error, 3 resource cap, 4 internal consistency failure.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::codes::{check_extension_property, check_other_alphabet, Alphabet, Caps};
use crate::dualmod::{generating_character_search, FrobeniusBimodule};
use crate::error::{Error, Result};
use crate::extension::{
    certify, check_condition, construct_gamma, homogeneous_weight, TieBreak, DEFAULT_LATTICE_CAP,
};
use crate::finring::{build_ring, FiniteRing, RingSpec, DEFAULT_SIZE_CAP};
use crate::mobius::{build_cyclic_poset, mobius_by_character, mobius_report};
use crate::sgring::WeightFn;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "frobext", version, about = "Extension-property certificates for linear codes over finite Frobenius bimodules")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Size, units, additive structure and Frobenius status of a ring.
    RingInfo(RingArgs),
    /// Action tables and generating character of the character bimodule.
    Dual(RingArgs),
    /// The homogeneous weight on the character bimodule.
    Whom(RingArgs),
    /// Möbius function of the poset of cyclic right submodules.
    Mobius(RingArgs),
    /// Evaluate the submodule condition for a weight.
    Condition(WeightArgs),
    /// Construct gamma with w~ * gamma = epsilon.
    Gamma(GammaArgs),
    /// Full certificate w (x) gamma = w_Hom with every check re-verified.
    Certify(WeightArgs),
    /// Exhaustively check that code isometries extend to monomial maps.
    BruteForce(BruteArgs),
    /// The extension check over a submodule alphabet.
    OtherAlphabet(OtherArgs),
    /// Regenerate the upper-triangular 2x2 over F_2 worked example and
    /// compare it to the embedded reference tables.
    ExampleU2f2,
}

#[derive(Debug, Args)]
pub struct RingArgs {
    /// Ring description (JSON).
    #[arg(long)]
    pub ring: PathBuf,
    #[arg(long, default_value_t = DEFAULT_SIZE_CAP)]
    pub max_ring_size: usize,
}

#[derive(Debug, Args)]
pub struct WeightArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    /// Weight table (JSON object label -> rational), or `homogeneous`.
    #[arg(long)]
    pub weight: String,
    #[arg(long, default_value_t = DEFAULT_LATTICE_CAP)]
    pub max_submodules: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TieBreakArg {
    Min,
    Max,
}

#[derive(Debug, Args)]
pub struct GammaArgs {
    #[command(flatten)]
    pub weight: WeightArgs,
    /// Processing order among orbits with equally large left ideals.
    #[arg(long, value_enum, default_value_t = TieBreakArg::Min)]
    pub tie_break: TieBreakArg,
}

#[derive(Debug, Args)]
pub struct CapArgs {
    /// Code length.
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    #[arg(long)]
    pub max_codes: Option<usize>,
    #[arg(long)]
    pub max_isometries: Option<usize>,
    #[arg(long)]
    pub max_n: Option<usize>,
    /// Seed for the random correlation probes.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl CapArgs {
    fn caps(&self) -> Caps {
        let d = Caps::default();
        Caps {
            max_codes: self.max_codes.unwrap_or(d.max_codes),
            max_isometries: self.max_isometries.unwrap_or(d.max_isometries),
            max_n: self.max_n.unwrap_or(d.max_n),
            ..d
        }
    }
}

#[derive(Debug, Args)]
pub struct BruteArgs {
    #[command(flatten)]
    pub weight: WeightArgs,
    #[command(flatten)]
    pub caps: CapArgs,
}

#[derive(Debug, Args)]
pub struct OtherArgs {
    #[command(flatten)]
    pub weight: WeightArgs,
    #[command(flatten)]
    pub caps: CapArgs,
    /// Label of a generator of the alphabet (a left submodule); repeatable.
    #[arg(long = "generator", required = true)]
    pub generators: Vec<String>,
}

/// The result of one command before serialization.
#[derive(Debug)]
pub struct Outcome {
    pub command: &'static str,
    pub ring: String,
    pub positive: bool,
    pub report: Value,
}

impl Outcome {
    fn new(command: &'static str, ring: &FiniteRing, positive: bool, report: impl Serialize) -> Result<Self> {
        Ok(Outcome {
            command,
            ring: ring.name().to_string(),
            positive,
            report: serde_json::to_value(report)?,
        })
    }

    pub fn exit_code(&self) -> i32 {
        if self.positive {
            0
        } else {
            1
        }
    }

    /// The report document; keys are emitted in sorted order.
    pub fn to_json(&self) -> String {
        let doc = json!({
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "ring": self.ring,
            "verdict": self.positive,
            "report": self.report,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("values serialize");
        s.push('\n');
        s
    }
}

pub fn exit_code_for(err: &Error) -> i32 {
    match err.kind() {
        "input" => 2,
        "resource" => 3,
        "condition" => 1,
        _ => 4,
    }
}

/// One-line machine-readable error description.
pub fn error_line(err: &Error) -> String {
    json!({ "error": err.kind(), "message": err.to_string() }).to_string()
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))
}

fn load_ring(args: &RingArgs) -> Result<Arc<FiniteRing>> {
    let spec = RingSpec::from_json(&read(&args.ring)?)?;
    Ok(Arc::new(build_ring(&spec, args.max_ring_size)?))
}

fn load_module(args: &RingArgs) -> Result<Arc<FrobeniusBimodule>> {
    Ok(Arc::new(FrobeniusBimodule::dual(load_ring(args)?)?))
}

fn load_weight(args: &WeightArgs) -> Result<WeightFn> {
    let module = load_module(&args.ring)?;
    if args.weight == "homogeneous" {
        return Ok(homogeneous_weight(&module));
    }
    WeightFn::from_json(module, &read(Path::new(&args.weight))?)
}

#[derive(Serialize)]
struct RingInfo {
    name: String,
    size: usize,
    exponent: u64,
    additive_orders: Vec<u64>,
    units: Vec<String>,
    generating_character: Option<Vec<u64>>,
    labels: Vec<String>,
}

/// Runs a parsed command.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::RingInfo(args) => {
            let ring = load_ring(args)?;
            let chi = generating_character_search(&ring);
            let info = RingInfo {
                name: ring.name().to_string(),
                size: ring.size(),
                exponent: ring.exponent(),
                additive_orders: ring.decomposition().orders().to_vec(),
                units: ring.units().iter().map(|&u| ring.label(u).to_string()).collect(),
                generating_character: chi.as_ref().map(|c| c.exponents.clone()),
                labels: ring.labels().to_vec(),
            };
            Outcome::new("ring-info", &ring, true, info)
        }
        Command::Dual(args) => {
            let m = load_module(args)?;
            Outcome::new("dual", m.ring(), true, m.tables())
        }
        Command::Whom(args) => {
            let m = load_module(args)?;
            Outcome::new("whom", m.ring(), true, homogeneous_weight(&m).to_table()?)
        }
        Command::Mobius(args) => {
            let m = load_module(args)?;
            let poset = build_cyclic_poset(&m)?;
            let mu = mobius_by_character(&m, &poset)?;
            let report = json!({
                "module_is_cyclic": poset.module_is_cyclic(),
                "rows": mobius_report(&m, &poset, &mu),
            });
            Outcome::new("mobius", m.ring(), true, report)
        }
        Command::Condition(args) => {
            let w = load_weight(args)?;
            let report = check_condition(&w, args.max_submodules)?;
            Outcome::new("condition", w.module().ring(), report.holds, &report)
        }
        Command::Gamma(args) => {
            let w = load_weight(&args.weight)?;
            let order = match args.tie_break {
                TieBreakArg::Min => TieBreak::MinIndex,
                TieBreakArg::Max => TieBreak::MaxIndex,
            };
            let gamma = construct_gamma(&w, order)?;
            Outcome::new("gamma", w.module().ring(), true, gamma.entries())
        }
        Command::Certify(args) => {
            let w = load_weight(args)?;
            let cert = certify(&w, args.max_submodules)?;
            Outcome::new("certify", w.module().ring(), cert.valid(), &cert)
        }
        Command::BruteForce(args) => {
            let w = load_weight(&args.weight)?;
            let report = check_extension_property(&w, args.caps.n, &args.caps.caps(), args.caps.seed)?;
            Outcome::new("brute-force", w.module().ring(), report.all_extend, &report)
        }
        Command::OtherAlphabet(args) => {
            let w = load_weight(&args.weight)?;
            let m = Arc::clone(w.module());
            let gens = args
                .generators
                .iter()
                .map(|l| {
                    m.element_by_label(l)
                        .ok_or_else(|| Error::Input(format!("unknown element label {l:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            let alphabet = Arc::new(Alphabet::generated_by(m, &gens)?);
            let report = check_other_alphabet(&alphabet, &w, args.caps.n, &args.caps.caps(), args.caps.seed)?;
            Outcome::new("other-alphabet", w.module().ring(), report.extension.all_extend, &report)
        }
        Command::ExampleU2f2 => {
            let report = worked_example::regenerate()?;
            let ring = FiniteRing::upper_triangular(2, 2)?;
            let ok = report.matches_reference;
            Outcome::new("example-u2f2", &ring, ok, &report)
        }
    }
}

/// Parses `args`, runs the command, writes the report and returns the exit
/// code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = execute(&cli).and_then(|outcome| {
        let text = outcome.to_json();
        match &cli.out {
            Some(path) => std::fs::write(path, text)?,
            None => print!("{text}"),
        }
        Ok(outcome.exit_code())
    });
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("{}", error_line(&err));
            exit_code_for(&err)
        }
    }
}

/// The worked example over upper-triangular 2×2 matrices over `F_2`.
pub mod worked_example {
    use std::sync::Arc;

    use serde::Serialize;

    use crate::cyclo::Cyclo;
    use crate::dualmod::FrobeniusBimodule;
    use crate::error::Result;
    use crate::extension::{check_condition, DEFAULT_LATTICE_CAP};
    use crate::finring::FiniteRing;
    use crate::mobius::{build_cyclic_poset, mobius_by_character, mobius_by_recursion, mobius_report, MobiusRow};
    use crate::sgring::WeightFn;

    /// `(representative, |aR|, μ(0,aR))`.
    pub const MOBIUS: [(&str, usize, i64); 6] = [
        ("(0,0,0)", 1, 1),
        ("(0,0,1)", 2, -1),
        ("(1,0,0)", 2, -1),
        ("(0,1,0)", 4, 0),
        ("(1,0,1)", 4, 1),
        ("(1,1,0)", 4, 0),
    ];

    /// Two-sided unit orbits, i.e. the classes a bi-invariant weight must be
    /// constant on.
    pub const CLASSES: [&[&str]; 5] = [
        &["(0,0,0)"],
        &["(0,0,1)"],
        &["(0,1,0)", "(0,1,1)", "(1,1,0)", "(1,1,1)"],
        &["(1,0,0)"],
        &["(1,0,1)"],
    ];

    /// Coefficients of the condition sums on the nonzero classes
    /// `w(0,0,1), w(0,1,0), w(1,0,0), w(1,0,1)`, one row per nonzero right
    /// submodule in lattice order (the last row is the whole module).
    pub const CONDITION: [[i64; 4]; 6] = [
        [-1, 0, 0, 0],
        [0, 0, -1, 0],
        [-1, 0, 0, 0],
        [-1, 0, -1, 1],
        [-1, 0, 0, 0],
        [-1, 0, -1, 1],
    ];

    #[derive(Debug, Serialize)]
    pub struct ExampleReport {
        pub mobius: Vec<MobiusRow>,
        pub module_is_cyclic: bool,
        pub classes: Vec<Vec<String>>,
        pub condition_submodules: Vec<Vec<String>>,
        pub condition_coefficients: Vec<Vec<i64>>,
        pub matches_reference: bool,
    }

    pub fn module() -> Result<Arc<FrobeniusBimodule>> {
        Ok(Arc::new(FrobeniusBimodule::dual(Arc::new(FiniteRing::upper_triangular(2, 2)?))?))
    }

    /// Indicator weight of a two-sided orbit.
    fn indicator(m: &Arc<FrobeniusBimodule>, class: &[usize]) -> Result<WeightFn> {
        let values: Vec<i64> = m.elements().map(|a| i64::from(class.contains(&a))).collect();
        WeightFn::from_integers(Arc::clone(m), &values)
    }

    pub fn regenerate() -> Result<ExampleReport> {
        let m = module()?;
        let poset = build_cyclic_poset(&m)?;
        let mu = mobius_by_character(&m, &poset)?;
        let recursive = mobius_by_recursion(&poset, m.exponent());
        let mobius = mobius_report(&m, &poset, &mu);

        let orbits = m.two_sided_unit_orbits();
        let classes: Vec<Vec<String>> = orbits
            .iter()
            .map(|o| o.iter().map(|&a| m.label(a).to_string()).collect())
            .collect();

        // the condition sums are linear in w: evaluate on class indicators
        let nonzero: Vec<&Vec<usize>> = orbits.iter().filter(|o| o[0] != m.zero()).collect();
        let mut columns = Vec::new();
        let mut submodules = Vec::new();
        for class in &nonzero {
            let report = check_condition(&indicator(&m, class)?, DEFAULT_LATTICE_CAP)?;
            submodules = report.rows.iter().map(|r| r.generators.clone()).collect();
            columns.push(
                report
                    .rows
                    .iter()
                    .map(|r| {
                        let v = r.character_sum.as_integer().expect("integral sums");
                        i64::try_from(v).expect("small sums")
                    })
                    .collect::<Vec<_>>(),
            );
        }
        let coefficients: Vec<Vec<i64>> = (0..submodules.len())
            .map(|row| columns.iter().map(|c| c[row]).collect())
            .collect();

        let reference_mobius: Vec<MobiusRow> = MOBIUS
            .iter()
            .map(|&(rep, size, mu)| MobiusRow {
                representative: rep.to_string(),
                size,
                mu,
            })
            .collect();
        let reference_classes: Vec<Vec<String>> = CLASSES
            .iter()
            .map(|c| c.iter().map(|s| s.to_string()).collect())
            .collect();
        let matches_reference = mobius == reference_mobius
            && mu == recursive
            && !poset.module_is_cyclic()
            && classes == reference_classes
            && coefficients == CONDITION.iter().map(|r| r.to_vec()).collect::<Vec<_>>()
            && mu.values().iter().all(|v: &Cyclo| v.as_integer().is_some());

        Ok(ExampleReport {
            mobius,
            module_is_cyclic: poset.module_is_cyclic(),
            classes,
            condition_submodules: submodules,
            condition_coefficients: coefficients,
            matches_reference,
        })
    }
}
