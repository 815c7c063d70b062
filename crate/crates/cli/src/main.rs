use clap::{Args, Parser, Subcommand, ValueEnum};
use knot_core::cohom::{DecompositionSet, ShaOptions};
use knot_core::io::{sha256_hex, GroupLiteral, GroupSpec, InputDocument, NamedConstruction};
use knot_core::knot::{adequacy_criterion, decide_h1pic, decide_hnp, DecideOptions, Decision, Method};
use knot_core::permgroup::set_order_cap;
use knot_core::verify::{run_suite, CaseResult, SUITES};
use knot_core::zmodlin::AbelianInvariants;
use serde::Serialize;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_TRIVIAL: u8 = 0;
const EXIT_CYCLIC: u8 = 10;
const EXIT_ERROR: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "knot", version, about = "Hasse norm principle for degree p² extensions")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Worker threads for the cohomology engine (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Largest group order to enumerate.
    #[arg(long, env = "KNOT_CAP", global = true, hide_env_values = true)]
    cap: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a named group and print it as a literal.
    Zoo {
        /// P<n>, P'<n>, E<n>, H<n>, C<m>, semidirect-std or heisenberg-cover.
        name: String,
        #[command(flatten)]
        params: Params,
    },
    /// Compute Sha² for the decomposition data and decide the principle.
    Sha {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
        /// Work modulo the p-part of |G|.
        #[arg(long)]
        fast_p_part: bool,
    },
    /// H¹(k, Pic X̄) from the star condition alone.
    H1pic {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Check whether some decomposition group covers the Sylow subgroup.
    Adequacy {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Run a named verification suite.
    Verify {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: String,
    },
}

#[derive(Args, Debug, Clone, Default)]
struct Params {
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// Matrices mod p, e.g. "[[1,1],[0,1]],[[0,-1],[1,0]]".
    #[arg(long)]
    mats: Option<String>,
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Input document (JSON); `-` reads stdin.
    #[arg(required_unless_present = "group", conflicts_with = "group")]
    input: Option<PathBuf>,
    /// Inline named construction instead of a document; decomposition
    /// groups are then the cyclic subgroups only.
    #[arg(long)]
    group: Option<String>,
    #[command(flatten)]
    params: Params,
    #[arg(long, default_value_t = 0)]
    stabilizer_point: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Classifier,
    Cohomology,
    Both,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Classifier => Method::Classifier,
            MethodArg::Cohomology => Method::Cohomology,
            MethodArg::Both => Method::Both,
        }
    }
}

type CliResult<T> = Result<T, String>;

fn parse_mats(text: &str) -> CliResult<Vec<[[i64; 2]; 2]>> {
    serde_json::from_str(&format!("[{text}]")).map_err(|e| format!("--mats: {e}"))
}

fn named(name: &str, params: &Params) -> CliResult<NamedConstruction> {
    Ok(NamedConstruction {
        name: name.to_string(),
        p: params.p,
        n: params.n,
        matrices: match &params.mats {
            Some(m) => parse_mats(m)?,
            None => Vec::new(),
        },
    })
}

fn load_document(input: &InputArgs) -> CliResult<InputDocument> {
    if let Some(name) = &input.group {
        return Ok(InputDocument {
            group: GroupSpec::Named(named(name, &input.params)?),
            stabilizer_point: input.stabilizer_point,
            decomposition_groups: Vec::new(),
            methods: Vec::new(),
        });
    }
    let path = input.input.as_ref().expect("clap enforces an input");
    let mut text = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map_err(|e| format!("stdin: {e}"))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    InputDocument::parse(&text).map_err(|e| e.to_string())
}

fn document_method(doc: &InputDocument) -> CliResult<Method> {
    let mut classifier = false;
    let mut cohomology = false;
    for m in &doc.methods {
        match m.as_str() {
            "classifier" => classifier = true,
            "cohomology" => cohomology = true,
            "both" => {
                classifier = true;
                cohomology = true;
            }
            other => return Err(format!("methods: unknown method {other:?}")),
        }
    }
    Ok(match (classifier, cohomology) {
        (true, false) => Method::Classifier,
        (false, true) => Method::Cohomology,
        _ => Method::Both,
    })
}

#[derive(Serialize)]
struct ZooOutput {
    name: String,
    input_hash: String,
    order: usize,
    transitive: bool,
    exponent: usize,
    center_order: usize,
    group: GroupLiteral,
    #[serde(skip_serializing_if = "Option::is_none")]
    distinguished: Option<GroupLiteral>,
}

#[derive(Serialize)]
struct ShaOutput {
    input_hash: String,
    report: knot_core::knot::KnotReport,
    /// H¹(k, Pic X̄) modulo the image of Sha; present when both methods ran.
    #[serde(skip_serializing_if = "Option::is_none")]
    weak_approximation_defect: Option<AbelianInvariants>,
}

#[derive(Serialize)]
struct H1PicOutput {
    input_hash: String,
    report: knot_core::knot::H1PicReport,
}

#[derive(Serialize)]
struct AdequacyOutput {
    input_hash: String,
    adequate: bool,
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    suite: &'a str,
    passed: usize,
    failed: usize,
    cases: &'a [CaseResult],
}

fn emit<T: Serialize>(value: &T, out: Option<&PathBuf>) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    text.push('\n');
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    }
}

fn exit_for(decision: Decision) -> u8 {
    match decision {
        Decision::Trivial => EXIT_TRIVIAL,
        Decision::CyclicP => EXIT_CYCLIC,
    }
}

fn cmd_zoo(name: &str, params: &Params, out: Option<&PathBuf>) -> CliResult<u8> {
    let construction = named(name, params)?;
    let hash = sha256_hex(serde_json::to_string(&construction).expect("serializable").as_bytes());
    let built = construction.build().map_err(|e| e.to_string())?;
    let g = &built.group;
    emit(
        &ZooOutput {
            name: name.to_string(),
            input_hash: hash,
            order: g.order(),
            transitive: g.is_transitive(),
            exponent: g.exponent(),
            center_order: g.center().order(),
            group: GroupLiteral::of(g),
            distinguished: built.distinguished.as_ref().map(GroupLiteral::of),
        },
        out,
    )?;
    Ok(EXIT_TRIVIAL)
}

fn cmd_sha(input: &InputArgs, method: Option<MethodArg>, fast: bool, out: Option<&PathBuf>) -> CliResult<u8> {
    let doc = load_document(input)?;
    let method = match method {
        Some(m) => m.into(),
        None => document_method(&doc)?,
    };
    let prep = doc.prepare().map_err(|e| e.to_string())?;
    let set = DecompositionSet::admissible(&prep.group, &prep.decomposition_groups).map_err(|e| e.to_string())?;
    let opts = DecideOptions {
        method,
        sha: ShaOptions {
            fast_p_part: fast,
            ..ShaOptions::default()
        },
    };
    let report = decide_hnp(&prep.group, &prep.stabilizer, &set, &opts).map_err(|e| e.to_string())?;
    let weak_approximation_defect = (method == Method::Both).then(|| {
        if report.star.is_some() && report.decision == Decision::Trivial {
            AbelianInvariants::from_cyclic_orders(&[report.p as u64])
        } else {
            AbelianInvariants::trivial()
        }
    });
    let code = exit_for(report.decision);
    emit(
        &ShaOutput {
            input_hash: doc.canonical_hash(),
            report,
            weak_approximation_defect,
        },
        out,
    )?;
    Ok(code)
}

fn cmd_h1pic(input: &InputArgs, out: Option<&PathBuf>) -> CliResult<u8> {
    let doc = load_document(input)?;
    let prep = doc.prepare().map_err(|e| e.to_string())?;
    let report = decide_h1pic(&prep.group, &prep.stabilizer).map_err(|e| e.to_string())?;
    let code = if report.invariants.is_trivial() { EXIT_TRIVIAL } else { EXIT_CYCLIC };
    emit(
        &H1PicOutput {
            input_hash: doc.canonical_hash(),
            report,
        },
        out,
    )?;
    Ok(code)
}

fn cmd_adequacy(input: &InputArgs, out: Option<&PathBuf>) -> CliResult<u8> {
    let doc = load_document(input)?;
    let prep = doc.prepare().map_err(|e| e.to_string())?;
    let set = DecompositionSet::admissible(&prep.group, &prep.decomposition_groups).map_err(|e| e.to_string())?;
    let adequate = adequacy_criterion(&prep.group, &prep.stabilizer, &set).map_err(|e| e.to_string())?;
    emit(
        &AdequacyOutput {
            input_hash: doc.canonical_hash(),
            adequate,
        },
        out,
    )?;
    Ok(EXIT_TRIVIAL)
}

fn list(v: &[u64]) -> String {
    format!("{v:?}")
}

fn cmd_verify(suite: &str, out: Option<&PathBuf>) -> CliResult<u8> {
    let cases = run_suite(suite).ok_or_else(|| format!("unknown suite {suite}"))?;
    let passed = cases.iter().filter(|c| c.pass).count();
    let failed = cases.len() - passed;
    if let Some(path) = out {
        emit(
            &VerifyOutput {
                suite,
                passed,
                failed,
                cases: &cases,
            },
            Some(path),
        )?;
    }
    let width = cases.iter().map(|c| c.name.chars().count()).max().unwrap_or(4).max(4);
    let mut table = format!("{:<width$}  {:<10}  {:<10}  result\n", "case", "expected", "computed");
    for c in &cases {
        let computed = match (&c.computed, &c.error) {
            (Some(v), _) => list(v),
            (None, Some(e)) => format!("error: {e}"),
            (None, None) => "-".into(),
        };
        let verdict = if c.pass { "PASS" } else { "FAIL" };
        table.push_str(&format!("{:<width$}  {:<10}  {:<10}  {verdict}\n", c.name, list(&c.expected), computed));
    }
    table.push_str(&format!("{passed} passed, {failed} failed\n"));
    std::io::stdout().write_all(table.as_bytes()).map_err(|e| e.to_string())?;
    Ok(if failed == 0 { 0 } else { 1 })
}

fn run(cli: &Cli) -> CliResult<u8> {
    if let Some(cap) = cli.cap {
        set_order_cap(cap);
    }
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| format!("--jobs: {e}"))?;
    }
    let out = cli.out.as_ref();
    match &cli.command {
        Command::Zoo { name, params } => cmd_zoo(name, params, out),
        Command::Sha { input, method, fast_p_part } => cmd_sha(input, *method, *fast_p_part, out),
        Command::H1pic { input } => cmd_h1pic(input, out),
        Command::Adequacy { input } => cmd_adequacy(input, out),
        Command::Verify { suite } => cmd_verify(suite, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
