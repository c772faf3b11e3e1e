//! The `mendeleev` command-line tool.
//!
//! Exit codes: 0 success, 1 usage, 2 domain or validation error, 3 fit
//! error, 4 I/O error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::aufbau::{compare, configuration_of, shell_sequence, Configuration};
use crate::fit::{fit_with, FitModel, FitOptions, FitScope, IntegrityBasis};
use crate::half::Half;
use crate::navigation::{MoveAlgebra, Navigator};
use crate::quartet::{quartet_of, z_of, Quartet};
use crate::registry::{load_property_path, Registry};
use crate::report::{step_records, CellRecord, ElementReport};
use crate::table::{build_region, series_catalog, ColumnId, TableRegion};
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "mendeleev", version, about = "Periodic table from the Madelung rule: quartets, navigation, aufbau and property fits")]
struct Cli {
    /// Registry CSV (`z,symbol,name,status`) replacing the built-in 2006 snapshot.
    #[arg(long, global = true, value_name = "FILE")]
    registry: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Render the first MAX_Z cells, street by street.
    Table {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_z: u64,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Describe one element.
    Element {
        #[command(flatten)]
        target: ElementTarget,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Shortest ladder-operator path between two cells.
    Navigate {
        #[arg(long, conflicts_with = "from", required_unless_present = "from")]
        from_z: Option<u64>,
        #[arg(long)]
        from: Option<String>,
        #[arg(long, conflicts_with = "to", required_unless_present = "to")]
        to_z: Option<u64>,
        #[arg(long)]
        to: Option<String>,
        /// Comma-separated algebras: so3, so4, so21, so42.
        #[arg(long, required = true, value_delimiter = ',')]
        via: Vec<String>,
        /// Largest Z the path may visit (default: the rows around both endpoints).
        #[arg(long)]
        max_z: Option<u64>,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Idealized electron configuration.
    Config {
        #[arg(long)]
        z: u64,
        /// Observed configuration to diff against, e.g. "[Ar] 3d5 4s1".
        #[arg(long)]
        compare: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// First COUNT shells in Madelung order.
    Shells {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
    },
    /// Transition, inner-transition and g-block series up to row MAX_N.
    Series {
        #[arg(long, default_value_t = 8)]
        max_n: u32,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Fit a property over a period, family or explicit set.
    Fit {
        #[command(flatten)]
        fit: FitArgs,
        /// Also write the model JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Predict values from a saved model or from a fresh fit.
    Predict {
        #[arg(long, conflicts_with = "data")]
        model: Option<PathBuf>,
        #[command(flatten)]
        fit: FitArgs,
        #[arg(long, required = true, value_delimiter = ',')]
        z: Vec<u64>,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Write the active registry as CSV.
    Registry {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct ElementTarget {
    #[arg(long)]
    z: Option<u64>,
    /// Quartet n,l,j,m, e.g. 1,0,1/2,-1/2.
    #[arg(long, allow_hyphen_values = true)]
    quartet: Option<String>,
    #[arg(long)]
    symbol: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScopeKind {
    Period,
    Family,
    Set,
}

#[derive(Debug, Args)]
struct FitArgs {
    /// Property CSV with header `z,value`.
    #[arg(long)]
    data: Option<PathBuf>,
    #[arg(long, default_value = "property")]
    property: String,
    #[arg(long, default_value = "")]
    unit: String,
    #[arg(long, value_enum)]
    scope: Option<ScopeKind>,
    /// Row for `--scope period`.
    #[arg(long)]
    n: Option<u32>,
    /// Column l,j,m for `--scope family`.
    #[arg(long, allow_hyphen_values = true)]
    column: Option<String>,
    /// Atomic numbers for `--scope set`.
    #[arg(long, value_delimiter = ',')]
    zs: Vec<u64>,
    /// Comma-separated basis functions (default: 1,n,l(l+1),j(j+1),m,n^2,m^2,n*l).
    #[arg(long)]
    basis: Option<String>,
    #[arg(long)]
    allow_rank_deficient: bool,
    #[arg(long, default_value_t = 0.0)]
    ridge: f64,
}

enum Failure {
    Usage(String),
    Run(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Run(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Run(Error::Io(e))
    }
}

impl From<crate::fit::FitError> for Failure {
    fn from(e: crate::fit::FitError) -> Self {
        Failure::Run(Error::Fit(e))
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Run(e.into())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Run(Error::Json(e))
    }
}

type CmdResult = std::result::Result<(), Failure>;

/// Runs the tool with `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    1
                }
            };
        }
    };
    match dispatch(cli, out) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        // A closed stdout (`mendeleev table | head`) is not worth reporting.
        Err(Failure::Run(Error::Io(e))) if e.kind() == io::ErrorKind::BrokenPipe => 0,
        Err(Failure::Run(e)) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> CmdResult {
    let registry = match &cli.registry {
        Some(path) => Registry::load_path(path)?,
        None => Registry::snapshot(),
    };
    match cli.command {
        Command::Table { max_z, format } => cmd_table(&registry, max_z, format, out),
        Command::Element { target, format } => cmd_element(&registry, &target, format, out),
        Command::Navigate { from_z, from, to_z, to, via, max_z, format } => {
            let from = endpoint(from_z, from.as_deref())?;
            let to = endpoint(to_z, to.as_deref())?;
            let algebras = via.iter().map(|v| v.parse::<MoveAlgebra>()).collect::<Result<Vec<_>, _>>();
            let algebras = algebras.map_err(|e| Failure::Usage(e.to_string()))?;
            cmd_navigate(&from, &to, &algebras, max_z, format, out)
        }
        Command::Config { z, compare, format } => cmd_config(z, compare.as_deref(), format, out),
        Command::Shells { count } => {
            let names: Vec<String> = shell_sequence(count as usize).iter().map(|s| s.to_string()).collect();
            writeln!(out, "{}", names.join(" "))?;
            Ok(())
        }
        Command::Series { max_n, format } => cmd_series(max_n, format, out),
        Command::Fit { fit, out: path, format } => {
            let model = run_fit(&fit)?;
            if let Some(path) = path {
                model.write_json(BufWriter::new(File::create(path)?))?;
            }
            write_fit(&model, format, out)
        }
        Command::Predict { model, fit, z, format } => {
            let model = match model {
                Some(path) => FitModel::read_json(io::BufReader::new(File::open(path)?))?,
                None => run_fit(&fit)?,
            };
            cmd_predict(&model, &registry, &z, format, out)
        }
        Command::Registry { out: path } => {
            match path {
                Some(path) => registry.save(BufWriter::new(File::create(path)?))?,
                None => registry.save(&mut *out)?,
            }
            Ok(())
        }
    }
}

fn endpoint(z: Option<u64>, quartet: Option<&str>) -> std::result::Result<Quartet, Failure> {
    match (z, quartet) {
        (Some(z), None) => Ok(quartet_of(z)?),
        (None, Some(text)) => Ok(text.parse()?),
        _ => Err(Failure::Usage("give exactly one of the Z and quartet forms".into())),
    }
}

fn write_csv<S: Serialize>(rows: &[S], out: &mut dyn Write) -> CmdResult {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

fn write_json<S: Serialize + ?Sized>(value: &S, out: &mut dyn Write) -> CmdResult {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

pub fn cmd_table_records(registry: &Registry, region: &TableRegion) -> Vec<CellRecord> {
    region.cells().iter().map(|c| CellRecord::new(c, registry)).collect()
}

fn cmd_table(registry: &Registry, max_z: u64, format: OutputFormat, out: &mut dyn Write) -> CmdResult {
    let region = build_region(max_z)?;
    match format {
        OutputFormat::Csv => write_csv(&cmd_table_records(registry, &region), out),
        OutputFormat::Json => write_json(&cmd_table_records(registry, &region), out),
        OutputFormat::Text => {
            render_table_text(registry, &region, out)?;
            Ok(())
        }
    }
}

/// One street per row `n`; each `(l, j)` sub-block of avenues on its own
/// line with cells as `Z:label`.
fn render_table_text(registry: &Registry, region: &TableRegion, out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "Mendeleev city, Z = 1..{}", region.max_z())?;
    for n in 1..=region.max_row() {
        writeln!(out, "n={n}")?;
        let row = region.row(n);
        let mut start = 0;
        while start < row.len() {
            let q = row[start].quartet;
            let end = start + row[start..].iter().take_while(|c| c.quartet.l() == q.l() && c.quartet.j2() == q.j2()).count();
            let cells: Vec<String> = row[start..end]
                .iter()
                .map(|c| format!("{}:{}", c.z, registry.get(c.z).label()))
                .collect();
            writeln!(out, "  l={} j={:<5} {}", q.l(), Half(q.j2() as i64).to_string(), cells.join(" "))?;
            start = end;
        }
    }
    Ok(())
}

fn resolve_element(registry: &Registry, target: &ElementTarget) -> std::result::Result<Quartet, Failure> {
    match (&target.z, &target.quartet, &target.symbol) {
        (Some(z), None, None) => Ok(quartet_of(*z)?),
        (None, Some(q), None) => Ok(q.parse()?),
        (None, None, Some(sym)) => {
            let record = registry
                .by_symbol(sym)
                .ok_or_else(|| Error::Domain(format!("no element with symbol {sym:?} in the registry")))?;
            Ok(quartet_of(record.z)?)
        }
        _ => Err(Failure::Usage("give exactly one of --z, --quartet, --symbol".into())),
    }
}

fn cmd_element(registry: &Registry, target: &ElementTarget, format: OutputFormat, out: &mut dyn Write) -> CmdResult {
    let q = resolve_element(registry, target)?;
    let report = ElementReport::new(&q, registry);
    match format {
        OutputFormat::Csv => write_csv(&[report], out),
        OutputFormat::Json => write_json(&report, out),
        OutputFormat::Text => {
            let dash = |v: &Option<String>| v.clone().unwrap_or_else(|| "-".into());
            writeln!(out, "Z             {}", report.z)?;
            writeln!(out, "symbol        {}", dash(&report.symbol))?;
            writeln!(out, "name          {}", dash(&report.name))?;
            writeln!(out, "status        {}", report.status)?;
            writeln!(out, "quartet       {}", report.quartet)?;
            writeln!(out, "madelung key  {}", report.madelung_key)?;
            writeln!(out, "family        {}", report.family)?;
            writeln!(out, "series        {}", dash(&report.series))?;
            writeln!(out, "sub-block j   {}", dash(&report.subblock_j))?;
            writeln!(out, "configuration {}", report.configuration)?;
            Ok(())
        }
    }
}

fn cmd_navigate(
    from: &Quartet,
    to: &Quartet,
    algebras: &[MoveAlgebra],
    max_z: Option<u64>,
    format: OutputFormat,
    out: &mut dyn Write,
) -> CmdResult {
    let navigator = match max_z {
        Some(bound) => Navigator::new(bound),
        None => {
            let rows = Navigator::for_rows(from.n().max(to.n()) + 1);
            Navigator::new(rows.max_z().max(z_of(from)).max(z_of(to)))
        }
    };
    let path = navigator.shortest_path(from, to, algebras);
    match format {
        OutputFormat::Json => match &path {
            Some(p) => write_json(&step_records(p), out),
            None => write_json(&serde_json::Value::Null, out),
        },
        OutputFormat::Csv => write_csv(&path.as_ref().map(step_records).unwrap_or_default(), out),
        OutputFormat::Text => {
            match path {
                None => writeln!(out, "unreachable")?,
                Some(p) => {
                    writeln!(out, "{} step{} from Z={} {}", p.len(), if p.len() == 1 { "" } else { "s" }, z_of(from), from)?;
                    for (i, s) in step_records(&p).iter().enumerate() {
                        writeln!(out, "  {}. Z={} {} via {}", i + 1, s.z, s.quartet, s.algebra)?;
                    }
                }
            }
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct ConfigReport {
    z: u64,
    configuration: String,
    shells: Vec<crate::aufbau::ShellOccupancy>,
    #[serde(skip_serializing_if = "Option::is_none")]
    differences: Option<Vec<crate::aufbau::ShellDifference>>,
}

fn cmd_config(z: u64, observed: Option<&str>, format: OutputFormat, out: &mut dyn Write) -> CmdResult {
    let ideal = configuration_of(z)?;
    let differences = match observed {
        Some(text) => {
            let observed: Configuration = text.parse()?;
            if observed.z != z {
                return Err(Error::Domain(format!("observed configuration holds {} electrons, expected {z}", observed.z)).into());
            }
            Some(compare(&ideal, &observed))
        }
        None => None,
    };
    match format {
        OutputFormat::Json => write_json(
            &ConfigReport { z, configuration: ideal.to_string(), shells: ideal.shells.clone(), differences },
            out,
        ),
        OutputFormat::Csv => {
            #[derive(Serialize)]
            struct Row {
                shell: String,
                electrons: u64,
            }
            let rows: Vec<Row> = ideal.shells.iter().map(|s| Row { shell: s.shell.to_string(), electrons: s.electrons }).collect();
            write_csv(&rows, out)
        }
        OutputFormat::Text => {
            writeln!(out, "{ideal}")?;
            if let Some(diffs) = differences {
                if diffs.is_empty() {
                    writeln!(out, "observed configuration matches the Madelung filling")?;
                }
                for d in diffs {
                    writeln!(out, "  {}: idealized {} observed {}", d.shell, d.idealized, d.observed)?;
                }
            }
            Ok(())
        }
    }
}

fn cmd_series(max_n: u32, format: OutputFormat, out: &mut dyn Write) -> CmdResult {
    let catalog = series_catalog(max_n);
    match format {
        OutputFormat::Csv => write_csv(&catalog, out),
        OutputFormat::Json => write_json(&catalog, out),
        OutputFormat::Text => {
            for s in catalog {
                writeln!(out, "{s}")?;
            }
            Ok(())
        }
    }
}

fn run_fit(args: &FitArgs) -> std::result::Result<FitModel, Failure> {
    let path = args.data.as_ref().ok_or_else(|| Failure::Usage("--data is required to fit".into()))?;
    let data = load_property_path(path, &args.property, &args.unit)?;
    let scope = match args.scope {
        None => return Err(Failure::Usage("--scope is required to fit".into())),
        Some(ScopeKind::Period) => {
            let n = args.n.ok_or_else(|| Failure::Usage("--scope period needs --n".into()))?;
            FitScope::Period { n }
        }
        Some(ScopeKind::Family) => {
            let text = args.column.as_deref().ok_or_else(|| Failure::Usage("--scope family needs --column".into()))?;
            FitScope::Family { column: text.parse::<ColumnId>()? }
        }
        Some(ScopeKind::Set) => {
            if args.zs.is_empty() {
                return Err(Failure::Usage("--scope set needs --zs".into()));
            }
            FitScope::Set { zs: args.zs.clone() }
        }
    };
    let basis = match &args.basis {
        Some(list) => IntegrityBasis::parse_list(list)?,
        None => IntegrityBasis::default(),
    };
    let options = FitOptions { allow_rank_deficient: args.allow_rank_deficient, ridge: args.ridge };
    Ok(fit_with(&scope, &basis, &data, &options)?)
}

fn write_fit(model: &FitModel, format: OutputFormat, out: &mut dyn Write) -> CmdResult {
    match format {
        OutputFormat::Json => write_json(&model.to_report(), out),
        OutputFormat::Csv => write_csv(&model.residuals, out),
        OutputFormat::Text => {
            let unit = if model.unit.is_empty() { String::new() } else { format!(" [{}]", model.unit) };
            writeln!(out, "property  {}{}", model.property, unit)?;
            writeln!(out, "scope     {}", model.scope)?;
            writeln!(out, "rows      {}", model.residuals.len())?;
            writeln!(out, "coefficients")?;
            for (name, c) in model.basis.names().iter().zip(&model.coefficients) {
                let note = if model.dropped.contains(name) { "  (dropped)" } else { "" };
                writeln!(out, "  {name:<10} {c:>22.12e}{note}")?;
            }
            writeln!(out, "rss               {:.6e}", model.diagnostics.rss)?;
            writeln!(out, "max_abs_residual  {:.6e}", model.diagnostics.max_abs_residual)?;
            writeln!(out, "dof               {}", model.diagnostics.dof)?;
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct Prediction {
    z: u64,
    value: f64,
    status: String,
}

fn cmd_predict(model: &FitModel, registry: &Registry, zs: &[u64], format: OutputFormat, out: &mut dyn Write) -> CmdResult {
    let mut rows = Vec::new();
    for &z in zs {
        if z == 0 {
            return Err(Error::Domain("atomic number must be at least 1".into()).into());
        }
        rows.push(Prediction { z, value: model.predict(z)?, status: registry.status(z).to_string() });
    }
    match format {
        OutputFormat::Json => write_json(&rows, out),
        OutputFormat::Csv => write_csv(&rows, out),
        OutputFormat::Text => {
            for p in rows {
                writeln!(out, "Z={:<4} {} = {:.12} ({})", p.z, model.property, p.value, p.status)?;
            }
            Ok(())
        }
    }
}
