//! Command-line front end.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::afaces::{enumerate_afaces, MethodCounts};
use crate::arith::Rat;
use crate::cone::FanJson;
use crate::error::{Error, Result};
use crate::gitfan::{traverse, GitFanJson, GitProblem, Stats, TraverseOptions, Variant};
use crate::poly::{grassmannian_grading, pluecker_ideal, Grading, Ideal, Permutation};

pub const DEFAULT_SEED: u64 = 20_130_101;

#[derive(Debug, Parser)]
#[command(
    name = "gitfan",
    version,
    about = "GIT-fans and GKZ decompositions in exact arithmetic"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute all maximal cones of the GIT-fan (or the GKZ decomposition)
    Compute(ComputeArgs),
    /// Compute the chamber of a single weight
    Chamber(ChamberArgs),
    /// List the a-faces of an ideal
    Afaces(AfacesArgs),
    /// Write the Grassmannian ideal and grading files for n = 4, 5, 6
    Fixtures(FixturesArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Ideal file
    #[arg(short, long, required_unless_present = "gkz")]
    pub ideal: Option<PathBuf>,
    /// Grading matrix file
    #[arg(short, long)]
    pub matrix: PathBuf,
    /// Use the zero ideal (GKZ decomposition)
    #[arg(long, conflicts_with = "ideal")]
    pub gkz: bool,
    /// Chamber algorithm
    #[arg(long, default_value = "orbit-cones", value_parser = ["orbit-cones", "afaces"])]
    pub algorithm: String,
    /// Symmetry file (one permutation per line)
    #[arg(long)]
    pub symmetry: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: u64,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file (default: standard output)
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Include run statistics in the output
    #[arg(long)]
    pub stats: bool,
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ChamberArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Weight vector `c1,...,ck` (integers or fractions)
    #[arg(long, allow_hyphen_values = true)]
    pub weight: String,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct AfacesArgs {
    /// Ideal file
    #[arg(short, long)]
    pub ideal: PathBuf,
    /// Symmetry file (one permutation per line)
    #[arg(long)]
    pub symmetry: Option<PathBuf>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: u64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct FixturesArgs {
    /// Grassmannian parameter n in G(2, n)
    pub n: usize,
    /// Target directory
    #[arg(short, long, default_value = ".")]
    pub output: PathBuf,
}

/// Process exit status for an error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse { .. } => 2,
        Error::NotHomogeneous { .. } | Error::DegenerateGrading { .. } => 3,
        Error::WeightNotInterior(_) => 4,
        _ => 1,
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })
}

struct Loaded {
    ideal: Ideal,
    grading: Grading,
    symmetries: Vec<Permutation>,
    variant: Variant,
}

fn load(input: &InputArgs) -> Result<Loaded> {
    let grading = Grading::parse(&read(&input.matrix)?)?;
    let ideal = match &input.ideal {
        Some(path) if !input.gkz => Ideal::parse(&read(path)?)?,
        _ => Ideal::zero(grading.r()),
    };
    if ideal.nvars() != grading.r() {
        return Err(Error::DimensionMismatch {
            expected: grading.r(),
            found: ideal.nvars(),
        });
    }
    ideal.check_homogeneous(&grading)?;
    let symmetries = match &input.symmetry {
        Some(path) => Permutation::parse_file(&read(path)?, ideal.nvars())?,
        None => Vec::new(),
    };
    let variant = input
        .algorithm
        .parse()
        .map_err(|e: String| Error::parse(1, 1, e))?;
    Ok(Loaded {
        ideal,
        grading,
        symmetries,
        variant,
    })
}

fn emit(out: &OutputArgs, value: &impl Serialize, stdout: &mut dyn Write) -> Result<()> {
    let mut text = serde_json::to_string(value)?;
    text.push('\n');
    match &out.output {
        Some(path) => fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Parses `c1,...,ck` into a rational vector.
pub fn parse_weight(text: &str) -> Result<Vec<Rat>> {
    let mut col = 1;
    let mut out = Vec::new();
    for part in text.split(',') {
        let t = part.trim();
        let value = t
            .parse::<Rat>()
            .map_err(|_| Error::parse(1, col, format!("malformed weight entry {t:?}")))?;
        out.push(value);
        col += part.len() + 1;
    }
    Ok(out)
}

fn thread_pool(jobs: u64) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs as usize)
        .build()
        .map_err(|e| Error::Internal(e.to_string()))
}

fn cmd_compute(args: &ComputeArgs, stdout: &mut dyn Write) -> Result<()> {
    let loaded = load(&args.input)?;
    let options = TraverseOptions {
        variant: loaded.variant,
        seed: args.input.seed,
        jobs: args.input.jobs as usize,
        symmetries: loaded.symmetries,
    };
    let result = traverse(&loaded.ideal, &loaded.grading, &options)?;
    emit(&args.out, &result.to_json(args.out.stats), stdout)
}

fn cmd_chamber(args: &ChamberArgs, stdout: &mut dyn Write) -> Result<()> {
    let loaded = load(&args.input)?;
    let w = parse_weight(&args.weight)?;
    if w.len() != loaded.grading.k() {
        return Err(Error::DimensionMismatch {
            expected: loaded.grading.k(),
            found: w.len(),
        });
    }
    let pool = thread_pool(args.input.jobs)?;
    let (cone, stats) = pool.install(|| -> Result<_> {
        let problem = GitProblem::new(
            loaded.ideal,
            loaded.grading,
            loaded.symmetries,
            args.input.seed,
        )?;
        let cone = problem.chamber_with(loaded.variant, &w)?;
        let stats = Stats {
            aface_tests: problem.aface_tests(),
            cones_intersected: problem.cones_intersected(),
            chambers: 1,
            walls_crossed: 0,
        };
        Ok((cone, stats))
    })?;
    let doc = GitFanJson {
        fan: cone.to_json(),
        stats: args.out.stats.then_some(stats),
    };
    emit(&args.out, &doc, stdout)
}

#[derive(Debug, Serialize)]
struct AfacesJson {
    r: usize,
    afaces: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    stats: Option<AfaceStats>,
}

#[derive(Debug, Serialize)]
struct AfaceStats {
    #[serde(flatten)]
    methods: MethodCounts,
    tests: usize,
    orbits: usize,
}

fn cmd_afaces(args: &AfacesArgs, stdout: &mut dyn Write) -> Result<()> {
    let ideal = Ideal::parse(&read(&args.ideal)?)?;
    let symmetries = match &args.symmetry {
        Some(path) => Permutation::parse_file(&read(path)?, ideal.nvars())?,
        None => Vec::new(),
    };
    let run = thread_pool(args.jobs)?.install(|| enumerate_afaces(&ideal, &symmetries))?;
    let doc = AfacesJson {
        r: ideal.nvars(),
        afaces: run.faces.iter().map(|f| f.one_based()).collect(),
        stats: args.out.stats.then(|| AfaceStats {
            tests: run.tests.total(),
            orbits: run.orbits,
            methods: run.tests,
        }),
    };
    emit(&args.out, &doc, stdout)
}

fn cmd_fixtures(args: &FixturesArgs) -> Result<()> {
    let n = args.n;
    if !(4..=6).contains(&n) {
        return Err(Error::UnsupportedFixture(n));
    }
    let ideal = pluecker_ideal(n)?;
    let grading = grassmannian_grading(n)?;
    fs::create_dir_all(&args.output)?;
    let header = format!("# Pluecker relations of G(2,{n})\n");
    fs::write(
        args.output.join(format!("a2{n}.txt")),
        header + &ideal.to_file_string(),
    )?;
    fs::write(
        args.output.join(format!("q2{n}.txt")),
        grading.to_file_string(),
    )?;
    Ok(())
}

pub fn run(cli: &Cli, stdout: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Compute(a) => cmd_compute(a, stdout),
        Command::Chamber(a) => cmd_chamber(a, stdout),
        Command::Afaces(a) => cmd_afaces(a, stdout),
        Command::Fixtures(a) => cmd_fixtures(a),
    }
}

/// Parses `args` (including the program name), runs, and returns the exit status.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Reads a fan document written by `compute`.
pub fn read_fan_json(text: &str) -> Result<FanJson> {
    Ok(serde_json::from_str::<GitFanJson>(text)?.fan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use tempfile::TempDir;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = main_with_args(
            std::iter::once("gitfan").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    fn fixtures(n: usize) -> (TempDir, String, String) {
        let dir = TempDir::new().unwrap();
        let d = dir.path().to_str().unwrap().to_string();
        let (code, _, _) = run_args(&["fixtures", &n.to_string(), "-o", &d]);
        assert_eq!(code, 0);
        let a = format!("{d}/a2{n}.txt");
        let q = format!("{d}/q2{n}.txt");
        (dir, a, q)
    }

    #[test]
    fn fixture_files() {
        let (_dir, a, q) = fixtures(4);
        assert_eq!(
            fs::read_to_string(&q).unwrap(),
            "3 6\n1 0 0 1 1 0\n0 1 0 1 0 1\n0 0 1 0 1 1\n"
        );
        assert!(fs::read_to_string(&a).unwrap().contains("vars 6"));
        let (code, _, err) = run_args(&["fixtures", "7"]);
        assert_eq!(code, 1);
        assert!(err.contains("n = 7"));
    }

    #[test]
    fn compute_g24() {
        let (_dir, a, q) = fixtures(4);
        let (code, out, _) = run_args(&["compute", "-i", &a, "-m", &q, "--stats"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["maximal_cones"].as_array().unwrap().len(), 4);
        assert_eq!(v["stats"]["chambers"], 4);
        let (_, plain, _) = run_args(&["compute", "-i", &a, "-m", &q]);
        assert!(!plain.contains("stats"));
        let (_, gkz, _) = run_args(&["compute", "--gkz", "-m", &q]);
        assert_eq!(read_fan_json(&gkz).unwrap().maximal_cones.len(), 12);
    }

    #[test]
    fn exit_codes() {
        let (dir, a, q) = fixtures(4);
        let bad = dir.path().join("bad.txt");
        fs::write(&bad, "vars 6\nT1*T6 - T2\n").unwrap();
        let (code, _, err) = run_args(&["compute", "-i", bad.to_str().unwrap(), "-m", &q]);
        assert_eq!(code, 3);
        assert!(
            err.contains("T1*T6 - T2") || err.contains("-T2 + T1*T6"),
            "{err}"
        );
        fs::write(&bad, "vars 6\nT1*T6 +\n").unwrap();
        let (code, _, _) = run_args(&["compute", "-i", bad.to_str().unwrap(), "-m", &q]);
        assert_eq!(code, 2);
        let (code, _, _) = run_args(&["chamber", "-i", &a, "-m", &q, "--weight", "1,0,0"]);
        assert_eq!(code, 4);
        let (code, _, _) = run_args(&["chamber", "-i", &a, "-m", &q, "--weight", "1,x,0"]);
        assert_eq!(code, 2);
        let (code, _, _) = run_args(&["compute", "-m", &q]);
        assert_eq!(code, 2);
    }

    #[test]
    fn chamber_and_afaces() {
        let (dir, a, q) = fixtures(4);
        let (code, out, _) = run_args(&["chamber", "-i", &a, "-m", &q, "--weight", "1,1,1"]);
        assert_eq!(code, 0);
        assert_eq!(read_fan_json(&out).unwrap().maximal_cones.len(), 1);
        let (code, out, _) = run_args(&["afaces", "-i", &a, "--stats"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let faces = v["afaces"].as_array().unwrap().len();
        let sym = dir.path().join("sym.txt");
        fs::write(&sym, "6 2 3 4 5 1\n").unwrap();
        let (code, out2, _) = run_args(&[
            "afaces",
            "-i",
            &a,
            "--symmetry",
            sym.to_str().unwrap(),
            "--stats",
        ]);
        assert_eq!(code, 0);
        let v2: serde_json::Value = serde_json::from_str(&out2).unwrap();
        assert_eq!(v2["afaces"].as_array().unwrap().len(), faces);
        assert!(v2["stats"]["tests"].as_u64() < v["stats"]["tests"].as_u64());
    }

    #[test]
    fn weights() {
        assert_eq!(parse_weight("1, -2,3/4").unwrap().len(), 3);
        assert!(matches!(
            parse_weight("1,,2"),
            Err(Error::Parse { column: 3, .. })
        ));
    }
}
