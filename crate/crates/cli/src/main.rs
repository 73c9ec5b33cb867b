use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use enumcode::{CodecParams, CombinatoricsContext, FrequencyVector};
use enumcode_cli::input::{parse_symbol, read_sequence, resolve_alphabet, ReadOptions};
use enumcode_cli::sweep::{self, SweepConfig};
use enumcode_cli::tables::{self, parse_counts, DEFAULT_GUARD};
use enumcode_cli::{CliError, Result};

#[derive(Parser)]
#[command(name = "enumcode", version, about = "Enumerative block coding of symbol sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compress a file into an enumerative container.
    Encode(EncodeArgs),
    /// Restore the original file from a container.
    Decode {
        input: PathBuf,
        /// Defaults to the input with `.enum` stripped, or `.out` appended.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// List ranked frequency vectors or permutations, or rank one vector.
    Tables(TablesArgs),
    /// Naive versus enumerated cost of a frequency vector, as CSV.
    Figure1 {
        #[arg(long, default_value_t = 4)]
        sigma: usize,
        #[arg(long, default_value_t = 1000)]
        nmax: u64,
        /// Defaults to standard output.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Sweep block parameters over a set of files and report the best points.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Variable,
    Fixed,
}

#[derive(Args)]
struct ReadArgs {
    /// Treat inputs as FASTA over ACGT.
    #[arg(long)]
    fasta: bool,
    /// With --fasta, replace any other residue by this symbol instead of failing.
    #[arg(long, value_parser = parse_symbol, requires = "fasta")]
    fasta_other: Option<u8>,
    /// Ordered alphabet; defaults to the sorted distinct bytes of the input.
    #[arg(long)]
    alphabet: Option<String>,
}

impl ReadArgs {
    fn options(&self) -> ReadOptions {
        ReadOptions { fasta: self.fasta, fasta_other: self.fasta_other }
    }
}

#[derive(Args)]
struct EncodeArgs {
    input: PathBuf,
    #[arg(long, value_enum, default_value = "variable")]
    mode: ModeArg,
    /// Designated symbol; defaults to the least frequent one.
    #[arg(long, value_parser = parse_symbol)]
    alpha: Option<u8>,
    #[arg(short, long, default_value_t = 128)]
    r: u32,
    /// Block length in fixed mode.
    #[arg(short = 'L', long = "block-len", default_value_t = 2048)]
    block_len: u32,
    #[command(flatten)]
    read: ReadArgs,
    /// Defaults to the input with `.enum` appended.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TablesArgs {
    /// Every vector of SIGMA counts summing to ELL, in rank order.
    #[arg(long, num_args = 2, value_names = ["ELL", "SIGMA"])]
    compositions: Option<Vec<u64>>,
    /// Every arrangement of the given counts, e.g. 2,1,1,0.
    #[arg(long, value_parser = counts_arg)]
    perms: Option<Counts>,
    /// Rank of one frequency vector, e.g. 2,1,1,0.
    #[arg(long, value_parser = counts_arg)]
    rank: Option<Counts>,
    /// With --rank, list the addends.
    #[arg(long)]
    trace: bool,
    /// Letters used to print permutations.
    #[arg(long)]
    alphabet: Option<String>,
    /// Refuse listings longer than this.
    #[arg(long, default_value_t = DEFAULT_GUARD)]
    guard: usize,
}

#[derive(Clone)]
struct Counts(Vec<u64>);

fn counts_arg(s: &str) -> std::result::Result<Counts, String> {
    parse_counts(s).map(Counts)
}

#[derive(Args)]
struct SweepArgs {
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    /// Designated symbols to try; defaults to every alphabet symbol.
    #[arg(long, value_parser = parse_symbol, value_delimiter = ',')]
    alphas: Vec<u8>,
    #[arg(long = "r", value_delimiter = ',')]
    r_values: Vec<u32>,
    #[arg(long = "L", value_delimiter = ',')]
    block_lens: Vec<u32>,
    #[command(flatten)]
    read: ReadArgs,
    /// Summary CSV; defaults to standard output.
    #[arg(short, long)]
    out: Option<PathBuf>,
    /// CSV with every grid point.
    #[arg(long)]
    points: Option<PathBuf>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("enumcode: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Encode(args) => encode(args),
        Command::Decode { input, out } => decode(&input, out),
        Command::Tables(args) => tables(args),
        Command::Figure1 { sigma, nmax, out } => with_output(out.as_deref(), |w| tables::write_figure1(sigma, nmax, w)),
        Command::Sweep(args) => run_sweep(args),
    }
}

fn encode(args: EncodeArgs) -> Result<()> {
    let data = read_sequence(&args.input, args.read.options())?;
    let alphabet = resolve_alphabet(args.read.alphabet.as_deref(), args.read.fasta, &data, args.alpha.unwrap_or(b'A'))?;
    let codec = |e| CliError::codec(&args.input, e);
    let params = match args.mode {
        ModeArg::Variable => {
            let alpha = match args.alpha {
                Some(b) => alphabet.index_of(b).ok_or_else(|| {
                    CliError::Usage(format!("--alpha {:?} is not in the alphabet", b as char))
                })?,
                None => {
                    let symbols = alphabet.to_indices(&data).map_err(codec)?;
                    let freq = FrequencyVector::of_symbols(&symbols, alphabet.len()).map_err(codec)?;
                    least_frequent(freq.counts())
                }
            };
            CodecParams::variable(alphabet, alpha, args.r)
        }
        ModeArg::Fixed => CodecParams::fixed(alphabet, args.block_len),
    }
    .map_err(codec)?;

    let mut ctx = CombinatoricsContext::new();
    let enc = enumcode::encode(&data, &params, &mut ctx).map_err(codec)?;
    let out = args.out.unwrap_or_else(|| with_suffix(&args.input, ".enum"));
    fs::write(&out, &enc.bytes).map_err(|e| CliError::io(&out, e))?;

    let n = data.len() as f64;
    let per_base = |bits: f64| if n == 0.0 { 0.0 } else { bits / n };
    println!("symbols\t{}", data.len());
    println!("blocks\t{}", enc.blocks.len());
    println!("container_bits\t{}", enc.bytes.len() * 8);
    println!("payload_bits\t{}", enc.payload_bits);
    println!("accounted_bits\t{}", enc.account.ceil_total());
    println!("bits_per_base\t{:.6}", per_base(enc.account.ceil_total() as f64));
    println!("container_bits_per_base\t{:.6}", per_base((enc.bytes.len() * 8) as f64));
    log::info!("wrote {}", out.display());
    Ok(())
}

/// Lowest index among the smallest counts.
fn least_frequent(counts: &[u64]) -> usize {
    counts.iter().enumerate().min_by_key(|&(i, &c)| (c, i)).map_or(0, |(i, _)| i)
}

fn decode(input: &Path, out: Option<PathBuf>) -> Result<()> {
    let bytes = fs::read(input).map_err(|e| CliError::io(input, e))?;
    let mut ctx = CombinatoricsContext::new();
    let data = enumcode::decode(&bytes, &mut ctx).map_err(|e| CliError::codec(input, e))?;
    let out = out.unwrap_or_else(|| match input.to_str().and_then(|s| s.strip_suffix(".enum")) {
        Some(stem) if !stem.is_empty() => PathBuf::from(stem),
        _ => with_suffix(input, ".out"),
    });
    fs::write(&out, &data).map_err(|e| CliError::io(&out, e))?;
    println!("symbols\t{}", data.len());
    Ok(())
}

fn tables(args: TablesArgs) -> Result<()> {
    let mut text = String::new();
    if let Some(v) = &args.compositions {
        text += &tables::compositions_table(v[0], v[1] as usize, args.guard)?;
    }
    if let Some(counts) = &args.perms {
        let letters = args.alphabet.as_deref().map(str::as_bytes);
        text += &tables::perms_table(&counts.0, letters, args.guard)?;
    }
    if let Some(counts) = &args.rank {
        text += &tables::rank_report(&counts.0, args.trace);
    }
    if args.compositions.is_none() && args.perms.is_none() && args.rank.is_none() {
        return Err(CliError::Usage("tables needs --compositions, --perms or --rank".into()));
    }
    io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::io("<stdout>", e))
}

fn run_sweep(args: SweepArgs) -> Result<()> {
    let mut config = SweepConfig::new(args.inputs);
    config.alphas = args.alphas;
    if !args.r_values.is_empty() {
        config.r_values = args.r_values;
    }
    if !args.block_lens.is_empty() {
        config.block_lens = args.block_lens;
    }
    config.alphabet = args.read.alphabet.clone();
    config.read = args.read.options();
    let outcome = sweep::run(&config)?;
    if let Some(path) = &args.points {
        let f = fs::File::create(path).map_err(|e| CliError::io(path, e))?;
        sweep::write_points(&outcome, io::BufWriter::new(f))?;
    }
    with_output(args.out.as_deref(), |w| sweep::write_summary(&outcome, w))?;
    if outcome.files.is_empty() {
        return Err(CliError::Usage("no input could be read".into()));
    }
    Ok(())
}

fn with_output(path: Option<&Path>, f: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    match path {
        Some(p) => {
            let file = fs::File::create(p).map_err(|e| CliError::io(p, e))?;
            let mut w = io::BufWriter::new(file);
            f(&mut w)?;
            w.flush().map_err(|e| CliError::io(p, e))
        }
        None => f(&mut io::stdout().lock()),
    }
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}
