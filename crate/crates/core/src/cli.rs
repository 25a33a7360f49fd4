//! The `joinendo` command line.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bench::{run_bench, write_csv, BenchConfig, Family};
use crate::counting::{count_named, CountReport};
use crate::endo::{random_join_endomorphism, Endofunction, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::glb::{brute_force_meet, Algorithm};
use crate::latgen::{conjecture_search_in, generate_all_lattices, random_distributive_lattice, random_lattice, SearchScope};
use crate::lattice::{write_cover_relation, Lattice, LatticeSpec};
use crate::morphology::{dilate, meet_of_dilations, BinaryImage, StructuringElement};

#[derive(Debug, Parser)]
#[command(name = "joinendo", version, about = "Join-endomorphisms of finite lattices")]
pub struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest number of candidate maps an enumeration may visit.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,
    /// Write output here instead of stdout (a directory for `latgen all`).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Greatest join-endomorphism below a set of join-endomorphisms.
    Meet(MeetArgs),
    /// Operation counts over a family of lattices, as CSV.
    Bench(BenchArgs),
    /// Closed-form and enumerated sizes of E(L), as CSV.
    Count(CountArgs),
    /// Lattice generation.
    Latgen {
        #[command(subcommand)]
        command: LatgenCommand,
    },
    /// Dilations of binary images.
    Morph {
        #[command(subcommand)]
        command: MorphCommand,
    },
}

#[derive(Debug, Args)]
pub struct MeetArgs {
    /// `chain:K`, `powerset:M`, `mn:K`, `n5`, `file:PATH` or `A*B`.
    #[arg(long)]
    pub lattice: LatticeSpec,
    /// File holding one endofunction as element ids `v0 v1 …`.
    #[arg(long = "endo")]
    pub endos: Vec<PathBuf>,
    /// Use this many random join-endomorphisms instead of files.
    #[arg(long)]
    pub random: Option<usize>,
    #[arg(long = "alg", default_value = "gmeet+")]
    pub algorithm: Algorithm,
    /// Also run the brute-force oracle and compare.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long)]
    pub family: Family,
    /// Lattice sizes, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub sizes: Vec<usize>,
    /// Sizes of the input set, comma separated.
    #[arg(long = "m", value_delimiter = ',', default_value = "2")]
    pub set_sizes: Vec<usize>,
    #[arg(long = "alg", value_delimiter = ',', default_value = "dmeet+")]
    pub algorithms: Vec<Algorithm>,
    #[arg(long, default_value_t = 1)]
    pub runs: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CountFamily {
    Mn,
    Powerset,
    Chain,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    pub family: CountFamily,
    /// `k` of `M_k`, exponent of the powerset, or chain size; comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
}

#[derive(Debug, Subcommand)]
pub enum LatgenCommand {
    /// Every lattice up to the given size, one cover-relation file each.
    All {
        #[arg(long)]
        max_n: usize,
    },
    /// One random lattice, printed as a cover relation.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        distributive: bool,
    },
    /// Compare |E| of lattices with that of their edge augmentations.
    Conjecture {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        /// Include non-distributive lattices.
        #[arg(long)]
        all_lattices: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum MorphCommand {
    /// Glb of several dilations, by lattice algorithm and by intersecting
    /// the structuring elements.
    Meet {
        #[command(flatten)]
        input: ImageInput,
        #[arg(long = "se", required = true)]
        ses: Vec<StructuringElement>,
        #[arg(long = "alg", default_value = "dmeet+")]
        algorithm: Algorithm,
    },
    Dilate {
        #[command(flatten)]
        input: ImageInput,
        #[arg(long = "se")]
        se: StructuringElement,
        /// Write PBM instead of the text grid.
        #[arg(long)]
        pbm: bool,
    },
}

#[derive(Debug, Args)]
pub struct ImageInput {
    /// Text grid (`.`/`#`) or plain PBM file.
    #[arg(long, conflicts_with = "grid")]
    pub image: Option<PathBuf>,
    /// `WxH`: a random image of this size drawn from `--seed`.
    #[arg(long)]
    pub grid: Option<String>,
}

impl ImageInput {
    fn load(&self, seed: u64) -> Result<BinaryImage> {
        match (&self.image, &self.grid) {
            (Some(path), _) => BinaryImage::parse_any(&fs::read_to_string(path)?),
            (None, Some(grid)) => {
                let (w, h) = grid
                    .split_once('x')
                    .and_then(|(w, h)| Some((w.parse::<usize>().ok()?, h.parse::<usize>().ok()?)))
                    .ok_or_else(|| Error::Parse(format!("grid `{grid}` should be WxH")))?;
                use rand::{Rng, SeedableRng};
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                let mut img = BinaryImage::empty(w, h);
                for y in 0..h {
                    for x in 0..w {
                        img.set(x, y, rng.gen_bool(0.5));
                    }
                }
                Ok(img)
            }
            (None, None) => Err(Error::Parse("give --image or --grid".into())),
        }
    }
}

/// Runs a parsed command, writing its primary output to `stdout` unless
/// `--out` redirects it.
pub fn run(cli: &Cli, stdout: &mut dyn Write) -> Result<()> {
    let mut buffer = Vec::new();
    let target: &mut dyn Write = if cli.out.is_some() && !matches!(cli.command, Command::Latgen { .. }) {
        &mut buffer
    } else {
        stdout
    };
    match &cli.command {
        Command::Meet(args) => meet(cli, args, target)?,
        Command::Bench(args) => bench(cli, args, target)?,
        Command::Count(args) => count(cli, args, target)?,
        Command::Latgen { command } => latgen(cli, command, target)?,
        Command::Morph { command } => morph(cli, command, target)?,
    }
    if let (Some(path), false) = (&cli.out, buffer.is_empty()) {
        fs::write(path, buffer)?;
    }
    Ok(())
}

fn meet(cli: &Cli, args: &MeetArgs, out: &mut dyn Write) -> Result<()> {
    let lattice = args.lattice.build()?;
    let set = load_set(cli, args, &lattice)?;
    let r = args.algorithm.run(&lattice, &set)?;
    writeln!(out, "{}", r.result)?;
    writeln!(
        out,
        "joins={} meets={} subtractions={} sigma_reductions={}",
        r.op_counts.joins, r.op_counts.meets, r.op_counts.subtractions, r.sigma_reductions
    )?;
    if args.verify {
        match brute_force_meet(&lattice, &set, cli.budget) {
            Ok(truth) if truth.result == r.result => writeln!(out, "VERIFIED")?,
            Ok(truth) => {
                return Err(Error::VerificationFailed(format!(
                    "{} returned {} but the oracle gives {}",
                    args.algorithm, r.result, truth.result
                )))
            }
            Err(Error::BudgetExceeded { estimated, budget }) => {
                writeln!(out, "verification skipped: oracle needs about {estimated} candidates, budget {budget}")?
            }
            Err(e) => return Err(e),
        }
    }
    Ok(())
}

fn load_set(cli: &Cli, args: &MeetArgs, lattice: &Lattice) -> Result<Vec<Endofunction>> {
    let mut set = args
        .endos
        .iter()
        .map(|p| Endofunction::parse(lattice, &fs::read_to_string(p)?))
        .collect::<Result<Vec<_>>>()?;
    if let Some(m) = args.random {
        for k in 0..m as u64 {
            set.push(random_join_endomorphism(lattice, cli.seed.wrapping_add(k))?);
        }
    }
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(set)
}

fn bench(cli: &Cli, args: &BenchArgs, out: &mut dyn Write) -> Result<()> {
    let records = run_bench(&BenchConfig {
        family: args.family,
        sizes: args.sizes.clone(),
        set_sizes: args.set_sizes.clone(),
        algorithms: args.algorithms.clone(),
        runs: args.runs,
        seed: cli.seed,
    })?;
    write_csv(out, &records)
}

fn count(cli: &Cli, args: &CountArgs, out: &mut dyn Write) -> Result<()> {
    writeln!(out, "{}", CountReport::CSV_HEADER)?;
    for &n in &args.n {
        let spec = match args.family {
            CountFamily::Mn => LatticeSpec::Mn(n),
            CountFamily::Powerset => LatticeSpec::Powerset(n),
            CountFamily::Chain => LatticeSpec::Chain(n),
        };
        writeln!(out, "{}", count_named(&spec, cli.budget)?.csv_row())?;
    }
    Ok(())
}

fn latgen(cli: &Cli, command: &LatgenCommand, out: &mut dyn Write) -> Result<()> {
    match command {
        LatgenCommand::All { max_n } => {
            let dir = cli.out.clone().unwrap_or_else(|| PathBuf::from("lattices"));
            let generated = generate_all_lattices(*max_n)?;
            write_generated(&dir, &generated)?;
            for (size, count) in generated.counts() {
                writeln!(out, "{size},{count}")?;
            }
        }
        LatgenCommand::Random { n, distributive } => {
            let l = if *distributive {
                random_distributive_lattice(*n, cli.seed)?
            } else {
                random_lattice(*n, cli.seed)?
            };
            emit(cli, out, write_cover_relation(&l).as_bytes())?;
        }
        LatgenCommand::Conjecture { max_n, all_lattices } => {
            let scope = if *all_lattices { SearchScope::AllLattices } else { SearchScope::Distributive };
            let r = conjecture_search_in(*max_n, cli.seed, scope)?;
            let mut text = format!(
                "lattices={} pairs={} without_gain={}\n",
                r.lattices, r.pairs_examined, r.counterexamples
            );
            match &r.first {
                Some(c) => text.push_str(&format!(
                    "first: {:?} |E|={} -> {:?} |E|={} reverified={}\n",
                    c.before, c.endomorphisms_before, c.after, c.endomorphisms_after, c.reverified
                )),
                None => text.push_str("exhausted: every augmentation has more join-endomorphisms\n"),
            }
            emit(cli, out, text.as_bytes())?;
        }
    }
    Ok(())
}

/// Latgen writes files itself; other output still honours `--out`.
fn emit(cli: &Cli, out: &mut dyn Write, bytes: &[u8]) -> Result<()> {
    match &cli.out {
        Some(path) => fs::write(path, bytes)?,
        None => out.write_all(bytes)?,
    }
    Ok(())
}

fn write_generated(dir: &Path, generated: &crate::latgen::GeneratedLattices) -> Result<()> {
    fs::create_dir_all(dir)?;
    let mut csv = String::from("size,count\n");
    for (size, count) in generated.counts() {
        csv.push_str(&format!("{size},{count}\n"));
        for (i, l) in generated.lattices(size).enumerate() {
            fs::write(dir.join(format!("lattice_{size}_{i:03}.txt")), write_cover_relation(&l))?;
        }
    }
    fs::write(dir.join("counts.csv"), csv)?;
    Ok(())
}

fn morph(cli: &Cli, command: &MorphCommand, out: &mut dyn Write) -> Result<()> {
    match command {
        MorphCommand::Meet { input, ses, algorithm } => {
            let image = input.load(cli.seed)?;
            let r = meet_of_dilations(&image, ses, *algorithm)?;
            writeln!(
                out,
                "# input\n{image}# {algorithm} on the pixel lattice\n{}# intersected structuring element\n{}",
                r.via_lattice, r.via_intersection
            )?;
            writeln!(out, "{}", if r.agree() { "AGREE" } else { "DIFFER" })?;
            if !r.agree() {
                return Err(Error::VerificationFailed("lattice and intersection results differ".into()));
            }
        }
        MorphCommand::Dilate { input, se, pbm } => {
            let result = dilate(&input.load(cli.seed)?, se);
            let text = if *pbm { result.to_pbm() } else { result.to_text() };
            out.write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

/// Parses `std::env::args` and runs; the binary's whole body.
pub fn main_entry() -> std::process::ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    match run(&cli, &mut stdout.lock()) {
        Ok(()) => std::process::ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            std::process::ExitCode::FAILURE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Result<String> {
        let cli = Cli::try_parse_from(std::iter::once("joinendo").chain(args.iter().copied()))
            .map_err(|e| Error::Parse(e.to_string()))?;
        let mut buf = Vec::new();
        run(&cli, &mut buf)?;
        Ok(String::from_utf8(buf).unwrap())
    }

    #[test]
    fn count_row() {
        let out = run_args(&["count", "mn", "--n", "3"]).unwrap();
        assert_eq!(out, "lattice,n,formula,enumerated,f1,f2,f3,f4\nM_3,5,50,50,1,12,3,34\n");
    }

    #[test]
    fn meet_with_random_inputs_verifies() {
        let out = run_args(&["meet", "--lattice", "n5", "--random", "3", "--alg", "gmeet", "--verify", "--seed", "4"]).unwrap();
        assert!(out.ends_with("VERIFIED\n"), "{out}");
    }

    #[test]
    fn dmeet_on_m3_fails() {
        let err = run_args(&["meet", "--lattice", "mn:3", "--random", "2", "--alg", "dmeet"]).unwrap_err();
        assert!(matches!(err, Error::NotDistributive));
    }

    #[test]
    fn morph_meet_agrees() {
        let out = run_args(&["morph", "meet", "--grid", "2x2", "--se", "cross", "--se", "square"]).unwrap();
        assert!(out.ends_with("AGREE\n"));
    }
}
