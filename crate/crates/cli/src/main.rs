//! `bchcrt` — build BCH codes, encode and verify words, and report the
//! XOR/fanout cost of the branch-parallel encoder datapath.
//!
//! Exit codes: 0 success, 1 runtime or verification failure, 2 usage.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bchcrt::{
    cost_report, encode_systematic, Backend, BchCode, Codeword, CrtPlan, Datapath, Gf2Poly,
    LfsrCircuit, Message,
};

#[derive(Parser)]
#[command(
    name = "bchcrt",
    version,
    about = "Binary BCH encoder toolkit with a CRT-parallel datapath"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args)]
struct CodeArgs {
    /// Extension degree t (2..=16); the code length is N = 2^t - 1.
    #[arg(long)]
    t: u32,

    /// Designed distance delta (2..=N).
    #[arg(long)]
    delta: usize,

    /// Primitive polynomial override, hex ("13") or exponent list
    /// ("x^4+x+1"). Defaults to the built-in table entry for t.
    #[arg(long)]
    prim_poly: Option<String>,
}

impl CodeArgs {
    fn build(&self) -> Result<BchCode, String> {
        let prim = match &self.prim_poly {
            Some(s) => Some(s.parse::<Gf2Poly>().map_err(|e| e.to_string())?),
            None => None,
        };
        BchCode::build(self.t, self.delta, prim).map_err(|e| e.to_string())
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Copy, Clone, ValueEnum)]
enum BackendArg {
    Naive,
    #[value(name = "lfsr_direct", alias = "lfsr-direct")]
    LfsrDirect,
    Crt,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Backend {
        match b {
            BackendArg::Naive => Backend::Naive,
            BackendArg::LfsrDirect => Backend::LfsrDirect,
            BackendArg::Crt => Backend::Crt,
        }
    }
}

#[derive(Args)]
struct WordInput {
    /// Read the word from a raw binary file of exactly ceil(bits/8)
    /// bytes, MSB first, zero padding at the top of the first byte.
    #[arg(long = "in", value_name = "FILE", conflicts_with = "hex")]
    input: Option<PathBuf>,

    /// The word as a hex string of the same byte layout.
    #[arg(long)]
    hex: Option<String>,
}

impl WordInput {
    fn bytes(&self) -> Result<Vec<u8>, String> {
        match (&self.input, &self.hex) {
            (Some(path), None) => fs::read(path).map_err(|e| format!("{}: {e}", path.display())),
            (None, Some(hex)) => {
                let s = hex.trim();
                if s.len() % 2 != 0 {
                    return Err("hex string must have an even number of digits".into());
                }
                (0..s.len() / 2)
                    .map(|i| {
                        u8::from_str_radix(&s[2 * i..2 * i + 2], 16)
                            .map_err(|_| format!("invalid hex byte {:?}", &s[2 * i..2 * i + 2]))
                    })
                    .collect()
            }
            _ => Err("exactly one of --in or --hex is required".into()),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Construct a code and print its descriptor.
    Build {
        #[command(flatten)]
        code: CodeArgs,

        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },

    /// Systematically encode a K-bit message into an N-bit codeword.
    Encode {
        #[command(flatten)]
        code: CodeArgs,

        #[arg(long, value_enum, default_value = "crt")]
        backend: BackendArg,

        #[command(flatten)]
        word: WordInput,

        /// Write the codeword to this file as raw bytes; without it the
        /// codeword is printed as hex on stdout.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,

        /// Dump a per-clock register trace of the LFSR backends to FILE
        /// (`<label> <cycle> <in> <out> <state-hex>` lines).
        #[arg(long, value_name = "FILE")]
        trace: Option<PathBuf>,

        /// Simulate the CRT branches on one thread each. The output is
        /// identical to the serial run.
        #[arg(long)]
        parallel: bool,
    },

    /// Check that an N-bit word is a codeword (all designed roots vanish).
    Verify {
        #[command(flatten)]
        code: CodeArgs,

        #[command(flatten)]
        word: WordInput,
    },

    /// Print the XOR-gate and fanout ledger of the encoder datapath.
    Cost {
        #[command(flatten)]
        code: CodeArgs,

        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },

    /// Re-derive the reference constructions and oracle checks.
    Selftest,
}

fn encode_with_options(
    code: &BchCode,
    m: &Message,
    backend: Backend,
    parallel: bool,
    trace: Option<&mut dyn Write>,
) -> Result<Codeword, String> {
    let err = |e: bchcrt::Error| e.to_string();
    // The plain paths go through the library entry point; tracing and
    // branch-parallel runs drive the circuits directly.
    let parity = match (backend, trace) {
        (Backend::LfsrDirect, Some(sink)) => {
            let shifted = m.to_poly().shifted_left(code.n() - code.k());
            let mut div = LfsrCircuit::divider(code.generator()).map_err(err)?;
            let bits = shifted.to_bits_msb(code.n());
            let (_, rem) = bchcrt::simulate_serial_traced(&mut div, &bits, "div", sink)
                .map_err(|e| e.to_string())?;
            rem
        }
        (Backend::Crt, trace) if parallel || trace.is_some() => {
            let plan = CrtPlan::new(code).map_err(err)?;
            let mut dp = Datapath::build(&plan);
            match trace {
                Some(sink) => dp.remainder_traced(m, sink).map_err(err)?,
                None => dp.remainder_parallel(m).map_err(err)?,
            }
        }
        (backend, _) => return encode_systematic(code, m, backend).map_err(err),
    };
    let shifted = m.to_poly().shifted_left(code.n() - code.k());
    Codeword::from_poly(&(&shifted + &parity), code.n()).map_err(err)
}

fn build_table(code: &BchCode) -> String {
    let mut s = String::new();
    s.push_str(&format!(
        "[{},{}] BCH code: t={}, delta={}, N={}, K={}\n",
        code.n(),
        code.k(),
        code.t(),
        code.delta(),
        code.n(),
        code.k()
    ));
    s.push_str(&format!(
        "prim_poly = {} (hex {})\n",
        code.field().prim_poly(),
        code.field().prim_poly().to_hex()
    ));
    s.push_str(&format!(
        "g = {} (hex {})\n",
        code.generator(),
        code.generator().to_hex()
    ));
    s.push_str(&format!("r = {} factors:\n", code.r()));
    for (coset, w) in code.cosets().iter().zip(code.factors()) {
        s.push_str(&format!(
            "  coset {:?} -> w = {} (hex {})\n",
            coset.members(),
            w,
            w.to_hex()
        ));
    }
    s
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.cmd {
        Command::Build { code, format } => {
            let code = code.build()?;
            match format {
                Format::Json => println!("{}", code.descriptor().to_json()),
                Format::Table => print!("{}", build_table(&code)),
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Encode {
            code,
            backend,
            word,
            out,
            trace,
            parallel,
        } => {
            let code = code.build()?;
            let m = Message::from_bytes(&word.bytes()?, code.k()).map_err(|e| e.to_string())?;
            let mut trace_file = match &trace {
                Some(path) => {
                    Some(fs::File::create(path).map_err(|e| format!("{}: {e}", path.display()))?)
                }
                None => None,
            };
            let cw = encode_with_options(
                &code,
                &m,
                backend.into(),
                parallel,
                trace_file.as_mut().map(|f| f as &mut dyn Write),
            )?;
            match out {
                Some(path) => fs::write(&path, cw.to_bytes())
                    .map_err(|e| format!("{}: {e}", path.display()))?,
                None => println!("{}", cw.to_hex()),
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Verify { code, word } => {
            let code = code.build()?;
            let cw = Codeword::from_bytes(&word.bytes()?, code.n()).map_err(|e| e.to_string())?;
            match code.first_failing_root(&cw).map_err(|e| e.to_string())? {
                None => {
                    println!("codeword valid");
                    Ok(ExitCode::SUCCESS)
                }
                Some(j) => {
                    eprintln!("codeword invalid: c(alpha^{j}) != 0");
                    Ok(ExitCode::from(1))
                }
            }
        }

        Command::Cost { code, format } => {
            let code = code.build()?;
            let plan = CrtPlan::new(&code).map_err(|e| e.to_string())?;
            let dp = Datapath::build(&plan);
            let rep = cost_report(&code, &plan, &dp);
            match format {
                Format::Json => println!("{}", rep.to_json()),
                Format::Table => print!("{}", rep.to_table()),
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Selftest => {
            let results = bchcrt::selftest::run_selftest();
            let mut ok = true;
            for r in &results {
                println!(
                    "{} {}: {}",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.name,
                    r.detail
                );
                ok &= r.passed;
            }
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
