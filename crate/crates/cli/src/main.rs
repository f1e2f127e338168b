use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;

#[derive(Parser, Debug)]
#[command(
    name = "chainlcd",
    version,
    about = "Linear codes over mixed alphabets of finite chain rings"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Code file (JSON).
    pub input: PathBuf,
    /// Emit a JSON report instead of text.
    #[arg(long)]
    pub json: bool,
    /// Galois twist `h` of the inner product.
    #[arg(long, default_value_t = 0)]
    pub h: u32,
    /// LCD decision method: oracle, structural or both.
    #[arg(long, default_value = "both")]
    pub method: String,
    /// log2 of the brute-force enumeration cap.
    #[arg(long = "alpha-cap", default_value_t = 16)]
    pub alpha_cap: u32,
    /// Seed for sampled checks.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum Verb {
    /// Standard generator matrix, permutations and transform.
    StandardForm(Common),
    /// Type and cardinality.
    Type(Common),
    /// The h-Galois dual.
    Dual(Common),
    /// The h-Galois hull.
    Hull(Common),
    /// h-Galois LCD test.
    Lcd(Common),
    /// Galois invariance, per-h duals and a subring generator matrix.
    Invariant(Common),
    /// Largest Galois-invariant subcode.
    Core(Common),
    /// Subring subcode.
    Res(Common),
    /// Trace code.
    Trace(Common),
    /// Extension of a code over the fixed subring.
    Ext {
        #[command(flatten)]
        common: Common,
        /// Ring file (JSON) of the extension ring.
        #[arg(long)]
        over: PathBuf,
    },
    /// Trace of the dual against the dual of the subring subcode.
    Delsarte(Common),
    /// Gray image.
    Gray {
        #[command(flatten)]
        common: Common,
        /// Apply the Z_q Z_{q^2} -> F_q F_q[θ] digit map first.
        #[arg(long)]
        via_upsilon: bool,
        /// Random codeword pairs for the isometry check.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Homogeneous weight distribution.
    Weight(Common),
    /// Minimum distance of a code, its dual, or its Gray image.
    Distance {
        #[command(flatten)]
        common: Common,
        /// Use the Gray image.
        #[arg(long)]
        gray: bool,
        /// Use the h-Galois dual.
        #[arg(long)]
        dual: bool,
        /// Apply the Z_q Z_{q^2} -> F_q F_q[θ] digit map before the Gray map.
        #[arg(long)]
        via_upsilon: bool,
    },
    /// LCD transfer through the Z_q Z_{q^2} digit map and the Gray map.
    Transfer(Common),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = commands::common(&cli.verb).json;
    match commands::run(&cli.verb) {
        Ok(report) => {
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report.to_json()).expect("serializable")
                );
            } else {
                for line in &report.human {
                    println!("{line}");
                }
            }
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
