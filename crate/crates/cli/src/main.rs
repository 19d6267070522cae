use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ctlab::suite::Runner;

#[derive(Parser)]
#[command(name = "ctlab", version, about = "Exact verification suites for Curtis-Tits amalgams of type Ã")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Seed for every sampled check.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Emit the JSON report (default).
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Emit a human-readable table instead of JSON.
    #[arg(long, global = true)]
    text: bool,
    /// Sample count; its meaning depends on the subcommand.
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Report wall-clock times instead of zeros.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Point {
    #[value(name = "-1")]
    MinusOne,
    #[value(name = "1")]
    One,
    Zeta,
}

#[derive(Clone, Copy, ValueEnum)]
enum Case {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    Rank2,
}

#[derive(Subcommand)]
enum Command {
    /// Build an amalgam and check its completion against the defining relations.
    Amalgam {
        #[arg(long, default_value_t = 5)]
        q: u32,
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// δ on k is x ↦ x^(p^frob).
        #[arg(long, default_value_t = 0)]
        frob: u32,
        /// Use the non-orientable realization inside SL_2n(k[t, t⁻¹]).
        #[arg(long, conflicts_with = "mixed")]
        tau: bool,
        /// Use the mixed realization for δ = α∘τ.
        #[arg(long)]
        mixed: bool,
    },
    /// det_R suite for endomorphisms over k{t, t⁻¹}.
    Detr {
        #[arg(long, default_value_t = 4)]
        q: u32,
        /// Order of δ.
        #[arg(long, default_value_t = 2)]
        s: usize,
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
    /// The form β and its adjoint θ.
    Form {
        #[arg(long, default_value_t = 5)]
        q: u32,
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
    /// Specialize t ↦ a and check the finite classical forms.
    Specialize {
        #[arg(long, default_value_t = 5)]
        q: u32,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, value_enum, allow_hyphen_values = true)]
        at: Point,
    },
    /// Twisted involutions of the affine Weyl group of type Ã_{m-1}.
    Coxeter {
        #[arg(long, default_value_t = 8)]
        m: usize,
        #[arg(long, default_value_t = 4)]
        shift: usize,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
    },
    /// Opposition geometries in PG(3, q).
    Geometry {
        #[arg(long, default_value_t = 5)]
        q: u32,
        #[arg(long, value_enum)]
        case: Case,
    },
    /// The full acceptance suite.
    All {
        #[arg(long, default_value_t = 5)]
        q: u32,
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let c = &cli.common;
    let report = match cli.command {
        Command::Amalgam { q, n, frob, tau, mixed } => {
            let samples = c.samples.unwrap_or(3);
            // α must be nontrivial in the mixed case
            let frob = if mixed { frob.max(1) } else { frob };
            let mut r = Runner::new("amalgam", c.seed, c.timings);
            r.param("q", q).param("n", n).param("frob", frob).param("tau", tau).param("mixed", mixed).param("samples", samples);
            r.amalgam_abstract(q, n, frob, tau || mixed);
            if tau {
                r.amalgam_tau(q, n, samples);
            } else if mixed {
                r.amalgam_mixed(q, n, frob as i64, samples, 50);
            } else {
                r.amalgam_delta(q, n, frob as i64, samples);
            }
            r.finish()
        }
        Command::Detr { q, s, n } => {
            let samples = c.samples.unwrap_or(100);
            let mut r = Runner::new("detr", c.seed, c.timings);
            r.param("q", q).param("s", s).param("n", n).param("samples", samples);
            r.detr(q, s, n, samples);
            r.finish()
        }
        Command::Form { q, n } => {
            let samples = c.samples.unwrap_or(100);
            let mut r = Runner::new("form", c.seed, c.timings);
            r.param("q", q).param("n", n).param("samples", samples);
            r.form(q, n, samples);
            r.finish()
        }
        Command::Specialize { q, n, at } => {
            let at = match at {
                Point::MinusOne => "-1",
                Point::One => "1",
                Point::Zeta => "zeta",
            };
            let mut r = Runner::new("specialize", c.seed, c.timings);
            r.param("q", q).param("n", n).param("at", at);
            r.specialize(q, n, at);
            r.finish()
        }
        Command::Coxeter { m, shift, max_len } => {
            let samples = c.samples.unwrap_or(200);
            let mut r = Runner::new("coxeter", c.seed, c.timings);
            r.param("m", m).param("shift", shift).param("max_len", max_len).param("samples", samples);
            r.coxeter(m, shift, max_len, samples);
            r.finish()
        }
        Command::Geometry { q, case } => {
            let samples = c.samples.unwrap_or(1000);
            let case = match case {
                Case::One => "1",
                Case::Two => "2",
                Case::Rank2 => "rank2",
            };
            let mut r = Runner::new("geometry", c.seed, c.timings);
            r.param("q", q).param("case", case).param("samples", samples);
            r.geometry(q, case, samples);
            r.finish()
        }
        Command::All { q, n } => {
            let samples = c.samples.unwrap_or(3);
            let mut r = Runner::new("all", c.seed, c.timings);
            r.param("q", q).param("n", n).param("samples", samples);
            r.all(q, n, samples);
            r.finish()
        }
    };
    if c.text {
        print!("{}", report.to_text());
    } else {
        println!("{}", report.to_json());
    }
    if report.ok() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
