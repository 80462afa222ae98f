//! Command-line front end: evaluate the series and remainder, list zeroes,
//! print the zero table and emit sweep data for plotting.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lacunary::delta::{delta0, delta0_dominant, delta_of_x};
use lacunary::series::{f_bilateral, g_ref, SeriesParams, DEFAULT_EPS_TERM};
use lacunary::zeros::{build_table, delta0_zeros, map_zero_to_delta, ZeroLocation, DISPLAY_MIN_W};
use lacunary::Error;

#[derive(Debug, Parser)]
#[command(
    name = "lacunary",
    version,
    about = "Bilateral lacunary series, remainder and zeroes"
)]
struct Cli {
    /// Relative term truncation threshold.
    #[arg(long, global = true, default_value_t = DEFAULT_EPS_TERM)]
    eps: f64,

    /// Harmonic cap for the gamma-character sums.
    #[arg(long, global = true, default_value_t = lacunary::complexfn::DEFAULT_K_MAX)]
    kmax: usize,

    /// Digits after the decimal point.
    #[arg(long, global = true, default_value_t = 10,
          value_parser = clap::value_parser!(u8).range(1..=17))]
    decimals: u8,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum What {
    F,
    G,
    Delta,
    Delta0,
    Dominant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    Delta,
    Delta0,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate one function at a point.
    Eval {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        x: f64,
        #[arg(long, value_enum)]
        what: What,
    },
    /// List the first zeroes of Δ or Δ₀, ordered by increasing x.
    Zeros {
        #[arg(long)]
        a: f64,
        #[arg(long, value_enum)]
        target: Target,
        #[arg(long)]
        count: usize,
    },
    /// Paired zeroes of Δ and Δ₀ with their relative discrepancy.
    Table {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        count: usize,
    },
    /// Sample x, f, g, Δ and Δ₀ on a grid.
    Sweep {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long)]
        points: usize,
        /// Space samples uniformly in ln(1 − x).
        #[arg(long)]
        log_w: bool,
    },
}

fn fixed(v: f64, decimals: usize) -> String {
    format!("{v:.decimals$}")
}

fn sci(v: f64, decimals: usize) -> String {
    format!("{v:.decimals$e}")
}

struct Output {
    text: String,
}

impl Output {
    fn new() -> Self {
        Output {
            text: String::new(),
        }
    }

    fn line(&mut self, fields: &[String]) {
        self.text.push_str(&fields.join(","));
        self.text.push('\n');
    }

    fn json(&mut self, value: &Value) {
        self.text
            .push_str(&serde_json::to_string_pretty(value).expect("finite values"));
        self.text.push('\n');
    }
}

fn display_x(z: &ZeroLocation, decimals: usize) -> Option<String> {
    (z.w >= DISPLAY_MIN_W).then(|| fixed(z.x(), decimals))
}

fn eval(cli: &Cli, a: f64, x: f64, what: What) -> Result<Output, Error> {
    let params = SeriesParams::with_limits(a, cli.eps, cli.kmax)?;
    let value = match what {
        What::F => f_bilateral(x, &params)?,
        What::G => g_ref(x, a)?,
        What::Delta => delta_of_x(x, &params)?,
        What::Delta0 => {
            if !(x > 0.0 && x < 1.0) {
                return Err(Error::Domain(format!("x must lie in (0, 1), got {x}")));
            }
            delta0(1.0 - x, &params)?
        }
        What::Dominant => {
            if !(x > 0.0 && x < 1.0) {
                return Err(Error::Domain(format!("x must lie in (0, 1), got {x}")));
            }
            delta0_dominant(1.0 - x, &params)?
        }
    };
    let d = usize::from(cli.decimals);
    let mut out = Output::new();
    match cli.format {
        Format::Csv => out.line(&[fixed(value, d)]),
        Format::Json => {
            let what = what.to_possible_value().expect("no skipped variants");
            out.json(&json!({
                "a": a,
                "x": x,
                "what": what.get_name(),
                "value": value,
                "display": fixed(value, d),
            }))
        }
    }
    Ok(out)
}

fn zeros(cli: &Cli, a: f64, target: Target, count: usize) -> Result<Output, Error> {
    let params = SeriesParams::with_limits(a, cli.eps, cli.kmax)?;
    if !(1..=lacunary::zeros::MAX_TABLE_ROWS).contains(&count) {
        return Err(Error::Domain(format!(
            "count must lie in [1, {}], got {count}",
            lacunary::zeros::MAX_TABLE_ROWS
        )));
    }
    let mut found = delta0_zeros(count, &params)?;
    if target == Target::Delta {
        found = found
            .iter()
            .map(map_zero_to_delta)
            .collect::<Result<_, _>>()?;
    }

    let d = usize::from(cli.decimals);
    let mut out = Output::new();
    match cli.format {
        Format::Csv => {
            out.line(&["n".into(), "x".into(), "w".into(), "s".into()]);
            for (n, z) in found.iter().enumerate() {
                out.line(&[
                    n.to_string(),
                    display_x(z, d).unwrap_or_default(),
                    sci(z.w, d),
                    fixed(z.s, d),
                ]);
            }
        }
        Format::Json => {
            let rows: Vec<Value> = found
                .iter()
                .enumerate()
                .map(|(n, z)| {
                    json!({
                        "n": n,
                        "x": (z.w >= DISPLAY_MIN_W).then(|| z.x()),
                        "w": z.w,
                        "s": z.s,
                        "x_display": display_x(z, d),
                        "w_display": sci(z.w, d),
                        "s_display": fixed(z.s, d),
                    })
                })
                .collect();
            let target = match target {
                Target::Delta => "delta",
                Target::Delta0 => "delta0",
            };
            out.json(&json!({ "a": a, "target": target, "zeros": rows }));
        }
    }
    Ok(out)
}

fn table(cli: &Cli, a: f64, count: usize) -> Result<Output, Error> {
    let params = SeriesParams::with_limits(a, cli.eps, cli.kmax)?;
    let rows = build_table(count, &params)?;
    let d = usize::from(cli.decimals);
    let d_rel = d.saturating_sub(3).max(1);
    let mut out = Output::new();
    match cli.format {
        Format::Csv => {
            out.line(&[
                "n".into(),
                "x_delta".into(),
                "x_delta0".into(),
                "rel_err".into(),
            ]);
            for r in &rows {
                out.line(&[
                    r.n.to_string(),
                    display_x(&r.delta, d).unwrap_or_default(),
                    display_x(&r.delta0, d).unwrap_or_default(),
                    fixed(r.rel_err, d_rel),
                ]);
            }
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "n": r.n,
                        "x_delta": r.x_delta(),
                        "x_delta0": r.x_delta0(),
                        "x_delta0_ladder": r.x_delta0_ladder(),
                        "w_delta": r.delta.w,
                        "w_delta0": r.delta0.w,
                        "s_delta": r.delta.s,
                        "s_delta0": r.delta0.s,
                        "rel_err": r.rel_err,
                        "x_delta_display": display_x(&r.delta, d),
                        "x_delta0_display": display_x(&r.delta0, d),
                        "rel_err_display": fixed(r.rel_err, d_rel),
                    })
                })
                .collect();
            out.json(&json!({ "a": a, "rows": rows }));
        }
    }
    Ok(out)
}

fn sweep_grid(from: f64, to: f64, points: usize, log_w: bool) -> Result<Vec<f64>, Error> {
    for (name, v) in [("from", from), ("to", to)] {
        if !(v > 0.0 && v < 1.0) {
            return Err(Error::Domain(format!(
                "--{name} must lie in (0, 1), got {v}"
            )));
        }
    }
    if from >= to {
        return Err(Error::Domain(format!(
            "--from ({from}) must be below --to ({to})"
        )));
    }
    if points < 2 {
        return Err(Error::Domain(format!(
            "--points must be at least 2, got {points}"
        )));
    }
    let last = (points - 1) as f64;
    let mut grid: Vec<f64> = if log_w {
        let (s0, s1) = ((1.0 - from).ln(), (1.0 - to).ln());
        (0..points)
            .map(|i| 1.0 - (s0 + (s1 - s0) * i as f64 / last).exp())
            .collect()
    } else {
        (0..points)
            .map(|i| from + (to - from) * i as f64 / last)
            .collect()
    };
    grid[0] = from;
    grid[points - 1] = to;
    Ok(grid)
}

fn sweep(
    cli: &Cli,
    a: f64,
    from: f64,
    to: f64,
    points: usize,
    log_w: bool,
) -> Result<Output, Error> {
    let params = SeriesParams::with_limits(a, cli.eps, cli.kmax)?;
    let grid = sweep_grid(from, to, points, log_w)?;
    let samples = grid
        .iter()
        .map(|&x| {
            Ok([
                x,
                f_bilateral(x, &params)?,
                g_ref(x, a)?,
                delta_of_x(x, &params)?,
                delta0(1.0 - x, &params)?,
            ])
        })
        .collect::<Result<Vec<_>, Error>>()?;

    let d = usize::from(cli.decimals);
    let mut out = Output::new();
    match cli.format {
        Format::Csv => {
            out.line(&["x", "f", "g", "delta", "delta0"].map(String::from));
            for s in &samples {
                let mut fields = vec![fixed(s[0], d)];
                fields.extend(s[1..].iter().map(|&v| sci(v, d)));
                out.line(&fields);
            }
        }
        Format::Json => {
            let rows: Vec<Value> = samples
                .iter()
                .map(|s| json!({ "x": s[0], "f": s[1], "g": s[2], "delta": s[3], "delta0": s[4] }))
                .collect();
            out.json(&json!({ "a": a, "log_w": log_w, "points": rows }));
        }
    }
    Ok(out)
}

/// Run the CLI on `args` (including the program name). Returns the exit code:
/// 0 on success, 1 on a numerical or domain error, 2 on a usage error.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };

    let result = match cli.command {
        Command::Eval { a, x, what } => eval(&cli, a, x, what),
        Command::Zeros { a, target, count } => zeros(&cli, a, target, count),
        Command::Table { a, count } => table(&cli, a, count),
        Command::Sweep {
            a,
            from,
            to,
            points,
            log_w,
        } => sweep(&cli, a, from, to, points, log_w),
    };

    match result {
        Ok(out) => match stdout.write_all(out.text.as_bytes()) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(stderr, "error: io: {e}");
                1
            }
        },
        Err(e) => {
            // some messages already carry their tag
            let msg = e.to_string().replace('\n', " ");
            let prefix = format!("{}: ", e.kind());
            let msg = msg.strip_prefix(&prefix).unwrap_or(&msg);
            let _ = writeln!(stderr, "error: {}: {msg}", e.kind());
            1
        }
    }
}
