//! Subcommands of the `pants` binary.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use pants_core::algorithm::{decompose, verify, VerificationReport};
use pants_core::bounds::BoundTable;
use pants_core::geodesy::SurfaceGeometry;
use pants_core::surface::{bolza_group, FuchsianGroup};
use pants_core::{Settings, Tolerances};

use crate::error::{CliError, Result};
use crate::format::{self, sig9, DecompositionFile, TraceEntry};
use crate::random::random_surface;
use crate::render::render_svg;

#[derive(Debug, Parser)]
#[command(name = "pants", version, about = "Pants decompositions of closed hyperbolic surfaces with certified length bounds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the Bavard, R_g, rough R_g and Bers bounds for a genus.
    Bounds {
        #[arg(long)]
        genus: u32,
    },
    /// Write a random Fenchel–Nielsen surface file.
    RandomSurface {
        #[arg(long)]
        genus: u32,
        #[arg(long, default_value_t = 1.8)]
        min: f64,
        #[arg(long, default_value_t = 4.0)]
        max: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Shape::Ring)]
        shape: Shape,
        /// Output path; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the systole and a word representing it.
    Systole {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Decompose a surface into pants and certify the result.
    Decompose {
        #[command(flatten)]
        source: Source,
        /// Decomposition output path.
        #[arg(long)]
        out: PathBuf,
        /// Trace output path; defaults to the output path plus `.trace.json`.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Recheck a decomposition file against a surface.
    Verify {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        decomposition: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Draw the fundamental domain and the curves of a decomposition as SVG.
    Render {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        decomposition: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Shape {
    Ring,
    Linear,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Surface file.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Use the built-in Bolza surface instead of a file.
    #[arg(long)]
    pub bolza: bool,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Low-discrepancy samples of the fundamental domain.
    #[arg(long, default_value_t = 3000)]
    pub samples: usize,
    /// Cap on group elements visited by one enumeration.
    #[arg(long, default_value_t = 10_000_000)]
    pub budget: usize,
    #[arg(long)]
    pub tol_det: Option<f64>,
    #[arg(long)]
    pub tol_iso: Option<f64>,
    #[arg(long)]
    pub tol_class: Option<f64>,
    #[arg(long)]
    pub tol_cross: Option<f64>,
    #[arg(long)]
    pub tol_rel: Option<f64>,
    #[arg(long)]
    pub tol_len: Option<f64>,
    /// Start point `x,y` in the upper half-plane.
    #[arg(long, value_name = "X,Y")]
    pub base_point: Option<String>,
}

impl RunArgs {
    pub fn settings(&self) -> Result<Settings> {
        let d = Tolerances::default();
        let tolerances = Tolerances {
            det: self.tol_det.unwrap_or(d.det),
            iso: self.tol_iso.unwrap_or(d.iso),
            class: self.tol_class.unwrap_or(d.class),
            cross: self.tol_cross.unwrap_or(d.cross),
            rel: self.tol_rel.unwrap_or(d.rel),
            len: self.tol_len.unwrap_or(d.len),
        };
        if !tolerances.is_valid() {
            return Err(CliError::Input("tolerances must be positive and finite".into()));
        }
        if self.budget < 10_000 {
            return Err(CliError::Input("budget must be at least 10000".into()));
        }
        if self.samples == 0 {
            return Err(CliError::Input("samples must be positive".into()));
        }
        let base_point = self.base_point.as_deref().map(parse_point).transpose()?;
        Ok(Settings {
            tolerances,
            budget: self.budget,
            samples: self.samples,
            base_point,
            seed: self.seed,
        })
    }
}

fn parse_point(s: &str) -> Result<(f64, f64)> {
    let bad = || CliError::Input(format!("base point `{s}` is not `x,y` with y > 0"));
    let (x, y) = s.split_once(',').ok_or_else(bad)?;
    let x: f64 = x.trim().parse().map_err(|_| bad())?;
    let y: f64 = y.trim().parse().map_err(|_| bad())?;
    if !(x.is_finite() && y.is_finite() && y > 0.0) {
        return Err(bad());
    }
    Ok((x, y))
}

impl Source {
    pub fn group(&self, tol: &Tolerances) -> Result<FuchsianGroup> {
        match &self.input {
            Some(path) => format::read_surface(path)?.to_group(tol),
            None => Ok(bolza_group()),
        }
    }
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn main_exit() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(command: Command) -> Result<i32> {
    match command {
        Command::Bounds { genus } => {
            print!("{}", bounds_table(genus)?);
            Ok(0)
        }
        Command::RandomSurface {
            genus,
            min,
            max,
            seed,
            shape,
            out,
        } => {
            let s = random_surface(genus, min, max, shape == Shape::Ring, seed)?;
            let text = format::to_json(&s);
            match out {
                Some(p) => format::write_atomic(&p, text.as_bytes())?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Command::Systole { source, run } => {
            let settings = run.settings()?;
            let group = source.group(&settings.tolerances)?;
            let geo = SurfaceGeometry::new(&group, &settings)?;
            let (c, _) = geo.systole()?;
            println!("length {:.9}", c.length);
            println!("word {:?}", c.word.letters());
            Ok(0)
        }
        Command::Decompose {
            source,
            out,
            trace,
            run,
        } => cmd_decompose(&source, &out, trace.as_deref(), &run),
        Command::Verify {
            source,
            decomposition,
            run,
        } => {
            let settings = run.settings()?;
            let group = source.group(&settings.tolerances)?;
            let file: DecompositionFile = format::parse_json(&decomposition, &format::read_text(&decomposition)?)?;
            let pd = file.to_decomposition(&group)?;
            let rep = verify(&group, &pd, &settings);
            print!("{}", report_text(&rep));
            if rep.all_ok() {
                Ok(0)
            } else {
                Err(CliError::Verification("not every check passed".into()))
            }
        }
        Command::Render {
            source,
            decomposition,
            out,
            run,
        } => {
            let settings = run.settings()?;
            let group = source.group(&settings.tolerances)?;
            let pd = format::read_decomposition(&decomposition, group.genus)?.to_decomposition(&group)?;
            let geo = SurfaceGeometry::new(&group, &settings)?;
            let svg = render_svg(&geo, &pd.curves)?;
            format::write_atomic(&out, svg.as_bytes())?;
            Ok(0)
        }
    }
}

pub fn bounds_table(genus: u32) -> Result<String> {
    let t = BoundTable::new(genus)?;
    Ok(format!(
        "bavard     {:.6}\nr_g        {:.6}\nr_g_rough  {:.6}\nbers       {:.6}\n",
        t.bavard, t.r_g, t.r_g_rough, t.bers
    ))
}

pub fn report_text(r: &VerificationReport) -> String {
    format!(
        "curve_count_ok  {}\ndisjoint_ok     {}\neuler_ok        {}\nbound_ok        {}\nadmissible_ok   {}\nmax_length      {:.9}\nbers_bound      {:.9}\n",
        r.curve_count_ok, r.disjoint_ok, r.euler_ok, r.bound_ok, r.admissible_ok, r.max_length, r.bers_bound
    )
}

fn cmd_decompose(source: &Source, out: &Path, trace: Option<&Path>, run: &RunArgs) -> Result<i32> {
    let settings = run.settings()?;
    let group = source.group(&settings.tolerances)?;
    let (pd, steps) = match decompose(&group, &settings) {
        Ok(r) => r,
        Err(a) => {
            eprintln!("aborted after {} steps", a.trace.len());
            return Err(a.error.into());
        }
    };
    let rep = verify(&group, &pd, &settings);
    let trace_path = match trace {
        Some(p) => p.to_path_buf(),
        None => {
            let mut s = out.as_os_str().to_owned();
            s.push(".trace.json");
            PathBuf::from(s)
        }
    };
    let entries: Vec<TraceEntry> = steps.iter().map(TraceEntry::from).collect();
    format::write_atomic(out, format::to_json(&DecompositionFile::from(&pd)).as_bytes())?;
    format::write_atomic(&trace_path, format::to_json(&entries).as_bytes())?;
    for (k, c) in pd.curves.iter().enumerate() {
        println!("curve {k}  length {:.9}  word {:?}", sig9(c.length), c.word.letters());
    }
    println!("steps {}", steps.len());
    print!("{}", report_text(&rep));
    if pd.certificate.conditional {
        println!("certificate is conditional on curves shorter than 2 arcsinh 1");
    }
    if rep.all_ok() {
        Ok(0)
    } else {
        Err(CliError::Verification("decomposition failed its certificate".into()))
    }
}
