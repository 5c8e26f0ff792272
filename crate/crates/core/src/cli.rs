//! Command-line front end. Exit codes: 0 success, 1 domain error (JSON on
//! stderr), 2 usage error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::arc::{self, farey, ArcClass};
use crate::complex::{self, ArcComplexSlice};
use crate::error::{Error, Result};
use crate::flip::{self, BallOptions, FlipWord, MarkedTriangulation, DEFAULT_CAP};
use crate::rigidity::{self, checks, CombinatorialHomeo, SimplicialSelfMap};
use crate::surface::Surface;
use crate::triangulation::Triangulation;

#[derive(Parser, Debug)]
#[command(name = "arc-complex", version, about = "Triangulations, flip graphs and arc complexes of bordered surfaces")]
struct Cli {
    /// Worker threads for parallel stages.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Triangulations.
    #[command(subcommand)]
    Tri(TriCmd),
    /// Flips and flip graphs.
    #[command(subcommand)]
    Flip(FlipCmd),
    /// Arc classes.
    #[command(subcommand)]
    Arc(ArcCmd),
    /// Arc complexes.
    #[command(subcommand)]
    Complex(ComplexCmd),
    /// Simplicial maps of arc complexes.
    #[command(subcommand)]
    Rigidity(RigidityCmd),
}

#[derive(Args, Debug, Clone, Copy)]
struct SurfaceArgs {
    #[arg(long)]
    genus: u32,
    #[arg(long)]
    boundary: u32,
}

impl SurfaceArgs {
    fn surface(&self) -> Result<Surface> {
        Surface::new(self.genus, self.boundary)
    }
}

#[derive(Args, Debug, Clone, Copy)]
struct BallArgs {
    #[arg(long, default_value_t = 2)]
    radius: usize,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
enum TriCmd {
    /// The standard triangulation, optionally followed by a flip word.
    New {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long, default_value = "")]
        word: String,
    },
    /// Checks a triangulation file.
    Validate {
        #[arg(long = "in")]
        input: String,
    },
    /// Embedded or self-folded, for every triangle of a file.
    Classify {
        #[arg(long = "in")]
        input: String,
    },
}

#[derive(Subcommand, Debug)]
enum FlipCmd {
    /// Applies a flip word to a triangulation file.
    Apply {
        #[arg(long = "in")]
        input: String,
        #[arg(long)]
        word: String,
    },
    /// The flip graph ball around the standard triangulation.
    Ball {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[command(flatten)]
        ball: BallArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// A shortest flip word between two marked triangulations, each given by
    /// its word from the standard one.
    Path {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long, default_value = "")]
        from: String,
        #[arg(long, default_value = "")]
        to: String,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
}

#[derive(Subcommand, Debug)]
enum ArcCmd {
    /// Geometric intersection number of two classes.
    Intersect {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// Comma-separated coordinates, or `p/q` on the once-punctured torus.
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Flip word after which the class is an arc of the triangulation.
    Flatten {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
}

#[derive(Subcommand, Debug)]
enum ComplexCmd {
    /// The whole complex of an annulus or a pair of pants.
    Full {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// The slice spanned by a flip ball.
    Ball {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[command(flatten)]
        ball: BallArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Automorphisms of the full complex, or of a ball slice with --radius.
    Aut {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long)]
        radius: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Chain of top simplices between two top simplices.
    Chain {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long)]
        radius: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
    },
}

#[derive(Subcommand, Debug)]
enum RigidityCmd {
    /// Map file of a homeomorphism on a ball slice.
    Induce {
        #[arg(long = "in")]
        input: String,
        /// Used when the homeo file names no surface.
        #[arg(long, requires = "boundary")]
        genus: Option<u32>,
        #[arg(long, requires = "genus")]
        boundary: Option<u32>,
        #[command(flatten)]
        ball: BallArgs,
    },
    /// Simpliciality, injectivity, intersection-one and triangle checks.
    Check {
        #[arg(long = "in")]
        input: String,
    },
    /// Homeo file agreeing with the map on one top simplex.
    Reconstruct {
        #[arg(long = "in")]
        input: String,
        #[arg(long, default_value_t = 0)]
        top: usize,
    },
    /// Confirms that a homeo induces the map.
    Verify {
        #[arg(long = "in")]
        input: String,
        #[arg(long)]
        homeo: String,
        #[arg(long, default_value_t = 0)]
        top: usize,
    },
    /// Vertices of a ball slice shown to be in the image of the map.
    Extend {
        #[arg(long = "in")]
        input: String,
        #[command(flatten)]
        ball: BallArgs,
        #[arg(long, default_value_t = 0)]
        top: usize,
    },
}

enum Output {
    Json(Value),
    Text(String),
}

fn read(path: &str) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))
}

fn parse_class(s: Surface, text: &str) -> Result<ArcClass> {
    if text.contains('/') {
        if s != farey::torus() {
            return Err(Error::Unsupported("slopes exist only on the once-punctured torus".into()));
        }
        return farey::arc_from_slope(farey::parse(text)?);
    }
    let coords = text
        .split(',')
        .map(|p| p.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad coordinate {p:?}"))))
        .collect::<Result<Vec<_>>>()?;
    ArcClass::new(s, coords)
}

fn load_map(path: &str) -> Result<SimplicialSelfMap> {
    SimplicialSelfMap::from_json(&read(path)?)
}

fn slice_for(surface: Surface, radius: Option<usize>, cap: usize) -> Result<ArcComplexSlice> {
    match radius {
        Some(r) => complex::ball_complex(surface, r, cap),
        None => complex::full_complex(surface),
    }
}

fn tri_json(t: &Triangulation) -> Value {
    let mut v = serde_json::to_value(t.to_data()).expect("triangulation serializes");
    v["triangle_count"] = json!(t.triangle_count());
    v
}

fn dispatch(cmd: Command) -> Result<Output> {
    Ok(match cmd {
        Command::Tri(TriCmd::New { surface, word }) => {
            let s = surface.surface()?;
            let t = FlipWord::parse(&word)?.apply(&Triangulation::new_standard(s)?)?;
            Output::Json(tri_json(&t))
        }
        Command::Tri(TriCmd::Validate { input }) => {
            let t = Triangulation::from_json(&read(&input)?)?;
            Output::Json(json!({ "valid": true, "arcs": t.arc_count(), "triangles": t.triangle_count() }))
        }
        Command::Tri(TriCmd::Classify { input }) => {
            let t = Triangulation::from_json(&read(&input)?)?;
            let classes = (0..t.triangle_count()).map(|i| t.classify(i)).collect::<Result<Vec<_>>>()?;
            Output::Json(json!({ "triangles": classes }))
        }
        Command::Flip(FlipCmd::Apply { input, word }) => {
            let t = Triangulation::from_json(&read(&input)?)?;
            Output::Json(tri_json(&FlipWord::parse(&word)?.apply(&t)?))
        }
        Command::Flip(FlipCmd::Ball { surface, ball, format }) => {
            let center = MarkedTriangulation::standard(surface.surface()?)?;
            let b = flip::ball(&center, BallOptions { radius: ball.radius, cap: ball.cap, threads: None })?;
            match format {
                Format::Json => Output::Json(b.to_json()),
                Format::Dot => Output::Text(b.to_dot()),
            }
        }
        Command::Flip(FlipCmd::Path { surface, from, to, cap }) => {
            let s = surface.surface()?;
            let a = MarkedTriangulation::from_word(s, &FlipWord::parse(&from)?)?;
            let b = MarkedTriangulation::from_word(s, &FlipWord::parse(&to)?)?;
            let w = flip::path(&a, &b, cap)?;
            Output::Json(json!({ "word": w, "length": w.len() }))
        }
        Command::Arc(ArcCmd::Intersect { surface, a, b }) => {
            let s = surface.surface()?;
            let (x, y) = (parse_class(s, &a)?, parse_class(s, &b)?);
            Output::Json(json!({ "a": x.coords(), "b": y.coords(), "intersection": arc::intersection(&x, &y)?.0 }))
        }
        Command::Arc(ArcCmd::Flatten { surface, a }) => {
            let s = surface.surface()?;
            let f = arc::flatten(&parse_class(s, &a)?)?;
            Output::Json(json!({ "word": f.word, "steps": f.word.len(), "slot": f.slot, "triangulation": f.triangulation.to_data() }))
        }
        Command::Complex(ComplexCmd::Full { surface, format }) => {
            let slice = complex::full_complex(surface.surface()?)?;
            match format {
                Format::Json => Output::Json(slice.to_json()),
                Format::Dot => Output::Text(slice.to_dot()),
            }
        }
        Command::Complex(ComplexCmd::Ball { surface, ball, format }) => {
            let slice = complex::ball_complex(surface.surface()?, ball.radius, ball.cap)?;
            match format {
                Format::Json => Output::Json(slice.to_json()),
                Format::Dot => Output::Text(slice.to_dot()),
            }
        }
        Command::Complex(ComplexCmd::Aut { surface, radius, cap }) => {
            let slice = slice_for(surface.surface()?, radius, cap)?;
            let auts = complex::automorphisms(&slice, cap)?;
            let abelian = auts.iter().all(|g| auts.iter().all(|h| g.compose(h) == h.compose(g)));
            let table: Vec<Vec<usize>> = auts
                .iter()
                .map(|g| auts.iter().map(|h| auts.iter().position(|k| *k == g.compose(h)).expect("closed")).collect())
                .collect();
            Output::Json(json!({
                "order": auts.len(),
                "abelian": abelian,
                "automorphisms": auts.iter().map(|g| &g.perm).collect::<Vec<_>>(),
                "multiplication_table": table,
            }))
        }
        Command::Complex(ComplexCmd::Chain { surface, radius, cap, from, to }) => {
            let slice = slice_for(surface.surface()?, radius, cap)?;
            let chain = complex::maximal_simplex_chain(&slice, from, to)?;
            let simplices: Vec<&Vec<usize>> = chain.iter().map(|&m| &slice.maximal_simplices()[m].vertices).collect();
            Output::Json(json!({ "chain": chain, "simplices": simplices }))
        }
        Command::Rigidity(RigidityCmd::Induce { input, genus, boundary, ball }) => {
            let fallback = match (genus, boundary) {
                (Some(g), Some(b)) => Some(Surface::new(g, b)?),
                _ => None,
            };
            let h = CombinatorialHomeo::from_json(&read(&input)?, fallback)?;
            let slice = complex::ball_complex(h.surface(), ball.radius, ball.cap)?;
            let m = rigidity::induced_map(&h, &slice)?;
            let mut v = m.to_json();
            v["simplicial"] = json!(m.is_simplicial());
            v["injective"] = json!(m.is_injective());
            Output::Json(v)
        }
        Command::Rigidity(RigidityCmd::Check { input }) => {
            let mut m = load_map(&input)?;
            let (simplicial, injective) = m.verify()?;
            if !simplicial {
                return Err(refute(rigidity::CertificateKind::NotSimplicial, "some simplex maps to a non-simplex"));
            }
            if !injective {
                return Err(refute(rigidity::CertificateKind::NotInjective, "two vertices share an image"));
            }
            let pairs = checks::elementary_move_pairs(m.domain());
            let report = checks::check_intersection_one(&m, &pairs)?;
            if let Some(c) = report.certificate(&m) {
                return Err(Error::Refuted(c));
            }
            let mut triangles = 0;
            for top in m.domain().maximal_simplices() {
                let Some(w) = &top.witness else { continue };
                for t in checks::triangles_of(w) {
                    triangles += 1;
                    if let Some(c) = checks::check_triangle_class_preserved(&m, &t)? {
                        return Err(Error::Refuted(c));
                    }
                }
            }
            Output::Json(json!({
                "simplicial": true,
                "injective": true,
                "intersection_one_pairs": report.checked,
                "triangles_checked": triangles,
            }))
        }
        Command::Rigidity(RigidityCmd::Reconstruct { input, top }) => {
            let m = load_map(&input)?;
            Output::Json(rigidity::reconstruct(&m, top)?.to_json())
        }
        Command::Rigidity(RigidityCmd::Verify { input, homeo, top }) => {
            let m = load_map(&input)?;
            let h = CombinatorialHomeo::from_json(&read(&homeo)?, Some(m.surface()))?;
            let r = rigidity::verify_geometric(&m, &h, top)?;
            Output::Json(json!({ "geometric": true, "report": r }))
        }
        Command::Rigidity(RigidityCmd::Extend { input, ball, top }) => {
            let m = load_map(&input)?;
            let codomain = complex::ball_complex(m.surface(), ball.radius, ball.cap)?;
            let r = rigidity::surjectivity_extend(&m, &codomain, top)?;
            Output::Json(serde_json::to_value(r).expect("report serializes"))
        }
    })
}

fn refute(kind: rigidity::CertificateKind, message: &str) -> Error {
    Error::Refuted(rigidity::Certificate::new(kind, message))
}

fn error_json(e: &Error) -> Value {
    match e {
        Error::Refuted(c) => json!({ "error": "refuted", "certificate": c.to_json() }),
        Error::Validation(r) => json!({ "error": "validation", "violations": r.violations }),
        other => json!({ "error": other.to_string() }),
    }
}

/// Runs one command line; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads.max(1)).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "{}", json!({ "error": e.to_string() }));
            return 1;
        }
    };
    let result = pool.install(|| dispatch(cli.command));
    match result {
        Ok(output) => {
            let text = match output {
                Output::Json(v) => serde_json::to_string_pretty(&v).expect("json serializes") + "\n",
                Output::Text(t) => t,
            };
            match &cli.out {
                Some(path) => {
                    if let Err(e) = fs::write(path, text) {
                        let _ = writeln!(err, "{}", json!({ "error": format!("{path}: {e}") }));
                        return 1;
                    }
                }
                None => {
                    let _ = out.write_all(text.as_bytes());
                }
            }
            0
        }
        Err(e) => {
            let _ = writeln!(err, "{}", serde_json::to_string_pretty(&error_json(&e)).expect("json serializes"));
            1
        }
    }
}
