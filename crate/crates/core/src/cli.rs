//! Command-line front end.
//!
//! Exit codes: 0 success (or "yes" for yes/no queries), 1 "no" for yes/no
//! queries, 2 for input and usage errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::belts::{find_belts, fullerene_status, is_pogorelov, FullereneStatus};
use crate::charfun::{
    charfuns_equivalent, lambda_chi, lambda_chi_k, pairs_equivalent, reduce_mod2, validate_charfun, CharFun,
    CharacteristicPair, Ring,
};
use crate::colouring::{
    colourings_equivalent, count_colourings, enumerate_colourings, find_colouring_avoiding, is_complete, ClassMode,
    Colouring, EquivalenceMode, COLOUR_TRIPLES,
};
use crate::invariants::{betti_z2, classify, is_orientable_small_cover, yes_no, ManifoldKind};
use crate::polytope::{Format, Polytope};

pub const EXIT_OK: u8 = 0;
pub const EXIT_NO: u8 = 1;
pub const EXIT_ERROR: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "pogorelov", version, about = "Pogorelov polytopes, 4-colourings and characteristic functions")]
struct Cli {
    /// Input format; inferred from the leading bytes when omitted.
    #[arg(long, global = true, value_parser = parse_format)]
    format: Option<Format>,
    #[arg(long, global = true, value_enum, default_value_t = ReportKind::Text)]
    report: ReportKind,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ReportKind {
    Text,
    Kv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    S4,
    #[value(name = "s4_x_aut")]
    S4XAut,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RingArg {
    Z,
    F2,
}

impl From<RingArg> for Ring {
    fn from(r: RingArg) -> Ring {
        match r {
            RingArg::Z => Ring::Z,
            RingArg::F2 => Ring::F2,
        }
    }
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse()
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Pogorelov class membership (exit 1 when some input is not in the class).
    Check { inputs: Vec<PathBuf> },
    /// List the k-belts of facets.
    Belts {
        #[arg(long)]
        k: usize,
        inputs: Vec<PathBuf>,
    },
    /// Count (and optionally list) the proper 4-colourings of facets.
    Colourings {
        #[arg(long)]
        list: bool,
        inputs: Vec<PathBuf>,
    },
    /// Completeness of a colouring, or search for an incomplete one.
    Complete {
        #[arg(long)]
        colouring: Option<String>,
        input: PathBuf,
    },
    /// Print λ_χ, or λ_{χ,k} with --kparam, for a colouring.
    Charfun {
        #[arg(long)]
        colouring: String,
        #[arg(long, allow_negative_numbers = true)]
        kparam: Option<i64>,
        #[arg(long, value_enum, default_value_t = RingArg::Z)]
        ring: RingArg,
        input: PathBuf,
    },
    /// Equivalence of two colourings, or of two characteristic functions.
    Equiv {
        #[arg(long)]
        colouring: Option<String>,
        #[arg(long)]
        other: Option<String>,
        /// Characteristic function files to compare instead of colourings.
        #[arg(long)]
        lambda: Option<PathBuf>,
        #[arg(long)]
        lambda2: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ModeArg::S4)]
        mode: ModeArg,
        #[arg(long, value_enum)]
        ring: Option<RingArg>,
        #[arg(long, value_enum, default_value_t = Switch::On)]
        reflections: Switch,
        input: PathBuf,
        /// Polytope carrying the second colouring (s4_x_aut mode only).
        other_input: Option<PathBuf>,
    },
    /// Orientability of the small cover of λ_{χ,k} mod 2 (k = 1 gives λ_χ).
    Orient {
        #[arg(long)]
        colouring: String,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        kparam: i64,
        input: PathBuf,
    },
    /// Mod 2 Betti numbers of small covers and quasitoric manifolds.
    Betti { inputs: Vec<PathBuf> },
    /// Census of colouring classes per combinatorial type.
    Classify {
        #[arg(long, value_enum, default_value_t = ModeArg::S4)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = Switch::On)]
        reflections: Switch,
        inputs: Vec<PathBuf>,
    },
    /// Combinatorial equivalences between two polytopes (automorphisms with one).
    Iso {
        #[arg(long, value_enum, default_value_t = Switch::On)]
        reflections: Switch,
        #[arg(long)]
        list: bool,
        input: PathBuf,
        other: Option<PathBuf>,
    },
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<(String, u8), Failure>;

struct Loader<'a> {
    stdin: &'a mut dyn Read,
    format: Option<Format>,
}

impl Loader<'_> {
    fn load_all(&mut self, path: &PathBuf) -> Result<Vec<Polytope>, Failure> {
        let bytes = if path.as_os_str() == "-" {
            let mut buf = Vec::new();
            self.stdin.read_to_end(&mut buf).map_err(|e| Failure(format!("stdin: {e}")))?;
            buf
        } else {
            std::fs::read(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?
        };
        let format = self.format.unwrap_or_else(|| Format::infer(&bytes));
        Polytope::load_all(&bytes, format).map_err(|e| Failure(format!("{}: {e}", path.display())))
    }

    fn load_one(&mut self, path: &PathBuf) -> Result<Polytope, Failure> {
        self.load_all(path)?
            .into_iter()
            .next()
            .ok_or_else(|| Failure(format!("{}: no polytope in input", path.display())))
    }

    /// Every graph of every input, labelled for multi-graph reports.
    fn load_many(&mut self, paths: &[PathBuf]) -> Result<Vec<(String, Polytope)>, Failure> {
        if paths.is_empty() {
            return Err(Failure("no input given".into()));
        }
        let mut out = Vec::new();
        for path in paths {
            for (i, p) in self.load_all(path)?.into_iter().enumerate() {
                out.push((format!("{}#{}", path.display(), i + 1), p));
            }
        }
        Ok(out)
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut loader = Loader { stdin, format: cli.format };
    match execute(&cli, &mut loader) {
        Ok((report, code)) => {
            if out.write_all(report.as_bytes()).is_err() {
                return EXIT_ERROR;
            }
            code
        }
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_ERROR
        }
    }
}

/// Prefixes per-graph blocks with their source when there are several.
fn blocks(results: Vec<(String, String)>) -> String {
    let many = results.len() > 1;
    let mut out = String::new();
    for (label, body) in results {
        if many {
            let _ = writeln!(out, "[{label}]");
        }
        out += &body;
    }
    out
}

fn triple_text(t: &[u8; 3]) -> String {
    format!("{{{},{},{}}}", t[0], t[1], t[2])
}

fn execute(cli: &Cli, loader: &mut Loader<'_>) -> Outcome {
    let kv = cli.report == ReportKind::Kv;
    match &cli.command {
        Command::Check { inputs } => {
            let mut code = EXIT_OK;
            let mut results = Vec::new();
            for (label, p) in loader.load_many(inputs)? {
                let v = is_pogorelov(&p);
                if !v.is_pogorelov {
                    code = EXIT_NO;
                }
                let mut body = String::new();
                if kv {
                    let _ = writeln!(body, "pogorelov={}", v.is_pogorelov);
                    if let Some(w) = &v.witness {
                        let _ = writeln!(body, "obstruction={w}");
                    }
                    if let FullereneStatus::Fullerene { ipr, adjacent_pentagon_pairs } = fullerene_status(&p) {
                        let _ = writeln!(body, "fullerene=true\nipr={ipr}\nadjacent_pentagon_pairs={adjacent_pentagon_pairs}");
                    } else {
                        let _ = writeln!(body, "fullerene=false");
                    }
                } else {
                    match &v.witness {
                        None => body += "Pogorelov: yes\n",
                        Some(w) => {
                            let _ = writeln!(body, "Pogorelov: no (witness: {w})");
                        }
                    }
                    let _ = writeln!(body, "{}", fullerene_line(&p));
                }
                results.push((label, body));
            }
            Ok((blocks(results), code))
        }
        Command::Belts { k, inputs } => {
            let mut results = Vec::new();
            for (label, p) in loader.load_many(inputs)? {
                let belts = find_belts(&p, *k)?;
                let mut body = String::new();
                if kv {
                    let _ = writeln!(body, "k={k}");
                    let _ = writeln!(body, "belts={}", belts.len());
                    for b in &belts {
                        let facets: Vec<String> = b.facets().iter().map(|f| f.to_string()).collect();
                        let _ = writeln!(body, "belt={}", facets.join(","));
                    }
                } else {
                    let _ = writeln!(body, "{k}-belts: {}", belts.len());
                    for b in &belts {
                        let _ = writeln!(body, "belt {b}");
                    }
                }
                results.push((label, body));
            }
            Ok((blocks(results), EXIT_OK))
        }
        Command::Colourings { list, inputs } => {
            let mut results = Vec::new();
            for (label, p) in loader.load_many(inputs)? {
                let mut body = String::new();
                if *list {
                    let mut n = 0u64;
                    let mut lines = String::new();
                    for chi in enumerate_colourings(&p) {
                        n += 1;
                        let _ = writeln!(lines, "{chi}");
                    }
                    let _ = writeln!(body, "{}{n}", if kv { "colourings=" } else { "colourings: " });
                    body += &lines;
                } else {
                    let n = count_colourings(&p);
                    let _ = writeln!(body, "{}{n}", if kv { "colourings=" } else { "colourings: " });
                }
                results.push((label, body));
            }
            Ok((blocks(results), EXIT_OK))
        }
        Command::Complete { colouring, input } => {
            let p = loader.load_one(input)?;
            let mut body = String::new();
            match colouring {
                Some(text) => {
                    let chi = Colouring::parse(&p, text)?;
                    let c = is_complete(&p, &chi);
                    let missing: Vec<String> = c.missing.iter().map(triple_text).collect();
                    if kv {
                        let _ = writeln!(body, "complete={}", c.complete);
                        let _ = writeln!(body, "missing={}", missing.join(";"));
                    } else if c.complete {
                        body += "complete: yes\n";
                    } else {
                        let _ = writeln!(body, "complete: no (missing: {})", missing.join(" "));
                    }
                    Ok((body, if c.complete { EXIT_OK } else { EXIT_NO }))
                }
                None => {
                    let found = COLOUR_TRIPLES.iter().find_map(|t| find_colouring_avoiding(&p, &[*t]));
                    match &found {
                        None => body += if kv { "all_complete=true\n" } else { "every colouring is complete\n" },
                        Some(chi) => {
                            let missing: Vec<String> = is_complete(&p, chi).missing.iter().map(triple_text).collect();
                            if kv {
                                let _ = writeln!(body, "all_complete=false\nexample={chi}\nmissing={}", missing.join(";"));
                            } else {
                                let _ = writeln!(body, "incomplete colouring: {chi}\nmissing: {}", missing.join(" "));
                            }
                        }
                    }
                    Ok((body, if found.is_none() { EXIT_OK } else { EXIT_NO }))
                }
            }
        }
        Command::Charfun { colouring, kparam, ring, input } => {
            let p = loader.load_one(input)?;
            let chi = Colouring::parse(&p, colouring)?;
            let lambda = match kparam {
                Some(k) => lambda_chi_k(&p, &chi, *k)?,
                None => lambda_chi(&p, &chi),
            };
            let lambda = match Ring::from(*ring) {
                Ring::Z => lambda,
                Ring::F2 => reduce_mod2(&lambda),
            };
            if !validate_charfun(&p, &lambda)?.is_valid() {
                return Err(Failure("reduction is not a characteristic function".into()));
            }
            Ok((lambda.to_text(), EXIT_OK))
        }
        Command::Equiv { colouring, other, lambda, lambda2, mode, ring, reflections, input, other_input } => {
            let reflections = *reflections == Switch::On;
            let p = loader.load_one(input)?;
            let q = match other_input {
                Some(path) => {
                    if *mode == ModeArg::S4 {
                        return Err(Failure("a second polytope requires --mode s4_x_aut".into()));
                    }
                    loader.load_one(path)?
                }
                None => p.clone(),
            };
            match (colouring, other, lambda, lambda2) {
                (Some(a), Some(b), None, None) => {
                    equiv_colourings(&p, &q, a, b, *mode, ring.map(Ring::from), reflections, kv)
                }
                (None, None, Some(a), Some(b)) => {
                    if ring.is_some() {
                        return Err(Failure("--ring applies to colourings; the files carry their ring".into()));
                    }
                    let la = CharFun::parse(&std::fs::read_to_string(a).map_err(|e| Failure(format!("{}: {e}", a.display())))?)?;
                    let lb = CharFun::parse(&std::fs::read_to_string(b).map_err(|e| Failure(format!("{}: {e}", b.display())))?)?;
                    for (poly, l, path) in [(&p, &la, a), (&q, &lb, b)] {
                        if !validate_charfun(poly, l)?.is_valid() {
                            return Err(Failure(format!("{}: not a characteristic function", path.display())));
                        }
                    }
                    let eq = if *mode == ModeArg::S4 {
                        charfuns_equivalent(&p, &la, &lb)?.is_some()
                    } else {
                        pairs_equivalent(
                            CharacteristicPair { polytope: &p, charfun: &la },
                            CharacteristicPair { polytope: &q, charfun: &lb },
                        )?
                        .is_some()
                    };
                    let body = if kv {
                        format!("ring={}\ncharfuns_equivalent={eq}\n", la.ring())
                    } else {
                        format!("charfuns equivalent ({}): {}\n", la.ring(), yes_no(eq))
                    };
                    Ok((body, if eq { EXIT_OK } else { EXIT_NO }))
                }
                _ => Err(Failure("give either --colouring and --other, or --lambda and --lambda2".into())),
            }
        }
        Command::Orient { colouring, kparam, input } => {
            let p = loader.load_one(input)?;
            let chi = Colouring::parse(&p, colouring)?;
            let lambda = reduce_mod2(&lambda_chi_k(&p, &chi, *kparam)?);
            if !validate_charfun(&p, &lambda)?.is_valid() {
                return Err(Failure("reduction mod 2 is not a characteristic function".into()));
            }
            let v = is_orientable_small_cover(&p, &lambda)?;
            let functional = v.witness.map(|w| format!("({},{},{})", w & 1, w >> 1 & 1, w >> 2 & 1));
            let body = match (kv, &functional) {
                (true, _) => format!("orientable={}\nwitness={}\n", v.orientable, functional.clone().unwrap_or_default()),
                (false, Some(f)) => format!("orientable: yes (functional {f})\n"),
                (false, None) => "orientable: no\n".to_string(),
            };
            Ok((body, if v.orientable { EXIT_OK } else { EXIT_NO }))
        }
        Command::Betti { inputs } => {
            let mut results = Vec::new();
            for (label, p) in loader.load_many(inputs)? {
                let join = |v: Vec<i64>| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
                let sc = join(betti_z2(&p, ManifoldKind::SmallCover));
                let qt = join(betti_z2(&p, ManifoldKind::Quasitoric));
                let body = if kv {
                    format!("small_cover={sc}\nquasitoric={qt}\n")
                } else {
                    format!("small cover betti (Z2): {sc}\nquasitoric betti (Z2): {qt}\n")
                };
                results.push((label, body));
            }
            Ok((blocks(results), EXIT_OK))
        }
        Command::Classify { mode, reflections, inputs } => {
            let polytopes: Vec<Polytope> = loader.load_many(inputs)?.into_iter().map(|(_, p)| p).collect();
            let mode = match mode {
                ModeArg::S4 => ClassMode::S4,
                ModeArg::S4XAut => ClassMode::S4xAut { reflections: *reflections == Switch::On },
            };
            let census = classify(&polytopes, mode);
            Ok((if kv { census.to_kv() } else { census.to_text() }, EXIT_OK))
        }
        Command::Iso { reflections, list, input, other } => {
            let p = loader.load_one(input)?;
            let q = match other {
                Some(path) => loader.load_one(path)?,
                None => p.clone(),
            };
            let isos = p.isomorphisms(&q, *reflections == Switch::On);
            let mut body = format!("{}{}\n", if kv { "isomorphisms=" } else { "isomorphisms: " }, isos.len());
            if *list {
                for phi in &isos {
                    let parts: Vec<String> = phi.map.iter().map(|f| f.to_string()).collect();
                    let _ = writeln!(body, "{}", parts.join(","));
                }
            }
            Ok((body, if isos.is_empty() { EXIT_NO } else { EXIT_OK }))
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn equiv_colourings(
    p: &Polytope,
    q: &Polytope,
    a: &str,
    b: &str,
    mode: ModeArg,
    ring: Option<Ring>,
    reflections: bool,
    kv: bool,
) -> Outcome {
    let chi = Colouring::parse(p, a)?;
    let chi2 = Colouring::parse(q, b)?;
    let emode = match mode {
        ModeArg::S4 => EquivalenceMode::StrictS4,
        ModeArg::S4XAut => EquivalenceMode::UpToIso { reflections },
    };
    let witness = colourings_equivalent(p, &chi, q, &chi2, emode)?;
    let mut body = String::new();
    if kv {
        let _ = writeln!(body, "colourings_equivalent={}", witness.is_some());
    } else {
        let _ = writeln!(body, "colourings equivalent: {}", yes_no(witness.is_some()));
    }
    if let Some((phi, sigma)) = &witness {
        let facets: Vec<String> = phi.map.iter().map(|f| f.to_string()).collect();
        if kv {
            let _ = writeln!(body, "sigma={}", sigma.image().map(|c| c.to_string()).join(","));
            let _ = writeln!(body, "facet_map={}", facets.join(","));
        } else {
            let _ = writeln!(body, "sigma: {sigma}");
            let _ = writeln!(body, "facet map: {}", facets.join(","));
        }
    }
    if let Some(ring) = ring {
        let reduce = |l: CharFun| if ring == Ring::F2 { reduce_mod2(&l) } else { l };
        let (la, lb) = (reduce(lambda_chi(p, &chi)), reduce(lambda_chi(q, &chi2)));
        let eq = if mode == ModeArg::S4 {
            charfuns_equivalent(p, &la, &lb)?.is_some()
        } else {
            pairs_equivalent(
                CharacteristicPair { polytope: p, charfun: &la },
                CharacteristicPair { polytope: q, charfun: &lb },
            )?
            .is_some()
        };
        if kv {
            let _ = writeln!(body, "ring={ring}\ncharfuns_equivalent={eq}");
        } else {
            let _ = writeln!(body, "charfuns equivalent ({ring}): {}", yes_no(eq));
        }
    }
    Ok((body, if witness.is_some() { EXIT_OK } else { EXIT_NO }))
}

fn fullerene_line(p: &Polytope) -> String {
    match fullerene_status(p) {
        FullereneStatus::NotFullerene => "fullerene: no".into(),
        FullereneStatus::Fullerene { ipr, adjacent_pentagon_pairs } => {
            format!("fullerene: yes (ipr: {}, adjacent pentagon pairs: {adjacent_pentagon_pairs})", yes_no(ipr))
        }
    }
}
