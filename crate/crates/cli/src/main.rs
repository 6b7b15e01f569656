//! `fgsub`: subgroup arithmetic in free groups from the command line.
//!
//! Subgroups are read from subgroup files (`alphabet: x,y` header, then
//! generator words or a serialized core). Exit codes: 0 success (or "is a
//! member"), 1 "not a member" / "not distinct", 2 precondition violated,
//! 3 resource cap hit, 4 malformed input, 5 I/O failure.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use fgsub::actions::{ball_dot, coset_ball, cosets_distinct, orbit_size, orbits_on_ball, Coset};
use fgsub::constructions::{
    absorbing_pair_within, cover_with_outside_deficit, hall_completion, infinite_index_family_within, intersect,
    join, normalized_envelope_within, shrink_for_infinite_join_within, supplement_witness, ConstructionError,
    CoverBranch, Limits, StageLog,
};
use fgsub::enumeration::{build_r_prefix, read_last_stage, verify_against, PrefixError, Truncation};
use fgsub::stallings::{core_file, generators_file, parse_subgroup_file, FileError};
use fgsub::words::WordError;
use fgsub::{Alphabet, GeneratorSet, Subgroup, Word};

#[derive(Parser)]
#[command(name = "fgsub", version, about = "Subgroups of free groups via core graphs")]
struct Cli {
    /// Write a DOT drawing of the resulting graph to FILE.
    #[arg(long, global = true, value_name = "FILE")]
    dot: Option<PathBuf>,
    /// How subgroups are printed.
    #[arg(long, global = true, value_enum, default_value_t = Emit::Gens)]
    emit: Emit,
    /// Cap on the vertices of any intermediate graph.
    #[arg(long, global = true, default_value_t = Limits::default().max_vertices)]
    max_vertices: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    /// Free basis, one word per line.
    Gens,
    /// Serialized core graph.
    Core,
}

#[derive(Subcommand)]
enum Command {
    /// Canonical core and a summary (rank, index, handle, deficits).
    Core { file: PathBuf },
    /// Exit 0 with the accepting path if WORD is in the subgroup, else exit 1.
    Member { file: PathBuf, word: String },
    /// Index in F.
    Index { file: PathBuf },
    Rank { file: PathBuf },
    /// Free basis read off the spanning tree.
    Basis { file: PathBuf },
    Intersect { a: PathBuf, b: PathBuf },
    Join { a: PathBuf, b: PathBuf },
    /// g A g⁻¹.
    Conjugate {
        a: PathBuf,
        #[arg(short = 'g', long = "by", value_name = "WORD")]
        g: String,
    },
    /// A finite-index subgroup containing A and avoiding the excluded words.
    Hall {
        a: PathBuf,
        #[arg(long, value_delimiter = ',', value_name = "WORDS")]
        exclude: Vec<String>,
    },
    /// A subgroup of index 1 or j with a deficit vertex outside the Y-frame.
    Cover {
        h: PathBuf,
        /// Generators spanning Y, comma separated.
        #[arg(long, value_name = "Y")]
        frame: String,
        #[arg(long = "index", default_value_t = 2, value_name = "J")]
        sheets: usize,
        #[arg(long, value_name = "FILE")]
        audit: Option<PathBuf>,
    },
    /// Absorbing pair A1 ≥ A, B0 ≤ B1 of finite index in B.
    Pair {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_name = "FILE")]
        audit: Option<PathBuf>,
        /// Write A1.grp, B0.grp, B1.grp into DIR.
        #[arg(short = 'o', long, value_name = "DIR")]
        out: Option<PathBuf>,
    },
    /// Finite-index subgroups of each H_i whose join has infinite index.
    Family {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, value_name = "FILE")]
        audit: Option<PathBuf>,
        /// Write K01.grp, ... and join.grp into DIR.
        #[arg(short = 'o', long, value_name = "DIR")]
        out: Option<PathBuf>,
    },
    /// B2 of infinite index normalized by A, and H ≤ B2 of finite index in B.
    Normalized {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_name = "FILE")]
        audit: Option<PathBuf>,
        /// Write B2.grp and H.grp into DIR.
        #[arg(short = 'o', long, value_name = "DIR")]
        out: Option<PathBuf>,
    },
    /// H ≤ B of finite index with ⟨A, H⟩ of infinite index avoiding the excluded words.
    Shrink {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_delimiter = ',', value_name = "WORDS")]
        exclude: Vec<String>,
        #[arg(long, value_name = "FILE")]
        audit: Option<PathBuf>,
        /// Write H to FILE instead of stdout.
        #[arg(short = 'o', long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Small-cancellation subgroup H of rank r with F = H·⟨⟨w⟩⟩.
    Smallcancel {
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long)]
        word: String,
    },
    /// Build R_1 ≤ ... ≤ R_N over the enumerated subgroups.
    BuildR {
        #[arg(long)]
        stages: usize,
        /// Maximal total generator length in the enumeration.
        #[arg(long, default_value_t = 6)]
        budget: usize,
        /// Rank of F; generators are named x, y, z or a, b, c, ...
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(short = 'o', long, value_name = "DIR", default_value = "r-prefix")]
        out: PathBuf,
    },
    /// [L : L ∩ R_N] for the last stage stored in DIR.
    VerifyR { dir: PathBuf, l: PathBuf },
    /// Size of the L-orbit of the coset Rg.
    Orbit {
        r: PathBuf,
        l: PathBuf,
        #[arg(short = 'g', long = "at", value_name = "WORD", default_value = "")]
        g: String,
        /// Also cross-check against the orbit cells of a ball of this radius.
        #[arg(long)]
        radius: Option<usize>,
    },
    /// Cosets Rg with |g| ≤ radius, by shortlex-least representative.
    Ball {
        r: PathBuf,
        #[arg(long)]
        radius: usize,
    },
    /// Exit 0 if the cosets Rg_i are pairwise different, else exit 1.
    Distinct {
        r: PathBuf,
        #[arg(required = true)]
        words: Vec<String>,
    },
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn precondition(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    fn malformed(message: impl Into<String>) -> Self {
        Failure { code: 4, message: message.into() }
    }

    fn io(path: &Path, e: std::io::Error) -> Self {
        Failure { code: 5, message: format!("{}: {e}", path.display()) }
    }
}

impl From<ConstructionError> for Failure {
    fn from(e: ConstructionError) -> Self {
        let code = if matches!(e, ConstructionError::ResourceLimit { .. }) { 3 } else { 2 };
        Failure { code, message: e.to_string() }
    }
}

impl From<PrefixError> for Failure {
    fn from(e: PrefixError) -> Self {
        let code = match e {
            PrefixError::Io { .. } => 5,
            PrefixError::File { .. } | PrefixError::Layout { .. } => 4,
            PrefixError::NoStages | PrefixError::RankTooSmall(_) => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

type Outcome = Result<u8, Failure>;

macro_rules! outln {
    ($o:expr) => { $o.push('\n') };
    ($o:expr, $($arg:tt)*) => {{ let _ = writeln!($o, $($arg)*); }};
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = run(&cli, &mut out);
    // a closed pipe (`fgsub ... | head`) is not an error worth reporting
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("fgsub: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read_subgroup(path: &Path) -> Result<Subgroup, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
    parse_subgroup_file(&text).map_err(|e: FileError| Failure::malformed(format!("{}: {e}", path.display())))
}

fn parse_word(alphabet: &Alphabet, text: &str) -> Result<Word, Failure> {
    alphabet
        .parse_word(text)
        .map_err(|e: WordError| Failure::malformed(format!("word '{text}': {e}")))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::io(path, e))
}

fn same_alphabet(hs: &[&Subgroup]) -> Result<(), Failure> {
    match hs.split_first() {
        Some((first, rest)) if rest.iter().any(|h| h.alphabet() != first.alphabet()) => {
            Err(Failure::precondition("subgroups are over different alphabets"))
        }
        _ => Ok(()),
    }
}

fn default_alphabet(rank: usize) -> Result<Alphabet, Failure> {
    let names: Vec<String> = if rank <= 3 {
        ["x", "y", "z"][..rank].iter().map(|s| s.to_string()).collect()
    } else if rank <= 26 {
        (b'a'..b'a' + rank as u8).map(|c| (c as char).to_string()).collect()
    } else {
        (1..=rank).map(|i| format!("x{i}")).collect()
    };
    Alphabet::new(names).map_err(|e| Failure::precondition(e.to_string()))
}

struct Ctx<'a> {
    cli: &'a Cli,
    limits: Limits,
}

impl Ctx<'_> {
    fn render(&self, h: &Subgroup) -> String {
        match self.cli.emit {
            Emit::Gens => generators_file(h),
            Emit::Core => core_file(h),
        }
    }

    /// Prints the subgroup (or writes it to `out`) and its DOT if asked.
    fn emit(&self, o: &mut String, h: &Subgroup, out: Option<&Path>) -> Result<(), Failure> {
        match out {
            Some(p) => write_file(p, &self.render(h))?,
            None => o.push_str(&self.render(h)),
        }
        self.dot(h)
    }

    fn dot(&self, h: &Subgroup) -> Result<(), Failure> {
        match &self.cli.dot {
            Some(p) => write_file(p, &h.to_dot()),
            None => Ok(()),
        }
    }

    fn audit(&self, log: &StageLog, path: Option<&PathBuf>) -> Result<(), Failure> {
        match path {
            Some(p) => write_file(p, &log.to_string()),
            None => Ok(()),
        }
    }

    /// Writes named subgroups into `dir`, or prints them in sections.
    fn emit_many(&self, o: &mut String, named: &[(String, &Subgroup)], dir: Option<&Path>) -> Result<(), Failure> {
        match dir {
            Some(d) => {
                fs::create_dir_all(d).map_err(|e| Failure::io(d, e))?;
                for (name, h) in named {
                    write_file(&d.join(format!("{name}.grp")), &self.render(h))?;
                }
            }
            None => {
                for (name, h) in named {
                    outln!(o, "# {name}");
                    o.push_str(&self.render(h));
                }
            }
        }
        match named.last() {
            Some((_, h)) => self.dot(h),
            None => Ok(()),
        }
    }
}

fn run(cli: &Cli, o: &mut String) -> Outcome {
    let ctx = Ctx { cli, limits: Limits::new(cli.max_vertices) };
    match &cli.command {
        Command::Core { file } => {
            let h = read_subgroup(file)?;
            o.push_str(&core_file(&h));
            let all = GeneratorSet::all(h.alphabet());
            let deficits = h.deficits(&all);
            outln!(o, "rank: {}", h.rank());
            outln!(o, "index: {}", h.index());
            let handle = h.handle();
            outln!(o, "handle: length {} label \"{}\"", handle.len(), h.alphabet().format_word(&handle.label));
            outln!(o, "deficit: {} missing slots at {} vertices", deficits.deficit(), deficits.entries.len());
            for (v, ls) in &deficits.entries {
                let names: Vec<String> = ls.iter().map(|&l| h.alphabet().format_word(&Word::letter(l))).collect();
                outln!(o, "  vertex {v}: {}", names.join(" "));
            }
            ctx.dot(&h)?;
            Ok(0)
        }
        Command::Member { file, word } => {
            let h = read_subgroup(file)?;
            let w = parse_word(h.alphabet(), word)?;
            match h.membership_path(&w) {
                Some(path) => {
                    let vs: Vec<String> = path.iter().map(|v| v.to_string()).collect();
                    outln!(o, "member");
                    outln!(o, "path: {}", vs.join(" "));
                    Ok(0)
                }
                None => {
                    outln!(o, "not a member");
                    Ok(1)
                }
            }
        }
        Command::Index { file } => {
            outln!(o, "{}", read_subgroup(file)?.index());
            Ok(0)
        }
        Command::Rank { file } => {
            outln!(o, "{}", read_subgroup(file)?.rank());
            Ok(0)
        }
        Command::Basis { file } => {
            let h = read_subgroup(file)?;
            o.push_str(&generators_file(&h));
            Ok(0)
        }
        Command::Intersect { a, b } => {
            let (a, b) = (read_subgroup(a)?, read_subgroup(b)?);
            same_alphabet(&[&a, &b])?;
            ctx.emit(o, &intersect(&a, &b), None)?;
            Ok(0)
        }
        Command::Join { a, b } => {
            let (a, b) = (read_subgroup(a)?, read_subgroup(b)?);
            same_alphabet(&[&a, &b])?;
            ctx.emit(o, &join(&a, &b), None)?;
            Ok(0)
        }
        Command::Conjugate { a, g } => {
            let a = read_subgroup(a)?;
            let g = parse_word(a.alphabet(), g)?;
            ctx.emit(o, &a.conjugate(&g), None)?;
            Ok(0)
        }
        Command::Hall { a, exclude } => {
            let a = read_subgroup(a)?;
            let s = exclude.iter().map(|w| parse_word(a.alphabet(), w)).collect::<Result<Vec<_>, _>>()?;
            ctx.emit(o, &hall_completion(&a, &s)?, None)?;
            Ok(0)
        }
        Command::Cover { h, frame, sheets, audit } => {
            let h = read_subgroup(h)?;
            let y = GeneratorSet::parse(h.alphabet(), frame).map_err(|e| Failure::malformed(format!("frame: {e}")))?;
            let (cover, log) = cover_with_outside_deficit(&h, &y, *sheets)?;
            ctx.audit(&log, audit.as_ref())?;
            let a = h.alphabet();
            match cover.branch {
                CoverBranch::Bridge { edge: (u, l, v) } => {
                    outln!(o, "# branch: bridge {u} {} {v}", a.format_word(&Word::letter(l)))
                }
                CoverBranch::Cyclic { edge: (u, l, v), sheets } => {
                    outln!(o, "# branch: cyclic cover of {sheets} sheets along {u} {} {v}", a.format_word(&Word::letter(l)))
                }
            }
            outln!(o, "# deficit vertex outside frame: {}", cover.witness);
            ctx.emit(o, &cover.subgroup, None)?;
            Ok(0)
        }
        Command::Pair { a, b, audit, out } => {
            let (a, b) = (read_subgroup(a)?, read_subgroup(b)?);
            same_alphabet(&[&a, &b])?;
            let (pair, log) = absorbing_pair_within(&a, &b, &ctx.limits)?;
            ctx.audit(&log, audit.as_ref())?;
            ctx.emit_many(
                o,
                &[("A1".into(), &pair.a1), ("B0".into(), &pair.b0), ("B1".into(), &pair.b1)],
                out.as_deref(),
            )?;
            Ok(0)
        }
        Command::Family { files, audit, out } => {
            let hs = files.iter().map(|f| read_subgroup(f)).collect::<Result<Vec<_>, _>>()?;
            same_alphabet(&hs.iter().collect::<Vec<_>>())?;
            let (family, log) = infinite_index_family_within(&hs, &ctx.limits)?;
            ctx.audit(&log, audit.as_ref())?;
            let mut named: Vec<(String, &Subgroup)> =
                family.members.iter().enumerate().map(|(i, k)| (format!("K{:02}", i + 1), k)).collect();
            named.push(("join".into(), &family.join));
            ctx.emit_many(o, &named, out.as_deref())?;
            Ok(0)
        }
        Command::Normalized { a, b, audit, out } => {
            let (a, b) = (read_subgroup(a)?, read_subgroup(b)?);
            same_alphabet(&[&a, &b])?;
            let (env, log) = normalized_envelope_within(&a, &b, &ctx.limits)?;
            ctx.audit(&log, audit.as_ref())?;
            ctx.emit_many(o, &[("B2".into(), &env.b2), ("H".into(), &env.h)], out.as_deref())?;
            Ok(0)
        }
        Command::Shrink { a, b, exclude, audit, out } => {
            let (a, b) = (read_subgroup(a)?, read_subgroup(b)?);
            same_alphabet(&[&a, &b])?;
            let s = exclude.iter().map(|w| parse_word(a.alphabet(), w)).collect::<Result<Vec<_>, _>>()?;
            let (h, log) = shrink_for_infinite_join_within(&a, &b, &s, &ctx.limits)?;
            ctx.audit(&log, audit.as_ref())?;
            ctx.emit(o, &h, out.as_deref())?;
            Ok(0)
        }
        Command::Smallcancel { rank, word } => {
            let alphabet = default_alphabet(*rank)?;
            let w = parse_word(&alphabet, word)?;
            let wit = supplement_witness(&alphabet, &w)?;
            outln!(o, "# alphabet: {alphabet}");
            outln!(o, "# small cancellation: {}", wit.small_cancellation);
            for (i, u) in wit.u_words.iter().enumerate() {
                outln!(o, "# u{} = {}", i + 1, alphabet.format_word(u));
            }
            for (name, ok) in &wit.checks {
                outln!(o, "# {name}: {}", if *ok { "ok" } else { "FAILED" });
            }
            // the v_i themselves, as a subgroup file
            outln!(o, "alphabet: {alphabet}");
            for v in &wit.v_words {
                outln!(o, "{}", alphabet.format_word(v));
            }
            ctx.dot(&wit.subgroup)?;
            Ok(if wit.all_ok() { 0 } else { 2 })
        }
        Command::BuildR { stages, budget, rank, out } => {
            let alphabet = default_alphabet(*rank)?;
            let prefix = build_r_prefix(&alphabet, *stages, *budget, &ctx.limits)?;
            prefix.write_dir(out)?;
            o.push_str(&prefix.summary());
            if let Some(r) = prefix.last() {
                ctx.dot(r)?;
            }
            Ok(match prefix.truncated {
                Some(Truncation::ResourceLimit { .. }) => 3,
                _ => 0,
            })
        }
        Command::VerifyR { dir, l } => {
            let r = read_last_stage(dir)?;
            let l = read_subgroup(l)?;
            same_alphabet(&[&r, &l])?;
            let v = verify_against(&r, &l);
            outln!(o, "[L : L ∩ R] = {}", v.index);
            outln!(o, "# {}", v.note());
            Ok(0)
        }
        Command::Orbit { r, l, g, radius } => {
            let (r, l) = (read_subgroup(r)?, read_subgroup(l)?);
            same_alphabet(&[&r, &l])?;
            let g = parse_word(r.alphabet(), g)?;
            outln!(o, "orbit size: {}", orbit_size(&r, &l, &g));
            if let Some(rho) = radius {
                let ball = coset_ball(&r, *rho);
                match ball.position(&Coset::of(&r, &g)) {
                    None => outln!(o, "ball radius {rho}: coset outside the ball"),
                    Some(i) => {
                        let cells = orbits_on_ball(&ball, &r, &l);
                        let cell = cells.iter().find(|c| c.members.contains(&i)).expect("partition covers the ball");
                        outln!(o, 
                            "ball radius {rho}: cell of {} cosets, {}",
                            cell.members.len(),
                            if cell.open { "open" } else { "interior" }
                        );
                    }
                }
            }
            Ok(0)
        }
        Command::Ball { r, radius } => {
            let r = read_subgroup(r)?;
            let ball = coset_ball(&r, *radius);
            outln!(o, "# {} cosets within radius {radius}", ball.len());
            for g in &ball.representatives {
                outln!(o, "{}", r.alphabet().format_word(g));
            }
            if let Some(p) = &cli.dot {
                write_file(p, &ball_dot(&ball, &r))?;
            }
            Ok(0)
        }
        Command::Distinct { r, words } => {
            let r = read_subgroup(r)?;
            let gs = words.iter().map(|w| parse_word(r.alphabet(), w)).collect::<Result<Vec<_>, _>>()?;
            if cosets_distinct(&r, &gs) {
                outln!(o, "distinct");
                Ok(0)
            } else {
                outln!(o, "not distinct");
                Ok(1)
            }
        }
    }
}
