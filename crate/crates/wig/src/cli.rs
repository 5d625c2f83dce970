//! Command-line front end for the `wig` binary.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::eggbox::build_eggbox;
use crate::embed::{verify_embedding, EmbeddingSite};
use crate::error::{Error, Result};
use crate::finite::examples::{example1, example2, Report};
use crate::finite::{congruence_closure, is_weakly_generated, FiniteSemigroup, Green};
use crate::generators::{count_formulas, level_size, Aliases, Alphabet, Arena, Gen};
use crate::landscape::{Compact, Mountain};
use crate::rewrite::{beta1, beta2_traced, normalize, Mode, Strategy};
use crate::structure::{
    canonical_inverse, inverses_in_class, is_idempotent, is_inverse, leq_j, leq_l, leq_natural, leq_r, multiply,
    sandwich_singleton_check,
};

/// Exit status of a successful command.
pub const EXIT_OK: i32 = 0;
/// Exit status of a decision command whose answer is "no".
pub const EXIT_FALSE: i32 = 1;
/// Exit status of a usage or input error.
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "wig", version, about = "Canonical forms and Green structure for FI(X)")]
pub struct Cli {
    #[command(flatten)]
    pub config: Config,
    #[command(subcommand)]
    pub command: Command,
}

/// Options shared by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct Config {
    /// Comma separated base letters.
    #[arg(long, global = true, default_value = "e,f")]
    pub alphabet: String,
    /// File of `name = expr` lines; replaces the default names and is used
    /// for output.
    #[arg(long, global = true)]
    pub aliases: Option<std::path::PathBuf>,
    /// Highest level that may be enumerated.
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Monoid)]
    pub mode: ModeArg,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Print generators with the default two-letter names.
    #[arg(long, global = true)]
    pub named: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeArg {
    Monoid,
    Semigroup,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rel {
    R,
    L,
    J,
    Nat,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum StrategyArg {
    Leftmost,
    Random,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Canonical mountain of a word.
    Normalize {
        word: String,
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum, default_value_t = StrategyArg::Leftmost)]
        strategy: StrategyArg,
    },
    /// Word problem: exit 0 iff the words are equal in FI(X).
    Eq { left: String, right: String },
    /// Product of two elements.
    Mul { left: String, right: String },
    /// Exit 0 iff the element is idempotent.
    Idem { word: String },
    /// Canonical inverse and all inverses; with a second word, exit 0 iff
    /// the two are mutually inverse.
    Inv { word: String, other: Option<String> },
    /// Exit 0 iff `left ≤ right` in the chosen preorder.
    Order {
        left: String,
        right: String,
        #[arg(long, value_enum, ignore_case = true)]
        rel: Rel,
    },
    /// Egg-box of the D-class of a generator.
    Eggbox { generator: String },
    /// Letters of one level.
    Gens {
        #[arg(long)]
        level: usize,
        #[arg(long)]
        count: bool,
    },
    /// Embedding of FI¹(X₁) at a site `(g, A)`.
    Embed {
        #[arg(long)]
        site: String,
        /// Comma separated members of G(g).
        #[arg(long = "A")]
        a: String,
        #[arg(long, default_value_t = 2)]
        bound: usize,
        #[arg(long)]
        verify: bool,
    },
    /// Finite semigroups given by Cayley tables.
    Finite {
        #[command(subcommand)]
        command: FiniteCommand,
    },
    /// Reproduce the first worked example.
    Example1,
    /// Reproduce the second worked example.
    Example2,
    /// Fast internal consistency checks.
    Selftest,
}

#[derive(Subcommand, Debug)]
pub enum FiniteCommand {
    /// Order, idempotents, regularity and egg-boxes.
    Analyze { file: std::path::PathBuf },
    /// Exit 0 iff the table is weakly generated by the given elements.
    Weakgen {
        file: std::path::PathBuf,
        #[arg(long)]
        gens: String,
    },
    /// Quotient by the congruence generated by `(a,b),(c,d)`.
    Quotient {
        file: std::path::PathBuf,
        #[arg(long)]
        pairs: String,
    },
}

/// Parses `argv` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match Session::new(&cli.config).and_then(|s| s.dispatch(&cli.command, out)) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

struct Session {
    arena: Arena,
    /// Names accepted on input.
    parse_aliases: Aliases,
    /// Names used on output.
    print_aliases: Option<Aliases>,
    mode: Mode,
    format: Format,
    seed: u64,
}

fn io(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

fn decision(b: bool) -> i32 {
    if b {
        EXIT_OK
    } else {
        EXIT_FALSE
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Parse { pos: 0, msg: msg.into() }
}

impl Session {
    fn new(c: &Config) -> Result<Self> {
        let alphabet = Alphabet::parse(&c.alphabet)?;
        let arena = match c.cap {
            Some(cap) if cap < 2 => return Err(usage("--cap must be at least 2")),
            Some(cap) => Arena::with_caps(alphabet, cap, Arena::DEFAULT_PRODUCT_CAP),
            None => Arena::new(alphabet),
        };
        let (parse_aliases, print_aliases) = match &c.aliases {
            Some(path) => {
                let a = Aliases::parse(&arena, &std::fs::read_to_string(path)?)?;
                (a.clone(), Some(a))
            }
            None => {
                let a = Aliases::two_letter_defaults(&arena);
                let p = c.named.then(|| a.clone());
                (a, p)
            }
        };
        let mode = match c.mode {
            ModeArg::Monoid => Mode::Monoid,
            ModeArg::Semigroup => Mode::Semigroup,
        };
        Ok(Session { arena, parse_aliases, print_aliases, mode, format: c.format, seed: c.seed })
    }

    fn names(&self) -> Option<&Aliases> {
        self.print_aliases.as_ref()
    }

    fn gen(&self, text: &str) -> Result<Gen> {
        self.arena.parse_gen(text.trim(), Some(&self.parse_aliases))
    }

    fn word(&self, text: &str) -> Result<Vec<Gen>> {
        self.arena.parse_word(text, Some(&self.parse_aliases))
    }

    fn element(&self, text: &str) -> Result<Mountain> {
        normalize(&self.arena, &self.word(text)?, self.mode)
    }

    fn show(&self, u: &Mountain) -> String {
        u.display(&self.arena, self.names())
    }

    fn mountain_json(&self, u: &Mountain) -> Value {
        let rec = u.compact(&self.arena).to_record(&self.arena, self.names());
        json!({ "peak": rec.peak, "s": rec.s, "t": rec.t, "word": self.show(u) })
    }

    fn emit(&self, out: &mut dyn Write, text: &str, value: Value) -> Result<()> {
        match self.format {
            Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("json")),
            _ => write!(out, "{text}"),
        }
        .map_err(io)
    }

    fn dispatch(&self, cmd: &Command, out: &mut dyn Write) -> Result<i32> {
        match cmd {
            Command::Normalize { word, trace, strategy } => self.normalize(out, word, *trace, *strategy),
            Command::Eq { left, right } => {
                let (u, v) = (self.element(left)?, self.element(right)?);
                let equal = u == v;
                let text = format!("{}\n{}\n{}\n", self.show(&u), self.show(&v), if equal { "equal" } else { "different" });
                let value = json!({ "left": self.mountain_json(&u), "right": self.mountain_json(&v), "equal": equal });
                self.emit(out, &text, value)?;
                Ok(decision(equal))
            }
            Command::Mul { left, right } => {
                let p = multiply(&self.arena, &self.element(left)?, &self.element(right)?)?;
                self.emit(out, &format!("{}\n", self.show(&p)), self.mountain_json(&p))?;
                Ok(EXIT_OK)
            }
            Command::Idem { word } => {
                let u = self.element(word)?;
                let b = u.is_trivial() || is_idempotent(&self.arena, &u);
                let text = format!("{}\n{}\n", self.show(&u), if b { "idempotent" } else { "not idempotent" });
                self.emit(out, &text, json!({ "mountain": self.mountain_json(&u), "idempotent": b }))?;
                Ok(decision(b))
            }
            Command::Inv { word, other } => self.inverse(out, word, other.as_deref()),
            Command::Order { left, right, rel } => {
                let (u, v) = (self.element(left)?, self.element(right)?);
                let b = match rel {
                    Rel::R => leq_r(&u, &v),
                    Rel::L => leq_l(&u, &v),
                    Rel::J => leq_j(&self.arena, &u, &v),
                    Rel::Nat => leq_natural(&self.arena, &u, &v),
                };
                let text = format!("{}\n{}\n{}\n", self.show(&u), self.show(&v), if b { "true" } else { "false" });
                let value = json!({ "left": self.mountain_json(&u), "right": self.mountain_json(&v), "leq": b });
                self.emit(out, &text, value)?;
                Ok(decision(b))
            }
            Command::Eggbox { generator } => {
                let g = self.gen(generator)?;
                let eb = build_eggbox(&self.arena, g)?;
                match self.format {
                    Format::Text => write!(out, "{}", eb.render_text(&self.arena, self.names())).map_err(io)?,
                    Format::Dot => write!(out, "{}", eb.render_dot(&self.arena, self.names())).map_err(io)?,
                    Format::Json => writeln!(
                        out,
                        "{}",
                        serde_json::to_string_pretty(&eb.to_json(&self.arena, self.names())).expect("json")
                    )
                    .map_err(io)?,
                }
                Ok(EXIT_OK)
            }
            Command::Gens { level, count } => self.gens(out, *level, *count),
            Command::Embed { site, a, bound, verify } => self.embed(out, site, a, *bound, *verify),
            Command::Finite { command } => self.finite(out, command),
            Command::Example1 => {
                let ex = example1()?;
                self.report(out, &ex.report)
            }
            Command::Example2 => {
                let ex = example2()?;
                self.report(out, &ex.report)
            }
            Command::Selftest => {
                let r = selftest(&self.arena, self.seed)?;
                self.report(out, &r)
            }
        }
    }

    fn normalize(&self, out: &mut dyn Write, word: &str, trace: bool, strategy: StrategyArg) -> Result<i32> {
        let w = self.word(word)?;
        let u = normalize(&self.arena, &w, self.mode)?;
        let strategy = match strategy {
            StrategyArg::Leftmost => Strategy::LeftmostLowest,
            StrategyArg::Random => Strategy::Random(self.seed),
        };
        let mut text = String::new();
        let mut steps = Vec::new();
        if trace {
            let start = beta1(&self.arena, &w);
            let (_, tr) = beta2_traced(&self.arena, &start, strategy)?;
            text.push_str(&format!("beta1: {}\n", self.arena.format_word(&start, self.names())));
            for (i, s) in tr.iter().enumerate() {
                let shown = self.arena.format_word(&s.result, self.names());
                text.push_str(&format!("step {}: uplift at {}{}: {shown}\n", i + 1, s.position, if s.collapsed { " (collapse)" } else { "" }));
                steps.push(json!({ "position": s.position, "collapsed": s.collapsed, "result": shown }));
            }
        }
        text.push_str(&format!("{}\n", self.show(&u)));
        let mut value = self.mountain_json(&u);
        if trace {
            value["trace"] = Value::Array(steps);
        }
        self.emit(out, &text, value)?;
        Ok(EXIT_OK)
    }

    fn inverse(&self, out: &mut dyn Write, word: &str, other: Option<&str>) -> Result<i32> {
        let u = self.element(word)?;
        if let Some(other) = other {
            let v = self.element(other)?;
            let b = if u.is_trivial() || v.is_trivial() { u == v } else { is_inverse(&self.arena, &u, &v) };
            let text = format!("{}\n{}\n{}\n", self.show(&u), self.show(&v), if b { "inverse" } else { "not inverse" });
            let value = json!({ "left": self.mountain_json(&u), "right": self.mountain_json(&v), "inverse": b });
            self.emit(out, &text, value)?;
            return Ok(decision(b));
        }
        let c = canonical_inverse(&u);
        let all = if u.is_trivial() { vec![u.clone()] } else { inverses_in_class(&self.arena, &u) };
        let mut text = format!("canonical: {}\n", self.show(&c));
        for v in &all {
            text.push_str(&format!("inverse: {}\n", self.show(v)));
        }
        let value = json!({
            "canonical": self.mountain_json(&c),
            "inverses": all.iter().map(|v| self.mountain_json(v)).collect::<Vec<_>>(),
        });
        self.emit(out, &text, value)?;
        Ok(EXIT_OK)
    }

    fn gens(&self, out: &mut dyn Write, level: usize, count: bool) -> Result<i32> {
        let n = self.arena.alphabet().len();
        if count {
            let size = if level <= self.arena.cap() {
                self.arena.enum_level(level)?.len().to_string()
            } else if n >= 2 && level >= 2 {
                level_size(level, n).to_string()
            } else {
                self.arena.enum_level(level)?.len().to_string()
            };
            self.emit(out, &format!("{size}\n"), json!({ "level": level, "count": size }))?;
            return Ok(EXIT_OK);
        }
        let letters: Vec<String> =
            self.arena.enum_level(level)?.iter().map(|&g| self.arena.format_gen(g, self.names())).collect();
        let mut text = String::new();
        for l in &letters {
            text.push_str(l);
            text.push('\n');
        }
        self.emit(out, &text, json!({ "level": level, "letters": letters }))?;
        Ok(EXIT_OK)
    }

    fn embed(&self, out: &mut dyn Write, site: &str, a: &str, bound: usize, verify: bool) -> Result<i32> {
        let g = self.gen(site)?;
        let members = split_list(a).iter().map(|s| self.gen(s)).collect::<Result<Vec<_>>>()?;
        let site = EmbeddingSite::new(&self.arena, g, members)?;
        let mut text = format!("site {} with {} letters\n", self.arena.format_gen(g, self.names()), site.a.len());
        let mut levels = Vec::new();
        for j in 0..=bound {
            let aj = site.a_level(j)?;
            let shown: Vec<String> = aj.iter().map(|&h| self.arena.format_gen(h, self.names())).collect();
            text.push_str(&format!("A_{j}: {} letters\n", shown.len()));
            levels.push(json!({ "level": j, "letters": shown }));
        }
        let mut value = json!({ "site": self.arena.format_gen(g, self.names()), "towers": levels });
        let mut code = EXIT_OK;
        if verify {
            let r = verify_embedding(&site, bound)?;
            text.push_str(&format!(
                "{} mountains; non-injective {}; products {}; idempotents {}; identity {}; splice {}\n{}\n",
                r.mountains,
                r.non_injective,
                r.product_failures,
                r.idempotent_failures,
                r.identity_failures,
                r.splice_mismatches,
                if r.ok() { "PASS" } else { "FAIL" }
            ));
            value["verify"] = json!({
                "mountains": r.mountains,
                "non_injective": r.non_injective,
                "product_failures": r.product_failures,
                "idempotent_failures": r.idempotent_failures,
                "identity_failures": r.identity_failures,
                "splice_mismatches": r.splice_mismatches,
                "ok": r.ok(),
            });
            code = decision(r.ok());
        }
        self.emit(out, &text, value)?;
        Ok(code)
    }

    fn finite(&self, out: &mut dyn Write, cmd: &FiniteCommand) -> Result<i32> {
        match cmd {
            FiniteCommand::Analyze { file } => {
                let s = FiniteSemigroup::parse(&std::fs::read_to_string(file)?)?;
                if self.format == Format::Dot {
                    write!(out, "{}", s.render_dot()).map_err(io)?;
                    return Ok(EXIT_OK);
                }
                let idem: Vec<&str> = s.idempotents().into_iter().map(|x| s.name(x)).collect();
                let d: Vec<Vec<&str>> =
                    s.classes(Green::D).iter().map(|c| c.iter().map(|&x| s.name(x)).collect()).collect();
                let text = format!(
                    "order {}\nregular {}\nidempotents {}\nD-classes {}\n{}",
                    s.order(),
                    s.is_regular(),
                    idem.join(" "),
                    d.len(),
                    s.render_eggbox()
                );
                let value = json!({
                    "order": s.order(),
                    "regular": s.is_regular(),
                    "idempotents": idem,
                    "d_classes": d,
                });
                self.emit(out, &text, value)?;
                Ok(EXIT_OK)
            }
            FiniteCommand::Weakgen { file, gens } => {
                let s = FiniteSemigroup::parse(&std::fs::read_to_string(file)?)?;
                let x = split_list(gens).iter().map(|n| s.parse_element(n)).collect::<Result<Vec<_>>>()?;
                let w = is_weakly_generated(&s, &x)?;
                let witness: Option<Vec<&str>> = w.witness.as_ref().map(|c| c.iter().map(|&i| s.name(i)).collect());
                let mut text = format!("weakly generated: {}\n", w.weakly_generated);
                if let Some(c) = &witness {
                    text.push_str(&format!("witness ({} elements): {}\n", c.len(), c.join(" ")));
                }
                self.emit(out, &text, json!({ "weakly_generated": w.weakly_generated, "witness": witness }))?;
                Ok(decision(w.weakly_generated))
            }
            FiniteCommand::Quotient { file, pairs } => {
                let s = FiniteSemigroup::parse(&std::fs::read_to_string(file)?)?;
                let p = parse_pairs(pairs)?
                    .into_iter()
                    .map(|(a, b)| Ok((s.parse_element(&a)?, s.parse_element(&b)?)))
                    .collect::<Result<Vec<_>>>()?;
                let c = congruence_closure(&s, &p)?;
                let value = json!({
                    "order": c.quotient.order(),
                    "names": c.quotient.names(),
                    "table": c.quotient.rows(),
                    "class_of": c.class_of,
                });
                self.emit(out, &c.quotient.to_text(), value)?;
                Ok(EXIT_OK)
            }
        }
    }

    fn report(&self, out: &mut dyn Write, r: &Report) -> Result<i32> {
        let checks: Vec<Value> =
            r.checks.iter().map(|c| json!({ "name": c.name, "pass": c.pass, "detail": c.detail })).collect();
        let passed = r.checks.iter().filter(|c| c.pass).count();
        let text = format!("{r}{passed}/{} checks passed\n", r.checks.len());
        self.emit(out, &text, json!({ "checks": checks, "notes": r.notes, "ok": r.ok() }))?;
        Ok(decision(r.ok()))
    }
}

fn split_list(text: &str) -> Vec<String> {
    text.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

/// Parses `(a,b),(c,d)`.
fn parse_pairs(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        rest = rest.trim_start_matches(|c: char| c == ',' || c.is_whitespace());
        if rest.is_empty() {
            break;
        }
        let body = rest.strip_prefix('(').ok_or_else(|| usage(format!("expected `(` in `{rest}`")))?;
        let end = body.find(')').ok_or_else(|| usage("unclosed `(`"))?;
        let (a, b) = body[..end].split_once(',').ok_or_else(|| usage("a pair needs two elements"))?;
        out.push((a.trim().to_string(), b.trim().to_string()));
        rest = &body[end + 1..];
    }
    Ok(out)
}

/// Quick checks over small heights, seeded for the random part.
pub fn selftest(arena: &Arena, seed: u64) -> Result<Report> {
    use crate::rewrite::{beta, beta2_with};
    use crate::sample::{random_word, rng};

    let mut r = Report::default();
    let n = arena.alphabet().len();
    let top = arena.cap().min(4);
    if n >= 2 {
        let ok = (2..top).all(|i| {
            let (size, _) = count_formulas(i, n);
            arena.enum_level(i + 1).map(|l| size == l.len().into()).unwrap_or(false)
        });
        r.push("level sizes match the counting formula", ok, format!("levels 3..={top}"));
    }
    let mut failures = 0;
    for i in 2..=top.min(3) {
        for &g in arena.enum_level(i)?.iter() {
            let (l, c, rt) = (arena.left(g), arena.center(g).expect("triple"), arena.right(g));
            let one = Gen::ONE;
            let pairs: [(Vec<Gen>, Vec<Gen>); 6] = [
                (vec![one, g], vec![g]),
                (vec![g, one], vec![g]),
                (vec![g, g], vec![g]),
                (vec![c, l, g], vec![g]),
                (vec![g, rt, c], vec![g]),
                (vec![rt, c, g, c, l], vec![rt, c, l]),
            ];
            failures += pairs.iter().filter(|(a, b)| beta(arena, a) != beta(arena, b)).count();
        }
    }
    r.push("relation instances normalize together", failures == 0, format!("{failures} failures"));
    let mut rg = rng(seed);
    let mut disagreements = 0;
    for k in 0..50u64 {
        let w = random_word(arena, &mut rg, 6, 2.min(top))?;
        let b1 = beta1(arena, &w);
        let a = beta2_with(arena, &b1, Strategy::LeftmostLowest)?;
        let b = beta2_with(arena, &b1, Strategy::Random(seed.wrapping_add(k)))?;
        disagreements += usize::from(a != b);
    }
    r.push("strategies agree on random words", disagreements == 0, format!("{disagreements} disagreements"));
    let singletons = (2..=top.min(3))
        .map(|i| arena.enum_level(i))
        .collect::<Result<Vec<_>>>()?
        .iter()
        .flat_map(|l| l.iter().copied())
        .map(|g| sandwich_singleton_check(arena, g))
        .collect::<Result<Vec<bool>>>()?;
    r.push("sandwich sets are singletons", singletons.iter().all(|&b| b), format!("{} letters", singletons.len()));
    let mut eggs_ok = true;
    for i in 1..=top.min(3) {
        for &g in arena.enum_level(i)?.iter() {
            let eb = build_eggbox(arena, g)?;
            eggs_ok &= eb.below_diagonal_idempotents().is_empty() && eb.diagonal_idempotent() && eb.gamma_connected();
        }
    }
    r.push("egg-box idempotent placement", eggs_ok, "");
    let rec = Mountain::of_letter(arena, arena.base(0)).compact(arena).to_record(arena, None);
    let round = Compact::from_record(arena, &rec, None).and_then(|c| Mountain::from_compact(arena, &c));
    r.push("compact codes round-trip", round.ok() == Some(Mountain::of_letter(arena, arena.base(0))), "");
    Ok(r)
}
