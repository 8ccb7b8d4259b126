//! The `homcat` command line.
//!
//! Every command prints a short human report, or with `--json` a single JSON
//! document. Commands that produce a ring, module, object or sequence emit
//! it in the file format read by [`crate::io`], with an extra `"ops_log"`
//! list of the checks that ran, so outputs can be fed back in as inputs.
//!
//! Exit codes: 0 on success, 1 when a checked property fails or the
//! operation is not defined for the input, 2 on malformed input.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::Algebra;
use crate::ar::{
    almost_split_sequence, ar_corpus, explicit_family, module_corpus_terms, tau_morphism, verify_almost_split,
    Category, Corpus, CorpusOptions, Family, Term,
};
use crate::error::{Error, Result};
use crate::io::{base_ring, report_value, table_value, Loader};
use crate::module::{decompose, dual, is_linked_module, syzygy, tau_module, transpose, DualVariant, Module, TauDirection};
use crate::morph::{
    classify_object, dual_object, e_envelope, g_cover, lambda_m, linked_m, red, stable_g_cover, transpose_m, LinkMethod,
    MorphObject, RedContext,
};
use crate::suite::{paper_check, CheckOptions};

#[derive(Parser, Debug)]
#[command(name = "homcat", version, about = "Exact homological algebra of morphism categories over finite local algebras")]
pub struct Cli {
    /// Emit one machine-readable JSON document.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for every randomized choice. Defaults to $HOMCAT_SEED, then 0.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Subcommand, Debug)]
pub enum Verb {
    /// Structure-constant rings.
    Ring {
        #[command(subcommand)]
        action: RingAction,
    },
    /// Modules over a ring.
    Module {
        #[command(subcommand)]
        action: ModuleAction,
    },
    /// Objects of the morphism category.
    Morph {
        #[command(subcommand)]
        action: MorphAction,
    },
    /// Auslander–Reiten translates and sequences.
    Ar {
        #[command(subcommand)]
        action: ArAction,
    },
    /// The theorem suites.
    Paper {
        #[command(subcommand)]
        action: PaperAction,
    },
}

#[derive(Subcommand, Debug)]
pub enum RingAction {
    /// Check the algebra axioms and list every failure.
    Validate { ring: String },
    /// Commutativity, locality, the Gorenstein flag, radical and socle.
    Classify { ring: String },
    /// The triangular matrix ring T₂(R).
    Triangular { ring: String },
    /// The opposite ring.
    Opposite { ring: String },
}

#[derive(Subcommand, Debug)]
pub enum ModuleAction {
    /// Indecomposable summands with multiplicities.
    Decompose { file: PathBuf },
    /// The i-th syzygy.
    Syzygy {
        #[arg(short = 'i', long = "index", default_value_t = 1)]
        i: usize,
        file: PathBuf,
    },
    /// The Auslander transpose.
    Transpose { file: PathBuf },
    /// Hom(−, R) or the field dual.
    Dual {
        #[arg(long, value_enum, default_value_t = DualArg::Algebra)]
        variant: DualArg,
        file: PathBuf,
    },
    /// The translate (Tr −)′ or its inverse.
    Tau {
        #[arg(long)]
        inverse: bool,
        file: PathBuf,
    },
    /// Horizontal linkage: both criteria.
    Linked { file: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum MorphAction {
    /// Membership in S, H, G, E and projectivity.
    Classify { file: PathBuf },
    /// The minimal right approximation by G.
    Cover {
        /// `plain` for the G-cover, `stable` for the injectively stable one.
        #[arg(long, value_enum, default_value_t = CoverArg::Plain)]
        variant: CoverArg,
        file: PathBuf,
    },
    /// The minimal left approximation into E.
    Envelope { file: PathBuf },
    /// The transpose in the morphism category, with its certificates.
    Transpose { file: PathBuf },
    /// λ applied i times.
    Lambda {
        #[arg(short = 'i', long = "index", default_value_t = 1)]
        i: usize,
        file: PathBuf,
    },
    /// Linkage verdicts.
    Linked {
        #[arg(long, value_enum, default_value_t = MethodArg::All)]
        method: MethodArg,
        file: PathBuf,
    },
    /// Delete trivial summands.
    Red {
        #[arg(long, value_enum, default_value_t = CtxArg::M)]
        ctx: CtxArg,
        file: PathBuf,
    },
    /// Hom(−, R) applied to both ends.
    Dual { file: PathBuf },
}

#[derive(Args, Debug)]
pub struct CorpusArgs {
    /// A directory of module and object files to verify against. Without
    /// it a corpus is generated from the ring.
    #[arg(long)]
    pub corpus: Option<PathBuf>,
    /// Largest R-module dimension in a generated corpus.
    #[arg(long = "max-dim")]
    pub max_dim: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum ArAction {
    /// The translate of a module (category R) or an object.
    Tau {
        #[arg(long, value_enum)]
        cat: CatArg,
        /// Apply the inverse translate.
        #[arg(long)]
        inverse: bool,
        /// A module file (category R) or an object file.
        file: PathBuf,
    },
    /// The almost split sequence ending at a term.
    Sequence {
        #[arg(long, value_enum)]
        cat: CatArg,
        /// The indecomposable, non-projective right end.
        #[arg(long)]
        end: PathBuf,
        #[command(flatten)]
        corpus: CorpusArgs,
    },
    /// Re-check a sequence file.
    Verify {
        file: PathBuf,
        #[command(flatten)]
        corpus: CorpusArgs,
    },
    /// The four displayed sequences built from a sequence in mod R.
    Family {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = WhichArg::All)]
        which: WhichArg,
        /// Category for families that are almost split in two.
        #[arg(long, value_enum)]
        cat: Option<CatArg>,
        #[command(flatten)]
        corpus: CorpusArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum PaperAction {
    /// Run every suite over generated corpora.
    Check {
        ring: String,
        /// Largest R-module dimension in the corpora.
        #[arg(long = "max-dim")]
        max_dim: Option<usize>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum DualArg {
    Algebra,
    Field,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum CoverArg {
    Plain,
    Stable,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodArg {
    Direct,
    Ext,
    Component,
    All,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum CtxArg {
    #[value(name = "M", alias = "m", alias = "G", alias = "g")]
    M,
    #[value(name = "E", alias = "e")]
    E,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum CatArg {
    #[value(name = "R", alias = "r")]
    R,
    #[value(name = "H", alias = "h")]
    H,
    #[value(name = "G", alias = "g")]
    G,
    #[value(name = "E", alias = "e")]
    E,
}

impl CatArg {
    fn category(self) -> Category {
        match self {
            CatArg::R => Category::R,
            CatArg::H => Category::H,
            CatArg::G => Category::G,
            CatArg::E => Category::E,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum WhichArg {
    I,
    Ii,
    Iii,
    Iv,
    All,
}

/// What a command produced.
struct Outcome {
    doc: Value,
    ops_log: Vec<String>,
    human: Vec<String>,
    ok: bool,
    /// Print the log under the human report too.
    log_in_human: bool,
}

impl Outcome {
    fn new(doc: Value) -> Outcome {
        Outcome { doc, ops_log: Vec::new(), human: Vec::new(), ok: true, log_in_human: true }
    }

    fn log(&mut self, line: impl Into<String>) {
        self.ops_log.push(line.into());
    }

    fn say(&mut self, line: impl Into<String>) {
        self.human.push(line.into());
    }

    /// Records a checked property in the log.
    fn check(&mut self, name: &str, holds: bool) {
        self.log(format!("{name}: {}", if holds { "pass" } else { "FAIL" }));
        self.ok &= holds;
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Input(_) => 2,
        _ => 1,
    }
}

fn seed_from_env(flag: Option<u64>) -> Result<u64> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var("HOMCAT_SEED") {
        Ok(v) => v.trim().parse().map_err(|_| Error::Input(format!("HOMCAT_SEED={v:?} is not an integer"))),
        Err(_) => Ok(0),
    }
}

fn corpus_options(max_dim: Option<usize>, seed: u64) -> CorpusOptions {
    let mut opts = CorpusOptions { seed, ..CorpusOptions::default() };
    if let Some(d) = max_dim {
        opts.max_dim_r = d;
        opts.max_dim_lambda = 2 * d;
    }
    opts
}

/// Parses `args` (program name first), runs the command and writes its
/// report to `out`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let start = Instant::now();
    let result = seed_from_env(cli.seed).and_then(|seed| dispatch(&cli.verb, seed));
    match result {
        Ok(o) => {
            let text = if cli.json {
                let mut doc = o.doc;
                if let Value::Object(m) = &mut doc {
                    m.insert("ops_log".into(), json!(o.ops_log));
                }
                crate::io::to_pretty(&doc)
            } else {
                let mut lines = o.human;
                if o.log_in_human {
                    lines.extend(o.ops_log.iter().map(|l| format!("  {l}")));
                }
                lines.push(format!("runtime: {:.3} s", start.elapsed().as_secs_f64()));
                lines.join("\n")
            };
            if writeln!(out, "{text}").is_err() {
                return 1;
            }
            if o.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "homcat: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(verb: &Verb, seed: u64) -> Result<Outcome> {
    let mut loader = Loader::new();
    match verb {
        Verb::Ring { action } => ring_cmd(&mut loader, action),
        Verb::Module { action } => module_cmd(&mut loader, action),
        Verb::Morph { action } => morph_cmd(&mut loader, action),
        Verb::Ar { action } => ar_cmd(&mut loader, action, seed),
        Verb::Paper { action: PaperAction::Check { ring, max_dim } } => {
            let base = loader.ring_arg(ring)?;
            paper_cmd(&base, ring, *max_dim, seed)
        }
    }
}

fn ring_cmd(loader: &mut Loader, action: &RingAction) -> Result<Outcome> {
    match action {
        RingAction::Validate { ring } => {
            let table = Loader::ring_table(ring)?;
            let fails = table.validate()?;
            let listing: Vec<String> = fails.iter().map(ToString::to_string).collect();
            let mut o = Outcome::new(json!({ "valid": fails.is_empty(), "failures": listing }));
            o.ok = fails.is_empty();
            if fails.is_empty() {
                o.say(format!("valid: yes (dimension {}, p = {})", table.dim(), table.p));
            } else {
                o.say(format!("valid: no ({} axiom failures)", fails.len()));
                for f in &listing {
                    o.say(format!("  {f}"));
                }
            }
            Ok(o)
        }
        RingAction::Classify { ring } => {
            let a = loader.ring_arg(ring)?;
            let c = a.classify();
            let mut o = Outcome::new(json!({
                "dim": a.dim(),
                "p": a.p(),
                "commutative": c.commutative,
                "local": c.local,
                "gorenstein_local": c.gorenstein_local,
                "basic": c.basic,
                "radical_basis": c.radical_basis,
                "socle_basis": c.socle_basis,
                "primitive_idempotents": c.primitive_idempotents,
            }));
            o.say(format!("local: {}, gorenstein: {}", yes(c.local), yes(c.gorenstein_local)));
            o.say(format!(
                "commutative: {}, basic: {}, dim {}, radical dim {}, socle dim {}, primitive idempotents {}",
                yes(c.commutative),
                yes(c.basic),
                a.dim(),
                c.radical_basis.len(),
                c.socle_basis.len(),
                c.primitive_idempotents.len()
            ));
            Ok(o)
        }
        RingAction::Triangular { ring } => {
            let a = loader.ring_arg(ring)?;
            ring_outcome(&a.triangular()?, "T₂(R)")
        }
        RingAction::Opposite { ring } => {
            let a = loader.ring_arg(ring)?;
            ring_outcome(&a.opposite(), "R^op")
        }
    }
}

fn ring_outcome(a: &Arc<Algebra>, what: &str) -> Result<Outcome> {
    let doc = table_value(&a.to_table());
    let mut o = Outcome::new(doc.clone());
    o.say(format!("{what}: dimension {}", a.dim()));
    o.say(crate::io::to_pretty(&doc));
    Ok(o)
}

/// `dim 3 = 2 (projective) ⊕ 1`
fn describe_module(m: &Module) -> Result<String> {
    if m.is_zero() {
        return Ok("zero module".into());
    }
    let d = decompose(m)?;
    let parts: Vec<String> = d
        .summands()
        .iter()
        .map(|(x, mult)| {
            let proj = if x.is_projective() { " (projective)" } else { "" };
            let times = if *mult > 1 { format!("^{mult}") } else { String::new() };
            format!("[{}{proj}]{times}", x.dim())
        })
        .collect();
    Ok(format!("{} module of dim {} = {}", m.side().name(), m.dim(), parts.join(" ⊕ ")))
}

fn describe_object(x: &MorphObject) -> Result<String> {
    let parts: Vec<String> = x.summands()?.iter().map(|s| format!("({} → {})", s.a().dim(), s.b().dim())).collect();
    Ok(format!(
        "object {} → {} (rank {}), mono: {}, epi: {}, summands: {}",
        x.a().dim(),
        x.b().dim(),
        x.f().rank(),
        yes(x.is_mono()),
        yes(x.is_epi()),
        if parts.is_empty() { "none".into() } else { parts.join(" ⊕ ") }
    ))
}

fn module_outcome(loader: &Loader, m: &Module) -> Result<Outcome> {
    let mut o = Outcome::new(loader.module_value(m, true));
    o.say(describe_module(m)?);
    Ok(o)
}

fn object_outcome(loader: &Loader, x: &MorphObject) -> Result<Outcome> {
    let mut o = Outcome::new(loader.morph_value(x, true));
    o.say(describe_object(x)?);
    Ok(o)
}

fn module_cmd(loader: &mut Loader, action: &ModuleAction) -> Result<Outcome> {
    match action {
        ModuleAction::Decompose { file } => {
            let m = loader.module_file(file)?;
            let d = decompose(&m)?;
            let summands: Vec<Value> = d
                .summands()
                .iter()
                .map(|(x, mult)| {
                    json!({
                        "module": loader.module_value(x, false),
                        "multiplicity": mult,
                        "projective": x.is_projective(),
                    })
                })
                .collect();
            let mut o = Outcome::new(json!({ "pieces": d.len(), "summands": summands }));
            o.say(describe_module(&m)?);
            Ok(o)
        }
        ModuleAction::Syzygy { i, file } => {
            let m = loader.module_file(file)?;
            module_outcome(loader, &syzygy(&m, *i))
        }
        ModuleAction::Transpose { file } => {
            let m = loader.module_file(file)?;
            module_outcome(loader, &transpose(&m))
        }
        ModuleAction::Dual { variant, file } => {
            let m = loader.module_file(file)?;
            let v = match variant {
                DualArg::Algebra => DualVariant::Algebra,
                DualArg::Field => DualVariant::Field,
            };
            module_outcome(loader, &dual(&m, v)?)
        }
        ModuleAction::Tau { inverse, file } => {
            let m = loader.module_file(file)?;
            let dir = if *inverse { TauDirection::Inverse } else { TauDirection::Forward };
            module_outcome(loader, &tau_module(&m, dir)?)
        }
        ModuleAction::Linked { file } => {
            let m = loader.module_file(file)?;
            let l = is_linked_module(&m)?;
            let mut o = Outcome::new(json!({
                "linked": l.linked,
                "stable": l.stable,
                "ext_vanishes": l.ext_vanishes,
                "lambda_square_iso": l.lambda_square_iso,
            }));
            let reason = if l.linked {
                String::new()
            } else if !l.stable {
                " (not stable)".into()
            } else {
                " (Ext¹(Tr M, R) ≠ 0)".into()
            };
            o.say(format!("linked: {}{reason}", l.linked));
            o.say(format!(
                "stable: {}, Ext¹(Tr M, R) = 0: {}, M ≅ λ²M: {}",
                yes(l.stable),
                yes(l.ext_vanishes),
                yes(l.lambda_square_iso)
            ));
            o.check("structural criterion agrees with λ²", l.linked == l.lambda_square_iso);
            Ok(o)
        }
    }
}

fn morph_cmd(loader: &mut Loader, action: &MorphAction) -> Result<Outcome> {
    match action {
        MorphAction::Classify { file } => {
            let x = loader.morph_file(file)?;
            let c = classify_object(&x)?;
            let indec = x.is_indecomposable()?;
            let mut o = Outcome::new(json!({
                "in_s": c.in_s,
                "in_e": c.in_e,
                "in_h": c.in_h,
                "in_g": c.in_g,
                "projective_in_m": c.projective_in_m,
                "injective_in_h": c.injective_in_h,
                "locally_projective": c.locally_projective,
                "indecomposable": indec,
            }));
            o.say(describe_object(&x)?);
            let g = match c.in_g {
                Some(b) => yes(b),
                None => "undecided (non-Gorenstein base)",
            };
            o.say(format!(
                "S: {}, E: {}, H: {}, G: {g}, projective: {}, injective in H: {}, indecomposable: {}",
                yes(c.in_s),
                yes(c.in_e),
                yes(c.in_h),
                yes(c.projective_in_m),
                yes(c.injective_in_h),
                yes(indec)
            ));
            Ok(o)
        }
        MorphAction::Cover { variant, file } => {
            let x = loader.morph_file(file)?;
            let ap = match variant {
                CoverArg::Plain => g_cover(&x)?,
                CoverArg::Stable => stable_g_cover(&x)?,
            };
            let mut o = object_outcome(loader, &ap.object)?;
            o.check("cover lies in G", ap.object.is_mono());
            o.check("right minimal", ap.minimal);
            o.log(format!("map on A: {:?}", ap.map.a.to_rows()));
            o.log(format!("map on B: {:?}", ap.map.b.to_rows()));
            Ok(o)
        }
        MorphAction::Envelope { file } => {
            let x = loader.morph_file(file)?;
            let ap = e_envelope(&x)?;
            let mut o = object_outcome(loader, &ap.object)?;
            o.check("envelope lies in E", ap.object.is_epi());
            o.check("left minimal", ap.minimal);
            o.log(format!("map on A: {:?}", ap.map.a.to_rows()));
            o.log(format!("map on B: {:?}", ap.map.b.to_rows()));
            Ok(o)
        }
        MorphAction::Transpose { file } => {
            let x = loader.morph_file(file)?;
            let t = transpose_m(&x)?;
            let mut o = object_outcome(loader, &t.tr)?;
            let n = &t.normalized;
            let ft = &t.four_term;
            o.check("source ≅ Tr(Cok f)", n.source_ok);
            o.check(&format!("target ≅ Tr B ⊕ Q with rank Q = {}", n.q_rank), n.target_ok);
            o.check(
                &format!(
                    "Tr C → Tr B ⊕ Q → Tr A → 0 exact (dims {:?}, first rank {})",
                    ft.dims, ft.rank_first
                ),
                ft.exact,
            );
            o.check("cokernel of the first map ≅ Tr A", ft.cokernel_ok);
            if t.ext_vanishes {
                o.check("Ext¹(Cok f, R) = 0 forces a monomorphism", t.tr_is_mono);
            } else {
                o.log("Ext¹(Cok f, R) ≠ 0: mono criterion not applicable");
            }
            Ok(o)
        }
        MorphAction::Lambda { i, file } => {
            let x = loader.morph_file(file)?;
            object_outcome(loader, &lambda_m(&x, *i)?)
        }
        MorphAction::Linked { method, file } => {
            let x = loader.morph_file(file)?;
            let l = linked_m(&x)?;
            let pick = |m: LinkMethod| l.verdict(m);
            let methods: Vec<(&str, LinkMethod)> = match method {
                MethodArg::Direct => vec![("direct", LinkMethod::Direct)],
                MethodArg::Ext => vec![("ext", LinkMethod::ExtCriterion)],
                MethodArg::Component => vec![("component", LinkMethod::Component)],
                MethodArg::All => vec![
                    ("direct", LinkMethod::Direct),
                    ("ext", LinkMethod::ExtCriterion),
                    ("component", LinkMethod::Component),
                ],
            };
            let mut doc = serde_json::Map::new();
            let mut o = Outcome::new(Value::Null);
            for (name, m) in &methods {
                let v = pick(*m);
                doc.insert((*name).into(), json!(v));
                o.say(format!(
                    "{name}: {}",
                    match v {
                        Some(b) => b.to_string(),
                        None => "not applicable (an end has a projective summand)".into(),
                    }
                ));
            }
            if *method == MethodArg::All {
                doc.insert("agree".into(), json!(l.agree()));
                o.check("applicable methods agree", l.agree());
            }
            o.doc = Value::Object(doc);
            Ok(o)
        }
        MorphAction::Red { ctx, file } => {
            let x = loader.morph_file(file)?;
            let c = match ctx {
                CtxArg::M => RedContext::MOrG,
                CtxArg::E => RedContext::E,
            };
            let r = red(&x, c)?;
            let mut o = object_outcome(loader, &r)?;
            o.log(format!("removed dimension {}", x.dim() - r.dim()));
            Ok(o)
        }
        MorphAction::Dual { file } => {
            let x = loader.morph_file(file)?;
            object_outcome(loader, &dual_object(&x)?)
        }
    }
}

fn load_corpus(loader: &mut Loader, args: &CorpusArgs, base: &Arc<Algebra>, cat: Category, seed: u64) -> Result<Corpus> {
    match &args.corpus {
        Some(dir) => loader.corpus_dir(dir),
        None => {
            let opts = corpus_options(args.max_dim, seed);
            match cat {
                Category::R => module_corpus_terms(base, &opts),
                _ => ar_corpus(base, &opts),
            }
        }
    }
}

fn report_lines(o: &mut Outcome, r: &crate::ar::Report) {
    o.check("non-split", r.non_split);
    o.check("left end local", r.left_end_local);
    o.check("right end local", r.right_end_local);
    o.check(&format!("right almost split against {} ({} summands)", r.corpus_id, r.checked), r.right_almost_split_vs_corpus);
    if let Some(w) = &r.witness {
        o.say(format!("witness: {w}"));
    }
}

fn read_term(loader: &mut Loader, path: &Path, cat: Category) -> Result<Term> {
    let t = loader.term_file(path)?;
    match (&t, cat) {
        (Term::Module(_), Category::R) | (Term::Morph(_), Category::H | Category::G | Category::E) => Ok(t),
        (Term::Module(_), _) => Err(Error::Input(format!("category {cat} needs an object file, got a module"))),
        (Term::Morph(_), _) => Err(Error::Input("category R needs a module file, got an object".into())),
    }
}

fn ar_cmd(loader: &mut Loader, action: &ArAction, seed: u64) -> Result<Outcome> {
    match action {
        ArAction::Tau { cat, inverse, file } => {
            let cat = cat.category();
            let dir = if *inverse { TauDirection::Inverse } else { TauDirection::Forward };
            match read_term(loader, file, cat)? {
                Term::Module(m) => module_outcome(loader, &tau_module(&m, dir)?.with_side(m.side())),
                Term::Morph(x) => {
                    let t = tau_morphism(&x, cat, dir)?;
                    let mut o = object_outcome(loader, &t.object)?;
                    for c in &t.cross_checks {
                        o.check(&format!("agrees with {}", c.name), c.agrees);
                    }
                    if t.zero_kernel {
                        o.log("τ_R⁻¹ of the input is a monomorphism: the kernel in the formula is zero");
                    }
                    Ok(o)
                }
            }
        }
        ArAction::Sequence { cat, end, corpus } => {
            let cat = cat.category();
            let end = read_term(loader, end, cat)?;
            let base = base_ring(&end);
            let c = load_corpus(loader, corpus, &base, cat, seed)?;
            let seq = almost_split_sequence(&end, cat, Some(&c))?;
            let mut o = Outcome::new(loader.sequence_value(&seq));
            o.say(format!("almost split sequence in {cat} (corpus of {} items)", c.len()));
            for (name, t) in [("left", &seq.left), ("middle", &seq.middle), ("right", &seq.right)] {
                let d = match t {
                    Term::Module(m) => describe_module(m)?,
                    Term::Morph(x) => describe_object(x)?,
                };
                o.say(format!("{name}: {d}"));
            }
            if let Some(r) = &seq.report {
                report_lines(&mut o, r);
            }
            Ok(o)
        }
        ArAction::Verify { file, corpus } => {
            let seq = loader.sequence_file(file)?;
            let base = base_ring(&seq.left);
            let c = load_corpus(loader, corpus, &base, seq.category, seed)?;
            let r = verify_almost_split(&seq, &c)?;
            let mut o = Outcome::new(report_value(&r));
            o.say(format!(
                "sequence in {}: {} (corpus of {} items)",
                seq.category,
                if r.all_ok() { "almost split" } else { "not almost split" },
                c.len()
            ));
            o.say(format!("non_split = {}", r.non_split));
            report_lines(&mut o, &r);
            Ok(o)
        }
        ArAction::Family { file, which, cat, corpus } => {
            let mut seq = loader.sequence_file(file)?;
            let base = base_ring(&seq.left);
            let objs = load_corpus(loader, corpus, &base, Category::H, seed)?;
            if seq.report.is_none() {
                let mods = match &corpus.corpus {
                    Some(_) => objs.clone(),
                    None => module_corpus_terms(&base, &corpus_options(corpus.max_dim, seed))?,
                };
                seq.report = Some(verify_almost_split(&seq, &mods)?);
            }
            let families: Vec<Family> = match which {
                WhichArg::I => vec![Family::I],
                WhichArg::Ii => vec![Family::II],
                WhichArg::Iii => vec![Family::III],
                WhichArg::Iv => vec![Family::IV],
                WhichArg::All => vec![Family::I, Family::II, Family::III, Family::IV],
            };
            let mut docs = Vec::new();
            let mut o = Outcome::new(Value::Null);
            for f in families {
                let want = cat.map(CatArg::category);
                let s = explicit_family(&seq, f, want, Some(&objs))?;
                o.say(format!("family {} in {}:", f.name(), s.category));
                for (name, t) in [("left", &s.left), ("middle", &s.middle), ("right", &s.right)] {
                    if let Term::Morph(x) = t {
                        o.say(format!("  {name}: {}", describe_object(x)?));
                    }
                }
                if let Some(r) = &s.report {
                    let mut sub = Outcome::new(Value::Null);
                    report_lines(&mut sub, r);
                    o.ok &= sub.ok;
                    o.ops_log.extend(sub.ops_log.into_iter().map(|l| format!("family {}: {l}", f.name())));
                    o.human.extend(sub.human);
                }
                docs.push(loader.sequence_value(&s));
            }
            o.doc = if docs.len() == 1 { docs.pop().expect("one sequence") } else { json!({ "sequences": docs }) };
            Ok(o)
        }
    }
}

fn paper_cmd(base: &Arc<Algebra>, ring: &str, max_dim: Option<usize>, seed: u64) -> Result<Outcome> {
    let opts = CheckOptions { corpus: corpus_options(max_dim, seed), ..CheckOptions::default() };
    let report = paper_check(base, ring, &opts)?;
    let doc = serde_json::to_value(&report).map_err(|e| Error::Internal(e.to_string()))?;
    let mut o = Outcome::new(doc);
    o.ok = report.all_ok();
    let c = &report.corpus;
    o.say(format!("ring {ring} (gorenstein: {})", yes(report.gorenstein)));
    o.say(format!("corpus: {} modules, {} monomorphisms, {} objects", c.modules, c.monos, c.objects));
    for s in &report.suites {
        let line = match &s.skipped {
            Some(why) => format!("{}: skipped: {why}", s.name),
            None => format!("{}: {}/{}", s.name, s.passed, s.total),
        };
        o.log(line.clone());
        let mark = if s.ok() { "ok  " } else { "FAIL" };
        o.human.push(format!("{mark} {line}  [{:.2} s]", s.elapsed_ms as f64 / 1000.0));
        if let Some(n) = &s.note {
            o.human.push(format!("       note: {n}"));
        }
        for f in &s.failures {
            o.human.push(format!("       failure: {f}"));
        }
    }
    let failed = report.suites.iter().filter(|s| !s.ok()).count();
    o.say(if failed == 0 { "all suites pass".to_string() } else { format!("{failed} suite(s) failed") });
    o.log_in_human = false;
    Ok(o)
}
