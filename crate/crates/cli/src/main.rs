//! `clgrp`: batch front end for the classical group algorithms.
//!
//! Forms and matrices are read from plain-text files (see `clgrp::io`).
//! Every text output starts with a `#` header line recording the seed, so
//! the output of a matrix-producing command can be fed back in as input.

mod selfcheck;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use clgrp::forms::{isometry, transform_to_canonical};
use clgrp::groups::{spinor_norm, tau};
use clgrp::io::{format_elt, format_matrix, parse_field, parse_form, parse_matrix, read_form_header};
use clgrp::quotient::render_word;
use clgrp::{Error, Family, FieldCtx, Form, FormKind, FormType, GroupSpec, Label, Level, Matrix, Quotient};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

/// Default seed for the randomised steps. Canonical outputs do not depend on it.
pub const DEFAULT_SEED: u64 = 0;

#[derive(Parser)]
#[command(name = "clgrp", version, about = "Canonical forms, spinor norms and conformal quotients of finite classical groups")]
struct Cli {
    /// Seed for the random choices; recorded in the output header.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the result to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the type of a form.
    Classify { form: PathBuf },
    /// Print X with X F X^dagger = lambda F_canonical, or with a second form
    /// an isometry between the two.
    Transform { form: PathBuf, other: Option<PathBuf> },
    /// Print T with T F1 T^dagger = F2.
    Isometry { first: PathBuf, second: PathBuf },
    /// Similarity factor of a matrix with respect to a form.
    Tau { form: PathBuf, element: PathBuf },
    /// Spinor norm of an isometry of a quadratic form.
    Spinor { form: PathBuf, element: PathBuf },
    /// Image of an element of Delta in one of the two presentations.
    Image {
        element: PathBuf,
        #[command(flatten)]
        group: GroupArgs,
        /// Use the presentation with one generator per field element.
        #[arg(long, conflicts_with = "p2")]
        p1: bool,
        /// Use the polycyclic presentation (the default).
        #[arg(long)]
        p2: bool,
    },
    /// Canonical representative of the coset Omega g.
    CosetRep {
        element: PathBuf,
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Print both presentations of Delta / Omega.
    Present {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Run the invariant checks over a sweep of groups.
    Selfcheck {
        /// Comma-separated families (SL, Sp, SU, O, O+, O-, Oeven).
        #[arg(long, value_delimiter = ',')]
        families: Option<Vec<Family>>,
        #[arg(long, default_value_t = 6)]
        dmax: usize,
        /// Comma-separated field orders.
        #[arg(long, value_delimiter = ',', default_value = "2,3,4,5")]
        qset: Vec<u64>,
    },
}

/// Selects a group: either the group of a form file, or a standard group
/// given by family (or form type), dimension and field.
#[derive(Args, Clone)]
struct GroupArgs {
    /// Form file; the family is read off its type.
    #[arg(long)]
    form: Option<PathBuf>,
    #[arg(long)]
    family: Option<Family>,
    /// Form type (Sp, U, O, O+, O-); picks the sign for Oeven.
    #[arg(long = "type")]
    label: Option<Label>,
    #[arg(long)]
    dim: Option<usize>,
    /// Field as GF(p^k) or q.
    #[arg(long)]
    field: Option<String>,
}

/// A failure with its exit status.
struct Failure {
    code: u8,
    err: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(err: anyhow::Error) -> Self {
        let code = match err.downcast_ref::<Error>() {
            Some(e) => exit_code(e),
            None if err.downcast_ref::<std::io::Error>().is_some() => 3,
            None => 1,
        };
        Failure { code, err }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        anyhow::Error::new(e).into()
    }
}

fn exit_code(e: &Error) -> u8 {
    use Error::*;
    match e {
        Parse { .. } | Degenerate | ZeroForm | SymmetryViolation | ShapeMismatch(_) | NotPrime(_)
        | UnknownConwayPolynomial { .. } => 3,
        NotIsometric { .. } | NotInDelta | KindMismatch | NotSimilarity | NotIsometry | SingularVector
        | NotQuasisimple(_) | IncompatibleDimension { .. } | Singular | NotInSubfield | EvenCharacteristic
        | OddCharRequired | OutOfRange(_) | ZeroInput => 2,
    }
}

// Short name of an error, printed in front of its message.
fn error_name(e: &Error) -> &'static str {
    use Error::*;
    match e {
        NotPrime(_) => "NotPrime",
        UnknownConwayPolynomial { .. } => "UnknownConwayPolynomial",
        ZeroInput => "ZeroInput",
        EvenCharacteristic => "EvenCharacteristic",
        OddCharRequired => "OddCharRequired",
        NotInSubfield => "NotInSubfield",
        ShapeMismatch(_) => "ShapeMismatch",
        Singular => "Singular",
        SymmetryViolation => "SymmetryViolation",
        IncompatibleDimension { .. } => "IncompatibleDimension",
        Degenerate => "Degenerate",
        ZeroForm => "ZeroForm",
        KindMismatch => "KindMismatch",
        NotIsometric { .. } => "NotIsometric",
        NotSimilarity => "NotSimilarity",
        NotIsometry => "NotIsometry",
        SingularVector => "SingularVector",
        NotQuasisimple(_) => "NotQuasisimple",
        NotInDelta => "NotInDelta",
        OutOfRange(_) => "OutOfRange",
        Parse { .. } => "Parse",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure { code, err }) => {
            match err.downcast_ref::<Error>() {
                Some(e) => eprintln!("error: {}: {err:#}", error_name(e)),
                None => eprintln!("error: {err:#}"),
            }
            ExitCode::from(code)
        }
    }
}

struct Ctx<'a> {
    cli: &'a Cli,
    rng: ChaCha8Rng,
}

impl Ctx<'_> {
    fn header(&self, cmd: &str) -> String {
        format!("# clgrp {cmd} seed={}\n", self.cli.seed)
    }

    fn emit(&self, text: &str) -> Result<(), Failure> {
        match &self.cli.out {
            Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
            None => print!("{text}"),
        }
        Ok(())
    }

    fn emit_json(&self, mut v: Value) -> Result<(), Failure> {
        v["seed"] = json!(self.cli.seed);
        self.emit(&format!("{}\n", serde_json::to_string_pretty(&v).expect("serialisable")))
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_form(path: &Path) -> anyhow::Result<(FieldCtx, Form)> {
    let text = read(path)?;
    let h = read_form_header(&text).with_context(|| path.display().to_string())?;
    let f = FieldCtx::new(h.p, h.k)?;
    let form = parse_form(&f, &text).with_context(|| path.display().to_string())?;
    if !form.is_nondegenerate(&f) {
        let line = text
            .lines()
            .position(|l| !l.trim().is_empty() && !l.trim().starts_with('#'))
            .map_or(1, |i| i + 1);
        return Err(anyhow::Error::new(Error::Parse {
            line,
            msg: "form is degenerate".into(),
        })
        .context(path.display().to_string()));
    }
    Ok((f, form))
}

fn load_matrix(f: &FieldCtx, path: &Path, big: bool) -> anyhow::Result<Matrix> {
    let text = read(path)?;
    Ok(parse_matrix(f, &text, big).with_context(|| path.display().to_string())?)
}

fn matrix_json(f: &FieldCtx, m: &Matrix, big: bool) -> Value {
    let rows: Vec<Vec<String>> = m.to_rows().iter().map(|r| r.iter().map(|&a| format_elt(f, a, big)).collect()).collect();
    json!(rows)
}

fn type_line(f: &FieldCtx, ty: &FormType) -> String {
    let mut s = format!("{} m={}", ty.label, ty.m);
    if let Some(disc) = ty.disc {
        write!(s, " disc={disc}").unwrap();
    }
    write!(s, " lambda={}", format_elt(f, ty.lambda, false)).unwrap();
    s
}

fn build_group(args: &GroupArgs, rng: &mut ChaCha8Rng) -> anyhow::Result<(FieldCtx, GroupSpec)> {
    if let Some(path) = &args.form {
        let (f, form) = load_form(path)?;
        if let Some(field) = &args.field {
            let (p, k) = parse_field(field)?;
            if (p, k) != (f.p(), f.k()) {
                anyhow::bail!("--field {field} does not match the form over {}", f.header());
            }
        }
        let spec = GroupSpec::from_form(&f, form, rng)?;
        if let Some(fam) = args.family {
            if fam != spec.family() {
                return Err(Error::KindMismatch).context(format!("the form defines {}, not {fam}", spec.family()));
            }
        }
        return Ok((f, spec));
    }
    let field = args.field.as_deref().context("--field is required without --form")?;
    let (p, k) = parse_field(field)?;
    let f = FieldCtx::new(p, k)?;
    let d = args.dim.context("--dim is required without --form")?;
    let spec = match (args.family, args.label) {
        (Some(fam), label) => GroupSpec::standard(&f, fam, d, label == Some(Label::OMinus))?,
        (None, Some(label)) => GroupSpec::canonical(&f, label, d)?,
        (None, None) => anyhow::bail!("one of --form, --family or --type is required"),
    };
    Ok((f, spec))
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let mut cx = Ctx {
        cli,
        rng: ChaCha8Rng::seed_from_u64(cli.seed),
    };
    match &cli.cmd {
        Cmd::Classify { form } => classify(&mut cx, form),
        Cmd::Transform { form, other: None } => transform(&mut cx, form),
        Cmd::Transform { form, other: Some(other) } => two_forms(&mut cx, "transform", form, other),
        Cmd::Isometry { first, second } => two_forms(&mut cx, "isometry", first, second),
        Cmd::Tau { form, element } => tau_cmd(&mut cx, form, element),
        Cmd::Spinor { form, element } => spinor_cmd(&mut cx, form, element),
        Cmd::Image { element, group, p1, .. } => image(&mut cx, element, group, *p1),
        Cmd::CosetRep { element, group } => coset_rep(&mut cx, element, group),
        Cmd::Present { group } => present(&mut cx, group),
        Cmd::Selfcheck { families, dmax, qset } => {
            let fams = families.clone().unwrap_or_else(|| Family::ALL.to_vec());
            let report = selfcheck::run(&fams, *dmax, qset, cli.seed)?;
            if cli.json {
                cx.emit_json(json!({ "checks": report.checks, "failures": report.failures }))?;
            } else {
                let mut out = cx.header("selfcheck");
                for line in &report.failures {
                    writeln!(out, "FAIL {line}").unwrap();
                }
                if report.failures.is_empty() {
                    writeln!(out, "all {} checks passed", report.checks).unwrap();
                } else {
                    writeln!(out, "{} of {} checks failed", report.failures.len(), report.checks).unwrap();
                }
                cx.emit(&out)?;
            }
            Ok(if report.failures.is_empty() { 0 } else { 1 })
        }
    }
}

fn classify(cx: &mut Ctx, path: &Path) -> Result<u8, Failure> {
    let (f, form) = load_form(path)?;
    let (_, ty) = transform_to_canonical(&f, &form, &mut cx.rng)?;
    if cx.cli.json {
        cx.emit_json(json!({
            "label": ty.label.to_string(),
            "d": ty.d,
            "m": ty.m,
            "disc": ty.disc,
            "lambda": format_elt(&f, ty.lambda, false),
        }))?;
    } else {
        cx.emit(&format!("{}{}\n", cx.header("classify"), type_line(&f, &ty)))?;
    }
    Ok(0)
}

fn transform(cx: &mut Ctx, path: &Path) -> Result<u8, Failure> {
    let (f, form) = load_form(path)?;
    let (x, ty) = transform_to_canonical(&f, &form, &mut cx.rng)?;
    if !ty.verifies(&f, &form, &x) {
        return Err(anyhow::anyhow!("transformation failed verification").into());
    }
    let big = form.kind() == FormKind::Unitary;
    if cx.cli.json {
        cx.emit_json(json!({ "type": type_line(&f, &ty), "matrix": matrix_json(&f, &x, big) }))?;
    } else {
        let text = format!("{}# {}\n{}", cx.header("transform"), type_line(&f, &ty), format_matrix(&f, &x, big));
        cx.emit(&text)?;
    }
    eprintln!("OK");
    Ok(0)
}

fn two_forms(cx: &mut Ctx, cmd: &str, a: &Path, b: &Path) -> Result<u8, Failure> {
    let (f, fa) = load_form(a)?;
    let (g, fb) = load_form(b)?;
    if (f.p(), f.k()) != (g.p(), g.k()) {
        return Err(anyhow::Error::new(Error::KindMismatch).context("the forms are over different fields").into());
    }
    let t = isometry(&f, &fa, &fb, &mut cx.rng)?;
    if fa.transformed(&f, &t) != fb {
        return Err(anyhow::anyhow!("isometry failed verification").into());
    }
    let big = fa.kind() == FormKind::Unitary;
    if cx.cli.json {
        cx.emit_json(json!({ "matrix": matrix_json(&f, &t, big) }))?;
    } else {
        cx.emit(&format!("{}{}", cx.header(cmd), format_matrix(&f, &t, big)))?;
    }
    eprintln!("OK");
    Ok(0)
}

fn tau_cmd(cx: &mut Ctx, form: &Path, element: &Path) -> Result<u8, Failure> {
    let (f, form) = load_form(form)?;
    let g = load_matrix(&f, element, form.kind() == FormKind::Unitary)?;
    let t = tau(&f, &g, &form)?;
    let t = format_elt(&f, t, false);
    if cx.cli.json {
        cx.emit_json(json!({ "tau": t }))?;
    } else {
        cx.emit(&format!("{}tau {t}\n", cx.header("tau")))?;
    }
    Ok(0)
}

fn spinor_cmd(cx: &mut Ctx, form: &Path, element: &Path) -> Result<u8, Failure> {
    let (f, form) = load_form(form)?;
    let g = load_matrix(&f, element, false)?;
    let w = spinor_norm(&f, &g, &form)?;
    if cx.cli.json {
        cx.emit_json(json!({ "spin": w.spin, "rank": w.rank }))?;
    } else {
        cx.emit(&format!("{}spin {}\n", cx.header("spinor"), w.spin))?;
    }
    Ok(0)
}

fn load_element(f: &FieldCtx, spec: &GroupSpec, path: &Path) -> anyhow::Result<Matrix> {
    let g = load_matrix(f, path, spec.is_unitary())?;
    if g.rows() != spec.dim() || g.cols() != spec.dim() {
        return Err(anyhow::Error::new(Error::ShapeMismatch(format!(
            "element is {}x{}, the group has dimension {}",
            g.rows(),
            g.cols(),
            spec.dim()
        ))));
    }
    Ok(g)
}

// A random element of Delta, for spot checks.
fn random_delta(f: &FieldCtx, spec: &GroupSpec, rng: &mut ChaCha8Rng) -> Matrix {
    match spec.form() {
        Some(form) => clgrp::groups::random_similarity(f, form, rng).0,
        None => Matrix::random_invertible(f, spec.dim(), false, rng),
    }
}

fn image(cx: &mut Ctx, element: &Path, group: &GroupArgs, p1: bool) -> Result<u8, Failure> {
    let (f, spec) = build_group(group, &mut cx.rng)?;
    let g = load_element(&f, &spec, element)?;
    let qt = Quotient::new(&f, spec, &mut cx.rng)?;
    let (text, value) = if p1 {
        let (word, _) = qt.image_p1(&f, &g, &mut cx.rng)?;
        // g and the word's matrix must lie in the same coset
        let back = qt.word_matrix(&f, &word).inverse(&f)?;
        if qt.spec().membership(&f, &g.dot(&f, &back)) != Level::Omega {
            return Err(anyhow::anyhow!("image failed verification").into());
        }
        let param = |x| qt.param_text(&f, x);
        let text = if word.is_empty() { String::new() } else { render_word(&word, &param) };
        (text.clone(), json!({ "presentation": "P1", "word": text }))
    } else {
        let nf = qt.image_p2(&f, &g)?;
        let h = random_delta(&f, qt.spec(), &mut cx.rng);
        let lhs = qt.p2().multiply(&nf, &qt.image_p2(&f, &h)?);
        if lhs != qt.image_p2(&f, &g.dot(&f, &h))? {
            return Err(anyhow::anyhow!("image failed the product spot check").into());
        }
        let text = qt.p2().display(&nf);
        (text.clone(), json!({ "presentation": "P2", "word": text, "normal_form": nf.0 }))
    };
    if cx.cli.json {
        cx.emit_json(value)?;
    } else {
        cx.emit(&format!("{}{text}\n", cx.header("image")))?;
    }
    Ok(0)
}

fn coset_rep(cx: &mut Ctx, element: &Path, group: &GroupArgs) -> Result<u8, Failure> {
    let (f, spec) = build_group(group, &mut cx.rng)?;
    let g = load_element(&f, &spec, element)?;
    let qt = Quotient::new(&f, spec, &mut cx.rng)?;
    let (rep, _) = qt.coset_rep(&f, &g, &mut cx.rng)?;
    if qt.spec().membership(&f, &g.dot(&f, &rep.inverse(&f)?)) != Level::Omega {
        return Err(anyhow::anyhow!("representative failed verification").into());
    }
    let big = qt.spec().is_unitary();
    if cx.cli.json {
        cx.emit_json(json!({ "matrix": matrix_json(&f, &rep, big) }))?;
    } else {
        cx.emit(&format!("{}{}", cx.header("coset-rep"), format_matrix(&f, &rep, big)))?;
    }
    Ok(0)
}

fn present(cx: &mut Ctx, group: &GroupArgs) -> Result<u8, Failure> {
    let (f, spec) = build_group(group, &mut cx.rng)?;
    let qt = Quotient::new(&f, spec, &mut cx.rng)?;
    let p1 = qt.p1(&f);
    let pc = qt.p2();
    let p2_gens: Vec<&str> = pc.generators().iter().map(|g| g.name()).collect();
    let p2_rels: Vec<String> = pc.relations().iter().map(|r| r.to_string()).collect();
    let title = format!("{} d={} {}", qt.family(), qt.spec().dim(), f.header());
    if cx.cli.json {
        let exps: Vec<Value> = pc
            .relations()
            .iter()
            .map(|r| {
                let word = |w: &[clgrp::quotient::Letter]| -> Vec<Value> {
                    w.iter().map(|l| json!([l.gen.name(), l.exp])).collect()
                };
                json!({ "lhs": word(&r.lhs), "rhs": word(&r.rhs) })
            })
            .collect();
        cx.emit_json(json!({
            "group": title,
            "p1": { "generators": p1.generators, "relations": p1.schema },
            "p2": {
                "generators": p2_gens,
                "relations": p2_rels,
                "relators": exps,
                "bounds": pc.bounds(),
                "order": pc.order(),
            },
        }))?;
    } else {
        let mut out = cx.header("present");
        writeln!(out, "# P1 for {title}").unwrap();
        writeln!(out, "generators: {}", p1.generators.join(", ")).unwrap();
        for r in &p1.schema {
            writeln!(out, "{r}").unwrap();
        }
        writeln!(out, "# P2 for {title}, order {}", pc.order()).unwrap();
        writeln!(out, "generators: {}", p2_gens.join(", ")).unwrap();
        for r in &p2_rels {
            writeln!(out, "{r}").unwrap();
        }
        cx.emit(&out)?;
    }
    Ok(0)
}
