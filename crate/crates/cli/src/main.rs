use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hopflift::arith::{kaplansky_threshold, lemma41, parse_polynomial};
use hopflift::cohomology::ComplexContext;
use hopflift::corpus::{field_name, generate, Variant};
use hopflift::hopf::analysis::irreducible_dimensions;
use hopflift::hopf::{analyze, drinfeld_double, verify_hopf, HopfMorphism, HopfPresentation, RMatrix};
use hopflift::io::{
    elem_to_json, map_from_json, map_to_json, parse_json, presentation_from_value, presentation_to_json, presentation_to_value,
    ring_to_json, tensor2_from_json, tensor2_to_json,
};
use hopflift::lifting::{lift_morphism_in, lift_rmatrix_to, reconcile_lifts, Lifter, Strategy};
use hopflift::Error;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "hopflift", version, about = "Hopf algebras over finite fields and their lifts to Galois rings")]
struct Cli {
    /// Emit reports as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Log per-level transcripts (repeat for more detail).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Hopf axioms of a presentation.
    Validate { input: Option<PathBuf> },
    /// Semisimplicity, (co)commutativity, antipode order, grouplikes.
    Analyze { input: Option<PathBuf> },
    /// Dimensions of the bialgebra cohomology of the identity map, or of a map into TARGET.
    Cohomology {
        input: Option<PathBuf>,
        #[arg(long, requires = "map")]
        target: Option<PathBuf>,
        #[arg(long, requires = "target")]
        map: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
    },
    /// Lift a semisimple cosemisimple presentation to GR(p^n, m).
    Lift {
        input: Option<PathBuf>,
        #[arg(long)]
        precision: u32,
        #[arg(long, default_value = "canonical")]
        strategy: Strategy,
    },
    /// Hopf isomorphism between two lifts of the same presentation.
    Reconcile { first: PathBuf, second: PathBuf },
    /// Lift a Hopf map given mod p between two lifted presentations.
    LiftMap {
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        map: PathBuf,
    },
    /// Lift an R-matrix given mod p to a lifted presentation.
    LiftRmatrix {
        input: Option<PathBuf>,
        #[arg(long)]
        r: PathBuf,
    },
    /// Drinfeld double, with its canonical R-matrix written to --r-out.
    Double {
        input: Option<PathBuf>,
        #[arg(long)]
        r_out: Option<PathBuf>,
    },
    /// Dual presentation.
    Dual { input: Option<PathBuf> },
    /// Built-in example: group algebra of C2..C8, C2xC2, S3, D4 or Q8.
    Gen {
        group: String,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, conflicts_with = "double")]
        dual: bool,
        #[arg(long)]
        double: bool,
    },
    /// Nonvanishing of P at primitive r-th roots of unity in characteristic p.
    Lemma41 {
        /// Coefficients "a0,a1,...".
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        p: u64,
    },
    /// d^(φ(d)/2) for dimension d.
    Threshold {
        #[arg(long)]
        dim: u64,
    },
    /// Run the acceptance suite (all criteria, or the listed ones).
    Accept { criteria: Vec<u32> },
}

/// Exit 1: a predicate or algorithm failed on valid input. Exit 2: bad input or IO.
enum Failure {
    Predicate(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SchemaViolation { .. }
            | Error::InvalidRing(_)
            | Error::NotPrime(_)
            | Error::ReducibleModulus { .. }
            | Error::DescriptorMismatch(_)
            | Error::DifferentBaseOrPrecision
            | Error::ArityMismatch(_)
            | Error::NotAGroup(_)
            | Error::OrderTooSmall(_)
            | Error::DimensionTooSmall(_) => Failure::Usage(e.to_string()),
            _ => Failure::Predicate(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn read_text(path: Option<&Path>) -> Result<String, Failure> {
    let mut text = String::new();
    match path {
        Some(p) if p != Path::new("-") => {
            text = std::fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
        }
        _ => {
            std::io::stdin().read_to_string(&mut text).map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
        }
    }
    Ok(text)
}

fn read_value(path: Option<&Path>) -> Result<Value, Failure> {
    Ok(parse_json(&read_text(path)?)?)
}

fn read_presentation(path: Option<&Path>) -> Result<HopfPresentation, Failure> {
    Ok(presentation_from_value(&read_value(path)?, "")?)
}

fn write_file(path: &Path, text: &str) -> Outcome {
    std::fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn validate(cli: &Cli, input: Option<&Path>) -> Outcome {
    let h = read_presentation(input)?;
    let report = verify_hopf(&h);
    if cli.json {
        let checks: Vec<Value> = report
            .checks
            .iter()
            .map(|c| json!({"axiom": c.axiom.name(), "residuals": c.residual_count}))
            .collect();
        print_json(&json!({"verified": report.verified(), "checks": checks}));
    } else {
        for c in &report.checks {
            println!("{:<28} {}", c.axiom.name(), if c.passed() { "ok".to_string() } else { format!("{} residuals", c.residual_count) });
        }
    }
    if report.verified() {
        Ok(())
    } else {
        let failed: Vec<&str> = report.failures().iter().map(|a| a.name()).collect();
        Err(Failure::Predicate(format!("not a Hopf algebra: {}", failed.join(", "))))
    }
}

fn analyze_cmd(cli: &Cli, input: Option<&Path>) -> Outcome {
    let h = read_presentation(input)?;
    let rep = analyze(&h)?;
    let ring = *h.ring();
    let irreps = if rep.semisimple { irreducible_dimensions(&h).ok() } else { None };
    let vec_json = |v: &Vec<hopflift::ring::Elem>| Value::Array(v.iter().map(|&e| elem_to_json(&ring, e)).collect());
    if cli.json {
        print_json(&json!({
            "ring": ring_to_json(&ring),
            "dim": rep.dim,
            "semisimple": rep.semisimple,
            "cosemisimple": rep.cosemisimple,
            "commutative": rep.commutative,
            "cocommutative": rep.cocommutative,
            "antipode_order": rep.antipode_order,
            "antipode_squared_order": rep.antipode_sq_order,
            "trace_s2": elem_to_json(&ring, rep.trace_s2),
            "dim_in_field": elem_to_json(&ring, rep.dim_in_k),
            "grouplikes": rep.grouplikes.iter().map(vec_json).collect::<Vec<_>>(),
            "central_grouplikes": rep.central_grouplikes.iter().map(vec_json).collect::<Vec<_>>(),
            "irreducible_dimensions": irreps,
        }));
    } else {
        println!("dimension {} over {}", rep.dim, field_name(&ring));
        println!("semisimple       {}", yes(rep.semisimple));
        println!("cosemisimple     {}", yes(rep.cosemisimple));
        println!("commutative      {}", yes(rep.commutative));
        println!("cocommutative    {}", yes(rep.cocommutative));
        println!("antipode order   {} (S^2 has order {})", rep.antipode_order, rep.antipode_sq_order);
        println!("tr(S^2)          {} (dim = {})", ring.format(rep.trace_s2), ring.format(rep.dim_in_k));
        println!("grouplikes       {} ({} central)", rep.grouplikes.len(), rep.central_grouplikes.len());
        if let Some(d) = &irreps {
            println!("irreducibles     {d:?}");
        }
    }
    match (rep.semisimple, rep.cosemisimple) {
        (true, true) => Ok(()),
        (false, true) => Err(Failure::Predicate("not semisimple".into())),
        (true, false) => Err(Failure::Predicate("not cosemisimple".into())),
        (false, false) => Err(Failure::Predicate("not semisimple and not cosemisimple".into())),
    }
}

fn cohomology_cmd(cli: &Cli, input: Option<&Path>, target: Option<&Path>, map: Option<&Path>, max_degree: usize) -> Outcome {
    let a = read_presentation(input)?;
    let ctx = match (target, map) {
        (Some(t), Some(m)) => {
            let b = read_presentation(Some(t))?;
            let f = map_from_json(a.ring(), a.dim(), b.dim(), &read_value(Some(m))?, "")?;
            ComplexContext::new(&HopfMorphism::new(a, b, f)?.verified()?)?
        }
        _ => ComplexContext::identity(&a)?,
    };
    let mut rows = Vec::new();
    for n in 0..=max_degree {
        let total = ctx.cohomology_dim(n).map_err(Failure::from)?;
        let invariants = match ctx.invariants_complex_dim(n) {
            Ok(d) => Some(d),
            Err(Error::BudgetExceeded(msg)) => {
                log::info!("invariants complex in degree {n}: {msg}");
                None
            }
            Err(e) => return Err(e.into()),
        };
        rows.push((n, total, invariants));
    }
    if cli.json {
        let v: Vec<Value> = rows.iter().map(|(n, t, i)| json!({"degree": n, "total": t, "invariants": i})).collect();
        print_json(&json!({ "degrees": v }));
    } else {
        for (n, t, i) in &rows {
            let inv = i.map_or("over budget".to_string(), |d| d.to_string());
            println!("H^{n} = {t}  (invariants complex: {inv})");
        }
    }
    if rows.iter().any(|(_, t, i)| i.is_some_and(|d| d != *t)) {
        return Err(Failure::Predicate("the two cohomology computations disagree".into()));
    }
    Ok(())
}

fn lift_cmd(cli: &Cli, input: Option<&Path>, precision: u32, strategy: Strategy) -> Outcome {
    if precision == 0 {
        return Err(Failure::Usage("precision must be at least 1".into()));
    }
    let base = read_presentation(input)?;
    let state = Lifter::new(&base)?.lift(precision, strategy)?;
    let text = presentation_to_json(state.current());
    if cli.json {
        let transcript = serde_json::to_value(state.transcript()).expect("serializable");
        print_json(&json!({"strategy": strategy.to_string(), "transcript": transcript, "presentation": presentation_to_value(state.current())}));
    } else {
        print!("{text}");
    }
    Ok(())
}

fn morphism_output(cli: &Cli, phi: &HopfMorphism, steps: Option<Value>) {
    let map = map_to_json(phi.map());
    if cli.json {
        print_json(&json!({"ring": ring_to_json(phi.source().ring()), "map": map, "steps": steps}));
    } else {
        println!("{map}");
    }
}

fn reconcile_cmd(cli: &Cli, first: &Path, second: &Path) -> Outcome {
    let a = read_presentation(Some(first))?;
    let b = read_presentation(Some(second))?;
    let eta = reconcile_lifts(&a, &b)?;
    morphism_output(cli, &eta, None);
    Ok(())
}

fn lift_map_cmd(cli: &Cli, source: &Path, target: &Path, map: &Path) -> Outcome {
    let a = read_presentation(Some(source))?;
    let b = read_presentation(Some(target))?;
    let field = a.ring().residue_field();
    let (a0, b0) = (a.reduce_to(&field)?, b.reduce_to(&field)?);
    let f = map_from_json(&field, a.dim(), b.dim(), &read_value(Some(map))?, "")?;
    let phi = HopfMorphism::new(a0, b0, f)?.verified()?;
    let lifted = lift_morphism_in(&ComplexContext::new(&phi)?, &a, &b)?;
    let steps = serde_json::to_value(&lifted.steps).expect("serializable");
    morphism_output(cli, &lifted.morphism, Some(steps));
    Ok(())
}

fn lift_rmatrix_cmd(cli: &Cli, input: Option<&Path>, r: &Path) -> Outcome {
    let lifted = read_presentation(input)?;
    let field = lifted.ring().residue_field();
    let base = lifted.reduce_to(&field)?;
    let r0 = tensor2_from_json(&field, base.dim(), &read_value(Some(r))?, "")?;
    let r0 = RMatrix::certify(base, r0)?;
    let rbar = lift_rmatrix_to(&r0, &lifted)?;
    let rv = tensor2_to_json(rbar.r());
    if cli.json {
        print_json(&json!({"ring": ring_to_json(lifted.ring()), "r": rv, "triangular": rbar.is_triangular()}));
    } else {
        println!("{rv}");
    }
    Ok(())
}

fn double_cmd(input: Option<&Path>, r_out: Option<&Path>) -> Outcome {
    let h = read_presentation(input)?;
    let (d, r) = drinfeld_double(&h)?;
    if let Some(path) = r_out {
        write_file(path, &format!("{}\n", tensor2_to_json(r.r())))?;
    }
    print!("{}", presentation_to_json(&d));
    Ok(())
}

fn gen_cmd(group: &str, p: u64, m: usize, dual: bool, double: bool) -> Outcome {
    let variant = match (dual, double) {
        (true, _) => Variant::Dual,
        (_, true) => Variant::Double,
        _ => Variant::GroupAlgebra,
    };
    let ex = generate(group, p, m, variant)?;
    print!("{}", presentation_to_json(&ex.hopf));
    Ok(())
}

fn lemma41_cmd(cli: &Cli, poly: &str, r: u64, p: u64) -> Outcome {
    let poly = parse_polynomial(poly).map_err(Failure::Usage)?;
    let report = lemma41(&poly, r, p)?;
    if cli.json {
        print_json(&serde_json::to_value(&report).expect("serializable"));
    } else {
        println!("P = {poly}, r = {r}, p = {p}");
        println!("N = {}, D = {}, bound D^(φ(r)/2) = {} with φ(r) = {}", report.n, report.d, report.bound, report.phi_r);
        println!("p > bound {}, p ∤ r {}, p | N {}", yes(report.p_exceeds_bound), yes(report.p_coprime_to_r), yes(report.p_divides_n));
        println!("gcd(P, Φ_r) mod p trivial: {}", yes(report.gcd_with_cyclotomic_trivial));
        if report.conclusion {
            println!("P(ζ) ≠ 0 for every primitive root of unity ζ of order {r} in characteristic {p}");
        } else if !report.hypotheses_hold() {
            println!("hypotheses fail: no conclusion");
        } else {
            println!("p divides N: no conclusion");
        }
    }
    if report.hypotheses_hold() && !report.conclusion {
        return Err(Failure::Predicate("p divides N".into()));
    }
    if !report.hypotheses_hold() {
        return Err(Failure::Predicate("hypotheses do not hold".into()));
    }
    Ok(())
}

fn threshold_cmd(cli: &Cli, dim: u64) -> Outcome {
    let (t, phi) = kaplansky_threshold(dim)?;
    if cli.json {
        print_json(&json!({"dim": dim, "phi": phi, "threshold": t.to_string()}));
    } else {
        println!("{t}");
    }
    Ok(())
}

fn accept_cmd(cli: &Cli, criteria: &[u32]) -> Outcome {
    let outcomes = hopflift::acceptance::run(criteria);
    if cli.json {
        let v: Vec<Value> = outcomes
            .iter()
            .map(|o| json!({"id": o.id, "title": o.title, "passed": o.passed, "detail": o.detail, "seconds": o.elapsed.as_secs_f64()}))
            .collect();
        print_json(&Value::Array(v));
    } else {
        for o in &outcomes {
            println!("{o}");
        }
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    if failed > 0 {
        return Err(Failure::Predicate(format!("{failed} of {} criteria failed", outcomes.len())));
    }
    Ok(())
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Validate { input } => validate(cli, input.as_deref()),
        Command::Analyze { input } => analyze_cmd(cli, input.as_deref()),
        Command::Cohomology { input, target, map, max_degree } => {
            cohomology_cmd(cli, input.as_deref(), target.as_deref(), map.as_deref(), *max_degree)
        }
        Command::Lift { input, precision, strategy } => lift_cmd(cli, input.as_deref(), *precision, *strategy),
        Command::Reconcile { first, second } => reconcile_cmd(cli, first, second),
        Command::LiftMap { source, target, map } => lift_map_cmd(cli, source, target, map),
        Command::LiftRmatrix { input, r } => lift_rmatrix_cmd(cli, input.as_deref(), r),
        Command::Double { input, r_out } => double_cmd(input.as_deref(), r_out.as_deref()),
        Command::Dual { input } => {
            print!("{}", presentation_to_json(&read_presentation(input.as_deref())?.dual()));
            Ok(())
        }
        Command::Gen { group, p, m, dual, double } => gen_cmd(group, *p, *m, *dual, *double),
        Command::Lemma41 { poly, r, p } => lemma41_cmd(cli, poly, *r, *p),
        Command::Threshold { dim } => threshold_cmd(cli, *dim),
        Command::Accept { criteria } => accept_cmd(cli, criteria),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new().filter_level(level).parse_default_env().init();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Predicate(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
