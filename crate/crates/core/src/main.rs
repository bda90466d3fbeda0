//! Command-line surface over the library: compile/check presentations,
//! derive duals and smash products, solve vacuum projectors, and run the
//! integration pipelines, with text or JSON output.

use clap::{Parser, ValueEnum};
use hopfint::duality::{dualize, dualize_with_labels, DualPair};
use hopfint::error::Error;
use hopfint::hopf::{HopfAlgebraData, Matrix};
use hopfint::integrals::{
    invariant_integral, normalize_delta, solve_vacuum_projectors, theta_matrix, trace_integral,
    vacuum_delta, vacuum_integral_A, vacuum_integral_H, Invariance, ProjectorPair,
};
use hopfint::presentation::{
    ast_from_hopf, builtin_source, compile, emit_source, eval_element, parse, word_label,
    AlgebraAst, Compiled, PresentationAst,
};
use hopfint::scalars::{RatFunc, Rational};
use hopfint::smash::{build_smash, Factor, SmashAlgebra};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Command {
    /// Compile the input and report the axiom suites
    Check,
    /// Derive and print the dual algebra
    Dual,
    /// Print the multiplication and comultiplication slices
    Tensors,
    /// Print the reordering relations of the smash product
    Smash,
    /// Solve and print the vacuum projectors E and Ebar
    Projectors,
    /// Integrate an element (see --member, --method, --side, --elem)
    Integrate,
    /// Print the normalized right delta function
    Delta,
    /// Print the canonical source of a builtin
    Builtin,
    /// Run the q-identity and Theta non-triviality checks
    Identities,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Side {
    Right,
    Left,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Member {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "H", alias = "h")]
    H,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Trace,
    Modified,
    Vacuum,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputMode {
    Text,
    Json,
}

#[derive(Parser)]
#[command(name = "hopfint", version, about = "Exact integration on finite-dimensional Hopf algebras")]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// `.hopf` file path or `builtin:<name>[:<param>]`
    input: String,
    /// Invariance side of the integral
    #[arg(long, value_enum, default_value = "right")]
    side: Side,
    /// Which factor the element lives in
    #[arg(long, value_enum, default_value = "A")]
    member: Member,
    /// Element expression in the target algebra's generators
    #[arg(long)]
    elem: Option<String>,
    /// Integration route
    #[arg(long, value_enum, default_value = "vacuum")]
    method: Method,
    #[arg(long, value_enum, default_value = "text")]
    output: OutputMode,
    /// Also evaluate reported scalars at q = <rational>
    #[arg(long = "q-eval")]
    q_eval: Option<String>,
}

enum CliError {
    Usage(String),
    Domain(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::SyntaxError { .. }
            | Error::DuplicateGenerator(_)
            | Error::UnknownSymbol(_)
            | Error::UnknownBuiltin(_)
            | Error::BadParam(_) => CliError::Usage(e.to_string()),
            other => CliError::Domain(other),
        }
    }
}

fn error_name(e: &Error) -> &'static str {
    match e {
        Error::DivisionByZero => "DivisionByZero",
        Error::PoleAtPoint => "PoleAtPoint",
        Error::ShapeMismatch(_) => "ShapeMismatch",
        Error::AxiomViolation { .. } => "AxiomViolation",
        Error::AlgebraMismatch(_) => "AlgebraMismatch",
        Error::SingularAntipode => "SingularAntipode",
        Error::AssociativityFailure(_) => "AssociativityFailure",
        Error::DegenerateImage(_) => "DegenerateImage",
        Error::DegenerateSolutionSpace(_) => "DegenerateSolutionSpace",
        Error::NilpotentCandidate => "NilpotentCandidate",
        Error::AllZeroTheta => "AllZeroTheta",
        Error::IdentityFailure(_) => "IdentityFailure",
        Error::ConsistencyFailure(_) => "ConsistencyFailure",
        Error::ClosedFormMismatch(_) => "ClosedFormMismatch",
        Error::SyntaxError { .. } => "SyntaxError",
        Error::DuplicateGenerator(_) => "DuplicateGenerator",
        Error::UnknownSymbol(_) => "UnknownSymbol",
        Error::NonTerminatingRewrite { .. } => "NonTerminatingRewrite",
        Error::BasisEscape(_) => "BasisEscape",
        Error::NotPresentable(_) => "NotPresentable",
        Error::UnknownBuiltin(_) => "UnknownBuiltin",
        Error::BadParam(_) => "BadParam",
    }
}

fn load(input: &str) -> Result<PresentationAst, CliError> {
    if let Some(rest) = input.strip_prefix("builtin:") {
        let (name, param) = match rest.split_once(':') {
            Some((n, p)) => {
                let v: usize = p
                    .parse()
                    .map_err(|_| CliError::Usage(format!("bad builtin parameter `{p}`")))?;
                (n, Some(v))
            }
            None => (rest, None),
        };
        Ok(hopfint::presentation::builtin(name, param)?)
    } else {
        let text = std::fs::read_to_string(input)
            .map_err(|e| CliError::Usage(format!("cannot read `{input}`: {e}")))?;
        Ok(parse(&text)?)
    }
}

/// Fresh single-letter names for the dual generators of a presentation
/// that has no explicit dual block.
fn fresh_names(gens: &[String]) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    let mut pool = ('a'..='z').filter(|c| *c != 'q');
    for k in 0..gens.len() {
        let name = loop {
            match pool.next() {
                Some(c) => {
                    let s = c.to_string();
                    if !gens.contains(&s) && !out.contains(&s) {
                        break s;
                    }
                }
                None => break format!("u{k}"),
            }
        };
        out.push(name);
    }
    out
}

/// Everything the integration commands need: the dual pair with the
/// function algebra on the A side, the smash product, and (when known)
/// presentations of the two factors for element parsing.
struct Work {
    pair: DualPair,
    smash: SmashAlgebra,
    a_ast: Option<AlgebraAst>,
    h_ast: Option<AlgebraAst>,
}

fn workspace(ast: &PresentationAst, c: &Compiled) -> Result<Work, CliError> {
    if let Some(s) = &c.smash {
        let pair = c.pair.clone().ok_or_else(|| {
            CliError::Domain(Error::ConsistencyFailure("smash without a pairing".into()))
        })?;
        return Ok(Work {
            pair,
            smash: s.clone(),
            a_ast: Some(ast.algebra.clone()),
            h_ast: ast.dual.clone(),
        });
    }
    if c.dual.is_some() {
        let pair = c.pair.clone().ok_or_else(|| {
            CliError::Usage("the dual block needs a pairing or smash relations".into())
        })?;
        let smash = build_smash(&pair)?;
        return Ok(Work {
            pair,
            smash,
            a_ast: Some(ast.algebra.clone()),
            h_ast: ast.dual.clone(),
        });
    }
    // No companion declared: the input is the point algebra H and its
    // function algebra is derived by dualization, with basis labels
    // mirroring the primary monomials under fresh generator names.
    let names = fresh_names(&ast.algebra.generators);
    let labels: Vec<String> = ast
        .algebra
        .basis
        .iter()
        .map(|w| word_label(w, &names))
        .collect();
    let dual_id = format!("{}_dual", c.hopf.id);
    let mirrored = dualize_with_labels(&c.hopf, dual_id, labels)?;
    let (pair, a_ast) = match ast_from_hopf(&mirrored.functions) {
        Ok(a) => (mirrored, Some(a)),
        // the mirrored labels are not a monomial basis of the dual;
        // fall back to atomic f-labels
        Err(_) => (dualize(&c.hopf)?, None),
    };
    let smash = build_smash(&pair)?;
    Ok(Work {
        pair,
        smash,
        a_ast,
        h_ast: Some(ast.algebra.clone()),
    })
}

fn resolve_elem(
    alg: &HopfAlgebraData,
    ast: Option<&AlgebraAst>,
    text: &str,
) -> Result<hopfint::hopf::Element, CliError> {
    let t = text.trim();
    if t == "1" {
        return Ok(alg.unit_element());
    }
    if let Some(i) = alg.labels.iter().position(|l| l == t) {
        return Ok(alg.basis_element(i));
    }
    match ast {
        Some(a) => Ok(alg.element(eval_element(a, t)?)?),
        None => Err(CliError::Usage(format!(
            "cannot resolve element `{t}` in `{}`: use a basis label ({})",
            alg.id,
            alg.labels.join(", ")
        ))),
    }
}

fn parse_q_point(cli: &Cli) -> Result<Option<Rational>, CliError> {
    match &cli.q_eval {
        None => Ok(None),
        Some(s) => s
            .parse::<Rational>()
            .map(Some)
            .map_err(|_| CliError::Usage(format!("bad q-eval point `{s}`"))),
    }
}

fn show_scalar(v: &RatFunc, q0: &Option<Rational>) -> Result<String, CliError> {
    match q0 {
        None => Ok(format!("{v}")),
        Some(r) => {
            let at = v.eval(r).map_err(CliError::Domain)?;
            Ok(format!("{v} [= {at} at q = {r}]"))
        }
    }
}

fn push_slices(out: &mut Vec<String>, name: &str, slices: &dyn Fn(usize) -> Matrix, h: &HopfAlgebraData) {
    for i in 0..h.dim {
        out.push(format!("{name}_{i} ({}):", h.labels[i]));
        for row in slices(i) {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            out.push(format!("  [{}]", cells.join(", ")));
        }
    }
}

fn axiom_lines(out: &mut Vec<String>, what: &str, report: hopfint::hopf::AxiomReport) {
    for c in &report.checks {
        out.push(format!(
            "{what} {}: {}",
            c.name,
            if c.pass { "pass" } else { "FAIL" }
        ));
    }
}

fn projectors_for(w: &Work) -> Result<ProjectorPair, CliError> {
    Ok(solve_vacuum_projectors(&w.smash)?)
}

fn run(cli: &Cli, results: &mut Vec<String>, warnings: &mut Vec<String>) -> Result<(), CliError> {
    let q0 = parse_q_point(cli)?;
    if cli.command == Command::Builtin {
        let rest = cli.input.strip_prefix("builtin:").ok_or_else(|| {
            CliError::Usage("the builtin command takes a builtin:<name> input".into())
        })?;
        let (name, param) = match rest.split_once(':') {
            Some((n, p)) => (
                n,
                Some(p.parse::<usize>().map_err(|_| {
                    CliError::Usage(format!("bad builtin parameter `{p}`"))
                })?),
            ),
            None => (rest, None),
        };
        for line in builtin_source(name, param)?.lines() {
            results.push(line.to_string());
        }
        return Ok(());
    }

    let ast = load(&cli.input)?;
    let compiled = compile(&ast)?;
    warnings.extend(compiled.warnings.iter().cloned());

    match cli.command {
        Command::Builtin => unreachable!("handled above"),
        Command::Check => {
            match &compiled.braided {
                Some(b) => axiom_lines(
                    results,
                    "braided",
                    hopfint::braided::check_braided_axioms(b),
                ),
                None => axiom_lines(results, "hopf", compiled.hopf.check_axioms()),
            }
            if let Some(d) = &compiled.dual {
                match &compiled.dual_braided {
                    Some(b) => axiom_lines(
                        results,
                        "dual braided",
                        hopfint::braided::check_braided_axioms(b),
                    ),
                    None => axiom_lines(results, "dual", d.check_axioms()),
                }
            }
            if compiled.smash.is_some() {
                results.push("smash associativity: pass".into());
            }
            results.push(format!("{}: all checks pass", compiled.hopf.id));
        }
        Command::Tensors => {
            let h = &compiled.hopf;
            results.push(format!("{} (dim {})", h.id, h.dim));
            results.push("M slices (e_i e_j = (M_i)_j^k e_k):".into());
            push_slices(results, "M", &|i| h.mult[i].clone(), h);
            results.push("W slices (Delta(e_i) = (W_k)_i^j e_k (*) e_j):".into());
            push_slices(
                results,
                "W",
                &|k| {
                    (0..h.dim)
                        .map(|i| (0..h.dim).map(|j| h.comult[i][k][j].clone()).collect())
                        .collect()
                },
                h,
            );
            if h.id == "dqs" {
                results.push(
                    "note: W_2 row x*y, column x is -1; the antipode law \
                     m(S (*) id)Delta(x*y) = 0 holds with -1 and fails with 0"
                        .into(),
                );
            }
        }
        Command::Dual => {
            let w = workspace(&ast, &compiled)?;
            let d = &w.pair.functions;
            results.push(format!("dual algebra {} (dim {})", d.id, d.dim));
            let d_ast = match (&w.a_ast, &ast.dual) {
                (Some(a), _) => Some(a.clone()),
                (None, Some(a)) => Some(a.clone()),
                _ => None,
            };
            match d_ast {
                Some(a) => {
                    for line in emit_source(&PresentationAst {
                        algebra: a,
                        dual: None,
                        pairing: Vec::new(),
                        cross: Vec::new(),
                    })
                    .lines()
                    {
                        results.push(line.to_string());
                    }
                }
                None => {
                    push_slices(results, "M", &|i| d.mult[i].clone(), d);
                }
            }
        }
        Command::Smash => {
            let w = workspace(&ast, &compiled)?;
            let s = &w.smash;
            results.push(format!("smash algebra {} (dim {})", s.id, s.a.dim * s.h.dim));
            let pairs: Vec<(usize, usize)> = match (&w.h_ast, &w.a_ast) {
                (Some(ha), Some(aa)) => {
                    let mut v = Vec::new();
                    for hg in 0..ha.generators.len() {
                        let j = ha.basis.iter().position(|x| x[..] == [hg]).unwrap_or(0);
                        for ag in 0..aa.generators.len() {
                            let i = aa.basis.iter().position(|x| x[..] == [ag]).unwrap_or(0);
                            v.push((j, i));
                        }
                    }
                    v
                }
                _ => {
                    let mut v = Vec::new();
                    for j in 1..s.h.dim {
                        for i in 1..s.a.dim {
                            v.push((j, i));
                        }
                    }
                    v
                }
            };
            for (j, i) in pairs {
                let prod = s.mul(
                    &s.embed(Factor::H, &s.h.basis_element(j))?,
                    &s.embed(Factor::A, &s.a.basis_element(i))?,
                )?;
                results.push(format!(
                    "{}*{} = {}",
                    s.h.labels[j],
                    s.a.labels[i],
                    s.render(&prod)
                ));
            }
        }
        Command::Projectors => {
            let w = workspace(&ast, &compiled)?;
            let proj = projectors_for(&w)?;
            results.push(format!("E = {}", w.smash.render(&proj.e)));
            results.push(format!("Ebar = {}", w.smash.render(&proj.ebar)));
        }
        Command::Delta => {
            let w = workspace(&ast, &compiled)?;
            let delta = match cli.method {
                Method::Vacuum => {
                    let proj = projectors_for(&w)?;
                    vacuum_delta(&w.smash, &proj)?
                }
                _ => normalize_delta(&w.pair)?,
            };
            results.push(format!(
                "delta = {}",
                w.pair.functions.render_element(&delta)
            ));
        }
        Command::Integrate => {
            let w = workspace(&ast, &compiled)?;
            let elem_text = cli
                .elem
                .as_deref()
                .ok_or_else(|| CliError::Usage("integrate needs --elem".into()))?;
            match cli.member {
                Member::A => {
                    let a = resolve_elem(&w.pair.functions, w.a_ast.as_ref(), elem_text)?;
                    let r = match (cli.method, cli.side) {
                        (Method::Trace, Side::Right) => {
                            let v = trace_integral(&w.pair, Factor::A, &a)?;
                            results.push(format!("value = {}", show_scalar(&v, &q0)?));
                            return Ok(());
                        }
                        (Method::Trace, Side::Left) => {
                            return Err(CliError::Usage(
                                "the trace route reports the right integral only".into(),
                            ))
                        }
                        (Method::Modified, side) => invariant_integral(
                            &w.pair,
                            &a,
                            match side {
                                Side::Right => Invariance::Right,
                                Side::Left => Invariance::Left,
                            },
                        )?,
                        (Method::Vacuum, Side::Right) => {
                            let proj = projectors_for(&w)?;
                            vacuum_integral_A(&w.smash, &proj, &a)?
                        }
                        (Method::Vacuum, Side::Left) => {
                            if !w.smash.unbraided {
                                return Err(CliError::Usage(
                                    "left integrals use --method modified on an unbraided pair"
                                        .into(),
                                ));
                            }
                            invariant_integral(&w.pair, &a, Invariance::Left)?
                        }
                    };
                    results.push(format!("value = {}", show_scalar(&r.value, &q0)?));
                    results.push(format!(
                        "delta = {}",
                        w.pair.functions.render_element(&r.delta)
                    ));
                    results.push(format!(
                        "realization = {}",
                        w.smash.render(&r.realization)
                    ));
                    results.push(format!("convention: {}", r.convention));
                }
                Member::H => {
                    let z = resolve_elem(&w.pair.points, w.h_ast.as_ref(), elem_text)?;
                    match cli.method {
                        Method::Trace => {
                            let v = trace_integral(&w.pair, Factor::H, &z)?;
                            results.push(format!("value = {}", show_scalar(&v, &q0)?));
                        }
                        Method::Modified => {
                            return Err(CliError::Usage(
                                "the modified trace lives on the A side".into(),
                            ))
                        }
                        Method::Vacuum => {
                            let proj = projectors_for(&w)?;
                            let r = vacuum_integral_H(&w.smash, &proj, &z)?;
                            results.push(format!("value = {}", show_scalar(&r.value, &q0)?));
                            results.push(format!(
                                "delta = {}",
                                w.pair.functions.render_element(&r.delta)
                            ));
                            results.push(format!(
                                "realization = {}",
                                w.smash.render(&r.realization)
                            ));
                            results.push(format!("convention: {}", r.convention));
                        }
                    }
                }
            }
        }
        Command::Identities => {
            for a in 1..=6u32 {
                let v = hopfint::braided::q_vanishing_sum(a)?;
                if !v.is_zero() {
                    return Err(CliError::Domain(Error::IdentityFailure(a)));
                }
                results.push(format!("q-vanishing-sum A={a}: pass"));
            }
            let w = workspace(&ast, &compiled)?;
            let theta = theta_matrix(&w.pair)?;
            let nz = theta.iter().flatten().filter(|c| !c.is_zero()).count();
            results.push(format!(
                "theta: nonzero ({} nonzero entries of {}x{})",
                nz,
                theta.len(),
                theta[0].len()
            ));
        }
    }
    Ok(())
}

fn command_name(c: Command) -> &'static str {
    match c {
        Command::Check => "check",
        Command::Dual => "dual",
        Command::Tensors => "tensors",
        Command::Smash => "smash",
        Command::Projectors => "projectors",
        Command::Integrate => "integrate",
        Command::Delta => "delta",
        Command::Builtin => "builtin",
        Command::Identities => "identities",
    }
}

fn main() {
    let cli = Cli::parse();
    let mut results: Vec<String> = Vec::new();
    let mut warnings: Vec<String> = Vec::new();
    let mut errors: Vec<String> = Vec::new();

    let code = match run(&cli, &mut results, &mut warnings) {
        Ok(()) => 0,
        Err(CliError::Domain(e)) => {
            errors.push(format!("{}: {e}", error_name(&e)));
            1
        }
        Err(CliError::Usage(m)) => {
            errors.push(m);
            2
        }
    };

    // write through a lock and ignore I/O failures (e.g. closed pipes)
    use std::io::Write;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match cli.output {
        OutputMode::Text => {
            for r in &results {
                let _ = writeln!(out, "{r}");
            }
            for w in &warnings {
                eprintln!("warning: {w}");
            }
            for e in &errors {
                eprintln!("error: {e}");
            }
        }
        OutputMode::Json => {
            let doc = serde_json::json!({
                "command": command_name(cli.command),
                "input": cli.input,
                "results": results,
                "warnings": warnings,
                "errors": errors,
            });
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&doc).expect("serializable")
            );
        }
    }
    std::process::exit(code);
}
