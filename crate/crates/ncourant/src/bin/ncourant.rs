use clap::{Parser, Subcommand, ValueEnum};
use ncourant::bisymplectic::{canonical_omega, check_bisymplectic, contract_pv, BiSympl};
use ncourant::courant::{build_standard, check_a2_dlr, check_courant, check_dder_dlr, check_master, weight_one_generators, CourantData};
use ncourant::forms::{dr_d, dr_normalize, univ_d};
use ncourant::frontend::{parse_elem, parse_expr, parse_quiver, Value};
use ncourant::polyvec::{check_double_poisson, sn_bracket};
use ncourant::{CheckReport, Elem, Error, GradedQuiver};
use serde_json::json;
use std::io::Write;
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser)]
#[command(name = "ncourant", version, about = "Exact algebra on graded quivers: forms, double brackets, Courant checks")]
struct Cli {
    /// Quiver description file.
    #[arg(long, global = true)]
    quiver: Option<String>,
    /// Largest total weight of the monomials used by product-input checks.
    #[arg(long, global = true, default_value_t = 3)]
    weight_bound: i64,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse an expression and print its canonical form.
    Parse { expr: String },
    /// Multiply two expressions.
    Mul { x: String, y: String },
    /// Universal differential; with --dr, the differential of the cyclic class.
    D {
        expr: String,
        #[arg(long)]
        dr: bool,
    },
    /// Double bracket: the ω-bracket for paths, Schouten–Nijenhuis for polyvectors.
    Bracket { x: String, y: String },
    /// Reduced contraction of a form by a degree-1 polyvector.
    Contract { polyvector: String, form: String },
    /// Hamiltonian polyvector of an element.
    Hamiltonian { expr: String },
    /// Pairing of two weight-1 arrows.
    Pairing { a: String, b: String },
    /// Build the standard data over a weight-0 quiver and verify it.
    Standard { file: String },
    /// Twist the standard data by a 3-form over the weight-0 arrows.
    Twist {
        file: String,
        #[arg(long)]
        form: String,
    },
    /// Run an identity suite.
    Check {
        suite: Suite,
        /// Twist the standard data by this 3-form first.
        #[arg(long)]
        form: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Courant,
    Dlr,
    Master,
    Bisymplectic,
    Poisson,
}

enum Outcome {
    Done,
    Failed,
}

fn load(path: &str) -> Result<GradedQuiver, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{path}: {e}")))?;
    parse_quiver(&text)
}

fn quiver(cli: &Cli) -> Result<Arc<GradedQuiver>, Error> {
    let path = cli.quiver.as_deref().ok_or_else(|| Error::InvalidInput("this command needs --quiver <file>".into()))?;
    Ok(Arc::new(load(path)?))
}

/// Standard data from either a weight-0 quiver or an already standard one.
fn standard_from(q: &GradedQuiver) -> Result<CourantData, Error> {
    if q.is_standard() {
        return build_standard(&q.restrict(&q.base_arrows()));
    }
    if q.doubling_weight().is_none() && q.arrows().iter().all(|a| a.weight == 0) {
        return build_standard(q);
    }
    Err(Error::InvalidContext("expected a weight-0 quiver or a standard one".into()))
}

fn bisympl_from(q: &Arc<GradedQuiver>) -> Result<BiSympl, Error> {
    if q.is_doubled() {
        canonical_omega(q)
    } else {
        Ok(standard_from(q)?.bisympl().clone())
    }
}

fn arrow_index(q: &GradedQuiver, name: &str) -> Result<usize, Error> {
    q.find(name).ok_or_else(|| Error::UnknownArrow(name.to_string()))
}

fn describe(q: &GradedQuiver) -> String {
    let vs: Vec<String> = q.vertices().iter().map(|v| v.to_string()).collect();
    let arrows: Vec<String> = q.arrows().iter().map(|a| format!("{}: {} -> {} weight {}", a.name, a.tail, a.head, a.weight)).collect();
    format!("vertices: {}\narrows: {}", vs.join(" "), arrows.join("; "))
}

/// Writes to stdout; a closed pipe is not an error.
fn out(text: &str) {
    let mut h = std::io::stdout().lock();
    let _ = h.write_all(text.as_bytes()).and_then(|_| h.flush());
}

fn out_json(j: &serde_json::Value) {
    out(&format!("{}\n", serde_json::to_string_pretty(j).expect("json")));
}

fn emit_value(cli: &Cli, v: &Value) {
    if cli.json {
        out_json(&json!({ "kind": v.kind_name(), "schema": 1, "value": v.render() }));
    } else {
        out(&format!("{v}\n"));
    }
}

fn emit_report(cli: &Cli, rep: &CheckReport) -> Outcome {
    if cli.json {
        out(&format!("{}\n", rep.to_json()));
    } else {
        out(&rep.to_string());
    }
    if rep.passed {
        Outcome::Done
    } else {
        Outcome::Failed
    }
}

fn elem(v: Value) -> Result<Elem, Error> {
    match v {
        Value::Elem(e) => Ok(e),
        Value::Tensor(_) => Err(Error::InvalidInput("expected an element, found a tensor".into())),
    }
}

fn twisted(cd: CourantData, form: Option<&str>) -> Result<CourantData, Error> {
    match form {
        None => Ok(cd),
        Some(f) => {
            let phi = parse_elem(f, cd.quiver())?;
            cd.twist(&phi)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.cmd {
        Cmd::Parse { expr } => {
            let q = quiver(cli)?;
            emit_value(cli, &parse_expr(expr, &q)?);
        }
        Cmd::Mul { x, y } => {
            let q = quiver(cli)?;
            let p = parse_expr(x, &q)?.mul(&parse_expr(y, &q)?)?;
            emit_value(cli, &p);
        }
        Cmd::D { expr, dr } => {
            let q = quiver(cli)?;
            let x = elem(parse_expr(expr, &q)?)?;
            if x.kind() == ncourant::algebra::Kind::PolyVec {
                return Err(Error::InvalidInput("d applies to paths and forms".into()));
            }
            let out = if *dr { dr_d(&dr_normalize(&x)).rep().clone() } else { univ_d(&x) };
            emit_value(cli, &Value::Elem(out));
        }
        Cmd::Bracket { x, y } => {
            let q = quiver(cli)?;
            let a = elem(parse_expr(x, &q)?)?;
            let b = elem(parse_expr(y, &q)?)?;
            use ncourant::algebra::Kind;
            let t = match (a.kind(), b.kind()) {
                (Kind::PolyVec, _) | (_, Kind::PolyVec) => sn_bracket(&a, &b)?,
                (Kind::Alg, Kind::Alg) => bisympl_from(&q)?.engine().bracket(&a, &b),
                _ => return Err(Error::InvalidInput("brackets take paths or polyvectors".into())),
            };
            emit_value(cli, &Value::Tensor(t));
        }
        Cmd::Contract { polyvector, form } => {
            let q = quiver(cli)?;
            let pv = elem(parse_expr(polyvector, &q)?)?;
            let w = elem(parse_expr(form, &q)?)?;
            emit_value(cli, &Value::Elem(contract_pv(&pv, &w)?));
        }
        Cmd::Hamiltonian { expr } => {
            let q = quiver(cli)?;
            let bs = bisympl_from(&q)?;
            let x = elem(parse_expr(expr, &q)?)?;
            if x.kind() != ncourant::algebra::Kind::Alg {
                return Err(Error::InvalidInput("the Hamiltonian vector field needs a path combination".into()));
            }
            emit_value(cli, &Value::Elem(bs.hamiltonian(&x)));
        }
        Cmd::Pairing { a, b } => {
            let q = quiver(cli)?;
            let bs = bisympl_from(&q)?;
            let t = bs.pairing(arrow_index(&q, a)?, arrow_index(&q, b)?)?;
            emit_value(cli, &Value::Tensor(t));
        }
        Cmd::Standard { file } => {
            let cd = standard_from(&load(file)?)?;
            let rep = cd.standard_checks();
            if cli.json {
                let j = json!({
                    "hamiltonian": cd.hamiltonian().render(),
                    "q_vector": cd.q_vector().render(),
                    "report": rep,
                    "schema": 1,
                });
                out_json(&j);
                return Ok(if rep.passed { Outcome::Done } else { Outcome::Failed });
            }
            out(&format!("{}\nS = {}\nQ = {}\n", describe(cd.quiver()), cd.hamiltonian(), cd.q_vector()));
            return Ok(emit_report(cli, &rep));
        }
        Cmd::Twist { file, form } => {
            let cd = twisted(standard_from(&load(file)?)?, Some(form))?;
            let v = cd.twist_verdict().expect("twisted");
            let rep = check_master(&cd);
            if cli.json {
                let j = json!({
                    "closed": v.closed,
                    "hamiltonian": cd.hamiltonian().render(),
                    "master": v.master,
                    "report": rep,
                    "schema": 1,
                });
                out_json(&j);
                return Ok(if rep.passed { Outcome::Done } else { Outcome::Failed });
            }
            out(&format!("S = {}\nclosed: {}\nmaster: {}\n", cd.hamiltonian(), v.closed, v.master));
            return Ok(emit_report(cli, &rep));
        }
        Cmd::Check { suite, form } => {
            let q = quiver(cli)?;
            let bound = cli.weight_bound;
            let rep = match suite {
                Suite::Courant => {
                    let cd = twisted(standard_from(&q)?, form.as_deref())?;
                    check_courant(&cd, &weight_one_generators(cd.quiver()), bound)
                }
                Suite::Master => check_master(&twisted(standard_from(&q)?, form.as_deref())?),
                Suite::Dlr => {
                    let cd = standard_from(&q)?;
                    let a2 = check_a2_dlr(cd.bisympl(), bound, 1);
                    let dd = check_dder_dlr(cd.quiver(), bound, 1);
                    CheckReport::merge("dlr", vec![a2, dd])
                }
                Suite::Bisymplectic => check_bisymplectic(&bisympl_from(&q)?, bound),
                Suite::Poisson => check_double_poisson(bisympl_from(&q)?.bracket(), bound),
            };
            return Ok(emit_report(cli, &rep));
        }
    }
    Ok(Outcome::Done)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
