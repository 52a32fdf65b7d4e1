//! Command dispatch for the `qhyper` binary.
//!
//! [`run`] takes the full argument list and returns what would be printed
//! plus the exit code, so tests can drive it without spawning a process.
//! Exit codes: 0 for a definite verdict of either polarity, 2 when the input
//! falls outside the supported cases, 1 for usage and parse errors.

mod report;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qhyper::ellring::{derivexpr_leading_polar, heat_identity_with, heat_telescoper, EllRing, DEFAULT_JMAX};
use qhyper::integrability::{check_single, solve_single, Ansatz, Derivation, DiffSystem};
use qhyper::orbit::{orbit_reduce, q_dispersion, OrbitError};
use qhyper::prolong::JetRing;
use qhyper::rank1::{classify, theta_certificate, verify_solution_window, VerdictKind};
use qhyper::telescope::{ell_telescope_mu, ell_telescope_mu_half_form_holds, rational_telescope, Obstruction};
use qhyper::theta::{verify_functional_equation, verify_heat_equation};
use qhyper::{parse_matrix, parse_qrat, parse_ratx, Matrix, PolyX, QRat, RatX};

pub use report::{Report, REPORT_VERSION};

const DIFF_ALG: &str = "satisfies a nontrivial partial_2-relation over C_E(x, l_q)";

#[derive(Debug, Parser)]
#[command(name = "qhyper", version, about = "Exact decisions for y(qx) = A(x) y(x) over Q(q)(x)")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DerivArg {
    DeltaX,
    Partial2,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Decide whether y(qx) = a y is differentially algebraic.
    Classify {
        #[arg(allow_hyphen_values = true)]
        a: String,
        /// Window used to re-verify the theta certificate.
        #[arg(long, default_value_t = 8)]
        window: i64,
    },
    /// Solve sigma(f) - f = g over Q(q)(x).
    Telescope {
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// Shifts n with gcd(p(x), q(q^n x)) nonconstant.
    Dispersion {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        q: String,
    },
    /// Write a = atilde f(qx)/f(x) with atilde reduced.
    OrbitReduce {
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    /// Search B with sigma(B) = A B A^-1 + d(A) A^-1; rows split by ';', entries by ','.
    Integrable {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
        /// Numerator degree bound; the default ansatz chooses one otherwise.
        #[arg(long)]
        degbound: Option<usize>,
        #[arg(long, value_enum, default_value_t = DerivArg::DeltaX)]
        derivation: DerivArg,
        /// Largest power of l in the ansatz.
        #[arg(long, default_value_t = 0)]
        ell_degree: u32,
    },
    /// Check the theta functional and heat equations on [-N, N].
    ThetaVerify {
        #[arg(long, default_value_t = 8)]
        window: i64,
    },
    /// Check the heat identity in the l-ring and the polar expansion up to order J.
    EllVerify {
        #[arg(long, default_value_t = DEFAULT_JMAX)]
        jmax: u32,
        /// Residue l_i of the polar term.
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        li: i64,
        /// mu in Q(q) whose log-derivative delta_q(mu)/mu is telescoped in l.
        #[arg(long, default_value = "q", allow_hyphen_values = true)]
        mu: String,
    },
    /// Check that the jet sigma-action commutes with the derivations.
    ProlongCheck {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
        /// Highest jet order checked.
        #[arg(long, default_value_t = 2)]
        order: u32,
        /// Number of commuting derivations q^k delta_x.
        #[arg(long, default_value_t = 1)]
        derivations: usize,
    },
}

/// What a run printed and how it exited.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// A finished report and whether its verdict is definite.
struct Done {
    report: Report,
    supported: bool,
}

impl From<Report> for Done {
    fn from(report: Report) -> Self {
        Done {
            report,
            supported: true,
        }
    }
}

/// Parses `args` (program name first) and runs the subcommand.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code: 0,
                },
                _ => Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code: 1,
                },
            };
        }
    };
    finish(dispatch(cli.cmd), cli.format)
}

fn finish(res: Result<Done, String>, format: Format) -> Outcome {
    match res {
        Ok(done) => Outcome {
            stdout: match format {
                Format::Json => done.report.to_json(),
                Format::Text => done.report.to_text(),
            },
            stderr: String::new(),
            code: if done.supported { 0 } else { 2 },
        },
        Err(msg) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
            code: 1,
        },
    }
}

fn dispatch(cmd: Cmd) -> Result<Done, String> {
    match cmd {
        Cmd::Classify { a, window } => cmd_classify(&a, window),
        Cmd::Telescope { g } => cmd_telescope(&g).map(Done::from),
        Cmd::Dispersion { p, q } => cmd_dispersion(&p, &q).map(Done::from),
        Cmd::OrbitReduce { a } => cmd_orbit_reduce(&a),
        Cmd::Integrable {
            matrix,
            degbound,
            derivation,
            ell_degree,
        } => cmd_integrable(&matrix, degbound, derivation, ell_degree).map(Done::from),
        Cmd::ThetaVerify { window } => cmd_theta(window).map(Done::from),
        Cmd::EllVerify { jmax, li, mu } => cmd_ell(jmax, li, &mu).map(Done::from),
        Cmd::ProlongCheck {
            matrix,
            order,
            derivations,
        } => cmd_prolong(&matrix, order, derivations).map(Done::from),
    }
}

fn parse(text: &str) -> Result<RatX, String> {
    parse_ratx(text).map_err(|e| format!("cannot parse {text:?}: {e}"))
}

fn parse_poly(text: &str) -> Result<PolyX, String> {
    let v = parse(text)?;
    if !v.is_polynomial() {
        return Err(format!("{text:?} is not a polynomial in x"));
    }
    Ok(v.numer().clone())
}

fn show<T: ToString>(v: &T) -> Value {
    Value::String(v.to_string())
}

fn factor_list(factors: &[(PolyX, i64)]) -> Value {
    factors
        .iter()
        .map(|(p, m)| json!({ "factor": p.to_string(), "multiplicity": m }))
        .collect()
}

fn matrix_rows<T: qhyper::Ring + ToString>(m: &Matrix<T>) -> Value {
    m.to_rows()
        .iter()
        .map(|row| row.iter().map(show).collect::<Value>())
        .collect()
}

fn cmd_classify(text: &str, window: i64) -> Result<Done, String> {
    let a = parse(text)?;
    let v = classify(&a).map_err(|e| e.to_string())?;
    let mut rep = Report::new(
        "classify",
        "rank-one criterion: y(qx) = a y is differentially algebraic iff a = mu x^r g(qx)/g(x)",
    )
    .input("a", show(&a));
    rep.set("verdict", show(&v.kind));
    rep.set("mu", show(&v.mu));
    rep.set("r", v.r);
    rep.set("delta_constant", v.delta_constant);
    rep.set("q_exponent", v.q_exponent);
    if let Some(red) = &v.reduction {
        if !red.verify() {
            return Err("internal: orbit reduction failed to re-verify".into());
        }
    }
    match v.kind {
        VerdictKind::Unsupported => {
            rep.statement = "the orbit normalization of a is outside the supported cases; no verdict".into();
            rep.warn(format!("UNSUPPORTED: {}", v.note.as_deref().unwrap_or("orbit case")));
            return Ok(Done {
                report: rep,
                supported: false,
            });
        }
        VerdictKind::DifferentiallyAlgebraic => {
            rep.set("g", show(&v.g));
            rep.statement = format!(
                "a = mu x^r g(qx)/g(x) with mu = {}, r = {}, g = {}, so a nonzero solution of y(qx) = a y {DIFF_ALG}",
                v.mu, v.r, v.g
            );
            if v.q_exponent.is_some() {
                let cert = theta_certificate(&v.mu, v.r, &v.g).map_err(|e| e.to_string())?;
                let ok = verify_solution_window(&a, &cert, window).map_err(|e| e.to_string())?;
                if !ok {
                    return Err(format!("internal: certificate {cert} failed to re-verify"));
                }
                rep.set("certificate", show(&cert));
                rep.set("certificate_full", cert.full_form());
                rep.set("certificate_window", window);
            } else {
                rep.warn("mu is not in q^Z; the solution carries a q-character and no theta certificate is emitted");
            }
        }
        VerdictKind::Hypertranscendent => {
            rep.set("obstruction", factor_list(&v.obstruction));
            rep.statement = format!(
                "a is not of the form mu x^r g(qx)/g(x); no nonzero solution of y(qx) = a y {DIFF_ALG}"
            );
        }
    }
    Ok(rep.into())
}

fn cmd_telescope(text: &str) -> Result<Report, String> {
    let g = parse(text)?;
    let res = rational_telescope(&g);
    let mut rep = Report::new("telescope", "telescoping criterion: g = sigma(f) - f with f in Q(q)(x)").input("g", show(&g));
    rep.set("found", res.found());
    match (&res.f, &res.obstruction) {
        (Some(f), _) => {
            if &f.sigma_q() - f != g {
                return Err(format!("internal: telescoper {f} failed to re-verify"));
            }
            rep.set("f", show(f));
            rep.set("obstruction", Value::Null);
            rep.statement = format!("g = sigma(f) - f with f = {f}");
        }
        (None, Some(ob)) => {
            let (kind, detail) = match ob {
                Obstruction::ConstantTerm(c) => ("constant-term", c.to_string()),
                Obstruction::PolarOrbit { denominator } => ("polar-orbit", denominator.to_string()),
            };
            rep.set("f", Value::Null);
            rep.set("obstruction", kind);
            rep.set("obstruction_detail", detail);
            rep.statement = format!("g is not of the form sigma(f) - f over Q(q)(x): {ob}");
        }
        (None, None) => return Err("internal: telescoper returned neither f nor an obstruction".into()),
    }
    Ok(rep)
}

fn cmd_dispersion(p_text: &str, q_text: &str) -> Result<Report, String> {
    let (p, q) = (parse_poly(p_text)?, parse_poly(q_text)?);
    let d = q_dispersion(&p, &q).map_err(|e| e.to_string())?;
    let mut rep = Report::new("dispersion", "q-dispersion: n with gcd(p(x), q(q^n x)) nonconstant")
        .input("p", show(&p))
        .input("q", show(&q));
    rep.set("shifts", d.shifts.iter().copied().collect::<Vec<i64>>());
    rep.set("max", d.max());
    rep.statement = if d.is_empty() {
        "no root of p is a q-power multiple of a root of q".into()
    } else {
        format!("gcd(p(x), q(q^n x)) is nonconstant exactly for n in {:?}", d.shifts)
    };
    Ok(rep)
}

fn cmd_orbit_reduce(text: &str) -> Result<Done, String> {
    let a = parse(text)?;
    let mut rep = Report::new("orbit-reduce", "orbit normalization: a = atilde f(qx)/f(x), one factor per q-orbit")
        .input("a", show(&a));
    let red = match orbit_reduce(&a) {
        Ok(red) => red,
        Err(OrbitError::Unsupported(msg)) => {
            rep.statement = "the orbit normalization of a is outside the supported cases".into();
            rep.warn(format!("UNSUPPORTED: {msg}"));
            return Ok(Done {
                report: rep,
                supported: false,
            });
        }
        Err(e) => return Err(e.to_string()),
    };
    if !red.verify() {
        return Err("internal: orbit reduction failed to re-verify".into());
    }
    rep.set("atilde", show(&red.atilde));
    rep.set("f", show(&red.f));
    rep.set("mu", show(&red.mu));
    rep.set("r", red.r);
    rep.set("factors", factor_list(&red.factors));
    rep.set("monomial", red.is_monomial());
    rep.statement = format!("a = ({}) f(qx)/f(x) with f = {}", red.atilde, red.f);
    Ok(rep.into())
}

fn cmd_integrable(text: &str, degbound: Option<usize>, d: DerivArg, ell_degree: u32) -> Result<Report, String> {
    let a = parse_matrix(text).map_err(|e| format!("cannot parse {text:?}: {e}"))?;
    let sys = DiffSystem::new(a.clone()).map_err(|e| e.to_string())?;
    let deriv = match d {
        DerivArg::DeltaX => Derivation::DeltaX,
        DerivArg::Partial2 => Derivation::Partial2,
    };
    let mut ansatz = Ansatz::default_for(&sys).with_ell_degree(ell_degree);
    if let Some(db) = degbound {
        ansatz.degbound = db;
    }
    let found = solve_single(&sys, deriv, &ansatz).map_err(|e| e.to_string())?;
    let mut rep = Report::new("integrable", "integrability equation: sigma(B) = A B A^-1 + d(A) A^-1")
        .input("matrix", matrix_rows(&a));
    rep.set("derivation", show(&deriv));
    rep.set("ansatz", show(&ansatz));
    rep.set("found", found.is_some());
    match found {
        Some(cert) => {
            if !check_single(&sys, &cert.b, deriv).map_err(|e| e.to_string())? {
                return Err("internal: certificate B failed to re-verify".into());
            }
            rep.set("b", matrix_rows(&cert.b));
            rep.statement = format!("B solves sigma(B) = A B A^-1 + {deriv}(A) A^-1");
        }
        None => {
            rep.set("b", Value::Null);
            rep.statement = "no B within the ansatz solves the integrability equation".into();
            rep.warn("a negative answer is relative to the ansatz, not a proof of non-integrability");
        }
    }
    Ok(rep)
}

fn cmd_theta(window: i64) -> Result<Report, String> {
    let fe = verify_functional_equation(window).map_err(|e| e.to_string())?;
    let he = verify_heat_equation(window).map_err(|e| e.to_string())?;
    let mut rep = Report::new(
        "theta-verify",
        "theta_q(qx) = qx theta_q(x) and 2 delta_q theta_q = -delta_x^2 theta_q + delta_x theta_q",
    )
    .input("window", window);
    rep.set("functional_eq", fe);
    rep.set("heat_eq", he);
    rep.statement = format!(
        "on the coefficient window [-{window}, {window}] the functional equation {} and the heat equation {}",
        holds(fe),
        holds(he)
    );
    rep.warn(
        "convention: theta_q(x) = sum_n q^(-n(n-1)/2) x^n; the variant with q^(+n(n-1)/2) fails theta_q(qx) = qx theta_q(x)",
    );
    Ok(rep)
}

fn holds(b: bool) -> &'static str {
    if b {
        "holds"
    } else {
        "fails"
    }
}

fn cmd_ell(jmax: u32, li: i64, mu_text: &str) -> Result<Report, String> {
    let mu = parse_qrat(mu_text).map_err(|e| format!("cannot parse {mu_text:?}: {e}"))?;
    let tele = ell_telescope_mu(&mu).map_err(|e| e.to_string())?;
    if !tele.verified {
        return Err(format!("internal: telescoper {} failed to re-verify", tele.u));
    }
    let half = ell_telescope_mu_half_form_holds(&mu).map_err(|e| e.to_string())?;
    let ring = EllRing::default();
    let heat = heat_identity_with(&ring, &heat_telescoper()).map_err(|e| e.to_string())?;
    let mut rep = Report::new(
        "ell-verify",
        "heat identity partial_2(qx)/(qx) = l + 1 = sigma(u) - u, the l-telescoper of delta_q(mu)/mu, and the leading polar term of partial_2^j",
    )
    .input("jmax", jmax)
    .input("li", li)
    .input("mu", show(&mu));
    let mut orders = Vec::new();
    let mut all = true;
    for j in 0..=jmax {
        let r = derivexpr_leading_polar(j, li, jmax).map_err(|e| e.to_string())?;
        all &= r.matches();
        orders.push(json!({ "j": j, "matches": r.matches(), "leading": r.leading.to_string() }));
    }
    rep.set("heat_identity", heat.holds());
    rep.set("telescoper", show(&heat.u));
    rep.set("sigma_u_minus_u", show(&heat.sigma_u_minus_u));
    rep.set("polar_orders", orders);
    rep.set("polar_leading_ok", all);
    rep.set("mu_telescoper", show(&tele.u));
    rep.set("mu_half_form_holds", half);
    if !half {
        rep.warn("sigma(c l) - c l = c, so delta_q(mu)/mu telescopes with c = delta_q(mu)/mu; the form with an extra factor 1/2 fails");
    }
    rep.statement = format!(
        "the heat identity {} with u = {}; the leading polar coefficient l_i (-1)^j j! (x l - a')^(j+1) {} for j <= {jmax}",
        holds(heat.holds()),
        heat.u,
        holds(all)
    );
    Ok(rep)
}

fn cmd_prolong(text: &str, order: u32, derivations: usize) -> Result<Report, String> {
    if derivations == 0 {
        return Err("--derivations must be at least 1".into());
    }
    let a = parse_matrix(text).map_err(|e| format!("cannot parse {text:?}: {e}"))?;
    let scales = (0..derivations as i64).map(QRat::q_pow).collect();
    let jr = JetRing::with_derivations(a.clone(), order.max(1), scales).map_err(|e| e.to_string())?;
    let mut rep = Report::new(
        "prolong-check",
        "jet sigma-action sigma(d^alpha X) = d^alpha(A X) commutes with every derivation",
    )
    .input("matrix", matrix_rows(&a))
    .input("order", order)
    .input("derivations", derivations);
    let mut checks = Vec::new();
    let mut all = true;
    for k in 0..=order {
        let ok = jr.commutation_check(k).map_err(|e| e.to_string())?;
        all &= ok;
        checks.push(json!({ "k": k, "holds": ok }));
    }
    rep.set("checks", checks);
    rep.set("all_hold", all);
    rep.statement = format!("sigma commutes with the derivations on jets of order <= {order}: {}", holds(all));
    Ok(rep)
}
