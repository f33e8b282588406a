use std::collections::BTreeSet;

use diffq::blocks::{contributing_points, lhs_series, report, rhs_term, sum_terms, LatticeTerm};
use diffq::fock::{character, FockConfig};
use diffq::partitions::Partition;
use diffq::relations::ModeModule;
use diffq::scalars::{parse_scalar, rat_int, Scalar};
use diffq::twisted::{
    decomposition_check, fingerprint, relation_report, Fermion, Fingerprint, Graded, LatticeBoson,
    Restriction, StrangeBoson, TwistedParams,
};
use diffq::walgebra::{verify_twisted_example, verify_virasoro_bosonizations, verify_walgebra, WReport};
use diffq::whittaker::{residuals, whittaker_single, whittaker_solve, WhittakerVector};
use diffq::Error;
use rayon::prelude::*;

use crate::report::{Row, RunConfig};

pub enum CmdError {
    /// bad configuration: exit 2
    Usage(String),
    /// the computation itself broke down: exit 1
    Failed(String),
}

impl From<Error> for CmdError {
    fn from(e: Error) -> Self {
        match e {
            Error::Invalid(_) | Error::Parse(_) | Error::NotRepresentable(..) | Error::Incommensurate(..) => {
                CmdError::Usage(e.to_string())
            }
            _ => CmdError::Failed(e.to_string()),
        }
    }
}

pub type Rows = Result<(Vec<Row>, Vec<String>), CmdError>;

fn positive(what: &str, x: usize) -> Result<(), CmdError> {
    if x == 0 {
        Err(CmdError::Usage(format!("--{} must be positive", what)))
    } else {
        Ok(())
    }
}

fn join(xs: &[u64]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn tuple_label(t: &[Partition]) -> String {
    t.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("⊗")
}

pub fn verify_identity(cfg: &RunConfig) -> Rows {
    let (n, order) = (cfg.n, cfg.order.unwrap());
    positive("n", n)?;
    let points = contributing_points(n, order);
    let terms: Vec<Option<LatticeTerm>> = points.par_iter().map(|l| rhs_term(l, order)).collect::<Result<_, _>>()?;
    let terms: Vec<LatticeTerm> = terms.into_iter().flatten().collect();
    let rhs = sum_terms(n, order, &terms)?;
    let lhs = lhs_series(n, order)?;
    let rep = report(n, order, &lhs, &rhs, &terms);
    let rows = rep.coefficients.iter().map(|(e, a, b)| Row::compare(format!("coefficient of z^{}", e), a, b)).collect();
    let notes = vec![format!(
        "(q^(1/n) z^(1/n); q^(1/n), q^(1/n))_inf against the normalized lattice sum over {} points",
        rep.lattice.len()
    )];
    Ok((rows, notes))
}

pub fn default_params(n: usize) -> Vec<String> {
    (1..=n).map(|i| if i == 1 { "t".to_string() } else { format!("t^{}", i) }).collect()
}

fn components(w: &WhittakerVector) -> Vec<(usize, String, Scalar)> {
    let mut out = Vec::new();
    for (d, v) in w.components.iter().enumerate() {
        for (t, c) in v.iter() {
            out.push((d, tuple_label(t), c.clone()));
        }
    }
    out
}

pub fn whittaker(cfg: &RunConfig) -> Rows {
    let (n, degree, half) = (cfg.n, cfg.degree.unwrap(), cfg.half.unwrap());
    positive("n", n)?;
    if cfg.params.len() != n {
        return Err(CmdError::Usage(format!("--u needs {} parameters, got {}", n, cfg.params.len())));
    }
    if half == 0 {
        return Err(CmdError::Usage("--half must be nonzero".into()));
    }
    let params: Vec<Scalar> = cfg.params.iter().map(|s| parse_scalar(s)).collect::<Result<_, _>>()?;
    if params.iter().any(|u| u.is_zero()) {
        return Err(CmdError::Usage("parameters must be nonzero".into()));
    }
    let fc = FockConfig::new(params, half, degree);
    let (solved, closed) =
        rayon::join(|| whittaker_solve(&fc, degree), || if n == 1 { Some(whittaker_single(&fc, degree)) } else { None });
    let w = match solved {
        Ok(w) => w,
        Err(e @ Error::Solve { .. }) => return Ok((vec![Row::holds("unique solution of the Whittaker conditions", Some(e.to_string()))], vec![])),
        Err(e) => return Err(e.into()),
    };
    let mut rows = vec![Row::holds("unique solution of the Whittaker conditions", None)];
    let recheck = residuals(&w).map(|k| format!("{} conditions", k));
    rows.push(Row::holds(
        format!("conditions recheck ({})", recheck.as_deref().unwrap_or("failed")),
        recheck.as_ref().err().map(|e| e.to_string()),
    ));
    match closed {
        Some(c) => {
            // the closed form for a single Fock module
            for d in 0..=degree {
                let keys: BTreeSet<_> = w.components[d].keys().chain(c.components[d].keys()).cloned().collect();
                for t in keys {
                    rows.push(Row::compare(
                        format!("degree {} {}", d, tuple_label(&t)),
                        w.components[d].coeff(&t),
                        c.components[d].coeff(&t),
                    ));
                }
            }
        }
        None => {
            for (d, label, x) in components(&w) {
                let s = x.to_string();
                rows.push(Row { name: format!("degree {} {}", d, label), lhs: s.clone(), rhs: s, pass: true });
            }
        }
    }
    Ok((rows, vec![]))
}

fn report_row(r: &WReport) -> Row {
    Row::holds(format!("{} ({} checked)", r.name, r.checked), r.failure.clone())
}

pub fn verify_w(cfg: &RunConfig) -> Rows {
    let (n, ntw, modes, degree, u_root) = (cfg.n, cfg.ntw, cfg.modes.unwrap(), cfg.degree.unwrap(), cfg.u_root.unwrap());
    let deg = rat_int(degree as i64);
    let (w, bos) = rayon::join(
        || verify_walgebra(n, ntw, u_root, modes, &deg),
        || match (n, ntw) {
            (2, 0) => verify_virasoro_bosonizations(modes, &deg),
            (2, 1) => vec![verify_twisted_example(modes, &deg)],
            _ => Vec::new(),
        },
    );
    let mut rows: Vec<Row> = w?.iter().map(report_row).collect();
    rows.extend(bos.iter().map(report_row));
    Ok((rows, vec![]))
}

fn fingerprint_string(f: &Fingerprint) -> String {
    let list = |v: &[Scalar]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
    let ef: Vec<String> = f.ef.iter().map(|(j, v)| format!("{}: [{}]", j, list(v))).collect();
    format!(
        "ch [{}]; HH [{}]; EF {{{}}}; E-power [{}]",
        join(&f.character),
        list(&f.hh),
        ef.join("; "),
        list(&f.e_power)
    )
}

struct Realized {
    name: &'static str,
    central: (i64, i64),
    checked: usize,
    failure: Option<String>,
    character: Vec<u64>,
    fingerprint: Fingerprint,
}

fn realize<M: Graded + ModeModule>(name: &'static str, m: &M, modes: i64, degree: usize) -> Realized {
    let r = relation_report(name, m, modes, degree);
    Realized {
        name,
        central: r.central,
        checked: r.checked,
        failure: r.failure,
        character: m.character(degree),
        fingerprint: fingerprint(m, modes, degree),
    }
}

pub fn twisted_check(cfg: &RunConfig) -> Rows {
    let (n, ntw, modes, degree) = (cfg.n, cfg.ntw, cfg.modes.unwrap(), cfg.degree.unwrap());
    let p = TwistedParams::new(n, ntw, cfg.u_root.unwrap())?;
    let lattice = ntw.rem_euclid(n as i64) != 0;
    let names: Vec<&'static str> =
        if lattice { vec!["restriction", "boson", "fermion", "strange"] } else { vec!["restriction", "strange"] };
    let done: Vec<Realized> = names
        .par_iter()
        .map(|&name| -> Result<Realized, Error> {
            Ok(match name {
                "restriction" => realize(name, &Restriction::new(p), modes, degree),
                "boson" => realize(name, &LatticeBoson::new(p)?, modes, degree),
                "fermion" => realize(name, &Fermion::new(p)?, modes, degree),
                _ => realize(name, &StrangeBoson::new(p), modes, degree),
            })
        })
        .collect::<Result<_, _>>()?;
    let expect = Partition::counts(degree);
    let mut rows = Vec::new();
    for r in &done {
        rows.push(Row::holds(
            format!("{}: relations, modes |j| <= {}, degree <= {} ({} checked)", r.name, modes, degree, r.checked),
            r.failure.clone(),
        ));
        rows.push(Row::compare(
            format!("{}: central charges (c, c')", r.name),
            format!("({}, {})", r.central.0, r.central.1),
            format!("({}, {})", n, ntw),
        ));
        rows.push(Row::compare(format!("{}: character", r.name), join(&r.character), join(&expect)));
    }
    let base = fingerprint_string(&done[0].fingerprint);
    for r in &done[1..] {
        rows.push(Row::compare(
            format!("{}: trace fingerprint against the restriction", r.name),
            fingerprint_string(&r.fingerprint),
            &base,
        ));
    }
    Ok((rows, vec![]))
}

pub fn characters(cfg: &RunConfig) -> Rows {
    let (n, ntw, degree) = (cfg.n, cfg.ntw, cfg.degree.unwrap());
    positive("n", n)?;
    let ch = if n == 1 { character(1, degree) } else { Restriction::new(TwistedParams::new(n, ntw, 1)?).character(degree) };
    let expect = Partition::counts(degree);
    let rows = (0..=degree).map(|k| Row::compare(format!("dimension at degree {}", k), ch[k], expect[k])).collect();
    Ok((rows, vec![join(&ch)]))
}

pub fn decompose(cfg: &RunConfig) -> Rows {
    let (n, ntw, degree) = (cfg.n, cfg.ntw, cfg.degree.unwrap());
    positive("n", n)?;
    let r = decomposition_check(n, ntw, degree);
    let mut rows: Vec<Row> = (0..=degree)
        .map(|k| Row::compare(format!("degree {}: sum over l of the product of class characters", k), r.lattice_sum[k], r.ambient[k]))
        .collect();
    rows.push(Row::holds(
        format!("every class character is a twisted Fock character (d = {})", r.d),
        if r.factors_are_twisted_fock { None } else { Some("some factor is not q^h / prod (1 - q^(kd))".into()) },
    ));
    let notes = r.summands.iter().map(|(l, h)| format!("summand l = {:?}, lowest degree {}", l, h)).collect();
    Ok((rows, notes))
}
