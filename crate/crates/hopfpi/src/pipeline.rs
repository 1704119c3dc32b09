//! The verification and computation pipelines behind the command-line tool.
//!
//! [`verify`] runs the axiom layers in dependency order (coalgebra, Hopf,
//! crossing, R-matrix, twist) and refuses every layer above the first one
//! that fails. [`invariants`], [`trace`] and [`full_report`] require a
//! verified instance and produce a [`Document`] holding checks and computed
//! values in exact scalar syntax.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::Serialize;

use crate::comodules::comodules_report;
use crate::convolution::check_convolution_antipode;
use crate::crossed::{
    check_coop, check_crossing_invariants, check_drinfeld, check_ell, check_mirror_drinfeld,
    check_phi_hat, check_r_consequences, check_ribbon_g, coop_qt, drinfeld_u, ell_element,
    g_element, g_from_r, h_element, mirror, phi_hat, verify_crossing, verify_r, verify_twist,
    Crossing, Decorated, DrinfeldElements,
};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::format::Instance;
use crate::hopf::{
    check_antipode_properties, check_grouplike, verify_all, verify_coalgebra, verify_hopf,
    HopfPiData,
};
use crate::integrals::{distinguished, integral_space, integrals_report, Distinguished, Side};
use crate::report::{Check, Failure, Kind, Report, Status};
use crate::traces::{canonical_trace, CanonicalTrace};

/// The axiom layers, in dependency order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    Coalgebra,
    Hopf,
    Crossing,
    RMatrix,
    Twist,
}

impl Stage {
    pub const ALL: [Stage; 5] = [
        Stage::Coalgebra,
        Stage::Hopf,
        Stage::Crossing,
        Stage::RMatrix,
        Stage::Twist,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stage::Coalgebra => "coalgebra",
            Stage::Hopf => "hopf",
            Stage::Crossing => "crossing",
            Stage::RMatrix => "rmatrix",
            Stage::Twist => "twist",
        }
    }
}

/// The result of [`verify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    /// The checks of every layer that ran, in dependency order.
    pub report: Report,
    /// The first layer with a failing check.
    pub failed_stage: Option<Stage>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.failed_stage.is_none()
    }
}

fn stage_report(inst: &Instance, stage: Stage) -> Option<Report> {
    let h = &inst.hopf;
    let phi = || -> std::result::Result<Crossing, Report> {
        match &inst.crossing {
            Some(c) => Ok(c.clone()),
            None => Crossing::trivial(h).map_err(|e| {
                let mut r = Report::new();
                r.push(Check::from_failures(
                    "crossing.trivial",
                    "the identity maps form a crossing",
                    Kind::Axiom,
                    1,
                    vec![Failure::described(&[], "φ", e.to_string(), "identity maps")],
                ));
                r
            }),
        }
    };
    match stage {
        Stage::Coalgebra => Some(verify_coalgebra(h.coalgebra())),
        Stage::Hopf => {
            let mut r = verify_hopf(h);
            if r.passed() {
                r.extend(check_antipode_properties(h));
            }
            Some(r)
        }
        Stage::Crossing => {
            if inst.crossing.is_none() && inst.rmatrix.is_none() {
                return None;
            }
            Some(match phi() {
                Ok(c) => verify_crossing(h, &c),
                Err(r) => r,
            })
        }
        Stage::RMatrix => {
            let r = inst.rmatrix.as_ref()?;
            Some(match phi() {
                Ok(c) => verify_r(h, &c, r, inst.rmatrix_inverse.as_ref()),
                Err(rep) => rep,
            })
        }
        Stage::Twist => {
            let (t, r) = (inst.twist.as_ref()?, inst.rmatrix.as_ref()?);
            Some(match phi() {
                Ok(c) => verify_twist(h, &c, r, t),
                Err(rep) => rep,
            })
        }
    }
}

/// Runs every applicable layer in dependency order. Layers above the first
/// failing one are refused.
pub fn verify(inst: &Instance) -> Verification {
    let mut report = Report::new();
    let mut failed_stage = None;
    for stage in Stage::ALL {
        if let Some(prev) = failed_stage {
            let applies = match stage {
                Stage::Crossing => inst.crossing.is_some() || inst.rmatrix.is_some(),
                Stage::RMatrix => inst.rmatrix.is_some(),
                Stage::Twist => inst.twist.is_some(),
                _ => true,
            };
            if applies {
                report.push(Check::refused(
                    &format!("{}.layer", stage.name()),
                    &format!("the {} axioms", stage.name()),
                    format!("the {} layer failed", Stage::name(prev)),
                ));
            }
            continue;
        }
        if let Some(r) = stage_report(inst, stage) {
            if !r.passed() {
                failed_stage = Some(stage);
            }
            report.extend(r);
        }
    }
    Verification {
        report,
        failed_stage,
    }
}

/// [`verify`] packaged as a [`Document`].
pub fn verify_document(name: &str, inst: &Instance) -> (Verification, Document) {
    let ver = verify(inst);
    let doc = Document::new(name, ver.report.clone(), Vec::new());
    (ver, doc)
}

/// One computed invariant: a labelled list of vectors in exact scalar syntax.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Invariant {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub entries: Vec<Entry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub label: String,
    pub values: Vec<String>,
}

impl Invariant {
    fn family(name: &str, symbol: &str, values: &[Vec<Scalar>]) -> Self {
        Invariant {
            name: name.into(),
            note: None,
            entries: values
                .iter()
                .enumerate()
                .map(|(a, v)| Entry {
                    label: format!("{symbol}_{a}"),
                    values: v.iter().map(Scalar::to_text).collect(),
                })
                .collect(),
        }
    }

    fn single(name: &str, label: &str, v: &[Scalar]) -> Self {
        Invariant {
            name: name.into(),
            note: None,
            entries: vec![Entry {
                label: label.into(),
                values: v.iter().map(Scalar::to_text).collect(),
            }],
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// The output of a command: checks plus computed values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Document {
    pub instance: String,
    pub report: Report,
    pub invariants: Vec<Invariant>,
}

impl Document {
    fn new(instance: &str, report: Report, invariants: Vec<Invariant>) -> Self {
        Document {
            instance: instance.into(),
            report: report.sorted(),
            invariants,
        }
    }

    /// True when every check passed.
    pub fn passed(&self) -> bool {
        self.report.passed()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    /// A plain-text rendering with one table row per check: status, id, the
    /// formula checked, the number of cases, and the first witness.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# {}", self.instance);
        let _ = writeln!(out);
        let counts = [
            Status::Pass,
            Status::Fail,
            Status::Violation,
            Status::Refused,
        ]
        .map(|s| {
            (
                s,
                self.report.checks.iter().filter(|c| c.status == s).count(),
            )
        });
        let summary: Vec<String> = counts
            .iter()
            .map(|(s, n)| format!("{} {n}", s.label()))
            .collect();
        let _ = writeln!(out, "{}", summary.join(", "));
        let _ = writeln!(out);
        let _ = writeln!(out, "| status | check | formula | cases | witness |");
        let _ = writeln!(out, "|---|---|---|---|---|");
        for c in &self.report.checks {
            let witness = match (c.failures.first(), &c.note) {
                (Some(f), _) => format!("{:?} {}: {} vs {}", f.indices, f.witness, f.lhs, f.rhs),
                (None, Some(n)) => n.clone(),
                (None, None) => String::new(),
            };
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} |",
                c.status.label(),
                c.id,
                c.statement.replace('|', "\\|"),
                c.cases,
                witness.replace('|', "\\|")
            );
        }
        if !self.invariants.is_empty() {
            let _ = writeln!(out);
            let _ = writeln!(out, "## Invariants");
            for inv in &self.invariants {
                let _ = writeln!(out);
                let _ = writeln!(out, "{}", inv.name);
                if let Some(n) = &inv.note {
                    let _ = writeln!(out, "  ({n})");
                }
                for e in &inv.entries {
                    let _ = writeln!(out, "  {} = [{}]", e.label, e.values.join(", "));
                }
            }
        }
        out
    }
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// The invariants `hopfpi invariants` can compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum What {
    Integrals,
    Grouplike,
    Nu,
    Drinfeld,
    Ell,
    BigG,
    H,
    PhiHat,
}

impl What {
    pub const ALL: [What; 8] = [
        What::Integrals,
        What::Grouplike,
        What::Nu,
        What::Drinfeld,
        What::Ell,
        What::BigG,
        What::H,
        What::PhiHat,
    ];

    pub fn name(self) -> &'static str {
        match self {
            What::Integrals => "integrals",
            What::Grouplike => "grouplike",
            What::Nu => "nu",
            What::Drinfeld => "drinfeld",
            What::Ell => "ell",
            What::BigG => "G",
            What::H => "h",
            What::PhiHat => "phihat",
        }
    }
}

impl FromStr for What {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        What::ALL
            .into_iter()
            .find(|w| w.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = What::ALL.iter().map(|w| w.name()).collect();
                Error::Parse(format!(
                    "unknown invariant {s:?}; expected one of {}",
                    names.join(", ")
                ))
            })
    }
}

/// Scales a family so its first nonzero coefficient is 1.
fn normalized(v: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let pivot = v
        .iter()
        .flatten()
        .find(|c| !c.is_zero())
        .and_then(Scalar::inv);
    match pivot {
        Some(p) => v
            .iter()
            .map(|x| x.iter().map(|c| &p * c).collect())
            .collect(),
        None => v.to_vec(),
    }
}

fn refused_document(name: &str, ver: &Verification, id: &str, statement: &str) -> Document {
    let mut rep = Report::new();
    for c in ver.report.problems() {
        rep.push(c.clone());
    }
    let stage = ver.failed_stage.map(Stage::name).unwrap_or("verification");
    rep.push(Check::refused(
        id,
        statement,
        format!("the instance fails the {stage} layer"),
    ));
    Document::new(name, rep, Vec::new())
}

struct Computed {
    dec: Decorated,
    d: std::result::Result<Distinguished, Error>,
}

impl Computed {
    fn new(inst: &Instance) -> Result<Self> {
        let dec = inst.decorated()?;
        let d = distinguished(&dec.hopf);
        Ok(Computed { dec, d })
    }

    fn h(&self) -> &HopfPiData {
        &self.dec.hopf
    }

    fn drinfeld(&self) -> Option<DrinfeldElements> {
        self.dec
            .rmatrix
            .as_ref()
            .map(|r| drinfeld_u(self.h(), &self.dec.crossing, r))
    }
}

fn needs(id: &str, what: &str, reason: &str) -> Check {
    Check::refused(id, what, reason)
}

/// Computes the requested invariants of a verified instance.
pub fn invariants(name: &str, inst: &Instance, side: Side, what: &[What]) -> Document {
    let ver = verify(inst);
    if !ver.passed() {
        return refused_document(name, &ver, "invariants", "the instance verifies");
    }
    let comp = match Computed::new(inst) {
        Ok(c) => c,
        Err(e) => {
            let mut rep = Report::new();
            rep.push(Check::refused(
                "invariants",
                "the instance verifies",
                e.to_string(),
            ));
            return Document::new(name, rep, Vec::new());
        }
    };
    let h = comp.h();
    let mut rep = Report::new();
    let mut out = Vec::new();
    let mut what: Vec<What> = what.to_vec();
    what.sort();
    what.dedup();
    let dist = match &comp.d {
        Ok(d) => Some(d),
        Err(e) => {
            rep.push(Check::refused(
                "distinguished",
                "integrals, g and ν exist",
                e.to_string(),
            ));
            None
        }
    };
    let dr = comp.drinfeld();
    let no_r = "the instance has no R-matrix";
    for w in what {
        match w {
            What::Integrals => {
                let space = integral_space(h, side);
                let id = format!("integral.{}.unique", side.name());
                let fails = if space.len() == 1 {
                    vec![]
                } else {
                    vec![Failure::described(
                        &[],
                        "integral space",
                        format!("dimension {}", space.len()),
                        "dimension 1",
                    )]
                };
                rep.push(
                    Check::from_failures(
                        &id,
                        "the space of π-integrals is one-dimensional",
                        Kind::Theorem,
                        1,
                        fails,
                    )
                    .with_note(format!("nullspace dimension {}", space.len())),
                );
                if let Some(lam) = space.first() {
                    out.push(
                        Invariant::family(
                            &format!("{} π-integral", side.name()),
                            "λ",
                            &normalized(lam),
                        )
                        .with_note("normalized so that the first nonzero coefficient is 1"),
                    );
                }
                if let Some(d) = dist {
                    let big = match side {
                        Side::Left => &d.big_lambda_left,
                        Side::Right => &d.big_lambda_right,
                    };
                    out.push(
                        Invariant::single(
                            &format!("{} integral of H_1", side.name()),
                            "Λ",
                            &normalized(std::slice::from_ref(big))[0],
                        )
                        .with_note("normalized so that the first nonzero coefficient is 1"),
                    );
                }
            }
            What::Grouplike => {
                if let Some(d) = dist {
                    rep.push(check_grouplike(
                        h,
                        &d.g,
                        "distinguished-g.grouplike",
                        "g",
                        Kind::Theorem,
                    ));
                    out.push(Invariant::family("distinguished π-grouplike", "g", &d.g));
                }
            }
            What::Nu => {
                if let Some(d) = dist {
                    out.push(Invariant::single(
                        "distinguished grouplike of H_1*",
                        "ν",
                        &d.nu,
                    ));
                }
            }
            What::PhiHat => {
                if let Some(d) = dist {
                    match phi_hat(h, &comp.dec.crossing, d) {
                        Ok(hat) => {
                            rep.extend(check_phi_hat(h, &comp.dec.crossing, d, &hat));
                            out.push(Invariant::single("φ̂", "φ̂", &hat));
                        }
                        Err(e) => rep.push(needs("phi-hat", "φ̂ exists", &e.to_string())),
                    }
                }
            }
            What::Drinfeld => match &dr {
                Some(dr) => {
                    out.push(Invariant::family("Drinfeld element", "u", &dr.u));
                    out.push(Invariant::family(
                        "inverse Drinfeld element",
                        "u⁻¹",
                        &dr.u_inv,
                    ));
                }
                None => rep.push(needs(
                    "drinfeld",
                    "u_α = m_α(S_{α⁻¹}φ_α⊗id)σ(R_{α,α⁻¹})",
                    no_r,
                )),
            },
            What::Ell => match &dr {
                Some(dr) => match ell_element(h, dr) {
                    Ok(ell) => out.push(Invariant::family("ℓ", "ℓ", &ell)),
                    Err(e) => rep.push(needs("ell", "ℓ_α = c_α⁻¹ exists", &e.to_string())),
                },
                None => rep.push(needs("ell", "ℓ_α = c_α⁻¹", no_r)),
            },
            What::BigG => match (&dr, &comp.dec.twist) {
                (Some(dr), Some(t)) => out.push(Invariant::family(
                    "ribbon grouplike",
                    "G",
                    &g_element(h, dr, t),
                )),
                (None, _) => rep.push(needs("ribbon-g", "G_α = θ_αu_α", no_r)),
                (_, None) => rep.push(needs(
                    "ribbon-g",
                    "G_α = θ_αu_α",
                    "the instance has no twist",
                )),
            },
            What::H => match (&comp.dec.rmatrix, dist) {
                (Some(r), Some(d)) => {
                    out.push(Invariant::family("h", "h", &h_element(h, r, &d.nu)))
                }
                (None, _) => rep.push(needs("h-element", "h_α = (id⊗ν)(R_{α,1})", no_r)),
                (_, None) => {}
            },
        }
    }
    Document::new(name, rep, out)
}

fn trace_invariants(res: &CanonicalTrace) -> Vec<Invariant> {
    let mut out = Vec::new();
    if let Some(t) = &res.trace {
        out.push(Invariant::family("canonical π-trace", "tr", &t.tr));
    }
    if let Some(c) = &res.conditions {
        let listed: Vec<String> = c
            .list()
            .iter()
            .map(|(n, b)| format!("{n}: {}", if *b { "holds" } else { "fails" }))
            .collect();
        out.push(Invariant {
            name: "sufficient conditions".into(),
            note: Some(listed.join("; ")),
            entries: Vec::new(),
        });
    }
    if let Some(hat) = &res.phi_hat {
        out.push(Invariant::single("φ̂", "φ̂", hat));
    }
    out
}

/// Attempts the canonical trace on a verified ribbon instance.
pub fn trace(name: &str, inst: &Instance) -> Document {
    let ver = verify(inst);
    if !ver.passed() {
        return refused_document(
            name,
            &ver,
            "trace.canonical",
            "tr_α(x) = λ_α(G_αx) is a π-trace",
        );
    }
    let dec = match inst.decorated() {
        Ok(d) => d,
        Err(e) => {
            let mut rep = Report::new();
            rep.push(Check::refused(
                "trace.canonical",
                "tr_α(x) = λ_α(G_αx) is a π-trace",
                e.to_string(),
            ));
            return Document::new(name, rep, Vec::new());
        }
    };
    let (Some(r), Some(theta)) = (&dec.rmatrix, &dec.twist) else {
        let mut rep = Report::new();
        rep.push(Check::refused(
            "trace.canonical",
            "tr_α(x) = λ_α(G_αx) is a π-trace",
            "a ribbon structure (rmatrix and twist) is required",
        ));
        return Document::new(name, rep, Vec::new());
    };
    let res = canonical_trace(&dec.hopf, &dec.crossing, r, theta);
    let inv = trace_invariants(&res);
    Document::new(name, res.report, inv)
}

/// Reclassifies failures of derived structures as violations: they are
/// consequences of the input axioms, not axioms of the input.
fn as_theorem(report: Report, prefix: &str) -> Report {
    let mut out = Report::new();
    for mut c in report.checks {
        if c.status == Status::Fail {
            c.status = Status::Violation;
        }
        c.id = format!("{prefix}{}", c.id);
        out.push(c);
    }
    out
}

fn derived_structure(dec: &Decorated, prefix: &str) -> Report {
    let h = &dec.hopf;
    let mut rep = as_theorem(verify_all(h), prefix);
    rep.extend(as_theorem(verify_crossing(h, &dec.crossing), prefix));
    if let Some(r) = &dec.rmatrix {
        rep.extend(as_theorem(verify_r(h, &dec.crossing, r, None), prefix));
        if let Some(t) = &dec.twist {
            rep.extend(as_theorem(verify_twist(h, &dec.crossing, r, t), prefix));
        }
    }
    rep
}

/// The full pipeline: verification, every computable invariant and every
/// identity check that applies to the instance.
pub fn full_report(name: &str, inst: &Instance) -> Document {
    let ver = verify(inst);
    if !ver.passed() {
        let mut rep = ver.report.clone();
        let stage = ver.failed_stage.map(Stage::name).unwrap_or("verification");
        rep.push(Check::refused(
            "report",
            "the instance verifies",
            format!("the instance fails the {stage} layer"),
        ));
        return Document::new(name, rep, Vec::new());
    }
    let mut rep = ver.report.clone();
    let comp = match Computed::new(inst) {
        Ok(c) => c,
        Err(e) => {
            rep.push(Check::refused(
                "report",
                "the instance verifies",
                e.to_string(),
            ));
            return Document::new(name, rep, Vec::new());
        }
    };
    let h = comp.h();
    let phi = &comp.dec.crossing;
    rep.extend(integrals_report(h));
    rep.push(check_convolution_antipode(h));
    rep.extend(comodules_report(h));
    let what: Vec<What> = What::ALL.to_vec();
    let inv_doc = invariants(name, inst, Side::Left, &what);
    let right = invariants(name, inst, Side::Right, &[What::Integrals]);
    let mut invs = inv_doc.invariants;
    invs.extend(right.invariants);
    if let Ok(d) = &comp.d {
        match phi_hat(h, phi, d) {
            Ok(hat) => {
                rep.extend(check_phi_hat(h, phi, d, &hat));
                rep.extend(check_crossing_invariants(h, phi, d, &hat));
                if let (Some(r), Some(dr)) = (&comp.dec.rmatrix, comp.drinfeld()) {
                    rep.extend(check_r_consequences(h, phi, r));
                    rep.extend(check_drinfeld(h, phi, r, &dr));
                    match ell_element(h, &dr) {
                        Ok(ell) => {
                            rep.extend(check_ell(h, &dr, &ell));
                            let big_g = comp.dec.twist.as_ref().map(|t| g_element(h, &dr, t));
                            if let (Some(t), Some(gg)) = (&comp.dec.twist, &big_g) {
                                rep.extend(check_ribbon_g(h, phi, &dr, t, gg));
                            }
                            rep.extend(g_from_r(h, r, d, &hat, &ell, big_g.as_ref()));
                        }
                        Err(e) => {
                            rep.push(Check::refused("ell", "ℓ_α = c_α⁻¹ exists", e.to_string()))
                        }
                    }
                }
            }
            Err(e) => rep.push(Check::refused("phi-hat", "φ̂ exists", e.to_string())),
        }
    }
    if comp.dec.rmatrix.is_some() {
        match mirror(&comp.dec) {
            Ok(m) => {
                rep.extend(derived_structure(&m, "mirror:"));
                rep.extend(check_mirror_drinfeld(&comp.dec, &m));
            }
            Err(e) => rep.push(Check::refused(
                "mirror",
                "the mirror is a crossed Hopf π-coalgebra",
                e.to_string(),
            )),
        }
        match coop_qt(&comp.dec) {
            Ok(c) => {
                rep.extend(derived_structure(&c, "coop:"));
                rep.extend(check_coop(&comp.dec, &c));
            }
            Err(e) => rep.push(Check::refused(
                "coop",
                "the coopposite is quasitriangular",
                e.to_string(),
            )),
        }
    }
    if let (Some(r), Some(theta)) = (&comp.dec.rmatrix, &comp.dec.twist) {
        let res = canonical_trace(h, phi, r, theta);
        invs.extend(trace_invariants(&res));
        rep.extend(res.report);
    }
    // Invariant checks computed twice above are kept once.
    let mut seen = std::collections::BTreeSet::new();
    rep.checks.retain(|c| seen.insert(c.id.clone()));
    for c in inv_doc.report.checks {
        if seen.insert(c.id.clone()) {
            rep.push(c);
        }
    }
    Document::new(name, rep, invs)
}

/// Summarizes which layer failed, for messages.
pub fn describe_failure(ver: &Verification) -> String {
    match ver.failed_stage {
        None => "all layers pass".into(),
        Some(s) => {
            let first = ver
                .report
                .problems()
                .next()
                .map(|c| c.id.clone())
                .unwrap_or_default();
            format!("the {} layer fails at {first}", s.name())
        }
    }
}
