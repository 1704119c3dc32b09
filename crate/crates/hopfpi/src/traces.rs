//! π-traces: verification, the correspondence `tr_α = λ_α(G_α z_α ·)` with
//! central families `z`, and the canonical trace `tr_α = λ_α(G_α ·)`.
//!
//! Throughout, `λ` is a right π-integral and `G_α = θ_αu_α`.

use crate::crossed::{
    drinfeld_u, g_element, phi_hat_from, verify_r, verify_twist, Crossing, RMatrix,
};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::hopf::{all_pairs, witness, witness2, GradedCovector, GradedVector, HopfPiData};
use crate::integrals::{
    distinguished, h1_integral, is_cosemisimple, is_semisimple, is_unimodular, Side,
};
use crate::linalg::{algebra_inverse, dot, LinearMap};
use crate::report::{compare, format_vector, Check, Failure, Kind, Report};

/// A family of linear forms `tr_α` on `H_α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiTrace {
    pub tr: GradedCovector,
}

impl PiTrace {
    /// Checks that `tr_α` has length `dim H_α`.
    pub fn new(h: &HopfPiData, tr: GradedCovector) -> Result<Self> {
        if tr.len() != h.order() || (0..h.order()).any(|a| tr[a].len() != h.dim(a)) {
            return Err(Error::Shape(
                "a π-trace needs one form of length dim H_α per α".into(),
            ));
        }
        Ok(PiTrace { tr })
    }

    /// `tr_1 = ε` and `tr_α = 0` otherwise.
    pub fn counit_trace(h: &HopfPiData) -> Self {
        let one = h.group().identity();
        let tr = (0..h.order())
            .map(|a| {
                if a == one {
                    h.counit().clone()
                } else {
                    h.zero(a)
                }
            })
            .collect();
        PiTrace { tr }
    }

    pub fn zero(h: &HopfPiData) -> Self {
        PiTrace {
            tr: (0..h.order()).map(|a| h.zero(a)).collect(),
        }
    }

    /// `tr + s·other`.
    pub fn add_scaled(&self, s: &Scalar, other: &PiTrace) -> PiTrace {
        let tr = self
            .tr
            .iter()
            .zip(&other.tr)
            .map(|(x, y)| x.iter().zip(y).map(|(p, q)| p + &(s * q)).collect())
            .collect();
        PiTrace { tr }
    }
}

fn trace_checks(h: &HopfPiData, phi: &Crossing, tr: &PiTrace, kind: Kind) -> Report {
    let k = h.field();
    let g = h.group();
    let n = h.order();
    let mut rep = Report::new();
    let mut sym = Vec::new();
    for a in 0..n {
        for i in 0..h.dim(a) {
            for j in 0..h.dim(a) {
                let (x, y) = (h.basis(a, i), h.basis(a, j));
                let lhs = dot(k, &tr.tr[a], &h.product(a, &x, &y));
                let rhs = dot(k, &tr.tr[a], &h.product(a, &y, &x));
                sym.push(compare(&[a], || witness2(i, j), &[lhs], &[rhs]));
            }
        }
    }
    rep.push(Check::from_outcomes(
        "trace.symmetric",
        "tr_α(xy) = tr_α(yx)",
        kind,
        sym,
    ));
    let mut anti = Vec::new();
    for a in 0..n {
        let lhs = h.antipode(a).pull_back(&tr.tr[g.inv(a)]);
        for i in 0..h.dim(a) {
            anti.push(compare(
                &[a],
                || witness(i),
                &[lhs[i].clone()],
                &[tr.tr[a][i].clone()],
            ));
        }
    }
    rep.push(Check::from_outcomes(
        "trace.antipode-invariant",
        "tr_{α⁻¹}(S_α(x)) = tr_α(x)",
        kind,
        anti,
    ));
    let mut cross = Vec::new();
    for (b, a) in all_pairs(n) {
        let lhs = phi.map(b, a).pull_back(&tr.tr[g.conjugate(b, a)]);
        for i in 0..h.dim(a) {
            cross.push(compare(
                &[b, a],
                || witness(i),
                &[lhs[i].clone()],
                &[tr.tr[a][i].clone()],
            ));
        }
    }
    rep.push(Check::from_outcomes(
        "trace.crossing-invariant",
        "tr_{βαβ⁻¹}(φ_β(x)) = tr_α(x)",
        kind,
        cross,
    ));
    rep
}

/// Symmetry, antipode invariance and crossing invariance on all basis elements.
pub fn verify_trace(h: &HopfPiData, phi: &Crossing, tr: &PiTrace) -> Report {
    trace_checks(h, phi, tr, Kind::Axiom)
}

/// The data the trace constructions depend on, computed once for a verified
/// unimodular ribbon instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceSetup {
    /// A nonzero right π-integral.
    pub lambda: GradedCovector,
    /// `G_α = θ_αu_α`.
    pub big_g: GradedVector,
    pub big_g_inv: GradedVector,
    /// `φ̂(β)`, indexed by `β`.
    pub phi_hat: Vec<Scalar>,
}

impl TraceSetup {
    /// Verifies `R` and `θ`, then requires unimodularity. The error names
    /// the first unmet precondition.
    pub fn new(h: &HopfPiData, phi: &Crossing, r: &RMatrix, theta: &GradedVector) -> Result<Self> {
        let r_report = verify_r(h, phi, r, None);
        if let Some(c) = r_report.problems().next() {
            return Err(Error::Precondition(format!(
                "the R-matrix does not verify ({})",
                c.id
            )));
        }
        let t_report = verify_twist(h, phi, r, theta);
        if let Some(c) = t_report.problems().next() {
            return Err(Error::Precondition(format!(
                "the twist does not verify ({})",
                c.id
            )));
        }
        let d = distinguished(h)?;
        if !is_unimodular(h, &d) {
            return Err(Error::Precondition(format!(
                "not unimodular: ν = {} differs from ε = {}",
                format_vector(&d.nu),
                format_vector(h.counit())
            )));
        }
        let dr = drinfeld_u(h, phi, r);
        let big_g = g_element(h, &dr, theta);
        let big_g_inv = (0..h.order())
            .map(|a| {
                algebra_inverse(h.mult(a), h.unit(a), &big_g[a])
                    .ok_or_else(|| Error::NotInvertible(format!("G_{a}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let phi_hat = phi_hat_from(h, phi, &d.lambda_right)?;
        Ok(TraceSetup {
            lambda: d.lambda_right,
            big_g,
            big_g_inv,
            phi_hat,
        })
    }
}

/// Conditions on `z`: central, `S_α(z_α) = φ̂(α)⁻¹z_{α⁻¹}` and
/// `φ_β(z_α) = φ̂(β)z_{βαβ⁻¹}`.
pub fn check_z_conditions(
    h: &HopfPiData,
    phi: &Crossing,
    setup: &TraceSetup,
    z: &GradedVector,
) -> Report {
    let g = h.group();
    let n = h.order();
    let mut rep = Report::new();
    let mut central = Vec::new();
    for a in 0..n {
        for i in 0..h.dim(a) {
            let x = h.basis(a, i);
            central.push(compare(
                &[a],
                || witness(i),
                &h.product(a, &z[a], &x),
                &h.product(a, &x, &z[a]),
            ));
        }
    }
    rep.push(Check::from_outcomes(
        "trace.z-central",
        "z_αx = xz_α",
        Kind::Axiom,
        central,
    ));
    let anti = (0..n).map(|a| {
        let ai = g.inv(a);
        let inv = setup.phi_hat[a].inv().expect("φ̂ takes values in k*");
        let rhs: Vec<Scalar> = z[ai].iter().map(|c| &inv * c).collect();
        compare(&[a], || "z".into(), &h.antipode(a).apply(&z[a]), &rhs)
    });
    rep.push(Check::from_outcomes(
        "trace.z-antipode",
        "S_α(z_α) = φ̂(α)⁻¹z_{α⁻¹}",
        Kind::Axiom,
        anti.collect::<Vec<_>>(),
    ));
    let cross = all_pairs(n).into_iter().map(|(b, a)| {
        let c = g.conjugate(b, a);
        let rhs: Vec<Scalar> = z[c].iter().map(|v| &setup.phi_hat[b] * v).collect();
        compare(&[b, a], || "z".into(), &phi.map(b, a).apply(&z[a]), &rhs)
    });
    rep.push(Check::from_outcomes(
        "trace.z-crossing",
        "φ_β(z_α) = φ̂(β)z_{βαβ⁻¹}",
        Kind::Axiom,
        cross.collect::<Vec<_>>(),
    ));
    rep
}

/// `tr_α(x) = λ_α(G_αz_αx)`, without checking conditions on `z`.
pub fn trace_of(h: &HopfPiData, setup: &TraceSetup, z: &GradedVector) -> PiTrace {
    let tr = (0..h.order())
        .map(|a| {
            let gz = h.product(a, &setup.big_g[a], &z[a]);
            h.mult(a)
                .left_multiplication(&gz)
                .pull_back(&setup.lambda[a])
        })
        .collect();
    PiTrace { tr }
}

/// Checks the conditions on `z`; if they hold, builds `tr_α = λ_α(G_αz_α·)`
/// and verifies it. The trace is returned only when every check passes.
pub fn trace_from_z(
    h: &HopfPiData,
    phi: &Crossing,
    setup: &TraceSetup,
    z: &GradedVector,
) -> (Option<PiTrace>, Report) {
    let mut rep = check_z_conditions(h, phi, setup, z);
    if !rep.passed() {
        return (None, rep);
    }
    let tr = trace_of(h, setup, z);
    rep.extend(trace_checks(h, phi, &tr, Kind::Theorem));
    let ok = rep.passed();
    (ok.then_some(tr), rep)
}

/// Solves `tr_α = λ_α↼w_α` and returns `z_α = G_α⁻¹w_α`.
pub fn z_from_trace(h: &HopfPiData, setup: &TraceSetup, tr: &PiTrace) -> Result<GradedVector> {
    let k = h.field();
    (0..h.order())
        .map(|a| {
            let d = h.dim(a);
            let m = LinearMap::from_fn(k, d, d, |x, y| {
                dot(
                    k,
                    &setup.lambda[a],
                    &h.product(a, &h.basis(a, y), &h.basis(a, x)),
                )
            });
            let w = m
                .solve(&tr.tr[a])?
                .ok_or_else(|| Error::Structure(format!("tr_{a} is not of the form λ_α↼w")))?;
            Ok(h.product(a, &setup.big_g_inv[a], &w))
        })
        .collect()
}

/// `z_1 = Λ` with `Λ` a left integral of `H_1` normalized by `λ_1(Λ) = 1`,
/// and `z_α = 0` otherwise.
pub fn integral_family(h: &HopfPiData, setup: &TraceSetup) -> Result<GradedVector> {
    let k = h.field();
    let one = h.group().identity();
    let big = h1_integral(h, Side::Left)?;
    let s = dot(k, &setup.lambda[one], &big)
        .inv()
        .ok_or_else(|| Error::Structure("λ_1(Λ) = 0".into()))?;
    Ok((0..h.order())
        .map(|a| {
            if a == one {
                big.iter().map(|c| &s * c).collect()
            } else {
                h.zero(a)
            }
        })
        .collect())
}

/// Which of the sufficient conditions for `φ̂ = 1` hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceConditions {
    pub semisimple: bool,
    pub cosemisimple: bool,
    pub theta_integral_nonzero: bool,
    pub crossing_trivial_on_unit_component: bool,
}

impl TraceConditions {
    pub fn compute(
        h: &HopfPiData,
        phi: &Crossing,
        setup: &TraceSetup,
        theta: &GradedVector,
    ) -> Result<Self> {
        let one = h.group().identity();
        let ident = LinearMap::identity(h.field(), h.dim(one));
        Ok(TraceConditions {
            semisimple: is_semisimple(h)?,
            cosemisimple: is_cosemisimple(h)?,
            theta_integral_nonzero: !dot(h.field(), &setup.lambda[one], &theta[one]).is_zero(),
            crossing_trivial_on_unit_component: (0..h.order()).all(|b| *phi.map(b, one) == ident),
        })
    }

    /// `(name, holds)` in a fixed order.
    pub fn list(&self) -> [(&'static str, bool); 4] {
        [
            ("semisimple", self.semisimple),
            ("cosemisimple", self.cosemisimple),
            ("λ_1(θ_1) ≠ 0", self.theta_integral_nonzero),
            ("φ_β|H_1 = id", self.crossing_trivial_on_unit_component),
        ]
    }

    pub fn any(&self) -> bool {
        self.list().iter().any(|(_, b)| *b)
    }
}

const CANONICAL_ID: &str = "trace.canonical";
const CANONICAL_STATEMENT: &str = "tr_α(x) = λ_α(G_αx) is a π-trace";

/// The outcome of the canonical construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalTrace {
    pub trace: Option<PiTrace>,
    pub conditions: Option<TraceConditions>,
    pub phi_hat: Option<Vec<Scalar>>,
    pub report: Report,
}

/// Builds `tr_α = λ_α(G_α·)` when the instance is a unimodular ribbon instance
/// satisfying at least one sufficient condition, and verifies it. Otherwise
/// the construction is refused with the reason.
pub fn canonical_trace(
    h: &HopfPiData,
    phi: &Crossing,
    r: &RMatrix,
    theta: &GradedVector,
) -> CanonicalTrace {
    let refuse = |reason: String, conditions, phi_hat| {
        let mut report = Report::new();
        report.push(Check::refused(CANONICAL_ID, CANONICAL_STATEMENT, reason));
        CanonicalTrace {
            trace: None,
            conditions,
            phi_hat,
            report,
        }
    };
    let setup = match TraceSetup::new(h, phi, r, theta) {
        Ok(s) => s,
        Err(e) => return refuse(e.to_string(), None, None),
    };
    let conditions = match TraceConditions::compute(h, phi, &setup, theta) {
        Ok(c) => c,
        Err(e) => return refuse(e.to_string(), None, Some(setup.phi_hat)),
    };
    if !conditions.any() {
        let failed: Vec<&str> = conditions.list().iter().map(|(n, _)| *n).collect();
        let reason = format!(
            "none of the sufficient conditions holds (failed: {}); φ̂ = {}",
            failed.join(", "),
            format_vector(&setup.phi_hat)
        );
        return refuse(reason, Some(conditions), Some(setup.phi_hat));
    }
    let held: Vec<&str> = conditions
        .list()
        .iter()
        .filter(|(_, b)| *b)
        .map(|(n, _)| *n)
        .collect();
    let tr = trace_of(h, &setup, &h.unit_family());
    let mut report = trace_checks(h, phi, &tr, Kind::Theorem);
    let nonzero = Check::from_outcomes(
        CANONICAL_ID,
        CANONICAL_STATEMENT,
        Kind::Theorem,
        vec![tr
            .tr
            .iter()
            .all(|f| f.iter().all(Scalar::is_zero))
            .then(|| Failure::described(&[], "tr", "zero", "nonzero"))],
    )
    .with_note(format!("conditions satisfied: {}", held.join(", ")));
    report.push(nonzero);
    let ok = report.passed();
    CanonicalTrace {
        trace: ok.then_some(tr),
        conditions: Some(conditions),
        phi_hat: Some(setup.phi_hat),
        report,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crossed::find_twists;
    use crate::field::Field;
    use crate::group::FiniteGroup;
    use crate::instances;

    fn q() -> Field {
        Field::Rational
    }

    fn s(v: i64) -> Scalar {
        q().from_i64(v)
    }

    fn z3_trivial() -> (HopfPiData, Crossing, RMatrix, GradedVector) {
        let (h, phi) = instances::constant_z3_trivial(q()).unwrap();
        let r = instances::trivial_r(&h).unwrap();
        let theta = instances::unit_twist(&h);
        (h, phi, r, theta)
    }

    #[test]
    fn zero_and_counit_traces_pass() {
        let (h, phi, _, _) = z3_trivial();
        assert!(verify_trace(&h, &phi, &PiTrace::zero(&h)).passed());
        assert!(verify_trace(&h, &phi, &PiTrace::counit_trace(&h)).passed());
    }

    #[test]
    fn asymmetric_form_fails_symmetry_only() {
        // On k[S₃], the indicator of the transposition (0 1) is inversion
        // invariant but not a class function.
        let s3 = FiniteGroup::symmetric3();
        let h = instances::group_algebra(q(), &s3);
        let phi = Crossing::trivial(&h).unwrap();
        let t = (0..6).position(|a| s3.element_order(a) == 2).unwrap();
        let mut f = vec![s(0); 6];
        f[t] = s(1);
        let rep = verify_trace(&h, &phi, &PiTrace::new(&h, vec![f]).unwrap());
        assert!(!rep.get("trace.symmetric").unwrap().passed());
        assert!(rep.get("trace.antipode-invariant").unwrap().passed());
        assert!(rep.get("trace.crossing-invariant").unwrap().passed());
    }

    #[test]
    fn non_inversion_invariant_form_fails_antipode_only() {
        let (h, phi, _, _) = z3_trivial();
        let f = vec![s(0), s(1), s(0)];
        let rep = verify_trace(&h, &phi, &PiTrace::new(&h, vec![f.clone(), f]).unwrap());
        assert!(rep.get("trace.symmetric").unwrap().passed());
        assert!(!rep.get("trace.antipode-invariant").unwrap().passed());
        assert!(rep.get("trace.crossing-invariant").unwrap().passed());
    }

    #[test]
    fn non_conjugation_invariant_family_fails_crossing_only() {
        let s3 = FiniteGroup::symmetric3();
        let h = instances::trivial_instance(q(), &s3);
        let phi = Crossing::trivial(&h).unwrap();
        let t = (0..6).position(|a| s3.element_order(a) == 2).unwrap();
        let tr = (0..6)
            .map(|a| vec![if a == t { s(1) } else { s(0) }])
            .collect();
        let rep = verify_trace(&h, &phi, &PiTrace::new(&h, tr).unwrap());
        assert!(rep.get("trace.symmetric").unwrap().passed());
        assert!(rep.get("trace.antipode-invariant").unwrap().passed());
        assert!(!rep.get("trace.crossing-invariant").unwrap().passed());
    }

    #[test]
    fn canonical_trace_on_trivial_family_is_the_integral() {
        let h = instances::trivial_instance(q(), &FiniteGroup::cyclic(3));
        let phi = Crossing::trivial(&h).unwrap();
        let r = instances::trivial_r(&h).unwrap();
        let theta = instances::unit_twist(&h);
        let c = canonical_trace(&h, &phi, &r, &theta);
        assert!(c.report.passed(), "{}", c.report);
        let d = distinguished(&h).unwrap();
        assert_eq!(c.trace.unwrap().tr, d.lambda_right);
    }

    #[test]
    fn canonical_trace_on_group_algebra_family() {
        // Oracle: G = θu = 1 for R = 1⊗1, and the right integral of k[Z/3]
        // is a multiple of the coefficient of the unit, so tr_α ∝ (1, 0, 0).
        let (h, phi, r, theta) = z3_trivial();
        let c = canonical_trace(&h, &phi, &r, &theta);
        assert!(c.report.passed(), "{}", c.report);
        let tr = c.trace.unwrap();
        for f in &tr.tr {
            assert!(!f[0].is_zero());
            assert!(f[1].is_zero() && f[2].is_zero());
        }
        let cond = c.conditions.unwrap();
        assert!(cond.semisimple && cond.cosemisimple && cond.crossing_trivial_on_unit_component);
        assert!(verify_trace(&h, &phi, &tr).passed());
    }

    #[test]
    fn sweedler_family_is_refused_as_non_unimodular() {
        let (h, phi) = instances::constant_sweedler_z2(q()).unwrap();
        let r = RMatrix::constant(&h, &instances::sweedler_r(q(), &s(0)).unwrap()).unwrap();
        let theta = find_twists(&h, &phi, &r, 1).unwrap().remove(0);
        let c = canonical_trace(&h, &phi, &r, &theta);
        let check = c.report.get(CANONICAL_ID).unwrap();
        assert_eq!(check.status, crate::report::Status::Refused);
        assert!(check.note.as_ref().unwrap().contains("not unimodular"));
        assert!(c.trace.is_none());
    }

    #[test]
    fn integral_family_gives_the_counit_trace() {
        // Oracle: λ_1(G_1Λx) = ε(x)λ_1(Λ) = ε(x), evaluated on the basis.
        let (h, phi, r, theta) = z3_trivial();
        let setup = TraceSetup::new(&h, &phi, &r, &theta).unwrap();
        let z = integral_family(&h, &setup).unwrap();
        let (tr, rep) = trace_from_z(&h, &phi, &setup, &z);
        assert!(rep.passed(), "{rep}");
        assert_eq!(tr.unwrap(), PiTrace::counit_trace(&h));
    }

    #[test]
    fn z_round_trips_on_two_families_and_their_sum() {
        let (h, phi, r, theta) = z3_trivial();
        let setup = TraceSetup::new(&h, &phi, &r, &theta).unwrap();
        let ones = h.unit_family();
        let lam = integral_family(&h, &setup).unwrap();
        let sum: GradedVector = ones
            .iter()
            .zip(&lam)
            .map(|(x, y)| x.iter().zip(y).map(|(p, q)| p + q).collect())
            .collect();
        for z in [ones, lam, sum] {
            let (tr, rep) = trace_from_z(&h, &phi, &setup, &z);
            assert!(rep.passed(), "{rep}");
            let tr = tr.unwrap();
            let back = z_from_trace(&h, &setup, &tr).unwrap();
            assert_eq!(back, z);
            assert!(check_z_conditions(&h, &phi, &setup, &back).passed());
            assert_eq!(trace_of(&h, &setup, &back), tr);
        }
    }

    #[test]
    fn non_central_z_is_rejected() {
        let s3 = FiniteGroup::symmetric3();
        let h = instances::group_algebra(q(), &s3);
        let phi = Crossing::trivial(&h).unwrap();
        let r = RMatrix::new(
            &h,
            vec![crate::linalg::kron_vectors(q(), h.unit(0), h.unit(0))],
        )
        .unwrap();
        let theta = instances::unit_twist(&h);
        let setup = TraceSetup::new(&h, &phi, &r, &theta).unwrap();
        let t = (0..6).position(|a| s3.element_order(a) == 2).unwrap();
        let (tr, rep) = trace_from_z(&h, &phi, &setup, &vec![h.basis(0, t)]);
        assert!(tr.is_none());
        assert!(!rep.get("trace.z-central").unwrap().passed());
    }
}
