//! Acceptance criteria, one line each.
//!
//! Runs without the libtest harness so the summary always prints. Every
//! comparison is exact; the process exits nonzero if any criterion fails.

use std::process::ExitCode;

use hopfpi::comodules::{
    coinvariants, dual_comodule, fundamental_decomposition, trivial_hopf_comodule, verify_comodule,
    HopfPiComodule, PiComodule,
};
use hopfpi::convolution::check_convolution_antipode;
use hopfpi::crossed::{
    check_ell, check_r_consequences, drinfeld_u, ell_element, g_element, g_from_r, phi_hat,
    verify_r, Crossing, Decorated, RMatrix,
};
use hopfpi::field::{Field, Scalar};
use hopfpi::format::Instance;
use hopfpi::group::FiniteGroup;
use hopfpi::hopf::HopfPiData;
use hopfpi::instances::{
    constant_sweedler_z2, group_algebra, sweedler, sweedler_r, tampered, trivial_instance,
    trivial_r, z3_trivial_ribbon, zoo,
};
use hopfpi::integrals::{
    check_antipode_from_integrals, check_antipode_order, check_bijective_antipode,
    check_fourth_power, check_integral_traces, check_lambda_coeff, distinguished, integral_space,
    is_cosemisimple, is_semisimple, is_unimodular, Side,
};
use hopfpi::linalg::{algebra_inverse, LinearMap};
use hopfpi::pipeline::verify;
use hopfpi::report::{Report, Status};
use hopfpi::traces::{
    canonical_trace, integral_family, trace_from_z, trace_of, verify_trace, z_from_trace, PiTrace,
    TraceSetup,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn q() -> Field {
    Field::Rational
}

fn s(v: i64) -> Scalar {
    q().from_i64(v)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ensure_report(name: &str, r: &Report) -> Result<(), String> {
    ensure(r.passed(), || {
        let bad: Vec<&str> = r.problems().map(|c| c.id.as_str()).collect();
        format!("{name}: {bad:?}")
    })
}

/// The verified, nonzero instances the criteria quantify over.
fn zoo_instances() -> Result<Vec<(&'static str, Instance)>, String> {
    let z = zoo().map_err(|e| e.to_string())?;
    for (name, inst) in &z {
        ensure(verify(inst).passed(), || format!("{name} does not verify"))?;
    }
    Ok(z)
}

fn integral_uniqueness() -> Outcome {
    let z = zoo_instances()?;
    for (name, inst) in &z {
        for side in [Side::Left, Side::Right] {
            let dim = integral_space(&inst.hopf, side).len();
            ensure(dim == 1, || {
                format!("{name}: {} integral space has dimension {dim}", side.name())
            })?;
        }
    }
    Ok(format!(
        "left and right nullspaces are one-dimensional on {} instances",
        z.len()
    ))
}

fn antipode_bijectivity_and_order() -> Outcome {
    let z = zoo_instances()?;
    for (name, inst) in &z {
        let h = &inst.hopf;
        ensure(check_bijective_antipode(h).passed(), || {
            format!("{name}: S not bijective")
        })?;
        ensure_report(name, &check_antipode_order(h))?;
    }
    let h = sweedler(q()).map_err(|e| e.to_string())?;
    let sw = h.antipode(0);
    let id = LinearMap::identity(q(), 4);
    let order = (1..=4u64).find(|&k| sw.pow(k) == id);
    ensure(order == Some(4), || {
        format!("Sweedler S has order {order:?}")
    })?;
    Ok(format!(
        "order bound holds on {} instances; Sweedler S has order exactly 4",
        z.len()
    ))
}

fn integral_identities() -> Outcome {
    let z = zoo_instances()?;
    for (name, inst) in &z {
        let h = &inst.hopf;
        let d = distinguished(h).map_err(|e| format!("{name}: {e}"))?;
        ensure_report(name, &check_integral_traces(h, &d))?;
        ensure_report(name, &check_antipode_from_integrals(h, &d))?;
        ensure(check_lambda_coeff(h, &d).passed(), || {
            format!("{name}: integral coproduct identity")
        })?;
        ensure(check_fourth_power(h, &d).passed(), || {
            format!("{name}: fourth power of S")
        })?;
    }
    Ok(format!(
        "trace, antipode-reconstruction, coproduct and S⁴ identities on {} instances",
        z.len()
    ))
}

fn quasitriangular_cases() -> Result<Vec<(String, Decorated)>, String> {
    let mut cases = Vec::new();
    for group in [
        FiniteGroup::cyclic(1),
        FiniteGroup::cyclic(2),
        FiniteGroup::symmetric3(),
    ] {
        let h = trivial_instance(q(), &group);
        let crossing = Crossing::trivial(&h).map_err(|e| e.to_string())?;
        let r = trivial_r(&h).map_err(|e| e.to_string())?;
        cases.push((
            format!("T(order {})", group.order()),
            Decorated {
                hopf: h,
                crossing,
                rmatrix: Some(r),
                twist: None,
            },
        ));
    }
    for lambda in [0, 1] {
        let (h, crossing) = constant_sweedler_z2(q()).map_err(|e| e.to_string())?;
        let r0 = sweedler_r(q(), &s(lambda)).map_err(|e| e.to_string())?;
        let r = RMatrix::constant(&h, &r0).map_err(|e| e.to_string())?;
        cases.push((
            format!("C(H4, Z/2) with R_{lambda}"),
            Decorated {
                hopf: h,
                crossing,
                rmatrix: Some(r),
                twist: None,
            },
        ));
    }
    Ok(cases)
}

fn quasitriangular_suite() -> Outcome {
    let cases = quasitriangular_cases()?;
    for (name, dec) in &cases {
        let (h, phi) = (&dec.hopf, &dec.crossing);
        let r = dec.rmatrix.as_ref().unwrap();
        ensure_report(name, &verify_r(h, phi, r, None))?;
        ensure_report(name, &check_r_consequences(h, phi, r))?;
        let dr = drinfeld_u(h, phi, r);
        ensure_report(name, &hopfpi::crossed::check_drinfeld(h, phi, r, &dr))?;
        for a in 0..h.order() {
            let direct = algebra_inverse(h.mult(a), h.unit(a), &dr.u[a]);
            ensure(direct.as_ref() == Some(&dr.u_inv[a]), || {
                format!("{name}: closed form of u⁻¹ at {a}")
            })?;
        }
    }
    Ok(format!("R-matrix consequences, Yang-Baxter and Drinfeld identities on {} cases; u⁻¹ closed form exact", cases.len()))
}

fn decorated_zoo() -> Result<Vec<(String, Decorated)>, String> {
    let mut out = Vec::new();
    for (name, inst) in zoo_instances()? {
        if inst.rmatrix.is_some() {
            out.push((
                name.to_string(),
                inst.decorated().map_err(|e| e.to_string())?,
            ));
        }
    }
    let h = sweedler(q()).map_err(|e| e.to_string())?;
    let crossing = Crossing::trivial(&h).map_err(|e| e.to_string())?;
    let r = RMatrix::constant(&h, &sweedler_r(q(), &s(0)).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    out.push((
        "sweedler with R_0".into(),
        Decorated {
            hopf: h,
            crossing,
            rmatrix: Some(r),
            twist: None,
        },
    ));
    Ok(out)
}

fn g_from_r_matrix() -> Outcome {
    let cases = decorated_zoo()?;
    let mut ribbon = 0;
    for (name, dec) in &cases {
        let (h, phi) = (&dec.hopf, &dec.crossing);
        let r = dec.rmatrix.as_ref().unwrap();
        let d = distinguished(h).map_err(|e| format!("{name}: {e}"))?;
        let hat = phi_hat(h, phi, &d).map_err(|e| format!("{name}: {e}"))?;
        let dr = drinfeld_u(h, phi, r);
        let ell = ell_element(h, &dr).map_err(|e| format!("{name}: {e}"))?;
        ensure_report(name, &check_ell(h, &dr, &ell))?;
        let big_g = dec.twist.as_ref().map(|t| g_element(h, &dr, t));
        ribbon += usize::from(big_g.is_some());
        let rep = g_from_r(h, r, &d, &hat, &ell, big_g.as_ref());
        ensure_report(name, &rep)?;
        ensure(rep.checks.iter().all(|c| c.status == Status::Pass), || {
            format!("{name}: a check was skipped")
        })?;
    }
    Ok(format!(
        "g = φ̂⁻¹ℓh on {} decorated instances, φ̂g = G²h on {ribbon} ribbon ones",
        cases.len()
    ))
}

fn decomposition() -> Outcome {
    let hs: Vec<(&str, HopfPiData)> = vec![
        ("T(Z/2)", trivial_instance(q(), &FiniteGroup::cyclic(2))),
        ("Sweedler", sweedler(q()).map_err(|e| e.to_string())?),
        (
            "C(H4, Z/2)",
            constant_sweedler_z2(q()).map_err(|e| e.to_string())?.0,
        ),
    ];
    let mut count = 0;
    for (name, h) in &hs {
        let modules = [
            ("H", HopfPiComodule::regular(h)),
            ("unit⊗H", trivial_hopf_comodule(h, &PiComodule::unit(h))),
        ];
        for (mname, m) in modules {
            let label = format!("{name}, M = {mname}");
            let (dec, rep) = fundamental_decomposition(h, &m);
            ensure_report(&label, &rep)?;
            let dec = dec.ok_or_else(|| format!("{label}: no decomposition"))?;
            for a in 0..h.order() {
                ensure(dec.f[a].compose(&dec.g[a]).is_identity(), || {
                    format!("{label}: f∘g at {a}")
                })?;
                ensure(dec.g[a].compose(&dec.f[a]).is_identity(), || {
                    format!("{label}: g∘f at {a}")
                })?;
            }
            count += 1;
        }
    }
    Ok(format!("f∘g and g∘f are identities on {count} comodules"))
}

fn integral_coinvariants() -> Outcome {
    let hs: Vec<(&str, HopfPiData)> = vec![
        ("Sweedler", sweedler(q()).map_err(|e| e.to_string())?),
        (
            "C(H4, Z/2)",
            constant_sweedler_z2(q()).map_err(|e| e.to_string())?.0,
        ),
    ];
    for (name, h) in &hs {
        let one = h.group().identity();
        let dual = dual_comodule(h).map_err(|e| e.to_string())?;
        let basis = &coinvariants(h, &dual.comodule)[one];
        ensure(basis.len() == 1, || {
            format!("{name}: coinvariants at 1 have dimension {}", basis.len())
        })?;
        let lam = &distinguished(h).map_err(|e| e.to_string())?.lambda_left[one];
        let m = LinearMap::from_columns(q(), lam.len(), std::slice::from_ref(lam));
        let spanned = m.solve(&basis[0]).map_err(|e| e.to_string())?.is_some();
        let nonzero = basis[0].iter().any(|c| !c.is_zero());
        ensure(spanned && nonzero, || {
            format!("{name}: coinvariant is not a multiple of the left integral")
        })?;
        let check = hopfpi::comodules::check_integral_coinvariants(h).map_err(|e| e.to_string())?;
        ensure(check.passed(), || format!("{name}: correspondence fails"))?;
    }
    Ok(
        "coinvariants of H^□ at 1 are the line of the left integral on Sweedler and C(H4, Z/2)"
            .into(),
    )
}

fn classifications() -> Outcome {
    let flags = |h: &HopfPiData| -> Result<(bool, bool, bool), String> {
        let d = distinguished(h).map_err(|e| e.to_string())?;
        Ok((
            is_semisimple(h).map_err(|e| e.to_string())?,
            is_cosemisimple(h).map_err(|e| e.to_string())?,
            is_unimodular(h, &d),
        ))
    };
    let z3 = FiniteGroup::cyclic(3);
    let gf3 = Field::prime(3).map_err(|e| e.to_string())?;
    let got = flags(&group_algebra(q(), &z3))?;
    ensure(got == (true, true, true), || {
        format!("k[Z/3] over Q: {got:?}")
    })?;
    let got = flags(&sweedler(q()).map_err(|e| e.to_string())?)?;
    ensure(got == (false, false, false), || {
        format!("Sweedler: {got:?}")
    })?;
    let got = flags(&group_algebra(gf3, &z3))?;
    ensure(!got.0, || format!("k[Z/3] over GF(3): {got:?}"))?;
    for group in [
        FiniteGroup::cyclic(1),
        FiniteGroup::cyclic(2),
        FiniteGroup::symmetric3(),
    ] {
        let got = flags(&trivial_instance(q(), &group))?;
        ensure(got == (true, true, true), || {
            format!("T(order {}): {got:?}", group.order())
        })?;
    }
    Ok("k[Z/3]/Q all true; Sweedler all false; k[Z/3]/GF(3) not semisimple; T(π) all true".into())
}

fn canonical_traces() -> Outcome {
    let inst = z3_trivial_ribbon(q()).map_err(|e| e.to_string())?;
    let dec = inst.decorated().map_err(|e| e.to_string())?;
    let (h, phi) = (&dec.hopf, &dec.crossing);
    let (r, theta) = (dec.rmatrix.as_ref().unwrap(), dec.twist.as_ref().unwrap());
    let c = canonical_trace(h, phi, r, theta);
    ensure_report("canonical trace", &c.report)?;
    let tr = c.trace.ok_or("no trace constructed")?;
    ensure_report("trace axioms", &verify_trace(h, phi, &tr))?;
    ensure(tr.tr.iter().any(|f| f.iter().any(|x| !x.is_zero())), || {
        "trace is zero".into()
    })?;

    let setup = TraceSetup::new(h, phi, r, theta).map_err(|e| e.to_string())?;
    let families = [
        ("z = 1", h.unit_family()),
        (
            "integral",
            integral_family(h, &setup).map_err(|e| e.to_string())?,
        ),
    ];
    for (name, z) in &families {
        let (t, rep) = trace_from_z(h, phi, &setup, z);
        ensure_report(name, &rep)?;
        let t = t.ok_or_else(|| format!("{name}: no trace"))?;
        let back = z_from_trace(h, &setup, &t).map_err(|e| e.to_string())?;
        ensure(&back == z, || format!("{name}: z → tr → z differs"))?;
        ensure(trace_of(h, &setup, &back) == t, || {
            format!("{name}: tr → z → tr differs")
        })?;
    }

    let sw = zoo_instances()?
        .into_iter()
        .find(|(n, _)| *n == "sweedler_z2_ribbon")
        .ok_or("missing sweedler_z2_ribbon")?
        .1
        .decorated()
        .map_err(|e| e.to_string())?;
    let refused = canonical_trace(
        &sw.hopf,
        &sw.crossing,
        sw.rmatrix.as_ref().unwrap(),
        sw.twist.as_ref().unwrap(),
    );
    ensure(refused.trace.is_none(), || {
        "Sweedler-based trace was constructed".into()
    })?;
    let check = refused
        .report
        .get("trace.canonical")
        .ok_or("no trace.canonical check")?;
    ensure(check.status == Status::Refused, || {
        format!("status {:?}", check.status)
    })?;
    ensure(
        refused.report.to_string().contains("not unimodular"),
        || "wrong refusal reason".into(),
    )?;
    Ok("trace axioms hold on C(k[Z/3], Z/2); Sweedler family refused as not unimodular; z ↔ tr exact on two families".into())
}

fn convolution_antipode() -> Outcome {
    let z = zoo_instances()?;
    for (name, inst) in &z {
        ensure(check_convolution_antipode(&inst.hopf).passed(), || {
            format!("{name}: convolution inverse differs from S")
        })?;
    }
    Ok(format!(
        "convolution inverse of the identity equals S on {} instances",
        z.len()
    ))
}

/// The failing check ids of a report.
fn failing(r: &Report) -> Vec<String> {
    r.checks
        .iter()
        .filter(|c| matches!(c.status, Status::Fail | Status::Violation))
        .map(|c| c.id.clone())
        .collect()
}

fn forced_failures() -> Outcome {
    let mut groups = Vec::new();
    for (name, stage, check, inst) in tampered().map_err(|e| e.to_string())? {
        let ver = verify(&inst);
        ensure(ver.failed_stage.map(|s| s.name()) == Some(stage), || {
            format!("{name}: failed at {:?}", ver.failed_stage)
        })?;
        let bad = failing(&ver.report);
        ensure(bad == [check], || format!("{name}: failing checks {bad:?}"))?;
        groups.push(stage.to_string());
    }

    // Comodule axioms on the verified Sweedler algebra.
    let h = sweedler(q()).map_err(|e| e.to_string())?;
    let mut rho = PiComodule::regular(&h).maps().to_vec();
    rho[0].set(2, 2, s(1));
    let m = PiComodule::new(&h, vec![4], rho).map_err(|e| e.to_string())?;
    let bad = failing(&verify_comodule(&h, &m));
    ensure(bad == ["comodule.coassociativity"], || {
        format!("comodule: {bad:?}")
    })?;
    groups.push("comodule".into());

    // Trace axioms, each broken alone on a verified crossed instance.
    let s3 = FiniteGroup::symmetric3();
    let t = (0..6).position(|a| s3.element_order(a) == 2).unwrap();
    let indicator =
        |n: usize| -> Vec<Scalar> { (0..n).map(|i| if i == t { s(1) } else { s(0) }).collect() };
    let ks3 = group_algebra(q(), &s3);
    let ts3 = trivial_instance(q(), &s3);
    let (kz3, _) = hopfpi::instances::constant_z3_trivial(q()).map_err(|e| e.to_string())?;
    let rotation = vec![s(0), s(1), s(0)];
    let cases = [
        ("trace.symmetric", ks3.clone(), vec![indicator(6)]),
        (
            "trace.antipode-invariant",
            kz3.clone(),
            vec![rotation.clone(), rotation],
        ),
        (
            "trace.crossing-invariant",
            ts3.clone(),
            (0..6).map(|a| vec![indicator(6)[a].clone()]).collect(),
        ),
    ];
    for (id, h, tr) in cases {
        ensure(verify(&Instance::plain(h.clone())).passed(), || {
            format!("{id}: base instance fails")
        })?;
        let phi = Crossing::trivial(&h).map_err(|e| e.to_string())?;
        let tr = PiTrace::new(&h, tr).map_err(|e| e.to_string())?;
        let bad = failing(&verify_trace(&h, &phi, &tr));
        ensure(bad == [id], || format!("{id}: failing checks {bad:?}"))?;
    }
    groups.push("trace".into());
    Ok(format!(
        "each group fails alone at its own check: {}",
        groups.join(", ")
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("integral uniqueness", integral_uniqueness),
        (
            "antipode bijectivity and order bound",
            antipode_bijectivity_and_order,
        ),
        ("integral trace identities", integral_identities),
        ("quasitriangular suite", quasitriangular_suite),
        ("distinguished grouplike from R", g_from_r_matrix),
        ("fundamental theorem of Hopf π-comodules", decomposition),
        ("integral-coinvariant correspondence", integral_coinvariants),
        ("semisimplicity classifications", classifications),
        ("canonical trace", canonical_traces),
        (
            "convolution characterization of the antipode",
            convolution_antipode,
        ),
        ("forced-failure coverage", forced_failures),
    ];
    let mut all = true;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("[PRIMARY {:>2}] PASS  {name}: {detail}", i + 1),
            Err(why) => {
                all = false;
                println!("[PRIMARY {:>2}] FAIL  {name}: {why}", i + 1);
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
