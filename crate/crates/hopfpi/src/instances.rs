//! Builders for the instances every test runs against.
//!
//! Sweedler's algebra `H₄` uses the basis `{1, g, x, gx}` in that order. The
//! basis vector `g^a x^b` has index `a + 2b`.

use crate::crossed::{Crossing, RMatrix};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::format::Instance;
use crate::group::FiniteGroup;
use crate::hopf::{verify_all, GradedVector, HopfParts, HopfPiData};
use crate::linalg::{
    apply_kron, basis_vector, kron_vectors, zero_vector, Bilinear, LinearMap, Vector,
};

fn trivial_group() -> FiniteGroup {
    FiniteGroup::cyclic(1)
}

fn one_dim(field: Field) -> (Bilinear, Vector) {
    (
        Bilinear::from_constants(field, 1, 1, 1, &[field.one()]).expect("1x1x1"),
        vec![field.one()],
    )
}

fn empty_mult(field: Field) -> Bilinear {
    Bilinear::from_constants(field, 0, 0, 0, &[]).expect("empty")
}

/// The family `T(π)` restricted to a subgroup: `H_α = k` on the subgroup and
/// zero elsewhere, with every structure map the identity of `k`.
pub fn supported_on(field: Field, group: &FiniteGroup, support: &[usize]) -> HopfPiData {
    let n = group.order();
    let dims: Vec<usize> = (0..n).map(|a| usize::from(support.contains(&a))).collect();
    let (m1, u1) = one_dim(field);
    let mult = dims
        .iter()
        .map(|&d| {
            if d == 1 {
                m1.clone()
            } else {
                empty_mult(field)
            }
        })
        .collect();
    let unit = dims
        .iter()
        .map(|&d| if d == 1 { u1.clone() } else { vec![] })
        .collect();
    let comul = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .map(|(a, b)| {
            let rows = dims[a] * dims[b];
            let cols = dims[group.mul(a, b)];
            if rows == 1 && cols == 1 {
                LinearMap::identity(field, 1)
            } else {
                LinearMap::zeros(field, rows, cols)
            }
        })
        .collect();
    let antipode = (0..n)
        .map(|a| {
            let (r, c) = (dims[group.inv(a)], dims[a]);
            if r == 1 && c == 1 {
                LinearMap::identity(field, 1)
            } else {
                LinearMap::zeros(field, r, c)
            }
        })
        .collect();
    HopfPiData::from_parts(HopfParts {
        group: group.clone(),
        field,
        counit: vec![field.one()],
        dims,
        mult,
        unit,
        comul,
        antipode,
    })
    .expect("support builder shapes")
}

/// `T(π)`: every `H_α = k` and every structure map the identity.
pub fn trivial_instance(field: Field, group: &FiniteGroup) -> HopfPiData {
    let all: Vec<usize> = group.elements().collect();
    supported_on(field, group, &all)
}

/// Over `π`, the family with `H_1 = k` and every other component zero.
pub fn identity_supported(field: Field, group: &FiniteGroup) -> HopfPiData {
    supported_on(field, group, &[group.identity()])
}

/// Over `Z/4`, the family supported on the subgroup `{0, 2}`.
pub fn z4_supported_on_z2(field: Field) -> HopfPiData {
    supported_on(field, &FiniteGroup::cyclic(4), &[0, 2])
}

fn single(
    field: Field,
    dim: usize,
    mult: Bilinear,
    unit: Vector,
    comul: LinearMap,
    counit: Vector,
    antipode: LinearMap,
) -> HopfPiData {
    HopfPiData::from_parts(HopfParts {
        group: trivial_group(),
        field,
        dims: vec![dim],
        mult: vec![mult],
        unit: vec![unit],
        comul: vec![comul],
        counit,
        antipode: vec![antipode],
    })
    .expect("single component shapes")
}

/// The group algebra `k[G]` over the trivial grading group.
pub fn group_algebra(field: Field, g: &FiniteGroup) -> HopfPiData {
    let n = g.order();
    let mut c = vec![field.zero(); n * n * n];
    for a in 0..n {
        for b in 0..n {
            c[(g.mul(a, b) * n + a) * n + b] = field.one();
        }
    }
    let mult = Bilinear::from_constants(field, n, n, n, &c).expect("shape");
    let comul = LinearMap::from_fn(field, n * n, n, |r, a| {
        if r == a * n + a {
            field.one()
        } else {
            field.zero()
        }
    });
    let antipode = LinearMap::from_fn(field, n, n, |b, a| {
        if b == g.inv(a) {
            field.one()
        } else {
            field.zero()
        }
    });
    single(
        field,
        n,
        mult,
        basis_vector(field, n, g.identity()),
        comul,
        vec![field.one(); n],
        antipode,
    )
}

/// The algebra of functions `k^G` with the dual basis `δ_a`, over the
/// trivial grading group.
pub fn function_algebra(field: Field, g: &FiniteGroup) -> HopfPiData {
    let n = g.order();
    let mut c = vec![field.zero(); n * n * n];
    for a in 0..n {
        c[(a * n + a) * n + a] = field.one();
    }
    let mult = Bilinear::from_constants(field, n, n, n, &c).expect("shape");
    let comul = LinearMap::from_fn(field, n * n, n, |r, a| {
        if g.mul(r / n, r % n) == a {
            field.one()
        } else {
            field.zero()
        }
    });
    let antipode = LinearMap::from_fn(field, n, n, |b, a| {
        if b == g.inv(a) {
            field.one()
        } else {
            field.zero()
        }
    });
    single(
        field,
        n,
        mult,
        vec![field.one(); n],
        comul,
        basis_vector(field, n, g.identity()),
        antipode,
    )
}

/// Sweedler's four-dimensional Hopf algebra: `g² = 1`, `x² = 0`, `xg = -gx`,
/// `Δ(g) = g⊗g`, `Δ(x) = x⊗1 + g⊗x`, `S(g) = g`, `S(x) = -gx`.
pub fn sweedler(field: Field) -> Result<HopfPiData> {
    if field.characteristic() == 2 {
        return Err(Error::Field(
            "Sweedler's algebra needs characteristic other than 2".into(),
        ));
    }
    let idx = |a: usize, b: usize| a + 2 * b;
    let mut c = vec![field.zero(); 64];
    for a in 0..2 {
        for b in 0..2 {
            for cc in 0..2 {
                for d in 0..2 {
                    if b + d >= 2 {
                        continue;
                    }
                    // g^a x^b g^c x^d = (-1)^{bc} g^{a+c} x^{b+d}
                    let sign = if b * cc == 1 { -1 } else { 1 };
                    let out = idx((a + cc) % 2, b + d);
                    c[(out * 4 + idx(a, b)) * 4 + idx(cc, d)] = field.from_i64(sign);
                }
            }
        }
    }
    let mult = Bilinear::from_constants(field, 4, 4, 4, &c)?;
    let mut comul = LinearMap::zeros(field, 16, 4);
    let one = field.one();
    comul.set(0, 0, one.clone()); // 1 ↦ 1⊗1
    comul.set(4 + 1, 1, one.clone()); // g ↦ g⊗g
    comul.set(2 * 4, 2, one.clone()); // x ↦ x⊗1 + g⊗x
    comul.set(4 + 2, 2, one.clone());
    comul.set(3 * 4 + 1, 3, one.clone()); // gx ↦ gx⊗g + 1⊗gx
    comul.set(3, 3, one.clone());
    let mut antipode = LinearMap::identity(field, 4);
    antipode.set(2, 2, field.zero());
    antipode.set(3, 3, field.zero());
    antipode.set(3, 2, field.from_i64(-1)); // S(x) = -gx
    antipode.set(2, 3, one.clone()); // S(gx) = x
    let counit = vec![one.clone(), one, field.zero(), field.zero()];
    Ok(single(
        field,
        4,
        mult,
        basis_vector(field, 4, 0),
        comul,
        counit,
        antipode,
    ))
}

/// The element `R_λ = ½(1⊗1 + 1⊗g + g⊗1 − g⊗g) + (λ/2)(x⊗x − x⊗gx + gx⊗gx + gx⊗x)`
/// of `H₄ ⊗ H₄`.
pub fn sweedler_r(field: Field, lambda: &Scalar) -> Result<Vector> {
    let half = field
        .fraction(1, 2)
        .ok_or_else(|| Error::Field("characteristic 2 has no 1/2".into()))?;
    let hl = &half * lambda;
    let mut r = zero_vector(field, 16);
    let at = |i: usize, j: usize| i * 4 + j;
    r[at(0, 0)] = half.clone();
    r[at(0, 1)] = half.clone();
    r[at(1, 0)] = half.clone();
    r[at(1, 1)] = -&half;
    r[at(2, 2)] = hl.clone();
    r[at(2, 3)] = -&hl;
    r[at(3, 3)] = hl.clone();
    r[at(3, 2)] = hl.clone();
    Ok(r)
}

/// Checks that a map is a Hopf algebra automorphism of a one-component instance.
fn check_automorphism(a: &HopfPiData, phi: &LinearMap) -> Result<()> {
    let k = a.field();
    let d = a.dim(0);
    let reject = |what: &str| {
        Err(Error::Precondition(format!(
            "action is not a Hopf automorphism: {what}"
        )))
    };
    if (phi.rows(), phi.cols()) != (d, d) || phi.inverse().is_none() {
        return reject("not an invertible endomorphism");
    }
    if phi.apply(a.unit(0)) != *a.unit(0) {
        return reject("unit not preserved");
    }
    if phi.pull_back(a.counit()) != *a.counit() {
        return reject("counit not preserved");
    }
    for i in 0..d {
        let pi = phi.column(i);
        for j in 0..d {
            let lhs = phi.apply(&a.product(0, &a.basis(0, i), &a.basis(0, j)));
            if lhs != a.product(0, &pi, &phi.column(j)) {
                return reject("not multiplicative");
            }
        }
        let lhs = a.comul(0, 0).apply(&pi);
        let rhs = apply_kron(k, &[phi, phi], &a.comul(0, 0).column(i));
        if lhs != rhs {
            return reject("not comultiplicative");
        }
    }
    Ok(())
}

/// The constant family `C(A, π)` with `H_α = A`, together with the crossing
/// `φ_β|H_α = action(β)` (identity maps when no action is given).
///
/// The action must be a group morphism `π → Aut(A)` by Hopf automorphisms.
pub fn constant_family(
    a: &HopfPiData,
    group: &FiniteGroup,
    action: Option<&[LinearMap]>,
) -> Result<(HopfPiData, Crossing)> {
    if a.order() != 1 {
        return Err(Error::Precondition(
            "the base must have trivial grading group".into(),
        ));
    }
    let base = verify_all(a);
    if !base.passed() {
        return Err(Error::Precondition("the base is not a Hopf algebra".into()));
    }
    let d = a.dim(0);
    let k = a.field();
    let maps: Vec<LinearMap> = match action {
        Some(m) => m.to_vec(),
        None => vec![LinearMap::identity(k, d); group.order()],
    };
    if maps.len() != group.order() {
        return Err(Error::Shape(format!(
            "{} action maps for a group of order {}",
            maps.len(),
            group.order()
        )));
    }
    for phi in &maps {
        check_automorphism(a, phi)?;
    }
    for b in group.elements() {
        for c in group.elements() {
            if maps[group.mul(b, c)] != maps[b].compose(&maps[c]) {
                return Err(Error::Precondition(format!(
                    "action is not a group morphism at ({b}, {c})"
                )));
            }
        }
    }
    Ok(constant_family_unchecked(a, group, &maps))
}

/// The constant family with the given action, without validating the action.
/// Used to build forced-failure fixtures.
pub fn constant_family_unchecked(
    a: &HopfPiData,
    group: &FiniteGroup,
    action: &[LinearMap],
) -> (HopfPiData, Crossing) {
    let n = group.order();
    let h = HopfPiData::from_parts(HopfParts {
        group: group.clone(),
        field: a.field(),
        dims: vec![a.dim(0); n],
        mult: vec![a.mult(0).clone(); n],
        unit: vec![a.unit(0).clone(); n],
        comul: vec![a.comul(0, 0).clone(); n * n],
        counit: a.counit().clone(),
        antipode: vec![a.antipode(0).clone(); n],
    })
    .expect("constant family shapes");
    let maps = (0..n)
        .flat_map(|b| (0..n).map(move |_| b))
        .map(|b| action[b].clone())
        .collect();
    let crossing = Crossing::new(&h, maps).expect("constant crossing shapes");
    (h, crossing)
}

/// `C(H₄, Z/2)` with the trivial crossing.
pub fn constant_sweedler_z2(field: Field) -> Result<(HopfPiData, Crossing)> {
    constant_family(&sweedler(field)?, &FiniteGroup::cyclic(2), None)
}

/// The automorphism of `k[Z/m]` induced by `g ↦ g^e`.
pub fn power_automorphism(field: Field, m: usize, e: usize) -> LinearMap {
    LinearMap::from_fn(field, m, m, |r, c| {
        if r == (c * e) % m {
            field.one()
        } else {
            field.zero()
        }
    })
}

/// `C(k[Z/3], Z/2)` with `Z/2` acting by the inversion `g ↦ g⁻¹`.
pub fn constant_z3_inversion(field: Field) -> Result<(HopfPiData, Crossing)> {
    let z3 = FiniteGroup::cyclic(3);
    let action = [
        LinearMap::identity(field, 3),
        power_automorphism(field, 3, 2),
    ];
    constant_family(
        &group_algebra(field, &z3),
        &FiniteGroup::cyclic(2),
        Some(&action),
    )
}

/// `C(k[Z/3], Z/2)` with the trivial crossing.
pub fn constant_z3_trivial(field: Field) -> Result<(HopfPiData, Crossing)> {
    constant_family(
        &group_algebra(field, &FiniteGroup::cyclic(3)),
        &FiniteGroup::cyclic(2),
        None,
    )
}

/// The R-matrix `1⊗1` in every slot of a family whose components are all `k`
/// or zero.
pub fn trivial_r(h: &HopfPiData) -> Result<RMatrix> {
    let n = h.order();
    let entries = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .map(|(a, b)| kron_vectors(h.field(), h.unit(a), h.unit(b)))
        .collect();
    RMatrix::new(h, entries)
}

/// The twist `θ_α = 1_α`.
pub fn unit_twist(h: &HopfPiData) -> Vec<Vector> {
    h.unit_family()
}

/// Forced failure: `T(Z/2)` with `ε(1) = 2`, breaking only the counit axiom.
pub fn broken_counit(field: Field) -> HopfPiData {
    let mut p = trivial_instance(field, &FiniteGroup::cyclic(2)).to_parts();
    p.counit = vec![field.from_i64(2)];
    HopfPiData::from_parts(p).expect("same shapes")
}

/// Forced failure: Sweedler's algebra with `S(x) = +gx`.
pub fn broken_antipode(field: Field) -> Result<HopfPiData> {
    let mut p = sweedler(field)?.to_parts();
    p.antipode[0].set(3, 2, field.one());
    HopfPiData::from_parts(p)
}

/// Forced failure: `C(k[Z/5], Z/2)` where the nontrivial element acts by
/// `g ↦ g²`. Each map is a Hopf automorphism but `φ_a φ_a ≠ φ_1`.
pub fn broken_crossing(field: Field) -> (HopfPiData, Crossing) {
    let z5 = FiniteGroup::cyclic(5);
    let action = [
        LinearMap::identity(field, 5),
        power_automorphism(field, 5, 2),
    ];
    constant_family_unchecked(&group_algebra(field, &z5), &FiniteGroup::cyclic(2), &action)
}

/// `T(π)` with the trivial crossing, `R = 1⊗1` and `θ = 1`.
pub fn trivial_ribbon(field: Field, group: &FiniteGroup) -> Result<Instance> {
    let h = trivial_instance(field, group);
    let crossing = Crossing::trivial(&h)?;
    let rmatrix = trivial_r(&h)?;
    let twist = unit_twist(&h);
    Ok(Instance {
        crossing: Some(crossing),
        rmatrix: Some(rmatrix),
        twist: Some(twist),
        ..Instance::plain(h)
    })
}

/// `C(H₄, Z/2)` with the trivial crossing, Sweedler's `R_λ` in every slot
/// and, when given, a twist.
pub fn sweedler_z2_decorated(
    field: Field,
    lambda: &Scalar,
    twist: Option<GradedVector>,
) -> Result<Instance> {
    let (h, crossing) = constant_sweedler_z2(field)?;
    let rmatrix = RMatrix::constant(&h, &sweedler_r(field, lambda)?)?;
    Ok(Instance {
        crossing: Some(crossing),
        rmatrix: Some(rmatrix),
        twist,
        ..Instance::plain(h)
    })
}

/// `C(k[Z/3], Z/2)` with the trivial crossing, `R = 1⊗1` and `θ = 1`.
pub fn z3_trivial_ribbon(field: Field) -> Result<Instance> {
    let (h, crossing) = constant_z3_trivial(field)?;
    let rmatrix = trivial_r(&h)?;
    let twist = unit_twist(&h);
    Ok(Instance {
        crossing: Some(crossing),
        rmatrix: Some(rmatrix),
        twist: Some(twist),
        ..Instance::plain(h)
    })
}

/// The named instances shipped as golden files. Every one verifies.
pub fn zoo() -> Result<Vec<(&'static str, Instance)>> {
    let q = Field::Rational;
    let gf3 = Field::prime(3)?;
    let z2 = FiniteGroup::cyclic(2);
    let z3 = FiniteGroup::cyclic(3);
    let (z3_inv, inversion) = constant_z3_inversion(q)?;
    let theta_sweedler = vec![sweedler_unit(q); 2];
    Ok(vec![
        (
            "trivial_1",
            Instance::plain(trivial_instance(q, &trivial_group())),
        ),
        ("trivial_z2", trivial_ribbon(q, &z2)?),
        ("trivial_s3", trivial_ribbon(q, &FiniteGroup::symmetric3())?),
        ("sweedler", Instance::plain(sweedler(q)?)),
        (
            "sweedler_z2_ribbon",
            sweedler_z2_decorated(q, &q.zero(), Some(theta_sweedler))?,
        ),
        ("sweedler_z2_r1", sweedler_z2_decorated(q, &q.one(), None)?),
        ("z3_z2_ribbon", z3_trivial_ribbon(q)?),
        (
            "z3_z2_inversion",
            Instance {
                crossing: Some(inversion),
                ..Instance::plain(z3_inv)
            },
        ),
        ("kz3_rational", Instance::plain(group_algebra(q, &z3))),
        ("kz3_gf3", Instance::plain(group_algebra(gf3, &z3))),
        ("z4_on_z2", Instance::plain(z4_supported_on_z2(q))),
    ])
}

fn sweedler_unit(field: Field) -> Vector {
    basis_vector(field, 4, 0)
}

/// Tampered instances shipped as golden files, each failing exactly one
/// check of one layer: `(name, failing layer, failing check)`.
pub fn tampered() -> Result<Vec<(&'static str, &'static str, &'static str, Instance)>> {
    let q = Field::Rational;
    let (bc, bphi) = broken_crossing(q);
    // `1⊗1` satisfies both comultiplication identities but Sweedler's algebra
    // is not cocommutative.
    let mut bad_r = sweedler_z2_decorated(q, &q.zero(), None)?;
    bad_r.rmatrix = Some(trivial_r(&bad_r.hopf)?);
    // θ_α = -1 breaks only the coproduct identity, since (-1)⊗(-1) = 1⊗1.
    let minus_one = vec![vec![q.from_i64(-1), q.zero(), q.zero(), q.zero()]; 2];
    let bad_twist = sweedler_z2_decorated(q, &q.zero(), Some(minus_one))?;
    Ok(vec![
        (
            "broken_counit",
            "coalgebra",
            "coalgebra.counit",
            Instance::plain(broken_counit(q)),
        ),
        (
            "broken_antipode",
            "hopf",
            "antipode.axiom",
            Instance::plain(broken_antipode(q)?),
        ),
        (
            "broken_crossing",
            "crossing",
            "crossing.action",
            Instance {
                crossing: Some(bphi),
                ..Instance::plain(bc)
            },
        ),
        ("broken_braiding", "rmatrix", "rmatrix.braiding", bad_r),
        ("broken_twist", "twist", "twist.coproduct", bad_twist),
    ])
}
