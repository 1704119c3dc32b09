//! Crossings, R-matrices, Drinfeld elements and twists.
//!
//! A crossing is stored as one matrix per pair `(β, α)`: the restriction
//! `φ_β|H_α: H_α → H_{βαβ⁻¹}`. An R-matrix family stores `R_{α,β}` as a flat
//! tensor in `H_α ⊗ H_β`. Inverses of `R_{α,β}` are always computed in the
//! algebra `H_α ⊗ H_β`, never taken from input.
//!
//! Tensors use the index `i·d_β + j` for `e_i ⊗ e_j`. For `r ∈ P ⊗ Q`, the
//! insertions `r_{12γ} = r⊗1_γ`, `r_{α23} = 1_α⊗r` and `r_{1β3}` (unit in the
//! middle slot) are provided by [`insert_last`], [`insert_first`] and
//! [`insert_between`].

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::hopf::{
    all_pairs, all_triples, check_grouplike, coopposite, par_outcomes, witness, witness2,
    GradedVector, HopfParts, HopfPiData,
};
use crate::integrals::{check_bijective_antipode, double_antipode, Distinguished};
use crate::linalg::{
    algebra_inverse, apply_kron, contract_right, flip_vector, insert_middle, kron_vectors,
    scale_vector, Bilinear, LinearMap, Vector,
};
use crate::report::{compare, Check, Failure, Kind, Report};

/// The maps `φ_β|H_α: H_α → H_{βαβ⁻¹}`, indexed by `β·n + α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    n: usize,
    maps: Vec<LinearMap>,
}

impl Crossing {
    /// Checks the number and shapes of the maps.
    pub fn new(h: &HopfPiData, maps: Vec<LinearMap>) -> Result<Self> {
        let n = h.order();
        let g = h.group();
        if maps.len() != n * n {
            return Err(Error::Shape(format!(
                "a crossing over a group of order {n} needs {} maps, got {}",
                n * n,
                maps.len()
            )));
        }
        for b in 0..n {
            for a in 0..n {
                let m = &maps[b * n + a];
                let (rows, cols) = (h.dim(g.conjugate(b, a)), h.dim(a));
                if m.rows() != rows || m.cols() != cols {
                    return Err(Error::Shape(format!(
                        "φ_{b} on H_{a} has shape {}x{}, expected {rows}x{cols}",
                        m.rows(),
                        m.cols()
                    )));
                }
            }
        }
        Ok(Crossing { n, maps })
    }

    /// Identity matrices in every slot. Fails when some `H_α` and
    /// `H_{βαβ⁻¹}` differ in dimension.
    pub fn trivial(h: &HopfPiData) -> Result<Self> {
        let n = h.order();
        let maps = (0..n)
            .flat_map(|_| (0..n).map(|a| LinearMap::identity(h.field(), h.dim(a))))
            .collect();
        Crossing::new(h, maps)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// `φ_β|H_α`.
    pub fn map(&self, beta: usize, alpha: usize) -> &LinearMap {
        &self.maps[beta * self.n + alpha]
    }

    pub fn maps(&self) -> &[LinearMap] {
        &self.maps
    }
}

/// The family `R_{α,β} ∈ H_α ⊗ H_β`, indexed by `α·n + β`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMatrix {
    n: usize,
    entries: Vec<Vector>,
}

impl RMatrix {
    /// Checks the number and lengths of the entries.
    pub fn new(h: &HopfPiData, entries: Vec<Vector>) -> Result<Self> {
        let n = h.order();
        if entries.len() != n * n {
            return Err(Error::Shape(format!(
                "an R-matrix over a group of order {n} needs {} entries, got {}",
                n * n,
                entries.len()
            )));
        }
        for (a, b) in all_pairs(n) {
            let len = entries[a * n + b].len();
            let expected = h.dim(a) * h.dim(b);
            if len != expected {
                return Err(Error::Shape(format!(
                    "R_{{{a},{b}}} has length {len}, expected {expected}"
                )));
            }
        }
        Ok(RMatrix { n, entries })
    }

    /// The same tensor in every slot of a constant family.
    pub fn constant(h: &HopfPiData, r: &[Scalar]) -> Result<Self> {
        let n = h.order();
        RMatrix::new(h, vec![r.to_vec(); n * n])
    }

    pub fn get(&self, a: usize, b: usize) -> &Vector {
        &self.entries[a * self.n + b]
    }

    pub fn entries(&self) -> &[Vector] {
        &self.entries
    }
}

/// A crossed Hopf π-coalgebra with optional R-matrix and twist.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decorated {
    pub hopf: HopfPiData,
    pub crossing: Crossing,
    pub rmatrix: Option<RMatrix>,
    pub twist: Option<GradedVector>,
}

/// `r ⊗ 1_γ`.
pub fn insert_last(h: &HopfPiData, r: &[Scalar], c: usize) -> Vector {
    kron_vectors(h.field(), r, h.unit(c))
}

/// `1_α ⊗ r`.
pub fn insert_first(h: &HopfPiData, a: usize, r: &[Scalar]) -> Vector {
    kron_vectors(h.field(), h.unit(a), r)
}

/// `Σ p_j ⊗ 1_β ⊗ q_j` for `r = Σ p_j ⊗ q_j ∈ H_α ⊗ H_γ`.
pub fn insert_between(h: &HopfPiData, r: &[Scalar], a: usize, b: usize, c: usize) -> Vector {
    insert_middle(h.field(), r, h.dim(a), h.unit(b), h.dim(c))
}

fn triple_mult(h: &HopfPiData, a: usize, b: usize, c: usize) -> Bilinear {
    h.tensor_mult(a, b).tensor(h.mult(c))
}

fn id(h: &HopfPiData, a: usize) -> LinearMap {
    LinearMap::identity(h.field(), h.dim(a))
}

fn invert_in(h: &HopfPiData, a: usize, x: &[Scalar]) -> Option<Vector> {
    algebra_inverse(h.mult(a), h.unit(a), x)
}

fn comps(h: &HopfPiData) -> Vec<usize> {
    (0..h.order()).collect()
}

/// Verifies the crossing axioms and, when they hold, the derived facts
/// `φ_1 = id`, `φ_β⁻¹ = φ_{β⁻¹}` and `φ_βS_α = S_{βαβ⁻¹}φ_β`.
pub fn verify_crossing(h: &HopfPiData, phi: &Crossing) -> Report {
    let k = h.field();
    let g = h.group();
    let pairs = all_pairs(h.order());
    let mut r = Report::new();

    r.push(Check::from_outcomes(
        "crossing.bijective",
        "each φ_β|H_α is bijective",
        Kind::Axiom,
        pairs
            .iter()
            .map(|&(b, a)| {
                let m = phi.map(b, a);
                m.inverse().is_none().then(|| {
                    Failure::described(
                        &[b, a],
                        "φ_β|H_α",
                        format!("rank {}", m.rank()),
                        "invertible",
                    )
                })
            })
            .collect::<Vec<_>>(),
    ));
    r.push(Check::from_outcomes(
        "crossing.multiplicative",
        "φ_β(xy) = φ_β(x)φ_β(y)",
        Kind::Axiom,
        par_outcomes(&pairs, |&(b, a)| {
            let m = phi.map(b, a);
            let t = g.conjugate(b, a);
            let n = h.dim(a);
            let images: Vec<Vector> = (0..n).map(|i| m.column(i)).collect();
            let mut out = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in 0..n {
                    let lhs = m.apply(&h.product(a, &h.basis(a, i), &h.basis(a, j)));
                    let rhs = h.product(t, &images[i], &images[j]);
                    out.push(compare(&[b, a], || witness2(i, j), &lhs, &rhs));
                }
            }
            out
        }),
    ));
    r.push(Check::from_outcomes(
        "crossing.unital",
        "φ_β(1_α) = 1_{βαβ⁻¹}",
        Kind::Axiom,
        pairs
            .iter()
            .map(|&(b, a)| {
                compare(
                    &[b, a],
                    || "1_α".into(),
                    &phi.map(b, a).apply(h.unit(a)),
                    h.unit(g.conjugate(b, a)),
                )
            })
            .collect::<Vec<_>>(),
    ));
    let triples = all_triples(h.order());
    r.push(Check::from_outcomes(
        "crossing.comultiplication",
        "(φ_β⊗φ_β)Δ_{α,γ} = Δ_{βαβ⁻¹,βγβ⁻¹}φ_β",
        Kind::Axiom,
        par_outcomes(&triples, |&(b, a, c)| {
            let ac = g.mul(a, c);
            let (ta, tc) = (g.conjugate(b, a), g.conjugate(b, c));
            (0..h.dim(ac))
                .map(|x| {
                    let lhs =
                        apply_kron(k, &[phi.map(b, a), phi.map(b, c)], &h.comul(a, c).column(x));
                    let rhs = h.comul(ta, tc).apply(&phi.map(b, ac).column(x));
                    compare(&[b, a, c], || witness(x), &lhs, &rhs)
                })
                .collect()
        }),
    ));
    let one = g.identity();
    r.push(Check::from_outcomes(
        "crossing.counit",
        "εφ_β = ε",
        Kind::Axiom,
        (0..h.order())
            .map(|b| {
                compare(
                    &[b],
                    || "ε".into(),
                    &phi.map(b, one).pull_back(h.counit()),
                    h.counit(),
                )
            })
            .collect::<Vec<_>>(),
    ));
    r.push(Check::from_outcomes(
        "crossing.action",
        "φ_{ββ'} = φ_βφ_{β'}",
        Kind::Axiom,
        par_outcomes(&triples, |&(b, b2, a)| {
            let lhs = phi.map(g.mul(b, b2), a);
            let rhs = phi.map(b, g.conjugate(b2, a)).compose(phi.map(b2, a));
            vec![lhs
                .first_mismatch_column(&rhs)
                .map(|x| Failure::new(&[b, b2, a], witness(x), &lhs.column(x), &rhs.column(x)))]
        }),
    ));

    let axioms_hold = r.passed();
    let derived = [
        ("crossing.identity", "φ_1|H_α = id"),
        ("crossing.inverse", "φ_β⁻¹ = φ_{β⁻¹}"),
        ("crossing.antipode", "φ_βS_α = S_{βαβ⁻¹}φ_β"),
    ];
    if !axioms_hold {
        for (cid, st) in derived {
            r.push(Check::refused(cid, st, "the crossing axioms do not hold"));
        }
        return r;
    }
    r.push(Check::from_outcomes(
        derived[0].0,
        derived[0].1,
        Kind::Theorem,
        (0..h.order())
            .map(|a| {
                let m = phi.map(one, a);
                (!m.is_identity())
                    .then(|| Failure::described(&[a], "φ_1|H_α", "not the identity", "id"))
            })
            .collect::<Vec<_>>(),
    ));
    r.push(Check::from_outcomes(
        derived[1].0,
        derived[1].1,
        Kind::Theorem,
        pairs
            .iter()
            .map(|&(b, a)| {
                let back = phi.map(g.inv(b), g.conjugate(b, a)).compose(phi.map(b, a));
                (!back.is_identity())
                    .then(|| Failure::described(&[b, a], "φ_{β⁻¹}φ_β", "not the identity", "id"))
            })
            .collect::<Vec<_>>(),
    ));
    r.push(Check::from_outcomes(
        derived[2].0,
        derived[2].1,
        Kind::Theorem,
        par_outcomes(&pairs, |&(b, a)| {
            let lhs = phi.map(b, g.inv(a)).compose(h.antipode(a));
            let rhs = h.antipode(g.conjugate(b, a)).compose(phi.map(b, a));
            vec![lhs
                .first_mismatch_column(&rhs)
                .map(|x| Failure::new(&[b, a], witness(x), &lhs.column(x), &rhs.column(x)))]
        }),
    ));
    r
}

/// The scalars `φ̂(β)` with `λ_{βαβ⁻¹}φ_β = φ̂(β)λ_α`, read off at `α = 1`.
pub fn phi_hat_from(h: &HopfPiData, phi: &Crossing, lam: &[Vector]) -> Result<Vec<Scalar>> {
    let one = h.group().identity();
    let l1 = &lam[one];
    let p = l1
        .iter()
        .position(|c| !c.is_zero())
        .ok_or_else(|| Error::Precondition("the integral vanishes on H_1".into()))?;
    let pivot = l1[p].inv().expect("nonzero");
    Ok((0..h.order())
        .map(|b| &phi.map(b, one).pull_back(l1)[p] * &pivot)
        .collect())
}

/// `φ̂` computed from the left π-integral.
pub fn phi_hat(h: &HopfPiData, phi: &Crossing, d: &Distinguished) -> Result<Vec<Scalar>> {
    phi_hat_from(h, phi, &d.lambda_left)
}

/// Verifies that `φ̂` scales both integrals at every `α`, is a homomorphism
/// into `k*`, and is the same for left and right integrals.
pub fn check_phi_hat(h: &HopfPiData, phi: &Crossing, d: &Distinguished, hat: &[Scalar]) -> Report {
    let g = h.group();
    let pairs = all_pairs(h.order());
    let mut r = Report::new();
    let mut scaling = Vec::new();
    for lam in [&d.lambda_left, &d.lambda_right] {
        for &(b, a) in &pairs {
            let lhs = phi.map(b, a).pull_back(&lam[g.conjugate(b, a)]);
            let rhs = scale_vector(&hat[b], &lam[a]);
            scaling.push(compare(&[b, a], || "λ".into(), &lhs, &rhs));
        }
    }
    r.push(Check::from_outcomes(
        "phi-hat.scaling",
        "λ_{βαβ⁻¹}φ_β = φ̂(β)λ_α for left and right λ",
        Kind::Theorem,
        scaling,
    ));
    let mut hom: Vec<Option<Failure>> = pairs
        .iter()
        .map(|&(b, c)| {
            compare(
                &[b, c],
                || "φ̂".into(),
                &[hat[g.mul(b, c)].clone()],
                &[&hat[b] * &hat[c]],
            )
        })
        .collect();
    hom.extend((0..h.order()).map(|b| {
        hat[b]
            .is_zero()
            .then(|| Failure::described(&[b], "φ̂(β)", "0", "nonzero"))
    }));
    r.push(Check::from_outcomes(
        "phi-hat.homomorphism",
        "φ̂(ββ') = φ̂(β)φ̂(β') ∈ k*",
        Kind::Theorem,
        hom,
    ));
    let sides = match phi_hat_from(h, phi, &d.lambda_right) {
        Ok(right) => vec![compare(&[], || "φ̂".into(), hat, &right)],
        Err(e) => vec![Some(Failure::described(
            &[],
            "right integral",
            e.to_string(),
            "nonzero on H_1",
        ))],
    };
    r.push(Check::from_outcomes(
        "phi-hat.sides-agree",
        "left and right integrals give the same φ̂",
        Kind::Theorem,
        sides,
    ));
    r
}

/// `φ_β(Λ) = φ̂(β)Λ` for integrals of `H_1`, `νφ_β = ν`, and `φ_β(g_α) = g_{βαβ⁻¹}`.
pub fn check_crossing_invariants(
    h: &HopfPiData,
    phi: &Crossing,
    d: &Distinguished,
    hat: &[Scalar],
) -> Report {
    let g = h.group();
    let one = g.identity();
    let mut r = Report::new();
    let mut lam = Vec::new();
    for big in [&d.big_lambda_left, &d.big_lambda_right] {
        for b in 0..h.order() {
            lam.push(compare(
                &[b],
                || "Λ".into(),
                &phi.map(b, one).apply(big),
                &scale_vector(&hat[b], big),
            ));
        }
    }
    r.push(Check::from_outcomes(
        "crossing.integral-scaling",
        "φ_β(Λ) = φ̂(β)Λ for left and right integrals Λ of H_1",
        Kind::Theorem,
        lam,
    ));
    r.push(Check::from_outcomes(
        "crossing.nu-invariance",
        "νφ_β = ν",
        Kind::Theorem,
        (0..h.order())
            .map(|b| {
                compare(
                    &[b],
                    || "ν".into(),
                    &phi.map(b, one).pull_back(&d.nu),
                    &d.nu,
                )
            })
            .collect::<Vec<_>>(),
    ));
    r.push(Check::from_outcomes(
        "crossing.distinguished-g",
        "φ_β(g_α) = g_{βαβ⁻¹}",
        Kind::Theorem,
        all_pairs(h.order())
            .into_iter()
            .map(|(b, a)| {
                compare(
                    &[b, a],
                    || "g_α".into(),
                    &phi.map(b, a).apply(&d.g[a]),
                    &d.g[g.conjugate(b, a)],
                )
            })
            .collect::<Vec<_>>(),
    ));
    r
}

/// Inverts every `R_{α,β}` in `H_α ⊗ H_β`.
pub fn r_inverse(h: &HopfPiData, r: &RMatrix) -> Result<RMatrix> {
    let k = h.field();
    let entries = all_pairs(h.order())
        .into_par_iter()
        .map(|(a, b)| {
            algebra_inverse(
                &h.tensor_mult(a, b),
                &kron_vectors(k, h.unit(a), h.unit(b)),
                r.get(a, b),
            )
            .ok_or_else(|| Error::NotInvertible(format!("R_{{{a},{b}}} is not invertible")))
        })
        .collect::<Result<Vec<_>>>()?;
    RMatrix::new(h, entries)
}

/// `σ_{β,α}(φ_{α⁻¹}⊗id)Δ_{αβα⁻¹,α}(x) ∈ H_α⊗H_β` for `x ∈ H_{αβ}`.
fn twisted_flip_comul(h: &HopfPiData, phi: &Crossing, a: usize, b: usize, x: &[Scalar]) -> Vector {
    let g = h.group();
    let c = g.conjugate(a, b);
    let v = apply_kron(
        h.field(),
        &[phi.map(g.inv(a), c), &id(h, a)],
        &h.comul(c, a).apply(x),
    );
    flip_vector(h.field(), &v, h.dim(b), h.dim(a))
}

/// Verifies the R-matrix axioms: invertibility, the braiding of `Δ`, both
/// comultiplication identities and crossing invariance. A claimed inverse,
/// when supplied, is compared with the computed one.
pub fn verify_r(
    h: &HopfPiData,
    phi: &Crossing,
    r: &RMatrix,
    claimed_inverse: Option<&RMatrix>,
) -> Report {
    let k = h.field();
    let g = h.group();
    let pairs = all_pairs(h.order());
    let triples = all_triples(h.order());
    let mut rep = Report::new();

    let inverses: Vec<Option<Vector>> = pairs
        .par_iter()
        .map(|&(a, b)| {
            algebra_inverse(
                &h.tensor_mult(a, b),
                &kron_vectors(k, h.unit(a), h.unit(b)),
                r.get(a, b),
            )
        })
        .collect();
    rep.push(Check::from_outcomes(
        "rmatrix.invertible",
        "R_{α,β} is invertible in H_α⊗H_β",
        Kind::Axiom,
        pairs
            .iter()
            .zip(&inverses)
            .map(|(&(a, b), inv)| {
                inv.is_none()
                    .then(|| Failure::described(&[a, b], "R_{α,β}", "not invertible", "invertible"))
            })
            .collect::<Vec<_>>(),
    ));
    if let Some(claimed) = claimed_inverse {
        rep.push(Check::from_outcomes(
            "rmatrix.claimed-inverse",
            "the supplied R⁻¹ equals the computed inverse",
            Kind::Axiom,
            pairs
                .iter()
                .zip(&inverses)
                .map(|(&(a, b), inv)| match inv {
                    Some(v) => compare(&[a, b], || "R⁻¹".into(), claimed.get(a, b), v),
                    None => Some(Failure::described(
                        &[a, b],
                        "R⁻¹",
                        "supplied",
                        "R is not invertible",
                    )),
                })
                .collect::<Vec<_>>(),
        ));
    }

    rep.push(Check::from_outcomes(
        "rmatrix.braiding",
        "R·Δ_{α,β}(x) = σ(φ_{α⁻¹}⊗id)Δ_{αβα⁻¹,α}(x)·R",
        Kind::Axiom,
        par_outcomes(&pairs, |&(a, b)| {
            let m = h.tensor_mult(a, b);
            let rr = r.get(a, b);
            (0..h.dim(g.mul(a, b)))
                .map(|x| {
                    let ex = h.basis(g.mul(a, b), x);
                    let lhs = m.product(rr, &h.comul(a, b).apply(&ex));
                    let rhs = m.product(&twisted_flip_comul(h, phi, a, b, &ex), rr);
                    compare(&[a, b], || witness(x), &lhs, &rhs)
                })
                .collect()
        }),
    ));
    rep.push(Check::from_outcomes(
        "rmatrix.comultiplication-second",
        "(id⊗Δ_{β,γ})(R_{α,βγ}) = (R_{α,γ})_{1β3}·(R_{α,β})_{12γ}",
        Kind::Axiom,
        par_outcomes(&triples, |&(a, b, c)| {
            let lhs = apply_kron(k, &[&id(h, a), h.comul(b, c)], r.get(a, g.mul(b, c)));
            let rhs = triple_mult(h, a, b, c).product(
                &insert_between(h, r.get(a, c), a, b, c),
                &insert_last(h, r.get(a, b), c),
            );
            vec![compare(&[a, b, c], || "R".into(), &lhs, &rhs)]
        }),
    ));
    rep.push(Check::from_outcomes(
        "rmatrix.comultiplication-first",
        "(Δ_{α,β}⊗id)(R_{αβ,γ}) = [(id⊗φ_{β⁻¹})(R_{α,βγβ⁻¹})]_{1β3}·(R_{β,γ})_{α23}",
        Kind::Axiom,
        par_outcomes(&triples, |&(a, b, c)| {
            let lhs = apply_kron(k, &[h.comul(a, b), &id(h, c)], r.get(g.mul(a, b), c));
            let bc = g.conjugate(b, c);
            let inner = apply_kron(k, &[&id(h, a), phi.map(g.inv(b), bc)], r.get(a, bc));
            let rhs = triple_mult(h, a, b, c).product(
                &insert_between(h, &inner, a, b, c),
                &insert_first(h, a, r.get(b, c)),
            );
            vec![compare(&[a, b, c], || "R".into(), &lhs, &rhs)]
        }),
    ));
    rep.push(Check::from_outcomes(
        "rmatrix.crossing-invariance",
        "(φ_β⊗φ_β)(R_{α,γ}) = R_{βαβ⁻¹,βγβ⁻¹}",
        Kind::Axiom,
        par_outcomes(&triples, |&(b, a, c)| {
            let lhs = apply_kron(k, &[phi.map(b, a), phi.map(b, c)], r.get(a, c));
            vec![compare(
                &[b, a, c],
                || "R".into(),
                &lhs,
                r.get(g.conjugate(b, a), g.conjugate(b, c)),
            )]
        }),
    ));
    rep
}

/// Counit contractions, antipode formulas for `R` and `R⁻¹`, and the
/// Yang–Baxter equality over all triples.
pub fn check_r_consequences(h: &HopfPiData, phi: &Crossing, r: &RMatrix) -> Report {
    let k = h.field();
    let g = h.group();
    let one = g.identity();
    let pairs = all_pairs(h.order());
    let mut rep = Report::new();

    let mut counit = Vec::new();
    for a in 0..h.order() {
        let left = crate::linalg::contract_left(k, h.counit(), r.get(one, a), h.dim(one), h.dim(a));
        counit.push(compare(&[a], || "(ε⊗id)(R_{1,α})".into(), &left, h.unit(a)));
        let right = contract_right(k, r.get(a, one), h.dim(a), h.dim(one), h.counit());
        counit.push(compare(
            &[a],
            || "(id⊗ε)(R_{α,1})".into(),
            &right,
            h.unit(a),
        ));
    }
    rep.push(Check::from_outcomes(
        "rmatrix.counit",
        "(ε⊗id)(R_{1,α}) = 1_α = (id⊗ε)(R_{α,1})",
        Kind::Theorem,
        counit,
    ));

    let (st_b, st_c) = (
        "(S_{α⁻¹}φ_α⊗id)(R_{α⁻¹,β}) = R_{α,β}⁻¹ and (id⊗S_β)(R_{α,β}⁻¹) = R_{α,β⁻¹}",
        "(S_α⊗S_β)(R_{α,β}) = (φ_α⊗id)(R_{α⁻¹,β⁻¹})",
    );
    match r_inverse(h, r) {
        Ok(inv) => {
            rep.push(Check::from_outcomes(
                "rmatrix.antipode-inverse",
                st_b,
                Kind::Theorem,
                par_outcomes(&pairs, |&(a, b)| {
                    let ai = g.inv(a);
                    let sphi = h.antipode(ai).compose(phi.map(a, ai));
                    let first = apply_kron(k, &[&sphi, &id(h, b)], r.get(ai, b));
                    let second = apply_kron(k, &[&id(h, a), h.antipode(b)], inv.get(a, b));
                    vec![
                        compare(&[a, b], || "R⁻¹".into(), &first, inv.get(a, b)),
                        compare(
                            &[a, b],
                            || "(id⊗S)(R⁻¹)".into(),
                            &second,
                            r.get(a, g.inv(b)),
                        ),
                    ]
                }),
            ));
        }
        Err(e) => rep.push(Check::refused(
            "rmatrix.antipode-inverse",
            st_b,
            e.to_string(),
        )),
    }
    rep.push(Check::from_outcomes(
        "rmatrix.antipode-square",
        st_c,
        Kind::Theorem,
        par_outcomes(&pairs, |&(a, b)| {
            let (ai, bi) = (g.inv(a), g.inv(b));
            let lhs = apply_kron(k, &[h.antipode(a), h.antipode(b)], r.get(a, b));
            let rhs = apply_kron(k, &[phi.map(a, ai), &id(h, bi)], r.get(ai, bi));
            vec![compare(&[a, b], || "R".into(), &lhs, &rhs)]
        }),
    ));
    let triples = all_triples(h.order());
    rep.push(Check::from_outcomes(
        "rmatrix.yang-baxter",
        "R_{α23}·R_{1β3}·R_{12γ} = R_{12γ}·[(id⊗φ_{β⁻¹})(R_{α,βγβ⁻¹})]_{1β3}·R_{α23}",
        Kind::Theorem,
        par_outcomes(&triples, |&(a, b, c)| {
            let m = triple_mult(h, a, b, c);
            let r23 = insert_first(h, a, r.get(b, c));
            let r13 = insert_between(h, r.get(a, c), a, b, c);
            let r12 = insert_last(h, r.get(a, b), c);
            let bc = g.conjugate(b, c);
            let twisted = apply_kron(k, &[&id(h, a), phi.map(g.inv(b), bc)], r.get(a, bc));
            let t13 = insert_between(h, &twisted, a, b, c);
            let lhs = m.product(&m.product(&r23, &r13), &r12);
            let rhs = m.product(&m.product(&r12, &t13), &r23);
            vec![compare(&[a, b, c], || "R".into(), &lhs, &rhs)]
        }),
    ));
    rep
}

/// The Drinfeld elements and the closed form of their inverses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrinfeldElements {
    /// `u_α = m_α(S_{α⁻¹}φ_α⊗id)σ(R_{α,α⁻¹})`.
    pub u: GradedVector,
    /// `m_α(id⊗S_{α⁻¹}S_α)σ(R_{α,α})`.
    pub u_inv: GradedVector,
}

/// Computes `u_α` and the closed form of `u_α⁻¹`.
pub fn drinfeld_u(h: &HopfPiData, phi: &Crossing, r: &RMatrix) -> DrinfeldElements {
    let k = h.field();
    let g = h.group();
    let (u, u_inv): (Vec<_>, Vec<_>) = comps(h)
        .par_iter()
        .map(|&a| {
            let ai = g.inv(a);
            let (da, dai) = (h.dim(a), h.dim(ai));
            let flipped = flip_vector(k, r.get(a, ai), da, dai);
            let sphi = h.antipode(ai).compose(phi.map(a, ai));
            let u = h
                .mult(a)
                .apply_flat(&apply_kron(k, &[&sphi, &id(h, a)], &flipped));
            let flipped_aa = flip_vector(k, r.get(a, a), da, da);
            let ss = double_antipode(h, a);
            let u_inv = h
                .mult(a)
                .apply_flat(&apply_kron(k, &[&id(h, a), &ss], &flipped_aa));
            (u, u_inv)
        })
        .unzip();
    DrinfeldElements { u, u_inv }
}

/// `c_α = S_{α⁻¹}(u_{α⁻¹})u_α`.
pub fn c_element(h: &HopfPiData, dr: &DrinfeldElements, a: usize) -> Vector {
    let ai = h.group().inv(a);
    h.product(a, &h.antipode(ai).apply(&dr.u[ai]), &dr.u[a])
}

fn inverse_or_failure(
    h: &HopfPiData,
    a: usize,
    x: &[Scalar],
    name: &str,
) -> std::result::Result<Vector, Failure> {
    invert_in(h, a, x).ok_or_else(|| Failure::described(&[a], name, "not invertible", "invertible"))
}

/// The properties of the Drinfeld elements.
pub fn check_drinfeld(
    h: &HopfPiData,
    phi: &Crossing,
    r: &RMatrix,
    dr: &DrinfeldElements,
) -> Report {
    let k = h.field();
    let g = h.group();
    let one = g.identity();
    let cs = comps(h);
    let pairs = all_pairs(h.order());
    let mut rep = Report::new();

    rep.push(Check::from_outcomes(
        "drinfeld.inverse",
        "u_α⁻¹ = m_α(id⊗S_{α⁻¹}S_α)σ(R_{α,α})",
        Kind::Theorem,
        par_outcomes(&cs, |&a| {
            let computed = invert_in(h, a, &dr.u[a]);
            vec![
                compare(
                    &[a],
                    || "u·u⁻¹".into(),
                    &h.product(a, &dr.u[a], &dr.u_inv[a]),
                    h.unit(a),
                ),
                compare(
                    &[a],
                    || "u⁻¹·u".into(),
                    &h.product(a, &dr.u_inv[a], &dr.u[a]),
                    h.unit(a),
                ),
                match computed {
                    Some(v) => compare(&[a], || "algebra inverse".into(), &dr.u_inv[a], &v),
                    None => Some(Failure::described(
                        &[a],
                        "u_α",
                        "not invertible",
                        "invertible",
                    )),
                },
            ]
        }),
    ));
    rep.push(Check::from_outcomes(
        "drinfeld.conjugation",
        "S_{α⁻¹}S_α(φ_α(x)) = u_α x u_α⁻¹",
        Kind::Theorem,
        par_outcomes(&cs, |&a| {
            let lhs = double_antipode(h, a).compose(phi.map(a, a));
            (0..h.dim(a))
                .map(|x| {
                    let rhs = h.product_all(a, &[&dr.u[a], &h.basis(a, x), &dr.u_inv[a]]);
                    compare(&[a], || witness(x), &lhs.column(x), &rhs)
                })
                .collect()
        }),
    ));
    rep.push(check_bijective_antipode(h));
    rep.push(Check::from_outcomes(
        "drinfeld.crossing",
        "φ_β(u_α) = u_{βαβ⁻¹}",
        Kind::Theorem,
        pairs
            .iter()
            .map(|&(b, a)| {
                compare(
                    &[b, a],
                    || "u_α".into(),
                    &phi.map(b, a).apply(&dr.u[a]),
                    &dr.u[g.conjugate(b, a)],
                )
            })
            .collect::<Vec<_>>(),
    ));
    rep.push(Check::from_outcomes(
        "drinfeld.c-element",
        "S_{α⁻¹}(u_{α⁻¹})u_α = u_αS_{α⁻¹}(u_{α⁻¹}) = c_α and c_αφ_{α⁻¹}(x) = φ_α(x)c_α",
        Kind::Theorem,
        par_outcomes(&cs, |&a| {
            let ai = g.inv(a);
            let s = h.antipode(ai).apply(&dr.u[ai]);
            let c = h.product(a, &s, &dr.u[a]);
            let mut out = vec![compare(
                &[a],
                || "c_α".into(),
                &c,
                &h.product(a, &dr.u[a], &s),
            )];
            for x in 0..h.dim(a) {
                let lhs = h.product(a, &c, &phi.map(ai, a).column(x));
                let rhs = h.product(a, &phi.map(a, a).column(x), &c);
                out.push(compare(&[a], || witness(x), &lhs, &rhs));
            }
            out
        }),
    ));
    rep.push(Check::from_outcomes(
        "drinfeld.coproduct",
        "Δ_{α,β}(u_{αβ}) = [σ(id⊗φ_α)(R_{β,α})·R_{α,β}]⁻¹(u_α⊗u_β) = (u_α⊗u_β)[σ(φ_{β⁻¹}⊗id)(R_{β,α})·(φ_{α⁻¹}⊗φ_{β⁻¹})(R_{α,β})]⁻¹",
        Kind::Theorem,
        par_outcomes(&pairs, |&(a, b)| {
            let (da, db) = (h.dim(a), h.dim(b));
            let m = h.tensor_mult(a, b);
            let unit = kron_vectors(k, h.unit(a), h.unit(b));
            let lhs = h.comul(a, b).apply(&dr.u[g.mul(a, b)]);
            let uu = kron_vectors(k, &dr.u[a], &dr.u[b]);
            let x1 = flip_vector(k, &apply_kron(k, &[&id(h, b), phi.map(a, a)], r.get(b, a)), db, da);
            let big_x = m.product(&x1, r.get(a, b));
            let y1 = flip_vector(k, &apply_kron(k, &[phi.map(g.inv(b), b), &id(h, a)], r.get(b, a)), db, da);
            let y2 = apply_kron(k, &[phi.map(g.inv(a), a), phi.map(g.inv(b), b)], r.get(a, b));
            let big_y = m.product(&y1, &y2);
            let first = match algebra_inverse(&m, &unit, &big_x) {
                Some(xi) => compare(&[a, b], || "first form".into(), &lhs, &m.product(&xi, &uu)),
                None => Some(Failure::described(&[a, b], "first form", "bracket not invertible", "invertible")),
            };
            let second = match algebra_inverse(&m, &unit, &big_y) {
                Some(yi) => compare(&[a, b], || "second form".into(), &lhs, &m.product(&uu, &yi)),
                None => Some(Failure::described(&[a, b], "second form", "bracket not invertible", "invertible")),
            };
            vec![first, second]
        }),
    ));
    rep.push(Check::from_outcomes(
        "drinfeld.counit",
        "ε(u_1) = 1",
        Kind::Theorem,
        [compare(
            &[one],
            || "u_1".into(),
            &[h.epsilon(&dr.u[one])],
            &[k.one()],
        )],
    ));
    rep
}

/// `ℓ_α = S_{α⁻¹}(u_{α⁻¹})⁻¹u_α`.
pub fn ell_element(h: &HopfPiData, dr: &DrinfeldElements) -> Result<GradedVector> {
    let g = h.group();
    (0..h.order())
        .map(|a| {
            let ai = g.inv(a);
            let s = h.antipode(ai).apply(&dr.u[ai]);
            let si = invert_in(h, a, &s)
                .ok_or_else(|| Error::NotInvertible(format!("S_{{α⁻¹}}(u_{{α⁻¹}}) at α = {a}")))?;
            Ok(h.product(a, &si, &dr.u[a]))
        })
        .collect()
}

/// `ℓ` is π-grouplike, `ℓ_α = u_αS_{α⁻¹}(u_{α⁻¹})⁻¹`, and `(S_{α⁻¹}S_α)²(x) = ℓ_α x ℓ_α⁻¹`.
pub fn check_ell(h: &HopfPiData, dr: &DrinfeldElements, ell: &GradedVector) -> Report {
    let g = h.group();
    let cs = comps(h);
    let mut rep = Report::new();
    rep.push(check_grouplike(h, ell, "ell.grouplike", "ℓ", Kind::Theorem));
    rep.push(Check::from_outcomes(
        "ell.two-sided",
        "S_{α⁻¹}(u_{α⁻¹})⁻¹u_α = u_αS_{α⁻¹}(u_{α⁻¹})⁻¹",
        Kind::Theorem,
        cs.iter()
            .map(|&a| {
                let ai = g.inv(a);
                let s = h.antipode(ai).apply(&dr.u[ai]);
                match invert_in(h, a, &s) {
                    Some(si) => {
                        compare(&[a], || "ℓ_α".into(), &ell[a], &h.product(a, &dr.u[a], &si))
                    }
                    None => Some(Failure::described(
                        &[a],
                        "S(u)",
                        "not invertible",
                        "invertible",
                    )),
                }
            })
            .collect::<Vec<_>>(),
    ));
    rep.push(Check::from_outcomes(
        "ell.fourth-power",
        "(S_{α⁻¹}S_α)²(x) = ℓ_α x ℓ_α⁻¹",
        Kind::Theorem,
        par_outcomes(&cs, |&a| {
            let Some(li) = invert_in(h, a, &ell[a]) else {
                return vec![Some(Failure::described(
                    &[a],
                    "ℓ_α",
                    "not invertible",
                    "invertible",
                ))];
            };
            let ss2 = double_antipode(h, a).pow(2);
            (0..h.dim(a))
                .map(|x| {
                    let rhs = h.product_all(a, &[&ell[a], &h.basis(a, x), &li]);
                    compare(&[a], || witness(x), &ss2.column(x), &rhs)
                })
                .collect()
        }),
    ));
    rep
}

/// The four twist axioms, assuming each `θ_α` is invertible.
pub fn twist_axioms(h: &HopfPiData, phi: &Crossing, r: &RMatrix, theta: &GradedVector) -> Report {
    let k = h.field();
    let g = h.group();
    let cs = comps(h);
    let pairs = all_pairs(h.order());
    let mut rep = Report::new();
    rep.push(Check::from_outcomes(
        "twist.crossing",
        "φ_α(x) = θ_α⁻¹xθ_α",
        Kind::Axiom,
        par_outcomes(&cs, |&a| {
            // Compared as θ_αφ_α(x) = xθ_α, which is equivalent for invertible θ_α.
            (0..h.dim(a))
                .map(|x| {
                    let lhs = h.product(a, &theta[a], &phi.map(a, a).column(x));
                    let rhs = h.product(a, &h.basis(a, x), &theta[a]);
                    compare(&[a], || witness(x), &lhs, &rhs)
                })
                .collect()
        }),
    ));
    rep.push(Check::from_outcomes(
        "twist.antipode",
        "S_α(θ_α) = θ_{α⁻¹}",
        Kind::Axiom,
        cs.iter()
            .map(|&a| {
                compare(
                    &[a],
                    || "θ_α".into(),
                    &h.antipode(a).apply(&theta[a]),
                    &theta[g.inv(a)],
                )
            })
            .collect::<Vec<_>>(),
    ));
    rep.push(Check::from_outcomes(
        "twist.crossing-invariance",
        "φ_β(θ_α) = θ_{βαβ⁻¹}",
        Kind::Axiom,
        pairs
            .iter()
            .map(|&(b, a)| {
                compare(
                    &[b, a],
                    || "θ_α".into(),
                    &phi.map(b, a).apply(&theta[a]),
                    &theta[g.conjugate(b, a)],
                )
            })
            .collect::<Vec<_>>(),
    ));
    rep.push(Check::from_outcomes(
        "twist.coproduct",
        "Δ_{α,β}(θ_{αβ}) = (θ_α⊗θ_β)·σ((φ_{α⁻¹}⊗id)(R_{αβα⁻¹,α}))·R_{α,β}",
        Kind::Axiom,
        par_outcomes(&pairs, |&(a, b)| {
            let m = h.tensor_mult(a, b);
            let c = g.conjugate(a, b);
            let lhs = h.comul(a, b).apply(&theta[g.mul(a, b)]);
            let v = apply_kron(k, &[phi.map(g.inv(a), c), &id(h, a)], r.get(c, a));
            let flipped = flip_vector(k, &v, h.dim(b), h.dim(a));
            let rhs = m.product(
                &m.product(&kron_vectors(k, &theta[a], &theta[b]), &flipped),
                r.get(a, b),
            );
            vec![compare(&[a, b], || "θ".into(), &lhs, &rhs)]
        }),
    ));
    rep
}

/// Verifies a twist: invertibility as a precondition, the four axioms, and
/// the consequences `φ_{α⁻¹}(x) = θ_αxθ_α⁻¹`, `ε(θ_1) = 1`, `θ_α^d` central
/// for `d` the order of `α`, and `θ_αu_α = u_αθ_α`.
pub fn verify_twist(h: &HopfPiData, phi: &Crossing, r: &RMatrix, theta: &GradedVector) -> Report {
    let k = h.field();
    let g = h.group();
    let one = g.identity();
    let cs = comps(h);
    let mut rep = Report::new();
    let inverses: Vec<Option<Vector>> = cs.iter().map(|&a| invert_in(h, a, &theta[a])).collect();
    if let Some(a) = inverses.iter().position(Option::is_none) {
        rep.push(Check::refused(
            "twist.invertible",
            "each θ_α is invertible",
            format!("θ_{a} is not invertible"),
        ));
        return rep;
    }
    let inverses: Vec<Vector> = inverses.into_iter().map(Option::unwrap).collect();
    rep.extend(twist_axioms(h, phi, r, theta));
    let derived = [
        ("twist.inverse-crossing", "φ_{α⁻¹}(x) = θ_αxθ_α⁻¹"),
        ("twist.counit", "ε(θ_1) = 1"),
        ("twist.central-power", "θ_α^d is central, d = order of α"),
        ("twist.commutes-with-u", "θ_αu_α = u_αθ_α"),
    ];
    if !rep.passed() {
        for (cid, st) in derived {
            rep.push(Check::refused(cid, st, "the twist axioms do not hold"));
        }
        return rep;
    }
    rep.push(Check::from_outcomes(
        derived[0].0,
        derived[0].1,
        Kind::Theorem,
        par_outcomes(&cs, |&a| {
            let m = phi.map(g.inv(a), a);
            (0..h.dim(a))
                .map(|x| {
                    let rhs = h.product_all(a, &[&theta[a], &h.basis(a, x), &inverses[a]]);
                    compare(&[a], || witness(x), &m.column(x), &rhs)
                })
                .collect()
        }),
    ));
    rep.push(Check::from_outcomes(
        derived[1].0,
        derived[1].1,
        Kind::Theorem,
        [compare(
            &[one],
            || "θ_1".into(),
            &[h.epsilon(&theta[one])],
            &[k.one()],
        )],
    ));
    rep.push(Check::from_outcomes(
        derived[2].0,
        derived[2].1,
        Kind::Theorem,
        par_outcomes(&cs, |&a| {
            let d = g.element_order(a);
            let power = (1..d).fold(theta[a].clone(), |acc, _| h.product(a, &acc, &theta[a]));
            (0..h.dim(a))
                .map(|x| {
                    let e = h.basis(a, x);
                    compare(
                        &[a],
                        || witness(x),
                        &h.product(a, &power, &e),
                        &h.product(a, &e, &power),
                    )
                })
                .collect()
        }),
    ));
    let dr = drinfeld_u(h, phi, r);
    rep.push(Check::from_outcomes(
        derived[3].0,
        derived[3].1,
        Kind::Theorem,
        cs.iter()
            .map(|&a| {
                compare(
                    &[a],
                    || "θ_αu_α".into(),
                    &h.product(a, &theta[a], &dr.u[a]),
                    &h.product(a, &dr.u[a], &theta[a]),
                )
            })
            .collect::<Vec<_>>(),
    ));
    rep
}

/// `G_α = θ_αu_α`.
pub fn g_element(h: &HopfPiData, dr: &DrinfeldElements, theta: &GradedVector) -> GradedVector {
    (0..h.order())
        .map(|a| h.product(a, &theta[a], &dr.u[a]))
        .collect()
}

/// The properties of `G`: grouplike, crossing-invariant, `S_α(G_α) = G_{α⁻¹}⁻¹`,
/// `θ_α⁻² = c_α`, `S_α(u_α) = G_{α⁻¹}⁻¹u_{α⁻¹}G_{α⁻¹}⁻¹` and
/// `S_{α⁻¹}S_α(x) = G_αxG_α⁻¹`.
pub fn check_ribbon_g(
    h: &HopfPiData,
    phi: &Crossing,
    dr: &DrinfeldElements,
    theta: &GradedVector,
    big_g: &GradedVector,
) -> Report {
    let g = h.group();
    let cs = comps(h);
    let mut rep = Report::new();
    rep.push(check_grouplike(
        h,
        big_g,
        "ribbon-g.grouplike",
        "G",
        Kind::Theorem,
    ));
    rep.push(Check::from_outcomes(
        "ribbon-g.crossing",
        "φ_β(G_α) = G_{βαβ⁻¹}",
        Kind::Theorem,
        all_pairs(h.order())
            .into_iter()
            .map(|(b, a)| {
                compare(
                    &[b, a],
                    || "G_α".into(),
                    &phi.map(b, a).apply(&big_g[a]),
                    &big_g[g.conjugate(b, a)],
                )
            })
            .collect::<Vec<_>>(),
    ));
    let g_inv: Vec<std::result::Result<Vector, Failure>> = cs
        .iter()
        .map(|&a| inverse_or_failure(h, a, &big_g[a], "G_α"))
        .collect();
    rep.push(Check::from_outcomes(
        "ribbon-g.antipode",
        "S_α(G_α) = G_{α⁻¹}⁻¹",
        Kind::Theorem,
        cs.iter()
            .map(|&a| match &g_inv[g.inv(a)] {
                Ok(gi) => compare(&[a], || "G_α".into(), &h.antipode(a).apply(&big_g[a]), gi),
                Err(f) => Some(f.clone()),
            })
            .collect::<Vec<_>>(),
    ));
    rep.push(Check::from_outcomes(
        "ribbon-g.twist-square",
        "θ_α⁻² = c_α",
        Kind::Theorem,
        cs.iter()
            .map(|&a| match inverse_or_failure(h, a, &theta[a], "θ_α") {
                Ok(ti) => compare(
                    &[a],
                    || "θ_α⁻²".into(),
                    &h.product(a, &ti, &ti),
                    &c_element(h, dr, a),
                ),
                Err(f) => Some(f),
            })
            .collect::<Vec<_>>(),
    ));
    rep.push(Check::from_outcomes(
        "ribbon-g.antipode-of-u",
        "S_α(u_α) = G_{α⁻¹}⁻¹u_{α⁻¹}G_{α⁻¹}⁻¹",
        Kind::Theorem,
        cs.iter()
            .map(|&a| {
                let ai = g.inv(a);
                match &g_inv[ai] {
                    Ok(gi) => compare(
                        &[a],
                        || "u_α".into(),
                        &h.antipode(a).apply(&dr.u[a]),
                        &h.product_all(ai, &[gi, &dr.u[ai], gi]),
                    ),
                    Err(f) => Some(f.clone()),
                }
            })
            .collect::<Vec<_>>(),
    ));
    rep.push(Check::from_outcomes(
        "ribbon-g.square-antipode",
        "S_{α⁻¹}S_α(x) = G_αxG_α⁻¹",
        Kind::Theorem,
        par_outcomes(&cs, |&a| {
            let gi = match &g_inv[a] {
                Ok(v) => v,
                Err(f) => return vec![Some(f.clone())],
            };
            let ss = double_antipode(h, a);
            (0..h.dim(a))
                .map(|x| {
                    let rhs = h.product_all(a, &[&big_g[a], &h.basis(a, x), gi]);
                    compare(&[a], || witness(x), &ss.column(x), &rhs)
                })
                .collect()
        }),
    ));
    rep
}

/// `h_α = (id⊗ν)(R_{α,1})`.
pub fn h_element(h: &HopfPiData, r: &RMatrix, nu: &[Scalar]) -> GradedVector {
    let one = h.group().identity();
    (0..h.order())
        .map(|a| contract_right(h.field(), r.get(a, one), h.dim(a), h.dim(one), nu))
        .collect()
}

/// `h` is π-grouplike and `g_α = φ̂(α)⁻¹ℓ_αh_α`; with a ribbon element `G`,
/// also `φ̂(α)g_α = G_α²h_α`.
pub fn g_from_r(
    h: &HopfPiData,
    r: &RMatrix,
    d: &Distinguished,
    hat: &[Scalar],
    ell: &GradedVector,
    big_g: Option<&GradedVector>,
) -> Report {
    let hh = h_element(h, r, &d.nu);
    let cs = comps(h);
    let mut rep = Report::new();
    rep.push(check_grouplike(
        h,
        &hh,
        "g-from-r.h-grouplike",
        "h",
        Kind::Theorem,
    ));
    rep.push(Check::from_outcomes(
        "g-from-r.formula",
        "g_α = φ̂(α)⁻¹ℓ_αh_α",
        Kind::Theorem,
        cs.iter()
            .map(|&a| match hat[a].inv() {
                Some(hi) => compare(
                    &[a],
                    || "g_α".into(),
                    &d.g[a],
                    &scale_vector(&hi, &h.product(a, &ell[a], &hh[a])),
                ),
                None => Some(Failure::described(&[a], "φ̂(α)", "0", "nonzero")),
            })
            .collect::<Vec<_>>(),
    ));
    if let Some(gg) = big_g {
        rep.push(Check::from_outcomes(
            "g-from-r.ribbon",
            "φ̂(α)g_α = G_α²h_α",
            Kind::Theorem,
            cs.iter()
                .map(|&a| {
                    compare(
                        &[a],
                        || "g_α".into(),
                        &scale_vector(&hat[a], &d.g[a]),
                        &h.product_all(a, &[&gg[a], &gg[a], &hh[a]]),
                    )
                })
                .collect::<Vec<_>>(),
        ));
    }
    rep
}

/// The mirror: `H̄_α = H_{α⁻¹}`, `Δ̄_{α,β} = (φ_β⊗id)Δ_{β⁻¹α⁻¹β,β⁻¹}`,
/// `S̄_α = φ_αS_{α⁻¹}`, `φ̄_β|H̄_α = φ_β|H_{α⁻¹}`.
pub fn mirror_hopf(h: &HopfPiData, phi: &Crossing) -> Result<(HopfPiData, Crossing)> {
    let g = h.group();
    let n = h.order();
    let k = h.field();
    let comul = all_pairs(n)
        .into_iter()
        .map(|(a, b)| {
            let bi = g.inv(b);
            let c = g.conjugate(bi, g.inv(a));
            LinearMap::kron(phi.map(b, c), &id(h, bi)).compose(h.comul(c, bi))
        })
        .collect();
    let parts = HopfParts {
        group: g.clone(),
        field: k,
        dims: (0..n).map(|a| h.dim(g.inv(a))).collect(),
        mult: (0..n).map(|a| h.mult(g.inv(a)).clone()).collect(),
        unit: (0..n).map(|a| h.unit(g.inv(a)).clone()).collect(),
        comul,
        counit: h.counit().clone(),
        antipode: (0..n)
            .map(|a| phi.map(a, a).compose(h.antipode(g.inv(a))))
            .collect(),
    };
    let mirrored = HopfPiData::from_parts(parts)?;
    let maps = all_pairs(n)
        .into_iter()
        .map(|(b, a)| phi.map(b, g.inv(a)).clone())
        .collect();
    let crossing = Crossing::new(&mirrored, maps)?;
    Ok((mirrored, crossing))
}

/// `R̄_{α,β} = σ(R⁻¹_{β⁻¹,α⁻¹})`.
pub fn mirror_r(h: &HopfPiData, mirrored: &HopfPiData, r: &RMatrix) -> Result<RMatrix> {
    let g = h.group();
    let inv = r_inverse(h, r)?;
    let entries = all_pairs(h.order())
        .into_iter()
        .map(|(a, b)| {
            let (ai, bi) = (g.inv(a), g.inv(b));
            flip_vector(h.field(), inv.get(bi, ai), h.dim(bi), h.dim(ai))
        })
        .collect();
    RMatrix::new(mirrored, entries)
}

/// `θ̄_α = θ_{α⁻¹}⁻¹` (and the same formula gives the coopposite twist).
pub fn inverted_twist(h: &HopfPiData, theta: &GradedVector) -> Result<GradedVector> {
    let g = h.group();
    (0..h.order())
        .map(|a| {
            let ai = g.inv(a);
            invert_in(h, ai, &theta[ai])
                .ok_or_else(|| Error::NotInvertible(format!("θ_{ai} is not invertible")))
        })
        .collect()
}

/// The mirror of a decorated instance.
pub fn mirror(dec: &Decorated) -> Result<Decorated> {
    let (hopf, crossing) = mirror_hopf(&dec.hopf, &dec.crossing)?;
    let rmatrix = dec
        .rmatrix
        .as_ref()
        .map(|r| mirror_r(&dec.hopf, &hopf, r))
        .transpose()?;
    let twist = dec
        .twist
        .as_ref()
        .map(|t| inverted_twist(&dec.hopf, t))
        .transpose()?;
    Ok(Decorated {
        hopf,
        crossing,
        rmatrix,
        twist,
    })
}

/// `ū_α = S_α(u_α)⁻¹` for the Drinfeld elements of the mirror.
pub fn check_mirror_drinfeld(dec: &Decorated, mirrored: &Decorated) -> Report {
    let mut rep = Report::new();
    let (Some(r), Some(rb)) = (&dec.rmatrix, &mirrored.rmatrix) else {
        rep.push(Check::refused(
            "mirror.drinfeld",
            "ū_α = S_α(u_α)⁻¹",
            "no R-matrix",
        ));
        return rep;
    };
    let h = &dec.hopf;
    let g = h.group();
    let dr = drinfeld_u(h, &dec.crossing, r);
    let bar = drinfeld_u(&mirrored.hopf, &mirrored.crossing, rb);
    rep.push(Check::from_outcomes(
        "mirror.drinfeld",
        "ū_α = S_α(u_α)⁻¹",
        Kind::Theorem,
        (0..h.order())
            .map(|a| {
                let ai = g.inv(a);
                match invert_in(h, ai, &h.antipode(a).apply(&dr.u[a])) {
                    Some(v) => compare(&[a], || "ū_α".into(), &bar.u[a], &v),
                    None => Some(Failure::described(
                        &[a],
                        "S_α(u_α)",
                        "not invertible",
                        "invertible",
                    )),
                }
            })
            .collect::<Vec<_>>(),
    ));
    rep
}

/// `R^cop_{α,β} = (S_α⊗id)(R_{α,β⁻¹})`.
pub fn coop_r(h: &HopfPiData, cop: &HopfPiData, r: &RMatrix) -> Result<RMatrix> {
    let g = h.group();
    let entries = all_pairs(h.order())
        .into_iter()
        .map(|(a, b)| {
            apply_kron(
                h.field(),
                &[h.antipode(a), &id(h, g.inv(b))],
                r.get(a, g.inv(b)),
            )
        })
        .collect();
    RMatrix::new(cop, entries)
}

/// `R^cop_{α,β} = (φ_α⊗id)(R⁻¹_{α⁻¹,β⁻¹})`, the second closed form.
pub fn coop_r_from_inverse(
    h: &HopfPiData,
    cop: &HopfPiData,
    phi: &Crossing,
    r: &RMatrix,
) -> Result<RMatrix> {
    let g = h.group();
    let inv = r_inverse(h, r)?;
    let entries = all_pairs(h.order())
        .into_iter()
        .map(|(a, b)| {
            let (ai, bi) = (g.inv(a), g.inv(b));
            apply_kron(h.field(), &[phi.map(a, ai), &id(h, bi)], inv.get(ai, bi))
        })
        .collect();
    RMatrix::new(cop, entries)
}

/// The coopposite with crossing `φ^cop_β|H^cop_α = φ_β|H_{α⁻¹}`, R-matrix
/// `R^cop` and twist `θ^cop_α = θ_{α⁻¹}⁻¹`.
pub fn coop_qt(dec: &Decorated) -> Result<Decorated> {
    let h = &dec.hopf;
    let g = h.group();
    let hopf = coopposite(h)?;
    let maps = all_pairs(h.order())
        .into_iter()
        .map(|(b, a)| dec.crossing.map(b, g.inv(a)).clone())
        .collect();
    let crossing = Crossing::new(&hopf, maps)?;
    let rmatrix = dec
        .rmatrix
        .as_ref()
        .map(|r| coop_r(h, &hopf, r))
        .transpose()?;
    let twist = dec
        .twist
        .as_ref()
        .map(|t| inverted_twist(h, t))
        .transpose()?;
    Ok(Decorated {
        hopf,
        crossing,
        rmatrix,
        twist,
    })
}

/// The two closed forms of `R^cop` agree and `u^cop_α = u_{α⁻¹}⁻¹`.
pub fn check_coop(dec: &Decorated, cop: &Decorated) -> Report {
    let mut rep = Report::new();
    let (Some(r), Some(rc)) = (&dec.rmatrix, &cop.rmatrix) else {
        rep.push(Check::refused(
            "coop.rmatrix",
            "both closed forms of R^cop agree",
            "no R-matrix",
        ));
        return rep;
    };
    let h = &dec.hopf;
    let g = h.group();
    let pairs = all_pairs(h.order());
    match coop_r_from_inverse(h, &cop.hopf, &dec.crossing, r) {
        Ok(second) => rep.push(Check::from_outcomes(
            "coop.rmatrix",
            "(S_α⊗id)(R_{α,β⁻¹}) = (φ_α⊗id)(R⁻¹_{α⁻¹,β⁻¹})",
            Kind::Theorem,
            pairs
                .iter()
                .map(|&(a, b)| compare(&[a, b], || "R^cop".into(), rc.get(a, b), second.get(a, b)))
                .collect::<Vec<_>>(),
        )),
        Err(e) => rep.push(Check::refused(
            "coop.rmatrix",
            "both closed forms of R^cop agree",
            e.to_string(),
        )),
    }
    let dr = drinfeld_u(h, &dec.crossing, r);
    let dc = drinfeld_u(&cop.hopf, &cop.crossing, rc);
    rep.push(Check::from_outcomes(
        "coop.drinfeld",
        "u^cop_α = u_{α⁻¹}⁻¹",
        Kind::Theorem,
        (0..h.order())
            .map(|a| compare(&[a], || "u^cop_α".into(), &dc.u[a], &dr.u_inv[g.inv(a)]))
            .collect::<Vec<_>>(),
    ));
    rep
}

/// Searches for twists. The linear axioms (crossing by conjugation, antipode
/// and crossing invariance) are solved exactly; the coefficients on a basis of
/// their solution space are then enumerated in `-bound..=bound`, keeping the
/// invertible families with `ε(θ_1) = 1` that satisfy all four axioms.
pub fn find_twists(
    h: &HopfPiData,
    phi: &Crossing,
    r: &RMatrix,
    bound: i64,
) -> Result<Vec<GradedVector>> {
    let k = h.field();
    let g = h.group();
    let n = h.order();
    let mut off = Vec::with_capacity(n);
    let mut total = 0;
    for a in 0..n {
        off.push(total);
        total += h.dim(a);
    }
    let mut blocks: Vec<LinearMap> = Vec::new();
    let place = |rows: usize, parts: &[(usize, &LinearMap)]| {
        let shifted: Vec<(usize, &LinearMap)> = parts.iter().map(|&(a, p)| (off[a], p)).collect();
        LinearMap::from_blocks(k, rows, total, &shifted)
    };
    for a in 0..n {
        let d = h.dim(a);
        for x in 0..d {
            let e = h.basis(a, x);
            let lhs = h.mult(a).right_multiplication(&phi.map(a, a).column(x));
            let rhs = h.mult(a).left_multiplication(&e).scale(&k.from_i64(-1));
            blocks.push(place(d, &[(a, &lhs), (a, &rhs)]));
        }
        let ai = g.inv(a);
        let minus = id(h, ai).scale(&k.from_i64(-1));
        blocks.push(place(h.dim(ai), &[(a, h.antipode(a)), (ai, &minus)]));
        for b in 0..n {
            let c = g.conjugate(b, a);
            let minus = id(h, c).scale(&k.from_i64(-1));
            blocks.push(place(h.dim(c), &[(a, phi.map(b, a)), (c, &minus)]));
        }
    }
    let basis = LinearMap::vstack(k, total, &blocks).nullspace();
    let m = basis.len();
    if m == 0 {
        return Ok(Vec::new());
    }
    let width = (2 * bound + 1) as u64;
    if width.checked_pow(m as u32).is_none_or(|s| s > 1_000_000) {
        return Err(Error::Precondition(format!(
            "twist search space of dimension {m} is too large for bound {bound}"
        )));
    }
    let one = g.identity();
    let split = |flat: &[Scalar]| -> GradedVector {
        (0..n)
            .map(|a| flat[off[a]..off[a] + h.dim(a)].to_vec())
            .collect()
    };
    let mut found: Vec<GradedVector> = Vec::new();
    let mut coeffs = vec![-bound; m];
    loop {
        let mut flat = vec![k.zero(); total];
        for (c, v) in coeffs.iter().zip(&basis) {
            let s = k.from_i64(*c);
            for (slot, x) in flat.iter_mut().zip(v) {
                if !x.is_zero() {
                    *slot += &(&s * x);
                }
            }
        }
        let theta = split(&flat);
        if h.epsilon(&theta[one]).is_one()
            && !found.contains(&theta)
            && (0..n).all(|a| invert_in(h, a, &theta[a]).is_some())
            && twist_axioms(h, phi, r, &theta).passed()
        {
            found.push(theta);
        }
        let mut i = 0;
        while i < m && coeffs[i] == bound {
            coeffs[i] = -bound;
            i += 1;
        }
        if i == m {
            break;
        }
        coeffs[i] += 1;
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::group::FiniteGroup;
    use crate::hopf::verify_all;
    use crate::instances;
    use crate::integrals::distinguished;

    fn q() -> Field {
        Field::Rational
    }

    fn sweedler_decorated(lambda: i64) -> Decorated {
        let (h, phi) = instances::constant_sweedler_z2(q()).unwrap();
        let r = RMatrix::constant(
            &h,
            &instances::sweedler_r(q(), &q().from_i64(lambda)).unwrap(),
        )
        .unwrap();
        Decorated {
            hopf: h,
            crossing: phi,
            rmatrix: Some(r),
            twist: None,
        }
    }

    #[test]
    fn insertion_index_arithmetic() {
        let h = instances::sweedler(q()).unwrap();
        // r = e_1 ⊗ e_2 in H⊗H, index 1*4+2.
        let mut r = vec![q().zero(); 16];
        r[6] = q().one();
        let mid = insert_between(&h, &r, 0, 0, 0);
        // e_1 ⊗ 1 ⊗ e_2 has index (1*4+0)*4+2 = 18.
        assert_eq!(mid.iter().position(|c| !c.is_zero()), Some(18));
        assert_eq!(
            insert_last(&h, &r, 0).iter().position(|c| !c.is_zero()),
            Some(6 * 4)
        );
        assert_eq!(
            insert_first(&h, 0, &r).iter().position(|c| !c.is_zero()),
            Some(6)
        );
    }

    #[test]
    fn trivial_crossing_passes_on_trivial_family() {
        let h = instances::trivial_instance(q(), &FiniteGroup::symmetric3());
        let phi = Crossing::trivial(&h).unwrap();
        assert!(verify_crossing(&h, &phi).passed());
    }

    #[test]
    fn inversion_crossing_passes() {
        let (h, phi) = instances::constant_z3_inversion(q()).unwrap();
        let r = verify_crossing(&h, &phi);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn broken_crossing_fails_only_the_action_axiom() {
        let (h, phi) = instances::broken_crossing(q());
        let r = verify_crossing(&h, &phi);
        let failing: Vec<&str> = r
            .checks
            .iter()
            .filter(|c| c.status == crate::Status::Fail)
            .map(|c| c.id.as_str())
            .collect();
        assert_eq!(failing, vec!["crossing.action"]);
    }

    #[test]
    fn phi_hat_is_trivial_on_crossing_zoo() {
        for (h, phi) in [
            instances::constant_z3_inversion(q()).unwrap(),
            instances::constant_sweedler_z2(q()).unwrap(),
        ] {
            let d = distinguished(&h).unwrap();
            let hat = phi_hat(&h, &phi, &d).unwrap();
            assert!(hat.iter().all(Scalar::is_one));
            assert!(check_phi_hat(&h, &phi, &d, &hat).passed());
            assert!(check_crossing_invariants(&h, &phi, &d, &hat).passed());
        }
    }

    #[test]
    fn sweedler_r_matrices_pass() {
        for lambda in [0, 1, -3] {
            let dec = sweedler_decorated(lambda);
            let r = dec.rmatrix.as_ref().unwrap();
            let rep = verify_r(&dec.hopf, &dec.crossing, r, None);
            assert!(rep.passed(), "{rep}");
            let consequences = check_r_consequences(&dec.hopf, &dec.crossing, r);
            assert!(consequences.passed(), "{consequences}");
        }
    }

    #[test]
    fn zero_r_fails_only_invertibility() {
        let h = instances::sweedler(q()).unwrap();
        let phi = Crossing::trivial(&h).unwrap();
        let r = RMatrix::constant(&h, &vec![q().zero(); 16]).unwrap();
        let rep = verify_r(&h, &phi, &r, None);
        let failing: Vec<&str> = rep.problems().map(|c| c.id.as_str()).collect();
        assert_eq!(failing, vec!["rmatrix.invertible"]);
    }

    #[test]
    fn sign_flip_in_nilpotent_part_fails_comultiplication_only() {
        let (h, phi) = instances::constant_sweedler_z2(q()).unwrap();
        let mut r = instances::sweedler_r(q(), &q().one()).unwrap();
        // Flip the sign of the x⊗x coefficient (index 2*4+2).
        r[10] = -&r[10];
        let r = RMatrix::constant(&h, &r).unwrap();
        let rep = verify_r(&h, &phi, &r, None);
        let failing: Vec<&str> = rep.problems().map(|c| c.id.as_str()).collect();
        assert_eq!(
            failing,
            vec![
                "rmatrix.comultiplication-second",
                "rmatrix.comultiplication-first"
            ]
        );
    }

    #[test]
    fn perturbed_r_fails_braiding() {
        let (h, phi) = instances::constant_sweedler_z2(q()).unwrap();
        let mut r = instances::sweedler_r(q(), &q().zero()).unwrap();
        // Add 1⊗x (index 0*4+2).
        r[2] = q().one();
        let r = RMatrix::constant(&h, &r).unwrap();
        let rep = verify_r(&h, &phi, &r, None);
        assert!(rep.get("rmatrix.invertible").unwrap().passed());
        assert!(!rep.get("rmatrix.braiding").unwrap().passed());
    }

    #[test]
    fn claimed_inverse_is_checked() {
        let dec = sweedler_decorated(1);
        let r = dec.rmatrix.as_ref().unwrap();
        let inv = r_inverse(&dec.hopf, r).unwrap();
        assert!(verify_r(&dec.hopf, &dec.crossing, r, Some(&inv)).passed());
        assert!(!verify_r(&dec.hopf, &dec.crossing, r, Some(r))
            .get("rmatrix.claimed-inverse")
            .unwrap()
            .passed());
    }

    #[test]
    fn drinfeld_on_trivial_family_is_one() {
        let h = instances::trivial_instance(q(), &FiniteGroup::cyclic(3));
        let phi = Crossing::trivial(&h).unwrap();
        let r = instances::trivial_r(&h).unwrap();
        let dr = drinfeld_u(&h, &phi, &r);
        assert_eq!(dr.u, h.unit_family());
        assert!(check_drinfeld(&h, &phi, &r, &dr).passed());
    }

    #[test]
    fn sweedler_drinfeld_element() {
        // Oracle: for R_0 = ½(1⊗1 + 1⊗g + g⊗1 − g⊗g), u = m(S⊗id)σ(R_0) = g.
        let dec = sweedler_decorated(0);
        let r = dec.rmatrix.as_ref().unwrap();
        let dr = drinfeld_u(&dec.hopf, &dec.crossing, r);
        for a in 0..2 {
            assert_eq!(dr.u[a], dec.hopf.basis(a, 1));
            assert_eq!(dr.u_inv[a], dec.hopf.basis(a, 1));
        }
        let rep = check_drinfeld(&dec.hopf, &dec.crossing, r, &dr);
        assert!(rep.passed(), "{rep}");
        let ell = ell_element(&dec.hopf, &dr).unwrap();
        let rep = check_ell(&dec.hopf, &dr, &ell);
        assert!(rep.passed(), "{rep}");
    }

    #[test]
    fn sweedler_twists_are_plus_minus_one() {
        let dec = sweedler_decorated(0);
        let r = dec.rmatrix.as_ref().unwrap();
        let twists = find_twists(&dec.hopf, &dec.crossing, r, 2).unwrap();
        let one = dec.hopf.unit_family();
        let mut sign = one.clone();
        sign[1] = scale_vector(&q().from_i64(-1), &one[1]);
        assert_eq!(twists.len(), 2);
        assert!(twists.contains(&one) && twists.contains(&sign));
        for t in &twists {
            let rep = verify_twist(&dec.hopf, &dec.crossing, r, t);
            assert!(rep.passed(), "{rep}");
        }
    }

    #[test]
    fn noncentral_twist_fails_crossing_axiom() {
        let dec = sweedler_decorated(0);
        let r = dec.rmatrix.as_ref().unwrap();
        let theta: GradedVector = (0..2).map(|a| dec.hopf.basis(a, 1)).collect();
        let rep = verify_twist(&dec.hopf, &dec.crossing, r, &theta);
        assert!(!rep.get("twist.crossing").unwrap().passed());
    }

    #[test]
    fn singular_twist_is_refused() {
        let dec = sweedler_decorated(0);
        let r = dec.rmatrix.as_ref().unwrap();
        let theta: GradedVector = (0..2).map(|a| dec.hopf.basis(a, 2)).collect();
        let rep = verify_twist(&dec.hopf, &dec.crossing, r, &theta);
        assert_eq!(rep.checks.len(), 1);
        assert_eq!(rep.checks[0].status, crate::Status::Refused);
    }

    #[test]
    fn ribbon_g_and_g_from_r_on_sweedler() {
        let dec = sweedler_decorated(0);
        let (h, phi) = (&dec.hopf, &dec.crossing);
        let r = dec.rmatrix.as_ref().unwrap();
        let theta = h.unit_family();
        let dr = drinfeld_u(h, phi, r);
        let gg = g_element(h, &dr, &theta);
        let rep = check_ribbon_g(h, phi, &dr, &theta, &gg);
        assert!(rep.passed(), "{rep}");
        let d = distinguished(h).unwrap();
        let hat = phi_hat(h, phi, &d).unwrap();
        let ell = ell_element(h, &dr).unwrap();
        let rep = g_from_r(h, r, &d, &hat, &ell, Some(&gg));
        assert!(rep.passed(), "{rep}");
        // Oracle: ν(g) = -1 and R_0 gives h_1 = (id⊗ν)(R_0) = g.
        assert_eq!(h_element(h, r, &d.nu)[0], h.basis(0, 1));
    }

    #[test]
    fn mirror_passes_and_is_involutive() {
        let mut dec = sweedler_decorated(1);
        dec.twist = Some(dec.hopf.unit_family());
        let m = mirror(&dec).unwrap();
        assert!(verify_all(&m.hopf).passed());
        assert!(verify_crossing(&m.hopf, &m.crossing).passed());
        let mr = m.rmatrix.as_ref().unwrap();
        let rep = verify_r(&m.hopf, &m.crossing, mr, None);
        assert!(rep.passed(), "{rep}");
        assert!(verify_twist(&m.hopf, &m.crossing, mr, m.twist.as_ref().unwrap()).passed());
        assert!(check_mirror_drinfeld(&dec, &m).passed());
        assert_eq!(mirror(&m).unwrap(), dec);
    }

    #[test]
    fn coop_passes() {
        let mut dec = sweedler_decorated(1);
        dec.twist = Some(dec.hopf.unit_family());
        let c = coop_qt(&dec).unwrap();
        assert!(verify_all(&c.hopf).passed());
        assert!(verify_crossing(&c.hopf, &c.crossing).passed());
        let rc = c.rmatrix.as_ref().unwrap();
        let rep = verify_r(&c.hopf, &c.crossing, rc, None);
        assert!(rep.passed(), "{rep}");
        assert!(verify_twist(&c.hopf, &c.crossing, rc, c.twist.as_ref().unwrap()).passed());
        let rep = check_coop(&dec, &c);
        assert!(rep.passed(), "{rep}");
    }
}
