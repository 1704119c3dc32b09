//! Hopf π-coalgebras stored by structure constants.
//!
//! Components are indexed by group elements `0..n`. Comultiplications are
//! stored in a flat table with `Δ_{α,β}` at position `α * n + β`, as a map
//! `H_{αβ} → H_α ⊗ H_β` of shape `(d_α d_β) × d_{αβ}`. The antipode `S_α`
//! maps `H_α` to `H_{α⁻¹}`.
//!
//! Constructors validate shapes only. Semantic validity is established by the
//! verifiers, which return reports rather than errors so that deliberately
//! broken instances can be built and inspected.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::group::FiniteGroup;
use crate::linalg::{
    apply_kron, basis_vector, contract_left, contract_right, dot, flip_vector, kron_vectors,
    zero_vector, Bilinear, LinearMap, Vector,
};
use crate::report::{compare, Check, Failure, Kind, Report};

/// A family of vectors `x_α ∈ H_α`, indexed by group element.
pub type GradedVector = Vec<Vector>;

/// A family of linear forms `f_α` on `H_α`, each stored as a coordinate row.
pub type GradedCovector = Vec<Vector>;

/// The structure constants of a π-coalgebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiCoalgebraData {
    group: FiniteGroup,
    field: Field,
    dims: Vec<usize>,
    comul: Vec<LinearMap>,
    counit: Vector,
}

impl PiCoalgebraData {
    /// Checks that every map has the shape dictated by `dims`.
    pub fn new(
        group: FiniteGroup,
        field: Field,
        dims: Vec<usize>,
        comul: Vec<LinearMap>,
        counit: Vector,
    ) -> Result<Self> {
        let n = group.order();
        if dims.len() != n {
            return Err(Error::Shape(format!(
                "{} dimensions for a group of order {n}",
                dims.len()
            )));
        }
        if comul.len() != n * n {
            return Err(Error::Shape(format!(
                "{} comultiplications, expected {}",
                comul.len(),
                n * n
            )));
        }
        for a in 0..n {
            for b in 0..n {
                let m = &comul[a * n + b];
                let want = (dims[a] * dims[b], dims[group.mul(a, b)]);
                if (m.rows(), m.cols()) != want || m.field() != field {
                    return Err(Error::Shape(format!(
                        "comultiplication ({a},{b}) is {}x{}, expected {}x{}",
                        m.rows(),
                        m.cols(),
                        want.0,
                        want.1
                    )));
                }
            }
        }
        if counit.len() != dims[group.identity()] {
            return Err(Error::Shape(format!(
                "counit has length {}, expected {}",
                counit.len(),
                dims[group.identity()]
            )));
        }
        Ok(PiCoalgebraData {
            group,
            field,
            dims,
            comul,
            counit,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, a: usize) -> usize {
        self.dims[a]
    }

    /// `Δ_{α,β}: H_{αβ} → H_α ⊗ H_β`.
    pub fn comul(&self, a: usize, b: usize) -> &LinearMap {
        &self.comul[a * self.group.order() + b]
    }

    pub fn counit(&self) -> &Vector {
        &self.counit
    }
}

/// The structure constants of a Hopf π-coalgebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfPiData {
    coalgebra: PiCoalgebraData,
    mult: Vec<Bilinear>,
    unit: GradedVector,
    antipode: Vec<LinearMap>,
}

/// The raw parts of a [`HopfPiData`], for building and modifying instances.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfParts {
    pub group: FiniteGroup,
    pub field: Field,
    pub dims: Vec<usize>,
    pub mult: Vec<Bilinear>,
    pub unit: GradedVector,
    /// `Δ_{α,β}` at position `α * n + β`.
    pub comul: Vec<LinearMap>,
    pub counit: Vector,
    pub antipode: Vec<LinearMap>,
}

impl HopfPiData {
    pub fn new(
        coalgebra: PiCoalgebraData,
        mult: Vec<Bilinear>,
        unit: GradedVector,
        antipode: Vec<LinearMap>,
    ) -> Result<Self> {
        let g = &coalgebra.group;
        let n = g.order();
        if mult.len() != n || unit.len() != n || antipode.len() != n {
            return Err(Error::Shape(
                "per-component families must have one entry per group element".into(),
            ));
        }
        for a in 0..n {
            let d = coalgebra.dims[a];
            let m = &mult[a];
            if (m.out_dim(), m.left_dim(), m.right_dim()) != (d, d, d)
                || m.field() != coalgebra.field
            {
                return Err(Error::Shape(format!(
                    "multiplication of component {a} has the wrong shape"
                )));
            }
            if unit[a].len() != d {
                return Err(Error::Shape(format!(
                    "unit of component {a} has length {}, expected {d}",
                    unit[a].len()
                )));
            }
            let s = &antipode[a];
            let want = (coalgebra.dims[g.inv(a)], d);
            if (s.rows(), s.cols()) != want || s.field() != coalgebra.field {
                return Err(Error::Shape(format!(
                    "antipode of component {a} is {}x{}, expected {}x{}",
                    s.rows(),
                    s.cols(),
                    want.0,
                    want.1
                )));
            }
        }
        Ok(HopfPiData {
            coalgebra,
            mult,
            unit,
            antipode,
        })
    }

    pub fn from_parts(p: HopfParts) -> Result<Self> {
        let co = PiCoalgebraData::new(p.group, p.field, p.dims, p.comul, p.counit)?;
        HopfPiData::new(co, p.mult, p.unit, p.antipode)
    }

    pub fn to_parts(&self) -> HopfParts {
        HopfParts {
            group: self.coalgebra.group.clone(),
            field: self.coalgebra.field,
            dims: self.coalgebra.dims.clone(),
            mult: self.mult.clone(),
            unit: self.unit.clone(),
            comul: self.coalgebra.comul.clone(),
            counit: self.coalgebra.counit.clone(),
            antipode: self.antipode.clone(),
        }
    }

    pub fn coalgebra(&self) -> &PiCoalgebraData {
        &self.coalgebra
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.coalgebra.group
    }

    pub fn field(&self) -> Field {
        self.coalgebra.field
    }

    pub fn order(&self) -> usize {
        self.coalgebra.group.order()
    }

    pub fn dims(&self) -> &[usize] {
        &self.coalgebra.dims
    }

    pub fn dim(&self, a: usize) -> usize {
        self.coalgebra.dims[a]
    }

    pub fn comul(&self, a: usize, b: usize) -> &LinearMap {
        self.coalgebra.comul(a, b)
    }

    pub fn counit(&self) -> &Vector {
        &self.coalgebra.counit
    }

    pub fn mult(&self, a: usize) -> &Bilinear {
        &self.mult[a]
    }

    pub fn unit(&self, a: usize) -> &Vector {
        &self.unit[a]
    }

    pub fn units(&self) -> &GradedVector {
        &self.unit
    }

    /// `S_α: H_α → H_{α⁻¹}`.
    pub fn antipode(&self, a: usize) -> &LinearMap {
        &self.antipode[a]
    }

    /// The product `xy` in `H_α`.
    pub fn product(&self, a: usize, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.mult[a].product(x, y)
    }

    /// The product of several elements of `H_α`, left to right.
    pub fn product_all(&self, a: usize, xs: &[&[Scalar]]) -> Vector {
        xs.iter()
            .fold(self.unit[a].clone(), |acc, x| self.product(a, &acc, x))
    }

    pub fn basis(&self, a: usize, i: usize) -> Vector {
        basis_vector(self.field(), self.dim(a), i)
    }

    pub fn zero(&self, a: usize) -> Vector {
        zero_vector(self.field(), self.dim(a))
    }

    /// The counit value `ε(x)` for `x ∈ H_1`.
    pub fn epsilon(&self, x: &[Scalar]) -> Scalar {
        dot(self.field(), self.counit(), x)
    }

    /// The multiplication on `H_α ⊗ H_β`.
    pub fn tensor_mult(&self, a: usize, b: usize) -> Bilinear {
        self.mult[a].tensor(&self.mult[b])
    }

    /// The grouplike family `1 = (1_α)`.
    pub fn unit_family(&self) -> GradedVector {
        self.unit.clone()
    }

    /// True when every component is commutative.
    pub fn is_commutative(&self) -> bool {
        (0..self.order()).all(|a| self.mult[a] == self.mult[a].opposite())
    }
}

/// Formats a basis witness `e_i`.
pub fn witness(i: usize) -> String {
    format!("e_{i}")
}

/// Formats a pair of basis witnesses.
pub fn witness2(i: usize, j: usize) -> String {
    format!("(e_{i}, e_{j})")
}

pub(crate) fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect()
}

pub(crate) fn all_triples(n: usize) -> Vec<(usize, usize, usize)> {
    (0..n)
        .flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))))
        .collect()
}

/// Runs `f` over the items in parallel and concatenates the outcomes in order.
pub(crate) fn par_outcomes<T: Sync, F>(items: &[T], f: F) -> Vec<Option<Failure>>
where
    F: Fn(&T) -> Vec<Option<Failure>> + Sync + Send,
{
    items
        .par_iter()
        .map(f)
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// Verifies coassociativity and counitality of a π-coalgebra.
pub fn verify_coalgebra(c: &PiCoalgebraData) -> Report {
    let g = c.group();
    let k = c.field();
    let n = g.order();
    let id = g.identity();
    let triples = all_triples(n);
    let coassoc = par_outcomes(&triples, |&(a, b, cc)| {
        let ab = g.mul(a, b);
        let bc = g.mul(b, cc);
        let abc = g.mul(ab, cc);
        let ia = LinearMap::identity(k, c.dim(a));
        let ic = LinearMap::identity(k, c.dim(cc));
        (0..c.dim(abc))
            .map(|i| {
                let lhs = apply_kron(k, &[c.comul(a, b), &ic], &c.comul(ab, cc).column(i));
                let rhs = apply_kron(k, &[&ia, c.comul(b, cc)], &c.comul(a, bc).column(i));
                compare(&[a, b, cc], || witness(i), &lhs, &rhs)
            })
            .collect()
    });
    let counit = par_outcomes(&(0..n).collect::<Vec<_>>(), |&a| {
        let d = c.dim(a);
        let d1 = c.dim(id);
        let mut out = Vec::new();
        for i in 0..d {
            let e = basis_vector(k, d, i);
            let right = contract_right(k, &c.comul(a, id).column(i), d, d1, c.counit());
            out.push(compare(
                &[a],
                || format!("{} via (id⊗ε)Δ_(α,1)", witness(i)),
                &right,
                &e,
            ));
            let left = contract_left(k, c.counit(), &c.comul(id, a).column(i), d1, d);
            out.push(compare(
                &[a],
                || format!("{} via (ε⊗id)Δ_(1,α)", witness(i)),
                &left,
                &e,
            ));
        }
        out
    });
    let mut r = Report::new();
    r.push(Check::from_outcomes(
        "coalgebra.coassociativity",
        "(Δ_{α,β}⊗id)Δ_{αβ,γ} = (id⊗Δ_{β,γ})Δ_{α,βγ}",
        Kind::Axiom,
        coassoc,
    ));
    r.push(Check::from_outcomes(
        "coalgebra.counit",
        "(id⊗ε)Δ_{α,1} = id = (ε⊗id)Δ_{1,α}",
        Kind::Axiom,
        counit,
    ));
    r
}

/// Verifies the algebra axioms, multiplicativity of ε and Δ, and the antipode axiom.
///
/// Only the Hopf layer is checked; run [`verify_coalgebra`] first.
pub fn verify_hopf(h: &HopfPiData) -> Report {
    let g = h.group();
    let k = h.field();
    let n = g.order();
    let id = g.identity();
    let comps: Vec<usize> = (0..n).collect();

    let assoc = par_outcomes(&comps, |&a| {
        let d = h.dim(a);
        let mut out = Vec::with_capacity(d * d * d);
        for i in 0..d {
            for j in 0..d {
                let ij = h.product(a, &h.basis(a, i), &h.basis(a, j));
                for l in 0..d {
                    let el = h.basis(a, l);
                    let lhs = h.product(a, &ij, &el);
                    let jl = h.product(a, &h.basis(a, j), &el);
                    let rhs = h.product(a, &h.basis(a, i), &jl);
                    out.push(compare(
                        &[a],
                        || format!("(e_{i}, e_{j}, e_{l})"),
                        &lhs,
                        &rhs,
                    ));
                }
            }
        }
        out
    });

    let unit = par_outcomes(&comps, |&a| {
        (0..h.dim(a))
            .flat_map(|i| {
                let e = h.basis(a, i);
                let l = h.product(a, h.unit(a), &e);
                let r = h.product(a, &e, h.unit(a));
                [
                    compare(&[a], || format!("1·{}", witness(i)), &l, &e),
                    compare(&[a], || format!("{}·1", witness(i)), &r, &e),
                ]
            })
            .collect()
    });

    let d1 = h.dim(id);
    let mut eps = Vec::new();
    eps.push(compare(
        &[id],
        || "1_1".into(),
        &[h.epsilon(h.unit(id))],
        &[k.one()],
    ));
    for i in 0..d1 {
        for j in 0..d1 {
            let lhs = h.epsilon(&h.product(id, &h.basis(id, i), &h.basis(id, j)));
            let rhs = &h.counit()[i] * &h.counit()[j];
            eps.push(compare(&[id], || witness2(i, j), &[lhs], &[rhs]));
        }
    }

    let pairs = all_pairs(n);
    let comul_mult = par_outcomes(&pairs, |&(a, b)| {
        let ab = g.mul(a, b);
        let delta = h.comul(a, b);
        let tm = h.tensor_mult(a, b);
        let mut out = Vec::new();
        let unit_img = delta.apply(h.unit(ab));
        let unit_rhs = kron_vectors(k, h.unit(a), h.unit(b));
        out.push(compare(&[a, b], || "1".into(), &unit_img, &unit_rhs));
        let cols: Vec<Vector> = (0..h.dim(ab)).map(|i| delta.column(i)).collect();
        for i in 0..h.dim(ab) {
            for j in 0..h.dim(ab) {
                let lhs = delta.apply(&h.product(ab, &h.basis(ab, i), &h.basis(ab, j)));
                let rhs = tm.product(&cols[i], &cols[j]);
                out.push(compare(&[a, b], || witness2(i, j), &lhs, &rhs));
            }
        }
        out
    });

    let antipode = par_outcomes(&comps, |&a| {
        let ai = g.inv(a);
        let s = h.antipode(ai);
        let ia = LinearMap::identity(k, h.dim(a));
        let mut out = Vec::new();
        for i in 0..d1 {
            let rhs: Vector = h.unit(a).iter().map(|u| u * &h.counit()[i]).collect();
            let left = h
                .mult(a)
                .apply_flat(&apply_kron(k, &[s, &ia], &h.comul(ai, a).column(i)));
            out.push(compare(
                &[a],
                || format!("{} via m(S⊗id)Δ", witness(i)),
                &left,
                &rhs,
            ));
            let right = h
                .mult(a)
                .apply_flat(&apply_kron(k, &[&ia, s], &h.comul(a, ai).column(i)));
            out.push(compare(
                &[a],
                || format!("{} via m(id⊗S)Δ", witness(i)),
                &right,
                &rhs,
            ));
        }
        out
    });

    let mut r = Report::new();
    r.push(Check::from_outcomes(
        "algebra.associativity",
        "(xy)z = x(yz) in H_α",
        Kind::Axiom,
        assoc,
    ));
    r.push(Check::from_outcomes(
        "algebra.unit",
        "1_α x = x = x 1_α",
        Kind::Axiom,
        unit,
    ));
    r.push(Check::from_outcomes(
        "counit.multiplicative",
        "ε(xy) = ε(x)ε(y), ε(1_1) = 1",
        Kind::Axiom,
        eps,
    ));
    r.push(Check::from_outcomes(
        "comultiplication.multiplicative",
        "Δ_{α,β}(xy) = Δ_{α,β}(x)Δ_{α,β}(y), Δ_{α,β}(1_{αβ}) = 1_α⊗1_β",
        Kind::Axiom,
        comul_mult,
    ));
    r.push(Check::from_outcomes(
        "antipode.axiom",
        "m_α(S_{α⁻¹}⊗id)Δ_{α⁻¹,α} = ε1_α = m_α(id⊗S_{α⁻¹})Δ_{α,α⁻¹}",
        Kind::Axiom,
        antipode,
    ));
    r
}

/// Verifies the consequences: S anti-multiplicative, unital,
/// anti-comultiplicative, and counit preserving.
pub fn check_antipode_properties(h: &HopfPiData) -> Report {
    let g = h.group();
    let k = h.field();
    let n = g.order();
    let id = g.identity();
    let comps: Vec<usize> = (0..n).collect();

    let anti_mult = par_outcomes(&comps, |&a| {
        let ai = g.inv(a);
        let s = h.antipode(a);
        let images: Vec<Vector> = (0..h.dim(a)).map(|i| s.column(i)).collect();
        let mut out = Vec::new();
        for i in 0..h.dim(a) {
            for j in 0..h.dim(a) {
                let lhs = s.apply(&h.product(a, &h.basis(a, i), &h.basis(a, j)));
                let rhs = h.product(ai, &images[j], &images[i]);
                out.push(compare(&[a], || witness2(i, j), &lhs, &rhs));
            }
        }
        out
    });

    let unital: Vec<Option<Failure>> = comps
        .iter()
        .map(|&a| {
            compare(
                &[a],
                || "1_α".into(),
                &h.antipode(a).apply(h.unit(a)),
                h.unit(g.inv(a)),
            )
        })
        .collect();

    let pairs = all_pairs(n);
    let anti_comul = par_outcomes(&pairs, |&(a, b)| {
        let (ai, bi) = (g.inv(a), g.inv(b));
        let ab = g.mul(a, b);
        let left_map = h.comul(bi, ai);
        (0..h.dim(ab))
            .map(|i| {
                let lhs = left_map.apply(&h.antipode(ab).column(i));
                let t = apply_kron(k, &[h.antipode(a), h.antipode(b)], &h.comul(a, b).column(i));
                let rhs = flip_vector(k, &t, h.dim(ai), h.dim(bi));
                compare(&[a, b], || witness(i), &lhs, &rhs)
            })
            .collect()
    });

    let counit_lhs = h.antipode(id).pull_back(h.counit());
    let counit = vec![compare(&[id], || "ε".into(), &counit_lhs, h.counit())];

    let mut r = Report::new();
    r.push(Check::from_outcomes(
        "antipode.anti-multiplicative",
        "S_α(xy) = S_α(y)S_α(x)",
        Kind::Theorem,
        anti_mult,
    ));
    r.push(Check::from_outcomes(
        "antipode.unital",
        "S_α(1_α) = 1_{α⁻¹}",
        Kind::Theorem,
        unital,
    ));
    r.push(Check::from_outcomes(
        "antipode.anti-comultiplicative",
        "Δ_{β⁻¹,α⁻¹}S_{αβ} = σ(S_α⊗S_β)Δ_{α,β}",
        Kind::Theorem,
        anti_comul,
    ));
    r.push(Check::from_outcomes(
        "antipode.counit",
        "εS_1 = ε",
        Kind::Theorem,
        counit,
    ));
    r
}

/// The support `{α : d_α > 0}`, which must be a subgroup.
pub fn support_subgroup(h: &HopfPiData) -> Result<Vec<usize>> {
    let g = h.group();
    let support: Vec<usize> = g.elements().filter(|&a| h.dim(a) > 0).collect();
    if !support.contains(&g.identity()) {
        return Err(Error::Structure("the identity component is zero".into()));
    }
    for &a in &support {
        if h.dim(g.inv(a)) == 0 {
            return Err(Error::Structure(format!(
                "support contains {a} but not its inverse {}",
                g.inv(a)
            )));
        }
        for &b in &support {
            if h.dim(g.mul(a, b)) == 0 {
                return Err(Error::Structure(format!(
                    "support contains {a} and {b} but not their product {}",
                    g.mul(a, b)
                )));
            }
        }
    }
    Ok(support)
}

fn invert_antipodes(h: &HopfPiData) -> Result<Vec<LinearMap>> {
    (0..h.order())
        .map(|a| {
            h.antipode(a)
                .inverse()
                .ok_or_else(|| Error::NotInvertible(format!("antipode S_{a} is not bijective")))
        })
        .collect()
}

/// The opposite Hopf π-coalgebra: products reversed, `S^op_α = S_{α⁻¹}^{-1}`.
pub fn opposite(h: &HopfPiData) -> Result<HopfPiData> {
    let inv = invert_antipodes(h)?;
    let g = h.group();
    let mut p = h.to_parts();
    p.mult = p.mult.iter().map(Bilinear::opposite).collect();
    p.antipode = (0..h.order()).map(|a| inv[g.inv(a)].clone()).collect();
    HopfPiData::from_parts(p)
}

fn cop_parts(h: &HopfPiData) -> HopfParts {
    let g = h.group();
    let k = h.field();
    let n = h.order();
    let mut p = h.to_parts();
    p.dims = (0..n).map(|a| h.dim(g.inv(a))).collect();
    p.mult = (0..n).map(|a| h.mult(g.inv(a)).clone()).collect();
    p.unit = (0..n).map(|a| h.unit(g.inv(a)).clone()).collect();
    p.comul = all_pairs(n)
        .into_iter()
        .map(|(a, b)| {
            let (ai, bi) = (g.inv(a), g.inv(b));
            LinearMap::flip(k, h.dim(bi), h.dim(ai)).compose(h.comul(bi, ai))
        })
        .collect();
    p
}

/// The coopposite: `H^cop_α = H_{α⁻¹}`, `Δ^cop_{α,β} = σΔ_{β⁻¹,α⁻¹}`, `S^cop_α = S_α^{-1}`.
pub fn coopposite(h: &HopfPiData) -> Result<HopfPiData> {
    let inv = invert_antipodes(h)?;
    let mut p = cop_parts(h);
    p.antipode = inv;
    HopfPiData::from_parts(p)
}

/// The op-cop structure: `H_{α⁻¹}^op` with `Δ^cop` and `S_{α⁻¹}`. Needs no
/// bijectivity of the antipode.
pub fn op_cop(h: &HopfPiData) -> HopfPiData {
    let g = h.group();
    let mut p = cop_parts(h);
    p.mult = p.mult.iter().map(Bilinear::opposite).collect();
    p.antipode = (0..h.order())
        .map(|a| h.antipode(g.inv(a)).clone())
        .collect();
    HopfPiData::from_parts(p).expect("op-cop preserves shapes")
}

/// A Hopf algebra (trivial grading group) together with a degree for each basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedHopf {
    pub hopf: HopfPiData,
    pub grading: Vec<usize>,
    pub group: FiniteGroup,
}

fn offsets(dims: &[usize]) -> Vec<usize> {
    let mut off = Vec::with_capacity(dims.len());
    let mut acc = 0;
    for d in dims {
        off.push(acc);
        acc += d;
    }
    off
}

/// The sum `⊕_α H_α` as an ordinary π-graded Hopf algebra.
pub fn pack_finite(h: &HopfPiData) -> GradedHopf {
    let g = h.group();
    let k = h.field();
    let n = h.order();
    let off = offsets(h.dims());
    let total: usize = h.dims().iter().sum();
    let grading: Vec<usize> = (0..n)
        .flat_map(|a| std::iter::repeat_n(a, h.dim(a)))
        .collect();

    let mut c = vec![k.zero(); total * total * total];
    for a in 0..n {
        let d = h.dim(a);
        let o = off[a];
        for i in 0..d {
            for j in 0..d {
                for l in 0..d {
                    c[((o + i) * total + o + j) * total + o + l] = h.mult(a).constant(i, j, l);
                }
            }
        }
    }
    let mult = Bilinear::from_constants(k, total, total, total, &c).expect("packed shape");
    let mut unit = zero_vector(k, total);
    for a in 0..n {
        for i in 0..h.dim(a) {
            unit[off[a] + i] = h.unit(a)[i].clone();
        }
    }
    let mut comul = LinearMap::zeros(k, total * total, total);
    for (b, cc) in all_pairs(n) {
        let a = g.mul(b, cc);
        let delta = h.comul(b, cc);
        for x in 0..h.dim(a) {
            for i in 0..h.dim(b) {
                for j in 0..h.dim(cc) {
                    let v = delta.get(i * h.dim(cc) + j, x);
                    if !v.is_zero() {
                        comul.set((off[b] + i) * total + off[cc] + j, off[a] + x, v.clone());
                    }
                }
            }
        }
    }
    let mut counit = zero_vector(k, total);
    let id = g.identity();
    for i in 0..h.dim(id) {
        counit[off[id] + i] = h.counit()[i].clone();
    }
    let mut antipode = LinearMap::zeros(k, total, total);
    for a in 0..n {
        let ai = g.inv(a);
        for x in 0..h.dim(a) {
            for y in 0..h.dim(ai) {
                antipode.set(off[ai] + y, off[a] + x, h.antipode(a).get(y, x).clone());
            }
        }
    }
    let hopf = HopfPiData::from_parts(HopfParts {
        group: FiniteGroup::cyclic(1),
        field: k,
        dims: vec![total],
        mult: vec![mult],
        unit: vec![unit],
        comul: vec![comul],
        counit,
        antipode: vec![antipode],
    })
    .expect("packed shape");
    GradedHopf {
        hopf,
        grading,
        group: g.clone(),
    }
}

/// Splits a graded Hopf algebra into its Hopf π-coalgebra, given the degree
/// of each basis vector.
pub fn unpack_graded(
    packed: &HopfPiData,
    grading: &[usize],
    group: &FiniteGroup,
) -> Result<HopfPiData> {
    if packed.order() != 1 {
        return Err(Error::Precondition(
            "unpacking needs a Hopf algebra over the trivial group".into(),
        ));
    }
    let k = packed.field();
    let total = packed.dim(0);
    if grading.len() != total {
        return Err(Error::Shape(format!(
            "grading has {} entries for dimension {total}",
            grading.len()
        )));
    }
    let n = group.order();
    if let Some(&bad) = grading.iter().find(|&&a| a >= n) {
        return Err(Error::Shape(format!("degree {bad} is not a group element")));
    }
    let members: Vec<Vec<usize>> = (0..n)
        .map(|a| (0..total).filter(|&i| grading[i] == a).collect())
        .collect();
    let id = group.identity();
    let viol = |degree: usize, detail: String| Err(Error::Grading { degree, detail });

    let delta = packed.comul(0, 0);
    for x in 0..total {
        for r in 0..total * total {
            let v = delta.get(r, x);
            if !v.is_zero() && group.mul(grading[r / total], grading[r % total]) != grading[x] {
                return viol(
                    grading[x],
                    format!(
                        "Δ(e_{x}) has a term e_{}⊗e_{} of the wrong degree",
                        r / total,
                        r % total
                    ),
                );
            }
        }
        if grading[x] != id && !packed.counit()[x].is_zero() {
            return viol(grading[x], format!("ε(e_{x}) is nonzero"));
        }
        for y in 0..total {
            let prod = packed.product(0, &packed.basis(0, x), &packed.basis(0, y));
            for (z, c) in prod.iter().enumerate() {
                if !c.is_zero() && (grading[x] != grading[y] || grading[z] != grading[x]) {
                    return viol(
                        grading[x],
                        format!("e_{x}·e_{y} has a term e_{z} outside the component"),
                    );
                }
            }
        }
        let s = packed.antipode(0).column(x);
        for (z, c) in s.iter().enumerate() {
            if !c.is_zero() && grading[z] != group.inv(grading[x]) {
                return viol(
                    grading[x],
                    format!("S(e_{x}) has a term e_{z} of the wrong degree"),
                );
            }
        }
    }

    let dims: Vec<usize> = members.iter().map(Vec::len).collect();
    let mult = (0..n)
        .map(|a| {
            let d = dims[a];
            let mut c = vec![k.zero(); d * d * d];
            for (li, &i) in members[a].iter().enumerate() {
                for (lj, &j) in members[a].iter().enumerate() {
                    for (ll, &l) in members[a].iter().enumerate() {
                        c[(li * d + lj) * d + ll] = packed.mult(0).constant(i, j, l);
                    }
                }
            }
            Bilinear::from_constants(k, d, d, d, &c)
        })
        .collect::<Result<Vec<_>>>()?;
    let unit = (0..n)
        .map(|a| {
            members[a]
                .iter()
                .map(|&i| packed.unit(0)[i].clone())
                .collect()
        })
        .collect();
    let comul = all_pairs(n)
        .into_iter()
        .map(|(a, b)| {
            let ab = group.mul(a, b);
            LinearMap::from_fn(k, dims[a] * dims[b], dims[ab], |r, x| {
                let (i, j) = (members[a][r / dims[b]], members[b][r % dims[b]]);
                delta.get(i * total + j, members[ab][x]).clone()
            })
        })
        .collect();
    let counit = members[id]
        .iter()
        .map(|&i| packed.counit()[i].clone())
        .collect();
    let antipode = (0..n)
        .map(|a| {
            let ai = group.inv(a);
            LinearMap::from_fn(k, dims[ai], dims[a], |y, x| {
                packed
                    .antipode(0)
                    .get(members[ai][y], members[a][x])
                    .clone()
            })
        })
        .collect();
    HopfPiData::from_parts(HopfParts {
        group: group.clone(),
        field: k,
        dims,
        mult,
        unit,
        comul,
        counit,
        antipode,
    })
}

/// The dual Hopf algebra `⊕_α H_α*`, graded by the dual basis `e^α_i`.
///
/// Product is convolution, `Δ(f) = m_α*(f)`, `ε(f) = f(1_α)` and
/// `S(f) = f∘S_{α⁻¹}`.
pub fn dual_hopf(h: &HopfPiData) -> GradedHopf {
    let g = h.group();
    let k = h.field();
    let n = h.order();
    let off = offsets(h.dims());
    let total: usize = h.dims().iter().sum();
    let grading: Vec<usize> = (0..n)
        .flat_map(|a| std::iter::repeat_n(a, h.dim(a)))
        .collect();

    let mut c = vec![k.zero(); total * total * total];
    for (a, b) in all_pairs(n) {
        let ab = g.mul(a, b);
        let delta = h.comul(a, b);
        for i in 0..h.dim(a) {
            for j in 0..h.dim(b) {
                for l in 0..h.dim(ab) {
                    let v = delta.get(i * h.dim(b) + j, l);
                    if !v.is_zero() {
                        c[((off[ab] + l) * total + off[a] + i) * total + off[b] + j] = v.clone();
                    }
                }
            }
        }
    }
    let mult = Bilinear::from_constants(k, total, total, total, &c).expect("dual shape");
    let id = g.identity();
    let mut unit = zero_vector(k, total);
    for i in 0..h.dim(id) {
        unit[off[id] + i] = h.counit()[i].clone();
    }
    let mut comul = LinearMap::zeros(k, total * total, total);
    for a in 0..n {
        let m = h.mult(a);
        for i in 0..h.dim(a) {
            for j in 0..h.dim(a) {
                for l in 0..h.dim(a) {
                    let v = m.constant(i, j, l);
                    if !v.is_zero() {
                        comul.set((off[a] + j) * total + off[a] + l, off[a] + i, v);
                    }
                }
            }
        }
    }
    let mut counit = zero_vector(k, total);
    for a in 0..n {
        for i in 0..h.dim(a) {
            counit[off[a] + i] = h.unit(a)[i].clone();
        }
    }
    let mut antipode = LinearMap::zeros(k, total, total);
    for a in 0..n {
        let ai = g.inv(a);
        let s = h.antipode(ai);
        for i in 0..h.dim(a) {
            for l in 0..h.dim(ai) {
                antipode.set(off[ai] + l, off[a] + i, s.get(i, l).clone());
            }
        }
    }
    let hopf = HopfPiData::from_parts(HopfParts {
        group: FiniteGroup::cyclic(1),
        field: k,
        dims: vec![total],
        mult: vec![mult],
        unit: vec![unit],
        comul: vec![comul],
        counit,
        antipode: vec![antipode],
    })
    .expect("dual shape");
    GradedHopf {
        hopf,
        grading,
        group: g.clone(),
    }
}

/// Checks that `x` is π-grouplike: `Δ_{α,β}(x_{αβ}) = x_α⊗x_β` and `ε(x_1) = 1`.
pub fn check_grouplike(
    h: &HopfPiData,
    x: &GradedVector,
    id: &str,
    name: &str,
    kind: Kind,
) -> Check {
    let g = h.group();
    let k = h.field();
    let pairs = all_pairs(h.order());
    let mut outcomes = par_outcomes(&pairs, |&(a, b)| {
        let lhs = h.comul(a, b).apply(&x[g.mul(a, b)]);
        let rhs = kron_vectors(k, &x[a], &x[b]);
        vec![compare(&[a, b], || format!("{name}_(αβ)"), &lhs, &rhs)]
    });
    let one = g.identity();
    outcomes.push(compare(
        &[one],
        || format!("ε({name}_1)"),
        &[h.epsilon(&x[one])],
        &[k.one()],
    ));
    Check::from_outcomes(
        id,
        &format!("Δ_{{α,β}}({name}_{{αβ}}) = {name}_α⊗{name}_β, ε({name}_1) = 1"),
        kind,
        outcomes,
    )
}

/// Runs the coalgebra, Hopf and antipode-property verifiers in sequence.
pub fn verify_all(h: &HopfPiData) -> Report {
    let mut r = verify_coalgebra(h.coalgebra());
    r.extend(verify_hopf(h));
    r.extend(check_antipode_properties(h));
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;

    fn q() -> Field {
        Field::Rational
    }

    fn assert_valid(h: &HopfPiData) {
        let r = verify_all(h);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn trivial_family_on_z2_passes() {
        assert_valid(&instances::trivial_instance(q(), &FiniteGroup::cyclic(2)));
    }

    #[test]
    fn scaled_counit_comultiplication_fails_at_identity() {
        let mut p = instances::trivial_instance(q(), &FiniteGroup::cyclic(2)).to_parts();
        p.comul[0] = p.comul[0].scale(&q().from_i64(2));
        let h = HopfPiData::from_parts(p).unwrap();
        let r = verify_coalgebra(h.coalgebra());
        let c = r.get("coalgebra.counit").unwrap();
        assert!(!c.passed());
        assert_eq!(c.failures[0].indices, vec![0]);
        assert!(c.failures[0].witness.starts_with("e_0"));
    }

    #[test]
    fn sweedler_passes() {
        assert_valid(&instances::sweedler(q()).unwrap());
    }

    #[test]
    fn trivial_family_on_s3_passes() {
        assert_valid(&instances::trivial_instance(
            q(),
            &FiniteGroup::symmetric3(),
        ));
    }

    #[test]
    fn altered_sweedler_antipode_fails_at_x() {
        let h = instances::sweedler(q()).unwrap();
        let mut p = h.to_parts();
        // S(x) = +gx instead of -gx.
        p.antipode[0].set(3, 2, q().one());
        let bad = HopfPiData::from_parts(p).unwrap();
        let r = verify_hopf(&bad);
        let c = r.get("antipode.axiom").unwrap();
        assert!(!c.passed());
        assert!(c.failures.iter().all(|f| f.witness.starts_with("e_2")));
    }

    #[test]
    fn constant_family_passes() {
        let (h, _) = instances::constant_sweedler_z2(q()).unwrap();
        assert_valid(&h);
    }

    #[test]
    fn supports() {
        let z2 = FiniteGroup::cyclic(2);
        assert_eq!(
            support_subgroup(&instances::trivial_instance(q(), &z2)).unwrap(),
            vec![0, 1]
        );
        assert_eq!(
            support_subgroup(&instances::identity_supported(q(), &z2)).unwrap(),
            vec![0]
        );
        assert_eq!(
            support_subgroup(&instances::z4_supported_on_z2(q())).unwrap(),
            vec![0, 2]
        );
    }

    #[test]
    fn non_closed_support_detected() {
        // Z/3 with d_2 = 0 but d_1 = 1 is not closed under inverses.
        let z3 = FiniteGroup::cyclic(3);
        let mut p = instances::trivial_instance(q(), &z3).to_parts();
        p.dims[2] = 0;
        p.mult[2] = Bilinear::from_constants(q(), 0, 0, 0, &[]).unwrap();
        p.unit[2] = vec![];
        for a in 0..3 {
            for b in 0..3 {
                let ab = (a + b) % 3;
                p.comul[a * 3 + b] = LinearMap::zeros(q(), p.dims[a] * p.dims[b], p.dims[ab]);
            }
        }
        p.antipode = (0..3)
            .map(|a| LinearMap::zeros(q(), p.dims[(3 - a) % 3], p.dims[a]))
            .collect();
        let h = HopfPiData::from_parts(p).unwrap();
        assert!(matches!(support_subgroup(&h), Err(Error::Structure(_))));
    }

    #[test]
    fn op_and_cop_constructions() {
        let z2 = FiniteGroup::cyclic(2);
        let t = instances::trivial_instance(q(), &z2);
        assert_eq!(opposite(&t).unwrap(), t);
        assert_eq!(op_cop(&t), t);
        let s = instances::sweedler(q()).unwrap();
        assert_eq!(opposite(&opposite(&s).unwrap()).unwrap(), s);
        assert_eq!(coopposite(&coopposite(&s).unwrap()).unwrap(), s);
        assert_valid(&op_cop(&s));
        let (c, _) = instances::constant_sweedler_z2(q()).unwrap();
        assert_valid(&opposite(&c).unwrap());
        assert_valid(&coopposite(&c).unwrap());
        let (z3, _) = instances::constant_z3_inversion(q()).unwrap();
        assert_eq!(op_cop(&op_cop(&z3)), z3);
    }

    #[test]
    fn pack_round_trips() {
        let (c, _) = instances::constant_sweedler_z2(q()).unwrap();
        let packed = pack_finite(&c);
        assert_valid(&packed.hopf);
        assert_eq!(
            unpack_graded(&packed.hopf, &packed.grading, &packed.group).unwrap(),
            c
        );
        let s = instances::sweedler(q()).unwrap();
        assert_eq!(pack_finite(&s).hopf, s);
    }

    #[test]
    fn packed_trivial_z2_is_functions_on_z2() {
        let z2 = FiniteGroup::cyclic(2);
        let packed = pack_finite(&instances::trivial_instance(q(), &z2));
        assert_valid(&packed.hopf);
        assert_eq!(packed.hopf, instances::function_algebra(q(), &z2));
    }

    #[test]
    fn bad_grading_rejected() {
        let s = instances::sweedler(q()).unwrap();
        // Grading g in degree 1 of Z/2 breaks ε(C_α) = 0 for α ≠ 1.
        let err = unpack_graded(&s, &[0, 1, 0, 0], &FiniteGroup::cyclic(2)).unwrap_err();
        assert!(matches!(err, Error::Grading { .. }));
    }

    #[test]
    fn duals() {
        let z2 = FiniteGroup::cyclic(2);
        let d = dual_hopf(&instances::trivial_instance(q(), &z2));
        assert_valid(&d.hopf);
        assert_eq!(d.hopf, instances::group_algebra(q(), &z2));
        let z3 = FiniteGroup::cyclic(3);
        let d3 = dual_hopf(&instances::group_algebra(q(), &z3));
        assert_eq!(d3.hopf, instances::function_algebra(q(), &z3));
        let s = dual_hopf(&instances::sweedler(q()).unwrap());
        assert_valid(&s.hopf);
        assert_eq!(s.hopf.unit(0), instances::sweedler(q()).unwrap().counit());
    }
}
