//! Convolution products `Hom(H_α, A) × Hom(H_β, A) → Hom(H_{αβ}, A)`.
//!
//! The target is any finite-dimensional algebra `A`, given by its product and
//! unit. The convolution unit is `ε·1_A`, sitting at the identity index.

use crate::error::{Error, Result};
use crate::hopf::{witness, HopfPiData};
use crate::linalg::{apply_kron, Bilinear, LinearMap, Vector};
use crate::report::{Check, Failure, Kind};

/// A target algebra for convolution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetAlgebra {
    pub mult: Bilinear,
    pub unit: Vector,
}

impl TargetAlgebra {
    pub fn new(mult: Bilinear, unit: Vector) -> Result<Self> {
        let d = mult.out_dim();
        if mult.left_dim() != d || mult.right_dim() != d || unit.len() != d {
            return Err(Error::Shape("target algebra shapes disagree".into()));
        }
        Ok(TargetAlgebra { mult, unit })
    }

    /// The component `H_α` as a target algebra.
    pub fn component(h: &HopfPiData, a: usize) -> Self {
        TargetAlgebra {
            mult: h.mult(a).clone(),
            unit: h.unit(a).clone(),
        }
    }

    pub fn dim(&self) -> usize {
        self.mult.out_dim()
    }
}

/// A linear map `H_source → A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvElement {
    pub source: usize,
    pub map: LinearMap,
}

impl ConvElement {
    pub fn new(h: &HopfPiData, source: usize, map: LinearMap) -> Result<Self> {
        if map.cols() != h.dim(source) {
            return Err(Error::Shape(format!(
                "map has {} columns but H_{source} has dimension {}",
                map.cols(),
                h.dim(source)
            )));
        }
        Ok(ConvElement { source, map })
    }

    /// The identity of `H_α`, viewed in `Hom(H_α, H_α)`.
    pub fn identity(h: &HopfPiData, a: usize) -> Self {
        ConvElement {
            source: a,
            map: LinearMap::identity(h.field(), h.dim(a)),
        }
    }
}

/// The convolution unit `ε·1_A` at the identity index.
pub fn conv_unit(h: &HopfPiData, target: &TargetAlgebra) -> ConvElement {
    let k = h.field();
    let map =
        LinearMap::column_vector(k, &target.unit).compose(&LinearMap::row_vector(k, h.counit()));
    ConvElement {
        source: h.group().identity(),
        map,
    }
}

fn check_target(target: &TargetAlgebra, f: &ConvElement) -> Result<()> {
    if f.map.rows() != target.dim() {
        return Err(Error::Shape(format!(
            "map has {} rows but the target algebra has dimension {}",
            f.map.rows(),
            target.dim()
        )));
    }
    Ok(())
}

/// `f * g = m_A(f ⊗ g)Δ_{α,β}`.
pub fn conv_product(
    h: &HopfPiData,
    target: &TargetAlgebra,
    f: &ConvElement,
    g: &ConvElement,
) -> Result<ConvElement> {
    check_target(target, f)?;
    check_target(target, g)?;
    let (a, b) = (f.source, g.source);
    let ab = h.group().mul(a, b);
    let delta = h.comul(a, b);
    let cols: Vec<Vector> = (0..h.dim(ab))
        .map(|i| {
            target
                .mult
                .apply_flat(&apply_kron(h.field(), &[&f.map, &g.map], &delta.column(i)))
        })
        .collect();
    Ok(ConvElement {
        source: ab,
        map: LinearMap::from_columns(h.field(), target.dim(), &cols),
    })
}

/// Outcome of inverting an element of a convolution algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConvInverse {
    /// The two-sided inverse.
    Inverse(ConvElement),
    /// Only `f * x = ε1` is solvable.
    LeftOnly,
    /// Only `x * f = ε1` is solvable.
    RightOnly,
    /// Neither one-sided equation is solvable.
    None,
}

impl ConvInverse {
    pub fn inverse(self) -> Option<ConvElement> {
        match self {
            ConvInverse::Inverse(x) => Some(x),
            _ => None,
        }
    }
}

/// Solves `f * x = ε1_A = x * f` for `x` at the index `α⁻¹`, with both
/// one-sided equations stacked into one linear system.
pub fn conv_inverse(
    h: &HopfPiData,
    target: &TargetAlgebra,
    f: &ConvElement,
) -> Result<ConvInverse> {
    check_target(target, f)?;
    let k = h.field();
    let ai = h.group().inv(f.source);
    let dt = target.dim();
    let di = h.dim(ai);
    // Column (r, j) of each system is the convolution with the elementary map E_{rj}.
    let mut left_cols = Vec::with_capacity(dt * di);
    let mut right_cols = Vec::with_capacity(dt * di);
    for r in 0..dt {
        for j in 0..di {
            let mut e = LinearMap::zeros(k, dt, di);
            e.set(r, j, k.one());
            let x = ConvElement { source: ai, map: e };
            left_cols.push(conv_product(h, target, f, &x)?.map.entries().to_vec());
            right_cols.push(conv_product(h, target, &x, f)?.map.entries().to_vec());
        }
    }
    let unit = conv_unit(h, target).map.entries().to_vec();
    let rows = unit.len();
    let left = LinearMap::from_columns(k, rows, &left_cols);
    let right = LinearMap::from_columns(k, rows, &right_cols);
    let stacked = LinearMap::vstack(k, dt * di, &[left.clone(), right.clone()]);
    let rhs: Vector = unit.iter().chain(unit.iter()).cloned().collect();
    if let Some(x) = stacked.solve(&rhs)? {
        let map = LinearMap::new(k, dt, di, x)?;
        return Ok(ConvInverse::Inverse(ConvElement { source: ai, map }));
    }
    let l = left.solve(&unit)?.is_some();
    let r = right.solve(&unit)?.is_some();
    Ok(match (l, r) {
        (true, _) => ConvInverse::LeftOnly,
        (false, true) => ConvInverse::RightOnly,
        (false, false) => ConvInverse::None,
    })
}

/// The convolution inverse of `id_{H_{α⁻¹}}` in `Hom(H_α, H_{α⁻¹})` is the
/// stored `S_α`, for every `α`.
pub fn check_convolution_antipode(h: &HopfPiData) -> Check {
    let g = h.group();
    let outcomes = (0..h.order()).map(|a| {
        let ai = g.inv(a);
        let target = TargetAlgebra::component(h, ai);
        match conv_inverse(h, &target, &ConvElement::identity(h, ai)) {
            Ok(ConvInverse::Inverse(x)) => x.map.first_mismatch_column(h.antipode(a)).map(|c| {
                Failure::new(&[a], witness(c), &x.map.column(c), &h.antipode(a).column(c))
            }),
            Ok(other) => Some(Failure::described(
                &[a],
                "id",
                format!("{other:?}"),
                "two-sided inverse",
            )),
            Err(e) => Some(Failure::described(
                &[a],
                "id",
                e.to_string(),
                "two-sided inverse",
            )),
        }
    });
    Check::from_outcomes(
        "convolution.antipode",
        "id_{H_{α⁻¹}} * S_α = ε1 = S_α * id_{H_{α⁻¹}}",
        Kind::Theorem,
        outcomes.collect::<Vec<_>>(),
    )
}
