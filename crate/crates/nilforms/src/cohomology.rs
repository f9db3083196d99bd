//! Exact de Rham, Dolbeault, Bott-Chern and Aeppli cohomology of the
//! invariant complex, harmonic bases for a chosen metric, and the
//! quotient-membership solver with nonmembership witnesses.

use crate::error::MathError;
use crate::form::{basis_monomials, coords_to_form, form_to_coords, Form, Monomial};
use crate::linalg::{dot, QMatrix};
use crate::metric::MetricContext;
use crate::operators::{d_matrix_degree, operator_matrix, Op};
use crate::scalar::Q;
use crate::structure::StructurePresentation;
use std::collections::BTreeMap;

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Kind {
    DeRham,
    Dolbeault,
    BottChern,
    Aeppli,
}

impl Kind {
    pub fn name(&self) -> &'static str {
        match self {
            Kind::DeRham => "derham",
            Kind::Dolbeault => "dolbeault",
            Kind::BottChern => "bottchern",
            Kind::Aeppli => "aeppli",
        }
    }

    pub fn parse(s: &str) -> Option<Kind> {
        match s {
            "derham" => Some(Kind::DeRham),
            "dolbeault" => Some(Kind::Dolbeault),
            "bottchern" => Some(Kind::BottChern),
            "aeppli" => Some(Kind::Aeppli),
            _ => None,
        }
    }
}

/// Dimension table; de Rham is keyed by (k, 0) with total degree k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyTable {
    pub kind: Kind,
    pub dims: BTreeMap<(usize, usize), usize>,
}

/// h^{p,q} for one bidegree.
pub fn cohomology_dim(
    pres: &StructurePresentation,
    kind: Kind,
    p: usize,
    q: usize,
) -> Result<usize, MathError> {
    let n = pres.dim();
    match kind {
        Kind::DeRham => {
            let k = p;
            let dim_k = crate::form::basis_monomials_degree(n, k).len();
            let (_, _, dk) = d_matrix_degree(pres, k);
            let rank_prev = if k == 0 {
                0
            } else {
                let (_, _, dprev) = d_matrix_degree(pres, k - 1);
                dprev.rank()
            };
            Ok(dim_k - dk.rank() - rank_prev)
        }
        Kind::Dolbeault => {
            pres.require_integrable()?;
            let dim = basis_monomials(n, p, q).len();
            let rank_here = operator_matrix(pres, Op::Delbar, p, q).matrix.rank();
            let rank_prev = if q == 0 {
                0
            } else {
                operator_matrix(pres, Op::Delbar, p, q - 1).matrix.rank()
            };
            Ok(dim - rank_here - rank_prev)
        }
        Kind::BottChern => {
            pres.require_integrable()?;
            let dim = basis_monomials(n, p, q).len();
            // Ker d on (p,q) is the joint kernel of ∂ and ∂̄.
            let del_m = operator_matrix(pres, Op::Del, p, q).matrix;
            let delbar_m = operator_matrix(pres, Op::Delbar, p, q).matrix;
            let ker = dim - del_m.vstack(&delbar_m).rank();
            let im = if p == 0 || q == 0 {
                0
            } else {
                operator_matrix(pres, Op::DelDelbar, p - 1, q - 1).matrix.rank()
            };
            Ok(ker - im)
        }
        Kind::Aeppli => {
            pres.require_integrable()?;
            let dim = basis_monomials(n, p, q).len();
            let ker = dim - operator_matrix(pres, Op::DelDelbar, p, q).matrix.rank();
            let im = image_sum_matrix(pres, p, q).rank();
            Ok(ker - im)
        }
    }
}

/// Columns spanning Im ∂|_{(p−1,q)} + Im ∂̄|_{(p,q−1)} inside Λ^{p,q}.
pub fn image_sum_matrix(pres: &StructurePresentation, p: usize, q: usize) -> QMatrix {
    let n = pres.dim();
    let dim = basis_monomials(n, p, q).len();
    let mut m = QMatrix::zeros(dim, 0);
    if p > 0 {
        m = m.hstack(&operator_matrix(pres, Op::Del, p - 1, q).matrix);
    }
    if q > 0 {
        m = m.hstack(&operator_matrix(pres, Op::Delbar, p, q - 1).matrix);
    }
    m
}

/// The full table over every bidegree (or total degree for de Rham).
pub fn cohomology_dims(pres: &StructurePresentation, kind: Kind) -> Result<CohomologyTable, MathError> {
    let n = pres.dim();
    let mut dims = BTreeMap::new();
    match kind {
        Kind::DeRham => {
            for k in 0..=(2 * n) {
                dims.insert((k, 0), cohomology_dim(pres, kind, k, 0)?);
            }
        }
        _ => {
            for p in 0..=n {
                for q in 0..=n {
                    dims.insert((p, q), cohomology_dim(pres, kind, p, q)?);
                }
            }
        }
    }
    Ok(CohomologyTable { kind, dims })
}

/// A basis of the harmonic space of `kind` at (p,q) for the metric.
#[derive(Clone)]
pub struct HarmonicBasis {
    pub kind: Kind,
    pub bidegree: (usize, usize),
    pub basis: Vec<Form>,
}

/// Solve the defining linear system of the harmonic space exactly.
///
/// Dolbeault: ∂̄α = 0, ∂̄*α = 0.
/// Bott-Chern: ∂α = 0, ∂̄α = 0, ∂*∂̄*α = 0.
/// Aeppli: ∂∂̄α = 0, ∂*α = 0, ∂̄*α = 0.
pub fn harmonic_basis(
    ctx: &MetricContext,
    kind: Kind,
    p: usize,
    q: usize,
) -> Result<HarmonicBasis, MathError> {
    let pres = ctx.presentation();
    pres.require_integrable()?;
    let n = pres.dim();
    let src = basis_monomials(n, p, q);
    let dim = src.len();
    let mut system = QMatrix::zeros(0, dim);
    match kind {
        Kind::DeRham => {
            // joint kernel of d and its adjoint on total degree is not used
            // by the callers; keep the bidegree story only.
            return Err(MathError::NotPure);
        }
        Kind::Dolbeault => {
            system = system.vstack(&operator_matrix(pres, Op::Delbar, p, q).matrix);
            system = system.vstack(&ctx.delbar_star_matrix(p, q));
        }
        Kind::BottChern => {
            system = system.vstack(&operator_matrix(pres, Op::Del, p, q).matrix);
            system = system.vstack(&operator_matrix(pres, Op::Delbar, p, q).matrix);
            if p > 0 && q > 0 {
                let dbs = ctx.delbar_star_matrix(p, q);
                let ds = ctx.del_star_matrix(p, q - 1);
                system = system.vstack(&ds.mul(&dbs));
            }
        }
        Kind::Aeppli => {
            system = system.vstack(&operator_matrix(pres, Op::DelDelbar, p, q).matrix);
            system = system.vstack(&ctx.del_star_matrix(p, q));
            system = system.vstack(&ctx.delbar_star_matrix(p, q));
        }
    }
    let basis = system
        .nullspace()
        .into_iter()
        .map(|v| coords_to_form(n, &v, &src))
        .collect();
    Ok(HarmonicBasis { kind, bidegree: (p, q), basis })
}

/// Outcome of an exact membership test in span(generators) + Σ images.
pub enum Membership {
    /// Coefficients over the assembled column list.
    Member(Vec<Q>),
    /// A linear functional over the ambient monomial basis vanishing on the
    /// subspace but not on the target.
    NonMember(Vec<Q>),
}

/// Decide membership of `target` in span(generators) + Σ Im(op at bidegree),
/// all inside Λ^{p,q} of the target.
pub fn subspace_membership(
    pres: &StructurePresentation,
    target: &Form,
    generators: &[Form],
    plus_images: &[(Op, usize, usize)],
) -> Result<Membership, MathError> {
    let n = pres.dim();
    let (p, q) = target
        .pure_bidegree()
        .or_else(|| {
            generators
                .iter()
                .chain(std::iter::once(target))
                .find_map(|f| f.pure_bidegree())
        })
        .ok_or(MathError::NotPure)?;
    let ambient = basis_monomials(n, p, q);
    let mut cols = QMatrix::zeros(ambient.len(), 0);
    for g in generators {
        if !g.is_zero() && g.pure_bidegree() != Some((p, q)) {
            return Err(MathError::BidegreeMismatch(p, q));
        }
        let v = form_to_coords(g, &ambient);
        cols = cols.hstack(&QMatrix::from_columns(ambient.len(), &[v]));
    }
    for &(op, sp, sq) in plus_images {
        let m = operator_matrix(pres, op, sp, sq);
        if m.target != (p, q) {
            return Err(MathError::BidegreeMismatch(p, q));
        }
        cols = cols.hstack(&m.matrix);
    }
    let t = form_to_coords(target, &ambient);
    match cols.solve(&t) {
        Some(x) => Ok(Membership::Member(x)),
        None => {
            let w = cols
                .nonmembership_witness(&t)
                .expect("insoluble system must have a witness");
            Ok(Membership::NonMember(w))
        }
    }
}

/// Evaluate a witness functional against a form.
pub fn pair_witness(witness: &[Q], ambient: &[Monomial], f: &Form) -> Q {
    dot(witness, &form_to_coords(f, ambient))
}
