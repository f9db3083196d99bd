//! Geometric Bott-Chern formality: closure of the Bott-Chern harmonic
//! spaces under the wedge product for a fixed invariant metric.

use crate::cohomology::{harmonic_basis, Kind};
use crate::error::MathError;
use crate::form::Form;
use crate::metric::MetricContext;
use crate::operators::{self, operator_matrix, Op};

#[derive(Clone, Debug)]
pub struct FormalityReport {
    pub formal: bool,
    /// The first failing pair and the nonzero residual ∂∂̄ *(α∧β).
    pub first_failure: Option<(Form, Form, Form)>,
    pub checked_pairs: usize,
}

/// For every pair of Bott-Chern harmonic basis elements check that the
/// product is again harmonic. d(α∧β) = 0 holds by the Leibniz rule and is
/// asserted; the one metric-dependent condition is ∂∂̄ *(α∧β) = 0.
pub fn is_geometrically_bc_formal(ctx: &MetricContext) -> Result<FormalityReport, MathError> {
    let pres = ctx.presentation();
    pres.require_integrable()?;
    let n = pres.dim();
    let mut bases: Vec<Vec<Form>> = Vec::new();
    for p in 0..=n {
        for q in 0..=n {
            bases.push(harmonic_basis(ctx, Kind::BottChern, p, q)?.basis);
        }
    }
    let all: Vec<&Form> = bases.iter().flatten().collect();
    let mut checked = 0usize;
    for &a in &all {
        for &b in &all {
            let prod = a.wedge(b)?;
            if prod.is_zero() {
                continue;
            }
            checked += 1;
            debug_assert!(operators::d(pres, &prod).is_zero());
            let residual = operators::del_delbar(pres, &ctx.hodge_star(&prod));
            if !residual.is_zero() {
                return Ok(FormalityReport {
                    formal: false,
                    first_failure: Some((a.clone(), b.clone(), residual)),
                    checked_pairs: checked,
                });
            }
        }
    }
    Ok(FormalityReport { formal: true, first_failure: None, checked_pairs: checked })
}

/// True iff the ∂∂̄ matrix vanishes in every bidegree.
pub fn ddbar_vanishes_on_invariants(
    pres: &crate::structure::StructurePresentation,
) -> Result<bool, MathError> {
    pres.require_integrable()?;
    let n = pres.dim();
    for p in 0..=n {
        for q in 0..=n {
            if !operator_matrix(pres, Op::DelDelbar, p, q).matrix.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
