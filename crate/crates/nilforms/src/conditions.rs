//! Decision procedures for special-metric conditions: the k-th Gauduchon
//! ladder (SKT, astheno-Kahler, standard), balanced and Kahler checks, and
//! the dd^c-positivity obstruction to p-pluriclosed forms.

use crate::error::MathError;
use crate::form::{sigma_factor, Form, Monomial};
use crate::metric::MetricContext;
use crate::operators;
use crate::scalar::Q;
use crate::structure::StructurePresentation;

/// A named condition with its exactly computed obstruction form;
/// `holds` iff the residual is zero.
#[derive(Clone, Debug)]
pub struct ConditionReport {
    pub condition: String,
    pub holds: bool,
    pub residual: Form,
}

impl ConditionReport {
    fn new(condition: String, residual: Form) -> Self {
        ConditionReport { condition, holds: residual.is_zero(), residual }
    }
}

/// Canonical condition name for ∂∂̄ F^k = 0 in complex dimension n.
pub fn gauduchon_name(k: usize, n: usize) -> String {
    if k == 1 {
        "skt".to_string()
    } else if k + 2 == n {
        "astheno".to_string()
    } else if k + 1 == n {
        "gauduchon".to_string()
    } else {
        format!("k-gauduchon({k})")
    }
}

/// residual = ∂∂̄(F^k); k must lie in 1..=n−1.
pub fn check_k_gauduchon(ctx: &MetricContext, k: usize) -> Result<ConditionReport, MathError> {
    let pres = ctx.presentation();
    pres.require_integrable()?;
    let n = pres.dim();
    if k == 0 || k >= n {
        return Err(MathError::PowerOutOfRange(k, n - 1));
    }
    let fk = ctx.fundamental_power(k)?;
    let residual = operators::del_delbar(pres, &fk);
    Ok(ConditionReport::new(gauduchon_name(k, n), residual))
}

/// residual = d(F^{n−1}).
pub fn check_balanced(ctx: &MetricContext) -> Result<ConditionReport, MathError> {
    let pres = ctx.presentation();
    pres.require_integrable()?;
    let n = pres.dim();
    let f = ctx.fundamental_power(n - 1)?;
    let residual = operators::d(pres, &f);
    Ok(ConditionReport::new("balanced".to_string(), residual))
}

/// residual = dF.
pub fn check_kahler(ctx: &MetricContext) -> Result<ConditionReport, MathError> {
    let pres = ctx.presentation();
    pres.require_integrable()?;
    let residual = operators::d(pres, ctx.fundamental_form());
    Ok(ConditionReport::new("kahler".to_string(), residual))
}

/// Outcome of the p-pluriclosed obstruction test.
#[derive(Clone, Debug)]
pub enum Obstruction {
    /// The (n−p,n−p) part of dd^c(alpha) decomposes over sigma-normalized
    /// diagonal covectors psi^k ∧ conj(psi^k) with coefficients c_k = u·λ_k
    /// for a single u ≠ 0 and positive rationals λ_k: no p-pluriclosed form
    /// can exist.
    Obstructed {
        /// (index set of psi^k, raw sigma-normalized coefficient c_k,
        /// positive ratio λ_k = c_k / c_1).
        terms: Vec<(Monomial, Q, Q)>,
        /// The common-ray scalar u = c_1.
        ray: Q,
        projection: Form,
    },
    /// The test is only a sufficient criterion; this is not a proof of
    /// existence.
    Inconclusive { reason: String, projection: Form },
}

impl Obstruction {
    pub fn is_obstructed(&self) -> bool {
        matches!(self, Obstruction::Obstructed { .. })
    }
}

/// Try to certify that no p-pluriclosed form exists, from a single
/// (2n−2p−2)-form alpha: project dd^c(alpha) to (n−p, n−p) and look for a
/// same-ray diagonal decomposition. Works for non-integrable structures.
///
/// Scaling alpha by a nonzero constant is always allowed (it scales the
/// decomposition by the same constant), so coefficients on a common ray
/// through the origin are as good as positive reals.
pub fn pluriclosed_obstruction(
    pres: &StructurePresentation,
    alpha: &Form,
    p: usize,
) -> Result<Obstruction, MathError> {
    let n = pres.dim();
    if p == 0 || p > n {
        return Err(MathError::PowerOutOfRange(p, n));
    }
    let m = n - p;
    let beta = operators::ddc(pres, alpha).project(m, m);
    if beta.is_zero() {
        return Ok(Obstruction::Inconclusive {
            reason: "the (n-p,n-p) part of ddc(alpha) vanishes".to_string(),
            projection: beta,
        });
    }
    // Coordinate-simple decomposition: every monomial must be diagonal,
    // eta^I ∧ conj(eta^I).
    let sigma = sigma_factor(m);
    let mut terms: Vec<(Monomial, Q)> = Vec::new();
    for (mon, c) in beta.terms() {
        if mon.unbarred != mon.barred {
            return Ok(Obstruction::Inconclusive {
                reason: format!("non-diagonal monomial {mon} in the projection"),
                projection: beta.clone(),
            });
        }
        // sigma_m eta^I ∧ conj(eta^I) = sigma_m · eta^{I Ibar} (the barred
        // block needs no reordering), so the normalized coefficient is c/sigma_m.
        terms.push((Monomial { unbarred: mon.unbarred, barred: 0 }, &c.clone() / &sigma));
    }
    let ray = terms[0].1.clone();
    let mut out = Vec::new();
    for (mon, c) in terms {
        let lambda = &c / &ray;
        if !lambda.is_positive_real() {
            return Ok(Obstruction::Inconclusive {
                reason: "decomposition coefficients do not share a ray".to_string(),
                projection: beta.clone(),
            });
        }
        out.push((mon, c, lambda));
    }
    Ok(Obstruction::Obstructed { terms: out, ray, projection: beta })
}
