//! Lie algebras with (almost-)complex structure presented by structure
//! equations dη^i on a (1,0)-coframe.

use crate::error::MathError;
use crate::form::Form;
use crate::operators;
use crate::scalar::Q;

/// A complex-dimension-n Lie algebra presentation: the differentials of the
/// (1,0)-coframe. Differentials of the conjugate coframe are always derived
/// by conjugation, never stored independently.
#[derive(Clone, Debug)]
pub struct StructurePresentation {
    n: usize,
    d_eta: Vec<Form>,
    d_eta_bar: Vec<Form>,
}

/// Outcome of structural validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    /// d∘d = 0 on every generator and conjugate generator.
    pub jacobi_ok: bool,
    /// Indices (1-based) of generators where d² fails.
    pub jacobi_failures: Vec<usize>,
    /// No (0,2)-component in any dη^i.
    pub integrable: bool,
    /// Some coframe ordering has dη^{π(k+1)} in the ideal of η^{π(1..k)}.
    pub salamon_filtration_ok: bool,
    /// A witnessing ordering (1-based indices), when the filtration holds.
    pub filtration_order: Option<Vec<usize>>,
    /// Derived from the filtration.
    pub nilpotent: bool,
}

impl StructurePresentation {
    /// Build from the differentials of η^1..η^n. Each dη^i must have total
    /// degree 2 with components only in (2,0), (1,1), (0,2).
    pub fn new(n: usize, d_eta: Vec<Form>) -> Result<Self, MathError> {
        if n > crate::form::MAX_DIM {
            return Err(MathError::DimensionTooLarge(n));
        }
        if d_eta.len() != n {
            return Err(MathError::DimensionMismatch(d_eta.len(), n));
        }
        for f in &d_eta {
            if f.dim() != n {
                return Err(MathError::DimensionMismatch(f.dim(), n));
            }
            for (m, _) in f.terms() {
                let (p, q) = m.bidegree();
                if p + q != 2 {
                    return Err(MathError::NotPure);
                }
            }
        }
        let d_eta_bar = d_eta.iter().map(|f| f.conjugate()).collect();
        Ok(StructurePresentation { n, d_eta, d_eta_bar })
    }

    /// The abelian algebra: all differentials zero.
    pub fn abelian(n: usize) -> Self {
        StructurePresentation {
            n,
            d_eta: (0..n).map(|_| Form::zero(n)).collect(),
            d_eta_bar: (0..n).map(|_| Form::zero(n)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// dη^i, 1-based index.
    pub fn d_generator(&self, i: usize) -> &Form {
        &self.d_eta[i - 1]
    }

    /// dη̄^i = conj(dη^i), 1-based index.
    pub fn d_generator_bar(&self, i: usize) -> &Form {
        &self.d_eta_bar[i - 1]
    }

    /// The table of all generator differentials: (dη^1..dη^n, dη̄^1..dη̄^n).
    pub fn differential_on_generators(&self) -> (Vec<Form>, Vec<Form>) {
        (self.d_eta.clone(), self.d_eta_bar.clone())
    }

    pub fn validate(&self) -> ValidationReport {
        let mut jacobi_failures = Vec::new();
        for i in 1..=self.n {
            let dd = operators::d(self, self.d_generator(i));
            let ddb = operators::d(self, self.d_generator_bar(i));
            if !dd.is_zero() || !ddb.is_zero() {
                jacobi_failures.push(i);
            }
        }
        let integrable = self
            .d_eta
            .iter()
            .all(|f| f.project(0, 2).is_zero());
        let filtration_order = self.find_filtration_order();
        let salamon = filtration_order.is_some();
        ValidationReport {
            jacobi_ok: jacobi_failures.is_empty(),
            jacobi_failures,
            integrable,
            salamon_filtration_ok: salamon,
            filtration_order,
            nilpotent: salamon,
        }
    }

    pub fn is_integrable(&self) -> bool {
        self.d_eta.iter().all(|f| f.project(0, 2).is_zero())
    }

    pub fn require_integrable(&self) -> Result<(), MathError> {
        if self.is_integrable() {
            Ok(())
        } else {
            Err(MathError::NotIntegrable)
        }
    }

    pub fn require_valid(&self) -> Result<(), MathError> {
        for i in 1..=self.n {
            if !operators::d(self, self.d_generator(i)).is_zero() {
                return Err(MathError::JacobiFailure(i));
            }
        }
        Ok(())
    }

    /// dη is in the ideal generated by {η^s : s in chosen} iff every monomial
    /// of dη contains an unbarred index from `chosen`.
    fn in_ideal(&self, i: usize, chosen_mask: u32) -> bool {
        self.d_generator(i)
            .terms()
            .all(|(m, _)| m.unbarred & chosen_mask != 0)
    }

    /// Greedy search with backtracking over coframe orderings for the
    /// ascending filtration dη^{π(k+1)} ∈ I(η^{π(1)},..,η^{π(k)}).
    fn find_filtration_order(&self) -> Option<Vec<usize>> {
        fn rec(
            pres: &StructurePresentation,
            chosen_mask: u32,
            order: &mut Vec<usize>,
            dead: &mut std::collections::BTreeSet<u32>,
        ) -> bool {
            if order.len() == pres.n {
                return true;
            }
            if dead.contains(&chosen_mask) {
                return false;
            }
            for i in 1..=pres.n {
                let bit = 1u32 << (i - 1);
                if chosen_mask & bit != 0 {
                    continue;
                }
                if pres.in_ideal(i, chosen_mask) {
                    order.push(i);
                    if rec(pres, chosen_mask | bit, order, dead) {
                        return true;
                    }
                    order.pop();
                }
            }
            dead.insert(chosen_mask);
            false
        }
        let mut order = Vec::new();
        let mut dead = std::collections::BTreeSet::new();
        if rec(self, 0, &mut order, &mut dead) {
            Some(order)
        } else {
            None
        }
    }

    /// Render the structure equations in the file syntax, one line per
    /// non-closed generator plus the dimension header.
    pub fn to_structure_lines(&self) -> Vec<String> {
        let mut lines = vec![format!("dim = {}", self.n)];
        for i in 1..=self.n {
            let d = self.d_generator(i);
            if !d.is_zero() {
                lines.push(format!("d{i} = {d}"));
            }
        }
        lines
    }
}

/// Convenience: a structure-constant term c·η^{a}∧η^{b} (barred flags per
/// factor) for assembling presentations in code.
pub fn term(n: usize, c: Q, a: (usize, bool), b: (usize, bool)) -> Form {
    Form::from_factors(n, c, &[a, b])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scalar::Q;

    #[test]
    fn abelian_validates_fully() {
        let pres = StructurePresentation::abelian(3);
        let r = pres.validate();
        assert!(r.jacobi_ok && r.integrable && r.salamon_filtration_ok && r.nilpotent);
    }

    #[test]
    fn fps_presentation_flags() {
        let pres = catalog::build(
            "fps6",
            &[("A", "0"), ("B", "1"), ("C", "i"), ("D", "0"), ("E", "0")],
        )
        .unwrap();
        let r = pres.validate();
        assert!(r.jacobi_ok);
        assert!(r.integrable);
        assert!(r.salamon_filtration_ok);
        assert!(r.nilpotent);
    }

    #[test]
    fn almost_complex_family_is_not_integrable_when_a6_a7_nonzero() {
        let pres = catalog::build(
            "almost4",
            &[
                ("a1", "1"),
                ("a2", "1"),
                ("a3", "0"),
                ("a4", "0"),
                ("a5", "0"),
                ("a6", "1"),
                ("a7", "-1"),
            ],
        )
        .unwrap();
        let r = pres.validate();
        assert!(r.jacobi_ok);
        assert!(!r.integrable);
        let pres0 = catalog::build(
            "almost4",
            &[
                ("a1", "1"),
                ("a2", "1"),
                ("a3", "0"),
                ("a4", "0"),
                ("a5", "0"),
                ("a6", "0"),
                ("a7", "0"),
            ],
        )
        .unwrap();
        assert!(pres0.validate().integrable);
    }

    #[test]
    fn inoue_entries_are_not_nilpotent() {
        let pres = catalog::build(
            "inoue_inoue",
            &[("alpha", "1"), ("beta", "0"), ("gamma", "1"), ("delta", "0")],
        )
        .unwrap();
        let r = pres.validate();
        assert!(r.jacobi_ok);
        assert!(r.integrable);
        // No closed (1,0)-generator exists, so no filtration can start.
        assert!(!r.salamon_filtration_ok);
        assert!(!r.nilpotent);
    }

    #[test]
    fn conjugation_consistency_of_d() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let pres = catalog::build("kt_kt", &[("A", "1"), ("B", "1")]).unwrap();
        for _ in 0..200 {
            let p = rng.gen_range(0..=2);
            let q = rng.gen_range(0..=2);
            let basis = crate::form::basis_monomials(4, p, q);
            let mut f = Form::zero(4);
            for m in basis {
                if rng.gen_bool(0.5) {
                    f.add_term(m, Q::from_parts(rng.gen_range(-2..=2), 1, rng.gen_range(-2..=2), 1));
                }
            }
            let lhs = operators::d(&pres, &f.conjugate());
            let rhs = operators::d(&pres, &f).conjugate();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn d_squared_vanishes_on_generators_of_all_catalog_entries() {
        for entry in catalog::entries() {
            let pres = catalog::build_with_defaults(entry.name).unwrap();
            let r = pres.validate();
            assert!(r.jacobi_ok, "d^2 != 0 for {}", entry.name);
        }
    }
}
